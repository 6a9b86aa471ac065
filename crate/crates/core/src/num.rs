//! Numeric building blocks shared by every module: working precision,
//! complex arbitrary-precision floats, quadratic surds and roots of unity.

use std::cmp::Ordering;
use std::fmt;
use std::sync::OnceLock;

use rug::float::Constant;
use rug::ops::Pow;
use rug::{Float, Integer, Rational};

/// Mantissa bits used when the caller does not choose.
pub const DEFAULT_PRECISION: u32 = 128;

/// Working precision, overridable through `REPLICA_PRECISION_BITS`.
pub fn default_precision() -> u32 {
    static PREC: OnceLock<u32> = OnceLock::new();
    *PREC.get_or_init(|| {
        std::env::var("REPLICA_PRECISION_BITS")
            .ok()
            .and_then(|s| s.trim().parse::<u32>().ok())
            .filter(|&p| p >= 53)
            .unwrap_or(DEFAULT_PRECISION)
    })
}

pub fn pi(prec: u32) -> Float {
    Float::with_val(prec, Constant::Pi)
}

pub fn rat_to_float(q: &Rational, prec: u32) -> Float {
    Float::with_val(prec, q)
}

pub fn rat(n: i64, d: i64) -> Rational {
    Rational::from((n, d))
}

/// `e^{x}` for a float argument.
pub fn exp(x: &Float) -> Float {
    x.clone().exp()
}

/// Square root of a non-negative rational at the given precision.
pub fn sqrt_rat(q: &Rational, prec: u32) -> Float {
    Float::with_val(prec, q).sqrt()
}

/// Complex number with arbitrary-precision parts.
#[derive(Clone, Debug, PartialEq)]
pub struct Cx {
    pub re: Float,
    pub im: Float,
}

impl Cx {
    pub fn new(re: Float, im: Float) -> Self {
        Cx { re, im }
    }

    pub fn zero(prec: u32) -> Self {
        Cx { re: Float::new(prec), im: Float::new(prec) }
    }

    pub fn one(prec: u32) -> Self {
        Cx { re: Float::with_val(prec, 1), im: Float::new(prec) }
    }

    pub fn real(re: Float) -> Self {
        let im = Float::new(re.prec());
        Cx { re, im }
    }

    pub fn prec(&self) -> u32 {
        self.re.prec()
    }

    pub fn add(&self, o: &Cx) -> Cx {
        Cx { re: self.re.clone() + &o.re, im: self.im.clone() + &o.im }
    }

    pub fn sub(&self, o: &Cx) -> Cx {
        Cx { re: self.re.clone() - &o.re, im: self.im.clone() - &o.im }
    }

    pub fn mul(&self, o: &Cx) -> Cx {
        let re = Float::with_val(self.prec(), &self.re * &o.re) - Float::with_val(self.prec(), &self.im * &o.im);
        let im = Float::with_val(self.prec(), &self.re * &o.im) + Float::with_val(self.prec(), &self.im * &o.re);
        Cx { re, im }
    }

    pub fn scale(&self, s: &Float) -> Cx {
        Cx { re: self.re.clone() * s, im: self.im.clone() * s }
    }

    pub fn neg(&self) -> Cx {
        Cx { re: -self.re.clone(), im: -self.im.clone() }
    }

    pub fn abs(&self) -> Float {
        self.re.clone().hypot(&self.im)
    }

    /// `e^{2πi z}`.
    pub fn exp_2pi_i(z: &Cx) -> Cx {
        let prec = z.prec();
        let two_pi = pi(prec) * 2u32;
        let modulus = (-(two_pi.clone() * &z.im)).exp();
        let angle = two_pi * &z.re;
        let (s, c) = angle.sin_cos(Float::new(prec));
        Cx { re: c * &modulus, im: s * modulus }
    }

    pub fn to_f64(&self) -> (f64, f64) {
        (self.re.to_f64(), self.im.to_f64())
    }
}

/// A non-negative real of the form `coeff·√radicand` with square-free
/// integer radicand, as produced by the domain constants.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Surd {
    pub coeff: Rational,
    pub radicand: Integer,
}

fn square_free_split(n: &Integer) -> (Integer, Integer) {
    // n = s²·r with r square-free; trial division is enough for the sizes used here.
    let mut rest = n.clone();
    let mut outside = Integer::from(1);
    let mut inside = Integer::from(1);
    let mut p = Integer::from(2);
    while Integer::from(&p * &p) <= rest {
        let mut e = 0u32;
        while rest.is_divisible(&p) {
            rest /= &p;
            e += 1;
        }
        if e > 0 {
            outside *= p.clone().pow(e / 2);
            if e % 2 == 1 {
                inside *= &p;
            }
        }
        p += 1;
    }
    inside *= rest;
    (outside, inside)
}

impl Surd {
    pub fn rational(q: Rational) -> Self {
        Surd { coeff: q, radicand: Integer::from(1) }
    }

    /// `√q` for a non-negative rational `q`.
    pub fn sqrt(q: &Rational) -> Self {
        assert!(*q >= 0, "square root of a negative rational");
        if *q == 0 {
            return Surd::rational(Rational::new());
        }
        let (num, den) = q.clone().into_numer_denom();
        let prod = num * &den;
        let (out, inside) = square_free_split(&prod);
        Surd { coeff: Rational::from((out, den)), radicand: inside }
    }

    pub fn mul_rational(&self, q: &Rational) -> Self {
        Surd { coeff: self.coeff.clone() * q, radicand: self.radicand.clone() }
    }

    pub fn is_rational(&self) -> bool {
        self.radicand == 1 || self.coeff == 0
    }

    /// Signed square: `coeff·|coeff|·radicand`, monotone in the value.
    fn signed_square(&self) -> Rational {
        let sq = Rational::from(&self.coeff * &self.coeff) * &self.radicand;
        if self.coeff < 0 {
            -sq
        } else {
            sq
        }
    }

    pub fn to_float(&self, prec: u32) -> Float {
        Float::with_val(prec, &self.radicand).sqrt() * &self.coeff
    }

    pub fn to_f64(&self) -> f64 {
        self.to_float(128).to_f64()
    }

    /// Smallest integer `≥` the value.
    pub fn ceil(&self) -> Integer {
        if self.is_rational() {
            return self.coeff.clone().ceil().into_numer_denom().0;
        }
        let approx = self.to_float(256).floor().to_integer().expect("finite surd");
        let mut n: Integer = approx - 2;
        while Surd::rational(Rational::from(n.clone())).cmp(self) == Ordering::Less {
            n += 1;
        }
        n
    }
}

impl PartialOrd for Surd {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for Surd {
    fn cmp(&self, other: &Self) -> Ordering {
        self.signed_square().cmp(&other.signed_square())
    }
}

impl fmt::Display for Surd {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_rational() {
            return write!(f, "{}", self.coeff);
        }
        let (n, d) = (self.coeff.numer(), self.coeff.denom());
        let lead = if *n == 1 {
            String::new()
        } else if *n == -1 {
            "-".to_string()
        } else {
            n.to_string()
        };
        write!(f, "{lead}√{}", self.radicand)?;
        if *d != 1 {
            write!(f, "/{d}")?;
        }
        Ok(())
    }
}

/// `e^{2πi·turns}` with `turns ∈ [0, 1)` kept exactly.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct RootOfUnity {
    turns: Rational,
}

impl RootOfUnity {
    pub fn one() -> Self {
        RootOfUnity { turns: Rational::new() }
    }

    pub fn from_turns(t: Rational) -> Self {
        let f = t.clone() - t.floor();
        RootOfUnity { turns: f }
    }

    pub fn turns(&self) -> &Rational {
        &self.turns
    }

    pub fn is_one(&self) -> bool {
        self.turns == 0
    }

    pub fn mul(&self, o: &RootOfUnity) -> Self {
        RootOfUnity::from_turns(self.turns.clone() + &o.turns)
    }

    pub fn inv(&self) -> Self {
        RootOfUnity::from_turns(-self.turns.clone())
    }

    pub fn pow(&self, e: i64) -> Self {
        RootOfUnity::from_turns(self.turns.clone() * Integer::from(e))
    }

    pub fn order(&self) -> Integer {
        self.turns.denom().clone()
    }

    pub fn to_cx(&self, prec: u32) -> Cx {
        let z = Cx::real(rat_to_float(&self.turns, prec));
        Cx::exp_2pi_i(&z)
    }
}

impl fmt::Display for RootOfUnity {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_one() {
            write!(f, "1")
        } else {
            write!(f, "e^(2πi·{})", self.turns)
        }
    }
}

pub fn gcd_u64(a: u64, b: u64) -> u64 {
    let (mut a, mut b) = (a, b);
    while b != 0 {
        let t = a % b;
        a = b;
        b = t;
    }
    a
}

pub fn divisors(n: u64) -> Vec<u64> {
    let mut out: Vec<u64> = (1..=n).filter(|d| n.is_multiple_of(*d)).collect();
    out.sort_unstable();
    out
}

pub fn sigma1(n: u64) -> u64 {
    divisors(n).iter().sum()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn surd_normal_form() {
        let s = Surd::sqrt(&rat(18, 1));
        assert_eq!(s.coeff, 3);
        assert_eq!(s.radicand, 2);
        assert_eq!(s.to_string(), "3√2");
        let t = Surd::sqrt(&rat(1, 18));
        assert_eq!(t.to_string(), "√2/6");
        assert_eq!(Surd::sqrt(&rat(18, 1)).ceil(), 5);
        assert_eq!(Surd::sqrt(&rat(150, 1)).ceil(), 13);
        assert_eq!(Surd::rational(rat(9, 1)).ceil(), 9);
    }

    #[test]
    fn surd_ordering() {
        assert!(Surd::sqrt(&rat(18, 1)) > Surd::rational(rat(4, 1)));
        assert!(Surd::sqrt(&rat(150, 1)) > Surd::rational(rat(12, 1)));
        assert!(Surd::sqrt(&rat(150, 1)) < Surd::rational(rat(13, 1)));
    }

    #[test]
    fn roots_of_unity() {
        let w = RootOfUnity::from_turns(rat(-1, 3));
        assert_eq!(w.turns(), &rat(2, 3));
        assert!(w.pow(3).is_one());
        assert_eq!(w.mul(&w.inv()), RootOfUnity::one());
        let z = w.to_cx(128);
        assert!((z.re.to_f64() + 0.5).abs() < 1e-15);
    }
}
