//! Exact arithmetic in PGL₂⁺(ℚ).
//!
//! Every element is stored as its normalized integral representative: the
//! entries are coprime, the determinant is positive and the lower-left entry
//! is positive (or zero with a positive upper-left entry).

use std::fmt;

use rug::{Float, Integer, Rational};
use serde::{Serialize, Serializer};

use crate::error::{Error, Result};
use crate::num::rat_to_float;

/// A point of ℙ¹(ℚ).
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum ExtRational {
    Finite(Rational),
    Infinity,
}

impl ExtRational {
    pub fn finite(&self) -> Option<&Rational> {
        match self {
            ExtRational::Finite(q) => Some(q),
            ExtRational::Infinity => None,
        }
    }

    pub fn is_infinite(&self) -> bool {
        matches!(self, ExtRational::Infinity)
    }
}

impl From<Rational> for ExtRational {
    fn from(q: Rational) -> Self {
        ExtRational::Finite(q)
    }
}

impl fmt::Display for ExtRational {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ExtRational::Finite(q) => write!(f, "{q}"),
            ExtRational::Infinity => write!(f, "∞"),
        }
    }
}

impl Serialize for ExtRational {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(&match self {
            ExtRational::Finite(q) => q.to_string(),
            ExtRational::Infinity => "inf".to_string(),
        })
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct ProjMatrix {
    a: Integer,
    b: Integer,
    c: Integer,
    d: Integer,
}

impl ProjMatrix {
    pub fn new(a: impl Into<Integer>, b: impl Into<Integer>, c: impl Into<Integer>, d: impl Into<Integer>) -> Result<Self> {
        let (a, b, c, d) = (a.into(), b.into(), c.into(), d.into());
        let det = Integer::from(&a * &d) - Integer::from(&b * &c);
        if det <= 0 {
            return Err(Error::NonPositiveDeterminant);
        }
        Ok(Self::normalized(a, b, c, d))
    }

    fn normalized(mut a: Integer, mut b: Integer, mut c: Integer, mut d: Integer) -> Self {
        let g = a.clone().gcd(&b).gcd(&c).gcd(&d);
        if g != 1 {
            a /= &g;
            b /= &g;
            c /= &g;
            d /= &g;
        }
        if c < 0 || (c == 0 && a < 0) {
            a = -a;
            b = -b;
            c = -c;
            d = -d;
        }
        ProjMatrix { a, b, c, d }
    }

    /// Builds the class of a rational matrix by clearing denominators.
    pub fn from_rationals(a: &Rational, b: &Rational, c: &Rational, d: &Rational) -> Result<Self> {
        let l = a.denom().clone().lcm(b.denom()).lcm(c.denom()).lcm(d.denom());
        let scale = |q: &Rational| (q.clone() * &l).into_numer_denom().0;
        Self::new(scale(a), scale(b), scale(c), scale(d))
    }

    pub fn identity() -> Self {
        ProjMatrix { a: 1.into(), b: 0.into(), c: 0.into(), d: 1.into() }
    }

    /// `S = (0 −1; 1 0)`.
    pub fn s() -> Self {
        Self::normalized(0.into(), (-1).into(), 1.into(), 0.into())
    }

    /// `T^x = (1 x; 0 1)`.
    pub fn t(x: &Rational) -> Self {
        let (p, q) = x.clone().into_numer_denom();
        Self::normalized(q.clone(), p, 0.into(), q)
    }

    /// `D_y = (y 0; 0 1)` for `y > 0`.
    pub fn dil(y: &Rational) -> Result<Self> {
        if *y <= 0 {
            return Err(Error::NonPositiveDeterminant);
        }
        let (p, q) = y.clone().into_numer_denom();
        Ok(Self::normalized(p, 0.into(), 0.into(), q))
    }

    pub fn a(&self) -> &Integer {
        &self.a
    }
    pub fn b(&self) -> &Integer {
        &self.b
    }
    pub fn c(&self) -> &Integer {
        &self.c
    }
    pub fn d(&self) -> &Integer {
        &self.d
    }

    pub fn entries(&self) -> [&Integer; 4] {
        [&self.a, &self.b, &self.c, &self.d]
    }

    pub fn det(&self) -> Integer {
        Integer::from(&self.a * &self.d) - Integer::from(&self.b * &self.c)
    }

    pub fn trace(&self) -> Integer {
        Integer::from(&self.a + &self.d)
    }

    pub fn compose(&self, o: &ProjMatrix) -> ProjMatrix {
        let a = Integer::from(&self.a * &o.a) + Integer::from(&self.b * &o.c);
        let b = Integer::from(&self.a * &o.b) + Integer::from(&self.b * &o.d);
        let c = Integer::from(&self.c * &o.a) + Integer::from(&self.d * &o.c);
        let d = Integer::from(&self.c * &o.b) + Integer::from(&self.d * &o.d);
        Self::normalized(a, b, c, d)
    }

    pub fn inverse(&self) -> ProjMatrix {
        Self::normalized(-self.d.clone(), self.b.clone(), self.c.clone(), -self.a.clone())
    }

    pub fn is_identity(&self) -> bool {
        *self == Self::identity()
    }

    /// Trace-zero test on the normalized representative.
    pub fn is_involution(&self) -> bool {
        self.trace() == 0
    }

    /// Membership in Ω_∞ (fixes ∞).
    pub fn fixes_infinity(&self) -> bool {
        self.c == 0
    }

    pub fn pi(&self) -> ExtRational {
        if self.c == 0 {
            ExtRational::Infinity
        } else {
            ExtRational::Finite(Rational::from((-self.d.clone(), self.c.clone())))
        }
    }

    pub fn rho_sq(&self) -> ExtRational {
        if self.c == 0 {
            ExtRational::Infinity
        } else {
            ExtRational::Finite(Rational::from((self.det(), Integer::from(&self.c * &self.c))))
        }
    }

    pub fn sigma(&self) -> Rational {
        if self.c == 0 {
            Rational::from((self.a.clone(), self.d.clone()))
        } else {
            Rational::from(1)
        }
    }

    pub fn theta(&self) -> Rational {
        if self.c == 0 {
            Rational::from((self.b.clone(), self.d.clone()))
        } else {
            Rational::from((self.a.clone(), self.c.clone()))
        }
    }

    pub fn functionals(&self) -> Functionals {
        Functionals { pi: self.pi(), rho_sq: self.rho_sq(), sigma: self.sigma(), theta: self.theta() }
    }

    pub fn decompose(&self) -> Decomposition {
        match (self.pi(), self.rho_sq()) {
            (ExtRational::Finite(pi), ExtRational::Finite(rho_sq)) => {
                Decomposition::Involutory { theta: self.theta(), rho_sq, pi }
            }
            _ => Decomposition::Translation { theta: self.theta(), sigma: self.sigma() },
        }
    }

    pub fn arc(&self) -> Arc {
        Arc { center: self.pi(), sq_radius: self.rho_sq() }
    }

    pub fn apply_boundary(&self, p: &ExtRational) -> ExtRational {
        match p {
            ExtRational::Infinity => {
                if self.c == 0 {
                    ExtRational::Infinity
                } else {
                    ExtRational::Finite(Rational::from((self.a.clone(), self.c.clone())))
                }
            }
            ExtRational::Finite(x) => {
                let num = x.clone() * &self.a + &self.b;
                let den = x.clone() * &self.c + &self.d;
                if den == 0 {
                    ExtRational::Infinity
                } else {
                    ExtRational::Finite(num / den)
                }
            }
        }
    }

    /// `|cτ + d|²` for an exact point.
    pub fn denom_sq(&self, p: &QuadPoint) -> Rational {
        let cx_d = p.x.clone() * &self.c + &self.d;
        let c2 = Integer::from(&self.c * &self.c);
        Rational::from(&cx_d * &cx_d) + p.y2.clone() * c2
    }

    pub fn apply_quad(&self, p: &QuadPoint) -> QuadPoint {
        let den = self.denom_sq(p);
        let n2 = p.norm_sq();
        let ac = Integer::from(&self.a * &self.c);
        let adbc = Integer::from(&self.a * &self.d) + Integer::from(&self.b * &self.c);
        let bd = Integer::from(&self.b * &self.d);
        let re = (n2 * ac + p.x.clone() * adbc + bd) / &den;
        let det = self.det();
        let det2 = Rational::from(Integer::from(&det * &det));
        let y2 = p.y2.clone() * det2 / Rational::from(&den * &den);
        QuadPoint { x: re, y2 }
    }

    /// `Im(Mτ)/Im(τ)` exactly.
    pub fn im_factor_quad(&self, p: &QuadPoint) -> Rational {
        Rational::from(self.det()) / self.denom_sq(p)
    }

    pub fn apply(&self, tau: &HPoint) -> Result<HPoint> {
        if let Some(q) = &tau.exact {
            return HPoint::from_quad(&self.apply_quad(q), tau.prec());
        }
        let prec = tau.prec();
        let f = |z: &Integer| Float::with_val(prec, z);
        let (a, b, c, d) = (f(&self.a), f(&self.b), f(&self.c), f(&self.d));
        let den_re = c.clone() * &tau.x + &d;
        let den_im = c.clone() * &tau.y;
        let den = Float::with_val(prec, &den_re * &den_re) + Float::with_val(prec, &den_im * &den_im);
        let n2 = Float::with_val(prec, &tau.x * &tau.x) + Float::with_val(prec, &tau.y * &tau.y);
        let re = (n2 * Float::with_val(prec, &a * &c)
            + tau.x.clone() * (Float::with_val(prec, &a * &d) + Float::with_val(prec, &b * &c))
            + Float::with_val(prec, &b * &d))
            / &den;
        let im = tau.y.clone() * f(&self.det()) / den;
        HPoint::new(re, im)
    }

    pub fn im_factor(&self, tau: &HPoint) -> Result<Float> {
        if let Some(q) = &tau.exact {
            return Ok(rat_to_float(&self.im_factor_quad(q), tau.prec()));
        }
        let prec = tau.prec();
        let c = Float::with_val(prec, &self.c);
        let re = c.clone() * &tau.x + &self.d;
        let im = c * &tau.y;
        let den = Float::with_val(prec, &re * &re) + Float::with_val(prec, &im * &im);
        if den.is_zero() || !den.is_finite() {
            return Err(Error::Precision("degenerate |cτ+d|²".into()));
        }
        Ok(Float::with_val(prec, &self.det()) / den)
    }
}

impl fmt::Display for ProjMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({} {}; {} {})", self.a, self.b, self.c, self.d)
    }
}

impl Serialize for ProjMatrix {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let v: Vec<String> = self.entries().iter().map(|e| e.to_string()).collect();
        v.serialize(s)
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Functionals {
    pub pi: ExtRational,
    pub rho_sq: ExtRational,
    pub sigma: Rational,
    pub theta: Rational,
}

/// `M = T^θ D_σ` or `M = T^θ D_{ρ²} S T^{−π}`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Decomposition {
    Translation { theta: Rational, sigma: Rational },
    Involutory { theta: Rational, rho_sq: Rational, pi: Rational },
}

impl Decomposition {
    pub fn to_matrix(&self) -> ProjMatrix {
        match self {
            Decomposition::Translation { theta, sigma } => {
                ProjMatrix::t(theta).compose(&ProjMatrix::dil(sigma).expect("σ > 0"))
            }
            Decomposition::Involutory { theta, rho_sq, pi } => ProjMatrix::t(theta)
                .compose(&ProjMatrix::dil(rho_sq).expect("ρ² > 0"))
                .compose(&ProjMatrix::s())
                .compose(&ProjMatrix::t(&-pi.clone())),
        }
    }
}

/// Isometric circle `|τ − center|² = sq_radius`; the infinite arc is all of ℍ.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Arc {
    pub center: ExtRational,
    pub sq_radius: ExtRational,
}

impl Arc {
    pub fn infinite() -> Self {
        Arc { center: ExtRational::Infinity, sq_radius: ExtRational::Infinity }
    }

    pub fn finite(center: Rational, sq_radius: Rational) -> Self {
        assert!(sq_radius > 0, "arc radius must be positive");
        Arc { center: ExtRational::Finite(center), sq_radius: ExtRational::Finite(sq_radius) }
    }

    pub fn is_infinite(&self) -> bool {
        self.center.is_infinite()
    }

    pub fn center_sq(&self) -> Option<(&Rational, &Rational)> {
        match (&self.center, &self.sq_radius) {
            (ExtRational::Finite(p), ExtRational::Finite(r)) => Some((p, r)),
            _ => None,
        }
    }

    /// Squared height of the arc above real part `x`, possibly non-positive.
    pub fn height_sq(&self, x: &Rational) -> Option<Rational> {
        self.center_sq().map(|(p, r2)| {
            let dx = x.clone() - p;
            r2.clone() - Rational::from(&dx * &dx)
        })
    }

    pub fn contains(&self, p: &QuadPoint) -> bool {
        match self.center_sq() {
            None => true,
            Some((c, r2)) => {
                let dx = p.x.clone() - c;
                Rational::from(&dx * &dx) + &p.y2 == *r2
            }
        }
    }
}

/// An exact point `x + i√y2` with `x, y2 ∈ ℚ`, `y2 > 0`; the set of such
/// points is stable under PGL₂⁺(ℚ).
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct QuadPoint {
    pub x: Rational,
    pub y2: Rational,
}

impl QuadPoint {
    pub fn new(x: Rational, y2: Rational) -> Result<Self> {
        if y2 <= 0 {
            return Err(Error::Precondition("imaginary part must be positive".into()));
        }
        Ok(QuadPoint { x, y2 })
    }

    /// The point of `arc` above real part `x`.
    pub fn on_arc(arc: &Arc, x: Rational) -> Result<Self> {
        let y2 = arc
            .height_sq(&x)
            .ok_or_else(|| Error::Precondition("infinite arc has no exact height".into()))?;
        QuadPoint::new(x, y2)
    }

    pub fn norm_sq(&self) -> Rational {
        Rational::from(&self.x * &self.x) + &self.y2
    }

    pub fn translate(&self, t: &Rational) -> QuadPoint {
        QuadPoint { x: self.x.clone() + t, y2: self.y2.clone() }
    }

    pub fn im(&self, prec: u32) -> Float {
        rat_to_float(&self.y2, prec).sqrt()
    }
}

impl fmt::Display for QuadPoint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} + i√({})", self.x, self.y2)
    }
}

/// A point of the upper half-plane, optionally carrying an exact tag.
#[derive(Clone, Debug)]
pub struct HPoint {
    pub x: Float,
    pub y: Float,
    pub exact: Option<QuadPoint>,
}

impl HPoint {
    pub fn new(x: Float, y: Float) -> Result<Self> {
        if !(y.is_finite() && x.is_finite()) || y <= 0 || y.is_zero() {
            return Err(Error::Precision("imaginary part underflowed or is not positive".into()));
        }
        Ok(HPoint { x, y, exact: None })
    }

    pub fn from_f64(x: f64, y: f64, prec: u32) -> Result<Self> {
        HPoint::new(Float::with_val(prec, x), Float::with_val(prec, y))
    }

    pub fn from_quad(q: &QuadPoint, prec: u32) -> Result<Self> {
        if q.y2 <= 0 {
            return Err(Error::Precondition("imaginary part must be positive".into()));
        }
        Ok(HPoint { x: rat_to_float(&q.x, prec), y: q.im(prec), exact: Some(q.clone()) })
    }

    /// Point of `arc` above the rational real part `x`, with its exact tag.
    pub fn on_arc(arc: &Arc, x: Rational, prec: u32) -> Result<Self> {
        HPoint::from_quad(&QuadPoint::on_arc(arc, x)?, prec)
    }

    pub fn prec(&self) -> u32 {
        self.x.prec().max(self.y.prec())
    }
}

pub fn compose(m: &ProjMatrix, n: &ProjMatrix) -> ProjMatrix {
    m.compose(n)
}

pub fn inverse(m: &ProjMatrix) -> ProjMatrix {
    m.inverse()
}

pub fn functionals(m: &ProjMatrix) -> Functionals {
    m.functionals()
}

pub fn involutory_decompose(m: &ProjMatrix) -> Decomposition {
    m.decompose()
}

pub fn arc_of(m: &ProjMatrix) -> Arc {
    m.arc()
}

pub fn apply(m: &ProjMatrix, tau: &HPoint) -> Result<HPoint> {
    m.apply(tau)
}

pub fn apply_boundary(m: &ProjMatrix, p: &ExtRational) -> ExtRational {
    m.apply_boundary(p)
}

pub fn im_factor(m: &ProjMatrix, tau: &HPoint) -> Result<Float> {
    m.im_factor(tau)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::num::rat;

    fn pm(a: i64, b: i64, c: i64, d: i64) -> ProjMatrix {
        ProjMatrix::new(a, b, c, d).unwrap()
    }

    #[test]
    fn normalization() {
        assert_eq!(pm(2, 4, 0, 2), pm(1, 2, 0, 1));
        assert_eq!(pm(-1, 0, -2, -1), pm(1, 0, 2, 1));
        assert!(ProjMatrix::new(1, 1, 1, 1).is_err());
    }

    #[test]
    fn compose_examples() {
        let st = ProjMatrix::t(&rat(1, 2)).compose(&ProjMatrix::t(&rat(1, 3)));
        assert_eq!(st, ProjMatrix::t(&rat(5, 6)));
        let lhs = ProjMatrix::dil(&rat(2, 1)).unwrap().compose(&ProjMatrix::t(&rat(3, 1)));
        let rhs = ProjMatrix::t(&rat(6, 1)).compose(&ProjMatrix::dil(&rat(2, 1)).unwrap());
        assert_eq!(lhs, rhs);
        assert_eq!(lhs, pm(2, 6, 0, 1));
        assert!(ProjMatrix::s().compose(&ProjMatrix::s()).is_identity());
    }

    #[test]
    fn inverse_examples() {
        assert_eq!(pm(1, 1, 0, 1).inverse(), pm(1, -1, 0, 1));
        assert_eq!(pm(0, -1, 2, 0).inverse(), pm(0, -1, 2, 0));
        let m = pm(2, 1, 3, 2);
        assert_eq!(m.inverse(), pm(-2, 1, 3, -2));
        assert!(m.compose(&m.inverse()).is_identity());
    }

    #[test]
    fn functional_examples() {
        let f = pm(1, 0, 2, 1).functionals();
        assert_eq!(f.pi, ExtRational::Finite(rat(-1, 2)));
        assert_eq!(f.rho_sq, ExtRational::Finite(rat(1, 4)));
        assert_eq!(f.sigma, 1);
        assert_eq!(f.theta, rat(1, 2));
        let g = pm(2, 1, 0, 1).functionals();
        assert!(g.pi.is_infinite() && g.rho_sq.is_infinite());
        assert_eq!((g.sigma, g.theta), (rat(2, 1), rat(1, 1)));
        let w = pm(0, -1, 2, 0).functionals();
        assert_eq!(w.pi, ExtRational::Finite(rat(0, 1)));
        assert_eq!(w.rho_sq, ExtRational::Finite(rat(1, 2)));
    }

    #[test]
    fn decomposition_examples() {
        let d = pm(3, 0, 9, 3).decompose();
        assert_eq!(d, Decomposition::Involutory { theta: rat(1, 3), rho_sq: rat(1, 9), pi: rat(-1, 3) });
        assert_eq!(d.to_matrix(), pm(3, 0, 9, 3));
        assert_eq!(
            ProjMatrix::s().decompose(),
            Decomposition::Involutory { theta: rat(0, 1), rho_sq: rat(1, 1), pi: rat(0, 1) }
        );
        assert_eq!(pm(2, 1, 0, 1).decompose(), Decomposition::Translation { theta: rat(1, 1), sigma: rat(2, 1) });
    }

    #[test]
    fn arcs_and_action() {
        assert_eq!(pm(0, -1, 2, 0).arc(), Arc::finite(rat(0, 1), rat(1, 2)));
        assert!(pm(1, 1, 0, 1).arc().is_infinite());
        assert_eq!(pm(0, -1, 9, -3).arc(), Arc::finite(rat(1, 3), rat(1, 9)));
        let tau = HPoint::from_f64(0.0, 0.25, 128).unwrap();
        let img = ProjMatrix::s().apply(&tau).unwrap();
        assert!((img.y.to_f64() - 4.0).abs() < 1e-30 && img.x.to_f64().abs() < 1e-30);
        assert_eq!(pm(0, -1, 2, 0).apply_boundary(&ExtRational::Infinity), ExtRational::Finite(rat(0, 1)));
        let arc = Arc::finite(rat(0, 1), rat(1, 9));
        let p = HPoint::on_arc(&arc, rat(1, 7), 128).unwrap();
        let q = pm(0, -1, 9, 0).apply(&p).unwrap();
        assert_eq!(q.exact.unwrap(), QuadPoint::on_arc(&arc, rat(-1, 7)).unwrap());
    }

    #[test]
    fn im_factor_examples() {
        let tau = HPoint::from_f64(0.3, 0.7, 128).unwrap();
        assert_eq!(pm(1, 5, 0, 1).im_factor(&tau).unwrap(), 1);
        let on = HPoint::on_arc(&Arc::finite(rat(0, 1), rat(1, 2)), rat(0, 1), 128).unwrap();
        assert_eq!(pm(0, -1, 2, 0).im_factor_quad(on.exact.as_ref().unwrap()), 1);
        let two_i = QuadPoint::new(rat(0, 1), rat(4, 1)).unwrap();
        assert_eq!(pm(0, -1, 1, 0).im_factor_quad(&two_i), rat(1, 4));
    }
}
