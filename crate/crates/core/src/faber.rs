//! Faber polynomials, twisted Hecke sums and the harmonic relations between
//! catalog functions.

use std::collections::HashMap;
use std::fmt;

use rayon::prelude::*;
use rug::{Float, Rational};
use serde::Serialize;

use crate::error::{Error, Result};
use crate::fundomain::reduce;
use crate::groups::hecke_set;
use crate::num::{divisors, rat_to_float, Cx};
use crate::projmat::HPoint;
use crate::qseries::{evaluate, hauptmodul, replicate_function, HauptmodulId, LaurentSeries};

/// Monic polynomial with exact coefficients, ascending by degree.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FaberPoly {
    pub coeffs: Vec<Rational>,
}

impl FaberPoly {
    pub fn degree(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn coeff_strings(&self) -> Vec<String> {
        self.coeffs.iter().map(|c| c.to_string()).collect()
    }

    /// Value at `x` with a bound covering an input error `x_err` and rounding.
    pub fn eval(&self, x: &Cx, x_err: f64) -> (Cx, f64) {
        let prec = x.prec();
        let mut acc = Cx::zero(prec);
        for c in self.coeffs.iter().rev() {
            acc = acc.mul(x);
            acc.re += rat_to_float(c, prec);
        }
        let ax = x.abs();
        let ax_hi = Float::with_val(prec, &ax + x_err);
        let (mut p_lo, mut p_hi) = (Float::with_val(prec, 1), Float::with_val(prec, 1));
        let mut prop = Float::with_val(prec, 0);
        let mut round = Float::with_val(prec, 0);
        for (k, c) in self.coeffs.iter().enumerate() {
            let ac = rat_to_float(&Rational::from(c.abs_ref()), prec);
            prop += Float::with_val(prec, &p_hi - &p_lo) * &ac;
            round += Float::with_val(prec, &p_lo * &ac) * (k as u64 + 4);
            p_lo *= &ax;
            p_hi *= &ax_hi;
        }
        let round = round >> (prec as i32 - 2);
        let err = Float::with_val(prec, &prop + &round).to_f64() * (1.0 + 1e-12);
        (acc, err)
    }
}

impl fmt::Display for FaberPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for (k, c) in self.coeffs.iter().enumerate().rev() {
            if *c == 0 {
                continue;
            }
            let mag = Rational::from(c.abs_ref());
            let sign = if *c < 0 { "-" } else if first { "" } else { "+" };
            let coef = if mag == 1 && k > 0 { String::new() } else { mag.to_string() };
            let mono = match k {
                0 => String::new(),
                1 => "X".into(),
                _ => format!("X^{k}"),
            };
            if first {
                write!(f, "{sign}{coef}{mono}")?;
            } else {
                write!(f, " {sign} {coef}{mono}")?;
            }
            first = false;
        }
        Ok(())
    }
}

impl Serialize for FaberPoly {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        use serde::ser::SerializeStruct;
        let mut st = s.serialize_struct("FaberPoly", 1)?;
        st.serialize_field("coeffs", &self.coeff_strings())?;
        st.end()
    }
}

fn check_normalized(f: &LaurentSeries) -> Result<()> {
    if f.lead() != -1 || *f.step() != 1 || f.at(-1) != 1 {
        return Err(Error::Precondition("Faber polynomials need f = q⁻¹ + O(1)".into()));
    }
    Ok(())
}

/// The monic `F` with `F(f) = q⁻ⁿ + O(q)`, by principal-part elimination.
pub fn faber_poly(f: &LaurentSeries, n: usize) -> Result<FaberPoly> {
    check_normalized(f)?;
    if n == 0 {
        return Ok(FaberPoly { coeffs: vec![Rational::from(1)] });
    }
    // f^n is known up to exponent trunc − (n − 1); the constant term must be known.
    let have = f.trunc();
    if have < n as i64 {
        return Err(Error::InsufficientTruncation { needed: n as i64, have });
    }
    let mut powers = vec![LaurentSeries::monomial(0, Rational::from(1), Rational::from(1), have)];
    for k in 1..=n {
        let next = powers[k - 1].mul(f);
        powers.push(next);
    }
    let mut coeffs = vec![Rational::new(); n + 1];
    coeffs[n] = Rational::from(1);
    let mut s = powers[n].clone();
    for k in (0..n).rev() {
        let c = s.at(-(k as i64));
        if c != 0 {
            coeffs[k] = -c.clone();
            s = s.sub(&powers[k].scale(&c));
        }
    }
    Ok(FaberPoly { coeffs })
}

/// Coefficient count of `f^(a)` needed for a Hecke sum of level `n` to `depth`.
fn hecke_terms(n: u64, a: u64, depth: i64) -> usize {
    ((n / a) as i64 * (depth.max(1) + 1) + 2) as usize
}

/// `Σ_{ad=n} d·Σ_j c^{(a)}_{dj} q^{aj}` from the given replicate series.
fn collapsed_sum(n: u64, reps: &HashMap<u64, LaurentSeries>) -> LaurentSeries {
    let one = Rational::from(1);
    let mut trunc = i64::MAX;
    for a in divisors(n) {
        let d = (n / a) as i64;
        let t = reps[&a].trunc();
        let jmax = (t - 1).div_euclid(d) + 1;
        trunc = trunc.min(a as i64 * jmax);
    }
    let lead = -(n as i64);
    let mut coeffs = vec![Rational::new(); (trunc - lead) as usize];
    for a in divisors(n) {
        let d = (n / a) as i64;
        let f = &reps[&a];
        let mut j = -1i64;
        while a as i64 * j < trunc {
            let c = f.at(d * j);
            if c != 0 {
                coeffs[(a as i64 * j - lead) as usize] += c * d;
            }
            j += 1;
        }
    }
    LaurentSeries::new(lead, one, coeffs, trunc)
}

/// The twisted Hecke sum `Σ_{H∈ℋₙ} f^(H)(Hτ)` as an exact q-series.
pub fn twisted_hecke_sum(id: HauptmodulId, n: u64, depth: i64) -> Result<LaurentSeries> {
    let mut reps = HashMap::new();
    for a in divisors(n) {
        let rid = replicate_function(id, a)?;
        reps.insert(a, hauptmodul(rid, hecke_terms(n, a, depth))?);
    }
    Ok(collapsed_sum(n, &reps).with_trunc(depth))
}

type Builder<'a> = dyn Fn(HauptmodulId, usize) -> Result<LaurentSeries> + 'a;

/// Replication check against an arbitrary series source.
pub fn replication_holds(id: HauptmodulId, n: u64, depth: i64, build: &Builder<'_>) -> Result<bool> {
    let mut reps = HashMap::new();
    for a in divisors(n) {
        let rid = replicate_function(id, a)?;
        reps.insert(a, build(rid, hecke_terms(n, a, depth))?);
    }
    let lhs = collapsed_sum(n, &reps);
    let f = build(id, (depth + n as i64 + 2) as usize)?;
    let fp = faber_poly(&f, n as usize)?;
    let rhs = f.compose_poly(&fp.coeffs);
    let t = depth.min(lhs.trunc()).min(rhs.trunc());
    if t < depth {
        return Err(Error::InsufficientTruncation { needed: depth, have: t });
    }
    Ok(lhs.with_trunc(t) == rhs.with_trunc(t))
}

/// `F_{n,f}(f) = Σ_{H∈ℋₙ} f^(H)(Hτ)` coefficient-wise below `depth`.
pub fn verify_replication(id: HauptmodulId, n: u64, depth: i64) -> Result<bool> {
    replication_holds(id, n, depth, &hauptmodul)
}

/// Ascending polynomial helpers over ℚ.
fn poly_mul(a: &[Rational], b: &[Rational]) -> Vec<Rational> {
    let mut out = vec![Rational::new(); a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate() {
        for (j, y) in b.iter().enumerate() {
            out[i + j] += Rational::from(x * y);
        }
    }
    out
}

/// `p(X^d − c)`.
pub fn poly_substitute(p: &[Rational], d: usize, c: &Rational) -> Vec<Rational> {
    let mut inner = vec![Rational::new(); d + 1];
    inner[0] = -c.clone();
    inner[d] = Rational::from(1);
    let mut acc = vec![Rational::new()];
    for coef in p.iter().rev() {
        acc = poly_mul(&acc, &inner);
        acc[0] += coef;
    }
    while acc.len() > 1 && acc.last().is_some_and(|x| *x == 0) {
        acc.pop();
    }
    acc
}

/// Checks `f^d = g(q^d) + c` and then `F_{n,f}(X) = F_{n/d,g}(X^d − c)`.
pub fn harmonic_faber(f_id: HauptmodulId, g_id: HauptmodulId, d: u32, c: i64, n: usize) -> Result<bool> {
    if !n.is_multiple_of(d as usize) {
        return Err(Error::Precondition(format!("{d} does not divide {n}")));
    }
    let terms = n + 40;
    let f = hauptmodul(f_id, terms)?;
    let g = hauptmodul(g_id, terms)?;
    let lhs = f.pow(d);
    let rhs = g.substitute_power(d).add_scalar(&Rational::from(c));
    let t = lhs.trunc().min(rhs.trunc());
    if lhs.with_trunc(t) != rhs.with_trunc(t) {
        return Err(Error::HarmonicMismatch(format!("{f_id} vs {g_id}")));
    }
    let ff = faber_poly(&f, n)?;
    let fg = faber_poly(&g, n / d as usize)?;
    Ok(ff.coeffs == poly_substitute(&fg.coeffs, d as usize, &Rational::from(c)))
}

/// `F = X^t·g(X^h)` for groups with `h > 1`.
pub fn faber_structure(id: HauptmodulId, n: usize) -> Result<(usize, FaberPoly)> {
    let h = id.group().h() as usize;
    if h <= 1 {
        return Err(Error::Precondition(format!("{id} has h = 1")));
    }
    let f = hauptmodul(id, n + 40)?;
    let fp = faber_poly(&f, n)?;
    let t = n % h;
    let mut g = Vec::new();
    for (i, c) in fp.coeffs.iter().enumerate() {
        if i >= t && (i - t).is_multiple_of(h) {
            g.push(c.clone());
        } else if *c != 0 {
            return Err(Error::StructureViolation(i));
        }
    }
    Ok((t, FaberPoly { coeffs: g }))
}

/// Pointwise value of `Σ_{H∈ℋₙ} f^(H)(Hτ)`: each `Hτ` is reduced into the
/// fundamental domain of the replicate group before the series is summed.
pub fn hecke_sum_at(id: HauptmodulId, n: u64, tau: &HPoint, terms: usize) -> Result<(Cx, f64)> {
    let prec = tau.prec();
    let mut reps: HashMap<u64, (crate::groups::GroupSpec, LaurentSeries)> = HashMap::new();
    for a in divisors(n) {
        let rid = replicate_function(id, a)?;
        reps.insert(a, (rid.group(), hauptmodul(rid, terms)?));
    }
    let parts: Vec<Result<(Cx, f64)>> = hecke_set(n)
        .par_iter()
        .map(|he| {
            let (g, f) = &reps[&he.a];
            let p = he.to_matrix().apply(tau)?;
            let r = reduce(g, &p)?;
            let v = evaluate(f, &r.point, 0.0)?;
            Ok((v.value, v.err))
        })
        .collect();
    let mut acc = Cx::zero(prec);
    let mut err = 0.0;
    for p in parts {
        let (v, e) = p?;
        acc = acc.add(&v);
        err += e;
    }
    Ok((acc, err * (1.0 + 1e-12)))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ints(p: &FaberPoly) -> Vec<i64> {
        p.coeffs.iter().map(|c| c.numer().to_i64().unwrap()).collect()
    }

    #[test]
    fn faber_examples() {
        let f3 = hauptmodul(HauptmodulId::T3A, 40).unwrap();
        assert_eq!(ints(&faber_poly(&f3, 1).unwrap()), vec![0, 1]);
        assert_eq!(ints(&faber_poly(&f3, 2).unwrap()), vec![-1566, 0, 1]);
        let f2 = hauptmodul(HauptmodulId::T2A, 40).unwrap();
        // X³ − 3a₁X − 3a₂ with a₁ = 4372, a₂ = 96256; F(152) must be 1229408.
        let f23 = faber_poly(&f2, 3).unwrap();
        assert_eq!(ints(&f23), vec![-288768, -13116, 0, 1]);
        assert_eq!(152i64.pow(3) - 13116 * 152 - 288768, 1229408);
        assert!(faber_poly(&f2.with_trunc(2), 5).is_err());
    }

    #[test]
    fn hecke_sum_examples() {
        let s = twisted_hecke_sum(HauptmodulId::T1A, 1, 20).unwrap();
        assert_eq!(s, hauptmodul(HauptmodulId::T1A, 40).unwrap().with_trunc(20));
        let s3 = twisted_hecke_sum(HauptmodulId::T3C, 3, 20).unwrap();
        let f = hauptmodul(HauptmodulId::T3C, 60).unwrap();
        assert_eq!(s3, f.pow(3).add_scalar(&Rational::from(-744)).with_trunc(20));
    }

    #[test]
    fn replication_examples() {
        assert!(verify_replication(HauptmodulId::T1A, 2, 40).unwrap());
        assert!(verify_replication(HauptmodulId::T6A, 5, 40).unwrap());
        assert!(verify_replication(HauptmodulId::T4B, 1, 20).unwrap());
    }

    #[test]
    fn harmonic_examples() {
        assert!(harmonic_faber(HauptmodulId::T3C, HauptmodulId::T1A, 3, 744, 3).unwrap());
        assert!(harmonic_faber(HauptmodulId::T3C, HauptmodulId::T1A, 3, 744, 6).unwrap());
        assert!(harmonic_faber(HauptmodulId::T2A, HauptmodulId::T2A, 1, 0, 4).unwrap());
        assert!(harmonic_faber(HauptmodulId::T3C, HauptmodulId::T1A, 3, 743, 3).is_err());
    }

    #[test]
    fn structure_examples() {
        let (t, g) = faber_structure(HauptmodulId::T3C, 4).unwrap();
        assert_eq!((t, g.degree()), (1, 1));
        let (t, g) = faber_structure(HauptmodulId::T3C, 3).unwrap();
        assert_eq!((t, ints(&g)), (0, vec![-744, 1]));
        let (t, g) = faber_structure(HauptmodulId::T3C, 1).unwrap();
        assert_eq!((t, ints(&g)), (1, vec![1]));
    }
}
