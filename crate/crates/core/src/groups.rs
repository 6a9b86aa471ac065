//! The groups Γ₀(mh|h)+W and their exact (‖) kernels: exact divisors,
//! membership, canonical representatives, the λ character, Hecke sets, φₙ and
//! the replication / conjugation / extension maps.

use std::fmt;

use rug::ops::RemRounding;
use rug::{Integer, Rational};
use serde::Serialize;

use crate::error::{Error, Result};
use crate::num::{gcd_u64, RootOfUnity};
use crate::projmat::{ExtRational, ProjMatrix, QuadPoint};

/// `a * b = ab / gcd(a, b)²`.
pub fn ex_mul(a: u64, b: u64) -> u64 {
    let g = gcd_u64(a, b);
    (a / g) * (b / g)
}

pub fn is_exact_divisor(k: u64, m: u64) -> bool {
    k >= 1 && m.is_multiple_of(k) && gcd_u64(k, m / k) == 1
}

#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize)]
pub struct ExactDivisorGroup {
    m: u64,
    elements: Vec<u64>,
}

impl ExactDivisorGroup {
    /// Ex(m).
    pub fn full(m: u64) -> Self {
        assert!(m >= 1, "m must be positive");
        let elements = (1..=m).filter(|&k| is_exact_divisor(k, m)).collect();
        ExactDivisorGroup { m, elements }
    }

    /// The subgroup of Ex(m) generated by `gens`.
    pub fn generated(m: u64, gens: &[u64]) -> Result<Self> {
        let mut elements = vec![1u64];
        for &g in gens {
            if !is_exact_divisor(g, m) {
                return Err(Error::InvalidGroup(format!("{g} is not an exact divisor of {m}")));
            }
            if !elements.contains(&g) {
                let extra: Vec<u64> = elements.iter().map(|&e| ex_mul(e, g)).collect();
                elements.extend(extra);
            }
        }
        elements.sort_unstable();
        elements.dedup();
        Ok(ExactDivisorGroup { m, elements })
    }

    pub fn m(&self) -> u64 {
        self.m
    }

    pub fn elements(&self) -> &[u64] {
        &self.elements
    }

    pub fn contains(&self, k: u64) -> bool {
        self.elements.binary_search(&k).is_ok()
    }

    pub fn is_full(&self) -> bool {
        self.elements.len() == ExactDivisorGroup::full(self.m).elements.len()
    }

    /// A short generating set (for labels).
    pub fn generators(&self) -> Vec<u64> {
        let mut gens = Vec::new();
        let mut span = ExactDivisorGroup { m: self.m, elements: vec![1] };
        for &k in &self.elements {
            if !span.contains(k) {
                gens.push(k);
                span = ExactDivisorGroup::generated(self.m, &gens).expect("elements are exact divisors");
            }
        }
        gens
    }
}

pub fn exact_divisors(m: u64) -> ExactDivisorGroup {
    ExactDivisorGroup::full(m)
}

/// Γ₀(mh|h)+W, or its exact kernel Γ₀(mh‖h)+W when `exact` is set.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct GroupSpec {
    m: u64,
    h: u64,
    subgroup: ExactDivisorGroup,
    exact: bool,
}

impl GroupSpec {
    pub fn new(m: u64, h: u64, subgroup: ExactDivisorGroup, exact: bool) -> Result<Self> {
        if m == 0 || h == 0 {
            return Err(Error::InvalidGroup("m and h must be positive".into()));
        }
        if subgroup.m != m {
            return Err(Error::InvalidGroup("subgroup level differs from m".into()));
        }
        let g = GroupSpec { m, h, subgroup, exact: false };
        if exact && h > 1 && !g.lambda_supported() {
            return Err(Error::Unsupported(format!("no λ character available for {}", g.label())));
        }
        Ok(GroupSpec { exact: exact && h > 1, ..g })
    }

    /// Γ₀(m)+ with the full group of Atkin–Lehner involutions.
    pub fn plus(m: u64) -> Self {
        GroupSpec { m, h: 1, subgroup: ExactDivisorGroup::full(m), exact: false }
    }

    /// Γ₀(mh|h)+ (full W), exact kernel if requested.
    pub fn plus_h(m: u64, h: u64, exact: bool) -> Result<Self> {
        GroupSpec::new(m, h, ExactDivisorGroup::full(m), exact)
    }

    pub fn psl2z() -> Self {
        GroupSpec::plus(1)
    }

    pub fn m(&self) -> u64 {
        self.m
    }
    pub fn h(&self) -> u64 {
        self.h
    }
    pub fn level(&self) -> u64 {
        self.m * self.h
    }
    pub fn subgroup(&self) -> &ExactDivisorGroup {
        &self.subgroup
    }
    pub fn is_exact(&self) -> bool {
        self.exact
    }

    /// The non-exact group Γ₀(mh|h)+W containing this one.
    pub fn parent(&self) -> GroupSpec {
        GroupSpec { exact: false, ..self.clone() }
    }

    pub fn label(&self) -> String {
        let mut s = self.level().to_string();
        if self.h > 1 {
            s.push_str(if self.exact { "||" } else { "|" });
            s.push_str(&self.h.to_string());
        }
        if self.m > 1 && self.subgroup.elements.len() > 1 {
            s.push('+');
            if !self.subgroup.is_full() {
                let g: Vec<String> = self.subgroup.generators().iter().map(|k| k.to_string()).collect();
                s.push_str(&g.join(","));
            }
        }
        s
    }

    /// Parses selectors such as `2+`, `6+2`, `3|3`, `3||3`, `4||2+`, `1`, `PSL2`.
    pub fn parse(sel: &str) -> Result<Self> {
        let sel = sel.trim();
        if matches!(sel, "PSL2" | "PSL2(Z)" | "1" | "1+") {
            return Ok(GroupSpec::psl2z());
        }
        let bad = || Error::Usage(format!("cannot parse group selector '{sel}'"));
        let (head, tail) = match sel.find('+') {
            Some(i) => (&sel[..i], Some(&sel[i + 1..])),
            None => (sel, None),
        };
        let (level, h, exact) = if let Some((l, h)) = head.split_once("||") {
            (l, h, true)
        } else if let Some((l, h)) = head.split_once('|') {
            (l, h, false)
        } else {
            (head, "1", false)
        };
        let level: u64 = level.parse().map_err(|_| bad())?;
        let h: u64 = h.parse().map_err(|_| bad())?;
        if h == 0 || level == 0 || !level.is_multiple_of(h) {
            return Err(bad());
        }
        let m = level / h;
        let subgroup = match tail {
            None => ExactDivisorGroup::generated(m, &[])?,
            Some("") => ExactDivisorGroup::full(m),
            Some(list) => {
                let gens: Vec<u64> = list
                    .split(',')
                    .map(|t| t.trim().parse::<u64>().map_err(|_| bad()))
                    .collect::<Result<_>>()?;
                ExactDivisorGroup::generated(m, &gens)?
            }
        };
        GroupSpec::new(m, h, subgroup, exact)
    }

    pub fn has_one_cusp(&self) -> bool {
        is_square_free(self.m) && self.subgroup.is_full()
    }

    /// Canonical coset data `(k, w, x, y, z)` for `M` in the non-exact parent.
    pub fn canonical_rep(&self, mat: &ProjMatrix) -> Result<CanonicalRep> {
        let det = mat.det();
        let h = Integer::from(self.h);
        for &k in self.subgroup.elements() {
            let kh2 = Integer::from(k) * Integer::from(&h * &h);
            let ratio = Rational::from((kh2, det.clone()));
            let (num, den) = (ratio.numer().clone(), ratio.denom().clone());
            if !num.is_perfect_square() || !den.is_perfect_square() {
                continue;
            }
            let s = Rational::from((num.sqrt(), den.sqrt()));
            let scaled: Vec<Rational> = mat.entries().iter().map(|e| s.clone() * *e).collect();
            if scaled.iter().any(|q| *q.denom() != 1) {
                continue;
            }
            let ints: Vec<Integer> = scaled.into_iter().map(|q| q.into_numer_denom().0).collect();
            let kh = Integer::from(k) * &h;
            let mh2 = Integer::from(self.m) * Integer::from(&h * &h);
            if !ints[0].is_divisible(&kh) || !ints[2].is_divisible(&mh2) || !ints[3].is_divisible(&kh) {
                continue;
            }
            let rep = CanonicalRep {
                k,
                w: Integer::from(&ints[0] / &kh),
                x: ints[1].clone(),
                y: Integer::from(&ints[2] / &mh2),
                z: Integer::from(&ints[3] / &kh),
            };
            debug_assert!(rep.determinant_identity(self.m));
            return Ok(rep);
        }
        Err(Error::NotMember(self.label()))
    }

    pub fn contains(&self, mat: &ProjMatrix) -> bool {
        if self.canonical_rep(mat).is_err() {
            return false;
        }
        if self.exact {
            return self.lambda(mat).map(|l| l.is_one()).unwrap_or(false);
        }
        true
    }

    /// `r²(p/q) = (mhp, q)(hp, q) / (mh²q²)`.
    pub fn radius_from_pi(&self, p: &ExtRational) -> ExtRational {
        let Some(p) = p.finite() else {
            return ExtRational::Infinity;
        };
        let (num, q) = (p.numer().clone(), p.denom().clone());
        let mh = Integer::from(self.m * self.h);
        let hh = Integer::from(self.h);
        let g1 = Integer::from(&mh * &num).gcd(&q);
        let g2 = Integer::from(&hh * &num).gcd(&q);
        let den = mh * &hh * Integer::from(&q * &q);
        ExtRational::Finite(Rational::from((g1 * g2, den)))
    }

    /// The group element with canonical data `(k, y, z)`, choosing the least
    /// non-negative `w` that solves `kwz − (m/k)xy = 1`.
    pub fn element_from_triple(&self, k: u64, y: &Integer, z: &Integer) -> Result<CanonicalRep> {
        if !self.subgroup.contains(k) {
            return Err(Error::NotMember(self.label()));
        }
        let mk = Integer::from(self.m / k);
        let modulus = Integer::from(&mk * y);
        let kz = Integer::from(k) * z;
        if modulus == 0 {
            // y = 0 forces k = 1, z = 1.
            if kz != 1 {
                return Err(Error::Precondition("y = 0 requires k = z = 1".into()));
            }
            return Ok(CanonicalRep { k, w: 1.into(), x: 0.into(), y: 0.into(), z: z.clone() });
        }
        if kz.clone().gcd(&modulus) != 1 {
            return Err(Error::Precondition("(kz, (m/k)y) must be coprime".into()));
        }
        let w = if modulus == 1 {
            Integer::new()
        } else {
            kz.clone().invert(&modulus).map_err(|_| Error::Precondition("kz not invertible".into()))?
        };
        let x = (Integer::from(&w * &kz) - 1) / &modulus;
        let rep = CanonicalRep { k, w, x, y: y.clone(), z: z.clone() };
        debug_assert!(rep.determinant_identity(self.m));
        Ok(rep)
    }

    pub fn rep_matrix(&self, rep: &CanonicalRep) -> ProjMatrix {
        rep.to_matrix(self.m, self.h)
    }

    /// `T^{1/h}` (non-exact) or `T` (exact).
    pub fn stabilizer_generator(&self) -> ProjMatrix {
        if self.exact {
            ProjMatrix::t(&Rational::from(1))
        } else {
            ProjMatrix::t(&Rational::from((1, self.h)))
        }
    }

    /// φₙ(K) for a canonical representative; requires gcd(n, h) = 1.
    pub fn phi_n(&self, rep: &CanonicalRep, n: u64) -> Result<HeckeElement> {
        if n == 0 || gcd_u64(n, self.h) != 1 {
            return Err(Error::Precondition(format!("φₙ needs gcd(n, h) = 1 (n = {n}, h = {})", self.h)));
        }
        let mky = Integer::from(self.m / rep.k) * &rep.y;
        let a = Integer::from(n).gcd(&mky).to_u64().expect("a divides n");
        let d = n / a;
        if d == 1 {
            return Ok(HeckeElement { a, b: 0, d });
        }
        let dd = Integer::from(d);
        let u = Integer::from(&mky / a);
        let hinv = Integer::from(self.h).invert(&dd).map_err(|_| Error::Precondition("h not invertible mod d".into()))?;
        let uinv = u.invert(&dd).map_err(|_| Error::Precondition("(my)/(ak) not invertible mod d".into()))?;
        let b = (rep.z.clone() * hinv * uinv).rem_euc(&dd);
        Ok(HeckeElement { a, b: b.to_u64().expect("residue fits"), d })
    }

    /// Γ^(a) = Γ₀(mh/(mh,a) | h/(h,a)) + (W ∩ Ex(m(h,a)/(mh,a))).
    pub fn replicate(&self, a: u64) -> GroupSpec {
        assert!(a >= 1, "replication index must be positive");
        let m2 = self.m * gcd_u64(self.h, a) / gcd_u64(self.m * self.h, a);
        let h2 = self.h / gcd_u64(self.h, a);
        let elements: Vec<u64> =
            self.subgroup.elements.iter().copied().filter(|&k| is_exact_divisor(k, m2)).collect();
        self.derived(m2, h2, ExactDivisorGroup { m: m2, elements })
    }

    /// Γ_t = Γ₀(mth|th) + W.
    pub fn conjugate(&self, t: u64) -> GroupSpec {
        assert!(t >= 1, "conjugation index must be positive");
        self.derived(self.m, self.h * t, self.subgroup.clone())
    }

    /// Γ + k (no change unless k ∈ Ex(m)).
    pub fn extend(&self, k: u64) -> GroupSpec {
        if !is_exact_divisor(k, self.m) {
            return self.clone();
        }
        let mut gens = self.subgroup.elements.clone();
        gens.push(k);
        let sub = ExactDivisorGroup::generated(self.m, &gens).expect("exact divisors");
        self.derived(self.m, self.h, sub)
    }

    fn derived(&self, m: u64, h: u64, subgroup: ExactDivisorGroup) -> GroupSpec {
        let g = GroupSpec { m, h, subgroup, exact: false };
        let exact = self.exact && h > 1 && g.lambda_supported();
        GroupSpec { exact, ..g }
    }

    /// λ is implemented for h = 1 and for the catalog cases Γ₀(2‖2), Γ₀(3‖3), Γ₀(4‖2)+.
    pub fn lambda_supported(&self) -> bool {
        self.h == 1 || (self.subgroup.is_full() && matches!((self.m, self.h), (1, 2) | (1, 3) | (2, 2)))
    }

    /// The character λ on the non-exact parent, with λ(T^{1/h}) = e^{−2πi/h}.
    pub fn lambda(&self, mat: &ProjMatrix) -> Result<RootOfUnity> {
        self.parent().canonical_rep(mat)?;
        if self.h == 1 {
            return Ok(RootOfUnity::one());
        }
        if !self.lambda_supported() {
            return Err(Error::Unsupported(format!("λ for {}", self.label())));
        }
        let h = Rational::from(self.h);
        let conj = ProjMatrix::dil(&h)?.compose(mat).compose(&ProjMatrix::dil(&Rational::from((1, self.h)))?);
        let (t_shift, w_count) = word_in_t_and_fricke(self.m, &conj)?;
        // λ'(T) = e^{−2πi/h}; λ'(W₁ = S) = e^{6πi/h}; λ'(W₂) = 1.
        let zeta = RootOfUnity::from_turns(Rational::from((-1, self.h as i64)));
        let lam_w = if self.m == 1 { zeta.pow(-3) } else { RootOfUnity::one() };
        let word = zeta.pow(t_shift).mul(&lam_w.pow(w_count));
        Ok(word.inv())
    }
}

impl fmt::Display for GroupSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.label())
    }
}

impl Serialize for GroupSpec {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(&self.label())
    }
}

/// Writes `M ∈ Γ₀(m)+` (m ∈ {1, 2}) as a word `W` in `T` and `W_m` with
/// `W·M = I`, returning (total T exponent, number of `W_m` letters).
fn word_in_t_and_fricke(m: u64, mat: &ProjMatrix) -> Result<(i64, i64)> {
    let base = QuadPoint { x: Rational::from((1, 7)), y2: Rational::from(2) };
    let fricke = ProjMatrix::new(0, -1, m as i64, 0)?;
    let threshold = Rational::from((1, m));
    let mut tau = mat.apply_quad(&base);
    let mut word = ProjMatrix::identity();
    let (mut t_shift, mut w_count) = (0i64, 0i64);
    loop {
        let half = Rational::from((1, 2));
        let j = (tau.x.clone() - &half).ceil().into_numer_denom().0;
        let j64 = j.to_i64().ok_or_else(|| Error::Precision("translation overflow".into()))?;
        let shift = Rational::from(-j);
        tau = tau.translate(&shift);
        word = ProjMatrix::t(&shift).compose(&word);
        t_shift -= j64;
        if tau.norm_sq() < threshold {
            tau = fricke.apply_quad(&tau);
            word = fricke.compose(&word);
            w_count += 1;
        } else {
            break;
        }
    }
    if tau != base || !word.compose(mat).is_identity() {
        return Err(Error::Unsupported("word reduction did not close".into()));
    }
    Ok((t_shift, w_count))
}

pub fn is_square_free(m: u64) -> bool {
    let mut p = 2u64;
    while p * p <= m {
        if m.is_multiple_of(p * p) {
            return false;
        }
        p += 1;
    }
    true
}

/// `(khw, x; mh²y, khz)` with `kwz − (m/k)xy = 1`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize)]
pub struct CanonicalRep {
    pub k: u64,
    #[serde(serialize_with = "ser_int")]
    pub w: Integer,
    #[serde(serialize_with = "ser_int")]
    pub x: Integer,
    #[serde(serialize_with = "ser_int")]
    pub y: Integer,
    #[serde(serialize_with = "ser_int")]
    pub z: Integer,
}

fn ser_int<S: serde::Serializer>(v: &Integer, s: S) -> std::result::Result<S::Ok, S::Error> {
    s.serialize_str(&v.to_string())
}

impl CanonicalRep {
    pub fn determinant_identity(&self, m: u64) -> bool {
        let lhs = Integer::from(self.k) * &self.w * &self.z - Integer::from(m / self.k) * &self.x * &self.y;
        lhs == 1
    }

    pub fn to_matrix(&self, m: u64, h: u64) -> ProjMatrix {
        let kh = Integer::from(self.k * h);
        let mh2 = Integer::from(m * h * h);
        ProjMatrix::new(
            Integer::from(&kh * &self.w),
            self.x.clone(),
            Integer::from(&mh2 * &self.y),
            Integer::from(&kh * &self.z),
        )
        .expect("determinant kh² > 0")
    }
}

/// A left Γ_∞-coset, identified by the arc data (π, ρ²) of any representative.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize)]
pub struct CosetClass {
    pub pi: ExtRational,
    pub rho_sq: ExtRational,
}

impl CosetClass {
    pub fn of(mat: &ProjMatrix) -> Self {
        CosetClass { pi: mat.pi(), rho_sq: mat.rho_sq() }
    }

    pub fn is_identity_class(&self) -> bool {
        self.pi.is_infinite()
    }
}

impl fmt::Display for CosetClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[π={}, ρ²={}]", self.pi, self.rho_sq)
    }
}

/// `(a b; 0 d)` with `ad = n`, `0 ≤ b < d`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct HeckeElement {
    pub a: u64,
    pub b: u64,
    pub d: u64,
}

impl HeckeElement {
    pub fn n(&self) -> u64 {
        self.a * self.d
    }

    pub fn to_matrix(&self) -> ProjMatrix {
        ProjMatrix::new(self.a, self.b, 0, self.d).expect("ad > 0")
    }

    pub fn is_reduced(&self) -> bool {
        gcd_u64(gcd_u64(self.a, self.b), self.d) == 1
    }
}

impl fmt::Display for HeckeElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({},{},{})", self.a, self.b, self.d)
    }
}

pub fn hecke_set(n: u64) -> Vec<HeckeElement> {
    assert!(n >= 1, "Hecke level must be positive");
    let mut out = Vec::new();
    for a in (1..=n).rev().filter(|a| n.is_multiple_of(*a)) {
        let d = n / a;
        for b in 0..d {
            out.push(HeckeElement { a, b, d });
        }
    }
    out
}

pub fn reduced_hecke_set(n: u64) -> Vec<HeckeElement> {
    hecke_set(n).into_iter().filter(|e| e.is_reduced()).collect()
}

pub fn dn(n: u64) -> ProjMatrix {
    ProjMatrix::new(n, 0, 0, 1).expect("n > 0")
}

/// `Dₙ·K·H⁻¹`.
pub fn dn_k_hinv(n: u64, k: &ProjMatrix, hk: &HeckeElement) -> ProjMatrix {
    dn(n).compose(k).compose(&hk.to_matrix().inverse())
}

#[derive(Clone, Debug, Serialize)]
pub struct CosetViolation {
    pub k: String,
    pub hecke: HeckeElement,
    pub phi: HeckeElement,
    pub member: bool,
}

#[derive(Clone, Debug, Serialize)]
pub struct CosetPartitionReport {
    pub group: String,
    pub n: u64,
    pub entry_bound: i64,
    pub elements_checked: usize,
    pub violations: Vec<CosetViolation>,
}

/// Brute-force check that `Dₙ·K·H⁻¹ ∈ Γ^(H)` exactly when `H = φₙ(K)`.
pub fn coset_partition_report(g: &GroupSpec, n: u64, entry_bound: i64) -> Result<CosetPartitionReport> {
    let parent = g.parent();
    if gcd_u64(n, g.h) != 1 {
        return Err(Error::Precondition("gcd(n, h) must be 1".into()));
    }
    let hecke = hecke_set(n);
    let targets: Vec<GroupSpec> = hecke.iter().map(|e| parent.replicate(e.a)).collect();
    let b = entry_bound;
    let mut checked = 0usize;
    let mut violations = Vec::new();
    for &k in parent.subgroup.elements() {
        let mk = (parent.m / k) as i64;
        for y in 0..=b {
            for z in -b..=b {
                if y == 0 && z <= 0 {
                    continue;
                }
                for w in -b..=b {
                    for x in -b..=b {
                        if k as i64 * w * z - mk * x * y != 1 {
                            continue;
                        }
                        let rep = CanonicalRep { k, w: w.into(), x: x.into(), y: y.into(), z: z.into() };
                        let mat = parent.rep_matrix(&rep);
                        let phi = parent.phi_n(&rep, n)?;
                        checked += 1;
                        for (he, target) in hecke.iter().zip(&targets) {
                            let member = target.canonical_rep(&dn_k_hinv(n, &mat, he)).is_ok();
                            if member != (*he == phi) {
                                violations.push(CosetViolation { k: mat.to_string(), hecke: *he, phi, member });
                            }
                        }
                    }
                }
            }
        }
    }
    Ok(CosetPartitionReport { group: g.label(), n, entry_bound, elements_checked: checked, violations })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::num::rat;

    fn pm(a: i64, b: i64, c: i64, d: i64) -> ProjMatrix {
        ProjMatrix::new(a, b, c, d).unwrap()
    }

    #[test]
    fn exact_divisor_examples() {
        assert_eq!(exact_divisors(6).elements(), &[1, 2, 3, 6]);
        assert_eq!(exact_divisors(12).elements(), &[1, 3, 4, 12]);
        assert_eq!(exact_divisors(1).elements(), &[1]);
    }

    #[test]
    fn membership_examples() {
        let w2 = pm(0, -1, 2, 0);
        assert!(GroupSpec::plus(2).contains(&w2));
        assert!(!GroupSpec::parse("2").unwrap().contains(&w2));
        let t3 = ProjMatrix::t(&rat(1, 3));
        assert!(GroupSpec::parse("3|3").unwrap().contains(&t3));
        assert!(!GroupSpec::parse("3||3").unwrap().contains(&t3));
        assert!(GroupSpec::parse("3||3").unwrap().contains(&ProjMatrix::t(&rat(1, 1))));
    }

    #[test]
    fn canonical_rep_examples() {
        let g2 = GroupSpec::plus(2);
        let id = g2.canonical_rep(&ProjMatrix::identity()).unwrap();
        assert_eq!((id.k, id.w.to_i64(), id.x.to_i64(), id.y.to_i64(), id.z.to_i64()), (1, Some(1), Some(0), Some(0), Some(1)));
        let w = g2.canonical_rep(&pm(0, -1, 2, 0)).unwrap();
        assert_eq!((w.k, w.w, w.x, w.y, w.z), (2, 0.into(), (-1).into(), 1.into(), 0.into()));
        let r = GroupSpec::plus(6).canonical_rep(&pm(3, -2, 6, -3)).unwrap();
        assert_eq!((r.k, r.w, r.x, r.y, r.z), (3, 1.into(), (-2).into(), 1.into(), (-1).into()));
        assert!(g2.canonical_rep(&pm(1, 0, 1, 1)).is_err());
    }

    #[test]
    fn radius_examples() {
        let f = |g: &GroupSpec, p: Rational| g.radius_from_pi(&ExtRational::Finite(p));
        assert_eq!(f(&GroupSpec::plus(2), rat(0, 1)), ExtRational::Finite(rat(1, 2)));
        let g52 = GroupSpec::plus_h(5, 2, false).unwrap();
        assert_eq!(f(&g52, rat(3, 10)), ExtRational::Finite(rat(1, 100)));
        assert_eq!(f(&GroupSpec::plus(6), rat(1, 2)), ExtRational::Finite(rat(1, 12)));
    }

    #[test]
    fn cusp_examples() {
        assert!(GroupSpec::plus(2).has_one_cusp());
        assert!(!GroupSpec::plus(4).has_one_cusp());
        assert!(!GroupSpec::parse("6+2").unwrap().has_one_cusp());
    }

    #[test]
    fn hecke_examples() {
        let h3 = hecke_set(3);
        let want = [(3, 0, 1), (1, 0, 3), (1, 1, 3), (1, 2, 3)];
        assert_eq!(h3.len(), 4);
        for (a, b, d) in want {
            assert!(h3.contains(&HeckeElement { a, b, d }));
        }
        assert_eq!(hecke_set(1), vec![HeckeElement { a: 1, b: 0, d: 1 }]);
        assert_eq!(hecke_set(4).len(), 7);
        assert_eq!(reduced_hecke_set(4).len(), 6);
        assert!(!reduced_hecke_set(4).contains(&HeckeElement { a: 2, b: 0, d: 2 }));
    }

    #[test]
    fn phi_examples() {
        let g = GroupSpec::psl2z();
        let id = g.canonical_rep(&ProjMatrix::identity()).unwrap();
        assert_eq!(g.phi_n(&id, 7).unwrap(), HeckeElement { a: 7, b: 0, d: 1 });
        let s = g.canonical_rep(&ProjMatrix::s()).unwrap();
        assert_eq!(g.phi_n(&s, 2).unwrap(), HeckeElement { a: 1, b: 0, d: 2 });
        let g2 = GroupSpec::plus(2);
        let k = g2.canonical_rep(&pm(1, 0, 2, 1)).unwrap();
        assert_eq!(g2.phi_n(&k, 3).unwrap(), HeckeElement { a: 1, b: 2, d: 3 });
        assert!(GroupSpec::parse("3|3").unwrap().phi_n(&id, 3).is_err());
    }

    #[test]
    fn replicate_examples() {
        assert_eq!(GroupSpec::plus(6).replicate(2), GroupSpec::plus(3));
        assert_eq!(GroupSpec::parse("3|3").unwrap().replicate(3), GroupSpec::psl2z());
        let g = GroupSpec::parse("4||2+").unwrap();
        assert_eq!(g.replicate(1), g);
        assert_eq!(g.replicate(3), g);
        assert_eq!(g.replicate(2), GroupSpec::plus(2));
    }

    #[test]
    fn lambda_examples() {
        let g = GroupSpec::parse("3|3").unwrap();
        assert_eq!(g.lambda(&ProjMatrix::t(&rat(1, 3))).unwrap(), RootOfUnity::from_turns(rat(-1, 3)));
        assert!(g.lambda(&pm(0, -1, 9, 0)).unwrap().is_one());
        assert_eq!(g.lambda(&pm(1, 0, 3, 1)).unwrap(), RootOfUnity::from_turns(rat(1, 3)));
        assert_eq!(g.lambda(&pm(3, 0, 9, 3)).unwrap(), RootOfUnity::from_turns(rat(1, 3)));
        assert!(GroupSpec::plus(6).lambda(&pm(3, -2, 6, -3)).unwrap().is_one());
        let g4 = GroupSpec::parse("4|2+").unwrap();
        assert!(g4.lambda(&pm(0, -1, 8, 0)).unwrap().is_one());
        assert_eq!(g4.lambda(&ProjMatrix::t(&rat(1, 2))).unwrap(), RootOfUnity::from_turns(rat(1, 2)));
        assert!(GroupSpec::parse("5|5").unwrap().lambda(&ProjMatrix::identity()).is_err());
    }

    #[test]
    fn labels_round_trip() {
        for s in ["1", "2+", "6+", "6+2", "3|3", "3||3", "4||2+", "2||2", "10+", "4|2+"] {
            assert_eq!(GroupSpec::parse(s).unwrap().label(), s);
        }
    }

    #[test]
    fn coset_partition_small() {
        let r = coset_partition_report(&GroupSpec::psl2z(), 2, 5).unwrap();
        assert!(r.violations.is_empty() && r.elements_checked > 0);
        let r1 = coset_partition_report(&GroupSpec::plus(2), 1, 4).unwrap();
        assert!(r1.violations.is_empty());
    }
}
