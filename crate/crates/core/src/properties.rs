//! Randomized property suites over the group machinery, runnable outside the
//! test harness (the `selftest` subcommand uses them).
//!
//! Each suite draws from a deterministic ChaCha stream, so a given case count
//! always replays the same inputs.

use std::fmt;

use proptest::prelude::*;
use proptest::test_runner::{Config, RngAlgorithm, TestCaseError, TestError, TestRng, TestRunner};
use rug::{Integer, Rational};
use serde::Serialize;

use crate::fundomain::y0_bound_check;
use crate::groups::{coset_partition_report, hecke_set, GroupSpec};
use crate::num::gcd_u64;
use crate::projmat::{involutory_decompose, ExtRational, ProjMatrix};
use crate::qseries::HauptmodulId;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum Suite {
    DecompositionRoundTrip,
    MatrixCommutations,
    PiRhoIdentities,
    PhiCosetInvariance,
    GhkDichotomy,
    CosetPartition,
    Y0Bound,
}

impl Suite {
    pub const ALL: [Suite; 7] = [
        Suite::DecompositionRoundTrip,
        Suite::MatrixCommutations,
        Suite::PiRhoIdentities,
        Suite::PhiCosetInvariance,
        Suite::GhkDichotomy,
        Suite::CosetPartition,
        Suite::Y0Bound,
    ];
}

impl fmt::Display for Suite {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Suite::DecompositionRoundTrip => "involutory decomposition round-trip",
            Suite::MatrixCommutations => "matrix commutation identities",
            Suite::PiRhoIdentities => "π/ρ² identities",
            Suite::PhiCosetInvariance => "φₙ coset invariance",
            Suite::GhkDichotomy => "GHK⁻¹ dichotomy",
            Suite::CosetPartition => "coset partition reports",
            Suite::Y0Bound => "y₀ ≥ √3/(2mh)",
        })
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct SuiteOutcome {
    pub suite: Suite,
    pub cases: u32,
    pub pass: bool,
    pub detail: String,
}

fn fail<E: fmt::Display>(e: E) -> TestCaseError {
    TestCaseError::fail(e.to_string())
}

fn q(n: i64, d: i64) -> Rational {
    Rational::from((n, d))
}

fn rational() -> impl Strategy<Value = Rational> {
    (-40i64..=40, 1i64..=12).prop_map(|(n, d)| q(n, d))
}

fn positive_rational() -> impl Strategy<Value = Rational> {
    (1i64..=40, 1i64..=12).prop_map(|(n, d)| q(n, d))
}

/// Entries in [−50, 50] with positive determinant.
pub fn matrix() -> impl Strategy<Value = ProjMatrix> {
    [-50i64..=50, -50i64..=50, -50i64..=50, -50i64..=50]
        .prop_filter_map("det > 0", |[a, b, c, d]| ProjMatrix::new(a, b, c, d).ok())
}

fn matrix_off_infinity() -> impl Strategy<Value = ProjMatrix> {
    [-50i64..=50, -50i64..=50, 1i64..=50, -50i64..=50]
        .prop_filter_map("det > 0", |[a, b, c, d]| ProjMatrix::new(a, b, c, d).ok())
}

fn power(m: &ProjMatrix, e: i64) -> ProjMatrix {
    let base = if e < 0 { m.inverse() } else { m.clone() };
    (0..e.unsigned_abs()).fold(ProjMatrix::identity(), |acc, _| acc.compose(&base))
}

fn dil(y: &Rational) -> ProjMatrix {
    ProjMatrix::dil(y).expect("positive dilation")
}

/// Non-exact one-cusp groups of the catalog.
pub fn catalog_parents() -> Vec<GroupSpec> {
    let mut out: Vec<GroupSpec> = Vec::new();
    for id in HauptmodulId::CATALOG {
        let g = id.group().parent();
        if !out.contains(&g) {
            out.push(g);
        }
    }
    out
}

/// Smallest `n' ≥ n` coprime to `h`.
fn coprime_from(n: u64, h: u64) -> u64 {
    (n..).find(|&v| gcd_u64(v, h) == 1).expect("unbounded search")
}

/// A group element with canonical data `(k, y', z')`: the first `y' ≥ y`
/// coprime to `k`, then the first `z' ≥ z` meeting the coprimality condition.
fn element(g: &GroupSpec, k_idx: usize, y: u64, z: i64) -> ProjMatrix {
    let ks = g.subgroup().elements();
    let k = ks[k_idx % ks.len()];
    let y = coprime_from(y, k);
    let modulus = (g.m() / k) * y;
    let z = (z..).find(|&z| gcd_u64((k as i64 * z).unsigned_abs(), modulus) == 1).expect("coprime z");
    let rep = g.element_from_triple(k, &Integer::from(y), &Integer::from(z)).expect("coprime triple");
    g.rep_matrix(&rep)
}

/// An element of `g` whose arc centre is `p`; exists because `g` has one cusp.
fn element_with_pi(g: &GroupSpec, p: &Rational) -> Option<ProjMatrix> {
    let (u, v) = (p.numer().clone(), p.denom().clone());
    let mh = Integer::from(g.m() * g.h());
    let ymax = Integer::from(&v * &mh).to_u64()?;
    for y in 1..=ymax {
        for &k in g.subgroup().elements() {
            // −kz/(mhy) = u/v
            let num = Integer::from(-&u) * &mh * y;
            let den = Integer::from(&v * k);
            if !num.is_divisible(&den) {
                continue;
            }
            let z = Integer::from(&num / &den);
            let kz = Integer::from(&z * k);
            if kz.gcd(&Integer::from((g.m() / k) * y)) != 1 {
                continue;
            }
            let rep = g.element_from_triple(k, &Integer::from(y), &z).ok()?;
            return Some(g.rep_matrix(&rep));
        }
    }
    None
}

fn check_round_trip(m: ProjMatrix) -> Result<(), TestCaseError> {
    prop_assert_eq!(involutory_decompose(&m).to_matrix(), m);
    Ok(())
}

fn check_commutations(
    (s, t, x, y, p, qd): (Rational, Rational, Rational, Rational, i64, i64),
) -> Result<(), TestCaseError> {
    let tm = |v: &Rational| ProjMatrix::t(v);
    let st = ProjMatrix::s();
    prop_assert_eq!(tm(&s).compose(&tm(&t)), tm(&(s.clone() + &t)));
    // (T^s)^{p/qd} = T^{sp/qd}, checked after raising both sides to qd.
    let frac = q(p, qd);
    prop_assert_eq!(power(&tm(&(s.clone() * &frac)), qd), power(&tm(&s), p));
    prop_assert_eq!(dil(&x).compose(&dil(&y)), dil(&(x.clone() * &y)));
    prop_assert_eq!(dil(&x).inverse(), dil(&x.clone().recip()));
    prop_assert_eq!(st.inverse(), st.clone());
    prop_assert_eq!(dil(&y).compose(&tm(&t)), tm(&(t.clone() * &y)).compose(&dil(&y)));
    prop_assert_eq!(dil(&y).compose(&st), st.compose(&dil(&y).inverse()));
    let sts = st.compose(&tm(&t)).compose(&st);
    if t == 0 {
        prop_assert!(sts.is_identity());
    } else {
        let ti = -t.clone().recip();
        let rhs = tm(&ti).compose(&dil(&(t.clone() * &t).recip())).compose(&st).compose(&tm(&ti));
        prop_assert_eq!(sts, rhs);
    }
    Ok(())
}

fn check_pi_rho((a, b, d, m): (i64, i64, i64, ProjMatrix)) -> Result<(), TestCaseError> {
    let h = ProjMatrix::new(a, b, 0, d).map_err(fail)?;
    let hm = h.compose(&m);
    prop_assert_eq!(hm.pi(), m.pi());
    let (ExtRational::Finite(r_hm), ExtRational::Finite(r_m)) = (hm.rho_sq(), m.rho_sq()) else {
        return Err(fail("c = 0 after multiplying by an upper-triangular matrix"));
    };
    prop_assert_eq!(r_hm, h.sigma() * &r_m);
    prop_assert_eq!(m.rho_sq(), m.inverse().rho_sq());
    prop_assert_eq!(m.pi(), m.inverse().apply_boundary(&ExtRational::Infinity));
    prop_assert_eq!(hm.theta(), h.theta() + h.sigma() * m.theta());
    Ok(())
}

fn check_phi_invariance(
    (gi, k_idx, y, z, n, r): (usize, usize, u64, i64, u64, i64),
) -> Result<(), TestCaseError> {
    let groups = catalog_parents();
    let g = &groups[gi % groups.len()];
    let n = coprime_from(n, g.h());
    let k = element(g, k_idx, y, z);
    let moved = ProjMatrix::t(&q(r, g.h() as i64)).compose(&k);
    let a = g.phi_n(&g.canonical_rep(&k).map_err(fail)?, n).map_err(fail)?;
    let b = g.phi_n(&g.canonical_rep(&moved).map_err(fail)?, n).map_err(fail)?;
    prop_assert_eq!(a, b);
    Ok(())
}

fn check_dichotomy(
    (gi, n, hi, k_idx, y, z): (usize, u64, usize, usize, u64, i64),
) -> Result<(), TestCaseError> {
    let groups = catalog_parents();
    let g = &groups[gi % groups.len()];
    let n = coprime_from(n, g.h());
    let set = hecke_set(n);
    let he = set[hi % set.len()];
    let target = g.replicate(he.a);
    let gm = element(&target, k_idx, y, z);
    let gh = gm.compose(&he.to_matrix());
    let ExtRational::Finite(p) = gh.pi() else {
        return Err(fail("GH fixes ∞"));
    };
    let k = element_with_pi(g, &p).ok_or_else(|| fail(format!("no element of {g} with π = {p}")))?;
    let m = gh.compose(&k.inverse());
    prop_assert!(m.fixes_infinity(), "GHK⁻¹ = {} does not fix ∞", m);
    let sigma = m.sigma();
    let phi = g.phi_n(&g.canonical_rep(&k).map_err(fail)?, n).map_err(fail)?;
    if phi == he {
        prop_assert_eq!(sigma, Rational::from(n));
    } else {
        prop_assert!(sigma <= q(n as i64, 2), "σ = {} for H = {} ≠ φₙ(K) = {}", sigma, he, phi);
    }
    Ok(())
}

fn runner(cases: u32) -> TestRunner {
    let config = Config { cases, failure_persistence: None, ..Config::default() };
    TestRunner::new_with_rng(config, TestRng::deterministic_rng(RngAlgorithm::ChaCha))
}

fn outcome<T: fmt::Debug>(suite: Suite, cases: u32, r: Result<(), TestError<T>>) -> SuiteOutcome {
    match r {
        Ok(()) => SuiteOutcome { suite, cases, pass: true, detail: format!("{cases} cases") },
        Err(e) => SuiteOutcome { suite, cases, pass: false, detail: e.to_string() },
    }
}

/// Runs one suite. The last two suites are exhaustive checks; `cases` is
/// reported but not used by them.
pub fn run_suite(suite: Suite, cases: u32) -> SuiteOutcome {
    let mut run = runner(cases);
    match suite {
        Suite::DecompositionRoundTrip => outcome(suite, cases, run.run(&matrix(), check_round_trip)),
        Suite::MatrixCommutations => {
            let strat = (rational(), rational(), positive_rational(), positive_rational(), -6i64..=6, 1i64..=6);
            outcome(suite, cases, run.run(&strat, check_commutations))
        }
        Suite::PiRhoIdentities => {
            let strat = (1i64..=20, -30i64..=30, 1i64..=20, matrix_off_infinity());
            outcome(suite, cases, run.run(&strat, check_pi_rho))
        }
        Suite::PhiCosetInvariance => {
            let strat = (0usize..64, 0usize..8, 1u64..=8, -30i64..=30, 1u64..=40, -50i64..=50);
            outcome(suite, cases, run.run(&strat, check_phi_invariance))
        }
        Suite::GhkDichotomy => {
            let strat = (0usize..64, 1u64..=24, 0usize..1024, 0usize..8, 1u64..=6, -20i64..=20);
            outcome(suite, cases, run.run(&strat, check_dichotomy))
        }
        Suite::CosetPartition => {
            let mut checked = 0;
            for (g, n) in [(GroupSpec::psl2z(), 2), (GroupSpec::psl2z(), 3), (GroupSpec::plus(2), 3), (GroupSpec::plus(2), 5)] {
                match coset_partition_report(&g, n, 12) {
                    Ok(r) if r.violations.is_empty() => checked += r.elements_checked,
                    Ok(r) => {
                        return SuiteOutcome {
                            suite,
                            cases,
                            pass: false,
                            detail: format!("{} violations for ({g}, n = {n})", r.violations.len()),
                        }
                    }
                    Err(e) => return SuiteOutcome { suite, cases, pass: false, detail: e.to_string() },
                }
            }
            SuiteOutcome { suite, cases, pass: true, detail: format!("{checked} elements, no violations") }
        }
        Suite::Y0Bound => {
            let groups: Vec<GroupSpec> = HauptmodulId::CATALOG.iter().map(|id| id.group()).collect();
            let bad: Vec<String> = groups
                .iter()
                .filter(|g| !matches!(y0_bound_check(g), Ok(true)))
                .map(|g| g.label())
                .collect();
            SuiteOutcome {
                suite,
                cases,
                pass: bad.is_empty(),
                detail: if bad.is_empty() { format!("{} groups", groups.len()) } else { format!("fails for {}", bad.join(", ")) },
            }
        }
    }
}

pub fn run_all(cases: u32) -> Vec<SuiteOutcome> {
    Suite::ALL.iter().map(|&s| run_suite(s, cases)).collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fundomain::reduce;
    use crate::groups::ex_mul;
    use crate::projmat::{HPoint, QuadPoint};

    #[test]
    fn suites_at_1000_cases() {
        for s in Suite::ALL {
            let o = run_suite(s, 1000);
            assert!(o.pass, "{s}: {}", o.detail);
        }
    }

    #[test]
    fn element_with_pi_finds_cusp_maps() {
        for g in catalog_parents() {
            for p in [q(1, 3), q(-2, 7), q(5, 12)] {
                let k = element_with_pi(&g, &p).unwrap();
                assert_eq!(k.pi(), ExtRational::Finite(p.clone()), "{g}");
                assert!(g.contains(&k));
            }
        }
    }

    proptest! {
        #![proptest_config(Config::with_cases(1000))]

        #[test]
        fn ex_closure(m in prop::sample::select(vec![1u64, 2, 3, 5, 6, 7, 10, 30]), i in 0usize..8, j in 0usize..8) {
            let ex = crate::groups::exact_divisors(m);
            let els = ex.elements();
            let (a, b) = (els[i % els.len()], els[j % els.len()]);
            prop_assert!(ex.contains(ex_mul(a, b)));
            prop_assert_eq!(ex_mul(ex_mul(a, b), b), a);
        }

        #[test]
        fn stabilizer_membership(gi in 0usize..64, r in -30i64..=30) {
            let groups = catalog_parents();
            let g = &groups[gi % groups.len()];
            prop_assert!(g.contains(&ProjMatrix::t(&q(r, g.h() as i64))));
            if g.h() > 1 {
                let exact = GroupSpec::new(g.m(), g.h(), g.subgroup().clone(), true).unwrap();
                prop_assert_eq!(exact.contains(&ProjMatrix::t(&q(r, g.h() as i64))), r % g.h() as i64 == 0);
            }
        }
    }

    proptest! {
        #![proptest_config(Config::with_cases(200))]

        #[test]
        fn reduce_is_idempotent_and_orbit_invariant(
            gi in 0usize..64, x in -60i64..=60, y2 in 1i64..=1600, k_idx in 0usize..8, ky in 1u64..=4, kz in -8i64..=8,
        ) {
            let groups = catalog_parents();
            let g = &groups[gi % groups.len()];
            let tau = HPoint::from_quad(&QuadPoint::new(q(x, 37), q(y2, 1600)).unwrap(), 128).unwrap();
            let r = reduce(g, &tau).unwrap();
            let again = reduce(g, &r.point).unwrap();
            prop_assert!(again.transform.is_identity(), "{} not reduced: {}", g, again.transform);
            let k = element(g, k_idx, ky, kz);
            let moved = HPoint::from_quad(&k.apply_quad(tau.exact.as_ref().unwrap()), 128).unwrap();
            let r2 = reduce(g, &moved).unwrap();
            prop_assert_eq!(r.point.exact, r2.point.exact);
        }
    }
}
