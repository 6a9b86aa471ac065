//! The acceptance suite: eleven numbered checks, each reported as one
//! PASS/FAIL line. Shared by the `selftest` subcommand and the `acceptance`
//! integration test.

use std::fmt;
use std::time::Instant;

use rayon::prelude::*;
use rug::{Integer, Rational};
use serde::Serialize;

use crate::error::Result;
use crate::faber::{faber_poly, harmonic_faber, verify_replication};
use crate::fundomain::{constants, critical_set};
use crate::groups::{CosetClass, GroupSpec};
use crate::num::Surd;
use crate::projmat::ProjMatrix;
use crate::properties;
use crate::qseries::{hauptmodul, special_value_suite, HauptmodulId};
use crate::zerocert::{bound_m, case_envelope, certify_range, value_interval_sweep, CertOptions, Status};

pub const CRITERIA: std::ops::RangeInclusive<u8> = 1..=11;

#[derive(Clone, Debug, Serialize)]
pub struct CriterionReport {
    pub number: u8,
    pub title: &'static str,
    pub pass: bool,
    pub detail: String,
    pub seconds: f64,
}

impl fmt::Display for CriterionReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "{} criterion {:>2} ({}) [{:.2}s]: {}",
            if self.pass { "PASS" } else { "FAIL" },
            self.number,
            self.title,
            self.seconds,
            self.detail
        )
    }
}

pub fn title(n: u8) -> &'static str {
    match n {
        1 => "critical sets",
        2 => "domain constants",
        3 => "q-expansion coefficients",
        4 => "Faber polynomials",
        5 => "special values",
        6 => "M bounds",
        7 => "replication",
        8 => "harmonic identity",
        9 => "zero certification",
        10 => "property suites",
        11 => "value intervals",
        _ => "unknown",
    }
}

/// Runs one criterion; errors inside a check count as failures.
pub fn run_criterion(n: u8) -> CriterionReport {
    let start = Instant::now();
    let out = match n {
        1 => critical_sets(),
        2 => domain_constants(),
        3 => coefficients(),
        4 => faber_polys(),
        5 => special_values(),
        6 => m_bounds(),
        7 => replication(),
        8 => harmonic(),
        9 => zero_certification(),
        10 => property_suites(),
        11 => value_intervals(),
        _ => Ok((false, format!("no criterion {n}"))),
    };
    let (pass, detail) = out.unwrap_or_else(|e| (false, format!("error: {e}")));
    CriterionReport { number: n, title: title(n), pass, detail, seconds: start.elapsed().as_secs_f64() }
}

/// Runs the listed criteria in order, handing each report to `sink` as it
/// completes.
pub fn run_with(which: &[u8], mut sink: impl FnMut(&CriterionReport)) -> Vec<CriterionReport> {
    which
        .iter()
        .map(|&n| {
            let r = run_criterion(n);
            sink(&r);
            r
        })
        .collect()
}

pub fn run_all() -> Vec<CriterionReport> {
    run_with(&CRITERIA.collect::<Vec<_>>(), |_| {})
}

type Check = Result<(bool, String)>;

fn pm(a: i64, b: i64, c: i64, d: i64) -> ProjMatrix {
    ProjMatrix::new(a, b, c, d).expect("table matrices have positive determinant")
}

fn critical_sets() -> Check {
    let table: [(&str, Vec<ProjMatrix>); 4] = [
        ("1", vec![ProjMatrix::identity(), pm(0, -1, 1, 0), pm(0, -1, 1, -1)]),
        ("2+", vec![ProjMatrix::identity(), pm(0, -1, 2, 0), pm(0, -1, 2, -2), pm(1, -1, 2, -1)]),
        ("6+", vec![ProjMatrix::identity(), pm(0, -1, 6, 0), pm(3, -2, 6, -3), pm(2, -1, 6, -2)]),
        ("3|3", vec![ProjMatrix::identity(), pm(0, -1, 9, 0), pm(0, -1, 9, -3)]),
    ];
    let mut notes = Vec::new();
    let mut pass = true;
    for (sel, reps) in table {
        let g = GroupSpec::parse(sel)?;
        let t = Instant::now();
        let got = critical_set(&g)?;
        let secs = t.elapsed().as_secs_f64();
        let mut want: Vec<CosetClass> = reps.iter().map(CosetClass::of).collect();
        let mut have: Vec<CosetClass> = got.classes.iter().map(|c| c.class.clone()).collect();
        let key = |c: &CosetClass| (c.pi.to_string(), c.rho_sq.to_string());
        want.sort_by_key(key);
        have.sort_by_key(key);
        let ok = want == have && secs < 1.0;
        pass &= ok;
        let shown: Vec<String> = have.iter().map(|c| c.to_string()).collect();
        notes.push(format!("{}{} {{{}}} {:.3}s", g.label(), if ok { "" } else { " MISMATCH" }, shown.join(", "), secs));
    }
    Ok((pass, notes.join("; ")))
}

/// The table lists N itself for 2+ and 3|3 but the rounded working value for
/// 6+, where N = max(5√6, 6) = 5√6 is taken up to 13.
fn domain_constants() -> Check {
    let r = |n: i64, d: i64| Rational::from((n, d));
    let mut notes = Vec::new();
    let mut pass = true;
    for sel in ["2+", "6+", "3|3"] {
        let g = GroupSpec::parse(sel)?;
        let t = Instant::now();
        let c = constants(&g)?;
        let secs = t.elapsed().as_secs_f64();
        let n_ok = match sel {
            "2+" => c.n == Surd::sqrt(&r(18, 1)) && c.n_int == 5,
            "6+" => c.n1 == Surd::sqrt(&r(150, 1)) && c.n2 == 6 && c.n == c.n1 && c.n_int == 13,
            _ => c.n == Surd::rational(r(9, 1)) && c.n_int == 9,
        };
        let ok = c.c == r(1, 2) && n_ok && secs < 5.0;
        pass &= ok;
        notes.push(format!(
            "{}: c = {}, N₁ = {}, N₂ = {}, N = {} (N_int = {}){} {:.3}s",
            g.label(),
            c.c,
            c.n1,
            c.n2,
            c.n,
            c.n_int,
            if ok { "" } else { " MISMATCH" },
            secs
        ));
    }
    Ok((pass, notes.join("; ")))
}

fn coefficients() -> Check {
    let table: [(HauptmodulId, &[(i64, i64)]); 4] = [
        (HauptmodulId::T1A, &[(1, 196884), (2, 21493760)]),
        (HauptmodulId::T2A, &[(1, 4372), (2, 96256), (3, 1240002)]),
        (HauptmodulId::T6A, &[(1, 79), (2, 352), (3, 1431), (4, 4160), (5, 13015)]),
        (HauptmodulId::T3C, &[(2, 248), (5, 4124), (8, 34752)]),
    ];
    let mut bad = Vec::new();
    let mut count = 0;
    for (id, want) in table {
        let f = hauptmodul(id, 16)?;
        for &(e, v) in want {
            count += 1;
            if f.at(e) != v {
                bad.push(format!("T_{id} q^{e}: {} ≠ {v}", f.at(e)));
            }
        }
    }
    Ok(if bad.is_empty() {
        (true, format!("{count} coefficients match"))
    } else {
        (false, bad.join("; "))
    })
}

fn faber_polys() -> Check {
    let f3 = faber_poly(&hauptmodul(HauptmodulId::T3A, 16)?, 2)?;
    let f2 = hauptmodul(HauptmodulId::T2A, 16)?;
    let f23 = faber_poly(&f2, 3)?;
    let ok3 = f3.coeff_strings() == ["-1566", "0", "1"];
    let ok2 = f23.coeff_strings() == ["-288768", "-13118", "0", "1"];
    let mut detail = format!("F_2,3A = {f3} ({}); F_3,2A = {f23}", if ok3 { "ok" } else { "MISMATCH" });
    if !ok2 {
        // The listed X-coefficient disagrees with −3a₁ and with the check
        // value F_3,2A(152) = 1229408; report which one the output satisfies.
        let a1 = f2.at(1);
        let at152: Integer = f23.coeffs.iter().rev().fold(Integer::new(), |acc, c| {
            acc * 152 + c.numer().clone()
        });
        detail.push_str(&format!(
            " ≠ expected X³ − 13118X − 288768; computed X-coefficient equals −3a₁ = −{}, and computed F(152) = {at152} \
             (expected polynomial gives {}, check value 1229408)",
            Integer::from(&a1.numer().clone() * 3),
            152i64.pow(3) - 13118 * 152 - 288768
        ));
    }
    Ok((ok3 && ok2, detail))
}

fn special_values() -> Check {
    let suite = special_value_suite()?;
    let worst = suite.iter().map(|s| s.rel_err).fold(0.0, f64::max);
    let bad: Vec<String> = suite.iter().filter(|s| !s.pass).map(|s| format!("{} rel err {:.2e}", s.label, s.rel_err)).collect();
    Ok(if bad.is_empty() {
        (true, format!("{} values, max relative error {worst:.2e}", suite.len()))
    } else {
        (false, bad.join("; "))
    })
}

/// `value − e^{2πy}` at each replicate's lowest boundary point, from the closed
/// forms alone.
fn m_oracle(id: HauptmodulId) -> f64 {
    use std::f64::consts::PI;
    let s3 = 3f64.sqrt();
    let s2 = 2f64.sqrt();
    let base = 30.0 - 17.0 * s3;
    let t1a = 4.0 * 15f64.powi(3) * base.powi(3) - 744.0 - (2.0 * PI * s3 / 2.0).exp();
    let t2a = 544.0 - (2.0 * PI * 0.5).exp();
    let t3a = 1416.0 - (2.0 * PI / (2.0 * s3)).exp();
    let t6a = 86.0 - (2.0 * PI / (3.0 * s2)).exp();
    let t3c = 15.0 * 4f64.cbrt() * base - (2.0 * PI * s3 / 6.0).exp();
    let vals: &[f64] = match id {
        HauptmodulId::T2A => &[t2a, t1a],
        HauptmodulId::T6A => &[t6a, t3a, t2a, t1a],
        HauptmodulId::T3C => &[t3c, t1a],
        _ => &[],
    };
    vals.iter().copied().fold(f64::NEG_INFINITY, f64::max)
}

fn m_bounds() -> Check {
    let cases = [
        (HauptmodulId::T2A, 1335u64, Some((1334.8, 1335.0))),
        (HauptmodulId::T3C, 1335, None),
        (HauptmodulId::T6A, 1410, Some((1409.8, 1410.0))),
    ];
    let mut notes = Vec::new();
    let mut pass = true;
    for (id, cap, range) in cases {
        let b = bound_m(id)?;
        let oracle = m_oracle(id);
        let in_range = range.is_none_or(|(lo, hi)| b.value >= lo && b.value < hi);
        let ok = b.reported <= cap && b.reported as f64 >= oracle && (b.value - oracle).abs() < 1e-6 && in_range;
        pass &= ok;
        notes.push(format!(
            "{id}: M = {:.4} (closed forms {oracle:.4}), reported {}{}",
            b.value,
            b.reported,
            if ok { "" } else { " MISMATCH" }
        ));
    }
    Ok((pass, notes.join("; ")))
}

fn replication() -> Check {
    let t = Instant::now();
    let jobs: Vec<(HauptmodulId, u64)> =
        HauptmodulId::CATALOG.iter().flat_map(|&id| (1..=12u64).map(move |n| (id, n))).collect();
    let results: Vec<(HauptmodulId, u64, Result<bool>)> =
        jobs.par_iter().map(|&(id, n)| (id, n, verify_replication(id, n, 60))).collect();
    let secs = t.elapsed().as_secs_f64();
    let bad: Vec<String> = results
        .iter()
        .filter(|(_, _, r)| !matches!(r, Ok(true)))
        .map(|(id, n, r)| match r {
            Ok(_) => format!("{id} n={n} differs"),
            Err(e) => format!("{id} n={n}: {e}"),
        })
        .collect();
    let pass = bad.is_empty() && secs < 120.0;
    let detail = if bad.is_empty() {
        format!("{} (id, n) pairs exact to depth 60 in {secs:.1}s", results.len())
    } else {
        bad.join("; ")
    };
    Ok((pass, detail))
}

fn harmonic() -> Check {
    let mut bad = Vec::new();
    for n in [3usize, 6, 9, 12] {
        if !harmonic_faber(HauptmodulId::T3C, HauptmodulId::T1A, 3, 744, n)? {
            bad.push(n.to_string());
        }
    }
    Ok(if bad.is_empty() {
        (true, "F_n,3C(X) = F_n/3,1A(X³ − 744) for n = 3, 6, 9, 12".into())
    } else {
        (false, format!("identity fails for n = {}", bad.join(", ")))
    })
}

fn zero_certification() -> Check {
    let t = Instant::now();
    let opts = CertOptions::default();
    let plan: [(HauptmodulId, Vec<u64>); 3] = [
        (HauptmodulId::T2A, (5..=40).collect()),
        (HauptmodulId::T3C, (10..=40).filter(|n| n % 3 != 0).collect()),
        (HauptmodulId::T6A, (13..=40).collect()),
    ];
    let mut notes = Vec::new();
    let mut pass = true;
    for (id, ns) in plan {
        let env = case_envelope(id).expect("envelope for audited ids");
        let mut certified = 0;
        let mut worst = 0.0f64;
        let mut problems = Vec::new();
        for (n, r) in ns.iter().zip(certify_range(id, &ns, &opts)) {
            let c = match r {
                Ok(c) => c,
                Err(e) => {
                    problems.push(format!("n={n}: {e}"));
                    continue;
                }
            };
            if c.status == Status::Certified && c.zero_count == *n {
                certified += 1;
            } else {
                problems.push(format!(
                    "n={n}: {} with {} zeros{}",
                    c.status,
                    c.zero_count,
                    c.reason.as_deref().map(|r| format!(" ({r})")).unwrap_or_default()
                ));
            }
            match &c.audit {
                Some(a) => {
                    worst = worst.max(a.max_margin);
                    if !a.pointwise_within {
                        problems.push(format!("n={n}: a margin exceeds its pointwise bound"));
                    }
                    if a.case_within == Some(false) {
                        problems.push(format!("n={n}: max margin {:.4} ≥ envelope {env}", a.max_margin));
                    }
                }
                None => problems.push(format!("n={n}: no audit")),
            }
        }
        pass &= problems.is_empty();
        notes.push(format!(
            "{id}: {certified}/{} certified, max margin {worst:.4} (envelope {env}){}",
            ns.len(),
            if problems.is_empty() { String::new() } else { format!(" [{}]", problems.join("; ")) }
        ));
    }
    let secs = t.elapsed().as_secs_f64();
    pass &= secs < 1800.0;
    Ok((pass, format!("{} in {secs:.1}s", notes.join("; "))))
}

fn property_suites() -> Check {
    let outs = properties::run_all(1000);
    let pass = outs.iter().all(|o| o.pass);
    let parts: Vec<String> = outs
        .iter()
        .map(|o| format!("{} {}: {}", if o.pass { "ok" } else { "FAILED" }, o.suite, o.detail))
        .collect();
    Ok((pass, parts.join("; ")))
}

fn value_intervals() -> Check {
    let mut notes = Vec::new();
    let mut pass = true;
    for id in [HauptmodulId::T2A, HauptmodulId::T3A, HauptmodulId::T3C] {
        let s = value_interval_sweep(id, 400, 1e-6)?;
        pass &= s.pass;
        notes.push(format!(
            "{id}: [{:.6}, {:.6}] within [{}, {}]{}",
            s.min,
            s.max,
            s.expected.0,
            s.expected.1,
            if s.pass { "" } else { " VIOLATED" }
        ));
    }
    Ok((pass, notes.join("; ")))
}
