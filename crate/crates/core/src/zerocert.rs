//! Zero counts for Faber polynomials on the lower boundary: the bound M,
//! the critical-set approximation, sampling windows and sign-change
//! certificates.

use std::collections::HashMap;
use std::fmt;
use std::sync::{Mutex, OnceLock};

use rayon::prelude::*;
use rug::{Float, Integer, Rational};
use serde::Serialize;

use crate::error::{Error, Result};
use crate::faber::{faber_poly, faber_structure, harmonic_faber, hecke_sum_at, FaberPoly};
use crate::fundomain::{constants, critical_set, lower_boundary, BoundaryArc, CriticalSet, DomainConstants};
use crate::groups::{dn_k_hinv, GroupSpec};
use crate::num::{divisors, exp, gcd_u64, pi, rat_to_float, Cx, RootOfUnity};
use crate::projmat::{HPoint, QuadPoint};
use crate::qseries::{evaluate, hauptmodul, replicate_function, HauptmodulId, DEFAULT_TERMS};

/// Mantissa bits used for certificates unless overridden.
pub const CERT_PRECISION: u32 = 256;

fn constants_cached(g: &GroupSpec) -> Result<DomainConstants> {
    static CACHE: OnceLock<Mutex<HashMap<String, DomainConstants>>> = OnceLock::new();
    let cache = CACHE.get_or_init(Default::default);
    let key = g.parent().label();
    if let Some(c) = cache.lock().expect("constants cache").get(&key) {
        return Ok(c.clone());
    }
    let c = constants(g)?;
    cache.lock().expect("constants cache").insert(key, c.clone());
    Ok(c)
}

fn critical_cached(g: &GroupSpec) -> Result<CriticalSet> {
    static CACHE: OnceLock<Mutex<HashMap<String, CriticalSet>>> = OnceLock::new();
    let cache = CACHE.get_or_init(Default::default);
    let key = g.parent().label();
    if let Some(c) = cache.lock().expect("critical cache").get(&key) {
        return Ok(c.clone());
    }
    let c = critical_set(g)?;
    cache.lock().expect("critical cache").insert(key, c.clone());
    Ok(c)
}

#[derive(Clone, Debug, Serialize)]
pub struct ReplicateExcess {
    pub id: HauptmodulId,
    pub y0: String,
    pub value: f64,
    pub err: f64,
    /// `f(iy₀) − e^{2πy₀}` plus the evaluation error.
    pub excess: f64,
}

#[derive(Clone, Debug, Serialize)]
pub struct MBound {
    pub value: f64,
    pub reported: u64,
    pub terms: Vec<ReplicateExcess>,
}

/// `M = max_r f^(r)(iy₀^(r)) − e^{2πy₀^(r)}` over replicates `r | mh`.
pub fn bound_m(id: HauptmodulId) -> Result<MBound> {
    static CACHE: OnceLock<Mutex<HashMap<HauptmodulId, MBound>>> = OnceLock::new();
    let cache = CACHE.get_or_init(Default::default);
    if let Some(b) = cache.lock().expect("bound cache").get(&id) {
        return Ok(b.clone());
    }
    let g = id.group();
    let prec = CERT_PRECISION;
    let mut terms: Vec<ReplicateExcess> = Vec::new();
    for r in divisors(g.level()) {
        let rid = replicate_function(id, r)?;
        if terms.iter().any(|t| t.id == rid) {
            continue;
        }
        let c = constants_cached(&rid.group())?;
        let f = hauptmodul(rid, DEFAULT_TERMS)?;
        let tau = HPoint::from_quad(&QuadPoint::new(Rational::new(), c.y0_sq.clone())?, prec)?;
        let v = evaluate(&f, &tau, 1e-30)?;
        let e = exp(&(Float::with_val(prec, 2 * pi(prec)) * c.y0.to_float(prec)));
        let excess = Float::with_val(prec, &v.value.re - &e).to_f64() + v.err;
        terms.push(ReplicateExcess { id: rid, y0: c.y0.to_string(), value: v.re_f64(), err: v.err, excess });
    }
    let value = terms.iter().map(|t| t.excess).fold(f64::NEG_INFINITY, f64::max);
    let b = MBound { value, reported: value.ceil() as u64, terms };
    cache.lock().expect("bound cache").insert(id, b.clone());
    Ok(b)
}

/// `λ_K = λ^(H)(Dₙ K H⁻¹)⁻¹` with `H = φₙ(K)`, per critical class.
pub fn lambda_k_values(g: &GroupSpec, crit: &CriticalSet, n: u64) -> Result<Vec<RootOfUnity>> {
    if gcd_u64(n, g.h()) != 1 {
        return Err(Error::Precondition(format!("λ_K needs gcd(n, h) = 1 (n = {n}, h = {})", g.h())));
    }
    let parent = g.parent();
    crit.classes
        .iter()
        .map(|cl| {
            let rep = parent.canonical_rep(&cl.rep)?;
            let k = parent.rep_matrix(&rep);
            let hk = parent.phi_n(&rep, n)?;
            let lam = g.replicate(hk.a).lambda(&dn_k_hinv(n, &k, &hk))?;
            Ok(lam.inv())
        })
        .collect()
}

/// Data of the critical-set approximation for one function and degree.
#[derive(Clone, Debug)]
pub struct ApproxModel {
    pub id: HauptmodulId,
    pub group: GroupSpec,
    pub critical: CriticalSet,
    pub lambdas: Vec<RootOfUnity>,
    pub n: u64,
    pub m: f64,
    pub m_reported: u64,
    pub c: Rational,
    pub n_int: Integer,
}

impl ApproxModel {
    pub fn new(id: HauptmodulId, n: u64) -> Result<Self> {
        let group = id.group();
        let consts = constants_cached(&group)?;
        let critical = critical_cached(&group)?;
        let lambdas = lambda_k_values(&group, &critical, n)?;
        let mb = bound_m(id)?;
        Ok(ApproxModel {
            id,
            group,
            critical,
            lambdas,
            n,
            m: mb.value,
            m_reported: mb.reported,
            c: consts.c,
            n_int: consts.n_int,
        })
    }

    /// The individual terms `λ_K e^{−2πinKτ}`.
    pub fn terms(&self, tau: &HPoint) -> Result<Vec<Cx>> {
        let prec = tau.prec();
        let n = Float::with_val(prec, self.n);
        self.critical
            .classes
            .iter()
            .zip(&self.lambdas)
            .map(|(cl, lam)| {
                let kt = cl.rep.apply(tau)?;
                let z = Cx::new(-(kt.x * &n), -(kt.y * &n));
                Ok(Cx::exp_2pi_i(&z).mul(&lam.to_cx(prec)))
            })
            .collect()
    }
}

/// `Σ_{[K]∈𝒦} λ_K e^{−2πinKτ}`.
pub fn approx_sum(model: &ApproxModel, n: u64, tau: &HPoint) -> Result<Cx> {
    let owned;
    let model = if model.n == n {
        model
    } else {
        owned = ApproxModel::new(model.id, n)?;
        &owned
    };
    let mut acc = Cx::zero(tau.prec());
    for t in model.terms(tau)? {
        acc = acc.add(&t);
    }
    Ok(acc)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum WindowKind {
    Interior,
    Corner,
}

/// An excluded real-part interval around a boundary junction or corner.
#[derive(Clone, Debug, Serialize)]
pub struct Window {
    #[serde(serialize_with = "ser_rat")]
    pub center: Rational,
    #[serde(serialize_with = "ser_rat")]
    pub lo: Rational,
    #[serde(serialize_with = "ser_rat")]
    pub hi: Rational,
    pub lo_open: bool,
    pub hi_open: bool,
    pub kind: WindowKind,
}

fn ser_rat<S: serde::Serializer>(v: &Rational, s: S) -> std::result::Result<S::Ok, S::Error> {
    s.serialize_str(&v.to_string())
}

impl Window {
    pub fn contains(&self, x: &Rational) -> bool {
        let above = if self.lo_open { *x > self.lo } else { *x >= self.lo };
        let below = if self.hi_open { *x < self.hi } else { *x <= self.hi };
        above && below
    }

    /// Window edges clipped to `[0, edge]`; a corner window only contributes
    /// its inner edge.
    fn aux_points(&self, edge: &Rational) -> Vec<Rational> {
        let zero = Rational::new();
        let mut out = Vec::new();
        if self.lo > zero || self.kind == WindowKind::Interior {
            out.push(self.lo.clone().max(zero.clone()));
        }
        if self.hi < *edge || self.kind == WindowKind::Interior {
            out.push(self.hi.clone().min(edge.clone()));
        }
        out.retain(|x| !(self.kind == WindowKind::Corner && (*x == zero || x == edge)));
        out
    }
}

impl std::fmt::Display for Window {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let (l, r) = (if self.lo_open { "(" } else { "[" }, if self.hi_open { ")" } else { "]" });
        write!(f, "{l}{}, {}{r}", self.lo, self.hi)
    }
}

fn core_boundary(g: &GroupSpec) -> Result<(Vec<BoundaryArc>, Rational)> {
    let core = g.parent();
    let arcs = lower_boundary(&core)?;
    let edge = Rational::from((1, 2 * core.h()));
    Ok((arcs, edge))
}

fn point_on_boundary(arcs: &[BoundaryArc], x: &Rational) -> Result<(usize, QuadPoint)> {
    let i = arcs
        .iter()
        .position(|a| a.x_lo <= *x && *x <= a.x_hi)
        .ok_or_else(|| Error::Unsupported(format!("real part {x} is not covered by the lower boundary")))?;
    Ok((i, arcs[i].point_at(x.clone())?))
}

/// Windows of half-width 1/(6n) around interior junctions of the lower
/// boundary and of width 1/(12n) inside a strip corner whose arc is not
/// centred on the edge.
pub fn excluded_windows(g: &GroupSpec, n: u64) -> Result<Vec<Window>> {
    if n == 0 {
        return Err(Error::Precondition("n must be positive".into()));
    }
    let (arcs, edge) = core_boundary(g)?;
    let zero = Rational::new();
    let wide = Rational::from((1, 6 * n));
    let narrow = Rational::from((1, 12 * n));
    let mut out = Vec::new();
    if let Some(first) = arcs.first() {
        if first.x_lo == zero && *first.center() != zero {
            out.push(Window {
                center: zero.clone(),
                lo: zero.clone(),
                hi: narrow.clone(),
                lo_open: false,
                hi_open: true,
                kind: WindowKind::Corner,
            });
        }
    }
    for w in arcs.windows(2) {
        let x = w[0].x_hi.clone();
        if x > zero && x < edge {
            out.push(Window {
                lo: x.clone() - &wide,
                hi: x.clone() + &wide,
                center: x,
                lo_open: true,
                hi_open: true,
                kind: WindowKind::Interior,
            });
        }
    }
    if let Some(last) = arcs.last() {
        if last.x_hi == edge && *last.center() != edge {
            out.push(Window {
                center: edge.clone(),
                lo: edge.clone() - &narrow,
                hi: edge.clone(),
                lo_open: true,
                hi_open: false,
                kind: WindowKind::Corner,
            });
        }
    }
    Ok(out)
}

/// Sample abscissae `k/(2n)` on `[0, 1/(2h)]` outside the windows, plus the
/// window edges of every window that swallowed a sample.
pub fn sample_points(g: &GroupSpec, n: u64) -> Result<Vec<(Rational, bool)>> {
    let (_, edge) = core_boundary(g)?;
    let windows = excluded_windows(g, n)?;
    let mut pts: Vec<(Rational, bool)> = Vec::new();
    let mut k = 0u64;
    loop {
        let x = Rational::from((k, 2 * n));
        if x > edge {
            break;
        }
        match windows.iter().position(|w| w.contains(&x)) {
            None => pts.push((x, false)),
            Some(i) => {
                for a in windows[i].aux_points(&edge) {
                    if !windows.iter().enumerate().any(|(j, w)| j != i && w.contains(&a)) {
                        pts.push((a, true));
                    }
                }
            }
        }
        k += 1;
    }
    pts.sort_by(|a, b| a.0.cmp(&b.0));
    pts.dedup_by(|a, b| a.0 == b.0);
    Ok(pts)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Status {
    Certified,
    Empirical,
    Inconclusive,
}

impl fmt::Display for Status {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Status::Certified => "certified",
            Status::Empirical => "empirical",
            Status::Inconclusive => "inconclusive",
        })
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct Sample {
    #[serde(skip)]
    pub x: Rational,
    pub x_num: String,
    pub x_den: String,
    /// `F_n(τ)·e^{−2πny}` from the Hecke route.
    pub value: f64,
    #[serde(skip)]
    pub value_hp: Option<Float>,
    pub err: f64,
    pub sign: i8,
    pub aux: bool,
    pub y: f64,
    pub fallback_value: f64,
    pub fallback_err: f64,
    pub imag: f64,
}

#[derive(Clone, Debug, Serialize)]
pub struct AuditSample {
    pub x: f64,
    pub margin: f64,
    pub envelope: f64,
}

#[derive(Clone, Debug, Serialize)]
pub struct GapAudit {
    pub m: u64,
    pub case_envelope: Option<f64>,
    pub max_margin: f64,
    pub samples: Vec<AuditSample>,
    /// Every margin is below its pointwise bound.
    pub pointwise_within: bool,
    /// The largest margin is below the case envelope, where one exists.
    pub case_within: Option<bool>,
    pub within: bool,
}

#[derive(Clone, Debug, Serialize)]
pub struct SideScan {
    pub x: String,
    pub y2: Vec<String>,
    pub values: Vec<f64>,
    pub errs: Vec<f64>,
    pub sign_changes: u64,
}

#[derive(Clone, Debug, Serialize)]
pub struct HarmonicRoute {
    pub base: HauptmodulId,
    pub d: u32,
    pub c: i64,
    pub identity_holds: bool,
    pub base_certificate: Box<ZeroCertificate>,
}

#[derive(Clone, Debug, Serialize)]
pub struct ZeroCertificate {
    pub id: HauptmodulId,
    pub group: String,
    pub n: u64,
    pub h: u64,
    pub precision_bits: u32,
    pub fallback_precision_bits: u32,
    pub terms: usize,
    pub samples: Vec<Sample>,
    pub excluded: Vec<Window>,
    pub sign_changes: u64,
    pub expected_sign_changes: u64,
    /// Zeros forced at the orbit of `f = 0` (the `t` of `F = X^t g(X^h)`).
    pub elliptic_zeros: u64,
    pub zero_count: u64,
    pub status: Status,
    pub reason: Option<String>,
    pub audit: Option<GapAudit>,
    pub side_scan: Option<SideScan>,
    pub harmonic: Option<HarmonicRoute>,
}

impl ZeroCertificate {
    /// Real-part brackets `[x_i, x_{i+1}]` containing a located zero.
    pub fn brackets(&self) -> Vec<(Rational, Rational)> {
        self.samples
            .windows(2)
            .filter(|w| w[0].sign * w[1].sign < 0)
            .map(|w| (w[0].x.clone(), w[1].x.clone()))
            .collect()
    }

    pub fn is_certified(&self) -> bool {
        self.status == Status::Certified
    }
}

/// Recounts zeros from an emitted JSON certificate's sign sequence.
pub fn zero_count_from_json(v: &serde_json::Value) -> Option<u64> {
    if let Some(hr) = v.get("harmonic").filter(|x| !x.is_null()) {
        let d = hr.get("d")?.as_u64()?;
        return Some(d * zero_count_from_json(hr.get("base_certificate")?)?);
    }
    let signs: Vec<i64> = v.get("samples")?.as_array()?.iter().map(|s| s.get("sign")?.as_i64()).collect::<Option<_>>()?;
    let changes = signs.windows(2).filter(|w| w[0] * w[1] < 0).count() as u64;
    let h = v.get("h")?.as_u64()?;
    let t = v.get("elliptic_zeros")?.as_u64()?;
    let side = v.get("side_scan").and_then(|s| s.get("sign_changes")).and_then(|s| s.as_u64()).unwrap_or(0);
    Some(h * changes + t + side)
}

#[derive(Clone, Debug)]
pub struct CertOptions {
    pub precision_bits: u32,
    pub terms: usize,
}

impl Default for CertOptions {
    fn default() -> Self {
        CertOptions { precision_bits: CERT_PRECISION, terms: DEFAULT_TERMS }
    }
}

/// The two pairs with a zero on the side line Re τ = 1/2.
fn has_side_zero(id: HauptmodulId, n: u64) -> bool {
    n == 2 && matches!(id, HauptmodulId::T5A | HauptmodulId::T7A)
}

/// The envelopes proved for the worked cases.
pub fn case_envelope(id: HauptmodulId) -> Option<f64> {
    match id {
        HauptmodulId::T2A => Some(0.741),
        HauptmodulId::T6A => Some(0.263),
        HauptmodulId::T3C => Some(1.04),
        _ => None,
    }
}

struct PointValue {
    value: Float,
    err: f64,
    imag: f64,
    fallback_value: f64,
    fallback_err: f64,
    agree: bool,
    y: Float,
}

struct Evaluator {
    id: HauptmodulId,
    n: u64,
    prec: u32,
    fb_prec: u32,
    terms: usize,
    f: crate::qseries::LaurentSeries,
    poly: FaberPoly,
}

impl Evaluator {
    fn new(id: HauptmodulId, n: u64, opts: &CertOptions, probe: &[QuadPoint]) -> Result<Self> {
        let terms = opts.terms.max(n as usize + 8);
        let f = hauptmodul(id, terms)?;
        let poly = faber_poly(&f, n as usize)?;
        // Largest |f| seen on the boundary probes sizes the fallback mantissa.
        let mut fmax = 2.0f64;
        for q in probe {
            let v = evaluate(&f, &HPoint::from_quad(q, 128)?, 0.0)?;
            let (re, im) = v.value.to_f64();
            fmax = fmax.max(re.hypot(im) + v.err);
        }
        let fb_prec = (64.0 + n as f64 * fmax.log2()).ceil() as u32;
        Ok(Evaluator { id, n, prec: opts.precision_bits, fb_prec: fb_prec.max(opts.precision_bits), terms, f, poly })
    }

    fn at(&self, q: &QuadPoint) -> Result<PointValue> {
        let tau = HPoint::from_quad(q, self.prec)?;
        let (v1, e1) = hecke_sum_at(self.id, self.n, &tau, self.terms)?;
        let tau_hi = HPoint::from_quad(q, self.fb_prec)?;
        let fv = evaluate(&self.f, &tau_hi, 0.0)?;
        let (v2, e2) = self.poly.eval(&fv.value, fv.err);
        let prec = self.fb_prec;
        let y = tau_hi.y.clone();
        let scale = exp(&(Float::with_val(prec, -2 * pi(prec)) * self.n * &y));
        let sf = scale.to_f64();
        let diff = Cx::new(Float::with_val(prec, &v1.re), Float::with_val(prec, &v1.im)).sub(&v2);
        let agree = Float::with_val(prec, diff.abs() * &scale).to_f64() <= (e1 + e2) * sf * (1.0 + 1e-9) + f64::MIN_POSITIVE;
        Ok(PointValue {
            value: Float::with_val(prec, &v1.re * &scale),
            err: e1 * sf,
            imag: Float::with_val(prec, &v1.im * &scale).to_f64(),
            fallback_value: Float::with_val(prec, &v2.re * &scale).to_f64(),
            fallback_err: e2 * sf,
            agree,
            y,
        })
    }
}

fn sign_of(v: &Float, err: f64) -> i8 {
    let a = v.to_f64();
    if a.abs() <= err {
        0
    } else if a > 0.0 {
        1
    } else {
        -1
    }
}

fn inconclusive(mut c: ZeroCertificate, why: String) -> ZeroCertificate {
    c.status = Status::Inconclusive;
    c.reason = Some(why);
    c
}

/// Certifies the zero count of `F_{n,f}` on the lower boundary.
pub fn certify_zeros(id: HauptmodulId, n: u64) -> Result<ZeroCertificate> {
    certify_zeros_with(id, n, &CertOptions::default())
}

pub fn certify_zeros_with(id: HauptmodulId, n: u64, opts: &CertOptions) -> Result<ZeroCertificate> {
    if n == 0 {
        return Err(Error::Precondition("n must be positive".into()));
    }
    let g = id.group();
    let h = g.h();
    let blank = ZeroCertificate {
        id,
        group: g.label(),
        n,
        h,
        precision_bits: opts.precision_bits,
        fallback_precision_bits: 0,
        terms: opts.terms,
        samples: Vec::new(),
        excluded: Vec::new(),
        sign_changes: 0,
        expected_sign_changes: 0,
        elliptic_zeros: 0,
        zero_count: 0,
        status: Status::Inconclusive,
        reason: None,
        audit: None,
        side_scan: None,
        harmonic: None,
    };
    if gcd_u64(n, h) != 1 {
        return harmonic_route(id, n, opts, blank);
    }
    let t = if h == 1 { 0 } else { faber_structure(id, n as usize)?.0 };
    let expected = if h == 1 {
        n - has_side_zero(id, n) as u64
    } else {
        (n - t as u64) / h
    };
    let mut cert = ZeroCertificate {
        elliptic_zeros: if h == 1 { 0 } else { t as u64 },
        expected_sign_changes: expected,
        excluded: excluded_windows(&g, n)?,
        ..blank
    };
    let (arcs, edge) = core_boundary(&g)?;
    let xs = sample_points(&g, n)?;
    let quads: Vec<QuadPoint> =
        xs.iter().map(|(x, _)| point_on_boundary(&arcs, x).map(|p| p.1)).collect::<Result<_>>()?;
    let ev = match Evaluator::new(id, n, opts, &quads) {
        Ok(e) => e,
        Err(e) => return Ok(inconclusive(cert, e.to_string())),
    };
    cert.fallback_precision_bits = ev.fb_prec;
    cert.terms = ev.terms;
    let vals: Vec<Result<PointValue>> = quads.par_iter().map(|q| ev.at(q)).collect();
    let mut problems: Vec<String> = Vec::new();
    for ((x, aux), v) in xs.iter().zip(vals) {
        let v = match v {
            Ok(v) => v,
            Err(e) => return Ok(inconclusive(cert, format!("evaluation at x = {x}: {e}"))),
        };
        let sign = sign_of(&v.value, v.err);
        if sign == 0 {
            problems.push(format!("|value| ≤ err at x = {x}"));
        }
        if !v.agree {
            problems.push(format!("routes disagree at x = {x}"));
        }
        if v.imag.abs() > v.err * (1.0 + 1e-9) + f64::MIN_POSITIVE {
            problems.push(format!("non-real value at x = {x}"));
        }
        cert.samples.push(Sample {
            x_num: x.numer().to_string(),
            x_den: x.denom().to_string(),
            x: x.clone(),
            value: v.value.to_f64(),
            value_hp: Some(v.value.clone()),
            err: v.err,
            sign,
            aux: *aux,
            y: v.y.to_f64(),
            fallback_value: v.fallback_value,
            fallback_err: v.fallback_err,
            imag: v.imag,
        });
    }
    cert.sign_changes = cert.samples.windows(2).filter(|w| w[0].sign * w[1].sign < 0).count() as u64;
    let mut located = cert.sign_changes;
    if has_side_zero(id, n) {
        let side = side_scan(&ev, &arcs, &edge)?;
        located += side.sign_changes;
        if side.sign_changes != 1 {
            problems.push(format!("side scan found {} sign changes", side.sign_changes));
        }
        cert.side_scan = Some(side);
    }
    cert.zero_count = h * (located - cert.side_scan.as_ref().map_or(0, |s| s.sign_changes))
        + cert.elliptic_zeros
        + cert.side_scan.as_ref().map_or(0, |s| s.sign_changes);
    if cert.sign_changes != expected {
        problems.push(format!("{} sign changes, expected {expected}", cert.sign_changes));
    }
    if !problems.is_empty() {
        return Ok(inconclusive(cert, problems.join("; ")));
    }
    let consts = constants_cached(&g)?;
    if consts.exceeds_n(n) {
        cert.audit = Some(theoretical_gap_audit(id, n, &cert.samples)?);
        cert.status = Status::Certified;
    } else {
        cert.status = Status::Empirical;
        cert.reason = Some(format!("n ≤ N = {}: sign brackets only", consts.n));
    }
    Ok(cert)
}

fn harmonic_route(id: HauptmodulId, n: u64, opts: &CertOptions, blank: ZeroCertificate) -> Result<ZeroCertificate> {
    let Some((base, d, c)) = id.harmonic() else {
        return Ok(inconclusive(blank, format!("gcd(n, h) > 1 and {id} has no harmonic")));
    };
    if !n.is_multiple_of(d as u64) {
        return Ok(inconclusive(blank, format!("{d} does not divide n = {n}")));
    }
    let holds = harmonic_faber(id, base, d, c, n as usize)?;
    let inner = certify_zeros_with(base, n / d as u64, opts)?;
    let mut cert = ZeroCertificate {
        zero_count: d as u64 * inner.zero_count,
        status: if holds { inner.status } else { Status::Inconclusive },
        reason: if holds {
            Some(format!("zeros X solve X^{d} = Y {} {} for the zeros Y of F_{{{},{base}}}", if c < 0 { '-' } else { '+' }, c.abs(), n / d as u64))
        } else {
            Some("harmonic identity failed".into())
        },
        ..blank
    };
    cert.harmonic = Some(HarmonicRoute { base, d, c, identity_holds: holds, base_certificate: Box::new(inner) });
    Ok(cert)
}

/// Sign changes of `F_n` along Re τ = 1/2 above the strip corner.
fn side_scan(ev: &Evaluator, arcs: &[BoundaryArc], edge: &Rational) -> Result<SideScan> {
    let (_, corner) = point_on_boundary(arcs, edge)?;
    let steps = 48u64;
    let mut y2s = Vec::new();
    let mut values = Vec::new();
    let mut errs = Vec::new();
    let pts: Vec<QuadPoint> = (0..=steps)
        .map(|j| QuadPoint { x: edge.clone(), y2: corner.y2.clone() + Rational::from((j, 16)) })
        .collect();
    let vals: Vec<Result<PointValue>> = pts.par_iter().map(|q| ev.at(q)).collect();
    let mut signs = Vec::new();
    for (q, v) in pts.iter().zip(vals) {
        let v = v?;
        signs.push(sign_of(&v.value, v.err));
        y2s.push(q.y2.to_string());
        values.push(v.value.to_f64());
        errs.push(v.err);
    }
    let changes = signs.windows(2).filter(|w| w[0] * w[1] < 0).count() as u64;
    Ok(SideScan { x: edge.to_string(), y2: y2s, values, errs, sign_changes: changes })
}

/// Compares each sample's distance from `2cos(2πnx)` with the pointwise
/// bound `(Mn² + n²e^{2πncy})e^{−2πny} + Σ_{non-dominant K} |λ_K e^{−2πinKτ}|e^{−2πny}`
/// and with the case envelope where one is proved.
pub fn theoretical_gap_audit(id: HauptmodulId, n: u64, samples: &[Sample]) -> Result<GapAudit> {
    let model = ApproxModel::new(id, n)?;
    let g = id.group();
    let (arcs, _) = core_boundary(&g)?;
    let prec = CERT_PRECISION;
    let case = case_envelope(id);
    let c = rat_to_float(&model.c, prec);
    let nf = Float::with_val(prec, n);
    let two_pi = Float::with_val(prec, 2 * pi(prec));
    let mut out = Vec::new();
    let mut below = true;
    for s in samples {
        let (i, q) = point_on_boundary(&arcs, &s.x)?;
        let tau = HPoint::from_quad(&q, prec)?;
        let y = tau.y.clone();
        let damp = exp(&(Float::with_val(prec, -&two_pi) * &nf * &y));
        let first = (Float::with_val(prec, model.m_reported) * n * n
            + Float::with_val(prec, n * n) * exp(&(Float::with_val(prec, &two_pi * &nf) * &c * &y)))
            * &damp;
        let terms = model.terms(&tau)?;
        let owner = &arcs[i].owner;
        let mut dominant = Cx::zero(prec);
        let mut rest = Float::with_val(prec, 0);
        for (cl, t) in model.critical.classes.iter().zip(&terms) {
            if cl.class.is_identity_class() || cl.class == *owner {
                dominant = dominant.add(t);
            } else {
                rest += t.abs();
            }
        }
        let cosv = (Float::with_val(prec, &two_pi * &nf) * rat_to_float(&s.x, prec)).cos() * 2u32;
        let dom_dev = dominant.scale(&damp).sub(&Cx::real(cosv.clone())).abs();
        let envelope = Float::with_val(prec, &first + &(rest * &damp)) + dom_dev;
        let value = s.value_hp.clone().unwrap_or_else(|| Float::with_val(prec, s.value));
        let margin = Float::with_val(prec, (value - &cosv).abs()) + s.err;
        below &= margin < envelope;
        out.push(AuditSample { x: s.x.to_f64(), margin: margin.to_f64(), envelope: envelope.to_f64() });
    }
    let max_margin = out.iter().map(|a| a.margin).fold(0.0, f64::max);
    let case_within = case.map(|e| max_margin < e);
    Ok(GapAudit {
        m: model.m_reported,
        case_envelope: case,
        max_margin,
        samples: out,
        pointwise_within: below,
        case_within,
        within: below && case_within != Some(false),
    })
}

/// Certificates for many degrees, computed in parallel.
pub fn certify_range(id: HauptmodulId, ns: &[u64], opts: &CertOptions) -> Vec<Result<ZeroCertificate>> {
    ns.par_iter().map(|&n| certify_zeros_with(id, n, opts)).collect()
}

#[derive(Clone, Debug, Serialize)]
pub struct ValueSweep {
    pub id: HauptmodulId,
    pub points: usize,
    pub min: f64,
    pub max: f64,
    pub expected: (f64, f64),
    pub max_imag: f64,
    pub pass: bool,
}

/// The interval a catalog function takes on the (core) lower boundary.
pub fn value_interval(id: HauptmodulId) -> Option<(f64, f64)> {
    match id {
        HauptmodulId::T1A => Some((-744.0, 984.0)),
        HauptmodulId::T2A => Some((-104.0, 152.0)),
        HauptmodulId::T3A => Some((-42.0, 66.0)),
        HauptmodulId::T3C => Some((0.0, 12.0)),
        _ => None,
    }
}

/// Evaluates `f` on an even grid of the core lower boundary and checks the
/// range against [`value_interval`] with tolerance `tol`.
pub fn value_interval_sweep(id: HauptmodulId, points: usize, tol: f64) -> Result<ValueSweep> {
    let expected = value_interval(id).ok_or_else(|| Error::Unsupported(format!("no value interval for {id}")))?;
    let g = id.group();
    let (arcs, edge) = core_boundary(&g)?;
    let f = hauptmodul(id, DEFAULT_TERMS)?;
    let xs: Vec<Rational> = (0..=points).map(|j| Rational::from((j as u64, points as u64)) * &edge).collect();
    let vals: Vec<Result<(f64, f64, f64)>> = xs
        .par_iter()
        .map(|x| {
            let (_, q) = point_on_boundary(&arcs, x)?;
            let v = evaluate(&f, &HPoint::from_quad(&q, 128)?, 0.0)?;
            let (re, im) = v.value.to_f64();
            Ok((re, im, v.err))
        })
        .collect();
    let (mut lo, mut hi, mut imag) = (f64::INFINITY, f64::NEG_INFINITY, 0.0f64);
    for v in vals {
        let (re, im, _) = v?;
        lo = lo.min(re);
        hi = hi.max(re);
        imag = imag.max(im.abs());
    }
    let pass = lo >= expected.0 - tol && hi <= expected.1 + tol && imag <= tol;
    Ok(ValueSweep { id, points, min: lo, max: hi, expected, max_imag: imag, pass })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn rat(n: i64, d: i64) -> Rational {
        Rational::from((n, d))
    }

    #[test]
    fn m_bounds() {
        let b2 = bound_m(HauptmodulId::T2A).unwrap();
        assert!((b2.value - 1334.813).abs() < 1e-3, "{}", b2.value);
        assert_eq!(b2.reported, 1335);
        let b6 = bound_m(HauptmodulId::T6A).unwrap();
        assert!((b6.value - 1409.866).abs() < 1e-3, "{}", b6.value);
        assert_eq!(b6.reported, 1410);
        assert_eq!(bound_m(HauptmodulId::T3C).unwrap().reported, 1335);
    }

    #[test]
    fn lambda_examples() {
        let g = GroupSpec::plus(2);
        let crit = critical_set(&g).unwrap();
        for n in [1, 5, 7, 12] {
            assert!(lambda_k_values(&g, &crit, n).unwrap().iter().all(|l| l.is_one()));
        }
        let g = HauptmodulId::T3C.group();
        let crit = critical_set(&g).unwrap();
        for n in [1, 4, 7, 10] {
            let l = lambda_k_values(&g, &crit, n).unwrap();
            assert!(l[0].is_one());
            let i = crit.classes.iter().position(|c| c.rep.c() == &9 && c.rep.d() == &0).unwrap();
            assert!(l[i].is_one(), "n = {n}");
        }
    }

    #[test]
    fn window_examples() {
        let w = excluded_windows(&GroupSpec::plus(2), 5).unwrap();
        assert_eq!(w.len(), 1);
        assert_eq!((&w[0].lo, &w[0].hi, w[0].lo_open, w[0].hi_open), (&rat(29, 60), &rat(1, 2), true, false));
        let w = excluded_windows(&GroupSpec::plus(6), 6).unwrap();
        assert_eq!(w.len(), 1);
        assert_eq!((&w[0].lo, &w[0].hi), (&rat(11, 36), &rat(13, 36)));
        let xs = sample_points(&GroupSpec::plus(6), 5).unwrap();
        assert_eq!(xs.len(), 6);
        assert!(xs.iter().all(|(_, aux)| !aux));
        let xs = sample_points(&GroupSpec::plus(2), 5).unwrap();
        assert_eq!(xs.last().unwrap(), &(rat(29, 60), true));
    }

    #[test]
    fn approx_sum_closed_form() {
        // Γ₀(2)+ on |τ|² = 1/2.
        let model = ApproxModel::new(HauptmodulId::T2A, 5).unwrap();
        let x = rat(3, 10);
        let q = QuadPoint::new(x.clone(), rat(1, 2) - rat(9, 100)).unwrap();
        let tau = HPoint::from_quad(&q, 128).unwrap();
        let s = approx_sum(&model, 5, &tau).unwrap();
        let (xf, yf, n) = (0.3f64, (0.5f64 - 0.09).sqrt(), 5.0f64);
        let tp = 2.0 * std::f64::consts::PI;
        let want = 2.0 * (tp * n * yf).exp() * (tp * n * xf).cos()
            + 2.0 * (tp * n * yf / (3.0 - 4.0 * xf)).exp() * (tp * n * (xf - 1.0) / (3.0 - 4.0 * xf)).cos();
        let (re, im) = s.to_f64();
        assert!((re - want).abs() < 1e-9 * want.abs(), "{re} vs {want}");
        assert!(im.abs() < 1e-6);
    }

    #[test]
    fn certify_small() {
        let c = certify_zeros(HauptmodulId::T2A, 5).unwrap();
        assert_eq!(c.status, Status::Certified, "{:?}", c.reason);
        assert_eq!(c.zero_count, 5);
        assert_eq!(c.sign_changes, 5);
        assert!(c.audit.as_ref().unwrap().within);
        let json = serde_json::to_value(&c).unwrap();
        assert_eq!(zero_count_from_json(&json), Some(5));
        let c = certify_zeros(HauptmodulId::T3C, 3).unwrap();
        assert_eq!(c.zero_count, 3);
        assert!(c.harmonic.as_ref().unwrap().identity_holds);
    }
}
