//! Fundamental domains: reduction of points, the lower boundary as exact arc
//! pieces, critical sets and the constants y₀, c, N.

use std::cmp::Ordering;

use rayon::prelude::*;
use rug::{Float, Integer, Rational};
use serde::Serialize;

use crate::error::{Error, Result};
use crate::groups::{CanonicalRep, CosetClass, GroupSpec};
use crate::num::{gcd_u64, Surd};
use crate::projmat::{Arc, ExtRational, HPoint, ProjMatrix, QuadPoint};

/// Work cap for the lattice enumeration in [`reduce`].
const MAX_REDUCE_CANDIDATES: u64 = 20_000_000;

#[derive(Clone, Debug)]
pub struct Reduction {
    pub point: HPoint,
    pub transform: ProjMatrix,
}

enum Val {
    E(Rational),
    F(Float),
}

impl Val {
    fn cmp_tol(&self, o: &Val) -> Ordering {
        match (self, o) {
            (Val::E(a), Val::E(b)) => a.cmp(b),
            (Val::F(a), Val::F(b)) => {
                let prec = a.prec().min(b.prec());
                let scale = Float::with_val(prec, a.abs_ref()).max(&Float::with_val(prec, b.abs_ref()));
                let tol = scale.max(&Float::with_val(prec, 1)) >> (prec as i32 - 24);
                let diff = Float::with_val(prec, a - b);
                if Float::with_val(prec, diff.abs_ref()) <= tol {
                    Ordering::Equal
                } else if diff > 0 {
                    Ordering::Greater
                } else {
                    Ordering::Less
                }
            }
            _ => unreachable!("mixed exact and float comparison"),
        }
    }

    fn to_f64(&self) -> f64 {
        match self {
            Val::E(q) => q.to_f64(),
            Val::F(f) => f.to_f64(),
        }
    }
}

fn real_part(p: &HPoint) -> Val {
    match &p.exact {
        Some(q) => Val::E(q.x.clone()),
        None => Val::F(p.x.clone()),
    }
}

/// `r` with `x − r·w ∈ (−w/2, w/2]`.
fn strip_index(x: &Val, w: &Rational) -> Integer {
    match x {
        Val::E(q) => (q.clone() / w - Rational::from((1, 2))).ceil().into_numer_denom().0,
        Val::F(f) => {
            let t = Float::with_val(f.prec(), f / w) - 0.5f64;
            t.ceil().to_integer().expect("finite real part")
        }
    }
}

fn shift_into_strip(p: &HPoint, w: &Rational) -> Result<(HPoint, ProjMatrix)> {
    let r = strip_index(&real_part(p), w);
    let t = ProjMatrix::t(&(-(Rational::from(r) * w)));
    Ok((t.apply(p)?, t))
}

/// Maps `τ` into 𝒟(G), returning the point and the transformation used.
pub fn reduce(g: &GroupSpec, tau: &HPoint) -> Result<Reduction> {
    let parent = g.parent();
    let (m, h) = (parent.m(), parent.h());
    let width = Rational::from((1, h));
    let (tau1, t0) = shift_into_strip(tau, &width)?;

    let u = tau1.x.to_f64();
    let v = tau1.y.to_f64();
    if v <= 0.0 || !v.is_finite() {
        return Err(Error::Precision("imaginary part outside f64 range".into()));
    }
    let score = |k: u64, y: i64, z: i64| -> Val {
        let kh2 = Integer::from(k * h * h);
        let c = Integer::from(m * h * h) * y;
        let d = Integer::from(k * h) * z;
        match &tau1.exact {
            Some(q) => {
                let re = q.x.clone() * &c + &d;
                let den = Rational::from(&re * &re) + q.y2.clone() * Integer::from(&c * &c);
                Val::E(Rational::from(kh2) / den)
            }
            None => {
                let prec = tau1.prec();
                let re = Float::with_val(prec, &tau1.x * &c) + &d;
                let im = Float::with_val(prec, &tau1.y * &c);
                let den = Float::with_val(prec, &re * &re) + Float::with_val(prec, &im * &im);
                Val::F(Float::with_val(prec, &kh2) / den)
            }
        }
    };
    let mut best = match &tau1.exact {
        Some(_) => Val::E(Rational::from(1)),
        None => Val::F(Float::with_val(tau1.prec(), 1)),
    };
    let mut ties: Vec<(u64, i64, i64)> = vec![(1, 0, 1)];
    let mut work = 0u64;
    let mh2 = (m * h * h) as f64;
    for &k in parent.subgroup().elements() {
        let kh2 = (k * h * h) as f64;
        let kh = (k * h) as f64;
        let mk = m / k;
        let mut y: i64 = 1;
        loop {
            let qmax = kh2 / best.to_f64() * (1.0 + 1e-9);
            let a = mh2 * y as f64 * v;
            if a * a > qmax {
                break;
            }
            let center = -mh2 * y as f64 * u / kh;
            let half = (qmax - a * a).max(0.0).sqrt() / kh;
            let lo = (center - half).floor() as i64 - 1;
            let hi = (center + half).ceil() as i64 + 1;
            work += (hi - lo + 1) as u64;
            if work > MAX_REDUCE_CANDIDATES {
                return Err(Error::Precision("reduction search exceeded its work cap".into()));
            }
            for z in lo..=hi {
                let kz = (k as i64 * z).unsigned_abs();
                if gcd_u64(kz, mk * y as u64) != 1 {
                    continue;
                }
                let s = score(k, y, z);
                match s.cmp_tol(&best) {
                    Ordering::Greater => {
                        best = s;
                        ties = vec![(k, y, z)];
                    }
                    Ordering::Equal => ties.push((k, y, z)),
                    Ordering::Less => {}
                }
            }
            y += 1;
        }
    }

    // Among maximizers of Im, keep the largest real part in the strip.
    let mut chosen: Option<(Val, ProjMatrix)> = None;
    for (k, y, z) in ties {
        let rep = parent.element_from_triple(k, &Integer::from(y), &Integer::from(z))?;
        let kmat = parent.rep_matrix(&rep);
        let (p, t) = shift_into_strip(&kmat.apply(&tau1)?, &width)?;
        let x = real_part(&p);
        let better = match &chosen {
            None => true,
            Some((bx, _)) => x.cmp_tol(bx) == Ordering::Greater,
        };
        if better {
            chosen = Some((x, t.compose(&kmat)));
        }
    }
    let (_, kmat) = chosen.expect("identity is always a candidate");
    let mut transform = kmat.compose(&t0);

    if g.is_exact() {
        // Pick the translate T^{r/h} that lands in ker λ, then move into (−1/2, 1/2].
        let lam = g.lambda(&transform)?;
        let r = lam.turns().clone() * Integer::from(h);
        transform = ProjMatrix::t(&(r / Integer::from(h))).compose(&transform);
        let p = transform.apply(tau)?;
        let (_, t) = shift_into_strip(&p, &Rational::from(1))?;
        transform = t.compose(&transform);
    }
    let point = transform.apply(tau)?;
    Ok(Reduction { point, transform })
}

/// Whether `τ` already lies in 𝒟(G), i.e. reduction moves it nowhere.
pub fn in_domain(g: &GroupSpec, tau: &HPoint) -> Result<bool> {
    let r = reduce(g, tau)?;
    Ok(match (&r.point.exact, &tau.exact) {
        (Some(a), Some(b)) => a == b,
        _ => {
            let prec = tau.prec();
            let tol = Float::with_val(prec, 1) >> (prec as i32 - 24);
            let dx = Float::with_val(prec, &r.point.x - &tau.x).abs();
            let dy = Float::with_val(prec, &r.point.y - &tau.y).abs();
            dx <= tol && dy <= tol
        }
    })
}

/// A piece of the lower boundary: the part of `arc` above `[x_lo, x_hi]`.
#[derive(Clone, Debug, Serialize)]
pub struct BoundaryArc {
    #[serde(skip)]
    pub arc: Arc,
    #[serde(serialize_with = "ser_rat")]
    pub x_lo: Rational,
    #[serde(serialize_with = "ser_rat")]
    pub x_hi: Rational,
    pub owner: CosetClass,
    pub rep: ProjMatrix,
}

fn ser_rat<S: serde::Serializer>(v: &Rational, s: S) -> std::result::Result<S::Ok, S::Error> {
    s.serialize_str(&v.to_string())
}

impl BoundaryArc {
    pub fn center(&self) -> &Rational {
        self.arc.center_sq().expect("boundary arcs are finite").0
    }

    pub fn sq_radius(&self) -> &Rational {
        self.arc.center_sq().expect("boundary arcs are finite").1
    }

    pub fn point_at(&self, x: Rational) -> Result<QuadPoint> {
        QuadPoint::on_arc(&self.arc, x)
    }
}

#[derive(Clone, Debug)]
struct Candidate {
    rep: CanonicalRep,
    mat: ProjMatrix,
    class: CosetClass,
    p: Rational,
    r2: Rational,
}

fn require_one_cusp(g: &GroupSpec) -> Result<GroupSpec> {
    let core = g.parent();
    if !core.has_one_cusp() {
        return Err(Error::Precondition(format!("{} does not have one cusp", g.label())));
    }
    Ok(core)
}

/// Arcs of radius at least √3/(2mh) whose span meets the strip.
fn candidate_arcs(core: &GroupSpec) -> Vec<Candidate> {
    let (m, h) = (core.m(), core.h());
    let half = Rational::from((1, 2 * h));
    let mut out: Vec<Candidate> = Vec::new();
    for &k in core.subgroup().elements() {
        let mut y: u64 = 1;
        while 3 * y * y <= 4 * k {
            let mhy = Integer::from(m * h * y);
            let r2 = Rational::from((Integer::from(k), Integer::from(&mhy * &mhy)));
            let zmax = ((m * h * y) as f64 / k as f64 * (0.5 / h as f64 + r2.to_f64().sqrt())).ceil() as i64 + 1;
            for z in -zmax..=zmax {
                if gcd_u64((k as i64 * z).unsigned_abs(), (m / k) * y) != 1 {
                    continue;
                }
                let p = Rational::from((-(k as i64) * z, Integer::from(&mhy)));
                let excess = Rational::from(p.abs_ref()) - &half;
                if excess > 0 && Rational::from(&excess * &excess) > r2 {
                    continue;
                }
                let rep = core.element_from_triple(k, &Integer::from(y), &Integer::from(z)).expect("coprime triple");
                let mat = core.rep_matrix(&rep);
                let class = CosetClass::of(&mat);
                if out.iter().any(|c| c.class == class) {
                    continue;
                }
                out.push(Candidate { rep, mat, class, p: p.clone(), r2: r2.clone() });
            }
            y += 1;
        }
    }
    out
}

fn line_at(c: &Candidate, x: &Rational) -> Rational {
    // Height² + x² is affine in x: 2p·x + r² − p².
    (2 * x.clone() * &c.p) + &c.r2 - Rational::from(&c.p * &c.p)
}

fn intersection(a: &Candidate, b: &Candidate) -> Rational {
    (a.r2.clone() - &b.r2 + Rational::from(&b.p * &b.p) - Rational::from(&a.p * &a.p)) / (2 * (b.p.clone() - &a.p))
}

struct Envelope {
    pieces: Vec<(Rational, Rational, usize)>,
}

fn upper_envelope(cands: &[Candidate], lo: &Rational, hi: &Rational) -> Envelope {
    let mut cur = lo.clone();
    let mut idx = (0..cands.len())
        .max_by(|&i, &j| line_at(&cands[i], lo).cmp(&line_at(&cands[j], lo)).then(cands[i].p.cmp(&cands[j].p)))
        .expect("at least one candidate arc");
    let mut pieces = Vec::new();
    loop {
        let mut next: Option<(Rational, usize)> = None;
        for (j, c) in cands.iter().enumerate() {
            if c.p <= cands[idx].p {
                continue;
            }
            let x = intersection(&cands[idx], c);
            if x <= cur {
                continue;
            }
            next = match next {
                None => Some((x, j)),
                Some((bx, bj)) => match x.cmp(&bx) {
                    Ordering::Less => Some((x, j)),
                    Ordering::Equal if c.p > cands[bj].p => Some((x, j)),
                    _ => Some((bx, bj)),
                },
            };
        }
        match next {
            Some((x, j)) if x < *hi => {
                pieces.push((cur.clone(), x.clone(), idx));
                cur = x;
                idx = j;
            }
            _ => {
                pieces.push((cur, hi.clone(), idx));
                break;
            }
        }
    }
    Envelope { pieces }
}

/// Pieces of the envelope kept by the max-real-part convention.
fn kept_pieces(core: &GroupSpec, cands: &[Candidate]) -> Vec<(Rational, Rational, usize)> {
    let h = core.h();
    let w = Rational::from((1, h));
    let lo = Rational::from((-1, 2 * h));
    let hi = Rational::from((1, 2 * h));
    let env = upper_envelope(cands, &lo, &hi);
    let mut kept: Vec<(Rational, Rational, usize)> = Vec::new();
    for (a, b, i) in env.pieces {
        let k = &cands[i].mat;
        let s = k.theta() + &cands[i].p;
        // Image real part is s − x, reduced into the strip; split where it wraps.
        let mut cuts = vec![a.clone(), b.clone()];
        let jlo = ((s.clone() - &b) / &w - Rational::from((1, 2))).floor().into_numer_denom().0;
        let jhi = ((s.clone() - &a) / &w - Rational::from((1, 2))).ceil().into_numer_denom().0;
        let mut j = jlo;
        while j <= jhi {
            let x = s.clone() - (Rational::from(2 * j.clone() + 1) / (2 * h));
            if x > a && x < b {
                cuts.push(x);
            }
            j += 1;
        }
        cuts.sort();
        cuts.dedup();
        for win in cuts.windows(2) {
            let (sa, sb) = (&win[0], &win[1]);
            let mid = Rational::from(sa + sb) / 2;
            let r = strip_index(&Val::E(s.clone() - &mid), &w);
            let c = s.clone() - Rational::from(r) * &w;
            let cut = c / 2;
            let start = if cut > *sa { cut } else { sa.clone() };
            if start < *sb {
                match kept.last_mut() {
                    Some(last) if last.2 == i && last.1 == start => last.1 = sb.clone(),
                    _ => kept.push((start, sb.clone(), i)),
                }
            }
        }
    }
    kept
}

/// The lower boundary 𝒞(G) as exact arc pieces, ordered by real part.
/// Exact groups get `h` translated copies of their parent's boundary.
pub fn lower_boundary(g: &GroupSpec) -> Result<Vec<BoundaryArc>> {
    let core = require_one_cusp(g)?;
    let cands = candidate_arcs(&core);
    let base: Vec<BoundaryArc> = kept_pieces(&core, &cands)
        .into_iter()
        .map(|(a, b, i)| BoundaryArc {
            arc: Arc::finite(cands[i].p.clone(), cands[i].r2.clone()),
            x_lo: a,
            x_hi: b,
            owner: cands[i].class.clone(),
            rep: cands[i].mat.clone(),
        })
        .collect();
    if !g.is_exact() {
        return Ok(base);
    }
    let h = core.h() as i64;
    let mut out = Vec::new();
    for j in (-(h - 1) / 2)..=(h / 2) {
        let shift = Rational::from((j, h));
        let t = ProjMatrix::t(&shift);
        for b in &base {
            let moved = t.compose(&b.rep).compose(&t.inverse());
            out.push(BoundaryArc {
                arc: Arc::finite(b.center().clone() + &shift, b.sq_radius().clone()),
                x_lo: b.x_lo.clone() + &shift,
                x_hi: b.x_hi.clone() + &shift,
                owner: CosetClass::of(&moved),
                rep: moved,
            });
        }
    }
    Ok(out)
}

/// Endpoint set 𝒯 of the lower boundary (exact points, closure included).
pub fn boundary_endpoints(g: &GroupSpec) -> Result<Vec<QuadPoint>> {
    let core = require_one_cusp(g)?;
    let mut pts: Vec<QuadPoint> = Vec::new();
    for b in lower_boundary(&core)? {
        for x in [&b.x_lo, &b.x_hi] {
            let p = b.point_at(x.clone())?;
            if !pts.contains(&p) {
                pts.push(p);
            }
        }
    }
    pts.sort_by(|a, b| a.x.cmp(&b.x));
    Ok(pts)
}

#[derive(Clone, Debug, Serialize)]
pub struct CriticalClass {
    pub class: CosetClass,
    pub rep: ProjMatrix,
    /// `(k, y, z)` of the canonical representative; `None` for the identity.
    pub triple: Option<(u64, String, String)>,
}

#[derive(Clone, Debug, Serialize)]
pub struct CriticalSet {
    pub group: String,
    pub classes: Vec<CriticalClass>,
}

impl CriticalSet {
    pub fn len(&self) -> usize {
        self.classes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.classes.is_empty()
    }

    pub fn non_identity(&self) -> &[CriticalClass] {
        &self.classes[1..]
    }
}

/// Cosets whose arcs meet 𝒟(G): the identity, every arc carrying a boundary
/// piece and every arc through an included boundary endpoint.
pub fn critical_set(g: &GroupSpec) -> Result<CriticalSet> {
    let core = require_one_cusp(g)?;
    let cands = candidate_arcs(&core);
    let kept = kept_pieces(&core, &cands);
    let left_edge = Rational::from((-1, 2 * core.h()));
    let mut endpoints: Vec<QuadPoint> = Vec::new();
    for (a, b, i) in &kept {
        let arc = Arc::finite(cands[*i].p.clone(), cands[*i].r2.clone());
        for x in [a, b] {
            if *x != left_edge {
                endpoints.push(QuadPoint::on_arc(&arc, x.clone())?);
            }
        }
    }
    let mut classes = vec![CriticalClass {
        class: CosetClass::of(&ProjMatrix::identity()),
        rep: ProjMatrix::identity(),
        triple: None,
    }];
    for (i, c) in cands.iter().enumerate() {
        let arc = Arc::finite(c.p.clone(), c.r2.clone());
        let owns = kept.iter().any(|(_, _, j)| *j == i);
        if owns || endpoints.iter().any(|p| arc.contains(p)) {
            classes.push(CriticalClass {
                class: c.class.clone(),
                rep: c.mat.clone(),
                triple: Some((c.rep.k, c.rep.y.to_string(), c.rep.z.to_string())),
            });
        }
    }
    Ok(CriticalSet { group: core.label(), classes })
}

#[derive(Clone, Debug, Serialize)]
pub struct DomainConstants {
    pub group: String,
    #[serde(serialize_with = "ser_display")]
    pub y0: Surd,
    #[serde(serialize_with = "ser_rat")]
    pub y0_sq: Rational,
    #[serde(serialize_with = "ser_rat")]
    pub c: Rational,
    #[serde(serialize_with = "ser_opt_rat")]
    pub c0: Option<Rational>,
    #[serde(serialize_with = "ser_display")]
    pub n1: Surd,
    #[serde(serialize_with = "ser_rat")]
    pub n2: Rational,
    #[serde(serialize_with = "ser_display")]
    pub n: Surd,
    #[serde(serialize_with = "ser_display")]
    pub n_int: Integer,
    pub endpoints: Vec<String>,
    pub u_size: usize,
    /// Triples of 𝒰 with c(k,y,z) = 1.
    pub unit_triples: Vec<(u64, i64, i64)>,
    /// Whether the unit triples are exactly the non-identity critical set.
    pub critical_cross_check: bool,
}

fn ser_display<T: std::fmt::Display, S: serde::Serializer>(v: &T, s: S) -> std::result::Result<S::Ok, S::Error> {
    s.serialize_str(&v.to_string())
}

fn ser_opt_rat<S: serde::Serializer>(v: &Option<Rational>, s: S) -> std::result::Result<S::Ok, S::Error> {
    match v {
        Some(q) => s.serialize_some(&q.to_string()),
        None => s.serialize_none(),
    }
}

impl DomainConstants {
    pub fn n_f64(&self) -> f64 {
        self.n.to_f64()
    }

    pub fn y0_f64(&self) -> f64 {
        self.y0.to_f64()
    }

    /// Whether `n > N` holds exactly.
    pub fn exceeds_n(&self, n: u64) -> bool {
        Surd::rational(Rational::from(n)) > self.n
    }
}

/// `c(k, y, z) = max over 𝒯 of k / |mhyτ + kz|²`.
fn c_value(m: u64, h: u64, k: u64, y: i64, z: i64, pts: &[QuadPoint]) -> Rational {
    let mhy = Rational::from(Integer::from(m * h) * y);
    let kz = Rational::from(Integer::from(k) * z);
    pts.iter()
        .map(|p| {
            let re = p.x.clone() * &mhy + &kz;
            let den = Rational::from(&re * &re) + p.y2.clone() * Rational::from(&mhy * &mhy);
            Rational::from(k) / den
        })
        .max()
        .expect("non-empty endpoint set")
}

/// Exact test of `|z| < (2√2 + √(m+4)) / (y₀h√(2km))`.
fn z_in_u(z: i64, k: u64, m: u64, h: u64, y0_sq: &Rational) -> bool {
    // z²y₀²h²·2km < 12 + m + 4√(2m+8)
    let lhs = Rational::from(z * z) * y0_sq * Integer::from(2 * k * m * h * h) - Integer::from(m + 12);
    if lhs < 0 {
        return true;
    }
    Rational::from(&lhs * &lhs) < 16 * (2 * m + 8)
}

/// c, N and their intermediate data for a one-cusp group.
pub fn constants(g: &GroupSpec) -> Result<DomainConstants> {
    let core = require_one_cusp(g)?;
    let (m, h) = (core.m(), core.h());
    let pts = boundary_endpoints(&core)?;
    let crit = critical_set(&core)?;
    let y0_sq = pts.iter().map(|p| p.y2.clone()).min().expect("non-empty");

    // 𝒰: 0 < y < √(2k)/(mhy₀) ⇔ y²(mh)²y₀² < 2k.
    let mut triples: Vec<(u64, i64, i64)> = Vec::new();
    for &k in core.subgroup().elements() {
        let mut y: i64 = 1;
        while Rational::from(y * y) * Integer::from(m * h * m * h) * &y0_sq < 2 * k {
            let mut z: i64 = 0;
            while z_in_u(z, k, m, h, &y0_sq) {
                for zz in if z == 0 { vec![0] } else { vec![z, -z] } {
                    if gcd_u64((k as i64 * zz).unsigned_abs(), (m / k) * y as u64) == 1 {
                        triples.push((k, y, zz));
                    }
                }
                z += 1;
            }
            y += 1;
        }
    }
    let values: Vec<Rational> = triples.par_iter().map(|&(k, y, z)| c_value(m, h, k, y, z, &pts)).collect();
    let mut unit_triples = Vec::new();
    let mut c0: Option<Rational> = None;
    for (t, v) in triples.iter().zip(&values) {
        if *v == 1 {
            unit_triples.push(*t);
        } else if c0.as_ref().is_none_or(|c| v > c) {
            c0 = Some(v.clone());
        }
    }
    let half = Rational::from((1, 2));
    let c = match &c0 {
        Some(v) if *v > half => v.clone(),
        _ => half,
    };

    let crit_triples: Vec<(u64, i64, i64)> = crit
        .non_identity()
        .iter()
        .map(|cc| {
            let (k, y, z) = cc.triple.as_ref().expect("non-identity classes carry triples");
            (*k, y.parse().expect("small"), z.parse().expect("small"))
        })
        .collect();
    let mut a = unit_triples.clone();
    let mut b = crit_triples.clone();
    a.sort_unstable();
    b.sort_unstable();
    let critical_cross_check = a == b;

    // N₁ = max |τ − π|² / (Im τ · ρ²) over non-identity critical classes.
    let mut n1 = Surd::rational(Rational::new());
    for cc in crit.non_identity() {
        let (ExtRational::Finite(p), ExtRational::Finite(r2)) = (&cc.class.pi, &cc.class.rho_sq) else {
            continue;
        };
        for t in &pts {
            let dx = t.x.clone() - p;
            let q = (Rational::from(&dx * &dx) + &t.y2) / r2;
            let val = Surd::sqrt(&(Rational::from(1) / &t.y2)).mul_rational(&q);
            if val > n1 {
                n1 = val;
            }
        }
    }
    // N₂ with lower-left entry read as mh·y', i.e. y' = h·y.
    let mut n2 = Rational::new();
    for (i, &(ki, yi, zi)) in crit_triples.iter().enumerate() {
        for &(kj, yj, zj) in &crit_triples[i + 1..] {
            let (yi2, yj2) = (yi * h as i64, yj * h as i64);
            let diff = (ki as i64 * zi * yj2 - kj as i64 * zj * yi2).unsigned_abs();
            let v = Rational::from((Integer::from(m * h) * diff, Integer::from(gcd_u64(ki, kj))));
            if v > n2 {
                n2 = v;
            }
        }
    }
    let n = if Surd::rational(n2.clone()) > n1 { Surd::rational(n2.clone()) } else { n1.clone() };
    let n_int = n.ceil();
    Ok(DomainConstants {
        group: core.label(),
        y0: Surd::sqrt(&y0_sq),
        y0_sq,
        c,
        c0,
        n1,
        n2,
        n_int,
        n,
        endpoints: pts.iter().map(|p| p.to_string()).collect(),
        u_size: triples.len(),
        unit_triples,
        critical_cross_check,
    })
}

/// `y₀ ≥ √3/(2mh)`, compared through squares.
pub fn y0_bound_check(g: &GroupSpec) -> Result<bool> {
    let core = require_one_cusp(g)?;
    let pts = boundary_endpoints(&core)?;
    let y0_sq = pts.iter().map(|p| p.y2.clone()).min().expect("non-empty");
    let mh = core.m() * core.h();
    Ok(y0_sq >= Rational::from((3, 4 * mh * mh)))
}

/// Every candidate arc scanned when building 𝒟(G), with its coset class.
/// Exact groups repeat the parent's arcs in each of the `h` translates.
pub fn candidate_arc_list(g: &GroupSpec) -> Result<Vec<(Arc, CosetClass)>> {
    let core = require_one_cusp(g)?;
    let base: Vec<(Arc, CosetClass)> =
        candidate_arcs(&core).into_iter().map(|c| (Arc::finite(c.p, c.r2), c.class)).collect();
    if !g.is_exact() {
        return Ok(base);
    }
    let h = core.h() as i64;
    let mut out = Vec::new();
    for j in (-(h - 1) / 2)..=(h / 2) {
        let shift = Rational::from((j, h));
        for (a, class) in &base {
            let (p, r2) = a.center_sq().expect("candidate arcs are finite");
            out.push((Arc::finite(p.clone() + &shift, r2.clone()), class.clone()));
        }
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::num::rat;

    fn pm(a: i64, b: i64, c: i64, d: i64) -> ProjMatrix {
        ProjMatrix::new(a, b, c, d).unwrap()
    }

    fn quad(x: Rational, y2: Rational) -> HPoint {
        HPoint::from_quad(&QuadPoint::new(x, y2).unwrap(), 128).unwrap()
    }

    #[test]
    fn reduce_examples() {
        let r = reduce(&GroupSpec::psl2z(), &quad(rat(0, 1), rat(1, 16))).unwrap();
        assert_eq!(r.point.exact.unwrap(), QuadPoint::new(rat(0, 1), rat(16, 1)).unwrap());
        assert_eq!(CosetClass::of(&r.transform), CosetClass::of(&ProjMatrix::s()));
        let r = reduce(&GroupSpec::plus(2), &quad(rat(0, 1), rat(1, 100))).unwrap();
        assert_eq!(r.point.exact.unwrap(), QuadPoint::new(rat(0, 1), rat(25, 1)).unwrap());
        assert_eq!(CosetClass::of(&r.transform), CosetClass::of(&pm(0, -1, 2, 0)));
        let r = reduce(&GroupSpec::plus(6), &quad(rat(3, 10), rat(4, 1))).unwrap();
        assert!(r.transform.is_identity());
    }

    #[test]
    fn reduce_float_matches_exact() {
        let g = GroupSpec::plus(6);
        let e = reduce(&g, &quad(rat(7, 31), rat(1, 1000))).unwrap();
        let f = reduce(&g, &HPoint::from_f64(7.0 / 31.0, (0.001f64).sqrt(), 128).unwrap()).unwrap();
        assert!((e.point.x.to_f64() - f.point.x.to_f64()).abs() < 1e-12);
        assert!((e.point.y.to_f64() - f.point.y.to_f64()).abs() < 1e-12);
    }

    #[test]
    fn reduce_exact_group_lands_in_kernel() {
        let g = GroupSpec::parse("3||3").unwrap();
        let r = reduce(&g, &quad(rat(2, 7), rat(1, 50))).unwrap();
        assert!(g.contains(&r.transform));
        let x = r.point.exact.unwrap().x;
        assert!(x > rat(-1, 2) && x <= rat(1, 2));
    }

    #[test]
    fn boundary_examples() {
        let b = lower_boundary(&GroupSpec::plus(2)).unwrap();
        assert_eq!(b.len(), 1);
        assert_eq!((b[0].center(), b[0].sq_radius()), (&rat(0, 1), &rat(1, 2)));
        assert_eq!((&b[0].x_lo, &b[0].x_hi), (&rat(0, 1), &rat(1, 2)));
        let b = lower_boundary(&GroupSpec::plus(6)).unwrap();
        assert_eq!(b.len(), 2);
        assert_eq!((b[0].center(), b[0].sq_radius(), &b[0].x_hi), (&rat(0, 1), &rat(1, 6), &rat(1, 3)));
        assert_eq!((b[1].center(), b[1].sq_radius(), &b[1].x_lo), (&rat(1, 2), &rat(1, 12), &rat(1, 3)));
        let b = lower_boundary(&GroupSpec::parse("3|3").unwrap()).unwrap();
        assert_eq!(b.len(), 1);
        assert_eq!((b[0].sq_radius(), &b[0].x_lo, &b[0].x_hi), (&rat(1, 9), &rat(0, 1), &rat(1, 6)));
        let b = lower_boundary(&GroupSpec::psl2z()).unwrap();
        assert_eq!((b[0].sq_radius(), &b[0].x_hi), (&rat(1, 1), &rat(1, 2)));
    }

    fn classes(v: &[ProjMatrix]) -> Vec<CosetClass> {
        v.iter().map(CosetClass::of).collect()
    }

    #[test]
    fn critical_set_examples() {
        let check = |g: GroupSpec, want: Vec<ProjMatrix>| {
            let got: Vec<CosetClass> = critical_set(&g).unwrap().classes.into_iter().map(|c| c.class).collect();
            let want = classes(&want);
            assert_eq!(got.len(), want.len(), "{}", g);
            for w in want {
                assert!(got.contains(&w), "{g}: missing {w}");
            }
        };
        check(GroupSpec::psl2z(), vec![ProjMatrix::identity(), pm(0, -1, 1, 0), pm(0, -1, 1, -1)]);
        check(GroupSpec::plus(2), vec![ProjMatrix::identity(), pm(0, -1, 2, 0), pm(0, -1, 2, -2), pm(1, -1, 2, -1)]);
        check(
            GroupSpec::plus(6),
            vec![ProjMatrix::identity(), pm(0, -1, 6, 0), pm(3, -2, 6, -3), pm(2, -1, 6, -2)],
        );
        check(GroupSpec::parse("3|3").unwrap(), vec![ProjMatrix::identity(), pm(0, -1, 9, 0), pm(0, -1, 9, -3)]);
    }

    #[test]
    fn constants_examples() {
        let c2 = constants(&GroupSpec::plus(2)).unwrap();
        assert_eq!(c2.c, rat(1, 2));
        assert_eq!(c2.n, Surd::sqrt(&rat(18, 1)));
        assert_eq!(c2.n_int, 5);
        assert_eq!(c2.y0_sq, rat(1, 4));
        assert!(c2.critical_cross_check);
        let c6 = constants(&GroupSpec::plus(6)).unwrap();
        assert_eq!(c6.c, rat(1, 2));
        assert_eq!(c6.n1, Surd::sqrt(&rat(150, 1)));
        assert_eq!(c6.n2, rat(6, 1));
        assert_eq!(c6.n_int, 13);
        assert_eq!(c6.y0_sq, rat(1, 18));
        assert!(c6.critical_cross_check);
        let c3 = constants(&GroupSpec::parse("3|3").unwrap()).unwrap();
        assert_eq!(c3.c, rat(1, 2));
        assert_eq!(c3.n, Surd::rational(rat(9, 1)));
        assert!(c3.critical_cross_check);
    }

    #[test]
    fn y0_examples() {
        for g in ["1", "2+", "6+", "3|3", "3+", "5+", "7+", "10+"] {
            assert!(y0_bound_check(&GroupSpec::parse(g).unwrap()).unwrap(), "{g}");
        }
    }
}

