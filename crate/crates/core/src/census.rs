//! Holomorphic discs through three points of the Clifford torus in `CP²`.
//!
//! Geometry is in double precision. Angles are radians in `[0, 2π)`; internally
//! most predicates work in turns (period 1).

use std::f64::consts::TAU;
use std::fmt::Write as _;

use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;

use crate::error::{Error, Result};

/// Genericity tolerance on every angle comparison, in turns.
pub const EPS: f64 = 1e-9;
/// Residual bound for constructed discs.
pub const RESIDUAL_TOL: f64 = 1e-9;

fn frac(x: f64) -> f64 {
    let f = x - x.floor();
    if f >= 1.0 {
        0.0
    } else {
        f
    }
}

fn turns(theta: f64) -> f64 {
    frac(theta / TAU)
}

/// Distance to the nearest integer.
fn circ_dist(x: f64) -> f64 {
    let f = frac(x);
    f.min(1.0 - f)
}

fn degenerate(msg: impl Into<String>) -> Error {
    Error::Degenerate(msg.into())
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct TorusPoint {
    pub theta1: f64,
    pub theta2: f64,
}

impl TorusPoint {
    pub fn new(theta1: f64, theta2: f64) -> Self {
        TorusPoint {
            theta1: turns(theta1) * TAU,
            theta2: turns(theta2) * TAU,
        }
    }

    pub fn origin() -> Self {
        TorusPoint::new(0.0, 0.0)
    }

    pub fn translate(&self, v: &TorusPoint) -> Self {
        TorusPoint::new(self.theta1 + v.theta1, self.theta2 + v.theta2)
    }

    fn turns(&self) -> [f64; 2] {
        [turns(self.theta1), turns(self.theta2)]
    }

    pub fn random(rng: &mut impl Rng) -> Self {
        TorusPoint::new(rng.gen_range(0.0..TAU), rng.gen_range(0.0..TAU))
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "UPPERCASE")]
pub enum Orientation {
    Ccw,
    Cw,
    Degenerate,
}

/// Orientation of the ordered triple `(e^{ia}, e^{ib}, e^{ic})` on the circle.
pub fn cyclic_orientation(a: f64, b: f64, c: f64) -> Orientation {
    let (a, b, c) = (a / TAU, b / TAU, c / TAU);
    if circ_dist(b - a) < EPS || circ_dist(c - a) < EPS || circ_dist(c - b) < EPS {
        return Orientation::Degenerate;
    }
    if frac(b - a) < frac(c - a) {
        Orientation::Ccw
    } else {
        Orientation::Cw
    }
}

/// One factor `z ↦ e^{ic}(z − a)/(1 − āz)`.
#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct DiscFactor {
    pub a_re: f64,
    pub a_im: f64,
    pub c: f64,
}

impl DiscFactor {
    pub fn center(&self) -> Complex64 {
        Complex64::new(self.a_re, self.a_im)
    }

    pub fn eval(&self, z: Complex64) -> Complex64 {
        let a = self.center();
        Complex64::from_polar(1.0, self.c) * (z - a) / (Complex64::new(1.0, 0.0) - a.conj() * z)
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct DiscParams {
    pub factors: Vec<DiscFactor>,
    pub orientation: Orientation,
    /// `max_j |u_j(reference marks) − targets|`.
    pub residual: f64,
}

/// Reference marked points for the given orientation.
pub fn reference_marks(o: Orientation) -> [Complex64; 3] {
    let i = if o == Orientation::Cw { -1.0 } else { 1.0 };
    [
        Complex64::new(1.0, 0.0),
        Complex64::new(0.0, i),
        Complex64::new(-1.0, 0.0),
    ]
}

type Mat = [[Complex64; 2]; 2];

fn mat_mul(x: &Mat, y: &Mat) -> Mat {
    [
        [
            x[0][0] * y[0][0] + x[0][1] * y[1][0],
            x[0][0] * y[0][1] + x[0][1] * y[1][1],
        ],
        [
            x[1][0] * y[0][0] + x[1][1] * y[1][0],
            x[1][0] * y[0][1] + x[1][1] * y[1][1],
        ],
    ]
}

fn mat_inv(x: &Mat) -> Mat {
    [[x[1][1], -x[0][1]], [-x[1][0], x[0][0]]]
}

/// Möbius matrix sending `z_1, z_2, z_3` to `0, 1, ∞`.
fn to_standard(z: &[Complex64; 3]) -> Mat {
    let [z1, z2, z3] = *z;
    [[z2 - z3, -z1 * (z2 - z3)], [z2 - z1, -z3 * (z2 - z1)]]
}

fn mobius(m: &Mat, z: Complex64) -> Complex64 {
    (m[0][0] * z + m[0][1]) / (m[1][0] * z + m[1][1])
}

/// The disc automorphism taking `from` to `to` (three points on the circle each).
pub fn disc_automorphism(from: &[Complex64; 3], to: &[Complex64; 3]) -> Result<DiscFactor> {
    let m = mat_mul(&mat_inv(&to_standard(to)), &to_standard(from));
    if m[0][0].norm() < 1e-15 {
        return Err(Error::Numerical(
            "automorphism sends ∞ to the origin".into(),
        ));
    }
    let a = -m[0][1] / m[0][0];
    if a.norm() >= 1.0 {
        return Err(Error::Numerical(format!(
            "center {a} lies outside the disc"
        )));
    }
    let z = from[0];
    let lambda = mobius(&m, z) * (Complex64::new(1.0, 0.0) - a.conj() * z) / (z - a);
    Ok(DiscFactor {
        a_re: a.re,
        a_im: a.im,
        c: lambda.arg(),
    })
}

/// Decide and construct the disc through three points of `(S¹)ⁿ`, one angle
/// triple `(θ_p, θ_q, θ_r)` per coordinate.
pub fn solve_disc(coords: &[[f64; 3]]) -> Result<Option<DiscParams>> {
    let mut common = None;
    for (j, t) in coords.iter().enumerate() {
        let o = cyclic_orientation(t[0], t[1], t[2]);
        if o == Orientation::Degenerate {
            return Err(degenerate(format!(
                "coordinate {} has coincident points",
                j + 1
            )));
        }
        match common {
            None => common = Some(o),
            Some(c) if c != o => common = Some(Orientation::Degenerate),
            _ => {}
        }
    }
    let Some(o) = common else {
        return Err(Error::Input("no coordinates".into()));
    };
    if o == Orientation::Degenerate {
        return Ok(None);
    }
    let marks = reference_marks(o);
    let mut factors = Vec::with_capacity(coords.len());
    let mut residual: f64 = 0.0;
    for t in coords {
        let targets = t.map(|x| Complex64::from_polar(1.0, x));
        let f = disc_automorphism(&marks, &targets)?;
        for (m, w) in marks.iter().zip(&targets) {
            residual = residual.max((f.eval(*m) - w).norm());
        }
        factors.push(f);
    }
    if residual >= RESIDUAL_TOL {
        return Err(Error::Numerical(format!(
            "disc residual {residual:e} exceeds {RESIDUAL_TOL:e}"
        )));
    }
    Ok(Some(DiscParams {
        factors,
        orientation: o,
        residual,
    }))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum Maslov4Class {
    #[serde(rename = "beta_1+beta_2")]
    B12,
    #[serde(rename = "beta_0+beta_2")]
    B02,
    #[serde(rename = "beta_0+beta_1")]
    B01,
}

impl Maslov4Class {
    pub const ALL: [Maslov4Class; 3] = [Maslov4Class::B12, Maslov4Class::B02, Maslov4Class::B01];

    pub fn name(self) -> &'static str {
        match self {
            Maslov4Class::B12 => "beta_1+beta_2",
            Maslov4Class::B02 => "beta_0+beta_2",
            Maslov4Class::B01 => "beta_0+beta_1",
        }
    }
}

/// Coordinates in the affine chart containing discs of the class.
pub fn chart_coords(p: &TorusPoint, class: Maslov4Class) -> (f64, f64) {
    let (a, b) = (p.theta1, p.theta2);
    let (x, y) = match class {
        Maslov4Class::B12 => (a, b),
        Maslov4Class::B02 => (-a, b - a),
        Maslov4Class::B01 => (a - b, -b),
    };
    (turns(x) * TAU, turns(y) * TAU)
}

/// Orientation shared by both chart coordinates, `Cw`/`Ccw`, or `None` if they differ.
pub fn class_orientation(
    p: &TorusPoint,
    q: &TorusPoint,
    r: &TorusPoint,
    class: Maslov4Class,
) -> Result<Option<Orientation>> {
    let (cp, cq, cr) = (
        chart_coords(p, class),
        chart_coords(q, class),
        chart_coords(r, class),
    );
    let o1 = cyclic_orientation(cp.0, cq.0, cr.0);
    let o2 = cyclic_orientation(cp.1, cq.1, cr.1);
    if o1 == Orientation::Degenerate || o2 == Orientation::Degenerate {
        return Err(degenerate(format!(
            "coincident chart coordinates for {}",
            class.name()
        )));
    }
    Ok((o1 == o2).then_some(o1))
}

/// `x ∈ Q_p` with `Q_p = {p + (s, t) : 0 ≤ s ≤ t ≤ 1}`.
pub fn in_upper_triangle(p: &TorusPoint, x: &TorusPoint) -> Result<bool> {
    let (pp, xx) = (p.turns(), x.turns());
    let s = frac(xx[0] - pp[0]);
    let t = frac(xx[1] - pp[1]);
    if circ_dist(s) < EPS || circ_dist(t) < EPS || (s - t).abs() < EPS {
        return Err(degenerate("point on a triangle boundary"));
    }
    Ok(s < t)
}

/// Mod-2 triple intersection number of the upper triangles.
pub fn t_pqr(p: &TorusPoint, q: &TorusPoint, r: &TorusPoint) -> Result<u8> {
    let inn = in_upper_triangle;
    let a = inn(p, r)? && inn(q, r)?;
    let b = inn(p, q)? && inn(r, q)?;
    let c = inn(q, p)? && inn(r, p)?;
    Ok((a as u8 + b as u8 + c as u8) % 2)
}

/// How triangle vertices are lifted to the plane.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Default, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum LiftRule {
    /// Differences from `p` taken in `(−1/2, 1/2]`.
    #[default]
    Minimal,
    /// Differences from `p` taken in `[0, 1)`.
    Fractional,
}

fn lift(d: f64, rule: LiftRule) -> f64 {
    match rule {
        LiftRule::Fractional => frac(d),
        LiftRule::Minimal => {
            let f = frac(d);
            if f > 0.5 {
                f - 1.0
            } else {
                f
            }
        }
    }
}

/// Number of `λ ∈ [0,1]` with `v0 + λ dv ≡ c (mod 1)`.
fn crossings(v0: f64, dv: f64, c: f64) -> Result<u32> {
    if dv.abs() < EPS {
        return Err(degenerate("edge parallel to a boundary circle"));
    }
    let (lo, hi) = if dv > 0.0 {
        (v0, v0 + dv)
    } else {
        (v0 + dv, v0)
    };
    let k_lo = (lo - c).ceil();
    let k_hi = (hi - c).floor();
    for k in [k_lo, k_hi] {
        if ((c + k) - lo).abs() < EPS || ((c + k) - hi).abs() < EPS {
            return Err(degenerate("boundary circle through a triangle vertex"));
        }
    }
    Ok((k_hi - k_lo + 1.0).max(0.0) as u32)
}

/// Mod-2 count of the horizontal, vertical, and diagonal circles through `x`
/// meeting the segment `a → b` (plane lifts, in turns).
fn n_count(x: [f64; 2], a: [f64; 2], b: [f64; 2]) -> Result<u8> {
    let d = [b[0] - a[0], b[1] - a[1]];
    let horizontal = crossings(a[1], d[1], x[1])?;
    let vertical = crossings(a[0], d[0], x[0])?;
    let diagonal = crossings(a[0] - a[1], d[0] - d[1], x[0] - x[1])?;
    Ok(((horizontal + vertical + diagonal) % 2) as u8)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct BiranCornea {
    pub n_p: u8,
    pub n_q: u8,
    pub n_r: u8,
    pub t_pqr: u8,
    /// `T_pqr + n_q n_r ≡ 1 (mod 2)`.
    pub holds: bool,
}

pub fn biran_cornea(
    p: &TorusPoint,
    q: &TorusPoint,
    r: &TorusPoint,
    rule: LiftRule,
) -> Result<BiranCornea> {
    let (pp, qq, rr) = (p.turns(), q.turns(), r.turns());
    let qv = [
        pp[0] + lift(qq[0] - pp[0], rule),
        pp[1] + lift(qq[1] - pp[1], rule),
    ];
    let rv = [
        pp[0] + lift(rr[0] - pp[0], rule),
        pp[1] + lift(rr[1] - pp[1], rule),
    ];
    let n_p = n_count(pp, qv, rv)?;
    let n_q = n_count(qq, pp, rv)?;
    let n_r = n_count(rr, pp, qv)?;
    let t = t_pqr(p, q, r)?;
    Ok(BiranCornea {
        n_p,
        n_q,
        n_r,
        t_pqr: t,
        holds: (t + n_q * n_r) % 2 == 1,
    })
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct CensusReport {
    pub p: TorusPoint,
    pub q: TorusPoint,
    pub r: TorusPoint,
    /// Existence per class, in the order `β_1+β_2, β_0+β_2, β_0+β_1`.
    pub exists: [bool; 3],
    pub orientations: [Option<Orientation>; 3],
    pub total: u8,
    pub cyclic_count: u8,
    pub t_pqr: u8,
    pub combined: u8,
    pub n_p: u8,
    pub n_q: u8,
    pub n_r: u8,
    pub biran_cornea: bool,
}

impl CensusReport {
    /// Cyclic count under the opposite convention (common orientation CW).
    pub fn cyclic_count_cw(&self) -> u8 {
        self.orientations
            .iter()
            .filter(|o| **o == Some(Orientation::Cw))
            .count() as u8
    }
}

pub fn census(p: &TorusPoint, q: &TorusPoint, r: &TorusPoint) -> Result<CensusReport> {
    let mut orientations = [None; 3];
    for (slot, class) in orientations.iter_mut().zip(Maslov4Class::ALL) {
        *slot = class_orientation(p, q, r, class)?;
    }
    let exists = orientations.map(|o| o.is_some());
    let total = exists.iter().filter(|e| **e).count() as u8;
    let cyclic_count = orientations
        .iter()
        .filter(|o| **o == Some(Orientation::Ccw))
        .count() as u8;
    let bc = biran_cornea(p, q, r, LiftRule::Minimal)?;
    Ok(CensusReport {
        p: *p,
        q: *q,
        r: *r,
        exists,
        orientations,
        total,
        cyclic_count,
        t_pqr: bc.t_pqr,
        combined: (cyclic_count + bc.t_pqr) % 2,
        n_p: bc.n_p,
        n_q: bc.n_q,
        n_r: bc.n_r,
        biran_cornea: bc.holds,
    })
}

/// Per-sample generator: stream `index` of the seeded ChaCha8 sequence.
pub fn sample_rng(seed: u64, index: u64) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(index);
    rng
}

const MAX_RESAMPLES: usize = 64;

/// A generic random triple, resampling degenerate draws.
pub fn random_generic_triple(rng: &mut impl Rng) -> Result<(CensusReport, usize)> {
    for attempt in 0..MAX_RESAMPLES {
        let (p, q, r) = (
            TorusPoint::random(rng),
            TorusPoint::random(rng),
            TorusPoint::random(rng),
        );
        let ok = census(&p, &q, &r).and_then(|c| {
            biran_cornea(&p, &q, &r, LiftRule::Fractional)?;
            Ok(c)
        });
        if let Ok(c) = ok {
            return Ok((c, attempt));
        }
    }
    Err(degenerate("too many degenerate draws"))
}

#[derive(Clone, Debug, Serialize)]
pub struct Witness {
    pub first: CensusReport,
    pub second: CensusReport,
}

#[derive(Clone, Debug, Serialize)]
pub struct MonteCarloSummary {
    pub samples: usize,
    pub seed: u64,
    pub resampled: usize,
    pub total_even: usize,
    pub total_histogram: [usize; 4],
    pub cyclic_histogram: [usize; 4],
    pub combined_values: Vec<u8>,
    pub combined_values_cw: Vec<u8>,
    pub biran_cornea_holds: usize,
    pub biran_cornea_alternate_holds: usize,
    pub lift_rules_agree: usize,
    pub translation_invariant: usize,
    pub solve_disc_agrees: usize,
    pub solve_disc_max_residual: f64,
    pub class_witness: Option<Witness>,
    pub cyclic_witness: Option<Witness>,
}

impl MonteCarloSummary {
    pub fn parity_ok(&self) -> bool {
        self.total_even == self.samples
    }

    pub fn cyclic_ok(&self) -> bool {
        self.cyclic_histogram[2] + self.cyclic_histogram[3] == 0
    }

    pub fn invariant_ok(&self) -> bool {
        self.combined_values.len() == 1 && self.combined_values_cw == self.combined_values
    }

    pub fn biran_cornea_ok(&self) -> bool {
        self.biran_cornea_holds == self.samples && self.lift_rules_agree == self.samples
    }

    pub fn solve_disc_ok(&self) -> bool {
        self.solve_disc_agrees == self.samples && self.solve_disc_max_residual < RESIDUAL_TOL
    }

    pub fn witnesses_ok(&self) -> bool {
        self.class_witness.is_some() && self.cyclic_witness.is_some()
    }
}

struct SampleResult {
    report: CensusReport,
    resampled: usize,
    bc_alt: bool,
    translation_ok: bool,
    solve_ok: bool,
    residual: f64,
}

fn run_sample(seed: u64, index: u64) -> Result<SampleResult> {
    let mut rng = sample_rng(seed, index);
    let (report, resampled) = random_generic_triple(&mut rng)?;
    let (p, q, r) = (report.p, report.q, report.r);
    let bc_alt = biran_cornea(&p, &q, &r, LiftRule::Fractional)?.holds;
    let v = TorusPoint::random(&mut rng);
    let translation_ok = match census(&p.translate(&v), &q.translate(&v), &r.translate(&v)) {
        Ok(t) => t.exists == report.exists && t.orientations == report.orientations,
        // A translation can land a comparison inside ε; that is not a failure.
        Err(Error::Degenerate(_)) => true,
        Err(e) => return Err(e),
    };
    let mut solve_ok = true;
    let mut residual: f64 = 0.0;
    for (k, class) in Maslov4Class::ALL.into_iter().enumerate() {
        let (cp, cq, cr) = (
            chart_coords(&p, class),
            chart_coords(&q, class),
            chart_coords(&r, class),
        );
        match solve_disc(&[[cp.0, cq.0, cr.0], [cp.1, cq.1, cr.1]])? {
            Some(d) => {
                residual = residual.max(d.residual);
                solve_ok &= report.orientations[k] == Some(d.orientation);
            }
            None => solve_ok &= report.orientations[k].is_none(),
        }
    }
    Ok(SampleResult {
        report,
        resampled,
        bc_alt,
        translation_ok,
        solve_ok,
        residual,
    })
}

/// Census statistics over `samples` seeded generic triples.
pub fn monte_carlo(samples: usize, seed: u64) -> Result<MonteCarloSummary> {
    let results: Vec<SampleResult> = (0..samples as u64)
        .into_par_iter()
        .map(|i| run_sample(seed, i))
        .collect::<Result<_>>()?;
    let mut s = MonteCarloSummary {
        samples,
        seed,
        resampled: 0,
        total_even: 0,
        total_histogram: [0; 4],
        cyclic_histogram: [0; 4],
        combined_values: Vec::new(),
        combined_values_cw: Vec::new(),
        biran_cornea_holds: 0,
        biran_cornea_alternate_holds: 0,
        lift_rules_agree: 0,
        translation_invariant: 0,
        solve_disc_agrees: 0,
        solve_disc_max_residual: 0.0,
        class_witness: None,
        cyclic_witness: None,
    };
    for res in &results {
        let c = &res.report;
        s.resampled += res.resampled;
        s.total_even += (c.total % 2 == 0) as usize;
        s.total_histogram[c.total as usize] += 1;
        s.cyclic_histogram[c.cyclic_count as usize] += 1;
        if !s.combined_values.contains(&c.combined) {
            s.combined_values.push(c.combined);
        }
        let cw = (c.cyclic_count_cw() + c.t_pqr) % 2;
        if !s.combined_values_cw.contains(&cw) {
            s.combined_values_cw.push(cw);
        }
        s.biran_cornea_holds += c.biran_cornea as usize;
        s.biran_cornea_alternate_holds += res.bc_alt as usize;
        s.lift_rules_agree += (c.biran_cornea == res.bc_alt) as usize;
        s.translation_invariant += res.translation_ok as usize;
        s.solve_disc_agrees += res.solve_ok as usize;
        s.solve_disc_max_residual = s.solve_disc_max_residual.max(res.residual);
    }
    s.combined_values.sort_unstable();
    s.combined_values_cw.sort_unstable();
    let first = results.first().map(|r| &r.report);
    if let Some(f) = first {
        s.class_witness = results
            .iter()
            .find(|r| r.report.exists != f.exists)
            .map(|r| Witness {
                first: f.clone(),
                second: r.report.clone(),
            });
        s.cyclic_witness = results
            .iter()
            .find(|r| r.report.cyclic_count != f.cyclic_count)
            .map(|r| Witness {
                first: f.clone(),
                second: r.report.clone(),
            });
    }
    Ok(s)
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct RegionCell {
    pub i: usize,
    pub j: usize,
    pub r: TorusPoint,
    /// `None` for cells within ε of a degeneracy.
    pub total: Option<u8>,
    pub cyclic_count: Option<u8>,
    pub t_pqr: Option<u8>,
    pub combined: Option<u8>,
}

#[derive(Clone, Debug, Serialize)]
pub struct RegionMap {
    pub p: TorusPoint,
    pub q: TorusPoint,
    pub resolution: usize,
    pub cells: Vec<RegionCell>,
}

/// Census at the center of every cell of a `resolution × resolution` grid over `r`.
pub fn region_map(p: &TorusPoint, q: &TorusPoint, resolution: usize) -> Result<RegionMap> {
    if resolution == 0 {
        return Err(Error::Input("resolution must be positive".into()));
    }
    let cells = (0..resolution * resolution)
        .into_par_iter()
        .map(|idx| {
            let (i, j) = (idx % resolution, idx / resolution);
            let step = TAU / resolution as f64;
            let r = TorusPoint::new((i as f64 + 0.5) * step, (j as f64 + 0.5) * step);
            match census(p, q, &r) {
                Ok(c) => Ok(RegionCell {
                    i,
                    j,
                    r,
                    total: Some(c.total),
                    cyclic_count: Some(c.cyclic_count),
                    t_pqr: Some(c.t_pqr),
                    combined: Some(c.combined),
                }),
                Err(Error::Degenerate(_)) => Ok(RegionCell {
                    i,
                    j,
                    r,
                    total: None,
                    cyclic_count: None,
                    t_pqr: None,
                    combined: None,
                }),
                Err(e) => Err(e),
            }
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(RegionMap {
        p: *p,
        q: *q,
        resolution,
        cells,
    })
}

impl RegionMap {
    pub fn pairs(&self) -> Vec<(u8, u8)> {
        let mut v: Vec<(u8, u8)> = self
            .cells
            .iter()
            .filter_map(|c| Some((c.total?, c.cyclic_count?)))
            .collect();
        v.sort_unstable();
        v.dedup();
        v
    }

    pub fn combined_values(&self) -> Vec<u8> {
        let mut v: Vec<u8> = self.cells.iter().filter_map(|c| c.combined).collect();
        v.sort_unstable();
        v.dedup();
        v
    }

    pub fn degenerate_cells(&self) -> usize {
        self.cells.iter().filter(|c| c.total.is_none()).count()
    }

    /// RFC 4180 table, one row per cell.
    pub fn to_csv(&self) -> Result<String> {
        let mut w = csv::WriterBuilder::new()
            .terminator(csv::Terminator::CRLF)
            .from_writer(Vec::new());
        let io = |e: csv::Error| Error::Resource(format!("csv: {e}"));
        w.write_record([
            "i",
            "j",
            "r_theta1",
            "r_theta2",
            "total",
            "cyclic_count",
            "t_pqr",
            "combined",
        ])
        .map_err(io)?;
        let opt = |x: Option<u8>| x.map_or_else(|| "degenerate".to_string(), |v| v.to_string());
        for c in &self.cells {
            w.write_record([
                c.i.to_string(),
                c.j.to_string(),
                format!("{:.12}", c.r.theta1),
                format!("{:.12}", c.r.theta2),
                opt(c.total),
                opt(c.cyclic_count),
                opt(c.t_pqr),
                opt(c.combined),
            ])
            .map_err(io)?;
        }
        let bytes = w
            .into_inner()
            .map_err(|e| Error::Resource(format!("csv: {e}")))?;
        Ok(String::from_utf8(bytes).expect("ascii output"))
    }

    pub fn to_svg(&self) -> String {
        let cell = 8usize;
        let size = cell * self.resolution;
        let mut s = String::new();
        let _ = writeln!(s, r#"<?xml version="1.0" encoding="UTF-8"?>"#);
        let _ = writeln!(
            s,
            r#"<svg xmlns="http://www.w3.org/2000/svg" version="1.1" width="{size}" height="{size}" viewBox="0 0 {size} {size}">"#
        );
        for c in &self.cells {
            let fill = match (c.total, c.cyclic_count) {
                (None, _) | (_, None) => "#000000",
                (Some(0), Some(0)) => "#ffffff",
                (Some(2), Some(0)) => "#9ecae1",
                (Some(2), Some(1)) => "#3182bd",
                _ => "#e6550d",
            };
            // Row 0 at the bottom so θ_2 increases upward.
            let y = size - (c.j + 1) * cell;
            let _ = writeln!(
                s,
                r#"<rect x="{}" y="{}" width="{cell}" height="{cell}" fill="{fill}"><title>total={} cyclic={}</title></rect>"#,
                c.i * cell,
                y,
                c.total.map_or("-".into(), |v| v.to_string()),
                c.cyclic_count.map_or("-".into(), |v| v.to_string()),
            );
        }
        for (pt, color) in [(self.p, "#d62728"), (self.q, "#2ca02c")] {
            let cx = pt.theta1 / TAU * size as f64;
            let cy = size as f64 - pt.theta2 / TAU * size as f64;
            let _ = writeln!(
                s,
                r#"<circle cx="{cx:.3}" cy="{cy:.3}" r="4" fill="{color}"/>"#
            );
        }
        s.push_str("</svg>\n");
        s
    }
}

/// Default second point for the region map.
pub fn default_region_q() -> TorusPoint {
    TorusPoint::new(2.2, 1.3)
}

pub fn parse_point(text: &str) -> Result<TorusPoint> {
    let parts: Vec<&str> = text.split(',').map(str::trim).collect();
    if parts.len() != 2 {
        return Err(Error::Parse(format!("expected θ1,θ2 but got {text:?}")));
    }
    let num = |s: &str| {
        s.parse::<f64>()
            .ok()
            .filter(|x| x.is_finite())
            .ok_or_else(|| Error::Parse(format!("bad angle {s:?}")))
    };
    Ok(TorusPoint::new(num(parts[0])?, num(parts[1])?))
}
