//! The reflection construction of dense penny graphs for every `d`.
//!
//! Two fans of `q − 2` equilateral triangles sit on a common edge `BC`, one
//! turning clockwise around `B` through `A_0, …, A_{q−3}` and one turning
//! counterclockwise around `C` through `A_0, A_{−1}, …, A_{−q+3}`. Reflecting
//! this block `U_0` in the line `ℓ_1` through `A_{q−3}` and `A_{−q+3}` gives a
//! ring `X`. The half-turn about the midpoint of `B′A_0′` composed with the
//! reflection is a glide `K` with `K(B) = A_0′`, `K(C) = A_1′`, `K(A_0) = B′`,
//! so `K(U_0)` is exactly the pair of fans built around `A_0′` and `A_1′`.
//! Iteration `i` is `X ∪ K X ∪ … ∪ K^{i−1} X`, stored as `i` charts related
//! by `K`.

use std::collections::VecDeque;
use std::f64::consts::{PI, TAU};

use serde::Serialize;

use crate::bounds::q_of_d;
use crate::error::{Error, Result};
use crate::geom::{angle_at, apex, ccw_angle, dist_to_geodesic, hdist, midpoint, reflect, rotate_about, Geodesic, HPoint, Isometry};
use crate::hyptrig::{alpha_m_of_d, AngleSet, Dist};
use crate::penny::{edge_tol, PennyGraph};

/// Largest iteration count accepted by [`iterate`].
pub const ITERATION_CAP: usize = 12;

const ANGLE_TOL: f64 = 1e-9;

/// The two fans on `BC` together with the square used to pin down `q`.
#[derive(Debug, Clone, Serialize)]
pub struct FanConfig {
    pub d: Dist,
    pub q: u32,
    pub alpha: f64,
    pub alpha4: f64,
    pub b: HPoint,
    pub c: HPoint,
    /// `A_{−q+2}, …, A_{q−2}`.
    fan: Vec<HPoint>,
    /// `∠A_{q−3} A_{−q+3} C`.
    pub beta_q: f64,
    /// `∠A_{q−2} A_{−q+2} C`, or `None` when `A_{q−2}` and `A_{−q+2}` meet or
    /// pass each other on the bisector of `BC` (at `d = d(q)` they coincide).
    pub beta_q1: Option<f64>,
    /// The square `A, B, C, D` on `BC`, once placed.
    pub square: Option<[HPoint; 4]>,
}

impl FanConfig {
    /// Fan point `A_j` for `|j| ≤ q − 2`.
    pub fn a(&self, j: i64) -> HPoint {
        let m = self.q as i64 - 2;
        assert!(j.abs() <= m, "fan index {j} out of range");
        self.fan[(j + m) as usize]
    }
}

/// `B`, `C` and `A_{−m}, …, A_m`, with the midpoint of `BC` at the origin.
fn fans(d: f64, alpha: f64, m: usize) -> Result<(HPoint, HPoint, Vec<HPoint>)> {
    let b = HPoint::polar(0.5 * d, PI);
    let c = HPoint::polar(0.5 * d, 0.0);
    // One rotation per point keeps rounding from accumulating along the fan.
    let mut all = Vec::with_capacity(2 * m + 1);
    for j in (1..=m).rev() {
        all.push(rotate_about(&c, &b, (j as f64 + 1.0) * alpha)?);
    }
    for j in 0..=m {
        all.push(rotate_about(&b, &c, -(j as f64 + 1.0) * alpha)?);
    }
    Ok((b, c, all))
}

/// Whether `A_m` (on the side of `B`) has reached the perpendicular bisector
/// of `BC`, so that the two fans meet or cross.
fn fans_cross(a_m: &HPoint) -> bool {
    let [t, x, _] = a_m.coords();
    x >= -1e-12 * t
}

/// `β` for the fan pair `A_{−m}, A_m`, unless the fans cross.
fn beta(c: &HPoint, a_neg: &HPoint, a_pos: &HPoint) -> Result<Option<f64>> {
    if fans_cross(a_pos) {
        return Ok(None);
    }
    angle_at(a_neg, a_pos, c).map(Some)
}

/// Largest `q` with `β_q ≤ 2π − (q − 2)α`, found by growing the fans one
/// triangle at a time. The scan starts once the fans have turned past the
/// line `BC`, i.e. `(q − 2)α > π`; crossing fans violate the inequality.
pub fn geometric_q(d: Dist) -> Result<u32> {
    let alpha = AngleSet::at(d).alpha;
    let mut m = (PI / alpha).floor() as usize;
    loop {
        let (_, c, fan) = fans(d.value(), alpha, m)?;
        match beta(&c, &fan[0], &fan[2 * m])? {
            Some(b) if b <= TAU - (m as f64 + 1.0) * alpha => {}
            _ => return Ok(m as u32 + 2),
        }
        m += 1;
        if m > 100_000 {
            return Err(Error::Internal("fan never closed".into()));
        }
    }
}

fn check(ok: bool, iteration: usize, reason: impl FnOnce() -> String) -> Result<()> {
    if ok {
        Ok(())
    } else {
        Err(Error::Construction { iteration, reason: reason() })
    }
}

/// Builds the fans and verifies the angle inequalities that make them fit.
pub fn build_fan(d: Dist) -> Result<FanConfig> {
    let set = AngleSet::at(d);
    let (alpha, alpha4) = (set.alpha, set.alpha4);
    let q = q_of_d(d);
    let geo = geometric_q(d)?;
    if geo != q {
        return Err(Error::Internal(format!("fan size from angles q = {q}, from geometry q = {geo}")));
    }
    let m = q as usize - 2;
    let (b, c, fan) = fans(d.value(), alpha, m)?;
    let at = |j: i64| fan[(j + m as i64) as usize];
    let k = q as i64 - 3;
    let beta_q = beta(&c, &at(-k), &at(k))?
        .ok_or_else(|| Error::Construction { iteration: 0, reason: "fans A_(q-3), A_(-q+3) cross".into() })?;
    let beta_q1 = beta(&c, &at(-k - 1), &at(k + 1))?;
    let qf = q as f64;
    let gap = TAU - (qf - 2.0) * alpha;
    check((qf - 2.0) * alpha > PI, 0, || "(q-2)α ≤ π".into())?;
    check(beta_q <= alpha4 + ANGLE_TOL && alpha4 <= gap + ANGLE_TOL, 0, || {
        format!("β_q = {beta_q}, α4 = {alpha4}, 2π-(q-2)α = {gap}")
    })?;
    check(beta_q1.is_none_or(|b| b > alpha4) && alpha4 > TAU - (qf - 1.0) * alpha, 0, || {
        format!("β_(q+1) = {beta_q1:?} or 2π-(q-1)α not below α4 = {alpha4}")
    })?;
    check(2.0 * beta_q >= alpha - ANGLE_TOL, 0, || format!("2β_q = {} < α = {alpha}", 2.0 * beta_q))?;
    check(PI - (alpha + beta_q) >= alpha / 2.0 - ANGLE_TOL, 0, || "π-(α+β_q) < α/2".into())?;
    let tol = edge_tol(d);
    let top = hdist(&at(k), &at(-k));
    check(top >= d.value() - tol, 0, || format!("|A_(q-3) A_(-q+3)| = {top} < d"))?;
    Ok(FanConfig { d, q, alpha, alpha4, b, c, fan, beta_q, beta_q1, square: None })
}

/// Places the square `ABCD` on `BC`, on the side away from the fans, and
/// checks that `A` falls in the angle `∠A_{q−3} B A_{q−2}` and `D` in
/// `∠A_{−q+2} C A_{−q+3}`.
pub fn place_square(mut f: FanConfig) -> Result<FanConfig> {
    let d = f.d.value();
    let tol = edge_tol(f.d);
    let k = f.q as i64 - 3;
    let wide = hdist(&f.a(k + 1), &f.a(-k - 1));
    check(f.beta_q1.is_none() || wide < d, 0, || format!("|A_(q-2) A_(-q+2)| = {wide} is not below d"))?;
    let a = rotate_about(&f.b, &f.c, f.alpha4)?;
    let dd = rotate_about(&f.c, &f.b, -f.alpha4)?;
    let side = hdist(&a, &dd);
    check((side - d).abs() <= tol, 0, || format!("square side AD = {side}"))?;
    let corners = [a, f.b, f.c, dd];
    let alpha4 = alpha_m_of_d(4, f.d)?;
    for i in 0..4 {
        let ang = angle_at(&corners[i], &corners[(i + 3) % 4], &corners[(i + 1) % 4])?;
        check((ang - alpha4).abs() <= ANGLE_TOL, 0, || format!("square angle {ang} ≠ α4 {alpha4}"))?;
    }
    let (t_a, t_hi, t_lo) = (ccw_angle(&f.b, &f.c, &a)?, ccw_angle(&f.b, &f.c, &f.a(k))?, ccw_angle(&f.b, &f.c, &f.a(k + 1))?);
    check(t_lo < t_a && t_a <= t_hi + ANGLE_TOL, 0, || "A is not inside the angle A_(q-3) B A_(q-2)".into())?;
    let (t_d, t_lo, t_hi) = (ccw_angle(&f.c, &f.b, &dd)?, ccw_angle(&f.c, &f.b, &f.a(-k))?, ccw_angle(&f.c, &f.b, &f.a(-k - 1))?);
    check(t_lo <= t_d + ANGLE_TOL && t_d < t_hi, 0, || "D is not inside the angle A_(-q+2) C A_(-q+3)".into())?;
    f.square = Some(corners);
    Ok(f)
}

/// `n_i = 2q − 3 + (2q − 5)i + (2q − 9)(i − 1)`.
pub fn n_i(q: u32, i: usize) -> usize {
    let (q, i) = (q as i64, i as i64);
    (2 * q - 3 + (2 * q - 5) * i + (2 * q - 9) * (i - 1)) as usize
}

/// `e_i = 4q − 9 + (4q − 9)i + (4q − 18)(i − 1)`.
pub fn e_i(q: u32, i: usize) -> usize {
    let (q, i) = (q as i64, i as i64);
    (4 * q - 9 + (4 * q - 9) * i + (4 * q - 18) * (i - 1)) as usize
}

/// `(2 + 1/(4q − 14)) n − 4`.
pub fn target_edges(q: u32, n: usize) -> f64 {
    (2.0 + 1.0 / (4.0 * q as f64 - 14.0)) * n as f64 - 4.0
}

/// Whether `e ≥ (2 + 1/(4q − 14)) n − 4`, decided in integers as
/// `(4q − 14)(e + 4) ≥ (8q − 27) n`.
pub fn meets_target(q: u32, n: usize, e: usize) -> bool {
    let q = q as u128;
    (4 * q - 14) * (e as u128 + 4) >= (8 * q - 27) * n as u128
}

#[derive(Debug, Clone, Serialize)]
pub struct ConstructionResult {
    pub d: f64,
    pub q: u32,
    pub iterations: usize,
    #[serde(skip)]
    pub graph: PennyGraph,
    pub n: usize,
    pub e: usize,
    pub ratio: f64,
    /// Smallest `dist(P, ℓ_1) − d/2` over block points off the line.
    pub line_margin: f64,
    /// Distance between consecutive reflection lines.
    pub line_separation: f64,
    /// Points shared by consecutive blocks.
    pub shared: usize,
    #[serde(skip)]
    pub fan: FanConfig,
    /// `U_0` in prefix order `B, C, A_0, …, A_{q−3}, A_{−1}, …, A_{−q+3}`,
    /// in the frame of the glide axis.
    #[serde(skip)]
    pub block: Vec<HPoint>,
}

/// `U_0` in an order where every point after the first two touches two
/// earlier ones.
fn block_u0(f: &FanConfig) -> Vec<HPoint> {
    let k = f.q as i64 - 3;
    let mut u = vec![f.b, f.c];
    u.extend((0..=k).map(|j| f.a(j)));
    u.extend((1..=k).map(|j| f.a(-j)));
    u
}

/// Runs `i` iterations of the construction and certifies the result.
pub fn iterate(d: Dist, i: usize) -> Result<ConstructionResult> {
    if i == 0 {
        return Err(Error::domain("at least one iteration is required"));
    }
    if i > ITERATION_CAP {
        return Err(Error::Refused(format!("iterations capped at {ITERATION_CAP}, got {i}")));
    }
    let f = place_square(build_fan(d)?)?;
    let q = f.q;
    let k = q as i64 - 3;
    let dv = d.value();
    let u0 = block_u0(&f);
    let l1 = Geodesic::through(&f.a(k), &f.a(-k))?;
    let on_line: Vec<bool> = u0.iter().map(|p| dist_to_geodesic(p, &l1) < 1e-9 * dv.max(1.0)).collect();
    check(on_line.iter().filter(|&&b| b).count() == 2, 1, || "expected exactly two block points on ℓ_1".into())?;
    let mut line_margin = f64::INFINITY;
    for (p, &on) in u0.iter().zip(&on_line) {
        if !on {
            let m = dist_to_geodesic(p, &l1) - dv / 2.0;
            check(m >= -1e-9, 1, || format!("block point at distance {} < d/2 from ℓ_1", m + dv / 2.0))?;
            line_margin = line_margin.min(m);
        }
    }
    // K = σ_M ∘ R_1 is a glide along the perpendicular from M to ℓ_1, with
    // translation length 2 dist(M, ℓ_1). Working in the frame where that
    // perpendicular is the x-axis and meets ℓ_1 at the origin keeps every
    // matrix entry small: R_1 becomes x ↦ −x and M sits on the x-axis.
    let m_orig = midpoint(&reflect(&l1, &f.b), &reflect(&l1, &f.a(0)));
    let m = HPoint::polar(dist_to_geodesic(&m_orig, &l1), 0.0);
    let frame = Isometry::to_frame(&l1.foot(&m_orig), &m_orig)?;
    let u0: Vec<HPoint> = u0.iter().map(|p| frame.apply(p)).collect();
    let l1 = Geodesic::from_normal([0.0, 1.0, 0.0])?;
    let r1 = Isometry([[1.0, 0.0, 0.0], [0.0, -1.0, 0.0], [0.0, 0.0, 1.0]]);
    let mut x = u0.clone();
    x.extend(u0.iter().zip(&on_line).filter(|(_, &on)| !on).map(|(p, _)| r1.apply(p)));
    let shift = Isometry::half_turn(&m).compose(&r1);
    let (bp, a0p) = (r1.apply(&u0[0]), r1.apply(&u0[2]));
    check(hdist(&shift.apply(&u0[0]), &a0p) < 1e-9 && hdist(&shift.apply(&u0[2]), &bp) < 1e-9, 2, || {
        "glide does not map B to A_0' and A_0 to B'".into()
    })?;
    let l2 = shift.apply_geodesic(&l1);
    check(l1.is_ultraparallel(&l2), 2, || format!("ℓ_1, ℓ_2 not ultraparallel: cosh = {}", l1.separation_cosh(&l2)))?;
    let line_separation = l1.separation_cosh(&l2).acosh();

    let same = 1e-7 * dv.max(1.0);
    let repeats: Vec<bool> = x.iter().map(|p| {
        let kp = shift.apply(p);
        x.iter().any(|y| hdist(&kp, y) < same)
    }).collect();
    let shared = repeats.iter().filter(|&&r| r).count();
    check(shared == 6, 2, || format!("consecutive blocks share {shared} points, expected 6"))?;

    let mut pts = x.clone();
    let mut chart = vec![0; x.len()];
    for c in 1..i {
        for (p, &rep) in x.iter().zip(&repeats) {
            if !rep {
                pts.push(*p);
                chart.push(c);
            }
        }
    }
    let graph = PennyGraph::from_charted(d, pts, chart, shift)
        .map_err(|e| Error::Construction { iteration: i, reason: e.to_string() })?;
    graph.certify().map_err(|e| Error::Construction { iteration: i, reason: e.to_string() })?;
    // Lines further apart stay ultraparallel.
    let mut lj = l2;
    for j in 2..i {
        lj = shift.apply_geodesic(&lj);
        check(l1.is_ultraparallel(&lj), j + 1, || format!("ℓ_1 and ℓ_{} intersect", j + 1))?;
    }
    let (n, e) = (graph.n(), graph.e());
    check(n == n_i(q, i) && e == e_i(q, i), i, || {
        format!("counts (n, e) = ({n}, {e}), expected ({}, {})", n_i(q, i), e_i(q, i))
    })?;
    Ok(ConstructionResult {
        d: dv,
        q,
        iterations: i,
        graph,
        n,
        e,
        ratio: e as f64 / n as f64,
        line_margin,
        line_separation,
        shared,
        fan: f,
        block: u0,
    })
}

/// A penny graph grown by attaching vertices to edges.
struct Padding {
    d: f64,
    tol: f64,
    frame: Vec<HPoint>,
    e: usize,
    /// Edges available as attachment sites, oldest first. Using them in
    /// order grows the padding as a ball, which keeps coordinates small.
    sites: VecDeque<(usize, usize)>,
}

impl Padding {
    fn new(d: Dist, frame: Vec<HPoint>, e: usize, sites: Vec<(usize, usize)>) -> Self {
        Padding { d: d.value(), tol: edge_tol(d), frame, e, sites: sites.into() }
    }

    /// Number of queued sites searched for an apex of higher degree.
    const WINDOW: usize = 64;

    /// The degree of an apex at `cand`, or `None` if it comes closer than
    /// `d` to some vertex.
    fn degree(&self, cand: &HPoint) -> Option<usize> {
        let mut deg = 0;
        for p in &self.frame {
            let dist = hdist(cand, p);
            if (dist - self.d).abs() <= self.tol {
                deg += 1;
            } else if !(dist >= self.d + 1e-7) {
                return None;
            }
        }
        Some(deg)
    }

    /// Adds one vertex at an equilateral apex over an existing edge, at
    /// distance at least `d` from everything else. Among the oldest sites the
    /// apex touching the most vertices wins. Returns its degree.
    fn attach(&mut self) -> Result<usize> {
        loop {
            let mut best: Option<(usize, usize, HPoint)> = None;
            let mut dead = Vec::new();
            for (k, &(a, b)) in self.sites.iter().take(Self::WINDOW).enumerate() {
                let mut live = false;
                for side in [1.0, -1.0] {
                    let cand = apex(&self.frame[a], &self.frame[b], self.d, side)?;
                    if let Some(deg) = self.degree(&cand) {
                        live = true;
                        if best.as_ref().is_none_or(|&(_, bd, _)| deg > bd) {
                            best = Some((k, deg, cand));
                        }
                    }
                }
                if !live {
                    dead.push(k);
                }
            }
            let Some((k, deg, cand)) = best else {
                if self.sites.len() <= Self::WINDOW {
                    return Err(Error::Construction { iteration: 0, reason: "no free attachment site left".into() });
                }
                self.sites.drain(..Self::WINDOW);
                continue;
            };
            let (a, b) = self.sites[k];
            for &j in dead.iter().rev() {
                if j != k {
                    self.sites.remove(j);
                }
            }
            self.sites.retain(|&s| s != (a, b));
            let v = self.frame.len();
            self.frame.push(cand);
            self.e += deg;
            self.sites.push_back((a, v));
            self.sites.push_back((v, b));
            return Ok(deg);
        }
    }
}

/// Edge counts of the construction padded to every `n ≤ n_max`
/// (index `n − 1`).
///
/// Below `|U_0| = 2q − 3` a prefix of `U_0` is used; from a completed block
/// onwards vertices of degree two are attached until the next iteration is
/// reached.
pub fn padded_counts(d: Dist, n_max: usize) -> Result<Vec<usize>> {
    let f = build_fan(d)?;
    let q = f.q;
    let mut out = Vec::with_capacity(n_max);
    let u0 = block_u0(&f);
    let g0 = PennyGraph::from_points(d, u0.clone())?;
    for n in 1..=n_max.min(u0.len()) {
        out.push(g0.edges().iter().filter(|&&(a, b)| a < n && b < n).count());
    }
    let (mut frame, mut e, mut sites) = (u0, g0.e(), g0.edges().to_vec());
    let mut i = 1;
    while out.len() < n_max {
        if i > ITERATION_CAP {
            return Err(Error::Refused(format!("n = {n_max} needs more than {ITERATION_CAP} iterations")));
        }
        let mut pad = Padding::new(d, frame, e, sites);
        while out.len() + 1 < n_i(q, i) && out.len() < n_max {
            pad.attach()?;
            out.push(pad.e);
        }
        if out.len() == n_max {
            break;
        }
        let r = iterate(d, i)?;
        out.push(r.e);
        // Attach within the newest block so coordinates stay small.
        let last = r.graph.max_chart();
        sites = r.graph.edges().iter().copied().filter(|&(a, b)| r.graph.chart(a) == last && r.graph.chart(b) == last).collect();
        frame = r.graph.points_in_chart(last);
        e = r.e;
        i += 1;
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::hyptrig::d_k;

    fn dist(d: f64) -> Dist {
        Dist::new(d).unwrap()
    }

    #[test]
    fn q_values() {
        assert_eq!(build_fan(dist(0.05)).unwrap().q, 6);
        assert_eq!(build_fan(dist(0.5)).unwrap().q, 6);
        assert_eq!(build_fan(dist(1.0)).unwrap().q, 7);
        assert_eq!(build_fan(d_k(7).unwrap()).unwrap().q, 7);
        assert_eq!(build_fan(dist(2.0)).unwrap().q, 10);
        assert_eq!(build_fan(dist(5.0)).unwrap().q, 39);
    }

    #[test]
    fn fan_edges_have_length_d() {
        let f = build_fan(dist(1.3)).unwrap();
        let d = 1.3;
        let k = f.q as i64 - 2;
        for j in 0..k {
            assert!((hdist(&f.a(j), &f.a(j + 1)) - d).abs() < 1e-10);
            assert!((hdist(&f.a(-j), &f.a(-j - 1)) - d).abs() < 1e-10);
            assert!((hdist(&f.b, &f.a(j + 1)) - d).abs() < 1e-10);
            assert!((hdist(&f.c, &f.a(-j - 1)) - d).abs() < 1e-10);
        }
        assert!((hdist(&f.b, &f.c) - d).abs() < 1e-12);
    }

    #[test]
    fn square_fits() {
        for d in [0.3, 1.0, 3.0] {
            let f = place_square(build_fan(dist(d)).unwrap()).unwrap();
            assert!(f.square.is_some());
        }
    }

    #[test]
    fn count_formulas() {
        assert_eq!(n_i(7, 1), 2 * 7 - 3 + 2 * 7 - 5);
        assert_eq!(e_i(7, 1), (4 * 7 - 9) * 2);
        for q in 6..40 {
            for i in 1..10 {
                // Consecutive iterations add 4q − 14 vertices and 8q − 27 edges.
                assert_eq!(n_i(q, i + 1) - n_i(q, i), 4 * q as usize - 14);
                assert_eq!(e_i(q, i + 1) - e_i(q, i), 8 * q as usize - 27);
                // Eliminating i: (4q − 14)(e − 9) = (8q − 27)(n − 6).
                let (n, e) = (n_i(q, i) as i64, e_i(q, i) as i64);
                let q = q as i64;
                assert_eq!((4 * q - 14) * (e - 9), (8 * q - 27) * (n - 6));
            }
        }
    }

    #[test]
    fn iterations_certify() {
        for d in [0.5, 1.0, 2.0] {
            for i in 1..=4 {
                let r = iterate(dist(d), i).unwrap();
                assert_eq!(r.n, n_i(r.q, i));
                assert_eq!(r.e, e_i(r.q, i));
                assert!(r.line_margin >= -1e-9);
                assert!(r.line_separation > 0.0);
            }
        }
    }

    #[test]
    fn iteration_bounds() {
        assert!(matches!(iterate(dist(1.0), 0), Err(Error::Domain(_))));
        assert!(matches!(iterate(dist(1.0), ITERATION_CAP + 1), Err(Error::Refused(_))));
    }

    #[test]
    fn geometric_q_matches_floor() {
        let mut x = 0x9e3779b97f4a7c15u64;
        for _ in 0..60 {
            x ^= x << 13;
            x ^= x >> 7;
            x ^= x << 17;
            let d = 0.05 + 9.95 * (x >> 11) as f64 / (1u64 << 53) as f64;
            assert_eq!(geometric_q(dist(d)).unwrap(), q_of_d(dist(d)), "d = {d}");
        }
    }

    #[test]
    fn padded_counts_are_consistent() {
        let d = dist(1.0);
        let r2 = iterate(d, 2).unwrap();
        let counts = padded_counts(d, r2.n).unwrap();
        assert_eq!(counts.len(), r2.n);
        assert_eq!(counts[r2.n - 1], r2.e);
        assert_eq!(counts[n_i(7, 1) - 1], e_i(7, 1));
        for w in counts.windows(2) {
            assert!(w[1] > w[0]);
        }
    }

    #[test]
    fn padding_shortfall_is_confined_to_five_residues() {
        // Degree-two padding after block i gives e_i + 2t, which meets the
        // target exactly while t ≤ 4q − 20.
        for d in [0.5, 2.0] {
            let d = dist(d);
            let q = build_fan(d).unwrap().q;
            let n_max = n_i(q, 3);
            let counts = padded_counts(d, n_max).unwrap();
            let p = 4 * q as usize - 14;
            for n in 7..=n_max {
                let t = (n - 6) % p;
                let short = t + 19 >= 4 * q as usize && t + 15 <= 4 * q as usize;
                assert_eq!(!meets_target(q, n, counts[n - 1]), short, "n = {n}");
            }
        }
    }

    #[test]
    fn tiling_distance_pads_with_closing_fans() {
        let d = d_k(7).unwrap();
        let counts = padded_counts(d, n_i(7, 3)).unwrap();
        for (k, &e) in counts.iter().enumerate() {
            assert!(meets_target(7, k + 1, e), "n = {}", k + 1);
        }
    }

    #[test]
    fn exact_target_matches_float_away_from_ties() {
        for q in 6..30 {
            for n in 1..300 {
                let t = target_edges(q, n);
                for e in [t.floor() as usize, t.ceil() as usize] {
                    if (e as f64 - t).abs() > 1e-6 {
                        assert_eq!(meets_target(q, n, e), e as f64 >= t);
                    }
                }
            }
        }
    }
}
