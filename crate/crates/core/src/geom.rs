//! Points, geodesics and isometries of the hyperbolic plane in the
//! hyperboloid model.
//!
//! Points live on the upper sheet `x0² − x1² − x2² = 1`. A geodesic is
//! stored as the unit spacelike normal `u` of the plane cutting it out, so a
//! point `p` lies on it iff `⟨p, u⟩ = 0` and `sinh(dist(p, g)) = |⟨p, u⟩|`.
//! Isometries are 3×3 Lorentz matrices; every image point is projected back
//! onto the hyperboloid so long chains do not drift.

use std::f64::consts::{PI, TAU};

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Minkowski bilinear form `a0 b0 − a1 b1 − a2 b2`.
#[inline]
pub fn minkowski(a: &[f64; 3], b: &[f64; 3]) -> f64 {
    a[0] * b[0] - a[1] * b[1] - a[2] * b[2]
}

#[inline]
fn cross(a: &[f64; 3], b: &[f64; 3]) -> [f64; 3] {
    [
        a[1] * b[2] - a[2] * b[1],
        a[2] * b[0] - a[0] * b[2],
        a[0] * b[1] - a[1] * b[0],
    ]
}

/// `J (a × b)`, orthogonal to both `a` and `b` in the Minkowski form.
#[inline]
fn lorentz_cross(a: &[f64; 3], b: &[f64; 3]) -> [f64; 3] {
    let c = cross(a, b);
    [c[0], -c[1], -c[2]]
}

#[inline]
fn scale(a: &[f64; 3], s: f64) -> [f64; 3] {
    [a[0] * s, a[1] * s, a[2] * s]
}

#[inline]
fn add(a: &[f64; 3], b: &[f64; 3]) -> [f64; 3] {
    [a[0] + b[0], a[1] + b[1], a[2] + b[2]]
}

#[inline]
fn sub(a: &[f64; 3], b: &[f64; 3]) -> [f64; 3] {
    [a[0] - b[0], a[1] - b[1], a[2] - b[2]]
}

/// A point of the hyperbolic plane.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct HPoint {
    pub x0: f64,
    pub x1: f64,
    pub x2: f64,
}

impl HPoint {
    pub const ORIGIN: HPoint = HPoint { x0: 1.0, x1: 0.0, x2: 0.0 };

    /// Projects an arbitrary timelike vector onto the upper sheet.
    pub fn from_raw(v: [f64; 3]) -> Result<Self> {
        let n = minkowski(&v, &v);
        if !(n > 0.0) || !n.is_finite() {
            return Err(Error::domain(format!("vector {v:?} is not timelike")));
        }
        let s = n.sqrt().copysign(v[0]);
        Ok(HPoint { x0: v[0] / s, x1: v[1] / s, x2: v[2] / s })
    }

    /// The point with spatial part `(v1, v2)`. Used for images under
    /// isometries: unlike rescaling, it cannot cancel for distant points.
    #[inline]
    pub(crate) fn lifted(v: [f64; 3]) -> Self {
        HPoint { x0: (1.0 + v[1] * v[1] + v[2] * v[2]).sqrt(), x1: v[1], x2: v[2] }
    }

    /// Like [`HPoint::from_raw`] for vectors known to be timelike.
    #[inline]
    pub(crate) fn renormalized(v: [f64; 3]) -> Self {
        let s = minkowski(&v, &v).sqrt().copysign(v[0]);
        HPoint { x0: v[0] / s, x1: v[1] / s, x2: v[2] / s }
    }

    /// The point at distance `r` from the origin in direction `theta`.
    pub fn polar(r: f64, theta: f64) -> Self {
        let sh = r.sinh();
        HPoint { x0: r.cosh(), x1: sh * theta.cos(), x2: sh * theta.sin() }
    }

    /// Inverse of the Poincaré-disk projection.
    pub fn from_poincare(x: f64, y: f64) -> Result<Self> {
        let r2 = x * x + y * y;
        if r2 >= 1.0 {
            return Err(Error::domain("point outside the open unit disk"));
        }
        let s = 1.0 / (1.0 - r2);
        Ok(HPoint::renormalized([(1.0 + r2) * s, 2.0 * x * s, 2.0 * y * s]))
    }

    #[inline]
    pub fn coords(&self) -> [f64; 3] {
        [self.x0, self.x1, self.x2]
    }

    /// `|⟨p, p⟩ − 1|`.
    pub fn norm_defect(&self) -> f64 {
        let c = self.coords();
        (minkowski(&c, &c) - 1.0).abs()
    }

    pub fn to_poincare(&self) -> (f64, f64) {
        let s = 1.0 + self.x0;
        (self.x1 / s, self.x2 / s)
    }

    pub fn to_klein(&self) -> (f64, f64) {
        (self.x1 / self.x0, self.x2 / self.x0)
    }
}

/// Hyperbolic distance. Nearby points use the chord `p − q`, which keeps
/// full relative accuracy; distant points use `acosh⟨p, q⟩`, since the chord
/// cancels catastrophically once the coordinates are large.
pub fn hdist(p: &HPoint, q: &HPoint) -> f64 {
    let b = minkowski(&p.coords(), &q.coords());
    if b > 8.0 {
        return b.acosh();
    }
    let v = sub(&p.coords(), &q.coords());
    let chord2 = -minkowski(&v, &v);
    if chord2.is_nan() {
        return f64::NAN;
    }
    // Rounding can push the chord of coincident points slightly negative.
    2.0 * (0.5 * chord2.max(0.0).sqrt()).asinh()
}

/// Unit tangent vector at `v` pointing towards `a`.
fn unit_tangent(v: &HPoint, a: &HPoint) -> Option<[f64; 3]> {
    let vc = v.coords();
    let ac = a.coords();
    let t = sub(&ac, &scale(&vc, minkowski(&ac, &vc)));
    let n2 = -minkowski(&t, &t);
    if !(n2 > 1e-28) {
        return None;
    }
    Some(scale(&t, 1.0 / n2.sqrt()))
}

/// The tangent at `v` obtained by turning `t` a quarter turn counterclockwise.
fn ccw_normal(v: &HPoint, t: &[f64; 3]) -> [f64; 3] {
    let n = scale(&lorentz_cross(&v.coords(), t), -1.0);
    let n2 = -minkowski(&n, &n);
    scale(&n, 1.0 / n2.sqrt())
}

/// Unsigned angle `∠avb` in `[0, π]`.
pub fn angle_at(v: &HPoint, a: &HPoint, b: &HPoint) -> Result<f64> {
    let ta = unit_tangent(v, a).ok_or_else(|| Error::domain("angle_at: a coincides with v"))?;
    let tb = unit_tangent(v, b).ok_or_else(|| Error::domain("angle_at: b coincides with v"))?;
    let c = -minkowski(&ta, &tb);
    let na = ccw_normal(v, &ta);
    let s = -minkowski(&na, &tb);
    Ok(s.abs().atan2(c))
}

/// Counterclockwise angle at `v` from the ray `va` to the ray `vb`, in `[0, 2π)`.
pub fn ccw_angle(v: &HPoint, a: &HPoint, b: &HPoint) -> Result<f64> {
    let ta = unit_tangent(v, a).ok_or_else(|| Error::domain("ccw_angle: a coincides with v"))?;
    let tb = unit_tangent(v, b).ok_or_else(|| Error::domain("ccw_angle: b coincides with v"))?;
    let c = -minkowski(&ta, &tb);
    let na = ccw_normal(v, &ta);
    let s = -minkowski(&na, &tb);
    let th = s.atan2(c);
    Ok(if th < 0.0 { th + TAU } else { th })
}

/// Rotates `p` about `center` by `theta` (counterclockwise for positive angles).
///
/// Only the tangential part `p − ⟨p, c⟩ c` turns; reusing its computed length
/// instead of `sinh(dist)` keeps rounding in `center` from being amplified.
pub fn rotate_about(center: &HPoint, p: &HPoint, theta: f64) -> Result<HPoint> {
    let c = center.coords();
    let b = minkowski(&p.coords(), &c);
    let t = sub(&p.coords(), &scale(&c, b));
    let len2 = -minkowski(&t, &t);
    if !(len2 > 1e-28) {
        return Err(Error::domain("rotate_about: point is the center"));
    }
    let n = ccw_normal(center, &scale(&t, 1.0 / len2.sqrt()));
    let turned = add(&scale(&t, theta.cos()), &scale(&n, len2.sqrt() * theta.sin()));
    Ok(HPoint::lifted(add(&scale(&c, b), &turned)))
}

/// Point at distance `r` from `from` along the geodesic ray towards `towards`.
pub fn along(from: &HPoint, towards: &HPoint, r: f64) -> Result<HPoint> {
    let t = unit_tangent(from, towards).ok_or_else(|| Error::domain("along: degenerate direction"))?;
    Ok(HPoint::renormalized(add(&scale(&from.coords(), r.cosh()), &scale(&t, r.sinh()))))
}

/// Apex of the isosceles triangle with base `ab` and legs `r`, on the side
/// given by the sign of `side`. Built from `a + b` and the normal of the
/// line `ab`, which stays accurate far from the origin.
pub fn apex(a: &HPoint, b: &HPoint, r: f64, side: f64) -> Result<HPoint> {
    let s = minkowski(&a.coords(), &b.coords());
    let g = Geodesic::through(a, b)?;
    let lambda = r.cosh() / (1.0 + s);
    let mu2 = lambda * lambda * (2.0 + 2.0 * s) - 1.0;
    if !(mu2 >= 0.0) {
        return Err(Error::domain("apex: legs shorter than half the base"));
    }
    let v = add(&scale(&add(&a.coords(), &b.coords()), lambda), &scale(&g.normal(), mu2.sqrt().copysign(side)));
    Ok(HPoint::lifted(v))
}

/// Hyperbolic midpoint of two points.
pub fn midpoint(a: &HPoint, b: &HPoint) -> HPoint {
    HPoint::renormalized(add(&a.coords(), &b.coords()))
}

/// A geodesic, represented by its unit spacelike normal.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Geodesic {
    pub u0: f64,
    pub u1: f64,
    pub u2: f64,
}

impl Geodesic {
    /// The geodesic through two distinct points.
    pub fn through(a: &HPoint, b: &HPoint) -> Result<Self> {
        let u = lorentz_cross(&a.coords(), &b.coords());
        Self::from_normal(u)
    }

    pub fn from_normal(u: [f64; 3]) -> Result<Self> {
        let n2 = -minkowski(&u, &u);
        if !(n2 > 0.0) || !n2.is_finite() {
            return Err(Error::domain("geodesic normal must be spacelike"));
        }
        let s = 1.0 / n2.sqrt();
        Ok(Geodesic { u0: u[0] * s, u1: u[1] * s, u2: u[2] * s })
    }

    #[inline]
    pub fn normal(&self) -> [f64; 3] {
        [self.u0, self.u1, self.u2]
    }

    /// Signed `⟨p, u⟩`; its sign tells the side of the geodesic.
    pub fn side(&self, p: &HPoint) -> f64 {
        minkowski(&p.coords(), &self.normal())
    }

    /// `cosh` of the common-perpendicular length when `> 1` (ultraparallel),
    /// `1` for asymptotic lines and `< 1` for intersecting lines.
    pub fn separation_cosh(&self, other: &Geodesic) -> f64 {
        minkowski(&self.normal(), &other.normal()).abs()
    }

    pub fn is_ultraparallel(&self, other: &Geodesic) -> bool {
        self.separation_cosh(other) > 1.0 + 1e-12
    }

    /// The point of the geodesic closest to `p`.
    pub fn foot(&self, p: &HPoint) -> HPoint {
        let u = self.normal();
        let c = p.coords();
        HPoint::renormalized(add(&c, &scale(&u, minkowski(&c, &u))))
    }
}

/// Reflection of `p` in the geodesic `g`.
pub fn reflect(g: &Geodesic, p: &HPoint) -> HPoint {
    let u = g.normal();
    let c = p.coords();
    HPoint::lifted(add(&c, &scale(&u, 2.0 * minkowski(&c, &u))))
}

/// Distance from `p` to the geodesic `g`.
pub fn dist_to_geodesic(p: &HPoint, g: &Geodesic) -> f64 {
    g.side(p).abs().asinh()
}

/// A Lorentz matrix acting on hyperboloid coordinates.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Isometry(pub [[f64; 3]; 3]);

impl Isometry {
    pub const IDENTITY: Isometry = Isometry([[1.0, 0.0, 0.0], [0.0, 1.0, 0.0], [0.0, 0.0, 1.0]]);

    /// Reflection in a geodesic: `p ↦ p + 2⟨p, u⟩ u`.
    pub fn reflection(g: &Geodesic) -> Self {
        let u = g.normal();
        let ju = [u[0], -u[1], -u[2]];
        let mut m = [[0.0; 3]; 3];
        for (i, row) in m.iter_mut().enumerate() {
            for (j, cell) in row.iter_mut().enumerate() {
                *cell = if i == j { 1.0 } else { 0.0 } + 2.0 * u[i] * ju[j];
            }
        }
        Isometry(m)
    }

    /// Half-turn about a point: `p ↦ 2⟨p, m⟩ m − p`.
    pub fn half_turn(center: &HPoint) -> Self {
        let c = center.coords();
        let jc = [c[0], -c[1], -c[2]];
        let mut m = [[0.0; 3]; 3];
        for (i, row) in m.iter_mut().enumerate() {
            for (j, cell) in row.iter_mut().enumerate() {
                *cell = 2.0 * c[i] * jc[j] - if i == j { 1.0 } else { 0.0 };
            }
        }
        Isometry(m)
    }

    /// Rotation about the origin by `theta`, counterclockwise.
    pub fn rotation(theta: f64) -> Self {
        let (s, c) = theta.sin_cos();
        Isometry([[1.0, 0.0, 0.0], [0.0, c, -s], [0.0, s, c]])
    }

    /// Translation by `t` along the geodesic through the origin in direction 0.
    pub fn boost_x(t: f64) -> Self {
        let (ch, sh) = (t.cosh(), t.sinh());
        Isometry([[ch, sh, 0.0], [sh, ch, 0.0], [0.0, 0.0, 1.0]])
    }

    /// The orientation-preserving isometry taking `center` to the origin and
    /// `towards` onto the ray in direction 0.
    pub fn to_frame(center: &HPoint, towards: &HPoint) -> Result<Self> {
        let theta = center.x2.atan2(center.x1);
        let r = hdist(&HPoint::ORIGIN, center);
        let move_in = Isometry::boost_x(-r).compose(&Isometry::rotation(-theta));
        let t = move_in.apply(towards);
        if t.x1 == 0.0 && t.x2 == 0.0 {
            return Err(Error::domain("to_frame: points coincide"));
        }
        Ok(Isometry::rotation(-t.x2.atan2(t.x1)).compose(&move_in))
    }

    /// `self ∘ other`.
    pub fn compose(&self, other: &Isometry) -> Isometry {
        let a = &self.0;
        let b = &other.0;
        let mut m = [[0.0; 3]; 3];
        for i in 0..3 {
            for j in 0..3 {
                m[i][j] = (0..3).map(|k| a[i][k] * b[k][j]).sum();
            }
        }
        Isometry(m)
    }

    fn mul(&self, v: &[f64; 3]) -> [f64; 3] {
        let m = &self.0;
        [
            m[0][0] * v[0] + m[0][1] * v[1] + m[0][2] * v[2],
            m[1][0] * v[0] + m[1][1] * v[1] + m[1][2] * v[2],
            m[2][0] * v[0] + m[2][1] * v[1] + m[2][2] * v[2],
        ]
    }

    pub fn apply(&self, p: &HPoint) -> HPoint {
        HPoint::lifted(self.mul(&p.coords()))
    }

    pub fn apply_geodesic(&self, g: &Geodesic) -> Geodesic {
        // Isometries keep the normal a unit vector; fixing its time part from
        // the spatial part avoids the cancellation of rescaling.
        let u = self.mul(&g.normal());
        let t2 = u[1] * u[1] + u[2] * u[2] - 1.0;
        Geodesic { u0: t2.max(0.0).sqrt().copysign(u[0]), u1: u[1], u2: u[2] }
    }

    /// Largest entry of `MᵀJM − J`.
    pub fn lorentz_defect(&self) -> f64 {
        let m = &self.0;
        let j = [1.0, -1.0, -1.0];
        let mut worst: f64 = 0.0;
        for a in 0..3 {
            for b in 0..3 {
                let v: f64 = (0..3).map(|k| m[k][a] * j[k] * m[k][b]).sum();
                let target = if a == b { j[a] } else { 0.0 };
                worst = worst.max((v - target).abs());
            }
        }
        worst
    }
}

/// Interior angles of a simple polygon, with the interior side picked from
/// the orientation whose angle sum is smaller (the other orientation sums
/// to `(n + 2)π + area`).
pub fn interior_angles(vertices: &[HPoint]) -> Result<Vec<f64>> {
    let n = vertices.len();
    if n < 3 {
        return Err(Error::domain("polygon needs at least 3 vertices"));
    }
    let mut ccw = Vec::with_capacity(n);
    for i in 0..n {
        let prev = &vertices[(i + n - 1) % n];
        let v = &vertices[i];
        let next = &vertices[(i + 1) % n];
        // Interior on the left when walking prev -> v -> next.
        ccw.push(ccw_angle(v, next, prev)?);
    }
    let sum: f64 = ccw.iter().sum();
    if sum <= n as f64 * PI {
        Ok(ccw)
    } else {
        Ok(ccw.into_iter().map(|a| TAU - a).collect())
    }
}

/// Polygon area by the angle defect `(n − 2)π − Σθ_i`.
pub fn polygon_area_gb(vertices: &[HPoint]) -> Result<f64> {
    let angles = interior_angles(vertices)?;
    Ok((vertices.len() as f64 - 2.0) * PI - angles.iter().sum::<f64>())
}

/// Perimeter of a closed polygon.
pub fn perimeter(vertices: &[HPoint]) -> f64 {
    let n = vertices.len();
    (0..n).map(|i| hdist(&vertices[i], &vertices[(i + 1) % n])).sum()
}

/// Hyperbolic isoperimetric inequality `L² ≥ 4πA + A²`, with slack `1e−9`.
pub fn isoperimetric_check(length: f64, area: f64) -> bool {
    length * length >= 4.0 * PI * area + area * area - 1e-9
}

/// `L² − 4πA − A²`.
pub fn isoperimetric_deficit(length: f64, area: f64) -> f64 {
    length * length - 4.0 * PI * area - area * area
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::hyptrig::{alpha_m_of_d, alpha_of_d, d_k, Dist};

    fn equilateral(d: f64) -> [HPoint; 3] {
        let a = HPoint::ORIGIN;
        let b = HPoint::polar(d, 0.0);
        let c = rotate_about(&a, &b, alpha_of_d(Dist::new(d).unwrap())).unwrap();
        [a, b, c]
    }

    #[test]
    fn distance_basics() {
        let p = HPoint::polar(0.7, 1.2);
        assert_eq!(hdist(&p, &p), 0.0);
        for t in [0.1, 1.0, 3.5, 9.0] {
            let q = HPoint::polar(t, -0.4);
            assert!((hdist(&HPoint::ORIGIN, &q) - t).abs() < 1e-12 * t.max(1.0));
        }
    }

    #[test]
    fn law_of_cosines_triangle() {
        // cosh c = cosh a cosh b − sinh a sinh b cos γ with a = b = c = d.
        let d: f64 = 1.0;
        let gamma = ((d.cosh() * d.cosh() - d.cosh()) / (d.sinh() * d.sinh())).acos();
        assert!((gamma - alpha_of_d(Dist::new(d).unwrap())).abs() < 1e-12);
        let [a, b, c] = equilateral(d);
        assert!((hdist(&b, &c) - d).abs() < 1e-12);
        assert!((angle_at(&a, &b, &c).unwrap() - gamma).abs() < 1e-10);
        assert!((angle_at(&b, &c, &a).unwrap() - gamma).abs() < 1e-10);
    }

    #[test]
    fn collinear_angle_is_pi() {
        let a = HPoint::polar(1.0, 0.0);
        let b = HPoint::polar(2.0, PI);
        assert!((angle_at(&HPoint::ORIGIN, &a, &b).unwrap() - PI).abs() < 1e-12);
        assert!(angle_at(&HPoint::ORIGIN, &HPoint::ORIGIN, &b).is_err());
    }

    #[test]
    fn ccw_orientation_matches_disk() {
        let a = HPoint::polar(1.0, 0.0);
        let b = rotate_about(&HPoint::ORIGIN, &a, 0.5).unwrap();
        let (x, y) = b.to_poincare();
        assert!(y > 0.0 && x > 0.0);
        assert!((ccw_angle(&HPoint::ORIGIN, &a, &b).unwrap() - 0.5).abs() < 1e-12);
        assert!((ccw_angle(&HPoint::ORIGIN, &b, &a).unwrap() - (TAU - 0.5)).abs() < 1e-12);
    }

    #[test]
    fn reflection_properties() {
        let g = Geodesic::through(&HPoint::polar(0.5, 0.3), &HPoint::polar(1.5, 2.0)).unwrap();
        let on = HPoint::polar(0.5, 0.3);
        let r = reflect(&g, &on);
        assert!(hdist(&on, &r) < 1e-12);
        let p = HPoint::polar(1.1, -2.0);
        let back = reflect(&g, &reflect(&g, &p));
        assert!(hdist(&p, &back) < 1e-12);
        assert!((dist_to_geodesic(&p, &g) - dist_to_geodesic(&reflect(&g, &p), &g)).abs() < 1e-12);
        let m = Isometry::reflection(&g);
        assert!(m.lorentz_defect() < 1e-12);
        assert!(hdist(&m.apply(&p), &reflect(&g, &p)) < 1e-12);
    }

    #[test]
    fn perpendicular_distance_oracle() {
        // The x-axis is the geodesic with normal (0, 0, 1); moving along the
        // perpendicular through the origin by t gives distance |t|.
        let g = Geodesic::from_normal([0.0, 0.0, 1.0]).unwrap();
        for t in [-2.0, -0.3, 0.0, 0.8, 4.0] {
            let p = HPoint::polar(f64::abs(t), if t >= 0.0 { PI / 2.0 } else { -PI / 2.0 });
            assert!((dist_to_geodesic(&p, &g) - f64::abs(t)).abs() < 1e-12);
        }
    }

    #[test]
    fn ultraparallel_detection() {
        let g1 = Geodesic::from_normal([0.0, 0.0, 1.0]).unwrap();
        let shift = Isometry::reflection(&Geodesic::through(&HPoint::polar(1.0, PI / 2.0), &rotate_about(&HPoint::polar(1.0, PI / 2.0), &HPoint::ORIGIN, PI / 2.0).unwrap()).unwrap());
        let g2 = shift.apply_geodesic(&g1);
        assert!(g1.is_ultraparallel(&g2));
        assert!((g1.separation_cosh(&g2).acosh() - 2.0).abs() < 1e-10);
        let g3 = Geodesic::from_normal([0.0, 1.0, 0.0]).unwrap();
        assert!(!g1.is_ultraparallel(&g3));
    }

    #[test]
    fn half_turn_swaps_endpoints() {
        let a = HPoint::polar(1.3, 0.4);
        let b = HPoint::polar(0.2, 2.4);
        let s = Isometry::half_turn(&midpoint(&a, &b));
        assert!(hdist(&s.apply(&a), &b) < 1e-12);
        assert!(s.lorentz_defect() < 1e-12);
    }

    #[test]
    fn apex_is_equidistant_far_from_origin() {
        let a = HPoint::polar(3.0, 0.3);
        let b = along(&a, &HPoint::polar(4.0, 0.31), 5.0).unwrap();
        for side in [1.0, -1.0] {
            let c = apex(&a, &b, 5.0, side).unwrap();
            assert!((hdist(&c, &a) - 5.0).abs() < 1e-10, "{}", hdist(&c, &a) - 5.0);
            assert!((hdist(&c, &b) - 5.0).abs() < 1e-10);
        }
        let l = apex(&a, &b, 5.0, 1.0).unwrap();
        let r = apex(&a, &b, 5.0, -1.0).unwrap();
        assert!(hdist(&l, &r) > 5.0);
        assert!(apex(&a, &b, 2.0, 1.0).is_err());
    }

    #[test]
    fn frame_change_centers_and_aligns() {
        let c = HPoint::polar(2.1, -0.7);
        let t = HPoint::polar(0.9, 2.0);
        let m = Isometry::to_frame(&c, &t).unwrap();
        assert!(hdist(&m.apply(&c), &HPoint::ORIGIN) < 1e-12);
        let img = m.apply(&t);
        assert!(img.x2.abs() < 1e-12 && img.x1 > 0.0);
        assert!((hdist(&img, &HPoint::ORIGIN) - hdist(&c, &t)).abs() < 1e-12);
        assert!(m.lorentz_defect() < 1e-11);
    }

    #[test]
    fn foot_is_closest_point() {
        let g = Geodesic::through(&HPoint::polar(1.0, 0.3), &HPoint::polar(0.5, 2.5)).unwrap();
        let p = HPoint::polar(1.7, -1.2);
        let f = g.foot(&p);
        assert!(g.side(&f).abs() < 1e-12);
        assert!((hdist(&p, &f) - dist_to_geodesic(&p, &g)).abs() < 1e-12);
    }

    #[test]
    fn gauss_bonnet_regular_polygons() {
        let d7 = d_k(7).unwrap();
        let tri = equilateral(d7.value());
        assert!((polygon_area_gb(&tri).unwrap() - PI / 7.0).abs() < 1e-12);
        let rev = [tri[2], tri[1], tri[0]];
        assert!((polygon_area_gb(&rev).unwrap() - PI / 7.0).abs() < 1e-12);

        let d = Dist::new(1.3).unwrap();
        let a4 = alpha_m_of_d(4, d).unwrap();
        let p0 = HPoint::ORIGIN;
        let p1 = HPoint::polar(d.value(), 0.0);
        let p2 = rotate_about(&p1, &p0, -a4).unwrap();
        let p3 = rotate_about(&p0, &p1, a4).unwrap();
        assert!((hdist(&p2, &p3) - d.value()).abs() < 1e-10);
        let area = polygon_area_gb(&[p0, p1, p2, p3]).unwrap();
        assert!((area - (TAU - 4.0 * a4)).abs() < 1e-10);
    }

    #[test]
    fn reflex_corner_area() {
        // An arrowhead: a reflex vertex must contribute 2π − θ.
        let pts = [
            HPoint::polar(1.0, 0.0),
            HPoint::polar(1.0, 2.0 * PI / 3.0),
            HPoint::polar(0.2, PI),
            HPoint::polar(1.0, 4.0 * PI / 3.0),
        ];
        let area = polygon_area_gb(&pts).unwrap();
        let t1 = polygon_area_gb(&[pts[0], pts[1], pts[2]]).unwrap();
        let t2 = polygon_area_gb(&[pts[0], pts[2], pts[3]]).unwrap();
        assert!((area - (t1 + t2)).abs() < 1e-12);
    }

    #[test]
    fn isoperimetric_circles() {
        for r in [0.1_f64, 0.5, 1.0, 2.0, 4.0] {
            let l = TAU * r.sinh();
            let a = TAU * (r.cosh() - 1.0);
            assert!(isoperimetric_check(l, a));
            let rel = isoperimetric_deficit(l, a) / (l * l);
            assert!(rel.abs() < 1e-10, "r = {r}: {rel}");
        }
        assert!(isoperimetric_check(0.0, 0.0));
        assert!(!isoperimetric_check(1.0, 1.0));
    }

    #[test]
    fn renormalization_keeps_points_on_sheet() {
        let mut p = HPoint::polar(0.3, 0.1);
        let c1 = HPoint::polar(0.4, 1.0);
        let c2 = HPoint::polar(0.5, -1.0);
        for i in 0..10_000 {
            let c = if i % 2 == 0 { &c1 } else { &c2 };
            p = rotate_about(c, &p, 0.7 + 1e-3 * (i % 7) as f64).unwrap();
        }
        assert!(p.norm_defect() < 1e-9);
    }
}
