//! Packings of horocycles with `2n − 3` touching pairs.
//!
//! In the Poincaré disk a horocycle is a Euclidean circle internally tangent
//! to the unit circle. Starting from two equal horocycles touching at the
//! center, each new circle fills the gap between two touching horocycles and
//! the boundary. Its curvature follows from the Descartes circle theorem with
//! the boundary at curvature `−1`, and its center from the complex form of
//! the same theorem.

use num_complex::Complex64;
use serde::Serialize;

use crate::error::{Error, Result};

/// A Euclidean circle in the unit disk.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct Circle {
    pub x: f64,
    pub y: f64,
    pub r: f64,
}

impl Circle {
    fn center(&self) -> Complex64 {
        Complex64::new(self.x, self.y)
    }

    /// `|c_i − c_j| − r_i − r_j`: zero for touching circles, negative for
    /// overlapping ones.
    pub fn gap(&self, other: &Circle) -> f64 {
        (self.center() - other.center()).norm() - self.r - other.r
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct HorocyclePacking {
    pub circles: Vec<Circle>,
    pub tangencies: Vec<(usize, usize)>,
    /// Smallest pairwise gap.
    pub min_gap: f64,
    /// Largest `|1 − |c| − r|`, the defect of tangency with the boundary.
    pub max_boundary_defect: f64,
}

/// Relative tolerance for classifying a pair as touching.
const TOUCH_TOL: f64 = 1e-9;

/// Curvature of the circle in the gap between touching horocycles of
/// curvatures `k1` and `k2`.
pub fn descartes_curvature(k1: f64, k2: f64) -> f64 {
    k1 + k2 - 1.0 + 2.0 * (k1 * k2 - k1 - k2).max(0.0).sqrt()
}

/// Both circles tangent to `a`, `b` and the unit circle.
fn candidates(a: &Circle, b: &Circle) -> [Circle; 2] {
    let (k1, k2) = (1.0 / a.r, 1.0 / b.r);
    let k = descartes_curvature(k1, k2);
    let (w1, w2) = (a.center() * k1, b.center() * k2);
    let root = (w1 * w2).sqrt() * 2.0;
    [w1 + w2 + root, w1 + w2 - root].map(|w| {
        let z = w / k;
        Circle { x: z.re, y: z.im, r: 1.0 / k }
    })
}

/// Packs `n ≥ 2` horocycles, always filling the widest remaining gap.
pub fn horocycle_pack(n: usize) -> Result<HorocyclePacking> {
    if n < 2 {
        return Err(Error::domain(format!("need n >= 2 horocycles, got {n}")));
    }
    let mut circles = vec![Circle { x: 0.0, y: 0.5, r: 0.5 }, Circle { x: 0.0, y: -0.5, r: 0.5 }];
    // Each gap is bounded by two touching horocycles; the seed pair has one on
    // each side of the center.
    let mut gaps: Vec<(usize, usize)> = vec![(0, 1), (0, 1)];
    while circles.len() < n {
        let (gi, _) = gaps
            .iter()
            .enumerate()
            .map(|(g, &(a, b))| (g, descartes_curvature(1.0 / circles[a].r, 1.0 / circles[b].r)))
            .fold((usize::MAX, f64::INFINITY), |best, cur| if cur.1 < best.1 { cur } else { best });
        let (a, b) = gaps.remove(gi);
        let pick = candidates(&circles[a], &circles[b])
            .into_iter()
            .find(|c| circles.iter().all(|o| c.gap(o) >= -TOUCH_TOL * c.r.min(o.r)))
            .ok_or_else(|| Error::Internal(format!("gap between {a} and {b} is already filled")))?;
        let v = circles.len();
        circles.push(pick);
        gaps.push((a, v));
        gaps.push((v, b));
    }
    Ok(certify(circles))
}

fn certify(circles: Vec<Circle>) -> HorocyclePacking {
    let mut tangencies = Vec::new();
    let mut min_gap = f64::INFINITY;
    for i in 0..circles.len() {
        for j in i + 1..circles.len() {
            let g = circles[i].gap(&circles[j]);
            min_gap = min_gap.min(g);
            if g.abs() <= TOUCH_TOL * circles[i].r.min(circles[j].r) {
                tangencies.push((i, j));
            }
        }
    }
    let max_boundary_defect = circles.iter().map(|c| (1.0 - c.center().norm() - c.r).abs()).fold(0.0, f64::max);
    HorocyclePacking { circles, tangencies, min_gap, max_boundary_defect }
}
