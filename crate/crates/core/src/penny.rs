//! Minimum-distance graphs ("penny graphs") with certified coordinates.
//!
//! Vertices may live in several charts related by one fixed isometry: a
//! vertex in chart `k` sits at `shift^k(p)`. Distances between vertices in
//! different charts are evaluated as `dist(p_i, shift^(k_j − k_i) p_j)`, so
//! long periodic constructions never need coordinates far from the origin
//! for nearby pairs.

use serde::Serialize;

use crate::error::{Error, Result};
use crate::geom::{hdist, perimeter, polygon_area_gb, HPoint, Isometry};
use crate::hyptrig::{triangle_area, Dist};

/// Edge-classification tolerance for side length `d`.
pub fn edge_tol(d: Dist) -> f64 {
    1e-9 * d.value().max(1.0)
}

#[derive(Debug, Clone)]
pub struct PennyGraph {
    d: Dist,
    points: Vec<HPoint>,
    chart: Vec<usize>,
    shift: Isometry,
    /// `images[m][i] = shift^m(points[i])`.
    images: Vec<Vec<HPoint>>,
    edges: Vec<(usize, usize)>,
    boundary: Option<Vec<usize>>,
}

/// Outcome of the all-pairs certification.
#[derive(Debug, Clone, Copy, Serialize)]
pub struct Certificate {
    pub n: usize,
    pub e: usize,
    /// Smallest distance over all pairs.
    pub min_pair_dist: f64,
    /// Largest `|dist − d|` over edges.
    pub max_edge_error: f64,
    /// Smallest `dist − d` over non-edges.
    pub min_gap: f64,
}

/// Both sides of the Oler-type inequality `area(B)/A(d) + per(B)/d ≥ 2n − 2`.
#[derive(Debug, Clone, Copy, Serialize)]
pub struct OlerReport {
    pub lhs: f64,
    pub rhs: f64,
    pub slack: f64,
    pub area: f64,
    pub perimeter: f64,
}

impl PennyGraph {
    /// Builds a single-chart graph; edges are all pairs at distance `d`.
    pub fn from_points(d: Dist, points: Vec<HPoint>) -> Result<Self> {
        let n = points.len();
        Self::from_charted(d, points, vec![0; n], Isometry::IDENTITY)
    }

    /// Builds a multi-chart graph; edges are all pairs at distance `d`.
    /// Fails if any pair is closer than `d` (beyond tolerance).
    pub fn from_charted(d: Dist, points: Vec<HPoint>, chart: Vec<usize>, shift: Isometry) -> Result<Self> {
        if chart.len() != points.len() {
            return Err(Error::Contract("one chart index per point required".into()));
        }
        let max_chart = chart.iter().copied().max().unwrap_or(0);
        let mut images = vec![points.clone()];
        for m in 1..=max_chart {
            let next: Vec<HPoint> = images[m - 1].iter().map(|p| shift.apply(p)).collect();
            images.push(next);
        }
        let mut g = PennyGraph { d, points, chart, shift, images, edges: Vec::new(), boundary: None };
        g.edges = g.detect_edges()?;
        Ok(g)
    }

    pub fn with_boundary(mut self, boundary: Vec<usize>) -> Result<Self> {
        if boundary.iter().any(|&v| v >= self.n()) {
            return Err(Error::Contract("boundary references a missing vertex".into()));
        }
        self.boundary = Some(boundary);
        Ok(self)
    }

    pub fn d(&self) -> Dist {
        self.d
    }

    pub fn n(&self) -> usize {
        self.points.len()
    }

    pub fn e(&self) -> usize {
        self.edges.len()
    }

    pub fn edges(&self) -> &[(usize, usize)] {
        &self.edges
    }

    pub fn boundary(&self) -> Option<&[usize]> {
        self.boundary.as_deref()
    }

    pub fn tol(&self) -> f64 {
        edge_tol(self.d)
    }

    /// Distance between vertices `i` and `j`.
    pub fn dist(&self, i: usize, j: usize) -> f64 {
        let (ci, cj) = (self.chart[i], self.chart[j]);
        if ci <= cj {
            hdist(&self.points[i], &self.images[cj - ci][j])
        } else {
            hdist(&self.images[ci - cj][i], &self.points[j])
        }
    }

    /// Coordinates of vertex `i` in the frame of chart 0.
    pub fn world_point(&self, i: usize) -> HPoint {
        self.images[self.chart[i]][i]
    }

    /// Coordinates of every vertex in the frame of `chart`: vertices in
    /// earlier charts are pulled back through the inverse shift.
    pub fn points_in_chart(&self, chart: usize) -> Vec<HPoint> {
        let inv = invert(&self.shift);
        (0..self.n())
            .map(|i| {
                let c = self.chart[i];
                if c >= chart {
                    self.images[c - chart][i]
                } else {
                    let mut p = self.points[i];
                    for _ in 0..chart - c {
                        p = inv.apply(&p);
                    }
                    p
                }
            })
            .collect()
    }

    /// Chart index of vertex `i`.
    pub fn chart(&self, i: usize) -> usize {
        self.chart[i]
    }

    pub fn max_chart(&self) -> usize {
        self.images.len() - 1
    }

    fn detect_edges(&self) -> Result<Vec<(usize, usize)>> {
        let d = self.d.value();
        let tol = self.tol();
        let mut edges = Vec::new();
        for i in 0..self.n() {
            for j in i + 1..self.n() {
                let dij = self.dist(i, j);
                if !dij.is_finite() {
                    return Err(Error::Internal(format!("distance between {i} and {j} is not finite")));
                }
                if dij < d - tol {
                    return Err(Error::Contract(format!(
                        "vertices {i} and {j} at distance {dij} < d = {d}"
                    )));
                }
                if (dij - d).abs() <= tol {
                    edges.push((i, j));
                }
            }
        }
        Ok(edges)
    }

    /// Re-checks every pair: edges at distance `d`, everything else at least `d`.
    pub fn certify(&self) -> Result<Certificate> {
        let d = self.d.value();
        let tol = self.tol();
        let mut is_edge = std::collections::HashSet::with_capacity(self.edges.len());
        for &(a, b) in &self.edges {
            is_edge.insert((a.min(b), a.max(b)));
        }
        let mut cert = Certificate {
            n: self.n(),
            e: self.e(),
            min_pair_dist: f64::INFINITY,
            max_edge_error: 0.0,
            min_gap: f64::INFINITY,
        };
        for i in 0..self.n() {
            for j in i + 1..self.n() {
                let dij = self.dist(i, j);
                if !dij.is_finite() {
                    return Err(Error::Internal(format!("distance between {i} and {j} is not finite")));
                }
                cert.min_pair_dist = cert.min_pair_dist.min(dij);
                if is_edge.contains(&(i, j)) {
                    let err = (dij - d).abs();
                    if err > tol {
                        return Err(Error::Contract(format!("edge ({i}, {j}) has length {dij}, expected {d}")));
                    }
                    cert.max_edge_error = cert.max_edge_error.max(err);
                } else {
                    if dij < d + tol {
                        return Err(Error::Contract(format!(
                            "non-edge ({i}, {j}) at distance {dij} not clearly above d = {d}"
                        )));
                    }
                    cert.min_gap = cert.min_gap.min(dij - d);
                }
            }
        }
        Ok(cert)
    }

    /// Checks that the detected edges are exactly `expected` (as unordered pairs).
    pub fn matches_edges(&self, expected: &[(usize, usize)]) -> bool {
        let norm = |v: &[(usize, usize)]| {
            let mut s: Vec<_> = v.iter().map(|&(a, b)| (a.min(b), a.max(b))).collect();
            s.sort_unstable();
            s.dedup();
            s
        };
        let want = norm(expected);
        want.len() == expected.len() && norm(&self.edges) == want
    }

    /// The boundary polygon in chart-0 coordinates.
    pub fn boundary_polygon(&self) -> Result<Vec<HPoint>> {
        let b = self.boundary.as_ref().ok_or_else(|| Error::Contract("graph has no boundary walk".into()))?;
        Ok(b.iter().map(|&i| self.world_point(i)).collect())
    }
}

fn invert(m: &Isometry) -> Isometry {
    // For a Lorentz matrix, M⁻¹ = J Mᵀ J.
    let a = &m.0;
    let j = [1.0, -1.0, -1.0];
    let mut out = [[0.0; 3]; 3];
    for (r, row) in out.iter_mut().enumerate() {
        for (c, cell) in row.iter_mut().enumerate() {
            *cell = j[r] * a[c][r] * j[c];
        }
    }
    Isometry(out)
}

/// Evaluates the Oler-type inequality on a 2-connected penny graph whose
/// bounded faces are all triangles.
///
/// The triangulation contract is checked through the edge count: a
/// 2-connected plane graph with boundary length `b` has `e = 3n − 3 − b`
/// exactly when every bounded face is a triangle.
pub fn check_oler(g: &PennyGraph) -> Result<OlerReport> {
    let boundary = g.boundary().ok_or_else(|| Error::Contract("Oler check needs the boundary walk".into()))?;
    let n = g.n();
    let b = boundary.len();
    if n < 3 || b < 3 {
        return Err(Error::Contract("Oler check needs at least one bounded face".into()));
    }
    if g.e() + 3 + b != 3 * n {
        return Err(Error::Contract(format!(
            "bounded faces are not all triangles: e = {}, expected 3n - 3 - b = {}",
            g.e(),
            (3 * n) as i64 - 3 - b as i64
        )));
    }
    let poly = g.boundary_polygon()?;
    let area = polygon_area_gb(&poly)?;
    let per = perimeter(&poly);
    let d = g.d();
    let lhs = area / triangle_area(d) + per / d.value();
    let rhs = 2.0 * n as f64 - 2.0;
    Ok(OlerReport { lhs, rhs, slack: lhs - rhs, area, perimeter: per })
}
