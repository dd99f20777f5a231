//! Spiral subgraphs `G_{p,q}(n)` of the `{p,q}` tiling.
//!
//! Starting from an edge `v_1 v_2`, vertex `v_{i+1}` is found at `v_i` by
//! sweeping its neighbors clockwise from `v_{i−1}`: after the last neighbor
//! already in the spiral comes `v_{i+1}`. The spiral graph is the subgraph
//! induced by `v_1, …, v_n`.

use std::collections::{BTreeMap, HashMap};

use num_complex::Complex64;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::geom::{rotate_about, HPoint};
use crate::hyptrig::{d_k, Dist};
use crate::penny::PennyGraph;
use crate::tiling::{check_hyperbolic, Tiling};

/// Largest spiral that [`embed`] will place in coordinates.
pub const EMBED_CAP: usize = 500;

/// Largest `n` accepted by [`max_edges_small_oracle`].
pub const ORACLE_CAP: usize = 9;

/// Incremental spiral walker over a lazily grown tiling.
#[derive(Debug, Clone)]
pub struct Spiral {
    tiling: Tiling,
    order: Vec<usize>,
    index: HashMap<usize, usize>,
    edges: usize,
}

impl Spiral {
    pub fn new(p: usize, q: usize) -> Result<Self> {
        let tiling = Tiling::new(p, q)?;
        let mut s = Spiral { tiling, order: Vec::new(), index: HashMap::new(), edges: 0 };
        s.admit(0);
        Ok(s)
    }

    pub fn len(&self) -> usize {
        self.order.len()
    }

    pub fn is_empty(&self) -> bool {
        self.order.is_empty()
    }

    /// Edge count of the induced subgraph on the current prefix.
    pub fn edges(&self) -> usize {
        self.edges
    }

    fn admit(&mut self, v: usize) {
        self.edges += self.tiling.neighbors(v).iter().filter(|w| self.index.contains_key(w)).count();
        self.index.insert(v, self.order.len());
        self.order.push(v);
    }

    /// Appends the next spiral vertex.
    pub fn push(&mut self) -> Result<()> {
        let i = self.order.len();
        let vi = self.order[i - 1];
        self.tiling.ensure_complete(vi)?;
        let rot = self.tiling.neighbors(vi);
        let next = if i == 1 {
            rot[0]
        } else {
            let prev = self.order[i - 2];
            let deg = rot.len();
            let start = rot.iter().position(|&w| w == prev).ok_or_else(|| {
                Error::Internal(format!("spiral vertices {prev} and {vi} are not adjacent"))
            })?;
            // Clockwise sweep = decreasing counterclockwise index.
            let cw = |t: usize| rot[(start + deg * 2 - t) % deg];
            let last = (0..deg).rev().find(|&t| self.index.contains_key(&cw(t))).unwrap_or(0);
            if last + 1 == deg {
                return Err(Error::Internal(format!("spiral stuck at v_{i}: every neighbor already used")));
            }
            cw(last + 1)
        };
        self.admit(next);
        Ok(())
    }

    /// Freezes the current prefix into a [`SpiralGraph`].
    pub fn graph(&self) -> Result<SpiralGraph> {
        SpiralGraph::from_prefix(&self.tiling, &self.order)
    }
}

/// Edge counts `e(G_{p,q}(n))` for `n = 1..=n_max` (index `n − 1`).
pub fn spiral_edge_counts(p: usize, q: usize, n_max: usize) -> Result<Vec<usize>> {
    let mut s = Spiral::new(p, q)?;
    let mut out = Vec::with_capacity(n_max);
    if n_max >= 1 {
        out.push(s.edges());
    }
    while s.len() < n_max {
        s.push()?;
        out.push(s.edges());
    }
    Ok(out)
}

#[derive(Debug, Clone, Serialize)]
pub struct SpiralGraph {
    pub p: usize,
    pub q: usize,
    pub n: usize,
    /// Tiling vertex ids of `v_1, …, v_n`.
    #[serde(skip)]
    pub order: Vec<usize>,
    /// Neighbors of each vertex (spiral indices), counterclockwise.
    #[serde(skip)]
    pub rotation: Vec<Vec<usize>>,
    pub edges: Vec<(usize, usize)>,
    /// Outer face walk, traversed with the unbounded face on the left.
    pub boundary: Vec<usize>,
    /// Number of bounded faces of each size.
    pub face_census: BTreeMap<usize, usize>,
    /// Bounded faces, each counterclockwise.
    #[serde(skip)]
    pub faces: Vec<Vec<usize>>,
    /// Full tiling neighborhood (counterclockwise, as spiral indices where
    /// present) of each vertex whose tiling neighborhood is complete.
    #[serde(skip)]
    pub tiling_rotation: Vec<Option<Vec<Option<usize>>>>,
    /// For each corner of the outer walk, the number of edges entering the
    /// bounded region there (−1 where the walk turns around a pendant edge).
    #[serde(skip)]
    pub interior_degrees: Vec<i64>,
}

impl SpiralGraph {
    pub fn e(&self) -> usize {
        self.edges.len()
    }

    pub fn b(&self) -> usize {
        self.boundary.len()
    }

    fn from_prefix(tiling: &Tiling, order: &[usize]) -> Result<Self> {
        let n = order.len();
        let index: HashMap<usize, usize> = order.iter().enumerate().map(|(i, &v)| (v, i)).collect();
        let rotation: Vec<Vec<usize>> = order
            .iter()
            .map(|&v| tiling.neighbors(v).iter().filter_map(|w| index.get(w).copied()).collect())
            .collect();
        let mut edges = Vec::new();
        for (a, r) in rotation.iter().enumerate() {
            for &b in r {
                if a < b {
                    edges.push((a, b));
                }
            }
        }

        // Trace faces: after u → v comes v → w, w preceding u counterclockwise at v.
        let pos: Vec<HashMap<usize, usize>> =
            rotation.iter().map(|r| r.iter().enumerate().map(|(i, &w)| (w, i)).collect()).collect();
        let succ = |u: usize, v: usize| -> usize {
            let r = &rotation[v];
            let i = pos[v][&u];
            r[(i + r.len() - 1) % r.len()]
        };
        let mut seen: HashMap<(usize, usize), bool> = HashMap::new();
        let mut faces = Vec::new();
        let mut outer: Vec<Vec<usize>> = Vec::new();
        for &(a, b) in &edges {
            for (u0, v0) in [(a, b), (b, a)] {
                if seen.contains_key(&(u0, v0)) {
                    continue;
                }
                let mut walk = Vec::new();
                let (mut u, mut v) = (u0, v0);
                loop {
                    seen.insert((u, v), true);
                    walk.push(u);
                    let w = succ(u, v);
                    u = v;
                    v = w;
                    if (u, v) == (u0, v0) {
                        break;
                    }
                }
                if is_tile_face(tiling, order, &walk) {
                    faces.push(walk);
                } else {
                    outer.push(walk);
                }
            }
        }
        let boundary = match outer.len() {
            0 if n == 1 => vec![],
            1 => outer.pop().unwrap(),
            k => {
                return Err(Error::Internal(format!("expected one non-tile face walk, found {k}")));
            }
        };
        let mut face_census = BTreeMap::new();
        for f in &faces {
            *face_census.entry(f.len()).or_insert(0) += 1;
        }
        let interior_degrees = corner_degrees(tiling, order, &boundary);
        let tiling_rotation = order
            .iter()
            .map(|&v| {
                tiling
                    .is_complete(v)
                    .then(|| tiling.neighbors(v).iter().map(|w| index.get(w).copied()).collect())
            })
            .collect();
        Ok(SpiralGraph {
            p: tiling.p(),
            q: tiling.q(),
            n,
            order: order.to_vec(),
            rotation,
            edges,
            boundary,
            face_census,
            faces,
            tiling_rotation,
            interior_degrees,
        })
    }

    /// JSON dump `{p, q, n, edges, boundary, face_census}`.
    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("spiral graph serializes")
    }
}

fn is_tile_face(tiling: &Tiling, order: &[usize], walk: &[usize]) -> bool {
    if walk.len() != tiling.p() {
        return false;
    }
    let k = walk.len();
    let f = match tiling.face_of(order[walk[0]], order[walk[1 % k]]) {
        Some(f) => f,
        None => return false,
    };
    (0..k).all(|i| tiling.face_of(order[walk[i]], order[walk[(i + 1) % k]]) == Some(f))
}

/// Interior degree of each corner of the outer walk.
///
/// The walk `u → v → w` keeps the unbounded face on its left, so the corner
/// at `v` spans the tiling wedges from `u` counterclockwise to `w`; it holds
/// `e_i + 1` of them and `e_i` tiling edges strictly inside. A walk turning
/// around a pendant vertex has an empty corner, `e_i = −1`.
fn corner_degrees(tiling: &Tiling, order: &[usize], walk: &[usize]) -> Vec<i64> {
    let k = walk.len();
    let q = tiling.q() as i64;
    (0..k)
        .map(|i| {
            let (u, v, w) = (walk[i], walk[(i + 1) % k], walk[(i + 2) % k]);
            if u == w {
                return -1;
            }
            // A boundary vertex of the grown tiling lists its neighbors as
            // [next, …, prev]; the missing ones all sit in the gap from the
            // last entry back to the first, which spans q − L + 1 wedges.
            let nb = tiling.neighbors(order[v]);
            let at = |x: usize| nb.iter().position(|&y| y == order[x]).expect("graph edge is a tiling edge") as i64;
            let (a, b) = (at(u), at(w));
            let wedges = if b > a { b - a } else { q - a + b };
            wedges - 1
        })
        .collect()
}

/// Number of faces of the `{p,q}` tiling enclosed by a cycle of length `k`
/// whose vertices send `e_1, …, e_k` edges into the interior.
///
/// Returns the exact rational as `(numerator, denominator)` in lowest terms,
/// and whether it is an integer.
pub fn faces_inside(p: usize, q: usize, k: usize, interior_degrees: &[i64]) -> Result<FaceCount> {
    check_hyperbolic(p, q)?;
    if interior_degrees.len() != k {
        return Err(Error::domain(format!("expected {k} interior degrees, got {}", interior_degrees.len())));
    }
    let (p, q, k) = (p as i64, q as i64, k as i64);
    let sum: i64 = interior_degrees.iter().sum();
    let num = (k - 2) * (q - 2) - 4 - 2 * sum;
    let den = (p - 2) * (q - 2) - 4;
    let g = gcd(num.abs(), den);
    Ok(FaceCount { num: num / g, den: den / g })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct FaceCount {
    pub num: i64,
    pub den: i64,
}

impl FaceCount {
    pub fn is_integer(&self) -> bool {
        self.den == 1
    }

    pub fn as_integer(&self) -> Option<i64> {
        self.is_integer().then_some(self.num)
    }
}

fn gcd(a: i64, b: i64) -> i64 {
    if b == 0 {
        a.max(1)
    } else {
        gcd(b, a % b)
    }
}

/// Edge count `3n − 3 − b − Σ_{i≥4} (i − 3) f_i` of a connected plane graph.
///
/// `e` is the actual edge count and is used only to check the census against
/// the handshake identity `2e = Σ i·f_i + b`.
pub fn euler_edge_bound(n: usize, e: usize, b: usize, census: &BTreeMap<usize, usize>) -> Result<i64> {
    let half_edges: usize = census.iter().map(|(&i, &f)| i * f).sum::<usize>() + b;
    if half_edges != 2 * e {
        return Err(Error::Contract(format!(
            "face census inconsistent: sum i*f_i + b = {half_edges}, 2e = {}",
            2 * e
        )));
    }
    let excess: i64 = census.iter().filter(|(&i, _)| i >= 4).map(|(&i, &f)| (i as i64 - 3) * f as i64).sum();
    Ok(3 * n as i64 - 3 - b as i64 - excess)
}

/// Builds `G_{p,q}(n)`.
pub fn build_spiral(p: usize, q: usize, n: usize) -> Result<SpiralGraph> {
    if n == 0 {
        return Err(Error::domain("spiral needs at least one vertex"));
    }
    let mut s = Spiral::new(p, q)?;
    while s.len() < n {
        s.push()?;
    }
    s.graph()
}

/// Places a triangular spiral in the plane with edge length `d(q)`.
///
/// `v_1` goes to the origin and `v_2` on the positive x-axis. Every other
/// vertex is placed by rotating an already placed neighbor about a vertex
/// whose full tiling neighborhood is known, in steps of `2π/q`.
pub fn embed(g: &SpiralGraph, d: Dist) -> Result<PennyGraph> {
    if g.p != 3 {
        return Err(Error::domain(format!("only triangular spirals are penny graphs, got p = {}", g.p)));
    }
    let dq = d_k(g.q as u32)?;
    if (dq.value() - d.value()).abs() > 1e-9 * dq.value().max(1.0) {
        return Err(Error::domain(format!("spiral in {{3,{}}} needs d = d({}) = {}, got {}", g.q, g.q, dq, d)));
    }
    if g.n > EMBED_CAP {
        return Err(Error::Refused(format!("embedding capped at n = {EMBED_CAP}, got {}", g.n)));
    }
    let turn = 2.0 * std::f64::consts::PI / g.q as f64;
    let mut pts: Vec<Option<HPoint>> = vec![None; g.n];
    pts[0] = Some(HPoint::ORIGIN);
    if g.n >= 2 {
        pts[1] = Some(HPoint::polar(d.value(), 0.0));
    }
    let mut queue: std::collections::VecDeque<usize> = (0..g.n.min(2)).collect();
    while let Some(v) = queue.pop_front() {
        let Some(r) = &g.tiling_rotation[v] else { continue };
        let Some(anchor) = r.iter().position(|w| w.is_some_and(|w| pts[w].is_some())) else {
            continue;
        };
        let center = pts[v].expect("queued vertices are placed");
        let from = pts[r[anchor].unwrap()].unwrap();
        for (t, w) in r.iter().enumerate() {
            let Some(w) = *w else { continue };
            if pts[w].is_some() {
                continue;
            }
            let steps = (t + r.len() - anchor) % r.len();
            pts[w] = Some(rotate_about(&center, &from, turn * steps as f64)?);
            queue.push_back(w);
        }
    }
    let pts: Vec<HPoint> = pts
        .into_iter()
        .enumerate()
        .map(|(i, p)| p.ok_or_else(|| Error::Embedding(format!("vertex {i} never placed"))))
        .collect::<Result<_>>()?;
    let pg = PennyGraph::from_points(d, pts).map_err(|e| Error::Embedding(e.to_string()))?;
    if !pg.matches_edges(&g.edges) {
        return Err(Error::Embedding(format!(
            "embedded graph has {} edges, combinatorial graph has {}",
            pg.e(),
            g.e()
        )));
    }
    pg.with_boundary(g.boundary.clone())
}

/// Maximum edge count over connected induced `n`-vertex subgraphs of the
/// `{p,q}` tiling, by exhaustive search.
///
/// The tiling is vertex-transitive, so every such subgraph has a copy
/// containing a fixed root vertex. Connected vertex sets containing the root
/// are enumerated exactly once each: candidates on the frontier are taken in
/// order, and a candidate skipped at one level stays excluded below it.
pub fn max_edges_small_oracle(p: usize, q: usize, n: usize) -> Result<usize> {
    check_hyperbolic(p, q)?;
    if n == 0 {
        return Err(Error::domain("oracle needs n >= 1"));
    }
    if n > ORACLE_CAP {
        return Err(Error::Refused(format!("exhaustive search capped at n = {ORACLE_CAP}, got {n}")));
    }
    let mut t = Tiling::new(p, q)?;
    let ball = t.ball(0, n - 1)?;
    let local: HashMap<usize, usize> = ball.iter().enumerate().map(|(i, &(v, _))| (v, i)).collect();
    let adj: Vec<Vec<usize>> = ball
        .iter()
        .map(|&(v, _)| t.neighbors(v).iter().filter_map(|w| local.get(w).copied()).collect())
        .collect();
    let mut s = ConnectedSets { adj: &adj, n, in_set: vec![false; adj.len()], blocked: vec![false; adj.len()], best: 0 };
    s.in_set[0] = true;
    s.blocked[0] = true;
    let mut frontier = Vec::new();
    for &w in &adj[0] {
        s.blocked[w] = true;
        frontier.push(w);
    }
    s.run(1, 0, &frontier);
    Ok(s.best)
}

struct ConnectedSets<'a> {
    adj: &'a [Vec<usize>],
    n: usize,
    in_set: Vec<bool>,
    /// In the set, on the frontier, or excluded on the current branch.
    blocked: Vec<bool>,
    best: usize,
}

impl ConnectedSets<'_> {
    fn run(&mut self, size: usize, edges: usize, frontier: &[usize]) {
        if size == self.n {
            self.best = self.best.max(edges);
            return;
        }
        for (i, &v) in frontier.iter().enumerate() {
            let gained = self.adj[v].iter().filter(|&&w| self.in_set[w]).count();
            self.in_set[v] = true;
            let mut next = frontier[i + 1..].to_vec();
            let mark = next.len();
            for &w in &self.adj[v] {
                if !self.blocked[w] {
                    self.blocked[w] = true;
                    next.push(w);
                }
            }
            self.run(size + 1, edges + gained, &next);
            for &w in &next[mark..] {
                self.blocked[w] = false;
            }
            self.in_set[v] = false;
        }
    }
}

/// Poincaré-disk coordinates of an embedded spiral, for plotting.
pub fn disk_coordinates(g: &PennyGraph) -> Vec<Complex64> {
    (0..g.n())
        .map(|i| {
            let (x, y) = g.world_point(i).to_poincare();
            Complex64::new(x, y)
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::geom::polygon_area_gb;
    use crate::hyptrig::triangle_area;
    use crate::penny::check_oler;

    #[test]
    fn small_heptagonal_spirals() {
        let g = build_spiral(3, 7, 3).unwrap();
        assert_eq!((g.e(), g.b()), (3, 3));
        assert_eq!(build_spiral(3, 7, 8).unwrap().e(), 14);
        assert_eq!(build_spiral(3, 7, 17).unwrap().e(), 34);
        let one = build_spiral(3, 7, 1).unwrap();
        assert_eq!((one.e(), one.b()), (0, 0));
        let two = build_spiral(3, 7, 2).unwrap();
        assert_eq!((two.e(), two.b()), (1, 2));
    }

    #[test]
    fn rejects_flat_and_spherical() {
        assert!(build_spiral(3, 6, 5).is_err());
        assert!(build_spiral(4, 4, 5).is_err());
        assert!(build_spiral(3, 5, 5).is_err());
        assert!(build_spiral(3, 7, 0).is_err());
    }

    #[test]
    fn edge_boundary_relation() {
        for (p, q) in [(3, 7), (3, 8), (4, 5), (5, 4), (7, 3)] {
            for n in 1..=120 {
                let g = build_spiral(p, q, n).unwrap();
                assert_eq!((p - 2) * g.e() + g.b(), p * (n - 1), "{{{p},{q}}} n = {n}");
                assert_eq!(g.face_census.keys().copied().collect::<Vec<_>>(), if g.faces.is_empty() { vec![] } else { vec![p] });
            }
        }
    }

    #[test]
    fn face_counts_match_euler() {
        for (p, q) in [(3, 7), (3, 8), (4, 5), (5, 4), (7, 3)] {
            for n in 2..=150 {
                let g = build_spiral(p, q, n).unwrap();
                let inner = g.e() as i64 - n as i64 + 1;
                let fc = faces_inside(p, q, g.b(), &g.interior_degrees).unwrap();
                assert_eq!(fc.as_integer(), Some(inner), "{{{p},{q}}} n = {n}");
            }
        }
    }

    #[test]
    fn faces_inside_examples() {
        assert_eq!(faces_inside(3, 7, 3, &[0, 0, 0]).unwrap().as_integer(), Some(1));
        assert_eq!(faces_inside(4, 5, 4, &[0; 4]).unwrap().as_integer(), Some(1));
        assert_eq!(faces_inside(3, 7, 4, &[1, 0, 1, 0]).unwrap().as_integer(), Some(2));
        // Not a cycle of the tiling: the count is fractional.
        let f = faces_inside(4, 5, 5, &[0; 5]).unwrap();
        assert!(!f.is_integer());
        assert!(faces_inside(3, 7, 3, &[0, 0]).is_err());
    }

    #[test]
    fn euler_bound_examples() {
        let mut c = BTreeMap::new();
        c.insert(4, 1);
        assert_eq!(euler_edge_bound(4, 4, 4, &c).unwrap(), 4);
        assert!(euler_edge_bound(4, 5, 4, &c).is_err());
        for n in [5, 20, 77] {
            let g = build_spiral(4, 5, n).unwrap();
            assert_eq!(euler_edge_bound(n, g.e(), g.b(), &g.face_census).unwrap(), g.e() as i64);
            assert_eq!(2 * g.e(), 4 * (n - 1) - g.b());
        }
    }

    #[test]
    fn incremental_counts_match_built_graphs() {
        let counts = spiral_edge_counts(3, 8, 60).unwrap();
        for n in [1, 2, 3, 10, 33, 60] {
            assert_eq!(counts[n - 1], build_spiral(3, 8, n).unwrap().e());
        }
    }

    #[test]
    fn embedding_is_a_penny_graph() {
        let d7 = d_k(7).unwrap();
        let g = build_spiral(3, 7, 17).unwrap();
        let pg = embed(&g, d7).unwrap();
        assert_eq!(pg.e(), 34);
        pg.certify().unwrap();
        let tri = embed(&build_spiral(3, 7, 3).unwrap(), d7).unwrap();
        assert_eq!(tri.e(), 3);
    }

    #[test]
    fn embedding_preconditions() {
        let g = build_spiral(3, 7, 10).unwrap();
        assert!(matches!(embed(&g, Dist::new(1.0).unwrap()), Err(Error::Domain(_))));
        let sq = build_spiral(4, 5, 10).unwrap();
        assert!(matches!(embed(&sq, Dist::new(1.0).unwrap()), Err(Error::Domain(_))));
    }

    #[test]
    fn oler_equality_on_embedded_spiral() {
        let d8 = d_k(8).unwrap();
        let g = build_spiral(3, 8, 50).unwrap();
        let pg = embed(&g, d8).unwrap();
        let r = check_oler(&pg).unwrap();
        assert!(r.slack.abs() < 1e-8, "slack {}", r.slack);
        // Area of the boundary polygon is (2n − 2 − b) triangles.
        let area = polygon_area_gb(&pg.boundary_polygon().unwrap()).unwrap();
        let want = (2 * g.n - 2 - g.b()) as f64 * triangle_area(d8);
        assert!((area - want).abs() < 1e-8);
    }

    #[test]
    fn oracle_small_values() {
        assert_eq!(max_edges_small_oracle(3, 7, 1).unwrap(), 0);
        assert_eq!(max_edges_small_oracle(3, 7, 3).unwrap(), 3);
        assert_eq!(max_edges_small_oracle(3, 7, 7).unwrap(), 11);
        assert_eq!(max_edges_small_oracle(4, 5, 4).unwrap(), 4);
        assert!(matches!(max_edges_small_oracle(3, 7, 10), Err(Error::Refused(_))));
    }

    #[test]
    fn json_dump_has_expected_keys() {
        let g = build_spiral(3, 7, 8).unwrap();
        let v: serde_json::Value = serde_json::from_str(&g.to_json()).unwrap();
        for key in ["p", "q", "n", "edges", "boundary", "face_census"] {
            assert!(v.get(key).is_some(), "missing {key}");
        }
        assert_eq!(v["edges"].as_array().unwrap().len(), 14);
    }
}
