//! Lazily grown `{p,q}` tilings as combinatorial rotation systems.
//!
//! The grown region is always a topological disk. Its boundary is kept as a
//! doubly linked cycle traversed counterclockwise (interior on the left). A
//! boundary vertex stores its neighbors counterclockwise as
//! `[next, interior…, prev]`; the exterior gap lies between `prev` and `next`.
//!
//! New faces are attached on the exterior side of a boundary edge `(u, next(u))`.
//! Every boundary vertex that already has degree `q` must lend both of its
//! boundary edges to the new face, so the face absorbs a maximal chain of such
//! vertices and is completed with fresh vertices. Growth sweeps the boundary
//! clockwise one vertex at a time, which keeps the region layered around the
//! seed face.

use std::collections::HashMap;

use crate::error::{Error, Result};

#[derive(Debug, Clone)]
pub struct Tiling {
    p: usize,
    q: usize,
    rot: Vec<Vec<usize>>,
    faces_at: Vec<usize>,
    next: Vec<usize>,
    prev: Vec<usize>,
    on_boundary: Vec<bool>,
    faces: Vec<Vec<usize>>,
    half_edge_face: HashMap<(usize, usize), usize>,
    cursor: usize,
}

/// Checks that `{p,q}` is a hyperbolic tiling.
pub fn check_hyperbolic(p: usize, q: usize) -> Result<()> {
    if p < 3 || q < 3 {
        return Err(Error::domain(format!("{{{p},{q}}} needs p, q >= 3")));
    }
    if (p - 2) * (q - 2) <= 4 {
        return Err(Error::domain(format!(
            "{{{p},{q}}} is not hyperbolic: (p-2)(q-2) = {} <= 4",
            (p - 2) * (q - 2)
        )));
    }
    Ok(())
}

impl Tiling {
    /// A single `p`-gon with vertices `0..p` in counterclockwise order.
    pub fn new(p: usize, q: usize) -> Result<Self> {
        check_hyperbolic(p, q)?;
        let mut t = Tiling {
            p,
            q,
            rot: Vec::with_capacity(p),
            faces_at: vec![1; p],
            next: Vec::with_capacity(p),
            prev: Vec::with_capacity(p),
            on_boundary: vec![true; p],
            faces: Vec::new(),
            half_edge_face: HashMap::new(),
            cursor: 0,
        };
        for i in 0..p {
            let nx = (i + 1) % p;
            let pv = (i + p - 1) % p;
            t.rot.push(vec![nx, pv]);
            t.next.push(nx);
            t.prev.push(pv);
        }
        t.register_face((0..p).collect());
        Ok(t)
    }

    pub fn p(&self) -> usize {
        self.p
    }

    pub fn q(&self) -> usize {
        self.q
    }

    pub fn num_vertices(&self) -> usize {
        self.rot.len()
    }

    pub fn num_faces(&self) -> usize {
        self.faces.len()
    }

    /// Neighbors of `v` in counterclockwise order.
    pub fn neighbors(&self, v: usize) -> &[usize] {
        &self.rot[v]
    }

    pub fn is_complete(&self, v: usize) -> bool {
        self.faces_at[v] == self.q
    }

    /// Faces in counterclockwise vertex order.
    pub fn face(&self, f: usize) -> &[usize] {
        &self.faces[f]
    }

    /// The face traversing the directed edge `a → b` counterclockwise.
    pub fn face_of(&self, a: usize, b: usize) -> Option<usize> {
        self.half_edge_face.get(&(a, b)).copied()
    }

    fn register_face(&mut self, cycle: Vec<usize>) -> usize {
        let id = self.faces.len();
        let k = cycle.len();
        for i in 0..k {
            self.half_edge_face.insert((cycle[i], cycle[(i + 1) % k]), id);
        }
        self.faces.push(cycle);
        id
    }

    fn new_vertex(&mut self) -> usize {
        let id = self.rot.len();
        self.rot.push(Vec::with_capacity(self.q));
        self.faces_at.push(0);
        self.next.push(usize::MAX);
        self.prev.push(usize::MAX);
        self.on_boundary.push(true);
        id
    }

    fn pos(&self, v: usize, w: usize) -> Result<usize> {
        self.rot[v]
            .iter()
            .position(|&x| x == w)
            .ok_or_else(|| Error::Internal(format!("{w} is not a neighbor of {v}")))
    }

    /// Attaches one face on the exterior side of the boundary edge `(u, next(u))`.
    /// Returns the first chain vertex of the new face.
    fn add_face_at(&mut self, u: usize) -> Result<usize> {
        if !self.on_boundary[u] {
            return Err(Error::Internal(format!("vertex {u} is not on the boundary")));
        }
        let (p, q) = (self.p, self.q);
        let mut chain = std::collections::VecDeque::with_capacity(p);
        chain.push_back(u);
        chain.push_back(self.next[u]);
        while self.rot[*chain.back().unwrap()].len() == q {
            chain.push_back(self.next[*chain.back().unwrap()]);
            if chain.len() > p {
                return Err(Error::Internal("face chain longer than p".into()));
            }
        }
        while self.rot[*chain.front().unwrap()].len() == q {
            chain.push_front(self.prev[*chain.front().unwrap()]);
            if chain.len() > p {
                return Err(Error::Internal("face chain longer than p".into()));
            }
        }
        let chain: Vec<usize> = chain.into();
        let m = chain.len() - 1;
        let k = p - 1 - m;
        let (c0, cm) = (chain[0], chain[m]);
        if k == 0 && self.rot[c0].contains(&cm) {
            return Err(Error::Internal(format!("closing edge {c0}-{cm} already exists")));
        }

        let ys: Vec<usize> = (0..k).map(|_| self.new_vertex()).collect();
        // Boundary path replacing c0 → c1 → … → cm.
        let mut path = Vec::with_capacity(k + 2);
        path.push(c0);
        path.extend(ys.iter().rev());
        path.push(cm);

        let at = self.pos(c0, chain[1])?;
        self.rot[c0].insert(at, path[1]);
        let at = self.pos(cm, chain[m - 1])?;
        self.rot[cm].insert(at + 1, path[path.len() - 2]);
        for t in 1..path.len() - 1 {
            let y = path[t];
            self.rot[y] = vec![path[t + 1], path[t - 1]];
        }
        for t in 0..path.len() - 1 {
            self.next[path[t]] = path[t + 1];
            self.prev[path[t + 1]] = path[t];
        }
        for &c in &chain[1..m] {
            self.on_boundary[c] = false;
        }
        for &v in chain.iter().chain(ys.iter()) {
            self.faces_at[v] += 1;
        }
        for &c in &chain[1..m] {
            if self.faces_at[c] != q {
                return Err(Error::Internal(format!("absorbed vertex {c} left incomplete")));
            }
        }

        let mut cycle: Vec<usize> = chain.iter().chain(ys.iter()).copied().collect();
        cycle.reverse();
        self.register_face(cycle);
        Ok(c0)
    }

    /// Adds faces around boundary vertex `v` until it is complete.
    fn complete(&mut self, v: usize) -> Result<usize> {
        let mut last = v;
        while self.faces_at[v] < self.q {
            last = self.add_face_at(v)?;
        }
        Ok(last)
    }

    /// Completes the vertex under the growth cursor and moves the cursor
    /// clockwise along the boundary.
    pub fn step(&mut self) -> Result<()> {
        let v = self.cursor;
        self.cursor = self.complete(v)?;
        if !self.on_boundary[self.cursor] {
            return Err(Error::Internal("growth cursor left the boundary".into()));
        }
        Ok(())
    }

    /// Grows the tiling until `v` is complete.
    pub fn ensure_complete(&mut self, v: usize) -> Result<()> {
        if v >= self.num_vertices() {
            return Err(Error::Internal(format!("vertex {v} does not exist")));
        }
        while !self.is_complete(v) {
            self.step()?;
        }
        Ok(())
    }

    /// All vertices within graph distance `radius` of `root`, with their
    /// distances. Vertices closer than `radius` are completed first, so the
    /// ball is exactly the ball of the infinite tiling.
    pub fn ball(&mut self, root: usize, radius: usize) -> Result<Vec<(usize, usize)>> {
        let mut dist: HashMap<usize, usize> = HashMap::new();
        let mut order = vec![(root, 0)];
        dist.insert(root, 0);
        let mut head = 0;
        while head < order.len() {
            let (v, dv) = order[head];
            head += 1;
            if dv == radius {
                continue;
            }
            self.ensure_complete(v)?;
            for i in 0..self.rot[v].len() {
                let w = self.rot[v][i];
                if let std::collections::hash_map::Entry::Vacant(slot) = dist.entry(w) {
                    slot.insert(dv + 1);
                    order.push((w, dv + 1));
                }
            }
        }
        Ok(order)
    }
}
