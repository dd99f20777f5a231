//! The exact edge counts `e_{d(7)}(n)` of the order-7 triangular spiral.
//!
//! The increments form the word `A = a_0 a_1 a_2 …` with `A_0 = 012` and
//! `A_{i+1} = A_i · 2^{4 − a_i} 3`: reading the word from the left, each symbol
//! `a_i` appends a run of `4 − a_i` twos and a single three. Then
//! `e(n) = Σ_{i<n} a_i`.

use std::collections::VecDeque;

use serde::Serialize;

/// Lazy generator of the word `A`.
#[derive(Debug, Clone)]
pub struct DeltaWord {
    emitted: Vec<u8>,
    seeds: VecDeque<u8>,
}

impl Default for DeltaWord {
    fn default() -> Self {
        Self::new()
    }
}

impl DeltaWord {
    pub fn new() -> Self {
        DeltaWord { emitted: vec![0, 1, 2], seeds: VecDeque::from([0, 1, 2]) }
    }

    /// Number of seed symbols consumed so far.
    pub fn consumed(&self) -> usize {
        self.emitted.len() - self.seeds.len()
    }

    fn expand_one(&mut self) {
        let a = self.seeds.pop_front().expect("the word outgrows its read head");
        for _ in 0..4 - a {
            self.emitted.push(2);
            self.seeds.push_back(2);
        }
        self.emitted.push(3);
        self.seeds.push_back(3);
    }

    /// Ensures at least `len` symbols exist.
    pub fn extend_to(&mut self, len: usize) {
        while self.emitted.len() < len {
            self.expand_one();
        }
    }

    /// Symbol `a_i` (0-based).
    pub fn symbol(&mut self, i: usize) -> u8 {
        self.extend_to(i + 1);
        self.emitted[i]
    }

    /// The first `len` symbols.
    pub fn prefix(&mut self, len: usize) -> &[u8] {
        self.extend_to(len);
        &self.emitted[..len]
    }
}

/// `e(n)` for `n = 1..=n_max` (index `n − 1`).
pub fn e_exact_table(n_max: usize) -> Vec<u64> {
    let mut w = DeltaWord::new();
    let word = w.prefix(n_max);
    let mut out = Vec::with_capacity(n_max);
    let mut e = 0u64;
    for &a in word {
        e += a as u64;
        out.push(e);
    }
    out
}

/// `e_{d(7)}(n)`, the maximum number of touching pairs among `n` circles of
/// diameter `d(7)`.
pub fn e_exact(n: usize) -> u64 {
    assert!(n >= 1, "n must be positive");
    e_exact_table(n)[n - 1]
}

/// `Δe(n) = e(n + 1) − e(n) = a_n`.
pub fn delta(n: usize) -> u8 {
    assert!(n >= 1, "n must be positive");
    DeltaWord::new().symbol(n)
}

/// `⌊7n/2 − √(5n²/4 + 15n − 4)⌋`, evaluated in exact integer arithmetic.
pub fn e_closed_upper(n: u64) -> i64 {
    assert!(n >= 1, "n must be positive");
    floor_half_diff(7 * n as i128, 5 * (n as i128).pow(2) + 60 * n as i128 - 16)
}

/// `⌊(a − √r)/2⌋` for integers `a` and `r ≥ 0`.
pub(crate) fn floor_half_diff(a: i128, r: i128) -> i64 {
    assert!(r >= 0, "negative radicand");
    let s = (r as u128).isqrt() as i128;
    let t = if s * s == r { a - s } else { a - s - 1 };
    t.div_euclid(2) as i64
}

/// Outcome of comparing the word against the closed form.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct Verification {
    pub checked: u64,
    pub first_mismatch: Option<u64>,
}

/// Checks `e_exact(n) = e_closed_upper(n)` for every `n ≤ n_max`, streaming.
pub fn verify_conjecture1(n_max: u64) -> Verification {
    let mut w = DeltaWord::new();
    let mut e = 0u64;
    for n in 1..=n_max {
        e += w.symbol((n - 1) as usize) as u64;
        if e as i64 != e_closed_upper(n) {
            return Verification { checked: n, first_mismatch: Some(n) };
        }
    }
    Verification { checked: n_max, first_mismatch: None }
}

/// Vertex and edge counts of the `k`-th complete layer of the spiral.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct Layer {
    pub k: u32,
    pub n: u64,
    pub e: u64,
}

/// `n = 7F_{2k+1} − 6`, `e = 7(3F_{2k+1} − F_{2k} − 3)`.
pub fn fibonacci_layers(k: u32) -> Layer {
    let (f2k, f2k1) = fib_pair(2 * k);
    Layer { k, n: 7 * f2k1 - 6, e: 7 * (3 * f2k1 - f2k - 3) }
}

/// `(F_m, F_{m+1})`.
fn fib_pair(m: u32) -> (u64, u64) {
    let (mut a, mut b) = (0u64, 1u64);
    for _ in 0..m {
        (a, b) = (b, a.checked_add(b).expect("Fibonacci overflow"));
    }
    (a, b)
}

/// Whether `(7n − 2e)² = 5(n + 6)² − 196`, the exact form of
/// `e = 7n/2 − √(5(n+6)² − 14²)/2`.
pub fn layer_identity_holds(l: &Layer) -> bool {
    let lhs = 7 * l.n as i128 - 2 * l.e as i128;
    lhs >= 0 && lhs * lhs == 5 * (l.n as i128 + 6).pow(2) - 196
}

/// CSV rows `n,e_exact,e_floor,delta` for `n = 1..=n_max`.
pub fn write_csv<W: std::io::Write>(out: W, n_max: usize) -> csv::Result<()> {
    let mut wtr = csv::Writer::from_writer(out);
    wtr.write_record(["n", "e_exact", "e_floor", "delta"])?;
    let mut w = DeltaWord::new();
    w.extend_to(n_max + 1);
    let mut e = 0u64;
    for n in 1..=n_max {
        e += w.symbol(n - 1) as u64;
        let a = w.symbol(n);
        wtr.write_record([n.to_string(), e.to_string(), e_closed_upper(n as u64).to_string(), a.to_string()])?;
    }
    wtr.flush()?;
    Ok(())
}
