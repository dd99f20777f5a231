//! Bounds for `c(d) = lim e_d(n)/n`.
//!
//! With `r = π/α`:
//!
//! - `γ1 = r − √((r−1)(r−3))`, valid for every `d`;
//! - `γ2 = r − 1/8 − √(r² − 17r/4 + 241/64)` and
//!   `γ3 = 2 + 3(d − A)/(4(d + A))` with `A = π − 3α`, valid at `d = d̄(k)`;
//! - `γ4 = r − 1/6 − √(r² − 13r/3 + 145/36)` and
//!   `γ5 = 8/3 − 4A/(3(d + A))`, valid when `d` is neither a `d(k)` nor a `d̄(k)`;
//! - `γ6 = 2 + 1/(4q − 14)` with `q = 2 + ⌊(2π − α4)/α⌋`, a lower bound.

use std::f64::consts::PI;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::hyptrig::{d_k, dbar_k, AngleSet, Dist};
use crate::roots::scan_and_bisect;
use crate::sequence::floor_half_diff;

/// Distance within which `d` is treated as equal to `d(k)` or `d̄(k)`.
pub const FLAG_TOL: f64 = 1e-9;

fn ratio(a: &AngleSet) -> f64 {
    PI / a.alpha
}

pub fn gamma1(d: Dist) -> f64 {
    let r = ratio(&AngleSet::at(d));
    // r − √((r−1)(r−3)), rationalized against cancellation at large r.
    (4.0 * r - 3.0) / (r + ((r - 1.0) * (r - 3.0)).sqrt())
}

pub fn gamma2(d: Dist) -> f64 {
    let r = ratio(&AngleSet::at(d));
    (4.0 * r - 3.75) / (r - 0.125 + (r * r - 17.0 * r / 4.0 + 241.0 / 64.0).sqrt())
}

pub fn gamma3(d: Dist) -> f64 {
    let a = AngleSet::at(d).area3;
    let d = d.value();
    2.0 + 3.0 * (d - a) / (4.0 * (d + a))
}

pub fn gamma4(d: Dist) -> f64 {
    let r = ratio(&AngleSet::at(d));
    (4.0 * r - 4.0) / (r - 1.0 / 6.0 + (r * r - 13.0 * r / 3.0 + 145.0 / 36.0).sqrt())
}

pub fn gamma5(d: Dist) -> f64 {
    let a = AngleSet::at(d).area3;
    8.0 / 3.0 - 4.0 * a / (3.0 * (d.value() + a))
}

/// `q = 2 + ⌊(2π − α4)/α⌋`, the largest fan size used by the construction.
pub fn q_of_d(d: Dist) -> u32 {
    let a = AngleSet::at(d);
    2 + ((2.0 * PI - a.alpha4) / a.alpha).floor() as u32
}

pub fn gamma6(d: Dist) -> f64 {
    2.0 + 1.0 / (4.0 * q_of_d(d) as f64 - 14.0)
}

/// The finite-`n` upper bound
/// `r·n − √((r−1)(r−3)n² + 6(r−1)n − 2r + 3)`.
pub fn finite_upper(d: Dist, n: u64) -> f64 {
    let r = ratio(&AngleSet::at(d));
    let n = n as f64;
    r * n - ((r - 1.0) * (r - 3.0) * n * n + 6.0 * (r - 1.0) * n - 2.0 * r + 3.0).sqrt()
}

/// `⌊finite_upper(d(k), n)⌋` in exact integer arithmetic, where `π/α = k/2`.
///
/// This is the conjectured exact value of `e_{d(k)}(n)`.
pub fn conjectured_e_dk(k: u32, n: u64) -> Result<i64> {
    if k < 7 {
        return Err(Error::domain(format!("d(k) needs k >= 7, got {k}")));
    }
    if n == 0 {
        return Err(Error::domain("n must be positive"));
    }
    let (k, n) = (k as i128, n as i128);
    let r = (k - 2) * (k - 6) * n * n + 12 * (k - 2) * n - 4 * k + 12;
    Ok(floor_half_diff(k * n, r))
}

/// The finite bound at `d(7)`, floored exactly.
pub fn e7_upper(n: u64) -> i64 {
    conjectured_e_dk(7, n).expect("k = 7 and n >= 1")
}

/// `Some(k)` if `d = d(k)` for some `k ≥ 7`.
pub fn dk_flag(d: Dist) -> Option<u32> {
    let a = AngleSet::at(d);
    let k = (2.0 * PI / a.alpha).round();
    if !(7.0..=1e6).contains(&k) {
        return None;
    }
    let dk = d_k(k as u32).ok()?;
    ((dk.value() - d.value()).abs() <= FLAG_TOL).then_some(k as u32)
}

/// `Some(k)` if `d = d̄(k)` for some `k ≥ 6`.
pub fn dbark_flag(d: Dist) -> Option<u32> {
    let a = AngleSet::at(d);
    let k = (1.0 + (2.0 * PI - a.alpha4) / a.alpha).round();
    if !(6.0..=1e6).contains(&k) {
        return None;
    }
    let dbk = dbar_k(k as u32).ok()?;
    ((dbk.value() - d.value()).abs() <= FLAG_TOL).then_some(k as u32)
}

#[derive(Debug, Clone, Copy, Serialize)]
pub struct BoundProfile {
    pub d: f64,
    pub alpha: f64,
    pub alpha4: f64,
    pub gamma: [f64; 6],
    pub is_dk: Option<u32>,
    pub is_dbark: Option<u32>,
    /// Minimum of the upper bounds that apply at `d`.
    pub upper_env: f64,
    /// The lower bound `γ6`.
    pub lower: f64,
}

impl BoundProfile {
    /// Which of `γ1..γ5` enter the upper envelope (index 0..5).
    pub fn applicable(&self) -> [bool; 5] {
        let at_dbar = self.is_dbark.is_some();
        let generic = self.is_dk.is_none() && !at_dbar;
        [true, at_dbar, at_dbar, generic, generic]
    }
}

pub fn profile(d: Dist) -> BoundProfile {
    let a = AngleSet::at(d);
    let gamma = [gamma1(d), gamma2(d), gamma3(d), gamma4(d), gamma5(d), gamma6(d)];
    let mut p = BoundProfile {
        d: d.value(),
        alpha: a.alpha,
        alpha4: a.alpha4,
        gamma,
        is_dk: dk_flag(d),
        is_dbark: dbark_flag(d),
        upper_env: f64::INFINITY,
        lower: gamma[5],
    };
    p.upper_env = p
        .applicable()
        .iter()
        .zip(gamma.iter())
        .filter(|(on, _)| **on)
        .map(|(_, g)| *g)
        .fold(f64::INFINITY, f64::min);
    p
}

/// `steps` evenly spaced profiles on `[d_min, d_max]`. A grid point that falls
/// within the flag tolerance of some `d(k)` or `d̄(k)` is nudged off it, so
/// grid rows always describe generic distances.
pub fn envelope_grid(d_min: f64, d_max: f64, steps: usize) -> Result<Vec<BoundProfile>> {
    if !(d_min > 0.0 && d_max > d_min && d_max.is_finite()) || steps < 2 {
        return Err(Error::domain(format!("need 0 < d_min < d_max and steps >= 2, got [{d_min}, {d_max}] x {steps}")));
    }
    let h = (d_max - d_min) / (steps - 1) as f64;
    (0..steps)
        .map(|i| {
            let mut d = Dist::new(d_min + h * i as f64)?;
            let mut nudge = 0;
            while dk_flag(d).is_some() || dbark_flag(d).is_some() {
                nudge += 1;
                d = Dist::new(d.value() + 10.0 * FLAG_TOL * nudge as f64)?;
            }
            Ok(profile(d))
        })
        .collect()
}

/// Special distances `d(k)` and `d̄(k)` inside `[d_min, d_max]`.
pub fn markers(d_min: f64, d_max: f64) -> Result<Vec<BoundProfile>> {
    let mut out = Vec::new();
    for k in 6u32.. {
        let b = dbar_k(k)?;
        if k >= 7 {
            let dk = d_k(k)?;
            if dk.value() >= d_min && dk.value() <= d_max {
                out.push(profile(dk));
            }
        }
        if b.value() > d_max {
            break;
        }
        if b.value() >= d_min {
            out.push(profile(b));
        }
    }
    Ok(out)
}

/// Threshold distances marking where the bounds cross notable values.
#[derive(Debug, Clone, Copy, Serialize)]
pub struct Thresholds {
    /// `γ4(d) = γ5(d)`.
    pub d_45_cross: f64,
    /// `γ5(d) = 3 − 1/φ`: beyond it the generic upper bound drops below `c(d(7))`.
    pub d_conj3: f64,
    /// `d̄(6)`, the one distance where the generic argument does not apply.
    pub d_excluded: f64,
}

pub fn golden_ratio() -> f64 {
    (1.0 + 5f64.sqrt()) / 2.0
}

pub fn thresholds() -> Result<Thresholds> {
    let g = |f: fn(Dist) -> f64| move |d: f64| f(Dist::new(d).expect("scan stays positive"));
    let (g4, g5) = (g(gamma4), g(gamma5));
    let target = 3.0 - 1.0 / golden_ratio();
    let d_45_cross = scan_and_bisect(|d| g4(d) - g5(d), 0.1, 3.0, 290, 1e-15)?;
    let d_conj3 = scan_and_bisect(|d| g5(d) - target, 0.1, 3.0, 290, 1e-15)?;
    Ok(Thresholds { d_45_cross, d_conj3, d_excluded: dbar_k(6)?.value() })
}

/// CSV with columns `d,gamma1,…,gamma6,is_dk,is_dbark,upper_env`.
pub fn write_csv<W: std::io::Write>(out: W, rows: &[BoundProfile]) -> csv::Result<()> {
    let mut wtr = csv::Writer::from_writer(out);
    wtr.write_record([
        "d", "gamma1", "gamma2", "gamma3", "gamma4", "gamma5", "gamma6", "is_dk", "is_dbark", "upper_env",
    ])?;
    let f = |x: f64| format!("{x:.17e}");
    let flag = |k: Option<u32>| k.map(|k| k.to_string()).unwrap_or_default();
    for r in rows {
        let mut rec: Vec<String> = vec![f(r.d)];
        rec.extend(r.gamma.iter().map(|&g| f(g)));
        rec.push(flag(r.is_dk));
        rec.push(flag(r.is_dbark));
        rec.push(f(r.upper_env));
        wtr.write_record(&rec)?;
    }
    wtr.flush()?;
    Ok(())
}
