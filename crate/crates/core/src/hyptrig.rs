//! Hyperbolic trigonometry of regular polygons with side length `d`
//! in the plane of curvature −1.
//!
//! The equilateral-triangle angle satisfies `sin(α/2) = 1 / (2 cosh(d/2))`,
//! equivalently `cos α = tanh(d/2) / tanh d`. More generally a regular
//! `m`-gon of side `d` has angle `α_m` with `sin(α_m/2) = cos(π/m) / cosh(d/2)`.

use std::f64::consts::PI;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::roots::bisect;

/// A positive, finite hyperbolic length.
#[derive(Debug, Clone, Copy, PartialEq, PartialOrd, Serialize, Deserialize)]
#[serde(try_from = "f64", into = "f64")]
pub struct Dist(f64);

impl Dist {
    pub fn new(d: f64) -> Result<Self> {
        if d.is_finite() && d > 0.0 {
            Ok(Dist(d))
        } else {
            Err(Error::domain(format!("distance must be positive and finite, got {d}")))
        }
    }

    #[inline]
    pub fn value(self) -> f64 {
        self.0
    }
}

impl TryFrom<f64> for Dist {
    type Error = Error;
    fn try_from(d: f64) -> Result<Self> {
        Dist::new(d)
    }
}

impl From<Dist> for f64 {
    fn from(d: Dist) -> f64 {
        d.0
    }
}

impl std::fmt::Display for Dist {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        self.0.fmt(f)
    }
}

/// The angles and triangle area attached to one side length.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct AngleSet {
    pub alpha: f64,
    pub alpha4: f64,
    pub area3: f64,
}

impl AngleSet {
    pub fn at(d: Dist) -> Self {
        let alpha = alpha_of_d(d);
        AngleSet {
            alpha,
            alpha4: alpha_m_unchecked(4, d.value()),
            area3: PI - 3.0 * alpha,
        }
    }
}

/// Angle of the equilateral triangle with side `d`.
pub fn alpha_of_d(d: Dist) -> f64 {
    alpha_raw(d.value())
}

#[inline]
pub(crate) fn alpha_raw(d: f64) -> f64 {
    2.0 * (0.5 / (0.5 * d).cosh()).asin()
}

/// The same angle through `cos α = tanh(d/2)/tanh d`; kept as an independent route.
pub fn alpha_of_d_via_tanh(d: Dist) -> f64 {
    let d = d.value();
    ((0.5 * d).tanh() / d.tanh()).clamp(-1.0, 1.0).acos()
}

/// Angle of the regular `m`-gon with side `d`.
pub fn alpha_m_of_d(m: u32, d: Dist) -> Result<f64> {
    if m < 3 {
        return Err(Error::domain(format!("polygon needs at least 3 vertices, got {m}")));
    }
    Ok(alpha_m_unchecked(m, d.value()))
}

#[inline]
pub(crate) fn alpha_m_unchecked(m: u32, d: f64) -> f64 {
    2.0 * ((PI / m as f64).cos() / (0.5 * d).cosh()).asin()
}

const BRACKET_LO: f64 = 1e-9;
const BRACKET_HI: f64 = 32.0;
const ROOT_FTOL: f64 = 1e-13;

/// Solves `g(d) = 0` for a function that is strictly decreasing in `d`,
/// starting from the bracket `(1e-9, 32)` and doubling the upper end until
/// the sign changes.
fn solve_decreasing<F: Fn(f64) -> f64>(g: F) -> Result<Dist> {
    let lo = BRACKET_LO;
    let mut hi = BRACKET_HI;
    if g(lo) < 0.0 {
        return Err(Error::domain("target not reachable: value already below target at d -> 0"));
    }
    while g(hi) > 0.0 {
        hi *= 2.0;
        if hi > 1e6 {
            return Err(Error::domain("target not reachable for any finite d"));
        }
    }
    Dist::new(bisect(g, lo, hi, ROOT_FTOL)?)
}

/// Inverse of [`alpha_of_d`] on `0 < α < π/3`.
pub fn d_of_alpha(alpha: f64) -> Result<Dist> {
    if !(alpha > 0.0 && alpha < PI / 3.0) {
        return Err(Error::domain(format!("triangle angle must lie in (0, pi/3), got {alpha}")));
    }
    // Closed form from sin(α/2) = 1/(2 cosh(d/2)) seeds a tight bracket.
    let guess = 2.0 * (0.5 / (0.5 * alpha).sin()).acosh();
    let g = |d: f64| alpha_raw(d) - alpha;
    let lo = guess * (1.0 - 1e-9);
    let hi = guess * (1.0 + 1e-9);
    if g(lo) >= 0.0 && g(hi) <= 0.0 {
        return Dist::new(bisect(g, lo, hi, ROOT_FTOL)?);
    }
    solve_decreasing(g)
}

/// Edge length of the order-`k` triangular tiling, `α(d(k)) = 2π/k`.
pub fn d_k(k: u32) -> Result<Dist> {
    if k < 7 {
        return Err(Error::domain(format!("order-k triangular tiling is hyperbolic only for k >= 7, got {k}")));
    }
    d_of_alpha(2.0 * PI / k as f64)
}

/// Edge length of the semiregular tiling with `k − 1` triangles and one
/// square at each vertex: `α_4(d) + (k − 1) α(d) = 2π`.
pub fn dbar_k(k: u32) -> Result<Dist> {
    if k < 6 {
        return Err(Error::domain(format!("dbar(k) is defined for k >= 6, got {k}")));
    }
    let km1 = (k - 1) as f64;
    solve_decreasing(|d| alpha_m_unchecked(4, d) + km1 * alpha_raw(d) - 2.0 * PI)
}

/// Area `π − 3α` of the equilateral triangle with side `d`.
pub fn triangle_area(d: Dist) -> f64 {
    PI - 3.0 * alpha_of_d(d)
}
