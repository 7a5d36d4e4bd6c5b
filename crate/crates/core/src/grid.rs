//! Node families in angle space.
//!
//! A grid stores the angles `η_1 < … < η_n` in `[0, π]`; the interpolation
//! nodes are `cos η_k`. Arrays are 0-based: `angles[k - 1]` is `η_k`.

use alloc::vec::Vec;
use core::f64::consts::PI;

use crate::{Error, Result};

#[derive(Clone, Debug, PartialEq)]
pub enum Family {
    Chebyshev,
    /// Every Chebyshev angle moved by the same amount: `η_k = θ_k − θ₀`.
    Perturbed {
        theta0: f64,
    },
    /// `η_k = θ_k + s_k` with strictly increasing `s_k`.
    PerNodeShift {
        shifts: Vec<f64>,
    },
}

#[derive(Clone, Debug, PartialEq)]
pub struct AngleGrid {
    angles: Vec<f64>,
    family: Family,
}

/// `θ_k = (2k − 1)π / (2n)` for `k = 1..=n`.
#[inline]
pub fn chebyshev_angle(n: usize, k: usize) -> f64 {
    ((2 * k - 1) as f64) * PI / ((2 * n) as f64)
}

/// Half the Chebyshev spacing, `π/(2n)`.
#[inline]
pub fn half_spacing(n: usize) -> f64 {
    PI / ((2 * n) as f64)
}

impl AngleGrid {
    pub fn n(&self) -> usize {
        self.angles.len()
    }

    pub fn angles(&self) -> &[f64] {
        &self.angles
    }

    pub fn family(&self) -> &Family {
        &self.family
    }

    /// Common shift `θ₀` for Chebyshev (zero) and perturbed grids.
    pub fn theta0(&self) -> Option<f64> {
        match self.family {
            Family::Chebyshev => Some(0.0),
            Family::Perturbed { theta0 } => Some(theta0),
            Family::PerNodeShift { .. } => None,
        }
    }

    pub fn shifts(&self) -> Option<&[f64]> {
        match &self.family {
            Family::PerNodeShift { shifts } => Some(shifts),
            _ => None,
        }
    }

    pub fn cosines(&self) -> Vec<f64> {
        self.angles.iter().map(|&a| libm::cos(a)).collect()
    }
}

pub fn chebyshev_angles(n: usize) -> Result<AngleGrid> {
    if n == 0 {
        return Err(Error::InvalidArgument("grid needs at least one node"));
    }
    Ok(AngleGrid { angles: (1..=n).map(|k| chebyshev_angle(n, k)).collect(), family: Family::Chebyshev })
}

/// Chebyshev angles shifted by `−θ₀`, `|θ₀| < π/(2n)`.
///
/// A zero shift returns the Chebyshev grid itself.
pub fn perturbed_angles(n: usize, theta0: f64) -> Result<AngleGrid> {
    if n == 0 {
        return Err(Error::InvalidArgument("grid needs at least one node"));
    }
    if !theta0.is_finite() || theta0.abs() >= half_spacing(n) {
        return Err(Error::OutOfRangeShift { n, theta0 });
    }
    if theta0 == 0.0 {
        return chebyshev_angles(n);
    }
    Ok(AngleGrid {
        angles: (1..=n).map(|k| chebyshev_angle(n, k) - theta0).collect(),
        family: Family::Perturbed { theta0 },
    })
}

/// Equidistant angles `η_i`, `i = 0..n−1`, with spacing `π/n − β` and first
/// angle `η_0 ≤ π/n`, moved to `η_i + iβ = η_0 + iπ/n`.
///
/// The result is a perturbed Chebyshev grid with `θ₀ = π/(2n) − η_0`. The
/// endpoints `η_0 = 0` and `η_0 = π/n` are admitted; they give `θ₀ = ±π/(2n)`
/// and put a node at `θ = 0` or `θ = π`.
pub fn equidistant_shifted_angles(n: usize, eta0: f64, beta: f64) -> Result<AngleGrid> {
    if n < 2 {
        return Err(Error::InvalidConstruction("equidistant construction needs n >= 2"));
    }
    let step = PI / n as f64;
    if !(0.0..=step).contains(&eta0) {
        return Err(Error::InvalidConstruction("eta0 must lie in [0, pi/n]"));
    }
    if !(0.0..step).contains(&beta) {
        return Err(Error::InvalidConstruction("beta must lie in [0, pi/n)"));
    }
    let theta0 = half_spacing(n) - eta0;
    let angles = (0..n).map(|i| eta0 + (i as f64) * step).collect();
    let family = if theta0 == 0.0 { Family::Chebyshev } else { Family::Perturbed { theta0 } };
    Ok(AngleGrid { angles, family })
}

pub fn per_node_shift_angles(n: usize, shifts: &[f64]) -> Result<AngleGrid> {
    if n == 0 {
        return Err(Error::InvalidArgument("grid needs at least one node"));
    }
    if shifts.len() != n {
        return Err(Error::InvalidShifts("expected exactly one shift per node"));
    }
    let bound = half_spacing(n);
    if shifts.iter().any(|s| !s.is_finite() || s.abs() >= bound) {
        return Err(Error::InvalidShifts("every shift must lie in (-pi/2n, pi/2n)"));
    }
    if shifts.windows(2).any(|w| w[0] >= w[1]) {
        return Err(Error::InvalidShifts("shifts must be strictly increasing"));
    }
    Ok(AngleGrid {
        angles: shifts.iter().enumerate().map(|(i, s)| chebyshev_angle(n, i + 1) + s).collect(),
        family: Family::PerNodeShift { shifts: shifts.to_vec() },
    })
}

/// `Σ_{i=1}^{m} |(b − a)/m − (p_i − p_{i−1})|` with `m = points.len() − 1`.
///
/// No endpoints are added: the sum runs over the gaps of `points` exactly as
/// given.
pub fn uniform_spacing_deviation(points: &[f64], interval: (f64, f64)) -> Result<f64> {
    let (a, b) = interval;
    if points.len() < 2 {
        return Err(Error::InvalidArgument("need at least two points"));
    }
    if !(a < b) {
        return Err(Error::InvalidArgument("interval must satisfy a < b"));
    }
    if points.windows(2).any(|w| !(w[0] <= w[1])) {
        return Err(Error::InvalidArgument("points must be sorted ascending"));
    }
    if points[0] < a || points[points.len() - 1] > b {
        return Err(Error::InvalidArgument("points must lie inside the interval"));
    }
    let m = (points.len() - 1) as f64;
    let uniform = (b - a) / m;
    Ok(crate::numeric::compensated_sum(points.windows(2).map(|w| (uniform - (w[1] - w[0])).abs())))
}
