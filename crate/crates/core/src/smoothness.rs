//! Rate constants and modulus-of-continuity estimation.

use alloc::collections::VecDeque;
use core::f64::consts::PI;

use crate::functions::FunctionSpec;
use crate::{Error, Result};

pub const DEFAULT_MODULUS_RESOLUTION: usize = 4096;

/// `9π⁴/64`.
pub fn first_moment_coeff() -> f64 {
    9.0 * libm::pow(PI, 4.0) / 64.0
}

/// `9π⁵/128`, the weight on `|f''(θ)|`.
pub fn second_derivative_coeff() -> f64 {
    9.0 * libm::pow(PI, 5.0) / 128.0
}

/// `9π⁵/64`, the weight on `M = sup |f''|`.
pub fn m_bound_coeff() -> f64 {
    9.0 * libm::pow(PI, 5.0) / 64.0
}

/// `c₂ = 48/π + (9π³/64)(4/π²)(π²/6) = 48/π + 3π³/32 ≈ 18.1857`.
pub fn c2_constant() -> f64 {
    48.0 / PI + 3.0 * libm::pow(PI, 3.0) / 32.0
}

/// `ε_n = n^{−1/3}`.
pub fn epsilon_n(n: usize) -> f64 {
    libm::cbrt(n as f64).recip()
}

/// `μ_n = (π/(2n) + n^{−1/3}) c₂ + (9π⁴/64) n^{−1/3}`.
pub fn mu_n(n: usize) -> f64 {
    let eps = epsilon_n(n);
    (PI / (2.0 * n as f64) + eps) * c2_constant() + first_moment_coeff() * eps
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct RateConstants {
    pub c2: f64,
    pub epsilon_n: f64,
    pub mu_n: f64,
    pub voronovskaja_coeff_d1: f64,
    pub voronovskaja_coeff_d2: f64,
    pub voronovskaja_const_coeff: f64,
}

impl RateConstants {
    pub fn for_n(n: usize) -> Self {
        let c2 = c2_constant();
        RateConstants {
            c2,
            epsilon_n: epsilon_n(n),
            mu_n: mu_n(n),
            voronovskaja_coeff_d1: first_moment_coeff() + c2,
            voronovskaja_coeff_d2: second_derivative_coeff(),
            voronovskaja_const_coeff: m_bound_coeff(),
        }
    }
}

/// Lower estimate of `ω(f, δ)`: the largest `|f(t_i) − f(t_j)|` over pairs of a
/// uniform `resolution + 1` point grid on `[0, π]` with `|t_i − t_j| ≤ δ`.
pub fn modulus_estimate(f: &FunctionSpec, delta: f64, resolution: usize) -> Result<f64> {
    if !(delta > 0.0) {
        return Err(Error::InvalidArgument("delta must be positive"));
    }
    if resolution < 64 {
        return Err(Error::InvalidArgument("resolution must be at least 64"));
    }
    let step = PI / resolution as f64;
    let mut values = alloc::vec::Vec::with_capacity(resolution + 1);
    for i in 0..=resolution {
        let t = if i == resolution { PI } else { step * i as f64 };
        let v = f.eval(t);
        if !v.is_finite() {
            return Err(Error::InvalidFunction { name: f.name, at: t });
        }
        values.push(v);
    }
    // pairs i < j with (j − i)·step ≤ δ
    let width = libm::floor(delta / step * (1.0 + 1e-12)) as usize;
    Ok(sliding_range_max(&values, width.min(resolution)))
}

/// `max_i (max − min)` of `values[i..=i + width]` with monotone deques.
fn sliding_range_max(values: &[f64], width: usize) -> f64 {
    let mut hi: VecDeque<usize> = VecDeque::new();
    let mut lo: VecDeque<usize> = VecDeque::new();
    let mut best = 0.0f64;
    for (j, &v) in values.iter().enumerate() {
        while hi.back().is_some_and(|&i| values[i] <= v) {
            hi.pop_back();
        }
        hi.push_back(j);
        while lo.back().is_some_and(|&i| values[i] >= v) {
            lo.pop_back();
        }
        lo.push_back(j);
        let start = j.saturating_sub(width);
        while hi.front().is_some_and(|&i| i < start) {
            hi.pop_front();
        }
        while lo.front().is_some_and(|&i| i < start) {
            lo.pop_front();
        }
        best = best.max(values[hi[0]] - values[lo[0]]);
    }
    best
}

/// `(9π⁴/64 + c₂)|f'(θ)| + (9π⁵/128)|f''(θ)| + (9π⁵/64) M`.
pub fn voronovskaja_bound(f: &FunctionSpec, theta: f64) -> Result<f64> {
    let (Some(d1), Some(d2), Some(m)) = (f.d1, f.d2, f.m_bound) else {
        return Err(Error::InsufficientSmoothness(f.name));
    };
    Ok((first_moment_coeff() + c2_constant()) * d1(theta).abs()
        + second_derivative_coeff() * d2(theta).abs()
        + m_bound_coeff() * m)
}
