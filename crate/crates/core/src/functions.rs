//! Registry of test functions on `[0, π]`.
//!
//! Each entry carries whatever analytic side information is known: first and
//! second derivatives, `M = sup |f''|`, `sup |f|`, and an upper bound for the
//! modulus of continuity `ω(f, δ)`.

use core::f64::consts::{FRAC_PI_2, PI};

use crate::{Error, Result};

pub type RealFn = fn(f64) -> f64;

#[derive(Clone, Copy, Debug)]
pub struct FunctionSpec {
    pub name: &'static str,
    pub eval: RealFn,
    pub d1: Option<RealFn>,
    pub d2: Option<RealFn>,
    /// Upper bound for `ω(f, δ)` on `[0, π]`.
    pub modulus: Option<RealFn>,
    /// `M = sup |f''|`.
    pub m_bound: Option<f64>,
    /// `sup |f|`.
    pub sup_abs: f64,
}

impl FunctionSpec {
    pub fn eval(&self, theta: f64) -> f64 {
        (self.eval)(theta)
    }

    pub fn has_second_order_data(&self) -> bool {
        self.d1.is_some() && self.d2.is_some() && self.m_bound.is_some()
    }
}

/// `sup |f'|` for `1/(1 + 25 cos² θ)`, rounded up.
const RUNGE_LIPSCHITZ: f64 = 3.2261;
/// `sup |f''|` for `1/(1 + 25 cos² θ)`, attained at `θ = π/2`.
const RUNGE_M: f64 = 50.0;

fn zero(_: f64) -> f64 {
    0.0
}

fn one(_: f64) -> f64 {
    1.0
}

fn runge(theta: f64) -> f64 {
    let c = libm::cos(theta);
    1.0 / (1.0 + 25.0 * c * c)
}

fn runge_d1(theta: f64) -> f64 {
    let (s, c) = (libm::sin(theta), libm::cos(theta));
    let g = 1.0 + 25.0 * c * c;
    50.0 * c * s / (g * g)
}

fn runge_d2(theta: f64) -> f64 {
    let (s, c) = (libm::sin(theta), libm::cos(theta));
    let g = 1.0 + 25.0 * c * c;
    50.0 * libm::cos(2.0 * theta) / (g * g) + 5000.0 * c * c * s * s / (g * g * g)
}

fn hat(theta: f64) -> f64 {
    1.0 - (theta - FRAC_PI_2).abs() / FRAC_PI_2
}

static REGISTRY: [FunctionSpec; 7] = [
    FunctionSpec {
        name: "const1",
        eval: one,
        d1: Some(zero),
        d2: Some(zero),
        modulus: Some(zero),
        m_bound: Some(0.0),
        sup_abs: 1.0,
    },
    FunctionSpec {
        name: "e0",
        eval: |t| t,
        d1: Some(one),
        d2: Some(zero),
        modulus: Some(|d| d.min(PI)),
        m_bound: Some(0.0),
        sup_abs: PI,
    },
    FunctionSpec {
        name: "cosine",
        eval: libm::cos,
        d1: Some(|t| -libm::sin(t)),
        d2: Some(|t| -libm::cos(t)),
        modulus: Some(|d| 2.0 * libm::sin(0.5 * d.min(PI))),
        m_bound: Some(1.0),
        sup_abs: 1.0,
    },
    FunctionSpec {
        name: "abs_cos",
        eval: |t| libm::cos(t).abs(),
        d1: None,
        d2: None,
        modulus: Some(|d| d.min(1.0)),
        m_bound: None,
        sup_abs: 1.0,
    },
    FunctionSpec {
        name: "runge_cos",
        eval: runge,
        d1: Some(runge_d1),
        d2: Some(runge_d2),
        modulus: Some(|d| (RUNGE_LIPSCHITZ * d).min(25.0 / 26.0)),
        m_bound: Some(RUNGE_M),
        sup_abs: 1.0,
    },
    FunctionSpec {
        name: "hat",
        eval: hat,
        d1: None,
        d2: None,
        modulus: Some(|d| d.min(FRAC_PI_2) / FRAC_PI_2),
        m_bound: None,
        sup_abs: 1.0,
    },
    FunctionSpec {
        name: "sin3",
        eval: |t| libm::sin(3.0 * t),
        d1: Some(|t| 3.0 * libm::cos(3.0 * t)),
        d2: Some(|t| -9.0 * libm::sin(3.0 * t)),
        modulus: Some(|d| (3.0 * d).min(2.0)),
        m_bound: Some(9.0),
        sup_abs: 1.0,
    },
];

pub fn registry() -> &'static [FunctionSpec] {
    &REGISTRY
}

pub fn get_function(name: &str) -> Result<&'static FunctionSpec> {
    REGISTRY.iter().find(|f| f.name == name).ok_or_else(|| Error::NotFound(alloc::string::String::from(name)))
}
