//! Fundamental functions of Lagrange interpolation in angle form.
//!
//! Two families live here:
//!
//! * closed trigonometric forms `(−1)^{k+1} cos(n(θ + φ)) sin η_k / (n(cos θ − cos η_k))`,
//!   which cover the Chebyshev basis `P_k`, the shifted form `l_k` and the
//!   per-node form `P̃_k`;
//! * [`NodalBasis`], the fundamental polynomials of an arbitrary node set
//!   `cos η_1, …, cos η_n` in product form.
//!
//! For the Chebyshev grid the two agree. For a shifted grid the closed form is
//! not a polynomial in `cos θ` (the factor `cos(n(θ + θ₀))` carries a
//! `sin(nθ)` component), so it vanishes at the other nodes without summing to
//! one and has genuine poles at `θ = −η_k (mod 2π)`.

use alloc::vec::Vec;
use core::f64::consts::PI;

use crate::grid::{chebyshev_angle, half_spacing, AngleGrid};
use crate::numeric::ScaledProduct;
use crate::{Error, Result};

/// The limit branch is taken when `|sin((θ ∓ η_k)/2)|` drops below this.
pub const SINGULAR_THRESHOLD: f64 = 1e-9;

/// Smallest admissible denominator sine in [`s_factor`].
pub const S_FACTOR_MIN_DENOMINATOR: f64 = 1e-14;

/// Below this half-angle sine the product-form basis recomputes the sine
/// directly instead of through the angle-addition formula.
const ADDITION_FORMULA_CUTOFF: f64 = 1.0 / 16.0;

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct BasisValue {
    pub value: f64,
    /// The removable-singularity limit was used.
    pub near_singular: bool,
}

impl BasisValue {
    fn regular(value: f64) -> Self {
        BasisValue { value, near_singular: false }
    }

    fn limit(value: f64) -> Self {
        BasisValue { value, near_singular: true }
    }
}

/// `cos a − cos b` as `−2 sin((a+b)/2) sin((a−b)/2)`.
#[inline]
pub fn stable_cos_diff(a: f64, b: f64) -> f64 {
    -2.0 * libm::sin(0.5 * (a + b)) * libm::sin(0.5 * (a - b))
}

/// `(−1)^{k+1}`.
#[inline]
fn alternating(k: usize) -> f64 {
    if k % 2 == 1 {
        1.0
    } else {
        -1.0
    }
}

/// `(−1)^{k+1} cos(n(θ + phase)) sin(node) / (n (cos θ − cos node))`.
fn closed_form(n: usize, k: usize, theta: f64, node: f64, phase: f64) -> Result<BasisValue> {
    let nf = n as f64;
    let sign = alternating(k);
    let s_minus = libm::sin(0.5 * (theta - node));
    let s_plus = libm::sin(0.5 * (theta + node));
    if s_minus.abs() >= SINGULAR_THRESHOLD && s_plus.abs() >= SINGULAR_THRESHOLD {
        let numerator = sign * libm::cos(nf * (theta + phase)) * libm::sin(node);
        return Ok(BasisValue::regular(numerator / (nf * -2.0 * s_plus * s_minus)));
    }

    // cos θ = cos η_k: removable only if cos(n(θ + phase)) vanishes as well.
    let sin_node = libm::sin(node);
    if sin_node.abs() < SINGULAR_THRESHOLD {
        return Ok(BasisValue::limit(0.0));
    }
    if libm::cos(nf * (theta + phase)).abs() > nf * 1e-8 {
        return Err(Error::SingularEvaluation { theta });
    }
    let value = sign * libm::sin(nf * (theta + phase)) * sin_node / libm::sin(theta);
    Ok(BasisValue::limit(value))
}

fn check_index(n: usize, k: usize) -> Result<()> {
    if n == 0 {
        return Err(Error::InvalidArgument("n must be positive"));
    }
    if k == 0 || k > n {
        return Err(Error::InvalidArgument("basis index k must lie in 1..=n"));
    }
    Ok(())
}

fn check_shift(n: usize, theta0: f64) -> Result<()> {
    if !theta0.is_finite() || theta0.abs() >= half_spacing(n) {
        return Err(Error::OutOfRangeShift { n, theta0 });
    }
    Ok(())
}

/// Chebyshev fundamental polynomial `P_k(θ)`, defined for every real `θ`.
pub fn cheb_fundamental(n: usize, k: usize, theta: f64) -> Result<BasisValue> {
    check_index(n, k)?;
    closed_form(n, k, theta, chebyshev_angle(n, k), 0.0)
}

/// `S_k(θ) = sin θ̃_k · sin((θ + θ_k + θ₀)/2) / (sin θ_k · sin((θ + θ_k − θ₀)/2))`.
pub fn s_factor(n: usize, k: usize, theta: f64, theta0: f64) -> Result<BasisValue> {
    check_index(n, k)?;
    check_shift(n, theta0)?;
    let tk = chebyshev_angle(n, k);
    let denominator = libm::sin(tk) * libm::sin(0.5 * (theta + tk - theta0));
    if denominator.abs() < S_FACTOR_MIN_DENOMINATOR {
        return Err(Error::SingularEvaluation { theta });
    }
    let numerator = libm::sin(tk - theta0) * libm::sin(0.5 * (theta + tk + theta0));
    Ok(BasisValue::regular(numerator / denominator))
}

/// Closed form `l_k(θ) = (−1)^{k+1} cos(n(θ + θ₀)) sin θ̃_k / (n(cos θ − cos θ̃_k))`
/// with `θ̃_k = θ_k − θ₀`.
///
/// Returns [`Error::SingularEvaluation`] at the poles `θ = −θ̃_k (mod 2π)`,
/// which exist whenever `θ₀ ≠ 0`.
pub fn perturbed_fundamental(n: usize, k: usize, theta: f64, theta0: f64) -> Result<BasisValue> {
    check_index(n, k)?;
    check_shift(n, theta0)?;
    closed_form(n, k, theta, chebyshev_angle(n, k) - theta0, theta0)
}

/// Per-node form `P̃_k(θ) = (−1)^{k+1} cos(n(θ − s_k)) sin η_k / (n(cos θ − cos η_k))`
/// with `η_k = θ_k + s_k`.
///
/// The phase `θ − s_k` puts a zero of the cosine factor at `η_k`, so the node
/// itself is a removable point with value 1, and equal shifts `s` reproduce
/// [`perturbed_fundamental`] with `θ₀ = −s`.
pub fn generalized_fundamental(n: usize, k: usize, theta: f64, shifts: &[f64]) -> Result<BasisValue> {
    check_index(n, k)?;
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
    generalized_unchecked(n, k, theta, shifts[k - 1])
}

pub(crate) fn generalized_unchecked(n: usize, k: usize, theta: f64, shift: f64) -> Result<BasisValue> {
    closed_form(n, k, theta, chebyshev_angle(n, k) + shift, -shift)
}

pub(crate) fn perturbed_unchecked(n: usize, k: usize, theta: f64, theta0: f64) -> Result<BasisValue> {
    closed_form(n, k, theta, chebyshev_angle(n, k) - theta0, theta0)
}

/// Fundamental polynomials of Lagrange interpolation at `cos η_1, …, cos η_n`,
/// evaluated as functions of `θ` (with `x = cos θ`).
///
/// `l_k(θ) = Π_{j≠k} (cos θ − cos η_j) / Π_{j≠k} (cos η_k − cos η_j)`, every
/// difference taken in half-angle product form. All `n` values at one `θ` cost
/// `O(n)` after an `O(n²)` setup.
#[derive(Clone, Debug)]
pub struct NodalBasis {
    angles: Vec<f64>,
    half_sin: Vec<f64>,
    half_cos: Vec<f64>,
    denominator_mantissa: Vec<f64>,
    denominator_exponent: Vec<i32>,
}

impl NodalBasis {
    /// `angles` must be strictly increasing inside `[0, π]`.
    pub fn new(angles: &[f64]) -> Result<Self> {
        if angles.is_empty() {
            return Err(Error::InvalidArgument("need at least one node"));
        }
        if angles.iter().any(|a| !(0.0..=PI).contains(a)) {
            return Err(Error::InvalidArgument("node angles must lie in [0, pi]"));
        }
        if angles.windows(2).any(|w| w[0] >= w[1]) {
            return Err(Error::InvalidArgument("node angles must be strictly increasing"));
        }
        let n = angles.len();
        let mut products = alloc::vec![ScaledProduct::one(); n];
        for k in 0..n {
            for j in (k + 1)..n {
                let d = 2.0 * stable_cos_diff(angles[k], angles[j]);
                products[k].mul(d);
                products[j].mul(-d);
            }
        }
        let (denominator_mantissa, denominator_exponent) = products.into_iter().map(ScaledProduct::parts).unzip();
        Ok(NodalBasis {
            angles: angles.to_vec(),
            half_sin: angles.iter().map(|&a| libm::sin(0.5 * a)).collect(),
            half_cos: angles.iter().map(|&a| libm::cos(0.5 * a)).collect(),
            denominator_mantissa,
            denominator_exponent,
        })
    }

    pub fn from_grid(grid: &AngleGrid) -> Self {
        // grid invariants already guarantee strictly increasing angles in [0, π]
        Self::new(grid.angles()).expect("AngleGrid angles are valid nodes")
    }

    pub fn len(&self) -> usize {
        self.angles.len()
    }

    pub fn is_empty(&self) -> bool {
        self.angles.is_empty()
    }

    pub fn angles(&self) -> &[f64] {
        &self.angles
    }

    /// `(sin((θ+η_j)/2), sin((θ−η_j)/2))`.
    #[inline]
    fn half_sines(&self, j: usize, theta: f64, st: f64, ct: f64) -> (f64, f64) {
        let (sj, cj) = (self.half_sin[j], self.half_cos[j]);
        let mut plus = st * cj + ct * sj;
        let mut minus = st * cj - ct * sj;
        if plus.abs() < ADDITION_FORMULA_CUTOFF {
            plus = libm::sin(0.5 * (theta + self.angles[j]));
        }
        if minus.abs() < ADDITION_FORMULA_CUTOFF {
            minus = libm::sin(0.5 * (theta - self.angles[j]));
        }
        (plus, minus)
    }

    /// Writes `l_1(θ), …, l_n(θ)` into `out`. Returns whether any node was
    /// within the singular threshold of `θ`.
    pub fn fundamentals_into(&self, theta: f64, out: &mut [f64]) -> bool {
        let n = self.len();
        assert_eq!(out.len(), n, "output buffer must hold one value per node");
        let (st, ct) = (libm::sin(0.5 * theta), libm::cos(0.5 * theta));

        // pass 1: differences 2(cos θ − cos η_j) and their full product
        let mut omega = ScaledProduct::one();
        let mut singular: Vec<usize> = Vec::new();
        for (j, slot) in out.iter_mut().enumerate() {
            let (plus, minus) = self.half_sines(j, theta, st, ct);
            let d = -4.0 * plus * minus;
            if plus.abs() < SINGULAR_THRESHOLD || minus.abs() < SINGULAR_THRESHOLD {
                singular.push(j);
            }
            *slot = d;
            omega.mul(d);
        }

        // pass 2: products that skip a vanishing factor
        let direct: Vec<(usize, f64)> = singular
            .iter()
            .map(|&k| {
                let mut p = ScaledProduct::one();
                for (j, &d) in out.iter().enumerate() {
                    if j != k {
                        p.mul(d);
                    }
                }
                let (m, e) = p.parts();
                (k, libm::scalbn(m / self.denominator_mantissa[k], e - self.denominator_exponent[k]))
            })
            .collect();

        // pass 3: l_k = ω / d_k / D_k
        let (om, oe) = omega.parts();
        for (k, slot) in out.iter_mut().enumerate() {
            let d = *slot;
            *slot = if d == 0.0 {
                0.0
            } else {
                libm::scalbn(om / d / self.denominator_mantissa[k], oe - self.denominator_exponent[k])
            };
        }
        for (k, v) in &direct {
            out[*k] = *v;
        }
        !direct.is_empty()
    }

    /// Single fundamental polynomial `l_k(θ)`, `k` 1-based.
    pub fn fundamental(&self, k: usize, theta: f64) -> Result<BasisValue> {
        check_index(self.len(), k)?;
        let (st, ct) = (libm::sin(0.5 * theta), libm::cos(0.5 * theta));
        let mut p = ScaledProduct::one();
        let mut near = false;
        for j in 0..self.len() {
            let (plus, minus) = self.half_sines(j, theta, st, ct);
            if j + 1 == k {
                near = plus.abs() < SINGULAR_THRESHOLD || minus.abs() < SINGULAR_THRESHOLD;
                continue;
            }
            p.mul(-4.0 * plus * minus);
        }
        let (m, e) = p.parts();
        let value = libm::scalbn(m / self.denominator_mantissa[k - 1], e - self.denominator_exponent[k - 1]);
        Ok(BasisValue { value, near_singular: near })
    }
}
