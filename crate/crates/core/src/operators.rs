//! Lagrange, Gruenwald and generalized Gruenwald operators.
//!
//! An [`Operator`] pairs an operator kind with a system of fundamental
//! functions. The Gruenwald operator is
//!
//! `G_n(f)(θ) = ½ Σ f(η_k) (l_k(θ − π/2n) + l_k(θ + π/2n))`
//!
//! and the generalized operator uses the per-node functions `P̃_k` in place of
//! `l_k`. Which `l_k` is used is chosen by [`BasisForm`].

use alloc::vec;
use alloc::vec::Vec;
use core::f64::consts::PI;

use crate::basis::{generalized_unchecked, perturbed_unchecked, NodalBasis};
use crate::functions::FunctionSpec;
use crate::grid::{half_spacing, AngleGrid, Family};
use crate::numeric::CompensatedSum;
use crate::{Error, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum OperatorKind {
    Lagrange,
    Gruenwald,
    GeneralizedGruenwald,
}

impl OperatorKind {
    pub fn name(self) -> &'static str {
        match self {
            OperatorKind::Lagrange => "lagrange",
            OperatorKind::Gruenwald => "gruenwald",
            OperatorKind::GeneralizedGruenwald => "generalized-gruenwald",
        }
    }

    fn averaged(self) -> bool {
        !matches!(self, OperatorKind::Lagrange)
    }
}

/// Which fundamental functions an operator is built from.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum BasisForm {
    /// Fundamental polynomials of Lagrange interpolation at `cos η_k`.
    Nodal,
    /// The trigonometric closed forms `l_k` (common shift) or `P̃_k` (per-node
    /// shifts). For a shifted grid these are not a Lagrange basis.
    ClosedForm,
}

impl BasisForm {
    /// `Nodal` for Lagrange and Gruenwald, `ClosedForm` for the generalized
    /// operator, whose functions `P̃_k` are given explicitly.
    pub fn default_for(kind: OperatorKind) -> Self {
        match kind {
            OperatorKind::GeneralizedGruenwald => BasisForm::ClosedForm,
            _ => BasisForm::Nodal,
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            BasisForm::Nodal => "nodal",
            BasisForm::ClosedForm => "closed-form",
        }
    }
}

/// `values[k − 1] = f(η_k)`.
#[derive(Clone, Debug, PartialEq)]
pub struct SampleVector {
    values: Vec<f64>,
}

impl SampleVector {
    pub fn from_values(values: Vec<f64>) -> Result<Self> {
        if values.iter().any(|v| !v.is_finite()) {
            return Err(Error::InvalidArgument("samples must be finite"));
        }
        Ok(SampleVector { values })
    }

    pub fn values(&self) -> &[f64] {
        &self.values
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }

    pub fn max_abs(&self) -> f64 {
        self.values.iter().fold(0.0, |m, v| m.max(v.abs()))
    }
}

pub fn sample(f: &FunctionSpec, grid: &AngleGrid) -> Result<SampleVector> {
    sample_at(f, grid.angles())
}

pub fn sample_at(f: &FunctionSpec, angles: &[f64]) -> Result<SampleVector> {
    let mut values = Vec::with_capacity(angles.len());
    for &a in angles {
        let v = f.eval(a);
        if !v.is_finite() {
            return Err(Error::InvalidFunction { name: f.name, at: a });
        }
        values.push(v);
    }
    Ok(SampleVector { values })
}

/// A set of `n` fundamental functions evaluated all at once.
pub trait FundamentalSystem {
    fn len(&self) -> usize;

    fn is_empty(&self) -> bool {
        self.len() == 0
    }

    /// Writes the `n` values at `theta` into `out`.
    fn fundamentals_into(&self, theta: f64, out: &mut [f64]) -> Result<()>;
}

impl FundamentalSystem for NodalBasis {
    fn len(&self) -> usize {
        NodalBasis::len(self)
    }

    fn fundamentals_into(&self, theta: f64, out: &mut [f64]) -> Result<()> {
        NodalBasis::fundamentals_into(self, theta, out);
        Ok(())
    }
}

/// Closed-form `l_k` for a common shift `θ₀`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct ShiftedClosedForm {
    n: usize,
    theta0: f64,
}

impl FundamentalSystem for ShiftedClosedForm {
    fn len(&self) -> usize {
        self.n
    }

    fn fundamentals_into(&self, theta: f64, out: &mut [f64]) -> Result<()> {
        for (i, slot) in out.iter_mut().enumerate() {
            *slot = perturbed_unchecked(self.n, i + 1, theta, self.theta0)?.value;
        }
        Ok(())
    }
}

/// Closed-form `P̃_k` for per-node shifts.
#[derive(Clone, Debug, PartialEq)]
pub struct PerNodeClosedForm {
    shifts: Vec<f64>,
}

impl FundamentalSystem for PerNodeClosedForm {
    fn len(&self) -> usize {
        self.shifts.len()
    }

    fn fundamentals_into(&self, theta: f64, out: &mut [f64]) -> Result<()> {
        let n = self.shifts.len();
        for (i, slot) in out.iter_mut().enumerate() {
            *slot = generalized_unchecked(n, i + 1, theta, self.shifts[i])?.value;
        }
        Ok(())
    }
}

#[derive(Clone, Debug)]
enum System {
    Nodal(NodalBasis),
    Shifted(ShiftedClosedForm),
    PerNode(PerNodeClosedForm),
}

impl System {
    fn as_dyn(&self) -> &dyn FundamentalSystem {
        match self {
            System::Nodal(b) => b,
            System::Shifted(b) => b,
            System::PerNode(b) => b,
        }
    }
}

/// Result of the far-node estimate.
#[derive(Clone, Copy, Debug, PartialEq)]
pub enum FarNodeBound {
    Bound(f64),
    /// Some node lies within `κ` of `θ`.
    HypothesisNotMet,
}

impl FarNodeBound {
    pub fn value(self) -> Option<f64> {
        match self {
            FarNodeBound::Bound(v) => Some(v),
            FarNodeBound::HypothesisNotMet => None,
        }
    }
}

#[derive(Clone, Debug)]
pub struct Operator {
    kind: OperatorKind,
    form: BasisForm,
    nodes: Vec<f64>,
    step: f64,
    system: System,
}

impl Operator {
    pub fn new(kind: OperatorKind, grid: &AngleGrid, form: BasisForm) -> Result<Self> {
        match (kind, grid.family()) {
            (OperatorKind::GeneralizedGruenwald, Family::PerNodeShift { .. }) => {}
            (OperatorKind::GeneralizedGruenwald, _) => {
                return Err(Error::InvalidOperatorGrid("the generalized operator needs a per-node-shift grid"));
            }
            (_, Family::PerNodeShift { .. }) => {
                return Err(Error::InvalidOperatorGrid("this operator needs a Chebyshev or perturbed grid"));
            }
            _ => {}
        }
        let n = grid.n();
        let system = match (form, grid.family()) {
            (BasisForm::Nodal, _) => System::Nodal(NodalBasis::from_grid(grid)),
            (BasisForm::ClosedForm, Family::PerNodeShift { shifts }) => {
                System::PerNode(PerNodeClosedForm { shifts: shifts.clone() })
            }
            (BasisForm::ClosedForm, _) => {
                System::Shifted(ShiftedClosedForm { n, theta0: grid.theta0().unwrap_or(0.0) })
            }
        };
        Ok(Operator { kind, form, nodes: grid.angles().to_vec(), step: half_spacing(n), system })
    }

    pub fn with_default_form(kind: OperatorKind, grid: &AngleGrid) -> Result<Self> {
        Self::new(kind, grid, BasisForm::default_for(kind))
    }

    /// Lagrange or Gruenwald operator on an arbitrary increasing node set in
    /// `[0, π]`, always with the nodal basis. The averaging step is `π/2n`.
    pub fn on_nodes(kind: OperatorKind, angles: &[f64]) -> Result<Self> {
        if kind == OperatorKind::GeneralizedGruenwald {
            return Err(Error::InvalidOperatorGrid("the generalized operator needs a per-node-shift grid"));
        }
        Ok(Operator {
            kind,
            form: BasisForm::Nodal,
            nodes: angles.to_vec(),
            step: half_spacing(angles.len()),
            system: System::Nodal(NodalBasis::new(angles)?),
        })
    }

    pub fn kind(&self) -> OperatorKind {
        self.kind
    }

    pub fn form(&self) -> BasisForm {
        self.form
    }

    pub fn n(&self) -> usize {
        self.nodes.len()
    }

    pub fn nodes(&self) -> &[f64] {
        &self.nodes
    }

    /// `π/(2n)`.
    pub fn step(&self) -> f64 {
        self.step
    }

    /// Raw fundamental functions at `theta`, any real `theta`.
    pub fn fundamentals_into(&self, theta: f64, out: &mut [f64]) -> Result<()> {
        if out.len() != self.n() {
            return Err(Error::InvalidArgument("output buffer must hold one value per node"));
        }
        self.system.as_dyn().fundamentals_into(theta, out)
    }

    /// Operator weights `w_k(θ)` with `Op(f)(θ) = Σ f(η_k) w_k(θ)`: `l_k(θ)` for
    /// Lagrange, `½(l_k(θ − π/2n) + l_k(θ + π/2n))` for the averaged kinds.
    /// `scratch` must have length `n`.
    pub fn weights_into(&self, theta: f64, out: &mut [f64], scratch: &mut [f64]) -> Result<()> {
        if !theta.is_finite() {
            return Err(Error::OutOfDomain { theta });
        }
        if !self.kind.averaged() {
            return self.fundamentals_into(theta, out);
        }
        if !(0.0..=PI).contains(&theta) {
            return Err(Error::OutOfDomain { theta });
        }
        if scratch.len() != self.n() {
            return Err(Error::InvalidArgument("scratch buffer must hold one value per node"));
        }
        self.fundamentals_into(theta - self.step, out)?;
        self.fundamentals_into(theta + self.step, scratch)?;
        for (w, s) in out.iter_mut().zip(scratch.iter()) {
            *w = 0.5 * (*w + *s);
        }
        Ok(())
    }

    pub fn weights(&self, theta: f64) -> Result<Vec<f64>> {
        let mut out = vec![0.0; self.n()];
        let mut scratch = vec![0.0; self.n()];
        self.weights_into(theta, &mut out, &mut scratch)?;
        Ok(out)
    }

    fn check_samples(&self, samples: &SampleVector) -> Result<()> {
        if samples.len() != self.n() {
            return Err(Error::InvalidArgument("sample vector length must equal the number of nodes"));
        }
        Ok(())
    }

    pub fn apply(&self, samples: &SampleVector, theta: f64) -> Result<f64> {
        self.check_samples(samples)?;
        let w = self.weights(theta)?;
        Ok(dot(samples.values(), &w))
    }

    /// `Σ_k |w_k(θ)|`; for the averaged kinds this is `Λ_n(θ)`.
    pub fn lebesgue(&self, theta: f64) -> Result<f64> {
        let w = self.weights(theta)?;
        Ok(w.iter().map(|v| v.abs()).collect::<CompensatedSum>().value())
    }

    /// Values and Lebesgue sums over many points, reusing buffers.
    pub fn sweep(&self, samples: Option<&SampleVector>, thetas: &[f64]) -> Result<Vec<SweepPoint>> {
        if let Some(s) = samples {
            self.check_samples(s)?;
        }
        let mut out = vec![0.0; self.n()];
        let mut scratch = vec![0.0; self.n()];
        let mut points = Vec::with_capacity(thetas.len());
        for &theta in thetas {
            self.weights_into(theta, &mut out, &mut scratch)?;
            points.push(SweepPoint {
                theta,
                value: samples.map(|s| dot(s.values(), &out)),
                lebesgue: out.iter().map(|v| v.abs()).collect::<CompensatedSum>().value(),
            });
        }
        Ok(points)
    }
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct SweepPoint {
    pub theta: f64,
    pub value: Option<f64>,
    pub lebesgue: f64,
}

fn dot(a: &[f64], b: &[f64]) -> f64 {
    a.iter().zip(b).map(|(x, y)| x * y).collect::<CompensatedSum>().value()
}

/// `L_n(f)(θ) = Σ f(η_k) l_k(θ)` with the nodal basis.
pub fn lagrange_eval(samples: &SampleVector, grid: &AngleGrid, theta: f64) -> Result<f64> {
    Operator::with_default_form(OperatorKind::Lagrange, grid)?.apply(samples, theta)
}

pub fn gruenwald_eval(samples: &SampleVector, grid: &AngleGrid, theta: f64) -> Result<f64> {
    Operator::with_default_form(OperatorKind::Gruenwald, grid)?.apply(samples, theta)
}

pub fn generalized_gruenwald_eval(samples: &SampleVector, grid: &AngleGrid, theta: f64) -> Result<f64> {
    Operator::with_default_form(OperatorKind::GeneralizedGruenwald, grid)?.apply(samples, theta)
}

/// `Λ_n(θ) = ½ Σ |l_k(θ − π/2n) + l_k(θ + π/2n)|`.
pub fn lebesgue_like(grid: &AngleGrid, theta: f64) -> Result<f64> {
    Operator::with_default_form(OperatorKind::Gruenwald, grid)?.lebesgue(theta)
}

/// If every node satisfies `|η_k − θ| > κ`, returns
/// `(9π³/(64n²)) Σ (θ − η_k − π/2n)^{−2}`.
pub fn far_node_bound(grid: &AngleGrid, theta: f64, kappa: f64) -> Result<FarNodeBound> {
    far_node_bound_at(grid.angles(), theta, kappa)
}

pub fn far_node_bound_at(nodes: &[f64], theta: f64, kappa: f64) -> Result<FarNodeBound> {
    let n = nodes.len();
    if n == 0 {
        return Err(Error::InvalidArgument("need at least one node"));
    }
    let min = half_spacing(n);
    if !(kappa > min) {
        return Err(Error::InvalidKappa { kappa, min });
    }
    if nodes.iter().any(|&eta| (eta - theta).abs() <= kappa) {
        return Ok(FarNodeBound::HypothesisNotMet);
    }
    let sum: CompensatedSum = nodes
        .iter()
        .map(|&eta| {
            let d = theta - eta - min;
            1.0 / (d * d)
        })
        .collect();
    let nf = n as f64;
    Ok(FarNodeBound::Bound(9.0 * libm::pow(PI, 3.0) / (64.0 * nf * nf) * sum.value()))
}
