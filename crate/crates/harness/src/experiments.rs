//! Bound sweeps, convergence tables, rate checks and the Runge contrast.
//!
//! Every driver evaluates independent `(n, θ₀)` cells in parallel and returns
//! rows in input order.

use std::f64::consts::PI;

use gruenwald_core::barycentric::Barycentric;
use gruenwald_core::basis::{cheb_fundamental, generalized_fundamental, perturbed_fundamental, s_factor, NodalBasis};
use gruenwald_core::functions::{get_function, FunctionSpec};
use gruenwald_core::grid::{
    chebyshev_angles, equidistant_shifted_angles, half_spacing, per_node_shift_angles, perturbed_angles,
};
use gruenwald_core::numeric::{compensated_sum, linspace};
use gruenwald_core::operators::{far_node_bound, sample, sample_at, FarNodeBound, Operator, SampleVector};
use gruenwald_core::smoothness::{c2_constant, mu_n, voronovskaja_bound};
use gruenwald_core::{AngleGrid, BasisForm, Error, Family, OperatorKind};
use rayon::prelude::*;

pub type Result<T> = std::result::Result<T, Error>;

/// `θ₀` fractions used by the `fractions` policy.
pub const THETA0_FRACTIONS: [f64; 6] = [0.5, -0.5, 0.9, -0.9, 0.99, -0.99];

/// How a node family is parametrized for every `n` of a sweep.
#[derive(Clone, Debug, PartialEq)]
pub enum FamilySpec {
    Chebyshev,
    /// `θ₀ = theta0_frac · π/(2n)`.
    Perturbed {
        theta0_frac: f64,
    },
    /// `η_0 = eta0_frac · π/n`, `β = beta_frac · π/n`.
    EquidistantShifted {
        eta0_frac: f64,
        beta_frac: f64,
    },
    /// `s_k = spread · π/(2n) · (−1 + 2(k−1)/(n−1))`.
    PerNodeShift {
        spread: f64,
    },
    /// Explicit shifts; only the matching `n` is valid.
    Shifts(Vec<f64>),
}

impl FamilySpec {
    pub fn build(&self, n: usize) -> Result<AngleGrid> {
        match self {
            FamilySpec::Chebyshev => chebyshev_angles(n),
            FamilySpec::Perturbed { theta0_frac } => perturbed_angles(n, theta0_frac * half_spacing(n)),
            FamilySpec::EquidistantShifted { eta0_frac, beta_frac } => {
                let step = PI / n.max(1) as f64;
                equidistant_shifted_angles(n, eta0_frac * step, beta_frac * step)
            }
            FamilySpec::PerNodeShift { spread } => {
                if n < 2 {
                    return Err(Error::InvalidShifts("a shift spread needs n >= 2"));
                }
                if !(*spread > 0.0 && *spread < 1.0) {
                    return Err(Error::InvalidShifts("shift spread must lie in (0, 1)"));
                }
                let h = half_spacing(n);
                let shifts: Vec<f64> = linspace(-1.0, 1.0, n).iter().map(|t| spread * h * t).collect();
                per_node_shift_angles(n, &shifts)
            }
            FamilySpec::Shifts(shifts) => per_node_shift_angles(n, shifts),
        }
    }

    pub fn descriptor(&self) -> String {
        match self {
            FamilySpec::Chebyshev => "chebyshev".to_string(),
            FamilySpec::Perturbed { theta0_frac } => format!("perturbed(theta0_frac={theta0_frac})"),
            FamilySpec::EquidistantShifted { eta0_frac, beta_frac } => {
                format!("equidistant-shifted(eta0_frac={eta0_frac};beta_frac={beta_frac})")
            }
            FamilySpec::PerNodeShift { spread } => format!("per-node-shift(spread={spread})"),
            FamilySpec::Shifts(s) => format!("per-node-shift(file;n={})", s.len()),
        }
    }

    pub fn default_operator(&self) -> OperatorKind {
        match self {
            FamilySpec::PerNodeShift { .. } | FamilySpec::Shifts(_) => OperatorKind::GeneralizedGruenwald,
            _ => OperatorKind::Gruenwald,
        }
    }
}

pub fn theta_grid(points: usize) -> Result<Vec<f64>> {
    if points < 2 {
        return Err(Error::InvalidArgument("theta grid needs at least two points"));
    }
    Ok(linspace(0.0, PI, points))
}

fn check_n_list(n_list: &[usize], ascending: bool) -> Result<()> {
    if n_list.is_empty() {
        return Err(Error::InvalidArgument("n list is empty"));
    }
    if n_list.contains(&0) {
        return Err(Error::InvalidArgument("n must be positive"));
    }
    if ascending && n_list.windows(2).any(|w| w[0] >= w[1]) {
        return Err(Error::InvalidArgument("n list must be strictly ascending"));
    }
    Ok(())
}

fn finite_or_inf(v: f64) -> f64 {
    if v.is_finite() {
        v
    } else {
        f64::INFINITY
    }
}

/// Running maximum that keeps the first point attaining it.
#[derive(Clone, Copy, Debug)]
struct Peak {
    value: f64,
    theta: f64,
    k: Option<usize>,
}

impl Peak {
    fn new() -> Self {
        Peak { value: f64::NEG_INFINITY, theta: f64::NAN, k: None }
    }

    fn offer(&mut self, value: f64, theta: f64, k: Option<usize>) {
        let value = if value.is_nan() { f64::INFINITY } else { value };
        if value > self.value {
            *self = Peak { value, theta, k };
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum BoundKind {
    /// `|P_k(θ)| < 4/π` on `[−π, 2π]`.
    Pk,
    /// `|S_k(θ)| ≤ 2` on `[0, π]`.
    Sk,
    /// `|l_k(θ)| < 8/π` on `[0, π]`.
    Lk,
    /// `Λ_n(θ) ≤ c₂` on `[0, π]`.
    Lambda,
    /// `Λ_n(θ)` against the far-node right-hand side, where it applies.
    FarNode,
}

impl BoundKind {
    pub fn name(self) -> &'static str {
        match self {
            BoundKind::Pk => "pk",
            BoundKind::Sk => "sk",
            BoundKind::Lk => "lk",
            BoundKind::Lambda => "lambda",
            BoundKind::FarNode => "far_node",
        }
    }

    pub fn parse(name: &str) -> Result<Self> {
        match name {
            "pk" => Ok(BoundKind::Pk),
            "sk" => Ok(BoundKind::Sk),
            "lk" => Ok(BoundKind::Lk),
            "lambda" => Ok(BoundKind::Lambda),
            "far_node" | "far-node" => Ok(BoundKind::FarNode),
            _ => Err(Error::InvalidArgument("bound kind must be one of pk, sk, lk, lambda, far_node")),
        }
    }

    pub fn theoretical(self) -> Option<f64> {
        match self {
            BoundKind::Pk => Some(4.0 / PI),
            BoundKind::Sk => Some(2.0),
            BoundKind::Lk => Some(8.0 / PI),
            BoundKind::Lambda => Some(c2_constant()),
            BoundKind::FarNode => None,
        }
    }

    /// Additive slack allowed before a row fails.
    pub fn tolerance(self) -> f64 {
        match self {
            BoundKind::Pk | BoundKind::Sk | BoundKind::Lk => 1e-12,
            BoundKind::Lambda | BoundKind::FarNode => 1e-10,
        }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub enum Theta0Policy {
    Zero,
    Fractions,
    List(Vec<f64>),
}

impl Theta0Policy {
    pub fn fractions(&self) -> Vec<f64> {
        match self {
            Theta0Policy::Zero => vec![0.0],
            Theta0Policy::Fractions => THETA0_FRACTIONS.to_vec(),
            Theta0Policy::List(v) => v.clone(),
        }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct BoundReport {
    pub bound_name: String,
    pub n: usize,
    pub theta0_frac: f64,
    pub theta0: f64,
    pub basis: String,
    pub theoretical: f64,
    pub empirical_max: f64,
    pub argmax_theta: f64,
    pub argmax_k: Option<usize>,
    pub argmax_n: usize,
    pub margin: f64,
    /// θ points that entered the maximum.
    pub points: usize,
    pub passed: bool,
}

pub fn bound_sweep(
    kind: BoundKind,
    n_list: &[usize],
    theta_grid_size: usize,
    policy: &Theta0Policy,
    form: BasisForm,
) -> Result<Vec<BoundReport>> {
    check_n_list(n_list, false)?;
    if theta_grid_size < 101 {
        return Err(Error::InvalidArgument("theta grid must have at least 101 points"));
    }
    let fracs = if kind == BoundKind::Pk { vec![0.0] } else { policy.fractions() };
    if fracs.iter().any(|f| !(f.abs() < 1.0)) {
        return Err(Error::InvalidArgument("theta0 fractions must lie in (-1, 1)"));
    }
    let cells: Vec<(usize, f64)> = n_list.iter().flat_map(|&n| fracs.iter().map(move |&f| (n, f))).collect();
    let reports: Vec<Option<BoundReport>> =
        cells.par_iter().map(|&(n, frac)| bound_cell(kind, n, frac, theta_grid_size, form)).collect::<Result<_>>()?;
    Ok(reports.into_iter().flatten().collect())
}

fn bound_cell(kind: BoundKind, n: usize, frac: f64, size: usize, form: BasisForm) -> Result<Option<BoundReport>> {
    let theta0 = frac * half_spacing(n);
    let mut peak = Peak::new();
    let mut points = 0usize;
    let mut theoretical = kind.theoretical().unwrap_or(f64::NAN);
    let report_form = match kind {
        BoundKind::Pk | BoundKind::Sk => BasisForm::ClosedForm,
        _ => form,
    };
    match kind {
        BoundKind::Pk => {
            for theta in linspace(-PI, 2.0 * PI, size) {
                for k in 1..=n {
                    peak.offer(cheb_fundamental(n, k, theta)?.value.abs(), theta, Some(k));
                }
                points += 1;
            }
        }
        BoundKind::Sk => {
            for theta in linspace(0.0, PI, size) {
                for k in 1..=n {
                    let v = match s_factor(n, k, theta, theta0) {
                        Ok(v) => v.value.abs(),
                        Err(Error::SingularEvaluation { .. }) => f64::INFINITY,
                        Err(e) => return Err(e),
                    };
                    peak.offer(v, theta, Some(k));
                }
                points += 1;
            }
        }
        BoundKind::Lk => {
            let grid = perturbed_angles(n, theta0)?;
            let nodal = (form == BasisForm::Nodal).then(|| NodalBasis::from_grid(&grid));
            let mut out = vec![0.0; n];
            for theta in linspace(0.0, PI, size) {
                if let Some(b) = &nodal {
                    b.fundamentals_into(theta, &mut out);
                } else {
                    for (i, slot) in out.iter_mut().enumerate() {
                        *slot = match perturbed_fundamental(n, i + 1, theta, theta0) {
                            Ok(v) => v.value,
                            Err(Error::SingularEvaluation { .. }) => f64::INFINITY,
                            Err(e) => return Err(e),
                        };
                    }
                }
                for (i, v) in out.iter().enumerate() {
                    peak.offer(v.abs(), theta, Some(i + 1));
                }
                points += 1;
            }
        }
        BoundKind::Lambda => {
            let grid = perturbed_angles(n, theta0)?;
            let op = Operator::new(OperatorKind::Gruenwald, &grid, form)?;
            for (theta, lambda) in lebesgue_profile(&op, &linspace(0.0, PI, size))? {
                peak.offer(lambda, theta, None);
                points += 1;
            }
        }
        BoundKind::FarNode => {
            let grid = perturbed_angles(n, theta0)?;
            let op = Operator::new(OperatorKind::Gruenwald, &grid, form)?;
            let h = half_spacing(n);
            // the row reports the point with the smallest margin
            let mut worst: Option<(f64, f64, f64)> = None;
            for theta in linspace(0.0, PI, size) {
                let dmin = grid.angles().iter().fold(f64::INFINITY, |m, &e| m.min((e - theta).abs()));
                if dmin <= h {
                    continue;
                }
                let FarNodeBound::Bound(rhs) = far_node_bound(&grid, theta, 0.5 * (h + dmin))? else {
                    continue;
                };
                let lambda = lebesgue_or_inf(&op, theta)?;
                points += 1;
                if worst.is_none_or(|(_, r, l)| rhs - lambda < r - l) {
                    worst = Some((theta, rhs, lambda));
                }
            }
            let Some((theta, rhs, lambda)) = worst else {
                return Ok(None);
            };
            peak = Peak { value: lambda, theta, k: None };
            theoretical = rhs;
        }
    }
    let margin = theoretical - peak.value;
    let passed = match kind {
        BoundKind::Pk | BoundKind::Lk => peak.value < theoretical + kind.tolerance(),
        _ => peak.value <= theoretical + kind.tolerance(),
    };
    Ok(Some(BoundReport {
        bound_name: kind.name().to_string(),
        n,
        theta0_frac: frac,
        theta0,
        basis: report_form.name().to_string(),
        theoretical,
        empirical_max: peak.value,
        argmax_theta: peak.theta,
        argmax_k: peak.k,
        argmax_n: n,
        margin,
        points,
        passed,
    }))
}

fn lebesgue_or_inf(op: &Operator, theta: f64) -> Result<f64> {
    match op.lebesgue(theta) {
        Ok(v) => Ok(finite_or_inf(v)),
        Err(Error::SingularEvaluation { .. }) => Ok(f64::INFINITY),
        Err(e) => Err(e),
    }
}

/// `(θ, Λ_n(θ))` for every `θ`; a pole of a closed-form basis gives `+∞`.
pub fn lebesgue_profile(op: &Operator, thetas: &[f64]) -> Result<Vec<(f64, f64)>> {
    let n = op.n();
    let mut out = vec![0.0; n];
    let mut scratch = vec![0.0; n];
    thetas
        .iter()
        .map(|&theta| match op.weights_into(theta, &mut out, &mut scratch) {
            Ok(()) => Ok((theta, finite_or_inf(compensated_sum(out.iter().map(|v| v.abs()))))),
            Err(Error::SingularEvaluation { .. }) => Ok((theta, f64::INFINITY)),
            Err(e) => Err(e),
        })
        .collect()
}

#[derive(Clone, Debug, PartialEq)]
pub struct LebesgueSummary {
    pub n: usize,
    pub family: String,
    pub basis: String,
    pub max_lambda: f64,
    pub argmax_theta: f64,
    pub c2: f64,
    pub margin: f64,
}

pub fn lebesgue_summary(
    family: &FamilySpec,
    form: BasisForm,
    n_list: &[usize],
    grid_size: usize,
) -> Result<Vec<LebesgueSummary>> {
    check_n_list(n_list, false)?;
    let thetas = theta_grid(grid_size)?;
    n_list
        .par_iter()
        .map(|&n| {
            let grid = family.build(n)?;
            let op = Operator::new(family.default_operator(), &grid, form)?;
            let mut peak = Peak::new();
            for (theta, lambda) in lebesgue_profile(&op, &thetas)? {
                peak.offer(lambda, theta, None);
            }
            let c2 = c2_constant();
            Ok(LebesgueSummary {
                n,
                family: family.descriptor(),
                basis: form.name().to_string(),
                max_lambda: peak.value,
                argmax_theta: peak.theta,
                c2,
                margin: c2 - peak.value,
            })
        })
        .collect()
}

/// Sup error over `thetas` of `Op(f) − f` for several functions sharing one
/// operator; returns `(sup_error, argmax_theta)` per function.
fn sup_errors(op: &Operator, functions: &[&FunctionSpec], thetas: &[f64]) -> Result<Vec<(f64, f64)>> {
    let samples: Vec<SampleVector> = functions.iter().map(|f| sample_at(f, op.nodes())).collect::<Result<_>>()?;
    let n = op.n();
    let mut out = vec![0.0; n];
    let mut scratch = vec![0.0; n];
    let mut peaks = vec![Peak::new(); functions.len()];
    for &theta in thetas {
        let singular = match op.weights_into(theta, &mut out, &mut scratch) {
            Ok(()) => false,
            Err(Error::SingularEvaluation { .. }) => true,
            Err(e) => return Err(e),
        };
        for ((f, s), peak) in functions.iter().zip(&samples).zip(peaks.iter_mut()) {
            let err = if singular {
                f64::INFINITY
            } else {
                let value = compensated_sum(s.values().iter().zip(&out).map(|(a, b)| a * b));
                (value - f.eval(theta)).abs()
            };
            peak.offer(err, theta, None);
        }
    }
    Ok(peaks.into_iter().map(|p| (p.value, p.theta)).collect())
}

/// `(c₂ + 1) · min(ω(f, μ_n), 2 sup|f|)`, with `ω` the declared modulus.
pub fn quantitative_rhs(f: &FunctionSpec, n: usize) -> (f64, f64) {
    let cap = 2.0 * f.sup_abs;
    let omega = f.modulus.map_or(cap, |w| w(mu_n(n)).min(cap));
    (omega, (c2_constant() + 1.0) * omega)
}

#[derive(Clone, Debug, PartialEq)]
pub struct ConvergenceRow {
    pub n: usize,
    pub sup_error: f64,
    pub argmax_theta: f64,
    pub bound: Option<f64>,
    pub observed_rate: Option<f64>,
}

#[derive(Clone, Debug, PartialEq)]
pub struct ConvergenceTable {
    pub function: String,
    pub family: String,
    pub operator: OperatorKind,
    pub basis: BasisForm,
    pub rows: Vec<ConvergenceRow>,
}

pub fn convergence_study(
    function: &str,
    family: &FamilySpec,
    operator: OperatorKind,
    form: BasisForm,
    n_list: &[usize],
    theta_grid_size: usize,
) -> Result<ConvergenceTable> {
    let f = get_function(function)?;
    check_n_list(n_list, true)?;
    let thetas = theta_grid(theta_grid_size)?;
    let errors: Vec<(f64, f64)> = n_list
        .par_iter()
        .map(|&n| {
            let op = Operator::new(operator, &family.build(n)?, form)?;
            Ok(sup_errors(&op, &[f], &thetas)?[0])
        })
        .collect::<Result<_>>()?;
    let mut rows: Vec<ConvergenceRow> = Vec::with_capacity(n_list.len());
    for (i, (&n, &(sup_error, argmax_theta))) in n_list.iter().zip(&errors).enumerate() {
        let observed_rate = if i == 0 {
            None
        } else {
            let (prev_n, prev_e) = (n_list[i - 1] as f64, errors[i - 1].0);
            let rate = (prev_e / sup_error).ln() / (n as f64 / prev_n).ln();
            rate.is_finite().then_some(rate)
        };
        rows.push(ConvergenceRow {
            n,
            sup_error,
            argmax_theta,
            bound: f.modulus.map(|_| quantitative_rhs(f, n).1),
            observed_rate,
        });
    }
    Ok(ConvergenceTable { function: f.name.to_string(), family: family.descriptor(), operator, basis: form, rows })
}

#[derive(Clone, Debug, PartialEq)]
pub struct VoronovskajaRow {
    pub function: String,
    pub theta: f64,
    pub n: usize,
    pub error: f64,
    pub scaled_error: f64,
    pub bound: f64,
    /// `n ≥ 8`, where the finite-n proxy is asserted.
    pub checked: bool,
    pub passed: bool,
}

pub const VORONOVSKAJA_MIN_N: usize = 8;

pub fn voronovskaja_study(
    function: &str,
    family: &FamilySpec,
    form: BasisForm,
    theta_list: &[f64],
    n_list: &[usize],
) -> Result<Vec<VoronovskajaRow>> {
    let f = get_function(function)?;
    check_n_list(n_list, false)?;
    if theta_list.is_empty() {
        return Err(Error::InvalidArgument("theta list is empty"));
    }
    if let Some(&theta) = theta_list.iter().find(|t| !(0.0..=PI).contains(*t)) {
        return Err(Error::OutOfDomain { theta });
    }
    let bounds: Vec<f64> = theta_list.iter().map(|&t| voronovskaja_bound(f, t)).collect::<Result<_>>()?;
    let operator = family.default_operator();
    let errors: Vec<Vec<f64>> = n_list
        .par_iter()
        .map(|&n| {
            let grid = family.build(n)?;
            let op = Operator::new(operator, &grid, form)?;
            let s = sample(f, &grid)?;
            theta_list
                .iter()
                .map(|&t| match op.apply(&s, t) {
                    Ok(v) => Ok(finite_or_inf((v - f.eval(t)).abs())),
                    Err(Error::SingularEvaluation { .. }) => Ok(f64::INFINITY),
                    Err(e) => Err(e),
                })
                .collect()
        })
        .collect::<Result<_>>()?;
    let mut rows = Vec::with_capacity(theta_list.len() * n_list.len());
    for (j, (&theta, &bound)) in theta_list.iter().zip(&bounds).enumerate() {
        for (i, &n) in n_list.iter().enumerate() {
            let error = errors[i][j];
            let scaled_error = (n as f64).cbrt() * error;
            let checked = n >= VORONOVSKAJA_MIN_N;
            rows.push(VoronovskajaRow {
                function: f.name.to_string(),
                theta,
                n,
                error,
                scaled_error,
                bound,
                checked,
                passed: !checked || scaled_error <= bound + 1e-9,
            });
        }
    }
    Ok(rows)
}

#[derive(Clone, Debug, PartialEq)]
pub struct QuantRow {
    pub function: String,
    pub n: usize,
    pub sup_error: f64,
    pub argmax_theta: f64,
    pub mu_n: f64,
    pub omega: f64,
    pub rhs: f64,
    pub passed: bool,
}

/// One operator per `n` serves every function; rows are grouped by function.
pub fn quantitative_check(
    functions: &[&str],
    family: &FamilySpec,
    form: BasisForm,
    n_list: &[usize],
    theta_grid_size: usize,
) -> Result<Vec<QuantRow>> {
    let specs: Vec<&FunctionSpec> = functions.iter().map(|name| get_function(name)).collect::<Result<_>>()?;
    check_n_list(n_list, false)?;
    let thetas = theta_grid(theta_grid_size)?;
    let operator = family.default_operator();
    let per_n: Vec<Vec<(f64, f64)>> = n_list
        .par_iter()
        .map(|&n| sup_errors(&Operator::new(operator, &family.build(n)?, form)?, &specs, &thetas))
        .collect::<Result<_>>()?;
    let mut rows = Vec::with_capacity(specs.len() * n_list.len());
    for (j, f) in specs.iter().enumerate() {
        for (i, &n) in n_list.iter().enumerate() {
            let (sup_error, argmax_theta) = per_n[i][j];
            let (omega, rhs) = quantitative_rhs(f, n);
            rows.push(QuantRow {
                function: f.name.to_string(),
                n,
                sup_error,
                argmax_theta,
                mu_n: mu_n(n),
                omega,
                rhs,
                passed: sup_error <= rhs + 1e-9,
            });
        }
    }
    Ok(rows)
}

#[derive(Clone, Debug, PartialEq)]
pub struct RungeRow {
    pub n: usize,
    /// Lagrange interpolation at `n` equispaced points of `[−1, 1]`.
    pub lagrange_equidistant_error: f64,
    /// `G_n` on the Chebyshev grid.
    pub gruenwald_chebyshev_error: f64,
    /// `G_n` with nodes at the angles `(k − 1)π/(n − 1)`.
    pub gruenwald_angle_equidistant_error: Option<f64>,
    /// `G_n` with nodes at `n` equispaced points of `[−1, 1]`.
    pub gruenwald_x_equidistant_error: Option<f64>,
}

pub fn runge_contrast(n_list: &[usize], theta_grid_size: usize) -> Result<Vec<RungeRow>> {
    check_n_list(n_list, true)?;
    let f = get_function("runge_cos")?;
    let thetas = theta_grid(theta_grid_size)?;
    n_list
        .par_iter()
        .map(|&n| {
            let xs = linspace(-1.0, 1.0, n);
            let interp = Barycentric::new(&xs)?;
            let ys: Vec<f64> = xs.iter().map(|x| 1.0 / (1.0 + 25.0 * x * x)).collect();
            let mut lagrange = Peak::new();
            for &theta in &thetas {
                let err = (interp.eval(&ys, theta.cos())? - f.eval(theta)).abs();
                lagrange.offer(err, theta, None);
            }
            let cheb = Operator::new(OperatorKind::Gruenwald, &chebyshev_angles(n)?, BasisForm::Nodal)?;
            let gruenwald = sup_errors(&cheb, &[f], &thetas)?[0].0;
            let (angle_eq, x_eq) = if n >= 2 {
                let angles = linspace(0.0, PI, n);
                let by_angle = Operator::on_nodes(OperatorKind::Gruenwald, &angles)?;
                let x_angles: Vec<f64> = linspace(1.0, -1.0, n).iter().map(|x| x.acos()).collect();
                let by_x = Operator::on_nodes(OperatorKind::Gruenwald, &x_angles)?;
                (Some(sup_errors(&by_angle, &[f], &thetas)?[0].0), Some(sup_errors(&by_x, &[f], &thetas)?[0].0))
            } else {
                (None, None)
            };
            Ok(RungeRow {
                n,
                lagrange_equidistant_error: lagrange.value,
                gruenwald_chebyshev_error: gruenwald,
                gruenwald_angle_equidistant_error: angle_eq,
                gruenwald_x_equidistant_error: x_eq,
            })
        })
        .collect()
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum BasisChoice {
    /// Chebyshev `P_k`.
    Chebyshev,
    /// `S_k` for the grid's common shift.
    SFactor,
    /// Closed form `l_k` or `P̃_k`, depending on the grid.
    ClosedForm,
    /// Lagrange fundamental polynomials of the grid's nodes.
    Nodal,
}

#[derive(Clone, Debug, PartialEq)]
pub struct BasisRow {
    pub k: usize,
    pub theta: f64,
    pub value: Option<f64>,
    /// `regular`, `limit` (removable singularity) or `pole`.
    pub status: &'static str,
}

pub fn basis_table(choice: BasisChoice, grid: &AngleGrid, thetas: &[f64]) -> Result<Vec<BasisRow>> {
    let n = grid.n();
    let theta0 = grid.theta0();
    let nodal = (choice == BasisChoice::Nodal).then(|| NodalBasis::from_grid(grid));
    let mut rows = Vec::with_capacity(n * thetas.len());
    for k in 1..=n {
        for &theta in thetas {
            let result = match (choice, grid.family()) {
                (BasisChoice::Chebyshev, _) => cheb_fundamental(n, k, theta),
                (BasisChoice::SFactor, Family::PerNodeShift { .. }) => {
                    return Err(Error::InvalidOperatorGrid("S_k needs a Chebyshev or perturbed grid"));
                }
                (BasisChoice::SFactor, _) => s_factor(n, k, theta, theta0.unwrap_or(0.0)),
                (BasisChoice::ClosedForm, Family::PerNodeShift { shifts }) => {
                    generalized_fundamental(n, k, theta, shifts)
                }
                (BasisChoice::ClosedForm, _) => perturbed_fundamental(n, k, theta, theta0.unwrap_or(0.0)),
                (BasisChoice::Nodal, _) => {
                    nodal.as_ref().map_or(Err(Error::InvalidArgument("no nodes")), |b| b.fundamental(k, theta))
                }
            };
            rows.push(match result {
                Ok(v) => BasisRow {
                    k,
                    theta,
                    value: Some(v.value),
                    status: if v.near_singular { "limit" } else { "regular" },
                },
                Err(Error::SingularEvaluation { .. }) => BasisRow { k, theta, value: None, status: "pole" },
                Err(e) => return Err(e),
            });
        }
    }
    Ok(rows)
}
