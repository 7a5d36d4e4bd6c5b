//! Command-line front end.
//!
//! Exit status: 0 on success, 2 for invalid input, 1 for internal errors, and 3
//! when `bounds`, `quantcheck` or `voronovskaja` produce a failing row.

use std::f64::consts::PI;
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use gruenwald_core::functions::registry;
use gruenwald_core::numeric::linspace;
use gruenwald_core::{BasisForm, Error, OperatorKind};

use crate::experiments::{
    basis_table, bound_sweep, convergence_study, lebesgue_profile, lebesgue_summary, quantitative_check,
    runge_contrast, theta_grid, voronovskaja_study, BasisChoice, BoundKind, FamilySpec, Theta0Policy,
};
use crate::report::{render, Format, Meta, NodeRow, ProfileRow, Tabular};

pub const EXIT_OK: i32 = 0;
pub const EXIT_INTERNAL: i32 = 1;
pub const EXIT_VALIDATION: i32 = 2;
pub const EXIT_INVARIANT: i32 = 3;

#[derive(Debug, thiserror::Error)]
pub enum CliError {
    #[error(transparent)]
    Core(#[from] Error),
    #[error("{0}")]
    Usage(String),
    #[error("cannot access {path}: {source}")]
    Io {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Core(Error::SingularEvaluation { .. }) | CliError::Io { .. } => EXIT_INTERNAL,
            CliError::Core(_) | CliError::Usage(_) => EXIT_VALIDATION,
        }
    }
}

fn usage(msg: impl Into<String>) -> CliError {
    CliError::Usage(msg.into())
}

#[derive(Debug, Parser)]
#[command(name = "gruenwald", version, about = "Averaged Lagrange interpolation on Chebyshev and perturbed nodes")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// List the node angles of one grid.
    Nodes {
        #[arg(long)]
        n: usize,
        #[command(flatten)]
        family: FamilyArgs,
        #[command(flatten)]
        output: OutputArgs,
    },
    /// Tabulate fundamental functions over a θ range.
    Basis {
        #[arg(long)]
        n: usize,
        #[arg(long, value_enum, default_value = "nodal")]
        which: WhichBasis,
        #[arg(long, default_value_t = 201)]
        grid: usize,
        #[arg(long, allow_hyphen_values = true, default_value = "0")]
        theta_min: String,
        #[arg(long, allow_hyphen_values = true, default_value = "pi")]
        theta_max: String,
        #[command(flatten)]
        family: FamilyArgs,
        #[command(flatten)]
        output: OutputArgs,
    },
    /// Maximum of the Lebesgue-type sum over θ, one row per n.
    Lebesgue {
        #[command(flatten)]
        ns: NArgs,
        #[arg(long, default_value_t = 2001)]
        grid: usize,
        /// Emit every θ instead of the maximum.
        #[arg(long)]
        profile: bool,
        #[command(flatten)]
        family: FamilyArgs,
        #[command(flatten)]
        output: OutputArgs,
    },
    /// Sweep one of the uniform bounds.
    Bounds {
        #[arg(long, value_enum)]
        check: CheckArg,
        #[command(flatten)]
        ns: NArgs,
        #[arg(long, default_value_t = 2001)]
        grid: usize,
        #[arg(long, value_enum, default_value = "zero")]
        theta0_policy: PolicyArg,
        /// Comma list of fractions of π/2n; overrides the policy.
        #[arg(long, allow_hyphen_values = true)]
        theta0_frac: Option<String>,
        #[arg(long, value_enum, default_value = "nodal")]
        basis: BasisArg,
        #[command(flatten)]
        output: OutputArgs,
    },
    /// Sup error against n.
    Converge {
        #[arg(long)]
        function: String,
        #[command(flatten)]
        ns: NArgs,
        #[arg(long, value_enum)]
        operator: Option<OperatorArg>,
        #[arg(long, default_value_t = 2001)]
        grid: usize,
        #[command(flatten)]
        family: FamilyArgs,
        #[command(flatten)]
        output: OutputArgs,
    },
    /// Scaled pointwise error against the Voronovskaja-type bound.
    Voronovskaja {
        #[arg(long)]
        function: String,
        /// Comma list of angles; `pi`, `pi/4` and `3pi/4` forms are accepted.
        #[arg(long, default_value = "pi/4,pi/2,2.0")]
        theta_list: String,
        #[command(flatten)]
        ns: NArgs,
        #[command(flatten)]
        family: FamilyArgs,
        #[command(flatten)]
        output: OutputArgs,
    },
    /// Sup error against (c2 + 1)·ω(f, μ_n).
    Quantcheck {
        /// Comma list of function names; all registered functions by default.
        #[arg(long)]
        function: Option<String>,
        #[command(flatten)]
        ns: NArgs,
        #[arg(long, default_value_t = 2001)]
        grid: usize,
        #[command(flatten)]
        family: FamilyArgs,
        #[command(flatten)]
        output: OutputArgs,
    },
    /// Equidistant Lagrange against G_n for 1/(1 + 25 cos²θ).
    Runge {
        #[command(flatten)]
        ns: NArgs,
        #[arg(long, default_value_t = 2001)]
        grid: usize,
        #[command(flatten)]
        output: OutputArgs,
    },
}

#[derive(Debug, Args)]
pub struct NArgs {
    #[arg(long)]
    n: Option<usize>,
    /// `8,16,32`, `2..64` or `8..512..x2`.
    #[arg(long)]
    n_list: Option<String>,
}

impl NArgs {
    fn resolve(&self) -> Result<Vec<usize>, CliError> {
        match (self.n, &self.n_list) {
            (Some(n), None) => Ok(vec![n]),
            (None, Some(list)) => parse_n_list(list),
            (Some(_), Some(_)) => Err(usage("give either --n or --n-list, not both")),
            (None, None) => Err(usage("one of --n or --n-list is required")),
        }
    }
}

#[derive(Debug, Args)]
pub struct FamilyArgs {
    #[arg(long, value_enum, default_value = "chebyshev")]
    family: FamilyArg,
    /// θ₀ as a fraction of π/2n, in (−1, 1).
    #[arg(long, allow_hyphen_values = true)]
    theta0_frac: Option<f64>,
    /// η₀ as a fraction of π/n, in [0, 1].
    #[arg(long)]
    eta0_frac: Option<f64>,
    /// β as a fraction of π/n, in [0, 1).
    #[arg(long, default_value_t = 0.0)]
    beta_frac: f64,
    /// Shifts spread evenly over spread·(−π/2n, π/2n).
    #[arg(long)]
    shift_spread: Option<f64>,
    /// One shift per line, in radians.
    #[arg(long)]
    shifts_file: Option<PathBuf>,
    /// Defaults to nodal for L_n and G_n and to closed-form for G̃_n.
    #[arg(long, value_enum)]
    basis: Option<BasisArg>,
}

impl FamilyArgs {
    fn spec(&self) -> Result<FamilySpec, CliError> {
        match self.family {
            FamilyArg::Chebyshev => Ok(FamilySpec::Chebyshev),
            FamilyArg::Perturbed => {
                let frac = self.theta0_frac.ok_or_else(|| usage("--family perturbed needs --theta0-frac"))?;
                check_theta0_frac(frac)?;
                Ok(FamilySpec::Perturbed { theta0_frac: frac })
            }
            FamilyArg::EquidistantShifted => {
                let eta0_frac =
                    self.eta0_frac.ok_or_else(|| usage("--family equidistant-shifted needs --eta0-frac"))?;
                Ok(FamilySpec::EquidistantShifted { eta0_frac, beta_frac: self.beta_frac })
            }
            FamilyArg::PerNodeShift => match (self.shift_spread, &self.shifts_file) {
                (Some(spread), None) => Ok(FamilySpec::PerNodeShift { spread }),
                (None, Some(path)) => Ok(FamilySpec::Shifts(read_shifts(path)?)),
                _ => Err(usage("--family per-node-shift needs exactly one of --shift-spread or --shifts-file")),
            },
        }
    }

    fn form(&self, kind: OperatorKind) -> BasisForm {
        self.basis.map_or(BasisForm::default_for(kind), Into::into)
    }
}

fn check_theta0_frac(frac: f64) -> Result<(), CliError> {
    if frac.is_finite() && frac.abs() < 1.0 {
        Ok(())
    } else {
        Err(usage(format!("theta0 fraction {frac} must lie in the open interval (-1, 1)")))
    }
}

fn read_shifts(path: &PathBuf) -> Result<Vec<f64>, CliError> {
    let text = std::fs::read_to_string(path).map_err(|source| CliError::Io { path: path.clone(), source })?;
    text.lines()
        .map(str::trim)
        .filter(|l| !l.is_empty() && !l.starts_with('#'))
        .map(|l| l.parse::<f64>().map_err(|_| usage(format!("bad shift value {l:?} in {}", path.display()))))
        .collect()
}

#[derive(Debug, Args)]
pub struct OutputArgs {
    #[arg(long, value_enum, default_value = "csv")]
    format: FormatArg,
    #[arg(long)]
    out: Option<PathBuf>,
    /// Reserved; no subcommand draws random numbers.
    #[arg(long, default_value_t = 0)]
    seed: u64,
}

#[derive(Debug, Clone, Copy, ValueEnum)]
pub enum FormatArg {
    Csv,
    Json,
}

#[derive(Debug, Clone, Copy, ValueEnum)]
pub enum FamilyArg {
    Chebyshev,
    Perturbed,
    EquidistantShifted,
    PerNodeShift,
}

#[derive(Debug, Clone, Copy, ValueEnum)]
pub enum BasisArg {
    Nodal,
    ClosedForm,
}

impl From<BasisArg> for BasisForm {
    fn from(b: BasisArg) -> Self {
        match b {
            BasisArg::Nodal => BasisForm::Nodal,
            BasisArg::ClosedForm => BasisForm::ClosedForm,
        }
    }
}

#[derive(Debug, Clone, Copy, ValueEnum)]
pub enum WhichBasis {
    /// Chebyshev P_k.
    P,
    /// S_k factor.
    S,
    /// Closed form l_k, or P̃_k on a per-node-shift grid.
    L,
    /// Lagrange fundamental polynomials of the nodes.
    Nodal,
}

#[derive(Debug, Clone, Copy, ValueEnum)]
pub enum CheckArg {
    Pk,
    Sk,
    Lk,
    Lambda,
    FarNode,
}

#[derive(Debug, Clone, Copy, ValueEnum)]
pub enum PolicyArg {
    Zero,
    Fractions,
}

#[derive(Debug, Clone, Copy, ValueEnum)]
pub enum OperatorArg {
    Lagrange,
    Gruenwald,
    GeneralizedGruenwald,
}

/// Comma-separated items, each `a`, `a..b` (inclusive) or `a..b..xk`
/// (geometric with ratio `k`).
pub fn parse_n_list(text: &str) -> Result<Vec<usize>, CliError> {
    let parse = |s: &str| -> Result<usize, CliError> {
        s.trim().parse::<usize>().map_err(|_| usage(format!("bad n value {s:?} in n list")))
    };
    let mut out = Vec::new();
    for item in text.split(',') {
        let parts: Vec<&str> = item.split("..").collect();
        match parts.as_slice() {
            [a] => out.push(parse(a)?),
            [a, b] => {
                let (a, b) = (parse(a)?, parse(b)?);
                if a > b {
                    return Err(usage(format!("empty range {item:?}")));
                }
                out.extend(a..=b);
            }
            [a, b, step] => {
                let (a, b) = (parse(a)?, parse(b)?);
                let ratio = step
                    .trim()
                    .strip_prefix('x')
                    .and_then(|r| r.parse::<usize>().ok())
                    .filter(|&r| r >= 2)
                    .ok_or_else(|| usage(format!("bad geometric step {step:?}; expected x2, x3, ...")))?;
                if a == 0 || a > b {
                    return Err(usage(format!("empty range {item:?}")));
                }
                let mut n = a;
                while n <= b {
                    out.push(n);
                    n = n.checked_mul(ratio).ok_or_else(|| usage("n list overflows"))?;
                }
            }
            _ => return Err(usage(format!("bad n list item {item:?}"))),
        }
    }
    if out.contains(&0) {
        return Err(usage("n must be positive"));
    }
    Ok(out)
}

/// A float, or `[c]pi[/d]` such as `pi/4` or `3pi/4`.
pub fn parse_angle(text: &str) -> Result<f64, CliError> {
    let t = text.trim();
    let bad = || usage(format!("bad angle {t:?}"));
    let Some(pos) = t.find("pi") else {
        return t.parse::<f64>().map_err(|_| bad());
    };
    let coeff = match t[..pos].trim_end_matches('*') {
        "" => 1.0,
        "-" => -1.0,
        c => c.parse::<f64>().map_err(|_| bad())?,
    };
    let rest = &t[pos + 2..];
    let den = if rest.is_empty() {
        1.0
    } else {
        rest.strip_prefix('/').and_then(|d| d.parse::<f64>().ok()).ok_or_else(bad)?
    };
    Ok(coeff * PI / den)
}

fn parse_fractions(text: &str) -> Result<Vec<f64>, CliError> {
    text.split(',')
        .map(|s| {
            let v = s.trim().parse::<f64>().map_err(|_| usage(format!("bad fraction {s:?}")))?;
            check_theta0_frac(v)?;
            Ok(v)
        })
        .collect()
}

/// Rendered report plus whether any row failed its invariant.
pub struct Outcome {
    pub text: String,
    pub failed: bool,
    pub out: Option<PathBuf>,
}

fn finish<T: Tabular>(rows: &[T], output: &OutputArgs, meta: &Meta, failed: bool) -> Outcome {
    let format = match output.format {
        FormatArg::Csv => Format::Csv,
        FormatArg::Json => Format::Json,
    };
    Outcome { text: render(rows, format, meta), failed, out: output.out.clone() }
}

fn subcommand_name(command: &Command) -> &'static str {
    match command {
        Command::Nodes { .. } => "nodes",
        Command::Basis { .. } => "basis",
        Command::Lebesgue { .. } => "lebesgue",
        Command::Bounds { .. } => "bounds",
        Command::Converge { .. } => "converge",
        Command::Voronovskaja { .. } => "voronovskaja",
        Command::Quantcheck { .. } => "quantcheck",
        Command::Runge { .. } => "runge",
    }
}

pub fn execute(cli: &Cli, command_line: String) -> Result<Outcome, CliError> {
    let meta = Meta { command_line, subcommand: subcommand_name(&cli.command).to_string() };
    match &cli.command {
        Command::Nodes { n, family, output } => {
            let grid = family.spec()?.build(*n)?;
            let rows: Vec<NodeRow> = grid
                .angles()
                .iter()
                .zip(grid.cosines())
                .enumerate()
                .map(|(i, (&angle, cos_angle))| NodeRow { k: i + 1, angle, cos_angle })
                .collect();
            Ok(finish(&rows, output, &meta, false))
        }
        Command::Basis { n, which, grid, theta_min, theta_max, family, output } => {
            let angles = family.spec()?.build(*n)?;
            let (lo, hi) = (parse_angle(theta_min)?, parse_angle(theta_max)?);
            if !(lo <= hi) || *grid < 2 {
                return Err(usage("need --theta-min <= --theta-max and --grid >= 2"));
            }
            let choice = match which {
                WhichBasis::P => BasisChoice::Chebyshev,
                WhichBasis::S => BasisChoice::SFactor,
                WhichBasis::L => BasisChoice::ClosedForm,
                WhichBasis::Nodal => BasisChoice::Nodal,
            };
            let rows = basis_table(choice, &angles, &linspace(lo, hi, *grid))?;
            Ok(finish(&rows, output, &meta, false))
        }
        Command::Lebesgue { ns, grid, profile, family, output } => {
            let n_list = ns.resolve()?;
            let spec = family.spec()?;
            let form = family.form(spec.default_operator());
            if *profile {
                let thetas = theta_grid(*grid)?;
                let mut rows = Vec::new();
                for &n in &n_list {
                    let op = gruenwald_core::Operator::new(spec.default_operator(), &spec.build(n)?, form)?;
                    rows.extend(lebesgue_profile(&op, &thetas)?.into_iter().map(|(theta, lambda)| ProfileRow {
                        n,
                        theta,
                        lambda,
                    }));
                }
                Ok(finish(&rows, output, &meta, false))
            } else {
                let rows = lebesgue_summary(&spec, form, &n_list, *grid)?;
                Ok(finish(&rows, output, &meta, false))
            }
        }
        Command::Bounds { check, ns, grid, theta0_policy, theta0_frac, basis, output } => {
            let kind = match check {
                CheckArg::Pk => BoundKind::Pk,
                CheckArg::Sk => BoundKind::Sk,
                CheckArg::Lk => BoundKind::Lk,
                CheckArg::Lambda => BoundKind::Lambda,
                CheckArg::FarNode => BoundKind::FarNode,
            };
            let policy = match (theta0_frac, theta0_policy) {
                (Some(list), _) => Theta0Policy::List(parse_fractions(list)?),
                (None, PolicyArg::Zero) => Theta0Policy::Zero,
                (None, PolicyArg::Fractions) => Theta0Policy::Fractions,
            };
            let rows = bound_sweep(kind, &ns.resolve()?, *grid, &policy, (*basis).into())?;
            let failed = rows.iter().any(|r| !r.passed);
            Ok(finish(&rows, output, &meta, failed))
        }
        Command::Converge { function, ns, operator, grid, family, output } => {
            let spec = family.spec()?;
            let kind = operator.map_or(spec.default_operator(), |o| match o {
                OperatorArg::Lagrange => OperatorKind::Lagrange,
                OperatorArg::Gruenwald => OperatorKind::Gruenwald,
                OperatorArg::GeneralizedGruenwald => OperatorKind::GeneralizedGruenwald,
            });
            let table = convergence_study(function, &spec, kind, family.form(kind), &ns.resolve()?, *grid)?;
            Ok(finish(&table.records(), output, &meta, false))
        }
        Command::Voronovskaja { function, theta_list, ns, family, output } => {
            let thetas: Vec<f64> = theta_list.split(',').map(parse_angle).collect::<Result<_, _>>()?;
            let spec = family.spec()?;
            let rows =
                voronovskaja_study(function, &spec, family.form(spec.default_operator()), &thetas, &ns.resolve()?)?;
            let failed = rows.iter().any(|r| !r.passed);
            Ok(finish(&rows, output, &meta, failed))
        }
        Command::Quantcheck { function, ns, grid, family, output } => {
            let names: Vec<&str> = match function {
                Some(list) => list.split(',').map(str::trim).collect(),
                None => registry().iter().map(|f| f.name).collect(),
            };
            let spec = family.spec()?;
            let rows = quantitative_check(&names, &spec, family.form(spec.default_operator()), &ns.resolve()?, *grid)?;
            let failed = rows.iter().any(|r| !r.passed);
            Ok(finish(&rows, output, &meta, failed))
        }
        Command::Runge { ns, grid, output } => {
            let rows = runge_contrast(&ns.resolve()?, *grid)?;
            Ok(finish(&rows, output, &meta, false))
        }
    }
}

/// Caps the global thread pool from `GRUENWALD_THREADS` when it is set.
pub fn configure_threads() -> Result<(), CliError> {
    let Ok(value) = std::env::var("GRUENWALD_THREADS") else {
        return Ok(());
    };
    let threads = value
        .trim()
        .parse::<usize>()
        .ok()
        .filter(|&t| t > 0)
        .ok_or_else(|| usage(format!("GRUENWALD_THREADS must be a positive integer, got {value:?}")))?;
    rayon::ThreadPoolBuilder::new()
        .num_threads(threads)
        .build_global()
        .map_err(|e| usage(format!("cannot size the thread pool: {e}")))
}

/// Parses `args`, runs the subcommand, writes the report and returns the exit
/// status.
pub fn run(args: Vec<String>) -> i32 {
    let cli = match Cli::try_parse_from(&args) {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return e.exit_code();
        }
    };
    if let Err(e) = configure_threads() {
        eprintln!("error: {e}");
        return e.exit_code();
    }
    let outcome = match execute(&cli, args.join(" ")) {
        Ok(o) => o,
        Err(e) => {
            eprintln!("error: {e}");
            return e.exit_code();
        }
    };
    let written = match &outcome.out {
        Some(path) => std::fs::write(path, &outcome.text).map_err(|source| CliError::Io { path: path.clone(), source }),
        None => {
            use std::io::Write;
            std::io::stdout()
                .write_all(outcome.text.as_bytes())
                .map_err(|source| CliError::Io { path: PathBuf::from("<stdout>"), source })
        }
    };
    if let Err(e) = written {
        eprintln!("error: {e}");
        return e.exit_code();
    }
    if outcome.failed {
        EXIT_INVARIANT
    } else {
        EXIT_OK
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn n_list_syntax() {
        assert_eq!(parse_n_list("8,16,32").unwrap(), vec![8, 16, 32]);
        assert_eq!(parse_n_list("2..5").unwrap(), vec![2, 3, 4, 5]);
        assert_eq!(parse_n_list("8..512..x2").unwrap(), vec![8, 16, 32, 64, 128, 256, 512]);
        assert_eq!(parse_n_list("1..30..x3").unwrap(), vec![1, 3, 9, 27]);
        assert_eq!(parse_n_list("4,8..9").unwrap(), vec![4, 8, 9]);
        for bad in ["", "a", "5..2", "0", "2..8..x1", "2..8..y2", "1..2..3..4"] {
            assert!(parse_n_list(bad).is_err(), "{bad}");
        }
    }

    #[test]
    fn angle_syntax() {
        assert_eq!(parse_angle("2.0").unwrap(), 2.0);
        assert_eq!(parse_angle("pi").unwrap(), PI);
        assert_eq!(parse_angle("pi/4").unwrap(), PI / 4.0);
        assert_eq!(parse_angle("3pi/4").unwrap(), 3.0 * PI / 4.0);
        assert_eq!(parse_angle("-pi").unwrap(), -PI);
        assert!(parse_angle("pie").is_err());
    }

    #[test]
    fn theta0_fraction_is_open_interval() {
        assert!(check_theta0_frac(0.99).is_ok());
        assert!(check_theta0_frac(-1.0).is_err());
        assert!(check_theta0_frac(1.0).is_err());
        assert!(parse_fractions("0.5,-0.9").is_ok());
        assert!(parse_fractions("0.5,1.2").is_err());
    }

    fn exec(line: &str) -> Outcome {
        let args: Vec<String> = line.split_whitespace().map(String::from).collect();
        execute(&Cli::try_parse_from(&args).unwrap(), line.to_string()).unwrap()
    }

    fn status(line: &str) -> i32 {
        let path = std::env::temp_dir().join(format!("gruenwald-cli-{}-{}.out", std::process::id(), line.len()));
        let mut args: Vec<String> = line.split_whitespace().map(String::from).collect();
        args.extend(["--out".to_string(), path.display().to_string()]);
        let code = run(args);
        let _ = std::fs::remove_file(&path);
        code
    }

    #[test]
    fn nodes_chebyshev_four() {
        let out = exec("gruenwald nodes --family chebyshev --n 4");
        let lines: Vec<&str> = out.text.lines().collect();
        assert_eq!(lines.len(), 5);
        assert_eq!(lines[0], "k,angle,cos_angle");
        for (k, line) in lines[1..].iter().enumerate() {
            let cells: Vec<f64> = line.split(',').map(|c| c.parse().unwrap()).collect();
            let theta = (2 * k + 1) as f64 * PI / 8.0;
            assert_eq!(cells[0], (k + 1) as f64);
            assert!((cells[1] - theta).abs() < 1e-15 && (cells[2] - theta.cos()).abs() < 1e-15);
        }
        assert!(!out.failed);
    }

    #[test]
    fn every_subcommand_renders() {
        for line in [
            "gruenwald basis --n 4 --which p --grid 11",
            "gruenwald basis --n 4 --which nodal --family perturbed --theta0-frac 0.5 --grid 11",
            "gruenwald lebesgue --n-list 2..8 --grid 101",
            "gruenwald lebesgue --n 8 --grid 21 --profile",
            "gruenwald bounds --check pk --n-list 1..4 --grid 201",
            "gruenwald converge --function hat --n-list 8..32..x2 --grid 201",
            "gruenwald voronovskaja --function cosine --n-list 8,16",
            "gruenwald quantcheck --function abs_cos,sin3 --n-list 4..8 --grid 201",
            "gruenwald runge --n-list 4,8 --grid 201",
        ] {
            let out = exec(line);
            assert!(out.text.lines().count() > 1, "{line}");
            assert!(!out.failed, "{line}");
        }
    }

    #[test]
    fn json_mirror_carries_meta() {
        let out = exec("gruenwald nodes --n 3 --format json");
        let doc: serde_json::Value = serde_json::from_str(&out.text).unwrap();
        assert_eq!(doc["meta"]["subcommand"], "nodes");
        assert_eq!(doc["meta"]["command_line"], "gruenwald nodes --n 3 --format json");
        assert_eq!(doc["rows"].as_array().unwrap().len(), 3);
    }

    #[test]
    fn exit_codes() {
        assert_eq!(status("gruenwald nodes --n 4"), EXIT_OK);
        assert_eq!(status("gruenwald bounds --check sk --n-list 2..8 --theta0-frac 0.5 --grid 201"), EXIT_OK);
        assert_eq!(status("gruenwald bounds --check lambda --n 64 --theta0-frac 0.9"), EXIT_INVARIANT);
        assert_eq!(status("gruenwald nodes --n 4 --family perturbed --theta0-frac 1.0"), EXIT_VALIDATION);
        assert_eq!(status("gruenwald nodes --n 0"), EXIT_VALIDATION);
        assert_eq!(status("gruenwald nodes --n 4 --bogus"), EXIT_VALIDATION);
        assert_eq!(status("gruenwald converge --function nope --n 8"), EXIT_VALIDATION);
        assert_eq!(status("gruenwald runge --n-list 8..4"), EXIT_VALIDATION);
    }

    #[test]
    fn repeat_runs_are_identical() {
        for line in [
            "gruenwald lebesgue --n-list 4..64..x2 --family perturbed --theta0-frac -0.9 --grid 301",
            "gruenwald quantcheck --n-list 4..16 --grid 301 --format json",
        ] {
            assert_eq!(exec(line).text, exec(line).text, "{line}");
        }
    }

    #[test]
    fn basis_default_follows_operator() {
        let generalized = exec("gruenwald converge --function cosine --family per-node-shift --shift-spread 0.5 --n 8");
        assert!(generalized.text.lines().nth(1).unwrap().contains(",generalized-gruenwald,closed-form,"));
        let nodal = exec("gruenwald converge --function cosine --family perturbed --theta0-frac 0.5 --n 8");
        assert!(nodal.text.lines().nth(1).unwrap().contains(",gruenwald,nodal,"));
        let forced =
            exec("gruenwald converge --function cosine --family per-node-shift --shift-spread 0.5 --n 8 --basis nodal");
        assert!(forced.text.lines().nth(1).unwrap().contains(",nodal,"));
    }
}
