use alloc::string::String;
use core::fmt;

#[derive(Clone, Debug, PartialEq)]
pub enum Error {
    InvalidArgument(&'static str),
    /// `|θ₀| ≥ π/(2n)`.
    OutOfRangeShift {
        n: usize,
        theta0: f64,
    },
    InvalidConstruction(&'static str),
    InvalidShifts(&'static str),
    /// A denominator that cannot be resolved by a removable-singularity limit.
    SingularEvaluation {
        theta: f64,
    },
    InvalidOperatorGrid(&'static str),
    OutOfDomain {
        theta: f64,
    },
    InvalidKappa {
        kappa: f64,
        min: f64,
    },
    InvalidFunction {
        name: &'static str,
        at: f64,
    },
    NotFound(String),
    InsufficientSmoothness(&'static str),
}

impl fmt::Display for Error {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Error::InvalidArgument(msg) => write!(f, "invalid argument: {msg}"),
            Error::OutOfRangeShift { n, theta0 } => {
                write!(f, "shift theta0 = {theta0} is outside the open interval (-pi/2n, pi/2n) for n = {n}")
            }
            Error::InvalidConstruction(msg) => write!(f, "invalid construction: {msg}"),
            Error::InvalidShifts(msg) => write!(f, "invalid shifts: {msg}"),
            Error::SingularEvaluation { theta } => write!(f, "singular evaluation at theta = {theta}"),
            Error::InvalidOperatorGrid(msg) => write!(f, "operator/grid mismatch: {msg}"),
            Error::OutOfDomain { theta } => write!(f, "theta = {theta} is outside [0, pi]"),
            Error::InvalidKappa { kappa, min } => write!(f, "kappa = {kappa} must exceed pi/2n = {min}"),
            Error::InvalidFunction { name, at } => write!(f, "function {name} is not finite at {at}"),
            Error::NotFound(name) => write!(f, "unknown function: {name}"),
            Error::InsufficientSmoothness(name) => {
                write!(f, "function {name} lacks the derivatives or bound on f'' this needs")
            }
        }
    }
}

impl core::error::Error for Error {}
