//! Averaged Lagrange interpolation on Chebyshev and perturbed Chebyshev nodes.
//!
//! Everything here works in angle space: a node `cos η` is stored as the angle
//! `η ∈ [0, π]` and functions are sampled as `f(η)`. The crate is `no_std`
//! (it needs `alloc`) and takes its transcendental functions from `libm`, so
//! results are bit-for-bit reproducible across platforms.
//!
//! Module map:
//!
//! * [`grid`]: node families and spacing diagnostics.
//! * [`basis`]: closed-form trigonometric fundamental functions and the
//!   product-form Lagrange basis on an arbitrary node set.
//! * [`operators`]: Lagrange, Gruenwald and generalized Gruenwald operators,
//!   the Lebesgue-type sum and the far-node estimate.
//! * [`functions`]: the registry of named test functions.
//! * [`smoothness`]: rate constants and modulus-of-continuity estimation.
//! * [`barycentric`]: barycentric interpolation in `x = cos θ`.

#![cfg_attr(not(feature = "std"), no_std)]
#![allow(clippy::must_use_candidate, clippy::missing_errors_doc, clippy::neg_cmp_op_on_partial_ord)]

extern crate alloc;

pub mod barycentric;
pub mod basis;
pub mod error;
pub mod functions;
pub mod grid;
pub mod numeric;
pub mod operators;
pub mod smoothness;

pub use basis::{BasisValue, NodalBasis};
pub use error::Error;
pub use functions::{get_function, FunctionSpec};
pub use grid::{AngleGrid, Family};
pub use operators::{BasisForm, FarNodeBound, FundamentalSystem, Operator, OperatorKind, SampleVector};

pub type Result<T, E = Error> = core::result::Result<T, E>;
