//! Experiment drivers, report rendering and the `gruenwald` command line.

#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod cli;
pub mod experiments;
pub mod report;
