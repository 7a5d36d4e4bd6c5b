//! CSV and JSON rendering of experiment rows.
//!
//! Both formats share one column list per row type. CSV floats carry 17
//! significant digits; JSON numbers are shortest round-trip and non-finite
//! values become `null`.

use std::fmt::Write as _;

use gruenwald_core::smoothness::{c2_constant, first_moment_coeff, m_bound_coeff, second_derivative_coeff};
use serde_json::{json, Map, Value};

use crate::experiments::{
    BasisRow, BoundReport, ConvergenceTable, LebesgueSummary, QuantRow, RungeRow, VoronovskajaRow,
};

#[derive(Clone, Debug, PartialEq)]
pub enum Cell {
    Int(u64),
    Float(f64),
    Bool(bool),
    Text(String),
    Null,
}

impl From<f64> for Cell {
    fn from(v: f64) -> Self {
        Cell::Float(v)
    }
}

impl From<usize> for Cell {
    fn from(v: usize) -> Self {
        Cell::Int(v as u64)
    }
}

impl From<bool> for Cell {
    fn from(v: bool) -> Self {
        Cell::Bool(v)
    }
}

impl From<String> for Cell {
    fn from(v: String) -> Self {
        Cell::Text(v)
    }
}

impl From<&str> for Cell {
    fn from(v: &str) -> Self {
        Cell::Text(v.to_string())
    }
}

impl<T: Into<Cell>> From<Option<T>> for Cell {
    fn from(v: Option<T>) -> Self {
        v.map_or(Cell::Null, Into::into)
    }
}

impl Cell {
    pub fn to_csv(&self) -> String {
        match self {
            Cell::Int(v) => v.to_string(),
            Cell::Float(v) => format_float(*v),
            Cell::Bool(v) => v.to_string(),
            Cell::Text(s) if s.contains([',', '"', '\n']) => format!("\"{}\"", s.replace('"', "\"\"")),
            Cell::Text(s) => s.clone(),
            Cell::Null => String::new(),
        }
    }

    pub fn to_json(&self) -> Value {
        match self {
            Cell::Int(v) => json!(v),
            Cell::Float(v) if v.is_finite() => json!(v),
            Cell::Float(_) | Cell::Null => Value::Null,
            Cell::Bool(v) => json!(v),
            Cell::Text(s) => json!(s),
        }
    }
}

/// 17 significant digits in scientific notation.
pub fn format_float(v: f64) -> String {
    if v.is_finite() {
        format!("{v:.16e}")
    } else if v.is_nan() {
        "nan".to_string()
    } else if v > 0.0 {
        "inf".to_string()
    } else {
        "-inf".to_string()
    }
}

pub trait Tabular {
    fn columns() -> &'static [&'static str];
    fn cells(&self) -> Vec<Cell>;
}

macro_rules! tabular {
    ($ty:ty { $($field:ident),* $(,)? }) => {
        impl Tabular for $ty {
            fn columns() -> &'static [&'static str] {
                &[$(stringify!($field)),*]
            }

            fn cells(&self) -> Vec<Cell> {
                vec![$(Cell::from(self.$field.clone())),*]
            }
        }
    };
}

#[derive(Clone, Debug, PartialEq)]
pub struct NodeRow {
    pub k: usize,
    pub angle: f64,
    pub cos_angle: f64,
}

#[derive(Clone, Debug, PartialEq)]
pub struct ProfileRow {
    pub n: usize,
    pub theta: f64,
    pub lambda: f64,
}

#[derive(Clone, Debug, PartialEq)]
pub struct ConvergenceRecord {
    pub function: String,
    pub family: String,
    pub operator: String,
    pub basis: String,
    pub n: usize,
    pub sup_error: f64,
    pub argmax_theta: f64,
    pub bound: Option<f64>,
    pub observed_rate: Option<f64>,
}

impl ConvergenceTable {
    pub fn records(&self) -> Vec<ConvergenceRecord> {
        self.rows
            .iter()
            .map(|r| ConvergenceRecord {
                function: self.function.clone(),
                family: self.family.clone(),
                operator: self.operator.name().to_string(),
                basis: self.basis.name().to_string(),
                n: r.n,
                sup_error: r.sup_error,
                argmax_theta: r.argmax_theta,
                bound: r.bound,
                observed_rate: r.observed_rate,
            })
            .collect()
    }
}

tabular!(NodeRow { k, angle, cos_angle });
tabular!(ProfileRow { n, theta, lambda });
tabular!(BasisRow { k, theta, value, status });
tabular!(LebesgueSummary { n, family, basis, max_lambda, argmax_theta, c2, margin });
tabular!(BoundReport {
    bound_name,
    n,
    theta0_frac,
    theta0,
    basis,
    theoretical,
    empirical_max,
    argmax_theta,
    argmax_k,
    argmax_n,
    margin,
    points,
    passed,
});
tabular!(ConvergenceRecord { function, family, operator, basis, n, sup_error, argmax_theta, bound, observed_rate });
tabular!(VoronovskajaRow { function, theta, n, error, scaled_error, bound, checked, passed });
tabular!(QuantRow { function, n, sup_error, argmax_theta, mu_n, omega, rhs, passed });
tabular!(RungeRow {
    n,
    lagrange_equidistant_error,
    gruenwald_chebyshev_error,
    gruenwald_angle_equidistant_error,
    gruenwald_x_equidistant_error,
});

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Format {
    Csv,
    Json,
}

/// Provenance attached to the JSON mirror.
#[derive(Clone, Debug, PartialEq)]
pub struct Meta {
    pub command_line: String,
    pub subcommand: String,
}

impl Meta {
    fn to_json(&self) -> Value {
        json!({
            "command_line": self.command_line,
            "subcommand": self.subcommand,
            "version": env!("CARGO_PKG_VERSION"),
            "constants": {
                "c2": c2_constant(),
                "pi": std::f64::consts::PI,
                "voronovskaja_coeff_d1": first_moment_coeff() + c2_constant(),
                "voronovskaja_coeff_d2": second_derivative_coeff(),
                "voronovskaja_const_coeff": m_bound_coeff(),
                "first_moment_coeff": first_moment_coeff(),
            },
        })
    }
}

pub fn render_csv<T: Tabular>(rows: &[T]) -> String {
    let mut out = T::columns().join(",");
    out.push('\n');
    for row in rows {
        let line: Vec<String> = row.cells().iter().map(Cell::to_csv).collect();
        let _ = writeln!(out, "{}", line.join(","));
    }
    out
}

pub fn render_json<T: Tabular>(rows: &[T], meta: &Meta) -> String {
    let records: Vec<Value> = rows
        .iter()
        .map(|row| {
            let map: Map<String, Value> = T::columns()
                .iter()
                .zip(row.cells())
                .map(|(name, cell)| ((*name).to_string(), cell.to_json()))
                .collect();
            Value::Object(map)
        })
        .collect();
    let doc = json!({ "meta": meta.to_json(), "rows": records });
    let mut text = serde_json::to_string_pretty(&doc).expect("JSON values always serialize");
    text.push('\n');
    text
}

pub fn render<T: Tabular>(rows: &[T], format: Format, meta: &Meta) -> String {
    match format {
        Format::Csv => render_csv(rows),
        Format::Json => render_json(rows, meta),
    }
}
