//! Second-form barycentric interpolation in `x`.

use alloc::vec::Vec;

use crate::numeric::{CompensatedSum, ScaledProduct};
use crate::{Error, Result};

/// Interpolant through `(x_j, y_j)` with weights `w_j ∝ 1/Π_{k≠j}(x_j − x_k)`,
/// rescaled so the largest has magnitude near 1.
#[derive(Clone, Debug)]
pub struct Barycentric {
    nodes: Vec<f64>,
    weights: Vec<f64>,
}

impl Barycentric {
    /// Nodes must be distinct and finite.
    pub fn new(nodes: &[f64]) -> Result<Self> {
        if nodes.is_empty() {
            return Err(Error::InvalidArgument("need at least one node"));
        }
        if nodes.iter().any(|x| !x.is_finite()) {
            return Err(Error::InvalidArgument("nodes must be finite"));
        }
        let mut parts = Vec::with_capacity(nodes.len());
        for (j, &xj) in nodes.iter().enumerate() {
            let mut p = ScaledProduct::one();
            for (k, &xk) in nodes.iter().enumerate() {
                if k != j {
                    if xj == xk {
                        return Err(Error::InvalidArgument("nodes must be distinct"));
                    }
                    p.mul(xj - xk);
                }
            }
            parts.push(p.parts());
        }
        // w_j = 1/(m_j 2^{e_j}); shift every exponent by the smallest one
        let e_min = parts.iter().map(|&(_, e)| e).min().unwrap_or(0);
        let weights = parts.iter().map(|&(m, e)| libm::scalbn(1.0 / m, e_min - e)).collect();
        Ok(Barycentric { nodes: nodes.to_vec(), weights })
    }

    /// Equally spaced nodes `a + j(b − a)/(m − 1)`, `j = 0..m`.
    pub fn equispaced(a: f64, b: f64, m: usize) -> Result<Self> {
        if m == 0 {
            return Err(Error::InvalidArgument("need at least one node"));
        }
        Self::new(&crate::numeric::linspace(a, b, m))
    }

    pub fn nodes(&self) -> &[f64] {
        &self.nodes
    }

    pub fn weights(&self) -> &[f64] {
        &self.weights
    }

    pub fn eval(&self, values: &[f64], x: f64) -> Result<f64> {
        if values.len() != self.nodes.len() {
            return Err(Error::InvalidArgument("one value per node expected"));
        }
        let mut num = CompensatedSum::new();
        let mut den = CompensatedSum::new();
        for ((&xj, &wj), &yj) in self.nodes.iter().zip(&self.weights).zip(values) {
            let d = x - xj;
            if d == 0.0 {
                return Ok(yj);
            }
            let t = wj / d;
            num.add(t * yj);
            den.add(t);
        }
        Ok(num.value() / den.value())
    }
}
