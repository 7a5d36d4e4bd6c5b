//! Small floating-point helpers shared by the evaluators.

use alloc::vec::Vec;

/// Neumaier's compensated summation.
#[derive(Clone, Copy, Debug, Default)]
pub struct CompensatedSum {
    sum: f64,
    carry: f64,
}

impl CompensatedSum {
    pub fn new() -> Self {
        Self::default()
    }

    #[inline]
    pub fn add(&mut self, x: f64) {
        let t = self.sum + x;
        if self.sum.abs() >= x.abs() {
            self.carry += (self.sum - t) + x;
        } else {
            self.carry += (x - t) + self.sum;
        }
        self.sum = t;
    }

    pub fn value(&self) -> f64 {
        self.sum + self.carry
    }
}

impl FromIterator<f64> for CompensatedSum {
    fn from_iter<I: IntoIterator<Item = f64>>(iter: I) -> Self {
        let mut acc = CompensatedSum::new();
        for x in iter {
            acc.add(x);
        }
        acc
    }
}

pub fn compensated_sum<I: IntoIterator<Item = f64>>(iter: I) -> f64 {
    iter.into_iter().collect::<CompensatedSum>().value()
}

/// Running product that keeps its binary exponent separately so that long
/// products of node differences neither overflow nor underflow.
#[derive(Clone, Copy, Debug)]
pub struct ScaledProduct {
    mantissa: f64,
    exponent: i32,
    pending: u32,
}

const RENORMALIZE_EVERY: u32 = 32;

impl ScaledProduct {
    pub fn one() -> Self {
        ScaledProduct { mantissa: 1.0, exponent: 0, pending: 0 }
    }

    #[inline]
    pub fn mul(&mut self, x: f64) {
        self.mantissa *= x;
        self.pending += 1;
        if self.pending == RENORMALIZE_EVERY {
            self.renormalize();
        }
    }

    fn renormalize(&mut self) {
        self.pending = 0;
        if self.mantissa == 0.0 || !self.mantissa.is_finite() {
            return;
        }
        let (m, e) = libm::frexp(self.mantissa);
        self.mantissa = m;
        self.exponent += e;
    }

    /// Returns `(mantissa, exponent)` with the value equal to `mantissa · 2^exponent`.
    pub fn parts(mut self) -> (f64, i32) {
        self.renormalize();
        (self.mantissa, self.exponent)
    }

    pub fn value(self) -> f64 {
        let (m, e) = self.parts();
        libm::scalbn(m, e)
    }
}

/// `points` equally spaced values on `[a, b]` with both endpoints exact.
pub fn linspace(a: f64, b: f64, points: usize) -> Vec<f64> {
    match points {
        0 => Vec::new(),
        1 => alloc::vec![a],
        _ => {
            let m = (points - 1) as f64;
            let mut out: Vec<f64> = (0..points).map(|i| a + (b - a) * (i as f64) / m).collect();
            out[points - 1] = b;
            out
        }
    }
}
