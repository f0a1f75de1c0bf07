//! Taylor n-bar taper sampled at the element centres.

use std::f64::consts::PI;

use serde::{Deserialize, Serialize};

use super::ChebyshevSpec;
use crate::array::{ArrayGeometry, Excitation};
use crate::error::{Error, Result};

pub const DEFAULT_N_BAR: usize = 5;

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct TaylorSpec {
    pub sll_db: f64,
    pub n_bar: usize,
}

impl TaylorSpec {
    pub fn new(sll_db: f64, n_bar: usize) -> Result<Self> {
        ChebyshevSpec::new(sll_db)?;
        if n_bar < 2 {
            return Err(Error::arg(format!("n_bar must be at least 2, got {n_bar}")));
        }
        Ok(Self { sll_db, n_bar })
    }
}

/// Line-source coefficients `F_m`, `m = 1..n_bar-1`.
fn taylor_coefficients(spec: &TaylorSpec) -> Vec<f64> {
    let r = 10f64.powf(-spec.sll_db / 20.0);
    let a = r.acosh() / PI;
    let nb = spec.n_bar;
    let sigma2 = (nb * nb) as f64 / (a * a + (nb as f64 - 0.5).powi(2));
    (1..nb)
        .map(|m| {
            let mf = (m * m) as f64;
            let num: f64 = (1..nb)
                .map(|n| 1.0 - mf / (sigma2 * (a * a + (n as f64 - 0.5).powi(2))))
                .product();
            let den: f64 = (1..nb)
                .filter(|&n| n != m)
                .map(|n| 1.0 - mf / (n * n) as f64)
                .product();
            let sign = if m % 2 == 1 { 1.0 } else { -1.0 };
            sign * num / (2.0 * den)
        })
        .collect()
}

/// `g(x) = 1 + 2 sum_m F_m cos(2 pi m x / L)` at element centres, real and
/// symmetric, normalized to unit amplitude sum.
pub fn taylor_weights(geom: &ArrayGeometry, spec: &TaylorSpec) -> Result<Excitation> {
    let n = geom.n_elements();
    if n < 3 {
        return Err(Error::arg("Taylor synthesis needs at least 3 elements"));
    }
    TaylorSpec::new(spec.sll_db, spec.n_bar)?;
    if 2 * spec.n_bar >= n {
        return Err(Error::arg(format!(
            "n_bar = {} is too large for {n} elements (need n_bar < N/2)",
            spec.n_bar
        )));
    }
    let f = taylor_coefficients(spec);
    let g = |idx: usize| -> f64 {
        let x = geom.centered_index(idx) / n as f64;
        1.0 + 2.0
            * f.iter()
                .enumerate()
                .map(|(k, fm)| fm * (2.0 * PI * (k + 1) as f64 * x).cos())
                .sum::<f64>()
    };
    let mut w = vec![0.0; n];
    for idx in n / 2..n {
        let v = g(idx);
        w[idx] = v;
        w[n - 1 - idx] = v;
    }
    Excitation::from_real(&w)?.normalized_unit_sum()
}
