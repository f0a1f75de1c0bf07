//! Dolph-Chebyshev equal-ripple taper.

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::array::{ArrayGeometry, Excitation};
use crate::error::{Error, Result};
use std::f64::consts::PI;

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ChebyshevSpec {
    pub sll_db: f64,
}

impl ChebyshevSpec {
    pub fn new(sll_db: f64) -> Result<Self> {
        if sll_db.is_nan() || sll_db > -10.0 {
            return Err(Error::arg(format!("sidelobe level must be <= -10 dB, got {sll_db}")));
        }
        Ok(Self { sll_db })
    }

    /// Main-beam to sidelobe voltage ratio.
    pub fn ratio(&self) -> f64 {
        10f64.powf(-self.sll_db / 20.0)
    }
}

/// `T_m(x)`, using the hyperbolic form outside `[-1, 1]`.
pub fn chebyshev_t(m: usize, x: f64) -> f64 {
    let mf = m as f64;
    if x.abs() <= 1.0 {
        (mf * x.acos()).cos()
    } else if x > 1.0 {
        (mf * x.acosh()).cosh()
    } else {
        let sign = if m.is_multiple_of(2) { 1.0 } else { -1.0 };
        sign * (mf * (-x).acosh()).cosh()
    }
}

/// Broadside Dolph-Chebyshev weights: real, symmetric, unit amplitude sum.
///
/// The pattern `T_{N-1}(x0 cos(psi/2))` is sampled at `psi_k = 2 pi k / N`
/// and inverted onto the centred element positions.
pub fn chebyshev_weights(geom: &ArrayGeometry, spec: &ChebyshevSpec) -> Result<Excitation> {
    let n = geom.n_elements();
    if n < 3 {
        return Err(Error::arg("Dolph-Chebyshev synthesis needs at least 3 elements"));
    }
    ChebyshevSpec::new(spec.sll_db)?;
    let order = n - 1;
    let x0 = (spec.ratio().acosh() / order as f64).cosh();
    let samples: Vec<(f64, f64)> = (0..n)
        .map(|k| {
            let psi = 2.0 * PI * k as f64 / n as f64;
            (psi, chebyshev_t(order, x0 * (psi / 2.0).cos()))
        })
        .collect();
    let coeff = |idx: usize| -> f64 {
        let np = geom.centered_index(idx);
        samples
            .iter()
            .map(|&(psi, v)| Complex64::from_polar(v, -np * psi))
            .sum::<Complex64>()
            .re
            / n as f64
    };
    let mut w = vec![0.0; n];
    for idx in n / 2..n {
        let c = coeff(idx);
        w[idx] = c;
        w[n - 1 - idx] = c;
    }
    Excitation::from_real(&w)?.normalized_unit_sum()
}
