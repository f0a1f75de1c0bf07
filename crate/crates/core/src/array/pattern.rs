use std::f64::consts::PI;

use num_complex::Complex64;

use super::{AngleGrid, ArrayGeometry, Excitation};
use crate::error::{Error, Result};

/// Quadrature nodes used by [`parseval_check`].
pub const PARSEVAL_NODES: usize = 1 << 14;

/// Sampled far-field response with its normalized dB magnitude.
#[derive(Debug, Clone, PartialEq)]
pub struct Pattern {
    grid: AngleGrid,
    af_complex: Vec<Complex64>,
    af_db: Vec<f64>,
}

impl Pattern {
    fn from_samples(grid: AngleGrid, af_complex: Vec<Complex64>) -> Self {
        let peak = af_complex.iter().map(|a| a.norm()).fold(0.0_f64, f64::max);
        let af_db = af_complex
            .iter()
            .map(|a| {
                if peak > 0.0 {
                    20.0 * (a.norm() / peak).log10()
                } else {
                    f64::NEG_INFINITY
                }
            })
            .collect();
        Self {
            grid,
            af_complex,
            af_db,
        }
    }

    pub fn grid(&self) -> &AngleGrid {
        &self.grid
    }

    pub fn theta_deg(&self) -> &[f64] {
        self.grid.theta_deg()
    }

    pub fn af_complex(&self) -> &[Complex64] {
        &self.af_complex
    }

    pub fn af_db(&self) -> &[f64] {
        &self.af_db
    }

    pub fn len(&self) -> usize {
        self.af_complex.len()
    }

    pub fn is_empty(&self) -> bool {
        self.af_complex.is_empty()
    }

    pub fn peak_magnitude(&self) -> f64 {
        self.af_complex.iter().map(|a| a.norm()).fold(0.0_f64, f64::max)
    }
}

/// `sum_n w_n z^n` by Horner's rule.
fn horner(weights: &[Complex64], z: Complex64) -> Complex64 {
    weights
        .iter()
        .rev()
        .fold(Complex64::new(0.0, 0.0), |acc, &w| acc * z + w)
}

/// Array factor at a single direction.
pub fn evaluate_af(geom: &ArrayGeometry, exc: &Excitation, theta_deg: f64) -> Complex64 {
    let psi = geom.kd() * theta_deg.to_radians().cos();
    horner(exc.weights(), Complex64::from_polar(1.0, psi))
}

/// `AF(theta) = sum_n w_n exp(j n kd cos(theta))` over the grid, with
/// isotropic elements.
pub fn array_factor(geom: &ArrayGeometry, exc: &Excitation, grid: &AngleGrid) -> Result<Pattern> {
    far_field(geom, exc, grid, |_| 1.0)
}

/// Far field `F = AF * EF` with a caller-supplied element pattern (a real
/// multiplier per polar angle in degrees).
pub fn far_field<F>(
    geom: &ArrayGeometry,
    exc: &Excitation,
    grid: &AngleGrid,
    element: F,
) -> Result<Pattern>
where
    F: Fn(f64) -> f64,
{
    geom.check_len(exc.len())?;
    if grid.is_empty() {
        return Err(Error::arg("angle grid is empty"));
    }
    let samples = grid
        .theta_deg()
        .iter()
        .map(|&t| evaluate_af(geom, exc, t) * element(t))
        .collect();
    Ok(Pattern::from_samples(grid.clone(), samples))
}

fn check_steer(steer_deg: f64) -> Result<()> {
    if steer_deg > 0.0 && steer_deg < 180.0 {
        Ok(())
    } else {
        Err(Error::arg(format!(
            "steer angle must lie in (0, 180) deg, got {steer_deg}"
        )))
    }
}

/// Unit-amplitude progressive phase `beta_n = -n kd cos(steer)` which
/// brings `psi` to zero at the steer direction.
pub fn steering_phases(geom: &ArrayGeometry, steer_deg: f64) -> Result<Excitation> {
    check_steer(steer_deg)?;
    let beta = -geom.kd() * steer_deg.to_radians().cos();
    Excitation::new(
        (0..geom.n_elements())
            .map(|n| Complex64::from_polar(1.0, n as f64 * beta))
            .collect(),
    )
}

/// Compose an excitation with the progressive phase for `steer_deg`.
pub fn apply_steering(geom: &ArrayGeometry, exc: &Excitation, steer_deg: f64) -> Result<Excitation> {
    geom.check_len(exc.len())?;
    exc.hadamard(&steering_phases(geom, steer_deg)?)
}

/// Returns `(sum |w_n|^2, (1/2pi) int_0^{2pi} |AF(psi)|^2 dpsi)`.
///
/// The integral is evaluated with the periodic trapezoid rule on
/// [`PARSEVAL_NODES`] nodes, which is exact for trigonometric polynomials
/// of degree below the node count.
pub fn parseval_check(geom: &ArrayGeometry, exc: &Excitation) -> Result<(f64, f64)> {
    geom.require_half_wave("parseval check")?;
    geom.check_len(exc.len())?;
    let lhs = exc.energy();
    let m = PARSEVAL_NODES;
    let rhs = (0..m)
        .map(|k| {
            let psi = 2.0 * PI * k as f64 / m as f64;
            horner(exc.weights(), Complex64::from_polar(1.0, psi)).norm_sqr()
        })
        .sum::<f64>()
        / m as f64;
    Ok((lhs, rhs))
}
