//! Null placement by array-polynomial roots.

use std::f64::consts::PI;

use num_complex::Complex64;

use super::ChebyshevSpec;
use crate::array::{ArrayGeometry, Excitation};
use crate::error::{Error, Result};

/// Weights whose array polynomial `sum_n w_n z^n` has a root at
/// `z_i = exp(j kd cos(theta_i))` for every prescribed null, normalized to
/// unit amplitude sum.
pub fn schelkunoff_weights(geom: &ArrayGeometry, null_angles_deg: &[f64]) -> Result<Excitation> {
    let n = geom.n_elements();
    if null_angles_deg.len() != n - 1 {
        return Err(Error::arg(format!(
            "{n} elements need exactly {} nulls, got {}",
            n - 1,
            null_angles_deg.len()
        )));
    }
    if let Some(t) = null_angles_deg.iter().find(|t| !(0.0..=180.0).contains(*t)) {
        return Err(Error::arg(format!("null angle {t} outside [0, 180] deg")));
    }
    let roots: Vec<Complex64> = null_angles_deg
        .iter()
        .map(|t| Complex64::from_polar(1.0, geom.kd() * t.to_radians().cos()))
        .collect();
    Excitation::new(poly_from_roots(&roots))?.normalized_unit_sum()
}

/// Coefficients `c_0..c_k` (ascending powers) of `prod_i (z - r_i)`.
pub(crate) fn poly_from_roots(roots: &[Complex64]) -> Vec<Complex64> {
    let mut c = vec![Complex64::new(1.0, 0.0)];
    for &r in roots {
        let mut next = vec![Complex64::new(0.0, 0.0); c.len() + 1];
        for (k, &ck) in c.iter().enumerate() {
            next[k + 1] += ck;
            next[k] -= r * ck;
        }
        c = next;
    }
    c
}

/// Null directions of a discrete Taylor (Villeneuve) pattern: the first
/// `n_bar - 1` null pairs are moved out to the Chebyshev-like positions
/// `sigma sqrt(A^2 + (n - 1/2)^2)`, the rest stay at the uniform-array
/// positions `2 pi n / N`.
pub fn villeneuve_nulls(geom: &ArrayGeometry, sll_db: f64, n_bar: usize) -> Result<Vec<f64>> {
    ChebyshevSpec::new(sll_db)?;
    let n = geom.n_elements();
    if n_bar < 2 || 2 * n_bar >= n {
        return Err(Error::arg(format!("n_bar must satisfy 2 <= n_bar < N/2, got {n_bar}")));
    }
    let r = 10f64.powf(-sll_db / 20.0);
    let a = r.acosh() / PI;
    let nb = n_bar as f64;
    let sigma = nb / (a * a + (nb - 0.5).powi(2)).sqrt();

    let mut psis = Vec::with_capacity(n - 1);
    for k in 1..=n / 2 {
        let kf = k as f64;
        let pos = if k < n_bar {
            sigma * (a * a + (kf - 0.5).powi(2)).sqrt()
        } else {
            kf
        };
        let psi = 2.0 * PI * pos / n as f64;
        psis.push(psi);
        if 2 * k != n {
            psis.push(-psi);
        }
    }
    psis.iter()
        .map(|psi| {
            let u = psi / geom.kd();
            if u.abs() > 1.0 + 1e-12 {
                Err(Error::Unsupported(format!(
                    "null at psi = {psi:.4} is outside the visible region for spacing {}",
                    geom.spacing_wl()
                )))
            } else {
                Ok(u.clamp(-1.0, 1.0).acos().to_degrees())
            }
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::array::evaluate_af;

    #[test]
    fn two_elements_null_at_broadside() {
        let g = ArrayGeometry::new(2, 0.5).unwrap();
        let w = schelkunoff_weights(&g, &[90.0]).unwrap();
        // (z - 1) -> [-1, 1] up to scale
        let r = w.weights()[1] / w.weights()[0];
        assert!((r + 1.0).norm() < 1e-15);
    }

    #[test]
    fn three_elements_conjugate_roots() {
        let g = ArrayGeometry::new(3, 0.5).unwrap();
        let w = schelkunoff_weights(&g, &[60.0, 120.0]).unwrap();
        // Oracle: roots exp(+-j pi/2) -> (z - j)(z + j) = z^2 + 1
        let ws = w.weights();
        assert!((ws[0] - ws[2]).norm() < 1e-15);
        assert!(ws[1].norm() < 1e-15);
        // conjugate symmetric: w_k = conj(w_{N-1-k}) up to a common phase
        assert!((ws[0] - ws[2].conj()).norm() < 1e-15);
        for t in [60.0, 120.0] {
            assert!(evaluate_af(&g, &w, t).norm() < 1e-15);
        }
    }

    #[test]
    fn wrong_null_count() {
        let g = ArrayGeometry::new(4, 0.5).unwrap();
        assert!(matches!(schelkunoff_weights(&g, &[30.0, 60.0]), Err(Error::Argument(_))));
        assert!(matches!(schelkunoff_weights(&g, &[30.0, 60.0, 200.0]), Err(Error::Argument(_))));
    }

    #[test]
    fn villeneuve_null_count_and_symmetry() {
        let g = ArrayGeometry::reference();
        let nulls = villeneuve_nulls(&g, -30.0, 5).unwrap();
        assert_eq!(nulls.len(), 15);
        let mut inner: Vec<f64> = nulls.iter().copied().filter(|t| *t > 0.0).collect();
        assert_eq!(inner.len(), 14);
        inner.sort_by(f64::total_cmp);
        for (a, b) in inner.iter().zip(inner.iter().rev()) {
            assert!((a + b - 180.0).abs() < 1e-9);
        }
    }
}
