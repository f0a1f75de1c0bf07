//! Weighted Fourier synthesis of a sector beam.
//!
//! At half-wave spacing `psi = pi u` sweeps exactly one period over the
//! visible region, so the element weights are the Fourier coefficients of
//! the desired pattern taken at the centred element positions
//! `n' = n - (N - 1) / 2`.

use std::f64::consts::PI;

use num_complex::Complex64;

use super::DesiredPattern;
use crate::array::{ArrayGeometry, Excitation};
use crate::error::Result;

/// Trapezoid panels used for the coefficient integrals.
pub const FOURIER_QUADRATURE_NODES: usize = 1 << 14;

/// `w_n' = (1/2pi) int_{-pi}^{pi} D(psi / pi) exp(-j n' psi) dpsi`,
/// normalized to unit amplitude sum.
pub fn fourier_weights(geom: &ArrayGeometry, desired: &DesiredPattern) -> Result<Excitation> {
    geom.require_half_wave("Fourier synthesis")?;
    let m = FOURIER_QUADRATURE_NODES;
    let samples: Vec<(f64, f64)> = (0..=m)
        .map(|k| {
            let u = -1.0 + 2.0 * k as f64 / m as f64;
            let weight = if k == 0 || k == m { 0.5 } else { 1.0 };
            (PI * u, weight * desired.magnitude(u))
        })
        .filter(|(_, d)| *d != 0.0)
        .collect();
    let weights = (0..geom.n_elements())
        .map(|n| {
            let np = geom.centered_index(n);
            samples
                .iter()
                .map(|&(psi, d)| Complex64::from_polar(d, -np * psi))
                .sum::<Complex64>()
                / m as f64
        })
        .collect();
    Excitation::new(weights)?.normalized_unit_sum()
}

/// Real amplitude taper underlying [`fourier_weights`]: the weights with the
/// progressive steering phase removed. Entries may be negative, which
/// carries a 180 deg phase flip on that element.
pub fn fourier_taper(geom: &ArrayGeometry, desired: &DesiredPattern) -> Result<Vec<f64>> {
    let exc = fourier_weights(geom, desired)?;
    let psi0 = geom.kd() * desired.center_u();
    Ok(exc
        .weights()
        .iter()
        .enumerate()
        .map(|(n, w)| (w * Complex64::from_polar(1.0, geom.centered_index(n) * psi0)).re)
        .collect())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::error::Error;
    use crate::synthesis::SectorShape;

    #[test]
    fn broadside_amplitudes_mirror_across_array() {
        let g = ArrayGeometry::reference();
        for width in [0.2, 0.3, 0.4] {
            let d = DesiredPattern::new(90.0, width, SectorShape::Sector, true).unwrap();
            let a = fourier_weights(&g, &d).unwrap().amplitudes();
            for m in 0..16 {
                assert!((a[m] - a[15 - m]).abs() < 1e-12, "width {width} element {m}");
            }
        }
    }

    #[test]
    fn mirrored_steer_gives_same_amplitudes() {
        let g = ArrayGeometry::reference();
        for steer in [40.0, 55.0, 70.0, 85.0] {
            let a = fourier_weights(&g, &DesiredPattern::with_defaults(steer).unwrap()).unwrap();
            let b = fourier_weights(&g, &DesiredPattern::with_defaults(180.0 - steer).unwrap()).unwrap();
            for (x, y) in a.amplitudes().iter().zip(b.amplitudes()) {
                assert!((x - y).abs() < 1e-10);
            }
        }
    }

    #[test]
    fn broadside_taper_decays_then_changes_sign() {
        let g = ArrayGeometry::reference();
        let taper = fourier_taper(&g, &DesiredPattern::with_defaults(90.0).unwrap()).unwrap();
        let half = &taper[8..];
        assert!(half[0] > 0.0);
        assert!(half.windows(2).take(5).all(|w| w[1] < w[0]));
        let flips = half.windows(2).filter(|w| w[0].signum() != w[1].signum()).count();
        assert_eq!(flips, 1, "{half:?}");
        let sum: f64 = taper.iter().map(|t| t.abs()).sum();
        assert!((sum - 1.0).abs() < 1e-12);
    }

    #[test]
    fn needs_half_wave_spacing() {
        let g = ArrayGeometry::new(16, 0.6).unwrap();
        let err = fourier_weights(&g, &DesiredPattern::with_defaults(90.0).unwrap()).unwrap_err();
        assert!(matches!(err, Error::Unsupported(_)));
    }
}
