//! Woodward-Lawson frequency-sampling synthesis.
//!
//! The desired pattern is sampled at directions spaced `lambda / L` apart in
//! `u` (`L = N d`). Each sample contributes a uniform-amplitude beam aimed at
//! its direction, `b_m sin(N x/2) / (N sin(x/2))`, and these composing
//! functions vanish at every other sample direction.

use num_complex::Complex64;
use serde::Serialize;

use super::DesiredPattern;
use crate::array::{ArrayGeometry, Excitation};
use crate::error::Result;

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct WlSample {
    /// Sample index: an integer, or an odd multiple of 1/2 on the offset grid.
    pub index: f64,
    pub u: f64,
    pub theta_deg: f64,
    pub b: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct WlSampleSet {
    /// Samples ordered by increasing `u`.
    pub samples: Vec<WlSample>,
    /// `M` in `m = -M..M` (integer grid) or `m = +-1..+-M` (offset grid).
    pub m_range: usize,
    /// Whether `m = 0` is part of the grid (a sample sits on the steer
    /// direction).
    pub includes_zero: bool,
}

impl WlSampleSet {
    /// Sample directions for `desired` on `geom`.
    pub fn for_pattern(geom: &ArrayGeometry, desired: &DesiredPattern) -> Self {
        let aperture = geom.aperture_wl();
        let u0 = desired.center_u();
        let includes_zero = ((u0 * aperture) - (u0 * aperture).round()).abs() < 1e-9;

        let (m_range, indices): (usize, Vec<f64>) = if includes_zero {
            let m = (aperture + 1e-9).floor() as usize;
            (m, (-(m as i64)..=m as i64).map(|i| i as f64).collect())
        } else {
            let m = (aperture + 0.5 + 1e-9).floor() as usize;
            let neg = (1..=m).rev().map(|i| -(i as f64 - 0.5));
            let pos = (1..=m).map(|i| i as f64 - 0.5);
            (m, neg.chain(pos).collect())
        };

        let d = geom.spacing_wl();
        let mut kept: Vec<WlSample> = Vec::with_capacity(indices.len());
        for index in indices {
            let u = index / aperture;
            if u.abs() > 1.0 + 1e-12 {
                continue;
            }
            let u = u.clamp(-1.0, 1.0);
            // Directions whose psi differ by a multiple of 2 pi are the
            // same composing function; keep the first.
            let aliased = kept.iter().any(|s| {
                let cycles = d * (u - s.u);
                (cycles - cycles.round()).abs() < 1e-9
            });
            if aliased {
                continue;
            }
            kept.push(WlSample {
                index,
                u,
                theta_deg: u.acos().to_degrees(),
                b: desired.magnitude(u),
            });
        }
        Self {
            samples: kept,
            m_range,
            includes_zero,
        }
    }
}

/// `w_n = (1/N) sum_m b_m exp(-j kd n' u_m)` with centred indices
/// `n' = n - (N-1)/2`, so every composing function is real and they add in
/// phase between samples.
///
/// The excitation is left unnormalized so that `|AF(theta_m)| = b_m`.
pub fn woodward_lawson(geom: &ArrayGeometry, desired: &DesiredPattern) -> Result<(Excitation, WlSampleSet)> {
    let set = WlSampleSet::for_pattern(geom, desired);
    let exc = excitation_from_samples(geom, &set)?;
    Ok((exc, set))
}

/// Sum of the composing-function excitations for an arbitrary sample set.
pub fn excitation_from_samples(geom: &ArrayGeometry, set: &WlSampleSet) -> Result<Excitation> {
    let n_el = geom.n_elements();
    let kd = geom.kd();
    let weights = (0..n_el)
        .map(|n| {
            set.samples
                .iter()
                .map(|s| Complex64::from_polar(s.b, -kd * geom.centered_index(n) * s.u))
                .sum::<Complex64>()
                / n_el as f64
        })
        .collect();
    Excitation::new(weights)
}
