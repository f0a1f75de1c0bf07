//! Mapping between steer directions, network inputs and network outputs.
//!
//! Inputs are the desired sector pattern sampled at fixed angles across the
//! steering domain, mapped from `[0, 1]` to `[-1, 1]`. Outputs are the
//! progressive steering phases referenced to the array centre, kept
//! unwrapped so they vary smoothly with the steer angle, and scaled into
//! `[-0.9, 0.9]`. The Fourier taper (which may flip the sign of the outer
//! elements) supplies the amplitudes.

use serde::{Deserialize, Serialize};

use crate::array::{wrap_deg, ArrayGeometry, Excitation};
use crate::error::{Error, Result};
use crate::synthesis::{fourier_taper, DesiredPattern, SectorShape, DEFAULT_ROLLOFF, DEFAULT_WIDTH_U};

/// Version stamped into model files for the encoding implemented here.
pub const ENCODING_VERSION: u32 = 1;

/// Steering domain covered by the training data, degrees.
pub const DOMAIN_DEG: (f64, f64) = (40.0, 140.0);

/// Output margin keeping tan-sigmoid targets away from saturation.
pub const TARGET_SCALE: f64 = 0.9;

fn in_domain(steer_deg: f64) -> bool {
    steer_deg >= DOMAIN_DEG.0 && steer_deg <= DOMAIN_DEG.1
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct InputEncoding {
    pub n_samples: usize,
    pub width_u: f64,
    pub shape: SectorShape,
    pub angular_scaling: bool,
}

impl InputEncoding {
    /// 18 samples of the default raised-cosine sector.
    pub fn reference() -> Self {
        Self {
            n_samples: 18,
            width_u: DEFAULT_WIDTH_U,
            shape: SectorShape::RaisedCosine {
                rolloff: DEFAULT_ROLLOFF,
            },
            angular_scaling: true,
        }
    }

    pub fn with_samples(self, n_samples: usize) -> Self {
        Self { n_samples, ..self }
    }

    /// Sample angles, uniformly spanning the steering domain.
    pub fn sample_angles(&self) -> Vec<f64> {
        let (lo, hi) = DOMAIN_DEG;
        match self.n_samples {
            0 => vec![],
            1 => vec![(lo + hi) / 2.0],
            n => (0..n)
                .map(|i| lo + (hi - lo) * i as f64 / (n - 1) as f64)
                .collect(),
        }
    }

    pub fn desired(&self, steer_deg: f64) -> Result<DesiredPattern> {
        DesiredPattern::new(steer_deg, self.width_u, self.shape, self.angular_scaling)
    }

    pub fn encode(&self, steer_deg: f64) -> Result<Vec<f64>> {
        if !in_domain(steer_deg) {
            return Err(Error::arg(format!(
                "steer angle {steer_deg} outside the encoding domain [{}, {}]",
                DOMAIN_DEG.0, DOMAIN_DEG.1
            )));
        }
        let desired = self.desired(steer_deg)?;
        Ok(self
            .sample_angles()
            .into_iter()
            .map(|t| 2.0 * desired.magnitude_at_deg(t) - 1.0)
            .collect())
    }
}

/// Encode with [`InputEncoding::reference`].
pub fn encode_input(steer_deg: f64) -> Result<Vec<f64>> {
    InputEncoding::reference().encode(steer_deg)
}

/// Converts element phases to and from normalized network targets.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PhaseCodec {
    geom: ArrayGeometry,
}

impl PhaseCodec {
    pub fn new(geom: ArrayGeometry) -> Self {
        Self { geom }
    }

    /// Largest possible progressive phase magnitude, `(N-1)/2 * kd`, in
    /// degrees. A phase of this size maps to [`TARGET_SCALE`].
    pub fn scale_deg(&self) -> f64 {
        (self.geom.n_elements() as f64 - 1.0) / 2.0 * self.geom.kd().to_degrees()
    }

    /// Centre-referenced progressive phase `-n' kd cos(steer)`, unwrapped.
    /// Exactly zero at broadside.
    pub fn progressive_phase_deg(&self, steer_deg: f64) -> Vec<f64> {
        let psi0 = self.geom.kd().to_degrees() * (90.0 - steer_deg).to_radians().sin();
        (0..self.geom.n_elements())
            .map(|n| -self.geom.centered_index(n) * psi0)
            .collect()
    }

    pub fn encode(&self, phases_deg: &[f64]) -> Vec<f64> {
        let s = TARGET_SCALE / self.scale_deg();
        phases_deg.iter().map(|p| p * s).collect()
    }

    pub fn decode(&self, targets: &[f64]) -> Vec<f64> {
        let s = self.scale_deg() / TARGET_SCALE;
        targets.iter().map(|t| t * s).collect()
    }

    pub fn target_for(&self, steer_deg: f64) -> Vec<f64> {
        self.encode(&self.progressive_phase_deg(steer_deg))
    }
}

/// Fourier amplitudes for `steer_deg` combined with the given progressive
/// phases. Negative taper entries add 180 deg to that element.
pub fn assemble_excitation(
    geom: &ArrayGeometry,
    encoding: &InputEncoding,
    steer_deg: f64,
    progressive_deg: &[f64],
) -> Result<Excitation> {
    geom.check_len(progressive_deg.len())?;
    let taper = fourier_taper(geom, &encoding.desired(steer_deg)?)?;
    let amplitudes: Vec<f64> = taper.iter().map(|a| a.abs()).collect();
    let phases: Vec<f64> = taper
        .iter()
        .zip(progressive_deg)
        .map(|(a, p)| wrap_deg(if *a < 0.0 { p + 180.0 } else { *p }))
        .collect();
    Excitation::from_polar_deg(&amplitudes, &phases)
}
