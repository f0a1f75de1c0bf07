use super::mlp::Mlp;
use crate::array::{ArrayGeometry, Excitation};
use crate::dataset::{assemble_excitation, InputEncoding, PhaseCodec, DOMAIN_DEG};
use crate::error::{Error, Result};

/// A trained network together with the geometry and input encoding it was
/// trained for.
#[derive(Debug, Clone, PartialEq)]
pub struct PhasePredictor {
    mlp: Mlp,
    geom: ArrayGeometry,
    encoding: InputEncoding,
}

impl PhasePredictor {
    pub fn new(mlp: Mlp, geom: ArrayGeometry, encoding: InputEncoding) -> Result<Self> {
        let s = mlp.sizes();
        if s.input != encoding.n_samples {
            return Err(Error::Dimension {
                expected: encoding.n_samples,
                got: s.input,
            });
        }
        if s.output != geom.n_elements() {
            return Err(Error::Dimension {
                expected: geom.n_elements(),
                got: s.output,
            });
        }
        Ok(Self { mlp, geom, encoding })
    }

    pub fn mlp(&self) -> &Mlp {
        &self.mlp
    }

    pub fn geometry(&self) -> &ArrayGeometry {
        &self.geom
    }

    pub fn encoding(&self) -> &InputEncoding {
        &self.encoding
    }

    /// Network phases for `steer_deg`, unwrapped, before any sign flips
    /// from the amplitude taper.
    pub fn progressive_phases_deg(&self, steer_deg: f64) -> Result<Vec<f64>> {
        if !(steer_deg >= DOMAIN_DEG.0 && steer_deg <= DOMAIN_DEG.1) {
            return Err(Error::OutOfDomain(steer_deg));
        }
        let y = self.mlp.forward(&self.encoding.encode(steer_deg)?)?;
        Ok(PhaseCodec::new(self.geom).decode(&y))
    }

    /// Fourier amplitudes for `steer_deg` with network phases in (-180, 180].
    pub fn predict(&self, steer_deg: f64) -> Result<Excitation> {
        let phases = self.progressive_phases_deg(steer_deg)?;
        assemble_excitation(&self.geom, &self.encoding, steer_deg, &phases)
    }
}

/// [`PhasePredictor::predict`] for the 16-element half-wave array and the
/// reference input encoding.
pub fn predict_phases(mlp: &Mlp, steer_deg: f64) -> Result<Excitation> {
    PhasePredictor::new(mlp.clone(), ArrayGeometry::reference(), InputEncoding::reference())?.predict(steer_deg)
}
