use std::path::Path;

use serde::{Deserialize, Serialize};

use super::mlp::{LayerSizes, Mlp};
use crate::array::ArrayGeometry;
use crate::dataset::{InputEncoding, ENCODING_VERSION};
use crate::error::{Error, Result};

/// JSON model file. Weight matrices are stored row-major in the same
/// layout as [`Mlp`].
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ModelFile {
    pub layer_sizes: [usize; 3],
    pub hidden_weights: Vec<f64>,
    pub output_weights: Vec<f64>,
    pub hidden_biases: Vec<f64>,
    pub output_biases: Vec<f64>,
    pub use_biases: bool,
    pub input_encoding_version: u32,
    pub input_encoding: InputEncoding,
    pub n_elements: usize,
    pub spacing_wl: f64,
}

impl ModelFile {
    pub fn new(mlp: &Mlp, geom: &ArrayGeometry, encoding: &InputEncoding) -> Self {
        let s = mlp.sizes();
        Self {
            layer_sizes: [s.input, s.hidden, s.output],
            hidden_weights: mlp.hidden_weights().to_vec(),
            output_weights: mlp.output_weights().to_vec(),
            hidden_biases: mlp.hidden_biases().to_vec(),
            output_biases: mlp.output_biases().to_vec(),
            use_biases: mlp.use_biases(),
            input_encoding_version: ENCODING_VERSION,
            input_encoding: *encoding,
            n_elements: geom.n_elements(),
            spacing_wl: geom.spacing_wl(),
        }
    }

    pub fn into_parts(self) -> Result<(Mlp, ArrayGeometry, InputEncoding)> {
        if self.input_encoding_version != ENCODING_VERSION {
            return Err(Error::Parse(format!(
                "model uses input encoding version {}, expected {ENCODING_VERSION}",
                self.input_encoding_version
            )));
        }
        let [i, h, o] = self.layer_sizes;
        let sizes = LayerSizes::new(i, h, o)?;
        let mlp = Mlp::from_parts(
            sizes,
            self.hidden_weights,
            self.hidden_biases,
            self.output_weights,
            self.output_biases,
            self.use_biases,
        )?;
        let geom = ArrayGeometry::new(self.n_elements, self.spacing_wl)?;
        Ok((mlp, geom, self.input_encoding))
    }

    pub fn to_json(&self) -> Result<String> {
        Ok(serde_json::to_string_pretty(self)? + "\n")
    }

    pub fn from_json(text: &str) -> Result<Self> {
        Ok(serde_json::from_str(text)?)
    }

    pub fn save(&self, path: &Path) -> Result<()> {
        std::fs::write(path, self.to_json()?)?;
        Ok(())
    }

    pub fn load(path: &Path) -> Result<Self> {
        Self::from_json(&std::fs::read_to_string(path)?)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn json_round_trip_is_exact() {
        let m = Mlp::seeded(LayerSizes::REFERENCE, 11, 0.5, true).unwrap();
        let g = ArrayGeometry::reference();
        let f = ModelFile::new(&m, &g, &InputEncoding::reference());
        let text = f.to_json().unwrap();
        for key in ["layer_sizes", "hidden_weights", "output_biases", "input_encoding_version"] {
            assert!(text.contains(key));
        }
        let (m2, g2, e2) = ModelFile::from_json(&text).unwrap().into_parts().unwrap();
        assert_eq!(m2, m);
        assert_eq!(g2, g);
        assert_eq!(e2, InputEncoding::reference());
    }

    #[test]
    fn wrong_encoding_version_is_rejected() {
        let m = Mlp::zeros(LayerSizes::new(2, 2, 1).unwrap(), true);
        let mut f = ModelFile::new(&m, &ArrayGeometry::reference(), &InputEncoding::reference());
        f.input_encoding_version = 99;
        assert!(f.into_parts().is_err());
    }
}
