//! Flat key/value run configuration.
//!
//! Values come from, in decreasing priority: command-line flags, the
//! `BEAMSYNTH_SEED` environment variable (seed only), a TOML file passed with
//! `--config`, and built-in defaults.

use std::path::Path;

use serde::{Deserialize, Serialize};

use crate::array::ArrayGeometry;
use crate::dataset::{InputEncoding, SplitFractions};
use crate::error::{Error, Result};
use crate::nn::{BatchMode, TrainingConfig};
use crate::synthesis::{
    ChebyshevSpec, DesiredPattern, Method, MethodSpecs, SectorShape, TaylorSpec, DEFAULT_N_BAR,
    DEFAULT_ROLLOFF, DEFAULT_WIDTH_U,
};

macro_rules! config_struct {
    ($($field:ident : $ty:ty),* $(,)?) => {
        /// Every key is optional; unset keys fall back to defaults.
        #[derive(Debug, Clone, Default, PartialEq, Serialize, Deserialize)]
        #[serde(deny_unknown_fields)]
        pub struct ConfigFile {
            $(
                #[serde(default, skip_serializing_if = "Option::is_none")]
                pub $field: Option<$ty>,
            )*
        }

        impl ConfigFile {
            /// Field-wise merge; values set in `top` win.
            pub fn overlay(self, top: ConfigFile) -> ConfigFile {
                ConfigFile {
                    $($field: top.$field.or(self.$field),)*
                }
            }
        }
    };
}

config_struct! {
    method: String,
    n: usize,
    spacing: f64,
    steer: f64,
    width_u: f64,
    shape: String,
    rolloff: f64,
    angular_scaling: bool,
    sll: f64,
    n_bar: usize,
    nulls: Vec<f64>,
    from: f64,
    to: f64,
    step: f64,
    seed: u64,
    train_fraction: f64,
    validation_fraction: f64,
    test_fraction: f64,
    eta: f64,
    epochs: usize,
    target_mse: f64,
    hidden: usize,
    init_range: f64,
    use_biases: bool,
    batch_mode: String,
    dataset: String,
    model: String,
    gate: bool,
}

impl ConfigFile {
    pub fn from_toml(text: &str) -> Result<Self> {
        toml::from_str(text).map_err(|e| Error::Config(e.to_string()))
    }

    pub fn load(path: &Path) -> Result<Self> {
        let text = std::fs::read_to_string(path)
            .map_err(|e| Error::Config(format!("cannot read {}: {e}", path.display())))?;
        Self::from_toml(&text)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Command {
    Synth,
    Scan,
    Compare,
    Dataset,
    Train,
    Infer,
    ValidateRef,
}

const GEOMETRY: &[&str] = &["n", "spacing"];
const PATTERN: &[&str] = &["width_u", "shape", "rolloff", "angular_scaling"];
const SPECS: &[&str] = &["sll", "n_bar", "nulls"];
const RANGE: &[&str] = &["from", "to", "step"];
const DATA: &[&str] = &["seed", "train_fraction", "validation_fraction", "test_fraction"];
const TRAIN: &[&str] = &[
    "eta",
    "epochs",
    "target_mse",
    "hidden",
    "init_range",
    "use_biases",
    "batch_mode",
    "dataset",
];

impl Command {
    /// Keys that affect this command's output.
    pub fn keys(&self) -> Vec<&'static str> {
        let groups: &[&[&str]] = match self {
            Command::Synth => &[&["method", "steer"], GEOMETRY, PATTERN, SPECS],
            Command::Scan => &[&["method"], GEOMETRY, PATTERN, SPECS, RANGE],
            Command::Compare => &[&["steer"], GEOMETRY, PATTERN, SPECS],
            Command::Dataset => &[GEOMETRY, PATTERN, RANGE, DATA],
            Command::Train => &[GEOMETRY, PATTERN, RANGE, DATA, TRAIN],
            Command::Infer => &[&["model", "steer", "gate"]],
            Command::ValidateRef => &[GEOMETRY],
        };
        groups.iter().flat_map(|g| g.iter().copied()).collect()
    }

    fn default_range(&self) -> (f64, f64, f64) {
        match self {
            Command::Scan => (40.0, 140.0, 6.25),
            _ => (40.0, 140.0, 1.0),
        }
    }
}

/// Fully resolved parameters.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Resolved {
    pub method: String,
    pub n: usize,
    pub spacing: f64,
    pub steer: f64,
    pub width_u: f64,
    pub shape: String,
    pub rolloff: f64,
    pub angular_scaling: bool,
    pub sll: f64,
    pub n_bar: usize,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub nulls: Option<Vec<f64>>,
    pub from: f64,
    pub to: f64,
    pub step: f64,
    pub seed: u64,
    pub train_fraction: f64,
    pub validation_fraction: f64,
    pub test_fraction: f64,
    pub eta: f64,
    pub epochs: usize,
    pub target_mse: f64,
    pub hidden: usize,
    pub init_range: f64,
    pub use_biases: bool,
    pub batch_mode: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub dataset: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub model: Option<String>,
    pub gate: bool,
}

impl Resolved {
    pub fn new(cmd: Command, c: ConfigFile) -> Self {
        let split = SplitFractions::default();
        let train = TrainingConfig::default();
        let range = cmd.default_range();
        Self {
            method: c.method.unwrap_or_else(|| "fourier".into()),
            n: c.n.unwrap_or(16),
            spacing: c.spacing.unwrap_or(0.5),
            steer: c.steer.unwrap_or(90.0),
            width_u: c.width_u.unwrap_or(DEFAULT_WIDTH_U),
            shape: c.shape.unwrap_or_else(|| "raised-cosine".into()),
            rolloff: c.rolloff.unwrap_or(DEFAULT_ROLLOFF),
            angular_scaling: c.angular_scaling.unwrap_or(true),
            sll: c.sll.unwrap_or(-30.0),
            n_bar: c.n_bar.unwrap_or(DEFAULT_N_BAR),
            nulls: c.nulls,
            from: c.from.unwrap_or(range.0),
            to: c.to.unwrap_or(range.1),
            step: c.step.unwrap_or(range.2),
            seed: c.seed.unwrap_or(train.seed),
            train_fraction: c.train_fraction.unwrap_or(split.train),
            validation_fraction: c.validation_fraction.unwrap_or(split.validation),
            test_fraction: c.test_fraction.unwrap_or(split.test),
            eta: c.eta.unwrap_or(train.eta),
            epochs: c.epochs.unwrap_or(train.max_epochs),
            target_mse: c.target_mse.unwrap_or(train.target_mse),
            hidden: c.hidden.unwrap_or(30),
            init_range: c.init_range.unwrap_or(crate::nn::DEFAULT_INIT_RANGE),
            use_biases: c.use_biases.unwrap_or(true),
            batch_mode: c.batch_mode.unwrap_or_else(|| "online".into()),
            dataset: c.dataset,
            model: c.model,
            gate: c.gate.unwrap_or(true),
        }
    }

    /// TOML text holding only the keys `cmd` uses.
    pub fn to_toml(&self, cmd: Command) -> Result<String> {
        let mut table = toml::Table::try_from(self).map_err(|e| Error::Config(e.to_string()))?;
        let keys = cmd.keys();
        table.retain(|k, _| keys.contains(&k));
        toml::to_string(&table).map_err(|e| Error::Config(e.to_string()))
    }

    pub fn method(&self) -> Result<Method> {
        self.method.parse()
    }

    pub fn geometry(&self) -> Result<ArrayGeometry> {
        ArrayGeometry::new(self.n, self.spacing)
    }

    pub fn shape(&self) -> Result<SectorShape> {
        match self.shape.as_str() {
            "sector" => Ok(SectorShape::Sector),
            "raised-cosine" => Ok(SectorShape::RaisedCosine { rolloff: self.rolloff }),
            other => Err(Error::arg(format!(
                "unknown shape '{other}' (expected sector or raised-cosine)"
            ))),
        }
    }

    pub fn desired(&self, steer_deg: f64) -> Result<DesiredPattern> {
        DesiredPattern::new(steer_deg, self.width_u, self.shape()?, self.angular_scaling)
    }

    pub fn specs(&self) -> Result<MethodSpecs> {
        Ok(MethodSpecs {
            chebyshev: ChebyshevSpec::new(self.sll)?,
            taylor: TaylorSpec::new(self.sll, self.n_bar)?,
            schelkunoff_nulls: self.nulls.clone(),
        })
    }

    pub fn directions(&self) -> Result<Vec<f64>> {
        if !(self.step.is_finite() && self.step > 0.0) {
            return Err(Error::arg(format!("step must be positive, got {}", self.step)));
        }
        if !(self.from.is_finite() && self.to.is_finite()) || self.from > self.to {
            return Err(Error::arg(format!("empty range {} to {}", self.from, self.to)));
        }
        let mut out = Vec::new();
        let mut k = 0usize;
        loop {
            let v = self.from + k as f64 * self.step;
            if v > self.to + 1e-9 * self.step {
                break;
            }
            out.push(v);
            k += 1;
        }
        Ok(out)
    }

    pub fn split(&self) -> Result<SplitFractions> {
        SplitFractions::new(self.train_fraction, self.validation_fraction, self.test_fraction)
    }

    pub fn encoding(&self) -> Result<InputEncoding> {
        Ok(InputEncoding {
            width_u: self.width_u,
            shape: self.shape()?,
            angular_scaling: self.angular_scaling,
            ..InputEncoding::reference()
        })
    }

    pub fn training(&self) -> Result<TrainingConfig> {
        let mode = match self.batch_mode.as_str() {
            "online" => BatchMode::Online,
            "full-batch" => BatchMode::FullBatch,
            other => {
                return Err(Error::arg(format!(
                    "unknown batch mode '{other}' (expected online or full-batch)"
                )))
            }
        };
        let cfg = TrainingConfig {
            eta: self.eta,
            max_epochs: self.epochs,
            target_mse: self.target_mse,
            seed: self.seed,
            split: self.split()?,
            mode,
        };
        cfg.validate()?;
        Ok(cfg)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn unknown_keys_are_rejected() {
        assert!(matches!(ConfigFile::from_toml("bogus = 1"), Err(Error::Config(_))));
        let c = ConfigFile::from_toml("n = 8\nsteer = 70.0").unwrap();
        assert_eq!(c.n, Some(8));
    }

    #[test]
    fn overlay_prefers_top() {
        let file = ConfigFile::from_toml("n = 8\nseed = 3").unwrap();
        let flags = ConfigFile {
            seed: Some(9),
            ..Default::default()
        };
        let c = file.overlay(flags);
        assert_eq!((c.n, c.seed), (Some(8), Some(9)));
    }

    #[test]
    fn echo_round_trips() {
        let r = Resolved::new(Command::Train, ConfigFile::default());
        let text = r.to_toml(Command::Train).unwrap();
        assert!(text.contains("eta = 0.02"));
        assert!(!text.contains("method"));
        let back = Resolved::new(Command::Train, ConfigFile::from_toml(&text).unwrap());
        assert_eq!(back, r);
    }

    #[test]
    fn scan_default_has_17_directions() {
        let r = Resolved::new(Command::Scan, ConfigFile::default());
        let d = r.directions().unwrap();
        assert_eq!(d.len(), 17);
        assert_eq!(d[16], 140.0);
        let r = Resolved::new(Command::Dataset, ConfigFile::default());
        assert_eq!(r.directions().unwrap().len(), 101);
    }
}
