use crate::error::{Error, Result};

/// Strictly increasing polar angles in degrees within `[0, 180]`.
#[derive(Debug, Clone, PartialEq)]
pub struct AngleGrid {
    theta_deg: Vec<f64>,
}

impl AngleGrid {
    pub fn new(theta_deg: Vec<f64>) -> Result<Self> {
        if let Some(&t) = theta_deg.iter().find(|t| !(0.0..=180.0).contains(*t)) {
            return Err(Error::arg(format!("grid angle {t} outside [0, 180]")));
        }
        if theta_deg.windows(2).any(|w| w[1] <= w[0]) {
            return Err(Error::arg("grid angles must be strictly increasing"));
        }
        Ok(Self { theta_deg })
    }

    /// `start, start + step, ...` up to and including `stop` (within a
    /// millionth of a step).
    pub fn uniform(start: f64, stop: f64, step: f64) -> Result<Self> {
        if !(step.is_finite() && step > 0.0) {
            return Err(Error::arg(format!("grid step must be positive, got {step}")));
        }
        if !(start.is_finite() && stop.is_finite()) || stop < start {
            return Err(Error::arg(format!("invalid grid range [{start}, {stop}]")));
        }
        let count = ((stop - start) / step + 1e-6).floor() as usize + 1;
        let theta = (0..count)
            .map(|i| (start + i as f64 * step).min(180.0))
            .collect();
        Self::new(theta)
    }

    /// 0 to 180 deg at 0.05 deg.
    pub fn default_analysis() -> Self {
        Self::uniform(0.0, 180.0, 0.05).expect("static grid is valid")
    }

    pub fn theta_deg(&self) -> &[f64] {
        &self.theta_deg
    }

    pub fn len(&self) -> usize {
        self.theta_deg.len()
    }

    pub fn is_empty(&self) -> bool {
        self.theta_deg.is_empty()
    }
}
