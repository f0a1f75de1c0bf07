use std::f64::consts::PI;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// An `n_elements` uniform linear array with element spacing given in
/// wavelengths.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ArrayGeometry {
    n_elements: usize,
    spacing_wl: f64,
}

impl ArrayGeometry {
    pub fn new(n_elements: usize, spacing_wl: f64) -> Result<Self> {
        if n_elements < 2 {
            return Err(Error::arg(format!(
                "array needs at least 2 elements, got {n_elements}"
            )));
        }
        if !(spacing_wl.is_finite() && spacing_wl > 0.0) {
            return Err(Error::arg(format!(
                "element spacing must be positive, got {spacing_wl}"
            )));
        }
        Ok(Self {
            n_elements,
            spacing_wl,
        })
    }

    /// The 16-element half-wave array used throughout the reference design.
    pub fn reference() -> Self {
        Self {
            n_elements: 16,
            spacing_wl: 0.5,
        }
    }

    pub fn n_elements(&self) -> usize {
        self.n_elements
    }

    pub fn spacing_wl(&self) -> f64 {
        self.spacing_wl
    }

    /// Wavenumber-spacing product `k d = 2 pi d / lambda`.
    pub fn kd(&self) -> f64 {
        2.0 * PI * self.spacing_wl
    }

    /// Aperture length `N d` in wavelengths.
    pub fn aperture_wl(&self) -> f64 {
        self.n_elements as f64 * self.spacing_wl
    }

    pub fn is_half_wave(&self) -> bool {
        (self.spacing_wl - 0.5).abs() < 1e-12
    }

    pub(crate) fn require_half_wave(&self, what: &str) -> Result<()> {
        if self.is_half_wave() {
            Ok(())
        } else {
            Err(Error::Unsupported(format!(
                "{what} requires half-wavelength spacing, got {} wavelengths",
                self.spacing_wl
            )))
        }
    }

    /// Position of element `n` (0-based) relative to the array centre, in
    /// element spacings: `n - (N - 1) / 2`.
    pub fn centered_index(&self, n: usize) -> f64 {
        n as f64 - (self.n_elements as f64 - 1.0) / 2.0
    }

    pub(crate) fn check_len(&self, len: usize) -> Result<()> {
        if len == self.n_elements {
            Ok(())
        } else {
            Err(Error::Dimension {
                expected: self.n_elements,
                got: len,
            })
        }
    }
}
