use num_complex::Complex64;

use crate::error::{Error, Result};

/// Wrap an angle in degrees into `(-180, 180]`.
pub fn wrap_deg(deg: f64) -> f64 {
    let w = deg.rem_euclid(360.0);
    if w > 180.0 {
        w - 360.0
    } else {
        w
    }
}

/// Complex weights driving each array element, index 0 first.
#[derive(Debug, Clone, PartialEq)]
pub struct Excitation {
    weights: Vec<Complex64>,
}

impl Excitation {
    pub fn new(weights: Vec<Complex64>) -> Result<Self> {
        if let Some(i) = weights.iter().position(|w| !(w.re.is_finite() && w.im.is_finite())) {
            return Err(Error::arg(format!("element {i} has a non-finite weight")));
        }
        Ok(Self { weights })
    }

    /// Build from linear amplitudes and phases in degrees.
    pub fn from_polar_deg(amplitudes: &[f64], phases_deg: &[f64]) -> Result<Self> {
        if amplitudes.len() != phases_deg.len() {
            return Err(Error::Dimension {
                expected: amplitudes.len(),
                got: phases_deg.len(),
            });
        }
        for (i, (&a, &p)) in amplitudes.iter().zip(phases_deg).enumerate() {
            if !(a.is_finite() && a >= 0.0) {
                return Err(Error::arg(format!("element {i} amplitude {a} is not a finite non-negative value")));
            }
            if !p.is_finite() {
                return Err(Error::arg(format!("element {i} phase is not finite")));
            }
        }
        Self::new(
            amplitudes
                .iter()
                .zip(phases_deg)
                .map(|(&a, &p)| Complex64::from_polar(a, p.to_radians()))
                .collect(),
        )
    }

    pub fn from_real(weights: &[f64]) -> Result<Self> {
        Self::new(weights.iter().map(|&w| Complex64::new(w, 0.0)).collect())
    }

    pub fn uniform(n: usize) -> Self {
        Self {
            weights: vec![Complex64::new(1.0, 0.0); n],
        }
    }

    pub fn len(&self) -> usize {
        self.weights.len()
    }

    pub fn is_empty(&self) -> bool {
        self.weights.is_empty()
    }

    pub fn weights(&self) -> &[Complex64] {
        &self.weights
    }

    pub fn into_weights(self) -> Vec<Complex64> {
        self.weights
    }

    pub fn amplitudes(&self) -> Vec<f64> {
        self.weights.iter().map(|w| w.norm()).collect()
    }

    /// Element phases in degrees, wrapped into `(-180, 180]`.
    pub fn phases_deg(&self) -> Vec<f64> {
        self.weights.iter().map(|w| wrap_deg(w.arg().to_degrees())).collect()
    }

    pub fn scaled(&self, alpha: Complex64) -> Self {
        Self {
            weights: self.weights.iter().map(|w| w * alpha).collect(),
        }
    }

    /// Elementwise product with another excitation of the same length.
    pub fn hadamard(&self, other: &Excitation) -> Result<Self> {
        if self.len() != other.len() {
            return Err(Error::Dimension {
                expected: self.len(),
                got: other.len(),
            });
        }
        Ok(Self {
            weights: self.weights.iter().zip(&other.weights).map(|(a, b)| a * b).collect(),
        })
    }

    /// Rescale so the amplitudes sum to one.
    pub fn normalized_unit_sum(&self) -> Result<Self> {
        let total: f64 = self.weights.iter().map(|w| w.norm()).sum();
        if !(total > 0.0 && total.is_finite()) {
            return Err(Error::Numeric("cannot normalize an all-zero excitation".into()));
        }
        Ok(self.scaled(Complex64::new(1.0 / total, 0.0)))
    }

    pub fn energy(&self) -> f64 {
        self.weights.iter().map(|w| w.norm_sqr()).sum()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn wrap_into_half_open_interval() {
        assert_eq!(wrap_deg(180.0), 180.0);
        assert_eq!(wrap_deg(-180.0), 180.0);
        assert_eq!(wrap_deg(190.0), -170.0);
        assert_eq!(wrap_deg(-90.0), -90.0);
        assert!((wrap_deg(1034.0) - (-46.0)).abs() < 1e-12);
    }

    #[test]
    fn polar_round_trip() {
        let e = Excitation::from_polar_deg(&[1.0, 0.5], &[30.0, -120.0]).unwrap();
        let a = e.amplitudes();
        let p = e.phases_deg();
        assert!((a[0] - 1.0).abs() < 1e-15 && (a[1] - 0.5).abs() < 1e-15);
        assert!((p[0] - 30.0).abs() < 1e-12 && (p[1] + 120.0).abs() < 1e-12);
    }

    #[test]
    fn rejects_negative_or_nonfinite_amplitudes() {
        assert!(Excitation::from_polar_deg(&[-1.0], &[0.0]).is_err());
        assert!(Excitation::from_polar_deg(&[f64::INFINITY], &[0.0]).is_err());
        assert!(Excitation::from_polar_deg(&[1.0, 1.0], &[0.0]).is_err());
    }

    #[test]
    fn unit_sum_normalization() {
        let e = Excitation::from_real(&[1.0, -3.0]).unwrap().normalized_unit_sum().unwrap();
        let s: f64 = e.amplitudes().iter().sum();
        assert!((s - 1.0).abs() < 1e-15);
        assert!(Excitation::from_real(&[0.0, 0.0]).unwrap().normalized_unit_sum().is_err());
    }
}
