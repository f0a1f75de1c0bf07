use std::f64::consts::PI;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Default full sector width in `u` at broadside.
pub const DEFAULT_WIDTH_U: f64 = 0.40;
/// Default fraction of the half-width given to each cosine edge.
pub const DEFAULT_ROLLOFF: f64 = 0.75;

/// Edge profile of a sector beam.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "kebab-case")]
pub enum SectorShape {
    /// Hard-edged sector: 1 inside, 0 outside.
    Sector,
    /// Flat top with raised-cosine edges. The half-amplitude points sit at
    /// the nominal sector edges; `rolloff` in `(0, 1]` sets the transition
    /// half-width as a fraction of the sector half-width.
    RaisedCosine { rolloff: f64 },
}

/// Target magnitude profile: a sector beam centred on `steer_deg`.
///
/// The profile is symmetric in `u = cos(theta)` about `cos(steer_deg)`. With
/// `angular_scaling` the u-width is multiplied by `sin(steer_deg)`, which
/// keeps the sector's angular extent roughly constant as it is steered away
/// from broadside.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct DesiredPattern {
    pub steer_deg: f64,
    pub width_u: f64,
    pub shape: SectorShape,
    pub angular_scaling: bool,
}

impl DesiredPattern {
    pub fn new(steer_deg: f64, width_u: f64, shape: SectorShape, angular_scaling: bool) -> Result<Self> {
        if !(steer_deg > 0.0 && steer_deg < 180.0) {
            return Err(Error::arg(format!("steer angle must lie in (0, 180) deg, got {steer_deg}")));
        }
        if !(width_u > 0.0 && width_u <= 2.0) {
            return Err(Error::arg(format!("sector width must lie in (0, 2], got {width_u}")));
        }
        if let SectorShape::RaisedCosine { rolloff } = shape {
            if !(rolloff > 0.0 && rolloff <= 1.0) {
                return Err(Error::arg(format!("rolloff must lie in (0, 1], got {rolloff}")));
            }
        }
        Ok(Self {
            steer_deg,
            width_u,
            shape,
            angular_scaling,
        })
    }

    /// Raised-cosine sector with the default width and rolloff.
    pub fn with_defaults(steer_deg: f64) -> Result<Self> {
        Self::new(
            steer_deg,
            DEFAULT_WIDTH_U,
            SectorShape::RaisedCosine {
                rolloff: DEFAULT_ROLLOFF,
            },
            true,
        )
    }

    pub fn center_u(&self) -> f64 {
        self.steer_deg.to_radians().cos()
    }

    /// Sector width in `u` actually used at this steer angle.
    pub fn effective_width_u(&self) -> f64 {
        if self.angular_scaling {
            self.width_u * self.steer_deg.to_radians().sin()
        } else {
            self.width_u
        }
    }

    /// `D(u)` in `[0, 1]`, equal to 1 at the steer direction.
    pub fn magnitude(&self, u: f64) -> f64 {
        let x = (u - self.center_u()).abs();
        let half = self.effective_width_u() / 2.0;
        match self.shape {
            SectorShape::Sector => {
                if x <= half {
                    1.0
                } else {
                    0.0
                }
            }
            SectorShape::RaisedCosine { rolloff } => {
                let lo = half * (1.0 - rolloff);
                let hi = half * (1.0 + rolloff);
                if x <= lo {
                    1.0
                } else if x >= hi {
                    0.0
                } else {
                    0.5 * (1.0 + (PI * (x - lo) / (hi - lo)).cos())
                }
            }
        }
    }

    pub fn magnitude_at_deg(&self, theta_deg: f64) -> f64 {
        self.magnitude(theta_deg.to_radians().cos())
    }

    pub fn steered_to(&self, steer_deg: f64) -> Result<Self> {
        Self::new(steer_deg, self.width_u, self.shape, self.angular_scaling)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn unity_at_steer_direction() {
        for steer in [40.0, 73.0, 90.0, 131.0] {
            let d = DesiredPattern::with_defaults(steer).unwrap();
            assert_eq!(d.magnitude(d.center_u()), 1.0);
        }
    }

    #[test]
    fn raised_cosine_is_half_at_nominal_edge() {
        let d = DesiredPattern::new(90.0, 0.4, SectorShape::RaisedCosine { rolloff: 0.5 }, false).unwrap();
        assert!((d.magnitude(0.2) - 0.5).abs() < 1e-12);
        assert!((d.magnitude(-0.2) - 0.5).abs() < 1e-12);
        assert_eq!(d.magnitude(0.05), 1.0);
        assert_eq!(d.magnitude(0.31), 0.0);
    }

    #[test]
    fn hard_sector_edges() {
        let d = DesiredPattern::new(90.0, 0.3, SectorShape::Sector, false).unwrap();
        assert_eq!(d.magnitude(0.15), 1.0);
        assert_eq!(d.magnitude(0.1500001), 0.0);
    }

    #[test]
    fn angular_scaling_narrows_off_broadside() {
        let d = DesiredPattern::with_defaults(40.0).unwrap();
        assert!((d.effective_width_u() - 0.4 * 40f64.to_radians().sin()).abs() < 1e-15);
        let b = DesiredPattern::with_defaults(90.0).unwrap();
        assert!((b.effective_width_u() - 0.4).abs() < 1e-15);
    }

    #[test]
    fn invalid_parameters() {
        assert!(DesiredPattern::new(0.0, 0.3, SectorShape::Sector, true).is_err());
        assert!(DesiredPattern::new(180.0, 0.3, SectorShape::Sector, true).is_err());
        assert!(DesiredPattern::new(90.0, 0.0, SectorShape::Sector, true).is_err());
        assert!(DesiredPattern::new(90.0, 2.5, SectorShape::Sector, true).is_err());
        assert!(DesiredPattern::new(90.0, 0.3, SectorShape::RaisedCosine { rolloff: 0.0 }, true).is_err());
    }
}
