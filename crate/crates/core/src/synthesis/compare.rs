use std::fmt;
use std::str::FromStr;

use serde::Serialize;

use super::{
    chebyshev_weights, fourier_weights, schelkunoff_weights, taylor_weights, villeneuve_nulls,
    woodward_lawson, ChebyshevSpec, DesiredPattern, TaylorSpec,
};
use crate::array::{
    apply_steering, array_factor, pattern_metrics, AngleGrid, ArrayGeometry, Excitation,
    PatternMetrics,
};
use crate::error::{Error, Result};

/// Classical synthesis methods by their command-line names.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Method {
    Fourier,
    WoodwardLawson,
    Schelkunoff,
    Chebyshev,
    Taylor,
}

impl Method {
    pub const ALL: [Method; 5] = [
        Method::Fourier,
        Method::WoodwardLawson,
        Method::Schelkunoff,
        Method::Chebyshev,
        Method::Taylor,
    ];

    pub fn name(&self) -> &'static str {
        match self {
            Method::Fourier => "fourier",
            Method::WoodwardLawson => "woodward-lawson",
            Method::Schelkunoff => "schelkunoff",
            Method::Chebyshev => "chebyshev",
            Method::Taylor => "taylor",
        }
    }
}

impl fmt::Display for Method {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Method {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Method::ALL
            .into_iter()
            .find(|m| m.name() == s)
            .ok_or_else(|| Error::arg(format!("unknown method '{s}'")))
    }
}

/// Per-method design parameters for a comparison run.
#[derive(Debug, Clone, PartialEq)]
pub struct MethodSpecs {
    pub chebyshev: ChebyshevSpec,
    pub taylor: TaylorSpec,
    /// Explicit Schelkunoff nulls; when `None` the discrete Taylor null set
    /// for `taylor` is used.
    pub schelkunoff_nulls: Option<Vec<f64>>,
}

impl Default for MethodSpecs {
    fn default() -> Self {
        Self {
            chebyshev: ChebyshevSpec { sll_db: -30.0 },
            taylor: TaylorSpec {
                sll_db: -30.0,
                n_bar: super::DEFAULT_N_BAR,
            },
            schelkunoff_nulls: None,
        }
    }
}

/// Run one method. Broadside designs (Schelkunoff, Chebyshev, Taylor) are
/// steered to `desired.steer_deg` by progressive phase.
pub fn synthesize(
    method: Method,
    geom: &ArrayGeometry,
    desired: &DesiredPattern,
    specs: &MethodSpecs,
) -> Result<Excitation> {
    let broadside = match method {
        Method::Fourier => return fourier_weights(geom, desired),
        Method::WoodwardLawson => return Ok(woodward_lawson(geom, desired)?.0),
        Method::Schelkunoff => {
            let nulls = match &specs.schelkunoff_nulls {
                Some(n) => n.clone(),
                None => villeneuve_nulls(geom, specs.taylor.sll_db, specs.taylor.n_bar)?,
            };
            schelkunoff_weights(geom, &nulls)?
        }
        Method::Chebyshev => chebyshev_weights(geom, &specs.chebyshev)?,
        Method::Taylor => taylor_weights(geom, &specs.taylor)?,
    };
    if desired.steer_deg == 90.0 {
        Ok(broadside)
    } else {
        apply_steering(geom, &broadside, desired.steer_deg)
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ComparisonRow {
    pub method: Method,
    pub metrics: PatternMetrics,
}

/// All five methods on the same geometry and grid, in [`Method::ALL`] order.
pub fn compare_methods(
    geom: &ArrayGeometry,
    desired: &DesiredPattern,
    specs: &MethodSpecs,
    grid: &AngleGrid,
) -> Result<Vec<ComparisonRow>> {
    Method::ALL
        .into_iter()
        .map(|method| {
            let exc = synthesize(method, geom, desired, specs)?;
            let metrics = pattern_metrics(&array_factor(geom, &exc, grid)?)?;
            Ok(ComparisonRow { method, metrics })
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn method_names_round_trip() {
        for m in Method::ALL {
            assert_eq!(m.name().parse::<Method>().unwrap(), m);
        }
        assert!("dolph".parse::<Method>().is_err());
    }
}
