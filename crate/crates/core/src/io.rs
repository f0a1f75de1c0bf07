//! File formats: pattern/summary CSVs and the JSON excitation file.
//!
//! Every CSV number is written with 9 significant digits.

use std::io::{Read, Write};
use std::path::Path;

use serde::{Deserialize, Serialize};

use crate::array::{ArrayGeometry, Excitation, Pattern, PatternMetrics};
use crate::error::{Error, Result};
use crate::synthesis::ComparisonRow;

pub const SIGNIFICANT_DIGITS: usize = 9;

/// Format with [`SIGNIFICANT_DIGITS`] significant digits. Plain decimal
/// notation for moderate magnitudes, exponent notation otherwise.
pub fn fmt_sig(x: f64) -> String {
    if !x.is_finite() {
        return format!("{x}");
    }
    if x == 0.0 {
        return "0".to_string();
    }
    let exp = x.abs().log10().floor() as i32;
    if (-5..15).contains(&exp) {
        let decimals = (SIGNIFICANT_DIGITS as i32 - 1 - exp).max(0) as usize;
        format!("{x:.decimals$}")
    } else {
        format!("{x:.prec$e}", prec = SIGNIFICANT_DIGITS - 1)
    }
}

fn fmt_opt(x: Option<f64>) -> String {
    x.map(fmt_sig).unwrap_or_else(|| "none".to_string())
}

pub const PATTERN_HEADER: &str = "theta_deg,af_db,af_re,af_im";

pub fn write_pattern_csv<W: Write>(mut out: W, pattern: &Pattern) -> Result<()> {
    writeln!(out, "{PATTERN_HEADER}")?;
    for ((t, db), af) in pattern.theta_deg().iter().zip(pattern.af_db()).zip(pattern.af_complex()) {
        writeln!(out, "{},{},{},{}", fmt_sig(*t), fmt_sig(*db), fmt_sig(af.re), fmt_sig(af.im))?;
    }
    Ok(())
}

/// One parsed row of a pattern CSV.
#[derive(Debug, Clone, Copy, PartialEq, Deserialize)]
pub struct PatternRow {
    pub theta_deg: f64,
    pub af_db: f64,
    pub af_re: f64,
    pub af_im: f64,
}

pub fn read_pattern_csv<R: Read>(input: R) -> Result<Vec<PatternRow>> {
    let mut rdr = csv::Reader::from_reader(input);
    let header: Vec<String> = rdr.headers()?.iter().map(str::to_string).collect();
    if header.join(",") != PATTERN_HEADER {
        return Err(Error::Parse(format!("unexpected pattern header '{}'", header.join(","))));
    }
    rdr.deserialize().map(|r| r.map_err(Error::from)).collect()
}

pub const COMPARISON_HEADER: &str = "method,peak_deg,sll_db,hpbw_deg";

pub fn write_comparison_csv<W: Write>(mut out: W, rows: &[ComparisonRow]) -> Result<()> {
    writeln!(out, "{COMPARISON_HEADER}")?;
    for r in rows {
        writeln!(
            out,
            "{},{},{},{}",
            r.method,
            fmt_sig(r.metrics.peak_deg),
            fmt_opt(r.metrics.sll_db),
            fmt_sig(r.metrics.hpbw_deg)
        )?;
    }
    Ok(())
}

pub const SCAN_HEADER: &str = "steer_deg,peak_deg,sll_db,hpbw_deg";

pub fn write_scan_csv<W: Write>(mut out: W, rows: &[(f64, PatternMetrics)]) -> Result<()> {
    writeln!(out, "{SCAN_HEADER}")?;
    for (steer, m) in rows {
        writeln!(
            out,
            "{},{},{},{}",
            fmt_sig(*steer),
            fmt_sig(m.peak_deg),
            fmt_opt(m.sll_db),
            fmt_sig(m.hpbw_deg)
        )?;
    }
    Ok(())
}

/// JSON excitation file.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ExcitationFile {
    pub n_elements: usize,
    pub spacing_wl: f64,
    pub amplitudes: Vec<f64>,
    pub phases_deg: Vec<f64>,
}

impl ExcitationFile {
    pub fn new(geom: &ArrayGeometry, exc: &Excitation) -> Self {
        Self {
            n_elements: geom.n_elements(),
            spacing_wl: geom.spacing_wl(),
            amplitudes: exc.amplitudes(),
            phases_deg: exc.phases_deg(),
        }
    }

    /// Validate and split into geometry and excitation.
    pub fn into_parts(self) -> Result<(ArrayGeometry, Excitation)> {
        let geom = ArrayGeometry::new(self.n_elements, self.spacing_wl)?;
        geom.check_len(self.amplitudes.len())?;
        let exc = Excitation::from_polar_deg(&self.amplitudes, &self.phases_deg)?;
        Ok((geom, exc))
    }

    pub fn to_json(&self) -> Result<String> {
        Ok(serde_json::to_string_pretty(self)?)
    }

    pub fn from_json(text: &str) -> Result<Self> {
        Ok(serde_json::from_str(text)?)
    }

    pub fn save(&self, path: &Path) -> Result<()> {
        std::fs::write(path, self.to_json()? + "\n")?;
        Ok(())
    }

    pub fn load(path: &Path) -> Result<Self> {
        Self::from_json(&std::fs::read_to_string(path)?)
    }
}
