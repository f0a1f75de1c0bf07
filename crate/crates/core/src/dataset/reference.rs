//! Bundled golden tables: Fourier amplitudes (element pairs by steer angle)
//! and synthesized phases (elements by steer angle).

use std::fmt;
use std::str::FromStr;

use sha2::{Digest, Sha256};

use super::codec::InputEncoding;
use crate::array::{array_factor, pattern_metrics, AngleGrid, ArrayGeometry, Excitation, PatternMetrics};
use crate::error::{Error, Result};
use crate::synthesis::fourier_taper;

const FOURIER_CSV: &str = include_str!("../../data/fourier_amplitudes.csv");
const PHASES_CSV: &str = include_str!("../../data/wwl_nn_phases.csv");
const MANIFEST: &str = include_str!("../../data/MANIFEST.sha256");

/// Mirror tolerance for the phase table, degrees.
pub const PHASE_MIRROR_TOL_DEG: f64 = 6.0;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum ReferenceKind {
    FourierAmplitudes,
    WwlNnPhases,
}

impl ReferenceKind {
    pub const ALL: [ReferenceKind; 2] = [ReferenceKind::FourierAmplitudes, ReferenceKind::WwlNnPhases];

    pub fn name(&self) -> &'static str {
        match self {
            ReferenceKind::FourierAmplitudes => "fourier_amplitudes",
            ReferenceKind::WwlNnPhases => "wwl_nn_phases",
        }
    }

    fn file_name(&self) -> String {
        format!("{}.csv", self.name())
    }

    fn bundled(&self) -> &'static str {
        match self {
            ReferenceKind::FourierAmplitudes => FOURIER_CSV,
            ReferenceKind::WwlNnPhases => PHASES_CSV,
        }
    }
}

impl fmt::Display for ReferenceKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for ReferenceKind {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.replace('-', "_").as_str() {
            "fourier_amplitudes" => Ok(ReferenceKind::FourierAmplitudes),
            "wwl_nn_phases" => Ok(ReferenceKind::WwlNnPhases),
            _ => Err(Error::arg(format!("unknown reference table '{s}'"))),
        }
    }
}

/// A parsed table. Each row carries the elements it applies to, so a
/// `"3&14"` row in the amplitude table covers elements 3 and 14.
#[derive(Debug, Clone, PartialEq)]
pub struct ReferenceTable {
    pub kind: ReferenceKind,
    pub columns_deg: Vec<f64>,
    pub row_labels: Vec<String>,
    pub row_elements: Vec<Vec<usize>>,
    /// `values[row][column]`
    pub values: Vec<Vec<f64>>,
}

impl ReferenceTable {
    pub fn n_elements(&self) -> usize {
        self.row_elements.iter().map(Vec::len).sum()
    }

    pub fn column_index(&self, steer_deg: f64) -> Option<usize> {
        self.columns_deg.iter().position(|c| (c - steer_deg).abs() < 1e-9)
    }

    /// Value for 1-based `element` at `steer_deg`.
    pub fn value(&self, element: usize, steer_deg: f64) -> Option<f64> {
        let c = self.column_index(steer_deg)?;
        let r = self.row_elements.iter().position(|els| els.contains(&element))?;
        Some(self.values[r][c])
    }

    /// Per-element values for one column, ordered by element.
    pub fn column(&self, steer_deg: f64) -> Option<Vec<f64>> {
        (1..=self.n_elements()).map(|m| self.value(m, steer_deg)).collect()
    }

    /// Sum over all elements of each column.
    pub fn column_sums(&self) -> Vec<(f64, f64)> {
        self.columns_deg
            .iter()
            .map(|&c| (c, self.column(c).map(|v| v.iter().sum()).unwrap_or(f64::NAN)))
            .collect()
    }

    /// Column pairs `(theta, 180 - theta)` with `theta < 90` present in the table.
    pub fn mirrored_pairs(&self) -> Vec<(f64, f64)> {
        self.columns_deg
            .iter()
            .filter(|&&c| c < 90.0 && self.column_index(180.0 - c).is_some())
            .map(|&c| (c, 180.0 - c))
            .collect()
    }

    /// Largest `|phase(m, theta) + phase(m, 180 - theta)|` over elements and
    /// mirrored pairs, with the sum wrapped into (-180, 180].
    pub fn worst_mirror_sum_deg(&self) -> f64 {
        let mut worst: f64 = 0.0;
        for (a, b) in self.mirrored_pairs() {
            for m in 1..=self.n_elements() {
                let s = self.value(m, a).unwrap() + self.value(m, b).unwrap();
                worst = worst.max(crate::array::wrap_deg(s).abs());
            }
        }
        worst
    }

    fn check_invariants(&self) -> Result<()> {
        let n = self.n_elements();
        let mut seen = vec![false; n + 1];
        for els in &self.row_elements {
            for &m in els {
                if m == 0 || m > n || seen[m] {
                    return Err(Error::DataIntegrity(format!(
                        "{}: element labels do not cover 1..{n} exactly once",
                        self.kind
                    )));
                }
                seen[m] = true;
            }
        }
        match self.kind {
            ReferenceKind::FourierAmplitudes => {
                for (label, els) in self.row_labels.iter().zip(&self.row_elements) {
                    if els.len() != 2 || els[0] + els[1] != n + 1 {
                        return Err(Error::DataIntegrity(format!(
                            "{}: row '{label}' is not a symmetric element pair",
                            self.kind
                        )));
                    }
                }
                for (a, b) in self.mirrored_pairs() {
                    for m in 1..=n {
                        if self.value(m, a) != self.value(m, b) {
                            return Err(Error::DataIntegrity(format!(
                                "{}: element {m} differs between {a} and {b} deg",
                                self.kind
                            )));
                        }
                    }
                }
            }
            ReferenceKind::WwlNnPhases => {
                let worst = self.worst_mirror_sum_deg();
                if worst > PHASE_MIRROR_TOL_DEG {
                    return Err(Error::DataIntegrity(format!(
                        "{}: mirrored phases disagree by {worst:.3} deg",
                        self.kind
                    )));
                }
            }
        }
        Ok(())
    }
}

fn parse_label(label: &str) -> Result<Vec<usize>> {
    label
        .split('&')
        .map(|s| {
            s.trim()
                .parse::<usize>()
                .map_err(|_| Error::DataIntegrity(format!("bad element label '{label}'")))
        })
        .collect()
}

/// Parse `text` as a table of `kind` and verify its invariants.
pub fn parse_reference(kind: ReferenceKind, text: &str) -> Result<ReferenceTable> {
    let bad = |msg: String| Error::DataIntegrity(format!("{kind}: {msg}"));
    let mut r = csv::Reader::from_reader(text.as_bytes());
    let header = r.headers().map_err(|e| bad(e.to_string()))?.clone();
    if header.get(0) != Some("element") {
        return Err(bad("first column must be 'element'".into()));
    }
    let columns_deg = header
        .iter()
        .skip(1)
        .map(|h| h.trim().parse::<f64>().map_err(|_| bad(format!("bad column '{h}'"))))
        .collect::<Result<Vec<_>>>()?;
    let mut row_labels = Vec::new();
    let mut row_elements = Vec::new();
    let mut values = Vec::new();
    for rec in r.records() {
        let rec = rec.map_err(|e| bad(e.to_string()))?;
        let label = rec.get(0).unwrap_or_default().trim().to_string();
        row_elements.push(parse_label(&label)?);
        let row = rec
            .iter()
            .skip(1)
            .map(|v| v.trim().parse::<f64>().map_err(|_| bad(format!("bad value '{v}'"))))
            .collect::<Result<Vec<_>>>()?;
        if row.len() != columns_deg.len() || row.iter().any(|v| !v.is_finite()) {
            return Err(bad(format!("row '{label}' is malformed")));
        }
        row_labels.push(label);
        values.push(row);
    }
    let table = ReferenceTable {
        kind,
        columns_deg,
        row_labels,
        row_elements,
        values,
    };
    table.check_invariants()?;
    Ok(table)
}

fn expected_digest(file: &str) -> Option<&'static str> {
    MANIFEST.lines().find_map(|line| {
        let mut it = line.split_whitespace();
        let digest = it.next()?;
        (it.next()? == file).then_some(digest)
    })
}

/// Load a bundled table, verifying its checksum and invariants.
pub fn load_reference(kind: ReferenceKind) -> Result<ReferenceTable> {
    let text = kind.bundled();
    let want = expected_digest(&kind.file_name())
        .ok_or_else(|| Error::DataIntegrity(format!("{kind}: no manifest entry")))?;
    let got = hex::encode(Sha256::digest(text.as_bytes()));
    if got != want {
        return Err(Error::DataIntegrity(format!(
            "{kind}: checksum mismatch (expected {want}, got {got})"
        )));
    }
    parse_reference(kind, text)
}

#[derive(Debug, Clone, PartialEq)]
pub enum ColumnStatus {
    Evaluated(PatternMetrics),
    Skipped(String),
    Failed(String),
}

#[derive(Debug, Clone, PartialEq)]
pub struct ColumnReport {
    pub steer_deg: f64,
    pub status: ColumnStatus,
    /// Largest |bundled - pipeline| amplitude, amplitude table only.
    pub amplitude_deviation: Option<f64>,
}

impl ColumnReport {
    pub fn metrics(&self) -> Option<&PatternMetrics> {
        match &self.status {
            ColumnStatus::Evaluated(m) => Some(m),
            _ => None,
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct ReferenceReport {
    pub kind: ReferenceKind,
    pub columns: Vec<ColumnReport>,
}

impl ReferenceReport {
    pub fn column(&self, steer_deg: f64) -> Option<&ColumnReport> {
        self.columns.iter().find(|c| (c.steer_deg - steer_deg).abs() < 1e-9)
    }

    /// `(theta, 180 - theta, |peak(theta) + peak(180 - theta) - 180|)` for
    /// every mirrored pair where both columns were evaluated.
    pub fn mirror_peak_errors(&self) -> Vec<(f64, f64, f64)> {
        let mut out = Vec::new();
        for c in &self.columns {
            if c.steer_deg >= 90.0 {
                continue;
            }
            let mirror = 180.0 - c.steer_deg;
            if let (Some(a), Some(b)) = (c.metrics(), self.column(mirror).and_then(|m| m.metrics())) {
                out.push((c.steer_deg, mirror, (a.peak_deg + b.peak_deg - 180.0).abs()));
            }
        }
        out
    }
}

fn evaluate(geom: &ArrayGeometry, exc: &Excitation, grid: &AngleGrid) -> ColumnStatus {
    match array_factor(geom, exc, grid).and_then(|p| pattern_metrics(&p)) {
        Ok(m) => ColumnStatus::Evaluated(m),
        Err(e) => ColumnStatus::Failed(e.to_string()),
    }
}

/// Cross-check a table against the synthesis pipeline over 40..140 deg in
/// 10 deg steps. Columns missing from the table are reported as skipped.
///
/// Phase table: table phases with pipeline Fourier amplitudes. Amplitude
/// table: table amplitudes with progressive steering phases, plus the
/// largest deviation from the pipeline amplitudes.
pub fn validate_reference_against_pipeline(table: &ReferenceTable, geom: &ArrayGeometry) -> ReferenceReport {
    let grid = AngleGrid::default_analysis();
    let encoding = InputEncoding::reference();
    let mut columns = Vec::new();
    for steer in (4..=14).map(|k| f64::from(k) * 10.0) {
        let mut report = ColumnReport {
            steer_deg: steer,
            status: ColumnStatus::Skipped("column not present in table".into()),
            amplitude_deviation: None,
        };
        let Some(values) = table.column(steer) else {
            columns.push(report);
            continue;
        };
        if values.len() != geom.n_elements() {
            report.status = ColumnStatus::Failed(format!(
                "table has {} elements, geometry has {}",
                values.len(),
                geom.n_elements()
            ));
            columns.push(report);
            continue;
        }
        let taper = encoding.desired(steer).and_then(|d| fourier_taper(geom, &d));
        let taper = match taper {
            Ok(t) => t,
            Err(e) => {
                report.status = ColumnStatus::Failed(e.to_string());
                columns.push(report);
                continue;
            }
        };
        let exc = match table.kind {
            ReferenceKind::WwlNnPhases => {
                let amps: Vec<f64> = taper.iter().map(|a| a.abs()).collect();
                Excitation::from_polar_deg(&amps, &values)
            }
            ReferenceKind::FourierAmplitudes => {
                let sum: f64 = taper.iter().map(|a| a.abs()).sum();
                report.amplitude_deviation = Some(
                    values
                        .iter()
                        .zip(&taper)
                        .map(|(v, a)| (v - a.abs() / sum).abs())
                        .fold(0.0, f64::max),
                );
                Excitation::from_real(&values)
                    .and_then(|e| crate::array::apply_steering(geom, &e, steer))
            }
        };
        report.status = match exc {
            Ok(e) => evaluate(geom, &e, &grid),
            Err(e) => ColumnStatus::Failed(e.to_string()),
        };
        columns.push(report);
    }
    ReferenceReport {
        kind: table.kind,
        columns,
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn bundled_tables_load() {
        let t1 = load_reference(ReferenceKind::FourierAmplitudes).unwrap();
        assert_eq!(t1.n_elements(), 16);
        assert_eq!(t1.value(1, 90.0), Some(0.0166));
        assert_eq!(t1.value(16, 90.0), Some(0.0166));
        let t3 = load_reference(ReferenceKind::WwlNnPhases).unwrap();
        assert_eq!(t3.value(8, 100.0), Some(-18.088));
        assert_eq!(t3.value(1, 40.0), Some(17.208));
        assert_eq!(t3.value(1, 140.0), Some(-15.368));
        assert!(t3.column_index(90.0).is_none());
        assert_eq!(t3.mirrored_pairs().len(), 5);
    }

    #[test]
    fn corrupted_tables_are_rejected() {
        let broken = PHASES_CSV.replacen("17.208", "37.208", 1);
        assert!(matches!(
            parse_reference(ReferenceKind::WwlNnPhases, &broken),
            Err(Error::DataIntegrity(_))
        ));
        let broken = FOURIER_CSV.replacen("0.0095", "0.0096", 1);
        assert!(matches!(
            parse_reference(ReferenceKind::FourierAmplitudes, &broken),
            Err(Error::DataIntegrity(_))
        ));
        let broken = FOURIER_CSV.replacen("1&16", "1&15", 1);
        assert!(parse_reference(ReferenceKind::FourierAmplitudes, &broken).is_err());
    }

    #[test]
    fn kind_names_round_trip() {
        for k in ReferenceKind::ALL {
            assert_eq!(k.name().parse::<ReferenceKind>().unwrap(), k);
        }
        assert!("nope".parse::<ReferenceKind>().is_err());
    }

    #[test]
    fn report_skips_broadside_for_phase_table() {
        let t3 = load_reference(ReferenceKind::WwlNnPhases).unwrap();
        let rep = validate_reference_against_pipeline(&t3, &ArrayGeometry::reference());
        assert_eq!(rep.columns.len(), 11);
        assert!(matches!(rep.column(90.0).unwrap().status, ColumnStatus::Skipped(_)));
        assert!(rep.column(40.0).unwrap().metrics().is_some());
    }
}
