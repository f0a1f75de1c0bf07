use serde::Serialize;

use super::Pattern;
use crate::error::{Error, Result};

/// Flat stretches at or below this level end the main lobe.
pub const MAIN_LOBE_FLOOR_DB: f64 = -60.0;

/// Level used in place of `-inf` (exact nulls) when interpolating.
const DB_FLOOR: f64 = -400.0;

/// Peak direction, sidelobe level and beamwidth of a sampled pattern.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct PatternMetrics {
    pub peak_deg: f64,
    /// Highest level outside the main lobe; `None` when the main lobe spans
    /// the whole grid.
    pub sll_db: Option<f64>,
    pub hpbw_deg: f64,
    /// Local maxima outside the main lobe, `(theta_deg, level_db)`.
    pub sidelobe_peaks: Vec<(f64, f64)>,
    /// Interior local minima, `(theta_deg, depth_db)`.
    pub null_depths_db: Vec<(f64, f64)>,
    /// Main-lobe extent `(left_deg, right_deg)`.
    pub main_lobe_deg: (f64, f64),
}

fn floor_db(v: f64) -> f64 {
    if v.is_finite() {
        v
    } else {
        DB_FLOOR
    }
}

/// Walk from the peak while the pattern keeps falling. Flat runs are
/// crossed unless they lie at or below [`MAIN_LOBE_FLOOR_DB`], where they
/// count as a null. Returns the boundary index.
fn lobe_edge(db: &[f64], peak: usize, step_left: bool) -> usize {
    let mut i = peak;
    loop {
        let next = if step_left {
            match i.checked_sub(1) {
                Some(n) => n,
                None => return i,
            }
        } else if i + 1 < db.len() {
            i + 1
        } else {
            return i;
        };
        let falling = db[next] < db[i];
        let flat_above_floor = db[next] == db[i] && db[i] > MAIN_LOBE_FLOOR_DB;
        if !(falling || flat_above_floor) {
            return i;
        }
        i = next;
    }
}

/// Linear-in-dB position of the -3 dB crossing between samples `a` and `b`.
fn crossing(theta: &[f64], db: &[f64], a: usize, b: usize) -> f64 {
    let (da, dbb) = (floor_db(db[a]), floor_db(db[b]));
    let t = (-3.0 - da) / (dbb - da);
    theta[a] + t * (theta[b] - theta[a])
}

pub fn pattern_metrics(p: &Pattern) -> Result<PatternMetrics> {
    let db = p.af_db();
    let theta = p.theta_deg();
    let n = db.len();
    if n < 3 {
        return Err(Error::arg(format!("pattern needs at least 3 samples, got {n}")));
    }
    if p.peak_magnitude().is_nan() || p.peak_magnitude() <= 0.0 {
        return Err(Error::arg("pattern is identically zero"));
    }
    let peak = db
        .iter()
        .enumerate()
        .fold(0, |best, (i, &v)| if v > db[best] { i } else { best });

    let left = lobe_edge(db, peak, true);
    let right = lobe_edge(db, peak, false);

    let outside = (0..left).chain(right + 1..n);
    let sll_db = outside
        .clone()
        .map(|i| db[i])
        .fold(None, |acc: Option<f64>, v| Some(acc.map_or(v, |a| a.max(v))));
    if let Some(s) = sll_db {
        if s >= 0.0 {
            return Err(Error::arg("pattern has no unique main lobe"));
        }
    }

    let sidelobe_peaks = outside
        .filter(|&i| {
            let up = i == 0 || db[i] >= db[i - 1];
            let down = i + 1 == n || db[i] > db[i + 1];
            up && down && db[i].is_finite()
        })
        .map(|i| (theta[i], db[i]))
        .collect();

    let null_depths_db = (1..n - 1)
        .filter(|&i| db[i] < db[i - 1] && db[i] <= db[i + 1])
        .map(|i| (theta[i], db[i]))
        .collect();

    let lo = (0..peak).rev().find(|&i| db[i] < -3.0);
    let hi = (peak + 1..n).find(|&i| db[i] < -3.0);
    let (lo, hi) = match (lo, hi) {
        (Some(lo), Some(hi)) => (lo, hi),
        _ => {
            return Err(Error::Resolution(
                "-3 dB level is not bracketed on both sides of the peak".into(),
            ))
        }
    };
    if lo + 1 == peak && hi == peak + 1 {
        return Err(Error::Resolution(
            "main lobe above -3 dB is narrower than one grid step".into(),
        ));
    }
    let hpbw_deg = crossing(theta, db, hi - 1, hi) - crossing(theta, db, lo + 1, lo);

    Ok(PatternMetrics {
        peak_deg: theta[peak],
        sll_db,
        hpbw_deg,
        sidelobe_peaks,
        null_depths_db,
        main_lobe_deg: (theta[left], theta[right]),
    })
}
