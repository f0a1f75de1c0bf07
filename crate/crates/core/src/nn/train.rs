use std::io::Write;

use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use super::mlp::{Mlp, Sample};
use crate::dataset::{Split, SplitFractions, SynthesisDataset};
use crate::error::{Error, Result};
use crate::io::fmt_sig;

/// How patterns are presented during an epoch.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum BatchMode {
    /// One update per pattern, in a freshly shuffled order each epoch.
    Online,
    /// One update per epoch on the mean gradient over the training set.
    FullBatch,
}

#[derive(Debug, Clone, PartialEq)]
pub struct TrainingConfig {
    pub eta: f64,
    pub max_epochs: usize,
    pub target_mse: f64,
    pub seed: u64,
    pub split: SplitFractions,
    pub mode: BatchMode,
}

impl Default for TrainingConfig {
    fn default() -> Self {
        Self {
            eta: 0.02,
            max_epochs: 150_000,
            target_mse: 1e-6,
            seed: 1,
            split: SplitFractions::default(),
            mode: BatchMode::Online,
        }
    }
}

impl TrainingConfig {
    pub fn validate(&self) -> Result<()> {
        if !(self.eta.is_finite() && self.eta > 0.0) {
            return Err(Error::Config(format!("eta must be positive, got {}", self.eta)));
        }
        if self.target_mse.is_nan() || self.target_mse < 0.0 {
            return Err(Error::Config(format!("target mse must be non-negative, got {}", self.target_mse)));
        }
        self.split.validate()
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct EpochRecord {
    pub epoch: usize,
    pub train_mse: f64,
    pub val_mse: f64,
}

#[derive(Debug, Clone, PartialEq)]
pub struct TrainingTrace {
    /// One record per completed epoch; epoch numbers start at 1.
    pub records: Vec<EpochRecord>,
    pub initial_train_mse: f64,
    pub initial_val_mse: f64,
    /// Epoch whose weights were kept (0 = initial weights).
    pub best_epoch: usize,
    pub reached_target: bool,
    pub final_train_mse: f64,
    pub final_val_mse: f64,
    pub final_test_mse: f64,
    pub regression_slope: f64,
    pub regression_intercept: f64,
    pub regression_r: f64,
}

/// Least-squares fit `y = slope * x + intercept` and the correlation
/// coefficient.
pub fn linear_regression(x: &[f64], y: &[f64]) -> Result<(f64, f64, f64)> {
    if x.len() != y.len() {
        return Err(Error::Dimension {
            expected: x.len(),
            got: y.len(),
        });
    }
    if x.len() < 2 {
        return Err(Error::arg("regression needs at least two points"));
    }
    let n = x.len() as f64;
    let mx = x.iter().sum::<f64>() / n;
    let my = y.iter().sum::<f64>() / n;
    let (mut sxx, mut sxy, mut syy) = (0.0, 0.0, 0.0);
    for (a, b) in x.iter().zip(y) {
        sxx += (a - mx) * (a - mx);
        sxy += (a - mx) * (b - my);
        syy += (b - my) * (b - my);
    }
    if sxx == 0.0 {
        return Err(Error::Numeric("regression abscissae are constant".into()));
    }
    let slope = sxy / sxx;
    let r = if syy == 0.0 { 0.0 } else { sxy / (sxx * syy).sqrt() };
    Ok((slope, my - slope * mx, r))
}

fn partition(data: &SynthesisDataset, split: Split) -> Result<Vec<Sample>> {
    let s = data.samples(split);
    if s.is_empty() {
        return Err(Error::Config(format!("{split} partition is empty")));
    }
    Ok(s)
}

fn finite(v: f64, epoch: usize) -> Result<f64> {
    if v.is_finite() {
        Ok(v)
    } else {
        Err(Error::Numeric(format!("non-finite loss at epoch {epoch}")))
    }
}

/// Backpropagation training with a best-validation snapshot.
///
/// Stops once the training loss is at or below `target_mse`, or after
/// `max_epochs`. The returned network is the one with the lowest
/// validation loss seen, including the initial weights.
pub fn train(mlp: &Mlp, data: &SynthesisDataset, cfg: &TrainingConfig) -> Result<(Mlp, TrainingTrace)> {
    cfg.validate()?;
    let train_set = partition(data, Split::Train)?;
    let val_set = partition(data, Split::Validation)?;
    let test_set = partition(data, Split::Test)?;
    for set in [&train_set, &val_set, &test_set] {
        mlp.validate_set(set)?;
    }

    let initial_train = finite(mlp.mse(&train_set)?, 0)?;
    let initial_val = finite(mlp.mse(&val_set)?, 0)?;
    let mut net = mlp.clone();
    let mut best = (mlp.clone(), initial_val, 0usize);
    let mut records = Vec::new();
    let mut reached = initial_train <= cfg.target_mse;

    let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed);
    rng.set_stream(1);
    let mut order: Vec<usize> = (0..train_set.len()).collect();
    let mut grad = net.zero_gradient();

    let mut epoch = 0;
    while !reached && epoch < cfg.max_epochs {
        epoch += 1;
        match cfg.mode {
            BatchMode::Online => {
                order.shuffle(&mut rng);
                for &i in &order {
                    net.sgd_step_in_place(&train_set[i], cfg.eta, &mut grad);
                }
            }
            BatchMode::FullBatch => net = net.backprop_step(&train_set, cfg.eta)?,
        }
        let train_mse = finite(net.mse(&train_set)?, epoch)?;
        let val_mse = finite(net.mse(&val_set)?, epoch)?;
        records.push(EpochRecord {
            epoch,
            train_mse,
            val_mse,
        });
        if val_mse < best.1 {
            best = (net.clone(), val_mse, epoch);
        }
        reached = train_mse <= cfg.target_mse;
    }

    let (model, final_val, best_epoch) = best;
    let final_train = model.mse(&train_set)?;
    let final_test = model.mse(&test_set)?;
    let mut outputs = Vec::new();
    let mut targets = Vec::new();
    for p in &test_set {
        outputs.extend(model.forward(&p.input)?);
        targets.extend_from_slice(&p.target);
    }
    let (slope, intercept, r) = linear_regression(&targets, &outputs)?;
    let trace = TrainingTrace {
        records,
        initial_train_mse: initial_train,
        initial_val_mse: initial_val,
        best_epoch,
        reached_target: reached,
        final_train_mse: final_train,
        final_val_mse: final_val,
        final_test_mse: final_test,
        regression_slope: slope,
        regression_intercept: intercept,
        regression_r: r,
    };
    Ok((model, trace))
}

pub const TRACE_HEADER: &str = "epoch,train_mse,val_mse";

pub fn write_trace_csv<W: Write>(mut out: W, trace: &TrainingTrace) -> Result<()> {
    writeln!(out, "{TRACE_HEADER}")?;
    writeln!(out, "0,{},{}", fmt_sig(trace.initial_train_mse), fmt_sig(trace.initial_val_mse))?;
    for r in &trace.records {
        writeln!(out, "{},{},{}", r.epoch, fmt_sig(r.train_mse), fmt_sig(r.val_mse))?;
    }
    Ok(())
}
