//! The `beamsynth` command-line tool.
//!
//! Exit codes: 0 on success, 1 on numeric or runtime failure, 2 on usage or
//! domain errors.

mod commands;
mod config;

use std::ffi::OsString;
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand};

pub use config::{Command, ConfigFile, Resolved};

use crate::error::{Error, Result};

pub const EXIT_OK: i32 = 0;
pub const EXIT_FAILURE: i32 = 1;
pub const EXIT_USAGE: i32 = 2;

#[derive(Debug, Parser)]
#[command(name = "beamsynth", version, about = "Linear array pattern synthesis and phase prediction")]
struct Cli {
    #[command(subcommand)]
    command: Cmd,
}

#[derive(Debug, Subcommand)]
enum Cmd {
    /// Synthesize one excitation and write its pattern.
    Synth {
        /// fourier, woodward-lawson, schelkunoff, chebyshev or taylor
        method: Option<String>,
        #[arg(long)]
        steer: Option<f64>,
        #[command(flatten)]
        geom: GeomArgs,
        #[command(flatten)]
        pattern: PatternArgs,
        #[command(flatten)]
        specs: SpecArgs,
        #[command(flatten)]
        common: CommonArgs,
    },
    /// Synthesize a range of steer directions and summarize each pattern.
    Scan {
        #[arg(long)]
        method: Option<String>,
        #[command(flatten)]
        range: RangeArgs,
        #[command(flatten)]
        geom: GeomArgs,
        #[command(flatten)]
        pattern: PatternArgs,
        #[command(flatten)]
        specs: SpecArgs,
        #[command(flatten)]
        common: CommonArgs,
    },
    /// Run every method on the same desired pattern.
    Compare {
        #[arg(long)]
        steer: Option<f64>,
        #[command(flatten)]
        geom: GeomArgs,
        #[command(flatten)]
        pattern: PatternArgs,
        #[command(flatten)]
        specs: SpecArgs,
        #[command(flatten)]
        common: CommonArgs,
    },
    /// Generate the training dataset.
    Dataset {
        #[command(flatten)]
        range: RangeArgs,
        #[command(flatten)]
        data: DataArgs,
        #[command(flatten)]
        geom: GeomArgs,
        #[command(flatten)]
        pattern: PatternArgs,
        #[command(flatten)]
        common: CommonArgs,
    },
    /// Train the phase network.
    Train {
        #[command(flatten)]
        train: TrainArgs,
        #[command(flatten)]
        range: RangeArgs,
        #[command(flatten)]
        data: DataArgs,
        #[command(flatten)]
        geom: GeomArgs,
        #[command(flatten)]
        pattern: PatternArgs,
        #[command(flatten)]
        common: CommonArgs,
        /// Model output path (default: <out>/model.json)
        #[arg(long)]
        out_model: Option<PathBuf>,
    },
    /// Predict phases for one direction with a trained model.
    Infer {
        #[arg(long)]
        model: Option<String>,
        #[arg(long)]
        steer: Option<f64>,
        /// Succeed even if the pattern misses the peak/sidelobe targets
        #[arg(long)]
        no_gate: bool,
        #[command(flatten)]
        common: CommonArgs,
    },
    /// Check the bundled reference tables and cross-check them against the
    /// synthesis pipeline.
    ValidateRef {
        #[command(flatten)]
        geom: GeomArgs,
        #[command(flatten)]
        common: CommonArgs,
    },
}

#[derive(Debug, Args)]
struct CommonArgs {
    /// TOML file with default values for any option
    #[arg(long)]
    config: Option<PathBuf>,
    /// Output directory
    #[arg(long, default_value = ".")]
    out: PathBuf,
}

#[derive(Debug, Args)]
struct GeomArgs {
    /// Number of elements
    #[arg(long)]
    n: Option<usize>,
    /// Element spacing in wavelengths
    #[arg(long)]
    spacing: Option<f64>,
}

#[derive(Debug, Args)]
struct PatternArgs {
    /// Sector width in u = cos(theta)
    #[arg(long)]
    width_u: Option<f64>,
    /// sector or raised-cosine
    #[arg(long)]
    shape: Option<String>,
    #[arg(long)]
    rolloff: Option<f64>,
    /// Scale the sector width by sin(steer)
    #[arg(long)]
    angular_scaling: Option<bool>,
}

#[derive(Debug, Args)]
struct SpecArgs {
    /// Sidelobe level in dB for chebyshev, taylor and schelkunoff
    #[arg(long, allow_hyphen_values = true)]
    sll: Option<f64>,
    #[arg(long)]
    n_bar: Option<usize>,
    /// Comma-separated null angles in degrees for schelkunoff
    #[arg(long, value_delimiter = ',')]
    nulls: Option<Vec<f64>>,
}

#[derive(Debug, Args)]
struct RangeArgs {
    #[arg(long)]
    from: Option<f64>,
    #[arg(long)]
    to: Option<f64>,
    #[arg(long)]
    step: Option<f64>,
}

#[derive(Debug, Args)]
struct DataArgs {
    #[arg(long, env = "BEAMSYNTH_SEED")]
    seed: Option<u64>,
    #[arg(long)]
    train_fraction: Option<f64>,
    #[arg(long)]
    validation_fraction: Option<f64>,
    #[arg(long)]
    test_fraction: Option<f64>,
}

#[derive(Debug, Args)]
struct TrainArgs {
    #[arg(long)]
    eta: Option<f64>,
    #[arg(long)]
    epochs: Option<usize>,
    #[arg(long)]
    target_mse: Option<f64>,
    #[arg(long)]
    hidden: Option<usize>,
    #[arg(long)]
    init_range: Option<f64>,
    #[arg(long)]
    use_biases: Option<bool>,
    /// online or full-batch
    #[arg(long)]
    batch_mode: Option<String>,
    /// Dataset CSV to train on instead of generating one
    #[arg(long)]
    dataset: Option<String>,
}

impl GeomArgs {
    fn apply(&self, c: &mut ConfigFile) {
        c.n = self.n;
        c.spacing = self.spacing;
    }
}

impl PatternArgs {
    fn apply(&self, c: &mut ConfigFile) {
        c.width_u = self.width_u;
        c.shape = self.shape.clone();
        c.rolloff = self.rolloff;
        c.angular_scaling = self.angular_scaling;
    }
}

impl SpecArgs {
    fn apply(&self, c: &mut ConfigFile) {
        c.sll = self.sll;
        c.n_bar = self.n_bar;
        c.nulls = self.nulls.clone();
    }
}

impl RangeArgs {
    fn apply(&self, c: &mut ConfigFile) {
        c.from = self.from;
        c.to = self.to;
        c.step = self.step;
    }
}

impl DataArgs {
    fn apply(&self, c: &mut ConfigFile) {
        c.seed = self.seed;
        c.train_fraction = self.train_fraction;
        c.validation_fraction = self.validation_fraction;
        c.test_fraction = self.test_fraction;
    }
}

impl TrainArgs {
    fn apply(&self, c: &mut ConfigFile) {
        c.eta = self.eta;
        c.epochs = self.epochs;
        c.target_mse = self.target_mse;
        c.hidden = self.hidden;
        c.init_range = self.init_range;
        c.use_biases = self.use_biases;
        c.batch_mode = self.batch_mode.clone();
        c.dataset = self.dataset.clone();
    }
}

/// Parse arguments and run. Returns the process exit code.
pub fn run<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { EXIT_USAGE } else { EXIT_OK };
        }
    };
    match dispatch(cli.command) {
        Ok(()) => EXIT_OK,
        Err(e) => {
            eprintln!("error: {e}");
            exit_code(&e)
        }
    }
}

pub fn exit_code(e: &Error) -> i32 {
    if e.is_usage() {
        EXIT_USAGE
    } else {
        EXIT_FAILURE
    }
}

fn resolve(cmd: Command, common: &CommonArgs, flags: ConfigFile) -> Result<Resolved> {
    let file = match &common.config {
        Some(path) => ConfigFile::load(path)?,
        None => ConfigFile::default(),
    };
    Ok(Resolved::new(cmd, file.overlay(flags)))
}

fn dispatch(cmd: Cmd) -> Result<()> {
    let mut flags = ConfigFile::default();
    match cmd {
        Cmd::Synth {
            method,
            steer,
            geom,
            pattern,
            specs,
            common,
        } => {
            flags.method = method;
            flags.steer = steer;
            geom.apply(&mut flags);
            pattern.apply(&mut flags);
            specs.apply(&mut flags);
            let r = resolve(Command::Synth, &common, flags)?;
            commands::synth(&r, &common.out)
        }
        Cmd::Scan {
            method,
            range,
            geom,
            pattern,
            specs,
            common,
        } => {
            flags.method = method;
            range.apply(&mut flags);
            geom.apply(&mut flags);
            pattern.apply(&mut flags);
            specs.apply(&mut flags);
            let r = resolve(Command::Scan, &common, flags)?;
            commands::scan(&r, &common.out)
        }
        Cmd::Compare {
            steer,
            geom,
            pattern,
            specs,
            common,
        } => {
            flags.steer = steer;
            geom.apply(&mut flags);
            pattern.apply(&mut flags);
            specs.apply(&mut flags);
            let r = resolve(Command::Compare, &common, flags)?;
            commands::compare(&r, &common.out)
        }
        Cmd::Dataset {
            range,
            data,
            geom,
            pattern,
            common,
        } => {
            range.apply(&mut flags);
            data.apply(&mut flags);
            geom.apply(&mut flags);
            pattern.apply(&mut flags);
            let r = resolve(Command::Dataset, &common, flags)?;
            commands::dataset(&r, &common.out)
        }
        Cmd::Train {
            train,
            range,
            data,
            geom,
            pattern,
            common,
            out_model,
        } => {
            train.apply(&mut flags);
            range.apply(&mut flags);
            data.apply(&mut flags);
            geom.apply(&mut flags);
            pattern.apply(&mut flags);
            let r = resolve(Command::Train, &common, flags)?;
            let model_path = out_model.unwrap_or_else(|| common.out.join("model.json"));
            commands::train(&r, &common.out, &model_path)
        }
        Cmd::Infer {
            model,
            steer,
            no_gate,
            common,
        } => {
            flags.model = model;
            flags.steer = steer;
            if no_gate {
                flags.gate = Some(false);
            }
            let r = resolve(Command::Infer, &common, flags)?;
            commands::infer(&r, &common.out)
        }
        Cmd::ValidateRef { geom, common } => {
            geom.apply(&mut flags);
            let r = resolve(Command::ValidateRef, &common, flags)?;
            commands::validate_ref(&r)
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn exit_codes_by_error_kind() {
        assert_eq!(exit_code(&Error::Numeric("loss is NaN".into())), EXIT_FAILURE);
        assert_eq!(exit_code(&Error::OutOfDomain(30.0)), EXIT_USAGE);
        assert_eq!(exit_code(&Error::Config("x".into())), EXIT_USAGE);
        assert_eq!((EXIT_OK, EXIT_FAILURE, EXIT_USAGE), (0, 1, 2));
    }
}
