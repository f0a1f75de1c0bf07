use std::fs::File;
use std::io::BufWriter;
use std::path::Path;

use super::config::{Command, Resolved};
use crate::array::{array_factor, pattern_metrics, wrap_deg, AngleGrid, PatternMetrics};
use crate::dataset::{
    generate, load_reference, validate_reference_against_pipeline, ColumnStatus, DatasetConfig, ReferenceKind,
    Split, SynthesisDataset,
};
use crate::error::{Error, Result};
use crate::io::{fmt_sig, write_comparison_csv, write_pattern_csv, write_scan_csv, ExcitationFile};
use crate::nn::{train as train_mlp, write_trace_csv, LayerSizes, Mlp, ModelFile, PhasePredictor};
use crate::synthesis::{compare_methods, synthesize};

const GATE_PEAK_DEG: f64 = 2.0;
const GATE_SLL_DB: f64 = -20.0;

fn fmt_opt(x: Option<f64>) -> String {
    x.map(|v| format!("{v:.4}")).unwrap_or_else(|| "none".into())
}

pub fn metrics_line(method: &str, m: &PatternMetrics) -> String {
    format!(
        "method={method} peak={:.4} sll={} hpbw={:.4}",
        m.peak_deg,
        fmt_opt(m.sll_db),
        m.hpbw_deg
    )
}

/// Print the resolved config as `#` comment lines and, when `out` is given,
/// save it there as `resolved_config.toml`.
fn echo(r: &Resolved, cmd: Command, out: Option<&Path>) -> Result<()> {
    let text = r.to_toml(cmd)?;
    for line in text.lines() {
        println!("# {line}");
    }
    if let Some(dir) = out {
        std::fs::create_dir_all(dir)?;
        std::fs::write(dir.join("resolved_config.toml"), text)?;
    }
    Ok(())
}

fn create(path: &Path) -> Result<BufWriter<File>> {
    Ok(BufWriter::new(File::create(path)?))
}

pub fn synth(r: &Resolved, out: &Path) -> Result<()> {
    echo(r, Command::Synth, Some(out))?;
    let method = r.method()?;
    let geom = r.geometry()?;
    let exc = synthesize(method, &geom, &r.desired(r.steer)?, &r.specs()?)?;
    let pattern = array_factor(&geom, &exc, &AngleGrid::default_analysis())?;
    let metrics = pattern_metrics(&pattern)?;
    ExcitationFile::new(&geom, &exc).save(&out.join("excitation.json"))?;
    write_pattern_csv(create(&out.join("pattern.csv"))?, &pattern)?;
    println!("{}", metrics_line(method.name(), &metrics));
    Ok(())
}

pub fn scan(r: &Resolved, out: &Path) -> Result<()> {
    echo(r, Command::Scan, Some(out))?;
    let method = r.method()?;
    let geom = r.geometry()?;
    let specs = r.specs()?;
    let grid = AngleGrid::default_analysis();
    let mut rows = Vec::new();
    for steer in r.directions()? {
        let exc = synthesize(method, &geom, &r.desired(steer)?, &specs)?;
        let m = pattern_metrics(&array_factor(&geom, &exc, &grid)?)?;
        println!("steer={} {}", fmt_sig(steer), metrics_line(method.name(), &m));
        rows.push((steer, m));
    }
    write_scan_csv(create(&out.join("scan.csv"))?, &rows)
}

pub fn compare(r: &Resolved, out: &Path) -> Result<()> {
    echo(r, Command::Compare, Some(out))?;
    let geom = r.geometry()?;
    let rows = compare_methods(&geom, &r.desired(r.steer)?, &r.specs()?, &AngleGrid::default_analysis())?;
    for row in &rows {
        println!("{}", metrics_line(row.method.name(), &row.metrics));
    }
    write_comparison_csv(create(&out.join("comparison.csv"))?, &rows)
}

fn build_dataset(r: &Resolved) -> Result<SynthesisDataset> {
    let cfg = DatasetConfig {
        split: r.split()?,
        seed: r.seed,
        encoding: r.encoding()?,
    };
    generate(&r.geometry()?, &r.directions()?, &cfg)
}

fn print_counts(d: &SynthesisDataset) {
    println!(
        "pairs={} train={} validation={} test={}",
        d.len(),
        d.count(Split::Train),
        d.count(Split::Validation),
        d.count(Split::Test)
    );
}

pub fn dataset(r: &Resolved, out: &Path) -> Result<()> {
    echo(r, Command::Dataset, Some(out))?;
    let d = build_dataset(r)?;
    d.write_csv(create(&out.join("dataset.csv"))?)?;
    print_counts(&d);
    Ok(())
}

pub fn train(r: &Resolved, out: &Path, model_path: &Path) -> Result<()> {
    echo(r, Command::Train, Some(out))?;
    let geom = r.geometry()?;
    let cfg = r.training()?;
    let data = match &r.dataset {
        Some(path) => SynthesisDataset::read_csv(File::open(path)?)?,
        None => build_dataset(r)?,
    };
    let first = data
        .pairs
        .first()
        .ok_or_else(|| Error::Config("dataset is empty".into()))?;
    if first.target.len() != geom.n_elements() {
        return Err(Error::Dimension {
            expected: geom.n_elements(),
            got: first.target.len(),
        });
    }
    let encoding = r.encoding()?.with_samples(first.input.len());
    print_counts(&data);

    let sizes = LayerSizes::new(first.input.len(), r.hidden, geom.n_elements())?;
    let init = Mlp::seeded(sizes, r.seed, r.init_range, r.use_biases)?;
    let (mlp, trace) = train_mlp(&init, &data, &cfg)?;

    if let Some(parent) = model_path.parent() {
        std::fs::create_dir_all(parent)?;
    }
    ModelFile::new(&mlp, &geom, &encoding).save(model_path)?;
    write_trace_csv(create(&out.join("trace.csv"))?, &trace)?;
    println!(
        "epochs={} best_epoch={} reached_target={} train_mse={} val_mse={} test_mse={} slope={} intercept={}",
        trace.records.len(),
        trace.best_epoch,
        trace.reached_target,
        fmt_sig(trace.final_train_mse),
        fmt_sig(trace.final_val_mse),
        fmt_sig(trace.final_test_mse),
        fmt_sig(trace.regression_slope),
        fmt_sig(trace.regression_intercept)
    );
    Ok(())
}

pub fn infer(r: &Resolved, out: &Path) -> Result<()> {
    echo(r, Command::Infer, Some(out))?;
    let path = r
        .model
        .as_ref()
        .ok_or_else(|| Error::arg("a model file is required (--model)"))?;
    let (mlp, geom, encoding) = ModelFile::load(Path::new(path))?.into_parts()?;
    let predictor = PhasePredictor::new(mlp, geom, encoding)?;
    let network_phases: Vec<String> = predictor
        .progressive_phases_deg(r.steer)?
        .into_iter()
        .map(|p| format!("{:.4}", wrap_deg(p)))
        .collect();
    let exc = predictor.predict(r.steer)?;
    let pattern = array_factor(&geom, &exc, &AngleGrid::default_analysis())?;
    let metrics = pattern_metrics(&pattern)?;
    ExcitationFile::new(&geom, &exc).save(&out.join("excitation.json"))?;
    write_pattern_csv(create(&out.join("pattern.csv"))?, &pattern)?;
    println!("{}", metrics_line("nn", &metrics));
    println!("network_phases_deg={}", network_phases.join(","));

    if r.gate {
        let peak_err = (metrics.peak_deg - r.steer).abs();
        let sll_ok = metrics.sll_db.is_some_and(|s| s <= GATE_SLL_DB);
        if peak_err > GATE_PEAK_DEG || !sll_ok {
            return Err(Error::Numeric(format!(
                "pattern misses its targets: peak off by {peak_err:.3} deg (max {GATE_PEAK_DEG}), sll {} (max {GATE_SLL_DB})",
                fmt_opt(metrics.sll_db)
            )));
        }
    }
    Ok(())
}

pub fn validate_ref(r: &Resolved) -> Result<()> {
    echo(r, Command::ValidateRef, None)?;
    let geom = r.geometry()?;
    for kind in ReferenceKind::ALL {
        let table = load_reference(kind)?;
        println!("table={kind} checksum=ok invariants=ok");
        match kind {
            ReferenceKind::FourierAmplitudes => {
                for (col, sum) in table.column_sums() {
                    println!("table={kind} column={} sum={}", fmt_sig(col), fmt_sig(sum));
                }
            }
            ReferenceKind::WwlNnPhases => {
                println!("table={kind} worst_mirror_sum={}", fmt_sig(table.worst_mirror_sum_deg()));
            }
        }
        let report = validate_reference_against_pipeline(&table, &geom);
        for c in &report.columns {
            let status = match &c.status {
                ColumnStatus::Evaluated(m) => metrics_line("reference", m),
                ColumnStatus::Skipped(why) => format!("skipped ({why})"),
                ColumnStatus::Failed(why) => format!("failed ({why})"),
            };
            let dev = c
                .amplitude_deviation
                .map(|d| format!(" amplitude_deviation={}", fmt_sig(d)))
                .unwrap_or_default();
            println!("table={kind} steer={} {status}{dev}", fmt_sig(c.steer_deg));
        }
        for (a, b, err) in report.mirror_peak_errors() {
            println!(
                "table={kind} mirror={}/{} peak_asymmetry={}",
                fmt_sig(a),
                fmt_sig(b),
                fmt_sig(err)
            );
        }
    }
    Ok(())
}
