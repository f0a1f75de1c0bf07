use std::sync::OnceLock;

use beamsynth::array::*;
use beamsynth::dataset::*;
use beamsynth::nn::*;

struct Trained {
    predictor: PhasePredictor,
    trace: TrainingTrace,
}

fn trained() -> &'static Trained {
    static CELL: OnceLock<Trained> = OnceLock::new();
    CELL.get_or_init(|| {
        let geom = ArrayGeometry::reference();
        let data = generate(&geom, &default_directions(), &DatasetConfig::default()).unwrap();
        let init = Mlp::seeded(LayerSizes::REFERENCE, 1, DEFAULT_INIT_RANGE, true).unwrap();
        let (mlp, trace) = train(&init, &data, &TrainingConfig::default()).unwrap();
        let predictor = PhasePredictor::new(mlp, geom, InputEncoding::reference()).unwrap();
        Trained { predictor, trace }
    })
}

fn wrap(d: f64) -> f64 {
    wrap_deg(d)
}

#[test]
fn training_converges_and_fits() {
    let t = &trained().trace;
    assert!(t.final_train_mse < 1e-3, "{}", t.final_train_mse);
    assert!(t.final_train_mse <= t.initial_train_mse);
    assert!((t.regression_slope - 1.0).abs() <= 0.05, "{}", t.regression_slope);
    assert!(t.records.len() <= TrainingConfig::default().max_epochs);
}

#[test]
fn broadside_phases_near_zero() {
    let phases = trained().predictor.progressive_phases_deg(90.0).unwrap();
    for p in phases {
        assert!(p.abs() <= 6.0, "{p}");
    }
}

#[test]
fn phases_antisymmetric_about_broadside() {
    let p = &trained().predictor;
    for theta in (40..90).map(f64::from) {
        let a = p.progressive_phases_deg(theta).unwrap();
        let b = p.progressive_phases_deg(180.0 - theta).unwrap();
        for (x, y) in a.iter().zip(&b) {
            assert!(wrap(x + y).abs() <= 6.0, "theta {theta}: {x} vs {y}");
        }
    }
}

#[test]
fn steering_seventy_degrees() {
    let exc = trained().predictor.predict(70.0).unwrap();
    let geom = ArrayGeometry::reference();
    let m = pattern_metrics(&array_factor(&geom, &exc, &AngleGrid::default_analysis()).unwrap()).unwrap();
    assert!((m.peak_deg - 70.0).abs() <= 2.0, "{m:?}");
}

#[test]
fn trained_directions_meet_pattern_targets() {
    let geom = ArrayGeometry::reference();
    let grid = AngleGrid::default_analysis();
    for theta in (40..=140).step_by(10).filter(|t| *t != 90).map(f64::from) {
        let exc = trained().predictor.predict(theta).unwrap();
        let m = pattern_metrics(&array_factor(&geom, &exc, &grid).unwrap()).unwrap();
        assert!((m.peak_deg - theta).abs() <= 2.0, "{theta}: {m:?}");
        assert!(m.sll_db.unwrap() <= -20.0, "{theta}: {m:?}");
    }
}

#[test]
fn out_of_domain_rejected() {
    for theta in [30.0, 39.9, 140.1, f64::NAN] {
        assert!(matches!(
            trained().predictor.predict(theta),
            Err(beamsynth::Error::OutOfDomain(_))
        ));
    }
}

#[test]
fn short_runs_are_bitwise_reproducible() {
    let geom = ArrayGeometry::reference();
    let data = generate(&geom, &default_directions(), &DatasetConfig::default()).unwrap();
    let cfg = TrainingConfig {
        max_epochs: 20,
        ..TrainingConfig::default()
    };
    let run = || {
        let init = Mlp::seeded(LayerSizes::REFERENCE, 5, DEFAULT_INIT_RANGE, true).unwrap();
        train(&init, &data, &cfg).unwrap()
    };
    let (m1, t1) = run();
    let (m2, t2) = run();
    assert_eq!(m1, m2);
    assert_eq!(t1, t2);
    assert_eq!(t1.records.len(), 20);
    assert!(t1.final_train_mse <= t1.initial_train_mse);
}

#[test]
fn infinite_target_returns_initial_weights() {
    let geom = ArrayGeometry::reference();
    let data = generate(&geom, &default_directions(), &DatasetConfig::default()).unwrap();
    let init = Mlp::seeded(LayerSizes::REFERENCE, 5, DEFAULT_INIT_RANGE, true).unwrap();
    let cfg = TrainingConfig {
        target_mse: f64::INFINITY,
        ..TrainingConfig::default()
    };
    let (m, t) = train(&init, &data, &cfg).unwrap();
    assert_eq!(m, init);
    assert!(t.records.is_empty());
    assert_eq!(t.best_epoch, 0);
}

#[test]
fn full_batch_mode_descends() {
    let geom = ArrayGeometry::reference();
    let data = generate(&geom, &default_directions(), &DatasetConfig::default()).unwrap();
    let init = Mlp::seeded(LayerSizes::REFERENCE, 2, DEFAULT_INIT_RANGE, true).unwrap();
    let cfg = TrainingConfig {
        max_epochs: 200,
        mode: BatchMode::FullBatch,
        ..TrainingConfig::default()
    };
    let (_, t) = train(&init, &data, &cfg).unwrap();
    assert!(t.records.last().unwrap().train_mse < t.initial_train_mse);
}
