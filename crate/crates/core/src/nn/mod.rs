//! Multilayer perceptron mapping a desired beam to element phases.

mod mlp;
mod model;
mod predict;
mod train;

pub use mlp::{tansig, Gradient, LayerSizes, Mlp, Sample, DEFAULT_INIT_RANGE};
pub use model::ModelFile;
pub use predict::{predict_phases, PhasePredictor};
pub use train::{
    BatchMode,
    linear_regression, train, write_trace_csv, EpochRecord, TrainingConfig, TrainingTrace, TRACE_HEADER,
};
