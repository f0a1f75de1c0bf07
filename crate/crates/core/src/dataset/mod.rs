//! Training data for the phase synthesizer and the bundled reference tables.

mod codec;
mod generate;
mod reference;

pub use codec::{
    assemble_excitation, encode_input, InputEncoding, PhaseCodec, DOMAIN_DEG, ENCODING_VERSION,
    TARGET_SCALE,
};
pub use generate::{
    default_directions, generate, DatasetConfig, DatasetPair, Split, SplitFractions,
    SynthesisDataset,
};
pub use reference::{
    load_reference, parse_reference, validate_reference_against_pipeline, ColumnReport,
    ColumnStatus, ReferenceKind, ReferenceReport, ReferenceTable,
};
