//! Classical excitation synthesis: weighted Fourier, Woodward-Lawson,
//! Schelkunoff, Dolph-Chebyshev and Taylor.
//!
//! Tapered methods return amplitudes normalized to unit sum. Woodward-Lawson
//! weights are returned as synthesized so the pattern passes through the
//! desired samples exactly.

mod chebyshev;
mod compare;
mod desired;
mod fourier;
mod schelkunoff;
mod taylor;
mod woodward;

pub use chebyshev::{chebyshev_t, chebyshev_weights, ChebyshevSpec};
pub use compare::{compare_methods, synthesize, ComparisonRow, Method, MethodSpecs};
pub use desired::{DesiredPattern, SectorShape, DEFAULT_ROLLOFF, DEFAULT_WIDTH_U};
pub use fourier::{fourier_taper, fourier_weights, FOURIER_QUADRATURE_NODES};
pub use schelkunoff::{schelkunoff_weights, villeneuve_nulls};
pub use taylor::{taylor_weights, TaylorSpec, DEFAULT_N_BAR};
pub use woodward::{excitation_from_samples, woodward_lawson, WlSample, WlSampleSet};
