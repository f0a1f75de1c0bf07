//! Radiation-pattern synthesis for uniform linear phased arrays.
//!
//! * [`array`]: geometry, excitations, array-factor evaluation and pattern
//!   metrics (peak, sidelobe level, half-power beamwidth).
//! * [`synthesis`]: classical excitation synthesis.
//! * [`nn`]: a small tan-sigmoid multilayer perceptron trained by
//!   backpropagation to predict element phases for a steer direction.
//! * [`dataset`]: training pairs from the Fourier pipeline and the bundled
//!   reference tables.
//! * [`io`]: CSV and JSON file formats.
//! * [`cli`]: the `beamsynth` command line.

pub mod array;
pub mod cli;
pub mod dataset;
pub mod error;
pub mod io;
pub mod nn;
pub mod synthesis;

pub use error::{Error, Result};
