//! Collisional coherence in a five-level emitter: rate model, steady state
//! and time evolution, dark/bright analysis, emission spectra and
//! branching ratios, plasma pump rates and density sweeps.
//!
//! ```
//! use bratio::dynamics::{assemble, steady_state, Variant};
//! use bratio::emission::branching_ratio_operational;
//! use bratio::RateSet;
//!
//! # fn main() -> bratio::Result<()> {
//! let rates = RateSet::simplified(1.0, 1.0, 300.0, 100.0, 1.0, 1.0)?;
//! let state = steady_state(&assemble(&rates, Variant::Reduced)?)?;
//! let r = branching_ratio_operational(&state, &rates)?;
//! assert!(r > 0.0 && (state.pop_a / state.pop_b - 1.0).abs() < 0.01);
//! # Ok(())
//! # }
//! ```

pub mod dressed;
pub mod dynamics;
pub mod emission;
pub mod error;
pub mod model;
pub mod plasma;
pub mod sweep;

pub use dynamics::{assemble, evolve, relaxation_gap, steady_state, Generator, Variant};
pub use error::{Error, Result};
pub use model::{initial_state, DensityMatrix, InitialKind, RateParams, RateSet};
