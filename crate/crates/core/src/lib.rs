//! Simulation, inference and prediction toolkit for optically driven
//! charge-state dynamics of single NV centers under picosecond pulse
//! pairs.
//!
//! The crate propagates linear rate-equation models of the NV-/NV0
//! level system through arbitrary pulse sequences, reproduces the
//! photon-counting statistics of yellow charge readout, extracts
//! ionization/recombination probabilities from paired readouts, fits
//! model rates to heterogeneous datasets, and evaluates model
//! predictions (excitation/ionization trade-offs, stimulated-emission
//! branching, cycling probabilities, steady-state pulse trains).

pub mod dataset;
pub mod error;
pub mod fit;
pub mod generator;
pub mod numeric;
pub mod params;
pub mod photon;
pub mod predict;
pub mod propagator;
pub mod sequence;
pub mod state;
pub mod stochastic;

pub use error::{Error, Result};
pub use params::{IonizationTarget, IsScaling, ParameterSet, RateParameters};
pub use sequence::{PulseSequence, Segment, SegmentKind};
pub use state::{Level, StateVector, LEVEL_COUNT};
