//! Nonclassicality of a PT-symmetric effective qubit probed with a beam
//! splitter, with and without local noise on the output arms.
//!
//! The pipeline is
//!
//! 1. [`ptqubit`]: non-unitary evolution of the effective two-level system,
//!    normalized to a qubit density matrix;
//! 2. [`beamsplitter`]: the qubit meets the vacuum on a balanced beam
//!    splitter;
//! 3. [`channels`]: optional RTN, phase-damping or amplitude-damping noise
//!    on each output arm;
//! 4. [`measures`]: MID, concurrence and negativity of the two-mode state.
//!
//! [`schmidt`] holds the pure-state Schmidt machinery and the Bell-diagonal
//! phase-damping special case, [`experiment`] turns configuration files into
//! CSV tables and [`validation`] bundles the analytic cross-checks.

pub mod beamsplitter;
pub mod channels;
pub mod cxmat;
pub mod error;
pub mod experiment;
pub mod measures;
pub mod ptqubit;
pub mod sampling;
pub mod schmidt;
pub mod validation;

pub use beamsplitter::{bs_output, QubitState, TwoModeState};
pub use channels::{ChannelSpec, KrausPair};
pub use cxmat::{ComplexMatrix, Subsystem, C64};
pub use error::{Error, Result};
pub use measures::MeasureReport;
pub use ptqubit::{PTParams, PhaseLabel};
