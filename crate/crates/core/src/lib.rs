//! Simulation and decoding of Pauli stabilizer codes under quasistatic phase damping
//! (coherent Z rotations with per-qubit random angles that stay fixed for a whole shot)
//! combined with phenomenological readout errors.
//!
//! * [`code_model`]: Z-strings, syndromes, the repetition and rotated surface codes.
//! * [`coherent_sim`]: exact coset-amplitude simulation of the coherent model.
//! * [`pauli_sim`]: independent phase flips plus readout flips.
//! * [`decoder`]: space-time minimum-weight perfect matching and a d = 3 lookup table.
//! * [`analytics`]: closed-form repetition-code channels and the spin-qubit mapping.
//! * [`harness`]: declarative sweeps, threshold brackets and CSV/JSON output.

pub mod analytics;
pub mod code_model;
pub mod coherent_sim;
pub mod decoder;
pub mod error;
pub mod harness;
pub mod pauli_sim;

pub use error::{Error, Result};
