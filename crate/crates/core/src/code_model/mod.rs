//! Z-type error strings, X-check syndromes and the two codes studied here: the
//! two-qubit repetition code and the rotated surface code.
//!
//! Only Z errors occur, so only X-checks can flag. Syndrome bit 1 means outcome -1.

mod bits;
mod code;
mod group;
mod strings;

pub use bits::{Bits, MAX_BITS, WORDS};
pub use code::{CodeKind, LogicalClass, StabilizerCode, DEFAULT_GROUP_CAP};
pub use group::GrayGroup;
pub use strings::{MultiCycleSyndrome, Syndrome, ZString};
