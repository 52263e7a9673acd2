//! Binary-string machinery for the Collatz map.
//!
//! [`BinaryNat`] is the value type throughout: an arbitrary-precision natural
//! number (never zero) with the bit-level operations the rest of the crate
//! reasons about. On top of it:
//!
//! * [`compose`]: `O(x) = 2x + 1` / `E(x) = 2x` compositions and the binary tree rooted at 1
//! * [`classify`]: pure even / pure odd / mixed classes and hard numbers
//! * [`collatz`]: `T`, the reduced map, orbits, stopping times, end-substring transitions
//! * [`powersum`]: `3n + 1` as a merge of power-of-two exponent multisets
//! * [`traceio`]: table, scratch, point and machine renderings
//! * [`verify`]: chunked, parallel, checkpointed range verification

pub mod bitnat;
pub mod classify;
pub mod collatz;
pub mod compose;
mod error;
pub mod powersum;
pub mod traceio;
pub mod verify;

pub use bitnat::BinaryNat;
pub use classify::NumberClass;
pub use collatz::{CollatzTrace, ReducedStep, StepKind};
pub use compose::{CompositionPath, Step};
pub use error::{Error, Result};
pub use powersum::{DerivationRecord, ExponentMultiset, PowerSum};
pub use verify::{Checkpoint, RangeReport, VerifyConfig};
