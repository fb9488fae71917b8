//! Radar track-initiation strings and unique tournaments.
//!
//! The crate has two halves joined by a bijection:
//!
//! * [`rule`] and [`dfa`] decide whether a binary observation string produces a
//!   track under an "m out of n with loss l" rule, and [`counting`] counts the
//!   tracking and non-tracking strings of each length.
//! * [`tournament`] models complete oriented graphs, their score vectors and the
//!   tournaments that are determined by their score vector.
//!
//! [`bijection`] maps initial-loss non-tracking strings onto unique tournaments
//! through the block code `{0, 001, 0011, 00101}`. [`oeis`] compares the
//! computed sequences against the published A000570 b-file and [`verify`]
//! bundles the exhaustive checks behind the `verify` subcommand.

pub mod bijection;
pub mod counting;
pub mod dfa;
mod error;
pub mod oeis;
pub mod rule;
pub mod tournament;
pub mod verify;

pub use bijection::{BasicBlock, IlString};
pub use counting::SequenceTable;
pub use dfa::Dfa;
pub use error::{Error, Result};
pub use rule::{BinaryString, TrackingRule};
pub use tournament::{Decomposition, ScoreVector, Tournament};
