//! Retransmission permutation arrays: constructions, exact verification,
//! latin-square completion, brute-force oracles and a retransmission
//! simulator.
//!
//! An order-`n` array whose rows are permutations of `1..=n` has the
//! coverage property at a corner when every `i x ceil(n/i)` rectangle
//! anchored there contains all `n` symbols. This crate builds such arrays
//! for the top corners (odd orders, with pinned cells), folds them so all
//! four corners work, and completes partial seeds into latin squares that
//! keep the two top-corner properties.

pub mod construct;
pub mod fixtures;
pub mod fold;
pub mod latin;
pub mod matching;
pub mod model;
pub mod oracle;
pub mod rect;
pub mod sim;
pub mod staircase;
pub mod verify;

pub use construct::{build_type12, build_type12_with_log, sum_free_repair, SEOp};
pub use fold::build_type1234;
pub use latin::{build_lrpa12, completable, count_extensions, free_choice};
pub use model::{Corner, Order, PermArray};
pub use sim::{guarantee_check, simulate, ChannelModel, CoverageTime, Side};
pub use verify::{verify_latin, verify_rpa, VerificationReport};
