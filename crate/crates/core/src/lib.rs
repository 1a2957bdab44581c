//! Exact co-occurrence counting of itemsets, string patterns and timestamped
//! events over windows of every length.
//!
//! The fast paths ([`itemset::awlco`], [`multi::multi_awlco`],
//! [`pattern::pawlco`]) run in a single pass and produce a [`GapHistogram`],
//! a sparse signed count of gap lengths from which the whole
//! [`CooccurrenceCurve`] is reconstructed in linear time. Every fast path has
//! a brute-force counterpart in the same module that is kept deliberately
//! naive so the two can be checked against each other.

pub mod book_stack;
pub mod continuous;
mod error;
pub mod histogram;
pub mod itemset;
pub mod multi;
pub mod pattern;
pub mod sequence;

pub use book_stack::BookStack;
pub use error::{Error, Result};
pub use histogram::{GapHistogram, SignedGapUpdate, Step};
pub use itemset::{Awlco, SingleCounter};
pub use multi::MultiAwlco;
pub use pattern::{PatternSet, Pawlco};
pub use sequence::{CooccurrenceCurve, Interner, Item, ItemSet, MultiSequence, Pattern, Sequence};

/// Largest itemset accepted by the exponential subset-enumeration oracles.
pub const MAX_ORACLE_ITEMS: usize = 20;
