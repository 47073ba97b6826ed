//! A compressed self-index over the LZ77 parse of a text.
//!
//! The index answers `locate` queries (all starting positions of a pattern)
//! and random-access `extract` queries using space proportional to the parse
//! rather than the text. Occurrences are split into primary ones (those that
//! cross a phrase border), found with two batched weak prefix searches and a
//! 2-d range reporting grid, and secondary ones, recovered by following phrase
//! sources. A balanced grammar over the parse supplies extraction and
//! substring fingerprints for verifying prefix-search answers.
//!
//! Symbols are `u32` values in `1..=sigma`; `0` is reserved as the string
//! terminator used inside the tries.

pub mod cli;
pub mod codec;
pub mod error;
pub mod fingerprints;
pub mod grammar;
pub mod index;
pub mod lz77;
pub mod oracle;
pub mod prefix_search;
pub mod range_report;
pub mod suffix;
pub mod trie;

pub use error::{Error, Result};
pub use index::{Index, IndexConfig};

/// A text symbol. Valid text symbols are `1..=sigma`.
pub type Symbol = u32;

/// Terminator appended to every string stored in a trie. Never a text symbol.
pub const TERMINATOR: Symbol = 0;
