//! Rank/select data structures for big-alphabet strings, built around
//! alphabet partitioning: the alphabet is split into sub-alphabets so that
//! frequent symbols live in small partitions, the string splits into
//! per-partition subsequences indexed by one bit vector per partition.
//!
//! The crate provides:
//!
//! - rank/select bit vectors (plain, Elias-Fano, run-length) in [`bitvec`];
//! - a wavelet matrix for integer sequences in [`wavelet`];
//! - alphabet partitioning schemes in [`partition`];
//! - the partitioned string structure [`apstring::ApString`];
//! - run-length compressed sequences and their partitioned composition in
//!   [`runs`];
//! - backward-search pattern counting over a BWT in [`fmindex`];
//! - a document-collection layer (snippets, inverted-list intersection) in
//!   [`docs`];
//! - a simulator for distributed batch query processing in [`distsim`].
//!
//! Positions are 1-based throughout; symbols are dense integer codes in
//! `[0, sigma)`.

pub mod apstring;
pub mod batch;
pub mod bits;
pub mod bitvec;
pub mod distsim;
pub mod docs;
pub mod error;
pub mod fmindex;
pub mod gen;
pub mod io;
pub mod oracle;
pub mod partition;
pub mod runs;
pub mod wavelet;

pub use apstring::ApString;
pub use bitvec::{PlainBitVector, RunBitVector, SparseBitVector};
pub use docs::Collection;
pub use error::{Error, Result};
pub use fmindex::FmIndex;
pub use partition::{PartitionScheme, SymbolMap, SymbolStats};
pub use runs::{RunApString, RunLengthSequence};
pub use wavelet::WaveletMatrix;
