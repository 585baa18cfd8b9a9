//! A verification lab for subsequence containment.
//!
//! The crate provides, in one place:
//!
//! * containment oracles over small integer alphabets ([`seq`]),
//! * a deterministic two-party protocol runner with bit-exact cost
//!   accounting over arbitrary bi-partitions of the inputs ([`sim`]),
//! * the trivial and iterative containment protocols ([`protocols`]),
//! * constructive reductions from indexing and set disjointness to
//!   subsequence detection ([`reductions`]),
//! * the 0/1 communication matrix of the containment function together
//!   with its exact rank over the rationals ([`matrix`]),
//! * a shattering lab for the class of fixed-pattern containment
//!   classifiers ([`vc`]).
//!
//! Everything is exact and exhaustively checkable at desk scale; no
//! floating point is involved anywhere except in decimal renderings of
//! logarithms inside reports.

pub mod matrix;
pub mod protocols;
pub mod reductions;
pub mod seq;
pub mod sim;
pub mod vc;

mod error;

pub use error::{Error, Result};
pub use seq::{Alphabet, Sequence, SsdParams};
