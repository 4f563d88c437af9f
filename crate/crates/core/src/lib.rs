//! Hecke-Kiselman monoids of simple oriented graphs.
//!
//! The monoid of a graph on `[n]` is generated by idempotents `x_1, ..., x_n`
//! where `x_i x_j = x_j x_i` for disconnected `i, j` and
//! `x_i x_j x_i = x_j x_i x_j = x_i x_j` for each arrow `i -> j`.
//!
//! * [`graph`]: graphs, acyclic vertex sets, reachability and the predicate `p`.
//! * [`rewrite`]: word reduction and the equality test.
//! * [`idempotent`]: the idempotents `e_X` and products of pairs of them.
//! * [`endo`]: endomorphisms as pure set sequences and Boolean matrices.
//! * [`kiselman`]: the complete acyclic case with closed-form shortcuts.
//! * [`verify`]: law-checking suites shared by the CLI and the test suites.

pub mod endo;
pub mod graph;
pub mod idempotent;
pub mod kiselman;
pub mod rewrite;
pub mod set;
pub mod verify;
pub mod word;

pub use endo::{BoolMatrix, PureSequence, SetSequence};
pub use graph::OrientedGraph;
pub use idempotent::{IdempotentHandle, MnrsPartition};
pub use rewrite::NormalFormWord;
pub use set::VertexSet;
pub use word::Word;
