//! Combinatorics of pedigrees with labelled extant vertices.
//!
//! - [`pedigree`]: the data model, validation, sub-pedigrees, generations,
//!   gender labellings and the parent graph.
//! - [`isomorphism`]: label-fixing isomorphism, canonical codes and decks.
//! - [`counterexample`]: the hypercube-parity family of pedigree pairs that
//!   are `(n-1)`-hypomorphic but not isomorphic.
//! - [`reconstruction`]: reconstruction from `(n-1)`-decks under the twin and
//!   parent-cycle hypotheses, plus an exhaustive reconstructibility probe.
//! - [`enumeration`]: counting bounds, exact census counts and site bounds.

pub mod counterexample;
pub mod enumeration;
pub mod io;
pub mod isomorphism;
pub mod label;
pub mod pedigree;
pub mod reconstruction;

pub use label::{Label, LabelSet};
pub use pedigree::{Pedigree, RawPedigree, VertexId};
