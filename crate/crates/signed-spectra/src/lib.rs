//! A toolkit for spectral extremal questions on signed graphs.
//!
//! A signed graph assigns `+`/`-` to each edge of a simple graph. Switching
//! at a vertex set negates the edges across the cut and preserves every
//! cycle sign, so spectra, balance, and frustration are all properties of
//! the switching class. This crate provides:
//!
//! - the graph model with switching, equivalence, and isomorphism tests
//!   ([`graph`]);
//! - balance, negative girth, fixed-length negative cycle detection, and
//!   exact frustration indices ([`cycles`]);
//! - a dense symmetric eigensolver tuned for signed adjacency matrices
//!   ([`spectra`]);
//! - classical index upper bounds and edge-budget audits ([`bounds`]);
//! - named constructions for the known extremal family ([`constructions`]);
//! - exhaustive enumeration of small switching classes ([`enumerate`]);
//! - exhaustive and stochastic extremal search with verdict reporting
//!   ([`search`]);
//! - text formats: a whitespace line format and graph6 ([`graph6`]).

pub mod bounds;
pub mod constructions;
pub mod cycles;
pub mod enumerate;
pub mod graph;
pub mod graph6;
pub mod rand_graphs;
pub mod search;
pub mod spectra;
pub mod util;

pub use graph::{Sign, SignedGraph, SwitchSet};
