//! FA-presentations of structures over synchronous multi-track automata.
//!
//! The centrepiece is a presentation of the successor structure (ℕ; S) whose
//! strings of length `n` can denote numbers at least `T(n)`, the tower of
//! exponents of height `n`. Around it sit the automaton algebra
//! ([`automata`]), the tower construction itself ([`towerpres`]),
//! compressibility-rate measurement ([`comprate`]), and application codecs
//! for Turing machine configurations and group elements ([`apps`]).

pub mod apps;
pub mod automata;
pub mod cli;
pub mod comprate;
pub mod error;
pub mod towerpres;
pub mod verify;

pub use error::{Error, Result};
