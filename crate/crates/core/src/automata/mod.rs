//! Synchronous multi-track automata: convolution, boolean algebra,
//! enumeration, and the arithmetic relations over LSB-first numerals.

mod alphabet;
pub mod build;
mod dfa;
mod enumerate;
mod project;
mod serial;

pub use alphabet::{bits, Column, TrackAlphabet, Word, PAD};
pub use build::{build_primitive_relation, PrimitiveRelation};
pub use dfa::{Lift, MultiTrackDfa};
pub use enumerate::Enumeration;
