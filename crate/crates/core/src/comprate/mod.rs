//! Presentations of ℕ and how much shorter one can name numbers than
//! another: `ξ`, the rate `s(n)`, and the exponential and linear bounds that
//! hold for presentations of (ℕ; +).

mod checks;
mod presentation;
mod rate;

pub use checks::{
    bijectivize, doubling_from_addition, incompressibility_check, lemma1_bound_check,
    IncompressibilityReport, IncompressibilityRow, Lemma1Report, Lemma1Row, GAP_SCAN_LIMIT,
};
pub use presentation::{
    identity_relation, Kind, Presentation, TOWER_ENCODE_LIMIT, UNARY_ENCODE_LIMIT,
};
pub use rate::{profiles_csv, s_of_n, xi, CompressProfile, Strategy, ORBIT_SCAN_LIMIT};

#[cfg(test)]
mod tests;
