//! The set `V`, the function `f` on it, and the presentation of (ℕ; S)
//! obtained by numbering the single `f`-orbit from `(0,0,1,1)`.

mod fast;
mod lang;
mod orbit;
mod tower;
mod tuple;

pub use fast::{orbit_index_fast, r_enumerated, OrbitIndexer};
pub use lang::{build_graph_f_dfa, build_l_dfa, graph_f_alphabet, pair_encoding};
pub use orbit::{orbit_walk, tuple_at, Landmark, OrbitWalker, DEFAULT_CAPACITY};
pub use tower::{
    ceil_slog, floor_slog, lt_tower, tower_big, tower_compare, tower_t, TowerBound,
    DEFAULT_BIT_BUDGET,
};
pub use tuple::{
    apply_f, apply_f_inverse, check_v, decode_nat, decode_string, encode_nat, encode_tuple, in_v,
    is_power_of_two_gt1, tuple_alphabet, Rule, TupleV, Violation,
};
