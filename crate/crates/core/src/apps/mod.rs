//! Codecs that shorten long runs of one symbol with the tower presentation.

mod groups;
mod rate;
mod tm;
mod tower_codec;

pub use groups::{Family, GroupElementNF, NormalForm};
pub use rate::{run_compressed_rate, tower_r_lower};
pub use tm::{
    tm_decode, tm_encode, tm_s_lower, tm_s_measured, Command, Move, TmConfig, TuringMachine,
};
pub use tower_codec::TowerCodec;
