use crate::automata::build;
use crate::automata::{Lift, MultiTrackDfa, TrackAlphabet, Word};
use crate::error::Result;

use super::tuple::{encode_tuple, tuple_alphabet, TupleV};

/// Strings `ā ⊗ b̄ ⊗ c̄ ⊗ d̄` encoding members of `V`.
pub fn build_l_dfa() -> MultiTrackDfa {
    let alpha = tuple_alphabet();
    let on = |d: MultiTrackDfa, t: usize| d.on_tracks(&alpha, &[t]).expect("binary track");
    let zero = |t| on(build::is_zero(), t);
    let one = |t| on(build::is_one(), t);
    let positive = |t| on(build::is_positive(), t);

    let shape = MultiTrackDfa::intersect_all(&[
        &MultiTrackDfa::well_formed(alpha.clone()),
        &on(build::canonical(), 0),
        &on(build::canonical(), 1),
        &on(build::zero_star_one(), 2),
        &zero(3).union(&one(3)).expect("same alphabet"),
    ])
    .expect("same alphabet");
    // II: a > 0 and b = 0 force c > 1
    let two = MultiTrackDfa::intersect_all(&[&positive(0), &zero(1), &one(2)])
        .expect("same alphabet")
        .complement();
    // III: a = 0 forces c = 1
    let three = zero(0)
        .intersect(&one(2).complement())
        .expect("same alphabet")
        .complement();
    MultiTrackDfa::intersect_all(&[&shape, &two, &three]).expect("same alphabet")
}

/// Two tracks, each carrying a tuple encoding over the 80 four-track columns.
pub fn graph_f_alphabet() -> TrackAlphabet {
    let inner = tuple_alphabet();
    let names: Vec<String> = (0..inner.symbol_count()).map(|s| inner.label(s)).collect();
    TrackAlphabet::new(vec![names.clone(), names]).expect("non-empty tracks")
}

/// `ū ⊗ w̄` over [`graph_f_alphabet`].
pub fn pair_encoding(u: &TupleV, w: &TupleV) -> Word {
    graph_f_alphabet()
        .convolve(&[encode_tuple(u), encode_tuple(w)])
        .expect("composite symbols")
}

/// The graph of `f`: `ū ⊗ w̄` with `u, w ∈ V` and `f(u) = w`.
pub fn build_graph_f_dfa() -> Result<MultiTrackDfa> {
    // flat view: tracks (a, b, c, d, a', b', c', d')
    let flat = TrackAlphabet::binary(8);
    let one_track = |d: MultiTrackDfa, t: usize| d.on_tracks(&flat, &[t]);
    let two_track = |d: MultiTrackDfa, s: usize, t: usize| d.on_tracks(&flat, &[s, t]);
    let zero = |t| one_track(build::is_zero(), t);
    let one = |t| one_track(build::is_one(), t);
    let pos = |t| one_track(build::is_positive(), t);
    let eq = |s, t| two_track(build::equal(), s, t);
    let inc = |s, t| two_track(build::increment(), s, t);
    let dec = |s, t| two_track(build::decrement(), s, t);

    let rules: Vec<Vec<MultiTrackDfa>> = vec![
        // 1: (a, b, c, 0) -> (a, b-1, 2c, 0)
        vec![
            zero(3)?,
            pos(0)?,
            pos(1)?,
            eq(0, 4)?,
            dec(1, 5)?,
            two_track(build::double(), 2, 6)?,
            zero(7)?,
        ],
        // 2: (a, 0, c, 0) -> (a-1, c, 1, 0)
        vec![
            zero(3)?,
            pos(0)?,
            zero(1)?,
            dec(0, 4)?,
            eq(2, 5)?,
            one(6)?,
            zero(7)?,
        ],
        // 3: (0, b, 1, 0) -> (0, b+1, 1, 1)
        vec![zero(3)?, zero(0)?, zero(4)?, inc(1, 5)?, one(6)?, one(7)?],
        // 4: (a, b, c, 1), c > 1 -> (a, b+1, c/2, 1)
        vec![
            one(3)?,
            one_track(build::power_of_two_gt1(), 2)?,
            eq(0, 4)?,
            inc(1, 5)?,
            two_track(build::halve(), 2, 6)?,
            one(7)?,
        ],
        // 5: (a, 2^k, 1, 1), k > 0 -> (a+1, 0, 2^k, 1)
        vec![
            one(3)?,
            one(2)?,
            one_track(build::power_of_two_gt1(), 1)?,
            inc(0, 4)?,
            zero(5)?,
            eq(1, 6)?,
            one(7)?,
        ],
        // 6: (a, b, 1, 1), b not 2^k with k > 0 -> (a, b, 1, 0)
        vec![
            one(3)?,
            one(2)?,
            one_track(build::not_power_of_two_gt1(), 1)?,
            eq(0, 4)?,
            eq(1, 5)?,
            one(6)?,
            zero(7)?,
        ],
    ];
    let mut cases = Vec::with_capacity(rules.len());
    for parts in &rules {
        let refs: Vec<&MultiTrackDfa> = parts.iter().collect();
        cases.push(MultiTrackDfa::intersect_all(&refs)?);
    }
    let refs: Vec<&MultiTrackDfa> = cases.iter().collect();
    let edges = MultiTrackDfa::union_all(&refs)?;

    let l = build_l_dfa();
    let flat_graph = MultiTrackDfa::intersect_all(&[
        &l.on_tracks(&flat, &[0, 1, 2, 3])?,
        &l.on_tracks(&flat, &[4, 5, 6, 7])?,
        &edges,
    ])?;

    let inner = tuple_alphabet();
    flat_graph.preimage(graph_f_alphabet(), |col| {
        let mut cells = Vec::with_capacity(8);
        for x in col {
            match x {
                Some(s) => cells.extend(inner.decode(*s)?),
                None => cells.extend([None; 4]),
            }
        }
        if cells.iter().all(Option::is_none) {
            Ok(Lift::Skip)
        } else {
            Ok(Lift::Read(flat.encode(&cells)?))
        }
    })
}
