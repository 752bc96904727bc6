use std::collections::{BTreeSet, HashMap};

use super::alphabet::{Column, TrackAlphabet};
use super::dfa::MultiTrackDfa;
use crate::error::{Error, Result};

impl MultiTrackDfa {
    /// Existential projection: accepts the convolution of the remaining tracks
    /// whenever some string on `track` completes it to an accepted word.
    /// Determinized by subset construction.
    pub fn project_out(&self, track: usize) -> Result<Self> {
        let alpha = self.alphabet();
        if alpha.tracks() < 2 || track >= alpha.tracks() {
            return Err(Error::TrackCount {
                expected: alpha.tracks(),
                found: track,
            });
        }
        let mut names = alpha.names().to_vec();
        names.remove(track);
        let outer = TrackAlphabet::new(names)?;
        let base = alpha.base_size(track);

        let insert = |col: &Column, x: Option<u32>| -> Column {
            let mut full = col.clone();
            full.insert(track, x);
            full
        };

        // columns where only the projected track carries a symbol
        let width = alpha.tracks();
        let tail_syms: Vec<u32> = (0..base)
            .map(|x| {
                let mut col = vec![None; width];
                col[track] = Some(x);
                alpha.encode(&col).expect("valid column")
            })
            .collect();
        let mut tail_ok = self.accepting().to_vec();
        loop {
            let mut changed = false;
            for q in 0..self.state_count() as u32 {
                if !tail_ok[q as usize]
                    && tail_syms.iter().any(|&s| tail_ok[self.next(q, s) as usize])
                {
                    tail_ok[q as usize] = true;
                    changed = true;
                }
            }
            if !changed {
                break;
            }
        }

        let choices: Vec<Vec<u32>> = outer
            .columns()
            .iter()
            .map(|col| {
                (0..=base)
                    .map(|x| if x == base { None } else { Some(x) })
                    .map(|x| alpha.encode(&insert(col, x)).expect("non-padding column"))
                    .collect()
            })
            .collect();

        let start: BTreeSet<u32> = [self.start()].into();
        let mut ids: HashMap<BTreeSet<u32>, u32> = HashMap::new();
        let mut sets = vec![start.clone()];
        ids.insert(start, 0);
        let mut delta = Vec::new();
        let mut i = 0;
        while i < sets.len() {
            let current = sets[i].clone();
            for inner in &choices {
                let next: BTreeSet<u32> = current
                    .iter()
                    .flat_map(|&q| inner.iter().map(move |&s| (q, s)))
                    .map(|(q, s)| self.next(q, s))
                    .collect();
                let id = match ids.get(&next) {
                    Some(&id) => id,
                    None => {
                        let id = sets.len() as u32;
                        ids.insert(next.clone(), id);
                        sets.push(next);
                        id
                    }
                };
                delta.push(id);
            }
            i += 1;
        }
        let accepting = sets
            .iter()
            .map(|s| s.iter().any(|&q| tail_ok[q as usize]))
            .collect();
        Ok(MultiTrackDfa::from_parts(outer, 0, accepting, delta)?.minimize())
    }

    /// Two-track automaton accepting `v ⊗ u` exactly when `v` precedes `u` in
    /// length-lexicographic order, with `base` symbols per track.
    pub fn llex_less(alpha: TrackAlphabet) -> Result<Self> {
        if alpha.tracks() != 2 || alpha.names()[0] != alpha.names()[1] {
            return Err(Error::AlphabetMismatch);
        }
        #[derive(Clone, Copy, PartialEq, Eq, Hash)]
        enum Cmp {
            Equal,
            Less,
            Greater,
            Shorter,
        }
        Ok(MultiTrackDfa::explore(
            alpha,
            Cmp::Equal,
            |c, col| match (col[0], col[1]) {
                (Some(x), Some(y)) => Some(match c {
                    Cmp::Equal if x < y => Cmp::Less,
                    Cmp::Equal if x > y => Cmp::Greater,
                    other => *other,
                }),
                (None, Some(_)) => Some(Cmp::Shorter),
                _ => None,
            },
            |c| matches!(c, Cmp::Less | Cmp::Shorter),
        )
        .minimize())
    }
}

#[cfg(test)]
mod tests {
    use super::super::alphabet::bits;
    use super::super::build;
    use super::*;

    #[test]
    fn projecting_increment_gives_canonical_numerals() {
        let proj = build::increment().project_out(1).unwrap();
        let canon = build::canonical();
        for len in 0..7 {
            for n in 0..(1u32 << len) {
                let w: Vec<u32> = (0..len).map(|i| (n >> i) & 1).collect();
                assert_eq!(
                    proj.accepts(&w).unwrap(),
                    canon.accepts(&w).unwrap(),
                    "{w:?}"
                );
            }
        }
    }

    #[test]
    fn projection_handles_longer_hidden_track() {
        // u ↦ u+1 projected onto the output: "001" (4) has preimage "11"
        let proj = build::increment().project_out(0).unwrap();
        assert!(proj.accepts(&bits("001")).unwrap());
        // and "1" (1) has preimage "0"
        assert!(proj.accepts(&bits("1")).unwrap());
        // 0 has no preimage
        assert!(!proj.accepts(&bits("0")).unwrap());
    }

    #[test]
    fn llex_order() {
        let alpha = TrackAlphabet::binary(2);
        let d = MultiTrackDfa::llex_less(alpha.clone()).unwrap();
        let less = |v: &str, u: &str| {
            d.accepts(&alpha.convolve(&[bits(v), bits(u)]).unwrap())
                .unwrap()
        };
        assert!(less("1", "00"));
        assert!(less("01", "10"));
        assert!(!less("10", "01"));
        assert!(!less("11", "11"));
        assert!(!less("000", "11"));
    }
}
