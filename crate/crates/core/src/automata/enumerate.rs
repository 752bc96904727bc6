use num_bigint::BigUint;
use num_traits::Zero;

use super::alphabet::Word;
use super::dfa::MultiTrackDfa;
use crate::error::{Error, Result};

impl MultiTrackDfa {
    /// `table[k][q]`: some string of length exactly `k` leads from `q` to
    /// acceptance.
    fn completable(&self, max: usize) -> Vec<Vec<bool>> {
        let n = self.state_count();
        let mut table = Vec::with_capacity(max + 1);
        table.push(self.accepting().to_vec());
        for k in 1..=max {
            let prev: &Vec<bool> = &table[k - 1];
            let row = (0..n as u32)
                .map(|q| (0..self.symbol_count()).any(|s| prev[self.next(q, s) as usize]))
                .collect();
            table.push(row);
        }
        table
    }

    /// Number of accepted strings of length at most `n`.
    pub fn count_upto(&self, n: usize) -> BigUint {
        let states = self.state_count();
        // ways[q]: strings of the current length reaching q
        let mut ways = vec![BigUint::zero(); states];
        ways[self.start() as usize] = BigUint::from(1u32);
        let mut total = BigUint::zero();
        for len in 0..=n {
            for (q, w) in ways.iter().enumerate() {
                if self.is_accepting(q as u32) {
                    total += w;
                }
            }
            if len == n {
                break;
            }
            let mut next = vec![BigUint::zero(); states];
            for (q, w) in ways.iter().enumerate() {
                if w.is_zero() {
                    continue;
                }
                for s in 0..self.symbol_count() {
                    next[self.next(q as u32, s) as usize] += w;
                }
            }
            ways = next;
        }
        total
    }

    /// Visit every accepted string of length at most `n` in length-lexicographic
    /// order. The callback may stop the scan by returning `false`.
    pub fn for_each_upto(&self, n: usize, mut visit: impl FnMut(&[u32]) -> bool) {
        let table = self.completable(n);
        let mut word: Word = Vec::with_capacity(n);
        for len in 0..=n {
            if !table[len][self.start() as usize] {
                continue;
            }
            if !self.dfs(&table, len, self.start(), &mut word, &mut visit) {
                return;
            }
        }
    }

    fn dfs(
        &self,
        table: &[Vec<bool>],
        remaining: usize,
        q: u32,
        word: &mut Word,
        visit: &mut impl FnMut(&[u32]) -> bool,
    ) -> bool {
        if remaining == 0 {
            return visit(word);
        }
        for s in 0..self.symbol_count() {
            let t = self.next(q, s);
            if table[remaining - 1][t as usize] {
                word.push(s);
                let go_on = self.dfs(table, remaining - 1, t, word, visit);
                word.pop();
                if !go_on {
                    return false;
                }
            }
        }
        true
    }

    /// Stream of accepted strings of length at most `n`, length-lexicographic.
    pub fn enumerate_upto(&self, n: usize) -> Enumeration<'_> {
        Enumeration::new(self, n)
    }

    /// Among accepted strings of length exactly `len`, the one that is largest
    /// when compared from its last symbol backwards. For LSB-first numerals
    /// whose symbol order is digit order this is the largest value.
    pub fn max_reverse_lex(&self, len: usize) -> Option<Word> {
        let n = self.state_count();
        // reach[i]: states reachable by some prefix of length i
        let mut reach = vec![vec![false; n]];
        reach[0][self.start() as usize] = true;
        for i in 0..len {
            let mut next = vec![false; n];
            for q in 0..n {
                if reach[i][q] {
                    for s in 0..self.symbol_count() {
                        next[self.next(q as u32, s) as usize] = true;
                    }
                }
            }
            reach.push(next);
        }
        let mut targets: Vec<bool> = (0..n)
            .map(|q| reach[len][q] && self.is_accepting(q as u32))
            .collect();
        if !targets.iter().any(|&t| t) {
            return None;
        }
        let mut word = vec![0; len];
        for i in (0..len).rev() {
            let mut chosen = None;
            for s in (0..self.symbol_count()).rev() {
                let ok = (0..n).any(|q| reach[i][q] && targets[self.next(q as u32, s) as usize]);
                if ok {
                    chosen = Some(s);
                    break;
                }
            }
            let s = chosen?;
            word[i] = s;
            targets = (0..n)
                .map(|q| reach[i][q] && targets[self.next(q as u32, s) as usize])
                .collect();
        }
        Some(word)
    }

    /// Number of non-padding entries per track.
    pub fn track_lengths(&self, word: &[u32]) -> Vec<usize> {
        let alpha = self.alphabet();
        let mut lens = vec![0; alpha.tracks()];
        for &s in word {
            if let Ok(col) = alpha.decode(s) {
                for (t, c) in col.iter().enumerate() {
                    if c.is_some() {
                        lens[t] += 1;
                    }
                }
            }
        }
        lens
    }

    /// Pumping constant for a relation that is functional toward
    /// `output_track` with finitely many preimages per output: the state
    /// count `c`, after checking every accepted tuple of length at most
    /// `n_check` for `|track| ≤ |output| + c`.
    pub fn functional_gap_bound(&self, output_track: usize, n_check: usize) -> Result<usize> {
        let tracks = self.alphabet().tracks();
        if output_track >= tracks {
            return Err(Error::TrackCount {
                expected: tracks,
                found: output_track + 1,
            });
        }
        let c = self.state_count();
        let mut witness = None;
        self.for_each_upto(n_check, |w| {
            let lens = self.track_lengths(w);
            let out = lens[output_track];
            if lens.iter().any(|&l| l > out + c) {
                witness = Some(self.alphabet().render(w));
                return false;
            }
            true
        });
        match witness {
            Some(w) => Err(Error::GapViolation { witness: w }),
            None => Ok(c),
        }
    }

    /// Largest `|track| - |output|` over accepted strings up to `n_check`.
    pub fn observed_gap(&self, output_track: usize, n_check: usize) -> i64 {
        let mut gap = i64::MIN;
        self.for_each_upto(n_check, |w| {
            let lens = self.track_lengths(w);
            let out = lens[output_track] as i64;
            for (t, &l) in lens.iter().enumerate() {
                if t != output_track {
                    gap = gap.max(l as i64 - out);
                }
            }
            true
        });
        gap
    }
}

/// Length-lexicographic stream over an automaton's accepted strings.
pub struct Enumeration<'a> {
    dfa: &'a MultiTrackDfa,
    table: Vec<Vec<bool>>,
    max: usize,
    len: usize,
    // (state, next symbol to try) per depth
    stack: Vec<(u32, u32)>,
    word: Word,
    started: bool,
}

impl<'a> Enumeration<'a> {
    fn new(dfa: &'a MultiTrackDfa, max: usize) -> Self {
        Enumeration {
            table: dfa.completable(max),
            dfa,
            max,
            len: 0,
            stack: Vec::new(),
            word: Vec::new(),
            started: false,
        }
    }

    fn begin_length(&mut self) -> bool {
        while self.len <= self.max {
            if self.table[self.len][self.dfa.start() as usize] {
                self.stack = vec![(self.dfa.start(), 0)];
                self.word.clear();
                return true;
            }
            self.len += 1;
        }
        false
    }
}

impl Iterator for Enumeration<'_> {
    type Item = Word;

    fn next(&mut self) -> Option<Word> {
        if !self.started {
            self.started = true;
            if !self.begin_length() {
                return None;
            }
        }
        loop {
            if self.len > self.max {
                return None;
            }
            if self.stack.is_empty() {
                self.len += 1;
                if !self.begin_length() {
                    return None;
                }
                continue;
            }
            let depth = self.stack.len() - 1;
            if depth == self.len {
                let out = self.word.clone();
                self.stack.pop();
                self.word.pop();
                return Some(out);
            }
            let (q, s) = *self.stack.last().unwrap();
            let remaining = self.len - depth;
            let mut found = None;
            for sym in s..self.dfa.symbol_count() {
                let t = self.dfa.next(q, sym);
                if self.table[remaining - 1][t as usize] {
                    found = Some((sym, t));
                    break;
                }
            }
            match found {
                Some((sym, t)) => {
                    self.stack.last_mut().unwrap().1 = sym + 1;
                    self.word.push(sym);
                    self.stack.push((t, 0));
                }
                None => {
                    self.stack.pop();
                    self.word.pop();
                }
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::super::alphabet::bits;
    use super::super::build;
    use super::*;

    #[test]
    fn zero_star_one_upto_three() {
        let d = build::zero_star_one();
        let got: Vec<_> = d.enumerate_upto(3).collect();
        assert_eq!(got, vec![bits("1"), bits("01"), bits("001")]);
    }

    #[test]
    fn empty_language_streams_nothing() {
        let d = build::zero_star_one();
        let none = d.intersect(&d.complement()).unwrap();
        assert_eq!(none.enumerate_upto(6).count(), 0);
        assert_eq!(none.count_upto(6), BigUint::zero());
    }

    #[test]
    fn callback_and_iterator_agree() {
        let d = build::increment();
        let mut via_cb = Vec::new();
        d.for_each_upto(5, |w| {
            via_cb.push(w.to_vec());
            true
        });
        let via_iter: Vec<_> = d.enumerate_upto(5).collect();
        assert_eq!(via_cb, via_iter);
        assert_eq!(BigUint::from(via_iter.len()), d.count_upto(5));
    }

    #[test]
    fn max_reverse_lex_is_largest_numeral() {
        let d = build::canonical();
        assert_eq!(d.max_reverse_lex(4), Some(bits("1111")));
        assert_eq!(d.max_reverse_lex(0), None);
    }

    #[test]
    fn gap_bounds() {
        let add = build::addition(2).unwrap();
        let c = add.functional_gap_bound(2, 8).unwrap();
        assert_eq!(c, add.state_count());
        assert!(add.observed_gap(2, 8) <= 0);

        let eq = build::equal();
        assert_eq!(eq.observed_gap(1, 8), 0);

        let dbl = build::double();
        let c = dbl.functional_gap_bound(1, 10).unwrap();
        let g = dbl.observed_gap(1, 10);
        assert!(g <= 1 && g as usize <= c);
    }

    #[test]
    fn gap_violation_is_reported() {
        // the projection "any u, output is 0" has unboundedly long inputs
        let alpha = crate::automata::TrackAlphabet::binary(2);
        let d = build::canonical()
            .on_tracks(&alpha, &[0])
            .unwrap()
            .intersect(&build::is_zero().on_tracks(&alpha, &[1]).unwrap())
            .unwrap();
        assert!(matches!(
            d.functional_gap_bound(1, d.state_count() + 3),
            Err(Error::GapViolation { .. })
        ));
    }
}
