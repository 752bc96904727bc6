use std::collections::{HashMap, VecDeque};
use std::hash::Hash;

use super::alphabet::{Column, TrackAlphabet};
use crate::error::{Error, Result};

/// Deterministic automaton over the composite alphabet of a [`TrackAlphabet`].
///
/// The transition table is total; missing moves go to an explicit sink.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MultiTrackDfa {
    alphabet: TrackAlphabet,
    symbols: u32,
    start: u32,
    accepting: Vec<bool>,
    // delta[state * symbols + symbol]
    delta: Vec<u32>,
}

/// What a lifted automaton does with one column of the outer alphabet.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Lift {
    /// Feed this inner composite symbol.
    Read(u32),
    /// The projected column is all padding: stay put.
    Skip,
}

impl MultiTrackDfa {
    pub fn from_parts(
        alphabet: TrackAlphabet,
        start: u32,
        accepting: Vec<bool>,
        delta: Vec<u32>,
    ) -> Result<Self> {
        let symbols = alphabet.symbol_count();
        let n = accepting.len();
        if n == 0 || start as usize >= n || delta.len() != n * symbols as usize {
            return Err(Error::Parse("inconsistent automaton tables".into()));
        }
        if delta.iter().any(|&t| t as usize >= n) {
            return Err(Error::Parse("transition target out of range".into()));
        }
        Ok(MultiTrackDfa {
            alphabet,
            symbols,
            start,
            accepting,
            delta,
        })
    }

    /// Materialize an automaton from an implicit state machine by breadth-first
    /// exploration. `step` returning `None` sends the run to the sink.
    pub fn explore<S, F, A>(alphabet: TrackAlphabet, start: S, mut step: F, accept: A) -> Self
    where
        S: Clone + Eq + Hash,
        F: FnMut(&S, &Column) -> Option<S>,
        A: Fn(&S) -> bool,
    {
        let columns = alphabet.columns();
        let symbols = columns.len();
        let mut ids: HashMap<S, u32> = HashMap::new();
        let mut states: Vec<Option<S>> = Vec::new();
        let mut queue = VecDeque::new();
        // state 0 is the sink
        states.push(None);
        ids.insert(start.clone(), 1);
        states.push(Some(start.clone()));
        queue.push_back(start);
        let mut delta = vec![0u32; 2 * symbols];
        while let Some(s) = queue.pop_front() {
            let id = ids[&s] as usize;
            for (sym, col) in columns.iter().enumerate() {
                let target = match step(&s, col) {
                    None => 0,
                    Some(t) => match ids.get(&t) {
                        Some(&i) => i,
                        None => {
                            let i = states.len() as u32;
                            ids.insert(t.clone(), i);
                            states.push(Some(t.clone()));
                            delta.extend(std::iter::repeat_n(0, symbols));
                            queue.push_back(t);
                            i
                        }
                    },
                };
                delta[id * symbols + sym] = target;
            }
        }
        let accepting = states
            .iter()
            .map(|s| s.as_ref().is_some_and(&accept))
            .collect();
        MultiTrackDfa {
            symbols: symbols as u32,
            alphabet,
            start: 1,
            accepting,
            delta,
        }
    }

    /// Automaton accepting no string.
    pub fn empty(alphabet: TrackAlphabet) -> Self {
        let symbols = alphabet.symbol_count();
        MultiTrackDfa {
            alphabet,
            symbols,
            start: 0,
            accepting: vec![false],
            delta: vec![0; symbols as usize],
        }
    }

    /// Automaton accepting every string over the composite alphabet.
    pub fn universal(alphabet: TrackAlphabet) -> Self {
        let mut d = Self::empty(alphabet);
        d.accepting[0] = true;
        d
    }

    pub fn alphabet(&self) -> &TrackAlphabet {
        &self.alphabet
    }

    pub fn symbol_count(&self) -> u32 {
        self.symbols
    }

    pub fn state_count(&self) -> usize {
        self.accepting.len()
    }

    pub fn start(&self) -> u32 {
        self.start
    }

    pub fn is_accepting(&self, state: u32) -> bool {
        self.accepting[state as usize]
    }

    pub fn accepting(&self) -> &[bool] {
        &self.accepting
    }

    #[inline]
    pub fn next(&self, state: u32, symbol: u32) -> u32 {
        self.delta[state as usize * self.symbols as usize + symbol as usize]
    }

    pub fn run(&self, word: &[u32]) -> Result<u32> {
        let mut q = self.start;
        for &s in word {
            if s >= self.symbols {
                return Err(Error::BadComposite(s));
            }
            q = self.next(q, s);
        }
        Ok(q)
    }

    pub fn accepts(&self, word: &[u32]) -> Result<bool> {
        Ok(self.is_accepting(self.run(word)?))
    }

    fn check_same(&self, other: &Self) -> Result<()> {
        if self.alphabet != other.alphabet {
            return Err(Error::AlphabetMismatch);
        }
        Ok(())
    }

    fn product(&self, other: &Self, keep: impl Fn(bool, bool) -> bool) -> Result<Self> {
        self.check_same(other)?;
        let symbols = self.symbols as usize;
        let mut ids: HashMap<(u32, u32), u32> = HashMap::new();
        let mut pairs = vec![(self.start, other.start)];
        ids.insert((self.start, other.start), 0);
        let mut delta = Vec::new();
        let mut i = 0;
        while i < pairs.len() {
            let (p, q) = pairs[i];
            for s in 0..symbols as u32 {
                let t = (self.next(p, s), other.next(q, s));
                let id = *ids.entry(t).or_insert_with(|| {
                    pairs.push(t);
                    (pairs.len() - 1) as u32
                });
                delta.push(id);
            }
            i += 1;
        }
        let accepting = pairs
            .iter()
            .map(|&(p, q)| keep(self.is_accepting(p), other.is_accepting(q)))
            .collect();
        Ok(MultiTrackDfa {
            alphabet: self.alphabet.clone(),
            symbols: self.symbols,
            start: 0,
            accepting,
            delta,
        })
    }

    pub fn intersect(&self, other: &Self) -> Result<Self> {
        self.product(other, |a, b| a && b)
    }

    pub fn union(&self, other: &Self) -> Result<Self> {
        self.product(other, |a, b| a || b)
    }

    pub fn difference(&self, other: &Self) -> Result<Self> {
        self.product(other, |a, b| a && !b)
    }

    pub fn complement(&self) -> Self {
        let mut d = self.clone();
        for a in d.accepting.iter_mut() {
            *a = !*a;
        }
        d
    }

    /// Intersection of a non-empty list, minimizing along the way.
    pub fn intersect_all(parts: &[&Self]) -> Result<Self> {
        let (first, rest) = parts.split_first().ok_or(Error::EmptyTracks)?;
        let mut acc = (*first).clone();
        for p in rest {
            acc = acc.intersect(p)?.minimize();
        }
        Ok(acc)
    }

    pub fn union_all(parts: &[&Self]) -> Result<Self> {
        let (first, rest) = parts.split_first().ok_or(Error::EmptyTracks)?;
        let mut acc = (*first).clone();
        for p in rest {
            acc = acc.union(p)?.minimize();
        }
        Ok(acc)
    }

    fn reachable(&self) -> Vec<bool> {
        let mut seen = vec![false; self.state_count()];
        let mut stack = vec![self.start];
        seen[self.start as usize] = true;
        while let Some(q) = stack.pop() {
            for s in 0..self.symbols {
                let t = self.next(q, s);
                if !seen[t as usize] {
                    seen[t as usize] = true;
                    stack.push(t);
                }
            }
        }
        seen
    }

    /// States from which some accepting state is reachable.
    pub fn live_states(&self) -> Vec<bool> {
        let n = self.state_count();
        let mut rev: Vec<Vec<u32>> = vec![Vec::new(); n];
        for q in 0..n as u32 {
            for s in 0..self.symbols {
                rev[self.next(q, s) as usize].push(q);
            }
        }
        let mut live = self.accepting.clone();
        let mut stack: Vec<u32> = (0..n as u32).filter(|&q| live[q as usize]).collect();
        while let Some(q) = stack.pop() {
            for &p in &rev[q as usize] {
                if !live[p as usize] {
                    live[p as usize] = true;
                    stack.push(p);
                }
            }
        }
        live
    }

    pub fn is_empty(&self) -> bool {
        let reach = self.reachable();
        !reach.iter().zip(&self.accepting).any(|(&r, &a)| r && a)
    }

    /// Minimal equivalent automaton (reachable part, partition refinement).
    /// States are renumbered in breadth-first order from the start, so equal
    /// languages give identical automata.
    pub fn minimize(&self) -> Self {
        let reach = self.reachable();
        let old: Vec<u32> = (0..self.state_count() as u32)
            .filter(|&q| reach[q as usize])
            .collect();
        let mut class: Vec<u32> = vec![0; self.state_count()];
        for &q in &old {
            class[q as usize] = self.is_accepting(q) as u32;
        }
        let mut count = {
            let mut c: Vec<u32> = old.iter().map(|&q| class[q as usize]).collect();
            c.sort_unstable();
            c.dedup();
            c.len()
        };
        loop {
            let mut sigs: HashMap<Vec<u32>, u32> = HashMap::new();
            let mut next_class = vec![0u32; self.state_count()];
            for &q in &old {
                let mut sig = Vec::with_capacity(self.symbols as usize + 1);
                sig.push(class[q as usize]);
                for s in 0..self.symbols {
                    sig.push(class[self.next(q, s) as usize]);
                }
                let n = sigs.len() as u32;
                next_class[q as usize] = *sigs.entry(sig).or_insert(n);
            }
            let new_count = sigs.len();
            class = next_class;
            if new_count == count {
                break;
            }
            count = new_count;
        }
        // canonical BFS numbering of classes
        let mut order: HashMap<u32, u32> = HashMap::new();
        let mut reps: Vec<u32> = Vec::new();
        let mut queue = VecDeque::new();
        order.insert(class[self.start as usize], 0);
        reps.push(self.start);
        queue.push_back(self.start);
        while let Some(q) = queue.pop_front() {
            for s in 0..self.symbols {
                let t = self.next(q, s);
                let c = class[t as usize];
                if let std::collections::hash_map::Entry::Vacant(e) = order.entry(c) {
                    e.insert(reps.len() as u32);
                    reps.push(t);
                    queue.push_back(t);
                }
            }
        }
        let mut delta = Vec::with_capacity(reps.len() * self.symbols as usize);
        for &q in &reps {
            for s in 0..self.symbols {
                delta.push(order[&class[self.next(q, s) as usize]]);
            }
        }
        let accepting = reps.iter().map(|&q| self.is_accepting(q)).collect();
        MultiTrackDfa {
            alphabet: self.alphabet.clone(),
            symbols: self.symbols,
            start: 0,
            accepting,
            delta,
        }
    }

    /// Inverse image under a column map: the result runs over `outer` and, on
    /// each outer column, feeds `map(column)` to this automaton (or stays put
    /// on [`Lift::Skip`]). Used to place a relation on chosen tracks of a
    /// wider or nested alphabet.
    pub fn preimage<F>(&self, outer: TrackAlphabet, map: F) -> Result<Self>
    where
        F: Fn(&Column) -> Result<Lift>,
    {
        let columns = outer.columns();
        let lifts: Vec<Lift> = columns.iter().map(&map).collect::<Result<_>>()?;
        for l in &lifts {
            if let Lift::Read(s) = l {
                if *s >= self.symbols {
                    return Err(Error::BadComposite(*s));
                }
            }
        }
        let symbols = columns.len();
        let mut delta = Vec::with_capacity(self.state_count() * symbols);
        for q in 0..self.state_count() as u32 {
            for l in &lifts {
                delta.push(match *l {
                    Lift::Read(s) => self.next(q, s),
                    Lift::Skip => q,
                });
            }
        }
        Ok(MultiTrackDfa {
            symbols: symbols as u32,
            alphabet: outer,
            start: self.start,
            accepting: self.accepting.clone(),
            delta,
        }
        .minimize())
    }

    /// Place a relation over binary-style tracks onto the listed tracks of a
    /// wider alphabet with identical base sets on those tracks.
    pub fn on_tracks(&self, outer: &TrackAlphabet, tracks: &[usize]) -> Result<Self> {
        if tracks.len() != self.alphabet.tracks() {
            return Err(Error::TrackCount {
                expected: self.alphabet.tracks(),
                found: tracks.len(),
            });
        }
        for (i, &t) in tracks.iter().enumerate() {
            if t >= outer.tracks() || outer.base_names(t) != self.alphabet.base_names(i) {
                return Err(Error::AlphabetMismatch);
            }
        }
        let inner = self.alphabet.clone();
        self.preimage(outer.clone(), |col| {
            let proj: Column = tracks.iter().map(|&t| col[t]).collect();
            if proj.iter().all(Option::is_none) {
                Ok(Lift::Skip)
            } else {
                Ok(Lift::Read(inner.encode(&proj)?))
            }
        })
    }

    /// Raw transition table (row-major by state).
    pub fn transitions(&self) -> &[u32] {
        &self.delta
    }

    /// Automaton accepting exactly the well-formed convolutions (padding is a
    /// suffix on every track).
    pub fn well_formed(alphabet: TrackAlphabet) -> Self {
        let tracks = alphabet.tracks();
        Self::explore(
            alphabet,
            vec![false; tracks],
            |ended, col| {
                let mut next = ended.clone();
                for (t, c) in col.iter().enumerate() {
                    match c {
                        Some(_) if ended[t] => return None,
                        Some(_) => {}
                        None => next[t] = true,
                    }
                }
                Some(next)
            },
            |_| true,
        )
        .minimize()
    }
}
