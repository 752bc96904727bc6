use std::collections::HashMap;
use std::io::Write;

use num_bigint::BigUint;
use num_traits::ToPrimitive;
use serde::Serialize;

use super::tower::TowerBound;
use super::tuple::{Rule, TupleV};
use crate::error::{Error, Result};

/// Default number of tuples the walker indexes before falling back to
/// recording milestones and hubs only.
pub const DEFAULT_CAPACITY: usize = 1 << 24;

type Key = (u64, u64, u64, bool);

fn key(v: &TupleV) -> Option<Key> {
    Some((v.a.to_u64()?, v.b.to_u64()?, v.c_exp, v.d))
}

/// A landmark passed by the walk.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Landmark {
    pub m: u64,
    pub index: u64,
}

#[derive(Serialize)]
struct LandmarkDoc<'a> {
    steps: u64,
    milestones: &'a [Landmark],
    hubs: &'a [Landmark],
}

/// Brute-force walk of `f` from `(0,0,1,1)`, assigning each visited tuple its
/// orbit index.
#[derive(Clone, Debug)]
pub struct OrbitWalker {
    current: TupleV,
    index: u64,
    last_rule: Option<Rule>,
    capacity: usize,
    seen: HashMap<Key, u64>,
    wide: HashMap<TupleV, u64>,
    saturated: bool,
    milestones: Vec<Landmark>,
    hubs: Vec<Landmark>,
    // per encoding length: largest index and number of visited tuples
    len_max: Vec<u64>,
    len_count: Vec<u64>,
}

impl Default for OrbitWalker {
    fn default() -> Self {
        Self::new(DEFAULT_CAPACITY)
    }
}

impl OrbitWalker {
    pub fn new(capacity: usize) -> Self {
        let mut w = OrbitWalker {
            current: TupleV::origin(),
            index: 0,
            last_rule: None,
            capacity,
            seen: HashMap::new(),
            wide: HashMap::new(),
            saturated: false,
            milestones: Vec::new(),
            hubs: Vec::new(),
            len_max: Vec::new(),
            len_count: Vec::new(),
        };
        w.record().expect("origin is new");
        w
    }

    fn record(&mut self) -> Result<()> {
        let v = &self.current;
        let i = self.index;
        if let Some(m) = v.as_milestone() {
            self.milestones.push(Landmark { m, index: i });
        }
        if let Some(m) = v.as_hub() {
            self.hubs.push(Landmark { m, index: i });
        }
        let len = v.encoded_len() as usize;
        if self.len_max.len() <= len {
            self.len_max.resize(len + 1, 0);
            self.len_count.resize(len + 1, 0);
        }
        self.len_max[len] = self.len_max[len].max(i);
        self.len_count[len] += 1;

        if self.seen.len() + self.wide.len() >= self.capacity {
            self.saturated = true;
            return Ok(());
        }
        let previous = match key(v) {
            Some(k) => self.seen.insert(k, i),
            None => self.wide.insert(v.clone(), i),
        };
        match previous {
            Some(j) => Err(Error::Budget(format!(
                "{v} revisited at {i}, first seen at {j}"
            ))),
            None => Ok(()),
        }
    }

    /// One application of `f`.
    pub fn step(&mut self) -> Result<Rule> {
        let rule = self.current.step()?;
        self.index += 1;
        self.last_rule = Some(rule);
        self.record()?;
        Ok(rule)
    }

    /// Walk `budget` more steps.
    pub fn walk(&mut self, budget: u64) -> Result<()> {
        for _ in 0..budget {
            self.step()?;
        }
        Ok(())
    }

    /// Walk until `stop` holds for the current tuple or `budget` steps pass.
    /// Returns whether `stop` was met.
    pub fn walk_until(
        &mut self,
        budget: u64,
        mut stop: impl FnMut(&TupleV) -> bool,
    ) -> Result<bool> {
        if stop(&self.current) {
            return Ok(true);
        }
        for _ in 0..budget {
            self.step()?;
            if stop(&self.current) {
                return Ok(true);
            }
        }
        Ok(false)
    }

    /// Walk `budget` steps writing `index<TAB>(a,b,c,d)<TAB>rule` lines,
    /// starting with the current tuple.
    pub fn write_trace(&mut self, budget: u64, out: &mut impl Write) -> Result<()> {
        self.trace_line(out)?;
        for _ in 0..budget {
            self.step()?;
            self.trace_line(out)?;
        }
        Ok(())
    }

    fn trace_line(&self, out: &mut impl Write) -> Result<()> {
        let v = &self.current;
        let rule = self.last_rule.map_or("-".to_string(), |r| r.to_string());
        writeln!(out, "{}\t{v}\t{rule}", self.index)?;
        Ok(())
    }

    pub fn current(&self) -> &TupleV {
        &self.current
    }

    pub fn index(&self) -> u64 {
        self.index
    }

    pub fn last_rule(&self) -> Option<Rule> {
        self.last_rule
    }

    /// Whether the seen-map filled up and only landmarks are still recorded.
    pub fn saturated(&self) -> bool {
        self.saturated
    }

    pub fn capacity(&self) -> usize {
        self.capacity
    }

    pub fn visited(&self) -> usize {
        self.seen.len() + self.wide.len()
    }

    /// Recorded index of `v`, if the walk passed it while indexing.
    pub fn index_of(&self, v: &TupleV) -> Option<u64> {
        if let Some(m) = v.as_milestone() {
            if let Some(l) = self.milestones.iter().find(|l| l.m == m) {
                return Some(l.index);
            }
        }
        match key(v) {
            Some(k) => self.seen.get(&k).copied(),
            None => self.wide.get(v).copied(),
        }
    }

    /// All indexed tuples with their indices, in no particular order.
    pub fn indexed(&self) -> impl Iterator<Item = (TupleV, u64)> + '_ {
        self.seen
            .iter()
            .map(|(&(a, b, c_exp, d), &i)| {
                (
                    TupleV {
                        a: a.into(),
                        b: b.into(),
                        c_exp,
                        d,
                    },
                    i,
                )
            })
            .chain(self.wide.iter().map(|(v, &i)| (v.clone(), i)))
    }

    pub fn milestones(&self) -> &[Landmark] {
        &self.milestones
    }

    pub fn hubs(&self) -> &[Landmark] {
        &self.hubs
    }

    /// Largest index among visited tuples with encoding length at most `n`;
    /// a lower bound on `r(n)`.
    pub fn r_lower(&self, n: usize) -> TowerBound {
        let best = self.len_max.iter().take(n + 1).copied().max().unwrap_or(0);
        TowerBound::Exact(BigUint::from(best))
    }

    /// Number of visited tuples with encoding length at most `n`.
    pub fn visited_upto(&self, n: usize) -> u64 {
        self.len_count.iter().take(n + 1).sum()
    }

    pub fn milestones_json(&self) -> String {
        serde_json::to_string_pretty(&LandmarkDoc {
            steps: self.index,
            milestones: &self.milestones,
            hubs: &self.hubs,
        })
        .expect("serializable")
    }
}

/// `f^k(0,0,1,1)` by walking; the inverse of the orbit index.
pub fn tuple_at(k: u64) -> Result<TupleV> {
    let mut v = TupleV::origin();
    for _ in 0..k {
        v.step()?;
    }
    Ok(v)
}

/// Convenience: a fresh walk of `budget` steps.
pub fn orbit_walk(budget: u64) -> Result<OrbitWalker> {
    let mut w = OrbitWalker::default();
    w.walk(budget)?;
    Ok(w)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn t(a: u64, b: u64, c: u64, d: u8) -> TupleV {
        TupleV::small(a, b, c.trailing_zeros() as u64, d).unwrap()
    }

    #[test]
    fn twenty_three_steps() {
        let w = orbit_walk(23).unwrap();
        assert_eq!(w.current(), &t(0, 4, 1, 0));
        assert_eq!(w.index(), 23);
        assert_eq!(w.index_of(&t(1, 1, 1, 1)), Some(6));
        assert_eq!(w.index_of(&t(1, 1, 1, 0)), Some(7));
        let base = [
            t(0, 1, 1, 0),
            t(0, 2, 1, 1),
            t(1, 0, 2, 1),
            t(1, 1, 1, 1),
            t(1, 1, 1, 0),
        ];
        for (i, v) in base.iter().enumerate() {
            assert_eq!(w.index_of(v), Some(3 + i as u64));
        }
    }

    #[test]
    fn trace_format() {
        let mut w = OrbitWalker::new(16);
        let mut out = Vec::new();
        w.write_trace(2, &mut out).unwrap();
        let text = String::from_utf8(out).unwrap();
        assert_eq!(text, "0\t(0,0,1,1)\t-\n1\t(0,0,1,0)\t6\n2\t(0,1,1,1)\t3\n");
    }

    #[test]
    fn saturation_keeps_landmarks() {
        let mut w = OrbitWalker::new(4);
        w.walk(23).unwrap();
        assert!(w.saturated());
        assert_eq!(w.visited(), 4);
        assert_eq!(w.index_of(&TupleV::milestone(2)), Some(18));
        assert_eq!(
            w.hubs().iter().map(|h| (h.m, h.index)).collect::<Vec<_>>(),
            [(1, 4), (2, 12)]
        );
    }

    #[test]
    fn r_lower_small() {
        let w = orbit_walk(30).unwrap();
        assert_eq!(w.r_lower(0), TowerBound::from(0));
        assert_eq!(w.r_lower(1), TowerBound::from(7));
        assert_eq!(w.visited_upto(1), 6);
    }

    #[test]
    fn tuple_at_matches_walk() {
        assert_eq!(tuple_at(23).unwrap(), t(0, 4, 1, 0));
        assert_eq!(tuple_at(0).unwrap(), TupleV::origin());
    }
}
