//! Hand-built automata for LSB-first numerals.
//!
//! Every track is checked for canonical form: `"0"` or a non-empty digit
//! string whose last digit is non-zero. Padding counts as digit `0` for the
//! arithmetic.

use std::fmt;
use std::str::FromStr;

use super::alphabet::{Column, TrackAlphabet};
use super::dfa::MultiTrackDfa;
use crate::error::{Error, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
enum Canon {
    Empty,
    Zero,
    EndsNonzero,
    EndsZero,
    Done,
}

impl Canon {
    fn feed(self, c: Option<u32>) -> Option<Canon> {
        match (self, c) {
            (Canon::Done, Some(_)) => None,
            (Canon::Done, None) => Some(Canon::Done),
            (Canon::Empty, Some(0)) => Some(Canon::Zero),
            (_, Some(0)) => Some(Canon::EndsZero),
            (_, Some(_)) => Some(Canon::EndsNonzero),
            (Canon::Zero | Canon::EndsNonzero, None) => Some(Canon::Done),
            (_, None) => None,
        }
    }

    fn valid(self) -> bool {
        matches!(self, Canon::Zero | Canon::EndsNonzero | Canon::Done)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
struct Numerals<T> {
    canon: Vec<Canon>,
    extra: T,
}

/// Build an automaton over `tracks` canonical base-`base` numerals with an
/// extra piece of state updated by `step` on the digit column (padding read
/// as `0`).
fn numeric<T, F, A>(base: u32, tracks: usize, init: T, step: F, accept: A) -> MultiTrackDfa
where
    T: Clone + Eq + std::hash::Hash,
    F: Fn(&T, &[u32]) -> Option<T>,
    A: Fn(&T) -> bool,
{
    let digits: Vec<String> = (0..base).map(|d| d.to_string()).collect();
    let digits: Vec<&str> = digits.iter().map(String::as_str).collect();
    let alpha = TrackAlphabet::uniform(tracks, &digits);
    MultiTrackDfa::explore(
        alpha,
        Numerals {
            canon: vec![Canon::Empty; tracks],
            extra: init,
        },
        |s: &Numerals<T>, col: &Column| {
            let mut canon = Vec::with_capacity(tracks);
            for (c, x) in s.canon.iter().zip(col) {
                canon.push(c.feed(*x)?);
            }
            let vals: Vec<u32> = col.iter().map(|x| x.unwrap_or(0)).collect();
            let extra = step(&s.extra, &vals)?;
            Some(Numerals { canon, extra })
        },
        |s| s.canon.iter().all(|c| c.valid()) && accept(&s.extra),
    )
    .minimize()
}

pub fn canonical() -> MultiTrackDfa {
    numeric(2, 1, (), |_, _| Some(()), |_| true)
}

/// Canonical base-`k` numerals over digits `"0".."k-1"`.
pub fn canonical_base(base: u32) -> Result<MultiTrackDfa> {
    if base < 2 {
        return Err(Error::Presentation(format!("base {base} < 2")));
    }
    Ok(numeric(base, 1, (), |_, _| Some(()), |_| true))
}

/// `"0"`.
pub fn is_zero() -> MultiTrackDfa {
    numeric(2, 1, true, |z, v| Some(*z && v[0] == 0), |z| *z)
}

/// `"1"`.
pub fn is_one() -> MultiTrackDfa {
    numeric(
        2,
        1,
        0u8,
        |n, v| match (*n, v[0]) {
            (0, 1) => Some(1),
            _ => Some(2),
        },
        |n| *n == 1,
    )
}

/// Canonical and not `"0"`.
pub fn is_positive() -> MultiTrackDfa {
    numeric(2, 1, false, |p, v| Some(*p || v[0] != 0), |p| *p)
}

/// `0*1`: the powers of two `2^k`, `k ≥ 0`.
pub fn zero_star_one() -> MultiTrackDfa {
    // 0: zeros only, 1: 0*1, 2: anything else
    numeric(
        2,
        1,
        0u8,
        |s, v| match (*s, v[0]) {
            (0, 0) => Some(0),
            (0, 1) => Some(1),
            _ => Some(2),
        },
        |s| *s == 1,
    )
}

/// `0+1`: the powers of two `2^k`, `k > 0`.
pub fn power_of_two_gt1() -> MultiTrackDfa {
    // 0: empty, 1: 0+, 2: 0+1, 3: other
    numeric(
        2,
        1,
        0u8,
        |s, v| match (*s, v[0]) {
            (0 | 1, 0) => Some(1),
            (1, 1) => Some(2),
            _ => Some(3),
        },
        |s| *s == 2,
    )
}

/// Canonical numerals that are not `2^k` with `k > 0`.
pub fn not_power_of_two_gt1() -> MultiTrackDfa {
    canonical()
        .intersect(&power_of_two_gt1().complement())
        .expect("same alphabet")
        .minimize()
}

/// `v = u + 1` on tracks `(u, v)`.
pub fn increment() -> MultiTrackDfa {
    numeric(
        2,
        2,
        1u32,
        |carry, v| {
            let sum = v[0] + carry;
            (sum % 2 == v[1]).then_some(sum / 2)
        },
        |c| *c == 0,
    )
}

/// `v = u - 1` on tracks `(u, v)` (so `u ≥ 1`).
pub fn decrement() -> MultiTrackDfa {
    numeric(
        2,
        2,
        1u32,
        |carry, v| {
            let sum = v[1] + carry;
            (sum % 2 == v[0]).then_some(sum / 2)
        },
        |c| *c == 0,
    )
}

/// `v = 2u` on tracks `(u, v)`.
pub fn double() -> MultiTrackDfa {
    numeric(
        2,
        2,
        0u32,
        |prev, v| (v[1] == *prev).then_some(v[0]),
        |p| *p == 0,
    )
}

/// `u = 2v` on tracks `(u, v)`.
pub fn halve() -> MultiTrackDfa {
    numeric(
        2,
        2,
        0u32,
        |prev, v| (v[0] == *prev).then_some(v[1]),
        |p| *p == 0,
    )
}

/// `u = v` on tracks `(u, v)`.
pub fn equal() -> MultiTrackDfa {
    numeric(2, 2, (), |_, v| (v[0] == v[1]).then_some(()), |_| true)
}

/// Base-`k` addition `w = u + v` on tracks `(u, v, w)` with a carry state.
pub fn addition(base: u32) -> Result<MultiTrackDfa> {
    if base < 2 {
        return Err(Error::Presentation(format!("base {base} < 2")));
    }
    Ok(numeric(
        base,
        3,
        0u32,
        move |carry, v| {
            let sum = v[0] + v[1] + carry;
            (sum % base == v[2]).then_some(sum / base)
        },
        |c| *c == 0,
    ))
}

/// Base-`k` doubling `w = 2u` on tracks `(u, w)`.
pub fn doubling(base: u32) -> Result<MultiTrackDfa> {
    if base < 2 {
        return Err(Error::Presentation(format!("base {base} < 2")));
    }
    Ok(numeric(
        base,
        2,
        0u32,
        move |carry, v| {
            let sum = 2 * v[0] + carry;
            (sum % base == v[1]).then_some(sum / base)
        },
        |c| *c == 0,
    ))
}

/// The primitive relations needed to assemble the graph of `f`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum PrimitiveRelation {
    Increment,
    Decrement,
    Double,
    Halve,
    Equal,
    IsPowerOfTwo,
    Copy,
}

impl PrimitiveRelation {
    pub const ALL: [PrimitiveRelation; 7] = [
        PrimitiveRelation::Increment,
        PrimitiveRelation::Decrement,
        PrimitiveRelation::Double,
        PrimitiveRelation::Halve,
        PrimitiveRelation::Equal,
        PrimitiveRelation::IsPowerOfTwo,
        PrimitiveRelation::Copy,
    ];

    pub fn name(self) -> &'static str {
        match self {
            PrimitiveRelation::Increment => "increment",
            PrimitiveRelation::Decrement => "decrement",
            PrimitiveRelation::Double => "double",
            PrimitiveRelation::Halve => "halve",
            PrimitiveRelation::Equal => "equal",
            PrimitiveRelation::IsPowerOfTwo => "is_power_of_two",
            PrimitiveRelation::Copy => "copy",
        }
    }

    pub fn tracks(self) -> usize {
        match self {
            PrimitiveRelation::IsPowerOfTwo => 1,
            _ => 2,
        }
    }

    /// Reference semantics on decoded values.
    pub fn holds(self, u: u64, v: u64) -> bool {
        match self {
            PrimitiveRelation::Increment => v == u + 1,
            PrimitiveRelation::Decrement => u >= 1 && v == u - 1,
            PrimitiveRelation::Double => v == 2 * u,
            PrimitiveRelation::Halve => u == 2 * v,
            PrimitiveRelation::Equal | PrimitiveRelation::Copy => u == v,
            PrimitiveRelation::IsPowerOfTwo => u.is_power_of_two(),
        }
    }
}

impl fmt::Display for PrimitiveRelation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for PrimitiveRelation {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        PrimitiveRelation::ALL
            .into_iter()
            .find(|k| k.name() == s)
            .ok_or_else(|| Error::UnknownRelation(s.to_string()))
    }
}

/// Automaton for a primitive relation over LSB-first binary numerals.
pub fn build_primitive_relation(kind: PrimitiveRelation) -> MultiTrackDfa {
    match kind {
        PrimitiveRelation::Increment => increment(),
        PrimitiveRelation::Decrement => decrement(),
        PrimitiveRelation::Double => double(),
        PrimitiveRelation::Halve => halve(),
        PrimitiveRelation::Equal | PrimitiveRelation::Copy => equal(),
        PrimitiveRelation::IsPowerOfTwo => zero_star_one(),
    }
}
