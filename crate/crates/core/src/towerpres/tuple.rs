use std::fmt;

use num_bigint::BigUint;
use num_traits::{One, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};

use crate::automata::{TrackAlphabet, Word};
use crate::error::{Error, Result};

/// An element `(a, b, c, d)` of `V` with `c = 2^c_exp`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct TupleV {
    pub a: BigUint,
    pub b: BigUint,
    pub c_exp: u64,
    pub d: bool,
}

/// Why a candidate 4-tuple is not in `V`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Violation {
    /// `c` is not a power of two or `d ∉ {0, 1}`.
    ConditionI,
    /// `a > 0`, `b = 0` but `c = 1`.
    ConditionII,
    /// `a = 0` but `c ≠ 1`.
    ConditionIII,
}

/// The rule of `f` that fired.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Rule {
    R1 = 1,
    R2 = 2,
    R3 = 3,
    R4 = 4,
    R5 = 5,
    R6 = 6,
}

impl Rule {
    pub fn index(self) -> u8 {
        self as u8
    }
}

impl fmt::Display for Rule {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.index())
    }
}

/// `b ∈ {2^k : k > 0}`.
pub fn is_power_of_two_gt1(b: &BigUint) -> bool {
    b.bits() >= 2 && b.count_ones() == 1
}

fn pow2(e: u64) -> BigUint {
    BigUint::one() << e
}

/// Membership test for a raw 4-tuple with arbitrary `c`.
pub fn check_v(
    a: &BigUint,
    b: &BigUint,
    c: &BigUint,
    d: &BigUint,
) -> std::result::Result<(), Violation> {
    if c.is_zero() || c.count_ones() != 1 || d > &BigUint::one() {
        return Err(Violation::ConditionI);
    }
    let c_is_one = c.is_one();
    if !a.is_zero() && b.is_zero() && c_is_one {
        return Err(Violation::ConditionII);
    }
    if a.is_zero() && !c_is_one {
        return Err(Violation::ConditionIII);
    }
    Ok(())
}

pub fn in_v(a: &BigUint, b: &BigUint, c: &BigUint, d: &BigUint) -> bool {
    check_v(a, b, c, d).is_ok()
}

impl TupleV {
    pub fn new(a: BigUint, b: BigUint, c_exp: u64, d: bool) -> Result<Self> {
        let v = TupleV { a, b, c_exp, d };
        match v.violation() {
            None => Ok(v),
            Some(why) => Err(Error::Presentation(format!("{v} is not in V ({why:?})"))),
        }
    }

    pub fn small(a: u64, b: u64, c_exp: u64, d: u8) -> Result<Self> {
        if d > 1 {
            return Err(Error::Presentation(format!("d = {d} is not a bit")));
        }
        Self::new(a.into(), b.into(), c_exp, d == 1)
    }

    /// The first tuple of the orbit, `(0, 0, 1, 1)`.
    pub fn origin() -> Self {
        TupleV {
            a: BigUint::zero(),
            b: BigUint::zero(),
            c_exp: 0,
            d: true,
        }
    }

    pub fn violation(&self) -> Option<Violation> {
        if !self.a.is_zero() && self.b.is_zero() && self.c_exp == 0 {
            return Some(Violation::ConditionII);
        }
        if self.a.is_zero() && self.c_exp != 0 {
            return Some(Violation::ConditionIII);
        }
        None
    }

    pub fn is_valid(&self) -> bool {
        self.violation().is_none()
    }

    /// `c` as a number.
    pub fn c(&self) -> BigUint {
        pow2(self.c_exp)
    }

    /// `(m, 1, 1, 0)`.
    pub fn milestone(m: u64) -> Self {
        TupleV {
            a: m.into(),
            b: BigUint::one(),
            c_exp: 0,
            d: false,
        }
    }

    /// `(0, 2^m, 1, 1)`.
    pub fn hub(m: u64) -> Self {
        TupleV {
            a: BigUint::zero(),
            b: pow2(m),
            c_exp: 0,
            d: true,
        }
    }

    /// `Some(m)` if this is `(m, 1, 1, 0)`.
    pub fn as_milestone(&self) -> Option<u64> {
        (!self.d && self.b.is_one() && self.c_exp == 0)
            .then(|| self.a.to_u64())
            .flatten()
    }

    /// `Some(m)` if this is `(0, 2^m, 1, 1)` with `m ≥ 1`.
    pub fn as_hub(&self) -> Option<u64> {
        (self.d && self.a.is_zero() && self.c_exp == 0 && is_power_of_two_gt1(&self.b))
            .then(|| self.b.bits() - 1)
    }

    /// The rule whose guard holds; guards are mutually exclusive on `V`.
    pub fn rule(&self) -> Result<Rule> {
        let a_pos = !self.a.is_zero();
        let b_pos = !self.b.is_zero();
        let rule = match (self.d, a_pos, b_pos, self.c_exp) {
            (false, true, true, _) => Rule::R1,
            (false, true, false, _) => Rule::R2,
            (false, false, _, 0) => Rule::R3,
            (true, _, _, e) if e > 0 => Rule::R4,
            (true, _, _, 0) if is_power_of_two_gt1(&self.b) => Rule::R5,
            (true, _, _, 0) => Rule::R6,
            _ => return Err(Error::NoRule(self.to_string())),
        };
        Ok(rule)
    }

    /// Apply `f` in place, returning the rule used.
    pub fn step(&mut self) -> Result<Rule> {
        let rule = self.rule()?;
        match rule {
            Rule::R1 => {
                self.b -= 1u32;
                self.c_exp += 1;
            }
            Rule::R2 => {
                self.a -= 1u32;
                self.b = pow2(self.c_exp);
                self.c_exp = 0;
            }
            Rule::R3 => {
                self.b += 1u32;
                self.d = true;
            }
            Rule::R4 => {
                self.b += 1u32;
                self.c_exp -= 1;
            }
            Rule::R5 => {
                self.a += 1u32;
                self.c_exp = self.b.bits() - 1;
                self.b = BigUint::zero();
            }
            Rule::R6 => {
                self.d = false;
            }
        }
        Ok(rule)
    }

    /// Encoding length: the longest of the four reverse-binary tracks.
    pub fn encoded_len(&self) -> u64 {
        let len = |n: &BigUint| n.bits().max(1);
        len(&self.a).max(len(&self.b)).max(self.c_exp + 1)
    }
}

impl fmt::Display for TupleV {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({},{},", self.a, self.b)?;
        if self.c_exp < 64 {
            write!(f, "{}", 1u64 << self.c_exp)?;
        } else {
            write!(f, "2^{}", self.c_exp)?;
        }
        write!(f, ",{})", self.d as u8)
    }
}

/// `f(v)` and the rule that produced it.
pub fn apply_f(v: &TupleV) -> Result<(TupleV, Rule)> {
    let mut w = v.clone();
    let rule = w.step()?;
    Ok((w, rule))
}

/// The unique preimage under `f`, or `None` for `(0, 0, 1, 1)`.
pub fn apply_f_inverse(v: &TupleV) -> Option<TupleV> {
    let TupleV { a, b, c_exp, d } = v;
    let pre = if !*d {
        if *c_exp > 0 {
            // rule 1
            TupleV {
                a: a.clone(),
                b: b + 1u32,
                c_exp: c_exp - 1,
                d: false,
            }
        } else if is_power_of_two_gt1(b) {
            // rule 2
            TupleV {
                a: a + 1u32,
                b: BigUint::zero(),
                c_exp: b.bits() - 1,
                d: false,
            }
        } else {
            // rule 6
            TupleV {
                a: a.clone(),
                b: b.clone(),
                c_exp: 0,
                d: true,
            }
        }
    } else if b.is_zero() {
        if a.is_zero() {
            return None;
        }
        // rule 5
        TupleV {
            a: a - 1u32,
            b: pow2(*c_exp),
            c_exp: 0,
            d: true,
        }
    } else if a.is_zero() {
        // rule 3
        TupleV {
            a: BigUint::zero(),
            b: b - 1u32,
            c_exp: 0,
            d: false,
        }
    } else {
        // rule 4
        TupleV {
            a: a.clone(),
            b: b - 1u32,
            c_exp: c_exp + 1,
            d: true,
        }
    };
    pre.is_valid().then_some(pre)
}

/// LSB-first binary; `0` is the one-symbol string `"0"`.
pub fn encode_nat(n: &BigUint) -> Vec<u32> {
    if n.is_zero() {
        return vec![0];
    }
    (0..n.bits()).map(|i| n.bit(i) as u32).collect()
}

/// Inverse of [`encode_nat`]; `None` for non-canonical strings.
pub fn decode_nat(bits: &[u32]) -> Option<BigUint> {
    match bits {
        [] => None,
        [0] => Some(BigUint::zero()),
        [.., last] if *last != 1 => None,
        _ => {
            let mut n = BigUint::zero();
            for (i, &b) in bits.iter().enumerate() {
                match b {
                    0 => {}
                    1 => n.set_bit(i as u64, true),
                    _ => return None,
                }
            }
            Some(n)
        }
    }
}

/// The four-track alphabet of the tuple encoding.
pub fn tuple_alphabet() -> TrackAlphabet {
    TrackAlphabet::binary(4)
}

/// `ā ⊗ b̄ ⊗ c̄ ⊗ d̄`, with `c̄ = 0^{c_exp} 1`.
pub fn encode_tuple(v: &TupleV) -> Word {
    let mut c = vec![0u32; v.c_exp as usize];
    c.push(1);
    tuple_alphabet()
        .convolve(&[encode_nat(&v.a), encode_nat(&v.b), c, vec![v.d as u32]])
        .expect("binary tracks")
}

/// Decode a four-track word; `Ok(None)` when the tracks are well formed but
/// do not spell an element of `V`.
pub fn decode_string(w: &[u32]) -> Result<Option<TupleV>> {
    let tracks = tuple_alphabet().deconvolve(w)?;
    let (Some(a), Some(b), Some(c), Some(d)) = (
        decode_nat(&tracks[0]),
        decode_nat(&tracks[1]),
        decode_nat(&tracks[2]),
        decode_nat(&tracks[3]),
    ) else {
        return Ok(None);
    };
    if check_v(&a, &b, &c, &d).is_err() {
        return Ok(None);
    }
    Ok(Some(TupleV {
        a,
        b,
        c_exp: c.bits() - 1,
        d: d.is_one(),
    }))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::automata::bits;

    fn t(a: u64, b: u64, c: u64, d: u8) -> TupleV {
        assert!(c.is_power_of_two());
        TupleV::small(a, b, c.trailing_zeros() as u64, d).unwrap()
    }

    fn n(x: u64) -> BigUint {
        BigUint::from(x)
    }

    #[test]
    fn membership_examples() {
        assert!(in_v(&n(0), &n(0), &n(1), &n(1)));
        assert_eq!(
            check_v(&n(1), &n(0), &n(1), &n(0)),
            Err(Violation::ConditionII)
        );
        assert_eq!(
            check_v(&n(0), &n(1), &n(2), &n(0)),
            Err(Violation::ConditionIII)
        );
        assert_eq!(
            check_v(&n(1), &n(1), &n(3), &n(0)),
            Err(Violation::ConditionI)
        );
        assert_eq!(
            check_v(&n(1), &n(1), &n(1), &n(2)),
            Err(Violation::ConditionI)
        );
    }

    #[test]
    fn f_examples() {
        assert_eq!(apply_f(&t(0, 2, 1, 1)).unwrap(), (t(1, 0, 2, 1), Rule::R5));
        assert_eq!(apply_f(&t(1, 1, 1, 0)).unwrap(), (t(1, 0, 2, 0), Rule::R1));
        assert_eq!(apply_f(&t(0, 0, 1, 1)).unwrap(), (t(0, 0, 1, 0), Rule::R6));
    }

    #[test]
    fn inverse_examples() {
        assert_eq!(apply_f_inverse(&TupleV::origin()), None);
        assert_eq!(apply_f_inverse(&t(1, 0, 2, 1)), Some(t(0, 2, 1, 1)));
    }

    #[test]
    fn nat_encoding() {
        assert_eq!(encode_nat(&n(4)), bits("001"));
        assert_eq!(encode_nat(&n(0)), bits("0"));
        assert_eq!(encode_nat(&n(5)), bits("101"));
        assert_eq!(decode_nat(&bits("001")), Some(n(4)));
        assert_eq!(decode_nat(&bits("0")), Some(n(0)));
        assert_eq!(decode_nat(&bits("00")), None);
        assert_eq!(decode_nat(&bits("10")), None);
        assert_eq!(decode_nat(&[]), None);
    }

    #[test]
    fn tuple_encoding() {
        let alpha = tuple_alphabet();
        let w = encode_tuple(&t(4, 1, 1, 0));
        assert_eq!(
            w,
            alpha
                .convolve(&[bits("001"), bits("1"), bits("1"), bits("0")])
                .unwrap()
        );
        let w = encode_tuple(&TupleV::origin());
        assert_eq!(w.len(), 1);
        assert_eq!(
            w,
            alpha
                .convolve(&[bits("0"), bits("0"), bits("1"), bits("1")])
                .unwrap()
        );
        assert_eq!(decode_string(&w).unwrap(), Some(TupleV::origin()));

        let bad = alpha
            .convolve(&[bits("1"), bits("0"), bits("1"), bits("0")])
            .unwrap();
        assert_eq!(decode_string(&bad).unwrap(), None);
    }

    #[test]
    fn decode_reports_malformed_padding() {
        let alpha = tuple_alphabet();
        let w = vec![
            alpha.encode(&[Some(1), None, Some(1), Some(0)]).unwrap(),
            alpha.encode(&[Some(1), Some(1), None, None]).unwrap(),
        ];
        assert!(decode_string(&w).is_err());
    }

    #[test]
    fn milestone_and_hub_shapes() {
        assert_eq!(TupleV::milestone(3).as_milestone(), Some(3));
        assert_eq!(TupleV::hub(5).as_hub(), Some(5));
        assert_eq!(t(0, 1, 1, 1).as_hub(), None);
        assert_eq!(t(4, 1, 1, 0).encoded_len(), 3);
    }
}
