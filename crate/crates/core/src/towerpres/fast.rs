//! Orbit indices without walking.
//!
//! The orbit passes through hubs `H_m = (0,2^m,1,1)` and milestones
//! `M_j = (j,1,1,0)`. Between them it runs in long stretches of a single
//! rule, so an index is recovered by stepping backwards a whole stretch at a
//! time until a landmark is reached, and landmark indices follow from
//! counting stretch lengths:
//!
//! * from `H_m` with `m ∉ {1,2,4,16,...}` the orbit descends to `(0,2^m,1,0)`
//!   and climbs to `H_{m+1}` in `2^{m+1} - 1` more steps;
//! * from `H_{T(j)}` it descends to `M_{j+1}`;
//! * from `M_j` it descends to `(0,T(j),1,0)` and climbs to `H_{T(j-1)+1}`.

use num_bigint::BigUint;
use num_traits::{One, ToPrimitive, Zero};

use super::tower::{floor_slog, TowerBound, DEFAULT_BIT_BUDGET};
use super::tuple::{is_power_of_two_gt1, TupleV};

const SMALL_TOWERS: [u64; 5] = [1, 2, 4, 16, 65536];

// hub prefix tables beyond this many entries are not built
const MAX_TABLE: u64 = 1 << 26;

fn tower_u64(j: u64) -> Option<u64> {
    SMALL_TOWERS.get(j as usize).copied()
}

fn is_tower_u64(m: u64) -> bool {
    SMALL_TOWERS.contains(&m)
}

fn pow2(e: u64) -> BigUint {
    BigUint::one() << e
}

/// Steps from `H_m` (with `2^m` not a tower value) to `(0, 2^e, 1, 0)`,
/// returned with `e`.
fn descent_from_hub(m: u64) -> (u64, u64) {
    let mut cost = 0u64;
    let mut a = 0u64;
    // rule 5 then rule 4 repeatedly, one level per power of two
    let mut b = m;
    cost += 1 + m;
    a += 1;
    while b >= 2 && b.is_power_of_two() {
        let e = b.trailing_zeros() as u64;
        cost += 1 + e;
        a += 1;
        b = e;
    }
    // rule 6
    cost += 1;
    // rules 1 and 2 undo the levels
    loop {
        cost += b + 1;
        let exp = b;
        a -= 1;
        if a == 0 {
            return (cost, exp);
        }
        b = 1u64 << exp;
    }
}

/// Exact orbit indices with a cap on the size of intermediate numbers.
#[derive(Clone, Debug)]
pub struct OrbitIndexer {
    bit_budget: u64,
    // prefix[m] = sum of descent costs for hubs 1..m that are not tower values
    prefix: Vec<u64>,
    milestones: Vec<Option<BigUint>>,
}

impl Default for OrbitIndexer {
    fn default() -> Self {
        Self::new(DEFAULT_BIT_BUDGET)
    }
}

impl OrbitIndexer {
    pub fn new(bit_budget: u64) -> Self {
        OrbitIndexer {
            bit_budget,
            prefix: vec![0],
            milestones: Vec::new(),
        }
    }

    pub fn bit_budget(&self) -> u64 {
        self.bit_budget
    }

    fn extend_prefix(&mut self, upto: u64) {
        while (self.prefix.len() as u64) <= upto {
            let m = self.prefix.len() as u64;
            let cost = if is_tower_u64(m) {
                0
            } else {
                descent_from_hub(m).0
            };
            let last = *self.prefix.last().unwrap();
            self.prefix.push(last + cost);
        }
    }

    /// Steps from `H_m` to `H_{m+1}` for `2^m` not a tower value.
    pub fn hub_hop(&self, m: u64) -> Option<BigUint> {
        if m == 0 || is_tower_u64(m) || m + 3 > self.bit_budget {
            return None;
        }
        let (cost, e) = descent_from_hub(m);
        debug_assert_eq!(e, m);
        Some(BigUint::from(cost) + pow2(m + 1) - 1u32)
    }

    /// Steps from `H_{T(j)}` to `M_{j+1}`.
    pub fn hub_to_milestone(j: u64) -> Option<u64> {
        let mut cost = 1u64;
        for l in 0..=j {
            cost = cost.checked_add(1 + tower_u64(l)?)?;
        }
        Some(cost)
    }

    /// Steps from `M_j` to `(0, T(j), 1, 0)`.
    pub fn milestone_descent(j: u64) -> Option<u64> {
        let mut cost = 0u64;
        for i in 0..j {
            cost = cost.checked_add(tower_u64(i)? + 1)?;
        }
        Some(cost)
    }

    /// Index of `(j,1,1,0)`.
    pub fn milestone_index(&mut self, j: u64) -> TowerBound {
        if j == 0 {
            return TowerBound::from(3);
        }
        if let Some(Some(v)) = self.milestones.get(j as usize) {
            return TowerBound::Exact(v.clone());
        }
        // the index lies between 2^{T(j-1)} and 2^{T(j-1)+2}
        let Some(tj1) = tower_u64(j - 1).filter(|t| t + 3 <= self.bit_budget) else {
            return TowerBound::AtLeastTower(j);
        };
        let TowerBound::Exact(hub) = self.hub_index(tj1) else {
            return TowerBound::AtLeastTower(j);
        };
        let v = hub + Self::hub_to_milestone(j - 1).expect("small tower");
        if self.milestones.len() <= j as usize {
            self.milestones.resize(j as usize + 1, None);
        }
        self.milestones[j as usize] = Some(v.clone());
        TowerBound::Exact(v)
    }

    /// Index of `(0,2^k,1,1)`, `k ≥ 1`.
    pub fn hub_index(&mut self, k: u64) -> TowerBound {
        assert!(k >= 1, "hub exponent must be positive");
        // index ≥ 2^k, and T(h) ≤ 2^k iff T(h-1) ≤ k
        let symbolic = TowerBound::AtLeastTower(floor_slog(&BigUint::from(k)) + 1);
        if k + 3 > self.bit_budget || k > MAX_TABLE {
            return symbolic;
        }
        // smallest j with T(j) ≥ k; hubs T(j-1)+1 ..= T(j) follow M_j
        let j = (0..)
            .find(|&j| tower_u64(j).is_none_or(|t| t >= k))
            .unwrap();
        let (first, base) = if j == 0 {
            (1, BigUint::from(4u32))
        } else {
            let tj1 = tower_u64(j - 1).expect("T(j-1) < k");
            let TowerBound::Exact(mj) = self.milestone_index(j) else {
                return symbolic;
            };
            let descent = Self::milestone_descent(j).expect("small tower");
            (tj1 + 1, mj + descent + pow2(tj1 + 1) - 1u32)
        };
        self.extend_prefix(k);
        let small = self.prefix[(k - 1) as usize] - self.prefix[(first - 1) as usize];
        // sum of 2^{m+1} - 1 over first <= m < k
        let climbs = pow2(k + 1) - pow2(first + 1) - (k - first);
        TowerBound::Exact(base + small + climbs)
    }

    fn landmark(&mut self, v: &TupleV) -> Option<TowerBound> {
        let small = (v.a.to_u64(), v.b.to_u64(), v.c_exp, v.d);
        match small {
            (Some(0), Some(0), 0, true) => return Some(TowerBound::from(0)),
            (Some(0), Some(0), 0, false) => return Some(TowerBound::from(1)),
            (Some(0), Some(1), 0, true) => return Some(TowerBound::from(2)),
            _ => {}
        }
        if !v.d && v.b.is_one() && v.c_exp == 0 {
            return Some(match v.a.to_u64() {
                Some(j) => self.milestone_index(j),
                None => TowerBound::AtLeastTower(u64::MAX),
            });
        }
        if let Some(k) = v.as_hub() {
            return Some(self.hub_index(k));
        }
        None
    }

    /// Orbit index of `v`.
    pub fn index(&mut self, v: &TupleV) -> TowerBound {
        debug_assert!(v.is_valid());
        let mut cur = v.clone();
        let mut steps = BigUint::zero();
        loop {
            if let Some(base) = self.landmark(&cur) {
                return match base {
                    TowerBound::Exact(x) => TowerBound::Exact(x + steps),
                    symbolic => symbolic,
                };
            }
            match self.back(&cur) {
                Ok((prev, cost)) => {
                    cur = prev;
                    steps += cost;
                }
                Err(bound) => return bound,
            }
        }
    }

    /// Jump back over one stretch of a single rule, or give up with a lower
    /// bound when the predecessor would not fit the budget.
    fn back(&self, v: &TupleV) -> Result<(TupleV, BigUint), TowerBound> {
        let TupleV { a, b, c_exp, d } = v;
        let a_u = a.to_u64().unwrap_or(u64::MAX);
        // chain stretch at level a: H_m lies a levels further up
        let chain_bound = |e: &BigUint| TowerBound::AtLeastTower(a_u.saturating_add(floor_slog(e)));
        let lowest_power = |b: &BigUint| pow2(b.bits() - 1);
        if !d {
            if *c_exp > 0 {
                // rule 1 stretch
                let prev = TupleV {
                    a: a.clone(),
                    b: b + *c_exp,
                    c_exp: 0,
                    d: false,
                };
                return Ok((prev, BigUint::from(*c_exp)));
            }
            if a.is_zero() {
                // climbing from (0,P,1,0) in two steps per unit
                let p = lowest_power(b);
                if &p == b {
                    let prev = TupleV {
                        a: BigUint::one(),
                        b: BigUint::zero(),
                        c_exp: b.bits() - 1,
                        d: false,
                    };
                    return Ok((prev, BigUint::one()));
                }
                let cost = (b - &p) * 2u32;
                return Ok((
                    TupleV {
                        a: BigUint::zero(),
                        b: p,
                        c_exp: 0,
                        d: false,
                    },
                    cost,
                ));
            }
            if is_power_of_two_gt1(b) {
                // rule 2
                let prev = TupleV {
                    a: a + 1u32,
                    b: BigUint::zero(),
                    c_exp: b.bits() - 1,
                    d: false,
                };
                return Ok((prev, BigUint::one()));
            }
            // rule 6
            let prev = TupleV {
                a: a.clone(),
                b: b.clone(),
                c_exp: 0,
                d: true,
            };
            return Ok((prev, BigUint::one()));
        }
        if a.is_zero() {
            // (0,b,1,1) with b ≥ 3 not a power of two
            let p = lowest_power(b);
            let cost = (b - &p) * 2u32 - 1u32;
            return Ok((
                TupleV {
                    a: BigUint::zero(),
                    b: p,
                    c_exp: 0,
                    d: false,
                },
                cost,
            ));
        }
        if !b.is_zero() {
            // rule 4 stretch
            let Some(e) = b.to_u64().and_then(|b| b.checked_add(*c_exp)) else {
                return Err(chain_bound(b));
            };
            let prev = TupleV {
                a: a.clone(),
                b: BigUint::zero(),
                c_exp: e,
                d: true,
            };
            return Ok((prev, b.clone()));
        }
        // rule 5
        if *c_exp >= self.bit_budget {
            return Err(chain_bound(&BigUint::from(*c_exp)));
        }
        let prev = TupleV {
            a: a - 1u32,
            b: pow2(*c_exp),
            c_exp: 0,
            d: true,
        };
        Ok((prev, BigUint::one()))
    }
}

/// Orbit index of `v` under a bit budget; see [`OrbitIndexer`].
pub fn orbit_index_fast(v: &TupleV, bit_budget: u64) -> TowerBound {
    OrbitIndexer::new(bit_budget).index(v)
}

/// `r(n)`: the largest index among tuples whose encoding has length at most
/// `n`, by enumerating the language. Returns the bound and the number of
/// strings scanned.
pub fn r_enumerated(n: usize, bit_budget: u64) -> (TowerBound, u64) {
    let lang = super::lang::build_l_dfa();
    let mut ix = OrbitIndexer::new(bit_budget);
    let mut best = TowerBound::from(0);
    let mut scanned = 0u64;
    lang.for_each_upto(n, |w| {
        scanned += 1;
        if let Ok(Some(v)) = super::tuple::decode_string(w) {
            best = best.clone().max_lower(ix.index(&v));
        }
        true
    });
    (best, scanned)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::towerpres::orbit::OrbitWalker;

    fn t(a: u64, b: u64, c: u64, d: u8) -> TupleV {
        TupleV::small(a, b, c.trailing_zeros() as u64, d).unwrap()
    }

    #[test]
    fn example_index() {
        assert_eq!(
            orbit_index_fast(&t(0, 4, 1, 0), DEFAULT_BIT_BUDGET),
            TowerBound::from(23)
        );
        let mut ix = OrbitIndexer::default();
        assert_eq!(ix.milestone_index(1), TowerBound::from(7));
        assert_eq!(ix.milestone_index(2), TowerBound::from(18));
        assert_eq!(ix.hub_index(1), TowerBound::from(4));
        assert_eq!(ix.hub_index(2), TowerBound::from(12));
        assert_eq!(ix.hub_index(3), TowerBound::from(30));
    }

    #[test]
    fn agrees_with_walk_on_prefix() {
        let mut w = OrbitWalker::new(1 << 16);
        w.walk(20_000).unwrap();
        let mut ix = OrbitIndexer::default();
        for (v, i) in w.indexed() {
            assert_eq!(ix.index(&v), TowerBound::from(i), "{v}");
        }
    }

    #[test]
    fn large_milestone_is_symbolic() {
        assert_eq!(
            orbit_index_fast(&TupleV::milestone(8), 64),
            TowerBound::AtLeastTower(8)
        );
        assert_eq!(
            orbit_index_fast(&TupleV::milestone(8), DEFAULT_BIT_BUDGET),
            TowerBound::AtLeastTower(8)
        );
        let m5 = orbit_index_fast(&TupleV::milestone(5), DEFAULT_BIT_BUDGET);
        assert!(m5.is_exact());
        assert!(m5.at_least_tower(5));
    }

    #[test]
    fn symbolic_chain_bound() {
        // (3,0,2^100,1) sits three levels below a hub far beyond the budget
        let v = TupleV::new(3u32.into(), BigUint::zero(), 100, true).unwrap();
        let h = orbit_index_fast(&v, 1 << 10);
        assert_eq!(
            h,
            TowerBound::AtLeastTower(3 + floor_slog(&BigUint::from(100u32)))
        );
    }

    #[test]
    fn enumerated_rates() {
        let (r1, _) = r_enumerated(1, DEFAULT_BIT_BUDGET);
        assert_eq!(r1, TowerBound::from(7));
        let (r2, scanned) = r_enumerated(2, DEFAULT_BIT_BUDGET);
        assert!(
            r2.exact().is_some_and(|x| *x >= BigUint::from(18u32)),
            "{r2}"
        );
        assert!(scanned > 0);
        let (r3, _) = r_enumerated(3, DEFAULT_BIT_BUDGET);
        assert!(r3.at_least_tower(7), "{r3}");
    }
}
