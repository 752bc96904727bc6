use std::cmp::Ordering;
use std::fmt;

use num_bigint::BigUint;
use num_traits::{One, ToPrimitive, Zero};

/// Default cap on the size of exact big-integer results, in bits.
pub const DEFAULT_BIT_BUDGET: u64 = 1 << 20;

/// `T(0..=4)`; `T(5) = 2^65536` no longer fits a machine word.
const SMALL_TOWERS: [u64; 5] = [1, 2, 4, 16, 65536];

/// An exact value or a symbolic lower bound `≥ T(h)`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum TowerBound {
    Exact(BigUint),
    AtLeastTower(u64),
}

impl TowerBound {
    pub fn exact(&self) -> Option<&BigUint> {
        match self {
            TowerBound::Exact(v) => Some(v),
            TowerBound::AtLeastTower(_) => None,
        }
    }

    pub fn is_exact(&self) -> bool {
        matches!(self, TowerBound::Exact(_))
    }

    /// The stronger of two lower bounds on the same quantity, when it can be
    /// decided; otherwise `self`.
    pub fn max_lower(self, other: TowerBound) -> TowerBound {
        match tower_compare(&self, &other) {
            Some(Ordering::Less) => other,
            Some(_) => self,
            None => match (&self, &other) {
                // x ≥ T(h) is known here, so x is the stronger statement
                (TowerBound::Exact(_), TowerBound::AtLeastTower(_)) => self,
                (TowerBound::AtLeastTower(_), TowerBound::Exact(_)) => other,
                (TowerBound::AtLeastTower(g), TowerBound::AtLeastTower(h)) => {
                    TowerBound::AtLeastTower(*g.max(h))
                }
                _ => self,
            },
        }
    }

    /// Add a small exact offset; symbolic bounds are unchanged.
    pub fn plus(&self, k: u64) -> TowerBound {
        match self {
            TowerBound::Exact(v) => TowerBound::Exact(v + k),
            TowerBound::AtLeastTower(h) => TowerBound::AtLeastTower(*h),
        }
    }

    /// Certified lower bound in tower scale: the largest `h` with `T(h) ≤ self`.
    pub fn tower_height(&self) -> Option<u64> {
        match self {
            TowerBound::Exact(v) if v.is_zero() => None,
            TowerBound::Exact(v) => Some(floor_slog(v)),
            TowerBound::AtLeastTower(h) => Some(*h),
        }
    }

    /// `x ≥ T(h)` is certain.
    pub fn at_least_tower(&self, h: u64) -> bool {
        match self {
            TowerBound::Exact(v) => !lt_tower(v, h),
            TowerBound::AtLeastTower(g) => *g >= h,
        }
    }
}

impl From<BigUint> for TowerBound {
    fn from(v: BigUint) -> Self {
        TowerBound::Exact(v)
    }
}

impl From<u64> for TowerBound {
    fn from(v: u64) -> Self {
        TowerBound::Exact(v.into())
    }
}

impl fmt::Display for TowerBound {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            TowerBound::Exact(v) => write!(f, "{v}"),
            TowerBound::AtLeastTower(h) => write!(f, "T({h})+"),
        }
    }
}

/// `T(h) ≥ y`.
fn tower_ge_u64(h: u64, y: u64) -> bool {
    match SMALL_TOWERS.get(h as usize) {
        Some(&t) => t >= y,
        None => true,
    }
}

/// `x < T(h)`, decided through bit lengths.
pub fn lt_tower(x: &BigUint, h: u64) -> bool {
    if h == 0 {
        return x.is_zero();
    }
    // x < 2^{T(h-1)} iff bits(x) ≤ T(h-1)
    tower_ge_u64(h - 1, x.bits())
}

/// Largest `h` with `T(h) ≤ x`, for `x ≥ 1`.
pub fn floor_slog(x: &BigUint) -> u64 {
    assert!(!x.is_zero(), "floor_slog(0)");
    let mut h = 0;
    while !lt_tower(x, h + 1) {
        h += 1;
    }
    h
}

/// Smallest `j` with `T(j) ≥ k`.
pub fn ceil_slog(k: &BigUint) -> u64 {
    if k <= &BigUint::one() {
        return 0;
    }
    // T(j) ≥ k iff not (T(j) < k) iff not (T(j) ≤ k - 1)
    let below = k - 1u32;
    floor_slog(&below) + 1
}

/// `T(h)`, exact when it fits `bit_budget` bits.
pub fn tower_big(h: u64, bit_budget: u64) -> TowerBound {
    let mut v = BigUint::one();
    for _ in 0..h {
        match v.to_u64() {
            Some(e) if e < bit_budget => v = BigUint::one() << e,
            _ => return TowerBound::AtLeastTower(h),
        }
    }
    TowerBound::Exact(v)
}

/// `t_h(n)` with `t_0(n) = n`, `t_{h+1}(n) = 2^{t_h(n)}`.
pub fn tower_t(h: u64, n: &BigUint, bit_budget: u64) -> TowerBound {
    let mut v = n.clone();
    for _ in 0..h {
        match v.to_u64() {
            Some(e) if e < bit_budget => v = BigUint::one() << e,
            _ => {
                // t_h(0) = T(h-1); otherwise t_h(n) ≥ t_h(T(j)) = T(h+j)
                return if n.is_zero() {
                    TowerBound::AtLeastTower(h - 1)
                } else {
                    TowerBound::AtLeastTower(h + floor_slog(n))
                };
            }
        }
    }
    TowerBound::Exact(v)
}

/// Order of two bounds when bit-length reasoning decides it.
pub fn tower_compare(x: &TowerBound, y: &TowerBound) -> Option<Ordering> {
    match (x, y) {
        (TowerBound::Exact(a), TowerBound::Exact(b)) => Some(a.cmp(b)),
        (TowerBound::Exact(a), TowerBound::AtLeastTower(h)) => {
            lt_tower(a, *h).then_some(Ordering::Less)
        }
        (TowerBound::AtLeastTower(h), TowerBound::Exact(b)) => {
            lt_tower(b, *h).then_some(Ordering::Greater)
        }
        (TowerBound::AtLeastTower(_), TowerBound::AtLeastTower(_)) => None,
    }
}
