use num_bigint::BigUint;
use num_traits::{ToPrimitive, Zero};

use super::presentation::{Kind, Presentation};
use super::rate::{s_of_n, Strategy};
use crate::automata::{Lift, MultiTrackDfa, TrackAlphabet};
use crate::error::{Error, Result};
use crate::towerpres::TowerBound;

/// Strings scanned when checking the pumping constant of an automaton.
pub const GAP_SCAN_LIMIT: u64 = 2_000_000;

/// One row of the exponential bound check.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Lemma1Row {
    pub n: usize,
    pub max_value: BigUint,
    pub bound: BigUint,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Lemma1Report {
    /// State count of the addition automaton.
    pub c: usize,
    pub mu: u32,
    /// Smallest integer base `σ > μ`.
    pub sigma: u32,
    /// Tuple length up to which the gap `|u|, |v| ≤ |w| + c` was verified.
    pub gap_checked_upto: usize,
    pub rows: Vec<Lemma1Row>,
}

impl Lemma1Report {
    pub fn passed(&self) -> bool {
        self.rows.iter().all(|r| r.max_value <= r.bound)
    }
}

fn addition_of(psi: &Presentation) -> Result<&MultiTrackDfa> {
    psi.addition()
        .ok_or_else(|| Error::Presentation(format!("{} carries no addition automaton", psi.name())))
}

/// Longest tuple length whose strings number at most [`GAP_SCAN_LIMIT`].
fn gap_scan_length(d: &MultiTrackDfa) -> usize {
    let limit = BigUint::from(GAP_SCAN_LIMIT);
    let mut n = 0;
    while n < 64 && d.count_upto(n + 1) <= limit {
        n += 1;
    }
    n
}

/// Largest decoded value over `L^{≤n}`, by full enumeration.
fn max_value_upto(psi: &Presentation, n: usize) -> Result<BigUint> {
    let mut best = BigUint::zero();
    let mut failure = None;
    psi.language().for_each_upto(n, |w| match psi.decode(w) {
        Some(TowerBound::Exact(v)) => {
            if v > best {
                best = v;
            }
            true
        }
        other => {
            failure = Some(Error::NotRepresentable(format!("decode gave {other:?}")));
            false
        }
    });
    failure.map_or(Ok(best), Err)
}

/// Check `ψ(w) ≤ μ^{c+1} μ^{|w|}` over all `w` of length at most `n_max`,
/// with `c` the pumping constant of the addition automaton.
pub fn lemma1_bound_check(psi: &Presentation, n_max: usize) -> Result<Lemma1Report> {
    let add = addition_of(psi)?;
    if psi.kind() == Kind::Unary {
        return Err(Error::Presentation(
            "no addition automaton exists over one symbol".into(),
        ));
    }
    let gap_checked_upto = gap_scan_length(add);
    let c = add.functional_gap_bound(2, gap_checked_upto)?;
    let mu = psi.mu();
    let mut rows = Vec::with_capacity(n_max + 1);
    for n in 0..=n_max {
        let max_value = max_value_upto(psi, n)?;
        let bound = BigUint::from(mu).pow((c + 1 + n) as u32);
        if max_value > bound {
            return Err(Error::BoundViolation(format!(
                "max value {max_value} over length {n} exceeds {bound}"
            )));
        }
        rows.push(Lemma1Row {
            n,
            max_value,
            bound,
        });
    }
    Ok(Lemma1Report {
        c,
        mu,
        sigma: mu + 1,
        gap_checked_upto,
        rows,
    })
}

/// `u ⊗ w` with `w = 2u`, read off the addition automaton as `u + u = w`.
pub fn doubling_from_addition(add: &MultiTrackDfa) -> Result<MultiTrackDfa> {
    let alpha = add.alphabet();
    if alpha.tracks() != 3 {
        return Err(Error::TrackCount {
            expected: 3,
            found: alpha.tracks(),
        });
    }
    let outer = TrackAlphabet::new(vec![alpha.names()[0].clone(), alpha.names()[2].clone()])?;
    add.preimage(outer, |col| {
        if col.iter().all(Option::is_none) {
            Ok(Lift::Skip)
        } else {
            Ok(Lift::Read(alpha.encode(&[col[0], col[0], col[1]])?))
        }
    })
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IncompressibilityRow {
    pub n: usize,
    pub s: u64,
    pub bound: u64,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IncompressibilityReport {
    /// Pumping constant of `psi`'s addition automaton.
    pub c: usize,
    /// States of `psi0`'s doubling automaton.
    pub c0: usize,
    pub mu: u32,
    /// `|v_0|`, the length of the representative of 1.
    pub d0_prime: u64,
    /// Largest excess of a representative over that of the next power of
    /// two, measured over the values met.
    pub d0_second: u64,
    /// `|v_{k+1}| - |v_k|` for the representatives `v_k` of `2^k`.
    pub gaps: Vec<i64>,
    pub rows: Vec<IncompressibilityRow>,
}

impl IncompressibilityReport {
    pub fn passed(&self) -> bool {
        self.gaps.iter().all(|&g| g <= self.c0 as i64) && self.rows.iter().all(|r| r.s <= r.bound)
    }

    /// `s(n) = slope·n + offset` fits every row.
    pub fn fits_line(&self, slope: u64, offset: u64) -> bool {
        self.rows.iter().all(|r| r.s <= slope * r.n as u64 + offset)
    }
}

fn exact_u64(x: &TowerBound) -> Result<u64> {
    x.exact()
        .and_then(|v| v.to_u64())
        .ok_or_else(|| Error::NotRepresentable(format!("{x} is not a small length")))
}

/// Measure `s(n)` of `psi` against `psi0` and compare it with the linear bound
/// built from the automata constants; also track how representatives of
/// `2^k` grow under `psi0` for `k ≤ powers`.
pub fn incompressibility_check(
    psi: &Presentation,
    psi0: &Presentation,
    n_max: usize,
    powers: u32,
) -> Result<IncompressibilityReport> {
    let add = addition_of(psi)?;
    let add0 = addition_of(psi0)?;
    let c = add.functional_gap_bound(2, gap_scan_length(add))?;
    let c0 = doubling_from_addition(add0)?.state_count();
    let mu = psi.mu();

    let mut lens = Vec::with_capacity(powers as usize + 2);
    for k in 0..=powers + 1 {
        lens.push(psi0.encode(&(BigUint::from(1u32) << k))?.len() as i64);
    }
    let gaps: Vec<i64> = lens
        .windows(2)
        .take(powers as usize + 1)
        .map(|p| p[1] - p[0])
        .collect();
    let d0_prime = lens[0] as u64;

    // values below 2^{bits} against the representative of 2^{bits}
    let mut d0_second = 0u64;
    let bits_per_symbol = u64::from(32 - (mu - 1).leading_zeros()).max(1);
    let mut rows = Vec::with_capacity(n_max + 1);
    for n in 0..=n_max {
        let strategy = match (psi.kind(), psi0.kind()) {
            (Kind::Tower, _) | (_, Kind::Tower) => Strategy::Exhaustive {
                budget: GAP_SCAN_LIMIT,
            },
            _ => Strategy::Extremal,
        };
        let profile = s_of_n(n, psi, psi0, strategy)?;
        if profile.exhausted {
            return Err(Error::Budget(format!(
                "s({n}) scan exceeded {GAP_SCAN_LIMIT} strings"
            )));
        }
        let s = exact_u64(&profile.s_value)?;
        let top = max_len_value(psi, n)?;
        if let Some(top) = top {
            let next_pow = BigUint::from(1u32) << top.bits();
            let rep = psi0.encode(&next_pow)?.len() as u64;
            d0_second = d0_second.max(s.saturating_sub(rep));
        }
        // ψ(w) < μ^{c+1+n} ≤ 2^{⌈log2 μ⌉ (c+1+n)}
        let bound = c0 as u64 * bits_per_symbol * (n as u64 + c as u64 + 1) + d0_prime + d0_second;
        rows.push(IncompressibilityRow { n, s, bound });
    }
    Ok(IncompressibilityReport {
        c,
        c0,
        mu,
        d0_prime,
        d0_second,
        gaps,
        rows,
    })
}

/// Largest value of a string of length at most `n`, for positional and
/// unary presentations.
fn max_len_value(psi: &Presentation, n: usize) -> Result<Option<BigUint>> {
    let w = match psi.kind() {
        Kind::Unary => Some(vec![0; n]),
        Kind::BaseK(_) => (0..=n)
            .rev()
            .find_map(|len| psi.language().max_reverse_lex(len)),
        Kind::Tower => return Ok(None),
    };
    Ok(w.and_then(|w| psi.decode(&w))
        .and_then(|x| x.exact().cloned()))
}

/// Keep only the length-lexicographically least representative of each
/// element, using the presentation's equality automaton.
pub fn bijectivize(language: &MultiTrackDfa, equality: &MultiTrackDfa) -> Result<MultiTrackDfa> {
    let alpha = language.alphabet();
    let pair = TrackAlphabet::new(vec![alpha.names()[0].clone(), alpha.names()[0].clone()])?;
    let less = MultiTrackDfa::llex_less(pair.clone())?;
    let both_in = language
        .on_tracks(&pair, &[0])?
        .intersect(&language.on_tracks(&pair, &[1])?)?;
    // v ⊗ u with u < v and ψ(u) = ψ(v): swap tracks to reuse `less`
    let greater = less.preimage(pair.clone(), |col| {
        if col.iter().all(Option::is_none) {
            Ok(Lift::Skip)
        } else {
            Ok(Lift::Read(pair.encode(&[col[1], col[0]])?))
        }
    })?;
    let shadowed = MultiTrackDfa::intersect_all(&[&both_in, equality, &greater])?.project_out(1)?;
    language.difference(&shadowed)
}
