use std::cmp::Ordering;
use std::fmt::Write as _;

use num_bigint::BigUint;

use super::presentation::{Kind, Presentation};
use crate::error::{Error, Result};
use crate::towerpres::{
    tower_compare, OrbitIndexer, OrbitWalker, TowerBound, TupleV, DEFAULT_BIT_BUDGET,
};

/// Strings the orbit-assisted strategy scans outright.
pub const ORBIT_SCAN_LIMIT: u64 = 2_000_000;

/// Length of the shortest `psi0`-representative of `ψ(w)`.
pub fn xi(w: &[u32], psi: &Presentation, psi0: &Presentation) -> Result<TowerBound> {
    let value = psi.decode(w).ok_or_else(|| {
        Error::NotRepresentable(format!("string is not in the {} language", psi.name()))
    })?;
    psi0.encoded_len(&value)
}

/// How `s(n)` is measured.
#[derive(Clone, Copy, Debug)]
pub enum Strategy<'a> {
    /// Scan `L^{≤n}`, giving up after `budget` strings.
    Exhaustive { budget: u64 },
    /// Only the largest value of each length; valid when `psi` is positional
    /// or unary and `psi0`-lengths grow with the value.
    Extremal,
    /// Tower presentation against unary: the walk's record together with the
    /// index of the longest-reaching milestone of each length.
    OrbitAssisted { walker: &'a OrbitWalker },
}

impl Strategy<'_> {
    pub fn name(&self) -> &'static str {
        match self {
            Strategy::Exhaustive { .. } => "exhaustive",
            Strategy::Extremal => "extremal",
            Strategy::OrbitAssisted { .. } => "orbit-assisted",
        }
    }
}

/// One measured value of `s(n)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CompressProfile {
    pub n: usize,
    pub s_value: TowerBound,
    /// Strings attaining `s_value`, rendered, with their `ξ`.
    pub witnesses: Vec<(String, TowerBound)>,
    /// Strings examined.
    pub scanned: u64,
    /// The scan stopped at its budget; `s_value` is then only a lower bound.
    pub exhausted: bool,
}

fn render(psi: &Presentation, w: &[u32]) -> String {
    let alpha = psi.language().alphabet();
    match psi.kind() {
        Kind::Tower => {
            let inner = crate::towerpres::tuple_alphabet();
            inner.render(w)
        }
        _ => w
            .iter()
            .map(|&s| alpha.base_names(0)[s as usize].as_str())
            .collect(),
    }
}

/// Order of two measurements; undecidable pairs keep the earlier one.
fn rank(new: &TowerBound, old: &TowerBound) -> Ordering {
    match (tower_compare(new, old), new, old) {
        (Some(o), _, _) => o,
        (None, TowerBound::AtLeastTower(g), TowerBound::AtLeastTower(h)) => g.cmp(h),
        _ => Ordering::Less,
    }
}

/// `s(n) = max { ξ(w) : w ∈ L^{≤n} }`.
pub fn s_of_n(
    n: usize,
    psi: &Presentation,
    psi0: &Presentation,
    strategy: Strategy<'_>,
) -> Result<CompressProfile> {
    let mut profile = CompressProfile {
        n,
        s_value: TowerBound::from(0),
        witnesses: Vec::new(),
        scanned: 0,
        exhausted: false,
    };
    let offer = |profile: &mut CompressProfile, w: &[u32], x: TowerBound| match rank(
        &x,
        &profile.s_value,
    ) {
        Ordering::Greater => {
            profile.s_value = x.clone();
            profile.witnesses = vec![(render(psi, w), x)];
        }
        Ordering::Equal if profile.witnesses.len() < 8 => {
            profile.witnesses.push((render(psi, w), x));
        }
        _ => {}
    };
    match strategy {
        Strategy::Exhaustive { budget } => {
            let mut failure = None;
            psi.language().for_each_upto(n, |w| {
                if profile.scanned >= budget {
                    profile.exhausted = true;
                    return false;
                }
                profile.scanned += 1;
                match xi(w, psi, psi0) {
                    Ok(x) => {
                        offer(&mut profile, w, x);
                        true
                    }
                    Err(e) => {
                        failure = Some(e);
                        false
                    }
                }
            });
            if let Some(e) = failure {
                return Err(e);
            }
        }
        Strategy::Extremal => {
            if matches!(psi.kind(), Kind::Tower) || matches!(psi0.kind(), Kind::Tower) {
                return Err(Error::Presentation(
                    "extremal scan needs positional or unary presentations".into(),
                ));
            }
            for len in 0..=n {
                let w = match psi.kind() {
                    Kind::Unary => Some(vec![0; len]),
                    _ => psi.language().max_reverse_lex(len),
                };
                if let Some(w) = w {
                    profile.scanned += 1;
                    let x = xi(&w, psi, psi0)?;
                    offer(&mut profile, &w, x);
                }
            }
        }
        Strategy::OrbitAssisted { walker } => {
            if psi.kind() != Kind::Tower || psi0.kind() != Kind::Unary {
                return Err(Error::Presentation(
                    "orbit-assisted scan measures the tower presentation against unary".into(),
                ));
            }
            profile.scanned = walker.visited_upto(n);
            profile.s_value = walker.r_lower(n);
            if n >= 1 {
                // (2^n - 1, 1, 1, 0) has an encoding of length n
                let a = (BigUint::from(1u32) << n) - 1u32;
                let v = TupleV {
                    a,
                    b: 1u32.into(),
                    c_exp: 0,
                    d: false,
                };
                let mut ix = OrbitIndexer::new(DEFAULT_BIT_BUDGET);
                let x = ix.index(&v);
                let w = crate::towerpres::encode_tuple(&v);
                offer(&mut profile, &w, x);
            }
            // small slices of the language are scanned outright
            if psi.language().count_upto(n) <= BigUint::from(ORBIT_SCAN_LIMIT) {
                let mut ix = OrbitIndexer::new(DEFAULT_BIT_BUDGET);
                psi.language().for_each_upto(n, |w| {
                    profile.scanned += 1;
                    if let Ok(Some(v)) = crate::towerpres::decode_string(w) {
                        offer(&mut profile, w, ix.index(&v));
                    }
                    true
                });
            }
        }
    }
    Ok(profile)
}

/// `n,s_value,witness` rows.
pub fn profiles_csv(profiles: &[CompressProfile]) -> String {
    let mut out = String::from("n,s_value,witness\n");
    for p in profiles {
        let witness = p.witnesses.first().map_or("", |(w, _)| w.as_str());
        let _ = writeln!(
            out,
            "{},{},\"{}\"",
            p.n,
            p.s_value,
            witness.replace('"', "\"\"")
        );
    }
    out
}
