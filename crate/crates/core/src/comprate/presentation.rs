use num_bigint::BigUint;
use num_traits::{ToPrimitive, Zero};

use crate::automata::{build, Lift, MultiTrackDfa, TrackAlphabet, Word};
use crate::error::{Error, Result};
use crate::towerpres::{
    build_l_dfa, decode_string, encode_tuple, tuple_at, OrbitIndexer, TowerBound,
    DEFAULT_BIT_BUDGET,
};

/// Largest value the tower presentation encodes by walking the orbit.
pub const TOWER_ENCODE_LIMIT: u64 = 1 << 26;

/// Largest value the unary presentation writes out.
pub const UNARY_ENCODE_LIMIT: u64 = 1 << 24;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Kind {
    /// `0^n ↦ n`.
    Unary,
    /// LSB-first base-`k` digits.
    BaseK(u32),
    /// Orbit numbering of the tuple encodings.
    Tower,
}

/// A presentation of ℕ: a regular language over a one-track alphabet with a
/// decoding map, plus whatever relation automata it carries.
#[derive(Clone, Debug)]
pub struct Presentation {
    name: String,
    kind: Kind,
    language: MultiTrackDfa,
    equality: MultiTrackDfa,
    addition: Option<MultiTrackDfa>,
    successor: Option<MultiTrackDfa>,
    bit_budget: u64,
}

/// `u ⊗ u` over two copies of `alpha`.
pub fn identity_relation(alpha: &TrackAlphabet) -> Result<MultiTrackDfa> {
    let pair = TrackAlphabet::new(vec![alpha.names()[0].clone(), alpha.names()[0].clone()])?;
    Ok(MultiTrackDfa::explore(
        pair,
        (),
        |_, col| (col[0] == col[1]).then_some(()),
        |_| true,
    )
    .minimize())
}

impl Presentation {
    pub fn unary() -> Self {
        let alpha = TrackAlphabet::uniform(1, &["0"]);
        let language = MultiTrackDfa::universal(alpha.clone());
        let pair = TrackAlphabet::uniform(2, &["0"]);
        // both tracks run, then the second runs one symbol longer
        let successor = MultiTrackDfa::explore(
            pair,
            0u8,
            |s, col| match (*s, col[0], col[1]) {
                (0, Some(_), Some(_)) => Some(0),
                (0, None, Some(_)) => Some(1),
                _ => None,
            },
            |s| *s == 1,
        )
        .minimize();
        Presentation {
            name: "unary".into(),
            kind: Kind::Unary,
            equality: identity_relation(&alpha).expect("one track"),
            language,
            addition: None,
            successor: Some(successor),
            bit_budget: DEFAULT_BIT_BUDGET,
        }
    }

    pub fn base_k(k: u32) -> Result<Self> {
        let language = build::canonical_base(k)?;
        let addition = build::addition(k)?;
        Ok(Presentation {
            name: format!("base-{k}"),
            kind: Kind::BaseK(k),
            equality: identity_relation(language.alphabet())?,
            successor: Some(base_k_successor(k)?),
            language,
            addition: Some(addition),
            bit_budget: DEFAULT_BIT_BUDGET,
        })
    }

    pub fn tower() -> Self {
        let alpha = flat_tower_alphabet();
        let language = build_l_dfa()
            .preimage(alpha.clone(), |col| {
                Ok(Lift::Read(col[0].expect("one track")))
            })
            .expect("same symbol count");
        Presentation {
            name: "tower".into(),
            kind: Kind::Tower,
            equality: identity_relation(&alpha).expect("one track"),
            language,
            addition: None,
            successor: None,
            bit_budget: DEFAULT_BIT_BUDGET,
        }
    }

    /// Attach a successor automaton (for the tower presentation, the graph of
    /// `f`, which is expensive enough to build on demand).
    pub fn with_successor(mut self, successor: MultiTrackDfa) -> Self {
        self.successor = Some(successor);
        self
    }

    pub fn with_bit_budget(mut self, bit_budget: u64) -> Self {
        self.bit_budget = bit_budget;
        self
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn kind(&self) -> Kind {
        self.kind
    }

    pub fn language(&self) -> &MultiTrackDfa {
        &self.language
    }

    pub fn equality(&self) -> &MultiTrackDfa {
        &self.equality
    }

    pub fn addition(&self) -> Option<&MultiTrackDfa> {
        self.addition.as_ref()
    }

    pub fn successor(&self) -> Option<&MultiTrackDfa> {
        self.successor.as_ref()
    }

    /// Number of symbols of the presentation alphabet.
    pub fn mu(&self) -> u32 {
        self.language.symbol_count()
    }

    /// `ψ(w)`, or `None` off the language.
    pub fn decode(&self, w: &[u32]) -> Option<TowerBound> {
        if !self.language.accepts(w).ok()? {
            return None;
        }
        match self.kind {
            Kind::Unary => Some(TowerBound::from(w.len() as u64)),
            Kind::BaseK(k) => {
                let mut n = BigUint::zero();
                for &d in w.iter().rev() {
                    n = n * k + d;
                }
                Some(TowerBound::Exact(n))
            }
            Kind::Tower => {
                let v = decode_string(w).ok()??;
                Some(OrbitIndexer::new(self.bit_budget).index(&v))
            }
        }
    }

    /// The representative of `n`.
    pub fn encode(&self, n: &BigUint) -> Result<Word> {
        match self.kind {
            Kind::Unary => match n.to_u64() {
                Some(m) if m <= UNARY_ENCODE_LIMIT => Ok(vec![0; m as usize]),
                _ => Err(Error::NotRepresentable(format!(
                    "{n} exceeds the unary write limit"
                ))),
            },
            Kind::BaseK(k) => {
                if n.is_zero() {
                    return Ok(vec![0]);
                }
                Ok(n.to_radix_le(k).into_iter().map(u32::from).collect())
            }
            Kind::Tower => match n.to_u64() {
                Some(m) if m <= TOWER_ENCODE_LIMIT => Ok(encode_tuple(&tuple_at(m)?)),
                _ => Err(Error::NotRepresentable(format!(
                    "{n} is beyond the walkable orbit prefix"
                ))),
            },
        }
    }

    /// Length of the representative of `x`.
    pub fn encoded_len(&self, x: &TowerBound) -> Result<TowerBound> {
        match (self.kind, x) {
            (Kind::Unary, _) => Ok(x.clone()),
            (Kind::BaseK(k), TowerBound::Exact(n)) => {
                let digits = if n.is_zero() {
                    1
                } else {
                    n.to_radix_le(k).len()
                };
                Ok(TowerBound::from(digits as u64))
            }
            (Kind::Tower, TowerBound::Exact(n)) => {
                Ok(TowerBound::from(self.encode(n)?.len() as u64))
            }
            (_, symbolic) => Err(Error::NotRepresentable(format!(
                "{symbolic} has no explicit {} representative",
                self.name
            ))),
        }
    }
}

/// One track whose symbols are the 80 four-track tuple columns.
fn flat_tower_alphabet() -> TrackAlphabet {
    let inner = crate::towerpres::tuple_alphabet();
    TrackAlphabet::new(vec![(0..inner.symbol_count())
        .map(|s| inner.label(s))
        .collect()])
    .expect("composite labels")
}

/// `u ⊗ w` with `w = u + 1` in base `k`.
fn base_k_successor(k: u32) -> Result<MultiTrackDfa> {
    let language = build::canonical_base(k)?;
    let pair = TrackAlphabet::new(vec![language.alphabet().names()[0].clone(); 2])?;
    let canon = |t| language.on_tracks(&pair, &[t]);
    let step = MultiTrackDfa::explore(
        pair.clone(),
        1u32,
        move |carry, col| {
            let sum = col[0].unwrap_or(0) + carry;
            (sum % k == col[1].unwrap_or(0)).then_some(sum / k)
        },
        |c| *c == 0,
    );
    MultiTrackDfa::intersect_all(&[
        &canon(0)?,
        &canon(1)?,
        &MultiTrackDfa::well_formed(pair),
        &step,
    ])
}
