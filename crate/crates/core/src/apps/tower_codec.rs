use std::collections::HashMap;

use num_traits::ToPrimitive;

use crate::error::{Error, Result};
use crate::towerpres::{
    decode_string, encode_tuple, tuple_alphabet, tuple_at, OrbitIndexer, TowerBound,
};

/// Writes `k ≥ 0` as the tower-presentation string `u_k`, one token per
/// four-track column, and reads it back off the front of a token string.
#[derive(Clone, Debug)]
pub struct TowerCodec {
    labels: Vec<String>,
    lookup: HashMap<String, u32>,
}

impl Default for TowerCodec {
    fn default() -> Self {
        Self::new()
    }
}

impl TowerCodec {
    pub fn new() -> Self {
        let alpha = tuple_alphabet();
        let labels: Vec<String> = (0..alpha.symbol_count()).map(|s| alpha.label(s)).collect();
        let lookup = labels
            .iter()
            .enumerate()
            .map(|(i, l)| (l.clone(), i as u32))
            .collect();
        TowerCodec { labels, lookup }
    }

    /// Whether `token` is a column symbol of the tower presentation.
    pub fn is_tower_symbol(&self, token: &str) -> bool {
        self.lookup.contains_key(token)
    }

    /// Fails when `symbols` shares a token with the tower alphabet.
    pub fn check_disjoint<'a>(&self, symbols: impl IntoIterator<Item = &'a str>) -> Result<()> {
        for s in symbols {
            if self.is_tower_symbol(s) {
                return Err(Error::Config(format!(
                    "symbol `{s}` collides with the tower alphabet"
                )));
            }
        }
        Ok(())
    }

    /// `u_k`.
    pub fn encode(&self, k: u64) -> Result<Vec<String>> {
        let v = tuple_at(k)?;
        Ok(encode_tuple(&v)
            .into_iter()
            .map(|s| self.labels[s as usize].clone())
            .collect())
    }

    /// Split `tokens` into `k` and the rest, reading the longest prefix of
    /// tower symbols as `u_k`.
    pub fn decode_prefix<'a>(&self, tokens: &'a [String]) -> Result<(u64, &'a [String])> {
        let len = tokens
            .iter()
            .take_while(|t| self.is_tower_symbol(t))
            .count();
        if len == 0 {
            return Err(Error::Config("missing tower-encoded prefix".into()));
        }
        let word: Vec<u32> = tokens[..len]
            .iter()
            .map(|t| self.lookup[t.as_str()])
            .collect();
        let v = decode_string(&word)?
            .ok_or_else(|| Error::Config("prefix is not a tuple encoding".into()))?;
        match OrbitIndexer::default().index(&v) {
            TowerBound::Exact(k) => {
                let k = k
                    .to_u64()
                    .ok_or_else(|| Error::NotRepresentable(format!("run length {k}")))?;
                Ok((k, &tokens[len..]))
            }
            symbolic => Err(Error::NotRepresentable(format!("run length {symbolic}"))),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn run_lengths_round_trip() {
        let codec = TowerCodec::new();
        for k in 0..300 {
            let mut u = codec.encode(k).unwrap();
            u.push("q".into());
            let (back, rest) = codec.decode_prefix(&u).unwrap();
            assert_eq!(back, k);
            assert_eq!(rest, ["q".to_string()]);
        }
        assert_eq!(codec.encode(0).unwrap(), ["0|0|1|1"]);
        assert!(codec.check_disjoint(["a", "t"]).is_ok());
        assert!(codec.check_disjoint(["0|0|1|1"]).is_err());
    }
}
