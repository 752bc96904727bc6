use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Display form of the padding symbol.
pub const PAD: &str = "⋄";

/// A string over the composite alphabet of some [`TrackAlphabet`]; each entry
/// is a composite symbol index.
pub type Word = Vec<u32>;

/// One column of a convolution: per track either a base symbol or padding.
pub type Column = Vec<Option<u32>>;

/// Padded multi-track alphabet.
///
/// Track `t` has base symbols `0..names[t].len()`. A composite symbol is a
/// tuple with one entry per track, each a base symbol or padding, excluding
/// the all-padding tuple. Composite indices are mixed-radix with track 0 most
/// significant and padding as the largest digit, so index order is the
/// column order used for length-lexicographic enumeration (`0 < 1 < ⋄` per
/// track, compared track by track). The all-padding tuple would be the last
/// index and simply falls off the end.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct TrackAlphabet {
    names: Vec<Vec<String>>,
}

impl TrackAlphabet {
    pub fn new(names: Vec<Vec<String>>) -> Result<Self> {
        if names.is_empty() {
            return Err(Error::EmptyTracks);
        }
        for track in &names {
            if track.iter().any(|s| s == PAD) {
                return Err(Error::Parse("padding symbol used as a base symbol".into()));
            }
        }
        Ok(TrackAlphabet { names })
    }

    /// `tracks` copies of the same base set.
    pub fn uniform(tracks: usize, base: &[&str]) -> Self {
        let names = (0..tracks)
            .map(|_| base.iter().map(|s| s.to_string()).collect())
            .collect();
        TrackAlphabet::new(names).expect("uniform alphabet")
    }

    /// `tracks` copies of `{0, 1}`.
    pub fn binary(tracks: usize) -> Self {
        Self::uniform(tracks, &["0", "1"])
    }

    pub fn tracks(&self) -> usize {
        self.names.len()
    }

    pub fn base_size(&self, track: usize) -> u32 {
        self.names[track].len() as u32
    }

    pub fn base_names(&self, track: usize) -> &[String] {
        &self.names[track]
    }

    pub fn names(&self) -> &[Vec<String>] {
        &self.names
    }

    pub fn symbol_count(&self) -> u32 {
        let full: u64 = self.names.iter().map(|t| t.len() as u64 + 1).product();
        (full - 1) as u32
    }

    pub fn encode(&self, column: &[Option<u32>]) -> Result<u32> {
        if column.len() != self.tracks() {
            return Err(Error::TrackCount {
                expected: self.tracks(),
                found: column.len(),
            });
        }
        let mut idx: u64 = 0;
        let mut all_pad = true;
        for (t, c) in column.iter().enumerate() {
            let size = self.base_size(t);
            let digit = match c {
                Some(s) if *s < size => {
                    all_pad = false;
                    *s
                }
                Some(s) => {
                    return Err(Error::SymbolOutOfRange {
                        track: t,
                        symbol: *s,
                    })
                }
                None => size,
            };
            idx = idx * (size as u64 + 1) + digit as u64;
        }
        if all_pad {
            return Err(Error::BadComposite(idx as u32));
        }
        Ok(idx as u32)
    }

    pub fn decode(&self, symbol: u32) -> Result<Column> {
        if symbol >= self.symbol_count() {
            return Err(Error::BadComposite(symbol));
        }
        let mut rest = symbol as u64;
        let mut col = vec![None; self.tracks()];
        for t in (0..self.tracks()).rev() {
            let radix = self.base_size(t) as u64 + 1;
            let digit = (rest % radix) as u32;
            rest /= radix;
            col[t] = (digit < self.base_size(t)).then_some(digit);
        }
        Ok(col)
    }

    /// All composite symbols decoded, indexed by composite index.
    pub fn columns(&self) -> Vec<Column> {
        (0..self.symbol_count())
            .map(|s| self.decode(s).expect("in range"))
            .collect()
    }

    /// Zip per-track strings into one padded string of length `max |w_i|`.
    pub fn convolve<S: AsRef<[u32]>>(&self, strings: &[S]) -> Result<Word> {
        if strings.is_empty() {
            return Err(Error::EmptyTracks);
        }
        if strings.len() != self.tracks() {
            return Err(Error::TrackCount {
                expected: self.tracks(),
                found: strings.len(),
            });
        }
        let len = strings.iter().map(|s| s.as_ref().len()).max().unwrap_or(0);
        let mut out = Vec::with_capacity(len);
        let mut col = vec![None; self.tracks()];
        for j in 0..len {
            for (t, s) in strings.iter().enumerate() {
                col[t] = s.as_ref().get(j).copied();
            }
            out.push(self.encode(&col)?);
        }
        Ok(out)
    }

    /// Inverse of [`convolve`](Self::convolve); rejects columns whose padding
    /// is not a suffix.
    pub fn deconvolve(&self, word: &[u32]) -> Result<Vec<Vec<u32>>> {
        let mut out = vec![Vec::new(); self.tracks()];
        let mut ended = vec![false; self.tracks()];
        for (j, &sym) in word.iter().enumerate() {
            let col = self.decode(sym)?;
            for (t, c) in col.into_iter().enumerate() {
                match c {
                    Some(s) if ended[t] => {
                        let _ = s;
                        return Err(Error::PaddingNotSuffix {
                            column: j,
                            track: t,
                        });
                    }
                    Some(s) => out[t].push(s),
                    None => ended[t] = true,
                }
            }
        }
        Ok(out)
    }

    pub fn is_well_formed(&self, word: &[u32]) -> bool {
        self.deconvolve(word).is_ok()
    }

    /// Composite symbol label, track entries joined by `|`.
    pub fn label(&self, symbol: u32) -> String {
        match self.decode(symbol) {
            Ok(col) => col
                .iter()
                .enumerate()
                .map(|(t, c)| match c {
                    Some(s) => self.names[t][*s as usize].as_str(),
                    None => PAD,
                })
                .collect::<Vec<_>>()
                .join("|"),
            Err(_) => format!("?{symbol}"),
        }
    }

    pub fn parse_label(&self, label: &str) -> Result<u32> {
        let parts: Vec<&str> = label.split('|').collect();
        if parts.len() != self.tracks() {
            return Err(Error::Parse(format!("label `{label}` has wrong arity")));
        }
        let mut col = Vec::with_capacity(parts.len());
        for (t, p) in parts.iter().enumerate() {
            if *p == PAD {
                col.push(None);
            } else {
                let pos = self.names[t]
                    .iter()
                    .position(|n| n == p)
                    .ok_or_else(|| Error::Parse(format!("unknown symbol `{p}` on track {t}")))?;
                col.push(Some(pos as u32));
            }
        }
        self.encode(&col)
    }

    /// Render a word track by track, e.g. `"001" ⊗ "1"`.
    pub fn render(&self, word: &[u32]) -> String {
        match self.deconvolve(word) {
            Ok(tracks) => tracks
                .iter()
                .enumerate()
                .map(|(t, s)| {
                    let body: String = s
                        .iter()
                        .map(|&x| self.names[t][x as usize].as_str())
                        .collect();
                    format!("\"{body}\"")
                })
                .collect::<Vec<_>>()
                .join(" ⊗ "),
            Err(_) => word
                .iter()
                .map(|&s| format!("[{}]", self.label(s)))
                .collect(),
        }
    }
}

/// Helper for single-track binary strings written as text, e.g. `"001"`.
pub fn bits(s: &str) -> Vec<u32> {
    s.bytes()
        .map(|b| match b {
            b'0' => 0,
            b'1' => 1,
            _ => panic!("not a bit: {}", b as char),
        })
        .collect()
}
