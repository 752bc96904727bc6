use std::collections::BTreeMap;
use std::fmt::Write as _;

use serde::{Deserialize, Serialize};

use super::alphabet::TrackAlphabet;
use super::dfa::MultiTrackDfa;
use crate::error::{Error, Result};

#[derive(Serialize, Deserialize)]
struct DfaDoc {
    tracks: usize,
    symbols: Vec<Vec<String>>,
    states: usize,
    start: u32,
    accepting: Vec<u32>,
    transitions: Vec<(u32, String, u32)>,
}

impl MultiTrackDfa {
    pub fn to_json(&self) -> String {
        let alpha = self.alphabet();
        let labels: Vec<String> = (0..self.symbol_count()).map(|s| alpha.label(s)).collect();
        let mut transitions = Vec::with_capacity(self.transitions().len());
        for q in 0..self.state_count() as u32 {
            for (s, label) in labels.iter().enumerate() {
                transitions.push((q, label.clone(), self.next(q, s as u32)));
            }
        }
        let doc = DfaDoc {
            tracks: alpha.tracks(),
            symbols: alpha.names().to_vec(),
            states: self.state_count(),
            start: self.start(),
            accepting: (0..self.state_count() as u32)
                .filter(|&q| self.is_accepting(q))
                .collect(),
            transitions,
        };
        serde_json::to_string(&doc).expect("serializable")
    }

    pub fn from_json(text: &str) -> Result<Self> {
        let doc: DfaDoc = serde_json::from_str(text)?;
        if doc.symbols.len() != doc.tracks {
            return Err(Error::TrackCount {
                expected: doc.tracks,
                found: doc.symbols.len(),
            });
        }
        let alpha = TrackAlphabet::new(doc.symbols)?;
        let symbols = alpha.symbol_count() as usize;
        let mut delta = vec![u32::MAX; doc.states * symbols];
        for (from, label, to) in &doc.transitions {
            let s = alpha.parse_label(label)? as usize;
            let slot = delta
                .get_mut(*from as usize * symbols + s)
                .ok_or_else(|| Error::Parse(format!("state {from} out of range")))?;
            *slot = *to;
        }
        if delta.contains(&u32::MAX) {
            return Err(Error::Parse("transition table is not total".into()));
        }
        let mut accepting = vec![false; doc.states];
        for q in doc.accepting {
            *accepting
                .get_mut(q as usize)
                .ok_or_else(|| Error::Parse(format!("accepting state {q} out of range")))? = true;
        }
        MultiTrackDfa::from_parts(alpha, doc.start, accepting, delta)
    }

    /// Graphviz rendering; parallel edges are merged into one label.
    pub fn to_dot(&self, name: &str) -> String {
        let alpha = self.alphabet();
        let mut out = String::new();
        let _ = writeln!(out, "digraph \"{name}\" {{");
        let _ = writeln!(out, "  rankdir=LR;");
        let _ = writeln!(out, "  __start [shape=point];");
        for q in 0..self.state_count() as u32 {
            let shape = if self.is_accepting(q) {
                "doublecircle"
            } else {
                "circle"
            };
            let _ = writeln!(out, "  q{q} [shape={shape}];");
        }
        let _ = writeln!(out, "  __start -> q{};", self.start());
        for q in 0..self.state_count() as u32 {
            let mut edges: BTreeMap<u32, Vec<String>> = BTreeMap::new();
            for s in 0..self.symbol_count() {
                edges
                    .entry(self.next(q, s))
                    .or_default()
                    .push(alpha.label(s));
            }
            for (t, labels) in edges {
                let label = labels.join(", ").replace('"', "\\\"");
                let _ = writeln!(out, "  q{q} -> q{t} [label=\"{label}\"];");
            }
        }
        out.push_str("}\n");
        out
    }
}
