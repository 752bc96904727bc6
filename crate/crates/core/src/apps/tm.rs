use std::collections::{HashMap, HashSet};

use serde::{Deserialize, Serialize};

use super::rate::{run_compressed_rate, tower_r_lower};
use super::tower_codec::TowerCodec;
use crate::automata::{MultiTrackDfa, TrackAlphabet};
use crate::error::{Error, Result};
use crate::towerpres::{r_enumerated, OrbitIndexer, OrbitWalker, TowerBound};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Move {
    L,
    R,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Command {
    pub state: String,
    pub read: String,
    pub write: String,
    #[serde(rename = "move")]
    pub mv: Move,
    pub next: String,
}

fn default_blank() -> String {
    "_".into()
}

#[derive(Clone, Debug, Serialize, Deserialize)]
struct MachineDoc {
    gamma: Vec<String>,
    states: Vec<String>,
    q0: String,
    #[serde(default = "default_blank")]
    blank: String,
    commands: Vec<Command>,
}

/// Deterministic one-tape machine on a tape that is infinite to the right
/// only. Moving left from the first cell stays put.
#[derive(Clone, Debug)]
pub struct TuringMachine {
    gamma: Vec<String>,
    states: Vec<String>,
    q0: usize,
    blank: usize,
    commands: Vec<Command>,
    // (state, read) -> (write, move, next)
    table: HashMap<(usize, usize), (usize, Move, usize)>,
}

/// Tape content, head cell (0-based; `content.len()` means just past the
/// written part) and state, all as indices into the machine's alphabets.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct TmConfig {
    pub content: Vec<usize>,
    pub head: usize,
    pub state: usize,
}

impl TuringMachine {
    pub fn new(
        gamma: Vec<String>,
        states: Vec<String>,
        q0: &str,
        blank: &str,
        commands: Vec<Command>,
    ) -> Result<Self> {
        if gamma.len() < 2 {
            return Err(Error::Machine(
                "tape alphabet needs at least two symbols".into(),
            ));
        }
        let g: HashSet<&String> = gamma.iter().collect();
        let q: HashSet<&String> = states.iter().collect();
        if g.len() != gamma.len() || q.len() != states.len() {
            return Err(Error::Machine("repeated symbol".into()));
        }
        if let Some(s) = g.intersection(&q).next() {
            return Err(Error::Machine(format!(
                "`{s}` is both a tape symbol and a state"
            )));
        }
        let sym = |s: &str| {
            gamma
                .iter()
                .position(|x| x == s)
                .ok_or_else(|| Error::Machine(format!("unknown tape symbol `{s}`")))
        };
        let st = |s: &str| {
            states
                .iter()
                .position(|x| x == s)
                .ok_or_else(|| Error::Machine(format!("unknown state `{s}`")))
        };
        let blank_i = sym(blank)?;
        let q0_i = st(q0)?;
        let mut table = HashMap::new();
        for c in &commands {
            let key = (st(&c.state)?, sym(&c.read)?);
            if table
                .insert(key, (sym(&c.write)?, c.mv, st(&c.next)?))
                .is_some()
            {
                return Err(Error::Machine(format!(
                    "two commands for state `{}` reading `{}`",
                    c.state, c.read
                )));
            }
        }
        Ok(TuringMachine {
            gamma,
            states,
            q0: q0_i,
            blank: blank_i,
            commands,
            table,
        })
    }

    /// A counter: over `{_, g, 0, 1}` it adds one to the LSB-first binary
    /// number right of the `g` cells, walks back, and starts again.
    pub fn sample() -> Self {
        let c = |state: &str, read: &str, write: &str, mv: Move, next: &str| Command {
            state: state.into(),
            read: read.into(),
            write: write.into(),
            mv,
            next: next.into(),
        };
        let commands = vec![
            c("q0", "1", "0", Move::R, "q0"),
            c("q0", "0", "1", Move::L, "q1"),
            c("q0", "_", "1", Move::L, "q1"),
            c("q0", "g", "g", Move::R, "q0"),
            c("q1", "0", "0", Move::L, "q1"),
            c("q1", "1", "1", Move::L, "q1"),
            c("q1", "g", "g", Move::R, "q0"),
            c("q1", "_", "_", Move::R, "qh"),
        ];
        let strs = |v: &[&str]| v.iter().map(|s| s.to_string()).collect();
        TuringMachine::new(
            strs(&["_", "g", "0", "1"]),
            strs(&["q0", "q1", "qh"]),
            "q0",
            "_",
            commands,
        )
        .expect("sample machine is valid")
    }

    pub fn from_json(text: &str) -> Result<Self> {
        let doc: MachineDoc = serde_json::from_str(text)?;
        TuringMachine::new(doc.gamma, doc.states, &doc.q0, &doc.blank, doc.commands)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(&MachineDoc {
            gamma: self.gamma.clone(),
            states: self.states.clone(),
            q0: self.states[self.q0].clone(),
            blank: self.gamma[self.blank].clone(),
            commands: self.commands.clone(),
        })
        .expect("serializable")
    }

    pub fn gamma(&self) -> &[String] {
        &self.gamma
    }

    pub fn states(&self) -> &[String] {
        &self.states
    }

    pub fn q0(&self) -> usize {
        self.q0
    }

    pub fn blank(&self) -> usize {
        self.blank
    }

    pub fn symbol_index(&self, s: &str) -> Option<usize> {
        self.gamma.iter().position(|x| x == s)
    }

    pub fn state_index(&self, s: &str) -> Option<usize> {
        self.states.iter().position(|x| x == s)
    }

    /// Start configuration on the given tape symbols.
    pub fn initial(&self, content: &[&str]) -> Result<TmConfig> {
        let content = content
            .iter()
            .map(|s| {
                self.symbol_index(s)
                    .ok_or_else(|| Error::Config(format!("unknown tape symbol `{s}`")))
            })
            .collect::<Result<_>>()?;
        Ok(TmConfig {
            content,
            head: 0,
            state: self.q0,
        })
    }

    /// The successor configuration, or `None` when no command applies.
    pub fn step(&self, cfg: &TmConfig) -> Option<TmConfig> {
        let read = cfg.content.get(cfg.head).copied().unwrap_or(self.blank);
        let &(write, mv, next) = self.table.get(&(cfg.state, read))?;
        let mut content = cfg.content.clone();
        if cfg.head == content.len() {
            content.push(write);
        } else {
            content[cfg.head] = write;
        }
        let head = match mv {
            Move::R => cfg.head + 1,
            Move::L => cfg.head.saturating_sub(1),
        };
        Some(TmConfig {
            content,
            head,
            state: next,
        })
    }

    /// `X_1 … X_{i-1} q X_i … X_n`.
    pub fn render(&self, cfg: &TmConfig) -> Vec<String> {
        let mut out: Vec<String> = cfg.content[..cfg.head]
            .iter()
            .map(|&x| self.gamma[x].clone())
            .collect();
        out.push(self.states[cfg.state].clone());
        out.extend(
            cfg.content[cfg.head..]
                .iter()
                .map(|&x| self.gamma[x].clone()),
        );
        out
    }

    /// Inverse of [`render`](Self::render): exactly one state token.
    pub fn parse(&self, tokens: &[String]) -> Result<TmConfig> {
        let mut content = Vec::with_capacity(tokens.len());
        let mut found = None;
        for t in tokens {
            if let Some(q) = self.state_index(t) {
                if found.is_some() {
                    return Err(Error::Config("more than one state symbol".into()));
                }
                found = Some((q, content.len()));
            } else if let Some(x) = self.symbol_index(t) {
                content.push(x);
            } else {
                return Err(Error::Config(format!("unknown symbol `{t}`")));
            }
        }
        let (state, head) = found.ok_or_else(|| Error::Config("no state symbol".into()))?;
        Ok(TmConfig {
            content,
            head,
            state,
        })
    }

    /// One track per configuration string: tape symbols, then states.
    pub fn config_alphabet(&self) -> TrackAlphabet {
        let names: Vec<String> = self.gamma.iter().chain(&self.states).cloned().collect();
        TrackAlphabet::new(vec![names]).expect("non-empty")
    }

    /// The configuration string as symbol indices of [`config_alphabet`](Self::config_alphabet).
    pub fn config_word(&self, cfg: &TmConfig) -> Vec<u32> {
        let g = self.gamma.len();
        let mut out: Vec<u32> = cfg.content[..cfg.head].iter().map(|&x| x as u32).collect();
        out.push((g + cfg.state) as u32);
        out.extend(cfg.content[cfg.head..].iter().map(|&x| x as u32));
        out
    }

    /// `α ⊗ β` where one command takes configuration `α` to `β`.
    pub fn step_relation_dfa(&self) -> MultiTrackDfa {
        #[derive(Clone, PartialEq, Eq, Hash)]
        enum S {
            Copy { first: bool },
            // state under the head and symbol written, head moves right
            Right { q: usize, y: usize },
            // symbol left of the head and new state, head moves left
            LeftA { z: usize, p: usize },
            LeftB { q: usize, p: usize },
            Tail,
            End,
        }
        let g = self.gamma.len() as u32;
        let names: Vec<String> = self.gamma.iter().chain(&self.states).cloned().collect();
        let alpha = TrackAlphabet::new(vec![names.clone(), names]).expect("non-empty");
        let tape = |x: Option<u32>| x.filter(|&x| x < g).map(|x| x as usize);
        let state = |x: Option<u32>| x.filter(|&x| x >= g).map(|x| (x - g) as usize);
        let fires = |q: usize, x: Option<u32>, y: usize, mv: Move, p: usize| -> Option<bool> {
            // x is the scanned cell, None past the written part
            let read = match x {
                Some(s) => tape(Some(s))?,
                None => self.blank,
            };
            (self.table.get(&(q, read)) == Some(&(y, mv, p))).then_some(x.is_some())
        };
        MultiTrackDfa::explore(
            alpha,
            S::Copy { first: true },
            |s, col| {
                let (x, y) = (col[0], col[1]);
                match s {
                    S::Copy { first } => {
                        if let (Some(a), Some(b)) = (tape(x), tape(y)) {
                            return (a == b).then_some(S::Copy { first: false });
                        }
                        match (state(x), tape(y), tape(x), state(y)) {
                            (Some(q), Some(y), _, _) => Some(S::Right { q, y }),
                            (_, _, Some(z), Some(p)) => Some(S::LeftA { z, p }),
                            _ => match (state(x), state(y)) {
                                (Some(q), Some(p)) if *first => Some(S::LeftB { q, p }),
                                _ => None,
                            },
                        }
                    }
                    S::Right { q, y: w } => {
                        let p = state(y)?;
                        let more = fires(*q, x, *w, Move::R, p)?;
                        Some(if more { S::Tail } else { S::End })
                    }
                    S::LeftA { z, p } => {
                        let q = state(x)?;
                        (tape(y)? == *z).then_some(S::LeftB { q, p: *p })
                    }
                    S::LeftB { q, p } => {
                        let w = tape(y)?;
                        let more = fires(*q, x, w, Move::L, *p)?;
                        Some(if more { S::Tail } else { S::End })
                    }
                    S::Tail => match (tape(x), tape(y)) {
                        (Some(a), Some(b)) if a == b => Some(S::Tail),
                        _ => None,
                    },
                    S::End => None,
                }
            },
            |s| matches!(s, S::Tail | S::End),
        )
        .minimize()
    }
}

/// `w = u_k μ` for the configuration `ξ = γ^k μ`, `μ` not starting with `γ`.
pub fn tm_encode(
    machine: &TuringMachine,
    cfg: &TmConfig,
    gamma: &str,
    codec: &TowerCodec,
) -> Result<Vec<String>> {
    check_run_symbol(machine, gamma, codec)?;
    let rendered = machine.render(cfg);
    let k = rendered.iter().take_while(|t| *t == gamma).count();
    let mut out = codec.encode(k as u64)?;
    out.extend_from_slice(&rendered[k..]);
    Ok(out)
}

/// Inverse of [`tm_encode`].
pub fn tm_decode(
    machine: &TuringMachine,
    tokens: &[String],
    gamma: &str,
    codec: &TowerCodec,
) -> Result<TmConfig> {
    check_run_symbol(machine, gamma, codec)?;
    let (k, rest) = codec.decode_prefix(tokens)?;
    if rest.first().map(String::as_str) == Some(gamma) {
        return Err(Error::Config(
            "the run of the compressed symbol continues after u_k".into(),
        ));
    }
    let mut full = vec![gamma.to_string(); k as usize];
    full.extend_from_slice(rest);
    machine.parse(&full)
}

fn check_run_symbol(machine: &TuringMachine, gamma: &str, codec: &TowerCodec) -> Result<()> {
    match machine.symbol_index(gamma) {
        Some(i) if i != machine.blank() => {}
        Some(_) => return Err(Error::Config("the run symbol must not be the blank".into())),
        None => return Err(Error::Config(format!("`{gamma}` is not a tape symbol"))),
    }
    codec.check_disjoint(
        machine
            .gamma()
            .iter()
            .chain(machine.states())
            .map(String::as_str),
    )
}

/// Lower bound on the compression rate of configuration strings: a
/// compressed string of length `n` is `u_k μ` with `|μ| ≥ 1`.
pub fn tm_s_lower(n: usize, walker: Option<&OrbitWalker>, bit_budget: u64) -> TowerBound {
    let mut ix = OrbitIndexer::new(bit_budget);
    run_compressed_rate(n, 1, |j| tower_r_lower(j, walker, &mut ix))
}

/// The same rate with each `r(j)` measured by enumerating tower strings.
pub fn tm_s_measured(n: usize, bit_budget: u64) -> TowerBound {
    run_compressed_rate(n, 1, |j| r_enumerated(j, bit_budget).0)
}
