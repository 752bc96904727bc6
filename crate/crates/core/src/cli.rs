//! Command-line front end.

use std::fmt::Write as _;
use std::fs;
use std::io::Write;
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use num_bigint::BigUint;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde_json::json;

use crate::apps::{tm_encode, Family, TowerCodec, TuringMachine};
use crate::automata::{build, MultiTrackDfa};
use crate::comprate::{profiles_csv, s_of_n, Kind, Presentation, Strategy, ORBIT_SCAN_LIMIT};
use crate::error::{Error, Result};
use crate::towerpres::{
    build_graph_f_dfa, build_l_dfa, r_enumerated, OrbitIndexer, OrbitWalker, TowerBound,
    DEFAULT_BIT_BUDGET, DEFAULT_CAPACITY,
};
use crate::verify::{run_suite, SUITES};

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Csv,
    Json,
    Dot,
}

#[derive(Debug, Parser)]
#[command(
    name = "fapres",
    version,
    about = "Tower-compression FA-presentations: orbit walks, rates, codecs"
)]
pub struct Cli {
    #[command(flatten)]
    pub config: RunConfig,
    #[command(subcommand)]
    pub command: Command,
}

/// Settings shared by every subcommand.
#[derive(Clone, Debug, Args)]
pub struct RunConfig {
    /// Step or scan budget (default depends on the command)
    #[arg(long, global = true)]
    pub budget: Option<u64>,
    /// Bits allowed for exact orbit indices before falling back to tower bounds
    #[arg(long, global = true, default_value_t = DEFAULT_BIT_BUDGET)]
    pub bit_budget: u64,
    /// Entries kept in the walk's tuple index
    #[arg(long, global = true, default_value_t = DEFAULT_CAPACITY)]
    pub capacity: usize,
    #[arg(long, global = true, default_value_t = 0)]
    pub seed: u64,
    #[arg(long, global = true, value_enum, default_value_t = Format::Csv)]
    pub format: Format,
    /// Write results here instead of standard output
    #[arg(long, global = true)]
    pub out: Option<PathBuf>,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Walk f from (0,0,1,1) and print the trace
    Walk {
        /// Also write the milestone and hub indices as JSON
        #[arg(long)]
        milestones: Option<PathBuf>,
    },
    /// Lower bounds on r(n) for the tower presentation
    Rn {
        #[arg(long, default_value_t = 0)]
        from: usize,
        #[arg(long, default_value_t = 3)]
        to: usize,
    },
    /// Compressibility rate s(n) of one presentation against another
    Sn {
        /// unary, base-K or tower
        #[arg(long)]
        psi: String,
        #[arg(long)]
        psi0: String,
        #[arg(long, default_value_t = 0)]
        from: usize,
        #[arg(long, default_value_t = 8)]
        to: usize,
    },
    /// Run a verification suite (or `all`)
    Verify { suite: String },
    /// Write an automaton as JSON or Graphviz
    DfaExport {
        /// l, graph-f, base-K, add-K or tm-step
        name: String,
        /// Machine file for tm-step (defaults to the sample machine)
        #[arg(long)]
        machine: Option<PathBuf>,
    },
    /// Run a Turing machine, printing standard and compressed configurations
    TmRun {
        #[arg(long)]
        machine: Option<PathBuf>,
        /// Initial tape, space separated
        #[arg(long, default_value = "g g g")]
        input: String,
        #[arg(long, default_value_t = 20)]
        steps: usize,
        /// Tape symbol whose leading run is compressed
        #[arg(long, default_value = "g")]
        run_symbol: String,
    },
    /// Encode a group element given as a generator word, or random elements
    GroupEncode {
        /// z, zm, free, bs or semidirect
        #[arg(long)]
        family: String,
        #[arg(long, default_value_t = 2)]
        m: usize,
        #[arg(long, default_value_t = 1)]
        p: u32,
        #[arg(long, default_value_t = 2)]
        q: u32,
        /// Matrix A row by row
        #[arg(long, num_args = 4, allow_negative_numbers = true, default_values_t = [2i64, 1, 1, 1])]
        matrix: Vec<i64>,
        /// Generator word, space separated
        #[arg(long, default_value = "")]
        word: String,
        /// Encode this many random elements instead of `--word`
        #[arg(long)]
        random: Option<usize>,
    },
}

/// Run the parsed command; the returned code is the process exit status.
pub fn run(cli: &Cli) -> Result<i32> {
    let cfg = &cli.config;
    let (text, code) = match &cli.command {
        Command::Walk { milestones } => cmd_walk(cfg, milestones.as_ref())?,
        Command::Rn { from, to } => (cmd_rn(cfg, *from, *to)?, 0),
        Command::Sn {
            psi,
            psi0,
            from,
            to,
        } => (cmd_sn(cfg, psi, psi0, *from, *to)?, 0),
        Command::Verify { suite } => cmd_verify(cfg, suite)?,
        Command::DfaExport { name, machine } => (cmd_dfa_export(cfg, name, machine.as_ref())?, 0),
        Command::TmRun {
            machine,
            input,
            steps,
            run_symbol,
        } => (
            cmd_tm_run(cfg, machine.as_ref(), input, *steps, run_symbol)?,
            0,
        ),
        Command::GroupEncode {
            family,
            m,
            p,
            q,
            matrix,
            word,
            random,
        } => {
            let fam = parse_family(family, *m, *p, *q, matrix)?;
            (cmd_group_encode(cfg, &fam, word, *random)?, 0)
        }
    };
    emit(cfg, &text)?;
    Ok(code)
}

fn emit(cfg: &RunConfig, text: &str) -> Result<()> {
    match &cfg.out {
        Some(path) => fs::write(path, text)?,
        None => std::io::stdout().write_all(text.as_bytes())?,
    }
    Ok(())
}

fn no_dot(cfg: &RunConfig, what: &str) -> Result<()> {
    if cfg.format == Format::Dot {
        return Err(Error::Parse(format!("{what} has no dot output")));
    }
    Ok(())
}

pub fn cmd_walk(cfg: &RunConfig, milestones: Option<&PathBuf>) -> Result<(String, i32)> {
    no_dot(cfg, "walk")?;
    let budget = cfg.budget.unwrap_or(23);
    let mut walker = OrbitWalker::new(cfg.capacity);
    let mut buf = Vec::new();
    if cfg.format == Format::Json {
        walker.walk(budget)?;
        buf.extend_from_slice(walker.milestones_json().as_bytes());
        buf.push(b'\n');
    } else {
        walker.write_trace(budget, &mut buf)?;
    }
    if walker.saturated() {
        eprintln!(
            "warning: tuple index full at {} entries; later tuples keep only landmarks",
            walker.capacity()
        );
    }
    if let Some(path) = milestones {
        fs::write(path, walker.milestones_json())?;
    }
    Ok((String::from_utf8(buf).expect("ascii trace"), 0))
}

/// Strongest available lower bound on `r(n)`: the walk's record, the
/// milestone of length `n`, and a full scan when the slice is small.
pub fn r_best(n: usize, walker: &OrbitWalker, ix: &mut OrbitIndexer) -> TowerBound {
    let bound = crate::apps::tower_r_lower(n, Some(walker), ix);
    if build_l_dfa().count_upto(n) <= BigUint::from(ORBIT_SCAN_LIMIT) {
        bound.max_lower(r_enumerated(n, ix.bit_budget()).0)
    } else {
        bound
    }
}

pub fn cmd_rn(cfg: &RunConfig, from: usize, to: usize) -> Result<String> {
    no_dot(cfg, "rn")?;
    let mut walker = OrbitWalker::new(cfg.capacity);
    walker.walk(cfg.budget.unwrap_or(1 << 20))?;
    let mut ix = OrbitIndexer::new(cfg.bit_budget);
    let mut rows = Vec::new();
    for n in from..=to {
        rows.push((
            n,
            r_best(n, &walker, &mut ix),
            walker.r_lower(n),
            walker.visited_upto(n),
        ));
    }
    Ok(match cfg.format {
        Format::Json => {
            let v: Vec<_> = rows
                .iter()
                .map(|(n, b, w, c)| json!({"n": n, "r_lower": b.to_string(), "walk_record": w.to_string(), "walked": c}))
                .collect();
            serde_json::to_string_pretty(&v)? + "\n"
        }
        _ => {
            let mut s = String::from("n,r_lower,walk_record,walked\n");
            for (n, b, w, c) in rows {
                let _ = writeln!(s, "{n},{b},{w},{c}");
            }
            s
        }
    })
}

pub fn presentation(name: &str, bit_budget: u64) -> Result<Presentation> {
    let p = match name {
        "unary" => Presentation::unary(),
        "tower" => Presentation::tower(),
        _ => match name.strip_prefix("base-").and_then(|k| k.parse().ok()) {
            Some(k) => Presentation::base_k(k)?,
            None => {
                return Err(Error::Presentation(format!(
                    "unknown presentation `{name}`"
                )))
            }
        },
    };
    Ok(p.with_bit_budget(bit_budget))
}

pub fn cmd_sn(cfg: &RunConfig, psi: &str, psi0: &str, from: usize, to: usize) -> Result<String> {
    no_dot(cfg, "sn")?;
    let psi = presentation(psi, cfg.bit_budget)?;
    let psi0 = presentation(psi0, cfg.bit_budget)?;
    let mut walker = None;
    if psi.kind() == Kind::Tower && psi0.kind() == Kind::Unary {
        let mut w = OrbitWalker::new(cfg.capacity);
        w.walk(cfg.budget.unwrap_or(1 << 20))?;
        walker = Some(w);
    }
    let mut profiles = Vec::new();
    for n in from..=to {
        let strategy = match (&walker, psi.kind(), psi0.kind()) {
            (Some(w), _, _) => Strategy::OrbitAssisted { walker: w },
            (None, Kind::Tower, _) | (None, _, Kind::Tower) => Strategy::Exhaustive {
                budget: cfg.budget.unwrap_or(2_000_000),
            },
            _ => Strategy::Extremal,
        };
        let p = s_of_n(n, &psi, &psi0, strategy)?;
        if p.exhausted {
            eprintln!("warning: s({n}) scan stopped at its budget; value is a lower bound");
        }
        profiles.push(p);
    }
    Ok(match cfg.format {
        Format::Json => {
            let v: Vec<_> = profiles
                .iter()
                .map(|p| {
                    json!({
                        "n": p.n,
                        "s_value": p.s_value.to_string(),
                        "witnesses": p.witnesses.iter().map(|(w, x)| json!([w, x.to_string()])).collect::<Vec<_>>(),
                        "scanned": p.scanned,
                        "exhausted": p.exhausted,
                    })
                })
                .collect();
            serde_json::to_string_pretty(&v)? + "\n"
        }
        _ => profiles_csv(&profiles),
    })
}

pub fn cmd_verify(cfg: &RunConfig, suite: &str) -> Result<(String, i32)> {
    no_dot(cfg, "verify")?;
    let names: Vec<&str> = if suite == "all" {
        SUITES.to_vec()
    } else {
        vec![suite]
    };
    let mut text = String::new();
    let mut failed = false;
    for name in names {
        eprintln!("running {name}");
        let report = run_suite(name, cfg.seed)?;
        failed |= !report.passed();
        if cfg.format == Format::Json {
            let checks: Vec<_> = report
                .checks
                .iter()
                .map(|c| json!({"suite": report.suite, "check": c.name, "passed": c.passed, "detail": c.detail, "witness": c.witness}))
                .collect();
            text += &(serde_json::to_string_pretty(&checks)? + "\n");
        } else {
            text += &report.to_string();
        }
    }
    Ok((text, i32::from(failed)))
}

fn load_machine(path: Option<&PathBuf>) -> Result<TuringMachine> {
    match path {
        Some(p) => TuringMachine::from_json(&fs::read_to_string(p)?),
        None => Ok(TuringMachine::sample()),
    }
}

pub fn named_dfa(name: &str, machine: Option<&PathBuf>) -> Result<MultiTrackDfa> {
    let k = |prefix: &str| {
        name.strip_prefix(prefix)
            .and_then(|k| k.parse::<u32>().ok())
    };
    Ok(match name {
        "l" => build_l_dfa().minimize(),
        "graph-f" => build_graph_f_dfa()?,
        "tm-step" => load_machine(machine)?.step_relation_dfa(),
        _ => {
            if let Some(k) = k("base-") {
                build::canonical_base(k)?
            } else if let Some(k) = k("add-") {
                build::addition(k)?
            } else {
                return Err(Error::UnknownRelation(name.into()));
            }
        }
    })
}

pub fn cmd_dfa_export(cfg: &RunConfig, name: &str, machine: Option<&PathBuf>) -> Result<String> {
    let d = named_dfa(name, machine)?;
    eprintln!(
        "{name}: {} states, {} symbols",
        d.state_count(),
        d.symbol_count()
    );
    Ok(match cfg.format {
        Format::Dot => d.to_dot(name),
        _ => d.to_json() + "\n",
    })
}

pub fn cmd_tm_run(
    cfg: &RunConfig,
    machine: Option<&PathBuf>,
    input: &str,
    steps: usize,
    run_symbol: &str,
) -> Result<String> {
    no_dot(cfg, "tm-run")?;
    let m = load_machine(machine)?;
    let codec = TowerCodec::new();
    let tape: Vec<&str> = input.split_whitespace().collect();
    let mut cfg_now = m.initial(&tape)?;
    let mut rows = Vec::new();
    for i in 0..=steps {
        let std = m.render(&cfg_now).join(" ");
        let packed = tm_encode(&m, &cfg_now, run_symbol, &codec)?.join(" ");
        rows.push((i, std, packed));
        match m.step(&cfg_now) {
            Some(next) if i < steps => cfg_now = next,
            _ => break,
        }
    }
    Ok(match cfg.format {
        Format::Json => {
            let v: Vec<_> = rows
                .iter()
                .map(|(i, s, c)| json!({"step": i, "standard": s, "compressed": c}))
                .collect();
            serde_json::to_string_pretty(&v)? + "\n"
        }
        _ => {
            let mut s = String::from("step,standard,compressed\n");
            for (i, st, c) in rows {
                let _ = writeln!(s, "{i},\"{st}\",\"{c}\"");
            }
            s
        }
    })
}

pub fn parse_family(name: &str, m: usize, p: u32, q: u32, matrix: &[i64]) -> Result<Family> {
    match name {
        "z" => Family::free_abelian(1),
        "zm" => Family::free_abelian(m),
        "free" => Family::free(m),
        "bs" => Family::baumslag_solitar(p, q),
        "semidirect" => match matrix {
            [a, b, c, d] => Family::semidirect([[*a, *b], [*c, *d]]),
            _ => Err(Error::Matrix("need four entries".into())),
        },
        other => Err(Error::Parse(format!("unknown family `{other}`"))),
    }
}

pub fn cmd_group_encode(
    cfg: &RunConfig,
    family: &Family,
    word: &str,
    random: Option<usize>,
) -> Result<String> {
    no_dot(cfg, "group-encode")?;
    let codec = TowerCodec::new();
    let elements = match random {
        Some(n) => {
            let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed);
            (0..n)
                .map(|_| family.random_element(&mut rng, 30))
                .collect()
        }
        None => {
            let letters: Vec<&str> = word.split_whitespace().collect();
            vec![family.eval(&letters)?]
        }
    };
    let mut rows = Vec::new();
    for g in &elements {
        rows.push((
            family.encode_std(g)?.join(" "),
            family.encode_compressed(g, &codec)?.join(" "),
        ));
    }
    Ok(match cfg.format {
        Format::Json => {
            let v: Vec<_> = rows
                .iter()
                .map(|(s, c)| json!({"family": family.name(), "standard": s, "compressed": c}))
                .collect();
            serde_json::to_string_pretty(&v)? + "\n"
        }
        _ => {
            let mut s = String::from("standard,compressed\n");
            for (st, c) in rows {
                let _ = writeln!(s, "\"{st}\",\"{c}\"");
            }
            s
        }
    })
}
