//! Acceptance criteria. Each test prints one PASS/FAIL line with its timing
//! (visible with `--nocapture`); cargo reports one ok/FAILED line per test.
//! Tests hold a shared lock so their timings do not overlap.

use std::collections::{HashMap, HashSet};
use std::sync::Mutex;
use std::time::{Duration, Instant};

use num_bigint::BigUint;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use fapres::apps::{tm_decode, tm_encode, tm_s_measured, TmConfig, TowerCodec, TuringMachine};
use fapres::automata::{Column, MultiTrackDfa};
use fapres::cli::{cmd_walk, Format, RunConfig};
use fapres::comprate::{incompressibility_check, lemma1_bound_check, Presentation};
use fapres::towerpres::{
    apply_f, build_graph_f_dfa, build_l_dfa, decode_string, orbit_index_fast, pair_encoding,
    tower_compare, tuple_alphabet, tuple_at, OrbitIndexer, OrbitWalker, TowerBound, TupleV,
    DEFAULT_BIT_BUDGET,
};
use fapres::verify::sample_families;

static SERIAL: Mutex<()> = Mutex::new(());

/// Run one criterion under the lock, print its line, and fail on a miss or
/// an overrun of `limit`.
fn criterion(id: u32, name: &str, limit: Duration, body: impl FnOnce() -> Result<String, String>) {
    let _guard = SERIAL.lock().unwrap_or_else(|e| e.into_inner());
    let start = Instant::now();
    let outcome = body();
    let took = start.elapsed();
    let (ok, detail) = match outcome {
        Ok(d) if took <= limit => (true, d),
        Ok(d) => (false, format!("{d}; too slow")),
        Err(e) => (false, e),
    };
    println!(
        "{} [{id:>2}] {name} ({:.2}s, limit {}s): {detail}",
        if ok { "PASS" } else { "FAIL" },
        took.as_secs_f64(),
        limit.as_secs()
    );
    assert!(ok, "criterion {id} ({name}) failed: {detail}");
}

fn check(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn err<E: std::fmt::Debug>(e: E) -> String {
    format!("{e:?}")
}

// ---------------------------------------------------------------------------
// Oracle for f on machine-word tuples, written from the six rules directly.

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
struct T4 {
    a: u64,
    b: u64,
    c: u64,
    d: u8,
}

impl T4 {
    fn new(a: u64, b: u64, c: u64, d: u8) -> Self {
        T4 { a, b, c, d }
    }

    fn valid(self) -> bool {
        self.c.is_power_of_two()
            && self.d <= 1
            && !(self.a > 0 && self.b == 0 && self.c == 1)
            && !(self.a == 0 && self.c != 1)
    }

    fn f(self) -> (T4, u8) {
        let T4 { a, b, c, d } = self;
        let pow2 = b > 1 && b.is_power_of_two();
        match (d, a > 0, b > 0, c > 1) {
            (0, true, true, _) => (T4::new(a, b - 1, 2 * c, 0), 1),
            (0, true, false, _) => (T4::new(a - 1, c, 1, 0), 2),
            (0, false, _, false) => (T4::new(0, b + 1, 1, 1), 3),
            (1, _, _, true) => (T4::new(a, b + 1, c / 2, 1), 4),
            (1, _, _, false) if pow2 => (T4::new(a + 1, 0, b, 1), 5),
            (1, _, _, false) => (T4::new(a, b, 1, 0), 6),
            _ => panic!("no rule for {self:?}"),
        }
    }

    fn lib(self) -> TupleV {
        TupleV::small(self.a, self.b, u64::from(self.c.trailing_zeros()), self.d).expect("valid")
    }

    /// Length of the four-track reverse-binary encoding.
    fn enc_len(self) -> u64 {
        let bits = |x: u64| u64::from(64 - x.leading_zeros()).max(1);
        bits(self.a)
            .max(bits(self.b))
            .max(u64::from(self.c.trailing_zeros()) + 1)
    }

    fn is_milestone(self) -> Option<u64> {
        (self.b == 1 && self.c == 1 && self.d == 0).then_some(self.a)
    }

    fn is_hub(self) -> Option<u32> {
        (self.a == 0 && self.c == 1 && self.d == 1 && self.b > 1 && self.b.is_power_of_two())
            .then(|| self.b.trailing_zeros())
    }
}

const ORIGIN: T4 = T4 {
    a: 0,
    b: 0,
    c: 1,
    d: 1,
};

fn walk_oracle(mut v: T4, cap: u64, stop: impl Fn(T4) -> bool) -> Option<(T4, u64)> {
    for n in 1..=cap {
        v = v.f().0;
        if stop(v) {
            return Some((v, n));
        }
    }
    None
}

// ---------------------------------------------------------------------------

type Row = (u64, u64, u64, u8);

#[test]
fn c01_golden_chain() {
    criterion(1, "golden 23-step chain", Duration::from_secs(1), || {
        let expect: [(Row, &str); 24] = [
            ((0, 0, 1, 1), "-"),
            ((0, 0, 1, 0), "6"),
            ((0, 1, 1, 1), "3"),
            ((0, 1, 1, 0), "6"),
            ((0, 2, 1, 1), "3"),
            ((1, 0, 2, 1), "5"),
            ((1, 1, 1, 1), "4"),
            ((1, 1, 1, 0), "6"),
            ((1, 0, 2, 0), "1"),
            ((0, 2, 1, 0), "2"),
            ((0, 3, 1, 1), "3"),
            ((0, 3, 1, 0), "6"),
            ((0, 4, 1, 1), "3"),
            ((1, 0, 4, 1), "5"),
            ((1, 1, 2, 1), "4"),
            ((1, 2, 1, 1), "4"),
            ((2, 0, 2, 1), "5"),
            ((2, 1, 1, 1), "4"),
            ((2, 1, 1, 0), "6"),
            ((2, 0, 2, 0), "1"),
            ((1, 2, 1, 0), "2"),
            ((1, 1, 2, 0), "1"),
            ((1, 0, 4, 0), "1"),
            ((0, 4, 1, 0), "2"),
        ];
        let cfg = RunConfig {
            budget: Some(23),
            bit_budget: DEFAULT_BIT_BUDGET,
            capacity: 1 << 10,
            seed: 0,
            format: Format::Csv,
            out: None,
        };
        let (text, _) = cmd_walk(&cfg, None).map_err(err)?;
        let lines: Vec<&str> = text.lines().collect();
        check(lines.len() == 24, || format!("{} trace lines", lines.len()))?;
        for (i, (line, ((a, b, c, d), rule))) in lines.iter().zip(expect).enumerate() {
            let want = format!("{i}\t({a},{b},{c},{d})\t{rule}");
            check(*line == want, || format!("line {i}: `{line}` ≠ `{want}`"))?;
        }
        Ok("24 tuples and 23 rules match".into())
    });
}

#[test]
fn c02_closure_and_injectivity() {
    criterion(
        2,
        "closure and injectivity, a,b ≤ 64, c ≤ 2^6",
        Duration::from_secs(5),
        || {
            let mut images: HashMap<TupleV, T4> = HashMap::new();
            let mut n = 0;
            for a in 0..=64 {
                for b in 0..=64 {
                    for e in 0..=6 {
                        for d in 0..=1 {
                            let v = T4::new(a, b, 1 << e, d);
                            if !v.valid() {
                                continue;
                            }
                            n += 1;
                            let (w, _) = apply_f(&v.lib()).map_err(err)?;
                            let (want, _) = v.f();
                            check(want.valid(), || {
                                format!("oracle f{v:?} = {want:?} leaves V")
                            })?;
                            check(w == want.lib(), || {
                                format!("f{v:?}: library {w}, oracle {want:?}")
                            })?;
                            check(w.is_valid(), || format!("f{v:?} = {w} leaves V"))?;
                            if let Some(u) = images.insert(w.clone(), v) {
                                return Err(format!("f{u:?} = f{v:?} = {w}"));
                            }
                        }
                    }
                }
            }
            Ok(format!("{n} tuples, 0 violations"))
        },
    );
}

/// Membership in `V` of the decoded four-track string, from the track
/// shapes alone.
fn l_oracle(cols: &[Column], word: &[u32]) -> bool {
    if word.is_empty() {
        return false;
    }
    let mut tracks: [Vec<u32>; 4] = Default::default();
    for t in 0..4 {
        let mut ended = false;
        for &s in word {
            match cols[s as usize][t] {
                Some(x) if !ended => tracks[t].push(x),
                Some(_) => return false,
                None => ended = true,
            }
        }
        if tracks[t].is_empty() {
            return false;
        }
    }
    let canonical = |w: &[u32]| w.len() == 1 || w.last() == Some(&1);
    let [a, b, c, d] = &tracks;
    let c_shape = c.last() == Some(&1) && c[..c.len() - 1].iter().all(|&x| x == 0);
    if !canonical(a) || !canonical(b) || !c_shape || d.len() != 1 {
        return false;
    }
    let a_pos = a.contains(&1);
    let b_pos = b.contains(&1);
    let c_one = c.len() == 1;
    !(a_pos && !b_pos && c_one) && !(!a_pos && !c_one)
}

struct Scan<'a> {
    dfa: &'a MultiTrackDfa,
    cols: &'a [Column],
    count: u64,
    bad: Option<Vec<u32>>,
}

impl Scan<'_> {
    fn dfs(&mut self, word: &mut Vec<u32>, q: u32, max: usize) {
        self.count += 1;
        if self.dfa.is_accepting(q) != l_oracle(self.cols, word) && self.bad.is_none() {
            self.bad = Some(word.clone());
        }
        if word.len() == max {
            return;
        }
        for s in 0..self.cols.len() as u32 {
            word.push(s);
            self.dfs(word, self.dfa.next(q, s), max);
            word.pop();
        }
    }
}

#[test]
fn c03_automaton_fidelity() {
    criterion(
        3,
        "L and graph-of-f automata vs oracles",
        Duration::from_secs(60),
        || {
            let alpha = tuple_alphabet();
            let cols = alpha.columns();
            let l = build_l_dfa();
            let mut scan = Scan {
                dfa: &l,
                cols: &cols,
                count: 0,
                bad: None,
            };
            scan.dfs(&mut Vec::new(), l.start(), 4);
            if let Some(w) = scan.bad {
                return Err(format!("L disagrees on {}", alpha.render(&w)));
            }
            let exhaustive = scan.count;

            let mut rng = ChaCha8Rng::seed_from_u64(3);
            for _ in 0..100_000 {
                let len = rng.gen_range(0..=12);
                let w: Vec<u32> = (0..len)
                    .map(|_| rng.gen_range(0..cols.len() as u32))
                    .collect();
                let want = l_oracle(&cols, &w);
                let lib = matches!(decode_string(&w), Ok(Some(v)) if v.is_valid());
                check(l.accepts(&w).map_err(err)? == want && lib == want, || {
                    format!("random string {} (oracle {want})", alpha.render(&w))
                })?;
            }

            let g = build_graph_f_dfa().map_err(err)?;
            let mut domain = Vec::new();
            for a in 0..16 {
                for b in 0..16 {
                    for c in [1, 2, 4, 8] {
                        for d in 0..=1 {
                            let v = T4::new(a, b, c, d);
                            if v.valid() {
                                domain.push(v);
                            }
                        }
                    }
                }
            }
            for v in &domain {
                let (w, _) = v.f();
                check(
                    g.accepts(&pair_encoding(&v.lib(), &w.lib())).map_err(err)?,
                    || format!("graph rejects {v:?} -> {w:?}"),
                )?;
            }
            let mut non_edges = 0;
            while non_edges < 100_000 {
                let u = domain[rng.gen_range(0..domain.len())];
                let w = T4::new(
                    rng.gen_range(0..20),
                    rng.gen_range(0..20),
                    1 << rng.gen_range(0..5),
                    rng.gen_range(0..2),
                );
                if !w.valid() || u.f().0 == w {
                    continue;
                }
                non_edges += 1;
                check(
                    !g.accepts(&pair_encoding(&u.lib(), &w.lib())).map_err(err)?,
                    || format!("graph accepts {u:?} -> {w:?}"),
                )?;
            }
            Ok(format!(
            "{exhaustive} strings of length ≤ 4, 10^5 random strings, {} edges, {non_edges} non-edges; 0 disagreements",
            domain.len()
        ))
        },
    );
}

#[test]
fn c04_tower_growth() {
    criterion(
        4,
        "walk reaches (4,1,1,0); r_lower(3) ≥ T(3)",
        Duration::from_secs(60),
        || {
            let target = T4::new(4, 1, 1, 0);
            let mut walker = OrbitWalker::default();
            let reached = walker
                .walk_until(10_000_000, |v| *v == target.lib())
                .map_err(err)?;
            check(reached, || "(4,1,1,0) not reached in 10^7 steps".into())?;
            let steps = walker.index();

            // the oracle walk, tracking the best index per encoding length ≤ 3
            let mut v = ORIGIN;
            let mut best3 = 0;
            for k in 1..=steps {
                v = v.f().0;
                if v.enc_len() <= 3 {
                    best3 = k;
                }
            }
            check(v == target, || format!("oracle walk ends at {v:?}"))?;
            let r3 = walker.r_lower(3);
            check(r3 == TowerBound::from(best3), || {
                format!("r_lower(3) = {r3}, oracle {best3}")
            })?;
            check(best3 >= 16, || format!("r_lower(3) = {best3} < 16"))?;
            Ok(format!(
                "(4,1,1,0) at index {steps}; r_lower(3) = {r3} ≥ 16"
            ))
        },
    );
}

#[test]
fn c05_fast_index() {
    criterion(
        5,
        "fast index vs walk on landmarks of 10^6 steps",
        Duration::from_secs(60),
        || {
            let mut walker = OrbitWalker::default();
            walker.walk(1_000_000).map_err(err)?;
            let mut v = ORIGIN;
            let mut milestones = Vec::new();
            let mut hubs = Vec::new();
            for k in 1..=1_000_000u64 {
                v = v.f().0;
                if let Some(m) = v.is_milestone() {
                    milestones.push((m, k));
                }
                if let Some(m) = v.is_hub() {
                    hubs.push((u64::from(m), k));
                }
            }
            let lib_m: Vec<_> = walker.milestones().iter().map(|l| (l.m, l.index)).collect();
            let lib_h: Vec<_> = walker.hubs().iter().map(|l| (l.m, l.index)).collect();
            check(lib_m == milestones, || {
                format!("milestones {lib_m:?} vs oracle {milestones:?}")
            })?;
            check(lib_h == hubs, || {
                format!("hubs {lib_h:?} vs oracle {hubs:?}")
            })?;
            for &(m, k) in &milestones {
                let got = orbit_index_fast(&TupleV::milestone(m), DEFAULT_BIT_BUDGET);
                check(got == TowerBound::from(k), || {
                    format!("milestone {m}: fast {got}, walk {k}")
                })?;
            }
            for &(m, k) in &hubs {
                let got = orbit_index_fast(&TupleV::hub(m), DEFAULT_BIT_BUDGET);
                check(got == TowerBound::from(k), || {
                    format!("hub {m}: fast {got}, walk {k}")
                })?;
            }
            let x = orbit_index_fast(&T4::new(0, 4, 1, 0).lib(), DEFAULT_BIT_BUDGET);
            check(x == TowerBound::from(23), || format!("(0,4,1,0) gives {x}"))?;
            Ok(format!(
                "{} milestones and {} hubs agree; (0,4,1,0) -> 23",
                milestones.len(),
                hubs.len()
            ))
        },
    );
}

fn tower_u64(h: u64) -> Option<u64> {
    (0..h).try_fold(1u64, |t, _| if t < 64 { Some(1u64 << t) } else { None })
}

#[test]
fn c06_hub_and_milestone_walks() {
    criterion(
        6,
        "hub and milestone walks",
        Duration::from_secs(120),
        || {
            let mut ix = OrbitIndexer::default();
            for m in [3u32, 5, 6, 7, 9, 10, 11, 12] {
                let start = T4::new(0, 1 << m, 1, 1);
                let (end, n) = walk_oracle(start, 1 << (m + 3), |v| v.is_hub().is_some())
                    .ok_or_else(|| format!("m = {m}: no hub reached"))?;
                check(end.is_hub() == Some(m + 1), || {
                    format!("m = {m}: reached {end:?}")
                })?;
                let fast = ix.hub_hop(u64::from(m));
                check(fast == Some(BigUint::from(n)), || {
                    format!("m = {m}: walk {n}, fast {fast:?}")
                })?;
            }
            for m in [0u32, 1, 2, 4] {
                let start = T4::new(0, 1 << m, 1, 1);
                let (end, _) = walk_oracle(start, 1 << 20, |v| {
                    v.is_milestone().is_some() || v.is_hub().is_some()
                })
                .ok_or_else(|| format!("m = {m}: nothing reached"))?;
                let a = end
                    .is_milestone()
                    .ok_or_else(|| format!("m = {m}: reached hub {end:?}"))?;
                check(tower_u64(a) == Some(1 << m), || {
                    format!("m = {m}: reached ({a},1,1,0)")
                })?;
            }
            let path = [
                (0, 1, 1, 0),
                (0, 2, 1, 1),
                (1, 0, 2, 1),
                (1, 1, 1, 1),
                (1, 1, 1, 0),
            ];
            for (i, (a, b, c, d)) in path.into_iter().enumerate() {
                let k = 3 + i as u64;
                let got = tuple_at(k).map_err(err)?;
                check(got == T4::new(a, b, c, d).lib(), || {
                    format!("index {k} holds {got}")
                })?;
            }
            let mut rng = ChaCha8Rng::seed_from_u64(6);
            let mut starts = 0;
            let mut tried = 0;
            while starts < 20 {
                tried += 1;
                check(tried < 100_000, || format!("only {starts} usable starts"))?;
                let v = T4::new(
                    rng.gen_range(0..4),
                    rng.gen_range(0..48),
                    1 << rng.gen_range(0..6),
                    rng.gen_range(0..2),
                );
                if !v.valid() {
                    continue;
                }
                let k = match ix.index(&v.lib()) {
                    TowerBound::Exact(k) if k < BigUint::from(200_000u32) => k,
                    _ => continue,
                };
                starts += 1;
                let (hub, n) = walk_oracle(v, 1 << 22, |w| w.is_hub().is_some())
                    .ok_or_else(|| format!("{v:?} reaches no hub"))?;
                let hub_ix = ix.index(&hub.lib());
                check(hub_ix == TowerBound::Exact(&k + n), || {
                    format!("{v:?} at {k} + {n} -> {hub:?} at {hub_ix}")
                })?;
            }
            Ok(format!(
                "8 hub hops, 4 hub-to-milestone runs, base path, {starts} random starts"
            ))
        },
    );
}

#[test]
fn c07_exponential_bound() {
    criterion(
        7,
        "max value and μ^{c+1+n} bound, base 2 and 4",
        Duration::from_secs(30),
        || {
            let mut details = Vec::new();
            for (k, n_max) in [(2u32, 16usize), (4, 8)] {
                let psi = Presentation::base_k(k).map_err(err)?;
                let report = lemma1_bound_check(&psi, n_max).map_err(err)?;
                check(report.rows.len() == n_max + 1, || {
                    format!("base {k}: {} rows", report.rows.len())
                })?;
                for row in &report.rows {
                    let max = BigUint::from(k).pow(row.n as u32) - 1u32;
                    let bound = BigUint::from(report.mu).pow((report.c + 1 + row.n) as u32);
                    check(row.max_value == max, || {
                        format!("base {k}, n = {}: max {}", row.n, row.max_value)
                    })?;
                    check(row.bound == bound && max <= bound, || {
                        format!("base {k}, n = {}: bound", row.n)
                    })?;
                }
                details.push(format!("base {k}: c = {}, n ≤ {n_max}", report.c));
            }
            Ok(details.join("; "))
        },
    );
}

#[test]
fn c08_incompressibility() {
    criterion(8, "base 4 against base 2", Duration::from_secs(30), || {
        let psi = Presentation::base_k(4).map_err(err)?;
        let psi0 = Presentation::base_k(2).map_err(err)?;
        let report = incompressibility_check(&psi, &psi0, 16, 30).map_err(err)?;
        for row in &report.rows {
            // 4^n - 1 has 2n binary digits
            let want = 2 * row.n as u64;
            check(row.s == want, || {
                format!("s({}) = {}, oracle {want}", row.n, row.s)
            })?;
            check(row.s <= 2 * row.n as u64 + 1, || {
                format!("s({}) = {} > 2n+1", row.n, row.s)
            })?;
        }
        check(report.gaps.len() == 31, || {
            format!("{} gaps", report.gaps.len())
        })?;
        check(
            report.gaps.iter().all(|&g| g == 1 && g <= report.c0 as i64),
            || format!("gaps {:?}, c0 = {}", report.gaps, report.c0),
        )?;
        check(report.passed(), || "linear bound violated".into())?;
        Ok(format!(
            "s(n) = 2n for n ≤ 16; gaps of 2^k all 1 ≤ c0 = {}",
            report.c0
        ))
    });
}

fn short(x: &TowerBound) -> String {
    match x {
        TowerBound::Exact(v) if v.bits() > 64 => format!("exact, {} bits", v.bits()),
        _ => x.to_string(),
    }
}

fn at_least(x: &TowerBound, y: &TowerBound) -> bool {
    match (tower_compare(x, y), x, y) {
        (Some(o), _, _) => o != std::cmp::Ordering::Less,
        (None, TowerBound::AtLeastTower(g), TowerBound::AtLeastTower(h)) => g >= h,
        _ => false,
    }
}

#[test]
fn c09_tm_rate() {
    criterion(
        9,
        "TM codec rate against r_lower",
        Duration::from_secs(30),
        || {
            let m = TuringMachine::sample();
            let codec = TowerCodec::new();
            let g = m.symbol_index("g").expect("g");
            let q0 = m.q0();
            let blank = m.blank();

            // |w_k| = |u_k| + 2 for ξ_k = g^k q ⊔
            let mut v = ORIGIN;
            for k in 0..2_000usize {
                let cfg = TmConfig {
                    content: [vec![g; k], vec![blank]].concat(),
                    head: k,
                    state: q0,
                };
                let w = tm_encode(&m, &cfg, "g", &codec).map_err(err)?;
                check(w.len() as u64 == v.enc_len() + 2, || {
                    format!("k = {k}: |w| = {}", w.len())
                })?;
                v = v.f().0;
            }

            let mut walker = OrbitWalker::default();
            walker.walk(1_000_000).map_err(err)?;
            let mut rows = Vec::new();
            for n in 1..=4 {
                let s = tm_s_measured(n + 2, DEFAULT_BIT_BUDGET);
                let r = walker.r_lower(n).plus(2);
                check(at_least(&s, &r), || {
                    format!("s({}) = {s} < r_lower({n}) + 2 = {r}", n + 2)
                })?;
                rows.push(format!("s({}) = {} ≥ {}", n + 2, short(&s), short(&r)));
            }
            let s5 = tm_s_measured(5, DEFAULT_BIT_BUDGET);
            let r3 = walker.r_lower(3).plus(2);
            check(
                at_least(&s5, &r3) && at_least(&r3, &TowerBound::from(18)),
                || format!("s(5) = {s5}, r_lower(3) + 2 = {r3}"),
            )?;
            Ok(rows.join("; "))
        },
    );
}

#[test]
fn c10_codecs() {
    criterion(
        10,
        "group and TM codec round trips; compressed TM run",
        Duration::from_secs(60),
        || {
            let codec = TowerCodec::new();
            let mut rng = ChaCha8Rng::seed_from_u64(10);
            let families = sample_families();
            for f in &families {
                let mut distinct = HashSet::new();
                for _ in 0..10_000 {
                    let g = f.random_element(&mut rng, 40);
                    let std = f.encode_std(&g).map_err(err)?;
                    let packed = f.encode_compressed(&g, &codec).map_err(err)?;
                    check(f.decode_std(&std).map_err(err)? == g, || {
                        format!("{}: std {std:?}", f.name())
                    })?;
                    check(
                        f.decode_compressed(&packed, &codec).map_err(err)? == g,
                        || format!("{}: compressed {packed:?}", f.name()),
                    )?;
                    distinct.insert(std);
                }
                check(distinct.len() >= 40, || {
                    format!("{}: only {} distinct elements", f.name(), distinct.len())
                })?;
            }

            let m = TuringMachine::sample();
            let gamma = m.gamma().len();
            for _ in 0..10_000 {
                let run = rng.gen_range(0..40);
                let mut content = vec![1usize; run];
                content.extend((0..rng.gen_range(0..12)).map(|_| rng.gen_range(0..gamma)));
                let cfg = TmConfig {
                    head: rng.gen_range(0..=content.len()),
                    state: rng.gen_range(0..m.states().len()),
                    content,
                };
                let w = tm_encode(&m, &cfg, "g", &codec).map_err(err)?;
                check(tm_decode(&m, &w, "g", &codec).map_err(err)? == cfg, || {
                    format!("TM {:?}", m.render(&cfg))
                })?;
            }

            let mut plain = m.initial(&["g"; 12]).map_err(err)?;
            plain.head = 12;
            let mut packed = tm_encode(&m, &plain, "g", &codec).map_err(err)?;
            for step in 1..=100 {
                plain = m
                    .step(&plain)
                    .ok_or_else(|| format!("halted at step {step}"))?;
                let via = m
                    .step(&tm_decode(&m, &packed, "g", &codec).map_err(err)?)
                    .ok_or_else(|| format!("compressed run halted at step {step}"))?;
                check(via == plain, || {
                    format!(
                        "step {step}: {:?} vs {:?}",
                        m.render(&via),
                        m.render(&plain)
                    )
                })?;
                packed = tm_encode(&m, &via, "g", &codec).map_err(err)?;
            }
            Ok(format!(
                "{} families × 10^4, 10^4 TM configurations, 100-step run",
                families.len()
            ))
        },
    );
}
