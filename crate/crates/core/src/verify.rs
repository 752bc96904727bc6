//! Verification suites run by `fapres verify <suite>`.

use std::collections::HashMap;
use std::fmt;

use num_bigint::BigUint;
use num_traits::{ToPrimitive, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::apps::{tm_decode, tm_encode, Family, TmConfig, TowerCodec, TuringMachine};
use crate::comprate::{incompressibility_check, lemma1_bound_check, Presentation};
use crate::error::{Error, Result};
use crate::towerpres::{
    apply_f, apply_f_inverse, build_graph_f_dfa, build_l_dfa, decode_string, is_power_of_two_gt1,
    orbit_walk, pair_encoding, tower_big, tuple_alphabet, tuple_at, OrbitIndexer, TowerBound,
    TupleV, DEFAULT_BIT_BUDGET,
};

pub const SUITES: [&str; 6] = ["props", "lemmas", "automata", "presburger", "tm", "groups"];

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CheckResult {
    pub name: String,
    pub passed: bool,
    pub detail: String,
    /// First counterexample found.
    pub witness: Option<String>,
}

impl CheckResult {
    fn new(name: &str, witness: Option<String>, detail: String) -> Self {
        CheckResult {
            name: name.into(),
            passed: witness.is_none(),
            detail,
            witness,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SuiteReport {
    pub suite: String,
    pub checks: Vec<CheckResult>,
}

impl SuiteReport {
    pub fn passed(&self) -> bool {
        self.checks.iter().all(|c| c.passed)
    }
}

impl fmt::Display for SuiteReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for c in &self.checks {
            let tag = if c.passed { "PASS" } else { "FAIL" };
            write!(f, "{tag} {}/{}: {}", self.suite, c.name, c.detail)?;
            if let Some(w) = &c.witness {
                write!(f, " [witness: {w}]")?;
            }
            writeln!(f)?;
        }
        Ok(())
    }
}

/// Run a suite by name with default sizes.
pub fn run_suite(name: &str, seed: u64) -> Result<SuiteReport> {
    match name {
        "props" => Ok(verify_props(64, 6)),
        "lemmas" => verify_lemmas(seed),
        "automata" => verify_automata(3, 20_000, 15, seed),
        "presburger" => verify_presburger(),
        "tm" => verify_tm(seed, 2_000),
        "groups" => Ok(verify_groups(seed, 2_000)),
        other => Err(Error::Parse(format!(
            "unknown suite `{other}`; expected one of {}",
            SUITES.join(", ")
        ))),
    }
}

/// Valid tuples with `a, b ≤ ab_max`, `c = 2^e` for `e ≤ c_max`.
pub fn small_tuples(ab_max: u64, c_max: u64) -> Vec<TupleV> {
    let mut out = Vec::new();
    for a in 0..=ab_max {
        for b in 0..=ab_max {
            for c_exp in 0..=c_max {
                for d in [false, true] {
                    let v = TupleV {
                        a: a.into(),
                        b: b.into(),
                        c_exp,
                        d,
                    };
                    if v.is_valid() {
                        out.push(v);
                    }
                }
            }
        }
    }
    out
}

/// Closure, injectivity, and that exactly one guard holds, over a box.
pub fn verify_props(ab_max: u64, c_max: u64) -> SuiteReport {
    let domain = small_tuples(ab_max, c_max);
    let mut closure = None;
    let mut injective = None;
    let mut guards = None;
    let mut images: HashMap<TupleV, TupleV> = HashMap::with_capacity(domain.len());
    for v in &domain {
        let fired = guard_count(v);
        if fired != 1 && guards.is_none() {
            guards = Some(format!("{v} satisfies {fired} guards"));
        }
        let w = match apply_f(v) {
            Ok((w, _)) => w,
            Err(e) => {
                closure.get_or_insert(format!("{v}: {e}"));
                continue;
            }
        };
        if !w.is_valid() && closure.is_none() {
            closure = Some(format!("f{v} = {w} leaves V"));
        }
        if apply_f_inverse(&w).as_ref() != Some(v) && injective.is_none() {
            injective = Some(format!("inverse of f{v} = {w} is not {v}"));
        }
        if let Some(u) = images.insert(w.clone(), v.clone()) {
            injective.get_or_insert(format!("f{u} = f{v} = {w}"));
        }
    }
    let n = domain.len();
    SuiteReport {
        suite: "props".into(),
        checks: vec![
            CheckResult::new(
                "closure",
                closure,
                format!("{n} tuples, a,b ≤ {ab_max}, c ≤ 2^{c_max}"),
            ),
            CheckResult::new(
                "injectivity",
                injective,
                format!("{} distinct images", images.len()),
            ),
            CheckResult::new("one-guard", guards, format!("{n} tuples")),
        ],
    }
}

/// How many of the six rule guards hold, each tested on its own.
fn guard_count(v: &TupleV) -> usize {
    let (a, b, c1, d) = (!v.a.is_zero(), !v.b.is_zero(), v.c_exp == 0, v.d);
    [
        !d && a && b,
        !d && a && !b,
        !d && !a && c1,
        d && !c1,
        d && c1 && is_power_of_two_gt1(&v.b),
        d && c1 && !is_power_of_two_gt1(&v.b),
    ]
    .iter()
    .filter(|g| **g)
    .count()
}

fn walk_until(
    mut v: TupleV,
    budget: u64,
    stop: impl Fn(&TupleV) -> bool,
) -> Result<Option<(TupleV, u64)>> {
    for n in 1..=budget {
        v.step()?;
        if stop(&v) {
            return Ok(Some((v, n)));
        }
    }
    Ok(None)
}

pub fn verify_lemmas(seed: u64) -> Result<SuiteReport> {
    let mut checks = Vec::new();
    let mut ix = OrbitIndexer::default();

    // (0,2^m,1,1) -> (0,2^{m+1},1,1) when 2^m is not a tower value
    let mut bad = None;
    for m in [3u64, 5, 6, 7, 9, 10, 11, 12] {
        let reached = walk_until(TupleV::hub(m), 1 << (m + 3), |v| v.as_hub().is_some())?;
        let expect = ix.hub_hop(m);
        match reached {
            Some((v, n)) if v.as_hub() == Some(m + 1) && expect == Some(BigUint::from(n)) => {}
            other => {
                bad.get_or_insert(format!(
                    "m = {m}: walk gave {other:?}, fast count {expect:?}"
                ));
            }
        }
    }
    checks.push(CheckResult::new(
        "hub-to-hub",
        bad,
        "m ∈ {3,5,6,7,9,10,11,12}".into(),
    ));

    // (0,2^m,1,1) -> (a,1,1,0) with T(a) = 2^m
    let mut bad = None;
    for m in [0u64, 1, 2, 4] {
        let start = TupleV::small(0, 1 << m, 0, 1)?;
        let reached = walk_until(start, 1 << 20, |v| {
            v.as_milestone().is_some() || v.as_hub().is_some()
        })?;
        let ok = matches!(&reached, Some((v, _)) if v.as_milestone().is_some_and(|a| {
            tower_big(a, DEFAULT_BIT_BUDGET) == TowerBound::from(1u64 << m)
        }));
        if !ok {
            bad.get_or_insert(format!("m = {m}: reached {reached:?}"));
        }
    }
    checks.push(CheckResult::new(
        "hub-to-milestone",
        bad,
        "m ∈ {0,1,2,4}".into(),
    ));

    // base path of the milestone recursion
    let path = [
        (0u64, 1u64, 0u64, 0u8),
        (0, 2, 0, 1),
        (1, 0, 1, 1),
        (1, 1, 0, 1),
        (1, 1, 0, 0),
    ];
    let mut bad = None;
    for (i, &(a, b, c, d)) in path.iter().enumerate() {
        let got = tuple_at(3 + i as u64)?;
        if got != TupleV::small(a, b, c, d)? {
            bad.get_or_insert(format!("index {} holds {got}", 3 + i));
        }
    }
    checks.push(CheckResult::new(
        "milestone-base-path",
        bad,
        "indices 3..7".into(),
    ));

    // successive milestones in a walk, against the fast index
    let walker = orbit_walk(1_000_000)?;
    let mut bad = None;
    for (j, l) in walker.milestones().iter().enumerate() {
        if l.m != j as u64 || ix.milestone_index(l.m) != TowerBound::from(l.index) {
            bad.get_or_insert(format!("milestone {} at {}", l.m, l.index));
        }
    }
    let seen = walker.milestones().len();
    if seen < 4 {
        bad.get_or_insert(format!("only {seen} milestones in 10^6 steps"));
    }
    checks.push(CheckResult::new(
        "milestone-chain",
        bad,
        format!("{seen} milestones in 10^6 steps"),
    ));

    // every tuple runs into some (0,2^m,1,1)
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut bad = None;
    let mut tried = 0;
    let mut attempts = 0;
    while tried < 20 && attempts < 100_000 {
        attempts += 1;
        let v = TupleV {
            a: rng.gen_range(0..4u32).into(),
            b: rng.gen_range(0..48u32).into(),
            c_exp: rng.gen_range(0..6),
            d: rng.gen(),
        };
        if !v.is_valid() {
            continue;
        }
        // only starts whose hub lies within desk reach
        let start = match ix.index(&v) {
            TowerBound::Exact(k) if k < BigUint::from(200_000u32) => k,
            _ => continue,
        };
        tried += 1;
        match walk_until(v.clone(), 1 << 22, |w| w.as_hub().is_some())? {
            Some((h, n)) if ix.index(&h) == TowerBound::Exact(&start + n) => {}
            other => {
                bad.get_or_insert(format!("from {v}: {other:?}"));
            }
        }
    }
    if tried < 20 {
        bad.get_or_insert(format!("only {tried} starts sampled"));
    }
    checks.push(CheckResult::new(
        "reach-hub",
        bad,
        format!("{tried} random starts"),
    ));

    Ok(SuiteReport {
        suite: "lemmas".into(),
        checks,
    })
}

/// L-automaton against decoding on all strings up to `max_len` and on random
/// strings; graph automaton against `f` on tuples with components below
/// `box_max` and on random non-edges.
pub fn verify_automata(
    max_len: usize,
    random: usize,
    box_max: u64,
    seed: u64,
) -> Result<SuiteReport> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let l = build_l_dfa();
    let symbols = l.symbol_count();
    let in_lang =
        |w: &[u32]| -> Result<bool> { Ok(decode_string(w)?.is_some_and(|v| v.is_valid())) };

    let mut bad = None;
    let mut count = 0u64;
    let mut stack: Vec<(Vec<u32>, u32)> = vec![(Vec::new(), l.start())];
    while let Some((w, q)) = stack.pop() {
        count += 1;
        if l.is_accepting(q) != in_lang(&w)? {
            bad.get_or_insert(tuple_alphabet().render(&w));
        }
        if w.len() < max_len {
            for s in 0..symbols {
                let mut x = w.clone();
                x.push(s);
                stack.push((x, l.next(q, s)));
            }
        }
    }
    for _ in 0..random {
        let len = rng.gen_range(0..=12);
        let w: Vec<u32> = (0..len).map(|_| rng.gen_range(0..symbols)).collect();
        if l.accepts(&w)? != in_lang(&w)? {
            bad.get_or_insert(tuple_alphabet().render(&w));
        }
    }
    let mut checks = vec![CheckResult::new(
        "l-dfa",
        bad,
        format!("{count} strings of length ≤ {max_len}, {random} random"),
    )];

    let g = build_graph_f_dfa()?;
    let mut bad = None;
    let domain = small_tuples(box_max - 1, 3)
        .into_iter()
        .filter(|v| v.c().to_u64().is_some_and(|c| c < box_max))
        .collect::<Vec<_>>();
    for v in &domain {
        let (w, _) = apply_f(v)?;
        if !g.accepts(&pair_encoding(v, &w))? {
            bad.get_or_insert(format!("rejects {v} -> {w}"));
        }
    }
    let mut non_edges = 0;
    while non_edges < random {
        let u = &domain[rng.gen_range(0..domain.len())];
        let w = &domain[rng.gen_range(0..domain.len())];
        if apply_f(u)?.0 == *w {
            continue;
        }
        non_edges += 1;
        if g.accepts(&pair_encoding(u, w))? {
            bad.get_or_insert(format!("accepts {u} -> {w}"));
        }
    }
    checks.push(CheckResult::new(
        "graph-f",
        bad,
        format!(
            "{} edges with components < {box_max}, {non_edges} non-edges",
            domain.len()
        ),
    ));
    Ok(SuiteReport {
        suite: "automata".into(),
        checks,
    })
}

pub fn verify_presburger() -> Result<SuiteReport> {
    let mut checks = Vec::new();
    for (k, n_max) in [(2u32, 16usize), (4, 8)] {
        let psi = Presentation::base_k(k)?;
        let report = lemma1_bound_check(&psi, n_max)?;
        let mut bad = (!report.passed()).then(|| "bound exceeded".to_string());
        for row in &report.rows {
            let expect = BigUint::from(k).pow(row.n as u32) - 1u32;
            if row.max_value != expect {
                bad.get_or_insert(format!("n = {}: max {} ≠ {expect}", row.n, row.max_value));
            }
        }
        checks.push(CheckResult::new(
            &format!("exp-bound-base{k}"),
            bad,
            format!("n ≤ {n_max}, c = {}, μ = {}", report.c, report.mu),
        ));
    }
    let psi = Presentation::base_k(4)?;
    let psi0 = Presentation::base_k(2)?;
    let report = incompressibility_check(&psi, &psi0, 16, 30)?;
    let mut bad =
        (!report.passed()).then(|| format!("{:?}", report.rows.iter().find(|r| r.s > r.bound)));
    if !report.fits_line(2, 1) {
        bad.get_or_insert("s(n) > 2n+1".into());
    }
    checks.push(CheckResult::new(
        "incompressible-base4-vs-base2",
        bad,
        format!(
            "n ≤ 16, c0 = {}, gaps ≤ {:?}",
            report.c0,
            report.gaps.iter().max()
        ),
    ));
    Ok(SuiteReport {
        suite: "presburger".into(),
        checks,
    })
}

/// Every configuration of the sample machine with tape length below `len`
/// and the head anywhere in `0..=len`.
pub fn small_configs(m: &TuringMachine, max_rendered: usize) -> Vec<TmConfig> {
    let g = m.gamma().len();
    let mut out = Vec::new();
    for len in 0..max_rendered {
        let mut content = vec![0usize; len];
        loop {
            for head in 0..=len {
                for state in 0..m.states().len() {
                    out.push(TmConfig {
                        content: content.clone(),
                        head,
                        state,
                    });
                }
            }
            // odometer over Γ^len
            let mut i = 0;
            while i < len && content[i] == g - 1 {
                content[i] = 0;
                i += 1;
            }
            if i == len {
                break;
            }
            content[i] += 1;
        }
    }
    out
}

pub fn verify_tm(seed: u64, random: usize) -> Result<SuiteReport> {
    let m = TuringMachine::sample();
    let codec = TowerCodec::new();
    let d = m.step_relation_dfa();
    let pair = d.alphabet().clone();
    let configs = small_configs(&m, 5);
    let mut bad = None;
    let mut pairs = 0u64;
    for a in &configs {
        let next = m.step(a);
        for b in &configs {
            let w = pair.convolve(&[m.config_word(a), m.config_word(b)])?;
            pairs += 1;
            if d.accepts(&w)? != (next.as_ref() == Some(b)) {
                bad.get_or_insert(format!(
                    "{} / {}",
                    m.render(a).join(" "),
                    m.render(b).join(" ")
                ));
            }
        }
    }
    let mut checks = vec![CheckResult::new(
        "step-relation",
        bad,
        format!(
            "{} configurations of length ≤ 5, {pairs} pairs",
            configs.len()
        ),
    )];

    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut bad = None;
    for _ in 0..random {
        let cfg = random_config(&m, &mut rng);
        let w = tm_encode(&m, &cfg, "g", &codec)?;
        if tm_decode(&m, &w, "g", &codec)? != cfg {
            bad.get_or_insert(m.render(&cfg).join(" "));
        }
    }
    checks.push(CheckResult::new(
        "codec-round-trip",
        bad,
        format!("{random} random configurations"),
    ));

    let bad = compressed_run_mismatch(&m, &codec, 100)?;
    checks.push(CheckResult::new("compressed-run", bad, "100 steps".into()));
    Ok(SuiteReport {
        suite: "tm".into(),
        checks,
    })
}

/// A configuration with a random `g`-run prefix and random remainder.
pub fn random_config(m: &TuringMachine, rng: &mut impl Rng) -> TmConfig {
    let g = m.symbol_index("g").unwrap_or(1);
    let run = rng.gen_range(0..40);
    let tail = rng.gen_range(0..12);
    let mut content = vec![g; run];
    content.extend((0..tail).map(|_| rng.gen_range(0..m.gamma().len())));
    TmConfig {
        head: rng.gen_range(0..=content.len()),
        state: rng.gen_range(0..m.states().len()),
        content,
    }
}

/// Step the sample machine from `g^12 q0` both directly and by decode,
/// step, encode; report the first divergence.
pub fn compressed_run_mismatch(
    m: &TuringMachine,
    codec: &TowerCodec,
    steps: usize,
) -> Result<Option<String>> {
    let g = m.symbol_index("g").expect("sample machine has g");
    let mut plain = TmConfig {
        content: vec![g; 12],
        head: 12,
        state: m.q0(),
    };
    let mut packed = tm_encode(m, &plain, "g", codec)?;
    for i in 0..steps {
        let next = match m.step(&plain) {
            Some(c) => c,
            None => return Ok(Some(format!("halted after {i} steps"))),
        };
        let via = m
            .step(&tm_decode(m, &packed, "g", codec)?)
            .ok_or_else(|| Error::Config("compressed run halted".into()))?;
        packed = tm_encode(m, &via, "g", codec)?;
        if via != next || packed != tm_encode(m, &next, "g", codec)? {
            return Ok(Some(format!(
                "step {}: {}",
                i + 1,
                m.render(&next).join(" ")
            )));
        }
        plain = next;
    }
    Ok(None)
}

/// The group families exercised by the suite.
pub fn sample_families() -> Vec<Family> {
    vec![
        Family::FreeAbelian { m: 1 },
        Family::FreeAbelian { m: 3 },
        Family::Free { m: 2 },
        Family::BaumslagSolitar { p: 1, q: 2 },
        Family::BaumslagSolitar { p: 2, q: 3 },
        Family::Semidirect {
            a: [[2, 1], [1, 1]],
        },
    ]
}

pub fn verify_groups(seed: u64, per_family: usize) -> SuiteReport {
    let codec = TowerCodec::new();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut checks = Vec::new();
    for f in sample_families() {
        let gens = f.generators();
        let half = gens.len() / 2;
        let mut bad = None;
        for _ in 0..per_family {
            let g = f.random_element(&mut rng, 40);
            let round = (|| -> Result<bool> {
                let std = f.encode_std(&g)?;
                let packed = f.encode_compressed(&g, &codec)?;
                let mut ok = f.decode_std(&std)? == g && f.decode_compressed(&packed, &codec)? == g;
                for i in 0..half {
                    ok &= f.act(&f.act(&g, &gens[i])?, &gens[i + half])? == g;
                }
                Ok(ok)
            })();
            if !matches!(round, Ok(true)) {
                bad.get_or_insert(format!("{g} ({round:?})"));
            }
        }
        checks.push(CheckResult::new(
            &f.name(),
            bad,
            format!("{per_family} random elements"),
        ));
    }
    SuiteReport {
        suite: "groups".into(),
        checks,
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn props_on_a_small_box() {
        let r = verify_props(16, 4);
        assert!(r.passed(), "{r}");
    }

    #[test]
    fn tm_and_groups_small() {
        let r = verify_tm(1, 200).unwrap();
        assert!(r.passed(), "{r}");
        let r = verify_groups(1, 200);
        assert!(r.passed(), "{r}");
    }

    #[test]
    fn unknown_suite() {
        assert!(run_suite("nope", 0).is_err());
    }
}
