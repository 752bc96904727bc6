use std::fmt;

use num_bigint::{BigInt, Sign};
use num_integer::Integer;
use num_traits::{Signed, Zero};
use rand::Rng;

use super::rate::{run_compressed_rate, tower_r_lower};
use super::tower_codec::TowerCodec;
use crate::error::{Error, Result};
use crate::towerpres::{r_enumerated, OrbitIndexer, OrbitWalker, TowerBound};

const PAD: &str = "⋄";

/// A finitely generated group with a fixed normal form.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Family {
    /// ℤ^m; `m = 1` is ℤ with generator `a`.
    FreeAbelian { m: usize },
    /// Free group on `a1, …, am`.
    Free { m: usize },
    /// `⟨a, t | t a^p t^{-1} = a^q⟩`.
    BaumslagSolitar { p: u32, q: u32 },
    /// ℤ² ⋊_A ℤ with `a z a^{-1} = A z`.
    Semidirect { a: [[i64; 2]; 2] },
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum NormalForm {
    /// Exponent vector.
    Abelian(Vec<i64>),
    /// Reduced word; letter `±(i+1)` is generator `i` or its inverse.
    Word(Vec<i32>),
    /// `a^{e_1} t^{ε_1} ⋯ a^{e_ℓ} t^{ε_ℓ} a^m`, factors left to right with
    /// `true` for `ε = +1`.
    Hnn {
        factors: Vec<(u32, bool)>,
        tail: BigInt,
    },
    /// `a^k z`.
    Lattice { k: i64, z: [i64; 2] },
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GroupElementNF {
    pub family: Family,
    pub nf: NormalForm,
}

impl fmt::Display for GroupElementNF {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let std = self.family.encode_std(self).map_err(|_| fmt::Error)?;
        if std.is_empty() {
            write!(f, "ε")
        } else {
            write!(f, "{}", std.join(" "))
        }
    }
}

fn gen_name(i: usize, m: usize) -> String {
    if m == 1 {
        "a".into()
    } else {
        format!("a{}", i + 1)
    }
}

fn inverse_name(name: &str) -> String {
    format!("{name}^{{-1}}")
}

fn overflow() -> Error {
    Error::NotRepresentable("lattice coordinate overflow".into())
}

impl Family {
    pub fn free_abelian(m: usize) -> Result<Self> {
        if m == 0 {
            return Err(Error::NormalForm("rank must be positive".into()));
        }
        Ok(Family::FreeAbelian { m })
    }

    pub fn free(m: usize) -> Result<Self> {
        if m == 0 {
            return Err(Error::NormalForm("rank must be positive".into()));
        }
        Ok(Family::Free { m })
    }

    pub fn baumslag_solitar(p: u32, q: u32) -> Result<Self> {
        if p == 0 || q < 2 {
            return Err(Error::NormalForm("need p ≥ 1 and q ≥ 2".into()));
        }
        Ok(Family::BaumslagSolitar { p, q })
    }

    pub fn semidirect(a: [[i64; 2]; 2]) -> Result<Self> {
        let det = a[0][0] * a[1][1] - a[0][1] * a[1][0];
        if det.abs() != 1 {
            return Err(Error::Matrix(format!("determinant {det} is not ±1")));
        }
        Ok(Family::Semidirect { a })
    }

    pub fn name(&self) -> String {
        match self {
            Family::FreeAbelian { m: 1 } => "Z".into(),
            Family::FreeAbelian { m } => format!("Z^{m}"),
            Family::Free { m } => format!("F{m}"),
            Family::BaumslagSolitar { p, q } => format!("BS({p},{q})"),
            Family::Semidirect { a } => {
                format!(
                    "Z^2 x_A Z, A=[[{},{}],[{},{}]]",
                    a[0][0], a[0][1], a[1][0], a[1][1]
                )
            }
        }
    }

    pub fn identity(&self) -> GroupElementNF {
        let nf = match self {
            Family::FreeAbelian { m } => NormalForm::Abelian(vec![0; *m]),
            Family::Free { .. } => NormalForm::Word(Vec::new()),
            Family::BaumslagSolitar { .. } => NormalForm::Hnn {
                factors: Vec::new(),
                tail: BigInt::zero(),
            },
            Family::Semidirect { .. } => NormalForm::Lattice { k: 0, z: [0, 0] },
        };
        GroupElementNF {
            family: self.clone(),
            nf,
        }
    }

    /// Generators followed by their inverses.
    pub fn generators(&self) -> Vec<String> {
        let base: Vec<String> = match self {
            Family::FreeAbelian { m } | Family::Free { m } => {
                (0..*m).map(|i| gen_name(i, *m)).collect()
            }
            Family::BaumslagSolitar { .. } => vec!["a".into(), "t".into()],
            Family::Semidirect { .. } => vec!["a".into(), "e1".into(), "e2".into()],
        };
        let inv: Vec<String> = base.iter().map(|g| inverse_name(g)).collect();
        base.into_iter().chain(inv).collect()
    }

    /// The generator whose nonnegative leading run is compressed.
    pub fn run_symbol(&self) -> String {
        match self {
            Family::FreeAbelian { m } | Family::Free { m } => gen_name(0, *m),
            Family::BaumslagSolitar { .. } => "t".into(),
            Family::Semidirect { .. } => "a".into(),
        }
    }

    /// Fewest standard symbols that can follow the run.
    fn min_rest(&self) -> usize {
        match self {
            Family::BaumslagSolitar { .. } => 1,
            _ => 0,
        }
    }

    fn own(&self, g: &GroupElementNF) -> Result<()> {
        if &g.family != self {
            return Err(Error::NormalForm(format!(
                "element of {} given to {}",
                g.family.name(),
                self.name()
            )));
        }
        self.validate(&g.nf)
    }

    /// Check the normal-form constraints of this family.
    pub fn validate(&self, nf: &NormalForm) -> Result<()> {
        match (self, nf) {
            (Family::FreeAbelian { m }, NormalForm::Abelian(v)) if v.len() == *m => Ok(()),
            (Family::Free { m }, NormalForm::Word(w)) => {
                if let Some(x) = w
                    .iter()
                    .find(|x| **x == 0 || x.unsigned_abs() as usize > *m)
                {
                    return Err(Error::NormalForm(format!("letter {x} out of range")));
                }
                if w.windows(2).any(|p| p[0] == -p[1]) {
                    return Err(Error::NormalForm("word is not reduced".into()));
                }
                Ok(())
            }
            (Family::BaumslagSolitar { p, q }, NormalForm::Hnn { factors, .. }) => {
                for (i, &(e, plus)) in factors.iter().enumerate() {
                    let bound = if plus { *q } else { *p };
                    if e >= bound {
                        return Err(Error::NormalForm(format!(
                            "factor {i} has a^{e}, bound {bound}"
                        )));
                    }
                    if i > 0 && factors[i - 1].1 != plus && e == 0 {
                        return Err(Error::NormalForm(format!("t-pinch at factor {i}")));
                    }
                }
                Ok(())
            }
            (Family::Semidirect { .. }, NormalForm::Lattice { .. }) => Ok(()),
            _ => Err(Error::NormalForm(format!(
                "payload does not belong to {}",
                self.name()
            ))),
        }
    }

    /// `g · x` for a generator or inverse generator `x`.
    pub fn act(&self, g: &GroupElementNF, x: &str) -> Result<GroupElementNF> {
        self.own(g)?;
        let gens = self.generators();
        let pos = gens.iter().position(|s| s == x).ok_or_else(|| {
            Error::NormalForm(format!("`{x}` is not a generator of {}", self.name()))
        })?;
        let half = gens.len() / 2;
        let (i, inv) = (pos % half, pos >= half);
        let nf = match (&g.nf, self) {
            (NormalForm::Abelian(v), _) => {
                let mut v = v.clone();
                v[i] = if inv {
                    v[i].checked_sub(1)
                } else {
                    v[i].checked_add(1)
                }
                .ok_or_else(overflow)?;
                NormalForm::Abelian(v)
            }
            (NormalForm::Word(w), _) => {
                let letter = if inv { -(i as i32 + 1) } else { i as i32 + 1 };
                let mut w = w.clone();
                if w.last() == Some(&-letter) {
                    w.pop();
                } else {
                    w.push(letter);
                }
                NormalForm::Word(w)
            }
            (NormalForm::Hnn { factors, tail }, Family::BaumslagSolitar { p, q }) => {
                let mut factors = factors.clone();
                let mut tail = tail.clone();
                if i == 0 {
                    tail += if inv { -1 } else { 1 };
                } else {
                    // a^m t = a^r t a^{ps} for m = qs + r, and symmetrically
                    let (into, out) = if inv { (*p, *q) } else { (*q, *p) };
                    let (s, r) = tail.div_mod_floor(&BigInt::from(into));
                    let pinch = r.is_zero() && factors.last().is_some_and(|f| f.1 == inv);
                    if pinch {
                        let (e, _) = factors.pop().expect("checked");
                        tail = BigInt::from(e) + s * out;
                    } else {
                        let r = u32::try_from(&r).expect("remainder below the base");
                        factors.push((r, !inv));
                        tail = s * out;
                    }
                }
                NormalForm::Hnn { factors, tail }
            }
            (NormalForm::Lattice { k, z }, Family::Semidirect { a }) => match i {
                0 => {
                    let m = if inv { *a } else { inverse(a) };
                    let k = if inv {
                        k.checked_sub(1)
                    } else {
                        k.checked_add(1)
                    }
                    .ok_or_else(overflow)?;
                    NormalForm::Lattice {
                        k,
                        z: apply(&m, z)?,
                    }
                }
                _ => {
                    let mut z = *z;
                    let c = &mut z[i - 1];
                    *c = if inv {
                        c.checked_sub(1)
                    } else {
                        c.checked_add(1)
                    }
                    .ok_or_else(overflow)?;
                    NormalForm::Lattice { k: *k, z }
                }
            },
            _ => unreachable!("validated"),
        };
        Ok(GroupElementNF {
            family: self.clone(),
            nf,
        })
    }

    /// Product of generator letters, read left to right from the identity.
    pub fn eval(&self, word: &[&str]) -> Result<GroupElementNF> {
        word.iter()
            .try_fold(self.identity(), |g, x| self.act(&g, x))
    }

    /// An element reached by a random walk of at most `max_steps` generators.
    pub fn random_element(&self, rng: &mut impl Rng, max_steps: usize) -> GroupElementNF {
        let gens = self.generators();
        let steps = rng.gen_range(0..=max_steps);
        let mut g = self.identity();
        for _ in 0..steps {
            let x = &gens[rng.gen_range(0..gens.len())];
            match self.act(&g, x) {
                Ok(h) => g = h,
                Err(_) => break,
            }
        }
        g
    }

    /// The standard string: unary runs for exponents, reduced words, the
    /// factor sequence plus a base-`q` tail, or `a^k` plus a lattice code.
    pub fn encode_std(&self, g: &GroupElementNF) -> Result<Vec<String>> {
        self.own(g)?;
        let mut out = Vec::new();
        let push_run = |out: &mut Vec<String>, name: &str, e: i64| {
            let tok = if e < 0 {
                inverse_name(name)
            } else {
                name.to_string()
            };
            out.extend(std::iter::repeat_n(tok, e.unsigned_abs() as usize));
        };
        match (&g.nf, self) {
            (NormalForm::Abelian(v), Family::FreeAbelian { m }) => {
                for (i, &e) in v.iter().enumerate() {
                    push_run(&mut out, &gen_name(i, *m), e);
                }
            }
            (NormalForm::Word(w), Family::Free { m }) => {
                for &x in w {
                    let name = gen_name(x.unsigned_abs() as usize - 1, *m);
                    out.push(if x < 0 { inverse_name(&name) } else { name });
                }
            }
            (NormalForm::Hnn { factors, tail }, Family::BaumslagSolitar { q, .. }) => {
                for &(e, plus) in factors {
                    out.extend(std::iter::repeat_n("a".to_string(), e as usize));
                    out.push(if plus { "t".into() } else { "t^{-1}".into() });
                }
                out.extend(tail_digits(tail, *q));
            }
            (NormalForm::Lattice { k, z }, Family::Semidirect { .. }) => {
                push_run(&mut out, "a", *k);
                out.extend(lattice_code(z));
            }
            _ => unreachable!("validated"),
        }
        Ok(out)
    }

    /// Inverse of [`encode_std`](Self::encode_std); rejects strings that are
    /// not normal forms.
    pub fn decode_std(&self, tokens: &[String]) -> Result<GroupElementNF> {
        let bad = |why: &str| Error::NormalForm(why.to_string());
        let nf = match self {
            Family::FreeAbelian { m } => {
                let mut v = vec![0i64; *m];
                let mut at = 0;
                for (i, vi) in v.iter_mut().enumerate() {
                    let name = gen_name(i, *m);
                    let inv = inverse_name(&name);
                    let start = at;
                    while at < tokens.len() && tokens[at] == name {
                        at += 1;
                    }
                    if at == start {
                        while at < tokens.len() && tokens[at] == inv {
                            at += 1;
                        }
                        *vi = -((at - start) as i64);
                    } else {
                        *vi = (at - start) as i64;
                    }
                }
                if at != tokens.len() {
                    return Err(bad("generators out of order or mixed signs"));
                }
                NormalForm::Abelian(v)
            }
            Family::Free { m } => {
                let mut w = Vec::with_capacity(tokens.len());
                for t in tokens {
                    let x = (0..*m)
                        .find_map(|i| {
                            let name = gen_name(i, *m);
                            if *t == name {
                                Some(i as i32 + 1)
                            } else if *t == inverse_name(&name) {
                                Some(-(i as i32 + 1))
                            } else {
                                None
                            }
                        })
                        .ok_or_else(|| bad("unknown letter"))?;
                    w.push(x);
                }
                NormalForm::Word(w)
            }
            Family::BaumslagSolitar { q, .. } => {
                let mut factors = Vec::new();
                let mut at = 0;
                loop {
                    let start = at;
                    while at < tokens.len() && tokens[at] == "a" {
                        at += 1;
                    }
                    let e = (at - start) as u32;
                    match tokens.get(at).map(String::as_str) {
                        Some("t") => factors.push((e, true)),
                        Some("t^{-1}") => factors.push((e, false)),
                        _ if e > 0 => return Err(bad("a-run without a following t")),
                        _ => break,
                    }
                    at += 1;
                }
                NormalForm::Hnn {
                    factors,
                    tail: parse_tail(&tokens[at..], *q)?,
                }
            }
            Family::Semidirect { .. } => {
                let negative = tokens.first().map(String::as_str) == Some("a^{-1}");
                let letter = if negative { "a^{-1}" } else { "a" };
                let at = tokens.iter().take_while(|t| *t == letter).count();
                let k = if negative { -(at as i64) } else { at as i64 };
                NormalForm::Lattice {
                    k,
                    z: parse_lattice(&tokens[at..])?,
                }
            }
        };
        self.validate(&nf)?;
        Ok(GroupElementNF {
            family: self.clone(),
            nf,
        })
    }

    /// `u_k w'` where the standard string is `x^k w'` for the run symbol `x`
    /// and `k ≥ 0` is maximal; strings opening with `x^{-1}` are unchanged.
    pub fn encode_compressed(&self, g: &GroupElementNF, codec: &TowerCodec) -> Result<Vec<String>> {
        let std = self.encode_std(g)?;
        let run = self.run_symbol();
        if std.first() == Some(&inverse_name(&run)) {
            return Ok(std);
        }
        let k = std.iter().take_while(|t| **t == run).count();
        let mut out = codec.encode(k as u64)?;
        out.extend_from_slice(&std[k..]);
        Ok(out)
    }

    pub fn decode_compressed(
        &self,
        tokens: &[String],
        codec: &TowerCodec,
    ) -> Result<GroupElementNF> {
        let run = self.run_symbol();
        match tokens.first() {
            Some(t) if codec.is_tower_symbol(t) => {
                let (k, rest) = codec.decode_prefix(tokens)?;
                if rest.first() == Some(&run) {
                    return Err(Error::NormalForm("run continues after u_k".into()));
                }
                let mut std = vec![run; k as usize];
                std.extend_from_slice(rest);
                self.decode_std(&std)
            }
            Some(t) if *t == inverse_name(&run) => self.decode_std(tokens),
            _ => Err(Error::NormalForm("missing tower-encoded prefix".into())),
        }
    }

    /// Lower bound on the compression rate of this family's compressed
    /// strings against its standard ones.
    pub fn s_lower(&self, n: usize, walker: Option<&OrbitWalker>, bit_budget: u64) -> TowerBound {
        let mut ix = OrbitIndexer::new(bit_budget);
        run_compressed_rate(n, self.min_rest(), |j| tower_r_lower(j, walker, &mut ix))
    }

    /// The same rate with each `r(j)` measured by enumerating tower strings.
    pub fn s_measured(&self, n: usize, bit_budget: u64) -> TowerBound {
        run_compressed_rate(n, self.min_rest(), |j| r_enumerated(j, bit_budget).0)
    }
}

fn inverse(a: &[[i64; 2]; 2]) -> [[i64; 2]; 2] {
    // 1/det = det for det = ±1
    let det = a[0][0] * a[1][1] - a[0][1] * a[1][0];
    [
        [det * a[1][1], -det * a[0][1]],
        [-det * a[1][0], det * a[0][0]],
    ]
}

fn apply(a: &[[i64; 2]; 2], z: &[i64; 2]) -> Result<[i64; 2]> {
    let row = |r: &[i64; 2]| {
        r[0].checked_mul(z[0])
            .and_then(|x| r[1].checked_mul(z[1]).and_then(|y| x.checked_add(y)))
            .ok_or_else(overflow)
    };
    Ok([row(&a[0])?, row(&a[1])?])
}

/// LSB-first base-`q` digits of `|m|`, preceded by `-` when `m < 0`.
fn tail_digits(m: &BigInt, q: u32) -> Vec<String> {
    let mut out = Vec::new();
    if m.is_negative() {
        out.push("-".into());
    }
    if m.is_zero() {
        out.push("0".into());
    } else {
        out.extend(
            m.magnitude()
                .to_radix_le(q)
                .into_iter()
                .map(|d| d.to_string()),
        );
    }
    out
}

fn parse_tail(tokens: &[String], q: u32) -> Result<BigInt> {
    let bad = |why: &str| Error::NormalForm(format!("tail: {why}"));
    let (negative, digits) = match tokens.split_first() {
        Some((s, rest)) if s == "-" => (true, rest),
        _ => (false, tokens),
    };
    if digits.is_empty() {
        return Err(bad("no digits"));
    }
    let mut ds = Vec::with_capacity(digits.len());
    for d in digits {
        let v: u32 = d.parse().map_err(|_| bad("not a digit"))?;
        if v >= q || d.starts_with('+') || (d.len() > 1 && d.starts_with('0')) {
            return Err(bad("digit out of range"));
        }
        ds.push(v as u8);
    }
    if ds.len() > 1 && ds.last() == Some(&0) {
        return Err(bad("trailing zero digit"));
    }
    if negative && ds == [0] {
        return Err(bad("negative zero"));
    }
    let mag = num_bigint::BigUint::from_radix_le(&ds, q).ok_or_else(|| bad("digits"))?;
    Ok(BigInt::from_biguint(
        if negative { Sign::Minus } else { Sign::Plus },
        mag,
    ))
}

fn signed_track(x: i64) -> Vec<&'static str> {
    let mut out = vec![if x < 0 { "-" } else { "+" }];
    let mut m = x.unsigned_abs();
    if m == 0 {
        out.push("0");
    }
    while m > 0 {
        out.push(if m & 1 == 1 { "1" } else { "0" });
        m >>= 1;
    }
    out
}

/// Two-track convolution of sign-and-magnitude LSB-first binary; the origin
/// is the empty string.
fn lattice_code(z: &[i64; 2]) -> Vec<String> {
    if *z == [0, 0] {
        return Vec::new();
    }
    let (x, y) = (signed_track(z[0]), signed_track(z[1]));
    (0..x.len().max(y.len()))
        .map(|i| {
            format!(
                "({},{})",
                x.get(i).unwrap_or(&PAD),
                y.get(i).unwrap_or(&PAD)
            )
        })
        .collect()
}

fn parse_lattice(tokens: &[String]) -> Result<[i64; 2]> {
    let bad = |why: &str| Error::NormalForm(format!("lattice code: {why}"));
    if tokens.is_empty() {
        return Ok([0, 0]);
    }
    let mut tracks: [Vec<&str>; 2] = [Vec::new(), Vec::new()];
    let mut ended = [false; 2];
    for t in tokens {
        let inner = t
            .strip_prefix('(')
            .and_then(|s| s.strip_suffix(')'))
            .ok_or_else(|| bad("not a column"))?;
        let (a, b) = inner.split_once(',').ok_or_else(|| bad("not a column"))?;
        if a == PAD && b == PAD {
            return Err(bad("all-pad column"));
        }
        for (i, s) in [a, b].into_iter().enumerate() {
            if s == PAD {
                ended[i] = true;
            } else if ended[i] {
                return Err(bad("symbol after padding"));
            } else {
                tracks[i].push(s);
            }
        }
    }
    let mut z = [0i64; 2];
    for (i, tr) in tracks.iter().enumerate() {
        let (sign, bits) = tr.split_first().ok_or_else(|| bad("empty track"))?;
        let negative = match *sign {
            "+" => false,
            "-" => true,
            _ => return Err(bad("missing sign")),
        };
        if bits.is_empty() || bits.iter().any(|b| *b != "0" && *b != "1") {
            return Err(bad("bits"));
        }
        if bits.len() > 1 && bits.last() == Some(&"0") {
            return Err(bad("trailing zero bit"));
        }
        if bits.len() > 63 {
            return Err(overflow());
        }
        let m = bits
            .iter()
            .rev()
            .fold(0i64, |acc, b| acc * 2 + i64::from(*b == "1"));
        if negative && m == 0 {
            return Err(bad("negative zero"));
        }
        z[i] = if negative { -m } else { m };
    }
    Ok(z)
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    fn toks(s: &str) -> Vec<String> {
        s.split_whitespace().map(String::from).collect()
    }

    #[test]
    fn free_group_example() {
        let f = Family::free(2).unwrap();
        let codec = TowerCodec::new();
        let g = f.eval(&["a1", "a1", "a1", "a2", "a1^{-1}"]).unwrap();
        assert_eq!(f.encode_std(&g).unwrap(), toks("a1 a1 a1 a2 a1^{-1}"));
        let mut expect = codec.encode(3).unwrap();
        expect.extend(toks("a2 a1^{-1}"));
        assert_eq!(f.encode_compressed(&g, &codec).unwrap(), expect);
        let h = f.eval(&["a1", "a2", "a2^{-1}"]).unwrap();
        assert_eq!(f.encode_std(&h).unwrap(), toks("a1"));
    }

    #[test]
    fn integers_keep_negative_runs() {
        let z = Family::free_abelian(1).unwrap();
        let codec = TowerCodec::new();
        let g = z.eval(&["a^{-1}", "a^{-1}"]).unwrap();
        let std = z.encode_std(&g).unwrap();
        assert_eq!(std, toks("a^{-1} a^{-1}"));
        assert_eq!(z.encode_compressed(&g, &codec).unwrap(), std);
        assert_eq!(z.decode_compressed(&std, &codec).unwrap(), g);
        assert_eq!(
            z.encode_compressed(&z.identity(), &codec).unwrap(),
            codec.encode(0).unwrap()
        );
    }

    #[test]
    fn baumslag_solitar_relation() {
        let bs = Family::baumslag_solitar(1, 2).unwrap();
        let g = bs.eval(&["a"; 5]).unwrap();
        assert_eq!(bs.encode_std(&g).unwrap(), toks("1 0 1"));
        // t a t^{-1} = a^2
        assert_eq!(
            bs.eval(&["t", "a", "t^{-1}"]).unwrap(),
            bs.eval(&["a", "a"]).unwrap()
        );
        let bs = Family::baumslag_solitar(2, 3).unwrap();
        assert_eq!(
            bs.eval(&["t", "a", "a", "t^{-1}"]).unwrap(),
            bs.eval(&["a"; 3]).unwrap()
        );
        let g = bs.eval(&["a", "t", "t"]).unwrap();
        assert_eq!(bs.encode_std(&g).unwrap(), toks("a t t 0"));
        let g = bs.eval(&["a", "a", "a", "a", "t^{-1}"]).unwrap();
        assert_eq!(bs.encode_std(&g).unwrap(), toks("t^{-1} 0 2"));
    }

    #[test]
    fn semidirect_actions() {
        let id = Family::semidirect([[1, 0], [0, 1]]).unwrap();
        let g = id.eval(&["a", "a", "e1"]).unwrap();
        let h = id.act(&g, "a").unwrap();
        assert_eq!(h.nf, NormalForm::Lattice { k: 3, z: [1, 0] });
        let sd = Family::semidirect([[2, 1], [1, 1]]).unwrap();
        // a e1 a^{-1} = A e1
        let g = sd.eval(&["a", "e1", "a^{-1}"]).unwrap();
        assert_eq!(g.nf, NormalForm::Lattice { k: 0, z: [2, 1] });
        assert_eq!(sd.encode_std(&g).unwrap(), toks("(+,+) (0,1) (1,⋄)"));
        assert_eq!(sd.encode_std(&sd.identity()).unwrap(), Vec::<String>::new());
        assert!(Family::semidirect([[2, 0], [0, 1]]).is_err());
    }

    #[test]
    fn round_trips_and_inverses() {
        let codec = TowerCodec::new();
        let families = [
            Family::free_abelian(1).unwrap(),
            Family::free_abelian(3).unwrap(),
            Family::free(2).unwrap(),
            Family::baumslag_solitar(1, 2).unwrap(),
            Family::baumslag_solitar(2, 3).unwrap(),
            Family::semidirect([[2, 1], [1, 1]]).unwrap(),
        ];
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        for f in &families {
            for _ in 0..300 {
                let g = f.random_element(&mut rng, 30);
                let std = f.encode_std(&g).unwrap();
                assert_eq!(f.decode_std(&std).unwrap(), g);
                let c = f.encode_compressed(&g, &codec).unwrap();
                assert_eq!(f.decode_compressed(&c, &codec).unwrap(), g);
                for (x, y) in f
                    .generators()
                    .iter()
                    .zip(f.generators().iter().skip(f.generators().len() / 2))
                {
                    let back = f.act(&f.act(&g, x).unwrap(), y).unwrap();
                    assert_eq!(back, g, "{} {x}", f.name());
                }
            }
        }
    }

    #[test]
    fn rates() {
        let budget = crate::towerpres::DEFAULT_BIT_BUDGET;
        let z = Family::free_abelian(1).unwrap();
        assert_eq!(z.s_lower(0, None, budget), TowerBound::from(0));
        assert!(z.s_lower(3, None, budget).at_least_tower(3));
        assert_eq!(z.s_measured(3, budget), r_enumerated(3, budget).0);
        let bs = Family::baumslag_solitar(1, 2).unwrap();
        assert_eq!(bs.s_measured(2, budget), TowerBound::from(8));
    }
}
