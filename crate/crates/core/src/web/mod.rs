//! Sliced MOY webs and their evaluation for gl(N).
//!
//! A web is a bottom profile plus a sequence of steps, each one elementary
//! generator acting on consecutive strands (identity elsewhere). Strands
//! carry a label `1..` and an orientation. The state space of an upward
//! `k`-labelled strand has basis the `k`-subsets `S` of `{1..N}` (bitmasks),
//! of q-degree `w(S) = sum_{s in S} (N + 1 - 2s)`; a downward strand carries
//! the dual basis.

pub mod checks;
pub mod crossing;
pub mod invariant;
pub mod slicing;

use std::collections::BTreeMap;
use std::fmt;

use crate::error::{Error, Result};
use crate::qpoly::LaurentPoly;

pub use crossing::{crossing_expansion, Gauge, GaugeConfig};
pub use invariant::{det_slide_check, framing_factor, rt_invariant, skein_check};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Dir {
    Up,
    Down,
}

impl Dir {
    pub fn flip(self) -> Self {
        match self {
            Dir::Up => Dir::Down,
            Dir::Down => Dir::Up,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Strand {
    pub label: u32,
    pub dir: Dir,
}

impl Strand {
    pub fn up(label: u32) -> Self {
        Self { label, dir: Dir::Up }
    }
    pub fn down(label: u32) -> Self {
        Self { label, dir: Dir::Down }
    }
    pub fn dual(self) -> Self {
        Self { label: self.label, dir: self.dir.flip() }
    }
}

pub type Profile = Vec<Strand>;

/// Elementary generators. `Cup`/`Cap` have profile `[up, down]`, the
/// reversed versions `[down, up]`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Gen {
    Id(u32),
    IdR(u32),
    Merge(u32, u32),
    Split(u32, u32),
    Cup(u32),
    CupR(u32),
    Cap(u32),
    CapR(u32),
    /// `1 -> e_{1..N}` on an `N`-labelled upward strand.
    DetIn(u32),
    /// `e_{1..N} -> 1`.
    DetOut(u32),
}

impl Gen {
    pub fn inputs(&self) -> Profile {
        use Gen::*;
        match *self {
            Id(a) => vec![Strand::up(a)],
            IdR(a) => vec![Strand::down(a)],
            Merge(a, b) => vec![Strand::up(a), Strand::up(b)],
            Split(a, b) => vec![Strand::up(a + b)],
            Cup(_) | CupR(_) | DetIn(_) => vec![],
            Cap(a) => vec![Strand::up(a), Strand::down(a)],
            CapR(a) => vec![Strand::down(a), Strand::up(a)],
            DetOut(n) => vec![Strand::up(n)],
        }
    }

    pub fn outputs(&self) -> Profile {
        use Gen::*;
        match *self {
            Id(a) => vec![Strand::up(a)],
            IdR(a) => vec![Strand::down(a)],
            Merge(a, b) => vec![Strand::up(a + b)],
            Split(a, b) => vec![Strand::up(a), Strand::up(b)],
            Cup(a) => vec![Strand::up(a), Strand::down(a)],
            CupR(a) => vec![Strand::down(a), Strand::up(a)],
            Cap(_) | CapR(_) | DetOut(_) => vec![],
            DetIn(n) => vec![Strand::up(n)],
        }
    }

    pub fn labels(&self) -> Vec<u32> {
        use Gen::*;
        match *self {
            Merge(a, b) | Split(a, b) => vec![a, b, a + b],
            Id(a) | IdR(a) | Cup(a) | CupR(a) | Cap(a) | CapR(a) | DetIn(a) | DetOut(a) => vec![a],
        }
    }

    fn identity_for(s: Strand) -> Gen {
        match s.dir {
            Dir::Up => Gen::Id(s.label),
            Dir::Down => Gen::IdR(s.label),
        }
    }
}

impl fmt::Display for Gen {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        use Gen::*;
        match *self {
            Id(a) => write!(f, "id({a})"),
            IdR(a) => write!(f, "idr({a})"),
            Merge(a, b) => write!(f, "merge({a},{b})"),
            Split(a, b) => write!(f, "split({a},{b})"),
            Cup(a) => write!(f, "cup({a})"),
            CupR(a) => write!(f, "cupr({a})"),
            Cap(a) => write!(f, "cap({a})"),
            CapR(a) => write!(f, "capr({a})"),
            DetIn(a) => write!(f, "detin({a})"),
            DetOut(a) => write!(f, "detout({a})"),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct Step {
    pub offset: usize,
    pub gen: Gen,
}

#[derive(Clone, Debug, PartialEq, Eq, Hash, Default)]
pub struct SlicedWeb {
    bottom: Profile,
    steps: Vec<Step>,
    top: Profile,
}

impl SlicedWeb {
    pub fn new(bottom: Profile) -> Self {
        Self { top: bottom.clone(), bottom, steps: Vec::new() }
    }

    pub fn closed() -> Self {
        Self::new(Vec::new())
    }

    pub fn bottom(&self) -> &Profile {
        &self.bottom
    }

    pub fn top(&self) -> &Profile {
        &self.top
    }

    pub fn steps(&self) -> &[Step] {
        &self.steps
    }

    pub fn is_closed(&self) -> bool {
        self.bottom.is_empty() && self.top.is_empty()
    }

    pub fn max_label(&self) -> u32 {
        let b = self.bottom.iter().map(|s| s.label);
        let g = self.steps.iter().flat_map(|s| s.gen.labels());
        b.chain(g).max().unwrap_or(0)
    }

    /// Appends a generator at `offset`, checking it against the current top.
    pub fn push(&mut self, offset: usize, gen: Gen) -> Result<()> {
        let ins = gen.inputs();
        if gen.labels().contains(&0) {
            return Err(Error::InvalidArgument(format!("{gen} has a zero label")));
        }
        if offset + ins.len() > self.top.len() || self.top[offset..offset + ins.len()] != ins[..] {
            return Err(Error::ProfileMismatch(format!("{gen} at position {offset} does not fit profile {}", profile_string(&self.top))));
        }
        self.top.splice(offset..offset + ins.len(), gen.outputs());
        self.steps.push(Step { offset, gen });
        Ok(())
    }

    /// Vertical composition: `self` followed by `above`, which is placed at
    /// `offset` within the current top profile.
    pub fn then_at(&mut self, offset: usize, above: &SlicedWeb) -> Result<()> {
        let n = above.bottom.len();
        if offset + n > self.top.len() || self.top[offset..offset + n] != above.bottom[..] {
            return Err(Error::ProfileMismatch(format!("cannot stack {} at {offset} onto {}", profile_string(&above.bottom), profile_string(&self.top))));
        }
        for s in &above.steps {
            self.push(offset + s.offset, s.gen)?;
        }
        Ok(())
    }

    pub fn then(&mut self, above: &SlicedWeb) -> Result<()> {
        if above.bottom != self.top {
            return Err(Error::ProfileMismatch(format!("cannot stack {} onto {}", profile_string(&above.bottom), profile_string(&self.top))));
        }
        self.then_at(0, above)
    }

    /// Layers for display: each step padded with identities.
    pub fn layers(&self) -> Vec<Vec<Gen>> {
        let mut prof = self.bottom.clone();
        let mut out = Vec::new();
        for s in &self.steps {
            let ins = s.gen.inputs().len();
            let mut layer: Vec<Gen> = prof[..s.offset].iter().map(|&x| Gen::identity_for(x)).collect();
            layer.push(s.gen);
            layer.extend(prof[s.offset + ins..].iter().map(|&x| Gen::identity_for(x)));
            prof.splice(s.offset..s.offset + ins, s.gen.outputs());
            out.push(layer);
        }
        out
    }

    /// Parses the layer format, e.g. `cup(1); split(1,1) idr(2); merge(1,1) idr(2); cap(2)`.
    /// Layers are separated by `;`, generators within a layer by whitespace
    /// and cover the whole current profile from left to right.
    pub fn parse(text: &str) -> Result<SlicedWeb> {
        let mut layers: Vec<Vec<Gen>> = Vec::new();
        for seg in text.split(';') {
            let seg = seg.trim();
            if seg.is_empty() {
                continue;
            }
            let mut gens = Vec::new();
            let mut rest = seg;
            while !rest.trim_start().is_empty() {
                rest = rest.trim_start();
                let close = rest.find(')').ok_or_else(|| Error::Parse(format!("unterminated generator in {seg:?}")))?;
                gens.push(parse_gen(&rest[..=close])?);
                rest = &rest[close + 1..];
            }
            layers.push(gens);
        }
        let bottom: Profile = layers.first().map(|l| l.iter().flat_map(Gen::inputs).collect()).unwrap_or_default();
        let mut web = SlicedWeb::new(bottom);
        for layer in layers {
            let want: Profile = layer.iter().flat_map(Gen::inputs).collect();
            if want != web.top {
                return Err(Error::ProfileMismatch(format!("layer expects {} but profile is {}", profile_string(&want), profile_string(&web.top))));
            }
            let mut offset = 0;
            for g in layer {
                let outs = g.outputs().len();
                if !matches!(g, Gen::Id(_) | Gen::IdR(_)) {
                    web.push(offset, g)?;
                }
                offset += outs;
            }
        }
        Ok(web)
    }
}

impl std::str::FromStr for SlicedWeb {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        SlicedWeb::parse(s)
    }
}

fn parse_gen(tok: &str) -> Result<Gen> {
    let open = tok.find('(').ok_or_else(|| Error::Parse(format!("bad generator {tok:?}")))?;
    let name = tok[..open].trim();
    let args: Vec<u32> = tok[open + 1..tok.len() - 1]
        .split(',')
        .map(|a| a.trim().parse::<u32>().map_err(|_| Error::Parse(format!("bad label in {tok:?}"))))
        .collect::<Result<_>>()?;
    let one = |g: fn(u32) -> Gen| -> Result<Gen> {
        match args[..] {
            [a] => Ok(g(a)),
            _ => Err(Error::Parse(format!("{name} takes one label"))),
        }
    };
    let two = |g: fn(u32, u32) -> Gen| -> Result<Gen> {
        match args[..] {
            [a, b] => Ok(g(a, b)),
            _ => Err(Error::Parse(format!("{name} takes two labels"))),
        }
    };
    match name {
        "id" => one(Gen::Id),
        "idr" => one(Gen::IdR),
        "cup" => one(Gen::Cup),
        "cupr" => one(Gen::CupR),
        "cap" => one(Gen::Cap),
        "capr" => one(Gen::CapR),
        "detin" => one(Gen::DetIn),
        "detout" => one(Gen::DetOut),
        "merge" => two(Gen::Merge),
        "split" => two(Gen::Split),
        _ => Err(Error::Parse(format!("unknown generator {name:?}"))),
    }
}

pub fn profile_string(p: &[Strand]) -> String {
    let parts: Vec<String> = p.iter().map(|s| format!("{}{}", s.label, if s.dir == Dir::Up { "^" } else { "v" })).collect();
    format!("[{}]", parts.join(","))
}

impl fmt::Display for SlicedWeb {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let layers: Vec<String> = self.layers().iter().map(|l| l.iter().map(Gen::to_string).collect::<Vec<_>>().join(" ")).collect();
        write!(f, "{}", layers.join("; "))
    }
}

/// Formal combination of webs sharing boundary profiles.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct WebLinearCombo {
    pub terms: Vec<(LaurentPoly, SlicedWeb)>,
}

impl WebLinearCombo {
    pub fn push(&mut self, c: LaurentPoly, w: SlicedWeb) -> Result<()> {
        if let Some((_, first)) = self.terms.first() {
            if first.bottom() != w.bottom() || first.top() != w.top() {
                return Err(Error::ProfileMismatch("terms of a combination must share boundaries".into()));
            }
        }
        if !c.is_zero() {
            self.terms.push((c, w));
        }
        Ok(())
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }
}

// ---------------------------------------------------------------------------
// State model

/// q-degree of a subset of `{1..N}` given as a bitmask (bit `i` is `i+1`).
pub fn weight(mask: u32, n: u32) -> i64 {
    (0..n).filter(|i| mask & (1 << i) != 0).map(|i| n as i64 - 1 - 2 * i as i64).sum()
}

/// `#{(x, y) in X x Y : x > y}`.
pub fn inversions(x: u32, y: u32) -> i64 {
    let mut total = 0i64;
    let mut xs = x;
    while xs != 0 {
        let b = xs.trailing_zeros();
        total += (y & ((1u32 << b) - 1)).count_ones() as i64;
        xs &= xs - 1;
    }
    total
}

/// All `k`-subsets of `{1..N}` in increasing bitmask order.
pub fn subsets(n: u32, k: u32) -> Vec<u32> {
    if k > n {
        return Vec::new();
    }
    (0u32..(1 << n)).filter(|m| m.count_ones() == k).collect()
}

fn submasks_of_size(s: u32, k: u32) -> impl Iterator<Item = u32> {
    let mut sub = s;
    let mut done = false;
    std::iter::from_fn(move || loop {
        if done {
            return None;
        }
        let cur = sub;
        if sub == 0 {
            done = true;
        } else {
            sub = (sub - 1) & s;
        }
        if cur.count_ones() == k {
            return Some(cur);
        }
    })
}

/// Local action of a generator on a basis state as `(outputs, q exponent)` pairs.
fn gen_action(gen: Gen, n: u32, input: &[u32]) -> Vec<(Vec<u32>, i64)> {
    use Gen::*;
    let full = if n == 32 { u32::MAX } else { (1u32 << n) - 1 };
    match gen {
        Id(_) | IdR(_) => vec![(input.to_vec(), 0)],
        Merge(_, _) => {
            let (a, b) = (input[0], input[1]);
            if a & b != 0 {
                Vec::new()
            } else {
                vec![(vec![a | b], -inversions(b, a))]
            }
        }
        Split(a, _) => {
            let s = input[0];
            let mut out: Vec<(Vec<u32>, i64)> = submasks_of_size(s, a).map(|x| (vec![x, s & !x], inversions(x, s & !x))).collect();
            out.sort();
            out
        }
        Cup(k) => subsets(n, k).into_iter().map(|s| (vec![s, s], 0)).collect(),
        CupR(k) => subsets(n, k).into_iter().map(|s| (vec![s, s], weight(s, n))).collect(),
        Cap(_) => {
            if input[0] == input[1] {
                vec![(Vec::new(), -weight(input[0], n))]
            } else {
                Vec::new()
            }
        }
        CapR(_) => {
            if input[0] == input[1] {
                vec![(Vec::new(), 0)]
            } else {
                Vec::new()
            }
        }
        DetIn(_) => vec![(vec![full], 0)],
        DetOut(_) => {
            if input[0] == full {
                vec![(Vec::new(), 0)]
            } else {
                Vec::new()
            }
        }
    }
}

/// A vector in the tensor product of strand state spaces.
pub type StateVec = BTreeMap<Vec<u32>, LaurentPoly>;

fn check_rank(web: &SlicedWeb, n: u32) -> Result<()> {
    if n == 0 || n > 30 {
        return Err(Error::InvalidArgument(format!("rank {n} out of supported range 1..=30")));
    }
    for s in &web.steps {
        if let Gen::DetIn(k) | Gen::DetOut(k) = s.gen {
            if k != n {
                return Err(Error::InvalidArgument(format!("{} needs label N = {n}", s.gen)));
            }
        }
    }
    Ok(())
}

/// Applies one step to a state vector.
pub fn apply_step(v: &StateVec, step: &Step, n: u32) -> StateVec {
    let k = step.gen.inputs().len();
    let mut out = StateVec::new();
    for (state, c) in v {
        let local = &state[step.offset..step.offset + k];
        for (outs, e) in gen_action(step.gen, n, local) {
            let mut ns = Vec::with_capacity(state.len() + outs.len() - k);
            ns.extend_from_slice(&state[..step.offset]);
            ns.extend_from_slice(&outs);
            ns.extend_from_slice(&state[step.offset + k..]);
            let term = c.shift(crate::qpoly::Exponent::from_integer(e));
            let slot = out.entry(ns).or_default();
            *slot += &term;
        }
    }
    out.retain(|_, c| !c.is_zero());
    out
}

/// Runs `v` through all steps of the web.
pub fn apply_web(web: &SlicedWeb, v: StateVec, n: u32) -> Result<StateVec> {
    check_rank(web, n)?;
    if web.max_label() > n {
        return Ok(StateVec::new());
    }
    let mut cur = v;
    for s in &web.steps {
        cur = apply_step(&cur, s, n);
        if cur.is_empty() {
            break;
        }
    }
    Ok(cur)
}

/// All basis states of a profile.
pub fn profile_states(p: &[Strand], n: u32) -> Vec<Vec<u32>> {
    let mut out: Vec<Vec<u32>> = vec![Vec::new()];
    for s in p {
        let subs = subsets(n, s.label);
        out = out
            .into_iter()
            .flat_map(|pre| {
                subs.iter().map(move |&m| {
                    let mut v = pre.clone();
                    v.push(m);
                    v
                })
            })
            .collect();
    }
    out
}

/// Matrix of an open web: entries keyed by `(input state, output state)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct WebOperator {
    pub input: Profile,
    pub output: Profile,
    pub entries: BTreeMap<(Vec<u32>, Vec<u32>), LaurentPoly>,
}

impl WebOperator {
    pub fn identity(p: &[Strand], n: u32) -> Self {
        let entries = profile_states(p, n).into_iter().map(|s| ((s.clone(), s), LaurentPoly::one())).collect();
        Self { input: p.to_vec(), output: p.to_vec(), entries }
    }

    pub fn is_zero(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn scale(&self, c: &LaurentPoly) -> Self {
        let mut entries = BTreeMap::new();
        for (k, v) in &self.entries {
            let x = v * c;
            if !x.is_zero() {
                entries.insert(k.clone(), x);
            }
        }
        Self { input: self.input.clone(), output: self.output.clone(), entries }
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        if self.input != other.input || self.output != other.output {
            return Err(Error::ProfileMismatch("operator shapes differ".into()));
        }
        let mut entries = self.entries.clone();
        for (k, v) in &other.entries {
            let slot = entries.entry(k.clone()).or_default();
            *slot += v;
        }
        entries.retain(|_, v| !v.is_zero());
        Ok(Self { input: self.input.clone(), output: self.output.clone(), entries })
    }

    pub fn sub(&self, other: &Self) -> Result<Self> {
        self.add(&other.scale(&LaurentPoly::from_int(-1)))
    }

    /// `self ∘ inner`.
    pub fn compose(&self, inner: &Self) -> Result<Self> {
        if inner.output != self.input {
            return Err(Error::ProfileMismatch("operator composition shapes differ".into()));
        }
        let mut by_input: BTreeMap<&Vec<u32>, Vec<(&Vec<u32>, &LaurentPoly)>> = BTreeMap::new();
        for ((i, o), c) in &self.entries {
            by_input.entry(i).or_default().push((o, c));
        }
        let mut entries: BTreeMap<(Vec<u32>, Vec<u32>), LaurentPoly> = BTreeMap::new();
        for ((i, mid), c) in &inner.entries {
            if let Some(outs) = by_input.get(mid) {
                for (o, d) in outs {
                    let slot = entries.entry((i.clone(), (*o).clone())).or_default();
                    *slot += &(c * *d);
                }
            }
        }
        entries.retain(|_, v| !v.is_zero());
        Ok(Self { input: inner.input.clone(), output: self.output.clone(), entries })
    }

    /// The scalar `c` with `self = c * other`, if one exists.
    pub fn ratio_to(&self, other: &Self) -> Option<LaurentPoly> {
        let (k, v) = other.entries.iter().next()?;
        let c = self.entries.get(k)?.div_exact(v).ok()?;
        (other.scale(&c) == *self).then_some(c)
    }
}

/// Operator of an open web over the state bases of its boundary profiles.
pub fn eval_operator(web: &SlicedWeb, n: u32) -> Result<WebOperator> {
    check_rank(web, n)?;
    let mut entries = BTreeMap::new();
    if web.max_label() <= n {
        for s in profile_states(&web.bottom, n) {
            let v: StateVec = [(s.clone(), LaurentPoly::one())].into_iter().collect();
            for (o, c) in apply_web(web, v, n)? {
                entries.insert((s.clone(), o), c);
            }
        }
    }
    Ok(WebOperator { input: web.bottom.clone(), output: web.top.clone(), entries })
}

/// Matrix of one layer (a horizontal juxtaposition of generators).
pub fn eval_layer(layer: &[Gen], n: u32) -> Result<WebOperator> {
    let bottom: Profile = layer.iter().flat_map(Gen::inputs).collect();
    let mut web = SlicedWeb::new(bottom);
    let mut offset = 0;
    for g in layer {
        let outs = g.outputs().len();
        if !matches!(g, Gen::Id(_) | Gen::IdR(_)) {
            web.push(offset, *g)?;
        }
        offset += outs;
    }
    eval_operator(&web, n)
}

/// Evaluation of a closed web.
pub fn moy_eval(web: &SlicedWeb, n: u32) -> Result<LaurentPoly> {
    if !web.is_closed() {
        return Err(Error::InvalidArgument(format!("web is not closed: boundary {} -> {}", profile_string(&web.bottom), profile_string(&web.top))));
    }
    let v: StateVec = [(Vec::new(), LaurentPoly::one())].into_iter().collect();
    let out = apply_web(web, v, n)?;
    Ok(out.get(&Vec::new()).cloned().unwrap_or_default())
}

/// Closed `k`-labelled circle.
pub fn circle(k: u32) -> SlicedWeb {
    let mut w = SlicedWeb::closed();
    w.push(0, Gen::Cup(k)).expect("cup on empty profile");
    w.push(0, Gen::Cap(k)).expect("cap after cup");
    w
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::qpoly::{qbinom, qint};

    #[test]
    fn weights_and_inversions() {
        assert_eq!(weight(0b01, 2), 1);
        assert_eq!(weight(0b10, 2), -1);
        assert_eq!(weight(0b11, 2), 0);
        assert_eq!(inversions(0b10, 0b01), 1);
        assert_eq!(inversions(0b01, 0b10), 0);
        assert_eq!(inversions(0b110, 0b001), 2);
    }

    #[test]
    fn identity_layer() {
        let op = eval_layer(&[Gen::Id(1)], 2).unwrap();
        assert_eq!(op, WebOperator::identity(&[Strand::up(1)], 2));
        assert_eq!(op.entries.len(), 2);
    }

    #[test]
    fn digon_on_two_subset() {
        let mut w = SlicedWeb::new(vec![Strand::up(2)]);
        w.push(0, Gen::Split(1, 1)).unwrap();
        w.push(0, Gen::Merge(1, 1)).unwrap();
        let v: StateVec = [(vec![0b11], LaurentPoly::one())].into_iter().collect();
        let out = apply_web(&w, v, 2).unwrap();
        assert_eq!(out.get(&vec![0b11]).unwrap(), &qint(2).unwrap());
    }

    #[test]
    fn merge_repeated_index_vanishes() {
        let s = Step { offset: 0, gen: Gen::Merge(1, 1) };
        let v: StateVec = [(vec![0b1, 0b1], LaurentPoly::one())].into_iter().collect();
        assert!(apply_step(&v, &s, 2).is_empty());
    }

    #[test]
    fn circles_are_binomials() {
        for n in 1..=5 {
            for k in 1..=n {
                let expect = qbinom(n as i64, k as i64).unwrap();
                assert_eq!(moy_eval(&circle(k), n).unwrap(), expect);
                let mut r = SlicedWeb::closed();
                r.push(0, Gen::CupR(k)).unwrap();
                r.push(0, Gen::CapR(k)).unwrap();
                assert_eq!(moy_eval(&r, n).unwrap(), expect);
            }
        }
        assert!(moy_eval(&circle(3), 2).unwrap().is_zero());
        assert_eq!(moy_eval(&circle(1), 2).unwrap(), "q + q^-1".parse().unwrap());
    }

    #[test]
    fn text_round_trip() {
        let w = SlicedWeb::parse("cup(2); split(1,1) idr(2); merge(1,1) idr(2); cap(2)").unwrap();
        assert!(w.is_closed());
        assert_eq!(SlicedWeb::parse(&w.to_string()).unwrap(), w);
        assert_eq!(moy_eval(&w, 3).unwrap(), &qint(2).unwrap() * &qbinom(3, 2).unwrap());
        assert!(SlicedWeb::parse("cup(1); merge(1,1)").is_err());
        assert!(SlicedWeb::parse("cup(1); foo(1)").is_err());
        assert!(moy_eval(&SlicedWeb::parse("cup(1)").unwrap(), 2).is_err());
    }
}
