//! The colored link invariant by expanding crossings into ladder webs, plus
//! the skein, framing and determinant-slide verifiers built on it.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use crate::diagram::{braid_closure, BraidWord, LinkDiagram};
use crate::error::{Error, Result};
use crate::qpoly::{qbinom, LaurentPoly};

use super::crossing::{crossing_expansion, neg_q_pow, GaugeConfig};
use super::slicing::{crossing_tangles, DiagramSlicing, SliceStep};
use super::{apply_web, moy_eval, Gen, Profile, SlicedWeb, StateVec, Strand, WebLinearCombo, WebOperator};

const CHUNK: usize = 256;

/// Exponent of `c` carried by the crossings of a sliced diagram.
fn c_exponent(sl: &DiagramSlicing) -> i64 {
    sl.crossing_data().iter().map(|&(a, b, s, _)| s as i64 * a as i64 * b as i64).sum()
}

/// Gauge-free value: expands every crossing, evaluates each closed web and
/// sums in parallel. The result does not depend on the thread count.
pub fn rt_gl_value(d: &LinkDiagram, n: u32) -> Result<(LaurentPoly, i64)> {
    if n == 0 {
        return Err(Error::InvalidArgument("rank must be positive".into()));
    }
    let sl = DiagramSlicing::of(d)?;
    let cexp = c_exponent(&sl);
    if d.max_color() > n {
        return Ok((LaurentPoly::zero(), cexp));
    }
    let tangles: Vec<_> = sl.crossing_data().iter().map(|&(a, b, s, r)| crossing_tangles(a, b, s, r)).collect();
    let sizes: Vec<usize> = tangles.iter().map(Vec::len).collect();
    let total = sizes.iter().try_fold(1usize, |acc, &s| acc.checked_mul(s)).ok_or_else(|| Error::Unsupported("too many expansion terms".into()))?;
    let chunks = total.div_ceil(CHUNK);
    let partials: Vec<Result<LaurentPoly>> = (0..chunks)
        .into_par_iter()
        .map(|ci| {
            let mut acc = LaurentPoly::zero();
            let mut choice = vec![0usize; sizes.len()];
            for idx in ci * CHUNK..((ci + 1) * CHUNK).min(total) {
                let mut r = idx;
                let mut m = 0i64;
                for (i, &s) in sizes.iter().enumerate() {
                    choice[i] = r % s;
                    r /= s;
                    m += tangles[i][choice[i]].0;
                }
                let web = sl.web_for(&tangles, &choice)?;
                let v = moy_eval(&web, n)?;
                if !v.is_zero() {
                    acc += &(&neg_q_pow(m) * &v);
                }
            }
            Ok(acc)
        })
        .collect();
    let mut sum = LaurentPoly::zero();
    for p in partials {
        sum += &p?;
    }
    Ok((sum, cexp))
}

/// The colored invariant `c^{e} * (gl value)` in the given gauge.
pub fn rt_invariant(d: &LinkDiagram, cfg: &GaugeConfig) -> Result<LaurentPoly> {
    let (v, e) = rt_gl_value(d, cfg.n)?;
    Ok(&cfg.c_pow(e) * &v)
}

/// Same invariant computed by pushing a state vector through the slicing,
/// summing crossing terms at each step. Used as an independent check of the
/// literal expansion.
pub fn rt_transfer(d: &LinkDiagram, cfg: &GaugeConfig) -> Result<LaurentPoly> {
    let n = cfg.n;
    let sl = DiagramSlicing::of(d)?;
    if d.max_color() > n {
        return Ok(LaurentPoly::zero());
    }
    let mut top: Profile = Vec::new();
    let mut v: StateVec = [(Vec::new(), LaurentPoly::one())].into_iter().collect();
    for s in &sl.steps {
        match s {
            SliceStep::Gen(st) => {
                let mut w = SlicedWeb::new(top.clone());
                w.push(st.offset, st.gen)?;
                v = apply_web(&w, v, n)?;
                top = w.top().clone();
            }
            SliceStep::Crossing { offset, a, b, sign, rot, .. } => {
                let mut next = StateVec::new();
                let mut new_top = None;
                for (m, t) in crossing_tangles(*a, *b, *sign, *rot) {
                    let mut w = SlicedWeb::new(top.clone());
                    w.then_at(*offset, &t)?;
                    let coef = neg_q_pow(m);
                    for (k, c) in apply_web(&w, v.clone(), n)? {
                        *next.entry(k).or_default() += &(&c * &coef);
                    }
                    new_top = Some(w.top().clone());
                }
                next.retain(|_, c| !c.is_zero());
                v = next;
                top = new_top.expect("crossings have at least one term");
            }
        }
    }
    let gl = v.get(&Vec::new()).cloned().unwrap_or_default();
    Ok(&cfg.c_pow(c_exponent(&sl)) * &gl)
}

/// Operator of a linear combination of open webs with a common boundary.
pub fn combo_operator(c: &WebLinearCombo, n: u32) -> Result<WebOperator> {
    let (_, first) = c.terms.first().ok_or_else(|| Error::InvalidArgument("empty combination".into()))?;
    let mut acc = WebOperator { input: first.bottom().clone(), output: first.top().clone(), entries: Default::default() };
    for (coef, w) in &c.terms {
        acc = acc.add(&super::eval_operator(w, n)?.scale(coef))?;
    }
    Ok(acc)
}

/// Ratio of the `k`-colored unknot with one positive curl to the plain
/// `k`-colored unknot.
pub fn framing_factor(k: u32, cfg: &GaugeConfig) -> Result<LaurentPoly> {
    if k == 0 || k > cfg.n {
        return Err(Error::InvalidArgument(format!("color {k} must lie in 1..={}", cfg.n)));
    }
    let mut curl = BraidWord::new(2, vec![(1, 1)])?;
    curl.colors = Some(vec![k, k]);
    let mut plain = BraidWord::new(1, vec![])?;
    plain.colors = Some(vec![k]);
    let with = rt_invariant(&braid_closure(&curl), cfg)?;
    let without = rt_invariant(&braid_closure(&plain), cfg)?;
    with.div_exact(&without)
}

/// `(-1)^k q^{-k(N-k+1)} c^{k^2}`.
pub fn expected_framing(k: u32, cfg: &GaugeConfig) -> LaurentPoly {
    let (k, n) = (k as i64, cfg.n as i64);
    let sign = if k % 2 == 0 { 1 } else { -1 };
    &LaurentPoly::from_int_terms([(-k * (n - k + 1), sign)]) * &cfg.c_pow(k * k)
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DetSlide {
    pub n: u32,
    pub b: u32,
    /// Value with the positive crossing.
    pub plus: LaurentPoly,
    /// Value with the negative crossing.
    pub minus: LaurentPoly,
    /// `plus / minus`.
    pub ratio: LaurentPoly,
}

impl DetSlide {
    /// `c^{2Nb} (-q)^{-2b}`.
    pub fn expected(&self, cfg: &GaugeConfig) -> LaurentPoly {
        let (n, b) = (self.n as i64, self.b as i64);
        &cfg.c_pow(2 * n * b) * &neg_q_pow(-2 * b)
    }

    /// The ratio written in terms of `C = c^N` is `C^{2b} (-q)^{-2b}`; this
    /// evaluates it at a given value of `C`.
    pub fn ratio_at_c_n(&self, c_n: &LaurentPoly) -> Result<LaurentPoly> {
        let b = self.b as i64;
        Ok(&c_n.pow(2 * b)? * &neg_q_pow(-2 * b))
    }
}

/// Closed web: a `b`-circle and an `N`-labelled strand created and
/// absorbed by the determinant vertices, crossing it once.
fn det_slide_web(n: u32, b: u32, sign: i8, cfg: &GaugeConfig) -> Result<LaurentPoly> {
    let x = crossing_expansion(n, b, sign, cfg)?;
    let mut total = LaurentPoly::zero();
    for (coef, t) in &x.terms {
        let mut w = SlicedWeb::closed();
        w.push(0, Gen::Cup(b))?;
        w.push(0, Gen::DetIn(n))?;
        w.then_at(0, t)?;
        w.push(1, Gen::DetOut(n))?;
        w.push(0, Gen::Cap(b))?;
        total += &(coef * &moy_eval(&w, n)?);
    }
    Ok(total)
}

pub fn det_slide_check(n: u32, b: u32, cfg: &GaugeConfig) -> Result<DetSlide> {
    if b == 0 || b > n || cfg.n != n {
        return Err(Error::InvalidArgument(format!("need 1 <= b <= N, got b={b}, N={n}")));
    }
    let plus = det_slide_web(n, b, 1, cfg)?;
    let minus = det_slide_web(n, b, -1, cfg)?;
    let ratio = plus.div_exact(&minus)?;
    Ok(DetSlide { n, b, plus, minus, ratio })
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct SkeinReport {
    pub trials: usize,
    pub passed: usize,
    pub operator_ok: bool,
    pub counterexamples: Vec<String>,
}

impl SkeinReport {
    pub fn ok(&self) -> bool {
        self.operator_ok && self.passed == self.trials
    }
}

fn random_braid(rng: &mut ChaCha8Rng) -> BraidWord {
    let strands = rng.gen_range(2..=3);
    let len = rng.gen_range(0..=4);
    let letters = (0..len).map(|_| (rng.gen_range(1..strands), if rng.gen_bool(0.5) { 1 } else { -1 })).collect();
    BraidWord::new(strands, letters).expect("valid random braid")
}

/// Checks `c^{-1} X+ - c X- = (q - q^{-1}) id` on random closures and the
/// quadratic relation of the `(1,1)` crossing operator.
pub fn skein_check(cfg: &GaugeConfig, trials: usize, seed: u64) -> Result<SkeinReport> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let c = cfg.c();
    let c_inv = cfg.c_pow(-1);
    let q_minus = LaurentPoly::from_int_terms([(1, 1), (-1, -1)]);
    let mut report = SkeinReport { trials, ..Default::default() };
    for _ in 0..trials {
        let base = random_braid(&mut rng);
        let i = rng.gen_range(1..base.strands);
        let j = rng.gen_range(0..=base.letters.len());
        let with = |s: Option<i8>| {
            let mut l = base.letters.clone();
            if let Some(s) = s {
                l.insert(j, (i, s));
            }
            BraidWord::new(base.strands, l).expect("valid braid")
        };
        let (bp, bm, b0) = (with(Some(1)), with(Some(-1)), with(None));
        let vp = rt_invariant(&braid_closure(&bp), cfg)?;
        let vm = rt_invariant(&braid_closure(&bm), cfg)?;
        let v0 = rt_invariant(&braid_closure(&b0), cfg)?;
        if &(&c_inv * &vp) - &(&c * &vm) == &q_minus * &v0 {
            report.passed += 1;
        } else {
            report.counterexamples.push(format!("{bp} vs {bm}"));
        }
    }
    let sigma = combo_operator(&crossing_expansion(1, 1, 1, cfg)?, cfg.n)?;
    let id = WebOperator::identity(&[Strand::up(1), Strand::up(1)], cfg.n);
    let f1 = sigma.sub(&id.scale(&(&c * &LaurentPoly::q())))?;
    let f2 = sigma.add(&id.scale(&(&c * &LaurentPoly::q_pow(-1))))?;
    report.operator_ok = f1.compose(&f2)?.is_zero();
    Ok(report)
}

/// `qbinom(N, k)`, the value of a `k`-colored unknot.
pub fn unknot_value(n: u32, k: u32) -> LaurentPoly {
    qbinom(n as i64, k as i64).unwrap_or_default()
}
