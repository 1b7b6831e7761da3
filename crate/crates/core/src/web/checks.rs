//! MOY relation suite, slicing independence and Reidemeister checks.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::diagram::{braid_closure, BraidWord};
use crate::error::Result;
use crate::qpoly::{qbinom, LaurentPoly};
use crate::report::CheckReport;

use super::crossing::{crossing_expansion, GaugeConfig};
use super::invariant::{combo_operator, rt_invariant};
use super::{circle, eval_operator, moy_eval, Gen, SlicedWeb, Step, Strand, WebOperator};

fn web(bottom: Vec<Strand>, steps: &[(usize, Gen)]) -> Result<SlicedWeb> {
    let mut w = SlicedWeb::new(bottom);
    for &(o, g) in steps {
        w.push(o, g)?;
    }
    Ok(w)
}

fn op(w: &SlicedWeb, n: u32) -> Result<WebOperator> {
    eval_operator(w, n)
}

/// Circles, digons, (co)associativity, zig-zags and vanishing of labels
/// above `N`, for all `N <= max_n`.
pub fn moy_suite(max_n: u32) -> Result<CheckReport> {
    let mut r = CheckReport::new("moy relations");
    for n in 1..=max_n {
        for k in 1..=n {
            let expect = qbinom(n as i64, k as i64)?;
            r.record(moy_eval(&circle(k), n)? == expect, || format!("circle({k}) N={n}"));
            let rc = web(vec![], &[(0, Gen::CupR(k)), (0, Gen::CapR(k))])?;
            r.record(moy_eval(&rc, n)? == expect, || format!("reversed circle({k}) N={n}"));
        }
        for a in 1..n {
            for b in 1..=n - a {
                let d = web(vec![Strand::up(a + b)], &[(0, Gen::Split(a, b)), (0, Gen::Merge(a, b))])?;
                let id = WebOperator::identity(&[Strand::up(a + b)], n);
                let coef = qbinom((a + b) as i64, a as i64)?;
                r.record(op(&d, n)? == id.scale(&coef), || format!("digon({a},{b}) N={n}"));
            }
        }
        for a in 1..=n {
            for b in 1..=n {
                for c in 1..=n {
                    let bottom = vec![Strand::up(a), Strand::up(b), Strand::up(c)];
                    let l = web(bottom.clone(), &[(0, Gen::Merge(a, b)), (0, Gen::Merge(a + b, c))])?;
                    let rr = web(bottom, &[(1, Gen::Merge(b, c)), (0, Gen::Merge(a, b + c))])?;
                    r.record(op(&l, n)? == op(&rr, n)?, || format!("merge associativity ({a},{b},{c}) N={n}"));
                    let s = a + b + c;
                    let l = web(vec![Strand::up(s)], &[(0, Gen::Split(a + b, c)), (0, Gen::Split(a, b))])?;
                    let rr = web(vec![Strand::up(s)], &[(0, Gen::Split(a, b + c)), (1, Gen::Split(b, c))])?;
                    r.record(op(&l, n)? == op(&rr, n)?, || format!("split coassociativity ({a},{b},{c}) N={n}"));
                }
            }
        }
        for k in 1..=n {
            let up = [Strand::up(k)];
            let down = [Strand::down(k)];
            let zigzags = [
                (up, [(0, Gen::Cup(k)), (1, Gen::CapR(k))]),
                (up, [(1, Gen::CupR(k)), (0, Gen::Cap(k))]),
                (down, [(0, Gen::CupR(k)), (1, Gen::Cap(k))]),
                (down, [(1, Gen::Cup(k)), (0, Gen::CapR(k))]),
            ];
            for (i, (b, steps)) in zigzags.iter().enumerate() {
                let z = web(b.to_vec(), steps)?;
                r.record(op(&z, n)? == WebOperator::identity(b, n), || format!("zig-zag #{i} label {k} N={n}"));
            }
        }
        r.record(moy_eval(&circle(n + 1), n)?.is_zero(), || format!("circle({}) N={n}", n + 1));
        let big = web(vec![Strand::up(1), Strand::up(n)], &[(0, Gen::Merge(1, n)), (0, Gen::Split(1, n))])?;
        r.record(op(&big, n)?.is_zero(), || format!("edge label {} N={n}", n + 1));
    }
    Ok(r)
}

/// Swaps steps `i` and `i+1` when they act on disjoint strands.
pub fn commute_steps(w: &SlicedWeb, i: usize) -> Option<SlicedWeb> {
    let steps = w.steps();
    let (s1, s2) = (steps.get(i)?, steps.get(i + 1)?);
    let (k1, m1) = (s1.gen.inputs().len(), s1.gen.outputs().len());
    let (k2, m2) = (s2.gen.inputs().len(), s2.gen.outputs().len());
    let swapped = if s2.offset + k2 <= s1.offset {
        [Step { offset: s2.offset, gen: s2.gen }, Step { offset: s1.offset + m2 - k2, gen: s1.gen }]
    } else if s2.offset >= s1.offset + m1 {
        [Step { offset: s2.offset - m1 + k1, gen: s2.gen }, Step { offset: s1.offset, gen: s1.gen }]
    } else {
        return None;
    };
    let mut out = SlicedWeb::new(w.bottom().clone());
    for (j, s) in steps.iter().enumerate() {
        match j {
            _ if j == i => out.push(swapped[0].offset, swapped[0].gen).ok()?,
            _ if j == i + 1 => out.push(swapped[1].offset, swapped[1].gen).ok()?,
            _ => out.push(s.offset, s.gen).ok()?,
        }
    }
    Some(out)
}

fn random_braid(rng: &mut ChaCha8Rng, max_strands: usize, max_len: usize) -> BraidWord {
    let strands = rng.gen_range(2..=max_strands);
    let len = rng.gen_range(1..=max_len);
    let letters = (0..len).map(|_| (rng.gen_range(1..strands), if rng.gen_bool(0.5) { 1 } else { -1 })).collect();
    BraidWord::new(strands, letters).expect("valid braid")
}

/// Evaluates closed webs from expanded random closures under every
/// available far-commutation of adjacent steps, and compares braid and
/// planar-sweep slicings of the same diagrams.
pub fn slicing_independence(n: u32, samples: usize, seed: u64) -> Result<CheckReport> {
    use super::slicing::{crossing_tangles, DiagramSlicing};
    let mut r = CheckReport::new("slicing independence");
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    for _ in 0..samples {
        let b = random_braid(&mut rng, 3, 4);
        let d = braid_closure(&b);
        let sl = DiagramSlicing::of(&d)?;
        let tangles: Vec<_> = sl.crossing_data().iter().map(|&(a, bb, s, rot)| crossing_tangles(a, bb, s, rot)).collect();
        let choice: Vec<usize> = tangles.iter().map(|t| rng.gen_range(0..t.len())).collect();
        let w = sl.web_for(&tangles, &choice)?;
        let v = moy_eval(&w, n)?;
        for i in 0..w.steps().len().saturating_sub(1) {
            if let Some(w2) = commute_steps(&w, i) {
                r.record(moy_eval(&w2, n)? == v, || format!("{b}: swap at step {i}"));
            }
        }
        let cfg = GaugeConfig::gl(n);
        let braid_val = rt_invariant(&d, &cfg)?;
        let pd_val = rt_invariant(&d.without_braid(), &cfg);
        r.record_result(pd_val, |x| x == braid_val, || format!("{b}: braid vs planar slicing"));
    }
    Ok(r)
}

fn tensor_id_right(w: &SlicedWeb, extra: Strand) -> Result<SlicedWeb> {
    let mut bottom = w.bottom().clone();
    bottom.push(extra);
    let mut out = SlicedWeb::new(bottom);
    out.then_at(0, w)?;
    Ok(out)
}

fn tensor_id_left(w: &SlicedWeb, extra: Strand) -> Result<SlicedWeb> {
    let mut bottom = vec![extra];
    bottom.extend(w.bottom().iter().copied());
    let mut out = SlicedWeb::new(bottom);
    out.then_at(1, w)?;
    Ok(out)
}

fn crossing_op(a: u32, b: u32, sign: i8, cfg: &GaugeConfig, pad: Option<(bool, u32)>) -> Result<WebOperator> {
    let x = crossing_expansion(a, b, sign, cfg)?;
    let mut padded = super::WebLinearCombo::default();
    for (c, w) in x.terms {
        let w = match pad {
            None => w,
            Some((true, l)) => tensor_id_left(&w, Strand::up(l))?,
            Some((false, l)) => tensor_id_right(&w, Strand::up(l))?,
        };
        padded.push(c, w)?;
    }
    combo_operator(&padded, cfg.n)
}

/// Reidemeister 2 and 3 as operator identities on upward strands with
/// labels up to `max_label`, and Reidemeister 2/3 moves inside random
/// colored braid closures.
pub fn reidemeister_suite(max_n: u32, max_label: u32) -> Result<CheckReport> {
    let mut r = CheckReport::new("reidemeister moves");
    for n in 1..=max_n {
        let cfg = GaugeConfig::gl(n);
        let labels: Vec<u32> = (1..=max_label.min(n)).collect();
        for &a in &labels {
            for &b in &labels {
                let id = WebOperator::identity(&[Strand::up(a), Strand::up(b)], n);
                for s in [1i8, -1] {
                    let first = crossing_op(a, b, s, &cfg, None)?;
                    let second = crossing_op(b, a, -s, &cfg, None)?;
                    r.record(second.compose(&first)? == id, || format!("R2 ({a},{b}) sign {s} N={n}"));
                }
                for &c in &labels {
                    for s in [1i8, -1] {
                        // positions: strands a, b, c from left
                        let l1 = crossing_op(a, b, s, &cfg, Some((false, c)))?;
                        let l2 = crossing_op(a, c, s, &cfg, Some((true, b)))?;
                        let l3 = crossing_op(b, c, s, &cfg, Some((false, a)))?;
                        let lhs = l3.compose(&l2)?.compose(&l1)?;
                        let r1 = crossing_op(b, c, s, &cfg, Some((true, a)))?;
                        let r2 = crossing_op(a, c, s, &cfg, Some((false, b)))?;
                        let r3 = crossing_op(a, b, s, &cfg, Some((true, c)))?;
                        let rhs = r3.compose(&r2)?.compose(&r1)?;
                        r.record(lhs == rhs, || format!("R3 ({a},{b},{c}) sign {s} N={n}"));
                    }
                }
            }
        }
    }
    Ok(r)
}

/// Invariant of colored closures before and after inserting
/// `s_i s_i^{-1}` or replacing `s_i s_{i+1} s_i` by `s_{i+1} s_i s_{i+1}`.
pub fn reidemeister_closures(n: u32, colors: &[(u32, u32)], seed: u64) -> Result<CheckReport> {
    let mut r = CheckReport::new("reidemeister closures");
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let cfg = GaugeConfig::gl(n);
    for &(c1, c2) in colors {
        // 3 strands with the pure braid part keeping positions 0,1 in one component
        // colored c1 and position 2 colored c2
        for _ in 0..3 {
            let base = random_pure_word(&mut rng);
            let mut b = BraidWord::new(3, base.clone())?;
            b.colors = Some(vec![c1, c1, c2]);
            let d = braid_closure(&b);
            let v = rt_invariant(&d, &cfg)?;
            let j = rng.gen_range(0..=base.len());
            let i = rng.gen_range(1..=2);
            let mut l = base.clone();
            l.splice(j..j, [(i, 1), (i, -1)]);
            let mut b2 = BraidWord::new(3, l)?;
            b2.colors = Some(vec![c1, c1, c2]);
            r.record(rt_invariant(&braid_closure(&b2), &cfg)? == v, || format!("R2 in {b} colors ({c1},{c2}) N={n}"));
            let mut l = base.clone();
            l.splice(j..j, [(1, 1), (2, 1), (1, 1), (2, -1), (1, -1), (2, -1)]);
            let mut b3 = BraidWord::new(3, l)?;
            b3.colors = Some(vec![c1, c1, c2]);
            let v3 = rt_invariant(&braid_closure(&b3), &cfg)?;
            r.record(v3 == v, || format!("R3 in {b} colors ({c1},{c2}) N={n}"));
        }
    }
    Ok(r)
}

/// Random word in the subgroup keeping strand 2 fixed: products of
/// `s2^{±2}` conjugates and `s1^{±1}`.
fn random_pure_word(rng: &mut ChaCha8Rng) -> Vec<(usize, i8)> {
    let mut out = Vec::new();
    for _ in 0..rng.gen_range(1..=2) {
        let s = if rng.gen_bool(0.5) { 1 } else { -1 };
        if rng.gen_bool(0.5) {
            out.push((1, s));
        } else {
            out.extend([(2, s), (2, s)]);
        }
    }
    out
}

/// `c^{-1} X+ - c X- = (q - q^{-1}) id` for the `(1,1)` crossing operator.
pub fn skein_operator(cfg: &GaugeConfig) -> Result<bool> {
    let plus = combo_operator(&crossing_expansion(1, 1, 1, cfg)?, cfg.n)?;
    let minus = combo_operator(&crossing_expansion(1, 1, -1, cfg)?, cfg.n)?;
    let id = WebOperator::identity(&[Strand::up(1), Strand::up(1)], cfg.n);
    let lhs = plus.scale(&cfg.c_pow(-1)).sub(&minus.scale(&cfg.c()))?;
    Ok(lhs == id.scale(&LaurentPoly::from_int_terms([(1, 1), (-1, -1)])))
}
