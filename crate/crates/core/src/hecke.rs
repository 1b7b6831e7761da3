//! Type A Hecke algebra `H_n` over `Z[q, q^-1]` in the standard basis `T_w`,
//! with quadratic relation `T_i^2 = (q - q^-1) T_i + 1`.

use std::collections::BTreeMap;
use std::fmt;

use crate::error::{Error, Result};
use crate::qpoly::{lex, qfactorial, qint, LaurentPoly};
use crate::report::CheckReport;

/// Permutation in one-line notation, values `1..=n`.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Permutation(Vec<u8>);

impl Permutation {
    pub fn identity(n: usize) -> Self {
        Self((1..=n as u8).collect())
    }

    pub fn from_one_line(v: Vec<u8>) -> Result<Self> {
        let n = v.len();
        let mut seen = vec![false; n + 1];
        for &x in &v {
            let x = x as usize;
            if x == 0 || x > n || seen[x] {
                return Err(Error::InvalidArgument(format!("{v:?} is not a permutation")));
            }
            seen[x] = true;
        }
        Ok(Self(v))
    }

    pub fn n(&self) -> usize {
        self.0.len()
    }

    pub fn one_line(&self) -> &[u8] {
        &self.0
    }

    /// Inversion count.
    pub fn length(&self) -> usize {
        let v = &self.0;
        (0..v.len()).map(|i| (i + 1..v.len()).filter(|&j| v[i] > v[j]).count()).sum()
    }

    /// `w * s_i`: swaps positions `i` and `i+1` (1-based).
    pub fn right_mul_s(&self, i: usize) -> Self {
        let mut v = self.0.clone();
        v.swap(i - 1, i);
        Self(v)
    }

    /// `s_i * w`: swaps the values `i` and `i+1`.
    pub fn left_mul_s(&self, i: usize) -> Self {
        let (a, b) = (i as u8, i as u8 + 1);
        Self(
            self.0
                .iter()
                .map(|&x| {
                    if x == a {
                        b
                    } else if x == b {
                        a
                    } else {
                        x
                    }
                })
                .collect(),
        )
    }

    /// Reduced word `[i1, ..., ik]` with `w = s_{i1} ... s_{ik}`, obtained by
    /// repeatedly stripping the first right descent.
    pub fn reduced_word(&self) -> Vec<usize> {
        let mut w = self.clone();
        let mut word = Vec::new();
        while let Some(i) = (1..w.n()).find(|&i| w.0[i - 1] > w.0[i]) {
            word.push(i);
            w = w.right_mul_s(i);
        }
        word.reverse();
        word
    }

    /// All permutations of `1..=n` in lexicographic order.
    pub fn all(n: usize) -> Vec<Permutation> {
        let mut cur: Vec<u8> = (1..=n as u8).collect();
        let mut out = vec![Self(cur.clone())];
        loop {
            let Some(i) = (1..cur.len()).rev().find(|&i| cur[i - 1] < cur[i]) else { break };
            let j = (i..cur.len()).rev().find(|&j| cur[j] > cur[i - 1]).expect("successor exists");
            cur.swap(i - 1, j);
            cur[i..].reverse();
            out.push(Self(cur.clone()));
        }
        out
    }

    pub fn longest(n: usize) -> Self {
        Self((1..=n as u8).rev().collect())
    }
}

/// Element of `H_n`: finite combination of `T_w`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HeckeElement {
    n: usize,
    terms: BTreeMap<Permutation, LaurentPoly>,
}

fn q_minus_qinv() -> LaurentPoly {
    LaurentPoly::from_int_terms([(1, 1), (-1, -1)])
}

impl HeckeElement {
    pub fn zero(n: usize) -> Self {
        Self { n, terms: BTreeMap::new() }
    }

    pub fn identity(n: usize) -> Self {
        Self::scalar(n, LaurentPoly::one())
    }

    pub fn scalar(n: usize, c: LaurentPoly) -> Self {
        let mut e = Self::zero(n);
        e.add_term(Permutation::identity(n), c);
        e
    }

    pub fn basis(w: Permutation) -> Self {
        let mut e = Self::zero(w.n());
        e.add_term(w, LaurentPoly::one());
        e
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coeff(&self, w: &Permutation) -> LaurentPoly {
        self.terms.get(w).cloned().unwrap_or_default()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Permutation, &LaurentPoly)> {
        self.terms.iter()
    }

    pub fn add_term(&mut self, w: Permutation, c: LaurentPoly) {
        if c.is_zero() {
            return;
        }
        let slot = self.terms.entry(w.clone()).or_default();
        *slot += &c;
        if slot.is_zero() {
            self.terms.remove(&w);
        }
    }

    fn check_n(&self, other: &Self) -> Result<()> {
        if self.n != other.n {
            return Err(Error::StrandMismatch(self.n, other.n));
        }
        Ok(())
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        self.check_n(other)?;
        let mut out = self.clone();
        for (w, c) in &other.terms {
            out.add_term(w.clone(), c.clone());
        }
        Ok(out)
    }

    pub fn sub(&self, other: &Self) -> Result<Self> {
        self.add(&other.scale(&LaurentPoly::from_int(-1)))
    }

    pub fn scale(&self, c: &LaurentPoly) -> Self {
        let mut out = Self::zero(self.n);
        for (w, a) in &self.terms {
            out.add_term(w.clone(), a * c);
        }
        out
    }

    /// Right multiplication by the generator `T_i`.
    pub fn mul_generator_right(&self, i: usize) -> Self {
        let mut out = Self::zero(self.n);
        for (u, c) in &self.terms {
            let us = u.right_mul_s(i);
            if u.one_line()[i - 1] < u.one_line()[i] {
                out.add_term(us, c.clone());
            } else {
                out.add_term(u.clone(), c * &q_minus_qinv());
                out.add_term(us, c.clone());
            }
        }
        out
    }

    /// Left multiplication by `T_i`, via `T_i T_w = T_{s_i w}` or
    /// `(q - q^-1) T_w + T_{s_i w}`.
    pub fn mul_generator_left(&self, i: usize) -> Self {
        let mut out = Self::zero(self.n);
        for (w, c) in &self.terms {
            let sw = w.left_mul_s(i);
            let pos_i = w.one_line().iter().position(|&x| x as usize == i).expect("value present");
            let pos_j = w.one_line().iter().position(|&x| x as usize == i + 1).expect("value present");
            if pos_i < pos_j {
                out.add_term(sw, c.clone());
            } else {
                out.add_term(w.clone(), c * &q_minus_qinv());
                out.add_term(sw, c.clone());
            }
        }
        out
    }
}

/// Product in `H_n`: `x` is multiplied on the right by `T_{i1} ... T_{ik}`
/// for a reduced word of each `T_w` in `y`.
pub fn hecke_mul(x: &HeckeElement, y: &HeckeElement) -> Result<HeckeElement> {
    x.check_n(y)?;
    let mut out = HeckeElement::zero(x.n);
    for (w, c) in &y.terms {
        let mut acc = x.scale(c);
        for i in w.reduced_word() {
            acc = acc.mul_generator_right(i);
        }
        out = out.add(&acc)?;
    }
    Ok(out)
}

fn check_generator(i: usize, n: usize) -> Result<()> {
    if i == 0 || i >= n {
        return Err(Error::IndexOutOfRange { index: i, bound: n });
    }
    Ok(())
}

/// `T_i`.
pub fn t_generator(i: usize, n: usize) -> Result<HeckeElement> {
    check_generator(i, n)?;
    Ok(HeckeElement::basis(Permutation::identity(n).right_mul_s(i)))
}

/// `T_i^{-1} = T_i - (q - q^-1)`.
pub fn t_inverse(i: usize, n: usize) -> Result<HeckeElement> {
    t_generator(i, n)?.sub(&HeckeElement::scalar(n, q_minus_qinv()))
}

/// `B_i = T_i + q^-1`.
pub fn kl_generator(i: usize, n: usize) -> Result<HeckeElement> {
    t_generator(i, n)?.add(&HeckeElement::scalar(n, LaurentPoly::q_pow(-1)))
}

/// `B_{w0} = q^{-l(w0)} sum_w q^{l(w)} T_w`.
pub fn kl_longest(n: usize) -> HeckeElement {
    let l0 = Permutation::longest(n).length() as i64;
    let mut out = HeckeElement::zero(n);
    for w in Permutation::all(n) {
        let l = w.length() as i64;
        out.add_term(w, LaurentPoly::q_pow(l - l0));
    }
    out
}

/// Quadratic and braid relations for `n <= max_n`, `B_i^2 = [2] B_i`, and
/// `B_{w0}^2 = [n]! B_{w0}` for `n <= max_w0`.
pub fn hecke_suite(max_n: usize, max_w0: usize) -> Result<CheckReport> {
    let mut r = CheckReport::new("hecke");
    let two = qint(2)?;
    for n in 2..=max_n {
        for i in 1..n {
            let ti = t_generator(i, n)?;
            let a = ti.sub(&HeckeElement::scalar(n, LaurentPoly::q()))?;
            let b = ti.add(&HeckeElement::scalar(n, LaurentPoly::q_pow(-1)))?;
            r.record(hecke_mul(&a, &b)?.is_zero(), || format!("(T{i}-q)(T{i}+q^-1) != 0 in H_{n}"));
            let bi = kl_generator(i, n)?;
            r.record(hecke_mul(&bi, &bi)? == bi.scale(&two), || format!("B{i}^2 != [2]B{i} in H_{n}"));
            for j in i + 1..n {
                let tj = t_generator(j, n)?;
                let ok = if j == i + 1 {
                    hecke_mul(&hecke_mul(&ti, &tj)?, &ti)? == hecke_mul(&hecke_mul(&tj, &ti)?, &tj)?
                } else {
                    hecke_mul(&ti, &tj)? == hecke_mul(&tj, &ti)?
                };
                r.record(ok, || format!("braid relation T{i},T{j} fails in H_{n}"));
            }
        }
    }
    for n in 2..=max_w0 {
        let b = kl_longest(n);
        r.record(hecke_mul(&b, &b)? == b.scale(&qfactorial(n as i64)?), || format!("B_w0^2 != [{n}]! B_w0"));
    }
    Ok(r)
}

impl fmt::Display for HeckeElement {
    /// Renders e.g. `T1*T2 + q^-1*T1`, identity as `e`, multi-term
    /// coefficients parenthesised.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        let mut items: Vec<(&Permutation, &LaurentPoly)> = self.terms.iter().collect();
        items.sort_by_key(|(w, _)| (w.length(), w.reduced_word()));
        for (k, (w, c)) in items.into_iter().enumerate() {
            let word = w.reduced_word();
            let basis = if word.is_empty() { "e".to_string() } else { word.iter().map(|i| format!("T{i}")).collect::<Vec<_>>().join("*") };
            let (neg, body) = match c.as_monomial() {
                Some((a, e)) if c.num_terms() == 1 => {
                    let neg = a < num_traits::Zero::zero();
                    let mag = LaurentPoly::monomial(if neg { -a } else { a }, e);
                    if mag.is_one() {
                        (neg, basis)
                    } else {
                        (neg, format!("{mag}*{basis}"))
                    }
                }
                _ => (false, format!("({c})*{basis}")),
            };
            match (k == 0, neg) {
                (true, false) => write!(f, "{body}")?,
                (true, true) => write!(f, "-{body}")?,
                (false, false) => write!(f, " + {body}")?,
                (false, true) => write!(f, " - {body}")?,
            }
        }
        Ok(())
    }
}

/// Parses expressions such as `T1*T2 + q^-1*T1`, `(q - q^-1)*e`, `T2^-1`
/// in `H_n`.
pub fn parse_hecke(text: &str, n: usize) -> Result<HeckeElement> {
    let mut cur = lex::Cursor::new(lex::tokenize(text)?);
    if cur.at_end() {
        return Err(Error::Parse("empty expression".into()));
    }
    let e = parse_sum(&mut cur, n)?;
    if !cur.at_end() {
        return Err(Error::Parse(format!("trailing input at {:?}", cur.peek())));
    }
    Ok(e)
}

fn parse_sum(cur: &mut lex::Cursor, n: usize) -> Result<HeckeElement> {
    use lex::Tok;
    let mut acc = HeckeElement::zero(n);
    let mut first = true;
    loop {
        let neg = if cur.eat(&Tok::Minus) {
            true
        } else if first || cur.eat(&Tok::Plus) {
            false
        } else {
            break;
        };
        first = false;
        let term = parse_product(cur, n)?;
        acc = if neg { acc.sub(&term)? } else { acc.add(&term)? };
    }
    Ok(acc)
}

fn parse_product(cur: &mut lex::Cursor, n: usize) -> Result<HeckeElement> {
    let mut acc = parse_factor(cur, n)?;
    while cur.eat(&lex::Tok::Star) {
        let f = parse_factor(cur, n)?;
        acc = hecke_mul(&acc, &f)?;
    }
    Ok(acc)
}

fn parse_factor(cur: &mut lex::Cursor, n: usize) -> Result<HeckeElement> {
    use lex::Tok;
    let base = match cur.peek().cloned() {
        Some(Tok::LParen) => {
            cur.next();
            let e = parse_sum(cur, n)?;
            cur.expect(&Tok::RParen)?;
            e
        }
        Some(Tok::Num(_)) => HeckeElement::scalar(n, LaurentPoly::constant(cur.rational()?)),
        Some(Tok::Ident(id)) => {
            cur.next();
            if id == "q" {
                let e = if cur.eat(&Tok::Caret) { cur.exponent()? } else { crate::qpoly::Exponent::from_integer(1) };
                return Ok(HeckeElement::scalar(n, LaurentPoly::monomial(crate::qpoly::rat(1), e)));
            } else if id == "e" {
                HeckeElement::identity(n)
            } else if let Some(idx) = id.strip_prefix('T') {
                let i: usize = idx.parse().map_err(|_| Error::Parse(format!("bad generator {id}")))?;
                t_generator(i, n)?
            } else {
                return Err(Error::Parse(format!("unknown symbol {id}")));
            }
        }
        other => return Err(Error::Parse(format!("unexpected token {other:?}"))),
    };
    if !cur.eat(&Tok::Caret) {
        return Ok(base);
    }
    let neg = cur.eat(&Tok::Minus);
    let k = cur.int()?;
    let unit = if neg { invert(&base, n)? } else { base };
    let mut acc = HeckeElement::identity(n);
    for _ in 0..k {
        acc = hecke_mul(&acc, &unit)?;
    }
    Ok(acc)
}

fn invert(x: &HeckeElement, n: usize) -> Result<HeckeElement> {
    if x.terms.len() == 1 {
        let (w, c) = x.terms.iter().next().expect("one term");
        let word = w.reduced_word();
        let cinv = c.inverse().ok_or_else(|| Error::Unsupported(format!("cannot invert {x}")))?;
        // (T_{i1} ... T_{ik})^-1 = T_{ik}^-1 ... T_{i1}^-1
        let mut acc = HeckeElement::scalar(n, cinv);
        for &i in word.iter().rev() {
            acc = hecke_mul(&acc, &t_inverse(i, n)?)?;
        }
        return Ok(acc);
    }
    Err(Error::Unsupported(format!("cannot invert {x}")))
}

#[cfg(test)]
mod tests {
    use super::*;

    /// Independent product: apply the reduced word of each `T_w` in `x`
    /// to `y` from the left, right to left.
    fn mul_oracle(x: &HeckeElement, y: &HeckeElement) -> HeckeElement {
        let mut out = HeckeElement::zero(x.n);
        for (w, c) in &x.terms {
            let mut acc = y.scale(c);
            for &i in w.reduced_word().iter().rev() {
                acc = acc.mul_generator_left(i);
            }
            out = out.add(&acc).unwrap();
        }
        out
    }

    fn t(i: usize, n: usize) -> HeckeElement {
        t_generator(i, n).unwrap()
    }

    fn m(x: &HeckeElement, y: &HeckeElement) -> HeckeElement {
        hecke_mul(x, y).unwrap()
    }

    #[test]
    fn reduced_words_have_length_size() {
        for n in 1..=5 {
            for w in Permutation::all(n) {
                let word = w.reduced_word();
                assert_eq!(word.len(), w.length());
                let rebuilt = word.iter().fold(Permutation::identity(n), |acc, &i| acc.right_mul_s(i));
                assert_eq!(rebuilt, w);
            }
        }
        assert_eq!(Permutation::all(4).len(), 24);
    }

    #[test]
    fn quadratic_relation_footnote() {
        let t1 = t(1, 2);
        let expect = t1.scale(&q_minus_qinv()).add(&HeckeElement::identity(2)).unwrap();
        assert_eq!(m(&t1, &t1), expect);
    }

    #[test]
    fn identity_is_unit() {
        let x = parse_hecke("T1*T2 + q^-1*T1 - 3", 3).unwrap();
        assert_eq!(m(&HeckeElement::identity(3), &x), x);
        assert_eq!(m(&x, &HeckeElement::identity(3)), x);
    }

    #[test]
    fn braid_relation_n3() {
        let (t1, t2) = (t(1, 3), t(2, 3));
        assert!(m(&m(&t1, &t2), &t1).sub(&m(&m(&t2, &t1), &t2)).unwrap().is_zero());
    }

    #[test]
    fn inverses() {
        let inv = t_inverse(1, 2).unwrap();
        assert_eq!(inv, parse_hecke("T1 - (q - q^-1)*e", 2).unwrap());
        assert_eq!(m(&inv, &t(1, 2)), HeckeElement::identity(2));
        let t2 = t(2, 3);
        assert_eq!(m(&m(&t_inverse(2, 3).unwrap(), &t2), &t2), t2);
        assert!(t_inverse(0, 3).is_err());
        assert!(t_inverse(3, 3).is_err());
    }

    #[test]
    fn kl_generator_examples() {
        let b1 = kl_generator(1, 2).unwrap();
        assert_eq!(b1, parse_hecke("T1 + q^-1", 2).unwrap());
        assert_eq!(b1.sub(&t_inverse(1, 2).unwrap()).unwrap(), HeckeElement::scalar(2, LaurentPoly::q()));
        assert_eq!(m(&b1, &b1), b1.scale(&qint(2).unwrap()));
    }

    #[test]
    fn kl_longest_examples() {
        assert_eq!(kl_longest(2), kl_generator(1, 2).unwrap());
        assert_eq!(kl_longest(1), HeckeElement::identity(1));
        let expect = parse_hecke("q^-3*(e + q*(T1 + T2) + q^2*(T1*T2 + T2*T1) + q^3*T1*T2*T1)", 3).unwrap();
        assert_eq!(kl_longest(3), expect);
    }

    #[test]
    fn relations_up_to_n5() {
        for n in 2..=5 {
            for i in 1..n {
                let ti = t(i, n);
                let a = ti.sub(&HeckeElement::scalar(n, LaurentPoly::q())).unwrap();
                let b = ti.add(&HeckeElement::scalar(n, LaurentPoly::q_pow(-1))).unwrap();
                assert!(m(&a, &b).is_zero(), "quadratic relation n={n} i={i}");
                for j in 1..n {
                    let tj = t(j, n);
                    if j == i + 1 {
                        assert_eq!(m(&m(&ti, &tj), &ti), m(&m(&tj, &ti), &tj));
                    } else if j > i + 1 {
                        assert_eq!(m(&ti, &tj), m(&tj, &ti));
                    }
                }
            }
        }
    }

    #[test]
    fn longest_quasi_idempotent() {
        for n in 2..=4 {
            let b = kl_longest(n);
            assert_eq!(m(&b, &b), b.scale(&qfactorial(n as i64).unwrap()), "n={n}");
            for i in 1..n {
                assert_eq!(m(&kl_generator(i, n).unwrap(), &b), b.scale(&qint(2).unwrap()));
            }
        }
    }

    #[test]
    fn suite_passes() {
        let r = hecke_suite(5, 4).unwrap();
        assert!(r.ok(), "{r}");
        assert_eq!(r.cases, 33);
    }

    #[test]
    fn product_agrees_with_left_action_oracle() {
        let x = parse_hecke("T1*T2 + q^-1*T3 - 2*T2*T3*T2", 4).unwrap();
        let y = parse_hecke("T3*T2*T1 + (q^2 - 1)*T1", 4).unwrap();
        assert_eq!(m(&x, &y), mul_oracle(&x, &y));
    }

    #[test]
    fn text_round_trip() {
        for s in ["T1*T2 + q^-1*T1", "e", "-T1 + (q - q^-1)*T2*T1", "0"] {
            let x = if s == "0" { HeckeElement::zero(3) } else { parse_hecke(s, 3).unwrap() };
            assert_eq!(parse_hecke(&x.to_string(), 3).unwrap_or_else(|_| HeckeElement::zero(3)), x);
        }
        assert_eq!(parse_hecke("T1^-1", 2).unwrap(), t_inverse(1, 2).unwrap());
        assert!(parse_hecke("T3", 3).is_err());
        assert!(parse_hecke("T1 +", 3).is_err());
    }

    #[test]
    fn mismatched_strands_rejected() {
        assert_eq!(hecke_mul(&t(1, 2), &t(1, 3)), Err(Error::StrandMismatch(2, 3)));
    }

    mod props {
        use super::*;
        use proptest::prelude::*;

        fn arb_elem(n: usize) -> impl Strategy<Value = HeckeElement> {
            let perms = Permutation::all(n);
            prop::collection::vec((prop::sample::select(perms), -2i64..3, -2i64..3), 1..4).prop_map(move |ts| {
                let mut e = HeckeElement::zero(n);
                for (w, k, c) in ts {
                    e.add_term(w, LaurentPoly::from_int_terms([(k, c)]));
                }
                e
            })
        }

        proptest! {
            #![proptest_config(ProptestConfig::with_cases(64))]
            #[test]
            fn associativity((x, y, z) in (2usize..=4).prop_flat_map(|n| (arb_elem(n), arb_elem(n), arb_elem(n)))) {
                prop_assert_eq!(m(&m(&x, &y), &z), m(&x, &m(&y, &z)));
                prop_assert_eq!(m(&x, &y), mul_oracle(&x, &y));
            }
        }
    }
}
