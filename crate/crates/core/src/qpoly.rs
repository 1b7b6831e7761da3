//! Exact Laurent polynomials in one variable `q` whose exponents live in
//! `(1/D)Z` for a fixed positive denominator `D`, together with quantum
//! integers, factorials and binomials.
//!
//! Coefficients are arbitrary-precision rationals. The gl gauge works with
//! `D = 1`; the sl gauge needs `D = N` to hold `q^(1/N)`.

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, AddAssign, Mul, MulAssign, Neg, Sub, SubAssign};
use std::str::FromStr;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::{BigRational, Ratio};
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};

pub type Rational = BigRational;
pub type Exponent = Ratio<i64>;

pub fn rat(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

pub fn rat_frac(n: i64, d: i64) -> Rational {
    Rational::new(BigInt::from(n), BigInt::from(d))
}

/// Laurent polynomial with exponents `k / denom`, stored by numerator `k`.
#[derive(Clone, Debug)]
pub struct LaurentPoly {
    denom: i64,
    terms: BTreeMap<i64, Rational>,
}

impl LaurentPoly {
    pub fn zero() -> Self {
        Self::zero_with_denom(1)
    }

    pub fn zero_with_denom(denom: i64) -> Self {
        assert!(denom > 0, "exponent denominator must be positive");
        Self { denom, terms: BTreeMap::new() }
    }

    pub fn one() -> Self {
        Self::constant(rat(1))
    }

    pub fn constant(c: Rational) -> Self {
        Self::monomial(c, Exponent::zero())
    }

    pub fn from_int(c: i64) -> Self {
        Self::constant(rat(c))
    }

    /// The variable `q`.
    pub fn q() -> Self {
        Self::q_pow(1)
    }

    /// `q^k` for integral `k`.
    pub fn q_pow(k: i64) -> Self {
        Self::monomial(rat(1), Exponent::from_integer(k))
    }

    /// `c * q^e`.
    pub fn monomial(c: Rational, e: Exponent) -> Self {
        let denom = *e.denom();
        let mut p = Self::zero_with_denom(denom);
        if !c.is_zero() {
            p.terms.insert(*e.numer(), c);
        }
        p
    }

    /// Builds `sum c_i q^{k_i}` from integer exponent / integer coefficient pairs.
    pub fn from_int_terms<I: IntoIterator<Item = (i64, i64)>>(terms: I) -> Self {
        let mut p = Self::zero();
        for (k, c) in terms {
            p.add_term(k, rat(c));
        }
        p
    }

    pub fn denom(&self) -> i64 {
        self.denom
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.terms.len() == 1 && self.terms.get(&0).is_some_and(|c| c.is_one())
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    /// Terms in increasing exponent order.
    pub fn terms(&self) -> impl DoubleEndedIterator<Item = (Exponent, &Rational)> + '_ {
        let d = self.denom;
        self.terms.iter().map(move |(k, c)| (Exponent::new(*k, d), c))
    }

    pub fn coeff(&self, e: Exponent) -> Rational {
        let scaled = e * Exponent::from_integer(self.denom);
        if !scaled.is_integer() {
            return Rational::zero();
        }
        self.terms.get(&scaled.to_integer()).cloned().unwrap_or_else(Rational::zero)
    }

    pub fn min_exp(&self) -> Option<Exponent> {
        self.terms.keys().next().map(|k| Exponent::new(*k, self.denom))
    }

    pub fn max_exp(&self) -> Option<Exponent> {
        self.terms.keys().next_back().map(|k| Exponent::new(*k, self.denom))
    }

    fn add_term(&mut self, k: i64, c: Rational) {
        if c.is_zero() {
            return;
        }
        let slot = self.terms.entry(k).or_insert_with(Rational::zero);
        *slot += c;
        if slot.is_zero() {
            self.terms.remove(&k);
        }
    }

    /// Re-expresses the exponents over `denom`, which must be a multiple of
    /// the current denominator.
    pub fn with_denom(&self, denom: i64) -> Self {
        assert!(denom > 0 && denom % self.denom == 0, "denominator {denom} is not a multiple of {}", self.denom);
        let f = denom / self.denom;
        Self { denom, terms: self.terms.iter().map(|(k, c)| (k * f, c.clone())).collect() }
    }

    fn aligned(a: &Self, b: &Self) -> (Self, Self) {
        let d = a.denom.lcm(&b.denom);
        (a.with_denom(d), b.with_denom(d))
    }

    /// Substitutes `q -> q^{-1}`.
    pub fn bar(&self) -> Self {
        Self { denom: self.denom, terms: self.terms.iter().map(|(k, c)| (-k, c.clone())).collect() }
    }

    /// Sum of coefficients (specialization `q = 1`).
    pub fn eval_at_one(&self) -> Rational {
        self.terms.values().fold(Rational::zero(), |acc, c| acc + c)
    }

    pub fn scale(&self, c: &Rational) -> Self {
        if c.is_zero() {
            return Self::zero_with_denom(self.denom);
        }
        Self { denom: self.denom, terms: self.terms.iter().map(|(k, v)| (*k, v * c)).collect() }
    }

    /// Multiplies by `q^e`.
    pub fn shift(&self, e: Exponent) -> Self {
        let d = self.denom.lcm(e.denom());
        let p = self.with_denom(d);
        let s = (e * Exponent::from_integer(d)).to_integer();
        Self { denom: d, terms: p.terms.into_iter().map(|(k, c)| (k + s, c)).collect() }
    }

    /// Returns `(c, e)` when the polynomial is a single term `c q^e`.
    pub fn as_monomial(&self) -> Option<(Rational, Exponent)> {
        if self.terms.len() != 1 {
            return None;
        }
        let (k, c) = self.terms.iter().next()?;
        Some((c.clone(), Exponent::new(*k, self.denom)))
    }

    /// Multiplicative inverse; only monomials are units.
    pub fn inverse(&self) -> Option<Self> {
        let (c, e) = self.as_monomial()?;
        Some(Self::monomial(c.recip(), -e).with_denom(self.denom))
    }

    pub fn pow(&self, n: i64) -> Result<Self> {
        if n < 0 {
            let inv = self.inverse().ok_or_else(|| Error::InvalidArgument(format!("negative power of non-unit {self}")))?;
            return inv.pow(-n);
        }
        let mut acc = Self::one().with_denom(self.denom);
        let mut base = self.clone();
        let mut e = n;
        while e > 0 {
            if e & 1 == 1 {
                acc = &acc * &base;
            }
            e >>= 1;
            if e > 0 {
                base = &base * &base;
            }
        }
        Ok(acc)
    }

    /// Exact division; fails when `other` does not divide `self`.
    pub fn div_exact(&self, other: &Self) -> Result<Self> {
        if other.is_zero() {
            return Err(Error::InexactDivision("division by zero".into()));
        }
        let (mut rem, div) = Self::aligned(self, other);
        let d = rem.denom;
        let mut quot = Self::zero_with_denom(d);
        if rem.is_zero() {
            return Ok(quot);
        }
        let (&lead_k, lead_c) = div.terms.iter().next_back().expect("nonzero divisor");
        let lead_c = lead_c.clone();
        let low_k = *div.terms.keys().next().expect("nonzero divisor");
        let floor = *rem.terms.keys().next().expect("nonzero dividend") - low_k;
        while let Some((&k, c)) = rem.terms.iter().next_back() {
            let qk = k - lead_k;
            if qk < floor {
                return Err(Error::InexactDivision(format!("({self}) / ({other})")));
            }
            let qc = c / &lead_c;
            for (dk, dc) in div.terms.iter() {
                rem.add_term(qk + dk, -(dc * &qc));
            }
            quot.add_term(qk, qc);
        }
        Ok(quot)
    }
}

impl Default for LaurentPoly {
    fn default() -> Self {
        Self::zero()
    }
}

impl PartialEq for LaurentPoly {
    fn eq(&self, other: &Self) -> bool {
        if self.denom == other.denom {
            return self.terms == other.terms;
        }
        let (a, b) = Self::aligned(self, other);
        a.terms == b.terms
    }
}

impl Eq for LaurentPoly {}

impl From<i64> for LaurentPoly {
    fn from(c: i64) -> Self {
        Self::from_int(c)
    }
}

impl From<Rational> for LaurentPoly {
    fn from(c: Rational) -> Self {
        Self::constant(c)
    }
}

impl<'a> Add<&'a LaurentPoly> for &'a LaurentPoly {
    type Output = LaurentPoly;
    fn add(self, rhs: &'a LaurentPoly) -> LaurentPoly {
        let mut out = self.clone();
        out += rhs;
        out
    }
}

impl<'a> Sub<&'a LaurentPoly> for &'a LaurentPoly {
    type Output = LaurentPoly;
    fn sub(self, rhs: &'a LaurentPoly) -> LaurentPoly {
        let mut out = self.clone();
        out -= rhs;
        out
    }
}

impl<'a> Mul<&'a LaurentPoly> for &'a LaurentPoly {
    type Output = LaurentPoly;
    fn mul(self, rhs: &'a LaurentPoly) -> LaurentPoly {
        let d = self.denom.lcm(&rhs.denom);
        let fa = d / self.denom;
        let fb = d / rhs.denom;
        let mut out = LaurentPoly::zero_with_denom(d);
        for (ka, ca) in &self.terms {
            for (kb, cb) in &rhs.terms {
                out.add_term(ka * fa + kb * fb, ca * cb);
            }
        }
        out
    }
}

impl AddAssign<&LaurentPoly> for LaurentPoly {
    fn add_assign(&mut self, rhs: &LaurentPoly) {
        if rhs.denom % self.denom != 0 || self.denom != rhs.denom {
            let d = self.denom.lcm(&rhs.denom);
            if d != self.denom {
                *self = self.with_denom(d);
            }
        }
        let f = self.denom / rhs.denom;
        for (k, c) in &rhs.terms {
            self.add_term(k * f, c.clone());
        }
    }
}

impl SubAssign<&LaurentPoly> for LaurentPoly {
    fn sub_assign(&mut self, rhs: &LaurentPoly) {
        let d = self.denom.lcm(&rhs.denom);
        if d != self.denom {
            *self = self.with_denom(d);
        }
        let f = self.denom / rhs.denom;
        for (k, c) in &rhs.terms {
            self.add_term(k * f, -c.clone());
        }
    }
}

impl MulAssign<&LaurentPoly> for LaurentPoly {
    fn mul_assign(&mut self, rhs: &LaurentPoly) {
        *self = &*self * rhs;
    }
}

impl Neg for &LaurentPoly {
    type Output = LaurentPoly;
    fn neg(self) -> LaurentPoly {
        LaurentPoly { denom: self.denom, terms: self.terms.iter().map(|(k, c)| (*k, -c.clone())).collect() }
    }
}

impl Neg for LaurentPoly {
    type Output = LaurentPoly;
    fn neg(self) -> LaurentPoly {
        -&self
    }
}

macro_rules! owned_binop {
    ($tr:ident, $f:ident) => {
        impl $tr<LaurentPoly> for LaurentPoly {
            type Output = LaurentPoly;
            fn $f(self, rhs: LaurentPoly) -> LaurentPoly {
                (&self).$f(&rhs)
            }
        }
        impl<'a> $tr<&'a LaurentPoly> for LaurentPoly {
            type Output = LaurentPoly;
            fn $f(self, rhs: &'a LaurentPoly) -> LaurentPoly {
                (&self).$f(rhs)
            }
        }
        impl<'a> $tr<LaurentPoly> for &'a LaurentPoly {
            type Output = LaurentPoly;
            fn $f(self, rhs: LaurentPoly) -> LaurentPoly {
                self.$f(&rhs)
            }
        }
    };
}

owned_binop!(Add, add);
owned_binop!(Sub, sub);
owned_binop!(Mul, mul);

impl std::iter::Sum for LaurentPoly {
    fn sum<I: Iterator<Item = LaurentPoly>>(iter: I) -> Self {
        let mut acc = LaurentPoly::zero();
        for p in iter {
            acc += &p;
        }
        acc
    }
}

impl std::iter::Product for LaurentPoly {
    fn product<I: Iterator<Item = LaurentPoly>>(iter: I) -> Self {
        let mut acc = LaurentPoly::one();
        for p in iter {
            acc *= &p;
        }
        acc
    }
}

/// `[n] = q^{n-1} + q^{n-3} + ... + q^{1-n}`.
pub fn qint(n: i64) -> Result<LaurentPoly> {
    if n < 1 {
        return Err(Error::InvalidArgument(format!("quantum integer needs n >= 1, got {n}")));
    }
    Ok(LaurentPoly::from_int_terms((0..n).map(|i| (n - 1 - 2 * i, 1))))
}

/// `[n]! = [n][n-1]...[2]`, with `[1]! = 1`.
pub fn qfactorial(n: i64) -> Result<LaurentPoly> {
    if n < 1 {
        return Err(Error::InvalidArgument(format!("quantum factorial needs n >= 1, got {n}")));
    }
    (2..=n).map(qint).product()
}

fn qfactorial0(n: i64) -> Result<LaurentPoly> {
    if n == 0 {
        Ok(LaurentPoly::one())
    } else {
        qfactorial(n)
    }
}

/// Quantum binomial `[n]! / ([k]! [n-k]!)`, computed by exact division.
pub fn qbinom(n: i64, k: i64) -> Result<LaurentPoly> {
    if n < 0 || k < 0 {
        return Err(Error::InvalidArgument(format!("quantum binomial needs n, k >= 0, got ({n}, {k})")));
    }
    if k > n {
        return Err(Error::InvalidArgument(format!("quantum binomial needs k <= n, got ({n}, {k})")));
    }
    let num = qfactorial0(n)?;
    let den = &qfactorial0(k)? * &qfactorial0(n - k)?;
    num.div_exact(&den).map_err(|e| Error::Internal(format!("quantum binomial ({n},{k}): {e}")))
}

fn fmt_exponent(e: &Exponent) -> String {
    if e.is_integer() {
        format!("{}", e.to_integer())
    } else {
        format!("({}/{})", e.numer(), e.denom())
    }
}

fn fmt_rational(c: &Rational) -> String {
    if c.is_integer() {
        c.to_integer().to_string()
    } else {
        format!("{}/{}", c.numer(), c.denom())
    }
}

/// Formats `|c| * var-part` for a term whose sign is handled by the caller.
fn fmt_abs_term(c: &Rational, vars: &str) -> String {
    let a = c.abs();
    if vars.is_empty() {
        fmt_rational(&a)
    } else if a.is_one() {
        vars.to_string()
    } else {
        format!("{}*{}", fmt_rational(&a), vars)
    }
}

fn q_part(e: &Exponent) -> String {
    if e.is_zero() {
        String::new()
    } else if e.is_one() {
        "q".into()
    } else {
        format!("q^{}", fmt_exponent(e))
    }
}

fn join_terms<'a, I: Iterator<Item = (&'a Rational, String)>>(f: &mut fmt::Formatter<'_>, terms: I) -> fmt::Result {
    let mut first = true;
    for (c, vars) in terms {
        let neg = c.is_negative();
        let body = fmt_abs_term(c, &vars);
        match (first, neg) {
            (true, false) => write!(f, "{body}")?,
            (true, true) => write!(f, "-{body}")?,
            (false, false) => write!(f, " + {body}")?,
            (false, true) => write!(f, " - {body}")?,
        }
        first = false;
    }
    if first {
        write!(f, "0")?;
    }
    Ok(())
}

impl fmt::Display for LaurentPoly {
    /// Canonical rendering, highest exponent first, e.g. `q^3 + 2*q + 2*q^-1 + q^-3`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        join_terms(f, self.terms().rev().map(|(e, c)| (c, q_part(&e))))
    }
}

/// Tokenizer shared with the Hecke expression parser.
pub(crate) mod lex {
    use super::*;

    #[derive(Debug, Clone, PartialEq)]
    pub enum Tok {
        Num(BigInt),
        Ident(String),
        Plus,
        Minus,
        Star,
        Slash,
        Caret,
        LParen,
        RParen,
    }

    pub fn tokenize(s: &str) -> Result<Vec<Tok>> {
        let mut out = Vec::new();
        let chars: Vec<char> = s.chars().collect();
        let mut i = 0;
        while i < chars.len() {
            let ch = chars[i];
            match ch {
                c if c.is_whitespace() => i += 1,
                '+' => {
                    out.push(Tok::Plus);
                    i += 1
                }
                '-' | '\u{2212}' => {
                    out.push(Tok::Minus);
                    i += 1
                }
                '*' => {
                    out.push(Tok::Star);
                    i += 1
                }
                '/' => {
                    out.push(Tok::Slash);
                    i += 1
                }
                '^' => {
                    out.push(Tok::Caret);
                    i += 1
                }
                '(' => {
                    out.push(Tok::LParen);
                    i += 1
                }
                ')' => {
                    out.push(Tok::RParen);
                    i += 1
                }
                c if c.is_ascii_digit() => {
                    let start = i;
                    while i < chars.len() && chars[i].is_ascii_digit() {
                        i += 1;
                    }
                    let digits: String = chars[start..i].iter().collect();
                    out.push(Tok::Num(digits.parse().map_err(|_| Error::Parse(format!("bad number {digits}")))?));
                }
                c if c.is_ascii_alphabetic() || c == '_' => {
                    let start = i;
                    while i < chars.len() && (chars[i].is_ascii_alphanumeric() || chars[i] == '_') {
                        i += 1;
                    }
                    out.push(Tok::Ident(chars[start..i].iter().collect()));
                }
                other => return Err(Error::Parse(format!("unexpected character {other:?}"))),
            }
        }
        Ok(out)
    }

    pub struct Cursor {
        toks: Vec<Tok>,
        pos: usize,
    }

    impl Cursor {
        pub fn new(toks: Vec<Tok>) -> Self {
            Self { toks, pos: 0 }
        }
        pub fn peek(&self) -> Option<&Tok> {
            self.toks.get(self.pos)
        }
        pub fn next(&mut self) -> Option<Tok> {
            let t = self.toks.get(self.pos).cloned();
            self.pos += 1;
            t
        }
        pub fn eat(&mut self, t: &Tok) -> bool {
            if self.peek() == Some(t) {
                self.pos += 1;
                true
            } else {
                false
            }
        }
        pub fn expect(&mut self, t: &Tok) -> Result<()> {
            if self.eat(t) {
                Ok(())
            } else {
                Err(Error::Parse(format!("expected {t:?}, found {:?}", self.peek())))
            }
        }
        pub fn at_end(&self) -> bool {
            self.pos >= self.toks.len()
        }

        /// Parses an exponent after `^`: `-3`, `2`, `(1/2)`, `(-1/3)`, `(-2)`.
        pub fn exponent(&mut self) -> Result<Exponent> {
            let paren = self.eat(&Tok::LParen);
            let neg = self.eat(&Tok::Minus);
            let n = self.int()?;
            let mut e = Exponent::from_integer(n);
            if paren {
                if self.eat(&Tok::Slash) {
                    let d = self.int()?;
                    if d == 0 {
                        return Err(Error::Parse("zero exponent denominator".into()));
                    }
                    e = Exponent::new(n, d);
                }
                self.expect(&Tok::RParen)?;
            }
            Ok(if neg { -e } else { e })
        }

        pub fn int(&mut self) -> Result<i64> {
            match self.next() {
                Some(Tok::Num(n)) => i64::try_from(n).map_err(|_| Error::Parse("integer too large".into())),
                other => Err(Error::Parse(format!("expected integer, found {other:?}"))),
            }
        }

        /// Unsigned rational literal `a` or `a/b`.
        pub fn rational(&mut self) -> Result<Rational> {
            let n = match self.next() {
                Some(Tok::Num(n)) => n,
                other => return Err(Error::Parse(format!("expected number, found {other:?}"))),
            };
            if self.peek() == Some(&Tok::Slash) {
                self.pos += 1;
                let d = match self.next() {
                    Some(Tok::Num(d)) if !d.is_zero() => d,
                    other => return Err(Error::Parse(format!("bad denominator {other:?}"))),
                };
                return Ok(Rational::new(n, d));
            }
            Ok(Rational::from_integer(n))
        }
    }
}

fn parse_poly_cursor(cur: &mut lex::Cursor) -> Result<LaurentPoly> {
    use lex::Tok;
    let mut acc = LaurentPoly::zero();
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
        let mut coeff = rat(1);
        let mut exp = Exponent::zero();
        loop {
            match cur.peek() {
                Some(Tok::Num(_)) => {
                    coeff *= cur.rational()?;
                }
                Some(Tok::Ident(id)) if id == "q" => {
                    cur.next();
                    if cur.eat(&Tok::Caret) {
                        exp += cur.exponent()?;
                    } else {
                        exp += Exponent::one();
                    }
                }
                other => return Err(Error::Parse(format!("unexpected token {other:?} in polynomial"))),
            }
            if !cur.eat(&Tok::Star) {
                break;
            }
        }
        if neg {
            coeff = -coeff;
        }
        acc += &LaurentPoly::monomial(coeff, exp);
        if cur.at_end() {
            break;
        }
    }
    if !cur.at_end() {
        return Err(Error::Parse(format!("trailing input at {:?}", cur.peek())));
    }
    Ok(acc)
}

impl FromStr for LaurentPoly {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let toks = lex::tokenize(s)?;
        if toks.is_empty() {
            return Err(Error::Parse("empty polynomial".into()));
        }
        let mut cur = lex::Cursor::new(toks);
        parse_poly_cursor(&mut cur)
    }
}

/// Two-variable polynomial in `q` (rational exponents) and `t` (integral).
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct BiPoly {
    terms: BTreeMap<(i64, Exponent), Rational>,
}

impl BiPoly {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn add_term(&mut self, q_exp: Exponent, t_exp: i64, c: Rational) {
        if c.is_zero() {
            return;
        }
        let key = (t_exp, q_exp);
        let slot = self.terms.entry(key).or_insert_with(Rational::zero);
        *slot += c;
        if slot.is_zero() {
            self.terms.remove(&key);
        }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// Terms as `(q exponent, t exponent, coefficient)`, ordered by `t` then `q`.
    pub fn terms(&self) -> impl Iterator<Item = (Exponent, i64, &Rational)> + '_ {
        self.terms.iter().map(|((t, q), c)| (*q, *t, c))
    }

    /// Specializes `t` to an integer value; `t = -1` gives the graded Euler characteristic.
    pub fn at_t(&self, t: i64) -> LaurentPoly {
        let mut out = LaurentPoly::zero();
        for ((te, qe), c) in &self.terms {
            let tv = if *te >= 0 { rat(t).pow(*te as i32) } else { rat(t).recip().pow((-*te) as i32) };
            out += &LaurentPoly::monomial(c * tv, *qe);
        }
        out
    }
}

impl fmt::Display for BiPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        join_terms(
            f,
            self.terms.iter().map(|((t, q), c)| {
                let mut vars = q_part(q);
                let tp = match *t {
                    0 => String::new(),
                    1 => "t".into(),
                    k => format!("t^{k}"),
                };
                if !tp.is_empty() {
                    if !vars.is_empty() {
                        vars.push('*');
                    }
                    vars.push_str(&tp);
                }
                (c, vars)
            }),
        )
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(s: &str) -> LaurentPoly {
        s.parse().unwrap()
    }

    #[test]
    fn quantum_integers() {
        assert!(qint(1).unwrap().is_one());
        assert_eq!(qint(2).unwrap(), p("q + q^-1"));
        assert_eq!(qint(3).unwrap(), p("q^2 + 1 + q^-2"));
        assert!(qint(0).is_err());
        assert!(qint(-2).is_err());
    }

    #[test]
    fn quantum_factorials() {
        assert!(qfactorial(1).unwrap().is_one());
        assert_eq!(qfactorial(2).unwrap(), p("q + q^-1"));
        assert_eq!(qfactorial(3).unwrap(), p("q^3 + 2*q + 2*q^-1 + q^-3"));
        assert!(qfactorial(0).is_err());
    }

    /// Brute force: sum over k-subsets S of {1..n} of q^{sum (n+1-2s)}.
    fn qbinom_oracle(n: i64, k: i64) -> LaurentPoly {
        let mut out = LaurentPoly::zero();
        for mask in 0u32..(1 << n) {
            if mask.count_ones() as i64 != k {
                continue;
            }
            let w: i64 = (1..=n).filter(|s| mask & (1 << (s - 1)) != 0).map(|s| n + 1 - 2 * s).sum();
            out += &LaurentPoly::q_pow(w);
        }
        out
    }

    #[test]
    fn quantum_binomials() {
        assert_eq!(qbinom(2, 1).unwrap(), p("q + q^-1"));
        assert!(qbinom(2, 2).unwrap().is_one());
        assert_eq!(qbinom(4, 2).unwrap(), p("q^4 + q^2 + 2 + q^-2 + q^-4"));
        assert!(qbinom(2, 3).is_err());
        for n in 0..=8 {
            for k in 0..=n {
                assert_eq!(qbinom(n, k).unwrap(), qbinom_oracle(n, k), "[{n} choose {k}]");
            }
        }
    }

    #[test]
    fn bar_examples() {
        assert_eq!(p("q + q^-1").bar(), p("q + q^-1"));
        assert_eq!(p("q^2").bar(), p("q^-2"));
        let x = p("3*q - q^(1/2)");
        assert_eq!(x.denom(), 2);
        assert_eq!(x.bar(), p("3*q^-1 - q^(-1/2)"));
    }

    #[test]
    fn eval_at_one_examples() {
        assert_eq!(p("q + q^-1").eval_at_one(), rat(2));
        assert_eq!(qbinom(4, 2).unwrap().eval_at_one(), rat(6));
        assert_eq!(LaurentPoly::zero().eval_at_one(), rat(0));
    }

    #[test]
    fn display_is_canonical() {
        assert_eq!(qfactorial(3).unwrap().to_string(), "q^3 + 2*q + 2*q^-1 + q^-3");
        assert_eq!(p("q^(1/2)").to_string(), "q^(1/2)");
        assert_eq!(p("-q^(-3/2) + 1/2").to_string(), "1/2 - q^(-3/2)");
        assert_eq!(LaurentPoly::zero().to_string(), "0");
        assert_eq!(p("-q").to_string(), "-q");
        assert_eq!(p("q^(2/2)"), p("q"));
    }

    #[test]
    fn denominators_combine_by_lcm() {
        let a = p("q^(1/2)");
        let b = p("q^(1/3)");
        assert_eq!((&a * &b).denom(), 6);
        assert_eq!((&a + &b).denom(), 6);
        assert_eq!(&a * &b, p("q^(5/6)"));
    }

    #[test]
    fn exact_division() {
        let a = qint(3).unwrap();
        let b = qint(2).unwrap();
        let prod = &a * &b;
        assert_eq!(prod.div_exact(&b).unwrap(), a);
        assert!(a.div_exact(&b).is_err());
        assert_eq!(p("q^3").div_exact(&p("-q")).unwrap(), p("-q^2"));
    }

    #[test]
    fn powers_and_inverse() {
        assert_eq!(p("-q").pow(3).unwrap(), p("-q^3"));
        assert_eq!(p("2*q").pow(-2).unwrap(), p("1/4*q^-2"));
        assert!(p("q + 1").pow(-1).is_err());
    }

    #[test]
    fn bipoly_euler() {
        let mut b = BiPoly::zero();
        b.add_term(Exponent::from_integer(-1), 0, rat(1));
        b.add_term(Exponent::from_integer(1), 0, rat(1));
        b.add_term(Exponent::from_integer(-4), 2, rat(1));
        b.add_term(Exponent::from_integer(-2), 1, rat(3));
        assert_eq!(b.to_string(), "q^-1 + q + 3*q^-2*t + q^-4*t^2");
        assert_eq!(b.at_t(-1), p("q + q^-1 - 3*q^-2 + q^-4"));
    }
}

#[cfg(test)]
mod props {
    use super::*;
    use proptest::prelude::*;

    fn arb_poly() -> impl Strategy<Value = LaurentPoly> {
        (prop::sample::select(vec![1i64, 2, 3]), prop::collection::vec((-6i64..6, -5i64..5, 1i64..4), 0..5)).prop_map(|(d, terms)| {
            let mut p = LaurentPoly::zero_with_denom(d);
            for (k, n, m) in terms {
                p += &LaurentPoly::monomial(rat_frac(n, m), Exponent::new(k, d));
            }
            p
        })
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(1000))]

        #[test]
        fn ring_axioms(a in arb_poly(), b in arb_poly(), c in arb_poly()) {
            prop_assert_eq!(&(&a * &b) * &c, &a * &(&b * &c));
            prop_assert_eq!(&a * &(&b + &c), &(&a * &b) + &(&a * &c));
            prop_assert_eq!(&a * &b, &b * &a);
            prop_assert_eq!(&a + &b, &b + &a);
            prop_assert!((&a - &a).is_zero());
        }

        #[test]
        fn bar_is_involutive_ring_map(a in arb_poly(), b in arb_poly()) {
            prop_assert_eq!(a.bar().bar(), a.clone());
            prop_assert_eq!((&a * &b).bar(), &a.bar() * &b.bar());
        }

        #[test]
        fn text_round_trip(a in arb_poly()) {
            let back: LaurentPoly = a.to_string().parse().unwrap();
            prop_assert_eq!(back, a);
        }

        #[test]
        fn division_inverts_multiplication(a in arb_poly(), b in arb_poly()) {
            prop_assume!(!b.is_zero());
            let prod = &a * &b;
            prop_assert_eq!(prod.div_exact(&b).unwrap(), a);
        }
    }

    #[test]
    fn binomial_properties() {
        for n in 0..=10i64 {
            for k in 0..=n {
                let b = qbinom(n, k).unwrap();
                if n <= 8 {
                    assert_eq!(b.bar(), b);
                }
                assert_eq!(b, qbinom(n, n - k).unwrap());
                let classical = (0..k).fold(BigInt::from(1), |acc, i| acc * (n - i) / (i + 1));
                assert_eq!(b.eval_at_one(), Rational::from_integer(classical));
            }
        }
        for n in 1..=8 {
            assert_eq!(qint(n).unwrap().bar(), qint(n).unwrap());
        }
    }
}
