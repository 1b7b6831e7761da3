//! Root data `Σ = {λ_1^{N_1}, ..., λ_l^{N_l}}`, CRT idempotents and the
//! branching rule for exterior powers.

use std::fmt;
use std::str::FromStr;

use num_integer::binomial;
use num_traits::ToPrimitive;

use crate::error::{Error, Result};
use crate::qpoly::{lex, qbinom, Rational};
use crate::upoly::UPoly;

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct DeformationSpec {
    pub roots: Vec<(Rational, usize)>,
}

impl DeformationSpec {
    pub fn new(roots: Vec<(Rational, usize)>) -> Result<Self> {
        if roots.is_empty() {
            return Err(Error::InvalidArgument("Σ needs at least one root".into()));
        }
        for (i, (l, m)) in roots.iter().enumerate() {
            if *m == 0 {
                return Err(Error::InvalidArgument(format!("root {l} has multiplicity 0")));
            }
            if roots[..i].iter().any(|(k, _)| k == l) {
                return Err(Error::InvalidArgument(format!("repeated root {l}")));
            }
        }
        Ok(Self { roots })
    }

    /// `N = Σ N_i`.
    pub fn n(&self) -> usize {
        self.roots.iter().map(|(_, m)| m).sum()
    }

    /// `P_Σ = Π (X - λ_i)^{N_i}`.
    pub fn polynomial(&self) -> UPoly {
        self.roots.iter().fold(UPoly::one(), |acc, (l, m)| &acc * &UPoly::linear_power(l, *m))
    }
}

impl FromStr for DeformationSpec {
    type Err = Error;

    /// `1,-1`, `0^2,1`, `1/2,-3^2`.
    fn from_str(s: &str) -> Result<Self> {
        let mut roots = Vec::new();
        for part in s.split(',') {
            let part = part.trim();
            if part.is_empty() {
                return Err(Error::Parse(format!("empty root in {s:?}")));
            }
            let (value, mult) = match part.split_once('^') {
                Some((v, m)) => (v.trim(), m.trim().parse::<usize>().map_err(|_| Error::Parse(format!("bad multiplicity in {part:?}")))?),
                None => (part, 1),
            };
            let toks = lex::tokenize(value)?;
            let mut cur = lex::Cursor::new(toks);
            let neg = cur.eat(&lex::Tok::Minus);
            let v = cur.rational()?;
            let v = if neg { -v } else { v };
            if !cur.at_end() {
                return Err(Error::Parse(format!("bad root {value:?}")));
            }
            roots.push((v, mult));
        }
        Self::new(roots)
    }
}

impl fmt::Display for DeformationSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.roots.iter().map(|(l, m)| if *m == 1 { l.to_string() } else { format!("{l}^{m}") }).collect();
        write!(f, "{}", parts.join(","))
    }
}

/// `e_i ≡ 1 mod (X-λ_i)^{N_i}`, `e_i ≡ 0 mod the other factors`, reduced mod `P_Σ`.
pub fn crt_idempotents(spec: &DeformationSpec) -> Result<Vec<UPoly>> {
    let p = spec.polynomial();
    let mut out = Vec::with_capacity(spec.roots.len());
    for (l, m) in &spec.roots {
        let f = UPoly::linear_power(l, *m);
        let (q, r) = p.div_rem(&f);
        debug_assert!(r.is_zero());
        let (g, s, _) = UPoly::ext_gcd(&q, &f);
        if g != UPoly::one() {
            return Err(Error::InvalidArgument(format!("factors of {p} are not coprime")));
        }
        out.push((&s * &q).rem(&p));
    }
    Ok(out)
}

/// `Σ e_i = 1`, `e_i e_j = δ_ij e_i` mod `P_Σ`, and `e_i ≡ 1 mod (X-λ_i)^{N_i}`.
pub fn crt_identities_hold(spec: &DeformationSpec) -> Result<bool> {
    let p = spec.polynomial();
    let es = crt_idempotents(spec)?;
    let sum = es.iter().fold(UPoly::zero(), |a, e| &a + e);
    let mut ok = sum.rem(&p) == UPoly::one();
    for (i, ei) in es.iter().enumerate() {
        for (j, ej) in es.iter().enumerate() {
            let prod = (ei * ej).rem(&p);
            ok &= if i == j { prod == *ei } else { prod.is_zero() };
        }
        let (l, m) = &spec.roots[i];
        ok &= ei.rem(&UPoly::linear_power(l, *m)) == UPoly::one();
    }
    Ok(ok)
}

/// `(qbinom(N,k) at q=1, Σ_{k_1+...+k_l=k} Π binom(N_i, k_i))`.
pub fn branching_dims(n: usize, parts: &[usize], k: usize) -> Result<(u64, u64)> {
    if parts.iter().sum::<usize>() != n || parts.contains(&0) {
        return Err(Error::InvalidArgument(format!("{parts:?} is not a composition of {n}")));
    }
    if k > n {
        return Err(Error::InvalidArgument(format!("k = {k} exceeds N = {n}")));
    }
    let lhs = qbinom(n as i64, k as i64)?.eval_at_one();
    let lhs = lhs.to_integer().to_u64().ok_or_else(|| Error::Internal("binomial overflow".into()))?;
    // dp[j] = number of ways with total j over the parts seen so far
    let mut dp = vec![0u64; k + 1];
    dp[0] = 1;
    for &ni in parts {
        let mut next = vec![0u64; k + 1];
        for (j, &ways) in dp.iter().enumerate() {
            if ways == 0 {
                continue;
            }
            for ki in 0..=ni.min(k - j) {
                next[j + ki] += ways * binomial(ni as u64, ki as u64);
            }
        }
        dp = next;
    }
    Ok((lhs, dp[k]))
}

/// All compositions of `n` into positive parts.
pub fn compositions(n: usize) -> Vec<Vec<usize>> {
    if n == 0 {
        return vec![vec![]];
    }
    let mut out = Vec::new();
    for first in 1..=n {
        for mut rest in compositions(n - first) {
            rest.insert(0, first);
            out.push(rest);
        }
    }
    out
}
