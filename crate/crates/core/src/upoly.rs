//! Dense univariate polynomials in `X` over the rationals, used for the
//! Frobenius algebras `Q[X]/P(X)` and their CRT idempotents.

use std::fmt;
use std::str::FromStr;

use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::qpoly::{lex, rat, Rational};

/// Coefficients in increasing degree, no trailing zeros.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Default)]
pub struct UPoly {
    coeffs: Vec<Rational>,
}

impl UPoly {
    pub fn new(mut coeffs: Vec<Rational>) -> Self {
        while coeffs.last().is_some_and(|c| c.is_zero()) {
            coeffs.pop();
        }
        Self { coeffs }
    }

    pub fn from_ints(coeffs: &[i64]) -> Self {
        Self::new(coeffs.iter().map(|&c| rat(c)).collect())
    }

    pub fn zero() -> Self {
        Self::default()
    }

    pub fn one() -> Self {
        Self::constant(rat(1))
    }

    pub fn constant(c: Rational) -> Self {
        Self::new(vec![c])
    }

    pub fn x() -> Self {
        Self::from_ints(&[0, 1])
    }

    /// `X^k`.
    pub fn x_pow(k: usize) -> Self {
        let mut c = vec![Rational::zero(); k + 1];
        c[k] = Rational::one();
        Self::new(c)
    }

    /// `(X - lambda)^m`.
    pub fn linear_power(lambda: &Rational, m: usize) -> Self {
        let lin = Self::new(vec![-lambda.clone(), Rational::one()]);
        (0..m).fold(Self::one(), |acc, _| &acc * &lin)
    }

    pub fn coeffs(&self) -> &[Rational] {
        &self.coeffs
    }

    pub fn coeff(&self, i: usize) -> Rational {
        self.coeffs.get(i).cloned().unwrap_or_else(Rational::zero)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Degree, with `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn lead(&self) -> Rational {
        self.coeffs.last().cloned().unwrap_or_else(Rational::zero)
    }

    pub fn is_monic(&self) -> bool {
        self.coeffs.last().is_some_and(|c| c.is_one())
    }

    pub fn scale(&self, c: &Rational) -> Self {
        Self::new(self.coeffs.iter().map(|a| a * c).collect())
    }

    pub fn eval(&self, x: &Rational) -> Rational {
        self.coeffs.iter().rev().fold(Rational::zero(), |acc, c| acc * x + c)
    }

    /// Quotient and remainder; panics on a zero divisor.
    pub fn div_rem(&self, d: &Self) -> (Self, Self) {
        let dd = d.degree().expect("division by zero polynomial");
        let lead = d.lead();
        let mut rem = self.coeffs.clone();
        if rem.len() <= dd {
            return (Self::zero(), self.clone());
        }
        let mut quot = vec![Rational::zero(); rem.len() - dd];
        for i in (0..quot.len()).rev() {
            let c = &rem[i + dd] / &lead;
            if c.is_zero() {
                continue;
            }
            for (j, dc) in d.coeffs.iter().enumerate() {
                rem[i + j] -= &c * dc;
            }
            quot[i] = c;
        }
        rem.truncate(dd);
        (Self::new(quot), Self::new(rem))
    }

    pub fn rem(&self, d: &Self) -> Self {
        self.div_rem(d).1
    }

    /// Returns `(g, s, t)` with `s*a + t*b = g`, `g` monic (or zero).
    pub fn ext_gcd(a: &Self, b: &Self) -> (Self, Self, Self) {
        let (mut r0, mut r1) = (a.clone(), b.clone());
        let (mut s0, mut s1) = (Self::one(), Self::zero());
        let (mut t0, mut t1) = (Self::zero(), Self::one());
        while !r1.is_zero() {
            let (q, r) = r0.div_rem(&r1);
            let s2 = &s0 - &(&q * &s1);
            let t2 = &t0 - &(&q * &t1);
            r0 = std::mem::replace(&mut r1, r);
            s0 = std::mem::replace(&mut s1, s2);
            t0 = std::mem::replace(&mut t1, t2);
        }
        if r0.is_zero() {
            return (r0, s0, t0);
        }
        let inv = r0.lead().recip();
        (r0.scale(&inv), s0.scale(&inv), t0.scale(&inv))
    }
}

impl std::ops::Add for &UPoly {
    type Output = UPoly;
    fn add(self, rhs: &UPoly) -> UPoly {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        UPoly::new((0..n).map(|i| self.coeff(i) + rhs.coeff(i)).collect())
    }
}

impl std::ops::Sub for &UPoly {
    type Output = UPoly;
    fn sub(self, rhs: &UPoly) -> UPoly {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        UPoly::new((0..n).map(|i| self.coeff(i) - rhs.coeff(i)).collect())
    }
}

impl std::ops::Mul for &UPoly {
    type Output = UPoly;
    fn mul(self, rhs: &UPoly) -> UPoly {
        if self.is_zero() || rhs.is_zero() {
            return UPoly::zero();
        }
        let mut out = vec![Rational::zero(); self.coeffs.len() + rhs.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in rhs.coeffs.iter().enumerate() {
                out[i + j] += a * b;
            }
        }
        UPoly::new(out)
    }
}

impl fmt::Display for UPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for (i, c) in self.coeffs.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            let a = c.abs();
            let num = if a.is_integer() { a.to_integer().to_string() } else { format!("{}/{}", a.numer(), a.denom()) };
            let var = match i {
                0 => String::new(),
                1 => "X".into(),
                k => format!("X^{k}"),
            };
            let body = if var.is_empty() {
                num
            } else if a.is_one() {
                var
            } else {
                format!("{num}*{var}")
            };
            let sign = if c.is_negative() { "-" } else { "+" };
            if first {
                if c.is_negative() {
                    write!(f, "-")?;
                }
                write!(f, "{body}")?;
            } else {
                write!(f, " {sign} {body}")?;
            }
            first = false;
        }
        if first {
            write!(f, "0")?;
        }
        Ok(())
    }
}

impl FromStr for UPoly {
    type Err = Error;

    /// Accepts `X^2 - 1`, `x^2-x`, `X - 1/2`, with an optional `P=` prefix.
    fn from_str(s: &str) -> Result<Self> {
        use lex::Tok;
        let body = s.trim();
        let body = body.strip_prefix("P=").or_else(|| body.strip_prefix("P =")).unwrap_or(body);
        let toks = lex::tokenize(body)?;
        if toks.is_empty() {
            return Err(Error::Parse("empty polynomial".into()));
        }
        let mut cur = lex::Cursor::new(toks);
        let mut acc = UPoly::zero();
        let mut first = true;
        while !cur.at_end() {
            let neg = if cur.eat(&Tok::Minus) {
                true
            } else if first || cur.eat(&Tok::Plus) {
                false
            } else {
                return Err(Error::Parse(format!("unexpected token {:?}", cur.peek())));
            };
            first = false;
            let mut coeff = rat(1);
            let mut deg = 0usize;
            loop {
                match cur.peek() {
                    Some(Tok::Num(_)) => coeff *= cur.rational()?,
                    Some(Tok::Ident(id)) if id == "X" || id == "x" => {
                        cur.next();
                        if cur.eat(&Tok::Caret) {
                            let e = cur.int()?;
                            if e < 0 {
                                return Err(Error::Parse("negative power of X".into()));
                            }
                            deg += e as usize;
                        } else {
                            deg += 1;
                        }
                    }
                    other => return Err(Error::Parse(format!("unexpected token {other:?} in polynomial in X"))),
                }
                if !cur.eat(&Tok::Star) {
                    break;
                }
            }
            if neg {
                coeff = -coeff;
            }
            acc = &acc + &UPoly::x_pow(deg).scale(&coeff);
        }
        Ok(acc)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parse_and_print() {
        let p: UPoly = "P=X^2-1".parse().unwrap();
        assert_eq!(p, UPoly::from_ints(&[-1, 0, 1]));
        assert_eq!(p.to_string(), "X^2 - 1");
        let r: UPoly = "x^3 - 1/2*x + 2".parse().unwrap();
        assert_eq!(r.to_string().parse::<UPoly>().unwrap(), r);
        assert!("X^-1".parse::<UPoly>().is_err());
    }

    #[test]
    fn division_identity() {
        let a = UPoly::from_ints(&[3, -2, 0, 5, 1]);
        let b = UPoly::from_ints(&[1, 2, 3]);
        let (q, r) = a.div_rem(&b);
        assert_eq!(&(&q * &b) + &r, a);
        assert!(r.degree() < b.degree());
    }

    #[test]
    fn extended_euclid() {
        let a = UPoly::linear_power(&rat(0), 2);
        let b = UPoly::linear_power(&rat(1), 1);
        let (g, s, t) = UPoly::ext_gcd(&a, &b);
        assert_eq!(g, UPoly::one());
        assert_eq!(&(&s * &a) + &(&t * &b), g);
    }
}
