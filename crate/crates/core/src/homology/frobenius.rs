//! Commutative Frobenius algebras `Q[X]/P(X)` with trace `tr(X^{N-1}) = 1`.

use num_traits::Zero;

use crate::error::{Error, Result};
use crate::linalg::{invert_dense, SparseVec};
use crate::qpoly::Rational;
use crate::upoly::UPoly;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FrobeniusAlgebra {
    p: UPoly,
    basis: Vec<UPoly>,
    /// Columns: monomial coordinates to basis coordinates.
    to_basis: Vec<Vec<Rational>>,
    mult: Vec<Vec<SparseVec>>,
    comult: Vec<Vec<(usize, usize, Rational)>>,
    x_action: Vec<SparseVec>,
    unit: SparseVec,
    counit: Vec<Rational>,
    /// Basis element `b_i` is `block[i]`-th CRT summand when built from roots.
    block: Vec<usize>,
}

impl FrobeniusAlgebra {
    /// Monomial basis `1, X, ..., X^{N-1}`.
    pub fn from_polynomial(p: &UPoly) -> Result<Self> {
        let n = p.degree().filter(|&d| d >= 1).ok_or_else(|| Error::InvalidArgument(format!("P = {p} must have degree >= 1")))?;
        if !p.is_monic() {
            return Err(Error::InvalidArgument(format!("P = {p} is not monic")));
        }
        Self::with_basis(p, (0..n).map(UPoly::x_pow).collect(), vec![0; n])
    }

    /// Algebra on an arbitrary basis of `Q[X]/P`, given as residues.
    pub fn with_basis(p: &UPoly, basis: Vec<UPoly>, block: Vec<usize>) -> Result<Self> {
        let n = p.degree().unwrap_or(0);
        if basis.len() != n || block.len() != n {
            return Err(Error::InvalidArgument("basis size must equal deg P".into()));
        }
        let coords = |f: &UPoly| -> Vec<Rational> { (0..n).map(|i| f.rem(p).coeff(i)).collect() };
        // matrix with columns = monomial coordinates of basis elements
        let cols: Vec<Vec<Rational>> = basis.iter().map(coords).collect();
        let m: Vec<Vec<Rational>> = (0..n).map(|r| (0..n).map(|c| cols[c][r].clone()).collect()).collect();
        let inv = invert_dense(&m).ok_or_else(|| Error::InvalidArgument("not a basis of Q[X]/P".into()))?;
        let mut alg = Self {
            p: p.clone(),
            basis,
            to_basis: inv,
            mult: Vec::new(),
            comult: Vec::new(),
            x_action: Vec::new(),
            unit: Vec::new(),
            counit: Vec::new(),
            block,
        };
        alg.unit = alg.express(&UPoly::one());
        alg.x_action = (0..n).map(|i| alg.express(&(&UPoly::x() * &alg.basis[i]))).collect();
        alg.mult = (0..n).map(|i| (0..n).map(|j| alg.express(&(&alg.basis[i] * &alg.basis[j]))).collect()).collect();
        alg.counit = (0..n).map(|i| alg.basis[i].rem(p).coeff(n - 1)).collect();
        // dual basis under the trace pairing: b_k^* = sum_l Ginv[l][k] b_l
        let gram: Vec<Vec<Rational>> = (0..n).map(|i| (0..n).map(|j| alg.trace_of(&alg.mult[i][j])).collect()).collect();
        let ginv = invert_dense(&gram).ok_or_else(|| Error::Internal("trace pairing is degenerate".into()))?;
        // Delta(a) = sum_k a b_k (x) b_k^*
        alg.comult = (0..n)
            .map(|a| {
                let mut acc: std::collections::BTreeMap<(usize, usize), Rational> = Default::default();
                for k in 0..n {
                    for (u, cu) in &alg.mult[a][k] {
                        for (l, g) in ginv.iter().enumerate() {
                            let c = &g[k];
                            if !c.is_zero() {
                                *acc.entry((*u, l)).or_insert_with(Rational::zero) += cu * c;
                            }
                        }
                    }
                }
                acc.into_iter().filter(|(_, c)| !c.is_zero()).map(|((u, l), c)| (u, l, c)).collect()
            })
            .collect();
        Ok(alg)
    }

    /// CRT-adapted basis `e_i (X - lambda_i)^k`, `k < N_i`.
    pub fn adapted(spec: &super::DeformationSpec) -> Result<Self> {
        let p = spec.polynomial();
        let es = super::crt_idempotents(spec)?;
        let mut basis = Vec::new();
        let mut block = Vec::new();
        for (i, (lambda, m)) in spec.roots.iter().enumerate() {
            for k in 0..*m {
                basis.push((&es[i] * &UPoly::linear_power(lambda, k)).rem(&p));
                block.push(i);
            }
        }
        Self::with_basis(&p, basis, block)
    }

    fn express(&self, f: &UPoly) -> SparseVec {
        let n = self.dim();
        let r = f.rem(&self.p);
        let mut out = Vec::new();
        for (i, row) in self.to_basis.iter().enumerate() {
            let mut v = Rational::zero();
            for (j, c) in row.iter().enumerate().take(n) {
                v += c * r.coeff(j);
            }
            if !v.is_zero() {
                out.push((i, v));
            }
        }
        out
    }

    fn trace_of(&self, v: &SparseVec) -> Rational {
        v.iter().map(|(i, c)| c * &self.counit[*i]).sum()
    }

    pub fn polynomial(&self) -> &UPoly {
        &self.p
    }

    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    pub fn basis(&self) -> &[UPoly] {
        &self.basis
    }

    pub fn block(&self, i: usize) -> usize {
        self.block[i]
    }

    /// True when `P = X^N` and the basis is monomial, so `deg X = 2` grades everything.
    pub fn is_graded(&self) -> bool {
        let n = self.dim();
        self.p == UPoly::x_pow(n) && self.basis.iter().enumerate().all(|(i, b)| *b == UPoly::x_pow(i))
    }

    /// Quantum degree of `b_i` on a circle: `2 deg(b_i) + 1 - N` (a filtration
    /// level when the algebra is not graded).
    pub fn qdeg(&self, i: usize) -> i64 {
        2 * self.basis[i].degree().unwrap_or(0) as i64 + 1 - self.dim() as i64
    }

    pub fn unit(&self) -> &SparseVec {
        &self.unit
    }

    pub fn counit(&self, i: usize) -> &Rational {
        &self.counit[i]
    }

    pub fn mul(&self, i: usize, j: usize) -> &SparseVec {
        &self.mult[i][j]
    }

    pub fn comul(&self, i: usize) -> &[(usize, usize, Rational)] {
        &self.comult[i]
    }

    /// `X * b_i`.
    pub fn x_times(&self, i: usize) -> &SparseVec {
        &self.x_action[i]
    }

    /// Basis coordinates of an arbitrary residue.
    pub fn coords(&self, f: &UPoly) -> SparseVec {
        self.express(f)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::qpoly::rat;

    fn alg(s: &str) -> FrobeniusAlgebra {
        FrobeniusAlgebra::from_polynomial(&s.parse().unwrap()).unwrap()
    }

    fn tensor(v: &[(usize, usize, Rational)]) -> Vec<(usize, usize, Rational)> {
        let mut v = v.to_vec();
        v.sort();
        v
    }

    #[test]
    fn khovanov_comultiplication() {
        let a = alg("X^2");
        assert_eq!(tensor(a.comul(0)), vec![(0, 1, rat(1)), (1, 0, rat(1))]);
        assert_eq!(tensor(a.comul(1)), vec![(1, 1, rat(1))]);
        assert!(a.is_graded());
        assert_eq!((a.qdeg(0), a.qdeg(1)), (-1, 1));
    }

    #[test]
    fn lee_comultiplication() {
        let a = alg("X^2 - 1");
        assert_eq!(tensor(a.comul(1)), vec![(0, 0, rat(1)), (1, 1, rat(1))]);
        assert!(!a.is_graded());
    }

    #[test]
    fn rank_one() {
        let a = alg("X - 3");
        assert_eq!(a.dim(), 1);
        assert_eq!(a.mul(0, 0), &vec![(0, rat(1))]);
        assert_eq!(a.x_times(0), &vec![(0, rat(3))]);
        assert!(FrobeniusAlgebra::from_polynomial(&UPoly::from_ints(&[1, 2])).is_err());
    }

    /// `(m (x) id)(id (x) Delta) = Delta m` on all basis pairs.
    fn frobenius_identity(a: &FrobeniusAlgebra) {
        let n = a.dim();
        for i in 0..n {
            for j in 0..n {
                let mut lhs: std::collections::BTreeMap<(usize, usize), Rational> = Default::default();
                for (u, v, c) in a.comul(j) {
                    for (w, d) in a.mul(i, *u) {
                        *lhs.entry((*w, *v)).or_insert_with(Rational::zero) += c * d;
                    }
                }
                let mut rhs: std::collections::BTreeMap<(usize, usize), Rational> = Default::default();
                for (w, d) in a.mul(i, j) {
                    for (u, v, c) in a.comul(*w) {
                        *rhs.entry((*u, *v)).or_insert_with(Rational::zero) += c * d;
                    }
                }
                lhs.retain(|_, c| !c.is_zero());
                rhs.retain(|_, c| !c.is_zero());
                assert_eq!(lhs, rhs, "P = {} i={i} j={j}", a.polynomial());
            }
        }
    }

    #[test]
    fn frobenius_condition() {
        for p in ["X^2", "X^2 - 1", "X^2 - X", "X^3 - 2*X + 1/3", "X^4"] {
            frobenius_identity(&alg(p));
        }
        let spec = "0^2,1".parse().unwrap();
        frobenius_identity(&FrobeniusAlgebra::adapted(&spec).unwrap());
    }
}
