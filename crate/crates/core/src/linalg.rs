//! Sparse exact linear algebra over the rationals: sparse vectors, linear
//! maps stored by the images of basis vectors, and an incremental echelon
//! form used for ranks, kernels and quotient coordinates.

use std::collections::{BTreeMap, HashMap};

use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::qpoly::Rational;

/// Sorted `(index, value)` pairs with no zero values.
pub type SparseVec = Vec<(usize, Rational)>;

pub fn sparse_from_map(m: BTreeMap<usize, Rational>) -> SparseVec {
    m.into_iter().filter(|(_, v)| !v.is_zero()).collect()
}

pub fn unit_vec(i: usize) -> SparseVec {
    vec![(i, Rational::one())]
}

/// `y + a * x`.
pub fn axpy(y: &[(usize, Rational)], a: &Rational, x: &[(usize, Rational)]) -> SparseVec {
    let mut out = Vec::with_capacity(y.len() + x.len());
    let (mut i, mut j) = (0, 0);
    while i < y.len() || j < x.len() {
        if j >= x.len() || (i < y.len() && y[i].0 < x[j].0) {
            out.push(y[i].clone());
            i += 1;
        } else if i >= y.len() || x[j].0 < y[i].0 {
            out.push((x[j].0, a * &x[j].1));
            j += 1;
        } else {
            let v = &y[i].1 + a * &x[j].1;
            if !v.is_zero() {
                out.push((y[i].0, v));
            }
            i += 1;
            j += 1;
        }
    }
    out
}

pub fn scale_vec(x: &[(usize, Rational)], a: &Rational) -> SparseVec {
    if a.is_zero() {
        return Vec::new();
    }
    x.iter().map(|(i, v)| (*i, v * a)).collect()
}

/// Linear map `Q^dom -> Q^cod` given by the images of the standard basis.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LinearMap {
    dom: usize,
    cod: usize,
    images: Vec<SparseVec>,
}

impl LinearMap {
    pub fn zero(dom: usize, cod: usize) -> Self {
        Self { dom, cod, images: vec![Vec::new(); dom] }
    }

    pub fn identity(n: usize) -> Self {
        Self { dom: n, cod: n, images: (0..n).map(unit_vec).collect() }
    }

    pub fn from_images(dom: usize, cod: usize, images: Vec<SparseVec>) -> Self {
        assert_eq!(images.len(), dom);
        debug_assert!(images.iter().all(|v| v.iter().all(|(i, c)| *i < cod && !c.is_zero())));
        Self { dom, cod, images }
    }

    /// Builds from `(row, col, value)` triplets, summing duplicates.
    pub fn from_triplets<I: IntoIterator<Item = (usize, usize, Rational)>>(dom: usize, cod: usize, entries: I) -> Self {
        let mut cols: Vec<BTreeMap<usize, Rational>> = vec![BTreeMap::new(); dom];
        for (r, c, v) in entries {
            assert!(r < cod && c < dom, "entry ({r},{c}) outside {cod}x{dom}");
            *cols[c].entry(r).or_insert_with(Rational::zero) += v;
        }
        Self { dom, cod, images: cols.into_iter().map(sparse_from_map).collect() }
    }

    pub fn dom(&self) -> usize {
        self.dom
    }

    pub fn cod(&self) -> usize {
        self.cod
    }

    pub fn image(&self, j: usize) -> &SparseVec {
        &self.images[j]
    }

    pub fn images(&self) -> &[SparseVec] {
        &self.images
    }

    pub fn entry(&self, row: usize, col: usize) -> Rational {
        self.images[col].binary_search_by_key(&row, |(i, _)| *i).map(|k| self.images[col][k].1.clone()).unwrap_or_else(|_| Rational::zero())
    }

    pub fn nnz(&self) -> usize {
        self.images.iter().map(Vec::len).sum()
    }

    pub fn is_zero(&self) -> bool {
        self.images.iter().all(Vec::is_empty)
    }

    pub fn apply(&self, v: &[(usize, Rational)]) -> SparseVec {
        let mut acc: BTreeMap<usize, Rational> = BTreeMap::new();
        for (j, a) in v {
            for (i, b) in &self.images[*j] {
                *acc.entry(*i).or_insert_with(Rational::zero) += a * b;
            }
        }
        sparse_from_map(acc)
    }

    /// `self ∘ inner`.
    pub fn compose(&self, inner: &LinearMap) -> Result<LinearMap> {
        if inner.cod != self.dom {
            return Err(Error::Internal(format!("cannot compose {}x{} after {}x{}", self.cod, self.dom, inner.cod, inner.dom)));
        }
        Ok(LinearMap { dom: inner.dom, cod: self.cod, images: inner.images.iter().map(|v| self.apply(v)).collect() })
    }

    pub fn add(&self, other: &LinearMap) -> Result<LinearMap> {
        self.combine(other, &Rational::one())
    }

    pub fn sub(&self, other: &LinearMap) -> Result<LinearMap> {
        self.combine(other, &-Rational::one())
    }

    fn combine(&self, other: &LinearMap, a: &Rational) -> Result<LinearMap> {
        if self.dom != other.dom || self.cod != other.cod {
            return Err(Error::Internal("shape mismatch in map sum".into()));
        }
        Ok(LinearMap { dom: self.dom, cod: self.cod, images: self.images.iter().zip(&other.images).map(|(x, y)| axpy(x, a, y)).collect() })
    }

    pub fn scale(&self, a: &Rational) -> LinearMap {
        LinearMap { dom: self.dom, cod: self.cod, images: self.images.iter().map(|v| scale_vec(v, a)).collect() }
    }

    pub fn rank(&self) -> usize {
        rank_of(self.images.iter().cloned())
    }

    /// Basis of the kernel.
    pub fn kernel(&self) -> Vec<SparseVec> {
        let mut ech = Echelon::tracking();
        let mut out = Vec::new();
        let mut order: Vec<usize> = (0..self.dom).collect();
        order.sort_by_key(|&j| (self.images[j].len(), j));
        for j in order {
            if let Some(rel) = ech.insert(self.images[j].clone(), unit_vec(j)) {
                out.push(rel);
            }
        }
        out
    }

    /// Max absolute entry, as a rational, for residual reports.
    pub fn max_abs(&self) -> Rational {
        let mut m = Rational::zero();
        for v in &self.images {
            for (_, c) in v {
                let a = if c < &Rational::zero() { -c.clone() } else { c.clone() };
                if a > m {
                    m = a;
                }
            }
        }
        m
    }
}

/// Inverse of a small dense square matrix (rows of rationals), if invertible.
pub fn invert_dense(m: &[Vec<Rational>]) -> Option<Vec<Vec<Rational>>> {
    let n = m.len();
    let mut a: Vec<Vec<Rational>> = m
        .iter()
        .enumerate()
        .map(|(i, row)| {
            let mut r = row.clone();
            r.extend((0..n).map(|j| if i == j { Rational::one() } else { Rational::zero() }));
            r
        })
        .collect();
    for col in 0..n {
        let piv = (col..n).find(|&r| !a[r][col].is_zero())?;
        a.swap(col, piv);
        let inv = a[col][col].recip();
        for x in a[col].iter_mut() {
            *x *= &inv;
        }
        for r in 0..n {
            if r != col && !a[r][col].is_zero() {
                let f = a[r][col].clone();
                let pivot_row = a[col].clone();
                for (x, p) in a[r].iter_mut().zip(pivot_row.iter()) {
                    *x -= &f * p;
                }
            }
        }
    }
    Some(a.into_iter().map(|r| r[n..].to_vec()).collect())
}

/// Rank of a family of sparse vectors.
pub fn rank_of<I: IntoIterator<Item = SparseVec>>(vectors: I) -> usize {
    let mut vs: Vec<SparseVec> = vectors.into_iter().filter(|v| !v.is_empty()).collect();
    vs.sort_by_key(Vec::len);
    let mut ech = Echelon::new();
    for v in vs {
        ech.insert(v, Vec::new());
    }
    ech.rank()
}

/// Row echelon form built incrementally. Every stored row has a distinct
/// leading index with value one. With tracking enabled each row also carries
/// its expression in terms of the inserted vectors' tags.
#[derive(Clone, Debug, Default)]
pub struct Echelon {
    pivot_row: HashMap<usize, usize>,
    rows: Vec<SparseVec>,
    combos: Vec<SparseVec>,
    track: bool,
}

impl Echelon {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn tracking() -> Self {
        Self { track: true, ..Self::default() }
    }

    pub fn rank(&self) -> usize {
        self.rows.len()
    }

    /// Inserts `v` tagged with `combo`. Returns the dependency relation
    /// (as a combination of tags summing to zero) when `v` is dependent and
    /// tracking is on; `None` otherwise.
    pub fn insert(&mut self, v: SparseVec, combo: SparseVec) -> Option<SparseVec> {
        let (v, combo) = self.reduce_leading(v, combo);
        if v.is_empty() {
            return if self.track { Some(combo) } else { None };
        }
        let inv = v[0].1.recip();
        let v = scale_vec(&v, &inv);
        let combo = if self.track { scale_vec(&combo, &inv) } else { Vec::new() };
        self.pivot_row.insert(v[0].0, self.rows.len());
        self.rows.push(v);
        self.combos.push(combo);
        None
    }

    /// Returns true when `v` was independent of the stored rows.
    pub fn push(&mut self, v: SparseVec) -> bool {
        let before = self.rank();
        self.insert(v, Vec::new());
        self.rank() > before
    }

    fn reduce_leading(&self, mut v: SparseVec, mut combo: SparseVec) -> (SparseVec, SparseVec) {
        while let Some((c, a)) = v.first().cloned() {
            let Some(&r) = self.pivot_row.get(&c) else { break };
            let f = -a;
            v = axpy(&v, &f, &self.rows[r]);
            if self.track {
                combo = axpy(&combo, &f, &self.combos[r]);
            }
        }
        (v, combo)
    }

    /// Reduces every pivot position of `v` to zero. Returns the remainder and
    /// the (tracked) combination that was subtracted.
    pub fn reduce_full(&self, v: &[(usize, Rational)]) -> (SparseVec, SparseVec) {
        let mut work: BTreeMap<usize, Rational> = v.iter().cloned().collect();
        let mut taken: BTreeMap<usize, Rational> = BTreeMap::new();
        let mut cursor = 0usize;
        loop {
            let next = work.range(cursor..).find(|(c, _)| self.pivot_row.contains_key(c)).map(|(c, a)| (*c, a.clone()));
            let Some((c, a)) = next else { break };
            let r = self.pivot_row[&c];
            for (i, b) in &self.rows[r] {
                let e = work.entry(*i).or_insert_with(Rational::zero);
                *e -= &a * b;
                if e.is_zero() {
                    work.remove(i);
                }
            }
            if self.track {
                for (i, b) in &self.combos[r] {
                    *taken.entry(*i).or_insert_with(Rational::zero) += &a * b;
                }
            }
            cursor = c + 1;
        }
        (sparse_from_map(work), sparse_from_map(taken))
    }

    pub fn contains(&self, v: &[(usize, Rational)]) -> bool {
        self.reduce_full(v).0.is_empty()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::qpoly::rat;
    use proptest::prelude::*;

    /// Dense Gaussian elimination oracle.
    fn dense_rank(m: &[Vec<i64>]) -> usize {
        let mut a: Vec<Vec<Rational>> = m.iter().map(|r| r.iter().map(|&x| rat(x)).collect()).collect();
        let rows = a.len();
        let cols = if rows == 0 { 0 } else { a[0].len() };
        let mut rank = 0;
        for c in 0..cols {
            let Some(p) = (rank..rows).find(|&r| !a[r][c].is_zero()) else { continue };
            a.swap(rank, p);
            for r in 0..rows {
                if r != rank && !a[r][c].is_zero() {
                    let f = &a[r][c] / &a[rank][c];
                    for k in 0..cols {
                        let t = &f * &a[rank][k];
                        a[r][k] -= t;
                    }
                }
            }
            rank += 1;
        }
        rank
    }

    fn to_map(m: &[Vec<i64>]) -> LinearMap {
        let cod = m.len();
        let dom = if cod == 0 { 0 } else { m[0].len() };
        LinearMap::from_triplets(dom, cod, m.iter().enumerate().flat_map(|(r, row)| row.iter().enumerate().map(move |(c, &v)| (r, c, rat(v)))))
    }

    #[test]
    fn small_rank() {
        let m = vec![vec![1, 2, 3], vec![2, 4, 6], vec![0, 1, 1]];
        assert_eq!(to_map(&m).rank(), 2);
        assert_eq!(to_map(&m).kernel().len(), 1);
    }

    proptest! {
        #[test]
        fn rank_matches_dense(m in prop::collection::vec(prop::collection::vec(-2i64..3, 6), 1..7)) {
            let f = to_map(&m);
            prop_assert_eq!(f.rank(), dense_rank(&m));
            let ker = f.kernel();
            prop_assert_eq!(ker.len() + f.rank(), f.dom());
            for k in &ker {
                prop_assert!(f.apply(k).is_empty());
            }
        }

        #[test]
        fn reduce_full_decomposes(m in prop::collection::vec(prop::collection::vec(-2i64..3, 5), 1..5), w in prop::collection::vec(-3i64..4, 5)) {
            let mut ech = Echelon::tracking();
            let rows: Vec<SparseVec> = m.iter().map(|r| r.iter().enumerate().filter(|(_, &x)| x != 0).map(|(i, &x)| (i, rat(x))).collect()).collect();
            for (k, r) in rows.iter().enumerate() {
                ech.insert(r.clone(), unit_vec(k));
            }
            let target: SparseVec = w.iter().enumerate().filter(|(_, &x)| x != 0).map(|(i, &x)| (i, rat(x))).collect();
            let (rem, taken) = ech.reduce_full(&target);
            let mut recon = rem.clone();
            for (k, a) in &taken {
                recon = axpy(&recon, a, &rows[*k]);
            }
            prop_assert_eq!(recon, target);
        }
    }
}
