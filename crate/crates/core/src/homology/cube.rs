//! The cube of resolutions of an uncolored diagram with circles decorated
//! by a Frobenius algebra.
//!
//! Crossing `k` contributes bit `k` of a vertex. A positive crossing has the
//! unoriented smoothing at bit 0 and the oriented smoothing, shifted by
//! `q^{1-N}`, at bit 1; a negative crossing has the oriented smoothing,
//! shifted by `q^{N-1}`, at bit 0 (homological degree -1) and the
//! unoriented smoothing at bit 1. Edge maps are merges and splits with sign
//! `(-1)^{#{j<k : v_j = 1}}`.

use std::collections::BTreeMap;

use rayon::prelude::*;

use crate::diagram::LinkDiagram;
use crate::error::{Error, Result};
use crate::linalg::{LinearMap, SparseVec};
use crate::qpoly::Rational;

use super::frobenius::FrobeniusAlgebra;

const MAX_CROSSINGS: usize = 16;

/// Circles of one resolution.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Resolution {
    /// Sorted arcs of each circle; circles ordered by smallest arc.
    pub circles: Vec<Vec<usize>>,
    pub arc_circle: Vec<usize>,
}

#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Generator {
    pub vertex: u32,
    /// Algebra basis index per circle.
    pub labels: Vec<u16>,
    /// Quantum degree (filtration level for ungraded algebras).
    pub q: i64,
}

#[derive(Clone, Debug)]
pub struct ChainGroup {
    pub i: i64,
    pub gens: Vec<Generator>,
    /// `d: C_i -> C_{i+1}`.
    pub d: LinearMap,
}

#[derive(Clone, Debug)]
pub struct ChainComplex {
    algebra: FrobeniusAlgebra,
    diagram: LinkDiagram,
    resolutions: Vec<Resolution>,
    /// Offset of each vertex's block within its chain group.
    vertex_offset: Vec<usize>,
    groups: Vec<ChainGroup>,
    min_degree: i64,
}

fn find(parent: &mut [usize], x: usize) -> usize {
    let mut r = x;
    while parent[r] != r {
        r = parent[r];
    }
    let mut y = x;
    while parent[y] != r {
        let next = parent[y];
        parent[y] = r;
        y = next;
    }
    r
}

fn resolve(d: &LinkDiagram, v: u32) -> Resolution {
    let n = d.num_arcs();
    let mut parent: Vec<usize> = (0..n).collect();
    for (k, x) in d.crossings().iter().enumerate() {
        let one = v >> k & 1 == 1;
        let oriented = (x.sign > 0) == one;
        let pairs = if oriented { x.oriented_smoothing() } else { x.unoriented_smoothing() };
        for (a, b) in pairs {
            let (ra, rb) = (find(&mut parent, a), find(&mut parent, b));
            parent[ra.max(rb)] = ra.min(rb);
        }
    }
    let mut by_root: BTreeMap<usize, Vec<usize>> = BTreeMap::new();
    for a in 0..n {
        let r = find(&mut parent, a);
        by_root.entry(r).or_default().push(a);
    }
    // roots are the minimal arcs, so BTreeMap order is by smallest arc
    let circles: Vec<Vec<usize>> = by_root.into_values().collect();
    let mut arc_circle = vec![0; n];
    for (c, arcs) in circles.iter().enumerate() {
        for &a in arcs {
            arc_circle[a] = c;
        }
    }
    Resolution { circles, arc_circle }
}

fn edge_sign(v: u32, k: usize) -> i64 {
    if (v & ((1u32 << k) - 1)).count_ones().is_multiple_of(2) {
        1
    } else {
        -1
    }
}

impl ChainComplex {
    pub fn new(d: &LinkDiagram, algebra: FrobeniusAlgebra) -> Result<Self> {
        if !d.is_uncolored() {
            return Err(Error::Unsupported("link homology needs an uncolored diagram (all colors 1)".into()));
        }
        let nc = d.num_crossings();
        if nc > MAX_CROSSINGS {
            return Err(Error::Unsupported(format!("{nc} crossings exceed the cube limit of {MAX_CROSSINGS}")));
        }
        let n_neg = d.num_negative() as i64;
        let nv = 1usize << nc;
        let resolutions: Vec<Resolution> = (0..nv as u32).into_par_iter().map(|v| resolve(d, v)).collect();
        let dim = algebra.dim();
        let mut by_degree: Vec<Vec<u32>> = vec![Vec::new(); nc + 1];
        for v in 0..nv as u32 {
            by_degree[v.count_ones() as usize].push(v);
        }
        let mut vertex_offset = vec![0usize; nv];
        let mut groups = Vec::with_capacity(nc + 1);
        for (h, verts) in by_degree.iter().enumerate() {
            let mut gens = Vec::new();
            for &v in verts {
                vertex_offset[v as usize] = gens.len();
                let shift = Self::vertex_shift(d, v, dim);
                let circles = resolutions[v as usize].circles.len();
                let count = dim.pow(circles as u32);
                for idx in 0..count {
                    let labels = decode(idx, circles, dim);
                    let q = shift + labels.iter().map(|&l| algebra.qdeg(l as usize)).sum::<i64>();
                    gens.push(Generator { vertex: v, labels, q });
                }
            }
            groups.push(ChainGroup { i: h as i64 - n_neg, gens, d: LinearMap::zero(0, 0) });
        }
        let mut cx = Self { algebra, diagram: d.clone(), resolutions, vertex_offset, groups, min_degree: -n_neg };
        let maps: Vec<LinearMap> = (0..=nc).into_par_iter().map(|h| cx.build_differential(h)).collect();
        for (g, m) in cx.groups.iter_mut().zip(maps) {
            g.d = m;
        }
        Ok(cx)
    }

    fn vertex_shift(d: &LinkDiagram, v: u32, dim: usize) -> i64 {
        let s = dim as i64 - 1;
        d.crossings()
            .iter()
            .enumerate()
            .map(|(k, x)| {
                let one = v >> k & 1 == 1;
                match (x.sign > 0, one) {
                    (true, true) => -s,
                    (false, false) => s,
                    _ => 0,
                }
            })
            .sum()
    }

    fn index_in_group(&self, v: u32, labels: &[u16]) -> usize {
        self.vertex_offset[v as usize] + encode(labels, self.algebra.dim())
    }

    /// Image of a generator at `from` under the saddle at crossing `k` to the
    /// resolution `to`.
    fn saddle(&self, from: u32, to: u32, k: usize, labels: &[u16]) -> Vec<(Vec<u16>, Rational)> {
        let (rf, rt) = (&self.resolutions[from as usize], &self.resolutions[to as usize]);
        let pd = self.diagram.crossings()[k].pd;
        let mut touched: Vec<usize> = pd.iter().map(|&a| rf.arc_circle[a]).collect();
        touched.sort_unstable();
        touched.dedup();
        let mut base = vec![0u16; rt.circles.len()];
        for (c, arcs) in rf.circles.iter().enumerate() {
            if !touched.contains(&c) {
                base[rt.arc_circle[arcs[0]]] = labels[c];
            }
        }
        let a = &self.algebra;
        match touched.as_slice() {
            [c1, c2] => {
                let target = rt.arc_circle[rf.circles[*c1][0]];
                a.mul(labels[*c1] as usize, labels[*c2] as usize)
                    .iter()
                    .map(|(l, c)| {
                        let mut out = base.clone();
                        out[target] = *l as u16;
                        (out, c.clone())
                    })
                    .collect()
            }
            [c] => {
                let mut targets: Vec<usize> = pd.iter().map(|&x| rt.arc_circle[x]).collect();
                targets.sort_unstable();
                targets.dedup();
                debug_assert_eq!(targets.len(), 2, "saddle on one circle must split it");
                a.comul(labels[*c] as usize)
                    .iter()
                    .map(|(l1, l2, coef)| {
                        let mut out = base.clone();
                        out[targets[0]] = *l1 as u16;
                        out[targets[1]] = *l2 as u16;
                        (out, coef.clone())
                    })
                    .collect()
            }
            _ => unreachable!("a crossing touches one or two circles"),
        }
    }

    fn build_differential(&self, h: usize) -> LinearMap {
        let src = &self.groups[h];
        let cod = self.groups.get(h + 1).map_or(0, |g| g.gens.len());
        let nc = self.diagram.num_crossings();
        let images: Vec<SparseVec> = src
            .gens
            .par_iter()
            .map(|g| {
                let mut acc: BTreeMap<usize, Rational> = BTreeMap::new();
                for k in 0..nc {
                    if g.vertex >> k & 1 == 1 {
                        continue;
                    }
                    let w = g.vertex | 1 << k;
                    let sign = Rational::from_integer(edge_sign(g.vertex, k).into());
                    for (labels, c) in self.saddle(g.vertex, w, k, &g.labels) {
                        let idx = self.index_in_group(w, &labels);
                        *acc.entry(idx).or_default() += &sign * c;
                    }
                }
                crate::linalg::sparse_from_map(acc)
            })
            .collect();
        LinearMap::from_images(src.gens.len(), cod, images)
    }

    pub fn algebra(&self) -> &FrobeniusAlgebra {
        &self.algebra
    }

    pub fn diagram(&self) -> &LinkDiagram {
        &self.diagram
    }

    pub fn resolution(&self, v: u32) -> &Resolution {
        &self.resolutions[v as usize]
    }

    pub fn groups(&self) -> &[ChainGroup] {
        &self.groups
    }

    pub fn min_degree(&self) -> i64 {
        self.min_degree
    }

    /// Chain group in homological degree `i`.
    pub fn group(&self, i: i64) -> Option<&ChainGroup> {
        usize::try_from(i - self.min_degree).ok().and_then(|t| self.groups.get(t))
    }

    /// `d_{i+1} ∘ d_i` vanishes for every `i`.
    pub fn d_squared_zero(&self) -> bool {
        self.groups.windows(2).all(|w| w[1].d.compose(&w[0].d).map(|m| m.is_zero()).unwrap_or(false))
    }

    /// Multiplication by `X` on the circle through `arc`, per chain group.
    pub fn dot_map(&self, arc: usize) -> Result<Vec<LinearMap>> {
        if arc >= self.diagram.num_arcs() {
            return Err(Error::IndexOutOfRange { index: arc + 1, bound: self.diagram.num_arcs() });
        }
        Ok(self
            .groups
            .iter()
            .map(|g| {
                let images = g
                    .gens
                    .iter()
                    .map(|gen| {
                        let c = self.resolutions[gen.vertex as usize].arc_circle[arc];
                        let mut out: Vec<(usize, Rational)> = self
                            .algebra
                            .x_times(gen.labels[c] as usize)
                            .iter()
                            .map(|(l, coef)| {
                                let mut labels = gen.labels.clone();
                                labels[c] = *l as u16;
                                (self.index_in_group(gen.vertex, &labels), coef.clone())
                            })
                            .collect();
                        out.sort_by_key(|(i, _)| *i);
                        out
                    })
                    .collect();
                LinearMap::from_images(g.gens.len(), g.gens.len(), images)
            })
            .collect())
    }

    /// Reverse saddle at crossing `k`: `C_i -> C_{i-1}` from vertices with
    /// bit `k` set, with the same sign as the forward edge. Entry `t` maps
    /// group `t` to group `t-1` (entry 0 is the zero map to nothing).
    pub fn reverse_saddle(&self, k: usize) -> Result<Vec<LinearMap>> {
        if k >= self.diagram.num_crossings() {
            return Err(Error::IndexOutOfRange { index: k + 1, bound: self.diagram.num_crossings() });
        }
        Ok(self
            .groups
            .iter()
            .enumerate()
            .map(|(t, g)| {
                let cod = if t == 0 { 0 } else { self.groups[t - 1].gens.len() };
                let images = g
                    .gens
                    .iter()
                    .map(|gen| {
                        if gen.vertex >> k & 1 == 0 {
                            return Vec::new();
                        }
                        let v = gen.vertex & !(1 << k);
                        let sign = Rational::from_integer(edge_sign(v, k).into());
                        let mut acc: BTreeMap<usize, Rational> = BTreeMap::new();
                        for (labels, c) in self.saddle(gen.vertex, v, k, &gen.labels) {
                            *acc.entry(self.index_in_group(v, &labels)).or_default() += &sign * c;
                        }
                        crate::linalg::sparse_from_map(acc)
                    })
                    .collect();
                LinearMap::from_images(g.gens.len(), cod, images)
            })
            .collect())
    }
}

fn decode(mut idx: usize, circles: usize, dim: usize) -> Vec<u16> {
    let mut labels = vec![0u16; circles];
    for c in (0..circles).rev() {
        labels[c] = (idx % dim) as u16;
        idx /= dim;
    }
    labels
}

fn encode(labels: &[u16], dim: usize) -> usize {
    labels.iter().fold(0, |acc, &l| acc * dim + l as usize)
}
