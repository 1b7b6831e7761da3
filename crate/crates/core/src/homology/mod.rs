//! gl(2) Khovanov homology and its deformations `Q[X]/P(X)` via the cube of
//! resolutions, with CRT splitting by component colorings.

pub mod cube;
pub mod deform;
pub mod frobenius;

use std::collections::BTreeMap;
use std::fmt;

use rayon::prelude::*;

use crate::diagram::LinkDiagram;
use crate::error::{Error, Result};
use crate::linalg::rank_of;
use crate::qpoly::{rat, BiPoly, LaurentPoly};
use crate::upoly::UPoly;

pub use cube::{ChainComplex, Generator};
pub use deform::{branching_dims, compositions, crt_idempotents, crt_identities_hold, DeformationSpec};
pub use frobenius::FrobeniusAlgebra;

/// Dimensions by `(i, j)`. Ungraded tables use `j = 0` throughout.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct HomologyTable {
    pub graded: bool,
    pub dims: BTreeMap<(i64, i64), usize>,
}

impl HomologyTable {
    pub fn total(&self) -> usize {
        self.dims.values().sum()
    }

    pub fn dim(&self, i: i64, j: i64) -> usize {
        self.dims.get(&(i, j)).copied().unwrap_or(0)
    }

    /// `Σ dim q^j t^i`.
    pub fn poincare(&self) -> BiPoly {
        let mut p = BiPoly::zero();
        for (&(i, j), &d) in &self.dims {
            p.add_term(j.into(), i, rat(d as i64));
        }
        p
    }

    /// `Σ (-1)^i dim q^j`.
    pub fn euler(&self) -> LaurentPoly {
        let mut e = LaurentPoly::zero();
        for (&(i, j), &d) in &self.dims {
            let s = if i.rem_euclid(2) == 0 { 1 } else { -1 };
            e += &LaurentPoly::from_int_terms([(j, s * d as i64)]);
        }
        e
    }

    /// `{"(i,j)": dim}` when graded, `{"i": dim}` otherwise, in key order.
    pub fn to_json(&self) -> serde_json::Value {
        let mut m = serde_json::Map::new();
        for (&(i, j), &d) in &self.dims {
            let key = if self.graded { format!("({i},{j})") } else { i.to_string() };
            m.insert(key, d.into());
        }
        serde_json::Value::Object(m)
    }
}

impl fmt::Display for HomologyTable {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.graded {
            write!(f, "{}", self.poincare())
        } else {
            let parts: Vec<String> = self.dims.iter().map(|(&(i, _), d)| if i == 0 { format!("{d}") } else { format!("{d}*t^{i}") }).collect();
            if parts.is_empty() {
                write!(f, "0")
            } else {
                write!(f, "{}", parts.join(" + "))
            }
        }
    }
}

/// Which algebra to put on the circles.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Deformation {
    /// `P = X^2`, graded.
    Undeformed,
    Polynomial(UPoly),
    Roots(DeformationSpec),
}

impl Deformation {
    pub fn algebra(&self) -> Result<FrobeniusAlgebra> {
        match self {
            Deformation::Undeformed => FrobeniusAlgebra::from_polynomial(&UPoly::x_pow(2)),
            Deformation::Polynomial(p) => FrobeniusAlgebra::from_polynomial(p),
            Deformation::Roots(s) => FrobeniusAlgebra::adapted(s),
        }
    }

    pub fn polynomial(&self) -> UPoly {
        match self {
            Deformation::Undeformed => UPoly::x_pow(2),
            Deformation::Polynomial(p) => p.clone(),
            Deformation::Roots(s) => s.polynomial(),
        }
    }
}

pub fn cube_complex(d: &LinkDiagram, algebra: FrobeniusAlgebra) -> Result<ChainComplex> {
    ChainComplex::new(d, algebra)
}

/// Homology of the subcomplex spanned by generators with `keep` true, which
/// must be closed under the differential.
fn homology_of(cx: &ChainComplex, keep: &(dyn Fn(&Generator) -> bool + Sync)) -> HomologyTable {
    let graded = cx.algebra().is_graded();
    let groups = cx.groups();
    // (group index, q) -> (dimension, rank of d out of it)
    let blocks: Vec<(usize, i64)> = groups
        .iter()
        .enumerate()
        .flat_map(|(t, g)| {
            let mut qs: Vec<i64> = g.gens.iter().filter(|x| keep(x)).map(|x| if graded { x.q } else { 0 }).collect();
            qs.sort_unstable();
            qs.dedup();
            qs.into_iter().map(move |q| (t, q))
        })
        .collect();
    let stats: Vec<((usize, i64), (usize, usize))> = blocks
        .par_iter()
        .map(|&(t, q)| {
            let g = &groups[t];
            let cols: Vec<usize> = (0..g.gens.len()).filter(|&c| keep(&g.gens[c]) && (!graded || g.gens[c].q == q)).collect();
            let rank = rank_of(cols.iter().map(|&c| g.d.image(c).clone()));
            ((t, q), (cols.len(), rank))
        })
        .collect();
    let stats: BTreeMap<(usize, i64), (usize, usize)> = stats.into_iter().collect();
    let mut dims = BTreeMap::new();
    for (&(t, q), &(dim, rank)) in &stats {
        let incoming = if t == 0 { 0 } else { stats.get(&(t - 1, q)).map_or(0, |s| s.1) };
        let h = dim - rank - incoming;
        if h > 0 {
            dims.insert((groups[t].i, q), h);
        }
    }
    HomologyTable { graded, dims }
}

pub fn homology_table(cx: &ChainComplex) -> HomologyTable {
    homology_of(cx, &|_| true)
}

/// Homology of `d` with the given deformation.
pub fn homology(d: &LinkDiagram, def: &Deformation) -> Result<HomologyTable> {
    let cx = ChainComplex::new(d, def.algebra()?)?;
    Ok(homology_table(&cx))
}

/// A coloring of components by root indices.
pub type Coloring = Vec<usize>;

/// Homology of each CRT summand, keyed by coloring of components by roots.
/// The summand for `κ` is the image of the chain-level projector
/// `Π_c e_{κ(c)}(X_{p_c})`, with `p_c` the first arc of component `c`; these
/// projectors commute with `d` and sum to the identity.
pub fn colored_splitting(d: &LinkDiagram, spec: &DeformationSpec) -> Result<BTreeMap<Coloring, HomologyTable>> {
    let cx = ChainComplex::new(d, FrobeniusAlgebra::adapted(spec)?)?;
    let l = spec.roots.len();
    let comps = d.num_components();
    let total = l.checked_pow(comps as u32).ok_or_else(|| Error::Unsupported("too many colorings".into()))?;
    let base: Vec<usize> = d.components().iter().map(|c| c[0]).collect();
    let mut out = BTreeMap::new();
    for code in 0..total {
        let mut kappa = vec![0usize; comps];
        let mut r = code;
        for c in (0..comps).rev() {
            kappa[c] = r % l;
            r /= l;
        }
        let alg = cx.algebra();
        let keep = |g: &Generator| {
            let res = cx.resolution(g.vertex);
            base.iter().zip(&kappa).all(|(&arc, &k)| alg.block(g.labels[res.arc_circle[arc]] as usize) == k)
        };
        out.insert(kappa.clone(), homology_of(&cx, &keep));
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::diagram::{braid_closure, parse_braid, parse_pd};
    use crate::web::{rt_invariant, GaugeConfig};

    fn closure(s: &str) -> LinkDiagram {
        braid_closure(&parse_braid(s).unwrap())
    }

    fn lee() -> Deformation {
        Deformation::Roots("1,-1".parse().unwrap())
    }

    #[test]
    fn unknot() {
        let t = homology(&closure("strands=1;"), &Deformation::Undeformed).unwrap();
        assert_eq!(t.dims, BTreeMap::from([((0, -1), 1), ((0, 1), 1)]));
        assert_eq!(t.euler(), "q + q^-1".parse().unwrap());
        assert_eq!(t.to_json().to_string(), r#"{"(0,-1)":1,"(0,1)":1}"#);
        assert_eq!(HomologyTable::default().euler(), LaurentPoly::zero());
    }

    #[test]
    fn curls_keep_unknot_dimension() {
        for s in ["strands=2; s1", "strands=2; s1^-1"] {
            let t = homology(&closure(s), &Deformation::Undeformed).unwrap();
            assert_eq!(t.total(), 2, "{s}");
        }
    }

    #[test]
    fn euler_matches_invariant() {
        for s in ["strands=2; s1 s1", "strands=2; s1^-1 s1^-1", "strands=2; s1 s1 s1", "strands=3; s1 s2^-1 s1 s2^-1", "strands=3; s1 s2 s1 s2"] {
            let d = closure(s);
            let cx = cube_complex(&d, Deformation::Undeformed.algebra().unwrap()).unwrap();
            assert!(cx.d_squared_zero());
            let t = homology_table(&cx);
            assert_eq!(t.euler(), rt_invariant(&d, &GaugeConfig::gl(2)).unwrap(), "{s}");
        }
    }

    #[test]
    fn d_squared_for_deformations() {
        let d = closure("strands=2; s1 s1 s1");
        for p in ["X^2", "X^2 - 1", "X^2 - X", "X^2 - 5/3*X + 2/7", "X^3 - X"] {
            let cx = cube_complex(&d, FrobeniusAlgebra::from_polynomial(&p.parse().unwrap()).unwrap()).unwrap();
            assert!(cx.d_squared_zero(), "{p}");
        }
    }

    #[test]
    fn lee_counts() {
        assert_eq!(homology(&closure("strands=2; s1 s1"), &lee()).unwrap().total(), 4);
        assert_eq!(homology(&closure("strands=2; s1 s1 s1"), &lee()).unwrap().total(), 2);
        assert_eq!(homology(&closure("strands=1;"), &lee()).unwrap().total(), 2);
        let lee_poly = Deformation::Polynomial("X^2 - 1".parse().unwrap());
        assert_eq!(homology(&closure("strands=2; s1 s1"), &lee_poly).unwrap().total(), 4);
    }

    #[test]
    fn single_root_matches_undeformed_total() {
        let d = closure("strands=2; s1 s1 s1");
        let undeformed = homology(&d, &Deformation::Undeformed).unwrap().total();
        for r in ["0^2", "3^2", "-1/2^2"] {
            let t = homology(&d, &Deformation::Roots(r.parse().unwrap())).unwrap();
            assert_eq!(t.total(), undeformed, "{r}");
        }
    }

    #[test]
    fn hopf_splitting() {
        let spec: DeformationSpec = "1,-1".parse().unwrap();
        let split = colored_splitting(&closure("strands=2; s1 s1"), &spec).unwrap();
        assert_eq!(split.len(), 4);
        assert!(split.values().all(|t| t.total() == 1));
        let unknot = colored_splitting(&closure("strands=1;"), &spec).unwrap();
        assert_eq!(unknot.values().map(HomologyTable::total).collect::<Vec<_>>(), vec![1, 1]);
        let trefoil = colored_splitting(&closure("strands=2; s1 s1 s1"), &spec).unwrap();
        assert_eq!(trefoil.values().map(HomologyTable::total).collect::<Vec<_>>(), vec![1, 1]);
    }

    #[test]
    fn braid_and_pd_agree() {
        for s in ["strands=2; s1 s1", "strands=2; s1 s1 s1"] {
            let d = closure(s);
            let pd = parse_pd(&d.to_pd_json()).unwrap();
            assert_eq!(homology(&d, &Deformation::Undeformed).unwrap(), homology(&pd, &Deformation::Undeformed).unwrap());
        }
    }
}
