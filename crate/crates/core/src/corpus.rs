//! The bundled diagram corpus. The files under `corpus/` at the repository
//! root are generated from this table (`.braid` verbatim, `.pd` through
//! [`LinkDiagram::to_pd_json`]).

use crate::diagram::{braid_closure, parse_braid, LinkDiagram};

pub const CORPUS: &[(&str, &str)] = &[
    ("unknot", "strands=1;"),
    ("hopf+", "strands=2; s1 s1"),
    ("hopf-", "strands=2; s1^-1 s1^-1"),
    ("trefoil+", "strands=2; s1 s1 s1"),
    ("trefoil-", "strands=2; s1^-1 s1^-1 s1^-1"),
    ("figure-eight", "strands=3; s1 s2^-1 s1 s2^-1"),
    ("t2-4", "strands=2; s1 s1 s1 s1"),
    ("t2-5", "strands=2; s1 s1 s1 s1 s1"),
    ("t2-6", "strands=2; s1 s1 s1 s1 s1 s1"),
    ("t2-7", "strands=2; s1 s1 s1 s1 s1 s1 s1"),
    ("t2-8", "strands=2; s1 s1 s1 s1 s1 s1 s1 s1"),
    ("t3-3", "strands=3; s1 s2 s1 s2 s1 s2"),
    ("t3-4", "strands=3; s1 s2 s1 s2 s1 s2 s1 s2"),
];

pub fn braid_text(name: &str) -> Option<&'static str> {
    CORPUS.iter().find(|(n, _)| *n == name).map(|(_, b)| *b)
}

pub fn diagram(name: &str) -> Option<LinkDiagram> {
    braid_text(name).map(|b| braid_closure(&parse_braid(b).expect("corpus braids parse")))
}

/// `(name, diagram)` for every corpus entry, in table order.
pub fn all() -> Vec<(&'static str, LinkDiagram)> {
    CORPUS.iter().map(|(n, _)| (*n, diagram(n).expect("listed"))).collect()
}
