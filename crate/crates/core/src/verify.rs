//! Relation suites run by `glink verify` and the acceptance tests.

use std::collections::BTreeMap;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::diagram::LinkDiagram;
use crate::error::{Error, Result};
use crate::functorial::{basepoint_sign, commutator_check, passages, BasepointSign};
use crate::hecke::hecke_suite;
use crate::homology::{branching_dims, colored_splitting, compositions, crt_identities_hold, cube_complex, homology, Deformation, DeformationSpec};
use crate::qpoly::{rat_frac, LaurentPoly};
use crate::report::CheckReport;
use crate::web::checks::{moy_suite, reidemeister_suite};
use crate::web::invariant::expected_framing;
use crate::web::{det_slide_check, framing_factor, rt_invariant, skein_check, GaugeConfig};

pub const SUITES: &[&str] =
    &["hecke", "moy", "reidemeister", "skein", "det-slide", "framing", "euler", "lee", "crt", "branching", "functoriality", "basepoint"];

pub const SEED: u64 = 0x0067_6c69_6e6b;

pub fn hecke(n: usize) -> Result<CheckReport> {
    hecke_suite(n, n.min(4))
}

pub fn moy(max_n: u32) -> Result<CheckReport> {
    moy_suite(max_n)
}

pub fn reidemeister(max_n: u32) -> Result<CheckReport> {
    reidemeister_suite(max_n, 2)
}

fn gauges(n: u32) -> [GaugeConfig; 2] {
    [GaugeConfig::gl(n), GaugeConfig::sl(n)]
}

/// Random closures and the quadratic operator identity, both gauges.
pub fn skein(max_n: u32, trials: usize) -> Result<CheckReport> {
    let mut r = CheckReport::new("skein");
    for n in 1..=max_n {
        for cfg in gauges(n) {
            let s = skein_check(&cfg, trials, SEED ^ n as u64)?;
            r.record(s.operator_ok, || format!("operator identity fails, N={n} {}", cfg.name()));
            for _ in 0..s.passed {
                r.record(true, String::new);
            }
            for ce in s.counterexamples {
                r.record(false, || format!("N={n} {}: {ce}", cfg.name()));
            }
        }
    }
    Ok(r)
}

/// Ratio against `c^{2Nb}(-q)^{-2b}` in both gauges; the ratio is 1 when
/// `c^N = -q` and not for `c = 1`.
pub fn det_slide(cases: &[(u32, u32)]) -> Result<CheckReport> {
    let mut r = CheckReport::new("det-slide");
    let minus_q = LaurentPoly::from_int_terms([(1, -1)]);
    for &(n, b) in cases {
        for cfg in gauges(n) {
            r.record_result(det_slide_check(n, b, &cfg), |s| s.ratio == s.expected(&cfg), || format!("ratio mismatch (N,b)=({n},{b}) {}", cfg.name()));
        }
        let gl = GaugeConfig::gl(n);
        r.record_result(
            det_slide_check(n, b, &gl),
            |s| s.ratio_at_c_n(&minus_q).map(|x| x.is_one()).unwrap_or(false) && !s.ratio.is_one(),
            || format!("c^N=-q criterion fails at (N,b)=({n},{b})"),
        );
    }
    Ok(r)
}

/// Positive curl on a `k`-colored unknot, all `k <= N`.
pub fn framing(max_n: u32, gl_only: bool) -> Result<CheckReport> {
    let mut r = CheckReport::new("framing");
    for n in 1..=max_n {
        let cfgs: Vec<GaugeConfig> = if gl_only { vec![GaugeConfig::gl(n)] } else { gauges(n).to_vec() };
        for cfg in cfgs {
            for k in 1..=n {
                r.record_result(framing_factor(k, &cfg), |f| f == expected_framing(k, &cfg), || format!("k={k} N={n} {}", cfg.name()));
            }
        }
    }
    Ok(r)
}

/// Unknot homology, and Euler characteristic of `P = X^2` homology against
/// the `N = 2` invariant.
pub fn euler(diagrams: &[(&str, LinkDiagram)], max_crossings: usize) -> Result<CheckReport> {
    let mut r = CheckReport::new("euler");
    let unknot = crate::corpus::diagram("unknot").expect("corpus has the unknot");
    r.record_result(homology(&unknot, &Deformation::Undeformed), |t| t.dims == BTreeMap::from([((0, -1), 1), ((0, 1), 1)]), || "unknot homology".into());
    for (name, d) in diagrams.iter().filter(|(_, d)| d.num_crossings() <= max_crossings) {
        let chi = homology(d, &Deformation::Undeformed).map(|t| t.euler());
        let rt = rt_invariant(d, &GaugeConfig::gl(2));
        r.record(matches!((&chi, &rt), (Ok(a), Ok(b)) if a == b), || format!("{name}: {chi:?} vs {rt:?}"));
    }
    Ok(r)
}

/// `Σ = {1,-1}`: total dimension `2^{#components}`, per-coloring pieces
/// summing to it, and dimension 1 per coloring on the Hopf link.
pub fn lee(diagrams: &[(&str, LinkDiagram)]) -> Result<CheckReport> {
    let mut r = CheckReport::new("lee");
    let spec: DeformationSpec = "1,-1".parse()?;
    let def = Deformation::Roots(spec.clone());
    for (name, d) in diagrams {
        let expect = 1usize << d.num_components();
        let total = homology(d, &def)?.total();
        r.record(total == expect, || format!("{name}: total {total}, expected {expect}"));
        let split = colored_splitting(d, &spec)?;
        let sum: usize = split.values().map(|t| t.total()).sum();
        r.record(sum == total, || format!("{name}: colorings sum to {sum}, total {total}"));
    }
    for name in ["hopf+", "hopf-"] {
        let d = crate::corpus::diagram(name).expect("corpus has the Hopf links");
        let split = colored_splitting(&d, &spec)?;
        r.record(split.len() == 4 && split.values().all(|t| t.total() == 1), || format!("{name}: per-coloring dims {split:?}"));
    }
    Ok(r)
}

pub fn random_spec(rng: &mut ChaCha8Rng) -> DeformationSpec {
    let l = rng.gen_range(1..=4);
    let mut roots: Vec<(crate::qpoly::Rational, usize)> = Vec::new();
    while roots.len() < l {
        let v = rat_frac(rng.gen_range(-9..=9), rng.gen_range(1..=4));
        if roots.iter().all(|(x, _)| *x != v) {
            roots.push((v, rng.gen_range(1..=3)));
        }
    }
    DeformationSpec::new(roots).expect("distinct roots, positive multiplicities")
}

/// CRT idempotent identities for `count` random `Σ`.
pub fn crt(count: usize, seed: u64) -> Result<CheckReport> {
    let mut r = CheckReport::new("crt");
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    for _ in 0..count {
        let spec = random_spec(&mut rng);
        r.record_result(crt_identities_hold(&spec), |ok| ok, || format!("Σ = {spec}"));
    }
    Ok(r)
}

/// Branching rule for every composition of every `N <= max_n` and all `k`.
pub fn branching(max_n: usize) -> Result<CheckReport> {
    let mut r = CheckReport::new("branching");
    for n in 1..=max_n {
        for parts in compositions(n) {
            for k in 0..=n {
                r.record_result(branching_dims(n, &parts, k), |(a, b)| a == b, || format!("N={n} parts={parts:?} k={k}"));
            }
        }
    }
    Ok(r)
}

/// Neck-cutting residual at every positive crossing, `P = X^2`.
pub fn functoriality(diagrams: &[(&str, LinkDiagram)]) -> Result<CheckReport> {
    let mut r = CheckReport::new("functoriality");
    for (name, d) in diagrams {
        let cx = cube_complex(d, Deformation::Undeformed.algebra()?)?;
        for (k, x) in d.crossings().iter().enumerate() {
            if x.sign < 0 {
                continue;
            }
            r.record_result(commutator_check(&cx, k), |c| c.ok(), || format!("{name} crossing {}", k + 1));
        }
    }
    Ok(r)
}

/// Base point moved across one crossing changes the dot action by `-1`.
pub fn basepoint(d: &LinkDiagram, name: &str) -> Result<CheckReport> {
    let mut r = CheckReport::new("basepoint");
    let cx = cube_complex(d, Deformation::Undeformed.algebra()?)?;
    for comp in d.components() {
        for i in 0..comp.len() {
            let (p, q) = (comp[i], comp[(i + 1) % comp.len()]);
            if p == q {
                continue;
            }
            let (_, under) = passages(d, p, q)?;
            let s = basepoint_sign(&cx, p, q)?;
            r.record(s == BasepointSign::Minus, || format!("{name}: arcs {}->{} (under={under}) gave {s}", p + 1, q + 1));
        }
    }
    Ok(r)
}

/// Runs one named suite with the given rank bound.
pub fn run_suite(name: &str, rank: u32, n: usize) -> Result<CheckReport> {
    let corpus = crate::corpus::all();
    let small: Vec<(&str, LinkDiagram)> = corpus.iter().filter(|(_, d)| d.num_crossings() <= 4).cloned().collect();
    match name {
        "hecke" => hecke(n),
        "moy" => moy(rank),
        "reidemeister" => reidemeister(rank.min(3)),
        "skein" => skein(rank.min(3), 100),
        "det-slide" => det_slide(&(1..=rank).flat_map(|n| (1..=n).map(move |b| (n, b))).collect::<Vec<_>>()),
        "framing" => framing(rank, false),
        "euler" => euler(&corpus, 8),
        "lee" => lee(&corpus),
        "crt" => crt(20, SEED),
        "branching" => branching(6),
        "functoriality" => functoriality(&small),
        "basepoint" => basepoint(&crate::corpus::diagram("trefoil+").expect("corpus"), "trefoil+"),
        other => Err(Error::InvalidArgument(format!("unknown suite {other:?}; expected one of {}", SUITES.join(", ")))),
    }
}
