//! Crossings as linear combinations of ladder webs, and the gauge `c`.

use crate::error::{Error, Result};
use crate::qpoly::{rat, Exponent, LaurentPoly};

use super::{Dir, Gen, SlicedWeb, Strand, WebLinearCombo};

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Gauge {
    /// `c = 1`.
    Gl,
    /// `c = -q^(1/N)`.
    Sl,
    /// An explicit unit `c`.
    Custom(LaurentPoly),
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GaugeConfig {
    pub n: u32,
    pub gauge: Gauge,
}

impl GaugeConfig {
    pub fn gl(n: u32) -> Self {
        Self { n, gauge: Gauge::Gl }
    }

    pub fn sl(n: u32) -> Self {
        Self { n, gauge: Gauge::Sl }
    }

    pub fn custom(n: u32, c: LaurentPoly) -> Result<Self> {
        if c.as_monomial().is_none() {
            return Err(Error::InvalidArgument(format!("gauge c = {c} is not a unit")));
        }
        Ok(Self { n, gauge: Gauge::Custom(c) })
    }

    pub fn c(&self) -> LaurentPoly {
        match &self.gauge {
            Gauge::Gl => LaurentPoly::one(),
            Gauge::Sl => LaurentPoly::monomial(rat(-1), Exponent::new(1, self.n as i64)),
            Gauge::Custom(c) => c.clone(),
        }
    }

    /// `c^k`.
    pub fn c_pow(&self, k: i64) -> LaurentPoly {
        self.c().pow(k).expect("gauge is a unit")
    }

    pub fn name(&self) -> String {
        match &self.gauge {
            Gauge::Gl => "gl".into(),
            Gauge::Sl => "sl".into(),
            Gauge::Custom(c) => format!("custom({c})"),
        }
    }
}

/// `(-q)^m`.
pub fn neg_q_pow(m: i64) -> LaurentPoly {
    let sign = if m.rem_euclid(2) == 0 { 1 } else { -1 };
    LaurentPoly::from_int_terms([(m, sign)])
}

/// Tracks labels of a small strand row, skipping zero-labelled strands
/// when emitting generators.
struct LadderBuilder {
    labels: Vec<u32>,
    web: SlicedWeb,
}

impl LadderBuilder {
    fn new(a: u32, b: u32) -> Self {
        Self { labels: vec![a, b], web: SlicedWeb::new(vec![Strand::up(a), Strand::up(b)]) }
    }

    fn offset(&self, i: usize) -> usize {
        self.labels[..i].iter().filter(|&&l| l > 0).count()
    }

    fn split(&mut self, i: usize, x: u32, y: u32) {
        debug_assert_eq!(self.labels[i], x + y);
        if x > 0 && y > 0 {
            let off = self.offset(i);
            self.web.push(off, Gen::Split(x, y)).expect("ladder split fits");
        }
        self.labels.splice(i..=i, [x, y]);
    }

    fn merge(&mut self, i: usize) {
        let (x, y) = (self.labels[i], self.labels[i + 1]);
        if x > 0 && y > 0 {
            let off = self.offset(i);
            self.web.push(off, Gen::Merge(x, y)).expect("ladder merge fits");
        }
        self.labels.splice(i..=i + 1, [x + y]);
    }
}

/// Ladder with rung `k` for `a >= b`: bottom `[a, b]`, top `[b, a]`.
pub fn ladder(a: u32, b: u32, k: u32) -> SlicedWeb {
    assert!(a >= b && k <= b);
    let mut l = LadderBuilder::new(a, b);
    l.split(1, k, b - k);
    l.merge(0);
    l.split(0, b, a + k - b);
    l.merge(1);
    l.web
}

/// Left-right reflected ladder with rung `k` for `a < b`.
pub fn ladder_reflected(a: u32, b: u32, k: u32) -> SlicedWeb {
    assert!(a < b && k <= a);
    let mut l = LadderBuilder::new(a, b);
    l.split(0, a - k, k);
    l.merge(1);
    l.split(1, b + k - a, a);
    l.merge(0);
    l.web
}

/// Gauge-free expansion: terms `((-q)^m, web)` with `m` returned, such that
/// the crossing equals `c^{sign*a*b} * sum (-q)^m web`.
pub fn ladder_terms(a: u32, b: u32, sign: i8) -> Vec<(i64, SlicedWeb)> {
    let (a_i, b_i) = (a as i64, b as i64);
    if a >= b {
        (0..=b)
            .map(|k| {
                let m = k as i64 - b_i;
                (if sign > 0 { m } else { -m }, ladder(a, b, k))
            })
            .collect()
    } else {
        (0..=a)
            .map(|k| {
                let m = k as i64 - a_i;
                (if sign > 0 { m } else { -m }, ladder_reflected(a, b, k))
            })
            .collect()
    }
}

/// The crossing with the `a`-labelled strand entering bottom left and the
/// `b`-labelled strand bottom right, both upward; positive when the
/// `a` strand passes over.
pub fn crossing_expansion(a: u32, b: u32, sign: i8, cfg: &GaugeConfig) -> Result<WebLinearCombo> {
    if a == 0 || b == 0 || a > cfg.n || b > cfg.n {
        return Err(Error::InvalidArgument(format!("crossing labels ({a},{b}) must lie in 1..={}", cfg.n)));
    }
    if sign != 1 && sign != -1 {
        return Err(Error::InvalidArgument(format!("crossing sign {sign}")));
    }
    let cpow = cfg.c_pow(sign as i64 * a as i64 * b as i64);
    let mut combo = WebLinearCombo::default();
    for (m, web) in ladder_terms(a, b, sign) {
        combo.push(&cpow * &neg_q_pow(m), web)?;
    }
    Ok(combo)
}

/// Bends the bottom-left leg of a 2-in 2-out tangle over to the top and the
/// top-right leg down: `[x1, x2] -> [y1, y2]` becomes `[x2, y2*] -> [x1*, y1]`.
pub fn rotate_left(f: &SlicedWeb) -> Result<SlicedWeb> {
    let (x, y) = two_by_two(f)?;
    let mut w = SlicedWeb::new(vec![x[1], y[1].dual()]);
    w.push(0, if x[0].dir == Dir::Up { Gen::CupR(x[0].label) } else { Gen::Cup(x[0].label) })?;
    w.then_at(1, f)?;
    w.push(2, if y[1].dir == Dir::Up { Gen::Cap(y[1].label) } else { Gen::CapR(y[1].label) })?;
    Ok(w)
}

/// Mirror image of [`rotate_left`]: `[x1, x2] -> [y1, y2]` becomes
/// `[y1*, x1] -> [y2, x2*]`.
pub fn rotate_right(f: &SlicedWeb) -> Result<SlicedWeb> {
    let (x, y) = two_by_two(f)?;
    let mut w = SlicedWeb::new(vec![y[0].dual(), x[0]]);
    w.push(2, if x[1].dir == Dir::Up { Gen::Cup(x[1].label) } else { Gen::CupR(x[1].label) })?;
    w.then_at(1, f)?;
    w.push(0, if y[0].dir == Dir::Up { Gen::CapR(y[0].label) } else { Gen::Cap(y[0].label) })?;
    Ok(w)
}

fn two_by_two(f: &SlicedWeb) -> Result<([Strand; 2], [Strand; 2])> {
    match (f.bottom().as_slice(), f.top().as_slice()) {
        ([x1, x2], [y1, y2]) => Ok(([*x1, *x2], [*y1, *y2])),
        _ => Err(Error::ProfileMismatch("rotation needs a tangle with two bottom and two top ends".into())),
    }
}
