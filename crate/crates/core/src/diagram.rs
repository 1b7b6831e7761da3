//! Oriented, colored link diagrams from braid words and PD codes.
//!
//! A crossing is stored as a PD record `[a, b, c, d]`: arcs listed
//! counterclockwise starting from the incoming under-arc, so the under
//! strand runs `a -> c`. The crossing is positive when the over strand runs
//! `d -> b`. Arc ids are dense `0..num_arcs` internally and `1..=num_arcs`
//! in serialized form.

use std::collections::BTreeMap;
use std::fmt;

use serde_json::Value;

use crate::error::{Error, Result};

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct BraidWord {
    pub strands: usize,
    /// `(i, sign)` with `1 <= i < strands`.
    pub letters: Vec<(usize, i8)>,
    /// Optional label per bottom strand position.
    pub colors: Option<Vec<u32>>,
}

impl BraidWord {
    pub fn new(strands: usize, letters: Vec<(usize, i8)>) -> Result<Self> {
        if strands == 0 {
            return Err(Error::InvalidDiagram("a braid needs at least one strand".into()));
        }
        for &(i, s) in &letters {
            if i == 0 || i >= strands {
                return Err(Error::IndexOutOfRange { index: i, bound: strands });
            }
            if s != 1 && s != -1 {
                return Err(Error::InvalidDiagram(format!("letter sign {s}")));
            }
        }
        Ok(Self { strands, letters, colors: None })
    }

    /// Permutation sending bottom position to top position.
    pub fn permutation(&self) -> Vec<usize> {
        let mut at: Vec<usize> = (0..self.strands).collect(); // at[pos] = bottom strand now at pos
        for &(i, _) in &self.letters {
            at.swap(i - 1, i);
        }
        let mut perm = vec![0; self.strands];
        for (pos, &start) in at.iter().enumerate() {
            perm[start] = pos;
        }
        perm
    }

    /// Cycles of the closure permutation, as lists of bottom positions.
    pub fn cycles(&self) -> Vec<Vec<usize>> {
        let perm = self.permutation();
        let mut seen = vec![false; self.strands];
        let mut out = Vec::new();
        for s in 0..self.strands {
            if seen[s] {
                continue;
            }
            let mut cyc = Vec::new();
            let mut p = s;
            while !seen[p] {
                seen[p] = true;
                cyc.push(p);
                p = perm[p];
            }
            out.push(cyc);
        }
        out
    }

    pub fn mirror(&self) -> Self {
        Self { strands: self.strands, letters: self.letters.iter().map(|&(i, s)| (i, -s)).collect(), colors: self.colors.clone() }
    }
}

impl fmt::Display for BraidWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "strands={};", self.strands)?;
        if let Some(c) = &self.colors {
            let c: Vec<String> = c.iter().map(u32::to_string).collect();
            write!(f, " colors={};", c.join(","))?;
        }
        for &(i, s) in &self.letters {
            if s > 0 {
                write!(f, " s{i}")?;
            } else {
                write!(f, " s{i}^-1")?;
            }
        }
        Ok(())
    }
}

/// Parses `strands=2; s1 s1 s1^-1`, with an optional `colors=1,2;` segment.
/// `#` starts a comment running to end of line.
pub fn parse_braid(text: &str) -> Result<BraidWord> {
    let cleaned: String = text.lines().map(|l| l.split('#').next().unwrap_or("")).collect::<Vec<_>>().join(" ");
    let mut strands = None;
    let mut colors = None;
    let mut letters = Vec::new();
    for seg in cleaned.split(';') {
        let seg = seg.trim();
        if seg.is_empty() {
            continue;
        }
        if let Some(v) = seg.strip_prefix("strands") {
            let v = v.trim().strip_prefix('=').ok_or_else(|| Error::Parse(format!("bad header {seg:?}")))?;
            strands = Some(v.trim().parse::<usize>().map_err(|_| Error::Parse(format!("bad strand count {v:?}")))?);
        } else if let Some(v) = seg.strip_prefix("colors") {
            let v = v.trim().strip_prefix('=').ok_or_else(|| Error::Parse(format!("bad header {seg:?}")))?;
            let parsed = v.split(',').map(|x| x.trim().parse::<u32>().map_err(|_| Error::Parse(format!("bad color {x:?}")))).collect::<Result<Vec<_>>>()?;
            colors = Some(parsed);
        } else {
            for tok in seg.split_whitespace() {
                letters.push(parse_letter(tok)?);
            }
        }
    }
    let strands = strands.ok_or_else(|| Error::Parse("missing strands= header".into()))?;
    let mut b = BraidWord::new(strands, letters)?;
    if let Some(c) = colors {
        if c.len() != strands {
            return Err(Error::InvalidDiagram(format!("{} colors for {} strands", c.len(), strands)));
        }
        if c.contains(&0) {
            return Err(Error::InvalidDiagram("colors must be positive".into()));
        }
        for cyc in b.cycles() {
            if cyc.iter().any(|&p| c[p] != c[cyc[0]]) {
                return Err(Error::InvalidDiagram("colors must agree along each component".into()));
            }
        }
        b.colors = Some(c);
    }
    Ok(b)
}

fn parse_letter(tok: &str) -> Result<(usize, i8)> {
    let body = tok.strip_prefix('s').ok_or_else(|| Error::Parse(format!("unknown token {tok:?}")))?;
    let (idx, sign) = match body.split_once('^') {
        Some((i, "-1")) => (i, -1),
        Some((i, "1")) => (i, 1),
        Some(_) => return Err(Error::Parse(format!("unknown token {tok:?}"))),
        None => (body, 1),
    };
    let i = idx.parse::<usize>().map_err(|_| Error::Parse(format!("unknown token {tok:?}")))?;
    Ok((i, sign))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct Crossing {
    /// PD record, counterclockwise from the incoming under-arc.
    pub pd: [usize; 4],
    pub sign: i8,
}

impl Crossing {
    pub fn under_in(&self) -> usize {
        self.pd[0]
    }
    pub fn under_out(&self) -> usize {
        self.pd[2]
    }
    pub fn over_in(&self) -> usize {
        if self.sign > 0 {
            self.pd[3]
        } else {
            self.pd[1]
        }
    }
    pub fn over_out(&self) -> usize {
        if self.sign > 0 {
            self.pd[1]
        } else {
            self.pd[3]
        }
    }

    /// Slot indices (into `pd`) of the incoming arcs.
    pub fn in_slots(&self) -> [usize; 2] {
        if self.sign > 0 {
            [0, 3]
        } else {
            [0, 1]
        }
    }

    /// Arc pairs joined by the oriented smoothing.
    pub fn oriented_smoothing(&self) -> [(usize, usize); 2] {
        let [a, b, c, d] = self.pd;
        if self.sign > 0 {
            [(a, b), (c, d)]
        } else {
            [(a, d), (b, c)]
        }
    }

    /// Arc pairs joined by the unoriented smoothing.
    pub fn unoriented_smoothing(&self) -> [(usize, usize); 2] {
        let [a, b, c, d] = self.pd;
        if self.sign > 0 {
            [(a, d), (b, c)]
        } else {
            [(a, b), (c, d)]
        }
    }

    fn mirrored(&self) -> Self {
        let [a, b, c, d] = self.pd;
        if self.sign > 0 {
            Self { pd: [d, a, b, c], sign: -1 }
        } else {
            Self { pd: [b, c, d, a], sign: 1 }
        }
    }

    fn reversed(&self) -> Self {
        let [a, b, c, d] = self.pd;
        Self { pd: [c, d, a, b], sign: self.sign }
    }
}

/// A point on an arc; `offset` distinguishes several points on one arc.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct BasePoint {
    pub arc: usize,
    pub offset: u32,
}

impl BasePoint {
    pub fn on_arc(arc: usize) -> Self {
        Self { arc, offset: 0 }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct LinkDiagram {
    num_arcs: usize,
    crossings: Vec<Crossing>,
    /// Arcs of each component in traversal order.
    components: Vec<Vec<usize>>,
    component_of: Vec<usize>,
    colors: Vec<u32>,
    braid: Option<BraidWord>,
}

impl LinkDiagram {
    /// Builds a diagram from signed PD records and the traversal of each
    /// component, relabelling arcs densely in traversal order.
    pub fn from_signed_pd(crossings: Vec<Crossing>, components: Vec<Vec<usize>>, colors: Vec<u32>) -> Result<Self> {
        if colors.len() != components.len() {
            return Err(Error::InvalidDiagram(format!("{} colors for {} components", colors.len(), components.len())));
        }
        if colors.contains(&0) {
            return Err(Error::InvalidDiagram("colors must be positive".into()));
        }
        let mut relabel: BTreeMap<usize, usize> = BTreeMap::new();
        for comp in &components {
            if comp.is_empty() {
                return Err(Error::InvalidDiagram("empty component".into()));
            }
            for &a in comp {
                let next = relabel.len();
                if relabel.insert(a, next).is_some() {
                    return Err(Error::InvalidDiagram(format!("arc {a} listed in more than one place")));
                }
            }
        }
        let num_arcs = relabel.len();
        let mut new_crossings = Vec::with_capacity(crossings.len());
        for x in &crossings {
            let mut pd = [0; 4];
            for (k, a) in x.pd.iter().enumerate() {
                pd[k] = *relabel.get(a).ok_or_else(|| Error::InvalidDiagram(format!("arc {a} has no orientation")))?;
            }
            new_crossings.push(Crossing { pd, sign: x.sign });
        }
        let new_components: Vec<Vec<usize>> = components.iter().map(|c| c.iter().map(|a| relabel[a]).collect()).collect();
        let mut component_of = vec![0; num_arcs];
        for (ci, comp) in new_components.iter().enumerate() {
            for &a in comp {
                component_of[a] = ci;
            }
        }
        let d = Self { num_arcs, crossings: new_crossings, components: new_components, component_of, colors, braid: None };
        d.validate()?;
        Ok(d)
    }

    fn validate(&self) -> Result<()> {
        let mut ends_in = vec![0usize; self.num_arcs];
        let mut ends_out = vec![0usize; self.num_arcs];
        let mut next = vec![usize::MAX; self.num_arcs];
        for x in &self.crossings {
            if x.sign != 1 && x.sign != -1 {
                return Err(Error::InvalidDiagram(format!("crossing sign {}", x.sign)));
            }
            ends_in[x.under_in()] += 1;
            ends_in[x.over_in()] += 1;
            ends_out[x.under_out()] += 1;
            ends_out[x.over_out()] += 1;
            next[x.under_in()] = x.under_out();
            next[x.over_in()] = x.over_out();
        }
        for a in 0..self.num_arcs {
            match (ends_in[a], ends_out[a]) {
                (1, 1) => {}
                (0, 0) => {
                    let comp = &self.components[self.component_of[a]];
                    if comp.len() != 1 {
                        return Err(Error::InvalidDiagram(format!("dangling arc {}", a + 1)));
                    }
                    next[a] = a;
                }
                (i, o) => {
                    return Err(Error::InvalidDiagram(format!(
                        "arc {} appears {} times (expected twice, once entering and once leaving a crossing)",
                        a + 1,
                        i + o
                    )))
                }
            }
        }
        for comp in &self.components {
            for (k, &a) in comp.iter().enumerate() {
                let want = comp[(k + 1) % comp.len()];
                if next[a] != want {
                    return Err(Error::InvalidDiagram(format!("inconsistent orientation at arc {}", a + 1)));
                }
            }
        }
        Ok(())
    }

    pub fn num_arcs(&self) -> usize {
        self.num_arcs
    }

    pub fn crossings(&self) -> &[Crossing] {
        &self.crossings
    }

    pub fn num_crossings(&self) -> usize {
        self.crossings.len()
    }

    pub fn components(&self) -> &[Vec<usize>] {
        &self.components
    }

    pub fn num_components(&self) -> usize {
        self.components.len()
    }

    pub fn component_of(&self, arc: usize) -> usize {
        self.component_of[arc]
    }

    pub fn colors(&self) -> &[u32] {
        &self.colors
    }

    pub fn color_of_arc(&self, arc: usize) -> u32 {
        self.colors[self.component_of[arc]]
    }

    pub fn is_uncolored(&self) -> bool {
        self.colors.iter().all(|&c| c == 1)
    }

    pub fn max_color(&self) -> u32 {
        self.colors.iter().copied().max().unwrap_or(1)
    }

    pub fn braid(&self) -> Option<&BraidWord> {
        self.braid.as_ref()
    }

    pub fn writhe(&self) -> i64 {
        self.crossings.iter().map(|x| x.sign as i64).sum()
    }

    pub fn num_negative(&self) -> usize {
        self.crossings.iter().filter(|x| x.sign < 0).count()
    }

    /// Arcs with no crossing, each forming an unknotted unlinked circle.
    pub fn free_circles(&self) -> Vec<usize> {
        self.components.iter().filter(|c| c.len() == 1 && !self.arc_touches_crossing(c[0])).map(|c| c[0]).collect()
    }

    fn arc_touches_crossing(&self, a: usize) -> bool {
        self.crossings.iter().any(|x| x.pd.contains(&a))
    }

    /// `(crossing index, slot)` where the arc starts and ends. `None` for free circles.
    pub fn arc_ends(&self, arc: usize) -> Option<((usize, usize), (usize, usize))> {
        let mut tail = None;
        let mut head = None;
        for (ci, x) in self.crossings.iter().enumerate() {
            let ins = x.in_slots();
            for (slot, &a) in x.pd.iter().enumerate() {
                if a == arc {
                    if ins.contains(&slot) {
                        head = Some((ci, slot));
                    } else {
                        tail = Some((ci, slot));
                    }
                }
            }
        }
        Some((tail?, head?))
    }

    pub fn check_base_point(&self, p: BasePoint) -> Result<()> {
        if p.arc >= self.num_arcs {
            return Err(Error::IndexOutOfRange { index: p.arc + 1, bound: self.num_arcs });
        }
        Ok(())
    }

    pub fn mirror(&self) -> Self {
        Self {
            num_arcs: self.num_arcs,
            crossings: self.crossings.iter().map(Crossing::mirrored).collect(),
            components: self.components.clone(),
            component_of: self.component_of.clone(),
            colors: self.colors.clone(),
            braid: self.braid.as_ref().map(BraidWord::mirror),
        }
    }

    /// Reverses the orientation of every component.
    pub fn reverse(&self) -> Self {
        let components: Vec<Vec<usize>> = self
            .components
            .iter()
            .map(|c| {
                let mut r = c.clone();
                r.reverse();
                r
            })
            .collect();
        let crossings = self.crossings.iter().map(Crossing::reversed).collect();
        Self::from_signed_pd(crossings, components, self.colors.clone()).expect("reversal preserves validity")
    }

    pub fn with_colors(&self, colors: Vec<u32>) -> Result<Self> {
        if colors.len() != self.components.len() || colors.contains(&0) {
            return Err(Error::InvalidDiagram("one positive color per component required".into()));
        }
        let mut d = self.clone();
        if let Some(b) = &mut d.braid {
            let mut per_pos = vec![1; b.strands];
            // closure components are numbered in cycle order
            for (comp, cyc) in b.cycles().iter().enumerate() {
                for &p in cyc {
                    per_pos[p] = colors[comp];
                }
            }
            b.colors = Some(per_pos);
        }
        d.colors = colors;
        Ok(d)
    }

    /// Drops the braid origin, forcing the generic planar slicer.
    pub fn without_braid(&self) -> Self {
        Self { braid: None, ..self.clone() }
    }

    /// Canonical JSON form: arcs `1..=n` in traversal order, crossings in
    /// stored order, colors keyed by 1-based component number.
    pub fn to_pd_json(&self) -> String {
        let xs: Vec<String> = self.crossings.iter().map(|x| format!("[{},{},{},{}]", x.pd[0] + 1, x.pd[1] + 1, x.pd[2] + 1, x.pd[3] + 1)).collect();
        let os: Vec<String> = self.components.iter().map(|c| format!("[{}]", c.iter().map(|a| (a + 1).to_string()).collect::<Vec<_>>().join(","))).collect();
        let cs: Vec<String> = self.colors.iter().enumerate().map(|(i, c)| format!("\"{}\":{}", i + 1, c)).collect();
        let ss: Vec<String> = self.crossings.iter().map(|x| x.sign.to_string()).collect();
        format!("{{\"crossings\":[{}],\"orientations\":[{}],\"colors\":{{{}}},\"signs\":[{}]}}\n", xs.join(","), os.join(","), cs.join(","), ss.join(","))
    }
}

/// Trace closure of a braid. Strands move upward; `s_i` is the positive
/// crossing with the strand from position `i` passing over to position `i+1`.
pub fn braid_closure(b: &BraidWord) -> LinkDiagram {
    let n = b.strands;
    let mut next_id = n;
    let mut cur: Vec<usize> = (0..n).collect();
    let mut raw: Vec<Crossing> = Vec::with_capacity(b.letters.len());
    for &(i, s) in &b.letters {
        let (l, r) = (cur[i - 1], cur[i]);
        let (tl, tr) = (next_id, next_id + 1);
        next_id += 2;
        let pd = if s > 0 { [r, tr, tl, l] } else { [l, r, tr, tl] };
        raw.push(Crossing { pd, sign: s });
        cur[i - 1] = tl;
        cur[i] = tr;
    }
    // identify the top arc at each position with the bottom arc there
    let mut alias: Vec<usize> = (0..next_id).collect();
    for p in 0..n {
        alias[cur[p]] = p;
    }
    let resolve = |a: usize| alias[a];
    let crossings: Vec<Crossing> = raw.iter().map(|x| Crossing { pd: x.pd.map(resolve), sign: x.sign }).collect();

    let mut next = vec![usize::MAX; next_id];
    for x in &crossings {
        next[x.under_in()] = x.under_out();
        next[x.over_in()] = x.over_out();
    }
    let mut components = Vec::new();
    let mut colors = Vec::new();
    for cyc in b.cycles() {
        let start = cyc[0];
        let mut comp = vec![start];
        let mut a = next[start];
        while a != usize::MAX && a != start {
            comp.push(a);
            a = next[a];
        }
        components.push(comp);
        colors.push(b.colors.as_ref().map_or(1, |c| c[start]));
    }
    let mut d = LinkDiagram::from_signed_pd(crossings, components, colors).expect("braid closures are valid diagrams");
    d.braid = Some(b.clone());
    d
}

/// Parses the JSON PD format
/// `{"crossings":[[a,b,c,d],...],"orientations":[[arcs...],...],"colors":{"1":k},"signs":[...]}`.
/// `colors` and `signs` are optional; signs are inferred from the
/// orientations when they are determined by them.
pub fn parse_pd(text: &str) -> Result<LinkDiagram> {
    let v: Value = serde_json::from_str(text).map_err(|e| Error::Parse(format!("PD JSON: {e}")))?;
    let obj = v.as_object().ok_or_else(|| Error::Parse("PD JSON must be an object".into()))?;
    let as_arc =
        |x: &Value| -> Result<usize> { x.as_u64().map(|n| n as usize).ok_or_else(|| Error::Parse(format!("arc label {x} is not a nonnegative integer"))) };
    let mut records = Vec::new();
    if let Some(xs) = obj.get("crossings") {
        for rec in xs.as_array().ok_or_else(|| Error::Parse("crossings must be an array".into()))? {
            let r = rec.as_array().ok_or_else(|| Error::Parse("crossing must be an array".into()))?;
            if r.len() != 4 {
                return Err(Error::Parse(format!("crossing record {rec} must have four arcs")));
            }
            records.push([as_arc(&r[0])?, as_arc(&r[1])?, as_arc(&r[2])?, as_arc(&r[3])?]);
        }
    }
    let mut components = Vec::new();
    for o in obj.get("orientations").and_then(Value::as_array).ok_or_else(|| Error::Parse("missing orientations".into()))? {
        let arcs = o.as_array().ok_or_else(|| Error::Parse("orientation must be an array".into()))?;
        components.push(arcs.iter().map(as_arc).collect::<Result<Vec<_>>>()?);
    }
    let mut colors = vec![1u32; components.len()];
    if let Some(cs) = obj.get("colors") {
        for (k, val) in cs.as_object().ok_or_else(|| Error::Parse("colors must be an object".into()))? {
            let idx: usize = k.parse().map_err(|_| Error::Parse(format!("bad component key {k:?}")))?;
            if idx == 0 || idx > components.len() {
                return Err(Error::InvalidDiagram(format!("color for unknown component {idx}")));
            }
            colors[idx - 1] = val.as_u64().ok_or_else(|| Error::Parse(format!("bad color {val}")))? as u32;
        }
    }
    let given_signs = match obj.get("signs") {
        Some(s) => Some(
            s.as_array()
                .ok_or_else(|| Error::Parse("signs must be an array".into()))?
                .iter()
                .map(|x| match x.as_i64() {
                    Some(1) => Ok(1i8),
                    Some(-1) => Ok(-1i8),
                    _ => Err(Error::Parse(format!("bad sign {x}"))),
                })
                .collect::<Result<Vec<_>>>()?,
        ),
        None => None,
    };
    let mut uses: BTreeMap<usize, usize> = BTreeMap::new();
    for r in &records {
        for a in r {
            *uses.entry(*a).or_default() += 1;
        }
    }
    if let Some((a, _)) = uses.iter().find(|(_, &n)| n > 2) {
        return Err(Error::InvalidDiagram(format!("arc {a} used more than twice")));
    }
    if let Some((a, _)) = uses.iter().find(|(_, &n)| n == 1) {
        return Err(Error::InvalidDiagram(format!("dangling arc {a}")));
    }
    let signs = infer_signs(&records, &components, given_signs.as_deref())?;
    let crossings = records.iter().zip(&signs).map(|(pd, &sign)| Crossing { pd: *pd, sign }).collect();
    LinkDiagram::from_signed_pd(crossings, components, colors)
}

/// Assigns over-strand directions so that every transition `x -> next(x)`
/// along the orientations is used by exactly one crossing passage.
fn infer_signs(records: &[[usize; 4]], components: &[Vec<usize>], given: Option<&[i8]>) -> Result<Vec<i8>> {
    if let Some(g) = given {
        if g.len() != records.len() {
            return Err(Error::InvalidDiagram(format!("{} signs for {} crossings", g.len(), records.len())));
        }
    }
    let mut avail: BTreeMap<(usize, usize), usize> = BTreeMap::new();
    for comp in components {
        for (k, &a) in comp.iter().enumerate() {
            *avail.entry((a, comp[(k + 1) % comp.len()])).or_default() += 1;
        }
    }
    for r in records {
        let t = (r[0], r[2]);
        match avail.get_mut(&t) {
            Some(n) if *n > 0 => *n -= 1,
            _ => return Err(Error::InvalidDiagram(format!("under strand {} -> {} disagrees with the orientations", r[0], r[2]))),
        }
    }
    let mut signs = vec![0i8; records.len()];
    let mut found = Vec::new();
    search_signs(records, 0, &mut avail, &mut signs, given, &mut found);
    match found.len() {
        0 => Err(Error::InvalidDiagram("orientations are inconsistent with the crossings".into())),
        1 => Ok(found.pop().expect("one solution")),
        _ => Err(Error::InvalidDiagram("crossing signs are ambiguous for these orientations; add a \"signs\" array".into())),
    }
}

fn search_signs(
    records: &[[usize; 4]],
    k: usize,
    avail: &mut BTreeMap<(usize, usize), usize>,
    signs: &mut Vec<i8>,
    given: Option<&[i8]>,
    found: &mut Vec<Vec<i8>>,
) {
    if found.len() > 1 {
        return;
    }
    if k == records.len() {
        found.push(signs.clone());
        return;
    }
    let [_, b, _, d] = records[k];
    for (sign, t) in [(1i8, (d, b)), (-1i8, (b, d))] {
        if given.is_some_and(|g| g[k] != sign) {
            continue;
        }
        if let Some(n) = avail.get_mut(&t) {
            if *n > 0 {
                *n -= 1;
                signs[k] = sign;
                search_signs(records, k + 1, avail, signs, given, found);
                *avail.get_mut(&t).expect("present") += 1;
            }
        }
        if b == d {
            break;
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn closure(s: &str) -> LinkDiagram {
        braid_closure(&parse_braid(s).unwrap())
    }

    /// Union-find over the arc pairs joined by strands through each crossing.
    fn components_oracle(records: &[[usize; 4]], arcs: &[usize]) -> usize {
        let idx: BTreeMap<usize, usize> = arcs.iter().enumerate().map(|(i, a)| (*a, i)).collect();
        let mut parent: Vec<usize> = (0..arcs.len()).collect();
        fn find(p: &mut Vec<usize>, x: usize) -> usize {
            if p[x] != x {
                let r = find(p, p[x]);
                p[x] = r;
            }
            p[x]
        }
        for r in records {
            for (x, y) in [(r[0], r[2]), (r[1], r[3])] {
                let (a, b) = (find(&mut parent, idx[&x]), find(&mut parent, idx[&y]));
                parent[a] = b;
            }
        }
        (0..arcs.len()).filter(|&i| find(&mut parent, i) == i).count()
    }

    #[test]
    fn braid_parsing() {
        let b = parse_braid("strands=2; s1 s1").unwrap();
        assert_eq!(b.letters, vec![(1, 1), (1, 1)]);
        let t = parse_braid("strands=2; s1 s1 s1").unwrap();
        assert_eq!(t.letters.len(), 3);
        assert_eq!(parse_braid("strands=2; s3"), Err(Error::IndexOutOfRange { index: 3, bound: 2 }));
        assert!(parse_braid("strands=2; t1").is_err());
        assert!(parse_braid("s1 s1").is_err());
        let c = parse_braid("strands=2; colors=2,2; s1 s1^-1 s1").unwrap();
        assert_eq!(c.colors, Some(vec![2, 2]));
        assert!(parse_braid("strands=2; colors=1,2; s1").is_err());
        assert_eq!(parse_braid(&c.to_string()).unwrap(), c);
    }

    #[test]
    fn closures() {
        let hopf = closure("strands=2; s1 s1");
        assert_eq!((hopf.num_components(), hopf.writhe()), (2, 2));
        let unknot = closure("strands=1;");
        assert_eq!((unknot.num_components(), unknot.writhe()), (1, 0));
        assert_eq!(unknot.free_circles(), vec![0]);
        let trefoil = closure("strands=2; s1 s1 s1");
        assert_eq!((trefoil.num_components(), trefoil.writhe()), (1, 3));
    }

    #[test]
    fn components_match_cycles_and_union_find() {
        for s in ["strands=2; s1 s1", "strands=3; s1 s2 s1 s2", "strands=3; s1 s2^-1 s1 s2^-1", "strands=4; s1 s2 s3 s1 s2 s3", "strands=3; s1 s1"] {
            let b = parse_braid(s).unwrap();
            let d = braid_closure(&b);
            assert_eq!(d.num_components(), b.cycles().len(), "{s}");
            let records: Vec<[usize; 4]> = d.crossings().iter().map(|x| x.pd).collect();
            let arcs: Vec<usize> = (0..d.num_arcs()).collect();
            assert_eq!(components_oracle(&records, &arcs), d.num_components(), "{s}");
        }
    }

    #[test]
    fn pd_round_trip_and_parse() {
        for s in ["strands=2; s1 s1", "strands=2; s1 s1 s1", "strands=3; s1 s2^-1 s1 s2^-1", "strands=1;"] {
            let d = closure(s);
            let json = d.to_pd_json();
            let back = parse_pd(&json).unwrap();
            assert_eq!(back.to_pd_json(), json);
            assert_eq!(back.writhe(), d.writhe());
            assert_eq!(back.num_components(), d.num_components());
        }
    }

    #[test]
    fn hopf_pd_components() {
        let text = r#"{"crossings":[[3,2,4,1],[2,3,1,4]],"orientations":[[1,2],[3,4]]}"#;
        let d = parse_pd(text).unwrap();
        assert_eq!(d.num_components(), 2);
        assert_eq!(d.writhe(), 2);
        assert_eq!(components_oracle(&[[3, 2, 4, 1], [2, 3, 1, 4]], &[1, 2, 3, 4]), 2);
    }

    #[test]
    fn unknot_pd_matches_closure() {
        let d = parse_pd(r#"{"crossings":[],"orientations":[[7]]}"#).unwrap();
        assert_eq!(d.to_pd_json(), closure("strands=1;").to_pd_json());
    }

    #[test]
    fn pd_errors() {
        let triple = r#"{"crossings":[[1,1,1,2],[2,3,3,4]],"orientations":[[1,2,3,4]]}"#;
        assert!(matches!(parse_pd(triple), Err(Error::InvalidDiagram(_))));
        let dangling = r#"{"crossings":[[1,2,3,4],[4,5,6,1]],"orientations":[[1,2,3,4,5,6]]}"#;
        assert!(parse_pd(dangling).is_err());
        let wrong = r#"{"crossings":[[1,3,4,2],[4,2,3,1]],"orientations":[[1,2],[3,4]]}"#;
        assert!(parse_pd(wrong).is_err());
        assert!(parse_pd("not json").is_err());
    }

    #[test]
    fn trefoil_signs_inferred() {
        let d = closure("strands=2; s1 s1 s1");
        let mut v: Value = serde_json::from_str(&d.to_pd_json()).unwrap();
        v.as_object_mut().unwrap().remove("signs");
        let back = parse_pd(&v.to_string()).unwrap();
        assert_eq!(back.writhe(), 3);
    }

    #[test]
    fn mirror_properties() {
        let hopf = closure("strands=2; s1 s1");
        assert_eq!(hopf.mirror().mirror(), hopf);
        assert_eq!(hopf.mirror().writhe(), -2);
        let unknot = closure("strands=1;");
        assert_eq!(unknot.mirror(), unknot);
        let fig8 = closure("strands=3; s1 s2^-1 s1 s2^-1");
        assert_eq!(fig8.mirror().writhe(), -fig8.writhe());
        assert!(parse_pd(&hopf.mirror().to_pd_json()).is_ok());
    }

    #[test]
    fn reverse_keeps_signs() {
        let t = closure("strands=2; s1 s1 s1");
        let r = t.reverse();
        assert_eq!(r.writhe(), 3);
        assert_eq!(r.reverse().to_pd_json(), t.without_braid().to_pd_json());
    }

    #[test]
    fn smoothings_join_in_to_out() {
        let d = closure("strands=2; s1 s1^-1");
        for x in d.crossings() {
            for (p, q) in x.oriented_smoothing() {
                let ins = [x.under_in(), x.over_in()];
                assert!(ins.contains(&p) != ins.contains(&q));
            }
        }
    }
}
