//! Morse slicings of link diagrams: sequences of cups, caps and crossings.
//!
//! Braid closures are sliced canonically (nested cups on the right, the
//! braid, nested caps). PD codes go through a deterministic sweep that
//! keeps a frontier of strand ends and places crossings whose bottom legs
//! are adjacent in counterclockwise order, inserting cups when needed, with
//! bounded backtracking.

use std::collections::HashSet;

use crate::diagram::{BraidWord, LinkDiagram};
use crate::error::{Error, Result};

use super::crossing::{ladder_terms, rotate_left, rotate_right};
use super::{Dir, Gen, SlicedWeb, Step};

/// How a standard upward crossing is turned to fit its position.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Rot {
    None,
    Left,
    Right,
    Half,
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum SliceStep {
    Gen(Step),
    Crossing { offset: usize, index: usize, a: u32, b: u32, sign: i8, rot: Rot },
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct DiagramSlicing {
    pub steps: Vec<SliceStep>,
    pub num_crossings: usize,
}

/// Gauge-free terms of one sliced crossing: `((-q)^m exponent m, tangle)`.
pub fn crossing_tangles(a: u32, b: u32, sign: i8, rot: Rot) -> Vec<(i64, SlicedWeb)> {
    ladder_terms(a, b, sign)
        .into_iter()
        .map(|(m, w)| {
            let t = match rot {
                Rot::None => w,
                Rot::Left => rotate_left(&w).expect("crossing tangles are 2x2"),
                Rot::Right => rotate_right(&w).expect("crossing tangles are 2x2"),
                Rot::Half => rotate_left(&rotate_left(&w).expect("2x2")).expect("2x2"),
            };
            (m, t)
        })
        .collect()
}

impl DiagramSlicing {
    /// Canonical slicing of a diagram: the braid route when the diagram
    /// remembers its braid, the planar sweep otherwise.
    pub fn of(d: &LinkDiagram) -> Result<Self> {
        match d.braid() {
            Some(b) => Ok(Self::from_braid(b, &braid_position_colors(d, b))),
            None => Self::from_pd(d),
        }
    }

    pub fn from_braid(b: &BraidWord, colors: &[u32]) -> Self {
        let n = b.strands;
        let mut steps = Vec::new();
        for (p, &c) in colors.iter().enumerate() {
            steps.push(SliceStep::Gen(Step { offset: p, gen: Gen::Cup(c) }));
        }
        let mut at: Vec<u32> = colors.to_vec();
        for (idx, &(i, s)) in b.letters.iter().enumerate() {
            steps.push(SliceStep::Crossing { offset: i - 1, index: idx, a: at[i - 1], b: at[i], sign: s, rot: Rot::None });
            at.swap(i - 1, i);
        }
        for p in (0..n).rev() {
            steps.push(SliceStep::Gen(Step { offset: p, gen: Gen::Cap(colors[p]) }));
        }
        Self { steps, num_crossings: b.letters.len() }
    }

    pub fn from_pd(d: &LinkDiagram) -> Result<Self> {
        let mut sweep = Sweep::new(d);
        let mut budget = 200_000usize;
        let mut failed = HashSet::new();
        if !sweep.search(&mut budget, &mut failed) {
            return Err(Error::Unsliceable(if budget == 0 { "search budget exhausted".into() } else { "no consistent height assignment found".into() }));
        }
        let mut steps = sweep.steps;
        for a in d.free_circles() {
            let c = d.color_of_arc(a);
            steps.push(SliceStep::Gen(Step { offset: 0, gen: Gen::Cup(c) }));
            steps.push(SliceStep::Gen(Step { offset: 0, gen: Gen::Cap(c) }));
        }
        Ok(Self { steps, num_crossings: d.num_crossings() })
    }

    /// The closed web obtained by choosing term `choice[i]` at crossing `i`,
    /// given precomputed tangles per crossing.
    pub fn web_for(&self, tangles: &[Vec<(i64, SlicedWeb)>], choice: &[usize]) -> Result<SlicedWeb> {
        let mut w = SlicedWeb::closed();
        for s in &self.steps {
            match s {
                SliceStep::Gen(st) => w.push(st.offset, st.gen)?,
                SliceStep::Crossing { offset, index, .. } => w.then_at(*offset, &tangles[*index][choice[*index]].1)?,
            }
        }
        Ok(w)
    }

    /// Crossing data `(a, b, sign, rot)` indexed by crossing number.
    pub fn crossing_data(&self) -> Vec<(u32, u32, i8, Rot)> {
        let mut out = vec![(0, 0, 0, Rot::None); self.num_crossings];
        for s in &self.steps {
            if let SliceStep::Crossing { index, a, b, sign, rot, .. } = s {
                out[*index] = (*a, *b, *sign, *rot);
            }
        }
        out
    }
}

fn braid_position_colors(d: &LinkDiagram, b: &BraidWord) -> Vec<u32> {
    let mut colors = vec![1; b.strands];
    for (ci, cyc) in b.cycles().iter().enumerate() {
        for &p in cyc {
            colors[p] = d.colors()[ci];
        }
    }
    colors
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
struct Entry {
    arc: usize,
    target: Option<(usize, usize)>,
    dir: Dir,
}

struct Sweep<'a> {
    d: &'a LinkDiagram,
    /// `(tail, head)` as `(crossing, slot)` for every arc on a crossing.
    ends: Vec<Option<((usize, usize), (usize, usize))>>,
    frontier: Vec<Entry>,
    placed: Vec<bool>,
    steps: Vec<SliceStep>,
}

#[derive(Clone, Copy, Debug)]
enum Move {
    Place { x: usize, s: usize, i: usize },
    CupRight { x: usize, s: usize, i: usize },
    CupLeft { x: usize, s: usize, i: usize },
    CupBoth { x: usize, s: usize, p: usize },
}

impl<'a> Sweep<'a> {
    fn new(d: &'a LinkDiagram) -> Self {
        let ends = (0..d.num_arcs()).map(|a| d.arc_ends(a)).collect();
        Self { d, ends, frontier: Vec::new(), placed: vec![false; d.num_crossings()], steps: Vec::new() }
    }

    fn is_in_slot(&self, x: usize, slot: usize) -> bool {
        self.d.crossings()[x].in_slots().contains(&slot)
    }

    fn arc_at(&self, x: usize, slot: usize) -> usize {
        self.d.crossings()[x].pd[slot]
    }

    /// The end of `arc` other than `(x, slot)`.
    fn other_end(&self, arc: usize, x: usize, slot: usize) -> (usize, usize) {
        let (tail, head) = self.ends[arc].expect("arc on a crossing");
        if head == (x, slot) {
            tail
        } else {
            head
        }
    }

    fn label(&self, arc: usize) -> u32 {
        self.d.color_of_arc(arc)
    }

    fn key(&self) -> (Vec<Entry>, Vec<bool>) {
        (self.frontier.clone(), self.placed.clone())
    }

    fn search(&mut self, budget: &mut usize, failed: &mut HashSet<(Vec<Entry>, Vec<bool>)>) -> bool {
        self.apply_caps();
        if self.placed.iter().all(|&p| p) {
            return self.frontier.is_empty();
        }
        if *budget == 0 {
            return false;
        }
        *budget -= 1;
        let key = self.key();
        if failed.contains(&key) {
            return false;
        }
        for mv in self.moves() {
            let saved = (self.frontier.clone(), self.placed.clone(), self.steps.len());
            self.apply(mv);
            if self.search(budget, failed) {
                return true;
            }
            self.frontier = saved.0;
            self.placed = saved.1;
            self.steps.truncate(saved.2);
            if *budget == 0 {
                return false;
            }
        }
        failed.insert(key);
        false
    }

    fn apply_caps(&mut self) {
        loop {
            let found = (0..self.frontier.len().saturating_sub(1)).find(|&i| {
                let (l, r) = (self.frontier[i], self.frontier[i + 1]);
                l.arc == r.arc && l.target.is_none() && r.target.is_none()
            });
            let Some(i) = found else { break };
            let (l, r) = (self.frontier[i], self.frontier[i + 1]);
            let label = self.label(l.arc);
            let gen = match (l.dir, r.dir) {
                (Dir::Up, Dir::Down) => Gen::Cap(label),
                (Dir::Down, Dir::Up) => Gen::CapR(label),
                _ => unreachable!("the two ends of an arc run in opposite directions"),
            };
            self.steps.push(SliceStep::Gen(Step { offset: i, gen }));
            self.frontier.drain(i..i + 2);
        }
    }

    fn has_entry(&self, arc: usize) -> bool {
        self.frontier.iter().any(|e| e.arc == arc)
    }

    fn moves(&self) -> Vec<Move> {
        let mut direct = Vec::new();
        let mut assisted = Vec::new();
        let mut fresh = Vec::new();
        let entry_for = |x: usize, s: usize| self.frontier.iter().position(|e| e.target == Some((x, s)));
        for x in 0..self.placed.len() {
            if self.placed[x] {
                continue;
            }
            for s in 0..4 {
                let s1 = (s + 1) % 4;
                let (el, er) = (entry_for(x, s), entry_for(x, s1));
                match (el, er) {
                    (Some(i), Some(j)) if j == i + 1 => direct.push(Move::Place { x, s, i }),
                    (Some(i), None) if !self.has_entry(self.arc_at(x, s1)) => assisted.push(Move::CupRight { x, s, i }),
                    (None, Some(j)) if !self.has_entry(self.arc_at(x, s)) => assisted.push(Move::CupLeft { x, s, i: j }),
                    (None, None) if !self.has_entry(self.arc_at(x, s)) && !self.has_entry(self.arc_at(x, s1)) => {
                        for p in 0..=self.frontier.len() {
                            fresh.push(Move::CupBoth { x, s, p });
                        }
                    }
                    _ => {}
                }
            }
        }
        if !direct.is_empty() {
            return direct;
        }
        if self.frontier.is_empty() {
            return fresh;
        }
        assisted.extend(fresh);
        assisted
    }

    fn entry_toward(&self, arc: usize, x: usize, slot: usize) -> Entry {
        Entry { arc, target: Some((x, slot)), dir: if self.is_in_slot(x, slot) { Dir::Up } else { Dir::Down } }
    }

    fn cup_entries(&self, x: usize, slot: usize, cup_on_left: bool) -> Vec<Entry> {
        let arc = self.arc_at(x, slot);
        let near = self.entry_toward(arc, x, slot);
        let (ox, os) = self.other_end(arc, x, slot);
        let far = self.entry_toward(arc, ox, os);
        if cup_on_left {
            vec![far, near]
        } else {
            vec![near, far]
        }
    }

    fn push_cup(&mut self, at: usize, pair: &[Entry]) {
        let label = self.label(pair[0].arc);
        let gen = match (pair[0].dir, pair[1].dir) {
            (Dir::Up, Dir::Down) => Gen::Cup(label),
            (Dir::Down, Dir::Up) => Gen::CupR(label),
            _ => unreachable!("cup ends run in opposite directions"),
        };
        self.steps.push(SliceStep::Gen(Step { offset: at, gen }));
        self.frontier.splice(at..at, pair.iter().copied());
    }

    fn apply(&mut self, mv: Move) {
        match mv {
            Move::Place { x, s, i } => self.place(x, s, i),
            Move::CupRight { x, s, i } => {
                let pair = self.cup_entries(x, (s + 1) % 4, false);
                self.push_cup(i + 1, &pair);
                self.place(x, s, i);
            }
            Move::CupLeft { x, s, i } => {
                let pair = self.cup_entries(x, s, true);
                self.push_cup(i, &pair);
                self.place(x, s, i + 1);
            }
            Move::CupBoth { x, s, p } => {
                let s1 = (s + 1) % 4;
                if self.arc_at(x, s) == self.arc_at(x, s1) {
                    let arc = self.arc_at(x, s);
                    let pair = [self.entry_toward(arc, x, s), self.entry_toward(arc, x, s1)];
                    self.push_cup(p, &pair);
                } else {
                    let left = self.cup_entries(x, s, true);
                    self.push_cup(p, &left);
                    let right = self.cup_entries(x, s1, false);
                    self.push_cup(p + 2, &right);
                }
                let i = self.frontier.iter().position(|e| e.target == Some((x, s))).expect("cup supplies the left leg");
                self.place(x, s, i);
            }
        }
    }

    /// Places crossing `x` with bottom legs at slots `s, s+1` on frontier
    /// positions `i, i+1`.
    fn place(&mut self, x: usize, s: usize, i: usize) {
        let (l, r) = (self.frontier[i], self.frontier[i + 1]);
        debug_assert_eq!(l.target, Some((x, s)));
        debug_assert_eq!(r.target, Some((x, (s + 1) % 4)));
        let sign = self.d.crossings()[x].sign;
        let (ll, rl) = (self.label(l.arc), self.label(r.arc));
        let (a, b, rot) = match (l.dir, r.dir) {
            (Dir::Up, Dir::Up) => (ll, rl, Rot::None),
            (Dir::Up, Dir::Down) => (rl, ll, Rot::Left),
            (Dir::Down, Dir::Up) => (rl, ll, Rot::Right),
            (Dir::Down, Dir::Down) => (ll, rl, Rot::Half),
        };
        self.steps.push(SliceStep::Crossing { offset: i, index: x, a, b, sign, rot });
        self.placed[x] = true;
        let mut tops = Vec::with_capacity(2);
        for t in [(s + 3) % 4, (s + 2) % 4] {
            let arc = self.arc_at(x, t);
            let dir = if self.is_in_slot(x, t) { Dir::Down } else { Dir::Up };
            let (ox, _) = self.other_end(arc, x, t);
            let target = if self.placed[ox] { None } else { Some(self.other_end(arc, x, t)) };
            tops.push(Entry { arc, target, dir });
        }
        self.frontier.splice(i..i + 2, tops);
        for (k, e) in self.frontier.iter_mut().enumerate() {
            if k != i && k != i + 1 && e.target.is_some_and(|(tx, _)| tx == x) {
                e.target = None;
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::diagram::{braid_closure, parse_braid};

    fn closure(s: &str) -> LinkDiagram {
        braid_closure(&parse_braid(s).unwrap())
    }

    #[test]
    fn braid_slicing_shape() {
        let d = closure("strands=2; s1 s1");
        let sl = DiagramSlicing::of(&d).unwrap();
        assert_eq!(sl.steps.len(), 2 + 2 + 2);
        assert_eq!(sl.num_crossings, 2);
    }

    #[test]
    fn pd_sweep_succeeds_on_closures() {
        for s in [
            "strands=1;",
            "strands=2; s1",
            "strands=2; s1 s1",
            "strands=2; s1 s1 s1",
            "strands=2; s1^-1 s1^-1 s1^-1",
            "strands=3; s1 s2^-1 s1 s2^-1",
            "strands=3; s1 s2 s1 s2 s1 s2 s1 s2",
            "strands=2; s1 s1 s1 s1 s1 s1 s1 s1",
            "strands=3; s1 s1",
        ] {
            let d = closure(s).without_braid();
            let sl = DiagramSlicing::from_pd(&d);
            assert!(sl.is_ok(), "{s}: {sl:?}");
            let r = DiagramSlicing::from_pd(&d.reverse());
            assert!(r.is_ok(), "reverse {s}");
            let m = DiagramSlicing::from_pd(&d.mirror());
            assert!(m.is_ok(), "mirror {s}");
        }
    }
}
