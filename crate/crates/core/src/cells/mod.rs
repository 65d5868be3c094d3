//! Indexed root expressions, symbolic intervals and cell descriptions.

mod formula;
mod text;

use std::cmp::Ordering;
use std::fmt;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::poly::{MPoly, Rat, Var};
use crate::realalg::{roots_in_extension, simplest_between, RealAlg};

pub use formula::{Constraint, Relation};
pub use text::CellParseError;

/// The `index`-th real root (1-based) of `poly` in its main variable.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct IndexedRoot {
    pub poly: MPoly,
    pub index: usize,
}

impl IndexedRoot {
    pub fn new(poly: MPoly, index: usize) -> Self {
        assert!(index >= 1, "root indices are 1-based");
        assert!(poly.main_var().is_some(), "indexed root of a constant");
        IndexedRoot { poly, index }
    }

    pub fn var(&self) -> Var {
        self.poly.main_var().expect("nonconstant")
    }

    pub fn level(&self) -> usize {
        self.poly.level()
    }

    /// Value over the first `level - 1` coordinates of `s`; `None` when the
    /// root does not exist or the polynomial is nullified.
    pub fn eval(&self, s: &[RealAlg]) -> Option<RealAlg> {
        let prefix = &s[..self.level() - 1];
        roots_in_extension(&self.poly, prefix)?.into_iter().nth(self.index - 1)
    }

    pub fn display_with<'a>(&'a self, names: &'a [String]) -> RootDisplay<'a> {
        RootDisplay { root: self, names: Some(names) }
    }
}

pub struct RootDisplay<'a> {
    root: &'a IndexedRoot,
    names: Option<&'a [String]>,
}

impl fmt::Display for RootDisplay<'_> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.names {
            Some(n) => write!(f, "(root \"{}\" {})", self.root.poly.display_with(n), self.root.index),
            None => write!(f, "(root \"{}\" {})", self.root.poly, self.root.index),
        }
    }
}

impl fmt::Display for IndexedRoot {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        RootDisplay { root: self, names: None }.fmt(f)
    }
}

impl fmt::Debug for IndexedRoot {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

/// An indexed root together with its value at the current sample.
#[derive(Clone, Debug)]
pub struct RootValue {
    pub root: IndexedRoot,
    pub value: RealAlg,
}

/// All indexed roots of `polys` (each of level `|s| + 1`) over `s`, sorted
/// by value then by root; `None` if some polynomial is nullified at `s`.
pub fn irexpr(polys: &[MPoly], s: &[RealAlg]) -> Option<Vec<RootValue>> {
    let mut out = Vec::new();
    for p in polys {
        let roots = roots_in_extension(p, s)?;
        out.extend(roots.into_iter().enumerate().map(|(k, value)| RootValue {
            root: IndexedRoot::new(p.clone(), k + 1),
            value,
        }));
    }
    out.sort_by(|a, b| a.value.compare(&b.value).then_with(|| a.root.cmp(&b.root)));
    Some(out)
}

/// The indexed roots of `polys` over `s` whose value is `at`.
pub fn irexpr_at(polys: &[MPoly], s: &[RealAlg], at: &RealAlg) -> Option<Vec<IndexedRoot>> {
    Some(
        irexpr(polys, s)?
            .into_iter()
            .filter(|rv| rv.value == *at)
            .map(|rv| rv.root)
            .collect(),
    )
}

#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum SymbolicInterval {
    /// Open interval; `None` bounds are infinite.
    Sector {
        lower: Option<IndexedRoot>,
        upper: Option<IndexedRoot>,
    },
    Section(IndexedRoot),
}

/// Outcome of evaluating an interval's bounds over a sample prefix.
#[derive(Clone, Debug)]
pub enum Span {
    Sector(Option<RealAlg>, Option<RealAlg>),
    Point(RealAlg),
}

impl SymbolicInterval {
    pub fn full() -> Self {
        SymbolicInterval::Sector { lower: None, upper: None }
    }

    pub fn sector(lower: Option<IndexedRoot>, upper: Option<IndexedRoot>) -> Self {
        SymbolicInterval::Sector { lower, upper }
    }

    pub fn is_section(&self) -> bool {
        matches!(self, SymbolicInterval::Section(_))
    }

    pub fn roots(&self) -> Vec<&IndexedRoot> {
        match self {
            SymbolicInterval::Sector { lower, upper } => lower.iter().chain(upper.iter()).collect(),
            SymbolicInterval::Section(b) => vec![b],
        }
    }

    /// Lower and upper bound; both are the section bound for sections.
    pub fn bounds(&self) -> (Option<&IndexedRoot>, Option<&IndexedRoot>) {
        match self {
            SymbolicInterval::Sector { lower, upper } => (lower.as_ref(), upper.as_ref()),
            SymbolicInterval::Section(b) => (Some(b), Some(b)),
        }
    }

    /// Evaluate the bounds over `s` (length at least `level - 1`).
    pub fn span(&self, s: &[RealAlg]) -> Option<Span> {
        let ev = |r: &Option<IndexedRoot>| -> Option<Option<RealAlg>> {
            match r {
                None => Some(None),
                Some(r) => r.eval(s).map(Some),
            }
        };
        match self {
            SymbolicInterval::Sector { lower, upper } => Some(Span::Sector(ev(lower)?, ev(upper)?)),
            SymbolicInterval::Section(b) => b.eval(s).map(Span::Point),
        }
    }

    /// Whether `x` lies in the interval lifted over `s`; `None` when a
    /// bound is undefined there.
    pub fn contains(&self, s: &[RealAlg], x: &RealAlg) -> Option<bool> {
        Some(match self.span(s)? {
            Span::Point(b) => b == *x,
            Span::Sector(lo, hi) => {
                lo.is_none_or(|l| l.compare(x) == Ordering::Less)
                    && hi.is_none_or(|h| x.compare(&h) == Ordering::Less)
            }
        })
    }

    pub fn display_with<'a>(&'a self, names: &'a [String]) -> IntervalDisplay<'a> {
        IntervalDisplay { interval: self, names: Some(names) }
    }
}

pub struct IntervalDisplay<'a> {
    interval: &'a SymbolicInterval,
    names: Option<&'a [String]>,
}

impl fmt::Display for IntervalDisplay<'_> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let root = |r: &IndexedRoot| RootDisplay { root: r, names: self.names }.to_string();
        match self.interval {
            SymbolicInterval::Section(b) => write!(f, "section {}", root(b)),
            SymbolicInterval::Sector { lower, upper } => write!(
                f,
                "sector {} {}",
                lower.as_ref().map_or("-inf".to_string(), root),
                upper.as_ref().map_or("+inf".to_string(), root)
            ),
        }
    }
}

impl fmt::Display for SymbolicInterval {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        IntervalDisplay { interval: self, names: None }.fmt(f)
    }
}

impl fmt::Debug for SymbolicInterval {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

/// A cylindrical cell: interval `k` constrains `x_{k+1}` over the cell below.
#[derive(Clone, PartialEq, Eq, Hash, Debug, Default)]
pub struct CellDescription {
    pub intervals: Vec<SymbolicInterval>,
}

impl CellDescription {
    pub fn new(intervals: Vec<SymbolicInterval>) -> Self {
        CellDescription { intervals }
    }

    pub fn dim(&self) -> usize {
        self.intervals.len()
    }

    /// Membership of the point `r` in the cell's first `|r|` levels.
    pub fn contains(&self, r: &[RealAlg]) -> Option<bool> {
        assert!(r.len() <= self.intervals.len(), "point longer than cell");
        for (k, iv) in self.intervals.iter().take(r.len()).enumerate() {
            if !iv.contains(&r[..k], &r[k])? {
                return Some(false);
            }
        }
        Some(true)
    }

    /// A point of the cell, deterministic per seed. Seed 0 takes midpoints
    /// of the rational gaps; other seeds sample pseudo-randomly. `None` if a
    /// bound is undefined or a sector is empty along the way.
    pub fn pick_interior_point(&self, seed: u64) -> Option<Vec<RealAlg>> {
        self.pick_interior_points([seed])?.pop()
    }

    /// One point per seed; the bottom level's bounds are evaluated once.
    pub fn pick_interior_points<I: IntoIterator<Item = u64>>(&self, seeds: I) -> Option<Vec<Vec<RealAlg>>> {
        let Some(first) = self.intervals.first() else {
            return Some(seeds.into_iter().map(|_| Vec::new()).collect());
        };
        let base = first.span(&[])?;
        seeds.into_iter().map(|seed| self.pick_over(&base, seed)).collect()
    }

    fn pick_over(&self, base: &Span, seed: u64) -> Option<Vec<RealAlg>> {
        let mut rng = (seed != 0).then(|| ChaCha8Rng::seed_from_u64(seed));
        let mut point: Vec<RealAlg> = Vec::with_capacity(self.dim());
        for iv in &self.intervals {
            let span = if point.is_empty() { base.clone() } else { iv.span(&point)? };
            let x = match span {
                Span::Point(b) => b,
                Span::Sector(lo, hi) => RealAlg::Rational(pick_between(lo.as_ref(), hi.as_ref(), rng.as_mut())?),
            };
            point.push(x);
        }
        Some(point)
    }

    pub fn display_with<'a>(&'a self, names: &'a [String]) -> CellDisplay<'a> {
        CellDisplay { cell: self, names: Some(names) }
    }

    /// One extended constraint per finite bound, level by level.
    pub fn to_formula(&self) -> Vec<Constraint> {
        let mut out = Vec::new();
        for (k, iv) in self.intervals.iter().enumerate() {
            let var = Var(k + 1);
            match iv {
                SymbolicInterval::Section(b) => out.push(Constraint::root(var, Relation::Eq, b.clone())),
                SymbolicInterval::Sector { lower, upper } => {
                    if let Some(l) = lower {
                        out.push(Constraint::root(var, Relation::Gt, l.clone()));
                    }
                    if let Some(u) = upper {
                        out.push(Constraint::root(var, Relation::Lt, u.clone()));
                    }
                }
            }
        }
        out
    }
}

/// Rational strictly between two optional bounds.
fn pick_between(lo: Option<&RealAlg>, hi: Option<&RealAlg>, rng: Option<&mut ChaCha8Rng>) -> Option<Rat> {
    if let (Some(l), Some(h)) = (lo, hi) {
        if l.compare(h) != Ordering::Less {
            return None;
        }
        // separate the isolating intervals so the gap is rational
        while l.interval().1 >= h.interval().0 {
            l.refine();
            h.refine();
        }
    }
    let one = Rat::from_integer(1.into());
    let (a, b) = match (lo, hi) {
        (None, None) => (-one.clone(), one),
        (Some(l), None) => {
            let a = l.interval().1;
            (a.clone(), a + one)
        }
        (None, Some(h)) => {
            let b = h.interval().0;
            (b.clone() - one, b)
        }
        (Some(l), Some(h)) => (l.interval().1, h.interval().0),
    };
    let Some(rng) = rng else {
        return Some(match (lo, hi) {
            (None, None) => Rat::from_integer(0.into()),
            _ => (a + b) / Rat::from_integer(2.into()),
        });
    };
    // widen unbounded sides at random, then a random spot with a small neighbourhood
    let stretch = Rat::from_integer(rng.gen_range(1..=16).into());
    let (a, b) = match (lo, hi) {
        (None, None) => (-stretch.clone(), stretch),
        (Some(_), None) => (a.clone(), a + stretch),
        (None, Some(_)) => (b.clone() - stretch, b),
        _ => (a, b),
    };
    let w = &b - &a;
    let t = Rat::new(rng.gen_range(1..1024).into(), 1024.into());
    let x = &a + &w * &t;
    let eps = &w / Rat::from_integer(2048.into());
    Some(simplest_between(&(&x - &eps).max(a), &(&x + &eps).min(b)))
}

pub struct CellDisplay<'a> {
    cell: &'a CellDescription,
    names: Option<&'a [String]>,
}

/// One level per line: `level <i> sector <lo> <hi>` or `level <i> section <b>`.
impl fmt::Display for CellDisplay<'_> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (k, iv) in self.cell.intervals.iter().enumerate() {
            writeln!(f, "level {} {}", k + 1, IntervalDisplay { interval: iv, names: self.names })?;
        }
        Ok(())
    }
}

impl fmt::Display for CellDescription {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        CellDisplay { cell: self, names: None }.fmt(f)
    }
}
