//! Properties of cells, the inference rules relating them, and derivation
//! traces recording how a cell's properties were established.
//!
//! Properties are ordered level by level; every rule replaces a property by
//! strictly smaller ones, which is what makes the construction terminate.

mod context;
mod rules;
mod set;
mod text;
mod trace;

use std::cmp::Ordering;
use std::collections::{BTreeMap, BTreeSet};
use std::fmt;
use std::str::FromStr;

use num_traits::Signed;
use thiserror::Error;

use crate::cells::{IndexedRoot, SymbolicInterval};
use crate::poly::MPoly;
use crate::realalg::RealAlg;

pub use context::Context;
pub use rules::{rule_choices, Choice, Origin};
pub use set::{ProofError, PropertySet};
pub use trace::{check_trace, validate_trace, DerivationTrace, InvalidTrace, TraceEntry, TraceParseError};

#[derive(Clone, PartialEq, Eq)]
pub enum Property {
    /// The cell contains the sample.
    Sample(Vec<RealAlg>),
    OrdInv(MPoly),
    SgnInv(MPoly),
    NonNull(MPoly),
    AnSub(usize),
    Connected(usize),
    AnDel(MPoly),
    /// The interval bounds the cell over the sample prefix.
    Repr(SymbolicInterval, Vec<RealAlg>),
    IrOrd(RootOrdering, Vec<RealAlg>),
    /// The cell is the lift of its projection by the interval at `level`.
    Holds(usize, SymbolicInterval),
}

/// Canonical form of a polynomial inside a property: constants by absolute
/// value, everything else normalized.
pub fn canonical(p: &MPoly) -> MPoly {
    match p.constant_value() {
        Some(c) => MPoly::constant(c.abs()),
        None => p.normalize(),
    }
}

impl Property {
    pub fn ordinv(p: &MPoly) -> Self {
        Property::OrdInv(canonical(p))
    }

    pub fn sgninv(p: &MPoly) -> Self {
        Property::SgnInv(canonical(p))
    }

    pub fn nonnull(p: &MPoly) -> Self {
        Property::NonNull(canonical(p))
    }

    pub fn andel(p: &MPoly) -> Self {
        Property::AnDel(canonical(p))
    }

    pub fn level(&self) -> usize {
        match self {
            Property::Sample(s) => s.len(),
            Property::OrdInv(p) | Property::SgnInv(p) => p.level(),
            Property::NonNull(p) | Property::AnDel(p) => p.level().saturating_sub(1),
            Property::AnSub(i) | Property::Connected(i) | Property::Holds(i, _) => *i,
            Property::Repr(_, s) => s.len() + 1,
            Property::IrOrd(_, s) => s.len(),
        }
    }

    /// The polynomial of an invariance, non-nullification or delineability property.
    pub fn poly(&self) -> Option<&MPoly> {
        match self {
            Property::OrdInv(p) | Property::SgnInv(p) | Property::NonNull(p) | Property::AnDel(p) => Some(p),
            _ => None,
        }
    }

    /// Sign or order invariance of a constant, which holds everywhere.
    pub fn is_trivial(&self) -> bool {
        matches!(self, Property::OrdInv(p) | Property::SgnInv(p) if p.is_constant())
    }

    pub fn tier(&self, reducible: impl Fn(&MPoly) -> bool) -> Tier {
        match self {
            Property::IrOrd(..) => Tier::IrOrd,
            Property::AnDel(_) => Tier::AnDel,
            Property::NonNull(_) => Tier::NonNull,
            Property::OrdInv(p) if reducible(p) => Tier::OrdInvReducible,
            Property::OrdInv(_) => Tier::OrdInvIrreducible,
            Property::SgnInv(p) if reducible(p) => Tier::SgnInvReducible,
            Property::SgnInv(_) => Tier::SgnInvIrreducible,
            Property::Connected(_) => Tier::Connected,
            Property::AnSub(_) => Tier::AnSub,
            Property::Sample(_) => Tier::Sample,
            Property::Repr(..) => Tier::Repr,
            Property::Holds(..) => Tier::Holds,
        }
    }
}

/// Position of a property within its level, greatest first.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Tier {
    IrOrd,
    AnDel,
    NonNull,
    OrdInvReducible,
    OrdInvIrreducible,
    SgnInvReducible,
    SgnInvIrreducible,
    Connected,
    AnSub,
    Sample,
    Repr,
    Holds,
}

/// Compare two properties: higher levels are greater, then tiers decide.
/// Distinct properties of the same level and tier are incomparable (`None`).
pub fn property_compare(a: &Property, b: &Property, reducible: impl Fn(&MPoly) -> bool) -> Option<Ordering> {
    if a == b {
        return Some(Ordering::Equal);
    }
    match a.level().cmp(&b.level()) {
        Ordering::Equal => {}
        o => return Some(o),
    }
    match a.tier(&reducible).cmp(&b.tier(&reducible)) {
        Ordering::Equal => None,
        // an earlier tier is the greater property
        o => Some(o.reverse()),
    }
}

fn write_tuple(f: &mut fmt::Formatter<'_>, s: &[RealAlg]) -> fmt::Result {
    f.write_str("(")?;
    for (k, x) in s.iter().enumerate() {
        if k > 0 {
            f.write_str(", ")?;
        }
        write!(f, "{x}")?;
    }
    f.write_str(")")
}

impl fmt::Display for Property {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Property::Sample(s) => {
                f.write_str("sample(")?;
                write_tuple(f, s)?;
                f.write_str(")")
            }
            Property::OrdInv(p) => write!(f, "ordinv(\"{p}\")"),
            Property::SgnInv(p) => write!(f, "sgninv(\"{p}\")"),
            Property::NonNull(p) => write!(f, "nonnull(\"{p}\")"),
            Property::AnDel(p) => write!(f, "del(\"{p}\")"),
            Property::AnSub(i) => write!(f, "ansub({i})"),
            Property::Connected(i) => write!(f, "connected({i})"),
            Property::Repr(iv, s) => {
                write!(f, "repr({iv}, ")?;
                write_tuple(f, s)?;
                f.write_str(")")
            }
            Property::IrOrd(o, s) => {
                write!(f, "irord({o}, ")?;
                write_tuple(f, s)?;
                f.write_str(")")
            }
            Property::Holds(i, iv) => write!(f, "holds({i}, {iv})"),
        }
    }
}

impl fmt::Debug for Property {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl FromStr for Property {
    type Err = String;
    fn from_str(s: &str) -> Result<Self, String> {
        text::parse_property(s)
    }
}

#[derive(Debug, Error, PartialEq, Eq)]
#[error("ordering is cyclic: {0} and {1} precede each other")]
pub struct CyclicOrdering(pub IndexedRoot, pub IndexedRoot);

/// A set of pairs `a <= b` between indexed roots whose reflexive-transitive
/// closure is a partial order.
#[derive(Clone, PartialEq, Eq, Default)]
pub struct RootOrdering {
    pairs: BTreeSet<(IndexedRoot, IndexedRoot)>,
}

impl RootOrdering {
    pub fn new<I: IntoIterator<Item = (IndexedRoot, IndexedRoot)>>(pairs: I) -> Result<Self, CyclicOrdering> {
        let ord = RootOrdering {
            pairs: pairs.into_iter().filter(|(a, b)| a != b).collect(),
        };
        for (a, b) in &ord.pairs {
            if ord.le(b, a) {
                return Err(CyclicOrdering(a.clone(), b.clone()));
            }
        }
        Ok(ord)
    }

    pub fn pairs(&self) -> impl Iterator<Item = &(IndexedRoot, IndexedRoot)> {
        self.pairs.iter()
    }

    pub fn len(&self) -> usize {
        self.pairs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.pairs.is_empty()
    }

    pub fn domain(&self) -> BTreeSet<&IndexedRoot> {
        self.pairs.iter().flat_map(|(a, b)| [a, b]).collect()
    }

    fn successors(&self) -> BTreeMap<&IndexedRoot, Vec<&IndexedRoot>> {
        let mut succ: BTreeMap<&IndexedRoot, Vec<&IndexedRoot>> = BTreeMap::new();
        for (a, b) in &self.pairs {
            succ.entry(a).or_default().push(b);
        }
        succ
    }

    /// `a <= b` in the reflexive-transitive closure.
    pub fn le(&self, a: &IndexedRoot, b: &IndexedRoot) -> bool {
        a == b || self.reachable_from(a).contains(b)
    }

    fn reachable_from<'a>(&'a self, a: &'a IndexedRoot) -> BTreeSet<&'a IndexedRoot> {
        let succ = self.successors();
        let mut seen = BTreeSet::new();
        let mut stack = vec![a];
        while let Some(x) = stack.pop() {
            for &y in succ.get(x).into_iter().flatten() {
                if seen.insert(y) {
                    stack.push(y);
                }
            }
        }
        seen
    }

    /// Strict pairs of the transitive closure.
    pub fn closure(&self) -> BTreeSet<(IndexedRoot, IndexedRoot)> {
        self.domain()
            .into_iter()
            .flat_map(|a| self.reachable_from(a).into_iter().map(move |b| (a.clone(), b.clone())))
            .collect()
    }

    /// Every root is defined over `s` and every pair holds there.
    pub fn matches(&self, s: &[RealAlg]) -> bool {
        let mut values = BTreeMap::new();
        for r in self.domain() {
            match r.eval(s) {
                Some(v) => values.insert(r, v),
                None => return false,
            };
        }
        self.pairs.iter().all(|(a, b)| values[a] <= values[b])
    }
}

impl fmt::Display for RootOrdering {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("[")?;
        for (k, (a, b)) in self.pairs.iter().enumerate() {
            if k > 0 {
                f.write_str(", ")?;
            }
            write!(f, "{a} <= {b}")?;
        }
        f.write_str("]")
    }
}

impl fmt::Debug for RootOrdering {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

/// Interval, equational polynomials and root ordering chosen for one level.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Representation {
    pub interval: SymbolicInterval,
    pub eq_set: BTreeSet<MPoly>,
    pub ordering: RootOrdering,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Rule {
    Del,
    NonNullDisc,
    NonNullCoeff,
    NonNullConst,
    ConstInv,
    ReducibleOrdInv,
    ReducibleSgnInv,
    OrdInvNonzero,
    OrdInvZero,
    SgnInvNoRoots,
    SgnInvEcBound,
    SgnInvEc,
    SgnInvOrd,
    SgnInvLine,
    AnSubBase,
    AnSub,
    IrOrd,
    ConnectedBase,
    ConnectedLine,
    ConnectedSector,
    ConnectedUnbounded,
    ConnectedSection,
    SampleBase,
    Sample,
    ReprSection,
    ReprSector,
}

const RULE_IDS: &[(Rule, &str)] = &[
    (Rule::Del, "del"),
    (Rule::NonNullDisc, "nonnull-disc"),
    (Rule::NonNullCoeff, "nonnull-coeff"),
    (Rule::NonNullConst, "nonnull-const"),
    (Rule::ConstInv, "const-inv"),
    (Rule::ReducibleOrdInv, "reducible-ordinv"),
    (Rule::ReducibleSgnInv, "reducible-sgninv"),
    (Rule::OrdInvNonzero, "ordinv-nonzero"),
    (Rule::OrdInvZero, "ordinv-zero"),
    (Rule::SgnInvNoRoots, "sgninv-noroots"),
    (Rule::SgnInvEcBound, "sgninv-ec-bound"),
    (Rule::SgnInvEc, "sgninv-ec"),
    (Rule::SgnInvOrd, "sgninv-ord"),
    (Rule::SgnInvLine, "sgninv-line"),
    (Rule::AnSubBase, "ansub-base"),
    (Rule::AnSub, "ansub"),
    (Rule::IrOrd, "irord"),
    (Rule::ConnectedBase, "connected-base"),
    (Rule::ConnectedLine, "connected-line"),
    (Rule::ConnectedSector, "connected-sector"),
    (Rule::ConnectedUnbounded, "connected-unbounded"),
    (Rule::ConnectedSection, "connected-section"),
    (Rule::SampleBase, "sample-base"),
    (Rule::Sample, "sample"),
    (Rule::ReprSection, "repr-section"),
    (Rule::ReprSector, "repr-sector"),
];

impl Rule {
    pub fn id(self) -> &'static str {
        RULE_IDS.iter().find(|(r, _)| *r == self).map(|(_, id)| *id).expect("every rule has an id")
    }
}

impl fmt::Display for Rule {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.id())
    }
}

impl FromStr for Rule {
    type Err = String;
    fn from_str(s: &str) -> Result<Self, String> {
        RULE_IDS
            .iter()
            .find(|(_, id)| *id == s)
            .map(|(r, _)| *r)
            .ok_or_else(|| format!("unknown rule '{s}'"))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poly::parse_poly;

    fn root(src: &str, j: usize) -> IndexedRoot {
        IndexedRoot::new(parse_poly(src).unwrap(), j)
    }

    #[test]
    fn tiers_and_levels_order_properties() {
        let p = parse_poly("x2 - x1").unwrap();
        let q = parse_poly("x2^2 + x1").unwrap();
        let irr = |_: &MPoly| false;
        assert_eq!(
            property_compare(&Property::andel(&parse_poly("x3 - x1").unwrap()), &Property::sgninv(&q), irr),
            Some(Ordering::Greater)
        );
        assert_eq!(
            property_compare(&Property::sgninv(&parse_poly("x1").unwrap()), &Property::Sample(vec![RealAlg::int(0); 2]), irr),
            Some(Ordering::Less)
        );
        assert_eq!(property_compare(&Property::Connected(2), &Property::Connected(2), irr), Some(Ordering::Equal));
        assert_eq!(property_compare(&Property::sgninv(&p), &Property::sgninv(&q), irr), None);
    }

    #[test]
    fn orderings_reject_cycles() {
        let (a, b, c) = (root("x1", 1), root("x1 - 1", 1), root("x1 - 2", 1));
        let ord = RootOrdering::new([(a.clone(), b.clone()), (b.clone(), c.clone())]).unwrap();
        assert!(ord.le(&a, &c) && !ord.le(&c, &a) && ord.le(&b, &b));
        assert_eq!(ord.closure().len(), 3);
        assert!(ord.matches(&[]));
        assert!(RootOrdering::new([(a.clone(), b.clone()), (b, a)]).is_err());
        let wrong = RootOrdering::new([(c, root("x1", 1))]).unwrap();
        assert!(!wrong.matches(&[]));
    }

    #[test]
    fn rule_ids_roundtrip() {
        for (rule, id) in RULE_IDS {
            assert_eq!(id.parse::<Rule>().unwrap(), *rule);
        }
    }
}
