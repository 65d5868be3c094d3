//! The inference rules, read backwards: which antecedent sets establish a
//! given property at the current sample.

use std::collections::BTreeSet;

use super::{canonical, Context, Property, Representation, Rule};
use crate::cells::{IndexedRoot, SymbolicInterval};
use crate::poly::{discriminant, resultant, MPoly, Var};
use crate::realalg::RealAlg;

/// Where a projection polynomial came from, for statistics.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Origin {
    Resultant,
    Discriminant,
    Coefficient,
}

/// One way to derive a property.
#[derive(Clone, Debug)]
pub struct Choice {
    pub rule: Rule,
    pub antecedents: Vec<Property>,
    /// Nonconstant projection polynomials this choice computes.
    pub introduced: Vec<(Origin, MPoly)>,
}

impl Choice {
    fn new(rule: Rule, antecedents: Vec<Property>) -> Self {
        let mut seen = BTreeSet::new();
        let antecedents = antecedents.into_iter().filter(|a| seen.insert(a.to_string())).collect();
        Choice { rule, antecedents, introduced: Vec::new() }
    }

    fn from_true(rule: Rule) -> Self {
        Choice::new(rule, Vec::new())
    }

    fn noting(mut self, origin: Origin, p: &MPoly) -> Self {
        if !p.is_constant() {
            self.introduced.push((origin, canonical(p)));
        }
        self
    }
}

/// The antecedent sets that derive `q`; empty when no rule applies.
/// Properties of a level being represented need that level's `repr`.
pub fn rule_choices(q: &Property, ctx: &Context, repr: Option<&Representation>) -> Vec<Choice> {
    match q {
        _ if q.is_trivial() => vec![Choice::from_true(Rule::ConstInv)],
        Property::OrdInv(p) if ctx.is_reducible(p) => vec![Choice::new(
            Rule::ReducibleOrdInv,
            ctx.factors(p).iter().map(Property::ordinv).collect(),
        )],
        Property::SgnInv(p) if ctx.is_reducible(p) => vec![Choice::new(
            Rule::ReducibleSgnInv,
            ctx.factors(p).iter().map(Property::sgninv).collect(),
        )],
        Property::OrdInv(p) => vec![ordinv(p, ctx)],
        Property::SgnInv(p) => repr.map(|r| sgninv(p, ctx, r)).unwrap_or_default(),
        Property::NonNull(p) => nonnull(p, ctx),
        Property::AnDel(p) => vec![delineable(p)],
        Property::AnSub(0) => vec![Choice::from_true(Rule::AnSubBase)],
        Property::AnSub(i) => match repr {
            Some(r) => vec![Choice::new(
                Rule::AnSub,
                vec![Property::Repr(r.interval.clone(), ctx.prefix(i - 1)), Property::AnSub(i - 1)],
            )],
            None => Vec::new(),
        },
        Property::Connected(0) => vec![Choice::from_true(Rule::ConnectedBase)],
        Property::Connected(1) => vec![Choice::from_true(Rule::ConnectedLine)],
        Property::Connected(i) => repr.and_then(|r| connected(*i, ctx, r)).into_iter().collect(),
        Property::Sample(t) if t.is_empty() => vec![Choice::from_true(Rule::SampleBase)],
        Property::Sample(t) => match repr {
            Some(r) => {
                let below = t[..t.len() - 1].to_vec();
                vec![Choice::new(
                    Rule::Sample,
                    vec![Property::Sample(below.clone()), Property::Repr(r.interval.clone(), below)],
                )]
            }
            None => Vec::new(),
        },
        Property::Repr(iv, t) => vec![representation(iv, t)],
        Property::IrOrd(ord, t) => {
            let i = t.len();
            let mut ants = vec![Property::Sample(t.clone()), Property::AnSub(i), Property::Connected(i)];
            let dom = ord.domain();
            ants.extend(dom.iter().map(|r| Property::andel(&r.poly)));
            let mut resultants = Vec::new();
            let mut done = BTreeSet::new();
            for (a, b) in ord.pairs() {
                // same-polynomial pairs are covered by delineability
                let key = if a.poly <= b.poly { (&a.poly, &b.poly) } else { (&b.poly, &a.poly) };
                if a.poly != b.poly && done.insert(key) {
                    let r = resultant(key.0, key.1, Var(i + 1));
                    ants.push(Property::ordinv(&r));
                    resultants.push(r);
                }
            }
            let mut choice = Choice::new(Rule::IrOrd, ants);
            for r in &resultants {
                choice = choice.noting(Origin::Resultant, r);
            }
            vec![choice]
        }
        Property::Holds(..) => Vec::new(),
    }
}

fn ordinv(p: &MPoly, ctx: &Context) -> Choice {
    let i = p.level();
    let sample = Property::Sample(ctx.prefix(i));
    if ctx.sign(p) != 0 {
        Choice::new(Rule::OrdInvNonzero, vec![sample, Property::SgnInv(p.clone())])
    } else {
        Choice::new(
            Rule::OrdInvZero,
            vec![
                sample,
                Property::AnSub(i - 1),
                Property::Connected(i),
                Property::SgnInv(p.clone()),
                Property::AnDel(p.clone()),
            ],
        )
    }
}

fn delineable(p: &MPoly) -> Choice {
    let i = p.level() - 1;
    let v = Var(i + 1);
    let disc = discriminant(p, v);
    let lc = p.leading_coeff_in(v);
    Choice::new(
        Rule::Del,
        vec![
            Property::AnSub(i),
            Property::Connected(i),
            Property::NonNull(p.clone()),
            Property::ordinv(&disc),
            Property::sgninv(&lc),
        ],
    )
    .noting(Origin::Discriminant, &disc)
    .noting(Origin::Coefficient, &lc)
}

fn nonnull(p: &MPoly, ctx: &Context) -> Vec<Choice> {
    let i = p.level() - 1;
    let v = Var(i + 1);
    let coeffs = p.coeffs_in(v);
    if coeffs.iter().any(|c| c.is_constant() && !c.is_zero()) {
        return vec![Choice::from_true(Rule::NonNullConst)];
    }
    let sample = Property::Sample(ctx.prefix(i));
    let mut out: Vec<Choice> = coeffs
        .iter()
        .filter(|c| !c.is_zero() && ctx.sign(c) != 0)
        .map(|c| {
            Choice::new(Rule::NonNullCoeff, vec![sample.clone(), Property::sgninv(c)]).noting(Origin::Coefficient, c)
        })
        .collect();
    if p.degree_in(v) > 1 {
        let disc = discriminant(p, v);
        if !disc.is_zero() && ctx.sign(&disc) != 0 {
            out.push(
                Choice::new(Rule::NonNullDisc, vec![sample, Property::sgninv(&disc)])
                    .noting(Origin::Discriminant, &disc),
            );
        }
    }
    out
}

fn sgninv(p: &MPoly, ctx: &Context, r: &Representation) -> Vec<Choice> {
    let i = p.level();
    if i == 1 {
        return vec![Choice::new(Rule::SgnInvLine, vec![Property::Repr(r.interval.clone(), Vec::new())])];
    }
    let below = ctx.prefix(i - 1);
    let roots = ctx.roots(p);
    if r.eq_set.contains(p) || roots.is_none() {
        return match &r.interval {
            SymbolicInterval::Section(b) => vec![equational(p, b, r, below)],
            SymbolicInterval::Sector { .. } => Vec::new(),
        };
    }
    let roots = roots.unwrap_or_default();
    if roots.is_empty() {
        return vec![Choice::new(Rule::SgnInvNoRoots, vec![Property::Sample(below), Property::AnDel(p.clone())])];
    }
    let (l, u) = r.interval.bounds();
    let outside = (1..=roots.len()).all(|j| {
        let xi = IndexedRoot::new(p.clone(), j);
        l.is_some_and(|l| r.ordering.le(&xi, l)) || u.is_some_and(|u| r.ordering.le(u, &xi))
    });
    if !outside {
        return Vec::new();
    }
    vec![Choice::new(
        Rule::SgnInvOrd,
        vec![
            Property::Sample(ctx.prefix(i)),
            Property::Repr(r.interval.clone(), below.clone()),
            Property::IrOrd(r.ordering.clone(), below),
            Property::AnDel(p.clone()),
            Property::AnSub(i - 1),
            Property::Connected(i - 1),
        ],
    )]
}

fn equational(p: &MPoly, b: &IndexedRoot, r: &Representation, below: Vec<RealAlg>) -> Choice {
    let i = p.level();
    let mut ants = vec![
        Property::AnSub(i - 1),
        Property::Connected(i - 1),
        Property::Repr(r.interval.clone(), below),
        Property::AnDel(b.poly.clone()),
    ];
    if b.poly == *p {
        return Choice::new(Rule::SgnInvEcBound, ants);
    }
    let res = resultant(&b.poly, p, Var(i));
    ants.push(Property::ordinv(&res));
    Choice::new(Rule::SgnInvEc, ants).noting(Origin::Resultant, &res)
}

fn connected(i: usize, ctx: &Context, r: &Representation) -> Option<Choice> {
    let below = ctx.prefix(i - 1);
    let base = vec![Property::Connected(i - 1), Property::Repr(r.interval.clone(), below.clone())];
    Some(match &r.interval {
        SymbolicInterval::Section(_) => Choice::new(Rule::ConnectedSection, base),
        SymbolicInterval::Sector { lower: Some(l), upper: Some(u) } => {
            if !r.ordering.le(l, u) {
                return None;
            }
            let mut ants = base;
            ants.push(Property::IrOrd(r.ordering.clone(), below));
            Choice::new(Rule::ConnectedSector, ants)
        }
        SymbolicInterval::Sector { .. } => Choice::new(Rule::ConnectedUnbounded, base),
    })
}

fn representation(iv: &SymbolicInterval, t: &[RealAlg]) -> Choice {
    let mut ants = vec![Property::Sample(t.to_vec()), Property::Holds(t.len() + 1, iv.clone())];
    ants.extend(iv.roots().into_iter().map(|b| Property::andel(&b.poly)));
    let rule = if iv.is_section() { Rule::ReprSection } else { Rule::ReprSector };
    Choice::new(rule, ants)
}
