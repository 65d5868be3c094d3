//! The working set of properties still to be established, and the
//! rule-application step that replaces one property by its antecedents.

use std::collections::{BTreeMap, BTreeSet};

use thiserror::Error;

use super::trace::TraceEntry;
use super::{rule_choices, Choice, Context, DerivationTrace, Origin, Property, Representation, Rule, Tier};
use crate::poly::MPoly;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum ProofError {
    #[error("no rule derives {0}")]
    NoRule(String),
}

/// Properties keyed by their text, plus the derivations performed so far.
#[derive(Default)]
pub struct PropertySet {
    props: BTreeMap<String, Property>,
    /// Entries in the order rules were applied (consumers first).
    log: Vec<TraceEntry>,
    logged_trivial: BTreeSet<String>,
    introduced: BTreeMap<Origin, BTreeSet<MPoly>>,
}

impl PropertySet {
    pub fn new() -> Self {
        PropertySet::default()
    }

    /// Add `q`; invariance of constants is discharged on the spot.
    pub fn insert(&mut self, q: Property) {
        if q.is_trivial() {
            let key = q.to_string();
            if self.logged_trivial.insert(key) {
                self.log.push(TraceEntry { conclusion: q, antecedents: Vec::new(), rule: Rule::ConstInv });
            }
            return;
        }
        self.props.entry(q.to_string()).or_insert(q);
    }

    pub fn contains(&self, q: &Property) -> bool {
        q.is_trivial() || self.props.contains_key(&q.to_string())
    }

    pub fn len(&self) -> usize {
        self.props.len()
    }

    pub fn is_empty(&self) -> bool {
        self.props.is_empty()
    }

    pub fn iter(&self) -> impl Iterator<Item = &Property> {
        self.props.values()
    }

    pub fn at_level(&self, level: usize) -> impl Iterator<Item = &Property> {
        self.props.values().filter(move |q| q.level() == level)
    }

    /// The greatest property of `level`, ties broken by text.
    pub fn greatest(&self, level: usize, ctx: &Context) -> Option<(Tier, Property)> {
        self.at_level(level)
            .map(|q| (q.tier(|p| ctx.is_reducible(p)), q))
            .min_by(|a, b| a.0.cmp(&b.0))
            .map(|(t, q)| (t, q.clone()))
    }

    /// Remove `q` without deriving it (it is kept as an assumption).
    pub fn take(&mut self, q: &Property) -> Option<Property> {
        self.props.remove(&q.to_string())
    }

    /// Replace `q` by the antecedents of the cheapest applicable rule.
    pub fn apply_pre(&mut self, q: &Property, ctx: &Context, repr: Option<&Representation>) -> Result<(), ProofError> {
        let choices = rule_choices(q, ctx, repr);
        let Some(choice) = choices.into_iter().min_by_key(|c| self.cost(c)) else {
            return Err(ProofError::NoRule(q.to_string()));
        };
        self.props.remove(&q.to_string());
        for (origin, p) in &choice.introduced {
            self.introduced.entry(*origin).or_default().insert(p.clone());
        }
        self.log.push(TraceEntry {
            conclusion: q.clone(),
            antecedents: choice.antecedents.clone(),
            rule: choice.rule,
        });
        for a in choice.antecedents {
            self.insert(a);
        }
        Ok(())
    }

    /// Selection key: reuse first, then no new polynomials, then
    /// coefficients before discriminants and resultants, then degree.
    fn cost(&self, c: &Choice) -> (u8, u32, String) {
        let fresh: Vec<&Property> = c.antecedents.iter().filter(|a| !self.contains(a)).collect();
        let fresh_polys: Vec<&MPoly> = fresh
            .iter()
            .filter(|a| matches!(a, Property::OrdInv(_) | Property::SgnInv(_)))
            .filter_map(|a| a.poly())
            .collect();
        let class = if fresh.is_empty() {
            0
        } else if fresh_polys.is_empty() {
            1
        } else if c.rule == Rule::NonNullCoeff {
            2
        } else {
            3
        };
        let degree = fresh_polys.iter().map(|p| p.total_degree()).max().unwrap_or(0);
        let text = c.antecedents.iter().map(ToString::to_string).collect::<Vec<_>>().join("; ");
        (class, degree, text)
    }

    /// Distinct nonconstant projection polynomials computed, per origin.
    pub fn introduced(&self, origin: Origin) -> usize {
        self.introduced.get(&origin).map_or(0, BTreeSet::len)
    }

    pub fn introduced_polys(&self, origin: Origin) -> impl Iterator<Item = &MPoly> {
        self.introduced.get(&origin).into_iter().flatten()
    }

    /// The derivations so far, antecedents before their consumers, with the
    /// given axioms. Constant facts are shared by many consumers, so they
    /// go first.
    pub fn trace(&self, axioms: Vec<Property>) -> DerivationTrace {
        let (consts, derived): (Vec<_>, Vec<_>) = self.log.iter().partition(|e| e.rule == Rule::ConstInv);
        DerivationTrace {
            axioms,
            entries: consts.into_iter().chain(derived.into_iter().rev()).cloned().collect(),
        }
    }
}
