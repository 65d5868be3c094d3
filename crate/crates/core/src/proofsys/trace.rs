//! Derivation traces: text format and an independent checker that replays
//! every rule's side conditions.

use std::collections::BTreeSet;
use std::fmt;
use std::str::FromStr;

use thiserror::Error;

use super::{canonical, Property, RootOrdering, Rule};
use crate::cells::{IndexedRoot, Span, SymbolicInterval};
use crate::poly::factor::is_irreducible;
use crate::poly::{discriminant, is_squarefree, resultant, FactorMode, MPoly, Var};
use crate::realalg::{roots_in_extension, sign_at, RealAlg};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TraceEntry {
    pub conclusion: Property,
    pub antecedents: Vec<Property>,
    pub rule: Rule,
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct DerivationTrace {
    pub axioms: Vec<Property>,
    /// Antecedents are derived before the entries that use them.
    pub entries: Vec<TraceEntry>,
}

impl DerivationTrace {
    pub fn conclusions(&self) -> impl Iterator<Item = &Property> {
        self.entries.iter().map(|e| &e.conclusion)
    }

    /// The entry deriving `q`, if any.
    pub fn derivation_of(&self, q: &Property) -> Option<&TraceEntry> {
        self.entries.iter().find(|e| e.conclusion == *q)
    }
}

impl fmt::Display for TraceEntry {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "DERIVE {} FROM ", self.conclusion)?;
        if self.antecedents.is_empty() {
            f.write_str("true")?;
        }
        for (k, a) in self.antecedents.iter().enumerate() {
            if k > 0 {
                f.write_str("; ")?;
            }
            write!(f, "{a}")?;
        }
        write!(f, " VIA {}", self.rule)
    }
}

impl fmt::Display for DerivationTrace {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for a in &self.axioms {
            writeln!(f, "AXIOM {a}")?;
        }
        for e in &self.entries {
            writeln!(f, "{e}")?;
        }
        Ok(())
    }
}

#[derive(Debug, Error, PartialEq, Eq)]
#[error("line {line}: {message}")]
pub struct TraceParseError {
    pub line: usize,
    pub message: String,
}

impl FromStr for DerivationTrace {
    type Err = TraceParseError;
    fn from_str(src: &str) -> Result<Self, Self::Err> {
        let mut trace = DerivationTrace::default();
        for (no, line) in src.lines().enumerate() {
            let err = |message: String| TraceParseError { line: no + 1, message };
            let line = line.trim();
            if line.is_empty() {
                continue;
            }
            if let Some(rest) = line.strip_prefix("AXIOM ") {
                trace.axioms.push(rest.parse().map_err(err)?);
                continue;
            }
            let body = line.strip_prefix("DERIVE ").ok_or_else(|| err("expected AXIOM or DERIVE".into()))?;
            let (head, rule) = body.rsplit_once(" VIA ").ok_or_else(|| err("missing VIA".into()))?;
            let (concl, ants) = head.split_once(" FROM ").ok_or_else(|| err("missing FROM".into()))?;
            let antecedents = match ants.trim() {
                "true" => Vec::new(),
                list => list.split("; ").map(str::parse).collect::<Result<_, _>>().map_err(err)?,
            };
            trace.entries.push(TraceEntry {
                conclusion: concl.parse().map_err(err)?,
                antecedents,
                rule: rule.trim().parse().map_err(err)?,
            });
        }
        Ok(trace)
    }
}

#[derive(Debug, Error, PartialEq, Eq)]
#[error("entry {entry} ({conclusion}): {message}")]
pub struct InvalidTrace {
    pub entry: usize,
    pub conclusion: String,
    pub message: String,
}

/// Check that every antecedent is an axiom or an earlier conclusion, that
/// axioms are interval assumptions, and that every rule instance is sound.
pub fn check_trace(trace: &DerivationTrace, axioms: &[Property], mode: FactorMode) -> Result<(), InvalidTrace> {
    let mut known: BTreeSet<String> = BTreeSet::new();
    for a in axioms {
        if !matches!(a, Property::Holds(..)) {
            return Err(InvalidTrace { entry: 0, conclusion: a.to_string(), message: "axioms must be holds(..)".into() });
        }
        known.insert(a.to_string());
    }
    for (k, e) in trace.entries.iter().enumerate() {
        let fail = |message: String| InvalidTrace { entry: k + 1, conclusion: e.conclusion.to_string(), message };
        for a in &e.antecedents {
            if !known.contains(&a.to_string()) {
                return Err(fail(format!("antecedent {a} is neither an axiom nor derived earlier")));
            }
        }
        check_entry(e, mode).map_err(fail)?;
        known.insert(e.conclusion.to_string());
    }
    Ok(())
}

pub fn validate_trace(trace: &DerivationTrace, axioms: &[Property], mode: FactorMode) -> bool {
    check_trace(trace, axioms, mode).is_ok()
}

type Check = Result<(), String>;

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Check {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

struct Ants<'a>(&'a [Property]);

impl Ants<'_> {
    fn need(&self, q: &Property) -> Check {
        ensure(q.is_trivial() || self.0.contains(q), || format!("missing antecedent {q}"))
    }

    fn sample(&self, len: usize) -> Result<&[RealAlg], String> {
        self.0
            .iter()
            .find_map(|a| match a {
                Property::Sample(t) if t.len() == len => Some(t.as_slice()),
                _ => None,
            })
            .ok_or_else(|| format!("missing sample of length {len}"))
    }

    fn repr(&self, len: usize) -> Result<(&SymbolicInterval, &[RealAlg]), String> {
        self.0
            .iter()
            .find_map(|a| match a {
                Property::Repr(iv, t) if t.len() == len => Some((iv, t.as_slice())),
                _ => None,
            })
            .ok_or_else(|| format!("missing representation over a sample of length {len}"))
    }

    fn irord(&self, t: &[RealAlg]) -> Result<&RootOrdering, String> {
        self.0
            .iter()
            .find_map(|a| match a {
                Property::IrOrd(o, u) if u.as_slice() == t => Some(o),
                _ => None,
            })
            .ok_or_else(|| "missing root ordering".to_string())
    }

    fn polys(&self) -> Vec<&MPoly> {
        self.0.iter().filter_map(Property::poly).collect()
    }
}

fn basis_element(p: &MPoly, mode: FactorMode) -> Check {
    let ok = match mode {
        FactorMode::Finest => is_irreducible(p),
        FactorMode::Squarefree => !p.is_constant() && is_squarefree(p),
    };
    ensure(ok, || format!("{p} is not a basis polynomial"))
}

fn roots_of(p: &MPoly, t: &[RealAlg]) -> Result<Vec<RealAlg>, String> {
    roots_in_extension(p, t).ok_or_else(|| format!("{p} is nullified over the sample"))
}

fn check_entry(e: &TraceEntry, mode: FactorMode) -> Check {
    let ants = Ants(&e.antecedents);
    let q = &e.conclusion;
    let wrong = || Err(format!("rule {} does not conclude {q}", e.rule));
    match (e.rule, q) {
        (Rule::ConstInv, _) => ensure(q.is_trivial(), || "not a constant".into()),
        (Rule::SampleBase, Property::Sample(t)) => ensure(t.is_empty(), || "nonempty sample".into()),
        (Rule::AnSubBase, Property::AnSub(0)) | (Rule::ConnectedBase, Property::Connected(0)) => Ok(()),
        (Rule::ConnectedLine, Property::Connected(1)) => Ok(()),
        (Rule::NonNullConst, Property::NonNull(p)) => ensure(
            p.coeffs_in(Var(p.level())).iter().any(|c| c.is_constant() && !c.is_zero()),
            || "no constant coefficient".into(),
        ),
        (Rule::NonNullCoeff, Property::NonNull(p)) => {
            let t = ants.sample(p.level() - 1)?;
            let ok = p
                .coeffs_in(Var(p.level()))
                .iter()
                .any(|c| !c.is_zero() && ants.0.contains(&Property::sgninv(c)) && sign_at(c, &t[..c.level()]) != 0);
            ensure(ok, || "no coefficient nonzero at the sample with invariant sign".into())
        }
        (Rule::NonNullDisc, Property::NonNull(p)) => {
            basis_element(p, mode)?;
            let v = Var(p.level());
            ensure(p.degree_in(v) > 1, || "degree must exceed one".into())?;
            let t = ants.sample(p.level() - 1)?;
            let d = discriminant(p, v);
            ants.need(&Property::sgninv(&d))?;
            ensure(sign_at(&d, &t[..d.level()]) != 0, || "discriminant vanishes at the sample".into())
        }
        (Rule::ReducibleOrdInv, Property::OrdInv(p)) | (Rule::ReducibleSgnInv, Property::SgnInv(p)) => {
            let parts = ants.polys();
            ensure(parts.len() == ants.0.len(), || "antecedents must be invariance properties".into())?;
            let mut rest = p.clone();
            for f in parts {
                ensure(!f.is_constant(), || "constant factor".into())?;
                let mut divided = false;
                while let Some(r) = rest.exact_div(f) {
                    rest = r;
                    divided = true;
                }
                ensure(divided, || format!("{f} does not divide {p}"))?;
            }
            ensure(rest.is_constant(), || "factors do not exhaust the polynomial".into())
        }
        (Rule::OrdInvNonzero | Rule::OrdInvZero, Property::OrdInv(p)) => {
            basis_element(p, mode)?;
            let i = p.level();
            let t = ants.sample(i)?;
            ants.need(&Property::SgnInv(p.clone()))?;
            let zero = sign_at(p, t) == 0;
            if e.rule == Rule::OrdInvNonzero {
                ensure(!zero, || "polynomial vanishes at the sample".into())
            } else {
                ensure(zero, || "polynomial does not vanish at the sample".into())?;
                ants.need(&Property::AnSub(i - 1))?;
                ants.need(&Property::Connected(i))?;
                ants.need(&Property::AnDel(p.clone()))
            }
        }
        (Rule::Del, Property::AnDel(p)) => {
            basis_element(p, mode)?;
            let i = p.level() - 1;
            let v = Var(i + 1);
            ants.need(&Property::AnSub(i))?;
            ants.need(&Property::Connected(i))?;
            ants.need(&Property::NonNull(p.clone()))?;
            ants.need(&Property::ordinv(&discriminant(p, v)))?;
            ants.need(&Property::sgninv(&p.leading_coeff_in(v)))
        }
        (Rule::SgnInvNoRoots, Property::SgnInv(p)) => {
            basis_element(p, mode)?;
            let t = ants.sample(p.level() - 1)?;
            ants.need(&Property::AnDel(p.clone()))?;
            ensure(roots_of(p, t)?.is_empty(), || "polynomial has roots over the sample".into())
        }
        (Rule::SgnInvEcBound | Rule::SgnInvEc, Property::SgnInv(p)) => {
            basis_element(p, mode)?;
            let i = p.level();
            let (iv, _) = ants.repr(i - 1)?;
            let SymbolicInterval::Section(b) = iv else {
                return Err("equational rule needs a section".into());
            };
            ants.need(&Property::AnSub(i - 1))?;
            ants.need(&Property::Connected(i - 1))?;
            ants.need(&Property::AnDel(b.poly.clone()))?;
            if e.rule == Rule::SgnInvEcBound {
                ensure(b.poly == *p, || "section is not defined by this polynomial".into())
            } else {
                ensure(b.poly != *p, || "use the bound rule".into())?;
                ants.need(&Property::ordinv(&resultant(&b.poly, p, Var(i))))
            }
        }
        (Rule::SgnInvOrd, Property::SgnInv(p)) => {
            basis_element(p, mode)?;
            let i = p.level();
            let s = ants.sample(i)?;
            let (iv, t) = ants.repr(i - 1)?;
            ensure(&s[..i - 1] == t, || "samples disagree".into())?;
            let ord = ants.irord(t)?;
            ants.need(&Property::AnDel(p.clone()))?;
            ants.need(&Property::AnSub(i - 1))?;
            ants.need(&Property::Connected(i - 1))?;
            ensure(ord.matches(t), || "ordering does not match the sample".into())?;
            for r in ord.domain() {
                basis_element(&r.poly, mode)?;
            }
            let n = roots_of(p, t)?.len();
            ensure(n > 0, || "polynomial has no roots".into())?;
            let (l, u) = iv.bounds();
            for j in 1..=n {
                let xi = IndexedRoot::new(p.clone(), j);
                let ok = l.is_some_and(|l| ord.le(&xi, l)) || u.is_some_and(|u| ord.le(u, &xi));
                ensure(ok, || format!("{xi} is not ordered outside the interval"))?;
            }
            Ok(())
        }
        (Rule::SgnInvLine, Property::SgnInv(p)) => {
            ensure(p.level() == 1, || "only for the first level".into())?;
            let (iv, _) = ants.repr(0)?;
            let Some(Span::Sector(lo, hi)) = iv.span(&[]) else {
                // a point is trivially sign-invariant
                return Ok(());
            };
            let inside = roots_of(p, &[])?.into_iter().any(|r| {
                lo.as_ref().is_none_or(|l| *l < r) && hi.as_ref().is_none_or(|h| r < *h)
            });
            ensure(!inside, || "polynomial has a root inside the interval".into())
        }
        (Rule::AnSub, Property::AnSub(i)) => {
            ants.repr(i - 1)?;
            ants.need(&Property::AnSub(i - 1))
        }
        (Rule::ConnectedSection | Rule::ConnectedUnbounded | Rule::ConnectedSector, Property::Connected(i)) => {
            ants.need(&Property::Connected(i - 1))?;
            let (iv, t) = ants.repr(i - 1)?;
            match (e.rule, iv) {
                (Rule::ConnectedSection, SymbolicInterval::Section(_)) => Ok(()),
                (Rule::ConnectedUnbounded, SymbolicInterval::Sector { lower, upper }) => {
                    ensure(lower.is_none() || upper.is_none(), || "sector is bounded".into())
                }
                (Rule::ConnectedSector, SymbolicInterval::Sector { lower: Some(l), upper: Some(u) }) => {
                    let ord = ants.irord(t)?;
                    ensure(ord.matches(t), || "ordering does not match the sample".into())?;
                    ensure(ord.le(l, u), || "bounds are not ordered".into())
                }
                _ => Err("interval kind does not fit the rule".into()),
            }
        }
        (Rule::Sample, Property::Sample(s)) if !s.is_empty() => {
            let i = s.len();
            let t = ants.sample(i - 1)?;
            let (iv, u) = ants.repr(i - 1)?;
            ensure(t == &s[..i - 1] && u == t, || "samples disagree".into())?;
            ensure(iv.contains(t, &s[i - 1]) == Some(true), || "sample lies outside the interval".into())
        }
        (Rule::ReprSection | Rule::ReprSector, Property::Repr(iv, t)) => {
            ensure(iv.is_section() == (e.rule == Rule::ReprSection), || "interval kind does not fit the rule".into())?;
            ants.need(&Property::Sample(t.clone()))?;
            ants.need(&Property::Holds(t.len() + 1, iv.clone()))?;
            for b in iv.roots() {
                ensure(b.level() == t.len() + 1, || "bound has the wrong level".into())?;
                ants.need(&Property::andel(&b.poly))?;
            }
            ensure(iv.span(t).is_some(), || "bound undefined over the sample".into())
        }
        (Rule::IrOrd, Property::IrOrd(ord, t)) => {
            let i = t.len();
            ants.need(&Property::Sample(t.clone()))?;
            ants.need(&Property::AnSub(i))?;
            ants.need(&Property::Connected(i))?;
            ensure(ord.matches(t), || "ordering does not match the sample".into())?;
            for r in ord.domain() {
                ensure(r.level() == i + 1, || "root has the wrong level".into())?;
                basis_element(&r.poly, mode)?;
                ants.need(&Property::andel(&r.poly))?;
            }
            for (a, b) in ord.pairs() {
                if a.poly != b.poly {
                    ants.need(&Property::OrdInv(canonical(&resultant(&a.poly, &b.poly, Var(i + 1)))))?;
                }
            }
            Ok(())
        }
        _ => wrong(),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poly::parse_poly;

    #[test]
    fn empty_trace_is_valid() {
        assert!(validate_trace(&DerivationTrace::default(), &[], FactorMode::Finest));
    }

    #[test]
    fn dangling_antecedents_are_rejected() {
        let p = parse_poly("x1^2 + 1").unwrap();
        let trace = DerivationTrace {
            axioms: Vec::new(),
            entries: vec![TraceEntry {
                conclusion: Property::SgnInv(p.clone()),
                antecedents: vec![Property::Repr(SymbolicInterval::full(), Vec::new())],
                rule: Rule::SgnInvLine,
            }],
        };
        let err = check_trace(&trace, &[], FactorMode::Finest).unwrap_err();
        assert_eq!(err.entry, 1);
        assert!(!validate_trace(&trace, &[], FactorMode::Finest));
    }

    #[test]
    fn side_conditions_are_rechecked() {
        // x1^2 - 1 has roots inside the full line
        let p = parse_poly("x1^2 - 1").unwrap();
        let full = SymbolicInterval::full();
        let holds = Property::Holds(1, full.clone());
        let trace = DerivationTrace {
            axioms: vec![holds.clone()],
            entries: vec![
                TraceEntry { conclusion: Property::Sample(Vec::new()), antecedents: Vec::new(), rule: Rule::SampleBase },
                TraceEntry {
                    conclusion: Property::Repr(full.clone(), Vec::new()),
                    antecedents: vec![Property::Sample(Vec::new()), holds.clone()],
                    rule: Rule::ReprSector,
                },
                TraceEntry {
                    conclusion: Property::SgnInv(p),
                    antecedents: vec![Property::Repr(full, Vec::new())],
                    rule: Rule::SgnInvLine,
                },
            ],
        };
        let err = check_trace(&trace, &[holds.clone()], FactorMode::Finest).unwrap_err();
        assert_eq!(err.entry, 3);
        let text = trace.to_string();
        assert_eq!(text.parse::<DerivationTrace>().unwrap(), trace);
    }
}
