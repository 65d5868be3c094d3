//! Choice of the symbolic interval and of the indexed root ordering.

use std::cmp::{Ordering, Reverse};
use std::collections::{BTreeMap, BTreeSet};

use thiserror::Error;

use super::Heuristic;
use crate::cells::{IndexedRoot, RootValue, SymbolicInterval};
use crate::poly::MPoly;
use crate::proofsys::{Representation, RootOrdering};
use crate::realalg::RealAlg;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum RepresentationError {
    #[error("the equational heuristic needs a section")]
    EqInSector,
    #[error("invalid representation: {0}")]
    Invalid(String),
}

fn degree(r: &IndexedRoot) -> u32 {
    r.poly.main_degree()
}

/// Section on a root through `si` if there is one, otherwise the sector
/// between the closest roots; ties go to the lowest main degree.
pub fn lowest_degree_interval(xi: &[RootValue], si: &RealAlg) -> SymbolicInterval {
    let lo = xi.iter().filter(|r| r.value <= *si).map(|r| &r.value).max();
    let up = xi.iter().filter(|r| r.value >= *si).map(|r| &r.value).min();
    let pick = |v: &RealAlg| {
        xi.iter()
            .filter(|r| r.value == *v)
            .min_by(|a, b| (degree(&a.root), &a.root).cmp(&(degree(&b.root), &b.root)))
            .map(|r| r.root.clone())
            .expect("value taken from the list")
    };
    match (lo, up) {
        (Some(l), Some(u)) if l == u => SymbolicInterval::Section(pick(l)),
        (l, u) => SymbolicInterval::sector(l.map(pick), u.map(pick)),
    }
}

/// The roots closest to the sample per polynomial, sorted by value; among
/// equal values the lower boundary comes last and the upper boundary first.
/// Roots through the sample count as lower in the section case.
struct Reduced<'a> {
    roots: Vec<&'a RootValue>,
    /// Number of roots on the lower side.
    lower: usize,
}

fn is_lower(rv: &RootValue, si: &RealAlg, section: bool) -> bool {
    match rv.value.cmp(si) {
        Ordering::Less => true,
        Ordering::Equal => section,
        Ordering::Greater => false,
    }
}

fn reduce<'a>(xi: &'a [RootValue], iv: &SymbolicInterval, si: &RealAlg, skip: &BTreeSet<MPoly>) -> Reduced<'a> {
    let section = iv.is_section();
    let (l, u) = iv.bounds();
    let mut closest: BTreeMap<(&MPoly, bool), &RootValue> = BTreeMap::new();
    for rv in xi.iter().filter(|rv| !skip.contains(&rv.root.poly)) {
        let low = is_lower(rv, si, section);
        closest
            .entry((&rv.root.poly, low))
            .and_modify(|cur| {
                let better = if low { rv.value > cur.value } else { rv.value < cur.value };
                if better {
                    *cur = rv;
                }
            })
            .or_insert(rv);
    }
    let rank = |rv: &RootValue| -> (bool, u8) {
        let low = is_lower(rv, si, section);
        let on_bound = if low { l == Some(&rv.root) } else { u == Some(&rv.root) };
        // lower boundary last among equals, upper boundary first
        (!low, if low == on_bound { 1 } else { 0 })
    };
    let mut roots: Vec<&RootValue> = closest.into_values().collect();
    roots.sort_by(|a, b| {
        a.value
            .cmp(&b.value)
            .then_with(|| rank(a).cmp(&rank(b)))
            .then_with(|| a.root.cmp(&b.root))
    });
    let lower = roots.iter().filter(|rv| is_lower(rv, si, section)).count();
    Reduced { roots, lower }
}

type Pairs = Vec<(IndexedRoot, IndexedRoot)>;

fn pair(a: &RootValue, b: &RootValue) -> (IndexedRoot, IndexedRoot) {
    (a.root.clone(), b.root.clone())
}

fn biggest_cell(red: &Reduced, iv: &SymbolicInterval, xi: &[RootValue]) -> Pairs {
    let (l, u) = iv.bounds();
    let value_of = |r: &IndexedRoot| xi.iter().find(|rv| rv.root == *r).map(|rv| &rv.value);
    let (lv, uv) = (l.and_then(value_of), u.and_then(value_of));
    let mut out = Vec::new();
    for rv in &red.roots {
        if let (Some(l), Some(lv)) = (l, lv) {
            if rv.root != *l && rv.value <= *lv {
                out.push((rv.root.clone(), l.clone()));
                continue;
            }
        }
        if let (Some(u), Some(uv)) = (u, uv) {
            if rv.root != *u && rv.value >= *uv {
                out.push((u.clone(), rv.root.clone()));
            }
        }
    }
    out
}

fn chain(red: &Reduced) -> Pairs {
    red.roots.windows(2).map(|w| pair(w[0], w[1])).collect()
}

fn full(red: &Reduced) -> Pairs {
    let k = red.roots.len();
    (0..k).flat_map(|a| (a + 1..k).map(move |b| (a, b))).map(|(a, b)| pair(red.roots[a], red.roots[b])).collect()
}

/// Injection used to break ties: boundaries first, then canonical order.
fn injection<'a>(rv: &'a RootValue, iv: &SymbolicInterval) -> (u8, &'a IndexedRoot) {
    let (l, u) = iv.bounds();
    let class = if l == Some(&rv.root) {
        0
    } else if u == Some(&rv.root) {
        1
    } else {
        2
    };
    (class, &rv.root)
}

/// For each reduced root, the index of its barrier: the lowest-degree root
/// strictly between it and the sample, nearest to the sample on ties.
fn barriers(red: &Reduced, iv: &SymbolicInterval) -> Vec<Option<usize>> {
    let k = red.roots.len();
    let m = red.lower;
    // in the section case the bound is the last lower root and also bars the upper side
    let section_bound = iv.is_section().then(|| m - 1);
    (0..k)
        .map(|idx| {
            let key = |&c: &usize| {
                let rv = red.roots[c];
                (degree(&rv.root), c, injection(rv, iv))
            };
            if idx < m {
                (idx + 1..m).min_by(|a, b| {
                    let (ka, kb) = (key(a), key(b));
                    // nearer to the sample means a later position below it
                    (ka.0, Reverse(ka.1), ka.2).cmp(&(kb.0, Reverse(kb.1), kb.2))
                })
            } else {
                section_bound.into_iter().chain(m..idx).min_by(|a, b| {
                    let (ka, kb) = (key(a), key(b));
                    let near = |c: usize| if Some(c) == section_bound { 0 } else { c + 1 };
                    (ka.0, near(ka.1), ka.2).cmp(&(kb.0, near(kb.1), kb.2))
                })
            }
        })
        .collect()
}

fn barrier_pairs(red: &Reduced, bars: &[Option<usize>]) -> Pairs {
    bars.iter()
        .enumerate()
        .filter_map(|(idx, b)| {
            let b = (*b)?;
            Some(if idx < red.lower {
                pair(red.roots[idx], red.roots[b])
            } else {
                pair(red.roots[b], red.roots[idx])
            })
        })
        .collect()
}

/// Polynomials handled by the equational rule under the barrier heuristic in
/// the section case: those whose roots only lean on the section bound.
fn equational_polys(xi: &[RootValue], iv: &SymbolicInterval, si: &RealAlg) -> BTreeSet<MPoly> {
    let SymbolicInterval::Section(b) = iv else {
        return BTreeSet::new();
    };
    let mut eq: BTreeSet<MPoly> = BTreeSet::new();
    loop {
        let red = reduce(xi, iv, si, &eq);
        let bars = barriers(&red, iv);
        let bound = red.roots.iter().position(|rv| rv.root == *b);
        let leaned_on: BTreeSet<usize> = bars.iter().flatten().copied().collect();
        let fresh: Vec<MPoly> = (0..red.roots.len())
            .filter(|idx| red.roots[*idx].root.poly != b.poly)
            .filter(|idx| bars[*idx].is_some() && bars[*idx] == bound && !leaned_on.contains(idx))
            .map(|idx| red.roots[idx].root.poly.clone())
            .filter(|p| !eq.contains(p))
            .collect();
        if fresh.is_empty() {
            return eq;
        }
        eq.extend(fresh);
    }
}

/// Orderings between roots of the same polynomial, outside `skip`.
fn same_poly_pairs(xi: &[RootValue], skip: &BTreeSet<MPoly>) -> Pairs {
    let mut out = Vec::new();
    for (a, ra) in xi.iter().enumerate() {
        for rb in &xi[a + 1..] {
            if ra.root.poly == rb.root.poly && !skip.contains(&ra.root.poly) {
                match ra.value.cmp(&rb.value) {
                    Ordering::Less => out.push(pair(ra, rb)),
                    Ordering::Greater => out.push(pair(rb, ra)),
                    Ordering::Equal => {}
                }
            }
        }
    }
    out
}

/// Equational set and root ordering for `xi` (the roots of `polys` over the
/// sample prefix) around `si` inside `iv`.
pub fn choose_ordering(
    xi: &[RootValue],
    polys: &[MPoly],
    iv: &SymbolicInterval,
    si: &RealAlg,
    h: Heuristic,
) -> Result<(BTreeSet<MPoly>, RootOrdering), RepresentationError> {
    let none = BTreeSet::new();
    let (eq, reduced_pairs) = match h {
        Heuristic::Eq => {
            if !iv.is_section() {
                return Err(RepresentationError::EqInSector);
            }
            return Ok((polys.iter().cloned().collect(), RootOrdering::default()));
        }
        Heuristic::Bc => (BTreeSet::new(), biggest_cell(&reduce(xi, iv, si, &none), iv, xi)),
        Heuristic::Ch => (BTreeSet::new(), chain(&reduce(xi, iv, si, &none))),
        Heuristic::Full => (BTreeSet::new(), full(&reduce(xi, iv, si, &none))),
        Heuristic::Ldb => {
            let eq = equational_polys(xi, iv, si);
            let red = reduce(xi, iv, si, &eq);
            let pairs = barrier_pairs(&red, &barriers(&red, iv));
            (eq, pairs)
        }
    };
    let mut pairs = reduced_pairs;
    pairs.extend(same_poly_pairs(xi, &eq));
    let ord = RootOrdering::new(pairs).map_err(|e| RepresentationError::Invalid(e.to_string()))?;
    Ok((eq, ord))
}

/// Check the conditions a representation must meet at the sample: it
/// contains the sample, covers every root outside the equational set, only
/// uses equational polynomials for sections, matches the sample, and keeps
/// every ordered root outside the interval.
pub fn check_representation(
    repr: &Representation,
    xi: &[RootValue],
    prefix: &[RealAlg],
    si: &RealAlg,
) -> Result<(), RepresentationError> {
    let bad = |m: &str| Err(RepresentationError::Invalid(m.to_string()));
    if repr.interval.contains(prefix, si) != Some(true) {
        return bad("sample outside the interval");
    }
    if !repr.eq_set.is_empty() && !repr.interval.is_section() {
        return bad("equational polynomials in a sector");
    }
    if !repr.ordering.matches(prefix) {
        return bad("ordering does not match the sample");
    }
    let dom = repr.ordering.domain();
    let bounds = repr.interval.roots();
    let (l, u) = repr.interval.bounds();
    for rv in xi.iter().filter(|rv| !repr.eq_set.contains(&rv.root.poly)) {
        if !dom.contains(&rv.root) && !bounds.contains(&&rv.root) {
            return bad("a root is missing from the ordering");
        }
        let below = l.is_some_and(|l| repr.ordering.le(&rv.root, l));
        let above = u.is_some_and(|u| repr.ordering.le(u, &rv.root));
        if !below && !above {
            return bad("a root is not ordered outside the interval");
        }
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cells::irexpr;
    use crate::poly::{parse_poly, rat};

    fn roots_of(polys: &[&str], s: &[RealAlg]) -> (Vec<MPoly>, Vec<RootValue>) {
        let ps: Vec<MPoly> = polys.iter().map(|p| parse_poly(p).unwrap()).collect();
        let xi = irexpr(&ps, s).unwrap();
        (ps, xi)
    }

    #[test]
    fn interval_prefers_low_degree_sections() {
        let (_, xi) = roots_of(&["x1^3 - x1", "x1^2 + x1"], &[]);
        let iv = lowest_degree_interval(&xi, &RealAlg::int(0));
        assert_eq!(iv, SymbolicInterval::Section(IndexedRoot::new(parse_poly("x1^2 + x1").unwrap(), 2)));
        let full = lowest_degree_interval(&[], &RealAlg::int(0));
        assert_eq!(full, SymbolicInterval::full());
    }

    #[test]
    fn chain_is_contained_in_full_closure() {
        let s = vec![RealAlg::rational(rat(1, 3))];
        let (ps, xi) = roots_of(&["x2^2 - x1 - 1", "x2 - x1", "x2^3 - 2*x2 + x1", "x2 + 2"], &s);
        let si = RealAlg::rational(rat(1, 5));
        let iv = lowest_degree_interval(&xi, &si);
        for h in [Heuristic::Bc, Heuristic::Ch, Heuristic::Ldb, Heuristic::Full] {
            let (eq, ordering) = choose_ordering(&xi, &ps, &iv, &si, h).unwrap();
            let repr = Representation { interval: iv.clone(), eq_set: eq, ordering };
            check_representation(&repr, &xi, &s, &si).unwrap_or_else(|e| panic!("{h:?}: {e}"));
        }
        let (_, ch) = choose_ordering(&xi, &ps, &iv, &si, Heuristic::Ch).unwrap();
        let (_, fu) = choose_ordering(&xi, &ps, &iv, &si, Heuristic::Full).unwrap();
        let closure = fu.closure();
        assert!(ch.pairs().all(|p| closure.contains(p)));
    }

    #[test]
    fn section_heuristics_are_valid() {
        let s = vec![RealAlg::int(0)];
        let (ps, xi) = roots_of(&["x2 - x1", "x2^2 - 1", "x2^2 + x2 - x1", "x2 - 3"], &s);
        let si = RealAlg::int(0);
        let iv = lowest_degree_interval(&xi, &si);
        assert!(iv.is_section());
        for h in [Heuristic::Eq, Heuristic::Bc, Heuristic::Ch, Heuristic::Ldb, Heuristic::Full] {
            let (eq, ordering) = choose_ordering(&xi, &ps, &iv, &si, h).unwrap();
            let repr = Representation { interval: iv.clone(), eq_set: eq, ordering };
            check_representation(&repr, &xi, &s, &si).unwrap_or_else(|e| panic!("{h:?}: {e}"));
        }
        let sector = SymbolicInterval::full();
        assert_eq!(choose_ordering(&xi, &ps, &sector, &si, Heuristic::Eq), Err(RepresentationError::EqInSector));
    }
}
