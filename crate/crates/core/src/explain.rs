//! Conflict explanation: generalize an assignment under which a set of
//! constraints has no solution in the next variable to a whole cell, and
//! emit the clause excluding that cell.

use std::fmt;

use thiserror::Error;

use crate::cells::{CellDescription, Constraint};
use crate::levelwise::{construct, CellError, Construction, HeuristicConfig};
use crate::poly::{factor, resultant, MPoly, Var};
use crate::proofsys::Property;
use crate::realalg::{roots_in_extension, RealAlg};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum ExplainError {
    #[error("constraint of level {level} does not fit an assignment of length {assigned}")]
    Level { level: usize, assigned: usize },
    #[error("the assignment extends to a solution")]
    NotAConflict,
    #[error("polynomial {0} vanishes identically over the assignment")]
    Nullified(String),
    #[error(transparent)]
    Cell(#[from] CellError),
}

#[derive(Clone, Debug)]
pub struct Explanation {
    pub cell: CellDescription,
    /// Disjunction of the negated cell constraints.
    pub clause: Vec<Constraint>,
    pub construction: Construction,
}

impl Explanation {
    pub fn clause_display<'a>(&'a self, names: &'a [String]) -> ClauseDisplay<'a> {
        ClauseDisplay::new(&self.cell, names)
    }
}

/// The clause as the negated conjunction of the cell's constraints.
pub struct ClauseDisplay<'a> {
    cell: &'a CellDescription,
    names: &'a [String],
}

impl<'a> ClauseDisplay<'a> {
    pub fn new(cell: &'a CellDescription, names: &'a [String]) -> Self {
        ClauseDisplay { cell, names }
    }
}

impl fmt::Display for ClauseDisplay<'_> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let atoms: Vec<String> = self.cell.to_formula().iter().map(|c| c.display_with(self.names).to_string()).collect();
        match atoms.len() {
            0 => f.write_str("false"),
            1 => write!(f, "(not {})", atoms[0]),
            _ => write!(f, "(not (and {}))", atoms.join(" ")),
        }
    }
}

fn check_levels(constraints: &[Constraint], s: &[RealAlg]) -> Result<(), ExplainError> {
    match constraints.iter().map(Constraint::level).max() {
        Some(level) if level > s.len() + 1 => Err(ExplainError::Level { level, assigned: s.len() }),
        _ => Ok(()),
    }
}

/// Whether no value of the next variable satisfies all constraints over
/// `s`. Undefined indexed roots make their constraint false.
pub fn check_conflict(constraints: &[Constraint], s: &[RealAlg]) -> Result<bool, ExplainError> {
    check_conflict_excluding(constraints, &[], s)
}

/// Learned cells one level above `s` whose base contains `s`; their last
/// interval is forbidden for the next variable.
fn blocking<'a>(excluded: &'a [CellDescription], s: &[RealAlg]) -> Vec<&'a CellDescription> {
    excluded
        .iter()
        .filter(|c| c.dim() == s.len() + 1 && c.contains(s) == Some(true))
        .collect()
}

/// Like [`check_conflict`], where values inside the last interval of a
/// blocking cell of `excluded` count as unsatisfying too.
pub fn check_conflict_excluding(
    constraints: &[Constraint],
    excluded: &[CellDescription],
    s: &[RealAlg],
) -> Result<bool, ExplainError> {
    Ok(find_extension(constraints, excluded, s)?.is_none())
}

/// A value of the next variable satisfying every constraint over `s` and
/// avoiding the blocking cells of `excluded`, preferring simple rationals.
pub fn find_extension(
    constraints: &[Constraint],
    excluded: &[CellDescription],
    s: &[RealAlg],
) -> Result<Option<RealAlg>, ExplainError> {
    check_levels(constraints, s)?;
    let top = s.len() + 1;
    let blockers = blocking(excluded, s);
    let bounds = blockers.iter().flat_map(|c| c.intervals[top - 1].roots()).map(|r| &r.poly);
    let polys = constraints.iter().map(Constraint::polynomial).filter(|p| p.level() == top).chain(bounds);
    let mut point = s.to_vec();
    point.push(RealAlg::int(0));
    Ok(line_candidates(polys, s).into_iter().find(|x| {
        point[top - 1] = x.clone();
        constraints.iter().all(|c| c.holds(&point[..c.level()]) == Some(true))
            && blockers.iter().all(|b| b.intervals[top - 1].contains(s, x) != Some(true))
    }))
}

/// One value of the next variable per region cut out by the real roots of
/// `polys` over `s`: the simplest rational of each gap between roots, then
/// values beyond the extreme roots, then the roots themselves. Nullified
/// polynomials cut nothing.
pub fn line_candidates<'a, I>(polys: I, s: &[RealAlg]) -> Vec<RealAlg>
where
    I: IntoIterator<Item = &'a MPoly>,
{
    let mut roots: Vec<RealAlg> = polys.into_iter().filter_map(|p| roots_in_extension(p, s)).flatten().collect();
    roots.sort();
    roots.dedup();
    let mut out: Vec<RealAlg> = roots.windows(2).map(|w| RealAlg::rational(w[0].rational_between(&w[1]))).collect();
    match (roots.first(), roots.last()) {
        (Some(lo), Some(hi)) => {
            out.push(RealAlg::rational(lo.rational_below()));
            out.push(RealAlg::rational(hi.rational_above()));
        }
        _ => out.push(RealAlg::int(0)),
    }
    out.extend(roots);
    out
}

/// Generalize the conflict at `s` to a cell of dimension `|s|` on which the
/// same constraints stay unsatisfiable in the next variable.
pub fn explain_conflict(
    constraints: &[Constraint],
    s: &[RealAlg],
    cfg: &HeuristicConfig,
) -> Result<Explanation, ExplainError> {
    explain_conflict_excluding(constraints, &[], s, cfg)
}

/// Like [`explain_conflict`] with learned exclusions as in
/// [`check_conflict_excluding`]. Every bound of a blocking cell joins the
/// polynomials, so the new cell stays inside their bases.
pub fn explain_conflict_excluding(
    constraints: &[Constraint],
    excluded: &[CellDescription],
    s: &[RealAlg],
    cfg: &HeuristicConfig,
) -> Result<Explanation, ExplainError> {
    if !check_conflict_excluding(constraints, excluded, s)? {
        return Err(ExplainError::NotAConflict);
    }
    let n = s.len();
    let blockers = blocking(excluded, s);
    let polys = constraints
        .iter()
        .map(Constraint::polynomial)
        .chain(blockers.iter().flat_map(|c| c.intervals.iter().flat_map(|iv| iv.roots())).map(|r| &r.poly));
    let mut factors: Vec<MPoly> = Vec::new();
    for p in polys {
        for f in factor(p, cfg.factor_mode).factors.into_iter().map(|(f, _)| f) {
            if !factors.contains(&f) {
                factors.push(f);
            }
        }
    }
    let mut initial: Vec<Property> = Vec::new();
    // top-level roots in increasing order, tagged with their factor
    let mut chain: Vec<(RealAlg, usize)> = Vec::new();
    for (k, f) in factors.iter().enumerate() {
        if f.level() <= n {
            initial.push(Property::sgninv(f));
            continue;
        }
        let roots = roots_in_extension(f, s).ok_or_else(|| ExplainError::Nullified(f.to_string()))?;
        chain.extend(roots.into_iter().map(|r| (r, k)));
        initial.push(Property::andel(f));
    }
    chain.sort();
    let top = Var(n + 1);
    for w in chain.windows(2) {
        let (a, b) = (w[0].1, w[1].1);
        if a != b {
            initial.push(Property::ordinv(&resultant(&factors[a], &factors[b], top)));
        }
    }
    let construction = construct(initial, s, cfg)?;
    let cell = construction.cell.clone();
    let clause = cell.to_formula().iter().map(Constraint::negate).collect();
    Ok(Explanation { cell, clause, construction })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cells::Relation;
    use crate::poly::{parse_poly, rat};

    fn c(p: &str, rel: Relation) -> Constraint {
        Constraint::poly(parse_poly(p).unwrap(), rel)
    }

    fn q(n: i64, d: i64) -> RealAlg {
        RealAlg::rational(rat(n, d))
    }

    #[test]
    fn detects_conflicts() {
        let disk_above = [c("x1^2 + x2^2 - 1", Relation::Lt), c("x2 - 1", Relation::Gt)];
        assert!(check_conflict(&disk_above, &[q(0, 1)]).unwrap());
        assert!(!check_conflict(&[c("x2", Relation::Gt)], &[q(5, 1)]).unwrap());
        let both = [c("x2 - x1", Relation::Eq), c("x2 - x1", Relation::Ne)];
        assert!(check_conflict(&both, &[q(3, 1)]).unwrap());
        assert!(check_conflict(&[c("x3", Relation::Gt)], &[q(0, 1)]).is_err());
    }

    #[test]
    fn explains_disk_above_line() {
        let cs = [c("x1^2 + x2^2 - 1", Relation::Lt), c("x2 - 1", Relation::Gt)];
        let e = explain_conflict(&cs, &[q(0, 1)], &HeuristicConfig::default()).unwrap();
        for seed in 1..=20 {
            let x = e.cell.pick_interior_point(seed).unwrap();
            assert!(x[0].compare(&q(-1, 1)).is_gt() && x[0].compare(&q(1, 1)).is_lt());
            assert!(check_conflict(&cs, &x).unwrap());
        }
        assert_eq!(e.clause.len(), e.cell.to_formula().len());
    }

    #[test]
    fn nullified_top_polynomial_fails() {
        let cs = [c("x3*x1 + x2", Relation::Gt)];
        let s = [q(0, 1), q(0, 1)];
        // x3*0 + 0 > 0 has no solution, so this is a conflict
        assert!(check_conflict(&cs, &s).unwrap());
        assert!(matches!(explain_conflict(&cs, &s, &HeuristicConfig::default()), Err(ExplainError::Nullified(_))));
    }

    #[test]
    fn learned_cells_block_values() {
        // x2 > 0 is blocked above x1 in (-1, 1) by a learned cell x2 > -x1^2 - 1
        let learned = CellDescription::parse_with("level 1 sector (root \"x1 + 1\" 1) (root \"x1 - 1\" 1)\nlevel 2 sector (root \"x2 + x1^2 + 1\" 1) +inf", &[]).unwrap();
        let cs = [c("x2", Relation::Gt)];
        let s = [q(1, 2)];
        assert!(!check_conflict(&cs, &s).unwrap());
        assert!(check_conflict_excluding(&cs, std::slice::from_ref(&learned), &s).unwrap());
        assert!(!check_conflict_excluding(&cs, std::slice::from_ref(&learned), &[q(3, 1)]).unwrap());
        let e = explain_conflict_excluding(&cs, std::slice::from_ref(&learned), &s, &HeuristicConfig::default()).unwrap();
        for x in e.cell.pick_interior_points(1..=20).unwrap() {
            assert_eq!(learned.contains(&x), Some(true));
            assert!(check_conflict_excluding(&cs, std::slice::from_ref(&learned), &x).unwrap());
        }
    }

    #[test]
    fn variable_free_conflict_gives_whole_line() {
        let cs = [c("x2 - 1", Relation::Gt), c("x2", Relation::Lt)];
        let e = explain_conflict(&cs, &[q(7, 3)], &HeuristicConfig::default()).unwrap();
        assert!(e.clause.is_empty());
        assert_eq!(e.clause_display(&["x".into(), "y".into()]).to_string(), "false");
    }
}
