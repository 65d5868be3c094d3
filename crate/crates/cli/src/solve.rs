//! Depth-first search over the variables in declaration order, learning one
//! explanation cell per conflict.

use std::fmt;

use levelcell::cells::{CellDescription, Constraint};
use levelcell::explain::{explain_conflict_excluding, find_extension, ExplainError};
use levelcell::levelwise::HeuristicConfig;
use levelcell::realalg::RealAlg;

use crate::smtlib::Problem;
use crate::stats::RunStats;

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Verdict {
    /// A model checked against every constraint.
    Sat(Vec<RealAlg>),
    /// The learned cells and the level-1 constraints leave no value of `x1`.
    Unsat,
    Unknown(String),
}

impl Verdict {
    pub fn name(&self) -> &'static str {
        match self {
            Verdict::Sat(_) => "sat",
            Verdict::Unsat => "unsat",
            Verdict::Unknown(_) => "unknown",
        }
    }
}

impl fmt::Display for Verdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

/// A learned cell with the clause excluding it.
#[derive(Clone, Debug)]
pub struct Lemma {
    pub cell: CellDescription,
    pub clause: Vec<Constraint>,
}

#[derive(Clone, Debug)]
pub struct SolveOutcome {
    pub verdict: Verdict,
    pub lemmas: Vec<Lemma>,
    pub stats: RunStats,
}

/// Search for a model of the conjunction using at most `budget` explanations.
pub fn solve_conjunction(problem: &Problem, budget: usize, cfg: &HeuristicConfig) -> SolveOutcome {
    let mut outcome = SolveOutcome { verdict: Verdict::Unsat, lemmas: Vec::new(), stats: RunStats::default() };
    let n = problem.variables.len();
    let by_level: Vec<Vec<Constraint>> = (0..=n)
        .map(|k| problem.constraints.iter().filter(|c| c.level() == k).cloned().collect())
        .collect();
    if by_level[0].iter().any(|c| c.holds(&[]) != Some(true)) {
        return outcome;
    }
    let mut learned: Vec<CellDescription> = Vec::new();
    let mut s: Vec<RealAlg> = Vec::with_capacity(n);
    let mut explanations = 0;
    outcome.verdict = loop {
        if s.len() == n {
            break verify(problem, s);
        }
        let level = s.len() + 1;
        match find_extension(&by_level[level], &learned, &s) {
            Ok(Some(x)) => {
                s.push(x);
                continue;
            }
            Ok(None) => {}
            Err(e) => break Verdict::Unknown(e.to_string()),
        }
        if level == 1 {
            break Verdict::Unsat;
        }
        if explanations == budget {
            break Verdict::Unknown(format!("budget of {budget} explanations exhausted"));
        }
        explanations += 1;
        match explain_conflict_excluding(&by_level[level], &learned, &s, cfg) {
            Ok(e) => {
                outcome.stats.record(&e.construction);
                learned.push(e.cell.clone());
                outcome.lemmas.push(Lemma { cell: e.cell, clause: e.clause });
                // the new cell blocks the last coordinate, so it must change
                s.pop();
            }
            Err(ExplainError::Nullified(p)) => break Verdict::Unknown(format!("cannot explain: {p} is nullified")),
            Err(e) => break Verdict::Unknown(format!("cannot explain: {e}")),
        }
    };
    outcome
}

fn verify(problem: &Problem, model: Vec<RealAlg>) -> Verdict {
    if problem.constraints.iter().all(|c| c.holds(&model[..c.level()]) == Some(true)) {
        Verdict::Sat(model)
    } else {
        Verdict::Unknown("model failed verification".into())
    }
}
