//! Side-by-side statistics of heuristic configurations on a set of problems.

use std::fmt;

use levelcell::levelwise::HeuristicConfig;

use crate::smtlib::Problem;
use crate::solve::{solve_conjunction, Verdict};

/// Totals for one configuration; projection counts are summed per instance.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HeuristicSummary {
    pub config: HeuristicConfig,
    pub instances: usize,
    pub sat: usize,
    pub unsat: usize,
    pub unknown: usize,
    pub cells: usize,
    pub resultants: usize,
    pub discriminants: usize,
    pub coefficients: usize,
}

impl HeuristicSummary {
    pub fn mean_cells(&self) -> f64 {
        if self.instances == 0 {
            0.0
        } else {
            self.cells as f64 / self.instances as f64
        }
    }
}

impl fmt::Display for HeuristicSummary {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "heuristic={} instances={} sat={} unsat={} unknown={} mean_cells={:.2} resultants={} discriminants={} coefficients={}",
            self.config,
            self.instances,
            self.sat,
            self.unsat,
            self.unknown,
            self.mean_cells(),
            self.resultants,
            self.discriminants,
            self.coefficients
        )
    }
}

/// Solve every problem under every configuration.
pub fn compare(problems: &[Problem], configs: &[HeuristicConfig], budget: usize) -> Vec<HeuristicSummary> {
    configs
        .iter()
        .map(|cfg| {
            let mut sum = HeuristicSummary {
                config: *cfg,
                instances: problems.len(),
                sat: 0,
                unsat: 0,
                unknown: 0,
                cells: 0,
                resultants: 0,
                discriminants: 0,
                coefficients: 0,
            };
            for p in problems {
                let o = solve_conjunction(p, budget, cfg);
                match o.verdict {
                    Verdict::Sat(_) => sum.sat += 1,
                    Verdict::Unsat => sum.unsat += 1,
                    Verdict::Unknown(_) => sum.unknown += 1,
                }
                sum.cells += o.stats.cells_constructed;
                sum.resultants += o.stats.resultants_computed();
                sum.discriminants += o.stats.discriminants_computed();
                sum.coefficients += o.stats.coefficients_computed();
            }
            sum
        })
        .collect()
}
