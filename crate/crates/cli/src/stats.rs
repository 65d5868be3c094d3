use std::collections::BTreeSet;
use std::fmt;

use levelcell::levelwise::Construction;
use levelcell::poly::MPoly;
use levelcell::proofsys::Origin;

/// Counters over one run, possibly spanning several cell constructions.
/// Projection polynomials are counted once per run and category.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct RunStats {
    pub cells_constructed: usize,
    resultants: BTreeSet<MPoly>,
    discriminants: BTreeSet<MPoly>,
    coefficients: BTreeSet<MPoly>,
    pub max_main_degree: u32,
    /// Number of sector levels of each cell, in construction order.
    pub cell_dimensions: Vec<usize>,
}

impl RunStats {
    pub fn record(&mut self, c: &Construction) {
        self.cells_constructed += 1;
        for (origin, p) in &c.projection {
            let set = match origin {
                Origin::Resultant => &mut self.resultants,
                Origin::Discriminant => &mut self.discriminants,
                Origin::Coefficient => &mut self.coefficients,
            };
            set.insert(p.clone());
        }
        self.max_main_degree = self.max_main_degree.max(c.stats.max_main_degree);
        self.cell_dimensions.push(c.cell.intervals.iter().filter(|iv| !iv.is_section()).count());
    }

    pub fn resultants_computed(&self) -> usize {
        self.resultants.len()
    }

    pub fn discriminants_computed(&self) -> usize {
        self.discriminants.len()
    }

    pub fn coefficients_computed(&self) -> usize {
        self.coefficients.len()
    }
}

/// `key=value` lines in a fixed order.
impl fmt::Display for RunStats {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "cells={}", self.cells_constructed)?;
        writeln!(f, "resultants={}", self.resultants_computed())?;
        writeln!(f, "discriminants={}", self.discriminants_computed())?;
        writeln!(f, "coefficients={}", self.coefficients_computed())?;
        writeln!(f, "max_main_degree={}", self.max_main_degree)?;
        let dims: Vec<String> = self.cell_dimensions.iter().map(usize::to_string).collect();
        writeln!(f, "cell_dimensions={}", dims.join(","))
    }
}
