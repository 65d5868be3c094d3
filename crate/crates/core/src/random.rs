//! Seeded random polynomials and samples for fuzzing and benchmarks.

use rand::seq::SliceRandom;
use rand::Rng;

use crate::poly::{MPoly, Monomial, Rat, Var};
use crate::realalg::RealAlg;

/// Shape limits for generated instances.
#[derive(Clone, Copy, Debug)]
pub struct InstanceShape {
    pub max_vars: usize,
    pub max_polys: usize,
    pub max_degree: u32,
    pub max_terms: usize,
    pub max_coeff: i64,
}

impl Default for InstanceShape {
    fn default() -> Self {
        InstanceShape { max_vars: 3, max_polys: 4, max_degree: 3, max_terms: 4, max_coeff: 3 }
    }
}

/// Polynomials with a rational sample of matching dimension.
#[derive(Clone, Debug)]
pub struct Instance {
    pub polys: Vec<MPoly>,
    pub sample: Vec<RealAlg>,
}

/// A monomial in `x1..=x_level` of total degree at most `max_degree`,
/// mentioning `x_level`.
fn monomial<R: Rng>(rng: &mut R, level: usize, max_degree: u32) -> Monomial {
    let total = rng.gen_range(1..=max_degree);
    let mut exps = vec![0u32; level];
    exps[level - 1] = 1;
    for _ in 1..total {
        exps[rng.gen_range(0..level)] += 1;
    }
    exps.iter()
        .enumerate()
        .map(|(k, &e)| Monomial::var(Var(k + 1), e))
        .fold(Monomial::one(), |acc, m| acc.mul(&m))
}

/// A random polynomial of exactly `level`.
pub fn random_poly<R: Rng>(rng: &mut R, level: usize, shape: &InstanceShape) -> MPoly {
    let coeff = |rng: &mut R| loop {
        let c = rng.gen_range(-shape.max_coeff..=shape.max_coeff);
        if c != 0 {
            return Rat::from_integer(c.into());
        }
    };
    loop {
        let mut terms: Vec<(Monomial, Rat)> = (0..rng.gen_range(1..=shape.max_terms))
            .map(|_| {
                let lvl = rng.gen_range(1..=level);
                (monomial(rng, lvl, shape.max_degree), coeff(rng))
            })
            .collect();
        terms.push((monomial(rng, level, shape.max_degree), coeff(rng)));
        if rng.gen_bool(0.7) {
            terms.push((Monomial::one(), coeff(rng)));
        }
        let p = MPoly::from_terms(terms);
        if p.level() == level {
            return p;
        }
    }
}

/// Small rationals, so that sections and shared roots occur regularly.
pub fn random_coordinate<R: Rng>(rng: &mut R) -> RealAlg {
    const VALUES: [(i64, i64); 9] = [(-2, 1), (-1, 1), (-1, 2), (0, 1), (1, 3), (1, 2), (1, 1), (3, 2), (2, 1)];
    let &(n, d) = VALUES.choose(rng).expect("nonempty");
    RealAlg::rational(Rat::new(n.into(), d.into()))
}

pub fn random_instance<R: Rng>(rng: &mut R, shape: &InstanceShape) -> Instance {
    let n = rng.gen_range(1..=shape.max_vars);
    let count = rng.gen_range(1..=shape.max_polys);
    let mut polys: Vec<MPoly> = (0..count)
        .map(|_| {
            let level = rng.gen_range(1..=n);
            random_poly(rng, level, shape)
        })
        .collect();
    // the top variable should matter
    if polys.iter().all(|p| p.level() < n) {
        polys[0] = random_poly(rng, n, shape);
    }
    let sample = (0..n).map(|_| random_coordinate(rng)).collect();
    Instance { polys, sample }
}
