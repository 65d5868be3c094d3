//! Factorization over the rationals.
//!
//! `FactorMode::Finest` yields irreducible factors; `FactorMode::Squarefree`
//! yields the square-free decomposition (square-free, pairwise coprime).

pub(crate) mod modp;
mod multi;
mod zassenhaus;

use std::fmt;
use std::str::FromStr;

use num_traits::Signed;

use super::{content_in, squarefree_decomposition, MPoly, Rat, Var, ZPoly};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Default)]
pub enum FactorMode {
    #[default]
    Finest,
    Squarefree,
}

impl FromStr for FactorMode {
    type Err = String;
    fn from_str(s: &str) -> Result<Self, String> {
        match s {
            "finest" => Ok(FactorMode::Finest),
            "squarefree" => Ok(FactorMode::Squarefree),
            _ => Err(format!("unknown factor mode '{s}'")),
        }
    }
}

impl fmt::Display for FactorMode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            FactorMode::Finest => "finest",
            FactorMode::Squarefree => "squarefree",
        })
    }
}

/// `p = unit * prod(f^m)` with normalized nonconstant factors in canonical order.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Factorization {
    pub unit: Rat,
    pub factors: Vec<(MPoly, u32)>,
}

impl Factorization {
    pub fn expand(&self) -> MPoly {
        self.factors
            .iter()
            .fold(MPoly::constant(self.unit.clone()), |acc, (f, m)| &acc * &f.pow(*m))
    }

    pub fn polys(&self) -> impl Iterator<Item = &MPoly> {
        self.factors.iter().map(|(f, _)| f)
    }
}

/// Factor `p` (nonzero) according to `mode`.
pub fn factor(p: &MPoly, mode: FactorMode) -> Factorization {
    assert!(!p.is_zero(), "factor of zero polynomial");
    let (q, unit) = p.normalize_with_unit();
    let mut factors: Vec<(MPoly, u32)> = Vec::new();
    let parts = if squarefree_mod_p(&q) { vec![(q, 1)] } else { squarefree_decomposition(&q) };
    for (f, m) in parts {
        match mode {
            FactorMode::Squarefree => factors.push((f, m)),
            FactorMode::Finest => {
                for g in irreducible_factors(&f) {
                    factors.push((g, m));
                }
            }
        }
    }
    factors.sort();
    let mut merged: Vec<(MPoly, u32)> = Vec::new();
    for (f, m) in factors {
        match merged.last_mut() {
            Some((g, k)) if *g == f => *k += m,
            _ => merged.push((f, m)),
        }
    }
    Factorization { unit, factors: merged }
}

/// Distinct irreducible factors of a nonconstant primitive integer
/// polynomial, skipping the sparse machinery when it is square-free.
pub(crate) fn distinct_irreducible_z(z: &ZPoly) -> Vec<ZPoly> {
    let squarefree = modp::primes().iter().take(2).any(|&p| {
        let fp = modp::Field::new(p);
        fp.reduce_big(z.lc()) != 0 && fp.is_squarefree(&fp.from_zpoly(z))
    });
    if squarefree {
        let z = if z.lc().is_negative() { z.neg() } else { z.clone() };
        return zassenhaus::factor_squarefree_z(&z);
    }
    factor(&MPoly::from_zpoly(z, Var(1)), FactorMode::Finest)
        .polys()
        .map(MPoly::to_zpoly)
        .collect()
}

/// Cheap sufficient test for a univariate `q` (normalized) being square-free:
/// its image modulo a prime not dividing the leading coefficient is.
fn squarefree_mod_p(q: &MPoly) -> bool {
    let vars = q.vars();
    if vars.len() != 1 {
        return false;
    }
    let z = q.rename_var(vars[0], Var(1)).to_zpoly();
    modp::primes().iter().take(2).any(|&p| {
        let fp = modp::Field::new(p);
        fp.reduce_big(z.lc()) != 0 && fp.is_squarefree(&fp.from_zpoly(&z))
    })
}

/// Irreducible factors of a square-free normalized polynomial.
fn irreducible_factors(f: &MPoly) -> Vec<MPoly> {
    let Some(v) = f.main_var() else {
        return Vec::new();
    };
    let c = content_in(f, v);
    if !c.is_constant() {
        let mut out = irreducible_factors(&c);
        out.extend(irreducible_factors(&f.exact_div(&c).expect("content divides").normalize()));
        return out;
    }
    let vars = f.vars();
    if vars.len() == 1 {
        let u = f.rename_var(v, Var(1)).normalize();
        return zassenhaus::factor_squarefree_z(&u.to_zpoly())
            .into_iter()
            .map(|g| MPoly::from_zpoly(&g, v).normalize())
            .collect();
    }
    multi::factor_multivariate(f)
}

/// Whether `p` is irreducible over the rationals (constants are not).
pub fn is_irreducible(p: &MPoly) -> bool {
    if p.is_constant() {
        return false;
    }
    let fz = factor(p, FactorMode::Finest);
    fz.factors.len() == 1 && fz.factors[0].1 == 1
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poly::parse_poly;

    fn p(s: &str) -> MPoly {
        parse_poly(s).unwrap()
    }

    #[test]
    fn finest_factorization_reconstitutes() {
        let q = p("3*(x1 - 1)^2*(x1^2 + x2^2 - 1)*(x2 - x1)");
        let fz = factor(&q, FactorMode::Finest);
        assert_eq!(fz.factors.len(), 3);
        assert_eq!(fz.expand(), q);
    }

    #[test]
    fn squarefree_mode_keeps_coprime_blocks() {
        let q = p("x1*(x1 - 1)*(x1 + 2)^2");
        let fz = factor(&q, FactorMode::Squarefree);
        assert_eq!(fz.factors.len(), 2);
        assert_eq!(fz.expand(), q);
        assert_eq!(factor(&q, FactorMode::Finest).factors.len(), 3);
    }

    #[test]
    fn irreducibility() {
        assert!(is_irreducible(&p("x1^2 + x2^2 - 1")));
        assert!(!is_irreducible(&p("x1^2 - x2^2")));
        assert!(!is_irreducible(&p("x1^2")));
        assert!(!is_irreducible(&MPoly::int(2)));
    }
}
