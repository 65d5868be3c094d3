//! Multivariate factorization: evaluation-based irreducibility proofs and
//! Kronecker substitution with subset recombination.

use std::collections::BTreeSet;

use num_bigint::BigInt;
use num_traits::Zero;

use super::zassenhaus::factor_squarefree_z;
use crate::poly::{is_squarefree, squarefree_decomposition, MPoly, Monomial, Rat, Var, ZPoly};

const EVALUATIONS: usize = 4;

/// Irreducible factors of a square-free integral polynomial that is primitive
/// in its main variable and involves at least two variables.
pub(crate) fn factor_multivariate(f: &MPoly) -> Vec<MPoly> {
    let v = f.main_var().expect("nonconstant polynomial");
    if f.degree_in(v) == 1 || proves_irreducible(f, v) {
        return vec![f.normalize()];
    }
    kronecker(f)
}

/// Evaluates the non-main variables at small integers; a univariate image
/// that admits no nontrivial degree split proves irreducibility.
fn proves_irreducible(f: &MPoly, v: Var) -> bool {
    let d = f.degree_in(v) as usize;
    let others: Vec<Var> = f.vars().into_iter().filter(|&w| w != v).collect();
    let lc = f.leading_coeff_in(v);
    let mut possible: Option<BTreeSet<usize>> = None;
    let mut good = 0;
    for attempt in 0..64u64 {
        if good == EVALUATIONS {
            break;
        }
        let point: Vec<(Var, Rat)> = others
            .iter()
            .enumerate()
            .map(|(k, &w)| (w, Rat::from_integer(BigInt::from(eval_value(attempt, k)))))
            .collect();
        let subst = |p: &MPoly| point.iter().fold(p.clone(), |acc, (w, a)| acc.substitute(*w, a));
        if subst(&lc).is_zero() {
            continue;
        }
        let image = subst(f).rename_var(v, Var(1)).normalize();
        if image.degree_in(Var(1)) as usize != d || !is_squarefree(&image) {
            continue;
        }
        good += 1;
        let factors = factor_squarefree_z(&image.to_zpoly());
        let mut sums = BTreeSet::from([0usize]);
        for g in &factors {
            let next: Vec<usize> = sums.iter().map(|s| s + g.degree()).collect();
            sums.extend(next);
        }
        let merged: BTreeSet<usize> = match &possible {
            None => sums,
            Some(prev) => prev.intersection(&sums).copied().collect(),
        };
        if merged.iter().all(|&s| s == 0 || s == d) {
            return true;
        }
        possible = Some(merged);
    }
    false
}

fn eval_value(attempt: u64, k: usize) -> i64 {
    // deterministic spread of small integers per coordinate
    let x = attempt.wrapping_mul(2654435761).wrapping_add(k as u64 * 40503) % 23;
    x as i64 - 11
}

struct Kronecker {
    vars: Vec<Var>,
    weights: Vec<u64>,
    bounds: Vec<u64>,
}

impl Kronecker {
    fn new(f: &MPoly) -> Self {
        let vars = f.vars();
        let bounds: Vec<u64> = vars.iter().map(|&v| f.degree_in(v) as u64 + 1).collect();
        let mut weights = Vec::with_capacity(vars.len());
        let mut w = 1u64;
        for b in &bounds {
            weights.push(w);
            w = w.checked_mul(*b).expect("Kronecker degree overflow");
        }
        Kronecker { vars, weights, bounds }
    }

    fn encode(&self, f: &MPoly) -> ZPoly {
        let mut coeffs: Vec<BigInt> = Vec::new();
        for (m, c) in f.terms() {
            let e: u64 = self
                .vars
                .iter()
                .zip(&self.weights)
                .map(|(&v, w)| m.exp(v) as u64 * w)
                .sum();
            let e = e as usize;
            if coeffs.len() <= e {
                coeffs.resize(e + 1, BigInt::zero());
            }
            coeffs[e] += c.to_integer();
        }
        ZPoly::new(coeffs)
    }

    fn decode(&self, g: &ZPoly) -> Option<MPoly> {
        let level = self.vars.last().map_or(0, |v| v.0);
        let mut out = MPoly::zero();
        for (e, c) in g.coeffs().iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let mut rest = e as u64;
            let mut exps = vec![0u32; level];
            for k in (0..self.vars.len()).rev() {
                let digit = rest / self.weights[k];
                if digit >= self.bounds[k] {
                    return None;
                }
                rest -= digit * self.weights[k];
                exps[self.vars[k].0 - 1] = digit as u32;
            }
            out.add_term(Monomial::from_exps(exps), Rat::from_integer(c.clone()));
        }
        Some(out)
    }
}

fn kronecker(f: &MPoly) -> Vec<MPoly> {
    let kr = Kronecker::new(f);
    let image = kr.encode(f);
    let mut atoms: Vec<ZPoly> = Vec::new();
    let sqf = squarefree_decomposition(&MPoly::from_zpoly(&image, Var(1)));
    for (g, m) in sqf {
        for a in factor_squarefree_z(&g.to_zpoly()) {
            for _ in 0..m {
                atoms.push(a.clone());
            }
        }
    }
    let mut out = Vec::new();
    let mut cur = f.normalize();
    let mut size = 1;
    'outer: while 2 * size <= atoms.len() {
        for subset in subsets(atoms.len(), size) {
            let prod = subset
                .iter()
                .fold(ZPoly::from_i64(&[1]), |acc, &i| acc.mul(&atoms[i]));
            let Some(g) = kr.decode(&prod) else {
                continue;
            };
            if g.is_constant() {
                continue;
            }
            let g = g.normalize();
            if let Some(q) = cur.exact_div(&g) {
                out.push(g);
                cur = q.normalize();
                atoms = atoms
                    .into_iter()
                    .enumerate()
                    .filter(|(i, _)| !subset.contains(i))
                    .map(|(_, a)| a)
                    .collect();
                continue 'outer;
            }
        }
        size += 1;
    }
    if !cur.is_constant() {
        out.push(cur);
    }
    out
}

fn subsets(n: usize, k: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut cur = Vec::with_capacity(k);
    fn rec(start: usize, n: usize, k: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == k {
            out.push(cur.clone());
            return;
        }
        for i in start..n {
            if n - i < k - cur.len() {
                break;
            }
            cur.push(i);
            rec(i + 1, n, k, cur, out);
            cur.pop();
        }
    }
    rec(0, n, k, &mut cur, &mut out);
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poly::parse_poly;

    fn p(s: &str) -> MPoly {
        parse_poly(s).unwrap()
    }

    #[test]
    fn kronecker_roundtrip() {
        let f = p("x1^2*x3 + 3*x2*x3^2 - x1 + 7");
        let kr = Kronecker::new(&f);
        assert_eq!(kr.decode(&kr.encode(&f)).unwrap(), f);
    }

    #[test]
    fn splits_bivariate_product() {
        let a = p("x2^2 - x1");
        let b = p("x2^2 + x1*x2 + 1");
        let f = (&a * &b).normalize();
        let mut fs = factor_multivariate(&f);
        fs.sort();
        let mut expect = vec![a.normalize(), b.normalize()];
        expect.sort();
        assert_eq!(fs, expect);
    }

    #[test]
    fn circle_is_irreducible() {
        let f = p("x1^2 + x2^2 - 1");
        assert_eq!(factor_multivariate(&f), vec![f.normalize()]);
    }

    #[test]
    fn difference_of_squares_in_three_vars() {
        let f = p("x3^2 - x1^2*x2^2");
        let fs = factor_multivariate(&f.normalize());
        assert_eq!(fs.len(), 2);
    }
}
