//! Primitive-element fallback for root isolation over several algebraic
//! coordinates, used when plain elimination collapses to zero.
//!
//! With `g = sum c_k a_k` separating the conjugate points, each coordinate is
//! written as a polynomial in `g` modulo its minimal polynomial; eliminating
//! `g` then only ranges over the conjugates of the sample itself.

use num_traits::{One, Zero};

use super::sign::{eliminate, sign_at};
use super::RealAlg;
use crate::poly::{factor, is_squarefree, resultant, FactorMode, MPoly, Monomial, Rat, Var};

/// Dense polynomial over the rationals, lowest degree first, no trailing zeros.
type QPoly = Vec<Rat>;

fn trim(mut a: QPoly) -> QPoly {
    while a.last().is_some_and(Zero::is_zero) {
        a.pop();
    }
    a
}

fn qmul(a: &[Rat], b: &[Rat]) -> QPoly {
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    let mut out = vec![Rat::zero(); a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate() {
        for (j, y) in b.iter().enumerate() {
            out[i + j] += x * y;
        }
    }
    trim(out)
}

fn qsub(a: &[Rat], b: &[Rat]) -> QPoly {
    let n = a.len().max(b.len());
    let zero = Rat::zero();
    trim((0..n).map(|k| a.get(k).unwrap_or(&zero) - b.get(k).unwrap_or(&zero)).collect())
}

fn qdivrem(a: &[Rat], b: &[Rat]) -> (QPoly, QPoly) {
    let mut r = a.to_vec();
    let db = b.len() - 1;
    let mut q = vec![Rat::zero(); a.len().saturating_sub(db)];
    while r.len() > db && !r.is_empty() {
        let d = r.len() - 1;
        let c = &r[d] / &b[db];
        for k in 0..=db {
            r[d - db + k] -= &c * &b[k];
        }
        q[d - db] = c;
        r = trim(r);
    }
    (trim(q), r)
}

/// Arithmetic in `Q[t] / (mu)` for irreducible `mu`.
struct Field {
    mu: QPoly,
}

impl Field {
    fn reduce(&self, a: &[Rat]) -> QPoly {
        qdivrem(a, &self.mu).1
    }

    fn mul(&self, a: &[Rat], b: &[Rat]) -> QPoly {
        self.reduce(&qmul(a, b))
    }

    fn inv(&self, a: &[Rat]) -> QPoly {
        // extended Euclid: s*a = 1 mod mu
        let (mut r0, mut r1) = (self.mu.clone(), a.to_vec());
        let (mut s0, mut s1): (QPoly, QPoly) = (Vec::new(), vec![Rat::one()]);
        while r1.len() > 1 {
            let (q, r) = qdivrem(&r0, &r1);
            let s = qsub(&s0, &qmul(&q, &s1));
            r0 = std::mem::replace(&mut r1, r);
            s0 = std::mem::replace(&mut s1, s);
        }
        assert!(!r1.is_empty(), "element not invertible");
        let c = r1[0].recip();
        self.reduce(&s1.iter().map(|x| x * &c).collect::<Vec<_>>())
    }

    /// Monic gcd in `K[y]`; polynomials are coefficient lists over `K`.
    fn gcd(&self, a: Vec<QPoly>, b: Vec<QPoly>) -> Vec<QPoly> {
        let strip = |mut v: Vec<QPoly>| {
            while v.last().is_some_and(|c| c.is_empty()) {
                v.pop();
            }
            v
        };
        let (mut x, mut y) = (strip(a), strip(b));
        while !y.is_empty() {
            let inv = self.inv(y.last().unwrap());
            let dy = y.len() - 1;
            while x.len() > dy && !x.is_empty() {
                let d = x.len() - 1;
                let c = self.mul(&x[d], &inv);
                for k in 0..=dy {
                    let t = self.mul(&c, &y[k]);
                    x[d - dy + k] = qsub(&x[d - dy + k], &t);
                }
                x = strip(x);
            }
            std::mem::swap(&mut x, &mut y);
        }
        let inv = self.inv(x.last().expect("gcd of zero polynomials"));
        x.iter().map(|c| self.mul(c, &inv)).collect()
    }
}

fn to_qpoly(p: &MPoly, v: Var) -> QPoly {
    trim(
        p.coeffs_in(v)
            .iter()
            .map(|c| c.constant_value().expect("univariate polynomial expected"))
            .collect(),
    )
}

fn from_qpoly(a: &[Rat], v: Var) -> MPoly {
    MPoly::from_terms(a.iter().enumerate().map(|(k, c)| (Monomial::var(v, k as u32), c.clone())))
}

/// `f(l)` for univariate `f` and a polynomial `l`.
fn compose(f: &[Rat], l: &MPoly) -> MPoly {
    f.iter()
        .rev()
        .fold(MPoly::zero(), |acc, c| &(&acc * l) + &MPoly::constant(c.clone()))
}

/// Nonzero polynomial in `xi` vanishing at every root of `q(s, xi)`, where
/// `q` involves only `xi` and the algebraic coordinates `alg` of `s`.
pub(super) fn annihilator(q: &MPoly, xi: Var, s: &[RealAlg], alg: &[usize]) -> MPoly {
    let t = Var(xi.0 + 1);
    for step in 1i64.. {
        let weights: Vec<Rat> = (0..alg.len())
            .map(|k| Rat::from_integer(step.pow(k as u32).into()))
            .collect();
        let form = alg.iter().zip(&weights).fold(MPoly::zero(), |acc, (&k, w)| {
            &acc + &MPoly::var(Var(k + 1)).scale(w)
        });
        let norm = eliminate(&(&MPoly::var(t) - &form), s, alg);
        if !is_squarefree(&norm) {
            continue;
        }
        // the factor of the norm vanishing at the primitive element
        let Some(mu) = factor(&norm, FactorMode::Finest)
            .polys()
            .find(|f| sign_at(&compose(&to_qpoly(f, t), &form), s) == 0)
            .map(|f| to_qpoly(f, t))
        else {
            continue;
        };
        let field = Field { mu: mu.clone() };
        let Some(coords) = coordinates(&field, s, alg, &weights, t) else {
            continue;
        };
        // q with each coordinate replaced by its expression in t
        let mut lifted = MPoly::zero();
        for (m, c) in q.terms() {
            let mut val = vec![c.clone()];
            for (idx, &k) in alg.iter().enumerate() {
                for _ in 0..m.exp(Var(k + 1)) {
                    val = field.mul(&val, &coords[idx]);
                }
            }
            let tail = MPoly::monomial(Monomial::var(xi, m.exp(xi)), Rat::one());
            lifted = &lifted + &(&from_qpoly(&val, t) * &tail);
        }
        let r = resultant(&lifted, &from_qpoly(&mu, t), t);
        assert!(!r.is_zero(), "norm over the orbit vanished");
        return r;
    }
    unreachable!()
}

/// Each algebraic coordinate as an element of `Q[t]/(mu)`, or `None` if the
/// weights fail to separate.
fn coordinates(field: &Field, s: &[RealAlg], alg: &[usize], w: &[Rat], t: Var) -> Option<Vec<QPoly>> {
    let mut out = Vec::new();
    for (idx, &k) in alg.iter().enumerate() {
        let y = Var(k + 1);
        let others: Vec<usize> = alg.iter().copied().filter(|&j| j != k).collect();
        let mut l = &MPoly::var(t) - &MPoly::var(y).scale(&w[idx]);
        for (jdx, &j) in alg.iter().enumerate() {
            if j != k {
                l = &l - &MPoly::var(Var(j + 1)).scale(&w[jdx]);
            }
        }
        // vanishes at (g, a_k): polynomial in y over Q[t]
        let nk = eliminate(&l, s, &others);
        let over_k: Vec<QPoly> = nk.coeffs_in(y).iter().map(|c| field.reduce(&to_qpoly(c, t))).collect();
        let m: Vec<QPoly> = s[k]
            .minimal_poly()
            .coeffs()
            .iter()
            .map(|c| trim(vec![Rat::from_integer(c.clone())]))
            .collect();
        let g = field.gcd(m, over_k);
        if g.len() != 2 {
            return None;
        }
        // monic linear factor y + g0
        out.push(qsub(&[], &g[0]));
    }
    Some(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poly::parse_poly;
    use crate::realalg::{isolate_real_roots, roots_in_extension};

    #[test]
    fn conjugate_nullification_is_avoided() {
        // every coefficient vanishes at the conjugate point (sqrt2, sqrt2)
        let r2 = isolate_real_roots(&parse_poly("x1^2 - 2").unwrap());
        let s = vec![r2[1].clone(), r2[0].clone()];
        let p = parse_poly("x3*(x2 - x1) + x1 - x2 + x1^2 - 2").unwrap();
        assert!(eliminate(&p, &s, &[0, 1]).is_zero());
        assert_eq!(roots_in_extension(&p, &s).unwrap(), vec![RealAlg::int(1)]);
    }
}
