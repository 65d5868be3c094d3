//! Exact sign evaluation at algebraic points and root isolation over them.

use num_bigint::BigInt;
use num_traits::{Signed, Zero};

use super::interval::{eval_box, Interval};
use super::{isolate_real_roots, tower, RealAlg};
use crate::poly::{resultant, MPoly, Rat, Var, ZPoly};

/// Interval rounds tried before paying for an exact zero test.
const CHEAP_ROUNDS: usize = 6;

/// Substitutes the rational coordinates of `s` into `p`; returns the
/// remaining polynomial and the (0-based) algebraic coordinates it involves.
fn split_sample(p: &MPoly, s: &[RealAlg]) -> (MPoly, Vec<usize>) {
    let mut q = p.clone();
    for (k, a) in s.iter().enumerate() {
        if let RealAlg::Rational(r) = a {
            if q.degree_in(Var(k + 1)) > 0 {
                q = q.substitute(Var(k + 1), r);
            }
        }
    }
    let alg = q
        .vars()
        .into_iter()
        .map(|v| v.0 - 1)
        .filter(|&k| k < s.len())
        .collect();
    (q, alg)
}

fn boxes(s: &[RealAlg]) -> Vec<Interval> {
    s.iter()
        .map(|a| {
            let (lo, hi) = a.interval();
            Interval::new(lo, hi)
        })
        .collect()
}

/// Eliminates the algebraic coordinates `alg` of `s` from `l` by successive
/// resultants with their minimal polynomials.
pub(super) fn eliminate(l: &MPoly, s: &[RealAlg], alg: &[usize]) -> MPoly {
    alg.iter().rev().fold(l.clone(), |acc, &k| {
        let m = MPoly::from_zpoly(&s[k].minimal_poly(), Var(k + 1));
        resultant(&acc, &m, Var(k + 1))
    })
}

/// Sign of `p` at the point `s`; `p` may only involve variables bound by `s`.
pub fn sign_at(p: &MPoly, s: &[RealAlg]) -> i32 {
    assert!(p.level() <= s.len(), "sample too short for polynomial");
    let (q, alg) = split_sample(p, s);
    if let Some(c) = q.constant_value() {
        return rat_sign(&c);
    }
    let refine_all = || alg.iter().for_each(|&k| s[k].refine());
    let enclosure = || eval_box(&q, &boxes(s));
    for _ in 0..CHEAP_ROUNDS {
        if let Some(sg) = enclosure().sign() {
            return sg;
        }
        refine_all();
    }
    let delta = if alg.len() == 1 {
        // zero iff the minimal polynomial divides q
        let k = alg[0];
        let (q0, _) = q.rename_var(Var(k + 1), Var(1)).normalize_with_unit();
        if q0.to_zpoly().prem(&s[k].minimal_poly()).is_zero() {
            return 0;
        }
        None
    } else {
        zero_bound(&q, s, &alg)
    };
    loop {
        let e = enclosure();
        if let Some(sg) = e.sign() {
            return sg;
        }
        if let Some(d) = &delta {
            if e.magnitude() < *d {
                return 0;
            }
        }
        refine_all();
    }
}

/// `None` if `q(s) != 0` is certain; otherwise a bound `d > 0` such that
/// `|q(s)| < d` implies `q(s) = 0`.
fn zero_bound(q: &MPoly, s: &[RealAlg], alg: &[usize]) -> Option<Rat> {
    let t = Var(q.level().max(s.len()) + 1);
    let l = &MPoly::var(t) - q;
    // every value of q at a conjugate point is a root of r
    let r = dense_in(&eliminate(&l, s, alg), t);
    let c = r.coeffs();
    let low = c.iter().position(|x| !x.is_zero()).expect("elimination polynomial is nonzero");
    if low == 0 {
        return None;
    }
    // Cauchy lower bound for the nonzero roots of r / t^low
    let a0 = c[low].abs();
    let m = c[low + 1..].iter().map(|x| x.abs()).max().unwrap_or_else(BigInt::zero);
    Some(Rat::new(a0.clone(), a0 + m))
}

/// Distinct real roots of `p(s, x_i)` for `i = |s| + 1`, or `None` when
/// every coefficient vanishes at `s`.
pub fn roots_in_extension(p: &MPoly, s: &[RealAlg]) -> Option<Vec<RealAlg>> {
    let xi = Var(s.len() + 1);
    assert!(p.level() <= xi.0, "polynomial level exceeds sample length + 1");
    let coeffs = p.coeffs_in(xi);
    let kept: Vec<MPoly> = coeffs
        .iter()
        .map(|c| if sign_at(c, s) == 0 { MPoly::zero() } else { c.clone() })
        .collect();
    if kept.iter().all(MPoly::is_zero) {
        return None;
    }
    let reduced = MPoly::from_coeffs_in(xi, &kept);
    let (q, alg) = split_sample(&reduced, s);
    if q.degree_in(xi) == 0 {
        return Some(Vec::new());
    }
    if alg.is_empty() {
        return Some(isolate_real_roots(&q));
    }
    let mut r = eliminate(&q, s, &alg);
    if r.is_zero() {
        // some conjugate point nullifies q; restrict to the orbit of s
        r = tower::annihilator(&q, xi, s, &alg);
    }
    let mut point = s.to_vec();
    point.push(RealAlg::int(0));
    let roots = isolate_real_roots(&r)
        .into_iter()
        .filter(|cand| {
            point[xi.0 - 1] = cand.clone();
            sign_at(&q, &point) == 0
        })
        .collect();
    Some(roots)
}

/// Dense integer view of a polynomial in `v` alone, denominators cleared.
fn dense_in(p: &MPoly, v: Var) -> ZPoly {
    let (q, _) = p.rename_var(v, Var(1)).normalize_with_unit();
    q.to_zpoly()
}

fn rat_sign(c: &Rat) -> i32 {
    if c.is_positive() {
        1
    } else if c.is_negative() {
        -1
    } else {
        0
    }
}
