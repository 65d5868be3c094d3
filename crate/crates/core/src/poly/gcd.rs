//! Multivariate gcd, contents and square-free decomposition.

use super::factor::modp::{self, primes, Field, Fp};
use super::resultant::{prem_coeffs, trim};
use super::{MPoly, Var};

/// Greatest common divisor, normalized (primitive, positive leading coefficient).
/// `gcd(0, 0) = 0`.
pub fn gcd(a: &MPoly, b: &MPoly) -> MPoly {
    if a.is_zero() {
        return b.normalize();
    }
    if b.is_zero() {
        return a.normalize();
    }
    let l = a.level().max(b.level());
    if l == 0 {
        return MPoly::one();
    }
    let v = Var(l);
    if a.degree_in(v) == 0 {
        return gcd(a, &content_in(b, v));
    }
    if b.degree_in(v) == 0 {
        return gcd(&content_in(a, v), b);
    }
    let ca = content_in(a, v);
    let cb = content_in(b, v);
    let pa = a.exact_div(&ca).expect("content divides");
    let pb = b.exact_div(&cb).expect("content divides");
    let gc = gcd(&ca, &cb);
    let gp = primitive_gcd(&pa, &pb, v);
    (&gc * &gp).normalize()
}

/// Gcd of two polynomials primitive in `v`: the primitive part of the last
/// nonzero remainder of the subresultant sequence.
fn primitive_gcd(a: &MPoly, b: &MPoly, v: Var) -> MPoly {
    if coprime_mod_p(a, b, v) {
        return MPoly::one();
    }
    let mut x = a.coeffs_in(v);
    let mut y = b.coeffs_in(v);
    if x.len() < y.len() {
        std::mem::swap(&mut x, &mut y);
    }
    let mut g = MPoly::one();
    let mut h = MPoly::one();
    loop {
        if y.len() == 1 {
            return MPoly::one();
        }
        let delta = (x.len() - y.len()) as u32;
        let mut r = prem_coeffs(&x, &y);
        trim(&mut r);
        if r.is_empty() {
            return primitive_part_in(&MPoly::from_coeffs_in(v, &y), v);
        }
        let divisor = &g * &h.pow(delta);
        x = std::mem::replace(&mut y, r.iter().map(|c| c.exact_div(&divisor).expect("subresultant divides")).collect());
        g = x[x.len() - 1].clone();
        h = match delta {
            0 => h,
            1 => g.clone(),
            _ => g.pow(delta).exact_div(&h.pow(delta - 1)).expect("subresultant divides"),
        };
    }
}

/// Sufficient test for `gcd(a, b) = 1` when both are primitive in `v`: the
/// images at a point mod a prime are coprime while `lc(a)` survives, so no
/// factor of positive degree in `v` can be shared.
fn coprime_mod_p(a: &MPoly, b: &MPoly, v: Var) -> bool {
    let (a, b) = (a.normalize(), b.normalize());
    let below = v.index() - 1;
    primes().iter().take(2).enumerate().any(|(attempt, &p)| {
        let fp = Field::new(p);
        let point: Vec<u64> = (0..below).map(|k| (1 + 7919 * (k as u64 + 1) * (attempt as u64 + 3)) % p).collect();
        let ia = image(&a, v, &point, &fp);
        let ib = image(&b, v, &point, &fp);
        ia.len() == a.degree_in(v) as usize + 1 && ib.len() >= 2 && fp.gcd(&ia, &ib).len() == 1
    })
}

/// `f` at `x_k = point[k-1]` for `k < v`, reduced mod `p`, as a dense
/// polynomial in `v`. `f` must have integer coefficients.
fn image(f: &MPoly, v: Var, point: &[u64], fp: &Field) -> Fp {
    let mut out = vec![0u64; f.degree_in(v) as usize + 1];
    for (m, c) in f.terms() {
        let e = m.exps();
        let mut t = fp.reduce_big(c.numer());
        for (k, &x) in point.iter().enumerate() {
            t = t * fp.pow(x, u64::from(e.get(k).copied().unwrap_or(0))) % fp.p;
        }
        let d = e.get(v.index() - 1).copied().unwrap_or(0) as usize;
        out[d] = (out[d] + t) % fp.p;
    }
    modp::trim(&mut out);
    out
}

/// Gcd of the coefficients of `p` viewed as a polynomial in `v` (normalized).
pub fn content_in(p: &MPoly, v: Var) -> MPoly {
    let mut g = MPoly::zero();
    for c in p.coeffs_in(v) {
        g = gcd(&g, &c);
        if g.is_constant() && !g.is_zero() {
            return MPoly::one();
        }
    }
    g
}

/// `p / content_in(p, v)`, normalized.
pub fn primitive_part_in(p: &MPoly, v: Var) -> MPoly {
    if p.is_zero() {
        return MPoly::zero();
    }
    let c = content_in(p, v);
    p.exact_div(&c).expect("content divides").normalize()
}

/// Square-free decomposition: normalized nonconstant factors with
/// multiplicities whose product equals `p` up to a rational constant.
/// Factors with the same multiplicity may be combined.
pub fn squarefree_decomposition(p: &MPoly) -> Vec<(MPoly, u32)> {
    let mut out = Vec::new();
    sqf_rec(&p.normalize(), &mut out);
    out
}

fn sqf_rec(p: &MPoly, out: &mut Vec<(MPoly, u32)>) {
    let Some(v) = p.main_var() else {
        return;
    };
    let c = content_in(p, v);
    if !c.is_constant() {
        sqf_rec(&c, out);
    }
    let f = p.exact_div(&c).expect("content divides");
    yun(&f, v, out);
}

/// Yun's algorithm for a polynomial primitive in its main variable `v`.
fn yun(f: &MPoly, v: Var, out: &mut Vec<(MPoly, u32)>) {
    let df = f.derivative(v);
    let a0 = gcd(f, &df);
    let mut b = f.exact_div(&a0).expect("gcd divides");
    let c = df.exact_div(&a0).expect("gcd divides");
    let mut d = &c - &b.derivative(v);
    let mut i = 1;
    while !b.is_constant() {
        let a = gcd(&b, &d);
        if !a.is_constant() {
            out.push((a.normalize(), i));
        }
        let nb = b.exact_div(&a).expect("gcd divides");
        let c = d.exact_div(&a).expect("gcd divides");
        d = &c - &nb.derivative(v);
        b = nb;
        i += 1;
    }
}

pub fn is_squarefree(p: &MPoly) -> bool {
    squarefree_decomposition(p).iter().all(|(_, m)| *m == 1)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poly::parse_poly;

    fn p(s: &str) -> MPoly {
        parse_poly(s).unwrap()
    }

    #[test]
    fn multivariate_gcd() {
        let a = p("(x1 + x2)*(x1 - x2^2)");
        let b = p("(x1 + x2)*(x2 + 3)");
        assert_eq!(gcd(&a, &b), p("x1 + x2").normalize());
        assert_eq!(gcd(&p("x1^2 - 1"), &p("x2 + 1")), MPoly::one());
        assert_eq!(gcd(&p("x1*x2"), &p("x1*x3")), p("x1"));
    }

    #[test]
    fn contents() {
        let q = p("x1*x2^2 + x1^2*x2");
        assert_eq!(content_in(&q, Var(2)), p("x1"));
        assert_eq!(primitive_part_in(&q, Var(2)), p("x2^2 + x1*x2"));
    }

    #[test]
    fn yun_decomposition() {
        let q = p("(x1 - x2)^2 * (x2 + 1) * x1^3");
        let mut d = squarefree_decomposition(&q);
        d.sort();
        let prod = d.iter().fold(MPoly::one(), |acc, (f, m)| &acc * &f.pow(*m));
        assert_eq!(prod.normalize(), q.normalize());
        assert!(d.iter().any(|(f, m)| *f == p("x2 - x1").normalize() && *m == 2));
        assert!(d.iter().any(|(f, m)| *f == p("x1") && *m == 3));
        assert!(!is_squarefree(&q));
        assert!(is_squarefree(&p("x1^2 + x2^2 - 1")));
    }
}
