//! Resultants and discriminants by the subresultant pseudo-remainder sequence.

use super::{MPoly, Var};

/// Strip trailing zero coefficients.
pub(crate) fn trim(c: &mut Vec<MPoly>) {
    while c.last().is_some_and(MPoly::is_zero) {
        c.pop();
    }
}

fn deg(c: &[MPoly]) -> usize {
    c.len().saturating_sub(1)
}

/// Pseudo-remainder of coefficient vectors: `lc(b)^(da-db+1) a mod b`.
pub(crate) fn prem_coeffs(a: &[MPoly], b: &[MPoly]) -> Vec<MPoly> {
    assert!(!b.is_empty(), "pseudo-remainder by zero");
    if a.len() < b.len() {
        return a.to_vec();
    }
    let n = deg(b);
    let lb = &b[n];
    let mut r = a.to_vec();
    let mut e = deg(a) - n + 1;
    while r.len() > n && !r.is_empty() {
        let d = r.len() - 1;
        let lr = r[d].clone();
        for c in r.iter_mut() {
            *c = &*c * lb;
        }
        for k in 0..=n {
            r[k + d - n] = &r[k + d - n] - &(&lr * &b[k]);
        }
        trim(&mut r);
        e -= 1;
    }
    if e > 0 {
        let f = lb.pow(e as u32);
        for c in r.iter_mut() {
            *c = &*c * &f;
        }
    }
    r
}

fn exact(a: &MPoly, b: &MPoly) -> MPoly {
    a.exact_div(b).expect("inexact division in subresultant sequence")
}

/// Resultant of `p` and `q` with respect to `v`.
///
/// Degrees are taken in `v`; if either polynomial is zero the result is zero.
/// A polynomial free of `v` is treated as degree 0, so `res(p, c) = c^deg(p)`.
pub fn resultant(p: &MPoly, q: &MPoly, v: Var) -> MPoly {
    if p.is_zero() || q.is_zero() {
        return MPoly::zero();
    }
    let mut a = p.coeffs_in(v);
    let mut b = q.coeffs_in(v);
    let mut s = 1i32;
    if deg(&a) < deg(&b) {
        if deg(&a) % 2 == 1 && deg(&b) % 2 == 1 {
            s = -s;
        }
        std::mem::swap(&mut a, &mut b);
    }
    if deg(&b) == 0 {
        return b[0].pow(deg(&a) as u32);
    }
    let mut g = MPoly::one();
    let mut h = MPoly::one();
    loop {
        let da = deg(&a);
        let db = deg(&b);
        let delta = da - db;
        if da % 2 == 1 && db % 2 == 1 {
            s = -s;
        }
        let r = prem_coeffs(&a, &b);
        a = b;
        let divisor = &g * &h.pow(delta as u32);
        b = r.iter().map(|c| exact(c, &divisor)).collect();
        g = a[deg(&a)].clone();
        h = match delta {
            0 => h,
            1 => g.clone(),
            _ => exact(&g.pow(delta as u32), &h.pow(delta as u32 - 1)),
        };
        if b.is_empty() {
            return MPoly::zero();
        }
        if deg(&b) == 0 {
            break;
        }
    }
    let da = deg(&a) as u32;
    let lb = &b[0];
    let out = if da == 0 {
        h
    } else {
        exact(&lb.pow(da), &h.pow(da - 1))
    };
    if s < 0 {
        -out
    } else {
        out
    }
}

/// Discriminant `(-1)^(d(d-1)/2) res(p, dp/dv) / lc(p)` in `v`; 1 for degree 1.
pub fn discriminant(p: &MPoly, v: Var) -> MPoly {
    let d = p.degree_in(v);
    assert!(d >= 1, "discriminant of polynomial of degree 0 in {v}");
    if d == 1 {
        return MPoly::one();
    }
    let r = resultant(p, &p.derivative(v), v);
    let lc = p.leading_coeff_in(v);
    let q = exact(&r, &lc);
    if (d * (d - 1) / 2) % 2 == 1 {
        -q
    } else {
        q
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poly::parse_poly;

    fn p(s: &str) -> MPoly {
        parse_poly(s).unwrap()
    }

    #[test]
    fn running_example_resultants() {
        let p1 = p("x1 - 2*x2 + 1");
        let p2 = p("x1^2 + x2^2 - 1");
        let p3 = p("x1 - 2*x2 - 1");
        // Sylvester determinant |-2 x1-1; -2 x1+1| = -4
        assert_eq!(resultant(&p3, &p1, Var(2)), MPoly::int(-4));
        assert_eq!(resultant(&p1, &p3, Var(2)), MPoly::int(4));
        let r = resultant(&p3, &p2, Var(2));
        assert_eq!(r.normalize(), p("5*x1^2 - 2*x1 - 3"));
        assert_eq!(discriminant(&p2, Var(2)).normalize(), p("1 - x1^2").normalize());
        assert_eq!(discriminant(&p1, Var(2)), MPoly::one());
    }

    #[test]
    fn quadratic_discriminant() {
        let q = p("x2^2 + x1*x2 + 1");
        assert_eq!(discriminant(&q, Var(2)), p("x1^2 - 4"));
    }

    #[test]
    fn resultant_with_constant() {
        assert_eq!(resultant(&p("x1^2 + 1"), &MPoly::int(3), Var(1)), MPoly::int(9));
        assert_eq!(resultant(&p("x1 - 1"), &p("x1 - 1"), Var(1)), MPoly::zero());
    }
}
