//! Real root isolation by Descartes' rule of signs with bisection.

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use crate::poly::{Rat, ZPoly};

/// Open isolating intervals `(lo, hi)` for the positive roots of a
/// square-free polynomial with no rational roots, in increasing order.
fn positive_roots(p: &ZPoly) -> Vec<(Rat, Rat)> {
    let k = cauchy_exponent(p);
    let q = p.scale_arg_pow2(k);
    let mut out = Vec::new();
    let top = Rat::from_integer(BigInt::one() << k);
    bisect(q, Rat::zero(), top, &mut out);
    out
}

/// Smallest `k` with every root strictly below `2^k` in absolute value.
fn cauchy_exponent(p: &ZPoly) -> u64 {
    let lc = p.lc().abs();
    let m = p.coeffs()[..p.degree()].iter().map(|c| c.abs()).max().unwrap_or_default();
    // bound 1 + m/lc < 2^k
    let mut k = 0u64;
    let mut pow = lc.clone();
    while pow <= &lc + &m {
        pow <<= 1;
        k += 1;
    }
    k
}

/// `q` has its roots of interest in `(0, 1)`, mapped affinely onto `(a, b)`.
fn bisect(q: ZPoly, a: Rat, b: Rat, out: &mut Vec<(Rat, Rat)>) {
    let v = q.reverse().taylor_shift_one().sign_variations();
    match v {
        0 => {}
        1 => out.push((a, b)),
        _ => {
            let mid = (&a + &b) / Rat::from_integer(2.into());
            let left = q.halve_arg();
            debug_assert!(!left.eval(&BigInt::one()).is_zero(), "rational root at bisection point");
            let right = left.taylor_shift_one();
            bisect(left, a, mid.clone(), out);
            bisect(right, mid, b, out);
        }
    }
}

/// Isolating intervals for all real roots of an irreducible polynomial of
/// degree at least 2, in increasing order.
pub(crate) fn isolate_irreducible(p: &ZPoly) -> Vec<(Rat, Rat)> {
    debug_assert!(p.degree() >= 2);
    let mut neg: Vec<(Rat, Rat)> = positive_roots(&p.reflect())
        .into_iter()
        .map(|(lo, hi)| (-hi, -lo))
        .collect();
    neg.reverse();
    neg.extend(positive_roots(p));
    neg
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn isolates_sqrt_two() {
        let p = ZPoly::from_i64(&[-2, 0, 1]);
        let iv = isolate_irreducible(&p);
        assert_eq!(iv.len(), 2);
        let two = Rat::from_integer(2.into());
        assert!(iv[0].1 <= Rat::zero());
        assert!(&iv[1].0 * &iv[1].0 < two && &iv[1].1 * &iv[1].1 > two);
    }

    #[test]
    fn no_real_roots() {
        let p = ZPoly::from_i64(&[1, 0, 1]);
        assert!(isolate_irreducible(&p).is_empty());
    }

    #[test]
    fn close_roots_separate() {
        // x^3 - 3x + 1: three real roots
        let p = ZPoly::from_i64(&[1, -3, 0, 1]);
        assert_eq!(isolate_irreducible(&p).len(), 3);
    }
}
