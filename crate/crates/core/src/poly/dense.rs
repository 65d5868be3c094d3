//! Dense univariate polynomials over the integers.

use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use super::Rat;

/// Coefficient `k` multiplies `x^k`. No trailing zeros; the zero
/// polynomial has no coefficients.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct ZPoly(Vec<BigInt>);

impl ZPoly {
    pub fn new(mut c: Vec<BigInt>) -> Self {
        while c.last().is_some_and(Zero::is_zero) {
            c.pop();
        }
        ZPoly(c)
    }

    pub fn from_i64(c: &[i64]) -> Self {
        Self::new(c.iter().map(|&x| BigInt::from(x)).collect())
    }

    pub fn constant(c: BigInt) -> Self {
        Self::new(vec![c])
    }

    pub fn x() -> Self {
        Self::from_i64(&[0, 1])
    }

    pub fn coeffs(&self) -> &[BigInt] {
        &self.0
    }

    pub fn is_zero(&self) -> bool {
        self.0.is_empty()
    }

    /// Degree; the zero polynomial reports 0.
    pub fn degree(&self) -> usize {
        self.0.len().saturating_sub(1)
    }

    pub fn lc(&self) -> &BigInt {
        self.0.last().expect("leading coefficient of zero polynomial")
    }

    pub fn content(&self) -> BigInt {
        self.0.iter().fold(BigInt::zero(), |g, c| g.gcd(c))
    }

    /// Primitive part with positive leading coefficient.
    pub fn primitive(&self) -> ZPoly {
        if self.is_zero() {
            return self.clone();
        }
        let mut g = self.content();
        if self.lc().is_negative() {
            g = -g;
        }
        ZPoly(self.0.iter().map(|c| c / &g).collect())
    }

    pub fn scale(&self, k: &BigInt) -> ZPoly {
        ZPoly::new(self.0.iter().map(|c| c * k).collect())
    }

    pub fn div_scalar(&self, k: &BigInt) -> ZPoly {
        ZPoly::new(self.0.iter().map(|c| c / k).collect())
    }

    pub fn neg(&self) -> ZPoly {
        ZPoly(self.0.iter().map(|c| -c).collect())
    }

    pub fn add(&self, o: &ZPoly) -> ZPoly {
        let n = self.0.len().max(o.0.len());
        let z = BigInt::zero();
        ZPoly::new((0..n).map(|k| self.0.get(k).unwrap_or(&z) + o.0.get(k).unwrap_or(&z)).collect())
    }

    pub fn sub(&self, o: &ZPoly) -> ZPoly {
        self.add(&o.neg())
    }

    pub fn mul(&self, o: &ZPoly) -> ZPoly {
        if self.is_zero() || o.is_zero() {
            return ZPoly::default();
        }
        let mut out = vec![BigInt::zero(); self.0.len() + o.0.len() - 1];
        for (i, a) in self.0.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in o.0.iter().enumerate() {
                out[i + j] += a * b;
            }
        }
        ZPoly::new(out)
    }

    pub fn derivative(&self) -> ZPoly {
        ZPoly::new(self.0.iter().enumerate().skip(1).map(|(k, c)| c * BigInt::from(k)).collect())
    }

    pub fn eval(&self, x: &BigInt) -> BigInt {
        self.0.iter().rev().fold(BigInt::zero(), |acc, c| acc * x + c)
    }

    pub fn eval_rat(&self, x: &Rat) -> Rat {
        self.0
            .iter()
            .rev()
            .fold(Rat::zero(), |acc, c| acc * x + Rat::from_integer(c.clone()))
    }

    /// Sign of `p(x)` for rational `x` without building the rational value:
    /// evaluates the homogenised form `sum c_k n^k d^(deg-k)`.
    pub fn sign_at(&self, x: &Rat) -> i32 {
        if self.is_zero() {
            return 0;
        }
        let (n, d) = (x.numer(), x.denom());
        let mut acc = BigInt::zero();
        let mut dpow = BigInt::one();
        for c in self.0.iter().rev() {
            acc = acc * n + c * &dpow;
            dpow *= d;
        }
        // acc = d^deg * p(x) and d > 0
        sign_of(&acc)
    }

    /// `p(x + 1)` via repeated synthetic division.
    pub fn taylor_shift_one(&self) -> ZPoly {
        let mut c = self.0.clone();
        let n = c.len();
        for i in 0..n {
            for j in (i..n.saturating_sub(1)).rev() {
                let t = c[j + 1].clone();
                c[j] += t;
            }
        }
        ZPoly::new(c)
    }

    /// `x^deg * p(1/x)`.
    pub fn reverse(&self) -> ZPoly {
        let mut c = self.0.clone();
        c.reverse();
        ZPoly::new(c)
    }

    /// `p(-x)`.
    pub fn reflect(&self) -> ZPoly {
        ZPoly::new(
            self.0
                .iter()
                .enumerate()
                .map(|(k, c)| if k % 2 == 1 { -c } else { c.clone() })
                .collect(),
        )
    }

    /// `2^(deg) * p(x/2)`.
    pub fn halve_arg(&self) -> ZPoly {
        let n = self.degree();
        ZPoly::new(self.0.iter().enumerate().map(|(k, c)| c << (n - k)).collect())
    }

    /// `p(2^k x)`.
    pub fn scale_arg_pow2(&self, k: u64) -> ZPoly {
        ZPoly::new(self.0.iter().enumerate().map(|(i, c)| c << (k * i as u64)).collect())
    }

    /// Number of sign changes in the coefficient sequence.
    pub fn sign_variations(&self) -> usize {
        let mut last = 0;
        let mut v = 0;
        for c in &self.0 {
            let s = sign_of(c);
            if s == 0 {
                continue;
            }
            if last != 0 && s != last {
                v += 1;
            }
            last = s;
        }
        v
    }

    /// Pseudo-remainder `lc(b)^(deg a - deg b + 1) * a mod b`.
    pub fn prem(&self, b: &ZPoly) -> ZPoly {
        assert!(!b.is_zero());
        if self.0.len() < b.0.len() {
            return self.clone();
        }
        let lb = b.lc().clone();
        let n = b.degree();
        let mut r = self.0.clone();
        let mut e = self.degree() - n + 1;
        while r.len() > n && !r.is_empty() {
            let d = r.len() - 1;
            let lr = r[d].clone();
            for c in r.iter_mut() {
                *c *= &lb;
            }
            for k in 0..=n {
                r[k + d - n] -= &lr * &b.0[k];
            }
            while r.last().is_some_and(Zero::is_zero) {
                r.pop();
            }
            e -= 1;
        }
        let f = num_traits::pow(lb, e);
        ZPoly::new(r.into_iter().map(|c| c * &f).collect())
    }

    /// Exact quotient over the integers, if `b` divides `self`.
    pub fn exact_div(&self, b: &ZPoly) -> Option<ZPoly> {
        assert!(!b.is_zero());
        if self.is_zero() {
            return Some(ZPoly::default());
        }
        if self.0.len() < b.0.len() {
            return None;
        }
        let n = b.degree();
        let lb = b.lc();
        let mut r = self.0.clone();
        let mut q = vec![BigInt::zero(); self.0.len() - n];
        for d in (n..r.len()).rev() {
            if r[d].is_zero() {
                continue;
            }
            let (qc, rem) = r[d].div_rem(lb);
            if !rem.is_zero() {
                return None;
            }
            for k in 0..=n {
                r[k + d - n] -= &qc * &b.0[k];
            }
            q[d - n] = qc;
        }
        if r.iter().any(|c| !c.is_zero()) {
            return None;
        }
        Some(ZPoly::new(q))
    }

    /// Greatest common divisor, primitive with positive leading coefficient.
    pub fn gcd(&self, o: &ZPoly) -> ZPoly {
        if self.is_zero() {
            return o.primitive();
        }
        if o.is_zero() {
            return self.primitive();
        }
        let cont = self.content().gcd(&o.content());
        let (mut a, mut b) = (self.primitive(), o.primitive());
        if a.degree() < b.degree() {
            std::mem::swap(&mut a, &mut b);
        }
        while !b.is_zero() {
            let r = a.prem(&b);
            a = b;
            b = if r.is_zero() { r } else { r.primitive() };
            if !b.is_zero() && b.degree() == 0 {
                return ZPoly::constant(cont);
            }
        }
        a.primitive().scale(&cont)
    }

    /// Square-free part (primitive).
    pub fn squarefree_part(&self) -> ZPoly {
        if self.degree() == 0 {
            return self.primitive();
        }
        let g = self.gcd(&self.derivative());
        self.primitive().exact_div(&g.primitive()).unwrap().primitive()
    }

    /// Largest absolute value among the coefficients.
    pub fn max_norm(&self) -> BigInt {
        self.0.iter().map(|c| c.abs()).max().unwrap_or_default()
    }
}

pub(crate) fn sign_of(c: &BigInt) -> i32 {
    if c.is_positive() {
        1
    } else if c.is_negative() {
        -1
    } else {
        0
    }
}

impl fmt::Debug for ZPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "ZPoly{:?}", self.0.iter().map(|c| c.to_string()).collect::<Vec<_>>())
    }
}
