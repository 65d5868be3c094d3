//! Univariate polynomials over a prime field `F_p` with `p < 2^31`.

use num_bigint::{BigInt, BigUint};
use num_integer::Integer;
use num_traits::ToPrimitive;
use rand::Rng;

use crate::poly::ZPoly;

pub(crate) type Fp = Vec<u64>;

#[derive(Clone, Copy, Debug)]
pub(crate) struct Field {
    pub p: u64,
}

impl Field {
    pub fn new(p: u64) -> Self {
        Field { p }
    }

    pub fn reduce_big(&self, c: &BigInt) -> u64 {
        c.mod_floor(&BigInt::from(self.p)).to_u64().unwrap()
    }

    pub fn from_zpoly(&self, f: &ZPoly) -> Fp {
        let mut out: Fp = f.coeffs().iter().map(|c| self.reduce_big(c)).collect();
        trim(&mut out);
        out
    }

    pub fn inv(&self, a: u64) -> u64 {
        assert!(a % self.p != 0, "inverse of zero");
        self.pow(a, self.p - 2)
    }

    pub fn pow(&self, mut a: u64, mut e: u64) -> u64 {
        let mut r = 1u64;
        a %= self.p;
        while e > 0 {
            if e & 1 == 1 {
                r = r * a % self.p;
            }
            a = a * a % self.p;
            e >>= 1;
        }
        r
    }

    #[cfg(test)]
    pub fn add(&self, a: &Fp, b: &Fp) -> Fp {
        let n = a.len().max(b.len());
        let mut out: Fp = (0..n)
            .map(|k| (a.get(k).unwrap_or(&0) + b.get(k).unwrap_or(&0)) % self.p)
            .collect();
        trim(&mut out);
        out
    }

    pub fn sub(&self, a: &Fp, b: &Fp) -> Fp {
        let n = a.len().max(b.len());
        let mut out: Fp = (0..n)
            .map(|k| (a.get(k).unwrap_or(&0) + self.p - b.get(k).unwrap_or(&0)) % self.p)
            .collect();
        trim(&mut out);
        out
    }

    pub fn mul(&self, a: &Fp, b: &Fp) -> Fp {
        if a.is_empty() || b.is_empty() {
            return Vec::new();
        }
        // products stay below 2^60, so u128 sums never overflow
        let mut acc = vec![0u128; a.len() + b.len() - 1];
        for (i, &x) in a.iter().enumerate() {
            if x == 0 {
                continue;
            }
            for (j, &y) in b.iter().enumerate() {
                acc[i + j] += u128::from(x * y);
            }
        }
        let p = u128::from(self.p);
        let mut out: Fp = acc.into_iter().map(|c| (c % p) as u64).collect();
        trim(&mut out);
        out
    }

    pub fn scale(&self, a: &Fp, k: u64) -> Fp {
        let mut out: Fp = a.iter().map(|&x| x * k % self.p).collect();
        trim(&mut out);
        out
    }

    pub fn monic(&self, a: &Fp) -> Fp {
        match a.last() {
            None => Vec::new(),
            Some(&l) => self.scale(a, self.inv(l)),
        }
    }

    pub fn divrem(&self, a: &Fp, b: &Fp) -> (Fp, Fp) {
        assert!(!b.is_empty(), "division by zero polynomial");
        if a.len() < b.len() {
            return (Vec::new(), a.clone());
        }
        let n = b.len() - 1;
        let inv = self.inv(b[n]);
        let mut r = a.clone();
        let mut q = vec![0u64; a.len() - n];
        for d in (n..a.len()).rev() {
            let c = r[d] * inv % self.p;
            if c == 0 {
                continue;
            }
            q[d - n] = c;
            for k in 0..=n {
                r[k + d - n] = (r[k + d - n] + self.p - c * b[k] % self.p) % self.p;
            }
        }
        trim(&mut q);
        trim(&mut r);
        (q, r)
    }

    pub fn rem(&self, a: &Fp, b: &Fp) -> Fp {
        self.divrem(a, b).1
    }

    pub fn gcd(&self, a: &Fp, b: &Fp) -> Fp {
        let (mut x, mut y) = (a.clone(), b.clone());
        while !y.is_empty() {
            let r = self.rem(&x, &y);
            x = y;
            y = r;
        }
        self.monic(&x)
    }

    /// `(g, s, t)` with `s a + t b = g` monic.
    pub fn ext_gcd(&self, a: &Fp, b: &Fp) -> (Fp, Fp, Fp) {
        let (mut r0, mut r1) = (a.clone(), b.clone());
        let (mut s0, mut s1): (Fp, Fp) = (vec![1], Vec::new());
        let (mut t0, mut t1): (Fp, Fp) = (Vec::new(), vec![1]);
        while !r1.is_empty() {
            let (q, r) = self.divrem(&r0, &r1);
            let s2 = self.sub(&s0, &self.mul(&q, &s1));
            let t2 = self.sub(&t0, &self.mul(&q, &t1));
            r0 = std::mem::replace(&mut r1, r);
            s0 = std::mem::replace(&mut s1, s2);
            t0 = std::mem::replace(&mut t1, t2);
        }
        let l = self.inv(*r0.last().expect("gcd of zero polynomials"));
        (self.scale(&r0, l), self.scale(&s0, l), self.scale(&t0, l))
    }

    pub fn derivative(&self, a: &Fp) -> Fp {
        let mut out: Fp = a
            .iter()
            .enumerate()
            .skip(1)
            .map(|(k, &c)| (k as u64 % self.p) * c % self.p)
            .collect();
        trim(&mut out);
        out
    }

    pub fn is_squarefree(&self, a: &Fp) -> bool {
        let g = self.gcd(a, &self.derivative(a));
        g.len() == 1
    }

    /// Remainder modulo a monic `m`.
    fn rem_monic(&self, a: &mut Fp, m: &Fp) {
        let n = m.len() - 1;
        while a.len() > n {
            let d = a.len() - 1;
            let c = a[d];
            if c != 0 {
                for k in 0..n {
                    a[k + d - n] = (a[k + d - n] + self.p - c * m[k] % self.p) % self.p;
                }
            }
            a.pop();
        }
        trim(a);
    }

    pub fn powmod(&self, base: &Fp, e: &BigUint, m: &Fp) -> Fp {
        let m = self.monic(m);
        let mut result: Fp = vec![1];
        let mut b = base.clone();
        self.rem_monic(&mut b, &m);
        let bits = e.bits();
        for i in (0..bits).rev() {
            result = self.mul(&result, &result);
            self.rem_monic(&mut result, &m);
            if e.bit(i) {
                result = self.mul(&result, &b);
                self.rem_monic(&mut result, &m);
            }
        }
        result
    }

    /// Distinct-degree factorization of a monic square-free polynomial.
    pub fn distinct_degree(&self, f: &Fp) -> Vec<(Fp, usize)> {
        let mut out = Vec::new();
        let mut f = f.clone();
        let x: Fp = vec![0, 1];
        let mut h = x.clone();
        let p = BigUint::from(self.p);
        let mut d = 0;
        while f.len() > 2 * (d + 1) {
            d += 1;
            h = self.powmod(&h, &p, &f);
            let g = self.gcd(&f, &self.sub(&h, &x));
            if g.len() > 1 {
                f = self.divrem(&f, &g).0;
                h = self.rem(&h, &f);
                out.push((g, d));
            }
        }
        if f.len() > 1 {
            let deg = f.len() - 1;
            out.push((f, deg));
        }
        out
    }

    /// Cantor-Zassenhaus splitting of a product of degree-`d` irreducibles.
    pub fn equal_degree<R: Rng>(&self, f: &Fp, d: usize, rng: &mut R) -> Vec<Fp> {
        let n = f.len() - 1;
        if n == d {
            return vec![f.clone()];
        }
        let e = (BigUint::from(self.p).pow(d as u32) - 1u32) / 2u32;
        loop {
            let a: Fp = {
                let mut a: Fp = (0..n).map(|_| rng.gen_range(0..self.p)).collect();
                trim(&mut a);
                a
            };
            if a.len() <= 1 {
                continue;
            }
            let b = self.sub(&self.powmod(&a, &e, f), &vec![1]);
            let g = self.gcd(f, &b);
            if g.len() > 1 && g.len() < f.len() {
                let h = self.divrem(f, &g).0;
                let mut out = self.equal_degree(&g, d, rng);
                out.extend(self.equal_degree(&self.monic(&h), d, rng));
                return out;
            }
        }
    }

    /// Monic irreducible factors of a square-free polynomial.
    #[cfg(test)]
    pub fn factor_squarefree<R: Rng>(&self, f: &Fp, rng: &mut R) -> Vec<Fp> {
        let f = self.monic(f);
        let mut out = Vec::new();
        for (g, d) in self.distinct_degree(&f) {
            out.extend(self.equal_degree(&g, d, rng));
        }
        out
    }
}

pub(crate) fn trim(a: &mut Fp) {
    while a.last() == Some(&0) {
        a.pop();
    }
}

pub(crate) fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2;
    while d * d <= n {
        if n % d == 0 {
            return false;
        }
        d += 1;
    }
    true
}

/// A fixed list of primes just below `2^30`.
pub(crate) fn primes() -> &'static [u64] {
    static PRIMES: std::sync::OnceLock<Vec<u64>> = std::sync::OnceLock::new();
    PRIMES.get_or_init(|| {
        (1u64..(1 << 30))
            .rev()
            .filter(|&n| n % 2 == 1 && is_prime(n))
            .take(32)
            .collect()
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn factors_mod_p() {
        let fp = Field::new(101);
        let mut rng = ChaCha8Rng::seed_from_u64(1);
        // (x - 1)(x - 2)(x^2 + 2) mod 101; x^2 + 2 is irreducible since -2 is a non-residue
        let a = fp.mul(&fp.mul(&vec![100, 1], &vec![99, 1]), &vec![2, 0, 1]);
        let mut fs = fp.factor_squarefree(&a, &mut rng);
        fs.sort();
        assert_eq!(fs.len(), 3);
        let prod = fs.iter().fold(vec![1], |acc, f| fp.mul(&acc, f));
        assert_eq!(prod, a);
    }

    #[test]
    fn extended_gcd_identity() {
        let fp = Field::new(97);
        let a = vec![1, 2, 1];
        let b = vec![3, 1];
        let (g, s, t) = fp.ext_gcd(&a, &b);
        assert_eq!(g, vec![1]);
        assert_eq!(fp.add(&fp.mul(&s, &a), &fp.mul(&t, &b)), vec![1]);
    }
}
