//! Factorization of square-free primitive integer polynomials: modular
//! factorization, Hensel lifting and subset recombination.

use std::collections::BTreeSet;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use super::modp::{primes, Field, Fp};
use crate::poly::ZPoly;

const PRIMES_TRIED: usize = 5;

/// Irreducible factors of a square-free primitive polynomial with positive
/// leading coefficient. Factors are primitive with positive leading coefficient.
pub(crate) fn factor_squarefree_z(f: &ZPoly) -> Vec<ZPoly> {
    let f = f.primitive();
    let n = f.degree();
    if n <= 1 {
        return vec![f];
    }
    // x^k content: a zero constant term means x divides f
    if f.coeffs()[0].is_zero() {
        let g = f.exact_div(&ZPoly::x()).unwrap();
        let mut out = vec![ZPoly::x()];
        out.extend(factor_squarefree_z(&g));
        return out;
    }
    if n == 2 {
        return factor_quadratic(&f);
    }
    let mut rng = ChaCha8Rng::seed_from_u64(0x5eed ^ n as u64);
    // only the degree pattern is needed to compare primes; split just the best
    let mut best: Option<(Field, Vec<(Fp, usize)>, usize)> = None;
    let mut possible: Option<BTreeSet<usize>> = None;
    let mut tried = 0;
    for &p in primes() {
        if tried == PRIMES_TRIED {
            break;
        }
        let fp = Field::new(p);
        if fp.reduce_big(f.lc()) == 0 {
            continue;
        }
        let fm = fp.from_zpoly(&f);
        if !fp.is_squarefree(&fm) {
            continue;
        }
        tried += 1;
        let ddf = fp.distinct_degree(&fp.monic(&fm));
        let degrees: Vec<usize> = ddf.iter().flat_map(|(g, d)| std::iter::repeat_n(*d, (g.len() - 1) / d)).collect();
        if degrees.len() == 1 {
            return vec![f];
        }
        let sums = subset_degree_sums(&degrees);
        let merged: BTreeSet<usize> = match &possible {
            None => sums,
            Some(prev) => prev.intersection(&sums).copied().collect(),
        };
        if merged.iter().all(|&d| d == 0 || d == n) {
            return vec![f];
        }
        possible = Some(merged);
        if best.as_ref().is_none_or(|(_, _, k)| degrees.len() < *k) {
            best = Some((fp, ddf, degrees.len()));
        }
    }
    let (fp, ddf, _) = best.expect("no usable prime for modular factorization");
    let modular: Vec<Fp> = ddf.iter().flat_map(|(g, d)| fp.equal_degree(g, *d, &mut rng)).collect();
    let bound = coefficient_bound(&f);
    let p = BigInt::from(fp.p);
    let mut modulus = p.clone();
    while modulus <= bound {
        modulus *= &p;
    }
    let lifted = hensel_lift(&f, &modular, fp, &modulus);
    recombine(&f, lifted, &modulus)
}

/// `a x^2 + b x + c` splits iff its discriminant is a perfect square.
fn factor_quadratic(f: &ZPoly) -> Vec<ZPoly> {
    let [c, b, a] = f.coeffs() else { unreachable!("quadratic") };
    let disc = b * b - BigInt::from(4) * a * c;
    if disc.is_negative() || &disc.sqrt() * &disc.sqrt() != disc {
        return vec![f.clone()];
    }
    let r = disc.sqrt();
    // roots (-b ± r) / 2a give factors 2a x + b ∓ r
    let mut out: Vec<ZPoly> = [b - &r, b + &r]
        .into_iter()
        .map(|k| {
            let g = ZPoly::new(vec![k, BigInt::from(2) * a]).primitive();
            if g.lc().is_negative() { g.neg() } else { g }
        })
        .collect();
    out.sort_by(|x, y| x.coeffs().cmp(y.coeffs()));
    out
}

fn subset_degree_sums(degrees: &[usize]) -> BTreeSet<usize> {
    let mut sums = BTreeSet::from([0usize]);
    for d in degrees {
        let next: Vec<usize> = sums.iter().map(|s| s + d).collect();
        sums.extend(next);
    }
    sums
}

/// Twice `|lc|` times a Mignotte-style bound on factor coefficients.
fn coefficient_bound(f: &ZPoly) -> BigInt {
    let n = f.degree();
    let norm2_sq: BigInt = f.coeffs().iter().map(|c| c * c).sum();
    let norm2 = norm2_sq.sqrt() + 1;
    let b: BigInt = (BigInt::one() << n) * norm2 * f.lc().abs();
    b * 2
}

fn sym(c: &BigInt, m: &BigInt) -> BigInt {
    let r = c.mod_floor(m);
    if &r * 2 > *m {
        r - m
    } else {
        r
    }
}

fn reduce(a: &[BigInt], m: &BigInt) -> Vec<BigInt> {
    let mut out: Vec<BigInt> = a.iter().map(|c| c.mod_floor(m)).collect();
    while out.last().is_some_and(Zero::is_zero) {
        out.pop();
    }
    out
}

fn mul_mod(a: &[BigInt], b: &[BigInt], m: &BigInt) -> Vec<BigInt> {
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    let mut out = vec![BigInt::zero(); a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate() {
        for (j, y) in b.iter().enumerate() {
            out[i + j] += x * y;
        }
    }
    reduce(&out, m)
}

fn add_mod(a: &[BigInt], b: &[BigInt], m: &BigInt) -> Vec<BigInt> {
    let n = a.len().max(b.len());
    let z = BigInt::zero();
    let out: Vec<BigInt> =
        (0..n).map(|k| a.get(k).unwrap_or(&z) + b.get(k).unwrap_or(&z)).collect();
    reduce(&out, m)
}

fn sub_mod(a: &[BigInt], b: &[BigInt], m: &BigInt) -> Vec<BigInt> {
    let n = a.len().max(b.len());
    let z = BigInt::zero();
    let out: Vec<BigInt> =
        (0..n).map(|k| a.get(k).unwrap_or(&z) - b.get(k).unwrap_or(&z)).collect();
    reduce(&out, m)
}

/// Division by a monic polynomial modulo `m`.
fn divrem_monic(a: &[BigInt], b: &[BigInt], m: &BigInt) -> (Vec<BigInt>, Vec<BigInt>) {
    let n = b.len() - 1;
    debug_assert!(b[n].is_one());
    if a.len() < b.len() {
        return (Vec::new(), reduce(a, m));
    }
    let mut r = a.to_vec();
    let mut q = vec![BigInt::zero(); a.len() - n];
    for d in (n..a.len()).rev() {
        let c = r[d].mod_floor(m);
        if c.is_zero() {
            continue;
        }
        for k in 0..=n {
            r[k + d - n] -= &c * &b[k];
        }
        q[d - n] = c;
    }
    (reduce(&q, m), reduce(&r, m))
}

fn to_big(a: &Fp) -> Vec<BigInt> {
    a.iter().map(|&c| BigInt::from(c)).collect()
}

fn inverse_mod(a: &BigInt, m: &BigInt) -> BigInt {
    let e = a.mod_floor(m).extended_gcd(m);
    assert!(e.gcd.is_one(), "leading coefficient not invertible");
    e.x.mod_floor(m)
}

/// One quadratic Hensel step: from `f = g h mod m` to `mod m^2`.
#[allow(clippy::too_many_arguments)]
fn hensel_step(
    f: &[BigInt],
    g: &[BigInt],
    h: &[BigInt],
    s: &[BigInt],
    t: &[BigInt],
    m2: &BigInt,
) -> (Vec<BigInt>, Vec<BigInt>, Vec<BigInt>, Vec<BigInt>) {
    let e = sub_mod(f, &mul_mod(g, h, m2), m2);
    let (q, r) = divrem_monic(&mul_mod(s, &e, m2), h, m2);
    let g2 = add_mod(&add_mod(g, &mul_mod(t, &e, m2), m2), &mul_mod(&q, g, m2), m2);
    let h2 = add_mod(h, &r, m2);
    let b = sub_mod(
        &add_mod(&mul_mod(s, &g2, m2), &mul_mod(t, &h2, m2), m2),
        &[BigInt::one()],
        m2,
    );
    let (c, d) = divrem_monic(&mul_mod(s, &b, m2), &h2, m2);
    let s2 = sub_mod(s, &d, m2);
    let t2 = sub_mod(&sub_mod(t, &mul_mod(t, &b, m2), m2), &mul_mod(&c, &g2, m2), m2);
    (g2, h2, s2, t2)
}

/// Lift `f = lc * prod(factors) mod p` to monic factors modulo `modulus`.
fn hensel_lift(f: &ZPoly, factors: &[Fp], fp: Field, modulus: &BigInt) -> Vec<Vec<BigInt>> {
    lift_tree(f.coeffs(), factors, fp, modulus)
}

fn lift_tree(f: &[BigInt], factors: &[Fp], fp: Field, modulus: &BigInt) -> Vec<Vec<BigInt>> {
    if factors.len() == 1 {
        let lc = f.last().unwrap();
        let inv = inverse_mod(lc, modulus);
        let monic: Vec<BigInt> = f.iter().map(|c| (c * &inv).mod_floor(modulus)).collect();
        return vec![monic];
    }
    let mid = factors.len() / 2;
    let (left, right) = factors.split_at(mid);
    let lc_p = fp.reduce_big(f.last().unwrap());
    let gp = left.iter().fold(vec![lc_p], |acc, x| fp.mul(&acc, x));
    let hp = right.iter().fold(vec![1u64], |acc, x| fp.mul(&acc, x));
    let (one, sp, tp) = fp.ext_gcd(&gp, &hp);
    debug_assert_eq!(one, vec![1]);
    let p = BigInt::from(fp.p);
    let (mut g, mut h, mut s, mut t) = (to_big(&gp), to_big(&hp), to_big(&sp), to_big(&tp));
    let mut m = p;
    while &m < modulus {
        m = &m * &m;
        let step = hensel_step(f, &g, &h, &s, &t, &m);
        g = step.0;
        h = step.1;
        s = step.2;
        t = step.3;
    }
    let g = reduce(&g, modulus);
    let h = reduce(&h, modulus);
    let mut out = lift_tree(&g, left, fp, modulus);
    out.extend(lift_tree(&h, right, fp, modulus));
    out
}

fn sym_poly(a: &[BigInt], m: &BigInt) -> ZPoly {
    ZPoly::new(a.iter().map(|c| sym(c, m)).collect())
}

/// Zassenhaus subset recombination.
fn recombine(f: &ZPoly, mut lifted: Vec<Vec<BigInt>>, m: &BigInt) -> Vec<ZPoly> {
    let mut out = Vec::new();
    let mut f = f.clone();
    let mut size = 1;
    'outer: while 2 * size <= lifted.len() {
        let lc = f.lc().clone();
        let target_const = &lc * &f.coeffs()[0];
        for subset in combinations(lifted.len(), size) {
            // constant-term test
            let c0 = subset
                .iter()
                .fold(lc.clone(), |acc, &i| (acc * &lifted[i][0]).mod_floor(m));
            let c0 = sym(&c0, m);
            if c0.is_zero() || !(&target_const % &c0).is_zero() {
                continue;
            }
            let prod = subset
                .iter()
                .fold(vec![lc.clone()], |acc, &i| mul_mod(&acc, &lifted[i], m));
            let g = sym_poly(&prod, m).primitive();
            if let Some(q) = f.exact_div(&g) {
                out.push(g);
                f = q.primitive();
                let keep: Vec<Vec<BigInt>> = lifted
                    .into_iter()
                    .enumerate()
                    .filter(|(i, _)| !subset.contains(i))
                    .map(|(_, x)| x)
                    .collect();
                lifted = keep;
                continue 'outer;
            }
        }
        size += 1;
    }
    if f.degree() > 0 {
        out.push(f.primitive());
    }
    out
}

fn combinations(n: usize, k: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    if k > n {
        return out;
    }
    let mut idx: Vec<usize> = (0..k).collect();
    loop {
        out.push(idx.clone());
        let mut i = k;
        while i > 0 && idx[i - 1] == n - k + i - 1 {
            i -= 1;
        }
        if i == 0 {
            return out;
        }
        idx[i - 1] += 1;
        for j in i..k {
            idx[j] = idx[j - 1] + 1;
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn prod(fs: &[ZPoly]) -> ZPoly {
        fs.iter().fold(ZPoly::from_i64(&[1]), |a, b| a.mul(b))
    }

    #[test]
    fn combinations_enumerate() {
        assert_eq!(combinations(4, 2).len(), 6);
        assert_eq!(combinations(3, 3), vec![vec![0, 1, 2]]);
        assert_eq!(combinations(5, 1).len(), 5);
    }

    #[test]
    fn splits_product_of_quadratics() {
        let a = ZPoly::from_i64(&[-2, 0, 1]);
        let b = ZPoly::from_i64(&[1, 1, 3]);
        let c = ZPoly::from_i64(&[5, -1]);
        let f = prod(&[a.clone(), b.clone(), c.clone()]);
        let mut fs = factor_squarefree_z(&f);
        fs.sort_by_key(|g| g.degree());
        assert_eq!(fs.len(), 3);
        assert_eq!(prod(&fs).primitive(), f.primitive());
    }

    #[test]
    fn swinnerton_dyer_is_irreducible() {
        // x^4 - 10x^2 + 1 factors modulo every prime
        let f = ZPoly::from_i64(&[1, 0, -10, 0, 1]);
        assert_eq!(factor_squarefree_z(&f), vec![f]);
    }

    #[test]
    fn non_monic_factors() {
        let a = ZPoly::from_i64(&[3, 7]);
        let b = ZPoly::from_i64(&[-5, 0, 6]);
        let f = a.mul(&b);
        let fs = factor_squarefree_z(&f);
        assert_eq!(fs.len(), 2);
        assert_eq!(prod(&fs), f.primitive());
    }
}
