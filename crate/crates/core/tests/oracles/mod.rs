//! Independent, textbook computations that the polynomial algebra is
//! checked against. Shared with the acceptance target.

use levelcell::poly::{discriminant, factor, is_squarefree, resultant, FactorMode, MPoly, Rat, Var, ZPoly};
use levelcell::random::{random_poly, InstanceShape};
use levelcell::realalg::{isolate_real_roots, sign_at, RealAlg};
use num_traits::{One, Signed, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn random_z<R: Rng>(rng: &mut R, degree: usize, bound: i64) -> ZPoly {
    let mut c: Vec<i64> = (0..=degree).map(|_| rng.gen_range(-bound..=bound)).collect();
    while c[degree] == 0 {
        c[degree] = rng.gen_range(-bound..=bound);
    }
    ZPoly::from_i64(&c)
}

fn coeffs_rat(p: &ZPoly) -> Vec<Rat> {
    p.coeffs().iter().map(|c| Rat::from_integer(c.clone())).collect()
}

fn determinant(mut m: Vec<Vec<Rat>>) -> Rat {
    let n = m.len();
    let mut det = Rat::one();
    for col in 0..n {
        let Some(pivot) = (col..n).find(|&r| !m[r][col].is_zero()) else {
            return Rat::zero();
        };
        if pivot != col {
            m.swap(pivot, col);
            det = -det;
        }
        det *= m[col][col].clone();
        for r in col + 1..n {
            let f = &m[r][col] / &m[col][col];
            for c in col..n {
                let d = &f * &m[col][c];
                m[r][c] -= d;
            }
        }
    }
    det
}

/// Sylvester matrix determinant of two univariate polynomials.
fn sylvester(p: &ZPoly, q: &ZPoly) -> Rat {
    let (m, n) = (p.degree(), q.degree());
    let size = m + n;
    let row = |c: &[Rat], shift: usize| {
        // highest coefficient first
        let mut r = vec![Rat::zero(); size];
        for (k, a) in c.iter().rev().enumerate() {
            r[shift + k] = a.clone();
        }
        r
    };
    let (pc, qc) = (coeffs_rat(p), coeffs_rat(q));
    let rows = (0..n).map(|i| row(&pc, i)).chain((0..m).map(|i| row(&qc, i))).collect();
    determinant(rows)
}

pub fn resultant_matches_sylvester_determinant(pairs: usize) {
    let mut rng = ChaCha8Rng::seed_from_u64(11);
    for _ in 0..pairs {
        let (dp, dq) = (rng.gen_range(1..=4), rng.gen_range(1..=4));
        let p = random_z(&mut rng, dp, 5);
        let q = random_z(&mut rng, dq, 5);
        let r = resultant(&MPoly::from_zpoly(&p, Var(1)), &MPoly::from_zpoly(&q, Var(1)), Var(1));
        assert_eq!(r.constant_value().unwrap_or_else(Rat::zero), sylvester(&p, &q), "res({p:?}, {q:?})");
    }
}

pub fn bivariate_resultant_specializes_to_sylvester(pairs: usize) {
    let mut rng = ChaCha8Rng::seed_from_u64(12);
    let shape = InstanceShape { max_degree: 3, ..InstanceShape::default() };
    for _ in 0..pairs {
        let p = random_poly(&mut rng, 2, &shape);
        let q = random_poly(&mut rng, 2, &shape);
        let r = resultant(&p, &q, Var(2));
        for a in -3..=3 {
            let a = Rat::from_integer(a.into());
            let lp = p.leading_coeff_in(Var(2)).substitute(Var(1), &a);
            let lq = q.leading_coeff_in(Var(2)).substitute(Var(1), &a);
            if lp.is_zero() || lq.is_zero() {
                continue;
            }
            let to_z = |f: &MPoly| f.substitute(Var(1), &a).rename_var(Var(2), Var(1)).normalize_with_unit();
            let ((zp, up), (zq, uq)) = (to_z(&p), to_z(&q));
            // scale back from the primitive parts
            let expected = sylvester(&zp.to_zpoly(), &zq.to_zpoly())
                * up.pow(q.degree_in(Var(2)) as i32)
                * uq.pow(p.degree_in(Var(2)) as i32);
            assert_eq!(r.eval(std::slice::from_ref(&a)), expected, "p = {p}, q = {q}, x1 = {a}");
        }
    }
}

pub fn discriminant_identity_and_closed_forms(count: usize) {
    let mut rng = ChaCha8Rng::seed_from_u64(13);
    for _ in 0..count {
        let d = rng.gen_range(2..=4usize);
        let z = random_z(&mut rng, d, 6);
        let p = MPoly::from_zpoly(&z, Var(1));
        let disc = discriminant(&p, Var(1));
        let r = resultant(&p, &p.derivative(Var(1)), Var(1));
        let sign = if (d * (d - 1) / 2) % 2 == 1 { -Rat::one() } else { Rat::one() };
        let lc = p.leading_coeff_in(Var(1));
        assert_eq!(&(&disc * &lc).scale(&sign), &r);
        let c = coeffs_rat(&z);
        let closed = match d {
            2 => Some(&c[1] * &c[1] - Rat::from_integer(4.into()) * &c[2] * &c[0]),
            3 => {
                let (a, b, cc, dd) = (&c[3], &c[2], &c[1], &c[0]);
                let k = |n: i64| Rat::from_integer(n.into());
                Some(
                    b * b * cc * cc - k(4) * a * cc * cc * cc - k(4) * b * b * b * dd - k(27) * a * a * dd * dd
                        + k(18) * a * b * cc * dd,
                )
            }
            _ => None,
        };
        if let Some(closed) = closed {
            assert_eq!(disc.constant_value().unwrap_or_else(Rat::zero), closed);
        }
    }
}

fn rat_poly_rem(a: &[Rat], b: &[Rat]) -> Vec<Rat> {
    let mut r = a.to_vec();
    let lb = b.last().expect("nonzero divisor");
    while r.len() >= b.len() {
        let f = r.last().expect("nonempty") / lb;
        let shift = r.len() - b.len();
        for (k, c) in b.iter().enumerate() {
            let d = &f * c;
            r[shift + k] -= d;
        }
        r.pop();
        while r.last().is_some_and(Zero::is_zero) {
            r.pop();
        }
    }
    r
}

fn sign_variations(values: impl Iterator<Item = i32>) -> usize {
    let signs: Vec<i32> = values.filter(|&s| s != 0).collect();
    signs.windows(2).filter(|w| w[0] != w[1]).count()
}

/// Number of distinct real roots by Sturm's theorem.
fn sturm_count(z: &ZPoly) -> usize {
    let p = coeffs_rat(z);
    let dp: Vec<Rat> = p.iter().enumerate().skip(1).map(|(k, c)| c * Rat::from_integer(k.into())).collect();
    let mut seq = vec![p, dp];
    while let [.., a, b] = seq.as_slice() {
        if b.is_empty() {
            seq.pop();
            break;
        }
        let r: Vec<Rat> = rat_poly_rem(a, b).into_iter().map(|c| -c).collect();
        if r.is_empty() {
            break;
        }
        seq.push(r);
    }
    let lead_sign = |c: &[Rat]| if c.last().expect("nonzero").is_positive() { 1 } else { -1 };
    let at_pos = seq.iter().map(|c| lead_sign(c));
    let at_neg = seq.iter().map(|c| lead_sign(c) * if (c.len() - 1) % 2 == 0 { 1 } else { -1 });
    sign_variations(at_neg) - sign_variations(at_pos)
}

pub fn isolation_count_matches_sturm(count: usize) {
    let mut rng = ChaCha8Rng::seed_from_u64(14);
    for k in 0..count {
        let d = rng.gen_range(1..=6);
        // products of small factors make repeated and rational roots common
        let z = if k % 3 == 0 {
            let (da, db) = (rng.gen_range(1..=2), rng.gen_range(1..=3));
            let a = random_z(&mut rng, da, 3);
            let b = random_z(&mut rng, db, 3);
            a.mul(&b).mul(&a)
        } else {
            random_z(&mut rng, d, 10)
        };
        let p = MPoly::from_zpoly(&z, Var(1));
        let roots = isolate_real_roots(&p);
        assert_eq!(roots.len(), sturm_count(&z), "{z:?}");
        for w in roots.windows(2) {
            assert!(w[0] < w[1]);
        }
        for r in &roots {
            assert_eq!(sign_at(&p, std::slice::from_ref(r)), 0);
        }
    }
}

/// Distinct rational roots found by trying every `±a/b` with `a | c0`, `b | lc`.
fn rational_roots(z: &ZPoly) -> Vec<Rat> {
    let divisors = |n: i64| (1..=n.abs()).filter(move |d| n % d == 0);
    let c: Vec<i64> = z.coeffs().iter().map(|c| i64::try_from(c).expect("small")).collect();
    let mut out = Vec::new();
    if c[0] == 0 {
        out.push(Rat::zero());
    }
    let low = c.iter().copied().find(|&x| x != 0).expect("nonzero");
    for a in divisors(low) {
        for b in divisors(*c.last().expect("nonempty")) {
            for r in [Rat::new(a.into(), b.into()), Rat::new((-a).into(), b.into())] {
                if z.eval_rat(&r).is_zero() && !out.contains(&r) {
                    out.push(r);
                }
            }
        }
    }
    out
}

pub fn factorization_reconstitutes_products(count: usize) {
    let mut rng = ChaCha8Rng::seed_from_u64(15);
    let shape = InstanceShape { max_degree: 2, max_terms: 3, ..InstanceShape::default() };
    for k in 0..count {
        let level = 1 + k % 3;
        let count = rng.gen_range(1..=3);
        let pieces: Vec<MPoly> = (0..count)
            .map(|_| {
                let l = rng.gen_range(1..=level);
                random_poly(&mut rng, l, &shape)
            })
            .collect();
        let product = pieces.iter().fold(MPoly::int(rng.gen_range(1..=4)), |acc, p| &acc * p);
        for mode in [FactorMode::Finest, FactorMode::Squarefree] {
            let fz = factor(&product, mode);
            assert_eq!(fz.expand(), product, "{mode} of {product}");
            for (f, _) in &fz.factors {
                assert!(product.exact_div(f).is_some());
                if mode == FactorMode::Squarefree {
                    assert!(is_squarefree(f));
                }
            }
            if mode == FactorMode::Finest {
                let multiplicity: u32 = fz.factors.iter().map(|(_, m)| m).sum();
                assert!(multiplicity as usize >= pieces.len());
            }
        }
        if product.vars().len() == 1 {
            let z = product.rename_var(product.main_var().expect("nonconstant"), Var(1)).normalize().to_zpoly();
            let linear = factor(&product, FactorMode::Finest).polys().filter(|f| f.total_degree() == 1).count();
            assert_eq!(linear, rational_roots(&z).len(), "{product}");
        }
    }
}

pub fn algebraic_roots_order_against_rationals() {
    let sqrt2 = RealAlg::parse("(root \"x^2 - 2\" 2)").unwrap();
    assert!(sqrt2.compare_rat(&Rat::new(141.into(), 100.into())).is_gt());
    assert!(sqrt2.compare_rat(&Rat::new(142.into(), 100.into())).is_lt());
    let r = sqrt2.rational_between(&RealAlg::int(2));
    assert!(sqrt2.compare_rat(&r).is_lt() && r < Rat::from_integer(2.into()));
}
