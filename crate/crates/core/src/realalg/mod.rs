//! Real algebraic numbers: rationals, or a root of an irreducible integer
//! polynomial together with an isolating interval.

mod interval;
mod isolate;
mod sign;
mod tower;

use std::cmp::Ordering;
use std::fmt;
use std::sync::{Arc, Mutex};

use num_bigint::BigInt;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::poly::factor::distinct_irreducible_z;
use crate::poly::{parse_poly_with, MPoly, Rat, Var, ZPoly};

pub use interval::Interval;
pub use sign::{roots_in_extension, sign_at};

#[derive(Clone)]
pub enum RealAlg {
    Rational(Rat),
    Algebraic(Arc<Algebraic>),
}

/// A root of an irreducible polynomial of degree at least 2.
pub struct Algebraic {
    poly: ZPoly,
    /// 1-based position among the real roots of `poly`.
    index: usize,
    /// Sign of `poly` just left of the root.
    lo_sign: i32,
    interval: Mutex<(Rat, Rat)>,
}

impl Algebraic {
    fn bounds(&self) -> (Rat, Rat) {
        self.interval.lock().unwrap().clone()
    }

    /// Split the isolating interval at `x` (strictly inside, not a root).
    fn split_at(&self, x: &Rat) -> Ordering {
        let s = self.poly.sign_at(x);
        debug_assert!(s != 0);
        let mut iv = self.interval.lock().unwrap();
        if s == self.lo_sign {
            // root lies right of x
            if *x > iv.0 {
                iv.0 = x.clone();
            }
            Ordering::Greater
        } else {
            if *x < iv.1 {
                iv.1 = x.clone();
            }
            Ordering::Less
        }
    }

    fn bisect(&self) {
        let (lo, hi) = self.bounds();
        let mid = (lo + hi) / Rat::from_integer(2.into());
        self.split_at(&mid);
    }
}

impl RealAlg {
    pub fn rational(r: Rat) -> Self {
        RealAlg::Rational(r)
    }

    pub fn int(n: i64) -> Self {
        RealAlg::Rational(Rat::from_integer(n.into()))
    }

    pub fn is_rational(&self) -> bool {
        matches!(self, RealAlg::Rational(_))
    }

    pub fn as_rational(&self) -> Option<&Rat> {
        match self {
            RealAlg::Rational(r) => Some(r),
            _ => None,
        }
    }

    /// Primitive integer minimal polynomial.
    pub fn minimal_poly(&self) -> ZPoly {
        match self {
            RealAlg::Rational(r) => ZPoly::new(vec![-r.numer().clone(), r.denom().clone()]),
            RealAlg::Algebraic(a) => a.poly.clone(),
        }
    }

    /// Current isolating interval; `(r, r)` for rationals.
    pub fn interval(&self) -> (Rat, Rat) {
        match self {
            RealAlg::Rational(r) => (r.clone(), r.clone()),
            RealAlg::Algebraic(a) => a.bounds(),
        }
    }

    /// Halve the isolating interval; no effect on rationals.
    pub fn refine(&self) {
        if let RealAlg::Algebraic(a) = self {
            a.bisect();
        }
    }

    /// Refine until the interval is narrower than `width`.
    pub fn refine_to(&self, width: &Rat) {
        if let RealAlg::Algebraic(a) = self {
            loop {
                let (lo, hi) = a.bounds();
                if hi - lo < *width {
                    break;
                }
                a.bisect();
            }
        }
    }

    pub fn sign(&self) -> i32 {
        self.compare_rat(&Rat::zero()) as i32
    }

    pub fn to_f64(&self) -> f64 {
        match self {
            RealAlg::Rational(r) => r.to_f64().unwrap_or(f64::NAN),
            RealAlg::Algebraic(a) => {
                self.refine_to(&Rat::new(BigInt::one(), BigInt::one() << 60));
                let (lo, hi) = a.bounds();
                ((lo + hi) / Rat::from_integer(2.into())).to_f64().unwrap_or(f64::NAN)
            }
        }
    }

    /// Compare against a rational.
    pub fn compare_rat(&self, r: &Rat) -> Ordering {
        match self {
            RealAlg::Rational(x) => x.cmp(r),
            RealAlg::Algebraic(a) => {
                let (lo, hi) = a.bounds();
                if *r <= lo {
                    Ordering::Greater
                } else if *r >= hi {
                    Ordering::Less
                } else {
                    a.split_at(r)
                }
            }
        }
    }

    /// Exact total order.
    pub fn compare(&self, other: &RealAlg) -> Ordering {
        match (self, other) {
            (RealAlg::Rational(a), RealAlg::Rational(b)) => a.cmp(b),
            (_, RealAlg::Rational(b)) => self.compare_rat(b),
            (RealAlg::Rational(a), _) => other.compare_rat(a).reverse(),
            (RealAlg::Algebraic(a), RealAlg::Algebraic(b)) => {
                if a.poly == b.poly {
                    return a.index.cmp(&b.index);
                }
                // distinct irreducible polynomials share no roots
                loop {
                    let (alo, ahi) = a.bounds();
                    let (blo, bhi) = b.bounds();
                    if ahi <= blo {
                        return Ordering::Less;
                    }
                    if bhi <= alo {
                        return Ordering::Greater;
                    }
                    if ahi.clone() - alo > bhi.clone() - blo {
                        a.bisect();
                    } else {
                        b.bisect();
                    }
                }
            }
        }
    }

    /// Simplest rational strictly between `self < other`.
    pub fn rational_between(&self, other: &RealAlg) -> Rat {
        assert!(self.compare(other) == Ordering::Less, "empty gap");
        loop {
            let (_, ahi) = self.interval();
            let (blo, _) = other.interval();
            if ahi < blo {
                return simplest_between(&ahi, &blo);
            }
            if let Some(r) = self.as_rational() {
                if let RealAlg::Algebraic(_) = other {
                    if *r < blo {
                        return simplest_between(r, &blo);
                    }
                }
            }
            if let Some(r) = other.as_rational() {
                if ahi < *r {
                    return simplest_between(&ahi, r);
                }
            }
            self.refine();
            other.refine();
        }
    }

    /// A rational strictly below `self`.
    pub fn rational_below(&self) -> Rat {
        let (lo, _) = self.interval();
        let cand = lo.floor() - Rat::one();
        simplest_between(&(cand.clone() - Rat::one()), &(cand + Rat::one()))
    }

    /// A rational strictly above `self`.
    pub fn rational_above(&self) -> Rat {
        let (_, hi) = self.interval();
        let cand = hi.ceil() + Rat::one();
        simplest_between(&(cand.clone() - Rat::one()), &(cand + Rat::one()))
    }

    /// Parse `(root "<poly in x>" <index>)` or a rational literal.
    pub fn parse(src: &str) -> Result<RealAlg, String> {
        let s = src.trim();
        if let Some(body) = s.strip_prefix("(root").and_then(|b| b.strip_suffix(')')) {
            let body = body.trim();
            let start = body.find('"').ok_or("expected quoted polynomial")?;
            let end = body[start + 1..].find('"').ok_or("unterminated polynomial")? + start + 1;
            let poly_src = &body[start + 1..end];
            let index: usize = body[end + 1..]
                .trim()
                .parse()
                .map_err(|_| "expected root index".to_string())?;
            let p = parse_poly_with(poly_src, &["x".to_string()]).map_err(|e| e.to_string())?;
            let roots = isolate_real_roots(&p);
            return index
                .checked_sub(1)
                .and_then(|i| roots.get(i).cloned())
                .ok_or_else(|| format!("polynomial has no real root with index {index}"));
        }
        parse_rational(s).map(RealAlg::Rational)
    }
}

/// Parse `a`, `-a/b` or a decimal literal.
pub fn parse_rational(s: &str) -> Result<Rat, String> {
    let s = s.trim();
    let (neg, body) = match s.strip_prefix('-') {
        Some(b) => (true, b.trim()),
        None => (false, s),
    };
    let r = if let Some((n, d)) = body.split_once('/') {
        let n: BigInt = n.trim().parse().map_err(|_| format!("bad rational '{s}'"))?;
        let d: BigInt = d.trim().parse().map_err(|_| format!("bad rational '{s}'"))?;
        if d.is_zero() {
            return Err(format!("zero denominator in '{s}'"));
        }
        Rat::new(n, d)
    } else if let Some((i, f)) = body.split_once('.') {
        if !i.chars().chain(f.chars()).all(|c| c.is_ascii_digit()) || (i.is_empty() && f.is_empty()) {
            return Err(format!("bad decimal '{s}'"));
        }
        crate::poly::decimal_to_rat(i, f)
    } else {
        let n: BigInt = body.parse().map_err(|_| format!("bad rational '{s}'"))?;
        Rat::from_integer(n)
    };
    Ok(if neg { -r } else { r })
}

/// Rational with the smallest denominator in the open interval `(a, b)`.
pub fn simplest_between(a: &Rat, b: &Rat) -> Rat {
    assert!(a < b, "empty interval");
    if a.is_negative() && b.is_positive() {
        return Rat::zero();
    }
    if !a.is_negative() {
        simplest_pos(a, b)
    } else {
        -simplest_pos(&-b, &-a)
    }
}

/// Stern-Brocot descent for `0 <= a < b`.
fn simplest_pos(a: &Rat, b: &Rat) -> Rat {
    let fl = a.floor();
    if &(fl.clone() + Rat::one()) < b {
        return fl + Rat::one();
    }
    // a and b share the integer part (or b is exactly fl + 1)
    let a2 = a - &fl;
    let b2 = b - &fl;
    if a2.is_zero() {
        // (0, b2) with b2 <= 1: take 1/ceil(1/b2 + tiny)
        let k = (b2.recip()).floor() + Rat::one();
        return fl + k.recip();
    }
    // 1/x maps (a2, b2) to (1/b2, 1/a2)
    let inner = simplest_pos(&b2.recip(), &a2.recip());
    fl + inner.recip()
}

/// Real roots of a univariate polynomial (in any single variable), sorted.
/// The zero polynomial and constants have no roots.
pub fn isolate_real_roots(p: &MPoly) -> Vec<RealAlg> {
    if p.is_constant() {
        return Vec::new();
    }
    let vars = p.vars();
    assert!(vars.len() == 1, "isolate_real_roots on multivariate polynomial");
    let u = p.rename_var(vars[0], Var(1)).normalize().to_zpoly();
    let mut roots = Vec::new();
    for z in distinct_irreducible_z(&u) {
        if z.degree() == 1 {
            let c = z.coeffs();
            roots.push(RealAlg::Rational(Rat::new(-c[0].clone(), c[1].clone())));
        } else {
            roots.extend(roots_of_irreducible(&z));
        }
    }
    roots.sort_by(|a, b| a.compare(b));
    roots
}

/// Real roots of an irreducible integer polynomial of degree >= 2.
pub(crate) fn roots_of_irreducible(z: &ZPoly) -> Vec<RealAlg> {
    let z = z.primitive();
    isolate::isolate_irreducible(&z)
        .into_iter()
        .enumerate()
        .map(|(k, (lo, hi))| {
            let lo_sign = z.sign_at(&lo);
            RealAlg::Algebraic(Arc::new(Algebraic {
                poly: z.clone(),
                index: k + 1,
                lo_sign,
                interval: Mutex::new((lo, hi)),
            }))
        })
        .collect()
}

/// Rational roots are exact; others carry the index among real roots.
impl fmt::Display for RealAlg {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            RealAlg::Rational(r) => write!(f, "{r}"),
            RealAlg::Algebraic(a) => {
                let p = MPoly::from_zpoly(&a.poly, Var(1));
                write!(f, "(root \"{}\" {})", p.display_with(&["x".to_string()]), a.index)
            }
        }
    }
}

impl fmt::Debug for RealAlg {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self} ~ {:.6}", self.to_f64())
    }
}

impl PartialEq for RealAlg {
    fn eq(&self, other: &Self) -> bool {
        self.compare(other) == Ordering::Equal
    }
}

impl Eq for RealAlg {}

impl PartialOrd for RealAlg {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for RealAlg {
    fn cmp(&self, other: &Self) -> Ordering {
        self.compare(other)
    }
}

impl From<Rat> for RealAlg {
    fn from(r: Rat) -> Self {
        RealAlg::Rational(r)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poly::{parse_poly, rat};

    #[test]
    fn simplest_rationals() {
        assert_eq!(simplest_between(&rat(1, 3), &rat(1, 2)), rat(2, 5));
        assert_eq!(simplest_between(&rat(-1, 2), &rat(1, 2)), rat(0, 1));
        assert_eq!(simplest_between(&rat(3, 2), &rat(7, 2)), rat(2, 1));
        assert_eq!(simplest_between(&rat(-7, 2), &rat(-3, 2)), rat(-2, 1));
        assert_eq!(simplest_between(&rat(0, 1), &rat(1, 10)), rat(1, 11));
        assert_eq!(simplest_between(&rat(2, 1), &rat(21, 10)), rat(23, 11));
    }

    #[test]
    fn roots_of_reducible_polynomial_sorted() {
        let p = parse_poly("(x1^2 - 2)*(2*x1 - 1)*(x1^2 + 1)").unwrap();
        let roots = isolate_real_roots(&p);
        assert_eq!(roots.len(), 3);
        assert!(roots[0].to_f64() < -1.41 && roots[0].to_f64() > -1.42);
        assert_eq!(roots[1], RealAlg::rational(rat(1, 2)));
        assert!(roots[0] < roots[1] && roots[1] < roots[2]);
    }

    #[test]
    fn compare_distinct_polynomials() {
        let a = &isolate_real_roots(&parse_poly("x1^2 - 2").unwrap())[1];
        let b = &isolate_real_roots(&parse_poly("x1^3 - 3").unwrap())[0];
        // sqrt 2 = 1.414 < 3^(1/3) = 1.442
        assert_eq!(a.compare(b), Ordering::Less);
        assert_eq!(a.compare_rat(&rat(7, 5)), Ordering::Greater);
    }

    #[test]
    fn text_roundtrip() {
        let a = &isolate_real_roots(&parse_poly("x1^2 - 2").unwrap())[1];
        let s = a.to_string();
        assert_eq!(s, "(root \"x^2 - 2\" 2)");
        assert_eq!(RealAlg::parse(&s).unwrap(), *a);
        assert_eq!(RealAlg::parse("-3/4").unwrap(), RealAlg::rational(rat(-3, 4)));
        assert_eq!(RealAlg::parse("0.125").unwrap(), RealAlg::rational(rat(1, 8)));
    }

    #[test]
    fn rational_between_algebraics() {
        let r = isolate_real_roots(&parse_poly("x1^2 - 2").unwrap());
        let q = r[0].rational_between(&r[1]);
        assert_eq!(q, rat(0, 1));
        let s = RealAlg::rational(rat(7, 5)).rational_between(&r[1]);
        assert!(s > rat(7, 5) && RealAlg::rational(s.clone()) < r[1]);
    }
}
