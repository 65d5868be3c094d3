//! Sparse multivariate polynomials over the rationals.
//!
//! Variables are 1-based and ordered `x1 < x2 < ... < xn`. The level of a
//! polynomial is the index of its largest variable (0 for constants).

mod dense;
pub mod factor;
mod gcd;
mod parse;
mod resultant;

use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

pub use dense::ZPoly;
pub use factor::{factor, FactorMode, Factorization};
pub use gcd::{content_in, gcd, is_squarefree, primitive_part_in, squarefree_decomposition};
pub use parse::{parse_poly, parse_poly_with, ParseError};
pub(crate) use parse::decimal_to_rat;
pub use resultant::{discriminant, resultant};

pub type Rat = BigRational;

/// A variable `x_i`, 1-based.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Var(pub usize);

impl Var {
    pub fn index(self) -> usize {
        self.0
    }
}

impl fmt::Display for Var {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "x{}", self.0)
    }
}

/// Exponent vector; entry `k` is the exponent of `x_{k+1}`. No trailing zeros.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Default)]
pub struct Monomial(Vec<u32>);

impl Monomial {
    pub fn one() -> Self {
        Monomial(Vec::new())
    }

    pub fn var(v: Var, e: u32) -> Self {
        if e == 0 {
            return Self::one();
        }
        let mut exps = vec![0; v.0];
        exps[v.0 - 1] = e;
        Monomial(exps)
    }

    pub fn from_exps(mut exps: Vec<u32>) -> Self {
        while exps.last() == Some(&0) {
            exps.pop();
        }
        Monomial(exps)
    }

    pub fn exps(&self) -> &[u32] {
        &self.0
    }

    pub fn exp(&self, v: Var) -> u32 {
        self.0.get(v.0 - 1).copied().unwrap_or(0)
    }

    pub fn level(&self) -> usize {
        self.0.len()
    }

    pub fn total_degree(&self) -> u32 {
        self.0.iter().sum()
    }

    pub fn is_one(&self) -> bool {
        self.0.is_empty()
    }

    pub fn mul(&self, other: &Monomial) -> Monomial {
        let n = self.0.len().max(other.0.len());
        let exps = (0..n)
            .map(|k| self.0.get(k).unwrap_or(&0) + other.0.get(k).unwrap_or(&0))
            .collect();
        Monomial(exps)
    }

    pub fn divides(&self, other: &Monomial) -> bool {
        self.0.len() <= other.0.len() && self.0.iter().zip(&other.0).all(|(a, b)| a <= b)
    }

    /// `other / self`, assuming `self.divides(other)`.
    fn quotient_of(&self, other: &Monomial) -> Monomial {
        let exps = other
            .0
            .iter()
            .enumerate()
            .map(|(k, e)| e - self.0.get(k).unwrap_or(&0))
            .collect();
        Monomial::from_exps(exps)
    }

    fn with_exp(&self, v: Var, e: u32) -> Monomial {
        let mut exps = self.0.clone();
        if exps.len() < v.0 {
            exps.resize(v.0, 0);
        }
        exps[v.0 - 1] = e;
        Monomial::from_exps(exps)
    }

    fn grlex_cmp(&self, other: &Monomial) -> Ordering {
        self.total_degree()
            .cmp(&other.total_degree())
            .then_with(|| self.cmp(other))
    }
}

/// Lexicographic with the highest variable most significant.
impl Ord for Monomial {
    fn cmp(&self, other: &Self) -> Ordering {
        let n = self.0.len().max(other.0.len());
        for k in (0..n).rev() {
            let a = self.0.get(k).unwrap_or(&0);
            let b = other.0.get(k).unwrap_or(&0);
            match a.cmp(b) {
                Ordering::Equal => continue,
                o => return o,
            }
        }
        Ordering::Equal
    }
}

impl PartialOrd for Monomial {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// Sparse polynomial with no zero coefficients stored.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct MPoly {
    terms: BTreeMap<Monomial, Rat>,
}

impl MPoly {
    pub fn zero() -> Self {
        MPoly { terms: BTreeMap::new() }
    }

    pub fn one() -> Self {
        Self::constant(Rat::one())
    }

    pub fn constant(c: Rat) -> Self {
        let mut p = Self::zero();
        p.add_term(Monomial::one(), c);
        p
    }

    pub fn int(c: i64) -> Self {
        Self::constant(Rat::from_integer(c.into()))
    }

    pub fn var(v: Var) -> Self {
        Self::monomial(Monomial::var(v, 1), Rat::one())
    }

    pub fn monomial(m: Monomial, c: Rat) -> Self {
        let mut p = Self::zero();
        p.add_term(m, c);
        p
    }

    pub fn from_terms<I: IntoIterator<Item = (Monomial, Rat)>>(terms: I) -> Self {
        let mut p = Self::zero();
        for (m, c) in terms {
            p.add_term(m, c);
        }
        p
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_constant(&self) -> bool {
        self.terms.keys().all(Monomial::is_one)
    }

    pub fn constant_value(&self) -> Option<Rat> {
        if self.is_zero() {
            Some(Rat::zero())
        } else if self.is_constant() {
            self.terms.values().next().cloned()
        } else {
            None
        }
    }

    pub fn terms(&self) -> impl DoubleEndedIterator<Item = (&Monomial, &Rat)> {
        self.terms.iter()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    /// Index of the largest variable that occurs; 0 for constants.
    pub fn level(&self) -> usize {
        self.terms.keys().map(Monomial::level).max().unwrap_or(0)
    }

    pub fn main_var(&self) -> Option<Var> {
        match self.level() {
            0 => None,
            l => Some(Var(l)),
        }
    }

    pub fn degree_in(&self, v: Var) -> u32 {
        self.terms.keys().map(|m| m.exp(v)).max().unwrap_or(0)
    }

    /// Degree in the main variable.
    pub fn main_degree(&self) -> u32 {
        self.main_var().map_or(0, |v| self.degree_in(v))
    }

    pub fn total_degree(&self) -> u32 {
        self.terms.keys().map(Monomial::total_degree).max().unwrap_or(0)
    }

    pub fn vars(&self) -> Vec<Var> {
        let n = self.level();
        (1..=n)
            .map(Var)
            .filter(|&v| self.terms.keys().any(|m| m.exp(v) > 0))
            .collect()
    }

    pub fn add_term(&mut self, m: Monomial, c: Rat) {
        if c.is_zero() {
            return;
        }
        match self.terms.entry(m) {
            std::collections::btree_map::Entry::Vacant(e) => {
                e.insert(c);
            }
            std::collections::btree_map::Entry::Occupied(mut e) => {
                *e.get_mut() += c;
                if e.get().is_zero() {
                    e.remove();
                }
            }
        }
    }

    /// Leading term in the internal lex order (highest variable first).
    pub fn leading_term(&self) -> Option<(&Monomial, &Rat)> {
        self.terms.iter().next_back()
    }

    /// Leading coefficient under graded-lex order.
    pub fn grlex_leading_coeff(&self) -> Option<&Rat> {
        self.terms
            .iter()
            .max_by(|a, b| a.0.grlex_cmp(b.0))
            .map(|(_, c)| c)
    }

    pub fn scale(&self, c: &Rat) -> MPoly {
        if c.is_zero() {
            return MPoly::zero();
        }
        MPoly {
            terms: self.terms.iter().map(|(m, a)| (m.clone(), a * c)).collect(),
        }
    }

    pub fn mul_monomial(&self, m: &Monomial, c: &Rat) -> MPoly {
        if c.is_zero() {
            return MPoly::zero();
        }
        MPoly {
            terms: self.terms.iter().map(|(k, a)| (k.mul(m), a * c)).collect(),
        }
    }

    pub fn pow(&self, e: u32) -> MPoly {
        let mut acc = MPoly::one();
        let mut base = self.clone();
        let mut e = e;
        while e > 0 {
            if e & 1 == 1 {
                acc = &acc * &base;
            }
            e >>= 1;
            if e > 0 {
                base = &base * &base;
            }
        }
        acc
    }

    /// Coefficients `c_0, ..., c_d` of `self` viewed as a polynomial in `v`.
    pub fn coeffs_in(&self, v: Var) -> Vec<MPoly> {
        let d = self.degree_in(v) as usize;
        let mut out = vec![MPoly::zero(); d + 1];
        if self.is_zero() {
            return vec![];
        }
        for (m, c) in &self.terms {
            let e = m.exp(v) as usize;
            out[e].add_term(m.with_exp(v, 0), c.clone());
        }
        out
    }

    pub fn from_coeffs_in(v: Var, coeffs: &[MPoly]) -> MPoly {
        let mut p = MPoly::zero();
        for (e, c) in coeffs.iter().enumerate() {
            let xe = Monomial::var(v, e as u32);
            for (m, a) in &c.terms {
                p.add_term(m.mul(&xe), a.clone());
            }
        }
        p
    }

    /// Leading coefficient with respect to `v`.
    pub fn leading_coeff_in(&self, v: Var) -> MPoly {
        self.coeffs_in(v).pop().unwrap_or_else(MPoly::zero)
    }

    pub fn derivative(&self, v: Var) -> MPoly {
        let mut p = MPoly::zero();
        for (m, c) in &self.terms {
            let e = m.exp(v);
            if e > 0 {
                p.add_term(m.with_exp(v, e - 1), c * Rat::from_integer(e.into()));
            }
        }
        p
    }

    /// Substitute `x_v = value`.
    pub fn substitute(&self, v: Var, value: &Rat) -> MPoly {
        let mut p = MPoly::zero();
        let mut powers: Vec<Rat> = vec![Rat::one()];
        for (m, c) in &self.terms {
            let e = m.exp(v) as usize;
            while powers.len() <= e {
                let next = powers.last().unwrap() * value;
                powers.push(next);
            }
            p.add_term(m.with_exp(v, 0), c * &powers[e]);
        }
        p
    }

    /// Substitute `x_1 = values[0], ..., x_k = values[k-1]`.
    pub fn substitute_prefix(&self, values: &[Rat]) -> MPoly {
        let mut p = self.clone();
        for (k, value) in values.iter().enumerate() {
            if p.level() < k + 1 {
                break;
            }
            p = p.substitute(Var(k + 1), value);
        }
        p
    }

    /// Evaluate with `x_{k+1} = point[k]`; all variables must be assigned.
    pub fn eval(&self, point: &[Rat]) -> Rat {
        assert!(self.level() <= point.len(), "point too short for polynomial");
        let mut acc = Rat::zero();
        for (m, c) in &self.terms {
            let mut t = c.clone();
            for (k, &e) in m.0.iter().enumerate() {
                if e > 0 {
                    t *= num_traits::pow(point[k].clone(), e as usize);
                }
            }
            acc += t;
        }
        acc
    }

    /// Exact division; `None` if `other` does not divide `self`.
    pub fn exact_div(&self, other: &MPoly) -> Option<MPoly> {
        assert!(!other.is_zero(), "division by zero polynomial");
        if let Some(c) = other.constant_value() {
            return Some(self.scale(&c.recip()));
        }
        let (lm, lc) = other.leading_term().map(|(m, c)| (m.clone(), c.clone()))?;
        let mut q = MPoly::zero();
        let mut r = self.clone();
        while let Some((rm, rc)) = r.leading_term().map(|(m, c)| (m.clone(), c.clone())) {
            if !lm.divides(&rm) {
                return None;
            }
            let tm = lm.quotient_of(&rm);
            let tc = rc / &lc;
            for (m, c) in &other.terms {
                r.add_term(m.mul(&tm), -(c * &tc));
            }
            q.add_term(tm, tc);
        }
        Some(q)
    }

    /// Least common multiple of coefficient denominators and gcd of numerators.
    pub fn content(&self) -> Rat {
        let mut den = BigInt::one();
        let mut num = BigInt::zero();
        for c in self.terms.values() {
            den = den.lcm(c.denom());
            num = num.gcd(c.numer());
        }
        if num.is_zero() {
            return Rat::zero();
        }
        Rat::new(num, den)
    }

    /// Primitive integer polynomial with positive graded-lex leading coefficient.
    /// Nonzero constants normalize to 1; zero stays zero.
    pub fn normalize(&self) -> MPoly {
        self.normalize_with_unit().0
    }

    /// Returns `(q, u)` with `self = u * q` and `q` normalized.
    pub fn normalize_with_unit(&self) -> (MPoly, Rat) {
        if self.is_zero() {
            return (MPoly::zero(), Rat::one());
        }
        let mut u = self.content();
        if self.grlex_leading_coeff().unwrap().is_negative() {
            u = -u;
        }
        (self.scale(&u.recip()), u)
    }

    pub fn is_normalized(&self) -> bool {
        !self.is_zero() && self.normalize() == *self
    }

    /// Integer coefficients, if all coefficients are integral.
    pub fn is_integral(&self) -> bool {
        self.terms.values().all(|c| c.is_integer())
    }

    /// Dense integer univariate view; requires level <= 1 and integral coefficients.
    pub fn to_zpoly(&self) -> ZPoly {
        let v = Var(1);
        let d = self.degree_in(v) as usize;
        let mut c = vec![BigInt::zero(); if self.is_zero() { 0 } else { d + 1 }];
        for (m, a) in &self.terms {
            assert!(m.level() <= 1, "to_zpoly on multivariate polynomial");
            assert!(a.is_integer(), "to_zpoly on non-integral polynomial");
            c[m.exp(v) as usize] = a.to_integer();
        }
        ZPoly::new(c)
    }

    /// Univariate polynomial in `v` from dense integer coefficients.
    pub fn from_zpoly(p: &ZPoly, v: Var) -> MPoly {
        let mut out = MPoly::zero();
        for (e, c) in p.coeffs().iter().enumerate() {
            out.add_term(Monomial::var(v, e as u32), Rat::from_integer(c.clone()));
        }
        out
    }

    /// Rename variable `from` to `to`; `to` must not occur.
    pub fn rename_var(&self, from: Var, to: Var) -> MPoly {
        let mut out = MPoly::zero();
        for (m, c) in &self.terms {
            let e = m.exp(from);
            let m2 = m.with_exp(from, 0).mul(&Monomial::var(to, e));
            out.add_term(m2, c.clone());
        }
        out
    }

    /// Display with custom variable names (index `k` names `x_{k+1}`).
    pub fn display_with<'a>(&'a self, names: &'a [String]) -> PolyDisplay<'a> {
        PolyDisplay { poly: self, names: Some(names) }
    }
}

pub struct PolyDisplay<'a> {
    poly: &'a MPoly,
    names: Option<&'a [String]>,
}

impl fmt::Display for PolyDisplay<'_> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.poly.is_zero() {
            return write!(f, "0");
        }
        let mut terms: Vec<_> = self.poly.terms.iter().collect();
        terms.sort_by(|a, b| b.0.grlex_cmp(a.0));
        for (idx, (m, c)) in terms.into_iter().enumerate() {
            let neg = c.is_negative();
            let a = c.abs();
            if idx == 0 {
                if neg {
                    write!(f, "-")?;
                }
            } else {
                write!(f, "{}", if neg { " - " } else { " + " })?;
            }
            let mut factors = Vec::new();
            if !a.is_one() || m.is_one() {
                factors.push(a.to_string());
            }
            for (k, &e) in m.0.iter().enumerate() {
                if e == 0 {
                    continue;
                }
                let name = match self.names.and_then(|n| n.get(k)) {
                    Some(n) => n.clone(),
                    None => format!("x{}", k + 1),
                };
                if e == 1 {
                    factors.push(name);
                } else {
                    factors.push(format!("{name}^{e}"));
                }
            }
            write!(f, "{}", factors.join("*"))?;
        }
        Ok(())
    }
}

impl fmt::Display for MPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        PolyDisplay { poly: self, names: None }.fmt(f)
    }
}

impl fmt::Debug for MPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "MPoly({self})")
    }
}

/// Total order used for canonical sorting of polynomials: level, then main
/// degree, then term-wise comparison.
impl Ord for MPoly {
    fn cmp(&self, other: &Self) -> Ordering {
        self.level()
            .cmp(&other.level())
            .then_with(|| self.main_degree().cmp(&other.main_degree()))
            .then_with(|| self.total_degree().cmp(&other.total_degree()))
            .then_with(|| {
                let a = self.terms.iter().rev();
                let b = other.terms.iter().rev();
                for ((ma, ca), (mb, cb)) in a.zip(b) {
                    let o = ma.cmp(mb).then_with(|| ca.cmp(cb));
                    if o != Ordering::Equal {
                        return o;
                    }
                }
                self.terms.len().cmp(&other.terms.len())
            })
    }
}

impl PartialOrd for MPoly {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl std::ops::Add for &MPoly {
    type Output = MPoly;
    fn add(self, rhs: &MPoly) -> MPoly {
        let mut out = self.clone();
        for (m, c) in &rhs.terms {
            out.add_term(m.clone(), c.clone());
        }
        out
    }
}

impl std::ops::Sub for &MPoly {
    type Output = MPoly;
    fn sub(self, rhs: &MPoly) -> MPoly {
        let mut out = self.clone();
        for (m, c) in &rhs.terms {
            out.add_term(m.clone(), -c.clone());
        }
        out
    }
}

impl std::ops::Mul for &MPoly {
    type Output = MPoly;
    fn mul(self, rhs: &MPoly) -> MPoly {
        let mut out = MPoly::zero();
        for (ma, ca) in &self.terms {
            for (mb, cb) in &rhs.terms {
                out.add_term(ma.mul(mb), ca * cb);
            }
        }
        out
    }
}

impl std::ops::Neg for &MPoly {
    type Output = MPoly;
    fn neg(self) -> MPoly {
        MPoly {
            terms: self.terms.iter().map(|(m, c)| (m.clone(), -c.clone())).collect(),
        }
    }
}

macro_rules! forward_owned {
    ($tr:ident, $f:ident) => {
        impl std::ops::$tr for MPoly {
            type Output = MPoly;
            fn $f(self, rhs: MPoly) -> MPoly {
                std::ops::$tr::$f(&self, &rhs)
            }
        }
    };
}
forward_owned!(Add, add);
forward_owned!(Sub, sub);
forward_owned!(Mul, mul);

impl std::ops::Neg for MPoly {
    type Output = MPoly;
    fn neg(self) -> MPoly {
        -&self
    }
}

/// Rational from an `i64` numerator and denominator.
pub fn rat(n: i64, d: i64) -> Rat {
    Rat::new(n.into(), d.into())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(s: &str) -> MPoly {
        parse_poly(s).unwrap()
    }

    #[test]
    fn canonical_form_drops_zero_terms() {
        let a = p("x1 + x2");
        let b = p("x1 - x2");
        let s = &a + &b;
        assert_eq!(s, p("2*x1"));
        assert!((&a - &a).is_zero());
    }

    #[test]
    fn level_and_degrees() {
        let q = p("x1^2 + x2^2 - 1");
        assert_eq!(q.level(), 2);
        assert_eq!(q.main_degree(), 2);
        assert_eq!(q.total_degree(), 2);
        assert_eq!(MPoly::int(5).level(), 0);
    }

    #[test]
    fn normalization_makes_primitive_positive() {
        let q = p("-2*x1 + 4*x2 - 2");
        let n = q.normalize();
        assert_eq!(n, p("2*x2 - x1 - 1"));
        assert_eq!(p("3/4*x1 + 1/2").normalize(), p("3*x1 + 2"));
        assert_eq!(MPoly::int(-7).normalize(), MPoly::one());
    }

    #[test]
    fn exact_division() {
        let a = p("x1^2 - x2^2");
        let b = p("x1 - x2");
        assert_eq!(a.exact_div(&b), Some(p("x1 + x2")));
        assert_eq!(p("x1^2 + 1").exact_div(&b), None);
    }

    #[test]
    fn coefficient_view_roundtrip() {
        let q = p("x1*x2^2 + 3*x2 - x1^2");
        let cs = q.coeffs_in(Var(2));
        assert_eq!(cs.len(), 3);
        assert_eq!(cs[2], p("x1"));
        assert_eq!(MPoly::from_coeffs_in(Var(2), &cs), q);
    }

    #[test]
    fn substitution_and_eval() {
        let q = p("x1^2 + x2^2 - 1");
        let r = q.substitute(Var(1), &rat(1, 2));
        assert_eq!(r, p("x2^2 - 3/4"));
        assert_eq!(q.eval(&[rat(1, 2), rat(1, 2)]), rat(-1, 2));
    }

    #[test]
    fn display_roundtrips() {
        let q = p("x1^2 + x2^2 - 1/3*x1*x3 + 2");
        let s = q.to_string();
        assert_eq!(p(&s), q);
    }
}
