//! Closed rational intervals and polynomial range enclosures.

use std::ops::{Add, Mul};

use num_traits::{One, Signed, Zero};

use crate::poly::{MPoly, Rat};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Interval {
    pub lo: Rat,
    pub hi: Rat,
}

impl Interval {
    pub fn new(lo: Rat, hi: Rat) -> Self {
        debug_assert!(lo <= hi);
        Interval { lo, hi }
    }

    pub fn point(x: Rat) -> Self {
        Interval { lo: x.clone(), hi: x }
    }

    pub fn width(&self) -> Rat {
        &self.hi - &self.lo
    }

    /// `Some(sign)` when the interval excludes zero or is exactly zero.
    pub fn sign(&self) -> Option<i32> {
        if self.lo.is_positive() {
            Some(1)
        } else if self.hi.is_negative() {
            Some(-1)
        } else if self.lo.is_zero() && self.hi.is_zero() {
            Some(0)
        } else {
            None
        }
    }

    pub fn magnitude(&self) -> Rat {
        self.lo.abs().max(self.hi.abs())
    }

    pub fn pow(&self, e: u32) -> Interval {
        let mut acc = Interval::point(Rat::one());
        for _ in 0..e {
            acc = &acc * self;
        }
        if e % 2 == 0 && self.lo.is_negative() && self.hi.is_positive() {
            // even power of a box straddling zero
            acc.lo = Rat::zero();
        }
        acc
    }

    pub fn scale(&self, c: &Rat) -> Interval {
        let (a, b) = (&self.lo * c, &self.hi * c);
        if a <= b {
            Interval::new(a, b)
        } else {
            Interval::new(b, a)
        }
    }
}

impl Add for &Interval {
    type Output = Interval;
    fn add(self, o: &Interval) -> Interval {
        Interval::new(&self.lo + &o.lo, &self.hi + &o.hi)
    }
}

impl Mul for &Interval {
    type Output = Interval;
    fn mul(self, o: &Interval) -> Interval {
        let c = [&self.lo * &o.lo, &self.lo * &o.hi, &self.hi * &o.lo, &self.hi * &o.hi];
        let lo = c.iter().min().unwrap().clone();
        let hi = c.iter().max().unwrap().clone();
        Interval::new(lo, hi)
    }
}

/// Enclosure of `p` over the box (`vars[k]` ranges over `boxes[k]`).
pub fn eval_box(p: &MPoly, boxes: &[Interval]) -> Interval {
    let mut acc = Interval::point(Rat::zero());
    for (m, c) in p.terms() {
        let mut t = Interval::point(c.clone());
        for (k, &e) in m.exps().iter().enumerate() {
            if e > 0 {
                t = &t * &boxes[k].pow(e);
            }
        }
        acc = &acc + &t;
    }
    acc
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poly::{parse_poly, rat};

    #[test]
    fn enclosure_contains_values() {
        let p = parse_poly("x1^2 + x2^2 - 1").unwrap();
        let b = [Interval::new(rat(-1, 2), rat(1, 2)), Interval::new(rat(1, 4), rat(1, 2))];
        let e = eval_box(&p, &b);
        assert!(e.lo <= rat(-15, 16) && e.hi >= rat(-1, 2));
        assert_eq!(e.sign(), Some(-1));
    }

    #[test]
    fn even_power_straddling_zero() {
        let x = Interval::new(rat(-1, 1), rat(2, 1));
        assert_eq!(x.pow(2), Interval::new(rat(0, 1), rat(4, 1)));
    }
}
