//! Sample-dependent facts with memoization: factorizations, signs and roots.

use std::cell::RefCell;
use std::collections::HashMap;

use crate::poly::{factor, gcd, FactorMode, MPoly};
use crate::realalg::{roots_in_extension, sign_at, RealAlg};

/// The sample of one construction plus caches of everything evaluated on it.
pub struct Context {
    sample: Vec<RealAlg>,
    mode: FactorMode,
    factors: RefCell<HashMap<MPoly, Vec<MPoly>>>,
    signs: RefCell<HashMap<MPoly, i32>>,
    roots: RefCell<HashMap<MPoly, Option<Vec<RealAlg>>>>,
}

impl Context {
    pub fn new(sample: Vec<RealAlg>, mode: FactorMode) -> Self {
        Context {
            sample,
            mode,
            factors: RefCell::default(),
            signs: RefCell::default(),
            roots: RefCell::default(),
        }
    }

    pub fn sample(&self) -> &[RealAlg] {
        &self.sample
    }

    pub fn prefix(&self, k: usize) -> Vec<RealAlg> {
        self.sample[..k].to_vec()
    }

    pub fn mode(&self) -> FactorMode {
        self.mode
    }

    /// Distinct nonconstant factors of `p` in canonical order.
    pub fn factors(&self, p: &MPoly) -> Vec<MPoly> {
        if p.is_constant() {
            return Vec::new();
        }
        if let Some(fs) = self.factors.borrow().get(p) {
            return fs.clone();
        }
        let fs: Vec<MPoly> = factor(p, self.mode).polys().cloned().collect();
        self.factors.borrow_mut().insert(p.clone(), fs.clone());
        fs
    }

    pub fn is_reducible(&self, p: &MPoly) -> bool {
        let fs = self.factors(p);
        !(fs.len() == 1 && fs[0] == *p)
    }

    /// Replace the square-free decompositions of `polys` by a common
    /// coprime basis, so that distinct basis elements share no factor.
    pub fn settle_basis(&self, polys: &[MPoly]) {
        if self.mode == FactorMode::Finest {
            return;
        }
        let mut basis: Vec<MPoly> = Vec::new();
        for p in polys {
            let mut pending = self.factors(p);
            while let Some(a) = pending.pop() {
                match basis.iter().position(|b| !gcd(&a, b).is_constant()) {
                    None => basis.push(a),
                    Some(k) => {
                        let b = basis.swap_remove(k);
                        let g = gcd(&a, &b).normalize();
                        for part in [a.exact_div(&g), b.exact_div(&g)].into_iter().flatten() {
                            if !part.is_constant() {
                                pending.push(part.normalize());
                            }
                        }
                        pending.push(g);
                    }
                }
            }
        }
        basis.sort();
        let mut cache = self.factors.borrow_mut();
        for p in polys {
            let parts = basis.iter().filter(|b| !gcd(p, b).is_constant()).cloned().collect();
            cache.insert(p.clone(), parts);
        }
        for b in &basis {
            cache.insert(b.clone(), vec![b.clone()]);
        }
    }

    /// Sign of `p` at the sample prefix matching its level.
    pub fn sign(&self, p: &MPoly) -> i32 {
        if let Some(&sg) = self.signs.borrow().get(p) {
            return sg;
        }
        let sg = sign_at(p, &self.sample[..p.level()]);
        self.signs.borrow_mut().insert(p.clone(), sg);
        sg
    }

    /// Real roots of `p` in its main variable over the sample prefix below
    /// it; `None` when `p` is nullified there.
    pub fn roots(&self, p: &MPoly) -> Option<Vec<RealAlg>> {
        if let Some(r) = self.roots.borrow().get(p) {
            return r.clone();
        }
        let r = roots_in_extension(p, &self.sample[..p.level() - 1]);
        self.roots.borrow_mut().insert(p.clone(), r.clone());
        r
    }
}
