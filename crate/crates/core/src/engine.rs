//! Mode actions on `V(k,0)`.
//!
//! `a(n)` acts on canonical monomials through the affine commutator
//! `[a(m), b(n)] = [a,b](m+n) + m<a,b> delta_{m+n,0} k`. General modes
//! `u_n v` (with `Y(u,z) = sum u_n z^{-n-1}`) are computed by peeling the
//! leading factor of `u = a(-m) w = (a(-1)|0>)_{-m} w` and applying the
//! iterate formula
//!
//! ```text
//! (a(-m) w)_s = sum_j C(m+j-1, j) a(-m-j) w_{s+j}
//!             - (-1)^m sum_j C(m+j-1, j) w_{s-m-j} a(j)
//! ```
//!
//! Both sums are finite on any target `v`: `w_{s+j} v` vanishes once its
//! weight `wt(w) + wt(v) - s - j - 1` is negative, and `a(j) v` vanishes for
//! `j > wt(v)`.

use alloc::rc::Rc;
use alloc::string::String;
use alloc::vec::Vec;
use core::cell::RefCell;

use hashbrown::HashMap;
use num_traits::{One, Zero};

use crate::fock::{enumerate_weight, FockVector, Grading, ModeFactor, PbwMonomial};
use crate::lie::{AlgElem, LieData, WeylAutomorphism};
use crate::rational::{binomial, q, Q};

type ApplyKey = (u16, i32, PbwMonomial);
type ProductKey = (PbwMonomial, i32, PbwMonomial);

/// The vacuum module `V(k,0)` at a fixed numeric level, with memo caches.
///
/// Caches live behind `RefCell`, so a module is meant to be used from one
/// thread; build one per worker to parallelize.
pub struct VacuumModule<'a> {
    lie: &'a LieData,
    level: u32,
    level_q: Q,
    slack: u32,
    apply_cache: RefCell<HashMap<ApplyKey, Rc<FockVector>>>,
    product_cache: RefCell<HashMap<ProductKey, Rc<FockVector>>>,
}

impl<'a> VacuumModule<'a> {
    pub fn new(lie: &'a LieData, level: u32) -> Self {
        Self::with_truncation_slack(lie, level, 0)
    }

    /// A module whose iterate sums run `slack` terms past the exact bounds.
    ///
    /// Results must not depend on `slack`; this exists for regression tests.
    pub fn with_truncation_slack(lie: &'a LieData, level: u32, slack: u32) -> Self {
        VacuumModule {
            lie,
            level,
            level_q: q(level as i64),
            slack,
            apply_cache: RefCell::new(HashMap::new()),
            product_cache: RefCell::new(HashMap::new()),
        }
    }

    pub fn lie(&self) -> &'a LieData {
        self.lie
    }

    pub fn level(&self) -> u32 {
        self.level
    }

    pub fn clear_caches(&self) {
        self.apply_cache.borrow_mut().clear();
        self.product_cache.borrow_mut().clear();
    }

    pub fn cache_sizes(&self) -> (usize, usize) {
        (self.apply_cache.borrow().len(), self.product_cache.borrow().len())
    }

    /// `a(n)` on a canonical monomial, `a` a basis element.
    pub fn apply_basis_monomial(&self, a: usize, n: i32, m: &PbwMonomial) -> Rc<FockVector> {
        let key = (a as u16, n, m.clone());
        if let Some(hit) = self.apply_cache.borrow().get(&key) {
            return hit.clone();
        }
        let result = Rc::new(self.apply_basis_uncached(a, n, m));
        self.apply_cache.borrow_mut().insert(key, result.clone());
        result
    }

    fn apply_basis_uncached(&self, a: usize, n: i32, m: &PbwMonomial) -> FockVector {
        if n < 0 {
            let f = ModeFactor::new(a, (-n) as u32);
            match m.factors().first() {
                None => return FockVector::from_monomial(PbwMonomial::from_factors(alloc::vec![f])),
                Some(head) if f <= *head => return FockVector::from_monomial(m.prepend(f)),
                _ => {}
            }
        }
        let Some((b, rest)) = m.split_first() else {
            // a(n)|0> = 0 for n >= 0
            return FockVector::zero();
        };
        let mb = b.depth as i32;
        let b_label = b.label as usize;
        // a(n) b(-mb) R = b(-mb) a(n) R + [a,b](n-mb) R + n<a,b> delta_{n,mb} k R
        let inner = self.apply_basis_monomial(a, n, &rest);
        let mut out = self.apply_basis_vector(b_label, -mb, &inner);
        for (c, coef) in self.lie.bracket_basis(a, b_label).terms() {
            let t = self.apply_basis_monomial(c, n - mb, &rest);
            out.add_scaled(&t, coef);
        }
        if n == mb {
            let f = self.lie.form_basis(a, b_label);
            if !f.is_zero() {
                out.add_term(rest, f * q(n as i64) * &self.level_q);
            }
        }
        out
    }

    /// `a(n) v` for a basis element `a`.
    pub fn apply_basis_vector(&self, a: usize, n: i32, v: &FockVector) -> FockVector {
        let mut out = FockVector::zero();
        for (m, c) in v.terms() {
            let t = self.apply_basis_monomial(a, n, m);
            out.add_scaled(&t, c);
        }
        out
    }

    /// `x(n) v` for an arbitrary element `x` of `g`.
    pub fn apply_mode(&self, x: &AlgElem, n: i32, v: &FockVector) -> FockVector {
        let mut out = FockVector::zero();
        for (a, c) in x.terms() {
            let t = self.apply_basis_vector(a, n, v);
            out.add_scaled(&t, c);
        }
        out
    }

    /// Canonical form of `a_1(n_1) ... a_r(n_r) |0>`; the rightmost mode acts first.
    pub fn straighten(&self, word: &[(usize, i32)]) -> FockVector {
        let mut v = FockVector::vacuum();
        for &(a, n) in word.iter().rev() {
            v = self.apply_basis_vector(a, n, &v);
            if v.is_zero() {
                break;
            }
        }
        v
    }

    /// Like [`straighten`](Self::straighten) with arbitrary elements of `g`.
    pub fn straighten_elems(&self, word: &[(AlgElem, i32)]) -> FockVector {
        let mut v = FockVector::vacuum();
        for (x, n) in word.iter().rev() {
            v = self.apply_mode(x, *n, &v);
            if v.is_zero() {
                break;
            }
        }
        v
    }

    /// `u_s v` for canonical monomials.
    pub fn product_monomial(&self, u: &PbwMonomial, s: i32, v: &PbwMonomial) -> Rc<FockVector> {
        let key = (u.clone(), s, v.clone());
        if let Some(hit) = self.product_cache.borrow().get(&key) {
            return hit.clone();
        }
        let result = Rc::new(self.product_uncached(u, s, v));
        self.product_cache.borrow_mut().insert(key, result.clone());
        result
    }

    fn product_uncached(&self, u: &PbwMonomial, s: i32, v: &PbwMonomial) -> FockVector {
        let Some((lead, w)) = u.split_first() else {
            return if s == -1 { FockVector::from_monomial(v.clone()) } else { FockVector::zero() };
        };
        let wu = u.weight() as i64;
        let wv = v.weight() as i64;
        let slack = self.slack as i64;
        if slack == 0 && wu + wv - s as i64 - 1 < 0 {
            return FockVector::zero();
        }
        let a = lead.label as usize;
        let m = lead.depth as i64;
        let ww = w.weight() as i64;
        let mut out = FockVector::zero();

        // sum_j C(m+j-1, j) a(-m-j) (w_{s+j} v)
        let top1 = ww + wv - s as i64 - 1 + slack;
        for j in 0..=top1.max(-1) {
            let inner = self.product_monomial(&w, s + j as i32, v);
            if inner.is_zero() {
                continue;
            }
            let coef = Q::from_integer(binomial(m + j - 1, j as u32));
            let t = self.apply_basis_vector(a, -(m + j) as i32, &inner);
            out.add_scaled(&t, &coef);
        }

        // - (-1)^m sum_j C(m+j-1, j) w_{s-m-j} (a(j) v)
        let sign = if m % 2 == 0 { -Q::one() } else { Q::one() };
        for j in 0..=(wv + slack) {
            let av = self.apply_basis_monomial(a, j as i32, v);
            if av.is_zero() {
                continue;
            }
            let coef = Q::from_integer(binomial(m + j - 1, j as u32)) * &sign;
            let mode = s - m as i32 - j as i32;
            for (t, c) in av.terms() {
                let r = self.product_monomial(&w, mode, t);
                out.add_scaled(&r, &(&coef * c));
            }
        }
        out
    }

    /// The vertex-operator mode `u_n v`.
    pub fn mode_product(&self, u: &FockVector, n: i32, v: &FockVector) -> FockVector {
        let mut out = FockVector::zero();
        for (um, uc) in u.terms() {
            for (vm, vc) in v.terms() {
                let r = self.product_monomial(um, n, vm);
                if !r.is_zero() {
                    out.add_scaled(&r, &(uc * vc));
                }
            }
        }
        out
    }

    /// `L(n) v = omega_{n+1} v`.
    pub fn l_mode(&self, omega: &FockVector, n: i32, v: &FockVector) -> FockVector {
        self.mode_product(omega, n + 1, v)
    }

    /// Factor-wise action of a Weyl automorphism followed by canonicalization.
    pub fn weyl_apply(&self, sigma: &WeylAutomorphism, v: &FockVector) -> FockVector {
        let mut out = FockVector::zero();
        for (m, c) in v.terms() {
            let word: Vec<(AlgElem, i32)> =
                m.factors().iter().map(|f| (sigma.image(f.label as usize).clone(), -(f.depth as i32))).collect();
            let img = self.straighten_elems(&word);
            out.add_scaled(&img, c);
        }
        out
    }

    /// Checks the Virasoro relations for `L(n) = omega_{n+1}`.
    ///
    /// The relations `[L(m), L(n)] = (m-n) L(m+n) + (m^3-m)/12 c delta_{m+n,0}`
    /// are tested for `|m|, |n| <= bound` on every canonical monomial of weight
    /// at most `bound`. The central charge is read off `L(2)L(-2)|0> = c/2 |0>`.
    /// `L(-1) u = u_{-2}|0>` is checked on `translation_samples`, which should
    /// lie in the subalgebra for which `omega` is the conformal vector.
    pub fn virasoro_check(
        &self,
        omega: &FockVector,
        bound: u32,
        translation_samples: &[FockVector],
    ) -> VirasoroReport {
        let mut report = VirasoroReport::default();
        match omega.grading(self.lie) {
            Grading::Homogeneous { weight: 2, charge } if charge.is_zero() => {}
            _ => {
                report.failure = Some(VirasoroFailure {
                    m: 0,
                    n: 0,
                    witness: omega.clone(),
                    reason: String::from("candidate is not a weight-2, charge-0 vector"),
                });
                return report;
            }
        }
        let vac = FockVector::vacuum();
        let t = self.l_mode(omega, 2, &self.l_mode(omega, -2, &vac));
        let half_c = t.coeff(&PbwMonomial::vacuum());
        if t != vac.scale(&half_c) {
            report.failure = Some(VirasoroFailure {
                m: 2,
                n: -2,
                witness: t,
                reason: String::from("L(2)L(-2)|0> is not a multiple of the vacuum"),
            });
            return report;
        }
        let c = half_c * q(2);
        report.central_charge = Some(c.clone());

        let b = bound as i32;
        let mut states: Vec<FockVector> = Vec::new();
        for w in 0..=bound {
            for monos in enumerate_weight(self.lie, w).into_values() {
                states.extend(monos.into_iter().map(FockVector::from_monomial));
            }
        }
        for v in &states {
            for m in -b..=b {
                let lm_v = self.l_mode(omega, m, v);
                for n in (m + 1)..=b {
                    let ln_v = self.l_mode(omega, n, v);
                    let lhs = &self.l_mode(omega, m, &ln_v) - &self.l_mode(omega, n, &lm_v);
                    let mut rhs = self.l_mode(omega, m + n, v).scale(&q((m - n) as i64));
                    if m + n == 0 {
                        let m3 = (m as i64).pow(3) - m as i64;
                        rhs.add_scaled(v, &(Q::new(m3.into(), 12.into()) * &c));
                    }
                    report.relations_checked += 1;
                    if lhs != rhs {
                        report.failure = Some(VirasoroFailure {
                            m,
                            n,
                            witness: v.clone(),
                            reason: String::from("Virasoro bracket relation fails"),
                        });
                        return report;
                    }
                }
            }
        }
        for u in translation_samples {
            let lhs = self.l_mode(omega, -1, u);
            let rhs = self.mode_product(u, -2, &vac);
            report.relations_checked += 1;
            if lhs != rhs {
                report.failure = Some(VirasoroFailure {
                    m: -1,
                    n: 0,
                    witness: u.clone(),
                    reason: String::from("L(-1) is not the translation operator"),
                });
                return report;
            }
        }
        report.is_virasoro = true;
        report
    }

    /// `L(0) v = delta v` and `L(n) v = 0` for `1 <= n <= wt(v)`.
    pub fn primary_check(&self, omega: &FockVector, v: &FockVector, delta: &Q) -> bool {
        let Some(wt) = v.weight() else {
            return false;
        };
        if self.l_mode(omega, 0, v) != v.scale(delta) {
            return false;
        }
        (1..=wt as i32).all(|n| self.l_mode(omega, n, v).is_zero())
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct VirasoroFailure {
    pub m: i32,
    pub n: i32,
    pub witness: FockVector,
    pub reason: String,
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct VirasoroReport {
    pub is_virasoro: bool,
    pub central_charge: Option<Q>,
    pub relations_checked: usize,
    pub failure: Option<VirasoroFailure>,
}
