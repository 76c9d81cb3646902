//! Graded subspaces of `V(k,0)` truncated at a maximal weight.
//!
//! A [`GradedBasis`] stores one echelon form per `(weight, charge)` bucket,
//! with canonical monomials as columns, so bases built by different routines
//! are directly comparable.

use alloc::collections::{BTreeMap, VecDeque};
use alloc::format;
use alloc::string::String;
use alloc::sync::Arc;
use alloc::vec::Vec;
use core::fmt;


use crate::engine::VacuumModule;
use crate::error::{Error, Result};
use crate::fock::{enumerate_weight, Charge, FockVector, Grading, PbwMonomial};
use crate::lie::LieData;
use crate::linalg::{int_row, intersect as intersect_rows, kernel, Echelon, IntRow};
use crate::rational::Q;

pub const DEFAULT_MAX_BUCKET_DIM: usize = 20_000;

/// Resource limits for subspace computations.
#[derive(Clone)]
pub struct Limits {
    /// Largest admissible dimension of a single `(weight, charge)` bucket.
    pub max_bucket_dim: usize,
    /// Polled during long loops; returning `true` aborts with `ResourceCap`.
    pub interrupt: Option<Arc<dyn Fn() -> bool + Send + Sync>>,
}

impl Default for Limits {
    fn default() -> Self {
        Limits { max_bucket_dim: DEFAULT_MAX_BUCKET_DIM, interrupt: None }
    }
}

impl fmt::Debug for Limits {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("Limits")
            .field("max_bucket_dim", &self.max_bucket_dim)
            .field("interrupt", &self.interrupt.is_some())
            .finish()
    }
}

impl Limits {
    pub fn poll(&self) -> Result<()> {
        match &self.interrupt {
            Some(f) if f() => Err(Error::ResourceCap(String::from("interrupted (wall-clock cap)"))),
            _ => Ok(()),
        }
    }

    fn check_dim(&self, weight: u32, charge: &Charge, dim: usize) -> Result<()> {
        if dim > self.max_bucket_dim {
            return Err(Error::ResourceCap(format!(
                "bucket (weight {weight}, charge {charge}) exceeds {} vectors",
                self.max_bucket_dim
            )));
        }
        Ok(())
    }
}

fn to_row(v: &FockVector) -> IntRow<PbwMonomial> {
    int_row(v.terms().map(|(m, c)| (m.clone(), c.clone())))
}

fn from_row(r: &IntRow<PbwMonomial>) -> FockVector {
    FockVector::from_terms(r.iter().map(|(m, c)| (m.clone(), Q::from_integer(c.clone()))))
}

#[derive(Clone, Debug, Default)]
struct Bucket {
    echelon: Echelon<PbwMonomial>,
    vectors: Vec<FockVector>,
}

/// A subspace of `V(k,0)_{<= max_weight}` spanned by homogeneous vectors.
#[derive(Clone, Debug)]
pub struct GradedBasis {
    max_weight: u32,
    rank: usize,
    buckets: BTreeMap<(u32, Charge), Bucket>,
}

impl GradedBasis {
    pub fn new(rank: usize, max_weight: u32) -> Self {
        GradedBasis { max_weight, rank, buckets: BTreeMap::new() }
    }

    pub fn max_weight(&self) -> u32 {
        self.max_weight
    }

    /// Inserts a homogeneous vector; returns whether the dimension grew.
    ///
    /// Vectors above the maximal weight are ignored.
    pub fn insert(&mut self, lie: &LieData, v: &FockVector, limits: &Limits) -> Result<bool> {
        let (weight, charge) = match v.grading(lie) {
            Grading::Zero => return Ok(false),
            Grading::Inhomogeneous => {
                return Err(Error::NonHomogeneous(format!("{}", v.display(lie))));
            }
            Grading::Homogeneous { weight, charge } => (weight, charge),
        };
        if weight > self.max_weight {
            return Ok(false);
        }
        let bucket = self.buckets.entry((weight, charge.clone())).or_default();
        if !bucket.echelon.insert(to_row(v)) {
            return Ok(false);
        }
        bucket.vectors.push(v.clone());
        limits.check_dim(weight, &charge, bucket.vectors.len())?;
        Ok(true)
    }

    /// Whether `v` lies in the span; each homogeneous component is tested.
    pub fn contains(&self, lie: &LieData, v: &FockVector) -> bool {
        v.homogeneous_components(lie).into_iter().all(|((w, c), comp)| {
            w <= self.max_weight
                && self.buckets.get(&(w, c)).is_some_and(|b| b.echelon.contains(to_row(&comp)))
        })
    }

    pub fn dim(&self, weight: u32) -> usize {
        // the empty charge sorts before every charge of this rank
        self.buckets
            .range((weight, Charge::zero(0))..)
            .take_while(|((w, _), _)| *w == weight)
            .map(|(_, b)| b.vectors.len())
            .sum()
    }

    pub fn dim_charge(&self, weight: u32, charge: &Charge) -> usize {
        self.buckets.get(&(weight, charge.clone())).map_or(0, |b| b.vectors.len())
    }

    /// `dim` at weights `0..=max_weight`.
    pub fn dims(&self) -> Vec<usize> {
        (0..=self.max_weight).map(|w| self.dim(w)).collect()
    }

    /// Charges with a nonzero bucket at `weight`.
    pub fn charges_at(&self, weight: u32) -> Vec<Charge> {
        self.buckets
            .iter()
            .filter(|((w, _), b)| *w == weight && !b.vectors.is_empty())
            .map(|((_, c), _)| c.clone())
            .collect()
    }

    /// The inserted basis vectors at `(weight, charge)`.
    pub fn bucket_vectors(&self, weight: u32, charge: &Charge) -> &[FockVector] {
        self.buckets.get(&(weight, charge.clone())).map_or(&[], |b| &b.vectors)
    }

    /// Echelon-form basis at `(weight, charge)`, with integral coefficients.
    pub fn echelon_vectors(&self, weight: u32, charge: &Charge) -> Vec<FockVector> {
        self.buckets
            .get(&(weight, charge.clone()))
            .map_or_else(Vec::new, |b| b.echelon.rows().iter().map(from_row).collect())
    }

    /// All basis vectors at `weight`, by charge.
    pub fn vectors_at(&self, weight: u32) -> impl Iterator<Item = &FockVector> {
        self.buckets.iter().filter(move |((w, _), _)| *w == weight).flat_map(|(_, b)| b.vectors.iter())
    }

    /// All basis vectors, by weight then charge.
    pub fn all_vectors(&self) -> impl Iterator<Item = &FockVector> {
        self.buckets.values().flat_map(|b| b.vectors.iter())
    }

    pub fn rank(&self) -> usize {
        self.rank
    }
}

/// One row of a quotient dimension table.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct QuotientRow {
    pub weight: u32,
    pub ambient: usize,
    pub ideal: usize,
    pub quotient: usize,
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct QuotientTable {
    pub rows: Vec<QuotientRow>,
}

impl QuotientTable {
    pub fn quotient_dims(&self) -> Vec<usize> {
        self.rows.iter().map(|r| r.quotient).collect()
    }
}

fn monomial_space(lie: &LieData, max_weight: u32, charge_zero_only: bool, limits: &Limits) -> Result<GradedBasis> {
    let mut out = GradedBasis::new(lie.rank(), max_weight);
    for w in 0..=max_weight {
        limits.poll()?;
        for (charge, monos) in enumerate_weight(lie, w) {
            if charge_zero_only && !charge.is_zero() {
                continue;
            }
            limits.check_dim(w, &charge, monos.len())?;
            for m in monos {
                out.insert(lie, &FockVector::from_monomial(m), limits)?;
            }
        }
    }
    Ok(out)
}

/// `V(k,0)_{<= max_weight}` with the monomial basis.
pub fn full_space(lie: &LieData, max_weight: u32, limits: &Limits) -> Result<GradedBasis> {
    monomial_space(lie, max_weight, false, limits)
}

/// The charge-zero part of `V(k,0)_{<= max_weight}`.
pub fn charge_zero_space(lie: &LieData, max_weight: u32, limits: &Limits) -> Result<GradedBasis> {
    monomial_space(lie, max_weight, true, limits)
}

/// A column of the Heisenberg image: (Cartan index, mode, monomial).
type BucketColumn = (usize, u32, PbwMonomial);

/// Heisenberg highest-weight vectors of weight `weight` and charge `charge`:
/// `v` with `h_i(m) v = 0` for all `i` and `m >= 1`. The zero modes act by
/// the charge automatically.
pub fn highest_weight_bucket(
    vm: &VacuumModule<'_>,
    charge: &Charge,
    weight: u32,
    limits: &Limits,
) -> Result<Vec<FockVector>> {
    let lie = vm.lie();
    let monos = enumerate_weight(lie, weight).remove(charge).unwrap_or_default();
    limits.check_dim(weight, charge, monos.len())?;
    let mut images: Vec<Vec<(BucketColumn, Q)>> = Vec::with_capacity(monos.len());
    for m in &monos {
        limits.poll()?;
        let v = FockVector::from_monomial(m.clone());
        let mut img = Vec::new();
        for i in 0..lie.rank() {
            for mode in 1..=weight {
                let t = vm.apply_basis_vector(lie.cartan_index(i), mode as i32, &v);
                img.extend(t.terms().map(|(tm, c)| ((i, mode, tm.clone()), c.clone())));
            }
        }
        images.push(img);
    }
    Ok(kernel(&images)
        .into_iter()
        .map(|rel| {
            FockVector::from_terms(rel.into_iter().map(|(j, c)| (monos[j].clone(), Q::from_integer(c))))
        })
        .collect())
}

/// The highest-weight space `N_charge` through `max_weight`; charge zero gives
/// the Heisenberg commutant `N(g,k)`.
pub fn highest_weight_space(
    vm: &VacuumModule<'_>,
    charge: &Charge,
    max_weight: u32,
    limits: &Limits,
) -> Result<GradedBasis> {
    let lie = vm.lie();
    let mut out = GradedBasis::new(lie.rank(), max_weight);
    for w in 0..=max_weight {
        for v in highest_weight_bucket(vm, charge, w, limits)? {
            out.insert(lie, &v, limits)?;
        }
    }
    Ok(out)
}

/// Assembles a graded basis from buckets computed elsewhere (e.g. in parallel).
pub fn from_buckets(
    lie: &LieData,
    max_weight: u32,
    buckets: impl IntoIterator<Item = Vec<FockVector>>,
    limits: &Limits,
) -> Result<GradedBasis> {
    let mut out = GradedBasis::new(lie.rank(), max_weight);
    for b in buckets {
        for v in b {
            out.insert(lie, &v, limits)?;
        }
    }
    Ok(out)
}

/// Mode range `n` with `wt(u) + wt(v) - n - 1` in `[0, max_weight]`.
fn target_modes(wu: u32, wv: u32, max_weight: u32) -> core::ops::RangeInclusive<i32> {
    let top = wu as i32 + wv as i32 - 1;
    (top - max_weight as i32)..=top
}

fn close_under(
    vm: &VacuumModule<'_>,
    basis: &mut GradedBasis,
    seeds: Vec<FockVector>,
    actors: &[FockVector],
    limits: &Limits,
) -> Result<()> {
    let lie = vm.lie();
    let max_weight = basis.max_weight();
    let mut queue: VecDeque<FockVector> = VecDeque::new();
    for s in seeds {
        if basis.insert(lie, &s, limits)? {
            queue.push_back(s);
        }
    }
    while let Some(v) = queue.pop_front() {
        limits.poll()?;
        let wv = v.weight().unwrap_or(0);
        for u in actors {
            let Some(wu) = u.weight() else { continue };
            for n in target_modes(wu, wv, max_weight) {
                let t = vm.mode_product(u, n, &v);
                if !t.is_zero() && basis.insert(lie, &t, limits)? {
                    queue.push_back(t);
                }
            }
        }
    }
    Ok(())
}

fn check_generators(lie: &LieData, gens: &[FockVector]) -> Result<()> {
    for g in gens {
        if let Grading::Inhomogeneous = g.grading(lie) {
            return Err(Error::NonHomogeneous(format!("{}", g.display(lie))));
        }
    }
    Ok(())
}

/// The subalgebra generated by `gens`, truncated at `max_weight`.
///
/// Computed as the span of `s1_{n1} ... sr_{nr} |0>` over generators `si`,
/// keeping only intermediate vectors of weight at most `max_weight`.
pub fn generated_subalgebra(
    vm: &VacuumModule<'_>,
    gens: &[FockVector],
    max_weight: u32,
    limits: &Limits,
) -> Result<GradedBasis> {
    let lie = vm.lie();
    check_generators(lie, gens)?;
    let mut out = GradedBasis::new(lie.rank(), max_weight);
    close_under(vm, &mut out, alloc::vec![FockVector::vacuum()], gens, limits)?;
    Ok(out)
}

/// The span of `ideal` and the subalgebra generated by `gens`.
///
/// Its dimensions minus those of `ideal` are the dimensions of the image of
/// the generated subalgebra in the quotient by `ideal`.
pub fn generated_subalgebra_modulo(
    vm: &VacuumModule<'_>,
    gens: &[FockVector],
    ideal: &GradedBasis,
    max_weight: u32,
    limits: &Limits,
) -> Result<GradedBasis> {
    let lie = vm.lie();
    check_generators(lie, gens)?;
    let mut out = GradedBasis::new(lie.rank(), max_weight);
    for v in ideal.all_vectors() {
        out.insert(lie, v, limits)?;
    }
    close_under(vm, &mut out, alloc::vec![FockVector::vacuum()], gens, limits)?;
    Ok(out)
}

/// The ideal of `ambient` generated by `gen`, truncated at `max_weight`.
///
/// Computed as the span of `u1_{n1} ... ur_{nr} gen` with `ui` running over
/// `multipliers`, which should generate `ambient` as a vertex algebra (or
/// span it). Fails if `gen` is not in `ambient` or a bucket of the result
/// leaves `ambient`.
pub fn generated_ideal(
    vm: &VacuumModule<'_>,
    gen: &FockVector,
    ambient: &GradedBasis,
    multipliers: &[FockVector],
    max_weight: u32,
    limits: &Limits,
) -> Result<GradedBasis> {
    let lie = vm.lie();
    check_generators(lie, core::slice::from_ref(gen))?;
    if !ambient.contains(lie, gen) {
        return Err(Error::GeneratorOutsideAmbient);
    }
    let mut out = GradedBasis::new(lie.rank(), max_weight.min(ambient.max_weight()));
    close_under(vm, &mut out, alloc::vec![gen.clone()], multipliers, limits)?;
    check_containment(lie, ambient, &out)?;
    Ok(out)
}

fn check_containment(lie: &LieData, ambient: &GradedBasis, sub: &GradedBasis) -> Result<()> {
    for ((w, _), b) in &sub.buckets {
        if b.vectors.iter().any(|v| !ambient.contains(lie, v)) {
            return Err(Error::ContainmentViolation { weight: *w });
        }
    }
    Ok(())
}

/// Dimensions of `ambient / ideal` at each weight up to the smaller truncation.
pub fn quotient_dims(lie: &LieData, ambient: &GradedBasis, ideal: &GradedBasis) -> Result<QuotientTable> {
    check_containment(lie, ambient, ideal)?;
    let top = ambient.max_weight().min(ideal.max_weight());
    let rows = (0..=top)
        .map(|w| {
            let (a, i) = (ambient.dim(w), ideal.dim(w));
            QuotientRow { weight: w, ambient: a, ideal: i, quotient: a - i }
        })
        .collect();
    Ok(QuotientTable { rows })
}

/// Bucket-wise intersection.
pub fn intersect(a: &GradedBasis, b: &GradedBasis) -> GradedBasis {
    let mut out = GradedBasis::new(a.rank(), a.max_weight().min(b.max_weight()));
    for (key, ba) in &a.buckets {
        if key.0 > out.max_weight {
            continue;
        }
        let Some(bb) = b.buckets.get(key) else { continue };
        let rows = intersect_rows(ba.echelon.rows(), bb.echelon.rows());
        let bucket = out.buckets.entry(key.clone()).or_default();
        for r in rows {
            if bucket.echelon.insert(r.clone()) {
                bucket.vectors.push(from_row(&r));
            }
        }
    }
    out.buckets.retain(|_, b| !b.vectors.is_empty());
    out
}

/// Whether every vector of `sub` lies in `sup`.
pub fn is_subspace(lie: &LieData, sub: &GradedBasis, sup: &GradedBasis) -> bool {
    sub.all_vectors().all(|v| sup.contains(lie, v))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn a1() -> LieData {
        LieData::build("A1".parse().unwrap(), 4).unwrap()
    }

    #[test]
    fn commutant_dims_for_a1() {
        let g = a1();
        let vm = VacuumModule::new(&g, 2);
        let n0 = highest_weight_space(&vm, &Charge::zero(1), 4, &Limits::default()).unwrap();
        assert_eq!(n0.dims(), [1, 0, 1, 2, 4]);
    }

    #[test]
    fn vacuum_generates_only_itself() {
        let g = a1();
        let vm = VacuumModule::new(&g, 1);
        let s = generated_subalgebra(&vm, &[], 3, &Limits::default()).unwrap();
        assert_eq!(s.dims(), [1, 0, 0, 0]);
    }

    #[test]
    fn bucket_cap_is_enforced() {
        let g = a1();
        let limits = Limits { max_bucket_dim: 2, interrupt: None };
        assert!(matches!(charge_zero_space(&g, 3, &limits), Err(Error::ResourceCap(_))));
    }

    #[test]
    fn interrupt_aborts() {
        let g = a1();
        let limits = Limits { max_bucket_dim: 100, interrupt: Some(Arc::new(|| true)) };
        assert!(matches!(full_space(&g, 2, &limits), Err(Error::ResourceCap(_))));
    }

    #[test]
    fn intersection_with_itself() {
        let g = a1();
        let vm = VacuumModule::new(&g, 2);
        let n0 = highest_weight_space(&vm, &Charge::zero(1), 3, &Limits::default()).unwrap();
        let z = charge_zero_space(&g, 3, &Limits::default()).unwrap();
        assert_eq!(intersect(&n0, &z).dims(), n0.dims());
        assert!(is_subspace(&g, &n0, &z));
    }
}
