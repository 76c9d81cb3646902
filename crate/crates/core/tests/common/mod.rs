#![allow(dead_code)]

use proptest::prelude::*;
use proptest::sample::Index;
use voa_core::fock::enumerate_weight;
use voa_core::rational::q;
use voa_core::{FockVector, LieData, PbwMonomial};

pub fn alg(name: &str) -> LieData {
    LieData::build(name.parse().unwrap(), 4).unwrap()
}

/// Monomials of weight at most `max_weight`, grouped by (weight, charge).
pub fn buckets(g: &LieData, max_weight: u32) -> Vec<Vec<PbwMonomial>> {
    (0..=max_weight).flat_map(|w| enumerate_weight(g, w).into_values()).collect()
}

/// Raw material for a random homogeneous vector: a bucket choice and terms.
#[derive(Clone, Debug)]
pub struct VecSeed {
    bucket: Index,
    terms: Vec<(Index, i64)>,
}

pub fn vec_seed() -> impl Strategy<Value = VecSeed> {
    (any::<Index>(), prop::collection::vec((any::<Index>(), (-3i64..=3).prop_filter("nonzero", |c| *c != 0)), 1..4))
        .prop_map(|(bucket, terms)| VecSeed { bucket, terms })
}

impl VecSeed {
    /// A homogeneous vector of weight at most `max_weight`; may be zero if terms cancel.
    pub fn build(&self, g: &LieData, max_weight: u32) -> FockVector {
        let all = buckets(g, max_weight);
        let bucket = self.bucket.get(&all);
        FockVector::from_terms(self.terms.iter().map(|(i, c)| (i.get(bucket).clone(), q(*c))))
    }

    /// A random canonical monomial of weight at most `max_weight`.
    pub fn monomial(&self, g: &LieData, max_weight: u32) -> FockVector {
        let all = buckets(g, max_weight);
        FockVector::from_monomial(self.terms[0].0.get(self.bucket.get(&all)).clone())
    }
}
