mod common;

use std::collections::BTreeMap;

use common::alg;
use voa_core::distinguished::{parafermion_singular, theta_singular};
use voa_core::subspaces::{
    charge_zero_space, full_space, generated_ideal, generated_subalgebra, highest_weight_space, intersect,
    quotient_dims,
};
use voa_core::{Charge, Error, FockVector, LieData, Limits, VacuumModule};

/// Coefficients of prod_b prod_m (1 - q^m z^{charge(b)})^{-1} at charge `lambda`.
fn vacuum_character(g: &LieData, lambda: &Charge, top: u32) -> Vec<i64> {
    let mut c: BTreeMap<(u32, Charge), i64> = BTreeMap::new();
    c.insert((0, Charge::zero(g.rank())), 1);
    for b in 0..g.dim() {
        for m in 1..=top {
            for w in m..=top {
                let add: Vec<(Charge, i64)> =
                    c.iter().filter(|((x, _), _)| *x == w - m).map(|((_, ch), n)| (ch + g.charge(b), *n)).collect();
                for (ch, n) in add {
                    *c.entry((w, ch)).or_insert(0) += n;
                }
            }
        }
    }
    (0..=top).map(|w| c.get(&(w, lambda.clone())).copied().unwrap_or(0)).collect()
}

/// prod_{n>=1} (1 - q^n)^power as a truncated series.
fn euler_power(power: i32, top: u32) -> Vec<i64> {
    let mut s = vec![0i64; top as usize + 1];
    s[0] = 1;
    for _ in 0..power.unsigned_abs() {
        for n in 1..=top as usize {
            if power > 0 {
                for w in (n..=top as usize).rev() {
                    s[w] -= s[w - n];
                }
            } else {
                for w in n..=top as usize {
                    s[w] += s[w - n];
                }
            }
        }
    }
    s
}

fn mul(a: &[i64], b: &[i64]) -> Vec<i64> {
    (0..a.len()).map(|w| (0..=w).map(|j| a[j] * b[w - j]).sum()).collect()
}

/// Vacuum character of the (p, p') Virasoro minimal model.
fn minimal_model_vacuum(p: i64, pp: i64, top: u32) -> Vec<i64> {
    let mut numer = vec![0i64; top as usize + 1];
    for n in -(top as i64 + 2)..=(top as i64 + 2) {
        let e1 = p * pp * n * n + n * (pp - p);
        let e2 = (p * n + 1) * (pp * n + 1);
        if (0..=top as i64).contains(&e1) {
            numer[e1 as usize] += 1;
        }
        if (0..=top as i64).contains(&e2) {
            numer[e2 as usize] -= 1;
        }
    }
    mul(&numer, &euler_power(-1, top))
}

fn as_i64(v: Vec<usize>) -> Vec<i64> {
    v.into_iter().map(|x| x as i64).collect()
}

#[test]
fn commutant_dims_match_the_character_oracle() {
    for (ty, k, top) in [("A1", 2, 5), ("A1", 3, 4), ("A2", 1, 4), ("C2", 1, 3)] {
        let g = alg(ty);
        let vm = VacuumModule::new(&g, k);
        for lambda in [Charge::zero(g.rank()), Charge(g.positive_roots()[g.theta()].clone())] {
            let expected = mul(&vacuum_character(&g, &lambda, top), &euler_power(g.rank() as i32, top));
            let n = highest_weight_space(&vm, &lambda, top, &Limits::default()).unwrap();
            assert_eq!(as_i64(n.dims()), expected, "{ty} k={k} charge {lambda}");
        }
    }
}

#[test]
fn sl2_commutant_dims() {
    let g = alg("A1");
    for k in [2, 3] {
        let vm = VacuumModule::new(&g, k);
        let n0 = highest_weight_space(&vm, &Charge::zero(1), 4, &Limits::default()).unwrap();
        assert_eq!(n0.dims(), [1, 0, 1, 2, 4]);
    }
}

#[test]
fn heisenberg_decomposition_is_consistent() {
    for (ty, top) in [("A1", 5), ("A2", 4)] {
        let g = alg(ty);
        let vm = VacuumModule::new(&g, 1);
        let z = Charge::zero(g.rank());
        let n0 = highest_weight_space(&vm, &z, top, &Limits::default()).unwrap();
        let v0 = charge_zero_space(&g, top, &Limits::default()).unwrap();
        let partitions = euler_power(-(g.rank() as i32), top);
        assert_eq!(as_i64(v0.dims()), mul(&partitions, &as_i64(n0.dims())), "{ty}");
    }
}

#[test]
fn charge_zero_space_small_cases() {
    let g = alg("A2");
    let v0 = charge_zero_space(&g, 1, &Limits::default()).unwrap();
    assert_eq!(v0.dims(), [1, 2]);
    let g = alg("A1");
    assert_eq!(charge_zero_space(&g, 4, &Limits::default()).unwrap().dims(), [1, 1, 3, 6, 13]);
}

#[test]
fn ising_quotient_matches_the_minimal_model() {
    let g = alg("A1");
    let vm = VacuumModule::new(&g, 2);
    let lim = Limits::default();
    let top = 5;
    let n0 = highest_weight_space(&vm, &Charge::zero(1), top, &lim).unwrap();
    let sing = parafermion_singular(&vm).unwrap().vector;
    let mult: Vec<FockVector> = n0.all_vectors().cloned().collect();
    let ideal = generated_ideal(&vm, &sing, &n0, &mult, top, &lim).unwrap();
    let table = quotient_dims(&g, &n0, &ideal).unwrap();
    assert_eq!(as_i64(table.quotient_dims()), minimal_model_vacuum(3, 4, top));
    assert_eq!(minimal_model_vacuum(3, 4, 6), [1, 0, 1, 1, 2, 2, 3]);
}

#[test]
fn level_one_parafermions_are_trivial_and_ideals_agree() {
    let g = alg("A1");
    let vm = VacuumModule::new(&g, 1);
    let lim = Limits::default();
    let top = 4;
    let n0 = highest_weight_space(&vm, &Charge::zero(1), top, &lim).unwrap();
    let mult: Vec<FockVector> = n0.all_vectors().cloned().collect();
    let ideal = generated_ideal(&vm, &parafermion_singular(&vm).unwrap().vector, &n0, &mult, top, &lim).unwrap();
    assert_eq!(quotient_dims(&g, &n0, &ideal).unwrap().quotient_dims(), [1, 0, 0, 0, 0]);

    let full = full_space(&g, top, &lim).unwrap();
    let gens: Vec<FockVector> = (0..g.dim()).map(|a| vm.straighten(&[(a, -1)])).collect();
    let j = generated_ideal(&vm, &theta_singular(&vm).unwrap().vector, &full, &gens, top, &lim).unwrap();
    assert_eq!(intersect(&j, &n0).dims(), ideal.dims());
    // the simple quotient L(1,0) of sl2 has g as its weight-one space
    assert_eq!(quotient_dims(&g, &full, &j).unwrap().rows[1].quotient, 3);
}

#[test]
fn trivial_generators() {
    let g = alg("A1");
    let vm = VacuumModule::new(&g, 2);
    let lim = Limits::default();
    let n0 = highest_weight_space(&vm, &Charge::zero(1), 4, &lim).unwrap();
    let mult: Vec<FockVector> = n0.all_vectors().cloned().collect();
    let whole = generated_ideal(&vm, &FockVector::vacuum(), &n0, &mult, 4, &lim).unwrap();
    assert_eq!(whole.dims(), n0.dims());
    let zero = generated_ideal(&vm, &FockVector::zero(), &n0, &mult, 4, &lim).unwrap();
    assert_eq!(zero.dims(), [0, 0, 0, 0, 0]);
    let vac = generated_subalgebra(&vm, &[FockVector::vacuum()], 4, &lim).unwrap();
    assert_eq!(vac.dims(), [1, 0, 0, 0, 0]);
}

#[test]
fn closure_is_idempotent() {
    let g = alg("A1");
    let vm = VacuumModule::new(&g, 2);
    let lim = Limits::default();
    let gens = vec![vm.straighten(&[(g.neg_index(0), -2), (g.pos_index(0), -1)])];
    let once = generated_subalgebra(&vm, &gens, 4, &lim).unwrap();
    let basis: Vec<FockVector> = once.all_vectors().cloned().collect();
    let twice = generated_subalgebra(&vm, &basis, 4, &lim).unwrap();
    assert_eq!(once.dims(), twice.dims());
    assert!(voa_core::subspaces::is_subspace(&g, &twice, &once));
}

#[test]
fn errors_are_reported() {
    let g = alg("A1");
    let vm = VacuumModule::new(&g, 1);
    let lim = Limits::default();
    let n0 = highest_weight_space(&vm, &Charge::zero(1), 3, &lim).unwrap();
    let x = vm.straighten(&[(g.pos_index(0), -1)]);
    assert_eq!(generated_ideal(&vm, &x, &n0, &[], 3, &lim).unwrap_err(), Error::GeneratorOutsideAmbient);
    let mixed = &x + &FockVector::vacuum();
    assert!(matches!(generated_subalgebra(&vm, &[mixed], 3, &lim), Err(Error::NonHomogeneous(_))));
    let full = full_space(&g, 3, &lim).unwrap();
    assert!(matches!(quotient_dims(&g, &n0, &full), Err(Error::ContainmentViolation { .. })));
}
