mod common;

use common::{alg, vec_seed};
use proptest::prelude::*;
use proptest::sample::Index;
use voa_core::distinguished::omega_aff;
use voa_core::rational::{binomial, frac, q};
use voa_core::{FockVector, Grading, LieData, ModeFactor, PbwMonomial, Q, VacuumModule};

const TYPES: [&str; 3] = ["A1", "A2", "C2"];

/// The translation operator as the derivation `a(-n) -> n a(-n-1)`, fixing the vacuum.
fn translate(vm: &VacuumModule<'_>, v: &FockVector) -> FockVector {
    let mut out = FockVector::zero();
    for (m, c) in v.terms() {
        let fs = m.factors();
        for i in 0..fs.len() {
            let word: Vec<(usize, i32)> = fs
                .iter()
                .enumerate()
                .map(|(j, f)| (f.label as usize, -(f.depth as i32) - i32::from(i == j)))
                .collect();
            out.add_scaled(&vm.straighten(&word), &(c * q(fs[i].depth as i64)));
        }
    }
    out
}

fn weight(v: &FockVector) -> i32 {
    v.weight().map_or(0, |w| w as i32)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn mode_products_add_weights_and_charges(
        t in 0..TYPES.len(), k in 1u32..=3, u in vec_seed(), v in vec_seed(), n in -3i32..=4,
    ) {
        let g = alg(TYPES[t]);
        let vm = VacuumModule::new(&g, k);
        let (u, v) = (u.build(&g, 3), v.build(&g, 3));
        let out = vm.mode_product(&u, n, &v);
        if let (Grading::Homogeneous { weight: wu, charge: cu }, Grading::Homogeneous { weight: wv, charge: cv }) =
            (u.grading(&g), v.grading(&g))
        {
            let w = wu as i32 + wv as i32 - n - 1;
            if w < 0 {
                prop_assert!(out.is_zero());
            } else if !out.is_zero() {
                prop_assert_eq!(out.grading(&g), Grading::Homogeneous { weight: w as u32, charge: &cu + &cv });
            }
        }
    }

    #[test]
    fn commutator_formula_matches_nested_products(
        t in 0..TYPES.len(), k in 1u32..=2, u in vec_seed(), v in vec_seed(), w in vec_seed(),
        m in -2i32..=2, n in -2i32..=2,
    ) {
        let g = alg(TYPES[t]);
        let vm = VacuumModule::new(&g, k);
        let (u, v, w) = (u.build(&g, 3), v.build(&g, 3), w.build(&g, 2));
        let direct = &vm.mode_product(&u, m, &vm.mode_product(&v, n, &w))
            - &vm.mode_product(&v, n, &vm.mode_product(&u, m, &w));
        let mut sum = FockVector::zero();
        for j in 0..(weight(&u) + weight(&v)).max(0) {
            let c = Q::from_integer(binomial(m as i64, j as u32));
            let uv = vm.mode_product(&u, j, &v);
            sum.add_scaled(&vm.mode_product(&uv, m + n - j, &w), &c);
        }
        prop_assert_eq!(direct, sum);
    }

    #[test]
    fn skew_symmetry(t in 0..TYPES.len(), k in 1u32..=2, u in vec_seed(), v in vec_seed(), n in -3i32..=3) {
        // u_n v = sum_j (-1)^{n+j+1} / j! D^j (v_{n+j} u)
        let g = alg(TYPES[t]);
        let vm = VacuumModule::new(&g, k);
        let (u, v) = (u.build(&g, 3), v.build(&g, 3));
        let mut rhs = FockVector::zero();
        let top = weight(&u) + weight(&v) - n - 1;
        let mut fact = Q::from_integer(1.into());
        for j in 0..=top.max(0) {
            if j > 0 {
                fact *= q(j as i64);
            }
            let mut t = vm.mode_product(&v, n + j, &u);
            for _ in 0..j {
                t = translate(&vm, &t);
            }
            let sign = if (n + j + 1).rem_euclid(2) == 0 { q(1) } else { q(-1) };
            rhs.add_scaled(&t, &(sign / &fact));
        }
        prop_assert_eq!(vm.mode_product(&u, n, &v), rhs);
    }

    #[test]
    fn enlarged_truncation_changes_nothing(
        t in 0..TYPES.len(), k in 1u32..=3, u in vec_seed(), v in vec_seed(), n in -3i32..=3,
    ) {
        let g = alg(TYPES[t]);
        let exact = VacuumModule::new(&g, k);
        let padded = VacuumModule::with_truncation_slack(&g, k, 5);
        let (u, v) = (u.build(&g, 3), v.build(&g, 3));
        prop_assert_eq!(exact.mode_product(&u, n, &v), padded.mode_product(&u, n, &v));
    }

    #[test]
    fn weyl_lift_is_a_homomorphism(
        t in 0..TYPES.len(), k in 1u32..=2, word in prop::collection::vec(any::<Index>(), 0..4),
        u in vec_seed(), v in vec_seed(), n in -3i32..=3,
    ) {
        let g = alg(TYPES[t]);
        let vm = VacuumModule::new(&g, k);
        let simple: Vec<usize> = (1..=g.rank()).collect();
        let word: Vec<usize> = word.iter().map(|i| *i.get(&simple)).collect();
        let s = g.weyl_element(&word).unwrap();
        let (u, v) = (u.build(&g, 3), v.build(&g, 3));
        let lhs = vm.weyl_apply(&s, &vm.mode_product(&u, n, &v));
        let rhs = vm.mode_product(&vm.weyl_apply(&s, &u), n, &vm.weyl_apply(&s, &v));
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn sugawara_modes_act_as_derivations(
        t in 0..TYPES.len(), k in 1u32..=2, a in any::<Index>(), v in vec_seed(),
        m in -3i32..=3, n in -3i32..=3,
    ) {
        // [L_aff(m), a(n)] = -n a(m+n)
        let g = alg(TYPES[t]);
        let vm = VacuumModule::new(&g, k);
        let w = omega_aff(&vm).unwrap().vector;
        let labels: Vec<usize> = (0..g.dim()).collect();
        let a = *a.get(&labels);
        let v = v.build(&g, 2);
        let lhs = &vm.l_mode(&w, m, &vm.apply_basis_vector(a, n, &v))
            - &vm.apply_basis_vector(a, n, &vm.l_mode(&w, m, &v));
        prop_assert_eq!(lhs, vm.apply_basis_vector(a, m + n, &v).scale(&q(-(n as i64))));
    }
}

fn mono(fs: &[(usize, u32)]) -> FockVector {
    FockVector::from_monomial(PbwMonomial::from_factors(fs.iter().map(|&(l, d)| ModeFactor::new(l, d)).collect()))
}

#[test]
fn sugawara_translation_examples() {
    let g: LieData = alg("A2");
    let vm = VacuumModule::new(&g, 1);
    let w = omega_aff(&vm).unwrap().vector;
    for r in 0..g.num_positive_roots() {
        let (y, x) = (g.neg_index(r), g.pos_index(r));
        let got = vm.l_mode(&w, -1, &mono(&[(y, 1), (x, 1)]));
        let want = &vm.straighten(&[(y, -2), (x, -1)]) + &vm.straighten(&[(y, -1), (x, -2)]);
        assert_eq!(got, want);
    }
    for a in 0..g.dim() {
        for n in 1..=4u32 {
            assert_eq!(vm.l_mode(&w, -1, &mono(&[(a, n)])), mono(&[(a, n + 1)]).scale(&q(n as i64)));
        }
    }
    assert!(vm.l_mode(&w, 0, &FockVector::vacuum()).is_zero());
}

#[test]
fn l0_measures_weight() {
    let g = alg("C2");
    let vm = VacuumModule::new(&g, 2);
    let w = omega_aff(&vm).unwrap().vector;
    for monos in common::buckets(&g, 2) {
        for m in monos {
            let v = FockVector::from_monomial(m.clone());
            assert_eq!(vm.l_mode(&w, 0, &v), v.scale(&q(m.weight() as i64)));
        }
    }
}

#[test]
fn primary_vector_examples() {
    let g = alg("A1");
    let vm = VacuumModule::new(&g, 2);
    let w = omega_aff(&vm).unwrap().vector;
    assert!(vm.primary_check(&w, &FockVector::vacuum(), &q(0)));
    let a2 = mono(&[(g.pos_index(0), 2)]);
    assert!(!vm.primary_check(&w, &a2, &q(2)));
    assert_eq!(vm.l_mode(&w, 1, &a2), mono(&[(g.pos_index(0), 1)]).scale(&q(2)));
    let a1 = mono(&[(g.pos_index(0), 1)]);
    assert!(vm.primary_check(&w, &a1, &q(1)));
    assert!(!vm.primary_check(&w, &a1, &frac(1, 2)));
}

#[test]
fn virasoro_check_reports_a_witness() {
    let g = alg("A1");
    let vm = VacuumModule::new(&g, 2);
    let bad = omega_aff(&vm).unwrap().vector.scale(&q(2));
    let report = vm.virasoro_check(&bad, 2, &[]);
    assert!(!report.is_virasoro);
    assert!(report.failure.is_some());
    let not_weight_two = mono(&[(g.cartan_index(0), 1)]);
    assert!(vm.virasoro_check(&not_weight_two, 2, &[]).failure.is_some());
}
