use std::collections::BTreeSet;

use proptest::prelude::*;
use voa_core::rational::q;
use voa_core::{AlgElem, BasisLabel, LieData};

const TYPES: [&str; 13] = ["A1", "A2", "A3", "A4", "B2", "B3", "B4", "C2", "C3", "C4", "D4", "F4", "G2"];

fn alg(s: &str) -> LieData {
    LieData::build(s.parse().unwrap(), 4).unwrap()
}

fn basis(g: &LieData) -> Vec<AlgElem> {
    (0..g.dim()).map(AlgElem::basis).collect()
}

/// Positive roots as the orbit of the simple roots under simple reflections,
/// using only the Cartan matrix.
fn root_closure(g: &LieData) -> BTreeSet<Vec<i64>> {
    let l = g.rank();
    let a = g.cartan_matrix();
    let mut seen: BTreeSet<Vec<i64>> = BTreeSet::new();
    let mut stack: Vec<Vec<i64>> = (0..l).map(|i| (0..l).map(|j| i64::from(i == j)).collect()).collect();
    while let Some(b) = stack.pop() {
        if !seen.insert(b.clone()) {
            continue;
        }
        for i in 0..l {
            let pairing: i64 = (0..l).map(|j| b[j] * a[i][j]).sum();
            let mut r = b.clone();
            r[i] -= pairing;
            stack.push(r);
        }
    }
    seen.into_iter().filter(|r| r.iter().all(|&c| c >= 0)).collect()
}

#[test]
fn positive_roots_match_the_reflection_closure() {
    let counts = [1, 3, 6, 10, 4, 9, 16, 4, 9, 16, 12, 24, 6];
    for (ty, n) in TYPES.iter().zip(counts) {
        let g = alg(ty);
        let ours: BTreeSet<Vec<i64>> = g.positive_roots().iter().cloned().collect();
        assert_eq!(ours, root_closure(&g), "{ty}");
        assert_eq!(ours.len(), n, "{ty}");
        assert_eq!(g.dim(), g.rank() + 2 * n, "{ty}");
    }
}

#[test]
fn jacobi_identity_on_all_basis_triples() {
    for ty in TYPES {
        let g = alg(ty);
        let b = basis(&g);
        let brackets: Vec<Vec<AlgElem>> = b.iter().map(|x| b.iter().map(|y| g.bracket(x, y)).collect()).collect();
        for i in 0..g.dim() {
            for j in 0..g.dim() {
                assert_eq!(brackets[i][j], -&brackets[j][i], "{ty} antisymmetry");
                for k in j + 1..g.dim() {
                    let s = &(&g.bracket(&brackets[i][j], &b[k]) + &g.bracket(&brackets[j][k], &b[i]))
                        + &g.bracket(&brackets[k][i], &b[j]);
                    assert!(s.is_zero(), "{ty}: Jacobi fails on ({i},{j},{k})");
                }
            }
        }
    }
}

#[test]
fn form_is_invariant_symmetric_and_root_orthogonal() {
    for ty in TYPES {
        let g = alg(ty);
        let b = basis(&g);
        for x in &b {
            for y in &b {
                assert_eq!(g.form(x, y), g.form(y, x));
                for z in &b {
                    let s = g.form(&g.bracket(x, y), z) + g.form(y, &g.bracket(x, z));
                    assert_eq!(s, q(0), "{ty}: invariance");
                }
            }
        }
        for i in 0..g.dim() {
            for j in 0..g.dim() {
                let (ci, cj) = (g.charge(i), g.charge(j));
                if !(ci + cj).is_zero() {
                    assert_eq!(*g.form_basis(i, j), q(0), "{ty}");
                }
            }
        }
        assert_eq!(g.root_norm(g.theta()), q(2), "{ty}");
    }
}

#[test]
fn root_sl2_triples() {
    for ty in TYPES {
        let g = alg(ty);
        for r in 0..g.num_positive_roots() {
            let (x, h, y) = g.sl2_triple(r);
            assert_eq!(g.bracket(&x, &y), h);
            assert_eq!(g.bracket(&h, &x), x.scale(&q(2)));
            assert_eq!(g.bracket(&h, &y), y.scale(&q(-2)));
            let ratio = q(2) / g.root_norm(r);
            assert_eq!(g.form(&h, &h), q(2) * &ratio, "{ty}");
            assert_eq!(g.form(&x, &y), ratio, "{ty}");
        }
    }
}

#[test]
fn structure_constants_follow_root_strings() {
    for ty in TYPES {
        let g = alg(ty);
        let mut roots: Vec<Vec<i64>> = g.positive_roots().to_vec();
        roots.extend(g.positive_roots().iter().map(|r| r.iter().map(|c| -c).collect::<Vec<_>>()));
        let set: BTreeSet<Vec<i64>> = roots.iter().cloned().collect();
        for a in &roots {
            for b in &roots {
                let sum: Vec<i64> = a.iter().zip(b).map(|(x, y)| x + y).collect();
                if !set.contains(&sum) {
                    continue;
                }
                let mut p = 0;
                loop {
                    let next: Vec<i64> = b.iter().zip(a).map(|(y, x)| y - (p + 1) * x).collect();
                    if !set.contains(&next) {
                        break;
                    }
                    p += 1;
                }
                let n = g.structure_constant(a, b).expect("defined on root pairs");
                assert_eq!(n.abs(), p + 1, "{ty}: N({a:?},{b:?})");
            }
        }
    }
}

#[test]
fn cartan_labels_come_between_the_root_vectors() {
    let g = alg("B3");
    let n = g.num_positive_roots();
    for i in 0..n {
        assert!(matches!(g.label(i), BasisLabel::NegRoot(_)));
        assert!(matches!(g.label(n + g.rank() + i), BasisLabel::PosRoot(_)));
    }
    for i in 0..g.rank() {
        assert!(matches!(g.label(n + i), BasisLabel::Cartan(_)));
    }
}

fn weyl_words() -> impl Strategy<Value = (usize, Vec<usize>)> {
    (0..TYPES.len()).prop_flat_map(|t| {
        let rank = alg(TYPES[t]).rank();
        (Just(t), proptest::collection::vec(1..=rank, 0..6))
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn weyl_automorphisms_preserve_bracket_and_form((t, word) in weyl_words()) {
        let g = alg(TYPES[t]);
        let s = g.weyl_element(&word).unwrap();
        let b = basis(&g);
        for x in &b {
            for y in &b {
                prop_assert_eq!(s.apply(&g.bracket(x, y)), g.bracket(&s.apply(x), &s.apply(y)));
                prop_assert_eq!(g.form(&s.apply(x), &s.apply(y)), g.form(x, y));
            }
        }
        // theta goes to a root, and x_theta to a multiple of that root vector
        let theta = g.positive_roots()[g.theta()].clone();
        let image = g.reflect_root(&word, &theta);
        let target = g.root_vector_index(&image).expect("image of a root is a root");
        let xt = s.apply(&g.x_pos(g.theta()));
        let (idx, c) = voa_core::WeylAutomorphism::as_single_term(&xt).expect("single root vector");
        prop_assert_eq!(idx, target);
        prop_assert!(c != q(0));
        for i in 0..g.rank() {
            let h = s.apply(&AlgElem::basis(g.cartan_index(i)));
            prop_assert!(h.terms().all(|(j, _)| matches!(g.label(j), BasisLabel::Cartan(_))));
        }
    }
}
