//! Named vectors of `V(k,0)`: conformal vectors, the rank-one `W3` vectors
//! attached to positive roots, and the singular vectors generating the
//! maximal ideals.

use alloc::string::{String, ToString};
use alloc::vec::Vec;
use alloc::{format, vec};

use crate::engine::VacuumModule;
use crate::error::{Error, Result};
use crate::fock::{Charge, FockVector, Grading};
use crate::lie::{AlgElem, LieData};
use crate::rational::{q, Q};

/// A vector together with its expected grading and a short description.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct NamedVector {
    pub name: String,
    pub vector: FockVector,
    pub weight: u32,
    pub charge: Charge,
    pub note: String,
}

impl NamedVector {
    fn new(lie: &LieData, name: String, vector: FockVector, weight: u32, charge: Charge, note: &str) -> Self {
        debug_assert!(match vector.grading(lie) {
            Grading::Homogeneous { weight: w, charge: ref c } => w == weight && *c == charge,
            Grading::Zero => true,
            Grading::Inhomogeneous => false,
        });
        NamedVector { name, vector, weight, charge, note: note.to_string() }
    }

    /// Whether the stored vector has the expected grading.
    pub fn grading_matches(&self, lie: &LieData) -> bool {
        self.vector.grading(lie) == Grading::Homogeneous { weight: self.weight, charge: self.charge.clone() }
    }
}

fn positive_level(vm: &VacuumModule<'_>) -> Result<Q> {
    match vm.level() {
        0 => Err(Error::InvalidLevel(0)),
        k => Ok(q(k as i64)),
    }
}

fn check_root(lie: &LieData, r: usize) -> Result<()> {
    if r < lie.num_positive_roots() {
        Ok(())
    } else {
        Err(Error::NotPositiveRoot(format!("root index {r}")))
    }
}

/// `sum_i u_i(-1) u^i(-1) |0>` for a basis `u_i` of the Cartan subalgebra and its dual.
pub fn cartan_casimir(vm: &VacuumModule<'_>, basis: &[AlgElem]) -> FockVector {
    let dual = vm.lie().dual_basis(basis);
    let mut out = FockVector::zero();
    for (u, d) in basis.iter().zip(&dual) {
        out += &vm.straighten_elems(&[(u.clone(), -1), (d.clone(), -1)]);
    }
    out
}

fn root_casimir(vm: &VacuumModule<'_>) -> FockVector {
    let lie = vm.lie();
    let mut out = FockVector::zero();
    for r in 0..lie.num_positive_roots() {
        // dual of x_a is (|a|^2/2) x_{-a}; both signs of the root contribute
        let s = lie.root_norm(r) / q(2);
        let (p, n) = (lie.pos_index(r), lie.neg_index(r));
        out.add_scaled(&vm.straighten(&[(p, -1), (n, -1)]), &s);
        out.add_scaled(&vm.straighten(&[(n, -1), (p, -1)]), &s);
    }
    out
}

/// The Sugawara vector built from an arbitrary Cartan basis.
pub fn omega_aff_with_cartan_basis(vm: &VacuumModule<'_>, basis: &[AlgElem]) -> Result<FockVector> {
    let k = positive_level(vm)?;
    let pref = Q::new(1.into(), (q(2) * (k + q(vm.lie().dual_coxeter() as i64))).to_integer());
    let mut v = cartan_casimir(vm, basis);
    v += &root_casimir(vm);
    Ok(v.scale(&pref))
}

/// The Sugawara conformal vector of `V(k,0)`, central charge `k dim g / (k + h)`.
pub fn omega_aff(vm: &VacuumModule<'_>) -> Result<NamedVector> {
    let lie = vm.lie();
    let (basis, _) = lie.cartan_dual_pair();
    let v = omega_aff_with_cartan_basis(vm, &basis)?;
    Ok(NamedVector::new(lie, "omega_aff".into(), v, 2, Charge::zero(lie.rank()), "Sugawara vector"))
}

/// The conformal vector of the Heisenberg subalgebra, central charge `rank`.
pub fn omega_h(vm: &VacuumModule<'_>) -> Result<NamedVector> {
    let lie = vm.lie();
    let k = positive_level(vm)?;
    let (basis, _) = lie.cartan_dual_pair();
    let v = cartan_casimir(vm, &basis).scale(&(q(1) / (q(2) * k)));
    Ok(NamedVector::new(lie, "omega_h".into(), v, 2, Charge::zero(lie.rank()), "Heisenberg conformal vector"))
}

/// `omega_aff - omega_h`, the conformal vector of the Heisenberg commutant.
pub fn omega_parafermion(vm: &VacuumModule<'_>) -> Result<NamedVector> {
    let lie = vm.lie();
    let v = &omega_aff(vm)?.vector - &omega_h(vm)?.vector;
    Ok(NamedVector::new(lie, "omega".into(), v, 2, Charge::zero(lie.rank()), "coset conformal vector"))
}

/// Applies `word` (rightmost first) to the vacuum, with the root triple of `r`
/// substituted for the symbols `x`, `h`, `y`.
fn triple_word(vm: &VacuumModule<'_>, r: usize, word: &[(char, i32)]) -> FockVector {
    let lie = vm.lie();
    let (x, h, y) = (lie.x_pos(r), lie.coroot(r), lie.x_neg(r));
    let elems: Vec<(AlgElem, i32)> = word
        .iter()
        .map(|&(c, n)| {
            let e = match c {
                'x' => x.clone(),
                'h' => h.clone(),
                _ => y.clone(),
            };
            (e, n)
        })
        .collect();
    vm.straighten_elems(&elems)
}

/// The rank-one coset Virasoro vector of the root `sl2` for positive root `r`,
/// built with the rescaled level `k_r` as its internal constant.
pub fn omega_alpha(vm: &VacuumModule<'_>, r: usize) -> Result<NamedVector> {
    let lie = vm.lie();
    positive_level(vm)?;
    check_root(lie, r)?;
    let ka = q(lie.level_rescale(r, vm.level()) as i64);
    let mut v = triple_word(vm, r, &[('h', -2)]).scale(&-ka.clone());
    v.add_scaled(&triple_word(vm, r, &[('h', -1), ('h', -1)]), &q(-1));
    v.add_scaled(&triple_word(vm, r, &[('x', -1), ('y', -1)]), &(q(2) * &ka));
    let pref = q(1) / (q(2) * &ka * (&ka + q(2)));
    let name = format!("omega[{}]", lie.root_name(&lie.positive_roots()[r]));
    Ok(NamedVector::new(lie, name, v.scale(&pref), 2, Charge::zero(lie.rank()), "root sl2 coset Virasoro vector"))
}

/// The weight-three primary vector of the root `sl2` coset for positive root `r`.
pub fn w3_alpha(vm: &VacuumModule<'_>, r: usize) -> Result<NamedVector> {
    let lie = vm.lie();
    positive_level(vm)?;
    check_root(lie, r)?;
    let ka = q(lie.level_rescale(r, vm.level()) as i64);
    let ka2 = &ka * &ka;
    let terms: [(Q, &[(char, i32)]); 6] = [
        (ka2.clone(), &[('h', -3)]),
        (q(3) * &ka, &[('h', -2), ('h', -1)]),
        (q(2), &[('h', -1), ('h', -1), ('h', -1)]),
        (q(-6) * &ka, &[('h', -1), ('x', -1), ('y', -1)]),
        (q(3) * &ka2, &[('x', -2), ('y', -1)]),
        (q(-3) * &ka2, &[('x', -1), ('y', -2)]),
    ];
    let mut v = FockVector::zero();
    for (c, word) in terms.iter() {
        v.add_scaled(&triple_word(vm, r, word), c);
    }
    let name = format!("W3[{}]", lie.root_name(&lie.positive_roots()[r]));
    Ok(NamedVector::new(lie, name, v, 3, Charge::zero(lie.rank()), "root sl2 coset W3 vector"))
}

/// `y(0)^i x(-1)^p |0>` for the root triple of `r`.
pub fn root_string_vector(vm: &VacuumModule<'_>, r: usize, p: u32, i: u32) -> FockVector {
    let mut word: Vec<(char, i32)> = vec![('y', 0); i as usize];
    word.extend(core::iter::repeat_n(('x', -1), p as usize));
    triple_word(vm, r, &word)
}

/// `x_theta(-1)^{k+1} |0>`, which generates the maximal ideal of `V(k,0)`.
pub fn theta_singular(vm: &VacuumModule<'_>) -> Result<NamedVector> {
    let lie = vm.lie();
    let k = vm.level();
    positive_level(vm)?;
    let t = lie.theta();
    let v = root_string_vector(vm, t, k + 1, 0);
    let charge = Charge(lie.positive_roots()[t].clone()).scaled(k as i64 + 1);
    Ok(NamedVector::new(lie, "theta_singular".into(), v, k + 1, charge, "highest-root singular vector"))
}

/// `x_{-theta}(0)^{k+1} x_theta(-1)^{k+1} |0>`, a charge-zero generator of the
/// maximal ideal of the Heisenberg commutant.
pub fn parafermion_singular(vm: &VacuumModule<'_>) -> Result<NamedVector> {
    let lie = vm.lie();
    let k = vm.level();
    positive_level(vm)?;
    let v = root_string_vector(vm, lie.theta(), k + 1, k + 1);
    Ok(NamedVector::new(
        lie,
        "parafermion_singular".into(),
        v,
        k + 1,
        Charge::zero(lie.rank()),
        "charge-zero image of the highest-root singular vector",
    ))
}

/// `x_{-a}(0)^{k_a+1} x_a(-1)^{k_a+1} |0>` for positive root `r`.
pub fn root_parafermion_singular(vm: &VacuumModule<'_>, r: usize) -> Result<NamedVector> {
    let lie = vm.lie();
    positive_level(vm)?;
    check_root(lie, r)?;
    let ka = lie.level_rescale(r, vm.level());
    let v = root_string_vector(vm, r, ka + 1, ka + 1);
    let name = format!("root_singular[{}]", lie.root_name(&lie.positive_roots()[r]));
    Ok(NamedVector::new(lie, name, v, ka + 1, Charge::zero(lie.rank()), "root sl2 parafermion singular vector"))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fock::{ModeFactor, PbwMonomial};
    use crate::rational::frac;

    #[test]
    fn a1_sugawara_in_canonical_form() {
        let g = LieData::build("A1".parse().unwrap(), 4).unwrap();
        for k in 1..4u32 {
            let vm = VacuumModule::new(&g, k);
            let (y, h, x) = (g.neg_index(0), g.cartan_index(0), g.pos_index(0));
            let m = |fs: &[(usize, u32)]| {
                PbwMonomial::from_factors(fs.iter().map(|&(l, d)| ModeFactor::new(l, d)).collect())
            };
            let pref = frac(1, 2 * (k as i64 + 2));
            let want = FockVector::from_terms([
                (m(&[(h, 1), (h, 1)]), frac(1, 2) * &pref),
                (m(&[(y, 1), (x, 1)]), q(2) * &pref),
                (m(&[(h, 2)]), pref.clone()),
            ]);
            assert_eq!(omega_aff(&vm).unwrap().vector, want);
        }
    }

    #[test]
    fn a1_coset_vector_is_the_root_vector() {
        let g = LieData::build("A1".parse().unwrap(), 4).unwrap();
        for k in 1..4u32 {
            let vm = VacuumModule::new(&g, k);
            assert_eq!(omega_parafermion(&vm).unwrap().vector, omega_alpha(&vm, 0).unwrap().vector);
        }
    }

    #[test]
    fn gradings_match() {
        let g = LieData::build("G2".parse().unwrap(), 4).unwrap();
        let vm = VacuumModule::new(&g, 1);
        for r in 0..g.num_positive_roots() {
            assert!(omega_alpha(&vm, r).unwrap().grading_matches(&g));
            assert!(w3_alpha(&vm, r).unwrap().grading_matches(&g));
        }
        assert!(theta_singular(&vm).unwrap().grading_matches(&g));
        assert!(parafermion_singular(&vm).unwrap().grading_matches(&g));
    }

    #[test]
    fn level_zero_and_bad_roots_are_rejected() {
        let g = LieData::build("A1".parse().unwrap(), 4).unwrap();
        let vm = VacuumModule::new(&g, 0);
        assert_eq!(omega_h(&vm), Err(Error::InvalidLevel(0)));
        let vm = VacuumModule::new(&g, 1);
        assert!(matches!(omega_alpha(&vm, 5), Err(Error::NotPositiveRoot(_))));
    }
}
