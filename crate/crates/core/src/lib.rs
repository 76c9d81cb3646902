//! Exact computations in level-k vacuum modules of affine Kac-Moody algebras.
//!
//! The crate is `no_std` (it needs `alloc`). Everything is exact: coefficients
//! are rationals over arbitrary-precision integers and linear algebra is done
//! fraction-free over the integers.
//!
//! Layout:
//!
//! - [`lie`]: simple Lie algebras in a Chevalley basis, root data, the
//!   invariant form and Weyl-group automorphisms.
//! - [`fock`]: PBW monomials and vectors of the vacuum module `V(k,0)`.
//! - [`engine`]: straightening, single-mode actions, vertex-operator mode
//!   products and Virasoro checks.
//! - [`linalg`]: sparse fraction-free echelon forms, kernels and
//!   intersections.
//! - [`subspaces`]: graded subspaces of `V(k,0)`, generated subalgebras and
//!   ideals, quotient dimensions.
//! - [`distinguished`]: the named vectors (conformal vectors, `W3`,
//!   singular vectors) and the Weyl action on the vacuum module.
//!
//! ```
//! use voa_core::distinguished::omega_parafermion;
//! use voa_core::subspaces::highest_weight_space;
//! use voa_core::{Charge, LieData, Limits, VacuumModule};
//!
//! let g = LieData::build("A1".parse()?, 4)?;
//! let vm = VacuumModule::new(&g, 2);
//! let omega = omega_parafermion(&vm)?.vector;
//! let report = vm.virasoro_check(&omega, 3, &[]);
//! assert_eq!(report.central_charge.unwrap().to_string(), "1/2");
//!
//! let n0 = highest_weight_space(&vm, &Charge::zero(1), 6, &Limits::default())?;
//! assert_eq!(n0.dims(), vec![1, 0, 1, 2, 4, 6, 11]);
//! # Ok::<(), voa_core::Error>(())
//! ```

#![no_std]

extern crate alloc;
#[cfg(feature = "std")]
extern crate std;

pub mod distinguished;
pub mod engine;
pub mod error;
pub mod fock;
pub mod lie;
pub mod linalg;
pub mod rational;
pub mod subspaces;

pub use distinguished::NamedVector;
pub use engine::{VacuumModule, VirasoroReport};
pub use error::{Error, Result};
pub use fock::{Charge, FockVector, Grading, ModeFactor, PbwMonomial};
pub use lie::{AlgElem, AlgebraType, BasisLabel, LieData, Series, WeylAutomorphism};
pub use rational::Q;
pub use subspaces::{GradedBasis, Limits, QuotientRow, QuotientTable};
