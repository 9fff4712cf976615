//! Exact computer algebra for derivation-based noncommutative differential
//! calculus.
//!
//! The engine works over finite-dimensional *-algebras with Gaussian-rational
//! structure constants. On top of the algebra layer it builds, all with exact
//! arithmetic and canonical echelon bases:
//!
//! - Der(A) with its Lie bracket and involution ([`derivation`]);
//! - the universal first-order calculus inside A⊗A ([`universal`]);
//! - derivation-based differential forms with product, differential and the
//!   Cartan operations ([`forms`]);
//! - symplectic forms, Hamiltonians and Poisson brackets ([`symplectic`]);
//! - bimodules in four kinds with connections, curvature, duality and torsion
//!   ([`module`], [`connection`]);
//! - the CCR algebra in two generators with a formal deformation parameter
//!   ([`weyl`]);
//! - deterministic verification suites producing machine-readable reports
//!   ([`report`], [`suites`]).

pub mod algebra;
pub mod catalog;
pub mod connection;
pub mod derivation;
pub mod forms;
pub mod linalg;
pub mod module;
pub mod report;
pub mod sampling;
pub mod scalar;
pub mod suites;
pub mod symplectic;
pub mod universal;
pub mod weyl;

pub use algebra::{Algebra, AlgebraElement, AlgebraError, AlgebraSpec};
pub use connection::{
    coords_of_one_form, dual_connection, one_form_of, perturbation_space, perturbed,
    tensor_connection, torsion_der, torsion_form, validation_report, Connection,
    ConnectionError,
};
pub use derivation::{Derivation, DerivationBasis, DerivationError};
pub use forms::{
    biduality_ranks, z_multilinear_space, DerForm, FormError, MinimalCalculus,
};
pub use linalg::{LinearSolution, Matrix, SubspaceBasis};
pub use module::{
    bidual_map, der_module, dual_module, is_diagonal, BimoduleDerivation, DualModule, Module,
    ModuleError, ModuleKind, ModuleSpec, TensorModule,
};
pub use report::{reports_to_json, Check, CheckStatus, SuiteReport};
pub use sampling::Sampler;
pub use scalar::{Scalar, ScalarParseError};
pub use suites::{
    run_algebra_suite, run_suites, run_weyl_suite, SuiteError, SuiteOptions, SUITE_NAMES,
};
pub use symplectic::{
    canonical_symplectic, canonical_theta, hamiltonian, is_nondegenerate, is_symplectic,
    nonclosed_nondegenerate_witness, normalized_trace, PoissonBracketTable, SymplecticError,
};
pub use universal::{
    universal_factor, universal_factor_in_algebra, universal_involution, universal_one_space,
    universal_two_space, UniversalError, UniversalOneForm, UniversalTwoForm,
};
pub use weyl::{
    classical_poisson, omega_ccr_eval, quantum_poisson, ClassicalPoly, WeylElement, WeylError,
};
