//! Exact computations for logarithmic W-algebras attached to ADE root lattices:
//! Weyl-group carries, q,z-characters, and screening kernels on lattice Fock spaces.

pub mod caps;
pub mod characters;
pub mod error;
pub mod fock;
pub mod lambda;
pub mod lattice;
pub mod linalg;
pub mod root_data;
pub mod scalar;
pub mod series;
pub mod weight;

pub use caps::Caps;
pub use error::{Error, Result};
pub use lambda::{
    alcove_lambdas, check_alcove, check_novel, check_strict_alcove, cohomology_dim,
    condequiv_scan, enumerate_lambdas, epsilon_chain, epsilon_of, format_table2, star_action,
    table2_generate, CondScanReport, EpsilonChain, LambdaParam, Table2Block,
};
pub use root_data::{apply_weyl, build_root_system, Hat, Kind, RootSystem, WeylElement};
pub use weight::{Rat, Weight};
pub use characters::{
    central_charge, compare_series, compare_sides, delta, euler_character, rhs_character,
    theta_trace, CharSide, CompareReport, Side,
};
pub use fock::{
    graded_basis, h_action, heisenberg_act, kernel_graded_dims, narrow_f, relation_suite,
    screening_f, zero_mode, FockBasisVector, FockElement, GradedKernelReport, LatticeVector,
    RelationReport,
};
pub use scalar::QuadScalar;
pub use series::{
    eta_inverse_power, laurent_divide_exact, qz_add, qz_mul, weyl_character, QSeries, QZSeries,
};
