//! Finite-field orbit engine: coadjoint action, orbit search, classification and checks.

pub mod classify;
pub mod form;
pub mod invariants;
pub mod packed;
pub mod polarization;
pub mod subregular;

pub use classify::{
    census, census_with_budget, classify, expected_label_counts, stratum_dim_formula, stratum_max_dims, CensusReport,
    Classification, Classifier, OrbitRecord,
};
pub use form::{canonical_form, coadjoint_act, kirillov_rank, stratum, GroupElement, LinearForm};
pub use packed::{default_budget, kirillov_rank_mod, orbit_bfs, orbit_bfs_with_budget, Orbit, PackedSpace, BUDGET_ENV};
pub use polarization::{is_subalgebra, isotropic_on_support, polarization, verify_polarization, PolarizationCheck};
pub use subregular::{subregular_dimension, GeneratorSystem, SubregularCase, SubregularToolkit};
pub use invariants::{all_constants, check_canonical_pairs, check_minor_generators, check_torus, record_orbit, torus_act, MinorCheck, PairFailure};
