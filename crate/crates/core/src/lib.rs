//! Numerical toolkit for normalized analytic functions on the unit disk:
//! truncated power series, the `M_{α,β}` classes built from
//! `g_{α,β} = α f/z + β zf'/f + (1-α-β)(1 + zf''/f')`, sharp Fekete–Szegő
//! extremals, the semigroups generated by infinitesimal generators, and
//! randomized audits of the inclusions between these classes.

pub mod briot_bouquet;
pub mod error;
pub mod explore;
pub mod membership;
pub mod operators;
pub mod semigroup;
pub mod series;

pub use briot_bouquet::{
    extremal_alpha, extremal_mocanu, f_from_q, solve_bb, BriotBouquetProblem, ExtremalResult, Line,
};
pub use error::{Error, Result};
pub use explore::{
    filtration_audit, fs_bound_audit, sample_m0beta, sample_malpha, sample_members,
    schwarz_lemma_audit, FiltrationLine, HerglotzSampler, SchwarzSampler,
};
pub use membership::{
    berkson_porta, delta_range_audit, delta_region_contains, marx_strohhacker_audit, min_margin,
    ClassId, DiskGrid, MembershipReport, Verdict, TOL_PASS,
};
pub use operators::{
    default_lambda_grid, fekete_szego, g_operator, mocanu_f, mocanu_g, omega_transform,
    ClassParams, FSParams,
};
pub use semigroup::{
    bound_audit_alpha, evolve, semigroup_property_audit, Semigroup, SemigroupTrajectory,
};
pub use series::{NormalizedFunction, TaylorSeries, C64, DEFAULT_ORDER};
