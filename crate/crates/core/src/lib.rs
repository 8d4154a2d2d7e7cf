//! Time-harmonic scattering on unbounded domains by null infinity
//! compactification.
//!
//! The physical Helmholtz unknown `U(r)` is rescaled and phase-shifted into a
//! regular unknown `u(ρ)` on a compact interval whose outer edge `ρ = S`
//! corresponds to `r = ∞`. The transformed equation degenerates there, so the
//! outgoing radiation condition is satisfied without any boundary data and
//! the far field is read off directly at `ρ = S`.
//!
//! Modules:
//! - [`geometry`]: maps, height functions, transforms between `U` and `u`.
//! - [`specfun`]: Bessel and scaled Hankel functions.
//! - [`assembly`]: transformed radial operators and their discretization.
//! - [`solver`]: direct solves, scattering mode loops, error norms and
//!   convergence studies.
//! - [`reference`]: closed-form solutions used as oracles.

pub mod assembly;
pub mod error;
pub mod geometry;
pub mod linalg;
pub mod reference;
pub mod solver;
pub mod specfun;

pub use num_complex::Complex64;

pub use assembly::{
    build_grid, coefficients_general, coefficients_standard, coefficients_variable_1d, discretize,
    dispersion_compactified, dispersion_transformed, Coefficients, DiscreteSystem, Grid, RadialOperator,
    Scheme, Source,
};
pub use error::{Error, Result};
pub use geometry::{
    check_boost_conditions, to_physical, to_transformed, BoostReport, CompactificationMap, FieldSample,
    HeightFunction, HeightKind, LayerConfig, MapKind, Representation,
};
pub use solver::{
    convergence_study, error_norms, farfield_extract, reconstruct_field, solve, solve_scattering,
    ConvergenceProblem, ConvergenceRecord, ErrorNorms, FieldSolution, Geometry, ModeSolution, ScatteringProblem,
};
