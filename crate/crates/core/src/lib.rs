//! Deformed Coulomb problem: the Coulomb potential `-Z/rho` with the kinetic
//! term deformed by `f(rho) = 1 + alpha rho`.
//!
//! Units: lengths in Bohr radii, energies in units of `V0 = 2 Ry`, so the
//! undeformed levels are `-Z^2 / (2 n^2)`.
//!
//! The crate provides the shape-invariance hierarchy and spectra of three
//! equivalent pictures ([`ladder`]), closed-form eigenfunctions ([`wavefn`]), a
//! finite-difference eigen-oracle ([`oracle`]), the geometry of the associated
//! curved space ([`geometry`]) and a self-check suite ([`verify`]).

pub mod error;
pub mod geometry;
pub mod ladder;
pub mod model;
mod numdiff;
pub mod oracle;
pub mod polynomial;
pub mod verify;
pub mod wavefn;

pub use error::{Error, Result};
pub use ladder::{
    check_bound, closed_form_energy, energy, enumerate_bound_states, factorization_base, ladder_step,
    leading_levels, BoundStateKey, CountingBound, Factorization, Hierarchy, LadderStep, Spectrum,
    SpectrumEntry, SpectrumTable,
};
pub use model::{
    continuum_threshold, deform_f, effective_charge, effective_potential, radial_potential,
    DeformedCoulombModel, Deformation, EffectiveCoulomb, OrderingParams, Picture,
};
pub use oracle::{GridOperator, RadialGrid, Spacing};
pub use polynomial::Polynomial;
pub use wavefn::{eval_radial, excited_state, ground_state, radial_state, FullState, RadialFunction, RadialState};
