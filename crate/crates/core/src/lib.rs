//! Steering-ellipsoid geometry and EPR-steering analysis for two-qubit states.
//!
//! The crate decides, for a two-qubit state given in the Pauli basis, whether
//! it is provably EPR-steerable, provably non-steerable, or in the open gap
//! between the two. The emphasis is on states with maximally mixed marginals
//! (T-states), for which a deterministic local-hidden-state model exists up to
//! an explicit boundary surface in the space of ellipsoid semiaxes.
//!
//! Layout:
//!
//! - [`qstate`] — Pauli-basis state representation, validity checks, and the
//!   canonical diagonal form of the spin correlation matrix.
//! - [`ellipsoid`] — the quantum steering ellipsoid (center, shape matrix,
//!   semiaxes) and the T-state surface function.
//! - [`quadrature`] — deterministic sphere/hemisphere integration and
//!   reproducible rejection sampling; the oracle for every analytic formula.
//! - [`specfun`] — Carlson symmetric and Legendre elliptic integrals with the
//!   restricted complex support the closed-form normalization needs.
//! - [`lhs_boundary`] — the hemisphere integral identity, the hidden-state
//!   normalization constant, and the non-steerability boundary condition.
//! - [`steer_criteria`] — steerability classification: necessary condition,
//!   linear and nonlinear sufficient conditions, and boundary solvers.
//! - [`lhs_sim`] — an executable hidden-state model: sampling, response
//!   regions, and reconstruction of the quantum steered statistics.

// Indexed loops over small fixed matrices read better than iterator chains
// in the linear-algebra-heavy code below.
#![allow(clippy::needless_range_loop)]

pub mod ellipsoid;
mod error;
pub mod lhs_boundary;
pub mod lhs_sim;
pub mod linalg;
pub mod qstate;
pub mod quadrature;
pub mod specfun;
pub mod steer_criteria;

pub use error::{Error, Result};
