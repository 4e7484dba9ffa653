//! The quantum steering ellipsoid: the set of Bloch vectors Bob's state can
//! be steered to by projective measurements on Alice's side.
//!
//! For a state with Bloch vectors `a`, `b` and correlation matrix `T`, the
//! steered state for Alice's outcome direction `e` is
//!
//! ```text
//! p_e = (1 + a.e)/2,       b(e) = (b + T^t e) / (2 p_e),
//! ```
//!
//! and the set `{b(e)}` sweeps an ellipsoid with center
//! `c = (b - T^t a)/(1 - a^2)` and shape matrix
//! `Q = (T^t - b a^t)(1 + a a^t/(1-a^2))(T - a b^t)/(1-a^2)`.
//! For T-states the center is the origin, `Q = T^t T`, and the surface in
//! spherical coordinates is `r = 1/f(theta, phi)` with
//! `f^2 = sin^2(theta)cos^2(phi)/s1^2 + sin^2(theta)sin^2(phi)/s2^2 + cos^2(theta)/s3^2`.

use crate::error::{Error, Result};
use crate::linalg::{add, dot, norm, scale, sub, sym_eigen_3x3, Mat3, Vec3};
use crate::qstate::{TState, TwoQubitState};

/// Eigenvalues of `Q` may dip this far below zero before being treated as a
/// construction error rather than rounding.
const EIGEN_CLAMP: f64 = 1e-12;

/// The steering ellipsoid of a two-qubit state.
#[derive(Debug, Clone, Copy)]
pub struct SteeringEllipsoid {
    /// Center in Bob's Bloch ball.
    pub center: Vec3,
    /// Symmetric positive semidefinite shape matrix.
    pub shape: Mat3,
    /// Semiaxes (square roots of the shape eigenvalues), sorted descending.
    pub semiaxes: Vec3,
    /// Proper rotation whose columns are the shape eigenvectors matching
    /// `semiaxes`.
    pub orientation: Mat3,
}

impl SteeringEllipsoid {
    /// Ellipsoid volume `(4 pi / 3) s1 s2 s3`.
    pub fn volume(&self) -> f64 {
        4.0 * std::f64::consts::PI / 3.0 * self.semiaxes[0] * self.semiaxes[1] * self.semiaxes[2]
    }

    /// Surface point for ellipsoid-local angles: `center + R diag(s) n(theta, phi)`.
    pub fn surface_point(&self, theta: f64, phi: f64) -> Vec3 {
        let n = [
            theta.sin() * phi.cos(),
            theta.sin() * phi.sin(),
            theta.cos(),
        ];
        let local = [
            self.semiaxes[0] * n[0],
            self.semiaxes[1] * n[1],
            self.semiaxes[2] * n[2],
        ];
        add(self.center, self.orientation.mul_vec(local))
    }
}

/// Bob's steered state for Alice's projector direction `e`: the outcome
/// probability and the conditioned Bloch vector.
pub fn steered_state(state: &TwoQubitState, e: Vec3) -> Result<(f64, Vec3)> {
    let n = norm(e);
    if (n - 1.0).abs() > 1e-12 {
        return Err(Error::NotUnit { name: "e", norm: n });
    }
    let p = 0.5 * (1.0 + dot(state.alice_bloch(), e));
    if p < 1e-14 {
        return Err(Error::DegenerateOutcome { p });
    }
    let raw = add(
        state.bob_bloch(),
        state.correlation().transpose().mul_vec(e),
    );
    Ok((p, scale(raw, 0.5 / p)))
}

/// The steering ellipsoid of a state with `|a| < 1`.
pub fn steering_ellipsoid(state: &TwoQubitState) -> Result<SteeringEllipsoid> {
    let a = state.alice_bloch();
    let b = state.bob_bloch();
    let a2 = dot(a, a);
    if a2 >= (1.0 - 1e-12) * (1.0 - 1e-12) {
        return Err(Error::AliceBlochUnit);
    }
    let gamma = 1.0 / (1.0 - a2);
    let t = state.correlation();
    let center = scale(sub(b, t.transpose().mul_vec(a)), gamma);

    let left = t.transpose().sub(&Mat3::outer(b, a));
    let middle = Mat3::IDENTITY.add(&Mat3::outer(a, a).scaled(gamma));
    let shape = left.mul(&middle).mul(&left.transpose()).scaled(gamma);

    let (vals, mut orientation) = sym_eigen_3x3(&shape);
    let mut semiaxes = [0.0; 3];
    for (s, lam) in semiaxes.iter_mut().zip(vals.iter()) {
        debug_assert!(*lam > -EIGEN_CLAMP, "shape matrix eigenvalue {lam} < 0");
        *s = lam.max(0.0).sqrt();
    }
    if orientation.det() < 0.0 {
        orientation.set_column(2, scale(orientation.column(2), -1.0));
    }
    Ok(SteeringEllipsoid {
        center,
        shape,
        semiaxes,
        orientation,
    })
}

/// Distance from the origin to the T-state ellipsoid surface in the
/// direction `(theta, phi)`: `r = 1/f(theta, phi)`.
pub fn surface_radius(ts: &TState, theta: f64, phi: f64) -> Result<f64> {
    let s = ts.semiaxes();
    for (axis, si) in s.iter().enumerate() {
        if *si == 0.0 {
            return Err(Error::DegenerateEllipsoid { axis: axis + 1 });
        }
    }
    let (st, ct) = (theta.sin(), theta.cos());
    let (cp, sp) = (phi.cos(), phi.sin());
    let f2 = (st * cp / s[0]).powi(2) + (st * sp / s[1]).powi(2) + (ct / s[2]).powi(2);
    Ok(1.0 / f2.sqrt())
}

/// Separability of a T-state: `s1 + s2 + s3 <= 1` (the octahedron inside the
/// Bell tetrahedron).
pub fn tstate_separable(ts: &TState) -> bool {
    let s = ts.semiaxes();
    s[0] + s[1] + s[2] <= 1.0
}
