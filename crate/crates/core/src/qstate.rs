//! Two-qubit states in the Pauli basis: validation against positivity of the
//! reconstructed density operator, reduction to the canonical diagonal form
//! of the spin correlation matrix, and the derived covariance matrix.
//!
//! A state is stored as Alice's and Bob's Bloch vectors `a`, `b` and the 3x3
//! spin correlation matrix `T`, i.e. the expansion coefficients of
//!
//! ```text
//! rho = (1/4) (1x1 + a.sigma x 1 + 1 x b.sigma + sum_jk T_jk sigma_j x sigma_k)
//! ```
//!
//! Construction always re-verifies that `rho` is positive semidefinite, so a
//! value of these types is a physical state by construction.

use num_complex::Complex64;
use serde::Deserialize;

use crate::error::{Error, Result};
use crate::linalg::{self, herm_eigenvalues_4x4, sym_eigen_3x3, Mat3, Vec3};

/// Absolute tolerance on density-operator eigenvalues: rounding in
/// user-supplied matrices is accepted, genuinely negative states are not.
pub const TOL_PSD: f64 = 1e-10;

/// A validated two-qubit state in the Pauli basis.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TwoQubitState {
    a: Vec3,
    b: Vec3,
    t: Mat3,
}

impl TwoQubitState {
    /// Builds a state from Bloch vectors and the spin correlation matrix,
    /// verifying positivity of the reconstructed density operator.
    pub fn new(a: Vec3, b: Vec3, t: Mat3) -> Result<Self> {
        if !a.iter().chain(b.iter()).all(|x| x.is_finite()) || !t.is_finite() {
            return Err(Error::NonFinite);
        }
        let state = TwoQubitState { a, b, t };
        let min = state.eigenvalues()[3];
        if min < -TOL_PSD {
            return Err(Error::NotAState {
                min_eigenvalue: min,
                tol: TOL_PSD,
            });
        }
        Ok(state)
    }

    pub fn alice_bloch(&self) -> Vec3 {
        self.a
    }

    pub fn bob_bloch(&self) -> Vec3 {
        self.b
    }

    pub fn correlation(&self) -> Mat3 {
        self.t
    }

    /// True when both marginals are exactly maximally mixed.
    pub fn has_maximally_mixed_marginals(&self) -> bool {
        self.a == [0.0; 3] && self.b == [0.0; 3]
    }

    /// The reconstructed 4x4 density operator.
    pub fn density_matrix(&self) -> [[Complex64; 4]; 4] {
        let mut rho = [[Complex64::new(0.0, 0.0); 4]; 4];
        add_scaled(&mut rho, &kron(&PAULI[3], &PAULI[3]), 0.25);
        for j in 0..3 {
            add_scaled(&mut rho, &kron(&PAULI[j], &PAULI[3]), 0.25 * self.a[j]);
            add_scaled(&mut rho, &kron(&PAULI[3], &PAULI[j]), 0.25 * self.b[j]);
            for k in 0..3 {
                add_scaled(&mut rho, &kron(&PAULI[j], &PAULI[k]), 0.25 * self.t.0[j][k]);
            }
        }
        rho
    }

    /// Eigenvalues of the density operator, sorted descending.
    pub fn eigenvalues(&self) -> [f64; 4] {
        herm_eigenvalues_4x4(&self.density_matrix())
    }

    /// Smallest eigenvalue of the partial transpose over Bob's qubit.
    ///
    /// Nonnegative (within [`TOL_PSD`]) exactly for separable states; this is
    /// the standard two-qubit separability check.
    pub fn partial_transpose_min_eigenvalue(&self) -> f64 {
        let rho = self.density_matrix();
        let mut pt = [[Complex64::new(0.0, 0.0); 4]; 4];
        for i in 0..2 {
            for j in 0..2 {
                for k in 0..2 {
                    for l in 0..2 {
                        // (i j),(k l) <- (i l),(k j) on Bob's index.
                        pt[2 * i + j][2 * k + l] = rho[2 * i + l][2 * k + j];
                    }
                }
            }
        }
        herm_eigenvalues_4x4(&pt)[3]
    }

    /// The spin covariance matrix `C = T - a b^T`.
    pub fn covariance_matrix(&self) -> Mat3 {
        self.t.sub(&Mat3::outer(self.a, self.b))
    }

    /// Decomposes `T = R_A diag(D) R_B^T` with proper rotations and `|D|`
    /// sorted descending; parity is absorbed as signs on `D`.
    pub fn canonical_form(&self) -> CanonicalForm {
        let (r_a, d, r_b) = svd3_proper(&self.t);
        CanonicalForm {
            a_loc: r_a.transpose().mul_vec(self.a),
            b_loc: r_b.transpose().mul_vec(self.b),
            r_a,
            r_b,
            d,
        }
    }
}

/// A T-state: both marginals maximally mixed, `T` diagonal.
///
/// The stored triple keeps its signs; the semiaxes of the steering ellipsoid
/// are the absolute values.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TState {
    t: Vec3,
}

impl TState {
    /// Validates that `diag(t)` describes a physical state, i.e. that
    /// `(t1, t2, t3)` lies in the Bell-state tetrahedron.
    pub fn new(t: Vec3) -> Result<Self> {
        TwoQubitState::new([0.0; 3], [0.0; 3], Mat3::diag(t))?;
        Ok(TState { t })
    }

    pub fn diagonal(&self) -> Vec3 {
        self.t
    }

    /// Ellipsoid semiaxes `s_i = |t_i|`, in axis order.
    pub fn semiaxes(&self) -> Vec3 {
        [self.t[0].abs(), self.t[1].abs(), self.t[2].abs()]
    }

    pub fn det(&self) -> f64 {
        self.t[0] * self.t[1] * self.t[2]
    }

    pub fn is_full_rank(&self) -> bool {
        self.t.iter().all(|&x| x != 0.0)
    }

    /// The state as a general [`TwoQubitState`].
    pub fn embed(&self) -> TwoQubitState {
        TwoQubitState {
            a: [0.0; 3],
            b: [0.0; 3],
            t: Mat3::diag(self.t),
        }
    }
}

/// Result of [`TwoQubitState::canonical_form`]: proper rotations, the signed
/// diagonal, and the Bloch vectors expressed in the rotated local frames.
#[derive(Debug, Clone, Copy)]
pub struct CanonicalForm {
    pub r_a: Mat3,
    pub r_b: Mat3,
    /// Diagonal of the canonical correlation matrix; entries may be negative,
    /// `|d|` is sorted descending.
    pub d: Vec3,
    pub a_loc: Vec3,
    pub b_loc: Vec3,
}

impl CanonicalForm {
    pub fn reconstruct(&self) -> Mat3 {
        self.r_a.mul(&Mat3::diag(self.d)).mul(&self.r_b.transpose())
    }
}

/// Singular values of a 3x3 matrix, sorted descending.
pub fn singular_values(m: &Mat3) -> Vec3 {
    let (vals, _) = sym_eigen_3x3(&m.transpose().mul(m));
    [
        vals[0].max(0.0).sqrt(),
        vals[1].max(0.0).sqrt(),
        vals[2].max(0.0).sqrt(),
    ]
}

/// SVD with both factors forced into SO(3): `m = u diag(d) v^T`, `|d|`
/// descending, any parity pushed into the signs of `d`.
fn svd3_proper(m: &Mat3) -> (Mat3, Vec3, Mat3) {
    let (vals, mut v) = sym_eigen_3x3(&m.transpose().mul(m));
    let sigma = [
        vals[0].max(0.0).sqrt(),
        vals[1].max(0.0).sqrt(),
        vals[2].max(0.0).sqrt(),
    ];
    let cutoff = 1e-14 * sigma[0].max(1.0);

    // Left factor: u1 along m v1, u2 orthonormalized against it, and always
    // u3 = u1 x u2 so that det(u) = +1 exactly; the sign of the smallest
    // direction lands in d[2] instead.
    let mut u = Mat3::IDENTITY;
    let u0 = if sigma[0] > cutoff {
        linalg::normalized(m.mul_vec(v.column(0))).expect("leading singular vector")
    } else {
        [1.0, 0.0, 0.0]
    };
    let u1_raw = if sigma[1] > cutoff {
        m.mul_vec(v.column(1))
    } else {
        pick_transverse_axis(u0)
    };
    let u1 = linalg::normalized(linalg::sub(
        u1_raw,
        linalg::scale(u0, linalg::dot(u1_raw, u0)),
    ))
    .unwrap_or_else(|| {
        let axis = pick_transverse_axis(u0);
        linalg::normalized(linalg::sub(axis, linalg::scale(u0, linalg::dot(axis, u0))))
            .expect("transverse axis")
    });
    let u2 = linalg::cross(u0, u1);
    u.set_column(0, u0);
    u.set_column(1, u1);
    u.set_column(2, u2);

    let mut d = sigma;
    if sigma[2] > cutoff && linalg::dot(u2, m.mul_vec(v.column(2))) < 0.0 {
        d[2] = -d[2];
    }
    if v.det() < 0.0 {
        v.set_column(2, linalg::scale(v.column(2), -1.0));
        d[2] = -d[2];
    }
    (u, d, v)
}

fn pick_transverse_axis(u: Vec3) -> Vec3 {
    let mut best = 0;
    for i in 1..3 {
        if u[i].abs() < u[best].abs() {
            best = i;
        }
    }
    let mut axis = [0.0; 3];
    axis[best] = 1.0;
    axis
}

/// Pauli matrices sigma_1, sigma_2, sigma_3 and the identity (index 3).
const PAULI: [[[Complex64; 2]; 2]; 4] = {
    const fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }
    [
        [[c(0.0, 0.0), c(1.0, 0.0)], [c(1.0, 0.0), c(0.0, 0.0)]],
        [[c(0.0, 0.0), c(0.0, -1.0)], [c(0.0, 1.0), c(0.0, 0.0)]],
        [[c(1.0, 0.0), c(0.0, 0.0)], [c(0.0, 0.0), c(-1.0, 0.0)]],
        [[c(1.0, 0.0), c(0.0, 0.0)], [c(0.0, 0.0), c(1.0, 0.0)]],
    ]
};

fn kron(a: &[[Complex64; 2]; 2], b: &[[Complex64; 2]; 2]) -> [[Complex64; 4]; 4] {
    let mut out = [[Complex64::new(0.0, 0.0); 4]; 4];
    for i in 0..2 {
        for j in 0..2 {
            for k in 0..2 {
                for l in 0..2 {
                    out[2 * i + k][2 * j + l] = a[i][j] * b[k][l];
                }
            }
        }
    }
    out
}

fn add_scaled(dst: &mut [[Complex64; 4]; 4], src: &[[Complex64; 4]; 4], w: f64) {
    for (drow, srow) in dst.iter_mut().zip(src.iter()) {
        for (d, s) in drow.iter_mut().zip(srow.iter()) {
            *d += s * w;
        }
    }
}

/// JSON input form of a state: either the full `{"a", "b", "T"}` record with
/// row-major `T`, or the T-state shorthand `{"t": [t1, t2, t3]}`.
#[derive(Debug, Clone, Deserialize)]
#[serde(untagged)]
pub enum StateInput {
    Shorthand {
        t: [f64; 3],
    },
    Full {
        a: [f64; 3],
        b: [f64; 3],
        #[serde(rename = "T")]
        t: [[f64; 3]; 3],
    },
}

impl StateInput {
    /// Validates and converts into a state.
    pub fn into_state(self) -> Result<TwoQubitState> {
        match self {
            StateInput::Shorthand { t } => Ok(TState::new(t)?.embed()),
            StateInput::Full { a, b, t } => TwoQubitState::new(a, b, Mat3(t)),
        }
    }
}
