//! Steerability classification for two-qubit states.
//!
//! Three ingredients are combined:
//!
//! - the necessary condition from the hidden-state construction: a full-rank
//!   T-state with boundary value `g >= 0` is provably not steerable;
//! - the linear covariance inequality: an LHS model forces the singular
//!   values of the spin covariance matrix to satisfy
//!   `c1 + c2 + c3 <= (3/2) sqrt(1 - b^2)`, so a positive margin proves
//!   steerability by Alice;
//! - the nonlinear inequality in the canonical frame:
//!   `|t1| + |t2| <= (2/pi)[sqrt((1+a3)^2 - (t3+b3)^2) + sqrt((1-a3)^2 - (t3-b3)^2)]`,
//!   maximized over which axis plays the distinguished role.
//!
//! The solvers at the end trace the non-steerability boundary surface: the
//! implicit root `s3*(s1, s2)` by bracketed bisection, and the closed form
//! along the symmetric slice `s1 = s2`.

use std::f64::consts::PI;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::lhs_boundary::{boundary_g, boundary_value};
use crate::linalg::{dot, Vec3};
use crate::qstate::{singular_values, TState, TwoQubitState, TOL_PSD};
use crate::quadrature::QuadratureSpec;

/// Semiaxes below this are treated as rank-deficient by the classifier (the
/// hidden-state construction needs full rank).
const RANK_TOL: f64 = 1e-12;

/// Quadrature slack on the boundary value: states with `g >= -G_SLACK` count
/// as inside (the model exists on the surface itself, where the computed `g`
/// carries rounding of this size). Matches the slack used when building the
/// executable model.
const G_SLACK: f64 = 1e-9;

/// Tri-state separability answer.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Separability {
    Yes,
    No,
    Unknown,
}

/// Per-criterion margins backing a verdict.
#[derive(Debug, Clone, Copy, Serialize)]
pub struct Margins {
    /// `2 pi N_T |det T| - 1`; absent for non-T or rank-deficient states.
    pub boundary_g: Option<f64>,
    /// `c1 + c2 + c3 - (3/2) sqrt(1 - b^2)`; positive proves steerability.
    pub linear: f64,
    /// Best nonlinear-inequality violation over the three axis roles;
    /// positive proves steerability.
    pub nonlinear: f64,
}

/// Classification record for a two-qubit state.
#[derive(Debug, Clone, Copy, Serialize)]
pub struct SteerabilityVerdict {
    pub separable: Separability,
    /// An explicit LHS model exists (separable, or T-state inside the
    /// boundary surface).
    pub nonsteerable_proven: bool,
    /// One of the sufficient inequalities is violated.
    pub steerable_proven: bool,
    /// Neither proof applies.
    pub gap: bool,
    pub margins: Margins,
    /// The conjectured-exact reading of the boundary (`g < 0` means
    /// steerable); not a proof, reported separately from the rigorous flags.
    pub conjectured_steerable: Option<bool>,
}

/// Linear steering margin: `c1 + c2 + c3 - (3/2) sqrt(1 - b^2)` with `c_i`
/// the singular values of the covariance matrix. Positive proves the state
/// steerable by Alice.
pub fn linear_margin(state: &TwoQubitState) -> f64 {
    let c = singular_values(&state.covariance_matrix());
    let b2 = dot(state.bob_bloch(), state.bob_bloch());
    c[0] + c[1] + c[2] - 1.5 * (1.0 - b2).max(0.0).sqrt()
}

/// Margin of the nonlinear inequality with axis `k` in the distinguished
/// role. The square-root arguments are nonnegative for physical states;
/// rounding is clamped at zero.
fn role_margin(d: Vec3, a: Vec3, b: Vec3, k: usize) -> f64 {
    let (i, j) = ((k + 1) % 3, (k + 2) % 3);
    let plus = ((1.0 + a[k]).powi(2) - (d[k] + b[k]).powi(2))
        .max(0.0)
        .sqrt();
    let minus = ((1.0 - a[k]).powi(2) - (d[k] - b[k]).powi(2))
        .max(0.0)
        .sqrt();
    d[i].abs() + d[j].abs() - 2.0 / PI * (plus + minus)
}

fn exact_diagonal(state: &TwoQubitState) -> Option<Vec3> {
    let t = state.correlation().0;
    let off_zero = (0..3).all(|i| (0..3).all(|j| i == j || t[i][j] == 0.0));
    off_zero.then_some([t[0][0], t[1][1], t[2][2]])
}

/// Nonlinear steering margin in the canonical diagonal frame, maximized over
/// the three cyclic axis roles. Positive proves steerability by Alice.
pub fn nonlinear_margin(state: &TwoQubitState) -> f64 {
    // Exactly diagonal correlation needs no decomposition; this also keeps
    // the T-state fast path bit-identical.
    let (d, a, b) = match exact_diagonal(state) {
        Some(d) => (d, state.alice_bloch(), state.bob_bloch()),
        None => {
            let cf = state.canonical_form();
            (cf.d, cf.a_loc, cf.b_loc)
        }
    };
    (0..3)
        .map(|k| role_margin(d, a, b, k))
        .fold(f64::MIN, f64::max)
}

/// T-state fast path of [`nonlinear_margin`]:
/// `max_k { s_i + s_j - (4/pi) sqrt(1 - s_k^2) }`.
pub fn tstate_nonlinear_margin(ts: &TState) -> f64 {
    (0..3)
        .map(|k| role_margin(ts.diagonal(), [0.0; 3], [0.0; 3], k))
        .fold(f64::MIN, f64::max)
}

/// Classifies a T-state given by its diagonal.
pub fn classify_tstate(ts: &TState) -> SteerabilityVerdict {
    let s = ts.semiaxes();
    let separable = if crate::ellipsoid::tstate_separable(ts) {
        Separability::Yes
    } else {
        Separability::No
    };
    let full_rank = s.iter().all(|&x| x > RANK_TOL);
    let boundary = if full_rank {
        Some(boundary_value(ts).expect("full-rank checked").g)
    } else {
        None
    };
    let linear = s[0] + s[1] + s[2] - 1.5;
    let nonlinear = tstate_nonlinear_margin(ts);

    let nonsteerable_proven =
        separable == Separability::Yes || matches!(boundary, Some(g) if g >= -G_SLACK);
    let steerable_proven = linear > 0.0 || nonlinear > 0.0;
    debug_assert!(
        !(nonsteerable_proven && steerable_proven),
        "contradictory verdict for {s:?}"
    );
    SteerabilityVerdict {
        separable,
        nonsteerable_proven,
        steerable_proven,
        gap: !nonsteerable_proven && !steerable_proven,
        margins: Margins {
            boundary_g: boundary,
            linear,
            nonlinear,
        },
        conjectured_steerable: boundary.map(|g| g < -G_SLACK),
    }
}

/// Classifies an arbitrary two-qubit state.
///
/// States with maximally mixed marginals take the T-state route (canonical
/// diagonal, boundary evaluation). For general states separability is
/// settled by partial-transpose positivity, which is exact for two qubits;
/// non-steerability beyond separable states is only established for T-states,
/// so anything else can at best be proven steerable by the margins.
pub fn classify(state: &TwoQubitState) -> SteerabilityVerdict {
    if state.has_maximally_mixed_marginals() {
        let d = match exact_diagonal(state) {
            Some(d) => d,
            None => state.canonical_form().d,
        };
        let ts = TState::new(d).expect("canonical diagonal of a valid state");
        return classify_tstate(&ts);
    }

    let separable = if state.partial_transpose_min_eigenvalue() >= -TOL_PSD {
        Separability::Yes
    } else {
        Separability::No
    };
    let linear = linear_margin(state);
    let nonlinear = nonlinear_margin(state);
    let nonsteerable_proven = separable == Separability::Yes;
    let steerable_proven = linear > 0.0 || nonlinear > 0.0;
    debug_assert!(!(nonsteerable_proven && steerable_proven));
    SteerabilityVerdict {
        separable,
        nonsteerable_proven,
        steerable_proven,
        gap: !nonsteerable_proven && !steerable_proven,
        margins: Margins {
            boundary_g: None,
            linear,
            nonlinear,
        },
        conjectured_steerable: None,
    }
}

/// Lower end of the bracket sweep; keeps the boundary evaluation away from
/// the singular axis.
const ROOT_FLOOR: f64 = 1e-4;
const ROOT_TOL: f64 = 1e-10;
const SCAN_STEPS: usize = 32;

/// Solves `g(s1, s2, s3) = 0` for `s3` on `(ROOT_FLOOR, 1]` at the default
/// quadrature order.
pub fn boundary_s3(s1: f64, s2: f64) -> Result<f64> {
    boundary_s3_with_spec(s1, s2, &QuadratureSpec::default())
}

/// [`boundary_s3`] at an explicit quadrature order.
///
/// The bracket is validated by a sign change (monotonicity of `g` in `s3` is
/// not assumed); scanning from the top returns the largest bracketed root.
pub fn boundary_s3_with_spec(s1: f64, s2: f64, spec: &QuadratureSpec) -> Result<f64> {
    if !(s1 > 0.0 && s1 <= 1.0 && s2 > 0.0 && s2 <= 1.0) {
        return Err(Error::Domain("boundary_s3 needs semiaxes in (0, 1]"));
    }
    let g = |s3: f64| boundary_g([s1, s2, s3], spec).expect("strictly positive semiaxes");

    let mut hi = 1.0;
    let mut g_hi = g(hi);
    if g_hi == 0.0 {
        return Ok(hi);
    }
    let mut bracket = None;
    for k in 1..=SCAN_STEPS {
        let lo = 1.0 + (ROOT_FLOOR - 1.0) * k as f64 / SCAN_STEPS as f64;
        let g_lo = g(lo);
        if g_lo == 0.0 {
            return Ok(lo);
        }
        if g_lo.signum() != g_hi.signum() {
            bracket = Some((lo, g_lo, hi));
            break;
        }
        hi = lo;
        g_hi = g_lo;
    }
    let (mut lo, g_lo, mut hi) = bracket.ok_or(Error::NoRoot { lo: ROOT_FLOOR })?;
    let low_sign = g_lo.signum();
    while hi - lo > ROOT_TOL {
        let mid = 0.5 * (lo + hi);
        let g_mid = g(mid);
        if g_mid == 0.0 {
            return Ok(mid);
        }
        if g_mid.signum() == low_sign {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    Ok(0.5 * (lo + hi))
}

/// The boundary surface along the symmetric slice `s1 = s2`, parameterized
/// by `u = s3/s1`: returns `(s1, s3)`.
///
/// ```text
/// s3 = [1 + arctan(sqrt(u^-2 - 1)) / (u^2 sqrt(u^-2 - 1))]^-1      u < 1
/// s3 = 1/2                                                         u = 1
/// s3 = [1 - sqrt(1 - u^-2) ln((1 - sqrt(1-u^-2))/(1 + sqrt(1-u^-2)))
///          / (2(u^2 - 1))]^-1                                      u > 1
/// ```
///
/// Both branches limit to 1/2 at `u = 1`; a small window around it takes the
/// exact value.
pub fn boundary_symmetric(u: f64) -> (f64, f64) {
    assert!(u > 0.0 && u.is_finite(), "u must be positive");
    let s3 = if (u - 1.0).abs() < 1e-12 {
        0.5
    } else if u < 1.0 {
        let r = (1.0 / (u * u) - 1.0).sqrt();
        1.0 / (1.0 + r.atan() / (u * u * r))
    } else {
        let q = (1.0 - 1.0 / (u * u)).sqrt();
        1.0 / (1.0 - q / (2.0 * (u * u - 1.0)) * ((1.0 - q).abs() / (1.0 + q)).ln())
    };
    (s3 / u, s3)
}
