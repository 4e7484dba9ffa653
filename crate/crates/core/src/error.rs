use thiserror::Error;

/// Errors shared across the crate.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    /// The reconstructed density operator has a negative eigenvalue.
    #[error("not a physical state: density-matrix eigenvalue {min_eigenvalue:.3e} < -{tol:.0e}")]
    NotAState { min_eigenvalue: f64, tol: f64 },

    /// An input contained NaN or infinity.
    #[error("input contains non-finite entries")]
    NonFinite,

    /// A direction argument was not normalized.
    #[error("{name} must be a unit vector (got |{name}| = {norm})")]
    NotUnit { name: &'static str, norm: f64 },

    /// The measurement outcome has vanishing probability, so the steered
    /// state is undefined.
    #[error("steered state undefined: outcome probability {p:.3e} < 1e-14")]
    DegenerateOutcome { p: f64 },

    /// Alice's Bloch vector has unit length; the ellipsoid center and shape
    /// matrix are singular there.
    #[error("|a| >= 1: steering ellipsoid is undefined for a pure marginal")]
    AliceBlochUnit,

    /// A semiaxis is zero where a full ellipsoid is required.
    #[error("degenerate ellipsoid: semiaxis s{axis} = 0")]
    DegenerateEllipsoid { axis: usize },

    /// The correlation matrix is rank-deficient where full rank is required.
    #[error("correlation matrix is singular (a diagonal entry is zero)")]
    SingularT,

    /// Closed-form normalization requires strictly ordered semiaxes.
    #[error("semiaxes must satisfy 0 < s1 < s2 < s3 strictly, got ({0}, {1}, {2})")]
    OrderingViolated(f64, f64, f64),

    /// The elliptic combination failed to cancel its imaginary parts.
    #[error("elliptic combination has relative imaginary residue {residue:.3e}")]
    NonRealResult { residue: f64 },

    /// An elliptic-integral argument lies off the supported principal branch.
    #[error("elliptic integral domain error: {0}")]
    Domain(&'static str),

    /// Rejection sampling observed a density value above the stated bound.
    #[error("sampled density {value:.6e} exceeds stated bound {bound:.6e}")]
    BoundViolated { value: f64, bound: f64 },

    /// The state lies outside the region covered by the hidden-state model.
    #[error("no LHS model here: boundary value g = {g:.3e} < -1e-9")]
    NotInModelRegion { g: f64 },

    /// The state is not on the model boundary within tolerance.
    #[error("not a boundary state: |g| = {g_abs:.3e} > {tol:.0e}")]
    NotOnBoundary { g_abs: f64, tol: f64 },

    /// The implicit boundary equation has no root on the search interval.
    #[error("no boundary root: g(s3) has no sign change on ({lo}, 1]")]
    NoRoot { lo: f64 },
}

pub type Result<T> = std::result::Result<T, Error>;
