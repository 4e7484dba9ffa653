//! An executable local-hidden-state model for T-states on or inside the
//! non-steerability boundary.
//!
//! Hidden variables are unit Bloch vectors `n`. For a boundary state the
//! model is deterministic: `n` is drawn from `P(n) = N_T (n^T T^-2 n)^{-2}`
//! and Alice announces result 1 exactly when `n` falls in the hemisphere
//! `R[e] = {n : n^T T^-1 e >= 0}`. This reproduces Bob's steered statistics
//! exactly: outcome probability 1/2 and steered vector `T e / 2`.
//!
//! States strictly inside the boundary are handled by convexity: `T` is
//! written as `q T_b` with `T_b` on the boundary (the ray through the origin
//! crosses it at `q = 1/(2 pi N_T |det T|)`), and the model mixes the
//! deterministic boundary model (weight `q`) with the trivial model for the
//! maximally mixed state (uniform hidden states, a fair coin as response).
//!
//! Everything is reproducible: sampling runs on counter-based streams keyed
//! by `(seed, direction index)`, so per-direction results are independent of
//! each other and of thread scheduling.

use serde::Serialize;

use crate::error::{Error, Result};
use crate::lhs_boundary::{boundary_value, hemisphere_density_moments, LhsDensity};
use crate::linalg::{norm, Vec3};
use crate::qstate::TState;
use crate::quadrature::{CounterRng, QuadratureSpec};

/// States must satisfy `g >= -G_SLACK` for a model to exist.
const G_SLACK: f64 = 1e-9;
/// Boundary verification requires `|g| <= G_BOUNDARY`.
const G_BOUNDARY: f64 = 1e-6;

/// Deterministic response: result 1 exactly when `n^T T^-1 e >= 0`.
///
/// The region is a hemisphere for every `e` (its boundary is the great
/// circle orthogonal to `T^-1 e`), which together with `P(n) = P(-n)` pins
/// the outcome probability at 1/2.
pub fn response(t: Vec3, e: Vec3, n: Vec3) -> Result<bool> {
    if t.contains(&0.0) {
        return Err(Error::SingularT);
    }
    Ok(n[0] * e[0] / t[0] + n[1] * e[1] / t[1] + n[2] * e[2] / t[2] >= 0.0)
}

/// The hidden-state model of a T-state with `g >= 0` (within slack).
#[derive(Debug, Clone)]
pub struct LhsModel {
    /// Diagonal of the modeled state.
    t: Vec3,
    /// Density of the boundary component (for the scaled matrix `T/q`).
    boundary: LhsDensity,
    /// Weight of the boundary component; 1 for boundary states.
    mixing: f64,
    /// Boundary value of the modeled state.
    g: f64,
}

impl LhsModel {
    /// Builds the model, locating the boundary point along the ray through
    /// the origin. Fails with [`Error::NotInModelRegion`] outside the
    /// non-steerable region and [`Error::SingularT`] for rank-deficient `T`.
    pub fn new(ts: &TState, spec: &QuadratureSpec) -> Result<Self> {
        let g = boundary_value(ts)?.g;
        if g < -G_SLACK {
            return Err(Error::NotInModelRegion { g });
        }
        // 2 pi N_T |det T| = g + 1 >= 1; the ray hits the boundary at 1/q.
        let mixing = (1.0 / (g + 1.0)).min(1.0);
        let t = ts.diagonal();
        let scaled = [t[0] / mixing, t[1] / mixing, t[2] / mixing];
        let boundary = LhsDensity::from_diagonal(scaled, spec)?;
        Ok(LhsModel {
            t,
            boundary,
            mixing,
            g,
        })
    }

    pub fn boundary_gap(&self) -> f64 {
        self.g
    }

    /// Mixture weight of the deterministic boundary component.
    pub fn mixing_weight(&self) -> f64 {
        self.mixing
    }

    /// The region rule of the deterministic component for measurement
    /// direction `e`, evaluated at hidden state `n`.
    pub fn response(&self, e: Vec3, n: Vec3) -> bool {
        // The scaled boundary matrix is proportional to T, so the rule is
        // the same hemisphere; full rank was checked at construction.
        response(self.boundary.diagonal(), e, n).expect("full-rank model")
    }

    /// The distribution the hidden states are drawn from:
    /// `q P_b(n) + (1 - q)/(4 pi)`. For boundary states this is exactly
    /// `N_T (n^T T^-2 n)^{-2}`; it integrates to one and is even in `n`.
    pub fn density_value(&self, n: Vec3) -> f64 {
        self.mixing * self.boundary.value(n) + (1.0 - self.mixing) / (4.0 * std::f64::consts::PI)
    }

    /// Monte Carlo reconstruction of the steered statistics.
    ///
    /// Each direction gets its own counter stream keyed by `(seed, index)`,
    /// so reports are bit-reproducible and directions are independent.
    pub fn simulate(
        &self,
        directions: &[Vec3],
        count: usize,
        seed: u64,
    ) -> Result<SimulationReport> {
        assert!(count >= 2, "need at least two samples for standard errors");
        let bound = self.boundary.max_value();
        let mut rows = Vec::with_capacity(directions.len());
        for (index, &e) in directions.iter().enumerate() {
            let en = norm(e);
            if (en - 1.0).abs() > 1e-12 {
                return Err(Error::NotUnit {
                    name: "e",
                    norm: en,
                });
            }
            let mut rng = CounterRng::new(seed, index as u64);
            let mut ones = 0u64;
            let mut sum = [0.0f64; 3];
            let mut sum_sq = [0.0f64; 3];
            for _ in 0..count {
                let (n, hit) = if rng.next_f64() < self.mixing {
                    // Deterministic boundary component: rejection-sample the
                    // quartic density, answer by the hemisphere rule.
                    let n = loop {
                        let candidate = rng.unit_vector();
                        let p = self.boundary.value(candidate);
                        debug_assert!(p <= bound * (1.0 + 1e-12));
                        if rng.next_f64() * bound < p {
                            break candidate;
                        }
                    };
                    let hit = response(self.boundary.diagonal(), e, n)?;
                    (n, hit)
                } else {
                    // Maximally mixed component: uniform hidden state and a
                    // fair coin.
                    let n = rng.unit_vector();
                    (n, rng.next_u64() & 1 == 1)
                };
                if hit {
                    ones += 1;
                    for (j, s) in sum.iter_mut().enumerate() {
                        *s += n[j];
                    }
                    for (j, s) in sum_sq.iter_mut().enumerate() {
                        *s += n[j] * n[j];
                    }
                }
            }
            let nf = count as f64;
            let p_hat = ones as f64 / nf;
            let p_std_err = (p_hat * (1.0 - p_hat) / nf).sqrt();
            let steered_sum = [sum[0] / nf, sum[1] / nf, sum[2] / nf];
            let mut b_hat = [0.0; 3];
            let mut b_std_err = [0.0; 3];
            if ones > 0 {
                for j in 0..3 {
                    b_hat[j] = sum[j] / ones as f64;
                    // Ratio-estimator linearization: Var(b) = Var(r (n - b)) / (N p^2).
                    let var_z = (sum_sq[j] - 2.0 * b_hat[j] * sum[j]
                        + b_hat[j] * b_hat[j] * ones as f64)
                        / (nf - 1.0);
                    b_std_err[j] = var_z.max(0.0).sqrt() / (p_hat * nf.sqrt());
                }
            }
            let te = [self.t[0] * e[0], self.t[1] * e[1], self.t[2] * e[2]];
            rows.push(DirectionStats {
                e,
                p_hat,
                p_exact: 0.5,
                p_std_err,
                b_hat,
                // Conditional target: (T e / 2) / p_exact = T e.
                b_exact: te,
                b_std_err,
                steered_sum,
                steered_sum_exact: [te[0] / 2.0, te[1] / 2.0, te[2] / 2.0],
            });
        }
        Ok(SimulationReport {
            directions: rows,
            count,
            seed,
            mixing_weight: self.mixing,
        })
    }
}

/// Per-direction Monte Carlo estimates next to their exact targets.
#[derive(Debug, Clone, Serialize)]
pub struct DirectionStats {
    pub e: Vec3,
    pub p_hat: f64,
    pub p_exact: f64,
    pub p_std_err: f64,
    /// Conditional Bloch vector given result 1; the exact value is `T e`.
    pub b_hat: Vec3,
    pub b_exact: Vec3,
    pub b_std_err: Vec3,
    /// Unnormalized steered vector `mean(r n)`; the exact value is `T e / 2`.
    pub steered_sum: Vec3,
    pub steered_sum_exact: Vec3,
}

/// Output of [`LhsModel::simulate`].
#[derive(Debug, Clone, Serialize)]
pub struct SimulationReport {
    pub directions: Vec<DirectionStats>,
    pub count: usize,
    pub seed: u64,
    pub mixing_weight: f64,
}

/// Deterministic quadrature check of the model constraints on a boundary
/// state: for each direction, the response probability must be 1/2 and the
/// steered vector `T e / 2`.
#[derive(Debug, Clone, Serialize)]
pub struct ModelCheck {
    pub e: Vec3,
    pub probability_deviation: f64,
    pub vector_deviation: f64,
}

#[derive(Debug, Clone, Serialize)]
pub struct ModelCheckReport {
    pub checks: Vec<ModelCheck>,
    pub max_deviation: f64,
    pub boundary_g: f64,
}

/// Verifies the deterministic model on a boundary state (`|g| <= 1e-6`) by
/// quadrature, returning per-direction and maximal deviations.
pub fn verify_model(
    ts: &TState,
    directions: &[Vec3],
    spec: &QuadratureSpec,
) -> Result<ModelCheckReport> {
    let g = boundary_value(ts)?.g;
    if g.abs() > G_BOUNDARY {
        return Err(Error::NotOnBoundary {
            g_abs: g.abs(),
            tol: G_BOUNDARY,
        });
    }
    let t = ts.diagonal();
    let density = LhsDensity::new(ts, spec)?;
    let nt = density.normalization();
    let mut checks = Vec::with_capacity(directions.len());
    let mut max_dev = 0.0f64;
    for &e in directions {
        let en = norm(e);
        if (en - 1.0).abs() > 1e-12 {
            return Err(Error::NotUnit {
                name: "e",
                norm: en,
            });
        }
        let pole = [e[0] / t[0], e[1] / t[1], e[2] / t[2]];
        let (raw_p, raw_vec) = hemisphere_density_moments(t, pole, spec)?;
        let p_dev = (nt * raw_p - 0.5).abs();
        let mut v_dev = 0.0f64;
        for j in 0..3 {
            v_dev = v_dev.max((nt * raw_vec[j] - t[j] * e[j] / 2.0).abs());
        }
        max_dev = max_dev.max(p_dev).max(v_dev);
        checks.push(ModelCheck {
            e,
            probability_deviation: p_dev,
            vector_deviation: v_dev,
        });
    }
    Ok(ModelCheckReport {
        checks,
        max_deviation: max_dev,
        boundary_g: g,
    })
}
