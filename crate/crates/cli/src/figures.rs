//! Row generators for the boundary-surface datasets and the verification
//! sweep. The CLI prints these; the acceptance suite consumes them directly.

use std::f64::consts::PI;

use serde::Serialize;

use qsteer_core::lhs_boundary::{q_analytic, q_numeric};
use qsteer_core::linalg::{norm, sub, Vec3};
use qsteer_core::quadrature::{CounterRng, QuadratureSpec};
use qsteer_core::steer_criteria::{boundary_s3_with_spec, boundary_symmetric};

/// One row of the boundary-surface dataset over the `(s1, s2)` unit square.
#[derive(Debug, Clone, Copy)]
pub struct SurfaceRow {
    pub s1: f64,
    pub s2: f64,
    /// Root of the boundary equation, when the column crosses the surface.
    pub s3_boundary: Option<f64>,
    /// The linear sufficient condition `s3 = 3/2 - s1 - s2`, clamped to [0, 1].
    pub s3_linear_plane: f64,
    /// The separability plane `s3 = 1 - s1 - s2`, clamped to [0, 1].
    pub separable_plane: f64,
}

/// Grid values `i/grid` for `i = 1..=grid`; the Werner point appears for
/// even grids.
pub fn grid_values(grid: usize) -> Vec<f64> {
    (1..=grid).map(|i| i as f64 / grid as f64).collect()
}

/// The full-figure dataset: boundary roots plus the two reference planes on
/// a `grid x grid` sweep of the unit square.
pub fn figure1a_rows(grid: usize, spec: &QuadratureSpec) -> Vec<SurfaceRow> {
    assert!(grid >= 2, "grid must be at least 2");
    let values = grid_values(grid);
    let mut rows = Vec::with_capacity(grid * grid);
    for &s1 in &values {
        for &s2 in &values {
            rows.push(SurfaceRow {
                s1,
                s2,
                s3_boundary: boundary_s3_with_spec(s1, s2, spec).ok(),
                s3_linear_plane: (1.5 - s1 - s2).clamp(0.0, 1.0),
                separable_plane: (1.0 - s1 - s2).clamp(0.0, 1.0),
            });
        }
    }
    rows
}

/// Bare boundary-root sweep `(s1, s2, s3*)`.
pub fn boundary_grid_rows(grid: usize, spec: &QuadratureSpec) -> Vec<(f64, f64, Option<f64>)> {
    assert!(grid >= 2, "grid must be at least 2");
    let values = grid_values(grid);
    let mut rows = Vec::with_capacity(grid * grid);
    for &s1 in &values {
        for &s2 in &values {
            rows.push((s1, s2, boundary_s3_with_spec(s1, s2, spec).ok()));
        }
    }
    rows
}

/// One row of the symmetric-slice (`s1 = s2`) cross-section.
#[derive(Debug, Clone, Copy)]
pub struct SliceRow {
    pub u: f64,
    pub s1: f64,
    /// The necessary-condition boundary from the closed form.
    pub s3_necessary: f64,
    /// The linear plane `s3 = 3/2 - 2 s1` (unclamped).
    pub s3_linear: f64,
    /// The nonlinear sufficient condition's boundary along the slice, when
    /// it intersects `[0, 1]`.
    pub s3_nonlinear: Option<f64>,
}

/// Where the nonlinear condition `max_k f_k = 0` crosses along the slice
/// `s1 = s2`: the smaller of the two branch roots, or `None` once the slice
/// is steerable already at `s3 = 0` (`s1 >= 2/pi`).
pub fn nonlinear_slice_root(s1: f64) -> Option<f64> {
    if s1 >= 2.0 / PI {
        return None;
    }
    let root_a = (1.0 - (PI * s1 / 2.0).powi(2)).max(0.0).sqrt();
    let root_b = 4.0 / PI * (1.0 - s1 * s1).max(0.0).sqrt() - s1;
    let root = root_a.min(root_b);
    (0.0..=1.0).contains(&root).then_some(root)
}

fn slice_row(u: f64) -> SliceRow {
    let (s1, s3) = boundary_symmetric(u);
    SliceRow {
        u,
        s1,
        s3_necessary: s3,
        s3_linear: 1.5 - 2.0 * s1,
        s3_nonlinear: nonlinear_slice_root(s1),
    }
}

/// The symmetric-slice dataset, swept geometrically in `u = s3/s1` from 0.01
/// to 100 with the landmark ratios {0.01, 1/4, 1/2, 1, 2, 4} always present.
/// Rows come out sorted by `s1`.
pub fn figure1b_rows(samples: usize) -> Vec<SliceRow> {
    assert!(samples >= 2, "need at least two sample points");
    let (lo, hi) = (0.01f64, 100.0f64);
    let mut us: Vec<f64> = (0..samples)
        .map(|i| lo * (hi / lo).powf(i as f64 / (samples - 1) as f64))
        .collect();
    for landmark in [0.01, 0.25, 0.5, 1.0, 2.0, 4.0] {
        if !us.iter().any(|&u| (u - landmark).abs() < 1e-12) {
            us.push(landmark);
        }
    }
    us.sort_by(|a, b| a.partial_cmp(b).unwrap());
    let mut rows: Vec<SliceRow> = us.into_iter().map(slice_row).collect();
    rows.sort_by(|a, b| a.s1.partial_cmp(&b.s1).unwrap());
    rows
}

/// Slice rows for an explicit, uniformly spaced `u` range.
pub fn symmetric_range_rows(lo: f64, hi: f64, n: usize) -> Vec<SliceRow> {
    assert!(n >= 2 && lo > 0.0 && hi > lo, "need 0 < lo < hi and n >= 2");
    (0..n)
        .map(|i| slice_row(lo + (hi - lo) * i as f64 / (n - 1) as f64))
        .collect()
}

/// Outcome of the hemisphere-integral oracle sweep.
#[derive(Debug, Clone, Serialize)]
pub struct TheoremReport {
    pub trials: usize,
    pub seed: u64,
    pub isotropic_only: bool,
    pub max_rel_deviation: f64,
    pub threshold: f64,
    pub pass: bool,
}

/// Threshold for declaring a numerical regression in the oracle sweep.
pub const THEOREM_THRESHOLD: f64 = 1e-7;

/// Compares the closed-form hemisphere integral against quadrature over
/// random full-rank diagonal matrices (entries uniform in [0.05, 1] with
/// random signs) and random unit directions.
pub fn verify_theorem1(
    trials: usize,
    seed: u64,
    isotropic_only: bool,
    spec: &QuadratureSpec,
) -> TheoremReport {
    assert!(trials >= 1, "at least one trial");
    let mut rng = CounterRng::new(seed, 0);
    let mut max_rel: f64 = 0.0;
    for _ in 0..trials {
        let t: Vec3 = if isotropic_only {
            [1.0, 1.0, 1.0]
        } else {
            let mut t = [0.0; 3];
            for x in t.iter_mut() {
                let mag = 0.05 + 0.95 * rng.next_f64();
                *x = if rng.next_f64() < 0.5 { -mag } else { mag };
            }
            t
        };
        let v = rng.unit_vector();
        let numeric = q_numeric(t, v, spec).expect("full-rank by construction");
        let analytic = q_analytic(t, v).expect("full-rank by construction");
        max_rel = max_rel.max(norm(sub(numeric, analytic)) / norm(analytic));
    }
    TheoremReport {
        trials,
        seed,
        isotropic_only,
        max_rel_deviation: max_rel,
        threshold: THEOREM_THRESHOLD,
        pass: max_rel <= THEOREM_THRESHOLD,
    }
}
