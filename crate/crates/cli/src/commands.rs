//! Implementations behind the subcommands: each returns the rendered payload
//! plus the process exit code (0 success, 1 verification failure; usage and
//! I/O problems surface as errors and exit 2).

use std::f64::consts::PI;
use std::fs;
use std::path::Path;

use anyhow::{bail, Context, Result};
use serde::Serialize;

use qsteer_core::ellipsoid::{steering_ellipsoid, surface_radius};
use qsteer_core::lhs_boundary::{normalization, normalization_closed_form};
use qsteer_core::lhs_sim::{verify_model, LhsModel};
use qsteer_core::linalg::Vec3;
use qsteer_core::qstate::{StateInput, TState, TwoQubitState};
use qsteer_core::quadrature::{CounterRng, QuadratureSpec};
use qsteer_core::steer_criteria::classify;

use crate::figures::{
    boundary_grid_rows, figure1a_rows, figure1b_rows, symmetric_range_rows, verify_theorem1,
};
use crate::output::{render_record, render_rows, Format};

/// Stream id for generating default measurement directions; distinct from
/// the per-direction sampling streams `0..n`.
const DIRECTION_STREAM: u64 = u64::MAX;

pub fn load_state(path: &Path) -> Result<TwoQubitState> {
    let text = fs::read_to_string(path)
        .with_context(|| format!("reading state file {}", path.display()))?;
    let input: StateInput = serde_json::from_str(&text)
        .with_context(|| format!("parsing state file {}", path.display()))?;
    input
        .into_state()
        .with_context(|| format!("validating state from {}", path.display()))
}

pub fn parse_triple(raw: &str) -> Result<Vec3> {
    let parts: Vec<&str> = raw.split(',').collect();
    if parts.len() != 3 {
        bail!("expected three comma-separated values, got `{raw}`");
    }
    let mut t = [0.0; 3];
    for (slot, part) in t.iter_mut().zip(parts.iter()) {
        *slot = part
            .trim()
            .parse::<f64>()
            .with_context(|| format!("parsing `{part}` as a number"))?;
    }
    Ok(t)
}

fn load_directions(path: Option<&Path>, count: usize, seed: u64) -> Result<Vec<Vec3>> {
    match path {
        Some(path) => {
            let text = fs::read_to_string(path)
                .with_context(|| format!("reading directions file {}", path.display()))?;
            let dirs: Vec<Vec3> = serde_json::from_str(&text)
                .with_context(|| format!("parsing directions file {}", path.display()))?;
            if dirs.is_empty() {
                bail!("directions file {} is empty", path.display());
            }
            Ok(dirs)
        }
        None => {
            let mut rng = CounterRng::new(seed, DIRECTION_STREAM);
            Ok((0..count.max(1)).map(|_| rng.unit_vector()).collect())
        }
    }
}

pub fn run_classify(state_path: &Path) -> Result<String> {
    let state = load_state(state_path)?;
    let verdict = classify(&state);
    Ok(render_record(&verdict))
}

#[derive(Serialize)]
struct EllipsoidRecord {
    center: Vec3,
    semiaxes: Vec3,
    orientation: [[f64; 3]; 3],
    shape: [[f64; 3]; 3],
    volume: f64,
}

pub fn run_ellipsoid(state_path: &Path, surface: Option<usize>, format: Format) -> Result<String> {
    let state = load_state(state_path)?;
    let ell = steering_ellipsoid(&state)?;
    match surface {
        None => Ok(render_record(&EllipsoidRecord {
            center: ell.center,
            semiaxes: ell.semiaxes,
            orientation: ell.orientation.0,
            shape: ell.shape.0,
            volume: ell.volume(),
        })),
        Some(n) => {
            if n < 2 {
                bail!("--surface needs at least 2 grid points");
            }
            // Exactly diagonal T-states get the radial surface function;
            // everything else uses the ellipsoid parameterization around
            // the center.
            let tstate = (state.has_maximally_mixed_marginals() && is_exactly_diagonal(&state))
                .then(|| TState::new(diagonal_of(&state)))
                .and_then(|r| r.ok());
            let mut rows = Vec::with_capacity(n * n);
            for i in 0..n {
                let theta = PI * i as f64 / (n - 1) as f64;
                for j in 0..n {
                    let phi = 2.0 * PI * j as f64 / n as f64;
                    let point = match &tstate {
                        Some(ts) => {
                            let r = surface_radius(ts, theta, phi)?;
                            [
                                r * theta.sin() * phi.cos(),
                                r * theta.sin() * phi.sin(),
                                r * theta.cos(),
                            ]
                        }
                        None => ell.surface_point(theta, phi),
                    };
                    rows.push(vec![
                        Some(theta),
                        Some(phi),
                        Some(point[0]),
                        Some(point[1]),
                        Some(point[2]),
                    ]);
                }
            }
            Ok(render_rows(&["theta", "phi", "x", "y", "z"], &rows, format))
        }
    }
}

fn diagonal_of(state: &TwoQubitState) -> Vec3 {
    let t = state.correlation().0;
    [t[0][0], t[1][1], t[2][2]]
}

fn is_exactly_diagonal(state: &TwoQubitState) -> bool {
    let t = state.correlation().0;
    (0..3).all(|i| (0..3).all(|j| i == j || t[i][j] == 0.0))
}

pub fn run_boundary_grid(grid: usize, spec: &QuadratureSpec, format: Format) -> Result<String> {
    if grid < 2 {
        bail!("--grid needs at least 2 points");
    }
    let rows: Vec<Vec<Option<f64>>> = boundary_grid_rows(grid, spec)
        .into_iter()
        .map(|(s1, s2, s3)| vec![Some(s1), Some(s2), s3])
        .collect();
    Ok(render_rows(&["s1", "s2", "s3_boundary"], &rows, format))
}

pub fn run_boundary_symmetric(lo: f64, hi: f64, n: usize, format: Format) -> Result<String> {
    if !(lo > 0.0 && hi > lo && n >= 2) {
        bail!("--u-range needs 0 < LO < HI and N >= 2");
    }
    let rows: Vec<Vec<Option<f64>>> = symmetric_range_rows(lo, hi, n)
        .into_iter()
        .map(|r| {
            vec![
                Some(r.u),
                Some(r.s1),
                Some(r.s3_necessary),
                Some(r.s3_linear),
                r.s3_nonlinear,
            ]
        })
        .collect();
    Ok(render_rows(
        &["u", "s1", "s3_necessary", "s3_linear", "s3_nonlinear"],
        &rows,
        format,
    ))
}

pub fn run_figure1a(grid: usize, spec: &QuadratureSpec, format: Format) -> Result<String> {
    if grid < 2 {
        bail!("--grid needs at least 2 points");
    }
    let rows: Vec<Vec<Option<f64>>> = figure1a_rows(grid, spec)
        .into_iter()
        .map(|r| {
            vec![
                Some(r.s1),
                Some(r.s2),
                r.s3_boundary,
                Some(r.s3_linear_plane),
                Some(r.separable_plane),
            ]
        })
        .collect();
    Ok(render_rows(
        &[
            "s1",
            "s2",
            "s3_boundary",
            "s3_linear_plane",
            "separable_plane",
        ],
        &rows,
        format,
    ))
}

pub fn run_figure1b(samples: usize, format: Format) -> Result<String> {
    if samples < 2 {
        bail!("--samples needs at least 2 points");
    }
    let rows: Vec<Vec<Option<f64>>> = figure1b_rows(samples)
        .into_iter()
        .map(|r| {
            vec![
                Some(r.s1),
                Some(r.s3_necessary),
                Some(r.s3_linear),
                r.s3_nonlinear,
            ]
        })
        .collect();
    Ok(render_rows(
        &["s1", "s3_necessary", "s3_linear", "s3_nonlinear"],
        &rows,
        format,
    ))
}

pub fn run_verify_theorem1(
    trials: usize,
    seed: u64,
    isotropic_only: bool,
    spec: &QuadratureSpec,
) -> Result<(String, i32)> {
    if trials < 1 {
        bail!("--trials needs at least 1");
    }
    let report = verify_theorem1(trials, seed, isotropic_only, spec);
    let code = if report.pass { 0 } else { 1 };
    Ok((render_record(&report), code))
}

#[derive(Serialize)]
struct NtRecord {
    t: Vec3,
    semiaxes: Vec3,
    quadrature: f64,
    closed_form: Option<f64>,
    closed_form_note: Option<String>,
}

pub fn run_ntconst(raw_t: &str, spec: &QuadratureSpec) -> Result<String> {
    let t = parse_triple(raw_t)?;
    let quadrature = normalization(t, spec)?;
    let mut s = [t[0].abs(), t[1].abs(), t[2].abs()];
    let semiaxes = s;
    s.sort_by(|a, b| a.partial_cmp(b).unwrap());
    let (closed_form, note) = match normalization_closed_form(s[0], s[1], s[2]) {
        Ok(v) => (Some(v), None),
        Err(e) => (None, Some(e.to_string())),
    };
    Ok(render_record(&NtRecord {
        t,
        semiaxes,
        quadrature,
        closed_form,
        closed_form_note: note,
    }))
}

pub fn run_lhs_simulate(
    raw_t: &str,
    count: usize,
    seed: u64,
    directions_path: Option<&Path>,
    num_directions: usize,
    spec: &QuadratureSpec,
) -> Result<String> {
    if count < 2 {
        bail!("--count needs at least 2 samples");
    }
    let ts = TState::new(parse_triple(raw_t)?)?;
    let directions = load_directions(directions_path, num_directions, seed)?;
    let model = LhsModel::new(&ts, spec)?;
    let report = model.simulate(&directions, count, seed)?;
    Ok(render_record(&report))
}

/// Exit-1 threshold for the deterministic model check.
pub const LHS_VERIFY_THRESHOLD: f64 = 1e-7;

pub fn run_lhs_verify(
    raw_t: &str,
    directions_path: Option<&Path>,
    num_directions: usize,
    seed: u64,
    spec: &QuadratureSpec,
) -> Result<(String, i32)> {
    let ts = TState::new(parse_triple(raw_t)?)?;
    let directions = load_directions(directions_path, num_directions, seed)?;
    let report = verify_model(&ts, &directions, spec)?;
    let code = if report.max_deviation <= LHS_VERIFY_THRESHOLD {
        0
    } else {
        1
    };
    Ok((render_record(&report), code))
}
