//! Deterministic integration over the unit sphere and over arbitrary
//! hemispheres, plus reproducible rejection sampling of spherical densities.
//!
//! The product rule is Gauss-Legendre in cos(theta) crossed with the uniform
//! trapezoid rule in phi (spectrally accurate for periodic integrands). A
//! hemisphere `{n : n.v >= 0}` is handled by rotating `v` to the pole and
//! integrating theta over [0, pi/2]; the discontinuous boundary is mapped
//! exactly onto the equator, so no indicator function is ever sampled.

use std::collections::HashMap;
use std::f64::consts::PI;
use std::sync::{Arc, Mutex, OnceLock};

use crate::error::{Error, Result};
use crate::linalg::{Mat3, Vec3};

/// Orders and target accuracy of the tensor-product sphere rule.
///
/// `target_rel_tol` documents the accuracy expected of the default rule on
/// the smooth integrands in this crate; it is not enforced at runtime.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct QuadratureSpec {
    /// Number of Gauss-Legendre nodes in cos(theta). Must be >= 2.
    pub order_theta: usize,
    /// Number of uniform trapezoid nodes in phi. Must be >= 4.
    pub order_phi: usize,
    /// Documented relative accuracy of the rule on smooth integrands.
    pub target_rel_tol: f64,
}

impl Default for QuadratureSpec {
    fn default() -> Self {
        QuadratureSpec {
            order_theta: 96,
            order_phi: 192,
            target_rel_tol: 1e-10,
        }
    }
}

/// Gauss-Legendre nodes and weights on [-1, 1].
///
/// Newton iteration on the Legendre recurrence, converged to 1e-15 on the
/// node; results are cached per order and shared across threads.
pub fn gauss_legendre(order: usize) -> Arc<Vec<(f64, f64)>> {
    assert!(order >= 2, "Gauss-Legendre order must be at least 2");
    type NodeCache = Mutex<HashMap<usize, Arc<Vec<(f64, f64)>>>>;
    static CACHE: OnceLock<NodeCache> = OnceLock::new();
    let cache = CACHE.get_or_init(|| Mutex::new(HashMap::new()));
    let mut guard = cache.lock().unwrap();
    if let Some(nodes) = guard.get(&order) {
        return Arc::clone(nodes);
    }
    let nodes = Arc::new(compute_gauss_legendre(order));
    guard.insert(order, Arc::clone(&nodes));
    nodes
}

fn compute_gauss_legendre(order: usize) -> Vec<(f64, f64)> {
    let n = order;
    let mut out = Vec::with_capacity(n);
    for i in 0..n {
        // Tricomi-style initial guess, then Newton.
        let mut x = (PI * (i as f64 + 0.75) / (n as f64 + 0.5)).cos();
        let mut dp = 0.0;
        for _ in 0..100 {
            let (p, d) = legendre_and_derivative(n, x);
            dp = d;
            let dx = p / d;
            x -= dx;
            if dx.abs() <= 1e-15 {
                let (p2, d2) = legendre_and_derivative(n, x);
                dp = d2;
                x -= p2 / d2;
                break;
            }
        }
        let w = 2.0 / ((1.0 - x * x) * dp * dp);
        out.push((x, w));
    }
    out.sort_by(|a, b| a.0.partial_cmp(&b.0).unwrap());
    // The weights sum to 2 exactly; rescaling removes the O(n*eps) rounding
    // bias of the recurrence so that constants integrate to full precision.
    let total: f64 = out.iter().map(|&(_, w)| w).sum();
    let fix = 2.0 / total;
    for (_, w) in out.iter_mut() {
        *w *= fix;
    }
    out
}

/// Compensated accumulator for the integration loops.
#[derive(Clone, Copy)]
struct Kahan {
    sum: f64,
    carry: f64,
}

impl Kahan {
    const ZERO: Kahan = Kahan {
        sum: 0.0,
        carry: 0.0,
    };

    #[inline]
    fn add(&mut self, value: f64) {
        let y = value - self.carry;
        let t = self.sum + y;
        self.carry = (t - self.sum) - y;
        self.sum = t;
    }
}

fn legendre_and_derivative(n: usize, x: f64) -> (f64, f64) {
    let mut p0 = 1.0;
    let mut p1 = x;
    for k in 2..=n {
        let kf = k as f64;
        let p2 = ((2.0 * kf - 1.0) * x * p1 - (kf - 1.0) * p0) / kf;
        p0 = p1;
        p1 = p2;
    }
    let d = n as f64 * (x * p1 - p0) / (x * x - 1.0);
    (p1, d)
}

/// Integrates a vector-valued `f` over the whole unit sphere.
pub fn sphere_integral<const K: usize>(
    f: impl Fn(Vec3) -> [f64; K],
    spec: &QuadratureSpec,
) -> [f64; K] {
    let gl = gauss_legendre(spec.order_theta);
    let n_phi = spec.order_phi;
    let w_phi = 2.0 * PI / n_phi as f64;
    let mut acc = [Kahan::ZERO; K];
    for &(z, wz) in gl.iter() {
        let r = (1.0 - z * z).max(0.0).sqrt();
        for k in 0..n_phi {
            let phi = 2.0 * PI * k as f64 / n_phi as f64;
            let n = [r * phi.cos(), r * phi.sin(), z];
            let val = f(n);
            let w = wz * w_phi;
            for (a, v) in acc.iter_mut().zip(val.iter()) {
                a.add(w * v);
            }
        }
    }
    acc.map(|k| k.sum)
}

/// Scalar convenience wrapper around [`sphere_integral`].
pub fn sphere_integral_scalar(f: impl Fn(Vec3) -> f64, spec: &QuadratureSpec) -> f64 {
    sphere_integral(|n| [f(n)], spec)[0]
}

/// Integrates `f` over the hemisphere `{n : n.v >= 0}`.
///
/// The domain is rotated so its boundary great circle becomes the equator,
/// then theta runs over [0, pi/2] only; `f` is evaluated at the rotated
/// nodes. This keeps spectral accuracy for integrands that are smooth on the
/// closed hemisphere.
pub fn hemisphere_integral<const K: usize>(
    f: impl Fn(Vec3) -> [f64; K],
    v: Vec3,
    spec: &QuadratureSpec,
) -> [f64; K] {
    let rot = rotation_to_pole(v);
    let gl = gauss_legendre(spec.order_theta);
    let n_phi = spec.order_phi;
    let w_phi = 2.0 * PI / n_phi as f64;
    let mut acc = [Kahan::ZERO; K];
    for &(x, wx) in gl.iter() {
        // Map [-1, 1] onto cos(theta) in [0, 1].
        let z = 0.5 * (x + 1.0);
        let wz = 0.5 * wx;
        let r = (1.0 - z * z).max(0.0).sqrt();
        for k in 0..n_phi {
            let phi = 2.0 * PI * k as f64 / n_phi as f64;
            let local = [r * phi.cos(), r * phi.sin(), z];
            let n = rot.r.mul_vec(local);
            let val = f(n);
            let w = wz * w_phi;
            for (a, u) in acc.iter_mut().zip(val.iter()) {
                a.add(w * u);
            }
        }
    }
    acc.map(|k| k.sum)
}

/// Scalar convenience wrapper around [`hemisphere_integral`].
pub fn hemisphere_integral_scalar(f: impl Fn(Vec3) -> f64, v: Vec3, spec: &QuadratureSpec) -> f64 {
    hemisphere_integral(|n| [f(n)], v, spec)[0]
}

/// A proper rotation taking the north pole (0,0,1) to a given unit vector,
/// together with that vector's colatitude and azimuth.
#[derive(Debug, Clone, Copy)]
pub struct RotationToPole {
    /// The rotation matrix: `r * (0,0,1)^T = v`.
    pub r: Mat3,
    /// Colatitude of `v` in [0, pi].
    pub alpha: f64,
    /// Azimuth of `v` in [0, 2pi).
    pub beta: f64,
}

/// Builds the rotation R = Rz(beta) Ry(alpha) mapping the pole to `v`.
///
/// `v` is assumed normalized; `v = +-z` degenerates to beta = 0.
pub fn rotation_to_pole(v: Vec3) -> RotationToPole {
    let alpha = v[2].clamp(-1.0, 1.0).acos();
    let sin_alpha = (v[0] * v[0] + v[1] * v[1]).sqrt();
    let beta = if sin_alpha < 1e-300 {
        0.0
    } else {
        let b = v[1].atan2(v[0]);
        if b < 0.0 {
            b + 2.0 * PI
        } else {
            b
        }
    };
    let (sa, ca) = (alpha.sin(), alpha.cos());
    let (sb, cb) = (beta.sin(), beta.cos());
    let r = Mat3([
        [ca * cb, -sb, sa * cb],
        [ca * sb, cb, sa * sb],
        [-sa, 0.0, ca],
    ]);
    RotationToPole { r, alpha, beta }
}

/// Colatitude chi(phi) at which the great circle `{n : n.v = 0}` crosses the
/// azimuth `phi`, for `v` in the closed northern hemisphere.
///
/// Satisfies `n(chi, phi) . v = 0`. For `v` at the pole the boundary is the
/// equator and chi = pi/2 identically.
pub fn boundary_colatitude(v: Vec3, phi: f64) -> f64 {
    debug_assert!(v[2] >= -1e-12, "v must point into the northern hemisphere");
    let rot = rotation_to_pole(v);
    let (alpha, beta) = (rot.alpha, rot.beta);
    let c = (phi - beta).cos();
    let den = (alpha.cos().powi(2) + alpha.sin().powi(2) * c * c).sqrt();
    if den < 1e-12 {
        // v on the equator and phi a quarter turn away: the great circle
        // contains the whole meridian, so every colatitude is a crossing.
        return PI / 2.0;
    }
    let cos_chi = -alpha.sin() * c / den;
    let sin_chi = alpha.cos() / den;
    sin_chi.atan2(cos_chi).rem_euclid(2.0 * PI).clamp(0.0, PI)
}

/// Counter-based deterministic generator: output i is a strong mix of
/// (seed, stream, i), so disjoint streams can be sampled independently and
/// in parallel while staying bit-reproducible.
#[derive(Debug, Clone)]
pub struct CounterRng {
    key: u64,
    counter: u64,
}

const GOLDEN: u64 = 0x9e37_79b9_7f4a_7c15;

fn mix64(mut z: u64) -> u64 {
    z = (z ^ (z >> 30)).wrapping_mul(0xbf58_476d_1ce4_e5b9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94d0_49bb_1331_11eb);
    z ^ (z >> 31)
}

impl CounterRng {
    pub fn new(seed: u64, stream: u64) -> Self {
        let key = mix64(seed ^ mix64(stream.wrapping_mul(GOLDEN).wrapping_add(1)));
        CounterRng { key, counter: 0 }
    }

    pub fn next_u64(&mut self) -> u64 {
        let out = mix64(self.key.wrapping_add(self.counter.wrapping_mul(GOLDEN)));
        self.counter += 1;
        out
    }

    /// Uniform double in [0, 1) with 53 random bits.
    pub fn next_f64(&mut self) -> f64 {
        (self.next_u64() >> 11) as f64 * (1.0 / 9007199254740992.0)
    }

    /// Uniform point on the unit sphere.
    pub fn unit_vector(&mut self) -> Vec3 {
        let z = 2.0 * self.next_f64() - 1.0;
        let phi = 2.0 * PI * self.next_f64();
        let r = (1.0 - z * z).max(0.0).sqrt();
        [r * phi.cos(), r * phi.sin(), z]
    }
}

/// Outcome of [`sample_density`]: accepted points plus acceptance statistics.
#[derive(Debug, Clone)]
pub struct SphereSamples {
    pub samples: Vec<Vec3>,
    pub attempts: u64,
    pub acceptance_rate: f64,
}

/// Draws `count` points from a spherical probability density by rejection
/// against the uniform measure.
///
/// `bound` must dominate `density` everywhere; a sampled value above the
/// bound aborts with [`Error::BoundViolated`] since the output would be
/// silently biased. Deterministic for a given `(seed, stream)`; each attempt
/// consumes exactly three counter values.
pub fn sample_density_stream(
    density: impl Fn(Vec3) -> f64,
    bound: f64,
    seed: u64,
    stream: u64,
    count: usize,
) -> Result<SphereSamples> {
    assert!(bound > 0.0 && bound.is_finite(), "bound must be positive");
    let mut rng = CounterRng::new(seed, stream);
    let mut samples = Vec::with_capacity(count);
    let mut attempts = 0u64;
    while samples.len() < count {
        let n = rng.unit_vector();
        let u = rng.next_f64();
        attempts += 1;
        let p = density(n);
        if p > bound * (1.0 + 1e-12) {
            return Err(Error::BoundViolated { value: p, bound });
        }
        if u * bound < p {
            samples.push(n);
        }
    }
    Ok(SphereSamples {
        samples,
        attempts,
        acceptance_rate: count as f64 / attempts as f64,
    })
}

/// [`sample_density_stream`] on the default stream 0.
pub fn sample_density(
    density: impl Fn(Vec3) -> f64,
    bound: f64,
    seed: u64,
    count: usize,
) -> Result<SphereSamples> {
    sample_density_stream(density, bound, seed, 0, count)
}
