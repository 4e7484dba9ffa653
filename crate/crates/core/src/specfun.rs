//! Carlson symmetric elliptic integrals R_F and R_D and the Legendre forms
//! F, E, K assembled from them.
//!
//! Conventions:
//!
//! - The Legendre forms take the *parameter* m = k^2 (squared modulus) as
//!   their second argument, matching scipy and Mathematica. The closed-form
//!   normalization constant consumed by `lhs_boundary` was derived in that
//!   convention; passing a modulus k here would silently corrupt it.
//! - Complex support is deliberately narrow: principal square roots and
//!   logarithms, amplitudes on the principal branch. The crate only ever
//!   needs purely imaginary amplitudes, which map to real Carlson arguments.
//!
//! # References
//! - B. C. Carlson, Numerical computation of real or complex elliptic
//!   integrals, Numer. Algorithms 10 (1995); DLMF 19.36.

use num_complex::Complex64;

use crate::error::{Error, Result};

const ZERO: Complex64 = Complex64::new(0.0, 0.0);
const ONE: Complex64 = Complex64::new(1.0, 0.0);

/// Relative tolerance driving the duplication iteration.
const DUPLICATION_EPS: f64 = 1e-16;
const MAX_DUPLICATIONS: usize = 60;

fn on_negative_real_axis(z: Complex64) -> bool {
    z.im == 0.0 && z.re < 0.0
}

/// Carlson symmetric integral of the first kind,
/// `R_F(x, y, z) = (1/2) Int_0^inf dt / sqrt((t+x)(t+y)(t+z))`.
///
/// Arguments must avoid the negative real axis and at most one may be zero.
pub fn carlson_rf(x: Complex64, y: Complex64, z: Complex64) -> Result<Complex64> {
    let args = [x, y, z];
    if args.iter().any(|&a| on_negative_real_axis(a)) {
        return Err(Error::Domain("R_F argument on the negative real axis"));
    }
    if args.iter().filter(|a| a.norm() == 0.0).count() > 1 {
        return Err(Error::Domain("R_F needs at least two nonzero arguments"));
    }

    let a0 = (x + y + z) / 3.0;
    let q = (3.0 * DUPLICATION_EPS).powf(-1.0 / 6.0)
        * (a0 - x).norm().max((a0 - y).norm()).max((a0 - z).norm());

    let (mut xm, mut ym, mut zm, mut am) = (x, y, z, a0);
    let mut scale = 1.0;
    for _ in 0..MAX_DUPLICATIONS {
        if q * scale <= am.norm() {
            break;
        }
        let (sx, sy, sz) = (xm.sqrt(), ym.sqrt(), zm.sqrt());
        let lambda = sx * sy + sy * sz + sz * sx;
        xm = (xm + lambda) * 0.25;
        ym = (ym + lambda) * 0.25;
        zm = (zm + lambda) * 0.25;
        am = (am + lambda) * 0.25;
        scale *= 0.25;
    }

    let xs = (a0 - x) * scale / am;
    let ys = (a0 - y) * scale / am;
    let zs = -xs - ys;
    let e2 = xs * ys - zs * zs;
    let e3 = xs * ys * zs;
    // DLMF 19.36.1 through degree 7.
    let series = ONE - e2 / 10.0 + e3 / 14.0 + e2 * e2 / 24.0
        - e2 * e3 * (3.0 / 44.0)
        - e2 * e2 * e2 * (5.0 / 208.0)
        + e3 * e3 * (3.0 / 104.0)
        + e2 * e2 * e3 / 16.0;
    Ok(series / am.sqrt())
}

/// Carlson symmetric integral of the second kind (degenerate R_J),
/// `R_D(x, y, z) = (3/2) Int_0^inf dt / (sqrt((t+x)(t+y)) (t+z)^{3/2})`.
///
/// Requires `z != 0`; arguments must avoid the negative real axis.
pub fn carlson_rd(x: Complex64, y: Complex64, z: Complex64) -> Result<Complex64> {
    if [x, y, z].iter().any(|&a| on_negative_real_axis(a)) {
        return Err(Error::Domain("R_D argument on the negative real axis"));
    }
    if z.norm() == 0.0 {
        return Err(Error::Domain("R_D requires z != 0"));
    }
    if x.norm() == 0.0 && y.norm() == 0.0 {
        return Err(Error::Domain("R_D diverges for x = y = 0"));
    }

    let a0 = (x + y + z * 3.0) / 5.0;
    let q = (0.25 * DUPLICATION_EPS).powf(-1.0 / 6.0)
        * (a0 - x).norm().max((a0 - y).norm()).max((a0 - z).norm());

    let (mut xm, mut ym, mut zm, mut am) = (x, y, z, a0);
    let mut scale = 1.0;
    let mut tail = ZERO;
    for _ in 0..MAX_DUPLICATIONS {
        if q * scale <= am.norm() {
            break;
        }
        let (sx, sy, sz) = (xm.sqrt(), ym.sqrt(), zm.sqrt());
        let lambda = sx * sy + sy * sz + sz * sx;
        tail += Complex64::new(scale, 0.0) / (sz * (zm + lambda));
        xm = (xm + lambda) * 0.25;
        ym = (ym + lambda) * 0.25;
        zm = (zm + lambda) * 0.25;
        am = (am + lambda) * 0.25;
        scale *= 0.25;
    }

    let xs = (a0 - x) * scale / am;
    let ys = (a0 - y) * scale / am;
    let zs = -(xs + ys) / 3.0;
    let e2 = xs * ys - zs * zs * 6.0;
    let e3 = (xs * ys * 3.0 - zs * zs * 8.0) * zs;
    let e4 = (xs * ys - zs * zs) * zs * zs * 3.0;
    let e5 = xs * ys * zs * zs * zs;
    // DLMF 19.36.2.
    let series = ONE - e2 * (3.0 / 14.0) + e3 / 6.0 + e2 * e2 * (9.0 / 88.0)
        - e4 * (3.0 / 22.0)
        - e2 * e3 * (9.0 / 52.0)
        + e5 * (3.0 / 26.0)
        - e2 * e2 * e2 / 16.0
        + e3 * e3 * (3.0 / 40.0)
        + e2 * e4 * (3.0 / 20.0)
        + e2 * e2 * e3 * (45.0 / 272.0)
        - (e3 * e4 + e2 * e5) * (9.0 / 68.0);
    Ok(tail * 3.0 + series * scale / (am * am.sqrt()))
}

fn check_parameter(m: f64) -> Result<()> {
    if !(0.0..1.0).contains(&m) {
        return Err(Error::Domain("parameter m must lie in [0, 1)"));
    }
    Ok(())
}

/// Incomplete elliptic integral of the first kind `F(phi | m)` in the
/// parameter convention, `F(phi | m) = Int_0^phi dt / sqrt(1 - m sin^2 t)`.
///
/// Supports complex amplitudes on the principal branch; in this crate only
/// real and purely imaginary amplitudes are exercised.
pub fn legendre_f(amplitude: Complex64, m: f64) -> Result<Complex64> {
    check_parameter(m)?;
    let s = amplitude.sin();
    let c = amplitude.cos();
    let s2 = s * s;
    Ok(s * carlson_rf(c * c, ONE - s2 * m, ONE)?)
}

/// Incomplete elliptic integral of the second kind `E(phi | m)`,
/// `E(phi | m) = Int_0^phi sqrt(1 - m sin^2 t) dt`.
///
/// Unlike the first kind, `E` stays finite at m = 1 (where it degenerates
/// to `sin(phi)` for real amplitudes in [-pi/2, pi/2]), so that endpoint is
/// admitted.
pub fn legendre_e(amplitude: Complex64, m: f64) -> Result<Complex64> {
    if m == 1.0 {
        return Ok(amplitude.sin());
    }
    check_parameter(m)?;
    let s = amplitude.sin();
    let c = amplitude.cos();
    let s2 = s * s;
    let rf = carlson_rf(c * c, ONE - s2 * m, ONE)?;
    if m == 0.0 {
        return Ok(s * rf);
    }
    let rd = carlson_rd(c * c, ONE - s2 * m, ONE)?;
    Ok(s * rf - s * s2 * rd * (m / 3.0))
}

/// Complete elliptic integral of the first kind `K(m) = F(pi/2 | m)`.
pub fn k_complete(m: f64) -> Result<f64> {
    check_parameter(m)?;
    Ok(carlson_rf(ZERO, Complex64::new(1.0 - m, 0.0), ONE)?.re)
}

/// Complete elliptic integral of the second kind `E(m) = E(pi/2 | m)`,
/// finite on all of [0, 1] with `E(1) = 1`.
pub fn e_complete(m: f64) -> Result<f64> {
    if m == 1.0 {
        return Ok(1.0);
    }
    check_parameter(m)?;
    let omm = Complex64::new(1.0 - m, 0.0);
    let rf = carlson_rf(ZERO, omm, ONE)?;
    let rd = carlson_rd(ZERO, omm, ONE)?;
    Ok((rf - rd * (m / 3.0)).re)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::quadrature::gauss_legendre;
    use std::f64::consts::PI;

    fn assert_close(a: f64, b: f64, tol: f64, msg: &str) {
        assert!(
            (a - b).abs() <= tol,
            "{msg}: {a} vs {b} (diff {:.3e})",
            (a - b).abs()
        );
    }

    /// Gauss-Legendre integral of `f` over [a, b] with `n` nodes.
    fn gl_integrate(f: impl Fn(f64) -> f64, a: f64, b: f64, n: usize) -> f64 {
        let nodes = gauss_legendre(n);
        let half = 0.5 * (b - a);
        let mid = 0.5 * (a + b);
        nodes
            .iter()
            .map(|&(x, w)| w * half * f(mid + half * x))
            .sum()
    }

    /// Defining-integral oracle for R_F with positive real arguments, via the
    /// substitution t = tan^2(psi).
    fn rf_oracle(x: f64, y: f64, z: f64) -> f64 {
        gl_integrate(
            |psi| {
                let t = psi.tan().powi(2);
                let sec2 = 1.0 + t;
                psi.tan() * sec2 / ((t + x) * (t + y) * (t + z)).sqrt()
            },
            0.0,
            PI / 2.0,
            400,
        )
    }

    /// Defining-integral oracle for R_D with positive real arguments.
    fn rd_oracle(x: f64, y: f64, z: f64) -> f64 {
        gl_integrate(
            |psi| {
                let t = psi.tan().powi(2);
                let sec2 = 1.0 + t;
                3.0 * psi.tan() * sec2 / (((t + x) * (t + y)).sqrt() * (t + z).powf(1.5))
            },
            0.0,
            PI / 2.0,
            400,
        )
    }

    fn c(re: f64) -> Complex64 {
        Complex64::new(re, 0.0)
    }

    #[test]
    fn rf_scaling_identity() {
        // R_F(t, t, t) = t^{-1/2}
        assert_close(
            carlson_rf(c(1.0), c(1.0), c(1.0)).unwrap().re,
            1.0,
            1e-15,
            "R_F(1,1,1)",
        );
        assert_close(
            carlson_rf(c(4.0), c(4.0), c(4.0)).unwrap().re,
            0.5,
            1e-15,
            "R_F(4,4,4)",
        );
    }

    #[test]
    fn rf_known_values() {
        assert_close(
            carlson_rf(ZERO, c(1.0), c(1.0)).unwrap().re,
            PI / 2.0,
            1e-14,
            "R_F(0,1,1)",
        );
        // R_F(0, 1/2, 1) = K(1/2)
        assert_close(
            carlson_rf(ZERO, c(0.5), c(1.0)).unwrap().re,
            1.8540746773013719,
            1e-12,
            "K(1/2) via R_F",
        );
    }

    #[test]
    fn rf_matches_defining_integral() {
        let triples = [
            (0.3, 0.7, 1.3),
            (1.0, 2.0, 4.0),
            (0.05, 0.9, 0.91),
            (2.5, 2.5, 0.1),
        ];
        for (x, y, z) in triples {
            let got = carlson_rf(c(x), c(y), c(z)).unwrap().re;
            let want = rf_oracle(x, y, z);
            assert_close(got, want, 1e-9 * want.abs(), &format!("R_F({x},{y},{z})"));
        }
    }

    #[test]
    fn rd_matches_defining_integral() {
        assert_close(
            carlson_rd(c(1.0), c(1.0), c(1.0)).unwrap().re,
            1.0,
            1e-14,
            "R_D(1,1,1)",
        );
        for (x, y, z) in [(0.0, 2.0, 1.0), (1.0, 1.0, 4.0), (0.2, 0.8, 1.7)] {
            let got = carlson_rd(c(x), c(y), c(z)).unwrap().re;
            let want = rd_oracle(x, y, z);
            assert_close(got, want, 2e-9 * want.abs(), &format!("R_D({x},{y},{z})"));
        }
    }

    #[test]
    fn rd_e_identity_at_half() {
        // E(m) = R_F(0, 1-m, 1) - (m/3) R_D(0, 1-m, 1) against quadrature.
        let m = 0.5;
        let want = gl_integrate(|t| (1.0 - m * t.sin().powi(2)).sqrt(), 0.0, PI / 2.0, 200);
        let got = carlson_rf(ZERO, c(1.0 - m), c(1.0)).unwrap().re
            - m / 3.0 * carlson_rd(ZERO, c(1.0 - m), c(1.0)).unwrap().re;
        assert_close(got, want, 1e-12, "E(1/2) identity");
    }

    #[test]
    fn carlson_domain_errors() {
        assert!(matches!(
            carlson_rf(c(-1.0), c(1.0), c(1.0)),
            Err(Error::Domain(_))
        ));
        assert!(matches!(
            carlson_rf(ZERO, ZERO, c(1.0)),
            Err(Error::Domain(_))
        ));
        assert!(matches!(
            carlson_rd(c(1.0), c(1.0), ZERO),
            Err(Error::Domain(_))
        ));
    }

    #[test]
    fn legendre_special_values() {
        assert_close(legendre_f(ZERO, 0.3).unwrap().norm(), 0.0, 1e-15, "F(0, m)");
        assert_close(
            legendre_f(c(PI / 2.0), 0.0).unwrap().re,
            PI / 2.0,
            1e-13,
            "F(pi/2, 0)",
        );
        assert_close(
            legendre_e(c(PI / 2.0), 0.0).unwrap().re,
            PI / 2.0,
            1e-13,
            "E(pi/2, 0)",
        );
        assert_close(k_complete(0.0).unwrap(), PI / 2.0, 1e-14, "K(0)");
        assert_close(
            k_complete(0.5).unwrap(),
            1.8540746773013719,
            1e-12,
            "K(1/2)",
        );
        assert_close(
            e_complete(0.5).unwrap(),
            1.3506438810476755,
            1e-12,
            "E(1/2)",
        );
        assert_close(e_complete(1.0).unwrap(), 1.0, 0.0, "E(1)");
        assert_close(
            legendre_e(c(PI / 2.0), 1.0).unwrap().re,
            1.0,
            1e-15,
            "E(pi/2, 1)",
        );
        assert!(k_complete(1.0).is_err(), "K diverges at m = 1");
    }

    #[test]
    fn complete_integrals_match_quadrature() {
        for i in 1..=9 {
            let m = i as f64 / 10.0;
            let k_want = gl_integrate(
                |t| 1.0 / (1.0 - m * t.sin().powi(2)).sqrt(),
                0.0,
                PI / 2.0,
                400,
            );
            let e_want = gl_integrate(|t| (1.0 - m * t.sin().powi(2)).sqrt(), 0.0, PI / 2.0, 400);
            assert_close(k_complete(m).unwrap(), k_want, 1e-11, &format!("K({m})"));
            assert_close(e_complete(m).unwrap(), e_want, 1e-11, &format!("E({m})"));
        }
    }

    #[test]
    fn imaginary_amplitude_is_purely_imaginary() {
        // F(iy | m) = i Int_0^y dt / sqrt(1 + m sinh^2 t): continue the
        // defining integral to the imaginary axis and compare.
        let (y, m) = (0.5, 0.3);
        let f = legendre_f(Complex64::new(0.0, y), m).unwrap();
        assert!(f.re.abs() < 1e-14, "Re F(iy) = {:.3e}", f.re);
        let want = gl_integrate(|t| 1.0 / (1.0 + m * t.sinh().powi(2)).sqrt(), 0.0, y, 200);
        assert_close(f.im, want, 1e-12, "Im F(iy)");

        let e = legendre_e(Complex64::new(0.0, y), m).unwrap();
        assert!(e.re.abs() < 1e-14, "Re E(iy) = {:.3e}", e.re);
        let want = gl_integrate(|t| (1.0 + m * t.sinh().powi(2)).sqrt(), 0.0, y, 200);
        assert_close(e.im, want, 1e-12, "Im E(iy)");
    }

    #[test]
    fn imaginary_amplitudes_across_parameters() {
        for &y in &[0.1, 0.8, 1.9, 3.2] {
            for &m in &[0.05, 0.45, 0.95] {
                let f = legendre_f(Complex64::new(0.0, y), m).unwrap();
                let want = gl_integrate(|t| 1.0 / (1.0 + m * t.sinh().powi(2)).sqrt(), 0.0, y, 400);
                assert_close(
                    f.im,
                    want,
                    1e-11 * want.abs().max(1.0),
                    &format!("F(i{y}|{m})"),
                );
                let e = legendre_e(Complex64::new(0.0, y), m).unwrap();
                let want = gl_integrate(|t| (1.0 + m * t.sinh().powi(2)).sqrt(), 0.0, y, 400);
                assert_close(
                    e.im,
                    want,
                    1e-11 * want.abs().max(1.0),
                    &format!("E(i{y}|{m})"),
                );
            }
        }
    }
}
