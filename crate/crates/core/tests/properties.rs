//! Property tests for the geometric and analytic invariants.

use proptest::prelude::*;

use qsteer_core::ellipsoid::steered_state;
use qsteer_core::lhs_boundary::q_analytic;
use qsteer_core::lhs_sim::response;
use qsteer_core::linalg::{dot, norm, Mat3, Vec3};
use qsteer_core::qstate::{TState, TwoQubitState};
use qsteer_core::quadrature::boundary_colatitude;

const BELL_VERTICES: [[f64; 3]; 4] = [
    [1.0, -1.0, 1.0],
    [-1.0, 1.0, 1.0],
    [1.0, 1.0, -1.0],
    [-1.0, -1.0, -1.0],
];

fn tetrahedron_point(w: [f64; 4]) -> Vec3 {
    let total: f64 = w.iter().sum();
    let mut t = [0.0; 3];
    for (wi, vert) in w.iter().zip(BELL_VERTICES.iter()) {
        for (ti, vi) in t.iter_mut().zip(vert.iter()) {
            *ti += wi / total * vi;
        }
    }
    t
}

fn rotation(axis: Vec3, angle: f64) -> Mat3 {
    let a = norm(axis).max(1e-9);
    let u = [axis[0] / a, axis[1] / a, axis[2] / a];
    let (s, c) = angle.sin_cos();
    let k = Mat3([[0.0, -u[2], u[1]], [u[2], 0.0, -u[0]], [-u[1], u[0], 0.0]]);
    Mat3::IDENTITY
        .add(&k.scaled(s))
        .add(&k.mul(&k).scaled(1.0 - c))
}

fn unit_vector(theta: f64, phi: f64) -> Vec3 {
    [
        theta.sin() * phi.cos(),
        theta.sin() * phi.sin(),
        theta.cos(),
    ]
}

prop_compose! {
    fn arb_weights()(w in prop::array::uniform4(1e-3..1.0f64)) -> [f64; 4] { w }
}

prop_compose! {
    fn arb_rotation()(
        ax in prop::array::uniform3(-1.0..1.0f64),
        angle in 0.0..(2.0 * std::f64::consts::PI),
    ) -> Mat3 {
        rotation([ax[0], ax[1], ax[2] + 1e-6], angle)
    }
}

prop_compose! {
    fn arb_direction()(theta in 0.0..std::f64::consts::PI, phi in 0.0..(2.0 * std::f64::consts::PI)) -> Vec3 {
        unit_vector(theta, phi)
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn canonical_form_round_trips(
        w in arb_weights(),
        shrink in 0.0..0.95f64,
        ra in arb_rotation(),
        rb in arb_rotation(),
    ) {
        let t0 = tetrahedron_point(w);
        let d = Mat3::diag([t0[0] * shrink, t0[1] * shrink, t0[2] * shrink]);
        let t = ra.mul(&d).mul(&rb.transpose());
        let state = TwoQubitState::new([0.0; 3], [0.0; 3], t).unwrap();
        let cf = state.canonical_form();
        prop_assert!(cf.reconstruct().max_abs_diff(&t) < 1e-12);
        prop_assert!((cf.r_a.det() - 1.0).abs() < 1e-12);
        prop_assert!((cf.r_b.det() - 1.0).abs() < 1e-12);
        prop_assert!(cf.d[0].abs() >= cf.d[1].abs() && cf.d[1].abs() >= cf.d[2].abs());
    }

    #[test]
    fn steered_states_inside_bloch_ball(
        w in arb_weights(),
        shrink in 0.0..0.9f64,
        e in arb_direction(),
    ) {
        let t0 = tetrahedron_point(w);
        let ts = TState::new([t0[0] * shrink, t0[1] * shrink, t0[2] * shrink]).unwrap();
        let (p, be) = steered_state(&ts.embed(), e).unwrap();
        prop_assert!((0.0..=1.0).contains(&p));
        prop_assert!(norm(be) <= 1.0 + 1e-12);
    }

    #[test]
    fn boundary_colatitude_orthogonality(v in arb_direction(), phi in 0.0..(2.0 * std::f64::consts::PI)) {
        let v = if v[2] < 0.0 { [-v[0], -v[1], -v[2]] } else { v };
        let chi = boundary_colatitude(v, phi);
        prop_assert!((0.0..=std::f64::consts::PI).contains(&chi));
        let n = unit_vector(chi, phi);
        prop_assert!(dot(n, v).abs() < 1e-12);
    }

    #[test]
    fn q_analytic_is_scale_invariant(
        t in prop::array::uniform3(0.05..1.0f64),
        v in arb_direction(),
        lambda in 0.01..100.0f64,
    ) {
        let q1 = q_analytic(t, v).unwrap();
        let q2 = q_analytic(t, [v[0] * lambda, v[1] * lambda, v[2] * lambda]).unwrap();
        for i in 0..3 {
            prop_assert!((q1[i] - q2[i]).abs() <= 1e-12 * norm(q1));
        }
    }

    #[test]
    fn response_partitions_the_sphere(
        t in prop::array::uniform3(0.05..1.0f64),
        e in arb_direction(),
        n in arb_direction(),
    ) {
        let a = response(t, e, n).unwrap();
        let b = response(t, e, [-n[0], -n[1], -n[2]]).unwrap();
        // Opposite hidden states answer oppositely except on the measure-zero
        // boundary circle.
        let on_boundary = (n[0] * e[0] / t[0] + n[1] * e[1] / t[1] + n[2] * e[2] / t[2]).abs() < 1e-12;
        prop_assert!(a != b || on_boundary);
    }
}
