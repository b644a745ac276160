mod common;

use std::f64::consts::{FRAC_PI_2, PI, TAU};

use num_complex::Complex;
use proptest::prelude::*;
use rand::Rng;
use spinor_squeeze::frames::{expectation_complex, frame_or_lab, unrotate_state};
use spinor_squeeze::squeezing::squeeze_threshold;
use spinor_squeeze::*;

fn orientation() -> impl Strategy<Value = Orientation> {
    (0.0..PI, 0.0..TAU).prop_map(|(t, p)| Orientation::new(t, p))
}

fn rotation() -> impl Strategy<Value = Rotation> {
    (0.0..TAU, 0.0..PI, 0.0..TAU).prop_map(|(a, b, g)| Rotation::new(a, b, g))
}

fn state() -> impl Strategy<Value = State> {
    prop::array::uniform8(-1.0..1.0f64)
        .prop_filter("near-zero vector", |v| v.iter().map(|x| x * x).sum::<f64>() > 1e-2)
        .prop_map(|v| {
            let amps = [0, 1, 2, 3].map(|k| Complex::new(v[2 * k], v[2 * k + 1]));
            State::normalized(amps).unwrap()
        })
}

fn transverse(s: &State, which: Subsystem) -> [Vec3<f64>; 2] {
    let f = frame_or_lab(lakin_frame(s, which));
    [f.n_perp, f.n_perp2]
}

/// Largest singular value of a real 2x2 matrix, without the cancellation of
/// the characteristic-polynomial route near degenerate singular values.
fn sigma_max(k: [[f64; 2]; 2]) -> f64 {
    let [[a, b], [c, d]] = k;
    ((a + d).hypot(c - b) + (a - d).hypot(b + c)) / 2.0
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(100))]

    #[test]
    fn products_are_not_entangled(o1 in orientation(), o2 in orientation()) {
        let p = product_state(o1, o2);
        let (flag, det) = is_entangled(&p, 1e-12);
        prop_assert!(!flag, "det = {det}");
    }

    #[test]
    fn eigenbasis_is_orthonormal(o1 in orientation(), o2 in orientation()) {
        let quad = eigenbasis_quadruple(o1, o2);
        for (j, a) in quad.iter().enumerate() {
            let chk = verify_joint_eigenstate(a, o1, o2);
            prop_assert!(chk.resid1 < 1e-12 && chk.resid2 < 1e-12);
            for (k, b) in quad.iter().enumerate() {
                let want = if j == k { 1.0 } else { 0.0 };
                prop_assert!((a.inner(b) - want).norm() < 1e-12);
            }
        }
    }

    #[test]
    fn det_is_local_rotation_invariant(s in state(), e1 in rotation(), e2 in rotation()) {
        let r = rotate_state(&s, e1, e2);
        prop_assert!((r.det().norm() - s.det().norm()).abs() < 1e-12);
    }

    #[test]
    fn canonical_form_round_trips(s in state()) {
        match canonical_form(&s, 1e-9).unwrap() {
            Classification::Canonical(cf) => {
                prop_assert!(cf.restore().distance(&s) < 1e-10);
                let canon = cf.apply(&s);
                prop_assert!(canon.distance(&State::canonical(cf.theta_c)) < 1e-10);
                prop_assert!(cf.theta_c > 0.0 && cf.theta_c <= FRAC_PI_2 + 1e-12);
            }
            other => prop_assert!(false, "generic state classified {}", other.label()),
        }
    }

    #[test]
    fn mean_spin_is_covariant(s in state(), e1 in rotation(), e2 in rotation()) {
        let r = rotate_state(&s, e1, e2);
        for (which, e) in [(Subsystem::One, e1), (Subsystem::Two, e2)] {
            let want = e.rotation_matrix().transpose().apply(&mean_spin(&s, which));
            prop_assert!((mean_spin(&r, which) - want).norm() < 1e-10);
        }
        prop_assert!(unrotate_state(&r, e1, e2).distance(&s) < 1e-12);
    }

    #[test]
    fn transverse_variance_is_locked(s in state(), chi in 0.0..TAU) {
        let ops = spin_operators::<f64>();
        for which in [Subsystem::One, Subsystem::Two] {
            let f = lakin_frame(&s, which).unwrap();
            let (u, v) = f.twisted(chi);
            for d in [f.n_perp, f.n_perp2, u, v] {
                prop_assert!((variance(&s, &ops.along(which, &d)) - 0.25).abs() < 1e-10);
            }
        }
    }

    #[test]
    fn pure_state_means_are_equal(s in state()) {
        let m1 = mean_spin(&s, Subsystem::One).norm();
        let m2 = mean_spin(&s, Subsystem::Two).norm();
        let want = 0.5 * (1.0 - 4.0 * s.det().norm_sqr()).max(0.0).sqrt();
        prop_assert!((m1 - want).abs() < 1e-12 && (m2 - want).abs() < 1e-12);
    }

    #[test]
    fn self_correlation_identity(s in state()) {
        let ops = spin_operators::<f64>();
        let i = Complex::new(0.0, 1.0);
        for which in [Subsystem::One, Subsystem::Two] {
            let sp = ops.of(which);
            let m = mean_spin(&s, which);
            for mu in 0..3 {
                for nu in 0..3 {
                    let got = expectation_complex(&s, &(sp[mu] * sp[nu]));
                    let delta = if mu == nu { 1.0 } else { 0.0 };
                    let eps = match (mu, nu) {
                        (0, 1) | (1, 2) | (2, 0) => 1.0,
                        (1, 0) | (2, 1) | (0, 2) => -1.0,
                        _ => 0.0,
                    };
                    let lam_mean = if mu == nu { 0.0 } else { m.0[3 - mu - nu] };
                    let want = (Complex::new(delta, 0.0) + i * (2.0 * eps * lam_mean)) * 0.25;
                    prop_assert!((got - want).norm() < 1e-12);
                }
            }
        }
    }

    #[test]
    fn uncorrelated_products(o1 in orientation(), o2 in orientation()) {
        let p = product_state(o1, o2);
        let t = mutual_correlations(&p, FrameTag::Lakin);
        prop_assert!(t.frobenius() < 1e-10);
        prop_assert!(!is_entangled(&p, 1e-9).0);
    }

    #[test]
    fn canonical_family_signs(theta in 1e-6..PI - 1e-6) {
        let (qx, qy) = q_canonical(theta);
        prop_assert!(qx < 0.0);
        if (theta - FRAC_PI_2).abs() > 1e-6 {
            prop_assert!(qy > 0.0);
        }
        let rep = squeezing_report(&State::canonical(theta));
        prop_assert!((rep.q_x - qx).abs() < 1e-10 && (rep.q_y - qy).abs() < 1e-10);
    }

    #[test]
    fn oracle_matches_closed_form(theta in 0.0..PI, xi in -2.0..2.0f64, t in 0.0..8.0f64) {
        let s = evolve_oracle(&evolve_closed(theta, 0.0), xi, t);
        prop_assert!(s.distance(&evolve_closed(theta, xi * t)) < 1e-10);
        prop_assert!((s.norm() - 1.0).abs() < 1e-12);
    }

    #[test]
    fn dynamics_chain(theta in 0.0..PI, tau in 0.0..TAU) {
        let s = evolve_closed(theta, tau);
        let o = dyn_observables(theta, tau);
        prop_assert_eq!(o.s2x0, -o.s1x0);
        prop_assert!((o.alpha2 + o.alpha1).abs() < 1e-15);
        let m1 = mean_spin(&s, Subsystem::One);
        let m2 = mean_spin(&s, Subsystem::Two);
        prop_assert!((m1 - Vec3::new(o.s1x0, o.s1y0, o.s1z0)).norm() < 1e-10);
        prop_assert!((m2 - Vec3::new(o.s2x0, o.s2y0, o.s2z0)).norm() < 1e-10);
        let rep = squeezing_report(&s);
        let (qx, qy) = q_dynamic(theta, tau);
        prop_assert!((rep.q_x - qx).abs() < 1e-8 && (rep.q_y - qy).abs() < 1e-8);
        let pipe = mutual_correlations(&s, FrameTag::Lakin);
        prop_assert!(pipe.max_abs_diff(&dyn_correlations(theta, tau)) < 1e-8);
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(1000))]

    #[test]
    fn report_matches_decomposition(s in state()) {
        let rep = squeezing_report(&s);
        let ops = spin_operators::<f64>();
        let [x1, y1] = transverse(&s, Subsystem::One);
        let [x2, y2] = transverse(&s, Subsystem::Two);
        let m = rep.mean1 + rep.mean2;
        for (q, a, b) in [(rep.q_x, x1, x2), (rep.q_y, y1, y2)] {
            let s1 = ops.along(Subsystem::One, &a);
            let s2 = ops.along(Subsystem::Two, &b);
            let cov = expectation(&s, &(s1 * s2)).unwrap()
                - expectation(&s, &s1).unwrap() * expectation(&s, &s2).unwrap();
            let decomposed = variance(&s, &s1) + variance(&s, &s2) + 2.0 * cov;
            prop_assert!((q - (m - 2.0 * decomposed)).abs() < 1e-12);
        }
        for (cross, flag) in [(rep.cross_x, rep.squeezed_x), (rep.cross_y, rep.squeezed_y)] {
            let reduced = m - 1.0 - 4.0 * cross;
            prop_assert_eq!(flag, reduced > squeeze_threshold::<f64>());
        }
    }

    #[test]
    fn entangled_states_are_correlated(s in state()) {
        let det = s.det().norm();
        // Local-rotation invariant bound from the canonical tensor diag(sin, -sin, sin^2)/4.
        let frob = mutual_correlations(&s, FrameTag::Lab).frobenius();
        prop_assert!(frob >= det / 2f64.sqrt() - 1e-12, "frob {frob} det {det}");
        let lakin = mutual_correlations(&s, FrameTag::Lakin).frobenius();
        prop_assert!((lakin - frob).abs() < 1e-12);
    }

    #[test]
    fn joint_uncertainty_relation(s in state(), e1 in rotation(), e2 in rotation()) {
        let ops = spin_operators::<f64>();
        let (r1, r2) = (e1.rotation_matrix(), e2.rotation_matrix());
        let va = variance(&s, &ops.collective(&r1.column(0), &r2.column(0)));
        let vb = variance(&s, &ops.collective(&r1.column(1), &r2.column(1)));
        let m = expectation(&s, &ops.collective(&r1.column(2), &r2.column(2))).unwrap();
        prop_assert!(va * vb - m * m / 4.0 > -1e-12);
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn best_q_is_local_rotation_invariant(s in state(), e1 in rotation(), e2 in rotation()) {
        let a = q_optimized(&s, 16).unwrap().best_q;
        let b = q_optimized(&rotate_state(&s, e1, e2), 16).unwrap().best_q;
        prop_assert!((a - b).abs() < 1e-6, "{a} vs {b}");
    }

    #[test]
    fn best_q_matches_singular_value(s in state()) {
        let rep = squeezing_report(&s);
        let ops = spin_operators::<f64>();
        let t1 = transverse(&s, Subsystem::One);
        let t2 = transverse(&s, Subsystem::Two);
        let k = [0, 1].map(|i| {
            [0, 1].map(|j| {
                let op = ops.along(Subsystem::One, &t1[i]) * ops.along(Subsystem::Two, &t2[j]);
                expectation(&s, &op).unwrap()
            })
        });
        let want = rep.mean1 + rep.mean2 - 1.0 + 4.0 * sigma_max(k);
        let best = q_optimized(&s, 16).unwrap().best_q;
        prop_assert!((best - want).abs() < 1e-9, "{best} vs {want}");
        prop_assert!(best >= rep.q_x.max(rep.q_y) - 1e-9);
    }
}

#[test]
fn commutator_identity() {
    let ops = spin_operators::<f64>();
    let i = Complex::new(0.0, 1.0);
    let mut r = common::rng(3);
    for _ in 0..100 {
        let [a1, b1, n1] = common::triad(&mut r);
        let [a2, b2, n2] = common::triad(&mut r);
        let lhs = ops.collective(&a1, &a2).commutator(&ops.collective(&b1, &b2));
        assert!((lhs - ops.collective(&n1, &n2).scale(i)).frobenius() < 1e-12);
    }
}

#[test]
fn evolution_generates_entanglement() {
    let grid = common::dyn_grid();
    let interior: Vec<_> = grid
        .into_iter()
        .filter(|&(th, ta)| th > 0.0 && th < PI - 1e-9 && [0.0, PI, TAU].iter().all(|z| (ta - z).abs() > 1e-9))
        .collect();
    let mut r = common::rng(5);
    let mut exceptions = Vec::new();
    for _ in 0..50 {
        let (th, ta) = interior[r.gen_range(0..interior.len())];
        let det = evolve_closed(th, ta).det().norm();
        if det <= 1e-6 {
            exceptions.push((th, ta));
        }
    }
    assert!(exceptions.is_empty(), "vanishing det at {exceptions:?}");
}

#[test]
fn singlet_is_rotation_invariant() {
    let s = State::singlet();
    let mut r = common::rng(9);
    for _ in 0..20 {
        let e = common::euler(&mut r);
        assert!(rotate_state(&s, e, e).distance_up_to_phase(&s) < 1e-12);
    }
}
