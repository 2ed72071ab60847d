use std::f64::consts::{PI, TAU};

use proptest::prelude::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use slideocam_core::geometry::{
    self, cam_profile_point, extended_angle, feasibility_check, pitch_curvature, pitch_curve_point, Point2,
};
use slideocam_core::TransmissionSpec;

/// Random valid spec: a modest roller (r/p in [0.02, 0.2]) and eta on the
/// valid band above 1/(2 pi), kept away from the singularity.
fn random_spec(rng: &mut impl Rng) -> TransmissionSpec {
    loop {
        let pitch: f64 = rng.gen_range(10.0..60.0);
        let roller: f64 = pitch * rng.gen_range(0.02..0.2);
        let eta = rng.gen_range((roller / pitch).max(1.0 / TAU) + 0.02..0.8);
        let cams = rng.gen_range(2..=3);
        if (TAU * eta - 1.0).abs() < 0.05 {
            continue;
        }
        if let Ok(spec) = TransmissionSpec::new(pitch, eta, roller, 1, cams, 10.0) {
            if extended_angle(&spec).is_ok() {
                return spec;
            }
        }
    }
}

/// Signed curvature of a parametric curve from five-point derivatives.
fn fd_curvature(curve: impl Fn(f64) -> Point2, psi: f64, h: f64) -> f64 {
    let p: Vec<Point2> = [-2.0, -1.0, 1.0, 2.0, 0.0].iter().map(|k| curve(psi + k * h)).collect();
    let d1 = |a: f64, b: f64, c: f64, d: f64| (a - 8.0 * b + 8.0 * c - d) / (12.0 * h);
    let d2 = |a: f64, b: f64, c: f64, d: f64, m: f64| (-a + 16.0 * b - 30.0 * m + 16.0 * c - d) / (12.0 * h * h);
    let du = d1(p[0].u, p[1].u, p[2].u, p[3].u);
    let dv = d1(p[0].v, p[1].v, p[2].v, p[3].v);
    let ddu = d2(p[0].u, p[1].u, p[2].u, p[3].u, p[4].u);
    let ddv = d2(p[0].v, p[1].v, p[2].v, p[3].v, p[4].v);
    // The pitch curve is traced clockwise in the u-v frame, hence the negation.
    -(du * ddv - dv * ddu) / (du * du + dv * dv).powf(1.5)
}

#[test]
fn profile_closes_on_the_u_axis() {
    let mut rng = ChaCha8Rng::seed_from_u64(11);
    for _ in 0..100 {
        let spec = random_spec(&mut rng);
        let delta = extended_angle(&spec).unwrap();
        for psi in [delta, TAU - delta] {
            let v = cam_profile_point(psi, &spec).unwrap().v;
            assert!(v.abs() <= 1e-10 * spec.pitch, "{spec:?} psi {psi}: v_c = {v}");
        }
    }
}

#[test]
fn analytic_pitch_curvature_matches_finite_differences() {
    let mut rng = ChaCha8Rng::seed_from_u64(12);
    for _ in 0..100 {
        let spec = random_spec(&mut rng);
        let delta = extended_angle(&spec).unwrap();
        for psi in geometry::profile_range(delta).linspace(41) {
            if (psi - PI).abs() < 1e-9 {
                continue;
            }
            let analytic = pitch_curvature(psi, spec.pitch, spec.eta).unwrap();
            let fd = fd_curvature(|t| pitch_curve_point(t, &spec), psi, 1e-3);
            let scale = analytic.abs().max(1.0 / spec.pitch);
            assert!(
                (analytic - fd).abs() <= 1e-4 * scale,
                "{spec:?} psi {psi}: analytic {analytic}, fd {fd}"
            );
        }
    }
}

#[test]
fn profile_is_offset_by_one_roller_radius() {
    let mut rng = ChaCha8Rng::seed_from_u64(13);
    let mut checked = 0;
    for _ in 0..100 {
        let spec = random_spec(&mut rng);
        let delta = extended_angle(&spec).unwrap();
        for psi in geometry::profile_range(delta).linspace(41) {
            let kp = fd_curvature(|t| pitch_curve_point(t, &spec), psi, 1e-3);
            let kc = fd_curvature(|t| cam_profile_point(t, &spec).unwrap(), psi, 1e-3);
            let (rho_p, rho_c) = (1.0 / kp, 1.0 / kc);
            // Away from inflections and undercut cusps only.
            if rho_p.abs() > 10.0 * spec.pitch || rho_c.abs() > 10.0 * spec.pitch || rho_p < 2.0 * spec.roller_radius {
                continue;
            }
            let r = spec.roller_radius;
            assert!(
                (rho_p - rho_c - r).abs() <= 1e-3 * r,
                "{spec:?} psi {psi}: rho_p {rho_p} rho_c {rho_c}"
            );
            checked += 1;
        }
    }
    assert!(checked > 1000, "only {checked} points checked");
}

#[test]
fn profile_radius_matches_pitch_radius_minus_roller() {
    let mut rng = ChaCha8Rng::seed_from_u64(14);
    for _ in 0..50 {
        let spec = random_spec(&mut rng);
        for psi in [0.3, 2.0, 4.0, 5.5] {
            let kp = pitch_curvature(psi, spec.pitch, spec.eta).unwrap();
            let rho_c = geometry::profile_radius(psi, &spec).unwrap();
            assert!((rho_c - (1.0 / kp - spec.roller_radius)).abs() <= 1e-12 * (1.0 / kp).abs().max(1.0));
        }
    }
}

#[test]
fn convexity_flips_at_one_over_pi() {
    let convex = |eta: f64| {
        let spec = TransmissionSpec {
            pitch: 50.0,
            eta,
            roller_radius: 2.0,
            lobes: 1,
            cams: 2,
            width: 10.0,
        };
        feasibility_check(&spec).fully_convex
    };
    let (mut lo, mut hi) = (0.2, 0.5);
    assert!(!convex(lo) && convex(hi));
    while hi - lo > 1e-9 {
        let mid = 0.5 * (lo + hi);
        if convex(mid) {
            hi = mid;
        } else {
            lo = mid;
        }
    }
    assert!((hi - 1.0 / PI).abs() <= 1e-6, "flip at {hi}");
}

#[test]
fn singular_eta_is_reported() {
    let spec = TransmissionSpec {
        pitch: 50.0,
        eta: 1.0 / TAU,
        roller_radius: 4.0,
        lobes: 1,
        cams: 2,
        width: 10.0,
    };
    assert!(extended_angle(&spec).is_err());
    assert!(!feasibility_check(&spec).is_feasible());
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn extended_angle_is_a_root_in_the_lower_half_turn(
        pitch in 10.0f64..60.0,
        roller_frac in 0.02f64..0.2,
        eta_margin in 0.02f64..0.6,
    ) {
        let roller = pitch * roller_frac;
        let eta = (roller / pitch).max(1.0 / TAU) + eta_margin;
        prop_assume!((TAU * eta - 1.0).abs() > 0.05);
        let spec = TransmissionSpec::new(pitch, eta, roller, 1, 2, 10.0).unwrap();
        if let Ok(delta) = extended_angle(&spec) {
            prop_assert!((-PI..0.0).contains(&delta));
            prop_assert!(cam_profile_point(delta, &spec).unwrap().v.abs() <= 1e-10 * pitch);
        }
    }

    #[test]
    fn displacement_spans_one_pitch_per_turn(psi in -PI..PI, pitch in 1.0f64..100.0) {
        let s0 = geometry::follower_displacement(psi, pitch);
        let s1 = geometry::follower_displacement(psi + TAU, pitch);
        prop_assert!((s1 - s0 - pitch).abs() <= 1e-12 * pitch.max(1.0) * 10.0);
    }
}
