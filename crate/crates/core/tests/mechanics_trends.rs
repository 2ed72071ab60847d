use std::f64::consts::{PI, TAU};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use slideocam_core::geometry::{extended_angle, feasibility_check};
use slideocam_core::mechanics::{
    self, builtin_materials, contact_pressure, find_material, max_pressure_angle, ContactPair, LoadCase, Material,
};
use slideocam_core::TransmissionSpec;

fn steel() -> Material {
    find_material(&builtin_materials(), "improved steel").unwrap().clone()
}

/// Random feasible spec with r/p in [0.02, 0.18]. Beyond r/p of about 0.186
/// the Hertz maximum of some two-cam designs (eta near 0.275) leaves the
/// segment start, so the endpoint property is only claimed below that.
fn random_feasible(rng: &mut impl Rng, cams: u32) -> TransmissionSpec {
    loop {
        let pitch: f64 = rng.gen_range(10.0..60.0);
        let roller: f64 = pitch * rng.gen_range(0.02..0.18);
        let eta = rng.gen_range((roller / pitch).max(1.0 / TAU) + 0.02..0.8);
        if (TAU * eta - 1.0).abs() < 0.05 {
            continue;
        }
        let spec = TransmissionSpec {
            pitch,
            eta,
            roller_radius: roller,
            lobes: 1,
            cams,
            width: rng.gen_range(2.0..40.0),
        };
        if feasibility_check(&spec).is_feasible() {
            return spec;
        }
    }
}

#[test]
fn three_cams_reduce_the_pressure_angle() {
    let mut rng = ChaCha8Rng::seed_from_u64(21);
    for _ in 0..20 {
        let two = random_feasible(&mut rng, 2);
        let three = TransmissionSpec { cams: 3, ..two };
        let mu2 = max_pressure_angle(&two).unwrap().value;
        let mu3 = max_pressure_angle(&three).unwrap().value;
        assert!(mu3 < mu2, "{two:?}: m=3 {mu3} vs m=2 {mu2}");
    }
}

#[test]
fn pressure_angle_grows_with_eta() {
    for (pitch, roller, cams) in [(50.0f64, 4.0f64, 2u32), (20.0, 4.0, 3), (30.0, 2.0, 2)] {
        let lo = (roller / pitch).max(1.0 / TAU) + 1e-3;
        let mut previous = 0.0;
        for i in 0..=200 {
            let eta = lo + (1.2 - lo) * f64::from(i) / 200.0;
            if (TAU * eta - 1.0).abs() < 1e-6 {
                continue;
            }
            let spec = TransmissionSpec {
                pitch,
                eta,
                roller_radius: roller,
                lobes: 1,
                cams,
                width: 10.0,
            };
            let mu = max_pressure_angle(&spec).unwrap().value;
            assert!(mu >= previous, "eta {eta}: {mu} < {previous}");
            previous = mu;
        }
    }
}

#[test]
fn pressure_angle_extremum_sits_at_a_segment_end() {
    let mut rng = ChaCha8Rng::seed_from_u64(22);
    for cams in [2, 3] {
        for _ in 0..20 {
            let spec = random_feasible(&mut rng, cams);
            let delta = extended_angle(&spec).unwrap();
            let segment = mechanics::active_segment(&spec, delta).unwrap();
            let at_max = max_pressure_angle(&spec).unwrap();
            let ends =
                [segment.start, segment.end].map(|psi| mechanics::pressure_angle(psi, spec.eta, 1).unwrap().abs());
            assert!((at_max.value - ends[0].max(ends[1])).abs() <= 1e-12, "{spec:?}");
        }
    }
}

#[test]
fn hertz_maximum_is_at_segment_start_for_two_cams() {
    let steel = steel();
    let pair = ContactPair {
        cam: &steel,
        roller: &steel,
    };
    let load = LoadCase::default();
    let scan = mechanics::SEGMENT_SCAN_POINTS;
    let mut rng = ChaCha8Rng::seed_from_u64(23);
    for _ in 0..50 {
        let spec = random_feasible(&mut rng, 2);
        let perf = mechanics::evaluate_performance(&spec, &load, pair, scan).unwrap();
        let expected = PI - perf.delta;
        let step = perf.segment.len() / (scan - 1) as f64;
        assert!(
            (perf.hertz_pressure.psi - expected).abs() <= step,
            "{spec:?}: argmax {} vs {expected}",
            perf.hertz_pressure.psi
        );
        let at_start = contact_pressure(expected, &spec, &load, pair).unwrap();
        assert!((at_start - perf.hertz_pressure.value).abs() <= 1e-9 * at_start);
    }
}

#[test]
fn hertz_maximum_leaves_segment_start_for_large_rollers() {
    let steel = steel();
    let pair = ContactPair {
        cam: &steel,
        roller: &steel,
    };
    let spec = TransmissionSpec::new(40.0, 0.279, 8.0, 1, 2, 10.0).unwrap();
    let perf =
        mechanics::evaluate_performance(&spec, &LoadCase::default(), pair, mechanics::SEGMENT_SCAN_POINTS).unwrap();
    assert!(perf.hertz_pressure.psi - (PI - perf.delta) > 10.0 * perf.segment.len() / 4095.0);
}

#[test]
fn hertz_pressure_scales_with_inverse_root_width() {
    let steel = steel();
    let pair = ContactPair {
        cam: &steel,
        roller: &steel,
    };
    let load = LoadCase::default();
    let spec = TransmissionSpec::new(50.0, 0.18, 4.0, 1, 2, 10.0).unwrap();
    let wide = TransmissionSpec { width: 40.0, ..spec };
    for psi in [3.0, 3.5, 4.2] {
        let narrow = contact_pressure(psi + PI / 4.0, &spec, &load, pair).unwrap();
        let broad = contact_pressure(psi + PI / 4.0, &wide, &load, pair).unwrap();
        assert!((narrow / broad - 2.0).abs() <= 1e-12);
    }
}

#[test]
fn contact_force_grows_with_pressure_angle() {
    let load = LoadCase::default();
    let spec = TransmissionSpec::new(50.0, 0.18, 4.0, 1, 2, 10.0).unwrap();
    let f0 = load.axial_load(spec.pitch);
    for psi in [3.5, 4.0, 5.0] {
        let mu = mechanics::pressure_angle(psi, spec.eta, 1).unwrap();
        let f = mechanics::contact_force(psi, &load, &spec).unwrap();
        assert!((f - f0 / mu.cos()).abs() <= 1e-9 * f);
        assert!(f >= f0);
    }
}
