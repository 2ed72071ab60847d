use std::f64::consts::{PI, TAU};

use slideocam_core::geometry::{extended_angle, pitch_curvature};
use slideocam_core::mechanics::{self, builtin_materials, find_material, ContactPair, LoadCase, Material};
use slideocam_core::parallel::Schedule;
use slideocam_core::sensitivity::{self, pressure_partials, rank_at_max, rank_rms, rank_rms_with_nodes, Parameter};
use slideocam_core::TransmissionSpec;

fn steel() -> Material {
    find_material(&builtin_materials(), "improved steel").unwrap().clone()
}

/// `d ln P / d (r, eta, p, L)` at fixed cam angle, by the chain rule through
/// `P = sqrt(F / (K R L)) / pi`, `F = 2 pi C / (p cos mu)` and
/// `1 / R = 1 / r + 1 / rho`, `rho = 1 / kappa_p - r`.
fn log_partials(spec: &TransmissionSpec, psi: f64) -> [f64; 4] {
    let (p, eta, r, n) = (spec.pitch, spec.eta, spec.roller_radius, f64::from(spec.lobes));
    let t = n * (1.0 - TAU * eta) / (n * psi - PI);
    let dlnf_deta = t / (1.0 + t * t) * (-TAU * n / (n * psi - PI));
    let dlnf_dp = -1.0 / p;

    let k = TAU * eta - 1.0;
    let a = (psi - PI).powi(2);
    let num = a + 2.0 * k * (PI * eta - 1.0);
    let den = a + k * k;
    let kappa = pitch_curvature(psi, p, eta).unwrap();
    let dnum = 4.0 * PI * (PI * eta - 1.0) + TAU * k;
    let dden = 4.0 * PI * k;
    let dkappa_deta = TAU / p * (dnum / den.powf(1.5) - 1.5 * num * dden / den.powf(2.5));
    let dkappa_dp = -kappa / p;

    let rho = 1.0 / kappa - r;
    let big_r = r * rho / (r + rho);
    // d ln R = R (dr / r^2 + drho / rho^2)
    let dlnr = |dr: f64, drho: f64| big_r * (dr / (r * r) + drho / (rho * rho));
    let dlnr_dr = dlnr(1.0, -1.0);
    let dlnr_deta = dlnr(0.0, -dkappa_deta / (kappa * kappa));
    let dlnr_dp = dlnr(0.0, -dkappa_dp / (kappa * kappa));

    [
        -0.5 * dlnr_dr,
        0.5 * (dlnf_deta - dlnr_deta),
        0.5 * (dlnf_dp - dlnr_dp),
        -0.5 / spec.width,
    ]
}

#[test]
fn finite_differences_match_the_chain_rule() {
    let steel = steel();
    let pair = ContactPair {
        cam: &steel,
        roller: &steel,
    };
    let load = LoadCase::default();
    let specs = [
        TransmissionSpec::new(50.0, 0.18, 4.0, 1, 2, 10.0).unwrap(),
        TransmissionSpec::new(20.0, 0.3, 4.24, 1, 2, 30.0).unwrap(),
        TransmissionSpec::new(20.0, 0.578, 9.28, 1, 3, 20.0).unwrap(),
        TransmissionSpec::new(35.0, 0.45, 3.0, 1, 3, 12.0).unwrap(),
    ];
    for spec in specs {
        let delta = extended_angle(&spec).unwrap();
        let segment = mechanics::active_segment(&spec, delta).unwrap();
        for psi in segment.linspace(17) {
            let fd = pressure_partials(&spec, &load, pair, psi).unwrap();
            let analytic = log_partials(&spec, psi).map(|d| d * fd.pressure);
            for (i, parameter) in Parameter::ALL.iter().enumerate() {
                let q0 = parameter.nominal(&spec);
                let (a, f) = (analytic[i] * q0, fd.values[i] * q0);
                assert!(
                    (a - f).abs() <= 1e-6 * fd.pressure,
                    "{spec:?} psi {psi} {}: analytic {a}, fd {f}",
                    parameter.symbol()
                );
            }
            assert!((fd.normalized_torque(&load) - 0.5 * fd.pressure).abs() <= 1e-6 * fd.pressure);
        }
    }
}

#[test]
fn nominal_design_ranks_pitch_width_roller_eta() {
    let steel = steel();
    let pair = ContactPair {
        cam: &steel,
        roller: &steel,
    };
    let spec = TransmissionSpec::new(50.0, 0.18, 4.0, 1, 2, 10.0).unwrap();
    let load = LoadCase::default();
    let expected = [
        Parameter::Pitch,
        Parameter::Width,
        Parameter::RollerRadius,
        Parameter::Eta,
    ];
    assert_eq!(rank_at_max(&spec, &load, pair).unwrap().order, expected);
    assert_eq!(rank_rms(&spec, &load, pair).unwrap().order, expected);
    assert_eq!(rank_at_max(&spec, &load, pair).unwrap().importance(), [3, 4, 1, 2]);
}

#[test]
fn rms_converges_and_is_schedule_independent() {
    let steel = steel();
    let pair = ContactPair {
        cam: &steel,
        roller: &steel,
    };
    let spec = TransmissionSpec::new(50.0, 0.18, 4.0, 1, 2, 10.0).unwrap();
    let load = LoadCase::default();
    let coarse = rank_rms_with_nodes(&spec, &load, pair, 1025, Schedule::Sequential).unwrap();
    let fine = rank_rms_with_nodes(&spec, &load, pair, 4097, Schedule::Parallel).unwrap();
    let same = rank_rms_with_nodes(&spec, &load, pair, 1025, Schedule::Parallel).unwrap();
    assert_eq!(coarse, same);
    for i in 0..4 {
        assert!((coarse.values[i] - fine.values[i]).abs() <= 1e-6 * fine.values[i]);
    }
}

#[test]
fn report_pointwise_partials_span_the_segment() {
    let steel = steel();
    let pair = ContactPair {
        cam: &steel,
        roller: &steel,
    };
    let spec = TransmissionSpec::new(50.0, 0.18, 4.0, 1, 2, 10.0).unwrap();
    let report = sensitivity::analyze(&spec, &LoadCase::default(), pair, 129).unwrap();
    assert_eq!(report.pointwise.len(), 129);
    assert_eq!(report.pointwise[0].psi, report.segment.start);
    assert_eq!(report.pointwise[128].psi, report.segment.end);
    assert!((report.peak_angle - report.segment.start).abs() <= 1e-12);
}
