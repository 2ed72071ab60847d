//! First-order sensitivity of the Hertz pressure to `r`, `eta`, `p` and `L`.
//!
//! Partials are taken by central finite differences at a fixed cam angle and
//! normalised by the nominal parameter value, `(dP/dq_i) * q_i0`, so the four
//! parameters can be compared on one scale. Two rankings are produced: one
//! from the partials at `psi = pi/n - Delta`, where `P` peaks for a
//! two-conjugate mechanism, and one from their rms over the active segment,
//! `sqrt((n/pi) * integral (dP/dq_i * q_i0)^2 dpsi)`.

use std::f64::consts::PI;

use serde::{Deserialize, Serialize};

use crate::error::{CamError, Result};
use crate::geometry::{self, TransmissionSpec};
use crate::mechanics::{self, ActiveSegment, ContactPair, LoadCase};
use crate::parallel::{self, Schedule};

pub const DEFAULT_RELATIVE_STEP: f64 = 1e-6;
pub const MIN_PROFILE_SAMPLES: usize = 64;
pub const MIN_RMS_NODES: usize = 1025;

/// Design parameters the Hertz pressure is differentiated against.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Parameter {
    RollerRadius,
    Eta,
    Pitch,
    Width,
}

impl Parameter {
    pub const ALL: [Parameter; 4] = [
        Parameter::RollerRadius,
        Parameter::Eta,
        Parameter::Pitch,
        Parameter::Width,
    ];

    pub fn symbol(self) -> &'static str {
        match self {
            Parameter::RollerRadius => "r",
            Parameter::Eta => "eta",
            Parameter::Pitch => "p",
            Parameter::Width => "L",
        }
    }

    pub fn nominal(self, spec: &TransmissionSpec) -> f64 {
        match self {
            Parameter::RollerRadius => spec.roller_radius,
            Parameter::Eta => spec.eta,
            Parameter::Pitch => spec.pitch,
            Parameter::Width => spec.width,
        }
    }

    fn with(self, spec: &TransmissionSpec, value: f64) -> TransmissionSpec {
        let mut out = *spec;
        match self {
            Parameter::RollerRadius => out.roller_radius = value,
            Parameter::Eta => out.eta = value,
            Parameter::Pitch => out.pitch = value,
            Parameter::Width => out.width = value,
        }
        out
    }
}

impl std::fmt::Display for Parameter {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(self.symbol())
    }
}

/// Raw partials `dP/dq_i` at one cam angle, in [`Parameter::ALL`] order,
/// plus the partial with respect to the input torque.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Partials {
    pub psi: f64,
    pub pressure: f64,
    pub values: [f64; 4],
    pub torque: f64,
}

impl Partials {
    /// `(dP/dq_i) * q_i0`.
    pub fn normalized(&self, spec: &TransmissionSpec) -> [f64; 4] {
        let mut out = self.values;
        for (v, p) in out.iter_mut().zip(Parameter::ALL) {
            *v *= p.nominal(spec);
        }
        out
    }

    pub fn normalized_torque(&self, load: &LoadCase) -> f64 {
        self.torque * load.torque
    }
}

/// Central finite-difference partials of `P(psi)` with relative step 1e-6.
pub fn pressure_partials(
    spec: &TransmissionSpec,
    load: &LoadCase,
    materials: ContactPair<'_>,
    psi: f64,
) -> Result<Partials> {
    pressure_partials_with_step(spec, load, materials, psi, DEFAULT_RELATIVE_STEP)
}

pub fn pressure_partials_with_step(
    spec: &TransmissionSpec,
    load: &LoadCase,
    materials: ContactPair<'_>,
    psi: f64,
    relative_step: f64,
) -> Result<Partials> {
    spec.validate()?;
    let pressure = mechanics::contact_pressure(psi, spec, load, materials)?;

    let mut values = [0.0; 4];
    for (slot, parameter) in values.iter_mut().zip(Parameter::ALL) {
        let q0 = parameter.nominal(spec);
        let h = relative_step * q0.abs();
        let at = |q: f64| {
            let perturbed = parameter.with(spec, q);
            perturbed
                .validate()
                .and_then(|_| mechanics::contact_pressure(psi, &perturbed, load, materials))
                .map_err(|e| CamError::PerturbationInfeasible {
                    parameter: parameter.symbol(),
                    source: Box::new(e),
                })
        };
        *slot = (at(q0 + h)? - at(q0 - h)?) / (2.0 * h);
    }

    let h = relative_step * load.torque;
    let torque_at = |c: f64| {
        let perturbed = LoadCase { torque: c, ..*load };
        mechanics::contact_pressure(psi, spec, &perturbed, materials)
    };
    let torque = (torque_at(load.torque + h)? - torque_at(load.torque - h)?) / (2.0 * h);

    Ok(Partials {
        psi,
        pressure,
        values,
        torque,
    })
}

/// Normalised partials at one cam angle.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct SensitivityPoint {
    pub psi: f64,
    pub pressure: f64,
    /// `(dP/dq_i) * q_i0` in [`Parameter::ALL`] order.
    pub normalized: [f64; 4],
    /// `(dP/dC_t) * C_t`.
    pub torque: f64,
}

fn nominal_segment(spec: &TransmissionSpec) -> Result<ActiveSegment> {
    let delta = geometry::extended_angle(spec)?;
    mechanics::active_segment(spec, delta)
}

fn points_on(
    spec: &TransmissionSpec,
    load: &LoadCase,
    materials: ContactPair<'_>,
    angles: &[f64],
    schedule: Schedule,
) -> Result<Vec<SensitivityPoint>> {
    parallel::map(angles, schedule, |&psi| {
        let partials = pressure_partials(spec, load, materials, psi)?;
        Ok(SensitivityPoint {
            psi,
            pressure: partials.pressure,
            normalized: partials.normalized(spec),
            torque: partials.normalized_torque(load),
        })
    })
    .into_iter()
    .collect()
}

/// Normalised partials sampled uniformly over the active segment.
pub fn sensitivity_profile(
    spec: &TransmissionSpec,
    load: &LoadCase,
    materials: ContactPair<'_>,
    samples: usize,
) -> Result<Vec<SensitivityPoint>> {
    if samples < MIN_PROFILE_SAMPLES {
        return Err(CamError::TooFewSamples {
            what: "sensitivity samples",
            min: MIN_PROFILE_SAMPLES,
            got: samples,
        });
    }
    let segment = nominal_segment(spec)?;
    let angles: Vec<f64> = segment.linspace(samples).collect();
    points_on(spec, load, materials, &angles, Schedule::default())
}

/// Influence values in [`Parameter::ALL`] order and the parameters sorted by
/// descending influence.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Ranking {
    pub values: [f64; 4],
    pub order: [Parameter; 4],
}

impl Ranking {
    pub fn from_values(values: [f64; 4]) -> Self {
        let mut order = Parameter::ALL;
        order.sort_by(|a, b| {
            let (va, vb) = (values[*a as usize], values[*b as usize]);
            vb.partial_cmp(&va).unwrap_or(std::cmp::Ordering::Equal)
        });
        Self { values, order }
    }

    /// 1-based importance of each parameter, in [`Parameter::ALL`] order.
    pub fn importance(&self) -> [usize; 4] {
        let mut out = [0; 4];
        for (rank, p) in self.order.iter().enumerate() {
            out[*p as usize] = rank + 1;
        }
        out
    }

    pub fn value(&self, parameter: Parameter) -> f64 {
        self.values[parameter as usize]
    }
}

/// Angle at which `P` peaks for a two-conjugate mechanism, `pi/n - Delta`.
pub fn peak_angle(spec: &TransmissionSpec) -> Result<f64> {
    let delta = geometry::extended_angle(spec)?;
    Ok(PI / f64::from(spec.lobes) - delta)
}

/// `|dP/dq_i * q_i0|` at `psi = pi/n - Delta`, ranked.
pub fn rank_at_max(spec: &TransmissionSpec, load: &LoadCase, materials: ContactPair<'_>) -> Result<Ranking> {
    let psi = peak_angle(spec)?;
    let partials = pressure_partials(spec, load, materials, psi)?;
    Ok(Ranking::from_values(partials.normalized(spec).map(f64::abs)))
}

/// rms of the normalised partials over the active segment, ranked.
pub fn rank_rms(spec: &TransmissionSpec, load: &LoadCase, materials: ContactPair<'_>) -> Result<Ranking> {
    rank_rms_with_nodes(spec, load, materials, MIN_RMS_NODES, Schedule::default())
}

/// As [`rank_rms`] with an explicit Simpson node count (rounded up to odd,
/// at least [`MIN_RMS_NODES`]).
pub fn rank_rms_with_nodes(
    spec: &TransmissionSpec,
    load: &LoadCase,
    materials: ContactPair<'_>,
    nodes: usize,
    schedule: Schedule,
) -> Result<Ranking> {
    let nodes = nodes.max(MIN_RMS_NODES) | 1;
    let segment = nominal_segment(spec)?;
    let angles: Vec<f64> = segment.linspace(nodes).collect();
    let points = points_on(spec, load, materials, &angles, schedule)?;
    let n = f64::from(spec.lobes);
    let mut values = [0.0; 4];
    for (i, value) in values.iter_mut().enumerate() {
        let squares: Vec<f64> = points.iter().map(|p| p.normalized[i].powi(2)).collect();
        *value = (n / PI * simpson(&squares, segment.len())).sqrt();
    }
    Ok(Ranking::from_values(values))
}

/// Composite Simpson rule over uniformly spaced samples spanning `length`.
/// Requires an odd number of samples.
pub fn simpson(samples: &[f64], length: f64) -> f64 {
    let intervals = samples.len() - 1;
    debug_assert!(intervals >= 2 && intervals % 2 == 0);
    let h = length / intervals as f64;
    let interior: f64 = samples[1..intervals]
        .iter()
        .enumerate()
        .map(|(i, y)| if i % 2 == 0 { 4.0 * y } else { 2.0 * y })
        .sum();
    h / 3.0 * (samples[0] + interior + samples[intervals])
}

/// Everything reported by a sensitivity study at one nominal point.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SensitivityReport {
    pub nominal: TransmissionSpec,
    pub load: LoadCase,
    pub segment: ActiveSegment,
    pub peak_angle: f64,
    pub pointwise: Vec<SensitivityPoint>,
    pub at_max: Ranking,
    pub rms: Ranking,
}

pub fn analyze(
    spec: &TransmissionSpec,
    load: &LoadCase,
    materials: ContactPair<'_>,
    samples: usize,
) -> Result<SensitivityReport> {
    Ok(SensitivityReport {
        nominal: *spec,
        load: *load,
        segment: nominal_segment(spec)?,
        peak_angle: peak_angle(spec)?,
        pointwise: sensitivity_profile(spec, load, materials, samples)?,
        at_max: rank_at_max(spec, load, materials)?,
        rms: rank_rms(spec, load, materials)?,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::mechanics::{builtin_materials, find_material, Material};
    use approx::assert_relative_eq;

    fn steel() -> Material {
        find_material(&builtin_materials(), "Improved steel").unwrap().clone()
    }

    fn nominal() -> TransmissionSpec {
        TransmissionSpec::new(50.0, 0.18, 4.0, 1, 2, 10.0).unwrap()
    }

    #[test]
    fn width_partial_matches_closed_form() {
        let s = steel();
        let pair = ContactPair { cam: &s, roller: &s };
        let spec = nominal();
        let psi = peak_angle(&spec).unwrap();
        let partials = pressure_partials(&spec, &LoadCase::default(), pair, psi).unwrap();
        let width = partials.values[Parameter::Width as usize];
        assert!(width < 0.0);
        assert_relative_eq!(width, -partials.pressure / (2.0 * spec.width), max_relative = 1e-4);
        // P is proportional to sqrt(C_t)
        assert_relative_eq!(
            partials.normalized_torque(&LoadCase::default()),
            partials.pressure / 2.0,
            max_relative = 1e-4
        );
    }

    #[test]
    fn step_halving_is_stable() {
        let s = steel();
        let pair = ContactPair { cam: &s, roller: &s };
        let spec = nominal();
        let load = LoadCase::default();
        let a = pressure_partials_with_step(&spec, &load, pair, 5.0, 1e-6).unwrap();
        let b = pressure_partials_with_step(&spec, &load, pair, 5.0, 5e-7).unwrap();
        for (x, y) in a.values.iter().zip(b.values) {
            assert_relative_eq!(*x, y, max_relative = 1e-6);
        }
    }

    #[test]
    fn profile_covers_segment() {
        let s = steel();
        let pair = ContactPair { cam: &s, roller: &s };
        let spec = nominal();
        let points = sensitivity_profile(&spec, &LoadCase::default(), pair, 64).unwrap();
        let delta = geometry::extended_angle(&spec).unwrap();
        assert_eq!(points.len(), 64);
        assert_relative_eq!(points[0].psi, PI - delta, max_relative = 1e-14);
        assert_relative_eq!(points[63].psi, 2.0 * PI - delta, max_relative = 1e-14);
        assert!(points.iter().all(|p| p.normalized[Parameter::Width as usize] < 0.0));
        assert!(matches!(
            sensitivity_profile(&spec, &LoadCase::default(), pair, 32),
            Err(CamError::TooFewSamples { got: 32, .. })
        ));
    }

    #[test]
    fn ranking_is_argsort() {
        let r = Ranking::from_values([103.0, 83.0, 362.0, 232.0]);
        assert_eq!(
            r.order,
            [
                Parameter::Pitch,
                Parameter::Width,
                Parameter::RollerRadius,
                Parameter::Eta
            ]
        );
        assert_eq!(r.importance(), [3, 4, 1, 2]);
    }

    #[test]
    fn simpson_is_exact_for_cubics() {
        let xs: Vec<f64> = (0..=10).map(|i| i as f64 * 0.2).collect();
        let ys: Vec<f64> = xs.iter().map(|x| x * x * x - x).collect();
        assert_relative_eq!(simpson(&ys, 2.0), 4.0 - 2.0, max_relative = 1e-13);
    }

    #[test]
    fn perturbation_across_feasibility_boundary_is_reported() {
        let s = steel();
        let pair = ContactPair { cam: &s, roller: &s };
        // e is a hair above r: shrinking eta makes the camshaft diameter negative
        let spec = TransmissionSpec::new(50.0, 0.18, 9.0 - 1e-9, 1, 2, 10.0).unwrap();
        let err = pressure_partials(&spec, &LoadCase::default(), pair, 5.0).unwrap_err();
        assert!(matches!(err, CamError::PerturbationInfeasible { .. }), "{err}");
    }
}
