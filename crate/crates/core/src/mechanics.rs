//! Performance metrics of a candidate transmission.
//!
//! Three quantities are evaluated over the active segment of a conjugate cam:
//! the pressure angle `mu`, the Hertz line-contact pressure `P` between cam
//! and roller, and the mechanism size `S_M = m L`.
//!
//! The contact force follows from power balance with the constant
//! transmission ratio `p / (2 pi)`: its component along the follower axis
//! carries the axial load `2 pi C_t / p`, so `F = 2 pi C_t / (p cos mu)`.

use std::f64::consts::{PI, TAU};

use serde::{Deserialize, Serialize};

use crate::error::{CamError, Result};
use crate::geometry::{self, AngleRange, TransmissionSpec};

/// Points per active segment for the `mu_max` and `P_max` scans.
pub const SEGMENT_SCAN_POINTS: usize = 4096;

/// Fraction of the static allowable pressure that secures infinite fatigue life.
pub const FATIGUE_FRACTION: f64 = 0.4;

/// Cam speed above which the pressure angle should stay below
/// [`HIGH_SPEED_MAX_PRESSURE_ANGLE`].
pub const HIGH_SPEED_RPM: f64 = 50.0;
pub const HIGH_SPEED_MAX_PRESSURE_ANGLE: f64 = 30.0 * PI / 180.0;

const SINGULAR_DENOMINATOR: f64 = 1e-12;
const MIN_COS_PRESSURE_ANGLE: f64 = 1e-12;

/// Interval of cam rotation over which one conjugate cam drives the follower.
pub type ActiveSegment = AngleRange;

/// Closed pressure interval, MPa. Single values have `low == high`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct PressureRange {
    pub low: f64,
    pub high: f64,
}

impl PressureRange {
    pub fn exact(value: f64) -> Self {
        Self {
            low: value,
            high: value,
        }
    }

    pub fn between(low: f64, high: f64) -> Self {
        Self { low, high }
    }

    pub fn scale(self, factor: f64) -> Self {
        Self {
            low: self.low * factor,
            high: self.high * factor,
        }
    }
}

impl std::fmt::Display for PressureRange {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        if self.low == self.high {
            write!(f, "{}", self.low)
        } else {
            write!(f, "{} to {}", self.low, self.high)
        }
    }
}

/// Elastic constants and allowable pressures of a contact body.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Material {
    pub name: String,
    /// Young modulus `E`, MPa.
    pub youngs_modulus: f64,
    /// Poisson ratio `nu`.
    pub poisson_ratio: f64,
    /// Allowable pressure under static load, MPa.
    pub static_pressure: PressureRange,
    /// Allowable pressure for infinite fatigue life, MPa.
    pub allowable_pressure: PressureRange,
}

impl Material {
    /// Material whose fatigue allowable follows the 40 % rule.
    pub fn with_fatigue_rule(
        name: impl Into<String>,
        youngs_modulus: f64,
        poisson_ratio: f64,
        static_pressure: PressureRange,
    ) -> Self {
        Self {
            name: name.into(),
            youngs_modulus,
            poisson_ratio,
            static_pressure,
            allowable_pressure: static_pressure.scale(FATIGUE_FRACTION),
        }
    }

    pub fn validate(&self) -> Result<()> {
        if !(self.youngs_modulus.is_finite() && self.youngs_modulus > 0.0) {
            return Err(CamError::Catalog(format!(
                "{}: Young modulus must be positive, got {}",
                self.name, self.youngs_modulus
            )));
        }
        if !(0.0..0.5).contains(&self.poisson_ratio) {
            return Err(CamError::Catalog(format!(
                "{}: Poisson ratio must lie in [0, 0.5), got {}",
                self.name, self.poisson_ratio
            )));
        }
        for range in [self.static_pressure, self.allowable_pressure] {
            if !(range.low > 0.0 && range.low <= range.high) {
                return Err(CamError::Catalog(format!(
                    "{}: pressure range {range} is not a positive interval",
                    self.name
                )));
            }
        }
        Ok(())
    }

    /// Pressure limit used in constraints: the upper end of the allowable range.
    pub fn pressure_limit(&self) -> f64 {
        self.allowable_pressure.high
    }
}

/// Steel elastic constants used for both contact bodies by default.
pub const STEEL_YOUNGS_MODULUS: f64 = 210_000.0;
pub const STEEL_POISSON_RATIO: f64 = 0.3;

/// Allowable-pressure table for common cam and roller materials.
///
/// Elastic constants are standard handbook values.
pub fn builtin_materials() -> Vec<Material> {
    vec![
        Material::with_fatigue_rule(
            "Stainless steel",
            STEEL_YOUNGS_MODULUS,
            STEEL_POISSON_RATIO,
            PressureRange::exact(650.0),
        ),
        Material::with_fatigue_rule(
            "Improved steel",
            STEEL_YOUNGS_MODULUS,
            STEEL_POISSON_RATIO,
            PressureRange::between(1600.0, 2000.0),
        ),
        Material::with_fatigue_rule("Grey cast iron", 110_000.0, 0.26, PressureRange::between(400.0, 700.0)),
        // printed allowable range does not follow the 40 % rule at its upper end
        Material {
            name: "Aluminum".into(),
            youngs_modulus: 70_000.0,
            poisson_ratio: 0.33,
            static_pressure: PressureRange::exact(62.5),
            allowable_pressure: PressureRange::between(25.0, 150.0),
        },
        Material::with_fatigue_rule("Polyamide", 3_000.0, 0.4, PressureRange::exact(25.0)),
    ]
}

/// Case-insensitive lookup by name.
pub fn find_material<'a>(catalog: &'a [Material], name: &str) -> Option<&'a Material> {
    catalog.iter().find(|m| m.name.eq_ignore_ascii_case(name.trim()))
}

/// Parses a material catalog (a JSON list of [`Material`] records).
pub fn parse_catalog(json: &str) -> Result<Vec<Material>> {
    let catalog: Vec<Material> = serde_json::from_str(json).map_err(|e| CamError::Catalog(e.to_string()))?;
    for material in &catalog {
        material.validate()?;
    }
    Ok(catalog)
}

/// Input torque and optional cam speed.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct LoadCase {
    /// Input torque `C_t`, N·mm.
    pub torque: f64,
    /// Cam speed, rpm. Informational only.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub speed_rpm: Option<f64>,
}

impl LoadCase {
    pub fn new(torque: f64) -> Result<Self> {
        if !(torque.is_finite() && torque > 0.0) {
            return Err(CamError::InvalidSpec(format!("torque must be positive, got {torque}")));
        }
        Ok(Self {
            torque,
            speed_rpm: None,
        })
    }

    /// Axial load on the follower, `2 pi C_t / p`, N.
    pub fn axial_load(&self, pitch: f64) -> f64 {
        TAU * self.torque / pitch
    }

    pub fn is_high_speed(&self) -> bool {
        self.speed_rpm.is_some_and(|rpm| rpm > HIGH_SPEED_RPM)
    }
}

impl Default for LoadCase {
    /// 1.2 N·m.
    fn default() -> Self {
        Self {
            torque: 1200.0,
            speed_rpm: None,
        }
    }
}

/// Signed pressure angle `arctan(n (1 - 2 pi eta) / (n psi - pi))`.
///
/// The magnitude is the reported pressure angle; the sign tells on which
/// side the cam pushes the roller.
pub fn pressure_angle(psi: f64, eta: f64, lobes: u32) -> Result<f64> {
    let n = f64::from(lobes);
    let denominator = n * psi - PI;
    if denominator.abs() < SINGULAR_DENOMINATOR {
        return Err(CamError::PressureAngleSingular { psi });
    }
    Ok((n * (1.0 - TAU * eta) / denominator).atan())
}

/// Active segment `[2 pi / n - Delta - 2 pi / (n m), 2 pi / n - Delta]`.
pub fn active_segment(spec: &TransmissionSpec, delta: f64) -> Result<ActiveSegment> {
    if spec.cams < 2 {
        return Err(CamError::InfeasibleCamCount { cams: spec.cams });
    }
    Ok(geometry::driving_range(spec, delta))
}

/// Location and value of a maximum over the active segment.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Extremum {
    pub value: f64,
    pub psi: f64,
}

impl Extremum {
    fn none() -> Self {
        Self {
            value: f64::NEG_INFINITY,
            psi: f64::NAN,
        }
    }

    fn offer(&mut self, psi: f64, value: f64) {
        if value > self.value {
            *self = Self { value, psi };
        }
    }
}

/// Largest `|mu|` over the active segment, by dense scan.
pub fn max_pressure_angle(spec: &TransmissionSpec) -> Result<Extremum> {
    let delta = geometry::extended_angle(spec)?;
    let segment = active_segment(spec, delta)?;
    let mut best = Extremum::none();
    for psi in segment.linspace(SEGMENT_SCAN_POINTS) {
        best.offer(psi, pressure_angle(psi, spec.eta, spec.lobes)?.abs());
    }
    Ok(best)
}

/// Normal contact force at `psi`, N.
pub fn contact_force(psi: f64, load: &LoadCase, spec: &TransmissionSpec) -> Result<f64> {
    let cos_mu = pressure_angle(psi, spec.eta, spec.lobes)?.cos();
    if cos_mu < MIN_COS_PRESSURE_ANGLE {
        return Err(CamError::ForceSingular { psi });
    }
    Ok(load.axial_load(spec.pitch) / cos_mu)
}

/// Material compliance `K = (1 - nu^2) / (pi E)`, 1/MPa.
pub fn material_coefficient(material: &Material) -> f64 {
    (1.0 - material.poisson_ratio.powi(2)) / (PI * material.youngs_modulus)
}

/// Equivalent contact radius `r rho_c / (r + rho_c)`, mm.
pub fn equivalent_radius(roller_radius: f64, rho_c: f64) -> Result<f64> {
    if rho_c <= -roller_radius || rho_c.is_nan() {
        return Err(CamError::DegenerateContact {
            rho_c,
            neg_roller: -roller_radius,
        });
    }
    if rho_c.is_infinite() {
        return Ok(roller_radius);
    }
    Ok(roller_radius * rho_c / (roller_radius + rho_c))
}

/// Width `B` of the Hertz contact band, mm.
pub fn hertz_band_width(force: f64, k_cam: f64, k_roller: f64, equivalent_radius: f64, width: f64) -> f64 {
    (16.0 * force * (k_cam + k_roller) * equivalent_radius / width).sqrt()
}

/// Maximum Hertz pressure of a line contact.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct HertzPressure {
    /// MPa.
    pub pressure: f64,
    /// Set when the force is zero; the pressure is then 0 by convention.
    pub zero_load: bool,
}

/// `P = 4 F / (L pi B)`.
pub fn hertz_pressure(force: f64, width: f64, band_width: f64) -> HertzPressure {
    if force == 0.0 {
        return HertzPressure {
            pressure: 0.0,
            zero_load: true,
        };
    }
    HertzPressure {
        pressure: 4.0 * force / (width * PI * band_width),
        zero_load: false,
    }
}

/// Cam and roller materials of one contact.
#[derive(Debug, Clone, Copy)]
pub struct ContactPair<'a> {
    pub cam: &'a Material,
    pub roller: &'a Material,
}

impl ContactPair<'_> {
    pub fn coefficients(&self) -> (f64, f64) {
        (material_coefficient(self.cam), material_coefficient(self.roller))
    }
}

/// Hertz pressure at one cam angle, composing force, curvature and the
/// line-contact formulas.
pub fn contact_pressure(psi: f64, spec: &TransmissionSpec, load: &LoadCase, materials: ContactPair<'_>) -> Result<f64> {
    let rho_c = geometry::profile_radius(psi, spec)?;
    if rho_c <= 0.0 {
        return Err(CamError::InfeasibleProfile { psi, rho_c });
    }
    let (k_cam, k_roller) = materials.coefficients();
    let force = contact_force(psi, load, spec)?;
    let radius = equivalent_radius(spec.roller_radius, rho_c)?;
    let band = hertz_band_width(force, k_cam, k_roller, radius, spec.width);
    Ok(hertz_pressure(force, spec.width, band).pressure)
}

/// Largest Hertz pressure over the active segment, by dense scan.
pub fn max_hertz_pressure(
    spec: &TransmissionSpec,
    load: &LoadCase,
    cam: &Material,
    roller: &Material,
) -> Result<Extremum> {
    let delta = geometry::extended_angle(spec)?;
    let segment = active_segment(spec, delta)?;
    let pair = ContactPair { cam, roller };
    let mut best = Extremum::none();
    for psi in segment.linspace(SEGMENT_SCAN_POINTS) {
        best.offer(psi, contact_pressure(psi, spec, load, pair)?);
    }
    Ok(best)
}

/// Mechanism size `S_M = m L`, mm.
pub fn mechanism_size(cams: u32, width: f64) -> Result<f64> {
    if cams < 2 {
        return Err(CamError::InfeasibleCamCount { cams });
    }
    Ok(f64::from(cams) * width)
}

/// All three objectives of one transmission from a single segment scan.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Performance {
    pub delta: f64,
    pub segment: ActiveSegment,
    pub pressure_angle: Extremum,
    pub hertz_pressure: Extremum,
    pub size: f64,
    /// Smallest `rho_c` met on the segment scan.
    pub min_profile_radius: f64,
}

/// Scans the active segment once for both `mu_max` and `P_max`.
///
/// `P(psi)` scales as `L^(-1/2)` at every angle, so the maximiser does not
/// depend on the contact width.
pub fn evaluate_performance(
    spec: &TransmissionSpec,
    load: &LoadCase,
    materials: ContactPair<'_>,
    scan_points: usize,
) -> Result<Performance> {
    let delta = geometry::extended_angle(spec)?;
    let segment = active_segment(spec, delta)?;
    let size = mechanism_size(spec.cams, spec.width)?;
    let mut mu_max = Extremum::none();
    let mut p_max = Extremum::none();
    let mut min_rho = f64::INFINITY;
    for psi in segment.linspace(scan_points.max(2)) {
        mu_max.offer(psi, pressure_angle(psi, spec.eta, spec.lobes)?.abs());
        min_rho = min_rho.min(geometry::profile_radius(psi, spec)?);
        p_max.offer(psi, contact_pressure(psi, spec, load, materials)?);
    }
    Ok(Performance {
        delta,
        segment,
        pressure_angle: mu_max,
        hertz_pressure: p_max,
        size,
        min_profile_radius: min_rho,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_relative_eq;

    fn steel() -> Material {
        find_material(&builtin_materials(), "improved steel").unwrap().clone()
    }

    fn nominal(cams: u32) -> TransmissionSpec {
        TransmissionSpec::new(50.0, 0.18, 4.0, 1, cams, 10.0).unwrap()
    }

    #[test]
    fn pressure_angle_values() {
        let delta = -1.294_309_531_112_885_8;
        let mu = pressure_angle(PI - delta, 0.18, 1).unwrap();
        assert_relative_eq!(mu.abs().to_degrees(), 5.778_187_316_894_806, max_relative = 1e-9);
        assert!(pressure_angle(1e9, 0.18, 1).unwrap().abs() < 1e-8);
        assert!(matches!(
            pressure_angle(PI, 0.18, 1),
            Err(CamError::PressureAngleSingular { .. })
        ));
        let lower = pressure_angle(4.5, 0.17, 1).unwrap().abs();
        let higher = pressure_angle(4.5, 0.19, 1).unwrap().abs();
        assert!(lower < higher);
    }

    #[test]
    fn segment_placement() {
        let delta = -1.294_309_531_112_885_8;
        let two = active_segment(&nominal(2), delta).unwrap();
        assert_relative_eq!(two.start, 4.435_902_184_702_679, max_relative = 1e-12);
        assert_relative_eq!(two.end, 7.577_494_838_292_472, max_relative = 1e-12);
        let three = active_segment(&nominal(3), delta).unwrap();
        assert_relative_eq!(three.start, 5.483_099_735_899_277, max_relative = 1e-12);
        assert_relative_eq!(three.len(), TAU / 3.0, max_relative = 1e-12);
        let mu2 = pressure_angle(two.start, 0.18, 1).unwrap().abs();
        let mu3 = pressure_angle(three.start, 0.18, 1).unwrap().abs();
        assert!(mu3 < mu2);
        assert!(matches!(
            active_segment(&nominal(1), delta),
            Err(CamError::InfeasibleCamCount { cams: 1 })
        ));
    }

    #[test]
    fn max_pressure_angle_is_at_segment_start() {
        let spec = nominal(2);
        let max = max_pressure_angle(&spec).unwrap();
        assert_relative_eq!(max.value.to_degrees(), 5.778_187_316_894_806, max_relative = 1e-9);
        let three = max_pressure_angle(&nominal(3)).unwrap();
        assert!(three.value < max.value);
    }

    #[test]
    fn force_from_torque() {
        let spec = TransmissionSpec::new(20.0, 0.277, 4.24, 1, 2, 30.0).unwrap();
        let load = LoadCase::default();
        assert_relative_eq!(load.axial_load(20.0), 376.991_118_430_775_2, max_relative = 1e-14);
        // mu = 60 deg doubles the force
        assert_relative_eq!(
            load.axial_load(20.0) / (PI / 3.0).cos(),
            753.982_236_861_550_4,
            max_relative = 1e-12
        );
        let f = contact_force(5.0, &load, &spec).unwrap();
        let mu = pressure_angle(5.0, spec.eta, 1).unwrap();
        assert_relative_eq!(f * mu.cos() * spec.pitch / TAU, load.torque, max_relative = 1e-12);
    }

    #[test]
    fn material_constants() {
        let k = material_coefficient(&steel());
        assert_relative_eq!(k, 1.379_342_840_129_759_6e-6, max_relative = 1e-12);
        let rigidish = Material {
            poisson_ratio: 0.0,
            ..steel()
        };
        assert_relative_eq!(material_coefficient(&rigidish), 1.0 / (PI * STEEL_YOUNGS_MODULUS));
    }

    #[test]
    fn equivalent_radius_values() {
        assert_eq!(equivalent_radius(4.0, 4.0).unwrap(), 2.0);
        assert_eq!(equivalent_radius(4.0, 12.0).unwrap(), 3.0);
        assert_eq!(equivalent_radius(4.0, f64::INFINITY).unwrap(), 4.0);
        assert_relative_eq!(equivalent_radius(4.0, 1e12).unwrap(), 4.0, max_relative = 1e-10);
        assert!(matches!(
            equivalent_radius(4.0, -4.0),
            Err(CamError::DegenerateContact { .. })
        ));
    }

    #[test]
    fn hertz_formulas() {
        let k = 1.3793e-6;
        assert_eq!(hertz_band_width(0.0, k, k, 3.0, 10.0), 0.0);
        let b = hertz_band_width(377.0, k, k, 3.0, 10.0);
        assert_relative_eq!(b, 0.070_653_821_977_3, max_relative = 1e-10);
        assert_relative_eq!(
            hertz_band_width(4.0 * 377.0, k, k, 3.0, 10.0),
            2.0 * b,
            max_relative = 1e-14
        );
        let p = hertz_pressure(377.0, 10.0, b);
        assert!(!p.zero_load);
        assert_relative_eq!(p.pressure, 679.384_773_437_135, max_relative = 1e-10);
        let zero = hertz_pressure(0.0, 10.0, 0.0);
        assert!(zero.zero_load && zero.pressure == 0.0);
        let p4 = hertz_pressure(4.0 * 377.0, 10.0, 2.0 * b);
        assert_relative_eq!(p4.pressure, 2.0 * p.pressure, max_relative = 1e-14);
    }

    #[test]
    fn hertz_maximum_at_segment_start_for_two_cams() {
        let spec = nominal(2);
        let s = steel();
        let max = max_hertz_pressure(&spec, &LoadCase::default(), &s, &s).unwrap();
        let delta = geometry::extended_angle(&spec).unwrap();
        let step = PI / (SEGMENT_SCAN_POINTS - 1) as f64;
        assert!((max.psi - (PI - delta)).abs() <= step);
        let wider = TransmissionSpec { width: 20.0, ..spec };
        let max_wide = max_hertz_pressure(&wider, &LoadCase::default(), &s, &s).unwrap();
        assert!(max_wide.value < max.value);
    }

    #[test]
    fn size_and_cam_count() {
        assert_eq!(mechanism_size(2, 30.0).unwrap(), 60.0);
        assert_eq!(mechanism_size(3, 30.0).unwrap(), 90.0);
        assert!(matches!(
            mechanism_size(1, 30.0),
            Err(CamError::InfeasibleCamCount { cams: 1 })
        ));
    }

    #[test]
    fn table_rows() {
        let catalog = builtin_materials();
        assert_eq!(catalog.len(), 5);
        let stainless = find_material(&catalog, "Stainless steel").unwrap();
        assert_eq!(stainless.static_pressure, PressureRange::exact(650.0));
        assert_eq!(stainless.allowable_pressure, PressureRange::exact(260.0));
        let improved = find_material(&catalog, "Improved steel").unwrap();
        assert_eq!(improved.static_pressure, PressureRange::between(1600.0, 2000.0));
        assert_eq!(improved.allowable_pressure, PressureRange::between(640.0, 800.0));
        assert_eq!(improved.pressure_limit(), 800.0);
        let polyamide = find_material(&catalog, "polyamide").unwrap();
        assert_eq!(polyamide.allowable_pressure, PressureRange::exact(10.0));
        let aluminum = find_material(&catalog, "Aluminum").unwrap();
        assert_eq!(aluminum.allowable_pressure, PressureRange::between(25.0, 150.0));
        for m in &catalog {
            m.validate().unwrap();
        }
    }

    #[test]
    fn catalog_round_trip_and_strictness() {
        let json = serde_json::to_string(&builtin_materials()).unwrap();
        assert_eq!(parse_catalog(&json).unwrap(), builtin_materials());
        let bad = r#"[{"name":"x","youngs_modulus":1,"poisson_ratio":0.3,
            "static_pressure":{"low":1,"high":1},"allowable_pressure":{"low":1,"high":1},"colour":"red"}]"#;
        assert!(parse_catalog(bad).is_err());
        let negative = r#"[{"name":"x","youngs_modulus":-1,"poisson_ratio":0.3,
            "static_pressure":{"low":1,"high":1},"allowable_pressure":{"low":1,"high":1}}]"#;
        assert!(parse_catalog(negative).is_err());
    }

    #[test]
    fn high_speed_flag() {
        let mut load = LoadCase::default();
        assert!(!load.is_high_speed());
        load.speed_rpm = Some(120.0);
        assert!(load.is_high_speed());
        assert!(LoadCase::new(0.0).is_err());
    }
}
