//! Cam profile, pitch curve and curvature of a Slide-o-Cam transmission.
//!
//! Angles are in radians and lengths in millimetres. The cam-fixed frame is
//! the `u`-`v` frame; `psi` is the cam rotation angle (the mechanism input).
//!
//! The follower advances one pitch `p` per cam revolution:
//!
//! ```text
//! s(psi) = p * psi / (2 pi) - p / 2
//! ```
//!
//! The contact point traces the cam profile `(u_c, v_c)`, the roller centre
//! traces the pitch curve `(u_p, v_p)`, and the two curves are offset by the
//! roller radius along their common normal, so `rho_p = rho_c + r`.

use std::f64::consts::{PI, TAU};

use serde::{Deserialize, Serialize};

use crate::error::{CamError, Result};

/// `|2 pi eta - 1|` below this is treated as the forbidden `eta = 1/(2 pi)`.
pub const ETA_SINGULARITY_TOLERANCE: f64 = 1e-9;

/// Below this `|1 - r kappa_p|` the cam curvature is considered infinite.
pub const BLOCKING_TOLERANCE: f64 = 1e-9;

pub const DEFAULT_PROFILE_RESOLUTION: usize = 2048;
pub const MIN_PROFILE_RESOLUTION: usize = 16;

const ROOT_SCAN_SUBDIVISIONS: usize = 1024;
const ROOT_TOLERANCE: f64 = 1e-12;
const GOLDEN_TOLERANCE: f64 = 1e-12;

/// Full geometric parameter set of one candidate transmission.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct TransmissionSpec {
    /// Pitch `p`: follower travel per cam revolution, mm.
    pub pitch: f64,
    /// Dimensionless ratio `eta = e / p`.
    pub eta: f64,
    /// Roller radius `r`, mm.
    pub roller_radius: f64,
    /// Lobes per cam `n`.
    pub lobes: u32,
    /// Conjugate cams on the camshaft `m`.
    pub cams: u32,
    /// Contact width `L`, mm.
    pub width: f64,
}

impl TransmissionSpec {
    pub fn new(pitch: f64, eta: f64, roller_radius: f64, lobes: u32, cams: u32, width: f64) -> Result<Self> {
        let spec = Self {
            pitch,
            eta,
            roller_radius,
            lobes,
            cams,
            width,
        };
        spec.validate()?;
        Ok(spec)
    }

    /// Builds a spec from the design variables `(d_cs, r, L, m)` using
    /// `d_cs = 2 (e - r)`, i.e. `eta = (r + d_cs / 2) / p`.
    pub fn from_design(
        camshaft_diameter: f64,
        roller_radius: f64,
        width: f64,
        cams: u32,
        pitch: f64,
        lobes: u32,
    ) -> Self {
        Self {
            pitch,
            eta: (roller_radius + camshaft_diameter / 2.0) / pitch,
            roller_radius,
            lobes,
            cams,
            width,
        }
    }

    /// Distance `e = eta p` between the cam axis and the roller centre line.
    pub fn eccentricity(&self) -> f64 {
        self.eta * self.pitch
    }

    /// Camshaft diameter `d_cs = 2 (e - r)`.
    pub fn camshaft_diameter(&self) -> f64 {
        2.0 * (self.eccentricity() - self.roller_radius)
    }

    pub fn validate(&self) -> Result<()> {
        let positive = |name: &str, value: f64| {
            if value.is_finite() && value > 0.0 {
                Ok(())
            } else {
                Err(CamError::InvalidSpec(format!(
                    "{name} must be positive and finite, got {value}"
                )))
            }
        };
        positive("pitch", self.pitch)?;
        positive("roller radius", self.roller_radius)?;
        positive("contact width", self.width)?;
        if !self.eta.is_finite() {
            return Err(CamError::InvalidSpec(format!("eta must be finite, got {}", self.eta)));
        }
        if self.lobes == 0 {
            return Err(CamError::InvalidSpec("number of lobes must be at least 1".into()));
        }
        if self.cams == 0 {
            return Err(CamError::InvalidSpec("number of cams must be at least 1".into()));
        }
        check_eta(self.eta)?;
        if self.eccentricity() <= self.roller_radius {
            return Err(CamError::InvalidSpec(format!(
                "e = {} must exceed r = {} (camshaft diameter would be {})",
                self.eccentricity(),
                self.roller_radius,
                self.camshaft_diameter()
            )));
        }
        Ok(())
    }
}

fn check_eta(eta: f64) -> Result<f64> {
    let k = TAU * eta - 1.0;
    if k.abs() < ETA_SINGULARITY_TOLERANCE {
        Err(CamError::EtaSingular { eta })
    } else {
        Ok(k)
    }
}

/// Point in the cam-fixed `u`-`v` frame, mm.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Point2 {
    pub u: f64,
    pub v: f64,
}

/// Follower displacement `s(psi)`.
pub fn follower_displacement(psi: f64, pitch: f64) -> f64 {
    pitch * psi / TAU - pitch / 2.0
}

/// Intermediate coefficients of the cam profile equations.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ProfileCoefficients {
    pub b1: f64,
    pub b2: f64,
    /// Principal-branch angle `arctan((psi - pi) / (2 pi eta - 1))`.
    pub delta: f64,
}

pub fn profile_coefficients(psi: f64, pitch: f64, eta: f64) -> Result<ProfileCoefficients> {
    let k = check_eta(eta)?;
    let b1 = pitch / TAU;
    let offset = psi - PI;
    Ok(ProfileCoefficients {
        b1,
        b2: b1 * k.hypot(offset),
        delta: (offset / k).atan(),
    })
}

/// Contact point `C` on the cam profile.
pub fn cam_profile_point(psi: f64, spec: &TransmissionSpec) -> Result<Point2> {
    let c = profile_coefficients(psi, spec.pitch, spec.eta)?;
    let arm = c.b2 - spec.roller_radius;
    let phase = c.delta - psi;
    Ok(Point2 {
        u: c.b1 * psi.cos() + arm * phase.cos(),
        v: -c.b1 * psi.sin() + arm * phase.sin(),
    })
}

fn profile_ordinate(psi: f64, pitch: f64, eta: f64, roller_radius: f64) -> f64 {
    let b1 = pitch / TAU;
    let k = TAU * eta - 1.0;
    let offset = psi - PI;
    let b2 = b1 * k.hypot(offset);
    -b1 * psi.sin() + (b2 - roller_radius) * ((offset / k).atan() - psi).sin()
}

/// Roller centre `O2` on the pitch curve.
pub fn pitch_curve_point(psi: f64, spec: &TransmissionSpec) -> Point2 {
    let e = spec.eccentricity();
    let s = follower_displacement(psi, spec.pitch);
    let (sin, cos) = psi.sin_cos();
    Point2 {
        u: e * cos + s * sin,
        v: -e * sin + s * cos,
    }
}

/// Signed curvature `kappa_p` of the pitch curve.
pub fn pitch_curvature(psi: f64, pitch: f64, eta: f64) -> Result<f64> {
    let k = check_eta(eta)?;
    let a = (psi - PI).powi(2);
    let numerator = a + 2.0 * k * (PI * eta - 1.0);
    let denominator = (a + k * k).powf(1.5);
    Ok(TAU / pitch * numerator / denominator)
}

/// Cam-profile curvature from the pitch-curve curvature, `kappa_p / (1 - r kappa_p)`.
pub fn cam_curvature(kappa_p: f64, roller_radius: f64) -> Result<f64> {
    let margin = 1.0 - roller_radius * kappa_p;
    if margin.abs() < BLOCKING_TOLERANCE {
        return Err(CamError::RollerBlocksCam { margin });
    }
    Ok(kappa_p / margin)
}

/// Signed radius of curvature of the cam profile, `rho_c = 1 / kappa_p - r`.
///
/// Infinite where the pitch curve is locally straight.
pub fn profile_radius(psi: f64, spec: &TransmissionSpec) -> Result<f64> {
    let kappa_p = pitch_curvature(psi, spec.pitch, spec.eta)?;
    Ok(1.0 / kappa_p - spec.roller_radius)
}

/// Extended angle `Delta`: the negative root of `v_c(psi) = 0` closest to zero.
///
/// Sign-scans `[-pi, 0)` and bisects the bracket nearest zero.
pub fn extended_angle(spec: &TransmissionSpec) -> Result<f64> {
    spec.validate()?;
    let (p, eta, r) = (spec.pitch, spec.eta, spec.roller_radius);
    let f = |psi: f64| profile_ordinate(psi, p, eta, r);
    let step = PI / ROOT_SCAN_SUBDIVISIONS as f64;

    let mut hi = 0.0;
    let mut f_hi = f(hi);
    for i in (0..ROOT_SCAN_SUBDIVISIONS).rev() {
        let lo = -PI + i as f64 * step;
        let f_lo = f(lo);
        if f_lo == 0.0 {
            return Ok(lo);
        }
        if f_lo.signum() != f_hi.signum() && f_hi != 0.0 {
            return Ok(bisect(f, lo, hi, f_lo));
        }
        hi = lo;
        f_hi = f_lo;
    }
    Err(CamError::NoRootFound)
}

fn bisect(f: impl Fn(f64) -> f64, mut lo: f64, mut hi: f64, mut f_lo: f64) -> f64 {
    while hi - lo > ROOT_TOLERANCE {
        let mid = 0.5 * (lo + hi);
        if mid <= lo || mid >= hi {
            break;
        }
        let f_mid = f(mid);
        if f_mid == 0.0 {
            return mid;
        }
        if f_mid.signum() == f_lo.signum() {
            lo = mid;
            f_lo = f_mid;
        } else {
            hi = mid;
        }
    }
    0.5 * (lo + hi)
}

/// Closed angular interval `[start, end]`, rad.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct AngleRange {
    pub start: f64,
    pub end: f64,
}

impl AngleRange {
    pub fn len(&self) -> f64 {
        self.end - self.start
    }

    pub fn contains(&self, psi: f64) -> bool {
        psi >= self.start && psi <= self.end
    }

    /// `count` uniformly spaced angles, endpoints included exactly.
    pub fn linspace(&self, count: usize) -> impl Iterator<Item = f64> + '_ {
        let last = count.saturating_sub(1).max(1) as f64;
        (0..count).map(move |i| {
            if i + 1 == count {
                self.end
            } else {
                self.start + self.len() * (i as f64 / last)
            }
        })
    }
}

/// Angles over which the closed profile is traced, `[Delta, 2 pi - Delta]`.
pub fn profile_range(delta: f64) -> AngleRange {
    AngleRange {
        start: delta,
        end: TAU - delta,
    }
}

/// Portion of the profile over which one of the `m` conjugate cams drives
/// its roller: `[2 pi / n - Delta - 2 pi / (n m), 2 pi / n - Delta]`.
pub fn driving_range(spec: &TransmissionSpec, delta: f64) -> AngleRange {
    let n = f64::from(spec.lobes);
    let m = f64::from(spec.cams);
    let end = TAU / n - delta;
    AngleRange {
        start: end - TAU / (n * m),
        end,
    }
}

/// Location and value of the smallest cam radius of curvature.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct MinRadius {
    pub psi: f64,
    pub rho_c: f64,
}

/// Minimum of `rho_c` over the driving range of the cam.
///
/// The grid minimum is refined by golden-section search between its grid
/// neighbours.
pub fn min_profile_radius(spec: &TransmissionSpec) -> Result<MinRadius> {
    let delta = extended_angle(spec)?;
    min_profile_radius_on(spec, driving_range(spec, delta))
}

pub(crate) fn min_profile_radius_on(spec: &TransmissionSpec, range: AngleRange) -> Result<MinRadius> {
    let rho = |psi: f64| profile_radius(psi, spec);
    let grid: Vec<f64> = range.linspace(DEFAULT_PROFILE_RESOLUTION).collect();
    let mut best = 0;
    let mut best_rho = f64::INFINITY;
    for (i, &psi) in grid.iter().enumerate() {
        let value = rho(psi)?;
        if value < best_rho {
            best = i;
            best_rho = value;
        }
    }
    let mut result = MinRadius {
        psi: grid[best],
        rho_c: best_rho,
    };
    if !best_rho.is_finite() {
        return Ok(result);
    }

    let lo = grid[best.saturating_sub(1)];
    let hi = grid[(best + 1).min(grid.len() - 1)];
    let neighbours_finite = [lo, hi].iter().all(|&x| rho(x).is_ok_and(f64::is_finite));
    if neighbours_finite && hi > lo {
        let psi = golden_section_min(|x| rho(x).unwrap_or(f64::INFINITY), lo, hi);
        let value = rho(psi)?;
        if value < result.rho_c {
            result = MinRadius { psi, rho_c: value };
        }
    }
    Ok(result)
}

fn golden_section_min(f: impl Fn(f64) -> f64, mut a: f64, mut b: f64) -> f64 {
    let inv_phi = (5f64.sqrt() - 1.0) / 2.0;
    let mut c = b - inv_phi * (b - a);
    let mut d = a + inv_phi * (b - a);
    let (mut fc, mut fd) = (f(c), f(d));
    while (b - a).abs() > GOLDEN_TOLERANCE {
        if fc < fd {
            b = d;
            d = c;
            fd = fc;
            c = b - inv_phi * (b - a);
            fc = f(c);
        } else {
            a = c;
            c = d;
            fc = fd;
            d = a + inv_phi * (b - a);
            fd = f(d);
        }
    }
    0.5 * (a + b)
}

/// Feasibility and convexity classification of a candidate profile.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct FeasibilityReport {
    /// `eta > 1/(2 pi)`.
    pub eta_valid: bool,
    /// `rho_c > 0` everywhere the cam drives the roller.
    pub profile_feasible: bool,
    /// `kappa_c >= 0` over the whole closed profile.
    pub fully_convex: bool,
    /// `rho_c` touches zero on the driving range: the roller blocks the cam.
    pub blocking: bool,
    pub delta: Option<f64>,
    pub min_radius: Option<MinRadius>,
    /// Human-readable reasons for any failed flag.
    pub notes: Vec<String>,
}

impl FeasibilityReport {
    pub fn is_feasible(&self) -> bool {
        self.eta_valid && self.profile_feasible
    }
}

impl std::fmt::Display for FeasibilityReport {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        writeln!(f, "eta_valid        : {}", self.eta_valid)?;
        writeln!(f, "profile_feasible : {}", self.profile_feasible)?;
        writeln!(f, "fully_convex     : {}", self.fully_convex)?;
        writeln!(f, "blocking         : {}", self.blocking)?;
        if let Some(delta) = self.delta {
            writeln!(f, "delta            : {delta} rad")?;
        }
        if let Some(min) = self.min_radius {
            writeln!(f, "rho_c_min        : {} mm at psi = {} rad", min.rho_c, min.psi)?;
        }
        for note in &self.notes {
            writeln!(f, "note             : {note}")?;
        }
        Ok(())
    }
}

/// Classifies a spec without failing: infeasibility is reported as data.
pub fn feasibility_check(spec: &TransmissionSpec) -> FeasibilityReport {
    let mut report = FeasibilityReport {
        eta_valid: spec.eta.is_finite()
            && spec.eta > 1.0 / TAU
            && (TAU * spec.eta - 1.0).abs() >= ETA_SINGULARITY_TOLERANCE,
        profile_feasible: false,
        fully_convex: false,
        blocking: false,
        delta: None,
        min_radius: None,
        notes: Vec::new(),
    };
    if !report.eta_valid {
        report
            .notes
            .push(format!("eta = {} must exceed 1/(2 pi) = {}", spec.eta, 1.0 / TAU));
    }
    if let Err(err) = spec.validate() {
        report.notes.push(err.to_string());
        return report;
    }
    let delta = match extended_angle(spec) {
        Ok(delta) => delta,
        Err(err) => {
            report.notes.push(err.to_string());
            return report;
        }
    };
    report.delta = Some(delta);

    match min_profile_radius_on(spec, driving_range(spec, delta)) {
        Ok(min) => {
            report.blocking = min.rho_c.abs() <= BLOCKING_TOLERANCE * spec.pitch;
            report.profile_feasible = min.rho_c > 0.0 && !report.blocking;
            if report.blocking {
                report.notes.push("the roller blocks the cam (rho_c_min = 0)".into());
            } else if !report.profile_feasible {
                report
                    .notes
                    .push(format!("rho_c_min = {} mm is negative on the driving range", min.rho_c));
            }
            report.min_radius = Some(min);
        }
        Err(err) => report.notes.push(err.to_string()),
    }
    report.fully_convex = report.eta_valid && min_cam_curvature(spec, delta) >= 0.0;
    report
}

/// Smallest cam curvature over the whole closed profile. The pitch-curvature
/// numerator is smallest at `psi = pi`, which is always included.
fn min_cam_curvature(spec: &TransmissionSpec, delta: f64) -> f64 {
    profile_range(delta)
        .linspace(DEFAULT_PROFILE_RESOLUTION)
        .chain(std::iter::once(PI))
        .map(|psi| {
            let kappa_p = match pitch_curvature(psi, spec.pitch, spec.eta) {
                Ok(k) => k,
                Err(_) => return f64::NEG_INFINITY,
            };
            let margin = 1.0 - spec.roller_radius * kappa_p;
            if margin <= 0.0 {
                // Undercut: the offset profile folds back on itself.
                f64::NEG_INFINITY
            } else {
                kappa_p / margin
            }
        })
        .fold(f64::INFINITY, f64::min)
}

/// One sampled point of the closed profile.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ProfileSample {
    pub psi: f64,
    pub u_c: f64,
    pub v_c: f64,
    pub u_p: f64,
    pub v_p: f64,
    pub kappa_p: f64,
    pub rho_c: f64,
}

/// Closed cam profile sampled uniformly in `psi` over `[Delta, 2 pi - Delta]`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CamProfile {
    pub delta: f64,
    pub samples: Vec<ProfileSample>,
    pub resolution: usize,
}

pub fn sample_profile(spec: &TransmissionSpec, resolution: usize) -> Result<CamProfile> {
    if resolution < MIN_PROFILE_RESOLUTION {
        return Err(CamError::TooFewSamples {
            what: "profile resolution",
            min: MIN_PROFILE_RESOLUTION,
            got: resolution,
        });
    }
    let delta = extended_angle(spec)?;
    let samples = profile_range(delta)
        .linspace(resolution)
        .map(|psi| {
            let contact = cam_profile_point(psi, spec)?;
            let centre = pitch_curve_point(psi, spec);
            let kappa_p = pitch_curvature(psi, spec.pitch, spec.eta)?;
            Ok(ProfileSample {
                psi,
                u_c: contact.u,
                v_c: contact.v,
                u_p: centre.u,
                v_p: centre.v,
                kappa_p,
                rho_c: 1.0 / kappa_p - spec.roller_radius,
            })
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(CamProfile {
        delta,
        samples,
        resolution,
    })
}
