//! Constrained three-objective design sweeps.
//!
//! The design vector is `x = [d_cs, r, L, m]`; the objectives `mu_max`,
//! `P_max` and `S_M` are all minimised subject to caps on each of them.
//! The design space is explored exhaustively on a uniform grid. The
//! expensive part of an evaluation (root find, feasibility and the segment
//! scan) depends only on `(d_cs, r, m)`, so it is shared by every width `L`
//! on the grid. The Hertz pressure at the scan maximiser is then recomputed
//! for each width, which is exact because `P` scales as `L^(-1/2)` at every
//! cam angle.

use std::cmp::Ordering;
use std::f64::consts::PI;

use serde::{Deserialize, Serialize};

use crate::error::{CamError, Result};
use crate::geometry::{self, TransmissionSpec};
use crate::mechanics::{self, ContactPair, LoadCase, Material, Performance};
use crate::parallel::{self, Schedule};

pub const DEFAULT_RESOLUTION: usize = 64;
pub const MIN_RESOLUTION: usize = 16;

/// Closed interval of a continuous design variable.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Bounds {
    pub min: f64,
    pub max: f64,
}

impl Bounds {
    pub fn new(min: f64, max: f64) -> Self {
        Self { min, max }
    }

    pub fn contains(&self, value: f64) -> bool {
        let slack = 1e-12 * self.max.abs().max(1.0);
        value >= self.min - slack && value <= self.max + slack
    }

    /// `count` evenly spaced values, both ends included exactly.
    pub fn grid(&self, count: usize) -> Vec<f64> {
        if count == 1 {
            return vec![self.min];
        }
        let last = (count - 1) as f64;
        (0..count)
            .map(|i| {
                if i + 1 == count {
                    self.max
                } else {
                    self.min + (self.max - self.min) * (i as f64 / last)
                }
            })
            .collect()
    }
}

/// Upper limits on the three objectives.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Caps {
    /// rad
    pub pressure_angle: f64,
    /// MPa
    pub pressure: f64,
    /// mm
    pub size: f64,
}

impl Default for Caps {
    fn default() -> Self {
        Self {
            pressure_angle: 30f64.to_radians(),
            pressure: 800.0,
            size: 90.0,
        }
    }
}

impl Caps {
    /// Reference point for hypervolume: the caps themselves.
    pub fn reference_point(&self) -> [f64; 3] {
        [self.pressure_angle, self.pressure, self.size]
    }
}

/// Bounds, discretisation and fixed context of a design sweep.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct DesignSpace {
    pub camshaft_diameter: Bounds,
    pub roller_radius: Bounds,
    /// Lower end of the contact width; the upper end is `caps.size / m`.
    pub width_min: f64,
    pub cams: Vec<u32>,
    /// Grid points per continuous axis.
    pub resolution: usize,
    pub pitch: f64,
    pub lobes: u32,
    pub load: LoadCase,
    pub cam_material: Material,
    pub roller_material: Material,
    pub caps: Caps,
    /// Points per active-segment scan.
    pub scan_points: usize,
    #[serde(skip)]
    pub schedule: Schedule,
}

impl Default for DesignSpace {
    fn default() -> Self {
        let steel = mechanics::find_material(&mechanics::builtin_materials(), "Improved steel")
            .expect("builtin table lists improved steel")
            .clone();
        Self {
            camshaft_diameter: Bounds::new(0.0, 30.0),
            roller_radius: Bounds::new(4.0, 10.5),
            width_min: 1.0,
            cams: vec![2, 3],
            resolution: DEFAULT_RESOLUTION,
            pitch: 20.0,
            lobes: 1,
            load: LoadCase::default(),
            cam_material: steel.clone(),
            roller_material: steel,
            caps: Caps::default(),
            scan_points: mechanics::SEGMENT_SCAN_POINTS,
            schedule: Schedule::default(),
        }
    }
}

impl DesignSpace {
    pub fn width_bounds(&self, cams: u32) -> Bounds {
        Bounds::new(self.width_min, self.caps.size / f64::from(cams.max(1)))
    }

    pub fn materials(&self) -> ContactPair<'_> {
        ContactPair {
            cam: &self.cam_material,
            roller: &self.roller_material,
        }
    }

    pub fn validate(&self) -> Result<()> {
        let bad = |msg: String| Err(CamError::InvalidDesignSpace(msg));
        for (name, b) in [
            ("camshaft diameter", self.camshaft_diameter),
            ("roller radius", self.roller_radius),
        ] {
            if !(b.min.is_finite() && b.max.is_finite() && b.min <= b.max && b.min >= 0.0) {
                return bad(format!("{name} bounds [{}, {}] are not a valid interval", b.min, b.max));
            }
        }
        if self.width_min.is_nan() || self.width_min <= 0.0 {
            return bad(format!(
                "minimum contact width must be positive, got {}",
                self.width_min
            ));
        }
        if self.cams.is_empty() || self.cams.iter().any(|&m| m < 2) {
            return bad(format!("cam counts must all be at least 2, got {:?}", self.cams));
        }
        for &m in &self.cams {
            if self.width_bounds(m).max < self.width_min {
                return bad(format!(
                    "size cap leaves no room for m = {m} cams of width >= {}",
                    self.width_min
                ));
            }
        }
        if self.resolution < MIN_RESOLUTION {
            return Err(CamError::TooFewSamples {
                what: "grid resolution",
                min: MIN_RESOLUTION,
                got: self.resolution,
            });
        }
        let positive = |x: f64| x > 0.0;
        if !positive(self.pitch) || self.lobes == 0 || !positive(self.load.torque) || self.scan_points < 2 {
            return bad("pitch, lobes, torque and scan points must be positive".into());
        }
        self.cam_material.validate()?;
        self.roller_material.validate()?;
        Ok(())
    }
}

/// Design vector `x = [d_cs, r, L, m]`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct DesignVector {
    pub camshaft_diameter: f64,
    pub roller_radius: f64,
    pub width: f64,
    pub cams: u32,
}

impl DesignVector {
    pub fn new(camshaft_diameter: f64, roller_radius: f64, width: f64, cams: u32) -> Self {
        Self {
            camshaft_diameter,
            roller_radius,
            width,
            cams,
        }
    }

    pub fn spec(&self, space: &DesignSpace) -> TransmissionSpec {
        TransmissionSpec::from_design(
            self.camshaft_diameter,
            self.roller_radius,
            self.width,
            self.cams,
            space.pitch,
            space.lobes,
        )
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Objectives {
    /// `mu_max`, rad.
    pub pressure_angle: f64,
    /// `P_max`, MPa.
    pub pressure: f64,
    /// `S_M`, mm.
    pub size: f64,
}

impl Objectives {
    pub fn as_array(&self) -> [f64; 3] {
        [self.pressure_angle, self.pressure, self.size]
    }
}

/// Reason a candidate is infeasible.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Violation {
    OutOfBounds,
    Geometry(String),
    PressureAngle,
    HertzPressure,
    Size,
}

impl Violation {
    pub fn label(&self) -> &'static str {
        match self {
            Violation::OutOfBounds => "bounds",
            Violation::Geometry(_) => "geometry",
            Violation::PressureAngle => "pressure_angle",
            Violation::HertzPressure => "hertz_pressure",
            Violation::Size => "size",
        }
    }
}

/// An evaluated design vector.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct DesignCandidate {
    pub x: DesignVector,
    pub eta: f64,
    /// `None` when the geometry admits no valid evaluation.
    pub objectives: Option<Objectives>,
    /// Cam angles where `mu_max` and `P_max` are attained.
    pub peak_angles: Option<(f64, f64)>,
    pub violations: Vec<Violation>,
    pub convex_profile: bool,
}

impl DesignCandidate {
    pub fn is_feasible(&self) -> bool {
        self.violations.is_empty() && self.objectives.is_some()
    }

    fn feasible_objectives(&self) -> Option<[f64; 3]> {
        self.objectives.filter(|_| self.is_feasible()).map(|o| o.as_array())
    }
}

/// Everything about a design that does not depend on the contact width.
#[derive(Debug, Clone)]
struct Shape {
    camshaft_diameter: f64,
    spec: TransmissionSpec,
    performance: std::result::Result<Performance, String>,
    convex: bool,
}

const REFERENCE_WIDTH: f64 = 1.0;

fn evaluate_shape(camshaft_diameter: f64, roller_radius: f64, cams: u32, space: &DesignSpace) -> Shape {
    let spec = TransmissionSpec::from_design(
        camshaft_diameter,
        roller_radius,
        REFERENCE_WIDTH,
        cams,
        space.pitch,
        space.lobes,
    );
    let report = geometry::feasibility_check(&spec);
    let performance = if !report.is_feasible() {
        Err(report.notes.join("; "))
    } else {
        mechanics::evaluate_performance(&spec, &space.load, space.materials(), space.scan_points)
            .map_err(|e| e.to_string())
    };
    Shape {
        camshaft_diameter,
        spec,
        performance,
        convex: report.fully_convex,
    }
}

fn candidate_from_shape(shape: &Shape, width: f64, space: &DesignSpace) -> DesignCandidate {
    let spec = TransmissionSpec { width, ..shape.spec };
    let x = DesignVector::new(shape.camshaft_diameter, spec.roller_radius, width, spec.cams);
    let mut violations = Vec::new();
    if !(space.camshaft_diameter.contains(x.camshaft_diameter)
        && space.roller_radius.contains(x.roller_radius)
        && space.width_bounds(x.cams).contains(width)
        && space.cams.contains(&x.cams))
    {
        violations.push(Violation::OutOfBounds);
    }

    let objectives = match &shape.performance {
        Err(reason) => {
            violations.push(Violation::Geometry(reason.clone()));
            None
        }
        Ok(perf) => {
            let psi = perf.hertz_pressure.psi;
            match mechanics::contact_pressure(psi, &spec, &space.load, space.materials()) {
                Ok(pressure) => Some((
                    Objectives {
                        pressure_angle: perf.pressure_angle.value,
                        pressure,
                        size: f64::from(spec.cams) * width,
                    },
                    (perf.pressure_angle.psi, psi),
                )),
                Err(e) => {
                    violations.push(Violation::Geometry(e.to_string()));
                    None
                }
            }
        }
    };

    if let Some((o, _)) = objectives {
        let caps = space.caps;
        let within = |value: f64, cap: f64| value <= cap * (1.0 + 1e-12);
        if !within(o.pressure_angle, caps.pressure_angle) {
            violations.push(Violation::PressureAngle);
        }
        if !within(o.pressure, caps.pressure) {
            violations.push(Violation::HertzPressure);
        }
        if !within(o.size, caps.size) {
            violations.push(Violation::Size);
        }
    }

    DesignCandidate {
        x,
        eta: spec.eta,
        objectives: objectives.map(|(o, _)| o),
        peak_angles: objectives.map(|(_, a)| a),
        violations,
        convex_profile: shape.convex,
    }
}

/// Evaluates one design vector. Infeasible designs are returned flagged.
pub fn evaluate_candidate(x: DesignVector, space: &DesignSpace) -> DesignCandidate {
    let shape = evaluate_shape(x.camshaft_diameter, x.roller_radius, x.cams, space);
    candidate_from_shape(&shape, x.width, space)
}

/// `a` is no worse than `b` in every objective and strictly better in one.
pub fn dominates(a: &DesignCandidate, b: &DesignCandidate) -> bool {
    match (a.objectives, b.objectives) {
        (Some(a), Some(b)) => dominates_point(&a.as_array(), &b.as_array()),
        _ => false,
    }
}

pub fn dominates_point<const N: usize>(a: &[f64; N], b: &[f64; N]) -> bool {
    a.iter().zip(b).all(|(x, y)| x <= y) && a.iter().zip(b).any(|(x, y)| x < y)
}

fn lexicographic(a: &DesignCandidate, b: &DesignCandidate) -> Ordering {
    let key = |c: &DesignCandidate| {
        let o = c.objectives.map(|o| o.as_array()).unwrap_or([f64::INFINITY; 3]);
        [
            o[0],
            o[1],
            o[2],
            c.x.camshaft_diameter,
            c.x.roller_radius,
            c.x.width,
            f64::from(c.x.cams),
        ]
    };
    let (ka, kb) = (key(a), key(b));
    ka.iter()
        .zip(&kb)
        .map(|(x, y)| x.total_cmp(y))
        .find(|o| o.is_ne())
        .unwrap_or(Ordering::Equal)
}

/// Feasible, mutually nondominated candidates in lexicographic objective order.
///
/// Candidates with identical objectives are all kept.
pub fn pareto_front(candidates: &[DesignCandidate]) -> Vec<DesignCandidate> {
    let mut feasible: Vec<&DesignCandidate> = candidates.iter().filter(|c| c.is_feasible()).collect();
    feasible.sort_by(|a, b| lexicographic(a, b));
    // Lexicographic order extends dominance, so a candidate can only be
    // dominated by one sorted before it, and then by a front member.
    let mut front: Vec<&DesignCandidate> = Vec::new();
    let mut points: Vec<[f64; 3]> = Vec::new();
    for c in feasible {
        let p = c.feasible_objectives().expect("filtered to feasible");
        if !points.iter().any(|q| dominates_point(q, &p)) {
            front.push(c);
            points.push(p);
        }
    }
    front.into_iter().cloned().collect()
}

/// Two-objective `(mu_max, P_max)` nondominated subset, in lexicographic order.
pub fn pareto_front_2d(candidates: &[DesignCandidate]) -> Vec<DesignCandidate> {
    let mut feasible: Vec<&DesignCandidate> = candidates.iter().filter(|c| c.is_feasible()).collect();
    feasible.sort_by(|a, b| lexicographic(a, b));
    let mut front = Vec::new();
    let mut points: Vec<[f64; 2]> = Vec::new();
    for c in feasible {
        let o = c.objectives.expect("feasible");
        let p = [o.pressure_angle, o.pressure];
        if !points.iter().any(|q| dominates_point(q, &p)) {
            front.push(c.clone());
            points.push(p);
        }
    }
    front
}

/// Fronts produced by a grid sweep.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SweepResult {
    /// Every evaluated candidate, in grid order (m, d_cs, r, L).
    pub candidates: Vec<DesignCandidate>,
    /// Front of each cam count, in `space.cams` order.
    pub per_cams: Vec<(u32, Vec<DesignCandidate>)>,
    /// Front over all cam counts.
    pub front: Vec<DesignCandidate>,
}

impl SweepResult {
    pub fn front_for(&self, cams: u32) -> Option<&[DesignCandidate]> {
        self.per_cams
            .iter()
            .find(|(m, _)| *m == cams)
            .map(|(_, f)| f.as_slice())
    }
}

/// Exhaustive grid evaluation of the design space.
pub fn sweep(space: &DesignSpace) -> Result<SweepResult> {
    space.validate()?;
    let d_axis = space.camshaft_diameter.grid(space.resolution);
    let r_axis = space.roller_radius.grid(space.resolution);

    let mut candidates = Vec::new();
    let mut per_cams = Vec::new();
    for &m in &space.cams {
        let shapes: Vec<(f64, f64)> = d_axis
            .iter()
            .flat_map(|&d| r_axis.iter().map(move |&r| (d, r)))
            .collect();
        let widths = space.width_bounds(m).grid(space.resolution);
        let evaluated = parallel::map(&shapes, space.schedule, |&(d, r)| {
            let shape = evaluate_shape(d, r, m, space);
            widths
                .iter()
                .map(|&w| candidate_from_shape(&shape, w, space))
                .collect::<Vec<_>>()
        });
        let block: Vec<DesignCandidate> = evaluated.into_iter().flatten().collect();
        per_cams.push((m, pareto_front(&block)));
        candidates.extend(block);
    }
    let union: Vec<DesignCandidate> = per_cams.iter().flat_map(|(_, f)| f.iter().cloned()).collect();
    let front = pareto_front(&union);
    Ok(SweepResult {
        candidates,
        per_cams,
        front,
    })
}

/// Hypervolume dominated by `points` and bounded by `reference` (minimisation).
/// Points not strictly better than the reference in every objective are ignored.
pub fn hypervolume(points: &[[f64; 3]], reference: [f64; 3]) -> f64 {
    let mut pts: Vec<[f64; 3]> = points
        .iter()
        .copied()
        .filter(|p| p.iter().zip(&reference).all(|(x, r)| x < r))
        .collect();
    pts.sort_by(|a, b| a[0].total_cmp(&b[0]));
    let mut volume = 0.0;
    for i in 0..pts.len() {
        let next = if i + 1 < pts.len() { pts[i + 1][0] } else { reference[0] };
        let depth = next - pts[i][0];
        if depth <= 0.0 {
            continue;
        }
        let slice: Vec<[f64; 2]> = pts[..=i].iter().map(|p| [p[1], p[2]]).collect();
        volume += depth * hypervolume_2d(&slice, [reference[1], reference[2]]);
    }
    volume
}

fn hypervolume_2d(points: &[[f64; 2]], reference: [f64; 2]) -> f64 {
    let mut pts = points.to_vec();
    pts.sort_by(|a, b| a[0].total_cmp(&b[0]).then(a[1].total_cmp(&b[1])));
    let mut area = 0.0;
    let mut ceiling = reference[1];
    for p in &pts {
        if p[1] >= ceiling {
            continue;
        }
        // strip from this x to the reference, between the new and old ceilings
        area += (reference[0] - p[0]) * (ceiling - p[1]);
        ceiling = p[1];
    }
    area
}

/// Iso-line of a scalar field over the `(d_cs, r)` grid, as line segments.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct IsoLine {
    pub level: f64,
    pub segments: Vec<[[f64; 2]; 2]>,
}

/// One point of the optimal locus of a contour slice.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct LocusPoint {
    pub camshaft_diameter: f64,
    pub roller_radius: f64,
    pub pressure_angle: f64,
    pub pressure: f64,
}

/// Objectives over a `(d_cs, r)` grid at fixed `m` and `S_M`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ContourSlice {
    pub cams: u32,
    pub size: f64,
    pub width: f64,
    pub camshaft_diameters: Vec<f64>,
    pub roller_radii: Vec<f64>,
    /// `[i_d][i_r]`, rad; NaN where the geometry is infeasible.
    pub pressure_angle: Vec<Vec<f64>>,
    /// `[i_d][i_r]`, MPa; NaN where the geometry is infeasible.
    pub pressure: Vec<Vec<f64>>,
    /// `[i_d][i_r]`: all caps and geometry satisfied.
    pub feasible: Vec<Vec<bool>>,
    pub pressure_angle_isolines: Vec<IsoLine>,
    pub pressure_isolines: Vec<IsoLine>,
    /// `(mu_max, P_max)` nondominated feasible grid points, by increasing `mu_max`.
    pub locus: Vec<LocusPoint>,
}

/// Grid and iso-level request for a contour slice.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ContourRequest {
    pub cams: u32,
    pub size: f64,
    pub resolution: usize,
    /// rad
    pub pressure_angle_levels: Vec<f64>,
    /// MPa
    pub pressure_levels: Vec<f64>,
}

pub fn contour_slice(request: &ContourRequest, space: &DesignSpace) -> Result<ContourSlice> {
    space.validate()?;
    let m = request.cams;
    if m < 2 {
        return Err(CamError::InfeasibleCamCount { cams: m });
    }
    if request.resolution < 2 {
        return Err(CamError::TooFewSamples {
            what: "contour resolution",
            min: 2,
            got: request.resolution,
        });
    }
    let width = request.size / f64::from(m);
    if !space.width_bounds(m).contains(width) {
        return Err(CamError::InvalidDesignSpace(format!(
            "S_M = {} gives L = {width}, outside [{}, {}]",
            request.size,
            space.width_min,
            space.width_bounds(m).max
        )));
    }
    let d_axis = space.camshaft_diameter.grid(request.resolution);
    let r_axis = space.roller_radius.grid(request.resolution);
    let cells: Vec<(f64, f64)> = d_axis
        .iter()
        .flat_map(|&d| r_axis.iter().map(move |&r| (d, r)))
        .collect();
    let slice_space = DesignSpace {
        cams: vec![m],
        ..space.clone()
    };
    let evaluated = parallel::map(&cells, space.schedule, |&(d, r)| {
        evaluate_candidate(DesignVector::new(d, r, width, m), &slice_space)
    });

    let n_r = r_axis.len();
    let field = |f: &dyn Fn(&DesignCandidate) -> f64| -> Vec<Vec<f64>> {
        evaluated.chunks(n_r).map(|row| row.iter().map(f).collect()).collect()
    };
    let mu = field(&|c| c.objectives.map_or(f64::NAN, |o| o.pressure_angle));
    let pressure = field(&|c| c.objectives.map_or(f64::NAN, |o| o.pressure));
    let feasible = evaluated
        .chunks(n_r)
        .map(|row| row.iter().map(DesignCandidate::is_feasible).collect())
        .collect();

    let isolines = |z: &[Vec<f64>], levels: &[f64]| -> Vec<IsoLine> {
        levels
            .iter()
            .map(|&level| IsoLine {
                level,
                segments: marching_squares(&d_axis, &r_axis, z, level),
            })
            .collect()
    };
    let pressure_angle_isolines = isolines(&mu, &request.pressure_angle_levels);
    let pressure_isolines = isolines(&pressure, &request.pressure_levels);

    let locus = pareto_front_2d(&evaluated)
        .into_iter()
        .map(|c| {
            let o = c.objectives.expect("front members are evaluated");
            LocusPoint {
                camshaft_diameter: c.x.camshaft_diameter,
                roller_radius: c.x.roller_radius,
                pressure_angle: o.pressure_angle,
                pressure: o.pressure,
            }
        })
        .collect();

    Ok(ContourSlice {
        cams: m,
        size: request.size,
        width,
        camshaft_diameters: d_axis.clone(),
        roller_radii: r_axis.clone(),
        pressure_angle: mu,
        pressure,
        feasible,
        pressure_angle_isolines,
        pressure_isolines,
        locus,
    })
}

/// Marching squares over `z[i][j]` sampled at `(xs[i], ys[j])`. Cells with a
/// non-finite corner are skipped; saddles are resolved with the cell mean.
pub fn marching_squares(xs: &[f64], ys: &[f64], z: &[Vec<f64>], level: f64) -> Vec<[[f64; 2]; 2]> {
    let mut segments = Vec::new();
    for i in 0..xs.len().saturating_sub(1) {
        for j in 0..ys.len().saturating_sub(1) {
            // corners counter-clockwise from (i, j)
            let corners = [
                ([xs[i], ys[j]], z[i][j]),
                ([xs[i + 1], ys[j]], z[i + 1][j]),
                ([xs[i + 1], ys[j + 1]], z[i + 1][j + 1]),
                ([xs[i], ys[j + 1]], z[i][j + 1]),
            ];
            if corners.iter().any(|(_, v)| !v.is_finite()) {
                continue;
            }
            let above: Vec<bool> = corners.iter().map(|(_, v)| *v >= level).collect();
            let crossing = |e: usize| -> Option<[f64; 2]> {
                let (a, b) = (corners[e], corners[(e + 1) % 4]);
                if above[e] == above[(e + 1) % 4] {
                    return None;
                }
                let t = (level - a.1) / (b.1 - a.1);
                Some([a.0[0] + t * (b.0[0] - a.0[0]), a.0[1] + t * (b.0[1] - a.0[1])])
            };
            let points: Vec<(usize, [f64; 2])> = (0..4).filter_map(|e| crossing(e).map(|p| (e, p))).collect();
            match points.len() {
                2 => segments.push([points[0].1, points[1].1]),
                4 => {
                    let mean = corners.iter().map(|(_, v)| v).sum::<f64>() / 4.0;
                    // pair edges so that the cell centre stays on its own side
                    if (mean >= level) == above[0] {
                        segments.push([points[0].1, points[3].1]);
                        segments.push([points[1].1, points[2].1]);
                    } else {
                        segments.push([points[0].1, points[1].1]);
                        segments.push([points[2].1, points[3].1]);
                    }
                }
                _ => {}
            }
        }
    }
    segments
}

/// Degrees helper for presentation layers.
pub fn to_degrees(rad: f64) -> f64 {
    rad * 180.0 / PI
}
