//! The five subcommands. Each writes its data files (CSV/JSON) and plots
//! (SVG) into the output directory and returns a short text summary.

use std::fmt::Write;

use serde_json::json;
use slideocam_core::geometry::{self, feasibility_check, FeasibilityReport};
use slideocam_core::mechanics::{self, ContactPair, Material};
use slideocam_core::optimizer::{self, contour_slice, hypervolume, sweep, to_degrees, DesignCandidate};
use slideocam_core::parallel::Schedule;
use slideocam_core::sensitivity::{self, Parameter, Ranking};
use slideocam_core::TransmissionSpec;

use crate::config::{Format, RunConfig};
use crate::export::{metadata, num, Artifacts};
use crate::svg::{isometric_scatter, Figure, Mark, Series, PALETTE};
use crate::{CliError, Command, Outcome};

pub fn execute(command: Command, config: &RunConfig) -> Result<Outcome, CliError> {
    let mut out = Artifacts::new(&config.output.directory)?;
    let summary = match command {
        Command::Profile => profile(config, &mut out)?,
        Command::Metrics => metrics(config, &mut out)?,
        Command::Sensitivity => sensitivity_cmd(config, &mut out)?,
        Command::Pareto => pareto(config, &mut out)?,
        Command::Contour => contour(config, &mut out)?,
    };
    Ok(Outcome {
        summary,
        written: out.written,
    })
}

/// A feasible spec, or exit 2 with the report.
fn feasible_spec(config: &RunConfig) -> Result<(TransmissionSpec, FeasibilityReport), CliError> {
    let spec = config.spec()?;
    let report = feasibility_check(&spec);
    if report.is_feasible() {
        Ok((spec, report))
    } else {
        Err(CliError::Infeasible(format!("geometry is not feasible\n{report}")))
    }
}

fn pair<'a>(materials: &'a (Material, Material)) -> ContactPair<'a> {
    ContactPair {
        cam: &materials.0,
        roller: &materials.1,
    }
}

fn spec_json(spec: &TransmissionSpec) -> serde_json::Value {
    json!({
        "spec": spec,
        "eccentricity": spec.eccentricity(),
        "camshaft_diameter": spec.camshaft_diameter(),
    })
}

fn profile(config: &RunConfig, out: &mut Artifacts) -> Result<String, CliError> {
    let (spec, report) = feasible_spec(config)?;
    let profile = geometry::sample_profile(&spec, config.profile.resolution)?;
    let driving = geometry::driving_range(&spec, profile.delta);

    if config.output.wants(Format::Csv) {
        let rows: Vec<Vec<String>> = profile
            .samples
            .iter()
            .map(|s| {
                [s.psi, s.u_c, s.v_c, s.u_p, s.v_p, s.kappa_p, s.rho_c]
                    .map(num)
                    .to_vec()
            })
            .collect();
        out.csv(
            "profile.csv",
            &[
                "psi [rad]",
                "u_c [mm]",
                "v_c [mm]",
                "u_p [mm]",
                "v_p [mm]",
                "kappa_p [1/mm]",
                "rho_c [mm]",
            ],
            &rows,
        )?;
    }
    if config.output.wants(Format::Json) {
        let results = json!({
            "transmission": spec_json(&spec),
            "delta": profile.delta,
            "profile_range": geometry::profile_range(profile.delta),
            "driving_range": driving,
            "feasibility": report,
            "samples": profile.samples.len(),
        });
        out.json("profile.json", &metadata("profile", config, results)?)?;
    }
    if config.output.wants(Format::Svg) {
        let contour: Vec<[f64; 2]> = profile.samples.iter().map(|s| [s.u_c, s.v_c]).collect();
        let pitch: Vec<[f64; 2]> = profile.samples.iter().map(|s| [s.u_p, s.v_p]).collect();
        let rollers: Vec<([f64; 2], f64)> = driving
            .linspace(7)
            .map(|psi| {
                let c = geometry::pitch_curve_point(psi, &spec);
                ([c.u, c.v], spec.roller_radius)
            })
            .collect();
        let mut fig = Figure::new(
            format!(
                "Cam profile (p = {} mm, eta = {}, r = {} mm)",
                spec.pitch, spec.eta, spec.roller_radius
            ),
            "u [mm]",
            "v [mm]",
        )
        .with(Series::new("cam profile", PALETTE[0], Mark::Line(contour)))
        .with(Series::new("pitch curve", PALETTE[1], Mark::Line(pitch)).dashed(true))
        .with(Series::new("roller", PALETTE[2], Mark::Circles(rollers)));
        fig.equal_aspect = true;
        out.svg("profile.svg", &fig.render())?;
    }

    let mut s = String::new();
    let _ = writeln!(s, "delta = {} rad", profile.delta);
    let _ = writeln!(s, "driving range = [{}, {}] rad", driving.start, driving.end);
    let _ = write!(s, "{report}");
    Ok(s)
}

fn metrics(config: &RunConfig, out: &mut Artifacts) -> Result<String, CliError> {
    let spec = config.spec()?;
    if spec.cams < 2 {
        return Err(slideocam_core::CamError::InfeasibleCamCount { cams: spec.cams }.into());
    }
    let (spec, report) = feasible_spec(config)?;
    let materials = config.material_pair()?;
    let perf = mechanics::evaluate_performance(&spec, &config.load, pair(&materials), mechanics::SEGMENT_SCAN_POINTS)?;
    let allowable = materials.0.pressure_limit().min(materials.1.pressure_limit());
    let allowable_ok = perf.hertz_pressure.value <= allowable;
    let speed_ok =
        !config.load.is_high_speed() || perf.pressure_angle.value <= mechanics::HIGH_SPEED_MAX_PRESSURE_ANGLE;

    if config.output.wants(Format::Csv) {
        let header = [
            "pitch [mm]",
            "eta [-]",
            "roller_radius [mm]",
            "camshaft_diameter [mm]",
            "lobes [-]",
            "cams [-]",
            "width [mm]",
            "delta [rad]",
            "mu_max [rad]",
            "mu_max_psi [rad]",
            "p_max [MPa]",
            "p_max_psi [rad]",
            "size [mm]",
            "feasible [-]",
            "fully_convex [-]",
            "allowable_pressure [MPa]",
            "allowable_ok [-]",
        ];
        let row = vec![
            num(spec.pitch),
            num(spec.eta),
            num(spec.roller_radius),
            num(spec.camshaft_diameter()),
            spec.lobes.to_string(),
            spec.cams.to_string(),
            num(spec.width),
            num(perf.delta),
            num(perf.pressure_angle.value),
            num(perf.pressure_angle.psi),
            num(perf.hertz_pressure.value),
            num(perf.hertz_pressure.psi),
            num(perf.size),
            report.is_feasible().to_string(),
            report.fully_convex.to_string(),
            num(allowable),
            allowable_ok.to_string(),
        ];
        out.csv("metrics.csv", &header, &[row])?;
    }
    if config.output.wants(Format::Json) {
        let results = json!({
            "transmission": spec_json(&spec),
            "performance": perf,
            "feasibility": report,
            "materials": { "cam": materials.0, "roller": materials.1 },
            "allowable_pressure": allowable,
            "allowable_ok": allowable_ok,
            "high_speed_pressure_angle_ok": speed_ok,
        });
        out.json("metrics.json", &metadata("metrics", config, results)?)?;
    }

    let mut s = String::new();
    let _ = writeln!(
        s,
        "mu_max = {:.4} deg at psi = {:.6} rad",
        to_degrees(perf.pressure_angle.value),
        perf.pressure_angle.psi
    );
    let _ = writeln!(
        s,
        "P_max = {:.3} MPa at psi = {:.6} rad",
        perf.hertz_pressure.value, perf.hertz_pressure.psi
    );
    let _ = writeln!(s, "S_M = {} mm", perf.size);
    let _ = writeln!(
        s,
        "feasible = {}, fully_convex = {}",
        report.is_feasible(),
        report.fully_convex
    );
    let _ = writeln!(
        s,
        "allowable pressure {} MPa ({} / {}): {}",
        allowable,
        materials.0.name,
        materials.1.name,
        if allowable_ok { "ok" } else { "exceeded" }
    );
    if !speed_ok {
        let _ = writeln!(s, "warning: mu_max exceeds 30 deg at high speed");
    }
    Ok(s)
}

fn ranking_rows(table: &str, ranking: &Ranking) -> Vec<Vec<String>> {
    let importance = ranking.importance();
    Parameter::ALL
        .iter()
        .map(|p| {
            vec![
                table.to_string(),
                p.symbol().to_string(),
                num(ranking.value(*p)),
                importance[*p as usize].to_string(),
            ]
        })
        .collect()
}

fn sensitivity_cmd(config: &RunConfig, out: &mut Artifacts) -> Result<String, CliError> {
    let (spec, _) = feasible_spec(config)?;
    let materials = config.material_pair()?;
    let contact = pair(&materials);
    let load = config.load;
    let delta = geometry::extended_angle(&spec)?;
    let segment = mechanics::active_segment(&spec, delta)?;
    let points = sensitivity::sensitivity_profile(&spec, &load, contact, config.sensitivity.samples)?;
    let at_max = sensitivity::rank_at_max(&spec, &load, contact)?;
    let rms =
        sensitivity::rank_rms_with_nodes(&spec, &load, contact, config.sensitivity.rms_nodes, Schedule::default())?;
    let peak = sensitivity::peak_angle(&spec)?;

    if config.output.wants(Format::Csv) {
        let rows: Vec<Vec<String>> = points
            .iter()
            .map(|p| {
                let mut row = vec![num(p.psi), num(p.pressure)];
                row.extend(p.normalized.iter().map(|v| num(*v)));
                row.push(num(p.torque));
                row
            })
            .collect();
        out.csv(
            "sensitivity.csv",
            &[
                "psi [rad]",
                "P [MPa]",
                "dP/dr*r [MPa]",
                "dP/deta*eta [MPa]",
                "dP/dp*p [MPa]",
                "dP/dL*L [MPa]",
                "dP/dC_t*C_t [MPa]",
            ],
            &rows,
        )?;
        let mut table = ranking_rows("at_max", &at_max);
        table.extend(ranking_rows("rms", &rms));
        out.csv(
            "sensitivity_rankings.csv",
            &["table", "parameter", "value [MPa]", "importance [-]"],
            &table,
        )?;
    }
    if config.output.wants(Format::Json) {
        let results = json!({
            "transmission": spec_json(&spec),
            "delta": delta,
            "segment": segment,
            "peak_angle": peak,
            "at_max": at_max,
            "rms": rms,
            "rms_nodes": config.sensitivity.rms_nodes.max(sensitivity::MIN_RMS_NODES) | 1,
            "samples": points.len(),
        });
        out.json("sensitivity.json", &metadata("sensitivity", config, results)?)?;
    }
    if config.output.wants(Format::Svg) {
        let mut fig = Figure::new(
            "Normalised sensitivity of the Hertz pressure",
            "psi [rad]",
            "dP/dq * q [MPa]",
        );
        for (i, p) in Parameter::ALL.iter().enumerate() {
            let line = points.iter().map(|pt| [pt.psi, pt.normalized[i]]).collect();
            fig = fig.with(Series::new(p.symbol(), PALETTE[i], Mark::Line(line)));
        }
        fig.markers = vec![
            (segment.start, "pi/n - Delta".into()),
            (segment.end, "2pi/n - Delta".into()),
        ];
        out.svg("sensitivity.svg", &fig.render())?;
    }

    let mut s = String::new();
    for (name, ranking) in [("at max", &at_max), ("rms", &rms)] {
        let order: Vec<&str> = ranking.order.iter().map(|p| p.symbol()).collect();
        let values: Vec<String> = Parameter::ALL
            .iter()
            .map(|p| format!("{}={:.2}", p.symbol(), ranking.value(*p)))
            .collect();
        let _ = writeln!(s, "{name:>6}: {}  (order {})", values.join(" "), order.join(", "));
    }
    Ok(s)
}

fn candidate_rows(front: &[DesignCandidate]) -> Vec<Vec<String>> {
    front
        .iter()
        .map(|c| {
            let o = c.objectives;
            let peaks = c.peak_angles;
            let violations: Vec<&str> = c.violations.iter().map(|v| v.label()).collect();
            vec![
                c.x.cams.to_string(),
                num(c.x.camshaft_diameter),
                num(c.x.roller_radius),
                num(c.x.width),
                num(c.eta),
                o.map_or(String::new(), |o| num(o.pressure_angle)),
                o.map_or(String::new(), |o| num(o.pressure)),
                o.map_or(String::new(), |o| num(o.size)),
                peaks.map_or(String::new(), |p| num(p.0)),
                peaks.map_or(String::new(), |p| num(p.1)),
                c.is_feasible().to_string(),
                c.convex_profile.to_string(),
                violations.join(";"),
            ]
        })
        .collect()
}

const CANDIDATE_HEADER: [&str; 13] = [
    "cams [-]",
    "camshaft_diameter [mm]",
    "roller_radius [mm]",
    "width [mm]",
    "eta [-]",
    "mu_max [rad]",
    "p_max [MPa]",
    "size [mm]",
    "mu_max_psi [rad]",
    "p_max_psi [rad]",
    "feasible [-]",
    "convex_profile [-]",
    "violations",
];

fn pareto(config: &RunConfig, out: &mut Artifacts) -> Result<String, CliError> {
    let space = config.design_space()?;
    let result = sweep(&space)?;
    let feasible = result.candidates.iter().filter(|c| c.is_feasible()).count();
    let points = |front: &[DesignCandidate]| -> Vec<[f64; 3]> {
        front
            .iter()
            .filter_map(|c| c.objectives)
            .map(|o| o.as_array())
            .collect()
    };
    let volume = hypervolume(&points(&result.front), space.caps.reference_point());

    if config.output.wants(Format::Csv) {
        out.csv("pareto_front.csv", &CANDIDATE_HEADER, &candidate_rows(&result.front))?;
        for (m, front) in &result.per_cams {
            out.csv(
                &format!("pareto_front_m{m}.csv"),
                &CANDIDATE_HEADER,
                &candidate_rows(front),
            )?;
        }
    }
    if config.output.wants(Format::Json) {
        let per_cams: Vec<_> = result
            .per_cams
            .iter()
            .map(|(m, front)| {
                json!({
                    "cams": m,
                    "hypervolume": hypervolume(&points(front), space.caps.reference_point()),
                    "front": front,
                })
            })
            .collect();
        let results = json!({
            "design_space": space,
            "evaluated": result.candidates.len(),
            "feasible": feasible,
            "hypervolume_reference": space.caps.reference_point(),
            "hypervolume": volume,
            "front": result.front,
            "per_cams": per_cams,
        });
        out.json("pareto.json", &metadata("pareto", config, results)?)?;
    }
    if config.output.wants(Format::Svg) {
        let projections: [(&str, &str, &str, usize, usize); 3] = [
            ("pareto_mu_size.svg", "mu_max [deg]", "S_M [mm]", 0, 2),
            ("pareto_pressure_mu.svg", "mu_max [deg]", "P_max [MPa]", 0, 1),
            ("pareto_pressure_size.svg", "S_M [mm]", "P_max [MPa]", 2, 1),
        ];
        let shown = |o: [f64; 3]| [to_degrees(o[0]), o[1], o[2]];
        for (name, x_label, y_label, xi, yi) in projections {
            let mut fig = Figure::new(format!("Pareto front: {y_label} vs {x_label}"), x_label, y_label);
            for (k, (m, front)) in result.per_cams.iter().enumerate() {
                let pts = points(front).into_iter().map(shown).map(|o| [o[xi], o[yi]]).collect();
                fig = fig.with(Series::new(
                    format!("m = {m}"),
                    PALETTE[k % PALETTE.len()],
                    Mark::Points(pts),
                ));
            }
            out.svg(name, &fig.render())?;
        }
        let groups: Vec<(String, &'static str, Vec<[f64; 3]>)> = result
            .per_cams
            .iter()
            .enumerate()
            .map(|(k, (m, front))| {
                (
                    format!("m = {m}"),
                    PALETTE[k % PALETTE.len()],
                    points(front).into_iter().map(shown).collect(),
                )
            })
            .collect();
        out.svg(
            "pareto_3d.svg",
            &isometric_scatter("Pareto fronts", ["mu_max [deg]", "P_max [MPa]", "S_M [mm]"], &groups),
        )?;
    }

    let mut s = String::new();
    let _ = writeln!(
        s,
        "evaluated {} candidates, {} feasible",
        result.candidates.len(),
        feasible
    );
    for (m, front) in &result.per_cams {
        let _ = writeln!(s, "m = {m}: {} front members", front.len());
    }
    let _ = writeln!(
        s,
        "merged front: {} members, hypervolume {}",
        result.front.len(),
        volume
    );
    Ok(s)
}

fn contour(config: &RunConfig, out: &mut Artifacts) -> Result<String, CliError> {
    let space = config.design_space()?;
    let request = config.contour_request();
    let slice = contour_slice(&request, &space)?;

    if config.output.wants(Format::Csv) {
        let mut rows = Vec::new();
        for (i, d) in slice.camshaft_diameters.iter().enumerate() {
            for (j, r) in slice.roller_radii.iter().enumerate() {
                rows.push(vec![
                    num(*d),
                    num(*r),
                    num((r + d / 2.0) / space.pitch),
                    num(slice.pressure_angle[i][j]),
                    num(slice.pressure[i][j]),
                    slice.feasible[i][j].to_string(),
                ]);
            }
        }
        out.csv(
            "contour_grid.csv",
            &[
                "camshaft_diameter [mm]",
                "roller_radius [mm]",
                "eta [-]",
                "mu_max [rad]",
                "p_max [MPa]",
                "feasible [-]",
            ],
            &rows,
        )?;
        let locus: Vec<Vec<String>> = slice
            .locus
            .iter()
            .map(|p| {
                [p.camshaft_diameter, p.roller_radius, p.pressure_angle, p.pressure]
                    .map(num)
                    .to_vec()
            })
            .collect();
        out.csv(
            "contour_locus.csv",
            &[
                "camshaft_diameter [mm]",
                "roller_radius [mm]",
                "mu_max [rad]",
                "p_max [MPa]",
            ],
            &locus,
        )?;
    }
    if config.output.wants(Format::Json) {
        let results = json!({
            "design_space": space,
            "cams": slice.cams,
            "size": slice.size,
            "width": slice.width,
            "pressure_angle_isolines": slice.pressure_angle_isolines,
            "pressure_isolines": slice.pressure_isolines,
            "locus": slice.locus,
        });
        out.json("contour.json", &metadata("contour", config, results)?)?;
    }
    if config.output.wants(Format::Svg) {
        out.svg(
            "contour.svg",
            &contour_figure(&slice, config.output.swap_line_styles).render(),
        )?;
    }

    let mut s = String::new();
    let _ = writeln!(
        s,
        "m = {}, S_M = {} mm (L = {} mm), {}x{} grid",
        slice.cams,
        slice.size,
        slice.width,
        slice.camshaft_diameters.len(),
        slice.roller_radii.len()
    );
    let _ = writeln!(s, "optimal locus: {} grid points", slice.locus.len());
    Ok(s)
}

/// Solid `mu_max` and dashed `P_max` iso-lines (or the reverse) plus the locus.
fn contour_figure(slice: &optimizer::ContourSlice, swap_styles: bool) -> Figure {
    let mut fig = Figure::new(
        format!("mu_max and P_max contours, m = {}, S_M = {} mm", slice.cams, slice.size),
        "d_cs [mm]",
        "r [mm]",
    );
    for (k, line) in slice.pressure_angle_isolines.iter().enumerate() {
        let label = if k == 0 {
            "mu_max iso-lines".to_string()
        } else {
            String::new()
        };
        fig = fig.with(Series::new(label, PALETTE[0], Mark::Segments(line.segments.clone())).dashed(swap_styles));
    }
    for (k, line) in slice.pressure_isolines.iter().enumerate() {
        let label = if k == 0 {
            "P_max iso-lines".to_string()
        } else {
            String::new()
        };
        fig = fig.with(Series::new(label, PALETTE[1], Mark::Segments(line.segments.clone())).dashed(!swap_styles));
    }
    let locus = slice
        .locus
        .iter()
        .map(|p| [p.camshaft_diameter, p.roller_radius])
        .collect();
    fig.with(Series::new("optimal locus", PALETTE[2], Mark::Points(locus)))
}
