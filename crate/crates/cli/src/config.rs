//! Run configuration: one JSON document, strict keys, CLI flags on top.
//!
//! Every physical quantity is in mm, N, N·mm, MPa or rad.

use std::path::{Path, PathBuf};

use serde::{Deserialize, Serialize};
use slideocam_core::mechanics::{self, LoadCase, Material};
use slideocam_core::optimizer::{Bounds, Caps, ContourRequest, DesignSpace};
use slideocam_core::TransmissionSpec;

use crate::CliError;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize, clap::ValueEnum)]
#[serde(rename_all = "lowercase")]
pub enum Format {
    Csv,
    Json,
    Svg,
    All,
}

#[derive(Debug, Clone, Default, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields, default)]
pub struct RunConfig {
    pub transmission: TransmissionConfig,
    pub load: LoadCase,
    pub materials: MaterialsConfig,
    pub design_space: SpaceConfig,
    pub profile: ProfileConfig,
    pub sensitivity: SensitivityConfig,
    pub contour: ContourConfig,
    pub output: OutputConfig,
    /// Recorded for randomised harnesses; no command draws random numbers.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub seed: Option<u64>,
}

/// A single transmission. Give either `eta` or `camshaft_diameter`
/// (`eta = (r + d_cs / 2) / p`); with neither, `eta` defaults to 0.18.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields, default)]
pub struct TransmissionConfig {
    pub pitch: f64,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub eta: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub camshaft_diameter: Option<f64>,
    pub roller_radius: f64,
    pub lobes: u32,
    pub cams: u32,
    pub width: f64,
}

pub const DEFAULT_ETA: f64 = 0.18;

impl Default for TransmissionConfig {
    fn default() -> Self {
        Self {
            pitch: 50.0,
            eta: None,
            camshaft_diameter: None,
            roller_radius: 4.0,
            lobes: 1,
            cams: 2,
            width: 10.0,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields, default)]
pub struct MaterialsConfig {
    pub cam: String,
    pub roller: String,
    /// Extra materials; a name matching a built-in entry replaces it.
    #[serde(skip_serializing_if = "Vec::is_empty")]
    pub catalog: Vec<Material>,
}

impl Default for MaterialsConfig {
    fn default() -> Self {
        Self {
            cam: "Improved steel".into(),
            roller: "Improved steel".into(),
            catalog: Vec::new(),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields, default)]
pub struct SpaceConfig {
    pub camshaft_diameter: Bounds,
    pub roller_radius: Bounds,
    pub width_min: f64,
    pub cams: Vec<u32>,
    pub resolution: usize,
    pub pitch: f64,
    pub lobes: u32,
    pub caps: Caps,
    pub scan_points: usize,
}

impl Default for SpaceConfig {
    fn default() -> Self {
        let space = DesignSpace::default();
        Self {
            camshaft_diameter: space.camshaft_diameter,
            roller_radius: space.roller_radius,
            width_min: space.width_min,
            cams: space.cams,
            resolution: space.resolution,
            pitch: space.pitch,
            lobes: space.lobes,
            caps: space.caps,
            scan_points: space.scan_points,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields, default)]
pub struct ProfileConfig {
    pub resolution: usize,
}

impl Default for ProfileConfig {
    fn default() -> Self {
        Self {
            resolution: slideocam_core::geometry::DEFAULT_PROFILE_RESOLUTION,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields, default)]
pub struct SensitivityConfig {
    /// Points of the pointwise curves over the active segment.
    pub samples: usize,
    /// Simpson nodes for the rms ranking (odd, at least 1025).
    pub rms_nodes: usize,
}

impl Default for SensitivityConfig {
    fn default() -> Self {
        Self {
            samples: 257,
            rms_nodes: slideocam_core::sensitivity::MIN_RMS_NODES,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields, default)]
pub struct ContourConfig {
    pub cams: u32,
    /// Fixed mechanism size `S_M`, mm.
    pub size: f64,
    pub resolution: usize,
    /// rad
    pub pressure_angle_levels: Vec<f64>,
    /// MPa
    pub pressure_levels: Vec<f64>,
}

impl Default for ContourConfig {
    fn default() -> Self {
        Self {
            cams: 2,
            size: 60.0,
            resolution: 64,
            pressure_angle_levels: [5.0f64, 10.0, 15.0, 20.0, 25.0, 30.0]
                .iter()
                .map(|d| d.to_radians())
                .collect(),
            pressure_levels: vec![500.0, 550.0, 600.0, 650.0, 700.0, 750.0, 800.0],
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields, default)]
pub struct OutputConfig {
    pub directory: PathBuf,
    pub formats: Vec<Format>,
    /// Draw `P_max` iso-lines solid and `mu_max` iso-lines dashed instead of
    /// the other way round. Affects SVG only.
    pub swap_line_styles: bool,
}

impl Default for OutputConfig {
    fn default() -> Self {
        Self {
            directory: PathBuf::from("out"),
            formats: vec![Format::All],
            swap_line_styles: false,
        }
    }
}

impl OutputConfig {
    pub fn wants(&self, format: Format) -> bool {
        self.formats.iter().any(|f| *f == format || *f == Format::All)
    }
}

/// Flag values that override the file.
#[derive(Debug, Clone, Default)]
pub struct Overrides {
    pub out: Option<PathBuf>,
    pub resolution: Option<usize>,
    pub format: Option<Format>,
    pub material: Option<String>,
    pub seed: Option<u64>,
}

/// Which resolution `--resolution` refers to.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ResolutionTarget {
    Profile,
    Sensitivity,
    Sweep,
    Contour,
    None,
}

impl RunConfig {
    pub fn load(path: Option<&Path>) -> Result<Self, CliError> {
        match path {
            None => Ok(Self::default()),
            Some(path) => {
                let text = std::fs::read_to_string(path)
                    .map_err(|e| CliError::Config(format!("cannot read {}: {e}", path.display())))?;
                Self::parse(&text)
            }
        }
    }

    pub fn parse(text: &str) -> Result<Self, CliError> {
        serde_json::from_str(text).map_err(|e| CliError::Config(format!("invalid config: {e}")))
    }

    pub fn apply(&mut self, overrides: &Overrides, target: ResolutionTarget) {
        if let Some(out) = &overrides.out {
            self.output.directory = out.clone();
        }
        if let Some(format) = overrides.format {
            self.output.formats = vec![format];
        }
        if let Some(name) = &overrides.material {
            self.materials.cam = name.clone();
            self.materials.roller = name.clone();
        }
        if let Some(seed) = overrides.seed {
            self.seed = Some(seed);
        }
        if let Some(k) = overrides.resolution {
            match target {
                ResolutionTarget::Profile => self.profile.resolution = k,
                ResolutionTarget::Sensitivity => self.sensitivity.samples = k,
                ResolutionTarget::Sweep => self.design_space.resolution = k,
                ResolutionTarget::Contour => self.contour.resolution = k,
                ResolutionTarget::None => {}
            }
        }
    }

    /// Fills in defaults that depend on other keys.
    pub fn resolve(&mut self) -> Result<(), CliError> {
        let t = &mut self.transmission;
        match (t.eta, t.camshaft_diameter) {
            (Some(_), Some(_)) => {
                return Err(CliError::Config(
                    "transmission: give either eta or camshaft_diameter, not both".into(),
                ))
            }
            (None, None) => t.eta = Some(DEFAULT_ETA),
            _ => {}
        }
        Ok(())
    }

    pub fn catalog(&self) -> Result<Vec<Material>, CliError> {
        let mut catalog = mechanics::builtin_materials();
        for extra in &self.materials.catalog {
            extra.validate().map_err(|e| CliError::Config(e.to_string()))?;
            catalog.retain(|m| !m.name.eq_ignore_ascii_case(&extra.name));
            catalog.push(extra.clone());
        }
        Ok(catalog)
    }

    /// Cam and roller materials.
    pub fn material_pair(&self) -> Result<(Material, Material), CliError> {
        let catalog = self.catalog()?;
        let find = |name: &str| {
            mechanics::find_material(&catalog, name).cloned().ok_or_else(|| {
                let known: Vec<&str> = catalog.iter().map(|m| m.name.as_str()).collect();
                CliError::Config(format!("unknown material {name:?}; known: {}", known.join(", ")))
            })
        };
        Ok((find(&self.materials.cam)?, find(&self.materials.roller)?))
    }

    /// The single transmission, with basic sanity checks. Model-level
    /// failures (eta singularity, blocking, undercut) are left to the core.
    pub fn spec(&self) -> Result<TransmissionSpec, CliError> {
        let t = &self.transmission;
        for (name, value) in [
            ("pitch", t.pitch),
            ("roller_radius", t.roller_radius),
            ("width", t.width),
        ] {
            if !(value.is_finite() && value > 0.0) {
                return Err(CliError::Config(format!(
                    "transmission.{name} must be positive, got {value}"
                )));
            }
        }
        if t.lobes == 0 || t.cams == 0 {
            return Err(CliError::Config(
                "transmission: lobes and cams must be at least 1".into(),
            ));
        }
        if !(self.load.torque.is_finite() && self.load.torque > 0.0) {
            return Err(CliError::Config(format!(
                "load.torque must be positive, got {}",
                self.load.torque
            )));
        }
        let eta = match (t.eta, t.camshaft_diameter) {
            (_, Some(d)) if !d.is_finite() => {
                return Err(CliError::Config(format!("camshaft_diameter must be finite, got {d}")))
            }
            (_, Some(d)) => (t.roller_radius + d / 2.0) / t.pitch,
            (Some(eta), None) if eta.is_finite() => eta,
            (Some(eta), None) => return Err(CliError::Config(format!("eta must be finite, got {eta}"))),
            (None, None) => DEFAULT_ETA,
        };
        Ok(TransmissionSpec {
            pitch: t.pitch,
            eta,
            roller_radius: t.roller_radius,
            lobes: t.lobes,
            cams: t.cams,
            width: t.width,
        })
    }

    pub fn design_space(&self) -> Result<DesignSpace, CliError> {
        let (cam, roller) = self.material_pair()?;
        let s = &self.design_space;
        let space = DesignSpace {
            camshaft_diameter: s.camshaft_diameter,
            roller_radius: s.roller_radius,
            width_min: s.width_min,
            cams: s.cams.clone(),
            resolution: s.resolution,
            pitch: s.pitch,
            lobes: s.lobes,
            load: self.load,
            cam_material: cam,
            roller_material: roller,
            caps: s.caps,
            scan_points: s.scan_points,
            schedule: Default::default(),
        };
        space.validate().map_err(|e| CliError::Config(e.to_string()))?;
        Ok(space)
    }

    pub fn contour_request(&self) -> ContourRequest {
        ContourRequest {
            cams: self.contour.cams,
            size: self.contour.size,
            resolution: self.contour.resolution,
            pressure_angle_levels: self.contour.pressure_angle_levels.clone(),
            pressure_levels: self.contour.pressure_levels.clone(),
        }
    }
}
