use thiserror::Error;

/// Failures raised by the synthesis and evaluation routines.
///
/// Infeasible designs are usually reported as data (see
/// [`FeasibilityReport`](crate::geometry::FeasibilityReport) and
/// [`DesignCandidate`](crate::optimizer::DesignCandidate)); these errors are
/// reserved for inputs where a quantity is mathematically undefined.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum CamError {
    #[error("invalid transmission parameters: {0}")]
    InvalidSpec(String),

    #[error("eta = {eta} is too close to 1/(2*pi); the profile coefficients are singular")]
    EtaSingular { eta: f64 },

    #[error("the roller blocks the cam (1 - r*kappa_p = {margin:e})")]
    RollerBlocksCam { margin: f64 },

    #[error("no negative root of the profile ordinate found in [-pi, 0)")]
    NoRootFound,

    #[error("a Slide-o-Cam needs at least two conjugate cams, got m = {cams}")]
    InfeasibleCamCount { cams: u32 },

    #[error("pressure angle is singular at psi = {psi} (n*psi = pi)")]
    PressureAngleSingular { psi: f64 },

    #[error("contact force diverges at psi = {psi} (|mu| -> 90 deg)")]
    ForceSingular { psi: f64 },

    #[error("degenerate contact: rho_c = {rho_c} <= -r = {neg_roller}")]
    DegenerateContact { rho_c: f64, neg_roller: f64 },

    #[error("cam profile is not feasible on the active segment (rho_c = {rho_c} at psi = {psi})")]
    InfeasibleProfile { psi: f64, rho_c: f64 },

    #[error("perturbing {parameter} leaves the feasible region: {source}")]
    PerturbationInfeasible {
        parameter: &'static str,
        #[source]
        source: Box<CamError>,
    },

    #[error("{what} must be at least {min}, got {got}")]
    TooFewSamples { what: &'static str, min: usize, got: usize },

    #[error("invalid design space: {0}")]
    InvalidDesignSpace(String),

    #[error("material catalog error: {0}")]
    Catalog(String),
}

pub type Result<T, E = CamError> = std::result::Result<T, E>;
