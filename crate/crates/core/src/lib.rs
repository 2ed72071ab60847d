//! Synthesis and multiobjective design of Slide-o-Cam cam-roller transmissions.
//!
//! - [`geometry`]: cam profile, pitch curve, curvature, extended angle and
//!   feasibility classification.
//! - [`mechanics`]: pressure angle, contact force, Hertz line-contact pressure
//!   and mechanism size.
//! - [`sensitivity`]: first-order sensitivity of the Hertz pressure to the
//!   design parameters.
//! - [`optimizer`]: constrained grid sweeps, Pareto fronts, hypervolume and
//!   contour slices over the design space.
//!
//! Units are mm, N, N·mm, MPa and rad throughout.

pub mod error;
pub mod geometry;
pub mod mechanics;
pub mod optimizer;
pub mod parallel;
pub mod sensitivity;

pub use error::{CamError, Result};
pub use geometry::{CamProfile, FeasibilityReport, TransmissionSpec};
pub use mechanics::{LoadCase, Material};
pub use optimizer::{DesignCandidate, DesignSpace};
