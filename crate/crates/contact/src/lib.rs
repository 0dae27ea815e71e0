//! Compliant contact-force laws shared by every terrain tier.
//!
//! Two families of laws live here:
//!
//! * a penalty spring-damper normal force paired with a tangential
//!   shear-spring whose proposed force is projected onto the Coulomb
//!   cone (`‖f_T‖ ≤ μ f_N`), carrying a per-contact shear state that
//!   accumulates in stick and decays in slip;
//! * a smoothed spring-damper variant where the normal force ramps in
//!   over a smoothing width and friction blends between static and
//!   dynamic coefficients with slip speed.
//!
//! All functions are pure; callers own the per-contact state and thread
//! it through the step.

mod frame;
mod penalty;
mod smoothed;

pub use frame::{build_contact_frame, ContactFrame};
pub use penalty::{
    assemble_world_force, contact_power, normal_force_penalty, resolve_contact,
    tangential_force, update_shear_state, ContactResult, ContactState, PenaltyMaterial, Regime,
    SlipShear,
};
pub use smoothed::{
    mu_effective, normal_force_smoothed, smoothed_elastic_energy, smoothed_tangential_force,
    smoothstep, SmoothedContactParams,
};

use thiserror::Error;

/// Errors raised by contact-law construction and evaluation.
#[derive(Debug, Error, Clone, PartialEq)]
pub enum ContactError {
    /// A direction vector was too short to normalize.
    #[error("degenerate input: {0}")]
    DegenerateInput(String),
    /// A material or solver parameter violates its admissible range.
    #[error("invalid parameter: {0}")]
    InvalidParameter(String),
}
