use nalgebra::{Vector2, Vector3};

use crate::{ContactError, ContactFrame};

/// Shear-state handling while a contact slips (or is separated).
///
/// Decay relaxes the stored tangential displacement at rate `alpha`;
/// freeze leaves it untouched during slip but still decays it when the
/// contact separates.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum SlipShear {
    #[default]
    Decay,
    Freeze,
}

/// Penalty contact material: normal/tangential spring-damper gains,
/// Coulomb friction coefficient, and the regularizers of the law.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PenaltyMaterial {
    /// Normal stiffness (N/m).
    pub k_n: f64,
    /// Normal damping (N·s/m).
    pub d_n: f64,
    /// Tangential stiffness (N/m).
    pub k_t: f64,
    /// Tangential damping (N·s/m).
    pub d_t: f64,
    /// Coulomb friction coefficient.
    pub mu: f64,
    /// Slip-velocity regularizer (m/s).
    pub eps_v: f64,
    /// Shear decay rate during slip / separation (1/s).
    pub alpha: f64,
    /// Shear handling in the slip regime.
    pub slip_shear: SlipShear,
}

impl PenaltyMaterial {
    pub fn new(
        k_n: f64,
        d_n: f64,
        k_t: f64,
        d_t: f64,
        mu: f64,
        eps_v: f64,
        alpha: f64,
    ) -> Result<Self, ContactError> {
        let m = Self {
            k_n,
            d_n,
            k_t,
            d_t,
            mu,
            eps_v,
            alpha,
            slip_shear: SlipShear::Decay,
        };
        m.validate()?;
        Ok(m)
    }

    fn validate(&self) -> Result<(), ContactError> {
        for (name, v) in [
            ("k_n", self.k_n),
            ("d_n", self.d_n),
            ("k_t", self.k_t),
            ("d_t", self.d_t),
            ("mu", self.mu),
            ("alpha", self.alpha),
        ] {
            if !v.is_finite() || v < 0.0 {
                return Err(ContactError::InvalidParameter(format!(
                    "{name} must be finite and non-negative, got {v}"
                )));
            }
        }
        if self.mu > 2.0 {
            return Err(ContactError::InvalidParameter(format!(
                "mu must be <= 2, got {}",
                self.mu
            )));
        }
        if !(self.eps_v > 0.0) {
            return Err(ContactError::InvalidParameter(format!(
                "eps_v must be > 0, got {}",
                self.eps_v
            )));
        }
        Ok(())
    }

    /// Check that the shear decay does not overshoot at step size `h`.
    pub fn validate_step(&self, h: f64) -> Result<(), ContactError> {
        if h * self.alpha >= 1.0 {
            return Err(ContactError::InvalidParameter(format!(
                "h*alpha = {} >= 1: shear decay would overshoot",
                h * self.alpha
            )));
        }
        Ok(())
    }
}

impl Default for PenaltyMaterial {
    /// Stiff desk-scale defaults; `alpha` halves the shear state in ~7 ms
    /// so a slipping contact forgets its spring elongation well inside a
    /// gait cycle.
    fn default() -> Self {
        Self {
            k_n: 1e4,
            d_n: 1e3,
            k_t: 1e4,
            d_t: 1e2,
            mu: 0.5,
            eps_v: 1e-4,
            alpha: 100.0,
            slip_shear: SlipShear::Decay,
        }
    }
}

/// Kinematic state of one contact point: signed gap, penetration and its
/// rate, tangential shear-spring elongation, activation flag.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ContactState {
    /// Signed distance to the terrain surface (m); negative inside.
    pub gap: f64,
    /// Penetration depth `δ_N = max(0, -gap)` (m).
    pub penetration: f64,
    /// Penetration rate `δ̇_N` (m/s); positive while compressing.
    pub penetration_rate: f64,
    /// Tangential shear-spring elongation in the tangent plane (m).
    pub shear: Vector2<f64>,
    /// True iff the contact is penetrating.
    pub active: bool,
}

impl ContactState {
    pub fn from_gap(gap: f64, gap_rate: f64, shear: Vector2<f64>) -> Self {
        let penetration = (-gap).max(0.0);
        Self {
            gap,
            penetration,
            penetration_rate: -gap_rate,
            shear,
            active: penetration > 0.0,
        }
    }

    pub fn separated() -> Self {
        Self::from_gap(f64::INFINITY, 0.0, Vector2::zeros())
    }
}

/// Which branch of the friction law produced the tangential force.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Regime {
    Separated,
    Stick,
    Slip,
}

/// Fully resolved contact: scalar normal force, tangent-plane friction
/// force, world re-assembly, regime and transferred power.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ContactResult {
    pub f_normal: f64,
    pub f_tangent: Vector2<f64>,
    pub world_force: Vector3<f64>,
    pub regime: Regime,
    pub power: f64,
}

impl ContactResult {
    pub fn separated() -> Self {
        Self {
            f_normal: 0.0,
            f_tangent: Vector2::zeros(),
            world_force: Vector3::zeros(),
            regime: Regime::Separated,
            power: 0.0,
        }
    }
}

/// Penalty normal force `max(0, k_n δ_N + d_n δ̇_N)` during compression.
///
/// The clamp keeps damping from producing adhesion while the contact
/// unloads; a separated contact carries no force.
pub fn normal_force_penalty(state: &ContactState, mat: &PenaltyMaterial) -> f64 {
    if state.penetration <= 0.0 {
        return 0.0;
    }
    (mat.k_n * state.penetration + mat.d_n * state.penetration_rate).max(0.0)
}

/// Tangential shear-spring force with Coulomb projection.
///
/// The proposed force `-k_t σ - d_t u_T` is returned unchanged while it
/// fits inside the cone `‖f‖ ≤ μ f_N`; otherwise the force saturates at
/// the cone boundary, directed against the slip velocity with the
/// `eps_v` regularizer guarding the zero-slip limit.
pub fn tangential_force(
    state: &ContactState,
    u_t: &Vector2<f64>,
    f_n: f64,
    mat: &PenaltyMaterial,
) -> (Vector2<f64>, Regime) {
    let proposed = -mat.k_t * state.shear - mat.d_t * u_t;
    let cap = mat.mu * f_n.max(0.0);
    if proposed.norm() <= cap {
        (proposed, Regime::Stick)
    } else {
        let speed = u_t.norm().max(mat.eps_v);
        (-(cap / speed) * u_t, Regime::Slip)
    }
}

/// Advance the shear-spring state over one step.
///
/// Stick accumulates tangential displacement; slip and separation decay
/// the state at rate `alpha` (or hold it, when the material freezes
/// shear during slip). Fails if `h*alpha >= 1`.
pub fn update_shear_state(
    state: &ContactState,
    u_t: &Vector2<f64>,
    regime: Regime,
    h: f64,
    mat: &PenaltyMaterial,
) -> Result<Vector2<f64>, ContactError> {
    mat.validate_step(h)?;
    let decay = 1.0 - h * mat.alpha;
    Ok(match regime {
        Regime::Stick if state.active => state.shear + h * u_t,
        Regime::Slip if state.active => match mat.slip_shear {
            SlipShear::Decay => decay * state.shear,
            SlipShear::Freeze => state.shear,
        },
        _ => decay * state.shear,
    })
}

/// Reassemble normal and tangential components into the world frame:
/// `f = n̂ f_N + t̂₁ f_T₁ + t̂₂ f_T₂`.
pub fn assemble_world_force(
    frame: &ContactFrame,
    f_n: f64,
    f_t: &Vector2<f64>,
) -> Vector3<f64> {
    frame.normal() * f_n + frame.tangent1() * f_t.x + frame.tangent2() * f_t.y
}

/// Power transferred through the contact, `f_N u_N + f_Tᵀ u_T` (W).
/// Diagnostics only; a passive law keeps the dissipative part ≤ 0.
pub fn contact_power(result: &ContactResult, u_n: f64, u_t: &Vector2<f64>) -> f64 {
    result.f_normal * u_n + result.f_tangent.dot(u_t)
}

/// Evaluate the complete penalty law for one contact at known kinematics.
pub fn resolve_contact(
    state: &ContactState,
    frame: &ContactFrame,
    u_n: f64,
    u_t: &Vector2<f64>,
    mat: &PenaltyMaterial,
) -> ContactResult {
    if !state.active {
        return ContactResult::separated();
    }
    let f_n = normal_force_penalty(state, mat);
    let (f_t, regime) = tangential_force(state, u_t, f_n, mat);
    let world_force = assemble_world_force(frame, f_n, &f_t);
    let mut result = ContactResult {
        f_normal: f_n,
        f_tangent: f_t,
        world_force,
        regime,
        power: 0.0,
    };
    result.power = contact_power(&result, u_n, u_t);
    result
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::build_contact_frame;
    use approx::{assert_abs_diff_eq, assert_relative_eq};

    fn mat(k_n: f64, d_n: f64, k_t: f64, d_t: f64, mu: f64) -> PenaltyMaterial {
        PenaltyMaterial::new(k_n, d_n, k_t, d_t, mu, 1e-4, 100.0).unwrap()
    }

    #[test]
    fn no_contact_means_no_normal_force() {
        let m = mat(1e4, 1e3, 0.0, 0.0, 0.5);
        let s = ContactState::from_gap(0.0, -0.3, Vector2::zeros());
        assert_eq!(normal_force_penalty(&s, &m), 0.0);
    }

    #[test]
    fn spring_only_normal_force() {
        let m = mat(1e4, 0.0, 0.0, 0.0, 0.5);
        let s = ContactState::from_gap(-0.001, 0.0, Vector2::zeros());
        assert_abs_diff_eq!(normal_force_penalty(&s, &m), 10.0, epsilon = 1e-12);
    }

    #[test]
    fn damping_never_produces_adhesion() {
        let m = mat(1e4, 1e3, 0.0, 0.0, 0.5);
        // separating at 0.02 m/s: k*δ + d*δ̇ = 10 - 20 < 0, clamped
        let s = ContactState::from_gap(-0.001, 0.02, Vector2::zeros());
        assert_eq!(s.penetration_rate, -0.02);
        assert_eq!(normal_force_penalty(&s, &m), 0.0);
    }

    #[test]
    fn rest_contact_sticks_with_zero_force() {
        let m = mat(1e4, 0.0, 100.0, 0.0, 0.5);
        let s = ContactState::from_gap(-1e-4, 0.0, Vector2::zeros());
        let (f, regime) = tangential_force(&s, &Vector2::zeros(), 10.0, &m);
        assert_eq!(f, Vector2::zeros());
        assert_eq!(regime, Regime::Stick);
    }

    #[test]
    fn proposal_inside_cone_sticks() {
        let m = mat(1e4, 0.0, 100.0, 0.0, 0.5);
        let s = ContactState::from_gap(-1e-4, 0.0, Vector2::new(0.01, 0.0));
        let (f, regime) = tangential_force(&s, &Vector2::zeros(), 10.0, &m);
        assert_abs_diff_eq!(f, Vector2::new(-1.0, 0.0), epsilon = 1e-12);
        assert_eq!(regime, Regime::Stick);
    }

    #[test]
    fn proposal_outside_cone_projects_onto_boundary() {
        let m = mat(1e4, 0.0, 100.0, 0.0, 0.5);
        let s = ContactState::from_gap(-1e-4, 0.0, Vector2::new(0.1, 0.0));
        let u_t = Vector2::new(0.02, 0.0);
        let (f, regime) = tangential_force(&s, &u_t, 10.0, &m);
        assert_abs_diff_eq!(f, Vector2::new(-5.0, 0.0), epsilon = 1e-12);
        assert_eq!(regime, Regime::Slip);
    }

    #[test]
    fn shear_accumulates_in_stick() {
        let m = mat(1e4, 0.0, 100.0, 0.0, 0.5);
        let s = ContactState::from_gap(-1e-4, 0.0, Vector2::zeros());
        let sigma = update_shear_state(&s, &Vector2::new(0.1, 0.0), Regime::Stick, 1e-3, &m)
            .unwrap();
        assert_abs_diff_eq!(sigma, Vector2::new(1e-4, 0.0), epsilon = 1e-15);
    }

    #[test]
    fn shear_decays_in_slip() {
        let m = mat(1e4, 0.0, 100.0, 0.0, 0.5);
        let s = ContactState::from_gap(-1e-4, 0.0, Vector2::new(0.1, 0.0));
        let sigma =
            update_shear_state(&s, &Vector2::new(1.0, 0.0), Regime::Slip, 1e-3, &m).unwrap();
        assert_abs_diff_eq!(sigma, Vector2::new(0.09, 0.0), epsilon = 1e-15);
    }

    #[test]
    fn zero_shear_is_decay_fixed_point() {
        let m = mat(1e4, 0.0, 100.0, 0.0, 0.5);
        let s = ContactState::separated();
        let sigma =
            update_shear_state(&s, &Vector2::zeros(), Regime::Separated, 1e-3, &m).unwrap();
        assert_eq!(sigma, Vector2::zeros());
    }

    #[test]
    fn overshooting_decay_is_rejected() {
        let m = mat(1e4, 0.0, 100.0, 0.0, 0.5);
        let s = ContactState::separated();
        assert!(update_shear_state(&s, &Vector2::zeros(), Regime::Separated, 0.02, &m).is_err());
    }

    #[test]
    fn frozen_shear_survives_slip() {
        let mut m = mat(1e4, 0.0, 100.0, 0.0, 0.5);
        m.slip_shear = SlipShear::Freeze;
        let s = ContactState::from_gap(-1e-4, 0.0, Vector2::new(0.1, 0.0));
        let sigma =
            update_shear_state(&s, &Vector2::new(1.0, 0.0), Regime::Slip, 1e-3, &m).unwrap();
        assert_eq!(sigma, Vector2::new(0.1, 0.0));
    }

    #[test]
    fn world_assembly_in_identity_frame() {
        let frame = build_contact_frame(nalgebra::Vector3::z()).unwrap();
        let f = assemble_world_force(&frame, 10.0, &Vector2::zeros());
        assert_abs_diff_eq!(f, nalgebra::Vector3::new(0.0, 0.0, 10.0), epsilon = 1e-12);
    }

    #[test]
    fn world_assembly_preserves_magnitude() {
        let frame = build_contact_frame(nalgebra::Vector3::new(0.3, -0.5, 0.8)).unwrap();
        let f = assemble_world_force(&frame, 3.0, &Vector2::new(4.0, 0.0));
        assert_relative_eq!(f.norm(), 5.0, max_relative = 1e-9);
    }

    #[test]
    fn zero_forces_assemble_to_zero() {
        let frame = build_contact_frame(nalgebra::Vector3::z()).unwrap();
        let f = assemble_world_force(&frame, 0.0, &Vector2::zeros());
        assert_eq!(f, nalgebra::Vector3::zeros());
    }

    #[test]
    fn separated_contact_power_is_zero() {
        let r = ContactResult::separated();
        assert_eq!(contact_power(&r, 1.0, &Vector2::new(2.0, 0.0)), 0.0);
    }

    #[test]
    fn approaching_normal_power_is_negative() {
        let frame = build_contact_frame(nalgebra::Vector3::z()).unwrap();
        let r = ContactResult {
            f_normal: 10.0,
            f_tangent: Vector2::zeros(),
            world_force: assemble_world_force(&frame, 10.0, &Vector2::zeros()),
            regime: Regime::Stick,
            power: 0.0,
        };
        assert_abs_diff_eq!(
            contact_power(&r, -0.01, &Vector2::zeros()),
            -0.1,
            epsilon = 1e-12
        );
    }

    #[test]
    fn slip_tangential_power_is_dissipative() {
        let m = mat(1e4, 0.0, 100.0, 0.0, 0.5);
        let s = ContactState::from_gap(-1e-3, 0.0, Vector2::new(0.1, 0.05));
        let u_t = Vector2::new(0.02, -0.01);
        let (f_t, regime) = tangential_force(&s, &u_t, 10.0, &m);
        assert_eq!(regime, Regime::Slip);
        assert!(f_t.dot(&u_t) <= 0.0);
    }
}
