use nalgebra::Vector2;

use crate::ContactError;

/// Parameters of the smoothed spring-damper contact law: stiffness,
/// damping, smoothing width, static/dynamic friction and the critical
/// slip speed of the blend between them.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SmoothedContactParams {
    /// Normal stiffness (N/m).
    pub k: f64,
    /// Normal damping (N·s/m).
    pub b: f64,
    /// Smoothing width over which contact ramps in (m).
    pub w: f64,
    /// Static friction coefficient.
    pub mu_s: f64,
    /// Dynamic friction coefficient.
    pub mu_d: f64,
    /// Critical slip speed of the static→dynamic transition (m/s).
    pub v_crit: f64,
}

impl SmoothedContactParams {
    pub fn new(
        k: f64,
        b: f64,
        w: f64,
        mu_s: f64,
        mu_d: f64,
        v_crit: f64,
    ) -> Result<Self, ContactError> {
        if !(w > 0.0) {
            return Err(ContactError::InvalidParameter(format!(
                "smoothing width must be > 0, got {w}"
            )));
        }
        if !(v_crit > 0.0) {
            return Err(ContactError::InvalidParameter(format!(
                "critical slip speed must be > 0, got {v_crit}"
            )));
        }
        if mu_d > mu_s {
            return Err(ContactError::InvalidParameter(format!(
                "mu_d ({mu_d}) must not exceed mu_s ({mu_s})"
            )));
        }
        Ok(Self {
            k,
            b,
            w,
            mu_s,
            mu_d,
            v_crit,
        })
    }

    /// Stiff non-compliant ground: k = 1e4 N/m, b = 1e3 N·s/m,
    /// w = 1e-3 m, μ_s = 0.5, μ_d = 0.3, v_crit = 1e-3 m/s.
    pub fn stiff_ground() -> Self {
        Self {
            k: 1e4,
            b: 1e3,
            w: 1e-3,
            mu_s: 0.5,
            mu_d: 0.3,
            v_crit: 1e-3,
        }
    }
}

/// Cubic smoothstep `3x² - 2x³` on `x = d/w`, clamped to [0, 1].
///
/// C¹ at both ends, so the contact force turns on with zero slope
/// instead of jumping at first touch.
pub fn smoothstep(d: f64, w: f64) -> f64 {
    let x = (d / w).clamp(0.0, 1.0);
    x * x * (3.0 - 2.0 * x)
}

/// Smoothed normal force `s(d, w) · max(0, k d + b ḋ)`.
pub fn normal_force_smoothed(d: f64, d_rate: f64, p: &SmoothedContactParams) -> f64 {
    smoothstep(d, p.w) * (p.k * d + p.b * d_rate).max(0.0)
}

/// Effective friction coefficient `μ_d + (μ_s - μ_d)·exp(-u_t/v_crit)`:
/// μ_s at rest, decaying monotonically toward μ_d with slip speed.
pub fn mu_effective(u_t: f64, p: &SmoothedContactParams) -> f64 {
    p.mu_d + (p.mu_s - p.mu_d) * (-u_t / p.v_crit).exp()
}

/// Velocity-dependent Coulomb friction `‖f_t‖ = μ_eff(u_t)·f_n` opposing
/// slip. The direction is regularized over `v_crit` so the force vanishes
/// continuously at zero slip instead of flipping sign.
pub fn smoothed_tangential_force(
    u_t: &Vector2<f64>,
    f_n: f64,
    p: &SmoothedContactParams,
) -> Vector2<f64> {
    let speed = u_t.norm();
    if speed <= 0.0 || f_n <= 0.0 {
        return Vector2::zeros();
    }
    let magnitude = mu_effective(speed, p) * f_n;
    -(magnitude / speed.max(p.v_crit)) * u_t
}

/// Elastic energy stored in the smoothed normal spring at penetration `d`,
/// `∫₀^d s(x, w)·k·x dx` evaluated in closed form.
pub fn smoothed_elastic_energy(d: f64, p: &SmoothedContactParams) -> f64 {
    if d <= 0.0 {
        return 0.0;
    }
    let w = p.w;
    // ∫ (3u² - 2u³)·u du = 3u⁴/4 - 2u⁵/5 on u = x/w, scaled by k w².
    let ramp = |u: f64| 0.75 * u.powi(4) - 0.4 * u.powi(5);
    if d <= w {
        p.k * w * w * ramp(d / w)
    } else {
        p.k * w * w * ramp(1.0) + 0.5 * p.k * (d * d - w * w)
    }
}
