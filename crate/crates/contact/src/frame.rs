use nalgebra::{Matrix3, Vector3};

use crate::ContactError;

/// Orthonormal contact triad stored as the rotation matrix `R = [n̂ t̂₁ t̂₂]`.
///
/// Column 0 is the outward terrain normal; columns 1 and 2 span the
/// tangent plane. `RᵀR = I` and `det R = +1` hold to machine precision
/// by construction.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ContactFrame {
    rotation: Matrix3<f64>,
}

impl ContactFrame {
    /// Rotation matrix with columns `[n̂ t̂₁ t̂₂]`.
    pub fn rotation(&self) -> &Matrix3<f64> {
        &self.rotation
    }

    pub fn normal(&self) -> Vector3<f64> {
        self.rotation.column(0).into()
    }

    pub fn tangent1(&self) -> Vector3<f64> {
        self.rotation.column(1).into()
    }

    pub fn tangent2(&self) -> Vector3<f64> {
        self.rotation.column(2).into()
    }

    /// Decompose a world-frame vector into (normal, tangential) components.
    pub fn decompose(&self, v: &Vector3<f64>) -> (f64, nalgebra::Vector2<f64>) {
        let local = self.rotation.transpose() * v;
        (local.x, nalgebra::Vector2::new(local.y, local.z))
    }
}

/// Build a right-handed contact frame from a terrain normal.
///
/// The first tangent is derived from the world axis least aligned with
/// the normal (ties broken toward the lower axis index), so the basis is
/// deterministic and does not flip under small normal perturbations away
/// from the axis-switch boundaries.
pub fn build_contact_frame(normal: Vector3<f64>) -> Result<ContactFrame, ContactError> {
    let len = normal.norm();
    if len <= 1e-12 {
        return Err(ContactError::DegenerateInput(
            "contact normal has near-zero length".into(),
        ));
    }
    let n = normal / len;

    let ax = n.x.abs();
    let ay = n.y.abs();
    let az = n.z.abs();
    let axis = if ax <= ay && ax <= az {
        Vector3::x()
    } else if ay <= az {
        Vector3::y()
    } else {
        Vector3::z()
    };

    let t2 = n.cross(&axis).normalize();
    let t1 = t2.cross(&n);

    Ok(ContactFrame {
        rotation: Matrix3::from_columns(&[n, t1, t2]),
    })
}
