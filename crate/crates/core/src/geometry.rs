//! Differential geometry of the helical electrode path.
//!
//! The electrode centre line is the circular helix
//!
//! ```text
//! r(phi) = (R cos phi, R sin phi, c phi),   c = H / 2pi,   phi in [0, Phi]
//! ```
//!
//! wound on a cylinder of radius `R` with pitch `H`. Arc length is
//! `s = a phi` with `a = sqrt(R^2 + c^2)`, and curvature and torsion are
//! constant along the curve. `H = 0` degenerates to a circle of radius `R`.

use std::f64::consts::TAU;

use nalgebra::Vector3;

use crate::error::{require, Error, Result};

pub type Vec3 = Vector3<f64>;

/// A circular helix: cylinder radius, pitch and total winding angle.
///
/// Lengths are metres, angles radians.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct HelixGeometry {
    pub radius: f64,
    pub pitch: f64,
    pub total_angle: f64,
}

/// Orthonormal moving frame of the helix at one point.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct FrenetFrame {
    pub tangent: Vec3,
    pub normal: Vec3,
    pub binormal: Vec3,
}

impl HelixGeometry {
    pub fn new(radius: f64, pitch: f64, total_angle: f64) -> Result<Self> {
        require(radius > 0.0 && radius.is_finite(), "radius", "must be positive")?;
        require(pitch >= 0.0 && pitch.is_finite(), "pitch", "must be non-negative")?;
        require(
            total_angle > 0.0 && total_angle.is_finite(),
            "total_angle",
            "must be positive",
        )?;
        Ok(Self {
            radius,
            pitch,
            total_angle,
        })
    }

    /// Axial rise per radian, `H / 2pi`.
    pub fn rise_per_radian(&self) -> f64 {
        self.pitch / TAU
    }

    /// Arc length per radian of winding, `a = sqrt(R^2 + (H/2pi)^2)`.
    pub fn helix_constant(&self) -> f64 {
        self.radius.hypot(self.rise_per_radian())
    }

    /// Arc length of the full wrap, `a * Phi`.
    pub fn arc_length(&self) -> f64 {
        self.helix_constant() * self.total_angle
    }

    pub fn curvature(&self) -> f64 {
        // R / (R^2 + c^2), arranged so that c = 0 gives exactly 1/R.
        let c = self.rise_per_radian();
        1.0 / (self.radius + c * (c / self.radius))
    }

    pub fn torsion(&self) -> f64 {
        let c = self.rise_per_radian();
        c / (self.radius * self.radius + c * c)
    }

    /// Dimensionless wrap `kappa * s` of the full winding.
    ///
    /// Since `kappa * a = R / a` this is `R * Phi / a`, which avoids forming
    /// the product of a large curvature and a short arc.
    pub fn wrap_exponent(&self) -> f64 {
        self.radius * self.total_angle / self.helix_constant()
    }

    fn check_angle(&self, phi: f64) -> Result<()> {
        if (0.0..=self.total_angle).contains(&phi) {
            Ok(())
        } else {
            Err(Error::Domain(format!(
                "winding angle {phi} rad outside [0, {}]",
                self.total_angle
            )))
        }
    }

    /// Point on the helix at winding angle `phi`.
    pub fn position(&self, phi: f64) -> Result<Vec3> {
        self.check_angle(phi)?;
        let (sin, cos) = phi.sin_cos();
        Ok(Vec3::new(
            self.radius * cos,
            self.radius * sin,
            self.rise_per_radian() * phi,
        ))
    }

    /// Serret-Frenet frame at winding angle `phi`.
    ///
    /// The binormal is formed as `t x n`, so the frame is right-handed by
    /// construction.
    pub fn frenet_frame(&self, phi: f64) -> Result<FrenetFrame> {
        self.check_angle(phi)?;
        let (sin, cos) = phi.sin_cos();
        let a = self.helix_constant();
        let c = self.rise_per_radian();
        let tangent = Vec3::new(-self.radius * sin / a, self.radius * cos / a, c / a);
        let normal = Vec3::new(-cos, -sin, 0.0);
        let binormal = tangent.cross(&normal);
        Ok(FrenetFrame {
            tangent,
            normal,
            binormal,
        })
    }
}
