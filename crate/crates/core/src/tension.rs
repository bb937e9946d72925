//! Terminal tension of the wound electrode.
//!
//! A differential segment of the electrode is held by tension along the
//! tangent, pressed onto the core by its own curvature and by the
//! electrostatic line load `q_e`, and resisted by Coulomb friction. The
//! tangential and normal balances combine into
//!
//! ```text
//! dT/ds - mu*kappa*T = mu*q_e,          T(0) = T0
//! ```
//!
//! whose solution at arc length `s` is
//!
//! ```text
//! T(s) = T0 * exp(mu*kappa*s) + (q_e / kappa) * (exp(mu*kappa*s) - 1)
//! ```
//!
//! The first term is the capstan (belt friction) gain of the preload, the
//! second the electrostatic contribution, which does not depend on `T0`.
//! For the full wrap `kappa * s = R * Phi / a`.
//!
//! As `kappa -> 0` the electrostatic term tends to `mu * q_e * s` and the
//! model reduces to a planar strip of length `s`.

use crate::electrostatics::DielectricStack;
use crate::error::{require, Error, Result};
use crate::geometry::HelixGeometry;
use crate::ode;

/// Largest admissible friction exponent `mu * kappa * s`.
pub const MAX_FRICTION_EXPONENT: f64 = 700.0;

/// Below this `kappa * s` the electrostatic term is evaluated by its series
/// about the planar limit.
pub const PLANAR_SWITCH: f64 = 1e-9;

/// Default relative tolerance of the ODE cross-check.
pub const DEFAULT_ODE_TOL: f64 = 1e-10;

/// A complete wound-electrode mechanism.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct MechanismSpec {
    pub helix: HelixGeometry,
    pub stack: DielectricStack,
}

impl MechanismSpec {
    /// Builds a mechanism whose pitch clears the electrode width (`H > w`).
    pub fn new(helix: HelixGeometry, stack: DielectricStack) -> Result<Self> {
        let spec = Self { helix, stack };
        require(
            spec.pitch_admissible(),
            "pitch",
            &format!(
                "pitch {} m must exceed electrode width {} m",
                helix.pitch, stack.electrode_width
            ),
        )?;
        Ok(spec)
    }

    /// Like [`MechanismSpec::new`] but also accepts the flat-wound `H = 0`
    /// limit, which has no physical counterpart since the turns overlap.
    pub fn circular_limit(helix: HelixGeometry, stack: DielectricStack) -> Result<Self> {
        if helix.pitch == 0.0 {
            Ok(Self { helix, stack })
        } else {
            Self::new(helix, stack)
        }
    }

    /// Whether adjacent turns clear each other, `H > w`.
    pub fn pitch_admissible(&self) -> bool {
        self.helix.pitch > self.stack.electrode_width
    }

    /// The same mechanism with a different total winding angle.
    pub fn with_total_angle(&self, total_angle: f64) -> Result<Self> {
        let helix = HelixGeometry::new(self.helix.radius, self.helix.pitch, total_angle)?;
        Ok(Self { helix, ..*self })
    }
}

/// Applied voltage (V) and free-end preload (N).
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct DriveState {
    pub voltage: f64,
    pub preload: f64,
}

impl DriveState {
    pub fn new(voltage: f64, preload: f64) -> Result<Self> {
        require(voltage >= 0.0 && voltage.is_finite(), "voltage", "must be >= 0")?;
        require(preload >= 0.0 && preload.is_finite(), "preload", "must be >= 0")?;
        Ok(Self { voltage, preload })
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TensionSolution {
    /// Tension at the end of the wrap, N.
    pub terminal_tension: f64,
    /// `terminal_tension / preload`, absent for zero preload.
    pub amplification: Option<f64>,
    /// Capstan factor `exp(mu * kappa * s)`.
    pub capstan_gain: f64,
    /// Voltage-driven addend, N.
    pub electro_term: f64,
}

/// Tension after arc length `arc_length` along a path of constant
/// `curvature`, from the closed-form solution.
///
/// This is the geometry-free kernel behind [`terminal_tension`]; it accepts
/// any `curvature >= 0`, including the planar case `0`.
pub fn wrapped_tension(
    curvature: f64,
    arc_length: f64,
    mu: f64,
    line_load: f64,
    preload: f64,
) -> Result<TensionSolution> {
    wrapped_tension_with_wrap(curvature, curvature * arc_length, arc_length, mu, line_load, preload)
}

fn wrapped_tension_with_wrap(
    curvature: f64,
    wrap: f64,
    arc_length: f64,
    mu: f64,
    line_load: f64,
    preload: f64,
) -> Result<TensionSolution> {
    let exponent = mu * wrap;
    if !(exponent <= MAX_FRICTION_EXPONENT) {
        return Err(Error::Range {
            exponent,
            limit: MAX_FRICTION_EXPONENT,
        });
    }
    let capstan_gain = exponent.exp();
    let electro_term = if wrap < PLANAR_SWITCH {
        // (q/kappa) * expm1(mu*kappa*s) = q*mu*s * (1 + x/2 + x^2/6 + ...)
        line_load * mu * arc_length * (1.0 + exponent / 2.0 + exponent * exponent / 6.0)
    } else {
        line_load / curvature * exponent.exp_m1()
    };
    let terminal_tension = preload * capstan_gain + electro_term;
    Ok(TensionSolution {
        terminal_tension,
        amplification: (preload > 0.0).then(|| terminal_tension / preload),
        capstan_gain,
        electro_term,
    })
}

/// Tension at the end of the full wrap.
pub fn terminal_tension(mech: &MechanismSpec, drive: &DriveState) -> Result<TensionSolution> {
    let helix = &mech.helix;
    let line_load = mech.stack.line_load(drive.voltage)?;
    wrapped_tension_with_wrap(
        helix.curvature(),
        helix.wrap_exponent(),
        helix.arc_length(),
        mech.stack.friction_mu,
        line_load,
        drive.preload,
    )
}

/// Tension at an intermediate arc position `s` in `[0, a * Phi]`.
pub fn tension_at(mech: &MechanismSpec, drive: &DriveState, s: f64) -> Result<TensionSolution> {
    let helix = &mech.helix;
    let total = helix.arc_length();
    if !(0.0..=total).contains(&s) {
        return Err(Error::Domain(format!("arc position {s} m outside [0, {total}]")));
    }
    let line_load = mech.stack.line_load(drive.voltage)?;
    wrapped_tension_with_wrap(
        helix.curvature(),
        helix.wrap_exponent() * (s / total),
        s,
        mech.stack.friction_mu,
        line_load,
        drive.preload,
    )
}

/// Integrates the tension balance numerically up to arc position `s`.
///
/// This does not use the closed form and serves as its independent check.
pub fn integrate_tension_ode_to(
    mech: &MechanismSpec,
    drive: &DriveState,
    s: f64,
    rel_tol: f64,
) -> Result<f64> {
    if !(1e-14..=1e-3).contains(&rel_tol) {
        return Err(Error::Domain(format!(
            "relative tolerance {rel_tol} outside [1e-14, 1e-3]"
        )));
    }
    let total = mech.helix.arc_length();
    if !(0.0..=total).contains(&s) {
        return Err(Error::Domain(format!("arc position {s} m outside [0, {total}]")));
    }
    let mu = mech.stack.friction_mu;
    let kappa = mech.helix.curvature();
    let q = mech.stack.line_load(drive.voltage)?;
    let exponent = mu * kappa * s;
    if !(exponent <= MAX_FRICTION_EXPONENT) {
        return Err(Error::Range {
            exponent,
            limit: MAX_FRICTION_EXPONENT,
        });
    }
    let rhs = |_s: f64, t: f64| mu * (kappa * t + q);
    Ok(ode::rk4_converged(rhs, 0.0, drive.preload, s, rel_tol)?.value)
}

/// Integrates the tension balance over the full wrap.
pub fn integrate_tension_ode(mech: &MechanismSpec, drive: &DriveState, rel_tol: f64) -> Result<f64> {
    integrate_tension_ode_to(mech, drive, mech.helix.arc_length(), rel_tol)
}

/// `n_samples` evenly spaced `(s, T(s))` pairs from the free end to the
/// terminal end.
pub fn tension_profile(
    mech: &MechanismSpec,
    drive: &DriveState,
    n_samples: usize,
) -> Result<Vec<(f64, f64)>> {
    if n_samples < 2 {
        return Err(Error::Domain(format!("need at least 2 samples, got {n_samples}")));
    }
    let total = mech.helix.arc_length();
    let last = n_samples - 1;
    (0..n_samples)
        .map(|i| {
            let s = if i == last { total } else { total * i as f64 / last as f64 };
            Ok((s, tension_at(mech, drive, s)?.terminal_tension))
        })
        .collect()
}

/// Tension at the end of a flat strip of length `contact_length` under the
/// same line load, `T0 + mu * q_e * L`.
pub fn planar_tension(stack: &DielectricStack, contact_length: f64, drive: &DriveState) -> Result<f64> {
    if !(contact_length > 0.0 && contact_length.is_finite()) {
        return Err(Error::Domain(format!(
            "contact length {contact_length} m must be positive"
        )));
    }
    let q = stack.line_load(drive.voltage)?;
    Ok(drive.preload + stack.friction_mu * q * contact_length)
}

/// Ratio of terminal tension to preload.
pub fn amplification_ratio(mech: &MechanismSpec, drive: &DriveState) -> Result<f64> {
    terminal_tension(mech, drive)?
        .amplification
        .ok_or_else(|| Error::UndefinedRatio("amplification needs a positive preload".into()))
}

/// Smallest total winding angle whose terminal tension reaches `target`.
///
/// Rearranging the closed form, `exp(mu*kappa*s) = (target + q/kappa) / (T0 + q/kappa)`
/// and `kappa * s = R * Phi / a`.
pub fn required_angle(mech: &MechanismSpec, drive: &DriveState, target: f64) -> Result<f64> {
    let t0 = drive.preload;
    if !(target >= t0) {
        return Err(Error::Domain(format!(
            "target tension {target} N is below the preload {t0} N"
        )));
    }
    if target == t0 {
        return Ok(0.0);
    }
    let mu = mech.stack.friction_mu;
    let kappa = mech.helix.curvature();
    if !(mu > 0.0 && kappa > 0.0) {
        return Err(Error::Unreachable(format!(
            "winding cannot amplify tension with mu = {mu}, kappa = {kappa}"
        )));
    }
    let offset = mech.stack.line_load(drive.voltage)? / kappa;
    if t0 + offset <= 0.0 {
        return Err(Error::Unreachable(
            "zero preload and zero voltage leave the electrode slack".into(),
        ));
    }
    let exponent = ((target - t0) / (t0 + offset)).ln_1p();
    if exponent > MAX_FRICTION_EXPONENT {
        return Err(Error::Range {
            exponent,
            limit: MAX_FRICTION_EXPONENT,
        });
    }
    Ok(exponent * mech.helix.helix_constant() / (mu * mech.helix.radius))
}
