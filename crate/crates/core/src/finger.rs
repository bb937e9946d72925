//! Quasi-static model of a two-segment finger whose hinge is held by a wound
//! electrode.
//!
//! A spring anchored in the proximal segment preloads the free end of the
//! electrode; the other end is fixed to the distal segment at radius `r_c`
//! from the hinge. Bending the joint by `theta` pays out `r_c * theta` of
//! electrode and stretches the spring by the same amount, so
//!
//! ```text
//! T0(theta)    = k_s * (x0 + r_c * theta)
//! tau(theta,V) = T(V, T0(theta)) * r_c
//! ```
//!
//! A fingertip load `F` at lever arm `L_f` settles at the smallest `theta`
//! with `F * L_f <= tau(theta, V)`. The hinge is frictionless and the
//! segments massless; the lever arm is taken as constant over the bend.

use std::f64::consts::PI;

use crate::error::{require, Error, Result};
use crate::tension::{terminal_tension, DriveState, MechanismSpec};
use crate::roots::bisect_increasing;

/// Upper end of the bend search.
pub const MAX_BEND: f64 = PI;

/// Bisection resolution on the bend angle, rad.
pub const BEND_TOL: f64 = 1e-12;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct FingerConfig {
    /// Spring rate, N/m.
    pub spring_k: f64,
    /// Spring extension in the unloaded pose, m.
    pub pre_extension: f64,
    /// Radius at which the electrode tension acts about the hinge, m.
    pub core_radius: f64,
    /// Fingertip lever arm, m.
    pub lever: f64,
    pub mechanism: MechanismSpec,
}

impl FingerConfig {
    pub fn new(
        spring_k: f64,
        pre_extension: f64,
        core_radius: f64,
        lever: f64,
        mechanism: MechanismSpec,
    ) -> Result<Self> {
        require(spring_k > 0.0 && spring_k.is_finite(), "spring_k", "must be positive")?;
        require(
            pre_extension >= 0.0 && pre_extension.is_finite(),
            "pre_extension",
            "must be non-negative",
        )?;
        require(core_radius > 0.0 && core_radius.is_finite(), "core_radius", "must be positive")?;
        require(lever > 0.0 && lever.is_finite(), "lever", "must be positive")?;
        Ok(Self {
            spring_k,
            pre_extension,
            core_radius,
            lever,
            mechanism,
        })
    }
}

/// One solved load case.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct FingerState {
    pub bend_angle: f64,
    pub load: f64,
    pub voltage: f64,
    /// `load / bend_angle`; `None` when the bend is zero.
    pub stiffness: Option<f64>,
}

fn check_angle(theta: f64) -> Result<()> {
    if theta >= 0.0 && theta.is_finite() {
        Ok(())
    } else {
        Err(Error::Domain(format!("bend angle {theta} rad must be >= 0")))
    }
}

/// Spring force on the electrode free end at bend `theta`.
pub fn preload_at_angle(cfg: &FingerConfig, theta: f64) -> Result<f64> {
    check_angle(theta)?;
    Ok(cfg.spring_k * (cfg.pre_extension + cfg.core_radius * theta))
}

/// Torque the electrode exerts about the hinge.
pub fn holding_torque(cfg: &FingerConfig, voltage: f64, theta: f64) -> Result<f64> {
    let drive = DriveState::new(voltage, preload_at_angle(cfg, theta)?)?;
    Ok(terminal_tension(&cfg.mechanism, &drive)?.terminal_tension * cfg.core_radius)
}

/// Net bend at which the holding torque balances the fingertip load.
pub fn equilibrium_angle(cfg: &FingerConfig, voltage: f64, load: f64) -> Result<f64> {
    if !(load >= 0.0 && load.is_finite()) {
        return Err(Error::Domain(format!("load {load} N must be >= 0")));
    }
    let load_torque = load * cfg.lever;
    let residual = |theta: f64| Ok(holding_torque(cfg, voltage, theta)? - load_torque);
    if residual(0.0)? >= 0.0 {
        return Ok(0.0);
    }
    let at_limit = residual(MAX_BEND)?;
    if at_limit < 0.0 {
        return Err(Error::NoEquilibrium {
            load_torque,
            max_torque: at_limit + load_torque,
        });
    }
    bisect_increasing(residual, 0.0, MAX_BEND, BEND_TOL)
}

/// Joint stiffness `F / theta` at equilibrium, N/rad.
pub fn stiffness_coefficient(cfg: &FingerConfig, voltage: f64, load: f64) -> Result<f64> {
    if !(load > 0.0) {
        return Err(Error::UndefinedRatio(format!(
            "stiffness needs a positive load, got {load} N"
        )));
    }
    let theta = equilibrium_angle(cfg, voltage, load)?;
    if theta == 0.0 {
        return Err(Error::InfiniteStiffness);
    }
    Ok(load / theta)
}

/// Solves one grid point into a [`FingerState`].
pub fn solve_state(cfg: &FingerConfig, voltage: f64, load: f64) -> Result<FingerState> {
    let theta = equilibrium_angle(cfg, voltage, load)?;
    Ok(FingerState {
        bend_angle: theta,
        load,
        voltage,
        stiffness: (theta > 0.0).then(|| load / theta),
    })
}

/// One row of a load sweep.
#[derive(Debug, Clone, PartialEq)]
pub struct SweepRow {
    pub voltage: f64,
    pub load: f64,
    pub outcome: Result<FingerState>,
}

/// Solves every `(voltage, load)` pair, voltage-major, keeping failed points
/// as error rows.
pub fn load_sweep(cfg: &FingerConfig, voltages: &[f64], loads: &[f64]) -> Result<Vec<SweepRow>> {
    if voltages.is_empty() || loads.is_empty() {
        return Err(Error::Empty("load sweep needs at least one voltage and one load".into()));
    }
    Ok(voltages
        .iter()
        .flat_map(|&voltage| {
            loads.iter().map(move |&load| SweepRow {
                voltage,
                load,
                outcome: solve_state(cfg, voltage, load),
            })
        })
        .collect())
}

/// Finger with the published electrode width (6 mm) and wrap (360 deg).
///
/// Every other dimension is a synthetic placeholder chosen so that the load
/// range in [`FIXTURE_LOADS`] bends the joint without exceeding the angle
/// limit.
pub fn fixture_finger() -> FingerConfig {
    use crate::electrostatics::DielectricStack;
    use crate::geometry::HelixGeometry;

    let helix = HelixGeometry::new(0.004, 0.010, 2.0 * PI).expect("fixture helix");
    let stack = DielectricStack::new(3.6, 50e-6, 3.6, 50e-6, 0.006, 0.22).expect("fixture stack");
    let mechanism = MechanismSpec::new(helix, stack).expect("fixture mechanism");
    FingerConfig::new(300.0, 0.002, 0.004, 0.02, mechanism).expect("fixture finger")
}

/// Voltages of the fixture sweep, V.
pub const FIXTURE_VOLTAGES: [f64; 4] = [0.0, 1000.0, 2000.0, 3000.0];

/// Fingertip loads of the fixture sweep, N.
pub const FIXTURE_LOADS: [f64; 6] = [0.75, 1.0, 1.25, 1.5, 1.75, 2.0];
