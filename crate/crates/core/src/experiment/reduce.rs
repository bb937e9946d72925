use crate::error::{require, Error, Result};

use super::outliers::remove_outliers;
use super::sensor::{SensorSample, Wrench};

/// Test-rig constants.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct RigConfig {
    /// Radius of the groove the electrode leaves tangentially, m.
    pub groove_radius: f64,
    /// Preload mass hung on the free end, kg.
    pub mass: f64,
    /// m/s^2.
    pub gravity: f64,
    pub sampling_hz: f64,
}

impl RigConfig {
    pub const DEFAULT_GRAVITY: f64 = 9.81;
    pub const DEFAULT_SAMPLING_HZ: f64 = 10.0;

    pub fn new(groove_radius: f64, mass: f64) -> Result<Self> {
        Self {
            groove_radius,
            mass,
            gravity: Self::DEFAULT_GRAVITY,
            sampling_hz: Self::DEFAULT_SAMPLING_HZ,
        }
        .validated()
    }

    pub fn validated(self) -> Result<Self> {
        require(self.groove_radius > 0.0, "groove_radius", "must be positive")?;
        require(self.mass >= 0.0, "mass", "must be non-negative")?;
        require(self.gravity > 0.0, "gravity", "must be positive")?;
        require(self.sampling_hz > 0.0, "sampling_hz", "must be positive")?;
        Ok(self)
    }
}

/// Channel-wise arithmetic mean.
pub fn steady_state_mean(samples: &[SensorSample]) -> Result<Wrench> {
    if samples.is_empty() {
        return Err(Error::Empty("no samples to average".into()));
    }
    let sum = samples.iter().fold(Wrench::default(), |acc, s| acc + s.wrench);
    Ok(sum / samples.len() as f64)
}

/// Friction magnitude from the axial force and the torque about the axis:
/// `F_z2 = T_z / r`, `F_f = sqrt(F_z^2 + F_z2^2)`.
pub fn friction_from_wrench(w: &Wrench, rig: &RigConfig) -> f64 {
    w.fz.hypot(w.tz / rig.groove_radius)
}

/// Weight of the preload mass, `m * g`.
pub fn initial_force(rig: &RigConfig) -> f64 {
    rig.mass * rig.gravity
}

/// Reduced statistics of one log.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Reduction {
    /// Friction computed from the mean wrench, N.
    pub friction_mean: f64,
    /// Sample standard deviation of the per-sample friction, N.
    pub friction_std: f64,
    /// Samples retained after outlier rejection.
    pub n_samples: usize,
}

/// Outlier rejection, averaging and friction decomposition of one log.
pub fn reduce_log(samples: &[SensorSample], rig: &RigConfig, threshold_sigma: f64) -> Result<Reduction> {
    let kept = remove_outliers(samples, threshold_sigma);
    let mean = steady_state_mean(&kept)?;
    let per_sample: Vec<f64> = kept.iter().map(|s| friction_from_wrench(&s.wrench, rig)).collect();
    let n = per_sample.len();
    let friction_std = if n > 1 {
        let m = per_sample.iter().sum::<f64>() / n as f64;
        (per_sample.iter().map(|f| (f - m).powi(2)).sum::<f64>() / (n - 1) as f64).sqrt()
    } else {
        0.0
    };
    Ok(Reduction {
        friction_mean: friction_from_wrench(&mean, rig),
        friction_std,
        n_samples: n,
    })
}
