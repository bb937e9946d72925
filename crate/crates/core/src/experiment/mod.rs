//! Reduction of force/torque sensor logs and voltage-response fitting.

mod fit;
mod outliers;
mod reduce;
mod sensor;

pub use fit::{fit_quadratic, predicted_coefficients, FitResult};
pub use outliers::{remove_outliers, DEFAULT_THRESHOLD_SIGMA};
pub use reduce::{friction_from_wrench, initial_force, reduce_log, steady_state_mean, Reduction, RigConfig};
pub use sensor::{load_sensor_log, SensorSample, Wrench, LOG_HEADER};

/// Voltage levels of the reference sweep, 1000 V to 3800 V in 400 V steps.
pub const REFERENCE_VOLTAGES: [f64; 8] = [1000.0, 1400.0, 1800.0, 2200.0, 2600.0, 3000.0, 3400.0, 3800.0];

/// Shared quadratic coefficient of the published voltage-response fits, N/V^2.
pub const REFERENCE_FIT_SLOPE: f64 = 5.138e-8;

/// Published fit intercepts (N) for the 25 g, 50 g and 100 g preload masses.
pub const REFERENCE_FIT_INTERCEPTS: [(f64, f64); 3] = [(0.025, 0.902), (0.050, 1.804), (0.100, 3.608)];

/// Specimen relative permittivity.
pub const REFERENCE_EPS_R: f64 = 3.6;

/// Specimen effective electrode width, m.
pub const REFERENCE_ELECTRODE_WIDTH: f64 = 0.007;

/// Specimen PI-on-PI static friction coefficient.
pub const REFERENCE_FRICTION_MU: f64 = 0.22;

/// Specimen winding angle, 450 deg in rad.
pub const REFERENCE_WIND_ANGLE: f64 = 2.5 * std::f64::consts::PI;
