//! Browser bindings for the interactive demo page in `www/`.
//!
//! Each exported method returns a flat `Float64Array` of interleaved
//! columns so the page can plot it without any parsing.

use helijam::finger::{solve_state, FingerConfig};
use helijam::tension::{planar_tension, tension_profile, terminal_tension};
use helijam::{DielectricStack, DriveState, HelixGeometry, MechanismSpec};
use wasm_bindgen::prelude::*;

/// Spring parameters of the demo finger, in SI.
const FINGER_SPRING_K: f64 = 300.0;
const FINGER_PRE_EXTENSION: f64 = 0.002;
const FINGER_CORE_RADIUS: f64 = 0.004;
const FINGER_LEVER: f64 = 0.02;

/// Mechanism built from slider values in display units.
#[wasm_bindgen]
pub struct Demo {
    mech: MechanismSpec,
}

impl Demo {
    pub fn build(
        radius_mm: f64,
        pitch_mm: f64,
        angle_deg: f64,
        film_um: f64,
        eps_r: f64,
        width_mm: f64,
        mu: f64,
    ) -> Result<Demo, String> {
        let helix = HelixGeometry::new(radius_mm / 1e3, pitch_mm / 1e3, angle_deg.to_radians())
            .map_err(|e| e.to_string())?;
        let d = film_um / 1e6;
        let stack = DielectricStack::new(eps_r, d, eps_r, d, width_mm / 1e3, mu)
            .map_err(|e| e.to_string())?;
        let mech = MechanismSpec::new(helix, stack).map_err(|e| e.to_string())?;
        Ok(Demo { mech })
    }

    /// Rows of `(V, helical T, planar T)` for `n` voltages in `[0, v_max]`.
    pub fn voltage_rows(&self, preload: f64, v_max: f64, n: usize) -> Result<Vec<f64>, String> {
        let n = n.max(2);
        let length = self.mech.helix.arc_length();
        let mut out = Vec::with_capacity(3 * n);
        for i in 0..n {
            let v = v_max * i as f64 / (n - 1) as f64;
            let drive = DriveState::new(v, preload).map_err(|e| e.to_string())?;
            let helical = terminal_tension(&self.mech, &drive).map_err(|e| e.to_string())?;
            let planar = planar_tension(&self.mech.stack, length, &drive).map_err(|e| e.to_string())?;
            out.extend([v, helical.terminal_tension, planar]);
        }
        Ok(out)
    }

    /// Rows of `(s, T(s))` along the wrap.
    pub fn profile_rows(&self, voltage: f64, preload: f64, n: usize) -> Result<Vec<f64>, String> {
        let drive = DriveState::new(voltage, preload).map_err(|e| e.to_string())?;
        let profile = tension_profile(&self.mech, &drive, n.max(2)).map_err(|e| e.to_string())?;
        Ok(profile.into_iter().flat_map(|(s, t)| [s, t]).collect())
    }

    /// Rows of `(F_pull, theta_deg)`; `theta_deg` is NaN past the holding limit.
    pub fn finger_rows(&self, voltage: f64, load_max: f64, n: usize) -> Result<Vec<f64>, String> {
        let cfg = FingerConfig::new(
            FINGER_SPRING_K,
            FINGER_PRE_EXTENSION,
            FINGER_CORE_RADIUS,
            FINGER_LEVER,
            self.mech,
        )
        .map_err(|e| e.to_string())?;
        let n = n.max(2);
        let mut out = Vec::with_capacity(2 * n);
        for i in 0..n {
            let load = load_max * i as f64 / (n - 1) as f64;
            let theta = match solve_state(&cfg, voltage, load) {
                Ok(state) => state.bend_angle.to_degrees(),
                Err(helijam::Error::NoEquilibrium { .. }) => f64::NAN,
                Err(e) => return Err(e.to_string()),
            };
            out.extend([load, theta]);
        }
        Ok(out)
    }
}

#[wasm_bindgen]
impl Demo {
    #[wasm_bindgen(constructor)]
    pub fn new(
        radius_mm: f64,
        pitch_mm: f64,
        angle_deg: f64,
        film_um: f64,
        eps_r: f64,
        width_mm: f64,
        mu: f64,
    ) -> Result<Demo, JsError> {
        Self::build(radius_mm, pitch_mm, angle_deg, film_um, eps_r, width_mm, mu)
            .map_err(|e| JsError::new(&e))
    }

    #[wasm_bindgen(js_name = wrapExponent)]
    pub fn wrap_exponent(&self) -> f64 {
        self.mech.helix.wrap_exponent()
    }

    #[wasm_bindgen(js_name = arcLength)]
    pub fn arc_length(&self) -> f64 {
        self.mech.helix.arc_length()
    }

    #[wasm_bindgen(js_name = voltageCurve)]
    pub fn voltage_curve(&self, preload: f64, v_max: f64, n: usize) -> Result<Vec<f64>, JsError> {
        self.voltage_rows(preload, v_max, n).map_err(|e| JsError::new(&e))
    }

    #[wasm_bindgen(js_name = tensionProfile)]
    pub fn tension_profile(&self, voltage: f64, preload: f64, n: usize) -> Result<Vec<f64>, JsError> {
        self.profile_rows(voltage, preload, n).map_err(|e| JsError::new(&e))
    }

    #[wasm_bindgen(js_name = fingerSweep)]
    pub fn finger_sweep(&self, voltage: f64, load_max: f64, n: usize) -> Result<Vec<f64>, JsError> {
        self.finger_rows(voltage, load_max, n).map_err(|e| JsError::new(&e))
    }
}
