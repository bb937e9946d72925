//! Series-dielectric parallel-plate model of the electrode pair.
//!
//! Both electrodes carry a dielectric film. The copper foil and any air gap
//! are neglected, so the electrode cores are separated by `d_e = d1 + d2` and
//! the two films act as series capacitors with equivalent relative
//! permittivity
//!
//! ```text
//! eps_e = eps1 * eps2 * d_e / (eps1 * d2 + eps2 * d1)
//! ```
//!
//! The attraction per unit electrode length is `eps0 * eps_e * w * V^2 / (2 d_e^2)`.

use crate::error::{require, Error, Result};

/// Vacuum permittivity in F/m, at the three-digit value used for the
/// specimen tables.
pub const VACUUM_PERMITTIVITY: f64 = 8.85e-12;

/// Two dielectric films, electrode width and the film-on-film friction
/// coefficient. Thicknesses and width in metres.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct DielectricStack {
    pub eps_r1: f64,
    pub thickness_d1: f64,
    pub eps_r2: f64,
    pub thickness_d2: f64,
    pub electrode_width: f64,
    pub friction_mu: f64,
    pub eps0: f64,
}

impl DielectricStack {
    pub fn new(
        eps_r1: f64,
        thickness_d1: f64,
        eps_r2: f64,
        thickness_d2: f64,
        electrode_width: f64,
        friction_mu: f64,
    ) -> Result<Self> {
        Self {
            eps_r1,
            thickness_d1,
            eps_r2,
            thickness_d2,
            electrode_width,
            friction_mu,
            eps0: VACUUM_PERMITTIVITY,
        }
        .validated()
    }

    /// Replaces the vacuum permittivity constant.
    pub fn with_eps0(mut self, eps0: f64) -> Result<Self> {
        self.eps0 = eps0;
        self.validated()
    }

    pub fn validated(self) -> Result<Self> {
        require(self.eps_r1 >= 1.0, "eps_r1", "relative permittivity must be >= 1")?;
        require(self.eps_r2 >= 1.0, "eps_r2", "relative permittivity must be >= 1")?;
        require(self.thickness_d1 > 0.0, "thickness_d1", "must be positive")?;
        require(self.thickness_d2 > 0.0, "thickness_d2", "must be positive")?;
        require(self.electrode_width > 0.0, "electrode_width", "must be positive")?;
        require(self.friction_mu >= 0.0, "friction_mu", "must be non-negative")?;
        require(self.eps0 > 0.0, "eps0", "must be positive")?;
        let finite = [
            self.eps_r1,
            self.thickness_d1,
            self.eps_r2,
            self.thickness_d2,
            self.electrode_width,
            self.friction_mu,
            self.eps0,
        ]
        .iter()
        .all(|v| v.is_finite());
        require(finite, "stack", "all fields must be finite")?;
        Ok(self)
    }

    /// Distance between electrode cores, `d1 + d2`.
    pub fn effective_gap(&self) -> f64 {
        self.thickness_d1 + self.thickness_d2
    }

    /// Relative permittivity of a single film of thickness `d1 + d2` with the
    /// same capacitance as the two films in series.
    pub fn equivalent_permittivity(&self) -> f64 {
        let (e1, e2) = (self.eps_r1, self.eps_r2);
        e1 * e2 * self.effective_gap() / (e1 * self.thickness_d2 + e2 * self.thickness_d1)
    }

    /// Electrostatic attraction per unit electrode length (N/m) at `voltage`.
    ///
    /// Only the magnitude of the voltage matters physically, but negative
    /// inputs are rejected so that sign errors surface.
    pub fn line_load(&self, voltage: f64) -> Result<f64> {
        if !(voltage >= 0.0 && voltage.is_finite()) {
            return Err(Error::Domain(format!("voltage {voltage} V must be >= 0")));
        }
        let gap = self.effective_gap();
        Ok(self.eps0 * self.equivalent_permittivity() * self.electrode_width * voltage * voltage
            / (2.0 * gap * gap))
    }
}

#[cfg(test)]
mod tests {
    use proptest::prelude::*;

    use super::*;

    fn stack(e1: f64, d1: f64, e2: f64, d2: f64) -> DielectricStack {
        DielectricStack::new(e1, d1, e2, d2, 0.007, 0.22).unwrap()
    }

    #[test]
    fn effective_gap_is_sum() {
        assert_eq!(stack(3.6, 50e-6, 3.6, 50e-6).effective_gap(), 1.0e-4);
        assert!((stack(3.6, 25e-6, 3.6, 125e-6).effective_gap() - 1.5e-4).abs() < 1e-18);
    }

    #[test]
    fn rejects_invalid_stack() {
        assert!(DielectricStack::new(3.6, 0.0, 3.6, 50e-6, 0.007, 0.22).is_err());
        assert!(DielectricStack::new(0.5, 50e-6, 3.6, 50e-6, 0.007, 0.22).is_err());
        assert!(DielectricStack::new(3.6, 50e-6, 3.6, 50e-6, 0.0, 0.22).is_err());
        assert!(DielectricStack::new(3.6, 50e-6, 3.6, 50e-6, 0.007, -0.1).is_err());
        let s = stack(3.6, 50e-6, 3.6, 50e-6);
        assert!(s.with_eps0(0.0).is_err());
        assert_eq!(s.with_eps0(8.854e-12).unwrap().eps0, 8.854e-12);
    }

    #[test]
    fn equivalent_permittivity_examples() {
        assert!((stack(3.6, 50e-6, 3.6, 75e-6).equivalent_permittivity() - 3.6).abs() < 1e-14);
        let mixed = stack(3.6, 50e-6, 2.2, 50e-6).equivalent_permittivity();
        assert!((mixed - 792.0 / 290.0).abs() < 1e-14);
        let thin = stack(3.6, 50e-6, 2.2, 1e-15).equivalent_permittivity();
        assert!((thin - 3.6).abs() < 1e-9);
    }

    #[test]
    fn series_capacitance_oracle() {
        // C/A of two films in series against the single-film form.
        let s = stack(3.6, 50e-6, 2.2, 50e-6);
        let series = s.eps0 / (s.thickness_d1 / s.eps_r1 + s.thickness_d2 / s.eps_r2);
        let single = s.eps0 * s.equivalent_permittivity() / s.effective_gap();
        assert!((series - single).abs() <= 1e-12 * series);
    }

    #[test]
    fn line_load_examples() {
        let s = stack(3.6, 50e-6, 3.6, 50e-6);
        assert_eq!(s.line_load(0.0).unwrap(), 0.0);
        // 8.85e-12 * 3.6 * 0.007 * 9e6 / (2 * 1e-8)
        let q = s.line_load(3000.0).unwrap();
        assert!((q - 100.359).abs() < 1e-10);
        assert!((s.line_load(6000.0).unwrap() / q - 4.0).abs() < 1e-12);
        assert!(matches!(s.line_load(-1.0), Err(Error::Domain(_))));
    }

    fn arb_stack() -> impl Strategy<Value = DielectricStack> {
        (1.0..10.0f64, 10e-6..200e-6f64, 1.0..10.0f64, 10e-6..200e-6f64)
            .prop_map(|(e1, d1, e2, d2)| stack(e1, d1, e2, d2))
    }

    proptest! {
        #[test]
        fn permittivity_between_film_values(s in arb_stack()) {
            let e = s.equivalent_permittivity();
            let lo = s.eps_r1.min(s.eps_r2);
            let hi = s.eps_r1.max(s.eps_r2);
            prop_assert!(e >= lo * (1.0 - 1e-14) && e <= hi * (1.0 + 1e-14));
        }

        #[test]
        fn permittivity_symmetric_under_swap(s in arb_stack()) {
            let swapped = stack(s.eps_r2, s.thickness_d2, s.eps_r1, s.thickness_d1);
            let (a, b) = (s.equivalent_permittivity(), swapped.equivalent_permittivity());
            prop_assert!((a - b).abs() <= 1e-14 * a);
        }

        #[test]
        fn gap_over_permittivity_is_series_sum(s in arb_stack()) {
            let lhs = s.effective_gap() / s.equivalent_permittivity();
            let rhs = s.thickness_d1 / s.eps_r1 + s.thickness_d2 / s.eps_r2;
            prop_assert!((lhs - rhs).abs() <= 1e-12 * rhs);
        }

        #[test]
        fn line_load_quadratic(s in arb_stack(), v in 1.0..5000.0f64) {
            let q1 = s.line_load(v).unwrap();
            let q2 = s.line_load(2.0 * v).unwrap();
            prop_assert!((q2 - 4.0 * q1).abs() <= 1e-12 * q2);
        }
    }
}
