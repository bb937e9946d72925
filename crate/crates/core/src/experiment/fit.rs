use crate::error::{Error, Result};
use crate::tension::{terminal_tension, DriveState, MechanismSpec};

/// Least-squares fit of `F = a * V^2 + b`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct FitResult {
    /// N/V^2.
    pub coeff_a: f64,
    /// N.
    pub coeff_b: f64,
    /// Root-mean-square residual, N.
    pub rms_residual: f64,
    pub n_points: usize,
}

impl FitResult {
    pub fn eval(&self, voltage: f64) -> f64 {
        self.coeff_a * voltage * voltage + self.coeff_b
    }
}

/// Fits `a * V^2 + b` to `(voltage, force)` points.
///
/// Solved as simple linear regression on `x = V^2` in centred form, which is
/// the normal-equation solution without forming the ill-conditioned Gram
/// matrix.
pub fn fit_quadratic(points: &[(f64, f64)]) -> Result<FitResult> {
    let n = points.len();
    if n < 3 {
        return Err(Error::Fit(format!("need at least 3 points, got {n}")));
    }
    if points.iter().any(|(v, f)| !v.is_finite() || !f.is_finite()) {
        return Err(Error::Fit("non-finite data point".into()));
    }
    let xs: Vec<f64> = points.iter().map(|(v, _)| v * v).collect();
    if xs.iter().all(|&x| x == xs[0]) {
        return Err(Error::Fit("rank deficient: all V^2 values are equal".into()));
    }
    let nf = n as f64;
    let x_mean = xs.iter().sum::<f64>() / nf;
    let y_mean = points.iter().map(|(_, f)| f).sum::<f64>() / nf;
    let (sxx, sxy) = xs
        .iter()
        .zip(points)
        .fold((0.0, 0.0), |(sxx, sxy), (&x, &(_, y))| {
            let dx = x - x_mean;
            (sxx + dx * dx, sxy + dx * (y - y_mean))
        });
    if !(sxx > 0.0) {
        return Err(Error::Fit("rank deficient: no spread in V^2".into()));
    }
    let coeff_a = sxy / sxx;
    let coeff_b = y_mean - coeff_a * x_mean;
    let sse: f64 = xs
        .iter()
        .zip(points)
        .map(|(&x, &(_, y))| (coeff_a * x + coeff_b - y).powi(2))
        .sum();
    Ok(FitResult {
        coeff_a,
        coeff_b,
        rms_residual: (sse / nf).sqrt(),
        n_points: n,
    })
}

/// Model coefficients of `T(V) = a * V^2 + b` for a mechanism and preload:
/// `a = eps0*eps_e*w*(exp(mu*kappa*s) - 1) / (2*d_e^2*kappa)`, `b = T0*exp(mu*kappa*s)`.
pub fn predicted_coefficients(mech: &MechanismSpec, preload: f64) -> Result<(f64, f64)> {
    if !(mech.helix.curvature() > 0.0) {
        return Err(Error::Domain("predicted coefficients need positive curvature".into()));
    }
    // The voltage term is exactly quadratic, so its value at 1 V is `a`.
    let unit = terminal_tension(mech, &DriveState::new(1.0, preload)?)?;
    Ok((unit.electro_term, preload * unit.capstan_gain))
}

#[cfg(test)]
mod tests {
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;
    use rand_distr::{Distribution, Normal};

    use super::*;
    use crate::electrostatics::DielectricStack;
    use crate::experiment::{REFERENCE_FIT_SLOPE, REFERENCE_VOLTAGES};
    use crate::geometry::HelixGeometry;

    fn fixture() -> MechanismSpec {
        let helix = HelixGeometry::new(0.004, 0.013, 7.854).unwrap();
        let stack = DielectricStack::new(3.6, 50e-6, 3.6, 50e-6, 0.007, 0.22).unwrap();
        MechanismSpec::new(helix, stack).unwrap()
    }

    fn reference_points(b: f64) -> Vec<(f64, f64)> {
        REFERENCE_VOLTAGES.iter().map(|&v| (v, REFERENCE_FIT_SLOPE * v * v + b)).collect()
    }

    #[test]
    fn exact_recovery() {
        let fit = fit_quadratic(&reference_points(0.902)).unwrap();
        assert!((fit.coeff_a - REFERENCE_FIT_SLOPE).abs() <= 1e-12 * REFERENCE_FIT_SLOPE);
        assert!((fit.coeff_b - 0.902).abs() <= 1e-12 * 0.902);
        assert!(fit.rms_residual <= 1e-10);
        assert_eq!(fit.n_points, 8);
        assert!((fit.eval(2000.0) - (REFERENCE_FIT_SLOPE * 4e6 + 0.902)).abs() < 1e-12);
    }

    #[test]
    fn constant_data() {
        let pts: Vec<_> = REFERENCE_VOLTAGES.iter().map(|&v| (v, 1.7)).collect();
        let fit = fit_quadratic(&pts).unwrap();
        assert!(fit.coeff_a.abs() < 1e-20);
        assert!((fit.coeff_b - 1.7).abs() < 1e-14);
    }

    #[test]
    fn rank_deficient_and_short_inputs() {
        assert!(fit_quadratic(&[(1000.0, 1.0), (1000.0, 2.0), (1000.0, 3.0)]).is_err());
        // +V and -V give the same V^2.
        assert!(fit_quadratic(&[(1000.0, 1.0), (-1000.0, 2.0), (1000.0, 3.0)]).is_err());
        assert!(fit_quadratic(&[(1000.0, 1.0), (2000.0, 2.0)]).is_err());
        assert!(fit_quadratic(&[(1000.0, 1.0), (2000.0, f64::NAN), (3000.0, 2.0)]).is_err());
    }

    #[test]
    fn noisy_recovery_in_expectation() {
        let noise = Normal::new(0.0, 0.05).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        let trials = 1000;
        let (mut sum_a, mut sum_b) = (0.0, 0.0);
        for _ in 0..trials {
            let pts: Vec<_> = reference_points(0.902)
                .into_iter()
                .map(|(v, f)| (v, f + noise.sample(&mut rng)))
                .collect();
            let fit = fit_quadratic(&pts).unwrap();
            sum_a += fit.coeff_a;
            sum_b += fit.coeff_b;
        }
        let (a, b) = (sum_a / trials as f64, sum_b / trials as f64);
        assert!((a / REFERENCE_FIT_SLOPE - 1.0).abs() < 0.02, "a = {a}");
        assert!((b / 0.902 - 1.0).abs() < 0.02, "b = {b}");
    }

    #[test]
    fn predicted_coefficients_fixture() {
        let m = fixture();
        let (a, b) = predicted_coefficients(&m, 0.24525).unwrap();
        assert!((a - 2.058_008_135_259_275e-7).abs() <= 1e-12 * a);
        assert!((b / 0.24525 - 4.640_053_375_910_303).abs() <= 1e-12 * 4.64);
        for v in REFERENCE_VOLTAGES {
            let t = terminal_tension(&m, &DriveState::new(v, 0.24525).unwrap())
                .unwrap()
                .terminal_tension;
            assert!((a * v * v + b - t).abs() <= 1e-12 * t);
        }
    }

    #[test]
    fn frictionless_has_no_voltage_term() {
        let mut m = fixture();
        m.stack.friction_mu = 0.0;
        let (a, b) = predicted_coefficients(&m, 0.5).unwrap();
        assert_eq!(a, 0.0);
        assert_eq!(b, 0.5);
    }

    #[test]
    fn back_solved_wrap_from_intercept() {
        let wrap = (0.902f64 / 0.24525).ln() / 0.22;
        assert!((wrap - 5.919_711_007_350_687).abs() < 1e-12);
    }
}
