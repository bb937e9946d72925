mod common;

use helijam::tension::{
    integrate_tension_ode, planar_tension, terminal_tension, wrapped_tension, DEFAULT_ODE_TOL,
};
use helijam::DriveState;
use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use common::*;

fn tension(m: &helijam::MechanismSpec, v: f64, t0: f64) -> f64 {
    terminal_tension(m, &DriveState::new(v, t0).unwrap()).unwrap().terminal_tension
}

#[test]
fn closed_form_matches_ode() {
    let mut rng = ChaCha8Rng::seed_from_u64(11);
    for _ in 0..200 {
        let m = random_mechanism(&mut rng);
        let d = random_drive(&mut rng);
        let closed = terminal_tension(&m, &d).unwrap().terminal_tension;
        let ode = integrate_tension_ode(&m, &d, DEFAULT_ODE_TOL).unwrap();
        let rel = (closed - ode).abs() / closed.abs().max(f64::MIN_POSITIVE);
        assert!(closed == ode || rel <= 1e-8, "{m:?} {d:?}: {closed} vs {ode}");
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn increasing_in_each_driver(seed in any::<u64>(), bump in 1.01..2.0f64) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let mut m = random_mechanism(&mut rng);
        m.stack.friction_mu = m.stack.friction_mu.max(0.01);
        let d = random_drive(&mut rng);
        let (v, t0) = (d.voltage.max(1.0), d.preload.max(0.01));
        let base = tension(&m, v, t0);

        prop_assert!(tension(&m, v * bump, t0) > base);
        prop_assert!(tension(&m, v, t0 * bump) > base);
        let mut more_friction = m;
        more_friction.stack.friction_mu *= bump;
        prop_assert!(tension(&more_friction, v, t0) > base);
        let longer = m.with_total_angle(m.helix.total_angle * bump).unwrap();
        prop_assert!(tension(&longer, v, t0) > base);
    }

    #[test]
    fn voltage_term_independent_of_preload(seed in any::<u64>(), t0a in 0.0..5.0f64, t0b in 0.0..5.0f64) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let m = random_mechanism(&mut rng);
        let v = rand::Rng::gen_range(&mut rng, 100.0..4000.0);
        let da = tension(&m, v, t0a) - tension(&m, 0.0, t0a);
        let db = tension(&m, v, t0b) - tension(&m, 0.0, t0b);
        let electro = terminal_tension(&m, &DriveState::new(v, 0.0).unwrap()).unwrap().electro_term;
        // Differences of totals lose digits to the preload term; the
        // electro term itself is T0-free by construction.
        let floor = 1e-15 * tension(&m, v, t0a.max(t0b));
        prop_assert!((da - db).abs() <= 1e-12 * da.abs() + 4.0 * floor);
        prop_assert!((da - electro).abs() <= 1e-12 * electro + 4.0 * floor);
    }

    #[test]
    fn voltage_term_quadratic(seed in any::<u64>()) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let m = random_mechanism(&mut rng);
        let v = rand::Rng::gen_range(&mut rng, 10.0..2000.0);
        let e1 = terminal_tension(&m, &DriveState::new(v, 1.0).unwrap()).unwrap().electro_term;
        let e2 = terminal_tension(&m, &DriveState::new(2.0 * v, 1.0).unwrap()).unwrap().electro_term;
        prop_assert!((e2 - 4.0 * e1).abs() <= 1e-12 * e2);
    }

    #[test]
    fn solution_invariants(seed in any::<u64>()) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let m = random_mechanism(&mut rng);
        let d = random_drive(&mut rng);
        let sol = terminal_tension(&m, &d).unwrap();
        let recomposed = d.preload * sol.capstan_gain + sol.electro_term;
        prop_assert!((sol.terminal_tension - recomposed).abs() <= 1e-12 * sol.terminal_tension.max(1e-300));
        prop_assert!(sol.terminal_tension >= d.preload);
    }

    #[test]
    fn planar_continuity(seed in any::<u64>()) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let m = random_mechanism(&mut rng);
        let d = random_drive(&mut rng);
        let length = m.helix.arc_length();
        let q = m.stack.line_load(d.voltage).unwrap();
        let curved = wrapped_tension(1e-9, length, m.stack.friction_mu, q, d.preload).unwrap();
        let flat = planar_tension(&m.stack, length, &d).unwrap();
        prop_assert!((curved.terminal_tension - flat).abs() <= 1e-6 * curved.terminal_tension.max(1e-300));
    }
}
