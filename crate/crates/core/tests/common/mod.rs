//! Finite-difference and sampling oracles shared by the integration tests.
#![allow(dead_code)]

use std::f64::consts::PI;

use helijam::geometry::Vec3;
use helijam::{DielectricStack, DriveState, HelixGeometry, MechanismSpec};
use rand::Rng;

/// Step for the Serret-Frenet derivative checks, rad.
pub const FRENET_STEP: f64 = 1e-7;

pub fn random_helix<R: Rng>(rng: &mut R) -> HelixGeometry {
    let radius = rng.gen_range(0.001..0.020);
    let pitch = if rng.gen_bool(0.05) { 0.0 } else { rng.gen_range(0.0..0.050) };
    let total = rng.gen_range(PI / 2.0..4.0 * PI);
    HelixGeometry::new(radius, pitch, total).unwrap()
}

/// Random mechanism over the property-test ranges. The electrode width is
/// drawn below the pitch so the mechanism stays admissible; `H = 0` uses the
/// circular limit.
pub fn random_mechanism<R: Rng>(rng: &mut R) -> MechanismSpec {
    let helix = random_helix(rng);
    let width = if helix.pitch > 0.0 {
        helix.pitch * rng.gen_range(0.05..0.95)
    } else {
        rng.gen_range(0.002..0.010)
    };
    let stack = DielectricStack::new(
        rng.gen_range(1.0..8.0),
        rng.gen_range(10e-6..200e-6),
        rng.gen_range(1.0..8.0),
        rng.gen_range(10e-6..200e-6),
        width,
        rng.gen_range(0.0..0.6),
    )
    .unwrap();
    MechanismSpec::circular_limit(helix, stack).unwrap()
}

pub fn random_drive<R: Rng>(rng: &mut R) -> DriveState {
    DriveState::new(rng.gen_range(0.0..4000.0), rng.gen_range(0.0..5.0)).unwrap()
}

fn pos(h: &HelixGeometry, phi: f64) -> Vec3 {
    h.position(phi).unwrap()
}

/// Derivatives r', r'', r''' with respect to phi from fourth-order central
/// stencils on `position`.
pub fn curve_derivatives(h: &HelixGeometry, phi: f64, step: f64) -> (Vec3, Vec3, Vec3) {
    let p = |k: f64| pos(h, phi + k * step);
    let d1 = (p(-2.0) - p(-1.0) * 8.0 + p(1.0) * 8.0 - p(2.0)) / (12.0 * step);
    let d2 = (-p(-2.0) + p(-1.0) * 16.0 - pos(h, phi) * 30.0 + p(1.0) * 16.0 - p(2.0))
        / (12.0 * step * step);
    let d3 = (p(-3.0) - p(-2.0) * 8.0 + p(-1.0) * 13.0 - p(1.0) * 13.0 + p(2.0) * 8.0 - p(3.0))
        / (8.0 * step * step * step);
    (d1, d2, d3)
}

/// Curvature `|r' x r''| / |r'|^3` and torsion `(r' x r'') . r''' / |r' x r''|^2`
/// evaluated on finite-difference derivatives.
pub fn fd_curvature_torsion(h: &HelixGeometry, phi: f64) -> (f64, f64) {
    let (d1, d2, _) = curve_derivatives(h, phi, 1e-3);
    let (_, _, d3) = curve_derivatives(h, phi, 1e-2);
    let cross = d1.cross(&d2);
    let kappa = cross.norm() / d1.norm().powi(3);
    let tau = cross.dot(&d3) / cross.norm_squared();
    (kappa, tau)
}

/// Largest of the three Serret-Frenet residuals at `phi`, each measured
/// against `sqrt(kappa^2 + tau^2) = 1/a`, the magnitude of the frame's
/// angular velocity per unit arc length.
pub fn frenet_residual(h: &HelixGeometry, phi: f64) -> f64 {
    let a = h.helix_constant();
    let ds = 2.0 * FRENET_STEP * a;
    let fwd = h.frenet_frame(phi + FRENET_STEP).unwrap();
    let back = h.frenet_frame(phi - FRENET_STEP).unwrap();
    let here = h.frenet_frame(phi).unwrap();
    let (kappa, tau) = (h.curvature(), h.torsion());

    let dt = (fwd.tangent - back.tangent) / ds;
    let dn = (fwd.normal - back.normal) / ds;
    let db = (fwd.binormal - back.binormal) / ds;
    let r1 = (dt - here.normal * kappa).norm();
    let r2 = (dn - (here.binormal * tau - here.tangent * kappa)).norm();
    let r3 = (db + here.normal * tau).norm();
    r1.max(r2).max(r3) * a
}

/// Largest deviation from orthonormality of the frame at `phi`.
pub fn orthonormality_error(h: &HelixGeometry, phi: f64) -> f64 {
    let f = h.frenet_frame(phi).unwrap();
    let (t, n, b) = (f.tangent, f.normal, f.binormal);
    [
        (t.norm() - 1.0).abs(),
        (n.norm() - 1.0).abs(),
        (b.norm() - 1.0).abs(),
        t.dot(&n).abs(),
        t.dot(&b).abs(),
        n.dot(&b).abs(),
    ]
    .into_iter()
    .fold(0.0, f64::max)
}

/// Interior angle for finite-difference stencils.
pub fn interior_angle<R: Rng>(rng: &mut R, h: &HelixGeometry) -> f64 {
    rng.gen_range(0.05..h.total_angle - 0.05)
}
