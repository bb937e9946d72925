//! Modeling and identification of helically wound electrostatic layer
//! jamming.
//!
//! An electrode strip wound helically on a cylindrical core is pressed onto
//! a counter-electrode by electrostatic attraction. Friction along the wrap
//! compounds the tension exponentially in the winding angle, which is the
//! lever for voltage-controlled stiffness.
//!
//! * [`geometry`]: helix parametrisation, curvature, torsion, Frenet frame.
//! * [`electrostatics`]: two-film dielectric stack and electrostatic line load.
//! * [`tension`]: closed-form terminal tension, ODE cross-check, planar
//!   comparison and inverse design.
//! * [`finger`]: quasi-static variable-stiffness finger joint.
//! * [`experiment`]: sensor-log reduction and voltage-response fitting.

pub mod electrostatics;
pub mod error;
pub mod experiment;
pub mod finger;
pub mod geometry;
pub mod ode;
pub mod roots;
pub mod tension;

pub use electrostatics::DielectricStack;
pub use error::{Error, Result};
pub use geometry::{FrenetFrame, HelixGeometry};
pub use tension::{DriveState, MechanismSpec, TensionSolution};
