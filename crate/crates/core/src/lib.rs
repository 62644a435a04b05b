//! Planar angle measures and an exact decision procedure for when the three
//! pairwise turning angles of nonzero vectors `a`, `b`, `c` add up to a full
//! turn.
//!
//! The crate has two evaluation paths that are meant to be checked against
//! each other:
//!
//! * [`angle`] computes oriented, turning and usual angles in `f64`.
//! * [`exact`] classifies oriented angles against the boundary values `0` and
//!   `pi` using only signs of rational cross and dot products, and decides the
//!   full-turn condition without evaluating any transcendental function.
//!
//! [`triangle`] applies both to the interior angles of a triangle,
//! [`harness`] runs seeded float-vs-exact campaigns, and [`figure`] draws a
//! vector triple with its oriented-angle arcs as SVG.

pub mod angle;
pub mod cli;
pub mod exact;
pub mod figure;
pub mod harness;
pub mod rational;
pub mod triangle;

pub use angle::{
    oriented_angle, oriented_sum_multiple, turning_angle, turning_sum, usual_angle, AngleError,
    FloatVec2, Radians,
};
pub use exact::{
    classify_oriented, classify_triple, cross_q, dot_q, turning_sum_is_two_pi, ExactError,
    OrientedClass, RationalVec2, TripleAlternative,
};
pub use rational::Rational;

#[cfg(test)]
#[path = "../tests/common/oracle.rs"]
mod oracle;
