//! Exact decision of the full-turn condition over rational coordinates.
//!
//! The sign of `cross(a, b)` is the sign of `sin(oa(a,b))` and the sign of
//! `dot(a, b)` is the sign of its cosine, so these two signs place the oriented
//! angle exactly in one of `{0}`, `(0, pi)`, `{pi}`, `(pi, 2*pi)`. The sum
//! `ta(a,b) + ta(b,c) + ta(c,a)` equals `2*pi` exactly when the three classes
//! satisfy one of two conditions:
//!
//! * alternative I: `0 < max(oa) <= pi`, i.e. no class above `pi` and not all
//!   three classes `Zero`;
//! * alternative II: `min(oa) >= pi`, i.e. every class is `Pi` or above.
//!
//! No ordering among the three angles is ever needed, only their position
//! relative to `0` and `pi`.

use std::cmp::Ordering;
use std::fmt;

use num_bigint::BigInt;
use num_traits::Zero;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::angle::FloatVec2;
use crate::rational::{self, Rational};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Error)]
pub enum ExactError {
    #[error("zero vector has no direction")]
    ZeroVector,
    /// Both alternatives held at once. The alternatives are mutually
    /// exclusive, so reaching this is a bug in the classifier.
    #[error("alternatives I and II both hold")]
    InternalContradiction,
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct RationalVec2 {
    pub x: Rational,
    pub y: Rational,
}

impl RationalVec2 {
    pub fn new(x: Rational, y: Rational) -> Self {
        RationalVec2 { x, y }
    }

    pub fn from_ints(x: i64, y: i64) -> Self {
        RationalVec2::new(rational::int(x), rational::int(y))
    }

    /// Exact image of a finite float vector.
    pub fn from_float(v: &FloatVec2) -> Option<Self> {
        Some(RationalVec2::new(
            rational::from_f64(v.x)?,
            rational::from_f64(v.y)?,
        ))
    }

    /// Nearest float vector, coordinate by coordinate.
    pub fn to_float(&self) -> FloatVec2 {
        FloatVec2::new(rational::to_f64(&self.x), rational::to_f64(&self.y))
    }

    pub fn is_zero(&self) -> bool {
        self.x.is_zero() && self.y.is_zero()
    }

    pub fn add(&self, other: &RationalVec2) -> RationalVec2 {
        RationalVec2::new(&self.x + &other.x, &self.y + &other.y)
    }

    pub fn sub(&self, other: &RationalVec2) -> RationalVec2 {
        RationalVec2::new(&self.x - &other.x, &self.y - &other.y)
    }

    pub fn neg(&self) -> RationalVec2 {
        RationalVec2::new(-&self.x, -&self.y)
    }

    pub fn scale(&self, s: &Rational) -> RationalVec2 {
        RationalVec2::new(&self.x * s, &self.y * s)
    }

    /// Multiply by the complex number `cos + i sin`. A rotation when
    /// `cos^2 + sin^2 = 1`.
    pub fn rotate(&self, cos: &Rational, sin: &Rational) -> RationalVec2 {
        RationalVec2::new(&self.x * cos - &self.y * sin, &self.x * sin + &self.y * cos)
    }

    /// Quarter turn counterclockwise.
    pub fn perp(&self) -> RationalVec2 {
        RationalVec2::new(-&self.y, self.x.clone())
    }

    /// Coordinates as `["x", "y"]` rational strings.
    pub fn to_strings(&self) -> [String; 2] {
        [
            rational::format_rational(&self.x),
            rational::format_rational(&self.y),
        ]
    }
}

impl fmt::Display for RationalVec2 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let [x, y] = self.to_strings();
        write!(f, "{x},{y}")
    }
}

/// `a.x * b.y - a.y * b.x`, exactly.
pub fn cross_q(a: &RationalVec2, b: &RationalVec2) -> Rational {
    &a.x * &b.y - &a.y * &b.x
}

/// `a.x * b.x + a.y * b.y`, exactly.
pub fn dot_q(a: &RationalVec2, b: &RationalVec2) -> Rational {
    &a.x * &b.x + &a.y * &b.y
}

/// Sign of `n1/d1 * n2/d2 + s * n3/d3 * n4/d4` using integers only.
/// Denominators are positive, so clearing them keeps the sign.
fn sign_of_products(
    p: (&Rational, &Rational),
    q: (&Rational, &Rational),
    negate_q: bool,
) -> Ordering {
    let lhs: BigInt = p.0.numer() * p.1.numer() * q.0.denom() * q.1.denom();
    let rhs: BigInt = q.0.numer() * q.1.numer() * p.0.denom() * p.1.denom();
    if negate_q {
        lhs.cmp(&rhs)
    } else {
        lhs.cmp(&-rhs)
    }
}

/// Sign of `cross_q(a, b)` without building the rational result.
pub fn cross_sign(a: &RationalVec2, b: &RationalVec2) -> Ordering {
    sign_of_products((&a.x, &b.y), (&a.y, &b.x), true)
}

/// Sign of `dot_q(a, b)` without building the rational result.
pub fn dot_sign(a: &RationalVec2, b: &RationalVec2) -> Ordering {
    sign_of_products((&a.x, &b.x), (&a.y, &b.y), false)
}

/// Exact position of an oriented angle relative to `0` and `pi`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum OrientedClass {
    Zero,
    Open0Pi,
    Pi,
    OpenPi2Pi,
}

impl OrientedClass {
    /// Class of the reversed pair: `oa(b,a) = 2*pi - oa(a,b)` unless zero.
    pub fn mirror(self) -> OrientedClass {
        match self {
            OrientedClass::Zero => OrientedClass::Zero,
            OrientedClass::Open0Pi => OrientedClass::OpenPi2Pi,
            OrientedClass::Pi => OrientedClass::Pi,
            OrientedClass::OpenPi2Pi => OrientedClass::Open0Pi,
        }
    }

    /// True for `Zero` and `Pi`, the boundary values of the alternatives.
    pub fn is_boundary(self) -> bool {
        matches!(self, OrientedClass::Zero | OrientedClass::Pi)
    }

    fn from_signs(cross: Ordering, dot: Ordering) -> Option<OrientedClass> {
        match (cross, dot) {
            (Ordering::Greater, _) => Some(OrientedClass::Open0Pi),
            (Ordering::Less, _) => Some(OrientedClass::OpenPi2Pi),
            (Ordering::Equal, Ordering::Greater) => Some(OrientedClass::Zero),
            (Ordering::Equal, Ordering::Less) => Some(OrientedClass::Pi),
            (Ordering::Equal, Ordering::Equal) => None,
        }
    }
}

impl fmt::Display for OrientedClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Debug::fmt(self, f)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum TripleAlternative {
    AlternativeI,
    AlternativeII,
    Neither,
}

impl fmt::Display for TripleAlternative {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Debug::fmt(self, f)
    }
}

pub fn classify_oriented(a: &RationalVec2, b: &RationalVec2) -> Result<OrientedClass, ExactError> {
    if a.is_zero() || b.is_zero() {
        return Err(ExactError::ZeroVector);
    }
    // cross = dot = 0 forces a or b to be zero, excluded above
    Ok(OrientedClass::from_signs(cross_sign(a, b), dot_sign(a, b))
        .expect("nonzero vectors cannot be both parallel and orthogonal"))
}

/// Classes of `oa(a,b)`, `oa(b,c)`, `oa(c,a)` in that order.
pub fn classify_pairs(
    a: &RationalVec2,
    b: &RationalVec2,
    c: &RationalVec2,
) -> Result<[OrientedClass; 3], ExactError> {
    Ok([
        classify_oriented(a, b)?,
        classify_oriented(b, c)?,
        classify_oriented(c, a)?,
    ])
}

/// The defining conditions of alternatives I and II, evaluated independently.
pub fn alternative_conditions(classes: &[OrientedClass; 3]) -> (bool, bool) {
    let max_at_most_pi = classes.iter().all(|&k| k != OrientedClass::OpenPi2Pi);
    let max_positive = classes.iter().any(|&k| k != OrientedClass::Zero);
    let min_at_least_pi = classes
        .iter()
        .all(|&k| matches!(k, OrientedClass::Pi | OrientedClass::OpenPi2Pi));
    (max_at_most_pi && max_positive, min_at_least_pi)
}

pub fn alternative_of(classes: &[OrientedClass; 3]) -> Result<TripleAlternative, ExactError> {
    match alternative_conditions(classes) {
        (true, true) => Err(ExactError::InternalContradiction),
        (true, false) => Ok(TripleAlternative::AlternativeI),
        (false, true) => Ok(TripleAlternative::AlternativeII),
        (false, false) => Ok(TripleAlternative::Neither),
    }
}

pub fn classify_triple(
    a: &RationalVec2,
    b: &RationalVec2,
    c: &RationalVec2,
) -> Result<TripleAlternative, ExactError> {
    alternative_of(&classify_pairs(a, b, c)?)
}

/// Exact answer to whether `ta(a,b) + ta(b,c) + ta(c,a) = 2*pi`.
pub fn turning_sum_is_two_pi(
    a: &RationalVec2,
    b: &RationalVec2,
    c: &RationalVec2,
) -> Result<bool, ExactError> {
    Ok(classify_triple(a, b, c)? != TripleAlternative::Neither)
}
