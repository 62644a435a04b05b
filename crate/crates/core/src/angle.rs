//! Floating-point oriented, turning and usual angles.
//!
//! Every operation first rescales each argument by an exact power of two so
//! that its largest coordinate lies in `[1, 2)`. Angle measures are invariant
//! under positive scaling, and the rescaling keeps cross and dot products
//! clear of overflow and underflow for any finite input.

use std::cmp::Ordering;
use std::f64::consts::{PI, TAU};
use std::fmt;

use serde::{Deserialize, Serialize};
use thiserror::Error;

/// Generic tolerance, in radians, for comparing float angle values.
pub const DEFAULT_TOL: f64 = 1e-9;

/// Largest accepted distance between the cyclic oriented sum and `2*pi*k`.
pub const RESIDUAL_TOL: f64 = 1e-6;

#[derive(Debug, Clone, Copy, PartialEq, Error)]
pub enum AngleError {
    #[error("zero vector has no direction")]
    ZeroVector,
    #[error("vector coordinate is not finite")]
    NonFinite,
    #[error("oriented sum {sum} is {residual} away from 2*pi*{multiple}")]
    ResidualTooLarge {
        sum: f64,
        multiple: i64,
        residual: f64,
    },
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct FloatVec2 {
    pub x: f64,
    pub y: f64,
}

impl FloatVec2 {
    pub const fn new(x: f64, y: f64) -> Self {
        FloatVec2 { x, y }
    }

    pub fn is_zero(&self) -> bool {
        self.x == 0.0 && self.y == 0.0
    }

    pub fn is_finite(&self) -> bool {
        self.x.is_finite() && self.y.is_finite()
    }

    pub fn scale(&self, s: f64) -> Self {
        FloatVec2::new(self.x * s, self.y * s)
    }

    pub fn sub(&self, other: &FloatVec2) -> Self {
        FloatVec2::new(self.x - other.x, self.y - other.y)
    }

    /// Counterclockwise rotation by `angle` radians.
    pub fn rotate(&self, angle: f64) -> Self {
        let (s, c) = angle.sin_cos();
        FloatVec2::new(c * self.x - s * self.y, s * self.x + c * self.y)
    }

    pub fn length(&self) -> f64 {
        self.x.hypot(self.y)
    }

    /// Lexicographic order on `(x, y)` under IEEE total ordering.
    fn lex_cmp(&self, other: &FloatVec2) -> Ordering {
        self.x
            .total_cmp(&other.x)
            .then_with(|| self.y.total_cmp(&other.y))
    }

    fn validate(&self) -> Result<(), AngleError> {
        if !self.is_finite() {
            Err(AngleError::NonFinite)
        } else if self.is_zero() {
            Err(AngleError::ZeroVector)
        } else {
            Ok(())
        }
    }
}

impl From<(f64, f64)> for FloatVec2 {
    fn from((x, y): (f64, f64)) -> Self {
        FloatVec2::new(x, y)
    }
}

impl fmt::Display for FloatVec2 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, {})", self.x, self.y)
    }
}

/// An angle value in radians.
///
/// Oriented angles lie in `[0, 2*pi)`, turning and usual angles in `[0, pi]`,
/// and turning sums in `[0, 3*pi]`.
#[derive(Debug, Clone, Copy, PartialEq, PartialOrd, Serialize, Deserialize)]
#[serde(transparent)]
pub struct Radians(pub f64);

impl Radians {
    pub fn value(self) -> f64 {
        self.0
    }

    pub fn over_pi(self) -> f64 {
        self.0 / PI
    }
}

impl fmt::Display for Radians {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

/// 2^k for k in the normal exponent range.
fn pow2(k: i32) -> f64 {
    debug_assert!((-1022..=1023).contains(&k));
    f64::from_bits(((k + 1023) as u64) << 52)
}

/// Binary exponent `e` with `2^e <= m < 2^(e+1)`, for finite `m > 0`.
fn binary_exponent(m: f64) -> i32 {
    let biased = ((m.to_bits() >> 52) & 0x7ff) as i32;
    if biased == 0 {
        binary_exponent(m * pow2(54)) - 54
    } else {
        biased - 1023
    }
}

/// Rescale by a power of two so the largest coordinate magnitude is in [1, 2).
fn normalized(v: &FloatVec2) -> FloatVec2 {
    let e = binary_exponent(v.x.abs().max(v.y.abs()));
    let n = -e;
    let h = n / 2;
    let (s1, s2) = (pow2(h), pow2(n - h));
    FloatVec2::new(v.x * s1 * s2, v.y * s1 * s2)
}

/// Map a two-argument arctangent result from `[-pi, pi]` onto `[0, 2*pi)`.
fn wrap_unit_turn(t: f64) -> f64 {
    if t == 0.0 {
        // also folds -0.0
        0.0
    } else if t < 0.0 {
        let w = t + TAU;
        if w >= TAU {
            0.0
        } else {
            w
        }
    } else {
        t
    }
}

fn oriented_unchecked(a: &FloatVec2, b: &FloatVec2) -> f64 {
    let a = normalized(a);
    let b = normalized(b);
    let cross = a.x * b.y - a.y * b.x;
    let dot = a.x * b.x + a.y * b.y;
    wrap_unit_turn(cross.atan2(dot))
}

/// Argument of `b / a` in `[0, 2*pi)`, measured counterclockwise from `a`.
pub fn oriented_angle(a: &FloatVec2, b: &FloatVec2) -> Result<Radians, AngleError> {
    a.validate()?;
    b.validate()?;
    Ok(Radians(oriented_unchecked(a, b)))
}

/// `min(theta, 2*pi - theta)` for the oriented angle `theta` from `a` to `b`.
///
/// The oriented angle is always taken from the lexicographically smaller
/// argument, so `turning_angle(a, b)` and `turning_angle(b, a)` are bit-equal.
pub fn turning_angle(a: &FloatVec2, b: &FloatVec2) -> Result<Radians, AngleError> {
    a.validate()?;
    b.validate()?;
    let theta = match a.lex_cmp(b) {
        Ordering::Greater => oriented_unchecked(b, a),
        _ => oriented_unchecked(a, b),
    };
    Ok(Radians(theta.min(TAU - theta)))
}

/// Unevaluated sum `hi + lo` carrying about 106 significant bits.
#[derive(Clone, Copy)]
struct DoubleDouble {
    hi: f64,
    lo: f64,
}

impl DoubleDouble {
    fn two_sum(a: f64, b: f64) -> DoubleDouble {
        let s = a + b;
        let bb = s - a;
        DoubleDouble {
            hi: s,
            lo: (a - (s - bb)) + (b - bb),
        }
    }

    fn renormalize(hi: f64, lo: f64) -> DoubleDouble {
        let s = hi + lo;
        DoubleDouble {
            hi: s,
            lo: lo - (s - hi),
        }
    }

    /// `p * q + r * s`.
    fn dot2(p: f64, q: f64, r: f64, s: f64) -> DoubleDouble {
        let m1 = p * q;
        let e1 = p.mul_add(q, -m1);
        let m2 = r * s;
        let e2 = r.mul_add(s, -m2);
        let sum = DoubleDouble::two_sum(m1, m2);
        DoubleDouble::renormalize(sum.hi, sum.lo + e1 + e2)
    }

    fn mul(self, o: DoubleDouble) -> DoubleDouble {
        let p = self.hi * o.hi;
        let e = self.hi.mul_add(o.hi, -p);
        DoubleDouble::renormalize(p, e + self.hi * o.lo + self.lo * o.hi)
    }

    /// `self / o` rounded to `f64`, with one correction step.
    fn div_to_f64(self, o: DoubleDouble) -> f64 {
        let q1 = self.hi / o.hi;
        let prod = o.mul(DoubleDouble { hi: q1, lo: 0.0 });
        let rem = (self.hi - prod.hi) - prod.lo + self.lo;
        q1 + rem / o.hi
    }
}

/// `arccos(a.b / (|a| |b|))`, with the ratio clamped to `[-1, 1]`.
///
/// The ratio is evaluated as `sign(a.b) * sqrt((a.b)^2 / (|a|^2 |b|^2))` in
/// double-double arithmetic, so exactly parallel or antiparallel inputs give
/// a ratio of exactly `+-1` and an angle of exactly `0` or `pi`.
pub fn usual_angle(a: &FloatVec2, b: &FloatVec2) -> Result<Radians, AngleError> {
    a.validate()?;
    b.validate()?;
    let a = normalized(a);
    let b = normalized(b);
    let dot = DoubleDouble::dot2(a.x, b.x, a.y, b.y);
    let norms = DoubleDouble::dot2(a.x, a.x, a.y, a.y).mul(DoubleDouble::dot2(b.x, b.x, b.y, b.y));
    let cos_squared = dot.mul(dot).div_to_f64(norms);
    let ratio = (cos_squared.sqrt().copysign(dot.hi)).clamp(-1.0, 1.0);
    Ok(Radians(ratio.acos()))
}

/// `ta(a,b) + ta(b,c) + ta(c,a)`, a value in `[0, 3*pi]`.
pub fn turning_sum(a: &FloatVec2, b: &FloatVec2, c: &FloatVec2) -> Result<Radians, AngleError> {
    let ab = turning_angle(a, b)?;
    let bc = turning_angle(b, c)?;
    let ca = turning_angle(c, a)?;
    Ok(Radians(ab.0 + bc.0 + ca.0))
}

/// The integer `k` with `oa(a,b) + oa(b,c) + oa(c,a) = 2*pi*k`.
///
/// Only `k` in `{0, 1, 2}` is possible. A float sum that does not round onto
/// one of those within [`RESIDUAL_TOL`] is reported as
/// [`AngleError::ResidualTooLarge`].
pub fn oriented_sum_multiple(
    a: &FloatVec2,
    b: &FloatVec2,
    c: &FloatVec2,
) -> Result<u8, AngleError> {
    let sum = oriented_angle(a, b)?.0 + oriented_angle(b, c)?.0 + oriented_angle(c, a)?.0;
    let k = (sum / TAU).round();
    let residual = (sum - TAU * k).abs();
    if residual > RESIDUAL_TOL || !(0.0..=2.0).contains(&k) {
        return Err(AngleError::ResidualTooLarge {
            sum,
            multiple: k as i64,
            residual,
        });
    }
    Ok(k as u8)
}


#[cfg(test)]
mod proptests {
    use super::*;
    use proptest::prelude::*;

    fn vec2() -> impl Strategy<Value = FloatVec2> {
        (-1e3..1e3f64, -1e3..1e3f64)
            .prop_filter("nonzero", |(x, y)| *x != 0.0 || *y != 0.0)
            .prop_map(|(x, y)| FloatVec2::new(x, y))
    }

    fn angle_diff(a: f64, b: f64) -> f64 {
        // distance on the circle, so 0 and 2*pi - tiny compare as close
        let d = (a - b).abs();
        d.min(TAU - d)
    }

    proptest! {
        #[test]
        fn ranges(a in vec2(), b in vec2()) {
            let o = oriented_angle(&a, &b).unwrap().0;
            prop_assert!((0.0..TAU).contains(&o));
            let t = turning_angle(&a, &b).unwrap().0;
            prop_assert!((0.0..=PI).contains(&t));
            let u = usual_angle(&a, &b).unwrap().0;
            prop_assert!((0.0..=PI).contains(&u));
        }

        #[test]
        fn positive_scale_invariance(a in vec2(), b in vec2(), l in 1e-6..1e6f64, m in 1e-6..1e6f64) {
            let (sa, sb) = (a.scale(l), b.scale(m));
            prop_assert!(angle_diff(oriented_angle(&a, &b).unwrap().0, oriented_angle(&sa, &sb).unwrap().0) <= DEFAULT_TOL);
            prop_assert!((turning_angle(&a, &b).unwrap().0 - turning_angle(&sa, &sb).unwrap().0).abs() <= DEFAULT_TOL);
            prop_assert!((usual_angle(&a, &b).unwrap().0 - usual_angle(&sa, &sb).unwrap().0).abs() <= 1e-7);
        }

        #[test]
        fn rotation_invariance(a in vec2(), b in vec2(), r in -10.0..10.0f64) {
            let (ra, rb) = (a.rotate(r), b.rotate(r));
            prop_assert!(angle_diff(oriented_angle(&a, &b).unwrap().0, oriented_angle(&ra, &rb).unwrap().0) <= DEFAULT_TOL);
            prop_assert!((turning_angle(&a, &b).unwrap().0 - turning_angle(&ra, &rb).unwrap().0).abs() <= DEFAULT_TOL);
        }

        #[test]
        fn oriented_sum_is_a_small_multiple(a in vec2(), b in vec2(), c in vec2()) {
            let k = oriented_sum_multiple(&a, &b, &c).unwrap();
            prop_assert!(k <= 2);
        }
    }
}
