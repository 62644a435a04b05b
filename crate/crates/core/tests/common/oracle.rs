//! High-precision angle oracle used only by tests.
//!
//! Angles are evaluated with Euler's arctangent series over exact rationals,
//! with no use of the platform's libm, and rounded to `f64` only at the end.

#![allow(dead_code)]

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

const TERMS: usize = 140;

fn q(n: i64, d: i64) -> BigRational {
    BigRational::new(BigInt::from(n), BigInt::from(d))
}

/// atan(x) for 0 <= x <= 1 via
/// atan(x) = sum_n 2^(2n) (n!)^2 / (2n+1)! * x^(2n+1) / (1+x^2)^(n+1).
/// The ratio between terms is at most 1/2, so 140 terms leave < 2^-140 error.
fn atan_unit(x: &BigRational) -> BigRational {
    let y = x * x / (BigRational::one() + x * x);
    let mut term = x / (BigRational::one() + x * x);
    let mut sum = term.clone();
    for n in 1..TERMS {
        let n = n as i64;
        term = term * &y * q(2 * n, 2 * n + 1);
        // keep the rationals small; truncation error stays far below f64 resolution
        term = truncate(&term);
        sum += &term;
    }
    truncate(&sum)
}

fn truncate(x: &BigRational) -> BigRational {
    let scale = BigInt::one() << 200u32;
    let n = (x.numer() * &scale) / x.denom();
    BigRational::new(n, scale)
}

pub fn pi() -> BigRational {
    // Machin: pi = 16 atan(1/5) - 4 atan(1/239)
    q(16, 1) * atan_unit(&q(1, 5)) - q(4, 1) * atan_unit(&q(1, 239))
}

/// Angle of the point (x, y) in [0, 2*pi), exactly as a rational approximation.
pub fn atan2_unit_range(y: &BigRational, x: &BigRational) -> BigRational {
    assert!(!(x.is_zero() && y.is_zero()));
    let pi = pi();
    let half_pi = &pi / q(2, 1);
    // angle in the first quadrant of (|x|, |y|)
    let ax = x.abs();
    let ay = y.abs();
    let base = if ax.is_zero() {
        half_pi.clone()
    } else if ay <= ax {
        atan_unit(&(&ay / &ax))
    } else {
        &half_pi - atan_unit(&(&ax / &ay))
    };
    let two_pi = &pi * q(2, 1);
    match (x.is_negative(), y.is_negative()) {
        (false, false) => base,
        (true, false) => &pi - base,
        (true, true) => &pi + base,
        (false, true) => {
            if base.is_zero() {
                base
            } else {
                two_pi - base
            }
        }
    }
}

/// Oriented angle from a to b, i.e. the argument of b/a in [0, 2*pi).
pub fn oriented(a: (i64, i64), b: (i64, i64)) -> f64 {
    oriented_q(a, b).to_f64().unwrap()
}

pub fn oriented_q(a: (i64, i64), b: (i64, i64)) -> BigRational {
    let cross = q(a.0 * b.1 - a.1 * b.0, 1);
    let dot = q(a.0 * b.0 + a.1 * b.1, 1);
    atan2_unit_range(&cross, &dot)
}

pub fn turning_q(a: (i64, i64), b: (i64, i64)) -> BigRational {
    let t = oriented_q(a, b);
    let other = pi() * q(2, 1) - &t;
    if t <= other {
        t
    } else {
        other
    }
}

pub fn turning(a: (i64, i64), b: (i64, i64)) -> f64 {
    turning_q(a, b).to_f64().unwrap()
}

/// Turning-angle sum ta(a,b) + ta(b,c) + ta(c,a), summed exactly before rounding.
pub fn turning_sum(a: (i64, i64), b: (i64, i64), c: (i64, i64)) -> f64 {
    (turning_q(a, b) + turning_q(b, c) + turning_q(c, a))
        .to_f64()
        .unwrap()
}

/// Cyclic oriented sum divided by 2*pi, as a float.
pub fn oriented_sum_over_two_pi(a: (i64, i64), b: (i64, i64), c: (i64, i64)) -> f64 {
    let s = oriented_q(a, b) + oriented_q(b, c) + oriented_q(c, a);
    (s / (pi() * q(2, 1))).to_f64().unwrap()
}

/// Interior angles of a triangle with integer vertices (usual angle == turning angle).
pub fn interior(p: [(i64, i64); 3]) -> [f64; 3] {
    let mut out = [0.0; 3];
    for i in 0..3 {
        let prev = p[(i + 2) % 3];
        let cur = p[i];
        let next = p[(i + 1) % 3];
        let u = (prev.0 - cur.0, prev.1 - cur.1);
        let v = (next.0 - cur.0, next.1 - cur.1);
        out[i] = turning(u, v);
    }
    out
}

pub fn interior_sum_q(p: [(i64, i64); 3]) -> BigRational {
    let mut s = BigRational::zero();
    for i in 0..3 {
        let prev = p[(i + 2) % 3];
        let cur = p[i];
        let next = p[(i + 1) % 3];
        s += turning_q(
            (prev.0 - cur.0, prev.1 - cur.1),
            (next.0 - cur.0, next.1 - cur.1),
        );
    }
    s
}
