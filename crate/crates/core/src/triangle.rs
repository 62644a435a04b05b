//! Interior angles of a triangle and the exact side-vector identities behind
//! their sum.
//!
//! For pairwise distinct vertices `p0, p1, p2` the interior angle at `p_i` is
//! the usual angle between `p_{i-1} - p_i` and `p_{i+1} - p_i`, with indices
//! taken mod 3. Collinear but distinct vertices are accepted and give the
//! degenerate angle set `(0, pi, 0)` up to ordering.

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::angle::{usual_angle, AngleError, FloatVec2, Radians};
use crate::exact::{cross_q, RationalVec2};
use crate::rational::Rational;

/// Tolerance for the angle sum on generic triangles.
pub const SUM_TOL: f64 = 1e-9;

/// Tolerance for the angle sum on near-collinear triangles, where arccos
/// is evaluated close to +-1.
pub const NEAR_COLLINEAR_TOL: f64 = 1e-7;

pub type Point2 = FloatVec2;
pub type RationalPoint2 = RationalVec2;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Error)]
pub enum TriangleError {
    #[error("triangle vertices must be pairwise distinct")]
    DuplicatePoints,
    #[error("side vectors do not sum to zero")]
    NotClosed,
    #[error("zero vector in a closed triple")]
    ZeroVector,
    #[error("vertex coordinate is not finite")]
    NonFinite,
}

impl From<AngleError> for TriangleError {
    fn from(e: AngleError) -> Self {
        match e {
            AngleError::NonFinite => TriangleError::NonFinite,
            // distinct finite floats always have a nonzero difference
            AngleError::ZeroVector | AngleError::ResidualTooLarge { .. } => {
                TriangleError::DuplicatePoints
            }
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct TriangleAngles {
    pub alpha0: Radians,
    pub alpha1: Radians,
    pub alpha2: Radians,
}

impl TriangleAngles {
    pub fn as_array(&self) -> [f64; 3] {
        [self.alpha0.0, self.alpha1.0, self.alpha2.0]
    }

    pub fn sum(&self) -> Radians {
        Radians(self.alpha0.0 + self.alpha1.0 + self.alpha2.0)
    }
}

fn check_distinct<T: PartialEq>(p0: &T, p1: &T, p2: &T) -> Result<(), TriangleError> {
    if p0 == p1 || p1 == p2 || p2 == p0 {
        Err(TriangleError::DuplicatePoints)
    } else {
        Ok(())
    }
}

/// `(p1 - p0, p2 - p1, c)` with `c = -(a + b)`, so that `(a + b) + c` is
/// exactly zero in floating point.
pub fn side_vectors(
    p0: &Point2,
    p1: &Point2,
    p2: &Point2,
) -> Result<[FloatVec2; 3], TriangleError> {
    if !(p0.is_finite() && p1.is_finite() && p2.is_finite()) {
        return Err(TriangleError::NonFinite);
    }
    check_distinct(p0, p1, p2)?;
    let a = p1.sub(p0);
    let b = p2.sub(p1);
    let c = FloatVec2::new(-(a.x + b.x), -(a.y + b.y));
    if c.is_zero() {
        // p2 and p0 differ but the rounded sides cancel
        return Err(TriangleError::DuplicatePoints);
    }
    Ok([a, b, c])
}

/// `(p1 - p0, p2 - p1, p0 - p2)`, summing to zero exactly.
pub fn side_vectors_exact(
    p0: &RationalPoint2,
    p1: &RationalPoint2,
    p2: &RationalPoint2,
) -> Result<[RationalVec2; 3], TriangleError> {
    check_distinct(p0, p1, p2)?;
    Ok([p1.sub(p0), p2.sub(p1), p0.sub(p2)])
}

pub fn interior_angles(
    p0: &Point2,
    p1: &Point2,
    p2: &Point2,
) -> Result<TriangleAngles, TriangleError> {
    if !(p0.is_finite() && p1.is_finite() && p2.is_finite()) {
        return Err(TriangleError::NonFinite);
    }
    check_distinct(p0, p1, p2)?;
    let p = [p0, p1, p2];
    let mut alpha = [Radians(0.0); 3];
    for (i, slot) in alpha.iter_mut().enumerate() {
        let prev = p[(i + 2) % 3];
        let next = p[(i + 1) % 3];
        *slot = usual_angle(&prev.sub(p[i]), &next.sub(p[i]))?;
    }
    Ok(TriangleAngles {
        alpha0: alpha[0],
        alpha1: alpha[1],
        alpha2: alpha[2],
    })
}

pub fn triangle_angle_sum(p0: &Point2, p1: &Point2, p2: &Point2) -> Result<Radians, TriangleError> {
    Ok(interior_angles(p0, p1, p2)?.sum())
}

/// The common value of `cross(a,b)`, `cross(b,c)`, `cross(c,a)` for a closed
/// triple, or `None` if they differ. The common value is twice the signed
/// area of the triangle with these sides.
pub fn closed_cross(
    a: &RationalVec2,
    b: &RationalVec2,
    c: &RationalVec2,
) -> Result<Option<Rational>, TriangleError> {
    if !a.add(b).add(c).is_zero() {
        return Err(TriangleError::NotClosed);
    }
    if a.is_zero() || b.is_zero() || c.is_zero() {
        return Err(TriangleError::ZeroVector);
    }
    let ab = cross_q(a, b);
    let equal = ab == cross_q(b, c) && ab == cross_q(c, a);
    Ok(equal.then_some(ab))
}

/// Whether `cross(a,b) = cross(b,c) = cross(c,a)` holds exactly for a closed
/// triple. True for every valid input.
pub fn equal_cross_check(
    a: &RationalVec2,
    b: &RationalVec2,
    c: &RationalVec2,
) -> Result<bool, TriangleError> {
    Ok(closed_cross(a, b, c)?.is_some())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::angle::usual_angle;
    use crate::exact::{classify_triple, TripleAlternative};
    use crate::oracle;
    use crate::rational::{int, ratio};
    use std::f64::consts::{FRAC_PI_2, FRAC_PI_4, PI};

    fn p(x: f64, y: f64) -> Point2 {
        FloatVec2::new(x, y)
    }

    fn q(x: i64, y: i64) -> RationalVec2 {
        RationalVec2::from_ints(x, y)
    }

    #[test]
    fn side_vector_examples() {
        let s = side_vectors(&p(0.0, 0.0), &p(1.0, 0.0), &p(0.0, 1.0)).unwrap();
        assert_eq!(s, [p(1.0, 0.0), p(-1.0, 1.0), p(0.0, -1.0)]);
        assert_eq!(
            side_vectors(&p(1.0, 1.0), &p(1.0, 1.0), &p(0.0, 0.0)),
            Err(TriangleError::DuplicatePoints)
        );
        let s = side_vectors_exact(&q(0, 0), &q(2, 0), &q(1, 5)).unwrap();
        assert_eq!(s, [q(2, 0), q(-1, 5), q(-1, -5)]);
        assert!(s[0].add(&s[1]).add(&s[2]).is_zero());
    }

    #[test]
    fn float_sides_close_bit_exactly() {
        let s = side_vectors(&p(0.1, 0.7), &p(-3.3, 1e-3), &p(2.25, -0.9)).unwrap();
        assert_eq!((s[0].x + s[1].x) + s[2].x, 0.0);
        assert_eq!((s[0].y + s[1].y) + s[2].y, 0.0);
    }

    #[test]
    fn interior_angle_examples() {
        let t = interior_angles(&p(0.0, 0.0), &p(1.0, 0.0), &p(0.0, 1.0)).unwrap();
        assert_eq!(t.alpha0.0, FRAC_PI_2);
        assert!((t.alpha1.0 - FRAC_PI_4).abs() < 1e-12);
        assert!((t.alpha2.0 - FRAC_PI_4).abs() < 1e-12);

        let t = interior_angles(&p(0.0, 0.0), &p(1.0, 0.0), &p(2.0, 0.0)).unwrap();
        assert_eq!(t.as_array(), [0.0, PI, 0.0]);

        // frozen from the oracle
        let expected = [FRAC_PI_4, 0.3217505543966422, 2.0344439357957027];
        assert_eq!(oracle::interior([(0, 0), (4, 0), (1, 1)]), expected);
        let t = interior_angles(&p(0.0, 0.0), &p(4.0, 0.0), &p(1.0, 1.0)).unwrap();
        for (got, want) in t.as_array().iter().zip(expected) {
            assert!((got - want).abs() < 1e-12);
        }
    }

    #[test]
    fn angle_sum_examples() {
        let s = triangle_angle_sum(&p(0.0, 0.0), &p(1.0, 0.0), &p(0.0, 1.0)).unwrap();
        assert!((s.0 - PI).abs() <= SUM_TOL);
        let s = triangle_angle_sum(&p(0.0, 0.0), &p(1.0, 0.0), &p(0.5, 0.5)).unwrap();
        assert!((s.0 - PI).abs() <= SUM_TOL);
        let t = interior_angles(&p(0.0, 0.0), &p(1.0, 0.0), &p(0.5, 0.5)).unwrap();
        let expected = oracle::interior([(0, 0), (2, 0), (1, 1)]);
        for (got, want) in t.as_array().iter().zip(expected) {
            assert!((got - want).abs() < 1e-12);
        }
        let s = triangle_angle_sum(&p(0.0, 0.0), &p(1.0, 0.0), &p(2.0, 0.0)).unwrap();
        assert_eq!(s.0, PI);
        assert_eq!(
            triangle_angle_sum(&p(0.0, 0.0), &p(1.0, 1.0), &p(0.0, 0.0)),
            Err(TriangleError::DuplicatePoints)
        );
        assert_eq!(
            triangle_angle_sum(&p(0.0, f64::NAN), &p(1.0, 1.0), &p(0.0, 0.0)),
            Err(TriangleError::NonFinite)
        );
    }

    #[test]
    fn supplement_identity() {
        let (p0, p1, p2) = (p(0.3, -1.0), p(4.0, 2.5), p(-1.5, 3.0));
        let t = interior_angles(&p0, &p1, &p2).unwrap();
        let [a, b, c] = side_vectors(&p0, &p1, &p2).unwrap();
        assert!((t.alpha0.0 - (PI - usual_angle(&c, &a).unwrap().0)).abs() < 1e-12);
        assert!((t.alpha1.0 - (PI - usual_angle(&a, &b).unwrap().0)).abs() < 1e-12);
        assert!((t.alpha2.0 - (PI - usual_angle(&b, &c).unwrap().0)).abs() < 1e-12);
    }

    #[test]
    fn equal_cross_examples() {
        assert_eq!(
            closed_cross(&q(1, 0), &q(-1, 1), &q(0, -1)),
            Ok(Some(int(1)))
        );
        assert_eq!(
            closed_cross(&q(1, 0), &q(1, 0), &q(-2, 0)),
            Ok(Some(int(0)))
        );
        assert_eq!(
            equal_cross_check(&q(1, 0), &q(0, 1), &q(0, -1)),
            Err(TriangleError::NotClosed)
        );
        assert_eq!(
            equal_cross_check(&q(1, 0), &q(-1, 0), &q(0, 0)),
            Err(TriangleError::ZeroVector)
        );
        let a = RationalVec2::new(ratio(3, 7), ratio(-2, 9));
        let b = RationalVec2::new(ratio(-5, 4), ratio(1, 3));
        let c = a.add(&b).neg();
        assert_eq!(equal_cross_check(&a, &b, &c), Ok(true));
    }

    #[test]
    fn closed_triples_never_fall_outside_both_alternatives() {
        for (a, b) in [
            (q(1, 0), q(-1, 1)),
            (q(1, 0), q(1, 0)),
            (q(2, 3), q(-7, 1)),
            (q(1, 1), q(1, -5)),
        ] {
            let c = a.add(&b).neg();
            if c.is_zero() {
                continue;
            }
            assert_ne!(
                classify_triple(&a, &b, &c).unwrap(),
                TripleAlternative::Neither
            );
        }
    }
}
