//! Points in the upper half-space, ball and hyperboloid models, and the
//! maps between them.

use serde::{Deserialize, Serialize};

use crate::error::GeomError;

pub const TOL_MODEL: f64 = 1e-12;

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct PointUHS {
    pub x1: f64,
    pub x2: f64,
    pub x3: f64,
}

/// A point of the open unit ball.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct PointBall(pub [f64; 3]);

/// `(x, y, z, t)` with `t > 0` and `t^2 - x^2 - y^2 - z^2 = 1`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct PointHyperboloid(pub [f64; 4]);

impl PointUHS {
    pub fn new(x1: f64, x2: f64, x3: f64) -> Result<PointUHS, GeomError> {
        if !(x1.is_finite() && x2.is_finite() && x3.is_finite()) || x3 <= 0.0 {
            return Err(GeomError::DegeneratePoint(format!("({x1}, {x2}, {x3})")));
        }
        Ok(PointUHS { x1, x2, x3 })
    }

    pub fn to_array(self) -> [f64; 3] {
        [self.x1, self.x2, self.x3]
    }

    pub fn check(self) -> Result<PointUHS, GeomError> {
        PointUHS::new(self.x1, self.x2, self.x3)
    }
}

impl PointBall {
    pub fn new(p: [f64; 3]) -> Result<PointBall, GeomError> {
        if p.iter().any(|x| !x.is_finite()) || norm2(p) >= 1.0 {
            return Err(GeomError::DegeneratePoint(format!("{p:?}")));
        }
        Ok(PointBall(p))
    }
}

impl PointHyperboloid {
    pub fn new(p: [f64; 4]) -> Result<PointHyperboloid, GeomError> {
        let q = -minkowski(p, p);
        if p.iter().any(|x| !x.is_finite()) || p[3] <= 0.0 || (q - 1.0).abs() > TOL_MODEL * p[3] * p[3]
        {
            return Err(GeomError::DegeneratePoint(format!("{p:?}")));
        }
        Ok(PointHyperboloid(p))
    }
}

pub(crate) fn norm2(p: [f64; 3]) -> f64 {
    p[0] * p[0] + p[1] * p[1] + p[2] * p[2]
}

/// Minkowski form of signature (3,1) with the time coordinate last.
pub fn minkowski(a: [f64; 4], b: [f64; 4]) -> f64 {
    a[0] * b[0] + a[1] * b[1] + a[2] * b[2] - a[3] * b[3]
}

/// `Σ1 = |x - y|` and `Σ2 = |x - ȳ|` where `ȳ` is `y` reflected in the
/// boundary plane.
pub(crate) fn sigmas(x: PointUHS, y: PointUHS) -> (f64, f64) {
    let (a, b) = (x.x1 - y.x1, x.x2 - y.x2);
    let s1 = (a * a + b * b + (x.x3 - y.x3).powi(2)).sqrt();
    let s2 = (a * a + b * b + (x.x3 + y.x3).powi(2)).sqrt();
    (s1, s2)
}

/// `E = e^d`, from `E · 4 x3 y3 = (Σ1 + Σ2)^2`.
pub fn edge_variable(x: PointUHS, y: PointUHS) -> Result<f64, GeomError> {
    let (x, y) = (x.check()?, y.check()?);
    let (s1, s2) = sigmas(x, y);
    Ok((s1 + s2).powi(2) / (4.0 * x.x3 * y.x3))
}

pub fn hyperbolic_distance(x: PointUHS, y: PointUHS) -> Result<f64, GeomError> {
    let (x, y) = (x.check()?, y.check()?);
    let (s1, s2) = sigmas(x, y);
    Ok(2.0 * ((s1 + s2) / (2.0 * (x.x3 * y.x3).sqrt())).ln())
}

pub fn ball_distance(a: PointBall, b: PointBall) -> f64 {
    let d = [a.0[0] - b.0[0], a.0[1] - b.0[1], a.0[2] - b.0[2]];
    let s = norm2(d).sqrt() / ((1.0 - norm2(a.0)) * (1.0 - norm2(b.0))).sqrt();
    2.0 * s.asinh()
}

/// Distance through the Minkowski norm of the chord, which stays accurate
/// for nearby points where `arccosh(-<a,b>)` does not.
pub fn hyperboloid_distance(a: PointHyperboloid, b: PointHyperboloid) -> f64 {
    let d = [a.0[0] - b.0[0], a.0[1] - b.0[1], a.0[2] - b.0[2], a.0[3] - b.0[3]];
    2.0 * (minkowski(d, d).max(0.0).sqrt() / 2.0).asinh()
}

/// The involution exchanging the upper half-space and the ball, fixing
/// the unit sphere about `-e3` scaled by `√2`.
pub fn involution(x: [f64; 3]) -> [f64; 3] {
    let y = [x[0], x[1], x[2] + 1.0];
    let s = 2.0 / norm2(y);
    [s * y[0], s * y[1], s * y[2] - 1.0]
}

/// Translate and scale so that `v0` goes to `(0,0,1)`, then apply the
/// involution; `v0` lands on the ball origin.
pub fn uhs_to_ball(x: PointUHS, v0: PointUHS) -> Result<PointBall, GeomError> {
    let (x, v0) = (x.check()?, v0.check()?);
    let moved = [(x.x1 - v0.x1) / v0.x3, (x.x2 - v0.x2) / v0.x3, x.x3 / v0.x3];
    PointBall::new(involution(moved))
}

pub fn ball_to_uhs(b: PointBall) -> Result<PointUHS, GeomError> {
    let [x1, x2, x3] = involution(b.0);
    PointUHS::new(x1, x2, x3)
}

pub fn ball_to_hyperboloid(b: PointBall) -> PointHyperboloid {
    let n = norm2(b.0);
    let s = 1.0 / (1.0 - n);
    PointHyperboloid([2.0 * b.0[0] * s, 2.0 * b.0[1] * s, 2.0 * b.0[2] * s, (1.0 + n) * s])
}

pub fn hyperboloid_to_ball(h: PointHyperboloid) -> PointBall {
    let s = 1.0 / (1.0 + h.0[3]);
    PointBall([h.0[0] * s, h.0[1] * s, h.0[2] * s])
}

/// `J ∘ I` in closed form.
pub fn uhs_to_hyperboloid(x: PointUHS) -> PointHyperboloid {
    let n = norm2(x.to_array());
    let s = 1.0 / x.x3;
    PointHyperboloid([x.x1 * s, x.x2 * s, 0.5 * (1.0 - n) * s, 0.5 * (1.0 + n) * s])
}

pub fn hyperboloid_to_uhs(h: PointHyperboloid) -> Result<PointUHS, GeomError> {
    ball_to_uhs(hyperboloid_to_ball(h))
}

/// Projective (Klein) coordinates of a hyperboloid point.
pub fn klein(h: PointHyperboloid) -> [f64; 3] {
    [h.0[0] / h.0[3], h.0[1] / h.0[3], h.0[2] / h.0[3]]
}
