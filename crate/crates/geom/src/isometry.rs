//! Orientation-preserving isometries as SL(2,C) matrices acting on the
//! hyperboloid through Hermitian matrices.

use nalgebra::{Matrix4, Vector4};
use num_complex::Complex64;
use serde_json::{json, Value};

use crate::model::minkowski;

pub const TOL_DET: f64 = 1e-9;
/// Smallest translation length counted as loxodromic. Words that are
/// trivial in the group evaluate to ±I only up to rounding, and arccosh
/// near 1 turns a trace error ε into a length of about 2√ε.
pub const MIN_TRANSLATION: f64 = 1e-4;

type C = Complex64;

/// `[[a, b], [c, d]]`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Isometry {
    pub a: C,
    pub b: C,
    pub c: C,
    pub d: C,
}

impl Isometry {
    pub const IDENTITY: Isometry = Isometry {
        a: C::new(1.0, 0.0),
        b: C::new(0.0, 0.0),
        c: C::new(0.0, 0.0),
        d: C::new(1.0, 0.0),
    };

    pub fn new(a: C, b: C, c: C, d: C) -> Isometry {
        Isometry { a, b, c, d }
    }

    pub fn diagonal(l: C) -> Isometry {
        Isometry::new(l, C::new(0.0, 0.0), C::new(0.0, 0.0), l.inv())
    }

    pub fn det(&self) -> C {
        self.a * self.d - self.b * self.c
    }

    pub fn trace(&self) -> C {
        self.a + self.d
    }

    /// Rescaled to determinant one (`None` if singular).
    pub fn normalized(&self) -> Option<Isometry> {
        let det = self.det();
        if det.norm() < 1e-300 {
            return None;
        }
        let s = det.sqrt().inv();
        Some(Isometry::new(self.a * s, self.b * s, self.c * s, self.d * s))
    }

    pub fn is_special(&self) -> bool {
        (self.det() - 1.0).norm() < TOL_DET
    }

    pub fn mul(&self, o: &Isometry) -> Isometry {
        Isometry::new(
            self.a * o.a + self.b * o.c,
            self.a * o.b + self.b * o.d,
            self.c * o.a + self.d * o.c,
            self.c * o.b + self.d * o.d,
        )
    }

    /// Inverse of a determinant-one matrix.
    pub fn inverse(&self) -> Isometry {
        Isometry::new(self.d, -self.b, -self.c, self.a)
    }

    pub fn conjugate_by(&self, g: &Isometry) -> Isometry {
        g.mul(self).mul(&g.inverse())
    }

    pub fn entries(&self) -> [C; 4] {
        [self.a, self.b, self.c, self.d]
    }

    /// Largest entry difference, up to the sign ambiguity of PSL(2,C).
    pub fn distance(&self, o: &Isometry) -> f64 {
        let diff = |s: f64| {
            self.entries()
                .iter()
                .zip(o.entries())
                .map(|(x, y)| (x - y * s).norm())
                .fold(0.0, f64::max)
        };
        diff(1.0).min(diff(-1.0))
    }

    /// `X -> A X A*` with `X = [[t+z, x-iy], [x+iy, t-z]]`; linear in `(x,y,z,t)`.
    pub fn act(&self, p: [f64; 4]) -> [f64; 4] {
        let [x, y, z, t] = p;
        let m = [[C::new(t + z, 0.0), C::new(x, -y)], [C::new(x, y), C::new(t - z, 0.0)]];
        let a = [[self.a, self.b], [self.c, self.d]];
        let mut ax = [[C::new(0.0, 0.0); 2]; 2];
        for i in 0..2 {
            for j in 0..2 {
                ax[i][j] = a[i][0] * m[0][j] + a[i][1] * m[1][j];
            }
        }
        let mut r = [[C::new(0.0, 0.0); 2]; 2];
        for i in 0..2 {
            for j in 0..2 {
                r[i][j] = ax[i][0] * a[j][0].conj() + ax[i][1] * a[j][1].conj();
            }
        }
        [
            r[1][0].re,
            r[1][0].im,
            0.5 * (r[0][0].re - r[1][1].re),
            0.5 * (r[0][0].re + r[1][1].re),
        ]
    }

    /// The 4x4 Lorentz matrix of the action.
    pub fn lorentz(&self) -> Matrix4<f64> {
        let mut l = Matrix4::zeros();
        for k in 0..4 {
            let mut e = [0.0; 4];
            e[k] = 1.0;
            l.set_column(k, &Vector4::from(self.act(e)));
        }
        l
    }

    /// Recovers the matrix of a Lorentz transformation from its action on
    /// three light rays.
    pub fn from_lorentz(l: &Matrix4<f64>) -> Option<Isometry> {
        let rays = [[1.0, 0.0, 0.0, 1.0], [0.0, 1.0, 0.0, 1.0], [-1.0, -1.0, 1.0, 3f64.sqrt()]];
        let src: Vec<[C; 2]> = rays.iter().map(|&r| spinor(r)).collect();
        let dst: Vec<[C; 2]> = rays
            .iter()
            .map(|&r| {
                let v = l * Vector4::from(r);
                spinor([v[0], v[1], v[2], v[3]])
            })
            .collect();
        let p = frame(&src)?;
        let q = frame(&dst)?;
        q.mul(&p.adjugate()).normalized()
    }

    fn adjugate(&self) -> Isometry {
        Isometry::new(self.d, -self.b, -self.c, self.a)
    }

    /// The isometry taking `src[k]` to `dst[k]` for the three vertices of a
    /// triangle, extended by the Minkowski normals so that it preserves
    /// orientation. `None` if either triangle is degenerate. When the
    /// triangles are not congruent the result maps the vertices only
    /// approximately; callers check the residual.
    pub fn from_triangles(src: [[f64; 4]; 3], dst: [[f64; 4]; 3]) -> Option<Isometry> {
        let p = with_normal(src);
        let q = with_normal(dst);
        let l = q * p.try_inverse()?;
        Isometry::from_lorentz(&l)
    }

    pub fn to_json_value(&self) -> Value {
        json!(self.entries().iter().map(|z| [z.re, z.im]).collect::<Vec<_>>())
    }
}

/// Columns `p1, p2, p3, n` with `n` the Minkowski normal of their span.
fn with_normal(p: [[f64; 4]; 3]) -> Matrix4<f64> {
    let mut m = Matrix4::zeros();
    for (k, v) in p.iter().enumerate() {
        m.set_column(k, &Vector4::from(*v));
    }
    // Euclidean generalised cross product, then raise the index
    let mut c = [0.0; 4];
    for (i, slot) in c.iter_mut().enumerate() {
        let mut minor = nalgebra::Matrix3::zeros();
        for (r, row) in (0..4).filter(|&r| r != i).enumerate() {
            for k in 0..3 {
                minor[(r, k)] = p[k][row];
            }
        }
        let sign = if i % 2 == 0 { -1.0 } else { 1.0 };
        *slot = sign * minor.determinant();
    }
    c[3] = -c[3];
    let norm = minkowski(c, c).max(1e-300).sqrt();
    m.set_column(3, &(Vector4::from(c) / norm));
    m
}

/// A spinor `v` with `v v*` proportional to the Hermitian matrix of a
/// light-like vector.
fn spinor(p: [f64; 4]) -> [C; 2] {
    let [x, y, z, t] = p;
    if (t + z).abs() >= (t - z).abs() {
        [C::new(t + z, 0.0), C::new(x, y)]
    } else {
        [C::new(x, -y), C::new(t - z, 0.0)]
    }
}

/// The matrix sending `e1, e2, e1 + e2` to multiples of `s[0], s[1], s[2]`.
fn frame(s: &[[C; 2]]) -> Option<Isometry> {
    let m = Isometry::new(s[0][0], s[1][0], s[0][1], s[1][1]);
    let det = m.det();
    if det.norm() < 1e-300 {
        return None;
    }
    let l1 = (s[2][0] * s[1][1] - s[1][0] * s[2][1]) / det;
    let l2 = (s[0][0] * s[2][1] - s[2][0] * s[0][1]) / det;
    Some(Isometry::new(s[0][0] * l1, s[1][0] * l2, s[0][1] * l1, s[1][1] * l2))
}

/// `2 Re arccosh(tr/2)`, the real part of the complex length. Zero for
/// elliptic, parabolic and identity elements.
pub fn translation_length(a: &Isometry) -> f64 {
    2.0 * (a.trace() / 2.0).acosh().re.abs()
}

/// Least positive translation length over all freely reduced words of
/// length at most `max_len` in the generators. Every such word is a
/// closed geodesic or elliptic, so the result bounds the systole from
/// above. `None` if no word is loxodromic.
pub fn systole_estimate(gens: &[Isometry], max_len: usize) -> Option<f64> {
    let mut letters = Vec::with_capacity(2 * gens.len());
    for g in gens {
        letters.push(*g);
        letters.push(g.inverse());
    }
    let mut best: Option<f64> = None;
    let mut stack: Vec<(Isometry, usize, usize)> = (0..letters.len()).map(|l| (letters[l], l, 1)).collect();
    while let Some((m, last, len)) = stack.pop() {
        let tl = translation_length(&m);
        if tl > MIN_TRANSLATION && best.is_none_or(|b| tl < b) {
            best = Some(tl);
        }
        if len < max_len {
            for (l, g) in letters.iter().enumerate() {
                if l != (last ^ 1) {
                    stack.push((m.mul(g), l, len + 1));
                }
            }
        }
    }
    best
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::model::uhs_to_hyperboloid;
    use crate::model::PointUHS;
    use std::f64::consts::E;

    fn sample() -> Isometry {
        Isometry::new(C::new(1.2, 0.3), C::new(-0.4, 0.9), C::new(0.5, -0.2), C::new(0.0, 0.0))
            .normalized()
            .unwrap()
    }

    #[test]
    fn action_preserves_the_form() {
        let a = sample();
        let h = uhs_to_hyperboloid(PointUHS { x1: 0.2, x2: 0.7, x3: 1.3 }).0;
        let g = uhs_to_hyperboloid(PointUHS { x1: -1.0, x2: 0.1, x3: 0.4 }).0;
        let (ah, ag) = (a.act(h), a.act(g));
        assert!((minkowski(ah, ah) + 1.0).abs() < 1e-12);
        assert!((minkowski(ah, ag) - minkowski(h, g)).abs() < 1e-12);
        assert!(ah[3] > 0.0);
        let l = a.lorentz();
        assert!((l.determinant() - 1.0).abs() < 1e-10);
    }

    #[test]
    fn matrix_is_recovered_from_its_action() {
        let a = sample();
        let back = Isometry::from_lorentz(&a.lorentz()).unwrap();
        assert!(back.distance(&a) < 1e-12);
        let pts = [[0.1, 0.2, 1.0], [-0.5, 0.3, 0.6], [0.7, -0.2, 2.0]]
            .map(|[x, y, z]| uhs_to_hyperboloid(PointUHS { x1: x, x2: y, x3: z }).0);
        let moved = pts.map(|p| a.act(p));
        let found = Isometry::from_triangles(pts, moved).unwrap();
        assert!(found.distance(&a) < 1e-10);
    }

    #[test]
    fn translation_lengths() {
        let a = Isometry::diagonal(C::new(E, 0.0));
        assert!((translation_length(&a) - 2.0).abs() < 1e-14);
        assert_eq!(translation_length(&Isometry::IDENTITY), 0.0);
        let rot = Isometry::diagonal(C::new(0.0, 0.7).exp());
        assert!(translation_length(&rot) < 1e-12);
        let half = Isometry::diagonal(C::new(0.5f64.exp(), 0.0));
        assert!((systole_estimate(&[half], 3).unwrap() - 1.0).abs() < 1e-12);
        assert_eq!(systole_estimate(&[rot], 3), None);
        let b = sample();
        let lox = Isometry::diagonal(C::new(1.3, 0.4));
        assert!((translation_length(&lox) - translation_length(&lox.conjugate_by(&b))).abs() < 1e-10);
    }
}
