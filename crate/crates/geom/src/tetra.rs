//! Model tetrahedra: dihedral angles, orientation, and realisation from
//! edge lengths.

use glu_core::skeleton::EDGES;
use nalgebra::Matrix4;
use serde::{Deserialize, Serialize};

use crate::error::GeomError;
use crate::model::{
    edge_variable, hyperbolic_distance, hyperboloid_to_uhs, uhs_to_ball, PointHyperboloid,
    PointUHS,
};

/// Smallest cross-product norm accepted when normalising face normals.
const TOL_NORMAL: f64 = 1e-14;

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ModelTetrahedron {
    pub vertices: [PointUHS; 4],
    /// Indexed like `EDGES`.
    pub lengths: [f64; 6],
    pub e: [f64; 6],
    /// `(cos θ, sin θ)` per edge.
    pub angles: [(f64, f64); 6],
}

impl ModelTetrahedron {
    pub fn new(vertices: [PointUHS; 4]) -> Result<ModelTetrahedron, GeomError> {
        let mut lengths = [0.0; 6];
        let mut e = [0.0; 6];
        for (n, &(a, b)) in EDGES.iter().enumerate() {
            lengths[n] = hyperbolic_distance(vertices[a], vertices[b])?;
            e[n] = edge_variable(vertices[a], vertices[b])?;
        }
        if e.iter().any(|&x| x <= 1.0) {
            return Err(GeomError::DegenerateTetrahedron(0));
        }
        Ok(ModelTetrahedron {
            vertices,
            lengths,
            e,
            angles: dihedral_angles(vertices)?,
        })
    }

    pub fn angle(&self, edge: usize) -> f64 {
        let (c, s) = self.angles[edge];
        s.atan2(c)
    }
}

fn cross(a: [f64; 3], b: [f64; 3]) -> [f64; 3] {
    [a[1] * b[2] - a[2] * b[1], a[2] * b[0] - a[0] * b[2], a[0] * b[1] - a[1] * b[0]]
}

fn dot(a: [f64; 3], b: [f64; 3]) -> f64 {
    a[0] * b[0] + a[1] * b[1] + a[2] * b[2]
}

fn others(a: usize, b: usize) -> (usize, usize) {
    let mut rest = (0..4).filter(|&x| x != a && x != b);
    (rest.next().unwrap(), rest.next().unwrap())
}

/// Ball coordinates of all four vertices with vertex `base` at the origin.
pub fn ball_frame(v: [PointUHS; 4], base: usize) -> Result<[[f64; 3]; 4], GeomError> {
    let mut out = [[0.0; 3]; 4];
    for (k, slot) in out.iter_mut().enumerate() {
        if k != base {
            *slot = uhs_to_ball(v[k], v[base])?.0;
        }
    }
    Ok(out)
}

/// For each edge `(a, b)`: move `a` to the ball origin, where the two faces
/// at the edge are Euclidean planes, and take the normalised dot product of
/// their cross-product normals.
pub fn dihedral_angles(v: [PointUHS; 4]) -> Result<[(f64, f64); 6], GeomError> {
    let mut out = [(0.0, 0.0); 6];
    let frames: Vec<[[f64; 3]; 4]> = (0..3).map(|a| ball_frame(v, a)).collect::<Result<_, _>>()?;
    for (n, &(a, b)) in EDGES.iter().enumerate() {
        let w = &frames[a];
        let (c, d) = others(a, b);
        let n1 = cross(w[b], w[c]);
        let n2 = cross(w[b], w[d]);
        let (l1, l2) = (dot(n1, n1).sqrt(), dot(n2, n2).sqrt());
        if l1 < TOL_NORMAL || l2 < TOL_NORMAL {
            return Err(GeomError::DegenerateTetrahedron(0));
        }
        let cos = (dot(n1, n2) / (l1 * l2)).clamp(-1.0, 1.0);
        out[n] = (cos, (1.0 - cos * cos).sqrt());
    }
    Ok(out)
}

/// Signed volume forms, one per choice of base vertex: the triple product
/// of the other three ball-model vertices, times the parity of moving the
/// base to the front. All four share a sign on a non-degenerate tetrahedron.
pub fn orientation_determinants(v: [PointUHS; 4]) -> Result<[f64; 4], GeomError> {
    let mut out = [0.0; 4];
    for (base, slot) in out.iter_mut().enumerate() {
        let w = ball_frame(v, base)?;
        let rest: Vec<usize> = (0..4).filter(|&k| k != base).collect();
        let det = dot(w[rest[0]], cross(w[rest[1]], w[rest[2]]));
        *slot = if base % 2 == 0 { det } else { -det };
    }
    Ok(out)
}

/// +1 or -1, or `None` when the determinants are below `margin` or disagree.
pub fn orientation_sign(v: [PointUHS; 4], margin: f64) -> Option<i8> {
    let d = orientation_determinants(v).ok()?;
    if d.iter().all(|&x| x > margin) {
        Some(1)
    } else if d.iter().all(|&x| x < -margin) {
        Some(-1)
    } else {
        None
    }
}

/// Vertex Gram matrix `<p_i, p_j> = -cosh l_ij`.
fn gram(lengths: [f64; 6]) -> Matrix4<f64> {
    let mut g = Matrix4::from_element(0.0);
    for i in 0..4 {
        g[(i, i)] = -1.0;
    }
    for (n, &(a, b)) in EDGES.iter().enumerate() {
        g[(a, b)] = -lengths[n].cosh();
        g[(b, a)] = g[(a, b)];
    }
    g
}

/// Dihedral angles of the tetrahedron with the given edge lengths, or
/// `None` if no such tetrahedron exists. Uses the dual basis of face
/// normals from the inverse Gram matrix.
pub fn angles_from_lengths(lengths: [f64; 6]) -> Option<[f64; 6]> {
    if lengths.iter().any(|&l| l.is_nan() || l <= 0.0 || !l.is_finite()) {
        return None;
    }
    let g = gram(lengths);
    if g.determinant() >= 0.0 {
        return None;
    }
    let inv = g.try_inverse()?;
    let mut out = [0.0; 6];
    for (n, &(a, b)) in EDGES.iter().enumerate() {
        let (k, l) = others(a, b);
        let (kk, ll) = (inv[(k, k)], inv[(l, l)]);
        if kk <= 0.0 || ll <= 0.0 {
            return None;
        }
        out[n] = (-inv[(k, l)] / (kk * ll).sqrt()).clamp(-1.0, 1.0).acos();
    }
    Some(out)
}

/// Hyperboloid vertices of a tetrahedron with the given edge lengths:
/// vertex 0 at the apex, vertex 1 on the x-axis, vertex 2 in the xy-plane,
/// and vertex 3 on the side that gives orientation `sign`.
pub fn realize_from_lengths(lengths: [f64; 6], sign: i8) -> Result<[PointUHS; 4], GeomError> {
    let l = |a: usize, b: usize| lengths[glu_core::skeleton::edge_index(a, b)];
    let bad = || GeomError::DegenerateTetrahedron(0);
    let (s01, c01) = (l(0, 1).sinh(), l(0, 1).cosh());
    if s01.is_nan() || s01 <= 0.0 {
        return Err(bad());
    }
    let c02 = l(0, 2).cosh();
    let a2 = (c02 * c01 - l(1, 2).cosh()) / s01;
    let b2sq = c02 * c02 - 1.0 - a2 * a2;
    if b2sq.is_nan() || b2sq <= 0.0 {
        return Err(bad());
    }
    let b2 = b2sq.sqrt();
    let c03 = l(0, 3).cosh();
    let a3 = (c03 * c01 - l(1, 3).cosh()) / s01;
    let b3 = (c03 * c02 - l(2, 3).cosh() - a3 * a2) / b2;
    let z3sq = c03 * c03 - 1.0 - a3 * a3 - b3 * b3;
    if z3sq.is_nan() || z3sq <= 0.0 {
        return Err(bad());
    }
    let mut pts = [
        [0.0, 0.0, 0.0, 1.0],
        [s01, 0.0, 0.0, c01],
        [a2, b2, 0.0, c02],
        [a3, b3, z3sq.sqrt(), c03],
    ];
    let mut out = [PointUHS { x1: 0.0, x2: 0.0, x3: 1.0 }; 4];
    for attempt in 0..2 {
        for (k, p) in pts.iter().enumerate() {
            out[k] = hyperboloid_to_uhs(PointHyperboloid(*p))?;
        }
        if orientation_sign(out, 0.0) == Some(sign) {
            return Ok(out);
        }
        if attempt == 0 {
            pts[3][2] = -pts[3][2];
        }
    }
    Err(bad())
}
