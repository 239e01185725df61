//! Hyperbolic structures on triangulations: the Poincaré conditions, the
//! developing map along a dual spanning tree, and the face pairings of the
//! resulting fundamental domain.

use std::collections::VecDeque;
use std::f64::consts::PI;

use glu_core::dual::{DualGraph, SpanningTree};
use glu_core::orient::orientation;
use glu_core::{FaceGluing, Perm4, Skeleton, Triangulation};
use serde::Serialize;
use serde_json::{json, Value};

use crate::error::GeomError;
use crate::isometry::{systole_estimate, Isometry};
use crate::model::{hyperboloid_distance, minkowski, uhs_to_hyperboloid, PointHyperboloid, PointUHS};
use crate::system::edge_class_occurrences;
use crate::tetra::{orientation_sign, ModelTetrahedron};

pub const STRUCTURE_FORMAT: &str = "glu-hyp/1";
pub const TOL_DEV: f64 = 1e-8;
/// Slack allowed when testing developed tetrahedra for overlap.
const TOL_OVERLAP: f64 = 1e-9;

/// The isometry of a non-tree dual edge, taking the developed source face
/// onto the developed target face.
#[derive(Debug, Clone, PartialEq)]
pub struct FacePairing {
    /// Dual edge index.
    pub edge: usize,
    pub gluing: FaceGluing,
    pub matrix: Isometry,
    /// Largest distance between a mapped vertex and its target.
    pub error: f64,
}

#[derive(Debug, Clone)]
pub struct Development {
    pub base: usize,
    /// Isometry placing each model tetrahedron, in tree order.
    pub placements: Vec<Isometry>,
    /// Developed hyperboloid coordinates of every vertex.
    pub vertices: Vec<[[f64; 4]; 4]>,
    pub pairings: Vec<FacePairing>,
}

#[derive(Debug, Clone)]
pub struct HyperbolicStructure {
    pub tets: Vec<ModelTetrahedron>,
    /// One length per edge class.
    pub edge_lengths: Vec<f64>,
    pub face_pairings: Vec<FacePairing>,
    /// Largest constraint violation of the certified system.
    pub residual: f64,
    /// Per edge class, `|Σθ - 2π|`.
    pub angle_defects: Vec<f64>,
    /// Restart that produced the structure.
    pub restart: usize,
}

impl HyperbolicStructure {
    pub fn vertices(&self) -> Vec<[PointUHS; 4]> {
        self.tets.iter().map(|t| t.vertices).collect()
    }

    pub fn generators(&self) -> Vec<Isometry> {
        self.face_pairings.iter().map(|f| f.matrix).collect()
    }

    pub fn max_edge_length(&self) -> f64 {
        self.edge_lengths.iter().copied().fold(0.0, f64::max)
    }

    pub fn systole_estimate(&self, max_len: usize) -> Option<f64> {
        systole_estimate(&self.generators(), max_len)
    }

    pub fn to_json_value(&self) -> Value {
        json!({
            "format": STRUCTURE_FORMAT,
            "tetrahedra": self.tets.iter().map(|t| t.vertices.map(|p| p.to_array())).collect::<Vec<_>>(),
            "edge_lengths": self.edge_lengths,
            "face_pairings": self.face_pairings.iter().map(|f| json!({
                "edge": f.edge,
                "source": [f.gluing.source.0, f.gluing.source.1],
                "target": [f.gluing.target.0, f.gluing.target.1],
                "matrix": f.matrix.to_json_value(),
            })).collect::<Vec<_>>(),
            "residual": self.residual,
            "angle_defects": self.angle_defects,
        })
    }
}

fn hyp(p: PointUHS) -> [f64; 4] {
    uhs_to_hyperboloid(p).0
}

fn dist(a: [f64; 4], b: [f64; 4]) -> f64 {
    hyperboloid_distance(PointHyperboloid(a), PointHyperboloid(b))
}

/// A Minkowski normal of the plane through three hyperboloid points.
fn plane_normal(p: [[f64; 4]; 3]) -> [f64; 4] {
    let mut c = [0.0; 4];
    for (i, slot) in c.iter_mut().enumerate() {
        let rows: Vec<usize> = (0..4).filter(|&r| r != i).collect();
        let m = |r: usize, k: usize| p[k][rows[r]];
        let det = m(0, 0) * (m(1, 1) * m(2, 2) - m(1, 2) * m(2, 1))
            - m(0, 1) * (m(1, 0) * m(2, 2) - m(1, 2) * m(2, 0))
            + m(0, 2) * (m(1, 0) * m(2, 1) - m(1, 1) * m(2, 0));
        *slot = if i % 2 == 0 { det } else { -det };
    }
    c[3] = -c[3];
    c
}

fn face_of(v: &[[f64; 4]; 4], opposite: usize) -> [[f64; 4]; 3] {
    let rest: Vec<usize> = (0..4).filter(|&a| a != opposite).collect();
    [v[rest[0]], v[rest[1]], v[rest[2]]]
}

fn klein(p: [f64; 4]) -> [f64; 3] {
    [p[0] / p[3], p[1] / p[3], p[2] / p[3]]
}

/// Whether two tetrahedra (convex in the Klein model) have disjoint
/// interiors, by the separating axis test.
fn interiors_disjoint(a: &[[f64; 4]; 4], b: &[[f64; 4]; 4]) -> bool {
    let (p, q) = (a.map(klein), b.map(klein));
    let sub = |x: [f64; 3], y: [f64; 3]| [x[0] - y[0], x[1] - y[1], x[2] - y[2]];
    let cross = |x: [f64; 3], y: [f64; 3]| {
        [x[1] * y[2] - x[2] * y[1], x[2] * y[0] - x[0] * y[2], x[0] * y[1] - x[1] * y[0]]
    };
    let dot = |x: [f64; 3], y: [f64; 3]| x[0] * y[0] + x[1] * y[1] + x[2] * y[2];
    let edges = |t: &[[f64; 3]; 4]| {
        glu_core::skeleton::EDGES.map(|(i, j)| sub(t[j], t[i]))
    };
    let mut axes = Vec::with_capacity(44);
    for t in [&p, &q] {
        for k in 0..4 {
            let r: Vec<usize> = (0..4).filter(|&x| x != k).collect();
            axes.push(cross(sub(t[r[1]], t[r[0]]), sub(t[r[2]], t[r[0]])));
        }
    }
    for e in edges(&p) {
        for f in edges(&q) {
            axes.push(cross(e, f));
        }
    }
    axes.into_iter().any(|n| {
        let len = dot(n, n).sqrt();
        if len < 1e-12 {
            return false;
        }
        let proj = |t: &[[f64; 3]; 4]| {
            t.iter().fold((f64::MAX, f64::MIN), |(lo, hi), &x| {
                let y = dot(x, n) / len;
                (lo.min(y), hi.max(y))
            })
        };
        let ((a0, a1), (b0, b1)) = (proj(&p), proj(&q));
        a1 <= b0 + TOL_OVERLAP || b1 <= a0 + TOL_OVERLAP
    })
}

/// Develops the tetrahedra along the tree from `base`, then computes the
/// isometry of every non-tree dual edge. Each such isometry equals the
/// product of the gluing isometries around the loop the edge closes in
/// the tree; it is computed directly from the developed faces here.
pub fn face_pairing_isometries(
    vertices: &[[PointUHS; 4]],
    tri: &Triangulation,
    tree: &SpanningTree,
    base: usize,
    tol_dev: f64,
) -> Result<Development, GeomError> {
    let t = tri.tet_count();
    if vertices.len() != t {
        return Err(GeomError::SizeMismatch { expected: t, found: vertices.len() });
    }
    let dual = DualGraph::new(tri);
    let model: Vec<[[f64; 4]; 4]> = vertices.iter().map(|v| v.map(hyp)).collect();
    let mut placements = vec![None; t];
    let mut developed = vec![[[0.0; 4]; 4]; t];
    let mut order = Vec::with_capacity(t);
    if t > 0 {
        placements[base] = Some(Isometry::IDENTITY);
        developed[base] = model[base];
        let mut queue = VecDeque::from([base]);
        while let Some(u) = queue.pop_front() {
            order.push(u);
            for &e in &tree.edges {
                let g = dual.edges[e];
                // orient the gluing away from u
                let (fu, w, fw, q): (usize, usize, usize, Perm4) = if g.source.0 == u && placements[g.target.0].is_none() {
                    (g.source.1, g.target.0, g.target.1, g.map)
                } else if g.target.0 == u && placements[g.source.0].is_none() {
                    (g.target.1, g.source.0, g.source.1, g.map.inverse())
                } else {
                    continue;
                };
                let rest: Vec<usize> = (0..4).filter(|&a| a != fu).collect();
                let src = [0, 1, 2].map(|n| model[w][q.apply(rest[n])]);
                let dst = [0, 1, 2].map(|n| developed[u][rest[n]]);
                let clash = |reason: String| GeomError::DevelopmentClash { edge: e, reason };
                let h = Isometry::from_triangles(src, dst).ok_or_else(|| clash("degenerate face".into()))?;
                let placed = model[w].map(|p| h.act(p));
                let err = rest.iter().map(|&a| dist(placed[q.apply(a)], developed[u][a])).fold(0.0, f64::max);
                if err > tol_dev {
                    return Err(clash(format!("glued faces differ by {err:e}")));
                }
                let n = plane_normal(face_of(&developed[u], fu));
                if minkowski(n, developed[u][fu]) * minkowski(n, placed[fw]) >= 0.0 {
                    return Err(clash("tetrahedra on the same side of their common face".into()));
                }
                placements[w] = Some(h);
                developed[w] = placed;
                queue.push_back(w);
            }
        }
    }
    if order.len() != t {
        return Err(GeomError::Disconnected(glu_core::DisconnectedGraph { reached: order.len(), total: t }));
    }
    for i in 0..t {
        for j in i + 1..t {
            if !interiors_disjoint(&developed[i], &developed[j]) {
                return Err(GeomError::DevelopmentClash {
                    edge: usize::MAX,
                    reason: format!("tetrahedra {i} and {j} overlap"),
                });
            }
        }
    }
    let mut pairings = Vec::new();
    for (e, g) in dual.edges.iter().enumerate() {
        if tree.contains(e) {
            continue;
        }
        let ((i, k), (j, _)) = (g.source, g.target);
        let rest: Vec<usize> = (0..4).filter(|&a| a != k).collect();
        let src = [0, 1, 2].map(|n| developed[i][rest[n]]);
        let dst = [0, 1, 2].map(|n| developed[j][g.map.apply(rest[n])]);
        let clash = |reason: String| GeomError::DevelopmentClash { edge: e, reason };
        let m = Isometry::from_triangles(src, dst).ok_or_else(|| clash("degenerate face".into()))?;
        let error = (0..3).map(|n| dist(m.act(src[n]), dst[n])).fold(0.0, f64::max);
        if error > tol_dev {
            return Err(clash(format!("face pairing misses its target by {error:e}")));
        }
        pairings.push(FacePairing { edge: e, gluing: *g, matrix: m, error });
    }
    Ok(Development {
        base,
        placements: placements.into_iter().map(|p| p.unwrap()).collect(),
        vertices: developed,
        pairings,
    })
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct PoincareReport {
    /// Per edge class, max - min of the lengths of its edges.
    pub length_spread: Vec<f64>,
    pub angle_defects: Vec<f64>,
    /// Orientation sign of each tetrahedron (0 if degenerate).
    pub orientation: Vec<i8>,
    pub pass: bool,
}

impl PoincareReport {
    pub fn max_spread(&self) -> f64 {
        self.length_spread.iter().copied().fold(0.0, f64::max)
    }

    pub fn max_defect(&self) -> f64 {
        self.angle_defects.iter().copied().fold(0.0, f64::max)
    }
}

/// Edge lengths agree within each class, angles around each class sum to
/// 2π, and every tetrahedron is oriented compatibly with the gluing.
/// Everything is recomputed from the vertex coordinates.
pub fn verify_poincare_conditions(
    vertices: &[[PointUHS; 4]],
    tri: &Triangulation,
    tol: f64,
) -> PoincareReport {
    let skeleton = Skeleton::new(tri);
    let classes = edge_class_occurrences(&skeleton);
    let tets: Vec<Option<ModelTetrahedron>> =
        vertices.iter().map(|v| ModelTetrahedron::new(*v).ok()).collect();
    let mut spread = vec![f64::INFINITY; classes.len()];
    let mut defects = vec![f64::INFINITY; classes.len()];
    for (c, occ) in classes.iter().enumerate() {
        let found: Option<Vec<(f64, f64)>> = occ
            .iter()
            .map(|&(i, n)| tets.get(i)?.as_ref().map(|m| (m.lengths[n], m.angle(n))))
            .collect();
        if let Some(found) = found {
            let lo = found.iter().map(|x| x.0).fold(f64::INFINITY, f64::min);
            let hi = found.iter().map(|x| x.0).fold(f64::NEG_INFINITY, f64::max);
            spread[c] = hi - lo;
            defects[c] = (found.iter().map(|x| x.1).sum::<f64>() - 2.0 * PI).abs();
        }
    }
    let signs: Vec<i8> = vertices.iter().map(|v| orientation_sign(*v, 0.0).unwrap_or(0)).collect();
    let oriented = match orientation(tri) {
        Some(o) if signs.len() == o.len() && !o.is_empty() => {
            let flip = signs[0] * o[0];
            flip != 0 && signs.iter().zip(&o).all(|(s, x)| *s == flip * x)
        }
        _ => false,
    };
    let pass = oriented
        && vertices.len() == tri.tet_count()
        && spread.iter().all(|&s| s < tol)
        && defects.iter().all(|&d| d < tol);
    PoincareReport {
        length_spread: spread,
        angle_defects: defects,
        orientation: signs,
        pass,
    }
}

/// Every edge is shorter than `inj / c`, with `inj = systole / 2`.
pub fn edge_length_bound_check(lengths: &[f64], c: u32, systole: f64) -> bool {
    let bound = systole / 2.0 / c as f64;
    lengths.iter().all(|&l| l < bound)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn edge_length_bound() {
        assert!(edge_length_bound_check(&[0.1; 6], 2, 2.0));
        assert!(!edge_length_bound_check(&[0.1, 0.5], 2, 2.0));
        for l in [0.2, 0.4, 0.6, 0.9] {
            if edge_length_bound_check(&[l], 2, 2.0) {
                assert!(edge_length_bound_check(&[l], 1, 2.0));
            }
        }
    }
}
