//! The Seifert–Weber space: a regular hyperbolic dodecahedron with
//! dihedral angle 2π/5, opposite faces glued with a 3/10 twist, coned
//! from its centre and from each face centre into 60 tetrahedra.

use glu_core::{Perm4, Triangulation};

use crate::model::{hyperboloid_to_uhs, PointHyperboloid, PointUHS};

/// Tetrahedron `5f + j` has vertices (centre, centre of face f, j-th and
/// (j+1)-th corner of face f), corners ordered anticlockwise seen from
/// outside.
#[derive(Debug, Clone)]
pub struct SeifertWeber {
    pub tri: Triangulation,
    pub vertices: Vec<[PointUHS; 4]>,
    /// Klein-model distance from the centre to each face plane.
    pub face_distance: f64,
}

type V3 = [f64; 3];

fn dot(a: V3, b: V3) -> f64 {
    a[0] * b[0] + a[1] * b[1] + a[2] * b[2]
}

fn cross(a: V3, b: V3) -> V3 {
    [a[1] * b[2] - a[2] * b[1], a[2] * b[0] - a[0] * b[2], a[0] * b[1] - a[1] * b[0]]
}

fn scale(a: V3, s: f64) -> V3 {
    a.map(|x| x * s)
}

fn sub(a: V3, b: V3) -> V3 {
    [a[0] - b[0], a[1] - b[1], a[2] - b[2]]
}

fn unit(a: V3) -> V3 {
    scale(a, 1.0 / dot(a, a).sqrt())
}

/// Rodrigues rotation about the unit axis `n`.
fn rotate(x: V3, n: V3, angle: f64) -> V3 {
    let (c, s) = (angle.cos(), angle.sin());
    let k = cross(n, x);
    let d = dot(n, x) * (1.0 - c);
    [0, 1, 2].map(|i| x[i] * c + k[i] * s + n[i] * d)
}

/// Euclidean dodecahedron: corners and, per face, the outward unit normal
/// with its five corners in anticlockwise order.
fn euclidean_dodecahedron() -> (Vec<V3>, Vec<(V3, [usize; 5])>) {
    let phi = (1.0 + 5f64.sqrt()) / 2.0;
    let inv = 1.0 / phi;
    let mut corners = Vec::new();
    for a in [-1.0, 1.0] {
        for b in [-1.0, 1.0] {
            for c in [-1.0, 1.0] {
                corners.push([a, b, c]);
            }
            corners.push([0.0, a * inv, b * phi]);
            corners.push([a * inv, b * phi, 0.0]);
            corners.push([a * phi, 0.0, b * inv]);
        }
    }
    let mut normals = Vec::new();
    for a in [-1.0, 1.0] {
        for b in [-1.0, 1.0] {
            normals.push(unit([0.0, a * phi, b]));
            normals.push(unit([a, 0.0, b * phi]));
            normals.push(unit([a * phi, b, 0.0]));
        }
    }
    let faces = normals
        .into_iter()
        .map(|n| {
            let top = corners.iter().map(|&c| dot(c, n)).fold(f64::MIN, f64::max);
            let mut members: Vec<usize> =
                (0..corners.len()).filter(|&i| dot(corners[i], n) > top - 1e-9).collect();
            assert_eq!(members.len(), 5);
            let e1 = unit(sub(corners[members[0]], scale(n, top)));
            let e2 = cross(n, e1);
            members.sort_by(|&p, &q| {
                let ang = |i: usize| dot(corners[i], e2).atan2(dot(corners[i], e1));
                ang(p).total_cmp(&ang(q))
            });
            (n, [members[0], members[1], members[2], members[3], members[4]])
        })
        .collect();
    (corners, faces)
}

fn perm(images: [u8; 4]) -> Perm4 {
    Perm4::new(images).unwrap()
}

pub fn seifert_weber() -> SeifertWeber {
    let (corners, faces) = euclidean_dodecahedron();
    let inradius = dot(corners[faces[0].1[0]], faces[0].0);
    let tet = |f: usize, j: usize| 5 * f + j % 5;
    let position = |f: usize, c: usize| faces[f].1.iter().position(|&x| x == c);
    let mut adj = vec![[(0usize, Perm4::IDENTITY); 4]; 60];
    for (f, (n, cyc)) in faces.iter().enumerate() {
        for j in 0..5 {
            let (a, b) = (cyc[j], cyc[(j + 1) % 5]);
            // across the corner-corner-centre triangle into the neighbouring face
            let (g, m) = (0..12)
                .filter(|&g| g != f)
                .find_map(|g| {
                    let (pa, pb) = (position(g, a)?, position(g, b)?);
                    assert_eq!(pa, (pb + 1) % 5);
                    Some((g, pb))
                })
                .unwrap();
            adj[tet(f, j)][1] = (tet(g, m), perm([0, 1, 3, 2]));
            adj[tet(f, j)][2] = (tet(f, j + 1), perm([0, 1, 3, 2]));
            adj[tet(f, j)][3] = (tet(f, j + 4), perm([0, 1, 3, 2]));
            // the opposite face, after translating across and twisting by 3/10
            let opp = faces.iter().position(|(m, _)| dot(*m, *n) < -0.999).unwrap();
            let image = |c: usize| {
                let moved = rotate(sub(corners[c], scale(*n, 2.0 * inradius)), *n, 0.6 * std::f64::consts::PI);
                (0..corners.len())
                    .min_by(|&p, &q| {
                        let d = |i: usize| dot(sub(corners[i], moved), sub(corners[i], moved));
                        d(p).total_cmp(&d(q))
                    })
                    .unwrap()
            };
            let (ia, ib) = (position(opp, image(a)).unwrap(), position(opp, image(b)).unwrap());
            assert_eq!(ia, (ib + 1) % 5, "the twist reverses the boundary orientation");
            adj[tet(f, j)][0] = (tet(opp, ib), perm([0, 1, 3, 2]));
        }
    }
    let tri = Triangulation::from_adjacency(adj).expect("dodecahedral gluing is consistent");

    // scale into the Klein model so that adjacent faces meet at 2π/5:
    // cos θ = (d² - n1·n2) / (1 - d²) for face planes at Klein distance d
    let c = dot(faces[0].0, faces[1].0).abs();
    let target = (0.4 * std::f64::consts::PI).cos();
    let d = ((target + c) / (1.0 + target)).sqrt();
    let s = d / inradius;
    let lift = |k: V3| {
        let r = 1.0 / (1.0 - dot(k, k)).sqrt();
        hyperboloid_to_uhs(PointHyperboloid([k[0] * r, k[1] * r, k[2] * r, r])).unwrap()
    };
    let mut vertices = Vec::with_capacity(60);
    for (n, cyc) in &faces {
        for j in 0..5 {
            vertices.push([
                lift([0.0; 3]),
                lift(scale(*n, d)),
                lift(scale(corners[cyc[j]], s)),
                lift(scale(corners[cyc[(j + 1) % 5]], s)),
            ]);
        }
    }
    let signs = glu_core::orient::orientation(&tri).expect("orientable");
    let sign = crate::tetra::orientation_sign(vertices[0], 0.0).expect("non-degenerate");
    if sign != signs[0] {
        for v in vertices.iter_mut() {
            for p in v.iter_mut() {
                p.x1 = -p.x1;
            }
        }
    }
    SeifertWeber {
        tri,
        vertices,
        face_distance: d,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::tetra::{orientation_sign, ModelTetrahedron};
    use glu_core::link::is_closed_3_manifold;
    use glu_core::Skeleton;
    use std::f64::consts::PI;

    #[test]
    fn combinatorics() {
        let sw = seifert_weber();
        assert_eq!(sw.tri.tet_count(), 60);
        assert!(is_closed_3_manifold(&sw.tri));
        let sk = Skeleton::new(&sw.tri);
        // centre, six face-centre pairs, one corner class
        assert_eq!(sk.vertex_count, 8);
        let mut degrees = sk.edge_degrees();
        degrees.sort_unstable();
        // the 30 dodecahedral edges fall into 6 classes of 5, each met twice
        assert_eq!(degrees.iter().filter(|&&d| d == 10).count(), 6);
        let h1 = glu_core::pi1::abelianization(
            &glu_core::pi1::presentation_from_triangulation(&sw.tri).unwrap(),
        );
        assert_eq!(h1.to_string(), "Z/5 + Z/5 + Z/5");
    }

    #[test]
    fn coordinates_close_up_around_every_edge() {
        let sw = seifert_weber();
        let signs = glu_core::orient::orientation(&sw.tri).unwrap();
        let tets: Vec<ModelTetrahedron> =
            sw.vertices.iter().map(|v| ModelTetrahedron::new(*v).unwrap()).collect();
        for (i, v) in sw.vertices.iter().enumerate() {
            assert_eq!(orientation_sign(*v, 1e-12), Some(signs[i]));
        }
        let sk = Skeleton::new(&sw.tri);
        let mut sums = vec![0.0; sk.edge_count];
        for (i, t) in tets.iter().enumerate() {
            for n in 0..6 {
                sums[sk.edge_of[i][n]] += t.angle(n);
            }
        }
        for s in sums {
            assert!((s - 2.0 * PI).abs() < 1e-12, "{s}");
        }
    }
}
