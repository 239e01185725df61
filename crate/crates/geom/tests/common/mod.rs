#![allow(dead_code)]

use glu_geom::model::uhs_to_hyperboloid;
use glu_geom::PointUHS;
use rand::Rng;
use rand_chacha::ChaCha8Rng;

pub fn random_point(rng: &mut ChaCha8Rng) -> PointUHS {
    PointUHS::new(
        rng.gen_range(-3.0..3.0),
        rng.gen_range(-3.0..3.0),
        rng.gen_range(0.2f64..5.0),
    )
    .unwrap()
}

/// Textbook upper half-space formula, `cosh d = 1 + |x-y|^2 / (2 x3 y3)`.
pub fn classical_distance(x: PointUHS, y: PointUHS) -> f64 {
    let d2 = (x.x1 - y.x1).powi(2) + (x.x2 - y.x2).powi(2) + (x.x3 - y.x3).powi(2);
    (1.0 + d2 / (2.0 * x.x3 * y.x3)).acosh()
}

pub fn minkowski(a: [f64; 4], b: [f64; 4]) -> f64 {
    a[0] * b[0] + a[1] * b[1] + a[2] * b[2] - a[3] * b[3]
}

/// Face normals in the hyperboloid model, pointing into the tetrahedron;
/// the dihedral angle at edge ab is π minus the angle between the inward
/// normals of the two faces containing it.
pub fn minkowski_normal_angles(v: [PointUHS; 4]) -> [f64; 6] {
    let p = v.map(|x| uhs_to_hyperboloid(x).0);
    let normal = |k: usize| {
        let rest: Vec<usize> = (0..4).filter(|&r| r != k).collect();
        let mut n = [0.0; 4];
        for (i, slot) in n.iter_mut().enumerate() {
            let rows: Vec<usize> = (0..4).filter(|&r| r != i).collect();
            let m = |r: usize, c: usize| p[rest[c]][rows[r]];
            let det = m(0, 0) * (m(1, 1) * m(2, 2) - m(1, 2) * m(2, 1))
                - m(0, 1) * (m(1, 0) * m(2, 2) - m(1, 2) * m(2, 0))
                + m(0, 2) * (m(1, 0) * m(2, 1) - m(1, 1) * m(2, 0));
            *slot = if i % 2 == 0 { det } else { -det };
        }
        n[3] = -n[3];
        if minkowski(n, p[k]) < 0.0 {
            n = n.map(|x| -x);
        }
        n
    };
    let normals: Vec<[f64; 4]> = (0..4).map(normal).collect();
    glu_core::skeleton::EDGES.map(|(a, b)| {
        let mut rest = (0..4).filter(|&x| x != a && x != b);
        let (k, l) = (rest.next().unwrap(), rest.next().unwrap());
        let (nk, nl) = (normals[k], normals[l]);
        let c = -minkowski(nk, nl) / (minkowski(nk, nk) * minkowski(nl, nl)).sqrt();
        c.clamp(-1.0, 1.0).acos()
    })
}

