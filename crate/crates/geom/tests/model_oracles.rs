mod common;

use std::f64::consts::PI;

use common::{classical_distance, minkowski, minkowski_normal_angles, random_point};
use glu_geom::model::{
    ball_distance, ball_to_hyperboloid, ball_to_uhs, hyperbolic_distance, hyperboloid_distance,
    uhs_to_ball, uhs_to_hyperboloid,
};
use glu_geom::tetra::{orientation_sign, realize_from_lengths};
use glu_geom::{dihedral_angles, PointBall, PointUHS};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

#[test]
fn distances_agree_across_models() {
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    let base = PointUHS::new(0.0, 0.0, 1.0).unwrap();
    for _ in 0..1000 {
        let (x, y) = (random_point(&mut rng), random_point(&mut rng));
        let d = hyperbolic_distance(x, y).unwrap();
        let tol = 1e-9 * d.max(1.0);
        assert!((d - classical_distance(x, y)).abs() < tol);
        let (hx, hy) = (uhs_to_hyperboloid(x), uhs_to_hyperboloid(y));
        assert!((d - (-minkowski(hx.0, hy.0)).acosh()).abs() < tol);
        assert!((d - hyperboloid_distance(hx, hy)).abs() < tol);
        let (bx, by) = (uhs_to_ball(x, base).unwrap(), uhs_to_ball(y, base).unwrap());
        assert!((d - ball_distance(bx, by)).abs() < tol);
        let (gx, gy) = (ball_to_hyperboloid(bx), ball_to_hyperboloid(by));
        assert!((d - hyperboloid_distance(gx, gy)).abs() < tol);
        // moving the base point is an isometry too
        let v0 = random_point(&mut rng);
        let (cx, cy) = (uhs_to_ball(x, v0).unwrap(), uhs_to_ball(y, v0).unwrap());
        assert!((d - ball_distance(cx, cy)).abs() < tol);
        assert!((d - hyperbolic_distance(y, x).unwrap()).abs() == 0.0);
    }
}

#[test]
fn distance_triangle_inequality_spot_check() {
    let mut rng = ChaCha8Rng::seed_from_u64(8);
    for _ in 0..200 {
        let (x, y, z) = (random_point(&mut rng), random_point(&mut rng), random_point(&mut rng));
        let d = |a, b| hyperbolic_distance(a, b).unwrap();
        assert!(d(x, z) <= d(x, y) + d(y, z) + 1e-12);
    }
}

#[test]
fn dihedral_angles_match_minkowski_normals() {
    let mut rng = ChaCha8Rng::seed_from_u64(9);
    let mut checked = 0;
    while checked < 1000 {
        let v = [0; 4].map(|_| random_point(&mut rng));
        if orientation_sign(v, 1e-3).is_none() {
            continue;
        }
        let ours = dihedral_angles(v).unwrap();
        let oracle = minkowski_normal_angles(v);
        for n in 0..6 {
            let (c, s) = ours[n];
            assert!(s >= 0.0);
            assert!((c * c + s * s - 1.0).abs() < 1e-15);
            assert!((s.atan2(c) - oracle[n]).abs() < 1e-8, "{} vs {}", s.atan2(c), oracle[n]);
            assert!(oracle[n] > 0.0 && oracle[n] < PI);
        }
        checked += 1;
    }
}

#[test]
fn small_regular_tetrahedron_is_nearly_euclidean() {
    let v = realize_from_lengths([1e-3; 6], 1).unwrap();
    for (c, s) in dihedral_angles(v).unwrap() {
        assert!((s.atan2(c) - (1.0f64 / 3.0).acos()).abs() < 1e-3);
    }
    for n in 0..6 {
        let (a, b) = glu_core::skeleton::EDGES[n];
        assert!((hyperbolic_distance(v[a], v[b]).unwrap() - 1e-3).abs() < 1e-12);
    }
}

#[test]
fn wedge_fan_closes_up() {
    // five wedges around the vertical diameter of the ball
    let r = 0.6;
    let step = 2.0 * PI / 5.0;
    let mut total = 0.0;
    for k in 0..5 {
        let a = k as f64 * step;
        let pts = [
            [0.0, 0.0, 0.5],
            [0.0, 0.0, -0.4],
            [r * a.cos(), r * a.sin(), 0.1],
            [r * (a + step).cos(), r * (a + step).sin(), 0.1],
        ];
        let v = pts.map(|p| ball_to_uhs(PointBall::new(p).unwrap()).unwrap());
        let (c, s) = dihedral_angles(v).unwrap()[0];
        total += s.atan2(c);
    }
    assert!((total - 2.0 * PI).abs() < 1e-12);
}
