//! Small closed gluings used as fixtures.

use crate::pachner::scramble;
use crate::perm::Perm4;
use crate::signature::iso_signature;
use crate::tri::Triangulation;

/// Two tetrahedra with face `k` of one glued to face `k` of the other by the identity.
pub fn double_tetrahedron() -> Triangulation {
    let row0 = [(1, Perm4::IDENTITY); 4];
    let row1 = [(0, Perm4::IDENTITY); 4];
    Triangulation::from_adjacency_trusted(vec![row0, row1])
}

/// A `p`-tetrahedron gluing of the lens space L(p, q), `p >= 1`, `gcd(p, q) = 1`.
///
/// Tetrahedron `i` has vertices `(N, S, a_i, a_{i+1})` around a cycle
/// `a_0 .. a_{p-1}`. The faces `(N, S, a_{i+1})` close up the cycle, and the
/// upper face `(N, a_i, a_{i+1})` of tetrahedron `i` is glued to the lower
/// face `(S, a_{i+q}, a_{i+q+1})` of tetrahedron `i+q`.
pub fn lens_space(p: usize, q: usize) -> Triangulation {
    assert!(p >= 1, "lens space needs p >= 1");
    let around = Perm4::new([0, 1, 3, 2]).unwrap();
    let twist = Perm4::new([1, 0, 2, 3]).unwrap();
    let adj = (0..p)
        .map(|i| {
            [
                ((i + p - q % p) % p, twist),
                ((i + q) % p, twist),
                ((i + 1) % p, around),
                ((i + p - 1) % p, around),
            ]
        })
        .collect();
    Triangulation::from_adjacency_trusted(adj)
}

/// A one-tetrahedron gluing of the 3-sphere.
pub fn one_tetrahedron_sphere() -> Triangulation {
    lens_space(1, 0)
}

/// Named fixtures, smallest first.
pub fn fixtures() -> Vec<(String, Triangulation)> {
    let mut out = vec![
        ("s3-1".to_string(), one_tetrahedron_sphere()),
        ("double".to_string(), double_tetrahedron()),
    ];
    for (p, q) in [(2, 1), (3, 1), (4, 1), (5, 1), (5, 2)] {
        out.push((format!("lens-{p}-{q}"), lens_space(p, q)));
    }
    out
}

/// The fixtures together with short random scrambles of them, one gluing
/// per isomorphism class, keeping those with at most `max_t` tetrahedra.
pub fn instances(max_t: usize) -> Vec<(String, Triangulation)> {
    let mut seen = std::collections::HashSet::new();
    let mut out = Vec::new();
    let mut keep = |name: String, t: Triangulation, out: &mut Vec<(String, Triangulation)>| {
        if t.tet_count() <= max_t && seen.insert(iso_signature(&t)) {
            out.push((name, t));
        }
    };
    let base = fixtures();
    for (name, t) in &base {
        keep(name.clone(), t.clone(), &mut out);
    }
    for (name, t) in &base {
        for k in 1..=3 {
            for seed in 0..4 {
                let (s, _) = scramble(t, k, seed);
                keep(format!("{name}~{k}.{seed}"), s, &mut out);
            }
        }
    }
    out.sort_by_key(|(_, t)| t.tet_count());
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::link::is_closed_3_manifold;
    use crate::orient::is_orientable;

    #[test]
    fn fixtures_are_oriented_manifolds() {
        for (name, t) in fixtures() {
            assert!(is_closed_3_manifold(&t), "{name}");
            assert!(is_orientable(&t), "{name}");
            assert!(t.is_connected(), "{name}");
        }
    }

    #[test]
    fn instance_suite_is_varied() {
        let all = instances(5);
        assert!(all.iter().all(|(_, t)| t.tet_count() <= 5));
        for t in 1..=5 {
            assert!(all.iter().any(|(_, x)| x.tet_count() == t), "no instance with {t} tetrahedra");
        }
        for (name, t) in &all {
            assert!(is_closed_3_manifold(t), "{name}");
        }
    }
}
