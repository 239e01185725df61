use serde::{Deserialize, Serialize};

use crate::perm::{Perm4, ALL_PERMS};
use crate::tri::Triangulation;

/// Where a tetrahedron of a subdivision sits in the original gluing.
///
/// `masks[l]` is the set (bit `v` = original vertex `v`) of original
/// vertices whose span contains local vertex `l` in its relative interior.
/// A single bit is an original vertex, two bits an edge barycenter or
/// edge point, three a face point, four a body point.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct Carrier {
    pub tet: usize,
    pub masks: [u8; 4],
}

/// A subdivided gluing together with its carrier data.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Subdivision {
    pub tri: Triangulation,
    pub carrier: Vec<Carrier>,
}

fn flag_masks(sigma: Perm4) -> [u8; 4] {
    let mut masks = [0u8; 4];
    let mut acc = 0u8;
    for (l, m) in masks.iter_mut().enumerate() {
        acc |= 1 << sigma.apply(l);
        *m = acc;
    }
    masks
}

/// Barycentric subdivision: 24 tetrahedra per tetrahedron, one per flag.
///
/// Sub-tetrahedron `24 i + σ.index()` has local vertices
/// (vertex `σ0`, edge `σ0σ1`, face `σ0σ1σ2`, body) of tetrahedron `i`.
pub fn barycentric_subdivision(tri: &Triangulation) -> Subdivision {
    let t = tri.tet_count();
    let mut adj = Vec::with_capacity(24 * t);
    let mut carrier = Vec::with_capacity(24 * t);
    for i in 0..t {
        for sigma in ALL_PERMS {
            let mut row = [(0usize, Perm4::IDENTITY); 4];
            for (r, slot) in row.iter_mut().enumerate().take(3) {
                let other = sigma.compose(Perm4::transposition(r, r + 1));
                *slot = (24 * i + other.index(), Perm4::IDENTITY);
            }
            let (j, p) = tri.neighbor(i, sigma.apply(3));
            row[3] = (24 * j + p.compose(sigma).index(), Perm4::IDENTITY);
            adj.push(row);
            carrier.push(Carrier {
                tet: i,
                masks: flag_masks(sigma),
            });
        }
    }
    Subdivision {
        tri: Triangulation::from_adjacency_trusted(adj),
        carrier,
    }
}

/// The two vertices of face `k` other than `v`, ascending.
fn face_pair(k: usize, v: usize) -> (usize, usize) {
    let mut it = (0..4).filter(|&x| x != k && x != v);
    (it.next().unwrap(), it.next().unwrap())
}

/// Index of sub-tetrahedron `(k, v)` of tetrahedron `i` in the coned subdivision.
pub fn coned_index(i: usize, k: usize, v: usize) -> usize {
    12 * i + 3 * k + if v < k { v } else { v - 1 }
}

/// The first coned subdivision, built directly: every face is coned to a
/// center and every tetrahedron to a body point, giving 12 per tetrahedron.
///
/// Sub-tetrahedron [`coned_index`]`(i, k, v)` lies on face `k` of `i`
/// opposite original vertex `v`, with local vertices `(a, b, c_k, B)` where
/// `a < b` are the other two vertices of face `k`.
pub fn first_coned_subdivision_direct(tri: &Triangulation) -> Subdivision {
    let t = tri.tet_count();
    let mut adj = vec![[(0usize, Perm4::IDENTITY); 4]; 12 * t];
    let mut carrier = vec![
        Carrier {
            tet: 0,
            masks: [0; 4]
        };
        12 * t
    ];
    for i in 0..t {
        for k in 0..4 {
            for v in (0..4).filter(|&v| v != k) {
                let (a, b) = face_pair(k, v);
                let me = coned_index(i, k, v);
                carrier[me] = Carrier {
                    tet: i,
                    masks: [1 << a, 1 << b, 0b1111 & !(1 << k), 0b1111],
                };
                let mut row = [(0usize, Perm4::IDENTITY); 4];
                // across the original face
                let (j, p) = tri.neighbor(i, k);
                let (pk, pv) = (p.apply(k), p.apply(v));
                let (pa, _) = face_pair(pk, pv);
                let img_a = if p.apply(a) == pa { 0 } else { 1 };
                row[3] = (
                    coned_index(j, pk, pv),
                    Perm4::new([img_a, 1 - img_a, 2, 3]).unwrap(),
                );
                // through the interior triangle on edge ab
                row[2] = (coned_index(i, v, k), Perm4::IDENTITY);
                // around the face center: replace a (or b) by v
                for (slot, gone, keep) in [(0usize, a, b), (1usize, b, a)] {
                    let (x, y) = face_pair(k, gone);
                    let pos = |w: usize| {
                        if w == x {
                            0u8
                        } else {
                            debug_assert_eq!(w, y);
                            1
                        }
                    };
                    let mut img = [0u8, 0, 2, 3];
                    img[slot] = pos(v);
                    img[1 - slot] = pos(keep);
                    row[slot] = (coned_index(i, k, gone), Perm4::new(img).unwrap());
                }
                adj[me] = row;
            }
        }
    }
    Subdivision {
        tri: Triangulation::from_adjacency_trusted(adj),
        carrier,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::census;
    use crate::link::is_closed_3_manifold;
    use crate::skeleton::skeleton;

    #[test]
    fn barycentric_counts() {
        let d = census::double_tetrahedron();
        let b = barycentric_subdivision(&d);
        assert_eq!(b.tri.tet_count(), 48);
        assert!(is_closed_3_manifold(&b.tri));
        assert_eq!(skeleton(&b.tri).euler_characteristic, 0);
        let bb = barycentric_subdivision(&b.tri);
        assert_eq!(bb.tri.tet_count(), 576 * 2);
        // V + E + F + T of the original
        let r = skeleton(&b.tri);
        assert_eq!(r.vertex_classes, 4 + 6 + 4 + 2);
    }

    #[test]
    fn coned_counts() {
        for (name, t) in census::fixtures() {
            let s = first_coned_subdivision_direct(&t);
            assert_eq!(s.tri.tet_count(), 12 * t.tet_count(), "{name}");
            assert!(is_closed_3_manifold(&s.tri), "{name}");
            let r0 = skeleton(&t);
            let r = skeleton(&s.tri);
            assert_eq!(
                r.vertex_classes,
                r0.vertex_classes + r0.triangle_classes + r0.tetrahedra
            );
        }
    }
}
