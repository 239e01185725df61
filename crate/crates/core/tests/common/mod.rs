#![allow(dead_code)]

pub mod quotient;

use glu_core::{Perm4, Triangulation};
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

/// A uniformly random pairing of the 4t faces with random gluing maps.
pub fn random_gluing(t: usize, seed: u64) -> Triangulation {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut slots: Vec<(usize, usize)> = (0..t).flat_map(|i| (0..4).map(move |k| (i, k))).collect();
    slots.shuffle(&mut rng);
    let mut adj = vec![[(0usize, Perm4::IDENTITY); 4]; t];
    for pair in slots.chunks(2) {
        let ((i, k), (j, l)) = (pair[0], pair[1]);
        // random bijection of the other three vertices, plus k -> l
        let mut rest: Vec<u8> = (0..4u8).filter(|&x| x as usize != l).collect();
        rest.shuffle(&mut rng);
        let mut img = [0u8; 4];
        let mut it = rest.into_iter();
        for (a, slot) in img.iter_mut().enumerate() {
            *slot = if a == k { l as u8 } else { it.next().unwrap() };
        }
        let p = Perm4::new(img).unwrap();
        adj[i][k] = (j, p);
        adj[j][l] = (i, p.inverse());
    }
    Triangulation::from_adjacency(adj).expect("random pairing is a valid gluing")
}

/// A random relabeling: tetrahedron permutation and per-tetrahedron vertex maps.
pub fn random_relabeling(t: usize, seed: u64) -> (Vec<usize>, Vec<Perm4>) {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut tets: Vec<usize> = (0..t).collect();
    tets.shuffle(&mut rng);
    let all: Vec<Perm4> = glu_core::perm::ALL_PERMS.to_vec();
    let maps = (0..t).map(|_| all[rng.gen_range(0..24)]).collect();
    (tets, maps)
}

/// Plain union-find.
pub struct Dsu(Vec<usize>);

impl Dsu {
    pub fn new(n: usize) -> Dsu {
        Dsu((0..n).collect())
    }
    pub fn find(&mut self, x: usize) -> usize {
        let mut r = x;
        while self.0[r] != r {
            r = self.0[r];
        }
        self.0[x] = r;
        r
    }
    pub fn union(&mut self, a: usize, b: usize) {
        let (a, b) = (self.find(a), self.find(b));
        self.0[a.max(b)] = a.min(b);
    }
    pub fn classes(&mut self) -> usize {
        (0..self.0.len()).filter(|&x| self.find(x) == x).count()
    }
}

/// Orientation by trying every sign vector with the first sign positive.
pub fn brute_orientation(tri: &Triangulation) -> Option<Vec<i8>> {
    let t = tri.tet_count();
    assert!(t <= 16);
    (0u32..1 << t.saturating_sub(1)).find_map(|bits| {
        let signs: Vec<i8> = (0..t)
            .map(|i| if i > 0 && bits >> (i - 1) & 1 == 1 { -1 } else { 1 })
            .collect();
        let ok = (0..t).all(|i| {
            (0..4).all(|k| {
                let (j, p) = tri.neighbor(i, k);
                signs[j] as i32 == -(p.sign()) * signs[i] as i32
            })
        });
        ok.then_some(signs)
    })
}

/// Euler characteristic of each vertex link, and whether each link is
/// connected, computed from corners and their sides.
pub fn link_data(tri: &Triangulation) -> Vec<(i64, bool)> {
    let t = tri.tet_count();
    let corner = |i: usize, v: usize| 4 * i + v;
    let mut vertices = Dsu::new(4 * t);
    // link vertex (i, v, w): direction from corner v towards w
    let dir = |i: usize, v: usize, w: usize| 16 * i + 4 * v + w;
    let mut dirs = Dsu::new(16 * t);
    for i in 0..t {
        for k in 0..4 {
            let (j, p) = tri.neighbor(i, k);
            for v in (0..4).filter(|&v| v != k) {
                vertices.union(corner(i, v), corner(j, p.apply(v)));
                for w in (0..4).filter(|&w| w != k && w != v) {
                    dirs.union(dir(i, v, w), dir(j, p.apply(v), p.apply(w)));
                }
            }
        }
    }
    let mut roots: Vec<usize> = (0..4 * t).map(|c| vertices.find(c)).collect();
    roots.sort_unstable();
    roots.dedup();
    roots
        .into_iter()
        .map(|r| {
            let corners: Vec<(usize, usize)> = (0..t)
                .flat_map(|i| (0..4).map(move |v| (i, v)))
                .filter(|&(i, v)| vertices.find(corner(i, v)) == r)
                .collect();
            let f = corners.len() as i64;
            let e = 3 * f / 2;
            let mut link_verts: Vec<usize> = corners
                .iter()
                .flat_map(|&(i, v)| (0..4).filter(move |&w| w != v).map(move |w| (i, v, w)))
                .map(|(i, v, w)| dirs.find(dir(i, v, w)))
                .collect();
            link_verts.sort_unstable();
            link_verts.dedup();
            // triangles are connected through shared sides
            let mut comp = Dsu::new(4 * t);
            for &(i, v) in &corners {
                for k in (0..4).filter(|&k| k != v) {
                    let (j, p) = tri.neighbor(i, k);
                    comp.union(corner(i, v), corner(j, p.apply(v)));
                }
            }
            let c0 = comp.find(corner(corners[0].0, corners[0].1));
            let connected = corners.iter().all(|&(i, v)| comp.find(corner(i, v)) == c0);
            (link_verts.len() as i64 - e + f, connected)
        })
        .collect()
}

/// Whether some edge is glued to itself with its ends swapped.
pub fn has_reversed_edge(tri: &Triangulation) -> bool {
    let t = tri.tet_count();
    let dir = |i: usize, a: usize, b: usize| 16 * i + 4 * a + b;
    let mut d = Dsu::new(16 * t);
    for i in 0..t {
        for k in 0..4 {
            let (j, p) = tri.neighbor(i, k);
            for a in (0..4).filter(|&a| a != k) {
                for b in (0..4).filter(|&b| b != k && b != a) {
                    d.union(dir(i, a, b), dir(j, p.apply(a), p.apply(b)));
                }
            }
        }
    }
    (0..t).any(|i| {
        (0..4).any(|a| (a + 1..4).any(|b| d.find(dir(i, a, b)) == d.find(dir(i, b, a))))
    })
}

pub fn oracle_is_manifold(tri: &Triangulation) -> bool {
    !has_reversed_edge(tri) && link_data(tri).iter().all(|&(chi, conn)| chi == 2 && conn)
}

/// V - E + F - T from independent class counts.
pub fn oracle_euler(tri: &Triangulation) -> i64 {
    let t = tri.tet_count();
    let mut v = Dsu::new(4 * t);
    let mut e = Dsu::new(16 * t);
    for i in 0..t {
        for k in 0..4 {
            let (j, p) = tri.neighbor(i, k);
            for a in (0..4).filter(|&a| a != k) {
                v.union(4 * i + a, 4 * j + p.apply(a));
                for b in (0..4).filter(|&b| b != k && b != a) {
                    let (x, y) = (p.apply(a), p.apply(b));
                    e.union(16 * i + 4 * a.min(b) + a.max(b), 16 * j + 4 * x.min(y) + x.max(y));
                }
            }
        }
    }
    let vertices = v.classes() as i64;
    let edges = (0..16 * t)
        .filter(|&x| {
            let (a, b) = ((x % 16) / 4, x % 4);
            a < b && e.find(x) == x
        })
        .count() as i64;
    // every face is shared by exactly two tetrahedra
    let faces = 2 * t as i64;
    vertices - edges + faces - t as i64
}
