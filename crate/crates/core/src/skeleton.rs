use serde::{Deserialize, Serialize};

use crate::tri::Triangulation;

/// The six edges of a tetrahedron as ordered vertex pairs, in index order.
pub const EDGES: [(usize, usize); 6] = [(0, 1), (0, 2), (0, 3), (1, 2), (1, 3), (2, 3)];

/// Index of the edge joining local vertices `a` and `b` (in either order).
pub fn edge_index(a: usize, b: usize) -> usize {
    let (a, b) = if a < b { (a, b) } else { (b, a) };
    match (a, b) {
        (0, 1) => 0,
        (0, 2) => 1,
        (0, 3) => 2,
        (1, 2) => 3,
        (1, 3) => 4,
        (2, 3) => 5,
        _ => panic!("no edge between {a} and {b}"),
    }
}

/// Union-find where each element carries a parity relative to its root.
#[derive(Debug, Clone)]
pub(crate) struct ParityUnionFind {
    parent: Vec<usize>,
    parity: Vec<bool>,
}

impl ParityUnionFind {
    pub(crate) fn new(n: usize) -> Self {
        ParityUnionFind {
            parent: (0..n).collect(),
            parity: vec![false; n],
        }
    }

    pub(crate) fn find(&mut self, x: usize) -> (usize, bool) {
        let mut root = x;
        let mut par = false;
        while self.parent[root] != root {
            par ^= self.parity[root];
            root = self.parent[root];
        }
        // path compression
        let mut cur = x;
        let mut cur_par = par;
        while self.parent[cur] != root {
            let next = self.parent[cur];
            let next_par = cur_par ^ self.parity[cur];
            self.parent[cur] = root;
            self.parity[cur] = cur_par;
            cur = next;
            cur_par = next_par;
        }
        (root, par)
    }

    /// Joins `x` and `y` with relative parity `flip`. Returns false on a parity conflict.
    pub(crate) fn union(&mut self, x: usize, y: usize, flip: bool) -> bool {
        let (rx, px) = self.find(x);
        let (ry, py) = self.find(y);
        if rx == ry {
            return px ^ py == flip;
        }
        let (lo, hi) = if rx < ry { (rx, ry) } else { (ry, rx) };
        self.parent[hi] = lo;
        self.parity[hi] = px ^ py ^ flip;
        true
    }
}

/// Counts of simplices after gluing.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct SkeletonReport {
    pub vertex_classes: usize,
    pub edge_classes: usize,
    pub triangle_classes: usize,
    pub tetrahedra: usize,
    pub euler_characteristic: i64,
}

/// Vertex, edge and triangle classes of a gluing.
///
/// Class ids are assigned in order of first appearance scanning tetrahedra
/// and then local indices.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Skeleton {
    pub vertex_of: Vec<[usize; 4]>,
    pub edge_of: Vec<[usize; 6]>,
    pub triangle_of: Vec<[usize; 4]>,
    /// For each (tet, edge), whether the local direction (low -> high label)
    /// disagrees with the class representative's direction.
    pub edge_flip: Vec<[bool; 6]>,
    pub vertex_count: usize,
    pub edge_count: usize,
    pub triangle_count: usize,
    /// Edge classes that are glued to themselves with reversed direction.
    pub reversed_edges: Vec<usize>,
}

fn relabel_roots(roots: impl Iterator<Item = usize>, n: usize) -> (Vec<usize>, usize) {
    let mut id = vec![usize::MAX; n];
    let mut out = Vec::new();
    let mut next = 0;
    for r in roots {
        if id[r] == usize::MAX {
            id[r] = next;
            next += 1;
        }
        out.push(id[r]);
    }
    (out, next)
}

impl Skeleton {
    pub fn new(tri: &Triangulation) -> Skeleton {
        let t = tri.tet_count();
        let mut verts = ParityUnionFind::new(4 * t);
        let mut edges = ParityUnionFind::new(6 * t);
        let mut faces = ParityUnionFind::new(4 * t);
        let mut conflict = vec![false; 6 * t];
        for g in tri.gluings() {
            let (i, k) = g.source;
            let (j, kk) = g.target;
            let p = g.map;
            faces.union(4 * i + k, 4 * j + kk, false);
            for a in (0..4).filter(|&a| a != k) {
                verts.union(4 * i + a, 4 * j + p.apply(a), false);
                for b in (a + 1..4).filter(|&b| b != k) {
                    let (pa, pb) = (p.apply(a), p.apply(b));
                    let flip = pa > pb;
                    let x = 6 * i + edge_index(a, b);
                    if !edges.union(x, 6 * j + edge_index(pa, pb), flip) {
                        conflict[x] = true;
                    }
                }
            }
        }

        let (v_ids, vertex_count) = relabel_roots((0..4 * t).map(|x| verts.find(x).0), 4 * t);
        let (e_ids, edge_count) = relabel_roots((0..6 * t).map(|x| edges.find(x).0), 6 * t);
        let (f_ids, triangle_count) = relabel_roots((0..4 * t).map(|x| faces.find(x).0), 4 * t);

        let mut reversed = Vec::new();
        for x in 0..6 * t {
            if conflict[x] && !reversed.contains(&e_ids[x]) {
                reversed.push(e_ids[x]);
            }
        }
        reversed.sort_unstable();

        // direction relative to the first-appearing member of each class
        let mut rep_parity = vec![None; edge_count];
        let mut edge_flip = vec![[false; 6]; t];
        for x in 0..6 * t {
            let par = edges.find(x).1;
            let c = e_ids[x];
            let base = *rep_parity[c].get_or_insert(par);
            edge_flip[x / 6][x % 6] = par ^ base;
        }

        Skeleton {
            vertex_of: v_ids.chunks(4).map(|c| [c[0], c[1], c[2], c[3]]).collect(),
            edge_of: e_ids
                .chunks(6)
                .map(|c| [c[0], c[1], c[2], c[3], c[4], c[5]])
                .collect(),
            triangle_of: f_ids.chunks(4).map(|c| [c[0], c[1], c[2], c[3]]).collect(),
            edge_flip,
            vertex_count,
            edge_count,
            triangle_count,
            reversed_edges: reversed,
        }
    }

    pub fn report(&self) -> SkeletonReport {
        let t = self.vertex_of.len();
        SkeletonReport {
            vertex_classes: self.vertex_count,
            edge_classes: self.edge_count,
            triangle_classes: self.triangle_count,
            tetrahedra: t,
            euler_characteristic: self.vertex_count as i64 - self.edge_count as i64
                + self.triangle_count as i64
                - t as i64,
        }
    }

    /// Number of (tetrahedron, local edge) incidences of each edge class.
    pub fn edge_degrees(&self) -> Vec<usize> {
        let mut deg = vec![0; self.edge_count];
        for row in &self.edge_of {
            for &c in row {
                deg[c] += 1;
            }
        }
        deg
    }

    /// Number of (tetrahedron, corner) incidences of each vertex class.
    pub fn vertex_degrees(&self) -> Vec<usize> {
        let mut deg = vec![0; self.vertex_count];
        for row in &self.vertex_of {
            for &c in row {
                deg[c] += 1;
            }
        }
        deg
    }
}

/// Skeleton counts and Euler characteristic of a gluing.
pub fn skeleton(tri: &Triangulation) -> SkeletonReport {
    Skeleton::new(tri).report()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::census;

    #[test]
    fn edge_indices_round_trip() {
        for (n, &(a, b)) in EDGES.iter().enumerate() {
            assert_eq!(edge_index(a, b), n);
            assert_eq!(edge_index(b, a), n);
        }
    }

    #[test]
    fn double_tetrahedron_counts() {
        let r = skeleton(&census::double_tetrahedron());
        assert_eq!(
            r,
            SkeletonReport {
                vertex_classes: 4,
                edge_classes: 6,
                triangle_classes: 4,
                tetrahedra: 2,
                euler_characteristic: 0
            }
        );
    }

    #[test]
    fn empty_gluing() {
        let r = skeleton(&Triangulation::empty());
        assert_eq!(r.vertex_classes + r.edge_classes + r.triangle_classes, 0);
        assert_eq!(r.euler_characteristic, 0);
    }

    #[test]
    fn parity_conflicts_are_detected() {
        let mut uf = ParityUnionFind::new(3);
        assert!(uf.union(0, 1, true));
        assert!(uf.union(1, 2, true));
        assert!(uf.union(0, 2, false));
        assert!(!uf.union(0, 2, true));
    }
}
