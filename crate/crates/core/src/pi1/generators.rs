use std::collections::VecDeque;

use rayon::prelude::*;
use serde::Serialize;

use super::presentation::reduce;
use crate::dual::{DualGraph, SpanningTree};
use crate::error::Pi1Error;
use crate::skeleton::{edge_index, ParityUnionFind, Skeleton, EDGES};
use crate::subdivide::{coned_index, first_coned_subdivision_direct, Subdivision};
use crate::tri::{FaceGluing, Triangulation};

/// X′ with its spanning trees: the dual tree Λ′ of the original gluing, and
/// Γ, a spanning tree of the 1-skeleton of X′ through coning vertices.
#[derive(Debug, Clone)]
pub struct PartialBarycentric {
    pub subdivision: Subdivision,
    pub skeleton: Skeleton,
    pub dual: DualGraph,
    pub tree: SpanningTree,
    /// Edge classes of X′ in Γ, ascending.
    pub gamma: Vec<usize>,
    /// Edge classes of X′ making up the image of Λ′ (body to face center to body).
    pub lambda: Vec<usize>,
}

/// Face pairings of the polyhedron obtained by cutting along the non-tree faces.
#[derive(Debug, Clone)]
pub struct FacePairingGens {
    pub tree: SpanningTree,
    /// Pairing `s` (1-based) is `pairings[s - 1]`, from its source face to its target.
    pub pairings: Vec<FaceGluing>,
    /// Edge class of X′ from the target face center to its body: the
    /// non-Γ edge whose simplicial loop is the pairing.
    pub loops: Vec<usize>,
}

/// A simplicial generator of X′ written in the face pairings.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct GeneratorWord {
    /// Edge class of X′ not in Γ.
    pub edge: usize,
    /// Pairings carrying the Γ-lift of the tail to the chosen lift of the edge's tail.
    pub tail_walk: Vec<i64>,
    /// Same for the head.
    pub head_walk: Vec<i64>,
    /// Signed pairing indices.
    pub word: Vec<i64>,
}

fn face_pair(k: usize, v: usize) -> (usize, usize) {
    let mut it = (0..4).filter(|&x| x != k && x != v);
    (it.next().unwrap(), it.next().unwrap())
}

fn roots(uf: &mut ParityUnionFind, n: usize) -> (Vec<usize>, usize) {
    let mut id = vec![usize::MAX; n];
    let mut out = Vec::with_capacity(n);
    let mut next = 0;
    for x in 0..n {
        let r = uf.find(x).0;
        if id[r] == usize::MAX {
            id[r] = next;
            next += 1;
        }
        out.push(id[r]);
    }
    (out, next)
}

/// Cones every face, then every tetrahedron, and picks Λ′ and Γ.
///
/// Γ contains, for each tree face, the edges from its center to both
/// bodies; for each other face, the edge from its center to the body on its
/// source side; for each vertex class, the edge to the body at its first corner.
pub fn partial_barycentric_subdivision(tri: &Triangulation) -> Result<PartialBarycentric, Pi1Error> {
    let dual = DualGraph::new(tri);
    let tree = dual.spanning_tree(0)?;
    let subdivision = first_coned_subdivision_direct(tri);
    let sk = Skeleton::new(&subdivision.tri);
    let t = tri.tet_count();
    let mut in_tree = vec![false; dual.edges.len()];
    for &e in &tree.edges {
        in_tree[e] = true;
    }
    // any sub-tetrahedron on face k of i
    let center_body = |i: usize, k: usize| {
        let v = (k + 1) % 4;
        sk.edge_of[coned_index(i, k, v)][edge_index(2, 3)]
    };
    let mut lambda = Vec::new();
    let mut gamma = Vec::new();
    for (e, g) in dual.edges.iter().enumerate() {
        let (i, k) = g.source;
        let (j, l) = g.target;
        gamma.push(center_body(i, k));
        if in_tree[e] {
            gamma.push(center_body(j, l));
            lambda.push(center_body(i, k));
            lambda.push(center_body(j, l));
        }
    }
    let mut seen = vec![false; sk.vertex_count];
    for i in 0..t {
        for k in 0..4 {
            for v in (0..4).filter(|&v| v != k) {
                let s = coned_index(i, k, v);
                for l in 0..2 {
                    let x = sk.vertex_of[s][l];
                    if !seen[x] {
                        seen[x] = true;
                        gamma.push(sk.edge_of[s][edge_index(l, 3)]);
                    }
                }
            }
        }
    }
    gamma.sort_unstable();
    gamma.dedup();
    lambda.sort_unstable();
    lambda.dedup();
    let out = PartialBarycentric {
        subdivision,
        skeleton: sk,
        dual,
        tree,
        gamma,
        lambda,
    };
    assert!(out.gamma_is_spanning_tree(), "Γ is not a spanning tree");
    Ok(out)
}

impl PartialBarycentric {
    /// Endpoints of each edge class of X′ in its own direction.
    pub fn edge_ends(&self) -> Vec<(usize, usize)> {
        let sk = &self.skeleton;
        let mut ends = vec![None; sk.edge_count];
        for (s, row) in sk.edge_of.iter().enumerate() {
            for (n, &(a, b)) in EDGES.iter().enumerate() {
                let (x, y) = (sk.vertex_of[s][a], sk.vertex_of[s][b]);
                ends[row[n]].get_or_insert(if sk.edge_flip[s][n] { (y, x) } else { (x, y) });
            }
        }
        ends.into_iter().map(Option::unwrap).collect()
    }

    pub fn gamma_is_spanning_tree(&self) -> bool {
        let n = self.skeleton.vertex_count;
        if self.gamma.len() + 1 != n {
            return false;
        }
        let ends = self.edge_ends();
        let mut uf = ParityUnionFind::new(n);
        self.gamma.iter().all(|&e| {
            let (x, y) = ends[e];
            let (rx, ry) = (uf.find(x).0, uf.find(y).0);
            rx != ry && uf.union(x, y, false)
        })
    }

    pub fn face_pairing_gens(&self) -> FacePairingGens {
        let sk = &self.skeleton;
        let mut pairings = Vec::new();
        let mut loops = Vec::new();
        for e in self.dual.non_tree_edges(&self.tree) {
            let g = self.dual.edges[e];
            let (j, l) = g.target;
            pairings.push(g);
            loops.push(sk.edge_of[coned_index(j, l, (l + 1) % 4)][edge_index(2, 3)]);
        }
        FacePairingGens {
            tree: self.tree.clone(),
            pairings,
            loops,
        }
    }

    /// Edge classes of X′ outside Γ, ascending: the simplicial generators.
    pub fn simplicial_generators(&self) -> Vec<usize> {
        let mut in_gamma = vec![false; self.skeleton.edge_count];
        for &e in &self.gamma {
            in_gamma[e] = true;
        }
        (0..self.skeleton.edge_count).filter(|&e| !in_gamma[e]).collect()
    }
}

/// The polyhedron Y′: the tetrahedra of X′ glued along the tree faces only.
///
/// Vertices are numbered corners first, then face centers, then bodies.
#[derive(Debug, Clone)]
pub struct CutPolyhedron {
    corner: Vec<usize>,
    face: Vec<usize>,
    corners: usize,
    faces: usize,
    pairings: Vec<FaceGluing>,
    /// Y′ vertices of each sub-tetrahedron of X′.
    pub vertices_of: Vec<[usize; 4]>,
    pub vertex_count: usize,
}

impl CutPolyhedron {
    pub fn new(x: &PartialBarycentric) -> CutPolyhedron {
        let t = x.dual.nodes;
        let mut cu = ParityUnionFind::new(4 * t);
        let mut fu = ParityUnionFind::new(4 * t);
        for &e in &x.tree.edges {
            let g = x.dual.edges[e];
            let (i, k) = g.source;
            let (j, l) = g.target;
            fu.union(4 * i + k, 4 * j + l, false);
            for a in (0..4).filter(|&a| a != k) {
                cu.union(4 * i + a, 4 * j + g.map.apply(a), false);
            }
        }
        let (corner, corners) = roots(&mut cu, 4 * t);
        let (face, faces) = roots(&mut fu, 4 * t);
        let mut vertices_of = vec![[0; 4]; 12 * t];
        for i in 0..t {
            for k in 0..4 {
                for v in (0..4).filter(|&v| v != k) {
                    let (a, b) = face_pair(k, v);
                    vertices_of[coned_index(i, k, v)] = [
                        corner[4 * i + a],
                        corner[4 * i + b],
                        corners + face[4 * i + k],
                        corners + faces + i,
                    ];
                }
            }
        }
        CutPolyhedron {
            corner,
            face,
            corners,
            faces,
            pairings: x.face_pairing_gens().pairings,
            vertices_of,
            vertex_count: corners + faces + t,
        }
    }

    pub fn pairing_count(&self) -> usize {
        self.pairings.len()
    }

    /// Image of a vertex of Y′ under pairing `s` (negative for the inverse),
    /// `None` when the vertex is not on the pairing's domain face.
    pub fn apply(&self, s: i64, w: usize) -> Option<usize> {
        let g = self.pairings.get(s.unsigned_abs() as usize - 1)?;
        let (from, to, map) = if s > 0 {
            (g.source, g.target, g.map)
        } else {
            (g.target, g.source, g.map.inverse())
        };
        let (i, k) = from;
        let (j, l) = to;
        if w >= self.corners {
            return (w - self.corners == self.face[4 * i + k])
                .then(|| self.corners + self.face[4 * j + l]);
        }
        (0..4)
            .filter(|&a| a != k)
            .find(|&a| self.corner[4 * i + a] == w)
            .map(|a| self.corner[4 * j + map.apply(a)])
    }

    /// Follows a walk of pairings from `w`.
    pub fn replay(&self, w: usize, walk: &[i64]) -> Option<usize> {
        walk.iter().try_fold(w, |w, &s| self.apply(s, w))
    }

    /// Shortest walks from `start` to every vertex, moves tried in the order
    /// +1, -1, +2, -2, ...
    fn walks_from(&self, start: usize) -> Vec<Option<Vec<i64>>> {
        let mut prev: Vec<Option<(usize, i64)>> = vec![None; self.vertex_count];
        let mut seen = vec![false; self.vertex_count];
        seen[start] = true;
        let mut queue = VecDeque::from([start]);
        while let Some(w) = queue.pop_front() {
            for s in 1..=self.pairings.len() as i64 {
                for m in [s, -s] {
                    if let Some(u) = self.apply(m, w) {
                        if !seen[u] {
                            seen[u] = true;
                            prev[u] = Some((w, m));
                            queue.push_back(u);
                        }
                    }
                }
            }
        }
        (0..self.vertex_count)
            .map(|u| {
                if !seen[u] {
                    return None;
                }
                let mut walk = Vec::new();
                let mut cur = u;
                while let Some((p, m)) = prev[cur] {
                    walk.push(m);
                    cur = p;
                }
                walk.reverse();
                Some(walk)
            })
            .collect()
    }
}

/// The lift of each vertex of X′ lying on the lift of Γ in Y′.
fn gamma_lifts(x: &PartialBarycentric, y: &CutPolyhedron) -> Vec<usize> {
    let ends = x.edge_ends();
    let mut lift = vec![usize::MAX; x.skeleton.vertex_count];
    let mut in_gamma = vec![false; x.skeleton.edge_count];
    for &e in &x.gamma {
        in_gamma[e] = true;
    }
    // Γ edges all meet a body; the lift of each Γ edge is the one at the body
    // chosen by its construction, so record lifts of Γ edges by sub-tetrahedron.
    let sk = &x.skeleton;
    let t = x.dual.nodes;
    for i in 0..t {
        lift[sk.vertex_of[coned_index(i, 1, 0)][3]] = y.corners + y.faces + i;
    }
    for g in &x.dual.edges {
        let (i, k) = g.source;
        let s = coned_index(i, k, (k + 1) % 4);
        let c = sk.vertex_of[s][2];
        if lift[c] == usize::MAX {
            lift[c] = y.vertices_of[s][2];
        }
    }
    for i in 0..t {
        for k in 0..4 {
            for v in (0..4).filter(|&v| v != k) {
                let s = coned_index(i, k, v);
                for l in 0..2 {
                    let w = sk.vertex_of[s][l];
                    if lift[w] == usize::MAX {
                        lift[w] = y.vertices_of[s][l];
                    }
                }
            }
        }
    }
    debug_assert!(x.gamma.iter().all(|&e| {
        let (a, b) = ends[e];
        lift[a] != usize::MAX && lift[b] != usize::MAX
    }));
    lift
}

/// Writes every simplicial generator of X′ as a word in the face pairings.
///
/// Each generator is the loop through Γ and one edge `e` outside Γ. A lift
/// of `e` in Y′ has endpoints that the pairings carry to the Γ-lifts of its
/// endpoints; the word is the inverse tail walk followed by the reversed
/// head walk, freely reduced. The lift with the shortest word wins, ties
/// going to the first lift found. Fails if some word exceeds `max_length`.
pub fn face_pairing_words(
    x: &PartialBarycentric,
    max_length: u64,
) -> Result<Vec<GeneratorWord>, Pi1Error> {
    let y = CutPolyhedron::new(x);
    let lift = gamma_lifts(x, &y);
    let ends = x.edge_ends();
    let sk = &x.skeleton;
    let mut lifts: Vec<Vec<(usize, usize)>> = vec![Vec::new(); sk.edge_count];
    for (s, row) in sk.edge_of.iter().enumerate() {
        for (n, &(a, b)) in EDGES.iter().enumerate() {
            let (ya, yb) = (y.vertices_of[s][a], y.vertices_of[s][b]);
            let pair = if sk.edge_flip[s][n] { (yb, ya) } else { (ya, yb) };
            if !lifts[row[n]].contains(&pair) {
                lifts[row[n]].push(pair);
            }
        }
    }
    let gens = x.simplicial_generators();
    let mut needed: Vec<usize> = gens
        .iter()
        .flat_map(|&e| [lift[ends[e].0], lift[ends[e].1]])
        .collect();
    needed.sort_unstable();
    needed.dedup();
    let walks: Vec<Vec<Option<Vec<i64>>>> = needed.par_iter().map(|&w| y.walks_from(w)).collect();
    let walk = |from: usize, to: usize| {
        let n = needed.binary_search(&from).unwrap();
        walks[n][to].clone()
    };
    gens.par_iter()
        .map(|&e| {
            let (a, b) = ends[e];
            let mut best: Option<GeneratorWord> = None;
            for &(ta, tb) in &lifts[e] {
                let (Some(tail_walk), Some(head_walk)) = (walk(lift[a], ta), walk(lift[b], tb))
                else {
                    continue;
                };
                let mut raw: Vec<i64> = tail_walk.iter().map(|&s| -s).collect();
                raw.extend(head_walk.iter().rev());
                let word = reduce(&raw);
                if best.as_ref().is_none_or(|w| word.len() < w.word.len()) {
                    best = Some(GeneratorWord {
                        edge: e,
                        tail_walk,
                        head_walk,
                        word,
                    });
                }
            }
            let best = best.expect("every edge of X′ has a lift reachable from Γ");
            assert!(
                check_witness(x, &y, &lift, &lifts[e], &best),
                "witness for edge {e} does not replay"
            );
            if best.word.len() as u64 > max_length {
                return Err(Pi1Error::BudgetExceeded(max_length));
            }
            Ok(best)
        })
        .collect()
}

fn check_witness(
    x: &PartialBarycentric,
    y: &CutPolyhedron,
    lift: &[usize],
    edge_lifts: &[(usize, usize)],
    w: &GeneratorWord,
) -> bool {
    let (a, b) = x.edge_ends()[w.edge];
    match (y.replay(lift[a], &w.tail_walk), y.replay(lift[b], &w.head_walk)) {
        (Some(ta), Some(tb)) => edge_lifts.contains(&(ta, tb)),
        _ => false,
    }
}

/// Replays every witness from scratch: each walk must be defined at every
/// step and land on a lift of its edge.
pub fn verify_words(x: &PartialBarycentric, words: &[GeneratorWord]) -> bool {
    let y = CutPolyhedron::new(x);
    let lift = gamma_lifts(x, &y);
    let sk = &x.skeleton;
    words.iter().all(|w| {
        let mut edge_lifts = Vec::new();
        for (s, row) in sk.edge_of.iter().enumerate() {
            for (n, &(a, b)) in EDGES.iter().enumerate() {
                if row[n] == w.edge {
                    let (ya, yb) = (y.vertices_of[s][a], y.vertices_of[s][b]);
                    edge_lifts.push(if sk.edge_flip[s][n] { (yb, ya) } else { (ya, yb) });
                }
            }
        }
        let mut raw: Vec<i64> = w.tail_walk.iter().map(|&s| -s).collect();
        raw.extend(w.head_walk.iter().rev());
        reduce(&raw) == w.word && check_witness(x, &y, &lift, &edge_lifts, w)
    })
}
