use std::collections::VecDeque;

use crate::error::DisconnectedGraph;
use crate::tri::{FaceGluing, Triangulation};

/// Node per tetrahedron, edge per glued face pair.
///
/// Edges are listed in order of their smaller face `(tet, face)`; the
/// stored gluing record is the one sourced at that smaller face.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DualGraph {
    pub nodes: usize,
    pub edges: Vec<FaceGluing>,
    /// Edge index for each (tet, face).
    pub edge_at: Vec<[usize; 4]>,
}

/// A BFS spanning tree of the dual graph.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SpanningTree {
    pub root: usize,
    /// Tree edge indices in discovery order.
    pub edges: Vec<usize>,
    /// `(parent tet, edge index)` for each non-root tetrahedron.
    pub parent: Vec<Option<(usize, usize)>>,
    /// Tetrahedra in BFS order, starting at the root.
    pub order: Vec<usize>,
}

impl SpanningTree {
    pub fn contains(&self, edge: usize) -> bool {
        self.edges.contains(&edge)
    }
}

impl DualGraph {
    pub fn new(tri: &Triangulation) -> DualGraph {
        let t = tri.tet_count();
        let mut edge_at = vec![[usize::MAX; 4]; t];
        let mut edges = Vec::with_capacity(2 * t);
        for g in tri.face_pairs() {
            let n = edges.len();
            edge_at[g.source.0][g.source.1] = n;
            edge_at[g.target.0][g.target.1] = n;
            edges.push(g);
        }
        DualGraph {
            nodes: t,
            edges,
            edge_at,
        }
    }

    /// BFS from `root`, scanning faces 0..3 of each tetrahedron in order.
    pub fn spanning_tree(&self, root: usize) -> Result<SpanningTree, DisconnectedGraph> {
        let t = self.nodes;
        let mut parent = vec![None; t];
        let mut seen = vec![false; t];
        let mut order = Vec::with_capacity(t);
        let mut tree = Vec::with_capacity(t.saturating_sub(1));
        if t == 0 {
            return Ok(SpanningTree {
                root,
                edges: tree,
                parent,
                order,
            });
        }
        seen[root] = true;
        let mut queue = VecDeque::from([root]);
        while let Some(i) = queue.pop_front() {
            order.push(i);
            for k in 0..4 {
                let e = self.edge_at[i][k];
                let g = &self.edges[e];
                let j = if g.source == (i, k) {
                    g.target.0
                } else {
                    g.source.0
                };
                if !seen[j] {
                    seen[j] = true;
                    parent[j] = Some((i, e));
                    tree.push(e);
                    queue.push_back(j);
                }
            }
        }
        if order.len() != t {
            return Err(DisconnectedGraph {
                reached: order.len(),
                total: t,
            });
        }
        Ok(SpanningTree {
            root,
            edges: tree,
            parent,
            order,
        })
    }

    /// Edge indices not in `tree`, ascending.
    pub fn non_tree_edges(&self, tree: &SpanningTree) -> Vec<usize> {
        let mut in_tree = vec![false; self.edges.len()];
        for &e in &tree.edges {
            in_tree[e] = true;
        }
        (0..self.edges.len()).filter(|&e| !in_tree[e]).collect()
    }
}

pub fn dual_graph(tri: &Triangulation) -> DualGraph {
    DualGraph::new(tri)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::census;

    #[test]
    fn double_tetrahedron_dual() {
        let g = dual_graph(&census::double_tetrahedron());
        assert_eq!((g.nodes, g.edges.len()), (2, 4));
        let tree = g.spanning_tree(0).unwrap();
        assert_eq!(tree.edges, vec![0]);
        assert_eq!(g.non_tree_edges(&tree), vec![1, 2, 3]);
        assert_eq!(tree, g.spanning_tree(0).unwrap());
    }

    #[test]
    fn disconnected_is_an_error() {
        let d = census::double_tetrahedron();
        let g = dual_graph(&d.disjoint_union(&d));
        assert_eq!(
            g.spanning_tree(1),
            Err(DisconnectedGraph {
                reached: 2,
                total: 4
            })
        );
    }
}
