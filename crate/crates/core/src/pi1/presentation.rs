use std::collections::VecDeque;

use serde_json::{json, Value};

use crate::error::{DisconnectedGraph, Pi1Error};
use crate::skeleton::{edge_index, Skeleton};
use crate::tri::Triangulation;

/// A finite presentation. Letters are signed, 1-based generator indices.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Presentation {
    /// Labels of the generators (edge classes when built from a gluing).
    pub generators: Vec<usize>,
    pub relators: Vec<Vec<i64>>,
}

impl Presentation {
    pub fn new(generators: usize, relators: Vec<Vec<i64>>) -> Presentation {
        Presentation {
            generators: (0..generators).collect(),
            relators,
        }
    }

    /// l(P), the sum of the relator lengths.
    pub fn total_length(&self) -> usize {
        self.relators.iter().map(Vec::len).sum()
    }

    pub fn to_json_value(&self) -> Value {
        json!({
            "gens": self.generators,
            "relators": self.relators,
            "lP": self.total_length(),
        })
    }
}

/// Free reduction of a word.
pub fn reduce(word: &[i64]) -> Vec<i64> {
    let mut out: Vec<i64> = Vec::with_capacity(word.len());
    for &x in word {
        if out.last() == Some(&-x) {
            out.pop();
        } else {
            out.push(x);
        }
    }
    out
}

/// The inverse of a word.
pub fn invert(word: &[i64]) -> Vec<i64> {
    word.iter().rev().map(|&x| -x).collect()
}

/// Presentation from the 1-skeleton: a breadth-first spanning tree of the
/// vertex and edge classes (lowest edge class first), one generator per
/// remaining edge class, one relator per triangle class read around its
/// boundary.
pub fn presentation_from_triangulation(
    tri: &Triangulation,
) -> Result<Presentation, Pi1Error> {
    let sk = Skeleton::new(tri);
    // endpoints of each edge class in its own direction
    let mut ends = vec![None; sk.edge_count];
    for (i, row) in sk.edge_of.iter().enumerate() {
        for (n, &(a, b)) in crate::skeleton::EDGES.iter().enumerate() {
            let (x, y) = (sk.vertex_of[i][a], sk.vertex_of[i][b]);
            ends[row[n]].get_or_insert(if sk.edge_flip[i][n] { (y, x) } else { (x, y) });
        }
    }
    let ends: Vec<(usize, usize)> = ends.into_iter().map(Option::unwrap).collect();
    let mut incident = vec![Vec::new(); sk.vertex_count];
    for (e, &(x, y)) in ends.iter().enumerate() {
        incident[x].push(e);
        incident[y].push(e);
    }
    let mut in_tree = vec![false; sk.edge_count];
    let mut seen = vec![false; sk.vertex_count];
    let mut reached = 0;
    if sk.vertex_count > 0 {
        seen[0] = true;
        reached = 1;
        let mut queue = VecDeque::from([0]);
        while let Some(v) = queue.pop_front() {
            for &e in &incident[v] {
                let (x, y) = ends[e];
                let w = if x == v { y } else { x };
                if !seen[w] {
                    seen[w] = true;
                    reached += 1;
                    in_tree[e] = true;
                    queue.push_back(w);
                }
            }
        }
    }
    if reached != sk.vertex_count {
        return Err(DisconnectedGraph {
            reached,
            total: sk.vertex_count,
        }
        .into());
    }
    let mut letter = vec![0i64; sk.edge_count];
    let mut generators = Vec::new();
    for e in 0..sk.edge_count {
        if !in_tree[e] {
            generators.push(e);
            letter[e] = generators.len() as i64;
        }
    }
    let mut done = vec![false; sk.triangle_count];
    let mut relators = Vec::with_capacity(sk.triangle_count);
    for (i, row) in sk.triangle_of.iter().enumerate() {
        for (f, &c) in row.iter().enumerate() {
            if done[c] {
                continue;
            }
            done[c] = true;
            let v: Vec<usize> = (0..4).filter(|&a| a != f).collect();
            let mut word = Vec::with_capacity(3);
            for (a, b) in [(v[0], v[1]), (v[1], v[2]), (v[2], v[0])] {
                let n = edge_index(a.min(b), a.max(b));
                let e = sk.edge_of[i][n];
                if in_tree[e] {
                    continue;
                }
                let forward = (a < b) != sk.edge_flip[i][n];
                word.push(if forward { letter[e] } else { -letter[e] });
            }
            relators.push(word);
        }
    }
    let p = Presentation {
        generators,
        relators,
    };
    assert!(p.total_length() <= 6 * tri.tet_count());
    Ok(p)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::census;

    #[test]
    fn double_tetrahedron_counts() {
        let p = presentation_from_triangulation(&census::double_tetrahedron()).unwrap();
        assert_eq!(p.generators.len(), 3);
        assert_eq!(p.relators.len(), 4);
        assert!(p.total_length() <= 12);
        assert!(p.relators.iter().all(|r| r.len() <= 3));
    }

    #[test]
    fn free_reduction() {
        assert_eq!(reduce(&[1, 2, -2, -1, 3]), vec![3]);
        assert_eq!(invert(&[1, -2]), vec![2, -1]);
    }
}
