//! Bidirectional breadth-first search for a sequence of elementary moves.
//!
//! Both sides expand level by level. Each level is sorted by signature before
//! expansion and children are taken in [`enumerate_moves`] order, so the
//! witness does not depend on the number of worker threads. When the two
//! sides meet, the smallest shared signature is used.

use std::collections::HashMap;

use rayon::prelude::*;
use serde::Serialize;

use super::elementary::{apply_elementary, enumerate_moves};
use super::sequence::{reverse_path, run_elementary, MoveSequence};
use super::Move;
use crate::error::MoveError;
use crate::signature::{canonical_form, isomorphism, IsoSignature};
use crate::tri::Triangulation;

/// What a search spent.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Serialize)]
pub struct SearchStats {
    /// Distinct signatures visited on both sides.
    pub nodes: usize,
    /// Depth reached from the first input.
    pub depth_a: usize,
    /// Depth reached from the second input.
    pub depth_b: usize,
}

#[derive(Debug, Clone)]
pub struct SearchOutcome {
    pub sequence: MoveSequence,
    pub stats: SearchStats,
}

struct Node {
    tri: Triangulation,
    parent: Option<(usize, Move)>,
}

struct Side {
    nodes: Vec<Node>,
    index: HashMap<IsoSignature, usize>,
    frontier: Vec<usize>,
    depth: usize,
}

impl Side {
    fn new(tri: &Triangulation) -> Side {
        let (sig, _) = canonical_form(tri);
        let mut index = HashMap::new();
        index.insert(sig, 0);
        Side {
            nodes: vec![Node {
                tri: tri.clone(),
                parent: None,
            }],
            index,
            frontier: vec![0],
            depth: 0,
        }
    }

    /// Moves from the root to node `n`.
    fn path(&self, mut n: usize) -> Vec<Move> {
        let mut out = Vec::new();
        while let Some((p, mv)) = &self.nodes[n].parent {
            out.push(mv.clone());
            n = *p;
        }
        out.reverse();
        out
    }

    /// Expands one level. Returns false if the node cap was hit.
    fn expand(&mut self, other: &Side, cap: usize) -> bool {
        let frontier = std::mem::take(&mut self.frontier);
        let children: Vec<Vec<(IsoSignature, Move, Triangulation)>> = frontier
            .par_iter()
            .map(|&n| {
                let tri = &self.nodes[n].tri;
                enumerate_moves(tri)
                    .into_iter()
                    .filter_map(|mv| {
                        let next = apply_elementary(tri, &mv).ok()?.result;
                        Some((canonical_form(&next).0, mv, next))
                    })
                    .collect()
            })
            .collect();
        let mut fresh: Vec<(IsoSignature, usize)> = Vec::new();
        for (&n, kids) in frontier.iter().zip(children) {
            for (sig, mv, tri) in kids {
                if self.index.contains_key(&sig) {
                    continue;
                }
                if self.nodes.len() + other.nodes.len() >= cap {
                    return false;
                }
                let id = self.nodes.len();
                self.nodes.push(Node {
                    tri,
                    parent: Some((n, mv)),
                });
                self.index.insert(sig.clone(), id);
                fresh.push((sig, id));
            }
        }
        fresh.sort();
        self.frontier = fresh.into_iter().map(|(_, id)| id).collect();
        self.depth += 1;
        true
    }
}

/// Smallest signature visited by both sides.
fn meeting(a: &Side, b: &Side) -> Option<(usize, usize)> {
    let (small, large) = if a.index.len() <= b.index.len() {
        (a, b)
    } else {
        (b, a)
    };
    let sig = small
        .index
        .keys()
        .filter(|s| large.index.contains_key(*s))
        .min()?;
    Some((a.index[sig], b.index[sig]))
}

/// Searches for at most `budget` elementary moves turning `a` into `b`,
/// visiting at most `node_cap` signatures.
///
/// Fails with [`MoveError::BudgetExceeded`] when either cap runs out; that
/// never proves the inputs are unrelated.
pub fn bounded_pachner_search(
    a: &Triangulation,
    b: &Triangulation,
    budget: u64,
    node_cap: usize,
) -> Result<SearchOutcome, MoveError> {
    let mut sa = Side::new(a);
    let mut sb = Side::new(b);
    let stats = |sa: &Side, sb: &Side| SearchStats {
        nodes: sa.nodes.len() + sb.nodes.len(),
        depth_a: sa.depth,
        depth_b: sb.depth,
    };
    loop {
        if let Some((x, y)) = meeting(&sa, &sb) {
            let sequence = witness(a, b, &sa, x, &sb, y)?;
            return Ok(SearchOutcome {
                sequence,
                stats: stats(&sa, &sb),
            });
        }
        if (sa.depth + sb.depth) as u64 >= budget {
            return Err(MoveError::BudgetExceeded(budget));
        }
        // grow the side with the smaller frontier; ties go to `a`
        let ok = if sa.frontier.len() <= sb.frontier.len() {
            sa.expand(&sb, node_cap)
        } else {
            sb.expand(&sa, node_cap)
        };
        if !ok || (sa.frontier.is_empty() && sb.frontier.is_empty()) {
            return Err(MoveError::BudgetExceeded(budget));
        }
    }
}

/// Joins the path `a -> x` with the reversed path `b -> y`.
fn witness(
    a: &Triangulation,
    b: &Triangulation,
    sa: &Side,
    x: usize,
    sb: &Side,
    y: usize,
) -> Result<MoveSequence, MoveError> {
    let mut moves = sa.path(x);
    let b_steps = run_elementary(b, &sb.path(y))?;
    let xa = &sa.nodes[x].tri;
    let yb = &sb.nodes[y].tri;
    let phi = isomorphism(yb, xa).expect("equal signatures are isomorphic");
    let (back, _) = reverse_path(&b_steps, xa, phi)?;
    moves.extend(back.into_iter().map(|s| s.mv));
    let seq = MoveSequence::record(a, moves)?;
    debug_assert_eq!(seq.final_sig, crate::signature::iso_signature(b));
    Ok(seq)
}
