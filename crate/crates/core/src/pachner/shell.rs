use std::collections::HashSet;

use super::elementary::apply_elementary;
use super::sequence::{MoveSequence, Step};
use super::{Move, MoveKind};
use crate::error::MoveError;
use crate::signature::iso_signature;
use crate::skeleton::{edge_index, ParityUnionFind};
use crate::tri::Triangulation;

/// A combinatorial 3-ball made of some tetrahedra of a triangulation.
///
/// `internal[n][f]` marks face `f` of `tets[n]` as interior to the ball; it
/// must be glued to another member. Faces glued inside the region but not
/// marked internal are treated as distinct boundary faces.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Ball {
    pub tets: Vec<usize>,
    pub internal: Vec<[bool; 4]>,
    /// Ball-local class ids of vertices, edges and triangles per member.
    vertex_of: Vec<[usize; 4]>,
    edge_of: Vec<[usize; 6]>,
    triangle_of: Vec<[usize; 4]>,
    counts: (usize, usize, usize),
    /// Member index across each internal face.
    across: Vec<[Option<usize>; 4]>,
}

fn compact(ids: Vec<usize>) -> (Vec<usize>, usize) {
    let mut map = std::collections::HashMap::new();
    let out = ids
        .into_iter()
        .map(|r| {
            let n = map.len();
            *map.entry(r).or_insert(n)
        })
        .collect();
    (out, map.len())
}

impl Ball {
    pub fn new(
        tri: &Triangulation,
        tets: Vec<usize>,
        internal: Vec<[bool; 4]>,
    ) -> Result<Ball, MoveError> {
        let n = tets.len();
        let mut member = std::collections::HashMap::new();
        for (k, &x) in tets.iter().enumerate() {
            if x >= tri.tet_count() || member.insert(x, k).is_some() {
                return Err(MoveError::illegal(format!(
                    "ball member {x} is invalid or repeated"
                )));
            }
        }
        let mut across = vec![[None; 4]; n];
        let mut verts = ParityUnionFind::new(4 * n);
        let mut edges = ParityUnionFind::new(6 * n);
        let mut tris = ParityUnionFind::new(4 * n);
        for (k, &x) in tets.iter().enumerate() {
            for f in 0..4 {
                if !internal[k][f] {
                    continue;
                }
                let (y, p) = tri.neighbor(x, f);
                let Some(&ky) = member.get(&y) else {
                    return Err(MoveError::illegal(format!(
                        "internal face {f} of {x} leaves the ball"
                    )));
                };
                if !internal[ky][p.apply(f)] {
                    return Err(MoveError::illegal(
                        "internal faces are not marked symmetrically",
                    ));
                }
                across[k][f] = Some(ky);
                tris.union(4 * k + f, 4 * ky + p.apply(f), false);
                for a in (0..4).filter(|&a| a != f) {
                    verts.union(4 * k + a, 4 * ky + p.apply(a), false);
                    for b in (a + 1..4).filter(|&b| b != f) {
                        edges.union(
                            6 * k + edge_index(a, b),
                            6 * ky + edge_index(p.apply(a), p.apply(b)),
                            false,
                        );
                    }
                }
            }
        }
        let (v, nv) = compact((0..4 * n).map(|x| verts.find(x).0).collect());
        let (e, ne) = compact((0..6 * n).map(|x| edges.find(x).0).collect());
        let (t, nt) = compact((0..4 * n).map(|x| tris.find(x).0).collect());
        Ok(Ball {
            tets,
            internal,
            vertex_of: v.chunks(4).map(|c| [c[0], c[1], c[2], c[3]]).collect(),
            edge_of: e
                .chunks(6)
                .map(|c| [c[0], c[1], c[2], c[3], c[4], c[5]])
                .collect(),
            triangle_of: t.chunks(4).map(|c| [c[0], c[1], c[2], c[3]]).collect(),
            counts: (nv, ne, nt),
            across,
        })
    }

    /// The region with every face glued between two members marked internal.
    pub fn region(tri: &Triangulation, tets: Vec<usize>) -> Result<Ball, MoveError> {
        let set: HashSet<usize> = tets.iter().copied().collect();
        let internal = tets
            .iter()
            .map(|&x| {
                let mut row = [false; 4];
                for (f, slot) in row.iter_mut().enumerate() {
                    *slot = set.contains(&tri.neighbor(x, f).0);
                }
                row
            })
            .collect();
        Ball::new(tri, tets, internal)
    }

    pub fn len(&self) -> usize {
        self.tets.len()
    }

    pub fn is_empty(&self) -> bool {
        self.tets.is_empty()
    }

    /// Euler characteristic of the ball (1 for a ball).
    pub fn euler_characteristic(&self) -> i64 {
        let (v, e, t) = self.counts;
        v as i64 - e as i64 + t as i64 - self.tets.len() as i64
    }

    /// Faces of member `k` glued to members already in `added`.
    fn shared(&self, k: usize, added: &[bool]) -> Vec<usize> {
        (0..4)
            .filter(|&f| matches!(self.across[k][f], Some(o) if added[o]))
            .collect()
    }
}

struct Presence {
    vertex: Vec<u32>,
    edge: Vec<u32>,
    triangle: Vec<u32>,
}

impl Presence {
    fn toggle(&mut self, ball: &Ball, k: usize, add: bool) {
        let step = |c: &mut u32| if add { *c += 1 } else { *c -= 1 };
        for &v in &ball.vertex_of[k] {
            step(&mut self.vertex[v]);
        }
        for &e in &ball.edge_of[k] {
            step(&mut self.edge[e]);
        }
        for &t in &ball.triangle_of[k] {
            step(&mut self.triangle[t]);
        }
    }
}

/// Whether adding member `k` along the faces `shared` keeps a ball.
fn attachable(ball: &Ball, pres: &Presence, k: usize, shared: &[usize]) -> bool {
    match shared.len() {
        1 => pres.vertex[ball.vertex_of[k][shared[0]]] == 0,
        2 => pres.edge[ball.edge_of[k][edge_index(shared[0], shared[1])]] == 0,
        3 => {
            let r = (0..4).find(|f| !shared.contains(f)).unwrap();
            pres.triangle[ball.triangle_of[k][r]] == 0
        }
        _ => false,
    }
}

struct Search<'a> {
    ball: &'a Ball,
    added: Vec<bool>,
    order: Vec<usize>,
    pres: Presence,
    dead: HashSet<Vec<u64>>,
    nodes: u64,
    budget: u64,
}

impl Search<'_> {
    fn key(&self) -> Vec<u64> {
        let mut words = vec![0u64; self.added.len().div_ceil(64)];
        for (k, &a) in self.added.iter().enumerate() {
            if a {
                words[k / 64] |= 1 << (k % 64);
            }
        }
        words
    }

    fn push(&mut self, k: usize) {
        self.added[k] = true;
        self.order.push(k);
        self.pres.toggle(self.ball, k, true);
    }

    fn pop(&mut self) {
        let k = self.order.pop().unwrap();
        self.added[k] = false;
        self.pres.toggle(self.ball, k, false);
    }

    fn dfs(&mut self) -> Result<bool, MoveError> {
        if self.order.len() == self.ball.len() {
            return Ok(true);
        }
        self.nodes += 1;
        if self.nodes > self.budget {
            return Err(MoveError::BudgetExceeded(self.budget));
        }
        let key = self.key();
        if self.dead.contains(&key) {
            return Ok(false);
        }
        for k in 0..self.ball.len() {
            if self.added[k] {
                continue;
            }
            let shared = self.ball.shared(k, &self.added);
            if shared.is_empty() || !attachable(self.ball, &self.pres, k, &shared) {
                continue;
            }
            self.push(k);
            if self.dfs()? {
                return Ok(true);
            }
            self.pop();
        }
        self.dead.insert(key);
        Ok(false)
    }
}

/// A build-up order of the ball: each member after the first meets the
/// union of the earlier ones in one, two or three of its faces, and the
/// union stays a ball. Reversed, this is a shelling.
///
/// Exhaustive depth-first search with a table of dead states, limited to
/// `budget` visited states.
pub fn shelling_order(ball: &Ball, budget: u64) -> Result<Vec<usize>, MoveError> {
    if ball.is_empty() {
        return Ok(Vec::new());
    }
    let (nv, ne, nt) = ball.counts;
    let mut search = Search {
        ball,
        added: vec![false; ball.len()],
        order: Vec::with_capacity(ball.len()),
        pres: Presence {
            vertex: vec![0; nv],
            edge: vec![0; ne],
            triangle: vec![0; nt],
        },
        dead: HashSet::new(),
        nodes: 0,
        budget,
    };
    for first in 0..ball.len() {
        search.push(first);
        if search.dfs()? {
            return Ok(search.order.iter().map(|&k| ball.tets[k]).collect());
        }
        search.pop();
    }
    Err(MoveError::NotShellable)
}

/// The CONE-SHELL site for a build-up order: `[tet, shared-face mask, ...]`.
pub(crate) fn cone_shell_site(ball: &Ball, order: &[usize]) -> Result<Vec<usize>, MoveError> {
    let index: std::collections::HashMap<usize, usize> =
        ball.tets.iter().enumerate().map(|(k, &x)| (x, k)).collect();
    let mut added = vec![false; ball.len()];
    let mut site = Vec::with_capacity(2 * order.len());
    for (n, x) in order.iter().enumerate() {
        let k = *index
            .get(x)
            .ok_or_else(|| MoveError::illegal(format!("{x} is not a ball member")))?;
        let shared = ball.shared(k, &added);
        if (n == 0) != shared.is_empty() || shared.len() == 4 {
            return Err(MoveError::illegal(format!(
                "member {x} meets the earlier members in {} faces",
                shared.len()
            )));
        }
        site.push(*x);
        site.push(shared.iter().fold(0, |m, &f| m | (1 << f)));
        added[k] = true;
    }
    Ok(site)
}

/// Expands a CONE-SHELL move: a 1-4 on the first member, then for each
/// later member meeting the cone in `j` faces a `(j+1)-(4-j)` move.
pub(crate) fn expand_cone_shell(tri: &Triangulation, mv: &Move) -> Result<Vec<Step>, MoveError> {
    if !mv.site.len().is_multiple_of(2) {
        return Err(MoveError::illegal("CONE-SHELL site is [tet, mask, ...]"));
    }
    let members: Vec<(usize, usize)> = mv.site.chunks(2).map(|c| (c[0], c[1])).collect();
    let mut pos: Vec<usize> = members.iter().map(|m| m.0).collect();
    if pos.iter().any(|&x| x >= tri.tet_count()) {
        return Err(MoveError::illegal("CONE-SHELL member out of range"));
    }
    let mut steps: Vec<Step> = Vec::with_capacity(members.len());
    for n in 0..members.len() {
        let s = pos[n];
        let mask = members[n].1;
        let shared: Vec<usize> = (0..4).filter(|&f| mask & (1 << f) != 0).collect();
        let free: Vec<usize> = (0..4).filter(|&f| mask & (1 << f) == 0).collect();
        let mv = match shared.len() {
            0 if n == 0 => Move::new(MoveKind::OneFour, vec![s]),
            1 if n > 0 => Move::new(MoveKind::TwoThree, vec![s, shared[0]]),
            2 if n > 0 => Move::new(MoveKind::ThreeTwo, vec![s, free[0], free[1]]),
            3 if n > 0 => Move::new(MoveKind::FourOne, vec![s, free[0]]),
            _ => {
                return Err(MoveError::illegal(
                    "CONE-SHELL face mask does not fit a shelling",
                ))
            }
        };
        let cur = steps.last().map(|st| &st.applied.result).unwrap_or(tri);
        let applied = apply_elementary(cur, &mv)?;
        for p in pos.iter_mut().skip(n + 1) {
            *p = applied.old_to_new[*p]
                .ok_or_else(|| MoveError::illegal("CONE-SHELL member consumed early"))?;
        }
        steps.push(Step { mv, applied });
    }
    Ok(steps)
}

/// Turns a shellable ball into the cone on its boundary with one Pachner
/// move per tetrahedron, following a build-up order.
pub fn cone_shelling(
    tri: &Triangulation,
    ball: &Ball,
    order: &[usize],
) -> Result<(Triangulation, MoveSequence), MoveError> {
    let steps = cone_shelling_steps(tri, ball, order)?;
    let result = steps
        .last()
        .map(|s| s.applied.result.clone())
        .unwrap_or_else(|| tri.clone());
    let seq = MoveSequence {
        initial: iso_signature(tri),
        moves: steps.iter().map(|s| s.mv.clone()).collect(),
        final_sig: iso_signature(&result),
    };
    Ok((result, seq))
}

pub(crate) fn cone_shelling_steps(
    tri: &Triangulation,
    ball: &Ball,
    order: &[usize],
) -> Result<Vec<Step>, MoveError> {
    if order.len() != ball.len() {
        return Err(MoveError::illegal("order must list every ball member once"));
    }
    let site = cone_shell_site(ball, order)?;
    expand_cone_shell(tri, &Move::new(MoveKind::ConeShell, site))
}
