//! Moves from a triangulation to a subdivision of it.
//!
//! Both ends are driven to the same coned subdivision: the original side by
//! coning and then adding vertices on the original edges, the subdivided
//! side by coning each original tetrahedron's ball and then each original
//! face's disc. The second half is then run backwards.

use std::collections::HashMap;

use super::composite::{expand_two_dim, expand_vertex_add, first_coned_steps};
use super::sequence::{reverse_path, MoveSequence, Step};
use super::shell::{cone_shell_site, expand_cone_shell, shelling_order, Ball};
use super::{Move, MoveKind};
use crate::error::MoveError;
use crate::perm::Perm4;
use crate::signature::{iso_signature, isomorphism};
use crate::skeleton::{edge_index, ParityUnionFind, Skeleton};
use crate::subdivide::{coned_index, first_coned_subdivision_direct, Subdivision};
use crate::tri::Triangulation;

/// Default limit on states visited by each shelling search.
pub const SHELLING_BUDGET: u64 = 1_000_000;

/// Upper bound on elementary moves between `t` tetrahedra and a subdivision by `big_t`.
pub fn subdivision_move_bound(t: usize, big_t: usize) -> u64 {
    let (t, big_t) = (t as u64, big_t as u64);
    48 * t * big_t + 9 * big_t + 9 * t
}

fn not_sub(msg: impl Into<String>) -> MoveError {
    MoveError::NotASubdivision(msg.into())
}

fn face_mask(masks: &[u8; 4], f: usize) -> u8 {
    (0..4).filter(|&a| a != f).fold(0, |m, a| m | masks[a])
}

fn map_mask(p: Perm4, mask: u8) -> u8 {
    (0..4)
        .filter(|&v| mask & (1 << v) != 0)
        .fold(0, |m, v| m | (1 << p.apply(v)))
}

/// The simplex class of the original carrying a vertex: `(dimension, class)`.
fn carrier_class(sk: &Skeleton, tet: usize, mask: u8) -> Option<(u32, usize)> {
    let bits: Vec<usize> = (0..4).filter(|&v| mask & (1 << v) != 0).collect();
    match bits.len() {
        1 => Some((0, sk.vertex_of[tet][bits[0]])),
        2 => Some((1, sk.edge_of[tet][edge_index(bits[0], bits[1])])),
        3 => Some((
            2,
            sk.triangle_of[tet][(0..4).find(|v| !bits.contains(v)).unwrap()],
        )),
        4 => Some((3, tet)),
        _ => None,
    }
}

/// The triangles of the subdivision lying on one original face, as a disc.
struct Disc {
    /// Location of each triangle: tetrahedron and the locals of its corners.
    at: Vec<Option<(usize, [usize; 3])>>,
    /// Build-up order: triangle, move kind, corner slot the move names.
    order: Vec<(usize, MoveKind, usize)>,
}

impl Disc {
    fn build(sub: &Subdivision, region: usize, k: usize) -> Result<Disc, MoveError> {
        let carrier = &sub.carrier;
        let fmask = 0b1111 & !(1u8 << k);
        let mut tris: Vec<(usize, [usize; 3])> = Vec::new();
        let mut index = HashMap::new();
        for (s, c) in carrier.iter().enumerate() {
            if c.tet != region {
                continue;
            }
            for f in 0..4 {
                if face_mask(&c.masks, f) == fmask {
                    let mut corners = [0; 3];
                    for (slot, l) in (0..4).filter(|&l| l != f).enumerate() {
                        corners[slot] = l;
                    }
                    index.insert((s, f), tris.len());
                    tris.push((s, corners));
                }
            }
        }
        let n = tris.len();
        if n == 0 {
            return Err(not_sub(format!(
                "face {k} of tetrahedron {region} carries no triangles"
            )));
        }
        // partner across the edge opposite each corner, inside the face
        let mut adj = vec![[None::<usize>; 3]; n];
        let mut uf = ParityUnionFind::new(3 * n);
        for (me, &(s, corners)) in tris.iter().enumerate() {
            let masks = carrier[s].masks;
            let f = (0..4).find(|l| !corners.contains(l)).unwrap();
            for r in 0..3 {
                let (a, b) = (corners[(r + 1) % 3], corners[(r + 2) % 3]);
                if masks[a] | masks[b] != fmask {
                    continue;
                }
                let (y, fy, ya, yb) = walk_around(sub, region, fmask, s, f, a, b)?;
                let other = index[&(y, fy)];
                adj[me][r] = Some(other);
                let oc = tris[other].1;
                let slot = |l: usize| oc.iter().position(|&z| z == l).unwrap();
                uf.union(3 * me + (r + 1) % 3, 3 * other + slot(ya), false);
                uf.union(3 * me + (r + 2) % 3, 3 * other + slot(yb), false);
            }
        }
        let class: Vec<usize> = (0..3 * n).map(|x| uf.find(x).0).collect();

        // greedy build-up; discs are extendably shellable
        let mut added = vec![false; n];
        let mut present = vec![0u32; 3 * n];
        let mut order = Vec::with_capacity(n);
        let add = |m: usize, added: &mut Vec<bool>, present: &mut Vec<u32>| {
            added[m] = true;
            for r in 0..3 {
                present[class[3 * m + r]] += 1;
            }
        };
        add(0, &mut added, &mut present);
        order.push((0, MoveKind::TwoDimOneThree, 0));
        while order.len() < n {
            let mut pick = None;
            for m in (0..n).filter(|&m| !added[m]) {
                let shared: Vec<usize> = (0..3)
                    .filter(|&r| matches!(adj[m][r], Some(o) if added[o]))
                    .collect();
                match shared.len() {
                    1 if present[class[3 * m + shared[0]]] == 0 => {
                        pick = Some((m, MoveKind::TwoDimTwoTwo, shared[0]));
                    }
                    2 => {
                        let z = (0..3).find(|r| !shared.contains(r)).unwrap();
                        pick = Some((m, MoveKind::TwoDimThreeOne, z));
                    }
                    _ => {}
                }
                if pick.is_some() {
                    break;
                }
            }
            let (m, kind, r) = pick.ok_or(MoveError::NotShellable)?;
            add(m, &mut added, &mut present);
            order.push((m, kind, r));
        }
        Ok(Disc {
            at: tris.into_iter().map(Some).collect(),
            order,
        })
    }

    fn relocate(&mut self, step: &Step) {
        for loc in self.at.iter_mut() {
            *loc = loc.and_then(|(x, c)| {
                let (y, l) = step.applied.relocate_locals(x, &c)?;
                Some((y, [l[0], l[1], l[2]]))
            });
        }
    }
}

/// Walks around edge `ab` of `s` from the triangle opposite `f`, through the
/// tetrahedra of `region`, to the other triangle on the same original face.
fn walk_around(
    sub: &Subdivision,
    region: usize,
    fmask: u8,
    s: usize,
    f: usize,
    a: usize,
    b: usize,
) -> Result<(usize, usize, usize, usize), MoveError> {
    let (mut cur, mut a, mut b, mut came) = (s, a, b, f);
    for _ in 0..=sub.tri.tet_count() {
        let nxt = (0..4).find(|&x| x != a && x != b && x != came).unwrap();
        if (cur, nxt) != (s, f) && face_mask(&sub.carrier[cur].masks, nxt) == fmask {
            return Ok((cur, nxt, a, b));
        }
        let (y, p) = sub.tri.neighbor(cur, nxt);
        if sub.carrier[y].tet != region {
            return Err(not_sub(
                "an edge inside an original face leaves its tetrahedron",
            ));
        }
        cur = y;
        a = p.apply(a);
        b = p.apply(b);
        came = p.apply(nxt);
    }
    Err(not_sub(
        "an edge inside an original face has no second triangle",
    ))
}

/// Checks the carrier data against both gluings. Returns the number of
/// subdivision vertices inside each original edge class.
fn check_carrier(t1: &Triangulation, sub: &Subdivision) -> Result<Vec<usize>, MoveError> {
    let (t, big_t) = (t1.tet_count(), sub.tri.tet_count());
    if sub.carrier.len() != big_t {
        return Err(not_sub("carrier length differs from the tetrahedron count"));
    }
    let mut covered = vec![false; t];
    for (s, c) in sub.carrier.iter().enumerate() {
        if c.tet >= t || c.masks.iter().any(|&m| m == 0 || m > 15) {
            return Err(not_sub(format!("carrier of {s} is out of range")));
        }
        covered[c.tet] = true;
    }
    if let Some(i) = covered.iter().position(|c| !c) {
        return Err(not_sub(format!("tetrahedron {i} contains no piece")));
    }
    for g in sub.tri.gluings() {
        let ((s, f), (y, _)) = (g.source, g.target);
        let (cs, cy) = (&sub.carrier[s], &sub.carrier[y]);
        let m = face_mask(&cs.masks, f);
        let (want_tet, p) = match m.count_ones() {
            4 => (cs.tet, Perm4::IDENTITY),
            3 => {
                let k = (0..4).find(|&v| m & (1 << v) == 0).unwrap();
                t1.neighbor(cs.tet, k)
            }
            _ => return Err(not_sub(format!("face {f} of {s} is flat"))),
        };
        let agrees = (0..4)
            .filter(|&a| a != f)
            .all(|a| cy.masks[g.map.apply(a)] == map_mask(p, cs.masks[a]));
        if cy.tet != want_tet || !agrees {
            return Err(not_sub(format!(
                "face {f} of {s} is glued against the carrier"
            )));
        }
    }
    let sk1 = Skeleton::new(t1);
    let sk2 = Skeleton::new(&sub.tri);
    let mut seen: Vec<Option<(u32, usize)>> = vec![None; sk2.vertex_count];
    for (s, c) in sub.carrier.iter().enumerate() {
        for l in 0..4 {
            let cls = carrier_class(&sk1, c.tet, c.masks[l]);
            let slot = &mut seen[sk2.vertex_of[s][l]];
            if slot.is_some() && *slot != cls {
                return Err(not_sub("a vertex has two carriers"));
            }
            *slot = cls;
        }
    }
    let mut per_edge = vec![0; sk1.edge_count];
    let mut vertex_hit = vec![0; sk1.vertex_count];
    for cls in seen.into_iter().flatten() {
        match cls {
            (0, v) => vertex_hit[v] += 1,
            (1, e) => per_edge[e] += 1,
            _ => {}
        }
    }
    if vertex_hit.iter().any(|&h| h != 1) {
        return Err(not_sub(
            "original vertices and subdivision vertices do not match",
        ));
    }
    Ok(per_edge)
}

/// Moves from `t1` to the subdivision `sub`; see [`subdivision_move_sequence_with_budget`].
pub fn subdivision_move_sequence(
    t1: &Triangulation,
    sub: &Subdivision,
) -> Result<MoveSequence, MoveError> {
    subdivision_move_sequence_with_budget(t1, sub, SHELLING_BUDGET)
}

/// A sequence of moves turning `t1` into `sub.tri`.
///
/// Each original tetrahedron's piece of the subdivision must be shellable
/// within `budget` search states; otherwise the caller can subdivide
/// barycentrically and try again.
pub fn subdivision_move_sequence_with_budget(
    t1: &Triangulation,
    sub: &Subdivision,
    budget: u64,
) -> Result<MoveSequence, MoveError> {
    let t = t1.tet_count();
    let t2 = &sub.tri;
    let per_edge = check_carrier(t1, sub)?;
    let trivial = t2.tet_count() == t
        && sub.carrier.iter().all(|c| {
            let mut m = c.masks;
            m.sort_unstable();
            m == [1, 2, 4, 8]
        });
    if trivial {
        return if isomorphism(t1, t2).is_some() {
            Ok(MoveSequence::empty(t1))
        } else {
            Err(not_sub(
                "pieces are whole tetrahedra but the gluings differ",
            ))
        };
    }

    // the subdivided side: cone every piece, then every face disc
    let mut balls = Vec::with_capacity(t);
    for i in 0..t {
        let tets: Vec<usize> = (0..t2.tet_count())
            .filter(|&s| sub.carrier[s].tet == i)
            .collect();
        let internal = tets
            .iter()
            .map(|&s| [0, 1, 2, 3].map(|f| face_mask(&sub.carrier[s].masks, f) == 15))
            .collect();
        let ball = Ball::new(t2, tets, internal).map_err(|e| not_sub(e.to_string()))?;
        let order = shelling_order(&ball, budget)?;
        balls.push(cone_shell_site(&ball, &order)?);
    }
    let mut discs = Vec::new();
    for g in t1.face_pairs() {
        discs.push(Disc::build(sub, g.source.0, g.source.1)?);
    }
    let mut cur_b = t2.clone();
    let mut steps_b: Vec<Step> = Vec::new();
    let mut where_now: Vec<Option<usize>> = (0..t2.tet_count()).map(Some).collect();
    let absorb = |steps: Vec<Step>,
                  cur: &mut Triangulation,
                  discs: &mut Vec<Disc>,
                  where_now: &mut Vec<Option<usize>>,
                  out: &mut Vec<Step>| {
        for st in steps {
            for w in where_now.iter_mut() {
                *w = w.and_then(|x| st.applied.old_to_new[x]);
            }
            for d in discs.iter_mut() {
                d.relocate(&st);
            }
            *cur = st.applied.result.clone();
            out.push(st);
        }
    };
    for site in balls {
        let mut translated = site.clone();
        for n in (0..site.len()).step_by(2) {
            translated[n] = where_now[site[n]].expect("pieces are coned one at a time");
        }
        let steps = expand_cone_shell(&cur_b, &Move::new(MoveKind::ConeShell, translated))?;
        absorb(steps, &mut cur_b, &mut discs, &mut where_now, &mut steps_b);
    }
    for d in 0..discs.len() {
        for n in 0..discs[d].order.len() {
            let (m, kind, r) = discs[d].order[n];
            let (x, c) = discs[d].at[m].ok_or_else(|| not_sub("a face triangle was lost"))?;
            let f = (0..4).find(|l| !c.contains(l)).unwrap();
            let site = match kind {
                MoveKind::TwoDimOneThree => vec![x, f],
                _ => vec![x, f, c[r]],
            };
            let steps = expand_two_dim(&cur_b, &Move::new(kind, site))?;
            absorb(steps, &mut cur_b, &mut discs, &mut where_now, &mut steps_b);
        }
    }

    // the original side: cone, then bisect original edges
    let (mut cur_a, mut moves, _) = first_coned_steps(t1);
    let direct = first_coned_subdivision_direct(t1);
    let phi =
        isomorphism(&direct.tri, &cur_a).expect("coning by moves matches the direct construction");
    let sk1 = Skeleton::new(t1);
    let mut edges: Vec<Option<(usize, [usize; 2])>> = vec![None; sk1.edge_count];
    for i in 0..t {
        for (n, &(a, b)) in crate::skeleton::EDGES.iter().enumerate() {
            let e = sk1.edge_of[i][n];
            if edges[e].is_none() {
                let mut rest = (0..4).filter(|&y| y != a && y != b);
                let (k, v) = (rest.next().unwrap(), rest.next().unwrap());
                let x = coned_index(i, k, v);
                let p = phi.perms[x];
                edges[e] = Some((phi.tet_map[x], [p.apply(0), p.apply(1)]));
            }
        }
    }
    for e in 0..edges.len() {
        for _ in 0..per_edge[e] {
            let (x, [a, b]) = edges[e].expect("original edges survive vertex adding");
            let mv = Move::new(MoveKind::VertexAdd, vec![x, a, b]);
            let (steps, new_edge) = expand_vertex_add(&cur_a, &mv)?;
            for st in &steps {
                for loc in edges.iter_mut().skip(e + 1) {
                    *loc = loc.and_then(|(x, l)| {
                        let (y, l) = st.applied.relocate_locals(x, &l)?;
                        Some((y, [l[0], l[1]]))
                    });
                }
            }
            edges[e] = Some((new_edge.tet, [new_edge.x, new_edge.v]));
            cur_a = steps.into_iter().last().unwrap().applied.result;
            moves.push(mv);
        }
    }

    let phi =
        isomorphism(&cur_b, &cur_a).ok_or_else(|| not_sub("the two coned forms do not match"))?;
    let (back, _) = reverse_path(&steps_b, &cur_a, phi)?;
    moves.extend(back.into_iter().map(|s| s.mv));
    let seq = MoveSequence {
        initial: iso_signature(t1),
        moves,
        final_sig: iso_signature(t2),
    };
    seq.replay(t1)?;
    Ok(seq)
}
