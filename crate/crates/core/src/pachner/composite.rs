use super::elementary::apply_elementary;
use super::engine::local_of;
use super::sequence::{MoveSequence, Step};
use super::{Move, MoveKind};
use crate::error::MoveError;
use crate::tri::Triangulation;

/// The three two-dimensional moves, performed in a suspension.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum TwoDimKind {
    OneThree,
    TwoTwo,
    ThreeOne,
}

impl TwoDimKind {
    pub fn move_kind(self) -> MoveKind {
        match self {
            TwoDimKind::OneThree => MoveKind::TwoDimOneThree,
            TwoDimKind::TwoTwo => MoveKind::TwoDimTwoTwo,
            TwoDimKind::ThreeOne => MoveKind::TwoDimThreeOne,
        }
    }
}

fn push(steps: &mut Vec<Step>, start: &Triangulation, mv: Move) -> Result<(), MoveError> {
    let cur = steps.last().map(|s| &s.applied.result).unwrap_or(start);
    let applied = apply_elementary(cur, &mv)?;
    steps.push(Step { mv, applied });
    Ok(())
}

fn site_local(site: &[usize], n: usize) -> Result<usize, MoveError> {
    match site.get(n) {
        Some(&x) if x < 4 => Ok(x),
        _ => Err(MoveError::illegal("two-dimensional move site is malformed")),
    }
}

/// Expands a 2D move into its two elementary moves.
///
/// The triangle is face `f` of `site[0]`; the cone point on this side is
/// local vertex `f`, the other cone point is across the face.
pub(crate) fn expand_two_dim(tri: &Triangulation, mv: &Move) -> Result<Vec<Step>, MoveError> {
    let x = *mv
        .site
        .first()
        .ok_or_else(|| MoveError::illegal("empty site"))?;
    if x >= tri.tet_count() {
        return Err(MoveError::illegal(format!(
            "tetrahedron {x} does not exist"
        )));
    }
    let f = site_local(&mv.site, 1)?;
    let mut steps = Vec::with_capacity(2);
    match mv.kind {
        MoveKind::TwoDimOneThree => {
            if mv.site.len() != 2 {
                return Err(MoveError::illegal("2D-1-3 site is [tet, face]"));
            }
            // cone the tetrahedron, then push the new vertex through the triangle
            push(&mut steps, tri, Move::new(MoveKind::OneFour, vec![x]))?;
            let n = steps[0].applied.created_tet(f as u8).unwrap();
            push(&mut steps, tri, Move::new(MoveKind::TwoThree, vec![n, 3]))?;
        }
        MoveKind::TwoDimTwoTwo => {
            let c = site_local(&mv.site, 2)?;
            if mv.site.len() != 3 || c == f {
                return Err(MoveError::illegal(
                    "2D-2-2 site is [tet, face, vertex of face]",
                ));
            }
            let mut ab = (0..4).filter(|&y| y != f && y != c);
            let (a, b) = (ab.next().unwrap(), ab.next().unwrap());
            push(&mut steps, tri, Move::new(MoveKind::TwoThree, vec![x, c]))?;
            let n = steps[0].applied.created_tet(f as u8).unwrap();
            let (fa, fb) = (local_of(f as u8, a as u8), local_of(f as u8, b as u8));
            push(
                &mut steps,
                tri,
                Move::new(MoveKind::ThreeTwo, vec![n, fa, fb]),
            )?;
        }
        MoveKind::TwoDimThreeOne => {
            let z = site_local(&mv.site, 2)?;
            if mv.site.len() != 3 || z == f {
                return Err(MoveError::illegal(
                    "2D-3-1 site is [tet, face, vertex of face]",
                ));
            }
            push(
                &mut steps,
                tri,
                Move::new(MoveKind::ThreeTwo, vec![x, f, z]),
            )?;
            // the cone point has label 0 and z label 1 in the 3-2 labeling
            let n = steps[0].applied.created_tet(0).unwrap();
            push(
                &mut steps,
                tri,
                Move::new(MoveKind::FourOne, vec![n, local_of(0, 1)]),
            )?;
        }
        other => return Err(MoveError::illegal(format!("{other} is not a 2D move"))),
    }
    Ok(steps)
}

/// Performs a two-dimensional move in the suspension of the triangles at `site`.
pub fn two_dim_move(
    tri: &Triangulation,
    kind: TwoDimKind,
    site: &[usize],
) -> Result<Triangulation, MoveError> {
    let steps = expand_two_dim(tri, &Move::new(kind.move_kind(), site.to_vec()))?;
    Ok(steps.last().unwrap().applied.result.clone())
}

/// The new edge from the added vertex `x` to the far endpoint `v`:
/// `(tet, local of x, local of v)` in the result.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct NewEdge {
    pub tet: usize,
    pub x: usize,
    pub v: usize,
}

/// Walks around edge `ab` of `tet`, first across the face opposite the larger
/// other vertex. Returns the tetrahedra met, or an error if the star is not a
/// cycle of distinct tetrahedra.
fn edge_star(tri: &Triangulation, tet: usize, a: usize, b: usize) -> Result<Vec<usize>, MoveError> {
    let mut rest = (0..4).filter(|&y| y != a && y != b);
    let (c, d) = (rest.next().unwrap(), rest.next().unwrap());
    let mut star = vec![tet];
    let (mut cur, mut u, mut v, mut back, mut ahead) = (tet, a, b, c, d);
    loop {
        // cross the face opposite `ahead`; `back` stays, the far vertex is new
        let (y, p) = tri.neighbor(cur, ahead);
        let (nu, nv, nback) = (p.apply(u), p.apply(v), p.apply(back));
        let far = p.apply(ahead);
        if y == tet {
            if (nu, nv) == (a, b) && nback == d && far == c {
                return Ok(star);
            }
            return Err(MoveError::illegal("edge star wraps onto itself"));
        }
        if star.contains(&y) {
            return Err(MoveError::illegal("edge star meets a tetrahedron twice"));
        }
        star.push(y);
        if star.len() > 4 * tri.tet_count() {
            return Err(MoveError::illegal("edge star does not close"));
        }
        cur = y;
        u = nu;
        v = nv;
        ahead = nback;
        back = far;
    }
}

/// Bisects edge `ab` of `site[0]` by a new vertex: one 1-4, `k - 2` 2-3s and
/// one 3-2, where `k` is the number of tetrahedra around the edge.
pub(crate) fn expand_vertex_add(
    tri: &Triangulation,
    mv: &Move,
) -> Result<(Vec<Step>, NewEdge), MoveError> {
    if mv.site.len() != 3 || mv.site[0] >= tri.tet_count() {
        return Err(MoveError::illegal("VERTEX-ADD site is [tet, a, b]"));
    }
    let (t1, a, b) = (
        mv.site[0],
        site_local(&mv.site, 1)?,
        site_local(&mv.site, 2)?,
    );
    if a == b {
        return Err(MoveError::illegal("VERTEX-ADD needs two distinct vertices"));
    }
    let star = edge_star(tri, t1, a, b)?;
    let k = star.len();
    let mut rest = (0..4).filter(|&y| y != a && y != b);
    let (c, d) = (rest.next().unwrap(), rest.next().unwrap());
    // T_1 = (u, v, w_k = d, w_1 = c): the next tetrahedron round the edge
    // is across the face opposite d and shares (u, v, c)
    let (w1, wk) = (c, d);

    let mut steps = Vec::with_capacity(k);
    push(&mut steps, tri, Move::new(MoveKind::OneFour, vec![t1]))?;
    let m = wk as u8;
    let mut q = steps[0].applied.created_tet(m).unwrap();
    let (mut uq, mut vq, mut xq, mut wq) = (
        local_of(m, a as u8),
        local_of(m, b as u8),
        local_of(m, 4),
        local_of(m, w1 as u8),
    );
    for _ in 2..k {
        push(&mut steps, tri, Move::new(MoveKind::TwoThree, vec![q, xq]))?;
        let m = wq as u8;
        q = steps.last().unwrap().applied.created_tet(m).unwrap();
        let (nu, nv, nx, nw) = (
            local_of(m, uq as u8),
            local_of(m, vq as u8),
            local_of(m, xq as u8),
            local_of(m, 4),
        );
        uq = nu;
        vq = nv;
        xq = nx;
        wq = nw;
    }
    push(
        &mut steps,
        tri,
        Move::new(MoveKind::ThreeTwo, vec![q, uq, vq]),
    )?;
    // 3-2 labels: u -> 0, v -> 1, remaining two ascending -> 2, 3
    let x_label = if xq < wq { 2u8 } else { 3u8 };
    let n = steps.last().unwrap().applied.created_tet(0).unwrap();
    let edge = NewEdge {
        tet: n,
        x: local_of(0, x_label),
        v: local_of(0, 1),
    };
    Ok((steps, edge))
}

/// Bisects an edge by a new vertex.
pub fn vertex_add_move(
    tri: &Triangulation,
    tet: usize,
    a: usize,
    b: usize,
) -> Result<Triangulation, MoveError> {
    let (steps, _) = expand_vertex_add(tri, &Move::new(MoveKind::VertexAdd, vec![tet, a, b]))?;
    Ok(steps.last().unwrap().applied.result.clone())
}

/// The first coned subdivision reached by moves.
#[derive(Debug, Clone)]
pub struct ConedSubdivision {
    pub tri: Triangulation,
    pub sequence: MoveSequence,
    /// Number of elementary moves performed.
    pub elementary: usize,
}

/// A 1-4 on every tetrahedron, then a 2D 1-3 on every original face pair.
pub fn first_coned_subdivision(tri: &Triangulation) -> ConedSubdivision {
    let (result, moves, elementary) = first_coned_steps(tri);
    let sequence = MoveSequence {
        initial: crate::signature::iso_signature(tri),
        moves,
        final_sig: crate::signature::iso_signature(&result),
    };
    ConedSubdivision {
        tri: result,
        sequence,
        elementary,
    }
}

/// Returns the subdivision, its moves, and the elementary count.
pub(crate) fn first_coned_steps(tri: &Triangulation) -> (Triangulation, Vec<Move>, usize) {
    let t = tri.tet_count();
    let mut cur = tri.clone();
    let mut moves = Vec::with_capacity(3 * t);
    let mut elementary = 0;
    // faces tracked as (tet, face) in the current triangulation
    let mut faces: Vec<[Option<(usize, usize)>; 4]> =
        (0..t).map(|i| [0, 1, 2, 3].map(|f| Some((i, f)))).collect();
    let mut tets: Vec<usize> = (0..t).collect();
    for i in 0..t {
        let mv = Move::new(MoveKind::OneFour, vec![tets[i]]);
        let applied = apply_elementary(&cur, &mv).expect("1-4 always applies");
        for row in faces.iter_mut() {
            for f in row.iter_mut() {
                *f = f.and_then(|(a, b)| applied.relocate_face(a, b));
            }
        }
        for x in tets.iter_mut().skip(i + 1) {
            *x = applied.old_to_new[*x].unwrap();
        }
        cur = applied.result;
        moves.push(mv);
        elementary += 1;
    }
    for g in tri.face_pairs() {
        let (i, k) = g.source;
        let (x, f) = faces[i][k].expect("uncovered faces survive earlier conings");
        let mv = Move::new(MoveKind::TwoDimOneThree, vec![x, f]);
        let steps = expand_two_dim(&cur, &mv).expect("coned faces carry a suspension");
        for row in faces.iter_mut() {
            for face in row.iter_mut() {
                // the two faces just coned disappear
                for s in &steps {
                    *face = face.and_then(|(a, b)| s.applied.relocate_face(a, b));
                }
            }
        }
        elementary += steps.len();
        cur = steps.into_iter().last().unwrap().applied.result;
        moves.push(mv);
    }
    (cur, moves, elementary)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::census;
    use crate::link::is_closed_3_manifold;
    use crate::signature::are_isomorphic;
    use crate::skeleton::skeleton;
    use crate::subdivide::first_coned_subdivision_direct;

    #[test]
    fn coned_subdivision_matches_direct_construction() {
        for (name, t) in census::fixtures() {
            let c = first_coned_subdivision(&t);
            assert_eq!(c.tri.tet_count(), 12 * t.tet_count(), "{name}");
            assert_eq!(c.elementary, 5 * t.tet_count(), "{name}");
            assert_eq!(c.sequence.len(), 3 * t.tet_count(), "{name}");
            assert!(
                are_isomorphic(&c.tri, &first_coned_subdivision_direct(&t).tri),
                "{name}"
            );
            assert_eq!(c.sequence.replay(&t).unwrap().elementary, 5 * t.tet_count());
        }
    }

    #[test]
    fn two_dim_counts_on_double() {
        let d = census::double_tetrahedron();
        let r = two_dim_move(&d, TwoDimKind::OneThree, &[0, 3]).unwrap();
        assert_eq!(r.tet_count(), 6);
        assert!(is_closed_3_manifold(&r));
    }

    #[test]
    fn vertex_add_on_degree_three_edge() {
        let l = census::lens_space(3, 1);
        let star = edge_star(&l, 0, 0, 1);
        // the axis edge N-S of the layered lens space is surrounded by all three tetrahedra
        assert_eq!(star.unwrap().len(), 3);
        let (steps, _) =
            expand_vertex_add(&l, &Move::new(MoveKind::VertexAdd, vec![0, 0, 1])).unwrap();
        assert_eq!(steps.len(), 3);
        let r = &steps.last().unwrap().applied.result;
        assert_eq!(r.tet_count(), 6);
        assert!(is_closed_3_manifold(r));
        assert_eq!(skeleton(r).vertex_classes, skeleton(&l).vertex_classes + 1);
    }
}
