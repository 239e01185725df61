use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::engine::{apply_bistellar, collect_disc, local_of, Applied, Bistellar};
use super::{Move, MoveKind};
use crate::error::MoveError;
use crate::signature::Relabeling;
use crate::skeleton::Skeleton;
use crate::tri::Triangulation;

fn local(site: &[usize], n: usize) -> Result<u8, MoveError> {
    match site.get(n) {
        Some(&v) if v < 4 => Ok(v as u8),
        Some(&v) => Err(MoveError::illegal(format!("local index {v} out of range"))),
        None => Err(MoveError::illegal("site is too short")),
    }
}

/// The labeled disc an elementary move removes.
///
/// | kind | labels on `site[0]` | removed |
/// |---|---|---|
/// | 1-4 | identity | {4} |
/// | 2-3 `[i,k]` | identity | {4, k} |
/// | 3-2 `[i,a,b]` | a→0, b→1, others ascending → 2,3 | {2,3,4} |
/// | 4-1 `[i,v]` | v→4, others ascending → 0,1,2 | {0,1,2,3} |
pub fn to_bistellar(tri: &Triangulation, mv: &Move) -> Result<Bistellar, MoveError> {
    let expected = match mv.kind {
        MoveKind::OneFour => 1,
        MoveKind::FourOne | MoveKind::TwoThree => 2,
        MoveKind::ThreeTwo => 3,
        other => {
            return Err(MoveError::illegal(format!(
                "{other} is not an elementary move"
            )));
        }
    };
    if mv.site.len() != expected {
        return Err(MoveError::illegal(format!(
            "{} site needs {expected} entries, got {}",
            mv.kind,
            mv.site.len()
        )));
    }
    let start = mv.site[0];
    if start >= tri.tet_count() {
        return Err(MoveError::illegal(format!(
            "tetrahedron {start} does not exist"
        )));
    }
    let identity = [0, 1, 2, 3];
    Ok(match mv.kind {
        MoveKind::OneFour => Bistellar {
            start,
            labels: identity,
            removed: vec![4],
        },
        MoveKind::TwoThree => {
            let k = local(&mv.site, 1)?;
            Bistellar {
                start,
                labels: identity,
                removed: vec![4, k],
            }
        }
        MoveKind::ThreeTwo => {
            let (a, b) = (local(&mv.site, 1)?, local(&mv.site, 2)?);
            if a == b {
                return Err(MoveError::illegal("3-2 edge needs two distinct vertices"));
            }
            let mut labels = [0u8; 4];
            labels[a as usize] = 0;
            labels[b as usize] = 1;
            let mut next = 2;
            for x in 0..4u8 {
                if x != a && x != b {
                    labels[x as usize] = next;
                    next += 1;
                }
            }
            Bistellar {
                start,
                labels,
                removed: vec![2, 3, 4],
            }
        }
        MoveKind::FourOne => {
            let v = local(&mv.site, 1)?;
            let mut labels = [0u8; 4];
            let mut next = 0;
            for x in 0..4u8 {
                if x == v {
                    labels[x as usize] = 4;
                } else {
                    labels[x as usize] = next;
                    next += 1;
                }
            }
            Bistellar {
                start,
                labels,
                removed: vec![0, 1, 2, 3],
            }
        }
        _ => unreachable!(),
    })
}

pub fn apply_elementary(tri: &Triangulation, mv: &Move) -> Result<Applied, MoveError> {
    apply_bistellar(tri, &to_bistellar(tri, mv)?)
}

fn is_legal(tri: &Triangulation, mv: &Move) -> bool {
    to_bistellar(tri, mv)
        .and_then(|b| collect_disc(tri, &b))
        .is_ok()
}

/// Every legal elementary move, one canonical site per location:
/// 1-4 on each tetrahedron, 4-1 at the first corner of each degree-4 vertex,
/// 2-3 at the smaller face of each pair, 3-2 at the first incidence of each
/// degree-3 edge.
pub fn enumerate_moves(tri: &Triangulation) -> Vec<Move> {
    let t = tri.tet_count();
    let mut out: Vec<Move> = (0..t)
        .map(|i| Move::new(MoveKind::OneFour, vec![i]))
        .collect();
    let sk = Skeleton::new(tri);

    let vdeg = sk.vertex_degrees();
    let mut done = vec![false; sk.vertex_count];
    for i in 0..t {
        for v in 0..4 {
            let c = sk.vertex_of[i][v];
            if vdeg[c] == 4 && !done[c] {
                done[c] = true;
                let m = Move::new(MoveKind::FourOne, vec![i, v]);
                if is_legal(tri, &m) {
                    out.push(m);
                }
            }
        }
    }
    for g in tri.face_pairs() {
        if g.source.0 != g.target.0 {
            out.push(Move::new(MoveKind::TwoThree, vec![g.source.0, g.source.1]));
        }
    }
    let edeg = sk.edge_degrees();
    let mut done = vec![false; sk.edge_count];
    for i in 0..t {
        for (e, &(a, b)) in crate::skeleton::EDGES.iter().enumerate() {
            let c = sk.edge_of[i][e];
            if edeg[c] == 3 && !done[c] {
                done[c] = true;
                let m = Move::new(MoveKind::ThreeTwo, vec![i, a, b]);
                if is_legal(tri, &m) {
                    out.push(m);
                }
            }
        }
    }
    out
}

/// The elementary move undoing `applied`, sited in its result.
pub fn inverse_of(applied: &Applied) -> Move {
    let c = applied.created_labels();
    let m = applied.removed_labels();
    let n0 = applied.created[0].1;
    match c.len() {
        4 => Move::new(MoveKind::FourOne, vec![n0, local_of(c[0], m[0])]),
        3 => Move::new(
            MoveKind::ThreeTwo,
            vec![n0, local_of(c[0], m[0]), local_of(c[0], m[1])],
        ),
        2 => Move::new(MoveKind::TwoThree, vec![n0, local_of(c[0], c[1])]),
        1 => Move::new(MoveKind::OneFour, vec![n0]),
        _ => unreachable!("a bistellar move creates one to four tetrahedra"),
    }
}

/// Rewrites a site through a relabeling of the triangulation it refers to.
pub fn translate_site(mv: &Move, r: &Relabeling) -> Move {
    let site = match mv.kind {
        MoveKind::ConeShell => mv
            .site
            .chunks(2)
            .flat_map(|pair| {
                let (tet, mask) = (pair[0], pair.get(1).copied().unwrap_or(0));
                let p = r.perms[tet];
                let moved = (0..4)
                    .filter(|&f| mask & (1 << f) != 0)
                    .fold(0, |acc, f| acc | (1 << p.apply(f)));
                [r.tet_map[tet], moved]
            })
            .collect(),
        _ => {
            let tet = mv.site[0];
            std::iter::once(r.tet_map[tet])
                .chain(mv.site[1..].iter().map(|&x| r.perms[tet].apply(x)))
                .collect()
        }
    };
    Move::new(mv.kind, site)
}

/// Applies `k` uniformly chosen legal elementary moves.
pub fn scramble(tri: &Triangulation, k: usize, seed: u64) -> (Triangulation, Vec<Move>) {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut cur = tri.clone();
    let mut moves = Vec::with_capacity(k);
    for _ in 0..k {
        let options = enumerate_moves(&cur);
        if options.is_empty() {
            break;
        }
        let m = options[rng.gen_range(0..options.len())].clone();
        cur = apply_elementary(&cur, &m)
            .expect("enumerated move applies")
            .result;
        moves.push(m);
    }
    (cur, moves)
}
