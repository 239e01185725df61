//! Generic bistellar moves.
//!
//! Label the five vertices of a 4-simplex `0..5`; its facets are indexed by
//! the missing label. A move picks a set `D` of facets present in the
//! triangulation (tetrahedron missing label `m` for each `m` in `D`) and
//! replaces them by the complementary facets.

use crate::error::MoveError;
use crate::perm::Perm4;
use crate::tri::Triangulation;

/// A bistellar move anchored at one tetrahedron.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Bistellar {
    pub start: usize,
    /// Label of each local vertex of `start`.
    pub labels: [u8; 4],
    /// Missing labels of the facets being removed (includes the one of `start`).
    pub removed: Vec<u8>,
}

/// The four labels of the facet missing `c`, ascending: its local vertex order.
pub fn facet_labels(c: u8) -> [u8; 4] {
    let mut out = [0u8; 4];
    let mut n = 0;
    for l in 0..5u8 {
        if l != c {
            out[n] = l;
            n += 1;
        }
    }
    out
}

/// Local index of label `l` in the facet missing `c`.
pub fn local_of(c: u8, l: u8) -> usize {
    debug_assert_ne!(c, l);
    if l < c {
        l as usize
    } else {
        l as usize - 1
    }
}

/// Outcome of a bistellar move.
#[derive(Debug, Clone)]
pub struct Applied {
    pub result: Triangulation,
    /// New index of each surviving tetrahedron.
    pub old_to_new: Vec<Option<usize>>,
    /// Removed tetrahedra: `(missing label, old index, label of each local vertex)`.
    pub removed: Vec<(u8, usize, [u8; 4])>,
    /// Created tetrahedra: `(missing label, new index)`; local order is [`facet_labels`].
    pub created: Vec<(u8, usize)>,
}

impl Applied {
    pub fn removed_labels(&self) -> Vec<u8> {
        self.removed.iter().map(|r| r.0).collect()
    }

    pub fn created_labels(&self) -> Vec<u8> {
        self.created.iter().map(|c| c.0).collect()
    }

    pub fn created_tet(&self, label: u8) -> Option<usize> {
        self.created.iter().find(|c| c.0 == label).map(|c| c.1)
    }

    /// Where a face of the old triangulation lives afterwards; `None` if it
    /// was interior to the removed disc.
    pub fn relocate_face(&self, tet: usize, face: usize) -> Option<(usize, usize)> {
        if let Some(n) = self.old_to_new[tet] {
            return Some((n, face));
        }
        let &(m, _, lab) = self.removed.iter().find(|r| r.1 == tet)?;
        let c = lab[face];
        let n = self.created_tet(c)?;
        Some((n, local_of(c, m)))
    }

    /// Where a simplex spanned by some local vertices of an old tetrahedron
    /// lives afterwards, as a tetrahedron and the new locals of those
    /// vertices; `None` if the move destroyed it.
    pub fn relocate_locals(&self, tet: usize, locals: &[usize]) -> Option<(usize, Vec<usize>)> {
        if let Some(n) = self.old_to_new[tet] {
            return Some((n, locals.to_vec()));
        }
        let &(_, _, lab) = self.removed.iter().find(|r| r.1 == tet)?;
        let labels: Vec<u8> = locals.iter().map(|&l| lab[l]).collect();
        let &(c, n) = self.created.iter().find(|e| !labels.contains(&e.0))?;
        Some((n, labels.iter().map(|&l| local_of(c, l)).collect()))
    }
}

/// Validates the disc and returns `(missing label, tet, labels)` for each facet of `D`.
pub(crate) fn collect_disc(
    tri: &Triangulation,
    mv: &Bistellar,
) -> Result<Vec<(u8, usize, [u8; 4])>, MoveError> {
    let t = tri.tet_count();
    if mv.start >= t {
        return Err(MoveError::illegal(format!(
            "tetrahedron {} does not exist",
            mv.start
        )));
    }
    let mut seen = [false; 5];
    for &l in &mv.labels {
        if l > 4 || seen[l as usize] {
            return Err(MoveError::illegal("start labels are not injective"));
        }
        seen[l as usize] = true;
    }
    let start_missing = (0..5u8).find(|&l| !seen[l as usize]).unwrap();
    let mut in_d = [false; 5];
    for &m in &mv.removed {
        if m > 4 || in_d[m as usize] {
            return Err(MoveError::illegal("removed label set is malformed"));
        }
        in_d[m as usize] = true;
    }
    if !in_d[start_missing as usize] || mv.removed.len() == 5 {
        return Err(MoveError::illegal(
            "start tetrahedron is not in the removed disc",
        ));
    }

    let mut slot: [Option<(usize, [u8; 4])>; 5] = [None; 5];
    slot[start_missing as usize] = Some((mv.start, mv.labels));
    let mut queue = vec![start_missing];
    while let Some(m) = queue.pop() {
        let (x, lab) = slot[m as usize].unwrap();
        for k in 0..4 {
            let l = lab[k];
            if !in_d[l as usize] {
                continue;
            }
            let (y, p) = tri.neighbor(x, k);
            let mut ylab = [0u8; 4];
            for a in 0..4 {
                ylab[p.apply(a)] = if a == k { m } else { lab[a] };
            }
            match slot[l as usize] {
                Some((yy, ll)) => {
                    if yy != y || ll != ylab {
                        return Err(MoveError::illegal(format!(
                            "facets {m} and {l} are not glued as in the boundary of a 4-simplex"
                        )));
                    }
                }
                None => {
                    slot[l as usize] = Some((y, ylab));
                    queue.push(l);
                }
            }
        }
    }
    let mut out = Vec::new();
    for &m in &mv.removed {
        let (x, lab) = slot[m as usize]
            .ok_or_else(|| MoveError::illegal(format!("facet {m} is not reachable")))?;
        if out.iter().any(|&(_, y, _)| y == x) {
            return Err(MoveError::illegal(format!(
                "tetrahedron {x} occurs twice in the disc"
            )));
        }
        out.push((m, x, lab));
    }
    out.sort_by_key(|r| r.0);
    Ok(out)
}

/// Replaces the disc `D` by its complement in the boundary of the 4-simplex.
///
/// Surviving tetrahedra keep their relative order and come first; created
/// tetrahedra follow in ascending order of missing label.
pub fn apply_bistellar(tri: &Triangulation, mv: &Bistellar) -> Result<Applied, MoveError> {
    let disc = collect_disc(tri, mv)?;
    let t = tri.tet_count();
    let mut in_d = [false; 5];
    for r in &disc {
        in_d[r.0 as usize] = true;
    }
    let complement: Vec<u8> = (0..5u8).filter(|&l| !in_d[l as usize]).collect();

    let mut old_to_new = vec![None; t];
    let mut removed_at = vec![None; t];
    for (n, r) in disc.iter().enumerate() {
        removed_at[r.1] = Some(n);
    }
    let mut next = 0;
    for (x, slot) in old_to_new.iter_mut().enumerate() {
        if removed_at[x].is_none() {
            *slot = Some(next);
            next += 1;
        }
    }
    let created: Vec<(u8, usize)> = complement
        .iter()
        .enumerate()
        .map(|(n, &c)| (c, next + n))
        .collect();
    let created_idx = |c: u8| created.iter().find(|e| e.0 == c).unwrap().1;
    let facet_of = |m: u8| disc.iter().find(|r| r.0 == m).unwrap();

    // Face of created facet `c` opposite label `l` (l in D) takes the place of
    // face of removed facet `l` opposite label `c`. Returns (removed tet, its
    // face, map from created-local to removed-local).
    let replaced = |c: u8, l: u8| {
        let &(_, x, lab) = facet_of(l);
        let to_local = |label: u8| lab.iter().position(|&z| z == label).unwrap() as u8;
        let fl = facet_labels(c);
        let mut img = [0u8; 4];
        for a in 0..4 {
            img[a] = to_local(if fl[a] == l { c } else { fl[a] });
        }
        (x, to_local(c) as usize, Perm4::new(img).unwrap())
    };

    let mut adj: Vec<[(usize, Perm4); 4]> = Vec::with_capacity(next + complement.len());
    for (row, gone) in tri.adjacency().iter().zip(&removed_at) {
        if gone.is_none() {
            adj.push(*row);
        }
    }
    // remap kept targets; faces glued to removed tets are rewritten below
    for row in adj.iter_mut() {
        for e in row.iter_mut() {
            if let Some(n) = old_to_new[e.0] {
                e.0 = n;
            }
        }
    }
    for &c in &complement {
        let fl = facet_labels(c);
        let mut row = [(0usize, Perm4::IDENTITY); 4];
        for (k, &l) in fl.iter().enumerate() {
            if !in_d[l as usize] {
                // internal to the new disc
                let other = facet_labels(l);
                let mut img = [0u8; 4];
                for a in 0..4 {
                    let lab = if fl[a] == l { c } else { fl[a] };
                    img[a] = other.iter().position(|&z| z == lab).unwrap() as u8;
                }
                row[k] = (created_idx(l), Perm4::new(img).unwrap());
                continue;
            }
            let (x, face, f) = replaced(c, l);
            let (y, p) = tri.neighbor(x, face);
            let pf = p.compose(f);
            match removed_at[y] {
                None => {
                    let yn = old_to_new[y].unwrap();
                    row[k] = (yn, pf);
                    let back_face = p.apply(face);
                    adj[yn][back_face] = (created_idx(c), pf.inverse());
                }
                Some(n) => {
                    // the partner face is also on the boundary of the disc
                    let (l2, _, lab2) = disc[n];
                    let c2 = lab2[p.apply(face)];
                    let (_, _, f2) = replaced(c2, l2);
                    row[k] = (created_idx(c2), f2.inverse().compose(pf));
                }
            }
        }
        adj.push(row);
    }
    let result = Triangulation::from_adjacency_trusted(adj);
    Ok(Applied {
        result,
        old_to_new,
        removed: disc,
        created,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::census;
    use crate::link::is_closed_3_manifold;

    #[test]
    fn one_four_on_double() {
        let d = census::double_tetrahedron();
        let a = apply_bistellar(
            &d,
            &Bistellar {
                start: 0,
                labels: [0, 1, 2, 3],
                removed: vec![4],
            },
        )
        .unwrap();
        assert_eq!(a.result.tet_count(), 5);
        assert!(is_closed_3_manifold(&a.result));
        assert_eq!(a.old_to_new, vec![None, Some(0)]);
        assert_eq!(a.created_labels(), vec![0, 1, 2, 3]);
        // undo with the 4-1 on the created facets
        let b = apply_bistellar(
            &a.result,
            &Bistellar {
                start: 1,
                labels: facet_labels(0),
                removed: vec![0, 1, 2, 3],
            },
        )
        .unwrap();
        assert_eq!(b.result.tet_count(), 2);
        assert!(crate::signature::are_isomorphic(&b.result, &d));
    }

    #[test]
    fn relabeling_the_disc_is_checked() {
        let d = census::double_tetrahedron();
        // 2-3 across face 0 is legal, but 3-2 needs three distinct tetrahedra
        assert!(apply_bistellar(
            &d,
            &Bistellar {
                start: 0,
                labels: [0, 1, 2, 3],
                removed: vec![4, 0]
            }
        )
        .is_ok());
        assert!(apply_bistellar(
            &d,
            &Bistellar {
                start: 0,
                labels: [0, 1, 2, 3],
                removed: vec![4, 2, 3]
            }
        )
        .is_err());
    }
}
