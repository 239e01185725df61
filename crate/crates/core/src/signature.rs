use std::cmp::Ordering;
use std::fmt;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::perm::{Perm4, ALL_PERMS};
use crate::tri::Triangulation;

type Labels = Vec<(usize, Perm4)>;

/// Canonical text for a gluing up to simplicial isomorphism.
///
/// Each connected component is relabeled breadth-first from every
/// (tetrahedron, vertex labeling) start; the lexicographically smallest
/// sequence of `(target, permutation index)` face records wins. Components
/// are sorted and joined with `+`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(transparent)]
pub struct IsoSignature(pub String);

impl fmt::Display for IsoSignature {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.0)
    }
}

impl IsoSignature {
    pub fn as_str(&self) -> &str {
        &self.0
    }
}

/// A relabeling: tetrahedron `i` becomes `tet_map[i]` with vertex labels
/// sent through `perms[i]`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Relabeling {
    pub tet_map: Vec<usize>,
    pub perms: Vec<Perm4>,
}

impl Relabeling {
    pub fn identity(t: usize) -> Relabeling {
        Relabeling {
            tet_map: (0..t).collect(),
            perms: vec![Perm4::IDENTITY; t],
        }
    }

    pub fn inverse(&self) -> Relabeling {
        let t = self.tet_map.len();
        let mut tet_map = vec![0; t];
        let mut perms = vec![Perm4::IDENTITY; t];
        for i in 0..t {
            tet_map[self.tet_map[i]] = i;
            perms[self.tet_map[i]] = self.perms[i].inverse();
        }
        Relabeling { tet_map, perms }
    }

    /// `self` then `other`.
    pub fn then(&self, other: &Relabeling) -> Relabeling {
        Relabeling {
            tet_map: self.tet_map.iter().map(|&n| other.tet_map[n]).collect(),
            perms: self
                .tet_map
                .iter()
                .zip(&self.perms)
                .map(|(&n, &p)| other.perms[n].compose(p))
                .collect(),
        }
    }

    pub fn apply(&self, tri: &Triangulation) -> Triangulation {
        tri.relabel(&self.tet_map, &self.perms)
    }
}

/// Labels one component from a start and compares against `best` on the fly.
/// Returns the code and relabeling if strictly smaller than `best`.
fn bfs_code(
    tri: &Triangulation,
    start: usize,
    sigma: Perm4,
    best: Option<&[u32]>,
) -> Option<(Vec<u32>, Labels)> {
    let t = tri.tet_count();
    let mut label: Vec<Option<(usize, Perm4)>> = vec![None; t];
    let mut order = vec![start];
    label[start] = Some((0, sigma));
    let mut code = Vec::with_capacity(8 * t);
    let mut tied = best.is_some();
    let mut head = 0;
    while head < order.len() {
        let i = order[head];
        head += 1;
        let (_, si) = label[i].unwrap();
        let si_inv = si.inverse();
        for f in 0..4 {
            let k = si_inv.apply(f);
            let (j, p) = tri.neighbor(i, k);
            let sj = match label[j] {
                Some((_, sj)) => sj,
                None => {
                    let sj = si.compose(p.inverse());
                    label[j] = Some((order.len(), sj));
                    order.push(j);
                    sj
                }
            };
            let q = sj.compose(p).compose(si_inv);
            let entry = [label[j].unwrap().0 as u32, q.index() as u32];
            for x in entry {
                if tied {
                    let b = best.unwrap()[code.len()];
                    match x.cmp(&b) {
                        Ordering::Less => tied = false,
                        Ordering::Greater => return None,
                        Ordering::Equal => {}
                    }
                }
                code.push(x);
            }
        }
    }
    if tied {
        return None;
    }
    let lab = label
        .into_iter()
        .map(|l| l.unwrap_or((usize::MAX, Perm4::IDENTITY)))
        .collect();
    Some((code, lab))
}

fn render(code: &[u32]) -> String {
    let t = code.len() / 8;
    let mut s = format!("{t}:");
    for (n, rec) in code.chunks(2).enumerate() {
        if n > 0 {
            s.push(if n % 4 == 0 { '/' } else { ',' });
        }
        s.push_str(&format!("{}.{}", rec[0], rec[1]));
    }
    s
}

/// Minimal code and its labeling for a connected gluing.
fn connected_canonical(tri: &Triangulation) -> (Vec<u32>, Vec<(usize, Perm4)>) {
    let t = tri.tet_count();
    let run = |start: usize| {
        let mut best: Option<(Vec<u32>, Labels)> = None;
        for sigma in ALL_PERMS {
            if let Some(found) = bfs_code(tri, start, sigma, best.as_ref().map(|b| b.0.as_slice()))
            {
                best = Some(found);
            }
        }
        best.unwrap()
    };
    let pick = |a: (Vec<u32>, Vec<(usize, Perm4)>), b: (Vec<u32>, Vec<(usize, Perm4)>)| {
        if b.0 < a.0 {
            b
        } else {
            a
        }
    };
    if t >= 8 {
        (0..t).into_par_iter().map(run).reduce_with(pick).unwrap()
    } else {
        (0..t).map(run).reduce(pick).unwrap()
    }
}

/// Signature plus the relabeling that carries `tri` onto its canonical form.
pub fn canonical_form(tri: &Triangulation) -> (IsoSignature, Relabeling) {
    let t = tri.tet_count();
    if t == 0 {
        return (IsoSignature("0:".into()), Relabeling::identity(0));
    }
    let comps = tri.components();
    let mut parts: Vec<(Vec<u32>, Vec<usize>, Labels)> = comps
        .iter()
        .map(|members| {
            let sub = tri.restrict(members);
            let (code, lab) = connected_canonical(&sub);
            (code, members.clone(), lab)
        })
        .collect();
    parts.sort_by(|a, b| a.0.len().cmp(&b.0.len()).then_with(|| a.0.cmp(&b.0)));
    let mut relabel = Relabeling::identity(t);
    let mut offset = 0;
    let mut texts = Vec::with_capacity(parts.len());
    for (code, members, lab) in &parts {
        for (n, &m) in members.iter().enumerate() {
            relabel.tet_map[m] = offset + lab[n].0;
            relabel.perms[m] = lab[n].1;
        }
        offset += members.len();
        texts.push(render(code));
    }
    (IsoSignature(texts.join("+")), relabel)
}

pub fn iso_signature(tri: &Triangulation) -> IsoSignature {
    canonical_form(tri).0
}

pub fn are_isomorphic(a: &Triangulation, b: &Triangulation) -> bool {
    a.tet_count() == b.tet_count() && iso_signature(a) == iso_signature(b)
}

/// A relabeling carrying `a` onto `b`, if they are isomorphic.
pub fn isomorphism(a: &Triangulation, b: &Triangulation) -> Option<Relabeling> {
    if a.tet_count() != b.tet_count() {
        return None;
    }
    let (sa, ra) = canonical_form(a);
    let (sb, rb) = canonical_form(b);
    if sa != sb {
        return None;
    }
    let iso = ra.then(&rb.inverse());
    debug_assert_eq!(&iso.apply(a), b);
    Some(iso)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::census;

    #[test]
    fn double_tetrahedron_signature() {
        let d = census::double_tetrahedron();
        assert_eq!(
            iso_signature(&d).as_str(),
            "2:1.0,1.0,1.0,1.0/0.0,0.0,0.0,0.0"
        );
        assert_eq!(iso_signature(&Triangulation::empty()).as_str(), "0:");
    }

    #[test]
    fn relabeling_invariance_and_isomorphism() {
        let l = census::lens_space(5, 2);
        let t = l.tet_count();
        let r = Relabeling {
            tet_map: (0..t).map(|i| (i + 2) % t).collect(),
            perms: (0..t).map(|i| ALL_PERMS[(7 * i + 3) % 24]).collect(),
        };
        let m = r.apply(&l);
        assert_eq!(iso_signature(&l), iso_signature(&m));
        let iso = isomorphism(&l, &m).unwrap();
        assert_eq!(iso.apply(&l), m);
        assert_eq!(r.then(&r.inverse()), Relabeling::identity(t));
    }

    #[test]
    fn different_sizes_differ() {
        assert!(!are_isomorphic(
            &census::double_tetrahedron(),
            &census::one_tetrahedron_sphere()
        ));
    }

    #[test]
    fn union_signature_is_sorted() {
        let d = census::double_tetrahedron();
        let l = census::lens_space(3, 1);
        let a = iso_signature(&d.disjoint_union(&l));
        let b = iso_signature(&l.disjoint_union(&d));
        assert_eq!(a, b);
        assert!(a.as_str().contains('+'));
        let u = l.disjoint_union(&d);
        let iso = isomorphism(&d.disjoint_union(&l), &u).unwrap();
        assert_eq!(iso.apply(&d.disjoint_union(&l)), u);
    }
}
