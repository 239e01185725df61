use std::collections::BTreeSet;

use glu_core::perm::ALL_PERMS;
use glu_core::quotient::QuotientFilters;
use glu_core::signature::iso_signature;
use glu_core::tri::RawFace;
use glu_core::{Perm4, Triangulation};

use super::{brute_orientation, oracle_is_manifold};

/// Quotient of a gluing with at most two tetrahedra, built slot by slot.
/// `pair` identifies tetrahedron 0 with 1; `selfs[i]` maps i to itself.
/// Returns the quotient and the degree when both ends are orientable.
pub fn oracle_quotient(
    tri: &Triangulation,
    pair: Option<Perm4>,
    selfs: &[Option<Perm4>],
) -> Option<(Triangulation, Option<i64>)> {
    let t = tri.tet_count();
    if selfs.iter().flatten().any(|&p| p != Perm4::IDENTITY) {
        return None;
    }
    // class and map from source locals to representative locals
    let proj: Vec<(usize, Perm4)> = match pair {
        Some(p) => vec![(0, Perm4::IDENTITY), (0, p.inverse())],
        None => (0..t).map(|i| (i, Perm4::IDENTITY)).collect(),
    };
    let n = if pair.is_some() { 1 } else { t };
    let mut slots: Vec<[Option<(usize, Perm4)>; 4]> = vec![[None; 4]; n];
    for i in 0..t {
        for k in 0..4 {
            let (j, q) = tri.neighbor(i, k);
            let (ci, si) = proj[i];
            let (cj, sj) = proj[j];
            let face = si.apply(k);
            let m = sj.compose(q).compose(si.inverse());
            match slots[ci][face] {
                Some(prev) if prev != (cj, m) => return None,
                _ => slots[ci][face] = Some((cj, m)),
            }
        }
    }
    let raw: Vec<Vec<RawFace>> = slots
        .iter()
        .map(|row| {
            row.iter()
                .map(|e| {
                    let (j, m) = e.unwrap();
                    RawFace {
                        target: j as i64,
                        images: m.images().iter().map(|&x| x as i64).collect(),
                    }
                })
                .collect()
        })
        .collect();
    let q = Triangulation::validate(&raw).ok()?;
    let degree = match (brute_orientation(tri), brute_orientation(&q)) {
        (Some(o), Some(oq)) => {
            let per: Vec<i64> = (0..n)
                .map(|c| {
                    (0..t)
                        .filter(|&i| proj[i].0 == c)
                        .map(|i| o[i] as i64 * proj[i].1.sign() as i64 * oq[c] as i64)
                        .sum()
                })
                .collect();
            per.windows(2).all(|w| w[0] == w[1]).then(|| per[0].abs())
        }
        _ => None,
    };
    Some((q, degree))
}

pub fn brute_force(tri: &Triangulation, filters: QuotientFilters) -> BTreeSet<String> {
    let t = tri.tet_count();
    let signs = brute_orientation(tri);
    let maps_for = |i: usize, j: usize| -> Vec<Option<Perm4>> {
        let mut out = vec![None];
        for p in ALL_PERMS {
            let ok = match (&signs, filters.oriented) {
                (Some(s), true) => s[i] as i32 * s[j] as i32 * p.sign() == 1,
                _ => true,
            };
            if ok {
                out.push(Some(p));
            }
        }
        out
    };
    let pair_choices = if t == 2 { maps_for(0, 1) } else { vec![None] };
    let self_choices: Vec<Vec<Option<Perm4>>> = (0..t).map(|i| maps_for(i, i)).collect();
    let mut out = BTreeSet::new();
    let mut selfs = vec![None; t];
    let total: usize = self_choices.iter().map(Vec::len).product();
    for &pair in &pair_choices {
        for mut code in 0..total {
            for (i, c) in self_choices.iter().enumerate() {
                selfs[i] = c[code % c.len()];
                code /= c.len();
            }
            let Some((q, degree)) = oracle_quotient(tri, pair, &selfs) else {
                continue;
            };
            let keep = (!filters.manifold || oracle_is_manifold(&q))
                && (!filters.oriented || brute_orientation(&q).is_some())
                && (!filters.degree_one || degree == Some(1));
            if keep {
                out.insert(iso_signature(&q).to_string());
            }
        }
    }
    out
}
