//! Simplicial quotients: identify whole tetrahedra by simplicial maps.

use std::collections::{HashSet, VecDeque};

use rayon::prelude::*;
use serde_json::{json, Value};

use crate::error::QuotientError;
use crate::link::is_closed_3_manifold;
use crate::orient::orientation;
use crate::perm::{Perm4, ALL_PERMS};
use crate::signature::{iso_signature, IsoSignature};
use crate::tri::Triangulation;

/// Version tag of the quotient-spec format.
pub const QUOTIENT_FORMAT: &str = "quo/1";

/// Identifications `(source, target, map)`: local vertex `v` of `source`
/// goes to local vertex `map(v)` of `target`.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct QuotientSpec {
    pub ids: Vec<(usize, usize, Perm4)>,
}

impl QuotientSpec {
    pub fn to_json_value(&self) -> Value {
        let ids: Vec<Value> = self
            .ids
            .iter()
            .map(|&(s, d, p)| json!([s, d, p.images()]))
            .collect();
        json!({"format": QUOTIENT_FORMAT, "ids": ids})
    }

    pub fn to_json(&self) -> String {
        self.to_json_value().to_string()
    }

    pub fn from_json(text: &str) -> Result<QuotientSpec, QuotientError> {
        let v: Value =
            serde_json::from_str(text).map_err(|e| QuotientError::Format(e.to_string()))?;
        QuotientSpec::from_json_value(&v)
    }

    pub fn from_json_value(v: &Value) -> Result<QuotientSpec, QuotientError> {
        let bad = |m: &str| QuotientError::Format(m.to_string());
        if v.get("format").and_then(Value::as_str) != Some(QUOTIENT_FORMAT) {
            return Err(bad("missing or unknown format tag"));
        }
        let ids = v
            .get("ids")
            .and_then(Value::as_array)
            .ok_or_else(|| bad("ids must be an array"))?;
        let mut out = Vec::with_capacity(ids.len());
        for id in ids {
            let parse = || -> Option<(usize, usize, Perm4)> {
                let a = id.as_array()?;
                if a.len() != 3 {
                    return None;
                }
                let s = a[0].as_u64()? as usize;
                let d = a[1].as_u64()? as usize;
                let imgs = a[2].as_array()?;
                if imgs.len() != 4 {
                    return None;
                }
                let mut img = [0u8; 4];
                for (slot, x) in img.iter_mut().zip(imgs) {
                    *slot = u8::try_from(x.as_u64()?).ok()?;
                }
                Some((s, d, Perm4::new(img)?))
            };
            out.push(parse().ok_or_else(|| bad("each id is [source, target, [4 images]]"))?);
        }
        Ok(QuotientSpec { ids: out })
    }
}

/// A simplicial quotient together with its projection.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct QuotientResult {
    pub quotient: Triangulation,
    /// For each source tetrahedron: its quotient tetrahedron and the map
    /// from its locals to the representative's locals.
    pub projection: Vec<(usize, Perm4)>,
    /// Source tetrahedra of each quotient tetrahedron, ascending; the first
    /// is the representative.
    pub classes: Vec<Vec<usize>>,
    /// Degree when source and quotient are orientable, normalised to be
    /// non-negative.
    pub degree: Option<i64>,
}

/// Union-find carrying the map from each element's locals to its root's.
struct MapUnionFind {
    parent: Vec<usize>,
    to_parent: Vec<Perm4>,
}

impl MapUnionFind {
    fn new(n: usize) -> Self {
        MapUnionFind {
            parent: (0..n).collect(),
            to_parent: vec![Perm4::IDENTITY; n],
        }
    }

    fn find(&mut self, x: usize) -> (usize, Perm4) {
        let mut root = x;
        let mut m = Perm4::IDENTITY;
        while self.parent[root] != root {
            m = self.to_parent[root].compose(m);
            root = self.parent[root];
        }
        self.parent[x] = root;
        self.to_parent[x] = m;
        (root, m)
    }

    /// Records `x -> y` by `p`. Returns false if it contradicts earlier records.
    fn union(&mut self, x: usize, y: usize, p: Perm4) -> bool {
        let (rx, a) = self.find(x);
        let (ry, b) = self.find(y);
        // rx -> ry is b p a^-1
        let m = b.compose(p).compose(a.inverse());
        if rx == ry {
            return m == Perm4::IDENTITY;
        }
        self.parent[rx] = ry;
        self.to_parent[rx] = m;
        true
    }
}

/// Closes the identifications and builds the quotient gluing.
pub fn apply_identifications(
    tri: &Triangulation,
    spec: &QuotientSpec,
) -> Result<QuotientResult, QuotientError> {
    let t = tri.tet_count();
    let mut uf = MapUnionFind::new(t);
    for &(s, d, p) in &spec.ids {
        if s >= t || d >= t {
            return Err(QuotientError::Format(format!(
                "identification {s} -> {d} is out of range"
            )));
        }
        if !uf.union(s, d, p) {
            return Err(QuotientError::InconsistentMaps { tet: s });
        }
    }
    let mut class_of_root = vec![usize::MAX; t];
    let mut classes: Vec<Vec<usize>> = Vec::new();
    let mut to_root = vec![Perm4::IDENTITY; t];
    for (i, slot) in to_root.iter_mut().enumerate() {
        let (r, m) = uf.find(i);
        *slot = m;
        if class_of_root[r] == usize::MAX {
            class_of_root[r] = classes.len();
            classes.push(Vec::new());
        }
        classes[class_of_root[r]].push(i);
    }
    let mut projection = vec![(0, Perm4::IDENTITY); t];
    for (c, members) in classes.iter().enumerate() {
        let rep_inv = to_root[members[0]].inverse();
        for &i in members {
            projection[i] = (c, rep_inv.compose(to_root[i]));
        }
    }

    let n = classes.len();
    let mut adj: Vec<[Option<(usize, Perm4)>; 4]> = vec![[None; 4]; n];
    for g in tri.gluings() {
        let ((i, k), (j, _)) = (g.source, g.target);
        let (ci, si) = projection[i];
        let (cj, sj) = projection[j];
        let qk = si.apply(k);
        let m = sj.compose(g.map).compose(si.inverse());
        if ci == cj && m.apply(qk) == qk {
            return Err(QuotientError::SelfIdentification { tet: ci, face: qk });
        }
        match adj[ci][qk] {
            Some(prev) if prev != (cj, m) => {
                return Err(QuotientError::FaceOvercrowding { tet: ci, face: qk });
            }
            _ => adj[ci][qk] = Some((cj, m)),
        }
    }
    let adj: Vec<[(usize, Perm4); 4]> = adj
        .into_iter()
        .map(|row| row.map(|e| e.expect("every quotient face is the image of a source face")))
        .collect();
    let quotient = Triangulation::from_adjacency(adj)?;
    let mut result = QuotientResult {
        quotient,
        projection,
        classes,
        degree: None,
    };
    if let Some(signs) = orientation(tri) {
        result.degree = quotient_degree(&result, &signs).ok();
    }
    Ok(result)
}

/// Degree of the projection for the source orientation `signs`: over each
/// quotient tetrahedron, members mapped preserving orientation minus those
/// mapped reversing it. Every quotient tetrahedron must give the same count.
pub fn quotient_degree(r: &QuotientResult, signs: &[i8]) -> Result<i64, QuotientError> {
    if signs.len() != r.projection.len() {
        return Err(QuotientError::NotOrientable);
    }
    let q_signs = orientation(&r.quotient).ok_or(QuotientError::NotOrientable)?;
    let per_class: Vec<i64> = r
        .classes
        .iter()
        .enumerate()
        .map(|(c, members)| {
            members
                .iter()
                .map(|&i| {
                    let s = signs[i] as i64 * r.projection[i].1.sign() as i64;
                    s * q_signs[c] as i64
                })
                .sum()
        })
        .collect();
    let flip = if per_class.first().copied().unwrap_or(0) < 0 {
        -1
    } else {
        1
    };
    let per_class: Vec<i64> = per_class.into_iter().map(|d| d * flip).collect();
    if per_class.windows(2).any(|w| w[0] != w[1]) {
        return Err(QuotientError::DegreeMismatch(per_class));
    }
    Ok(per_class.first().copied().unwrap_or(0))
}

/// Which quotients an enumeration keeps.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct QuotientFilters {
    /// Only orientation-compatible maps, and an orientable quotient.
    pub oriented: bool,
    pub degree_one: bool,
    pub manifold: bool,
}

/// Pull-based enumeration of quotients.
///
/// Candidates assign to each pair `i < j` of tetrahedra either nothing or
/// one map; they are scanned in lexicographic order of the per-pair choices
/// with the first pair most significant. Results are deduplicated by
/// signature.
pub struct QuotientEnumerator<'a> {
    tri: &'a Triangulation,
    filters: QuotientFilters,
    budget: Option<u64>,
    pairs: Vec<(usize, usize)>,
    choices: Vec<Vec<Perm4>>,
    digits: Vec<usize>,
    exhausted: bool,
    scanned: u64,
    seen: HashSet<IsoSignature>,
    pending: VecDeque<QuotientResult>,
}

const BATCH: usize = 256;

impl QuotientEnumerator<'_> {
    /// Candidates examined so far.
    pub fn scanned(&self) -> u64 {
        self.scanned
    }

    /// Whether every candidate was examined.
    pub fn is_complete(&self) -> bool {
        self.exhausted
    }

    /// Whether the budget stopped the scan early.
    pub fn budget_exceeded(&self) -> bool {
        !self.exhausted && self.budget.is_some_and(|b| self.scanned >= b)
    }

    fn spec(&self) -> QuotientSpec {
        let ids = self
            .digits
            .iter()
            .enumerate()
            .filter(|(_, &d)| d > 0)
            .map(|(n, &d)| (self.pairs[n].0, self.pairs[n].1, self.choices[n][d - 1]))
            .collect();
        QuotientSpec { ids }
    }

    fn advance(&mut self) {
        for n in (0..self.digits.len()).rev() {
            self.digits[n] += 1;
            if self.digits[n] <= self.choices[n].len() {
                return;
            }
            self.digits[n] = 0;
        }
        self.exhausted = true;
    }

    fn keep(&self, r: &QuotientResult) -> bool {
        (!self.filters.manifold || is_closed_3_manifold(&r.quotient))
            && (!self.filters.oriented || orientation(&r.quotient).is_some())
            && (!self.filters.degree_one || r.degree == Some(1))
    }

    fn fill(&mut self) {
        let mut batch = Vec::with_capacity(BATCH);
        while batch.len() < BATCH && !self.exhausted {
            if self.budget.is_some_and(|b| self.scanned >= b) {
                break;
            }
            batch.push(self.spec());
            self.scanned += 1;
            self.advance();
        }
        let tri = self.tri;
        let results: Vec<Option<QuotientResult>> = batch
            .par_iter()
            .map(|spec| {
                apply_identifications(tri, spec)
                    .ok()
                    .filter(|r| self.keep(r))
            })
            .collect();
        for r in results.into_iter().flatten() {
            if self.seen.insert(iso_signature(&r.quotient)) {
                self.pending.push_back(r);
            }
        }
    }
}

impl Iterator for QuotientEnumerator<'_> {
    type Item = QuotientResult;

    fn next(&mut self) -> Option<QuotientResult> {
        loop {
            if let Some(r) = self.pending.pop_front() {
                return Some(r);
            }
            if self.exhausted || self.budget.is_some_and(|b| self.scanned >= b) {
                return None;
            }
            self.fill();
        }
    }
}

/// Enumerates quotients of `tri`, examining at most `budget` candidates.
///
/// With the `oriented` filter the source must be orientable, and each pair
/// only gets the 12 maps compatible with its orientation.
pub fn enumerate_quotients(
    tri: &Triangulation,
    filters: QuotientFilters,
    budget: Option<u64>,
) -> Result<QuotientEnumerator<'_>, QuotientError> {
    let t = tri.tet_count();
    let signs = if filters.oriented || filters.degree_one {
        Some(orientation(tri).ok_or(QuotientError::NotOrientable)?)
    } else {
        None
    };
    let mut pairs = Vec::new();
    let mut choices = Vec::new();
    for i in 0..t {
        for j in i + 1..t {
            pairs.push((i, j));
            let maps = ALL_PERMS
                .into_iter()
                .filter(|p| match (&signs, filters.oriented) {
                    (Some(s), true) => s[i] as i32 * s[j] as i32 * p.sign() == 1,
                    _ => true,
                })
                .collect();
            choices.push(maps);
        }
    }
    Ok(QuotientEnumerator {
        tri,
        filters,
        budget,
        digits: vec![0; pairs.len()],
        pairs,
        choices,
        exhausted: false,
        scanned: 0,
        seen: HashSet::new(),
        pending: VecDeque::new(),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::census;

    #[test]
    fn empty_spec_is_identity() {
        let d = census::double_tetrahedron();
        let r = apply_identifications(&d, &QuotientSpec::default()).unwrap();
        assert_eq!(r.quotient, d);
        assert_eq!(r.degree, Some(1));
    }

    #[test]
    fn identifying_the_double_self_glues() {
        let d = census::double_tetrahedron();
        let spec = QuotientSpec {
            ids: vec![(0, 1, Perm4::IDENTITY)],
        };
        assert!(matches!(
            apply_identifications(&d, &spec),
            Err(QuotientError::SelfIdentification { .. })
        ));
    }

    #[test]
    fn contradictory_maps() {
        let d = census::double_tetrahedron();
        let spec = QuotientSpec {
            ids: vec![(0, 1, Perm4::IDENTITY), (1, 0, Perm4::transposition(0, 1))],
        };
        assert_eq!(
            apply_identifications(&d, &spec),
            Err(QuotientError::InconsistentMaps { tet: 1 })
        );
    }

    #[test]
    fn double_has_only_the_identity_quotient() {
        let d = census::double_tetrahedron();
        let filters = QuotientFilters {
            oriented: true,
            ..Default::default()
        };
        let mut e = enumerate_quotients(&d, filters, None).unwrap();
        let all: Vec<_> = e.by_ref().collect();
        assert_eq!(all.len(), 1);
        assert_eq!(all[0].quotient, d);
        assert_eq!(e.scanned(), 13);
        assert!(e.is_complete());
    }

    #[test]
    fn budget_marks_the_stream_partial() {
        let l = census::lens_space(3, 1);
        let mut e = enumerate_quotients(&l, QuotientFilters::default(), Some(5)).unwrap();
        let _: Vec<_> = e.by_ref().collect();
        assert_eq!(e.scanned(), 5);
        assert!(!e.is_complete());
        assert!(e.budget_exceeded());
    }

    #[test]
    fn spec_json_round_trip() {
        let spec = QuotientSpec {
            ids: vec![(0, 2, Perm4::new([1, 0, 3, 2]).unwrap())],
        };
        let text = spec.to_json();
        assert_eq!(text, r#"{"format":"quo/1","ids":[[0,2,[1,0,3,2]]]}"#);
        assert_eq!(QuotientSpec::from_json(&text).unwrap(), spec);
    }

    #[test]
    fn lens_four_folds_onto_lens_two() {
        let l4 = census::lens_space(4, 1);
        let spec = QuotientSpec {
            ids: vec![(0, 2, Perm4::IDENTITY), (1, 3, Perm4::IDENTITY)],
        };
        let r = apply_identifications(&l4, &spec).unwrap();
        assert!(crate::signature::are_isomorphic(
            &r.quotient,
            &census::lens_space(2, 1)
        ));
        assert_eq!(r.degree, Some(2));
        assert_eq!(r.classes, vec![vec![0, 2], vec![1, 3]]);
    }
}
