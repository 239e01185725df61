use serde_json::{json, Value};

use crate::error::GluingError;
use crate::perm::Perm4;

/// Version tag of the on-disk gluing format.
pub const GLUING_FORMAT: &str = "glu3/1";

/// One face record: face `source.1` of tetrahedron `source.0` is glued to
/// face `target.1` of tetrahedron `target.0`, carrying vertex label `v` of
/// the source tetrahedron to label `map(v)` of the target.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct FaceGluing {
    pub source: (usize, usize),
    pub target: (usize, usize),
    pub map: Perm4,
}

/// A raw face record as read from input, before any checking.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RawFace {
    pub target: i64,
    pub images: Vec<i64>,
}

/// A closed 3-dimensional gluing.
///
/// Face `k` of a tetrahedron is the face opposite vertex `k`. Every face is
/// paired with exactly one other face; the record at `(i, k)` is
/// `(j, p)` with `p(k)` the glued face of `j`, and the record at
/// `(j, p(k))` is `(i, p⁻¹)`.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct Triangulation {
    adj: Vec<[(usize, Perm4); 4]>,
}

impl std::fmt::Debug for Triangulation {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "Triangulation(")?;
        for (i, faces) in self.adj.iter().enumerate() {
            if i > 0 {
                write!(f, "; ")?;
            }
            for (k, (j, p)) in faces.iter().enumerate() {
                if k > 0 {
                    write!(f, " ")?;
                }
                write!(f, "{j}:{p}")?;
            }
        }
        write!(f, ")")
    }
}

impl Triangulation {
    pub fn empty() -> Self {
        Triangulation { adj: Vec::new() }
    }

    /// Checks raw face records and builds the gluing.
    pub fn validate(raw: &[Vec<RawFace>]) -> Result<Triangulation, GluingError> {
        let t = raw.len();
        let mut adj = Vec::with_capacity(t);
        for (i, faces) in raw.iter().enumerate() {
            if faces.len() != 4 {
                return Err(GluingError::UnpairedFace {
                    tet: i,
                    face: faces.len().min(3),
                    reason: format!("expected 4 face records, found {}", faces.len()),
                });
            }
            let mut row = [(0usize, Perm4::IDENTITY); 4];
            for (k, rec) in faces.iter().enumerate() {
                if rec.target < 0 || rec.target as usize >= t {
                    return Err(GluingError::UnpairedFace {
                        tet: i,
                        face: k,
                        reason: format!("target tetrahedron {} out of range", rec.target),
                    });
                }
                let images: Option<Vec<u8>> =
                    rec.images.iter().map(|&x| u8::try_from(x).ok()).collect();
                let perm = images
                    .filter(|v| v.len() == 4)
                    .and_then(|v| Perm4::new([v[0], v[1], v[2], v[3]]))
                    .ok_or_else(|| GluingError::BadPermutation {
                        tet: i,
                        face: k,
                        images: rec.images.clone(),
                    })?;
                row[k] = (rec.target as usize, perm);
            }
            adj.push(row);
        }
        Self::from_adjacency(adj)
    }

    /// Builds a gluing from typed adjacency rows, checking pairing and involution.
    pub fn from_adjacency(adj: Vec<[(usize, Perm4); 4]>) -> Result<Triangulation, GluingError> {
        let t = adj.len();
        for (i, row) in adj.iter().enumerate() {
            for (k, &(j, p)) in row.iter().enumerate() {
                if j >= t {
                    return Err(GluingError::UnpairedFace {
                        tet: i,
                        face: k,
                        reason: format!("target tetrahedron {j} out of range"),
                    });
                }
                let kk = p.apply(k);
                if j == i && kk == k {
                    return Err(GluingError::SelfGluedFace { tet: i, face: k });
                }
                let (back_tet, back_perm) = adj[j][kk];
                if back_tet != i || back_perm != p.inverse() {
                    return Err(GluingError::NonInvolutive {
                        tet: i,
                        face: k,
                        target_tet: j,
                        target_face: kk,
                    });
                }
            }
        }
        Ok(Triangulation { adj })
    }

    /// Internal constructor for builders that maintain the invariants themselves.
    pub(crate) fn from_adjacency_trusted(adj: Vec<[(usize, Perm4); 4]>) -> Triangulation {
        if cfg!(debug_assertions) {
            Self::from_adjacency(adj).expect("builder produced an invalid gluing")
        } else {
            Triangulation { adj }
        }
    }

    pub fn tet_count(&self) -> usize {
        self.adj.len()
    }

    pub fn is_empty(&self) -> bool {
        self.adj.is_empty()
    }

    /// Where face `face` of `tet` is glued: `(target tetrahedron, vertex map)`.
    #[inline]
    pub fn neighbor(&self, tet: usize, face: usize) -> (usize, Perm4) {
        self.adj[tet][face]
    }

    pub fn adjacency(&self) -> &[[(usize, Perm4); 4]] {
        &self.adj
    }

    /// All 4t face records.
    pub fn gluings(&self) -> impl Iterator<Item = FaceGluing> + '_ {
        self.adj.iter().enumerate().flat_map(|(i, row)| {
            row.iter().enumerate().map(move |(k, &(j, p))| FaceGluing {
                source: (i, k),
                target: (j, p.apply(k)),
                map: p,
            })
        })
    }

    /// One record per glued pair: the record whose source is the smaller face.
    pub fn face_pairs(&self) -> impl Iterator<Item = FaceGluing> + '_ {
        self.gluings().filter(|g| g.source < g.target)
    }

    /// Renames tetrahedron `i` to `tet_map[i]` and relabels its vertices by
    /// `vertex_maps[i]` (old label -> new label).
    pub fn relabel(&self, tet_map: &[usize], vertex_maps: &[Perm4]) -> Triangulation {
        let t = self.tet_count();
        let mut adj = vec![[(0usize, Perm4::IDENTITY); 4]; t];
        for i in 0..t {
            let si = vertex_maps[i];
            for k in 0..4 {
                let (j, p) = self.adj[i][k];
                let q = vertex_maps[j].compose(p).compose(si.inverse());
                adj[tet_map[i]][si.apply(k)] = (tet_map[j], q);
            }
        }
        Triangulation::from_adjacency_trusted(adj)
    }

    pub fn disjoint_union(&self, other: &Triangulation) -> Triangulation {
        let off = self.tet_count();
        let mut adj = self.adj.clone();
        adj.extend(other.adj.iter().map(|row| row.map(|(j, p)| (j + off, p))));
        Triangulation::from_adjacency_trusted(adj)
    }

    /// Tetrahedra grouped by connected component, each sorted, components
    /// ordered by their smallest member.
    pub fn components(&self) -> Vec<Vec<usize>> {
        let t = self.tet_count();
        let mut comp = vec![usize::MAX; t];
        let mut out = Vec::new();
        for s in 0..t {
            if comp[s] != usize::MAX {
                continue;
            }
            let id = out.len();
            let mut members = vec![s];
            comp[s] = id;
            let mut head = 0;
            while head < members.len() {
                let x = members[head];
                head += 1;
                for k in 0..4 {
                    let y = self.adj[x][k].0;
                    if comp[y] == usize::MAX {
                        comp[y] = id;
                        members.push(y);
                    }
                }
            }
            members.sort_unstable();
            out.push(members);
        }
        out
    }

    pub fn is_connected(&self) -> bool {
        self.components().len() <= 1
    }

    /// The sub-gluing spanned by one component (which must be closed under adjacency).
    pub fn restrict(&self, members: &[usize]) -> Triangulation {
        let mut index = vec![usize::MAX; self.tet_count()];
        for (n, &m) in members.iter().enumerate() {
            index[m] = n;
        }
        let adj = members
            .iter()
            .map(|&m| self.adj[m].map(|(j, p)| (index[j], p)))
            .collect();
        Triangulation::from_adjacency_trusted(adj)
    }

    /// Canonical `glu3/1` text: compact JSON with sorted keys, no trailing newline.
    pub fn to_json(&self) -> String {
        let gluings: Vec<Value> = self
            .adj
            .iter()
            .map(|row| Value::Array(row.iter().map(|(j, p)| json!([j, p.images()])).collect()))
            .collect();
        let doc = json!({
            "format": GLUING_FORMAT,
            "tetrahedra": self.tet_count(),
            "gluings": gluings,
        });
        serde_json::to_string(&doc).expect("gluing serialization")
    }

    pub fn from_json(text: &str) -> Result<Triangulation, GluingError> {
        let doc: Value =
            serde_json::from_str(text).map_err(|e| GluingError::Format(e.to_string()))?;
        Self::from_json_value(&doc)
    }

    pub fn from_json_value(doc: &Value) -> Result<Triangulation, GluingError> {
        let bad = |m: &str| GluingError::Format(m.to_string());
        match doc.get("format").and_then(Value::as_str) {
            Some(GLUING_FORMAT) => {}
            Some(other) => return Err(bad(&format!("unsupported format {other:?}"))),
            None => return Err(bad("missing \"format\" key")),
        }
        let t = doc
            .get("tetrahedra")
            .and_then(Value::as_u64)
            .ok_or_else(|| bad("missing or non-integer \"tetrahedra\""))? as usize;
        let rows = doc
            .get("gluings")
            .and_then(Value::as_array)
            .ok_or_else(|| bad("missing \"gluings\" array"))?;
        if rows.len() != t {
            return Err(bad(&format!(
                "\"tetrahedra\" is {t} but {} gluing rows are present",
                rows.len()
            )));
        }
        let mut raw = Vec::with_capacity(t);
        for row in rows {
            let entries = row
                .as_array()
                .ok_or_else(|| bad("gluing row is not an array"))?;
            let mut faces = Vec::with_capacity(4);
            for e in entries {
                let pair = e.as_array().filter(|a| a.len() == 2);
                let pair =
                    pair.ok_or_else(|| bad("face record must be [target, [p0,p1,p2,p3]]"))?;
                let target = pair[0]
                    .as_i64()
                    .ok_or_else(|| bad("face target is not an integer"))?;
                let images = pair[1]
                    .as_array()
                    .ok_or_else(|| bad("face permutation is not an array"))?
                    .iter()
                    .map(|x| {
                        x.as_i64()
                            .ok_or_else(|| bad("permutation entry is not an integer"))
                    })
                    .collect::<Result<Vec<_>, _>>()?;
                faces.push(RawFace { target, images });
            }
            raw.push(faces);
        }
        Self::validate(&raw)
    }
}
