//! The polynomial system whose real solutions are hyperbolic structures on
//! a triangulation: vertex coordinates per model tetrahedron, derived ball
//! and hyperboloid coordinates, edge variables, dihedral angles, and face
//! pairing matrices.

use glu_core::dual::DualGraph;
use glu_core::orient::orientation;
use glu_core::skeleton::EDGES;
use glu_core::{Skeleton, Triangulation};
use serde::Serialize;
use serde_json::{json, Value};

use crate::error::GeomError;
use crate::isometry::Isometry;
use crate::model::{sigmas, uhs_to_ball, uhs_to_hyperboloid, PointUHS};
use crate::poly::{CPoly, Coeff, Poly};
use crate::tetra::{ball_frame, dihedral_angles};

pub const POLY_FORMAT: &str = "glu-poly/1";

/// Angle products with more factors than this are split through partial
/// product variables instead of being expanded.
pub const EXPAND_LIMIT: usize = 12;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Tag {
    Edge,
    Angle,
    Box,
    Orientation,
    Nondegeneracy,
    ModelTransfer,
    FacePairing,
    Relator,
    Matching,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Rel {
    /// `p = 0`
    Eq,
    /// `p > 0`
    Gt,
    /// `p >= 0`
    Ge,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum VarKind {
    VertexCoord { tet: usize, vertex: usize, axis: usize },
    /// Ball coordinate of `vertex` after moving `base` to the origin.
    Ball { tet: usize, base: usize, vertex: usize, axis: usize },
    Cos { tet: usize, edge: usize },
    Sin { tet: usize, edge: usize },
    /// Norm of the normal of face `side` (0 or 1) at the edge.
    SquareRoot { tet: usize, edge: usize, side: usize },
    /// `Σ1` or `Σ2` of the edge variable.
    Sigma { tet: usize, edge: usize, which: usize },
    EdgeVariable { tet: usize, edge: usize },
    Hyperboloid { tet: usize, vertex: usize, axis: usize },
    /// Entry 0..4 of the matrix of a dual edge, real or imaginary part.
    MatrixEntry { gluing: usize, entry: usize, imaginary: bool },
    /// Product of the first `step + 1` angle factors around an edge class.
    PartialProduct { class: usize, step: usize, imaginary: bool },
}

impl VarKind {
    pub fn name(&self) -> String {
        match *self {
            VarKind::VertexCoord { tet, vertex, axis } => format!("x{tet}.{vertex}.{axis}"),
            VarKind::Ball { tet, base, vertex, axis } => format!("w{tet}.{base}.{vertex}.{axis}"),
            VarKind::Cos { tet, edge } => format!("cos{tet}.{edge}"),
            VarKind::Sin { tet, edge } => format!("sin{tet}.{edge}"),
            VarKind::SquareRoot { tet, edge, side } => format!("sqrt{tet}.{edge}.{side}"),
            VarKind::Sigma { tet, edge, which } => format!("sigma{}.{tet}.{edge}", which + 1),
            VarKind::EdgeVariable { tet, edge } => format!("E{tet}.{edge}"),
            VarKind::Hyperboloid { tet, vertex, axis } => format!("h{tet}.{vertex}.{axis}"),
            VarKind::MatrixEntry { gluing, entry, imaginary } => {
                format!("{}{gluing}.{}", ["a", "b", "c", "d"][entry], if imaginary { "im" } else { "re" })
            }
            VarKind::PartialProduct { class, step, imaginary } => {
                format!("prod{class}.{step}.{}", if imaginary { "im" } else { "re" })
            }
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct Constraint {
    pub tag: Tag,
    pub rel: Rel,
    pub poly: Poly,
}

/// Per (tetrahedron, edge) box indices `j`: the angle's cosine lies in
/// `[j/2T, (j+1)/2T]`, and likewise the sine.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BoxChoice {
    pub cos: Vec<[i64; 6]>,
    pub sin: Vec<[i64; 6]>,
}

impl BoxChoice {
    pub fn uniform(t: usize, cos: i64, sin: i64) -> BoxChoice {
        BoxChoice {
            cos: vec![[cos; 6]; t],
            sin: vec![[sin; 6]; t],
        }
    }

    /// Number of boxes available to each angle: `j` ranges over
    /// `[-2T, 2T)` for both coordinates.
    pub fn boxes_per_angle(t: usize) -> usize {
        16 * t * t
    }

    /// The boxes containing the given angles.
    pub fn containing(angles: &[[(f64, f64); 6]]) -> BoxChoice {
        let t = angles.len() as i64;
        let index = |x: f64| ((x * 2.0 * t as f64).floor() as i64).clamp(-2 * t, 2 * t - 1);
        BoxChoice {
            cos: angles.iter().map(|a| a.map(|(c, _)| index(c))).collect(),
            sin: angles.iter().map(|a| a.map(|(_, s)| index(s))).collect(),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum AngleMode {
    BoxGuess(BoxChoice),
    /// Angle sums are left to the transcendental residual `Σθ - 2π`.
    Direct,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct SystemStats {
    /// κ
    pub constraints: usize,
    /// N
    pub variables: usize,
    /// d
    pub degree: u32,
    /// M, in bits
    pub coefficient_bits: f64,
}

#[derive(Debug, Clone)]
pub struct PolySystem {
    pub variables: Vec<VarKind>,
    pub constraints: Vec<Constraint>,
    /// (tet, edge) occurrences of each edge class, in class order. In
    /// direct mode these carry the angle equations.
    pub edge_classes: Vec<Vec<(usize, usize)>>,
    pub mode: AngleMode,
    pub tri: Triangulation,
    pub orientation: Vec<i8>,
    pub dual: DualGraph,
}

/// Worst constraint violations at a point.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct Residuals {
    /// Largest `|p|` over equalities.
    pub equality: f64,
    /// Smallest `p` over strict inequalities (`+inf` if none).
    pub strict_margin: f64,
    /// Largest `-p` over weak inequalities, or 0.
    pub weak_violation: f64,
}

#[derive(Default)]
struct Builder {
    variables: Vec<VarKind>,
    constraints: Vec<Constraint>,
}

impl Builder {
    fn var(&mut self, kind: VarKind) -> usize {
        self.variables.push(kind);
        self.variables.len() - 1
    }

    fn push(&mut self, tag: Tag, rel: Rel, poly: Poly) {
        self.constraints.push(Constraint { tag, rel, poly });
    }
}

fn int(n: i64) -> Coeff {
    Coeff::from_integer(n)
}

fn v(x: usize) -> Poly {
    Poly::var(x)
}

fn cross(a: &[Poly; 3], b: &[Poly; 3]) -> [Poly; 3] {
    [
        a[1].mul(&b[2]).sub(&a[2].mul(&b[1])),
        a[2].mul(&b[0]).sub(&a[0].mul(&b[2])),
        a[0].mul(&b[1]).sub(&a[1].mul(&b[0])),
    ]
}

fn dot(a: &[Poly; 3], b: &[Poly; 3]) -> Poly {
    a[0].mul(&b[0]).add(&a[1].mul(&b[1])).add(&a[2].mul(&b[2]))
}

fn others(a: usize, b: usize) -> (usize, usize) {
    let mut rest = (0..4).filter(|&x| x != a && x != b);
    (rest.next().unwrap(), rest.next().unwrap())
}

pub fn edge_class_occurrences(skeleton: &Skeleton) -> Vec<Vec<(usize, usize)>> {
    let mut classes = vec![Vec::new(); skeleton.edge_count];
    for (i, row) in skeleton.edge_of.iter().enumerate() {
        for (n, &c) in row.iter().enumerate() {
            classes[c].push((i, n));
        }
    }
    classes
}

pub fn build_poly_system(tri: &Triangulation, mode: AngleMode) -> Result<PolySystem, GeomError> {
    let t = tri.tet_count();
    let signs = if t == 0 {
        Vec::new()
    } else {
        orientation(tri).ok_or(GeomError::NotOrientable)?
    };
    let skeleton = Skeleton::new(tri);
    let dual = DualGraph::new(tri);
    let classes = edge_class_occurrences(&skeleton);
    let mut b = Builder::default();

    let mut x = vec![[[0usize; 3]; 4]; t];
    for (tet, row) in x.iter_mut().enumerate() {
        for (vertex, coords) in row.iter_mut().enumerate() {
            for (axis, slot) in coords.iter_mut().enumerate() {
                *slot = b.var(VarKind::VertexCoord { tet, vertex, axis });
            }
        }
    }
    for row in &x {
        for coords in row {
            b.push(Tag::Nondegeneracy, Rel::Gt, v(coords[2]));
        }
    }

    // ball frames: w + e3 = 2 v3 (x1 - v1, x2 - v2, x3 + v3) / S
    let mut w = vec![[[[usize::MAX; 3]; 4]; 4]; t];
    for tet in 0..t {
        for base in 0..4 {
            for vertex in (0..4).filter(|&a| a != base) {
                let (p, q) = (&x[tet][vertex], &x[tet][base]);
                let d = [v(p[0]).sub(&v(q[0])), v(p[1]).sub(&v(q[1])), v(p[2]).add(&v(q[2]))];
                let s = d[0].square().add(&d[1].square()).add(&d[2].square());
                let two_v3 = v(q[2]).scale(int(2));
                for axis in 0..3 {
                    let var = b.var(VarKind::Ball { tet, base, vertex, axis });
                    w[tet][base][vertex][axis] = var;
                    let lhs = if axis == 2 { v(var).add(&Poly::constant(1)) } else { v(var) };
                    b.push(Tag::ModelTransfer, Rel::Eq, lhs.mul(&s).sub(&two_v3.mul(&d[axis])));
                }
            }
        }
    }
    let wp = |tet: usize, base: usize, vertex: usize| -> [Poly; 3] {
        [0, 1, 2].map(|k| v(w[tet][base][vertex][k]))
    };

    let mut cos = vec![[0usize; 6]; t];
    let mut sin = vec![[0usize; 6]; t];
    let mut e = vec![[0usize; 6]; t];
    for tet in 0..t {
        for (edge, &(a, bb)) in EDGES.iter().enumerate() {
            let (c, d) = others(a, bb);
            let n1 = cross(&wp(tet, a, bb), &wp(tet, a, c));
            let n2 = cross(&wp(tet, a, bb), &wp(tet, a, d));
            cos[tet][edge] = b.var(VarKind::Cos { tet, edge });
            sin[tet][edge] = b.var(VarKind::Sin { tet, edge });
            let r1 = b.var(VarKind::SquareRoot { tet, edge, side: 0 });
            let r2 = b.var(VarKind::SquareRoot { tet, edge, side: 1 });
            b.push(Tag::Angle, Rel::Eq, v(r1).square().sub(&dot(&n1, &n1)));
            b.push(Tag::Angle, Rel::Eq, v(r2).square().sub(&dot(&n2, &n2)));
            b.push(Tag::Nondegeneracy, Rel::Gt, v(r1));
            b.push(Tag::Nondegeneracy, Rel::Gt, v(r2));
            let (cv, sv) = (v(cos[tet][edge]), v(sin[tet][edge]));
            b.push(Tag::Angle, Rel::Eq, cv.mul(&v(r1)).mul(&v(r2)).sub(&dot(&n1, &n2)));
            b.push(Tag::Angle, Rel::Eq, cv.square().add(&sv.square()).sub(&Poly::constant(1)));
            b.push(Tag::Angle, Rel::Ge, sv);

            let (p, q) = (&x[tet][a], &x[tet][bb]);
            let d0 = v(p[0]).sub(&v(q[0])).square();
            let d1 = v(p[1]).sub(&v(q[1])).square();
            let s1 = b.var(VarKind::Sigma { tet, edge, which: 0 });
            let s2 = b.var(VarKind::Sigma { tet, edge, which: 1 });
            e[tet][edge] = b.var(VarKind::EdgeVariable { tet, edge });
            let below = d0.add(&d1).add(&v(p[2]).sub(&v(q[2])).square());
            let above = d0.add(&d1).add(&v(p[2]).add(&v(q[2])).square());
            b.push(Tag::Edge, Rel::Eq, v(s1).square().sub(&below));
            b.push(Tag::Edge, Rel::Ge, v(s1));
            b.push(Tag::Edge, Rel::Eq, v(s2).square().sub(&above));
            b.push(Tag::Edge, Rel::Ge, v(s2));
            let lhs = v(e[tet][edge]).mul(&v(p[2])).mul(&v(q[2])).scale(int(4));
            b.push(Tag::Edge, Rel::Eq, lhs.sub(&v(s1).add(&v(s2)).square()));
            b.push(Tag::Edge, Rel::Gt, v(e[tet][edge]).sub(&Poly::constant(1)));
        }
    }

    // the vertex opposite each face through the base lies on the positive
    // side of the cross-product normal
    for (tet, &o) in signs.iter().enumerate() {
        for base in 0..4 {
            let rest: Vec<usize> = (0..4).filter(|&k| k != base).collect();
            let det = dot(&wp(tet, base, rest[0]), &cross(&wp(tet, base, rest[1]), &wp(tet, base, rest[2])));
            let sign = o as i64 * if base % 2 == 0 { 1 } else { -1 };
            b.push(Tag::Orientation, Rel::Gt, det.scale(int(sign)));
        }
    }

    let mut h = vec![[[0usize; 4]; 4]; t];
    for tet in 0..t {
        for vertex in 0..4 {
            let p = x[tet][vertex];
            let n = v(p[0]).square().add(&v(p[1]).square()).add(&v(p[2]).square());
            for (axis, slot) in h[tet][vertex].iter_mut().enumerate() {
                *slot = b.var(VarKind::Hyperboloid { tet, vertex, axis });
            }
            let hv = |k: usize| v(h[tet][vertex][k]).mul(&v(p[2]));
            b.push(Tag::ModelTransfer, Rel::Eq, hv(0).sub(&v(p[0])));
            b.push(Tag::ModelTransfer, Rel::Eq, hv(1).sub(&v(p[1])));
            b.push(Tag::ModelTransfer, Rel::Eq, hv(2).scale(int(2)).sub(&Poly::constant(1).sub(&n)));
            b.push(Tag::ModelTransfer, Rel::Eq, hv(3).scale(int(2)).sub(&Poly::constant(1).add(&n)));
        }
    }

    for occ in &classes {
        for pair in occ.windows(2) {
            let ((i, m), (j, n)) = (pair[0], pair[1]);
            b.push(Tag::Edge, Rel::Eq, v(e[i][m]).sub(&v(e[j][n])));
        }
    }

    if let AngleMode::BoxGuess(choice) = &mode {
        for (class, occ) in classes.iter().enumerate() {
            let factor = |(i, n): (usize, usize)| CPoly::new(v(cos[i][n]), v(sin[i][n]));
            let mut prod = factor(occ[0]);
            let split = occ.len() > EXPAND_LIMIT;
            for (step, &o) in occ.iter().enumerate().skip(1) {
                prod = prod.mul(&factor(o));
                if split && step + 1 < occ.len() {
                    let re = b.var(VarKind::PartialProduct { class, step, imaginary: false });
                    let im = b.var(VarKind::PartialProduct { class, step, imaginary: true });
                    b.push(Tag::Angle, Rel::Eq, v(re).sub(&prod.re));
                    b.push(Tag::Angle, Rel::Eq, v(im).sub(&prod.im));
                    prod = CPoly::new(v(re), v(im));
                }
            }
            b.push(Tag::Angle, Rel::Eq, prod.re.sub(&Poly::constant(1)));
            b.push(Tag::Angle, Rel::Eq, prod.im);
        }
        let den = 2 * t as i64;
        for tet in 0..t {
            for edge in 0..6 {
                for (var, j) in [(cos[tet][edge], choice.cos[tet][edge]), (sin[tet][edge], choice.sin[tet][edge])] {
                    b.push(Tag::Box, Rel::Ge, v(var).sub(&Poly::constant(Coeff::new(j, den))));
                    b.push(Tag::Box, Rel::Ge, Poly::constant(Coeff::new(j + 1, den)).sub(&v(var)));
                }
            }
        }
    }

    // Y = A X A* for each vertex of the source face
    for (gluing, g) in dual.edges.iter().enumerate() {
        let mut entry = |k: usize| {
            let re = b.var(VarKind::MatrixEntry { gluing, entry: k, imaginary: false });
            let im = b.var(VarKind::MatrixEntry { gluing, entry: k, imaginary: true });
            CPoly::new(v(re), v(im))
        };
        let a = [[entry(0), entry(1)], [entry(2), entry(3)]];
        let det = a[0][0].mul(&a[1][1]).sub(&a[0][1].mul(&a[1][0]));
        b.push(Tag::FacePairing, Rel::Eq, det.re.sub(&Poly::constant(1)));
        b.push(Tag::FacePairing, Rel::Eq, det.im);
        let ((i, k), (j, _)) = (g.source, g.target);
        for u in (0..4).filter(|&u| u != k) {
            let src = h[i][u].map(v);
            let dst = h[j][g.map.apply(u)].map(v);
            let m = [
                [CPoly::real(src[3].add(&src[2])), CPoly::new(src[0].clone(), src[1].scale(int(-1)))],
                [CPoly::new(src[0].clone(), src[1].clone()), CPoly::real(src[3].sub(&src[2]))],
            ];
            let am: Vec<Vec<CPoly>> = (0..2)
                .map(|r| (0..2).map(|c| a[r][0].mul(&m[0][c]).add(&a[r][1].mul(&m[1][c]))).collect())
                .collect();
            let r = |p: usize, q: usize| am[p][0].mul(&a[q][0].conj()).add(&am[p][1].mul(&a[q][1].conj()));
            let (r00, r10, r11) = (r(0, 0).re, r(1, 0), r(1, 1).re);
            let half = Coeff::new(1, 2);
            b.push(Tag::FacePairing, Rel::Eq, r10.re.sub(&dst[0]));
            b.push(Tag::FacePairing, Rel::Eq, r10.im.sub(&dst[1]));
            b.push(Tag::FacePairing, Rel::Eq, r00.sub(&r11).scale(half).sub(&dst[2]));
            b.push(Tag::FacePairing, Rel::Eq, r00.add(&r11).scale(half).sub(&dst[3]));
        }
    }

    Ok(PolySystem {
        variables: b.variables,
        constraints: b.constraints,
        edge_classes: classes,
        mode,
        tri: tri.clone(),
        orientation: signs,
        dual,
    })
}

impl PolySystem {
    pub fn tet_count(&self) -> usize {
        self.tri.tet_count()
    }

    pub fn stats(&self) -> SystemStats {
        SystemStats {
            constraints: self.constraints.len(),
            variables: self.variables.len(),
            degree: self.constraints.iter().map(|c| c.poly.degree()).max().unwrap_or(0),
            coefficient_bits: self
                .constraints
                .iter()
                .map(|c| c.poly.coefficient_bits())
                .fold(0.0, f64::max),
        }
    }

    /// Constraint indices whose variables are all in range.
    pub fn is_well_formed(&self) -> bool {
        self.constraints
            .iter()
            .all(|c| c.poly.variables().all(|x| x < self.variables.len()))
    }

    pub fn to_json_value(&self) -> Value {
        json!({
            "format": POLY_FORMAT,
            "vars": self.variables.iter().map(VarKind::name).collect::<Vec<_>>(),
            "cons": self.constraints.iter().map(|c| json!({
                "tag": c.tag,
                "rel": c.rel,
                "monomials": c.poly.to_json_value(),
            })).collect::<Vec<_>>(),
            "stats": self.stats(),
        })
    }

    pub fn residuals(&self, x: &[f64]) -> Residuals {
        let mut r = Residuals {
            equality: 0.0,
            strict_margin: f64::INFINITY,
            weak_violation: 0.0,
        };
        for c in &self.constraints {
            let y = c.poly.eval(x);
            match c.rel {
                Rel::Eq => r.equality = r.equality.max(y.abs()),
                Rel::Gt => r.strict_margin = r.strict_margin.min(y),
                Rel::Ge => r.weak_violation = r.weak_violation.max(-y),
            }
        }
        r
    }

    /// Values of every variable determined by per-tetrahedron vertex
    /// coordinates.
    pub fn assignment(&self, vertices: &[[PointUHS; 4]]) -> Result<Vec<f64>, GeomError> {
        let t = self.tet_count();
        if vertices.len() != t {
            return Err(GeomError::SizeMismatch { expected: t, found: vertices.len() });
        }
        let angles: Vec<[(f64, f64); 6]> =
            vertices.iter().map(|v| dihedral_angles(*v)).collect::<Result<_, _>>()?;
        let frames: Vec<[[[f64; 3]; 4]; 4]> = vertices
            .iter()
            .map(|v| -> Result<_, GeomError> {
                Ok([ball_frame(*v, 0)?, ball_frame(*v, 1)?, ball_frame(*v, 2)?, ball_frame(*v, 3)?])
            })
            .collect::<Result<_, _>>()?;
        let hyp = |tet: usize, vertex: usize| uhs_to_hyperboloid(vertices[tet][vertex]).0;
        let matrices: Vec<Isometry> = self
            .dual
            .edges
            .iter()
            .map(|g| {
                let ((i, k), (j, _)) = (g.source, g.target);
                let us: Vec<usize> = (0..4).filter(|&u| u != k).collect();
                let src = [0, 1, 2].map(|n| hyp(i, us[n]));
                let dst = [0, 1, 2].map(|n| hyp(j, g.map.apply(us[n])));
                Isometry::from_triangles(src, dst).unwrap_or(Isometry::IDENTITY)
            })
            .collect();
        let mut products: Vec<Vec<(f64, f64)>> = Vec::with_capacity(self.edge_classes.len());
        for occ in &self.edge_classes {
            let mut acc = (1.0, 0.0);
            let mut row = Vec::with_capacity(occ.len());
            for &(i, n) in occ {
                let (c, s) = angles[i][n];
                acc = (acc.0 * c - acc.1 * s, acc.0 * s + acc.1 * c);
                row.push(acc);
            }
            products.push(row);
        }
        let cross3 = |a: [f64; 3], b: [f64; 3]| {
            [a[1] * b[2] - a[2] * b[1], a[2] * b[0] - a[0] * b[2], a[0] * b[1] - a[1] * b[0]]
        };
        let norm = |a: [f64; 3]| (a[0] * a[0] + a[1] * a[1] + a[2] * a[2]).sqrt();
        let out = self
            .variables
            .iter()
            .map(|kind| match *kind {
                VarKind::VertexCoord { tet, vertex, axis } => vertices[tet][vertex].to_array()[axis],
                VarKind::Ball { tet, base, vertex, axis } => frames[tet][base][vertex][axis],
                VarKind::Cos { tet, edge } => angles[tet][edge].0,
                VarKind::Sin { tet, edge } => angles[tet][edge].1,
                VarKind::SquareRoot { tet, edge, side } => {
                    let (a, b) = EDGES[edge];
                    let (c, d) = others(a, b);
                    let f = &frames[tet][a];
                    norm(cross3(f[b], f[if side == 0 { c } else { d }]))
                }
                VarKind::Sigma { tet, edge, which } => {
                    let (a, b) = EDGES[edge];
                    let s = sigmas(vertices[tet][a], vertices[tet][b]);
                    if which == 0 { s.0 } else { s.1 }
                }
                VarKind::EdgeVariable { tet, edge } => {
                    let (a, b) = EDGES[edge];
                    let (s1, s2) = sigmas(vertices[tet][a], vertices[tet][b]);
                    (s1 + s2).powi(2) / (4.0 * vertices[tet][a].x3 * vertices[tet][b].x3)
                }
                VarKind::Hyperboloid { tet, vertex, axis } => hyp(tet, vertex)[axis],
                VarKind::MatrixEntry { gluing, entry, imaginary } => {
                    let z = matrices[gluing].entries()[entry];
                    if imaginary { z.im } else { z.re }
                }
                VarKind::PartialProduct { class, step, imaginary } => {
                    let z = products[class][step];
                    if imaginary { z.1 } else { z.0 }
                }
            })
            .collect();
        // make sure every vertex was a valid model point
        for tv in vertices {
            for p in tv {
                p.check()?;
            }
            uhs_to_ball(tv[1], tv[0])?;
        }
        Ok(out)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use glu_core::census;

    #[test]
    fn empty_triangulation_gives_empty_system() {
        let s = build_poly_system(&Triangulation::empty(), AngleMode::Direct).unwrap();
        let st = s.stats();
        assert_eq!((st.constraints, st.variables, st.degree), (0, 0, 0));
        assert_eq!(st.coefficient_bits, 0.0);
    }

    #[test]
    fn boxes_per_angle() {
        assert_eq!(BoxChoice::boxes_per_angle(1), 16);
        assert_eq!(BoxChoice::boxes_per_angle(3), 144);
    }

    #[test]
    fn system_is_well_formed_with_expected_tags() {
        let tri = census::lens_space(3, 1);
        let choice = BoxChoice::uniform(3, 5, 0);
        let s = build_poly_system(&tri, AngleMode::BoxGuess(choice)).unwrap();
        assert!(s.is_well_formed());
        let count = |tag| s.constraints.iter().filter(|c| c.tag == tag).count();
        assert_eq!(count(Tag::Box), 3 * 6 * 4);
        assert_eq!(count(Tag::Orientation), 3 * 4);
        assert_eq!(count(Tag::FacePairing), 6 * 14);
        let direct = build_poly_system(&tri, AngleMode::Direct).unwrap();
        assert_eq!(direct.variables.len(), s.variables.len());
        assert!(direct.constraints.iter().all(|c| c.tag != Tag::Box));
        // (2T - 1)/2T is the worst box coefficient
        let bits = (6.0 * 5.0 + 2.0f64).log2();
        assert!(s.stats().coefficient_bits >= bits);
    }
}
