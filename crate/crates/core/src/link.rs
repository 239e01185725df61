use serde::Serialize;

use crate::skeleton::{ParityUnionFind, Skeleton};
use crate::tri::Triangulation;

/// The link of one vertex class, as a triangulated surface.
///
/// Link triangles are the corners `(tet, vertex)` in the class; link edges
/// are the corners' faces; link vertices are the ends of edges at the class.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct VertexLink {
    pub vertex_class: usize,
    pub corners: Vec<(usize, usize)>,
    pub link_vertices: usize,
    pub link_edges: usize,
    pub link_triangles: usize,
    pub euler_characteristic: i64,
    pub closed: bool,
    pub connected: bool,
    pub sphere: bool,
}

fn end_index(tet: usize, v: usize, w: usize) -> usize {
    // 12 ordered pairs per tetrahedron
    tet * 12 + v * 3 + if w < v { w } else { w - 1 }
}

/// Links of every vertex class, in class order.
pub fn vertex_links(tri: &Triangulation) -> Vec<VertexLink> {
    let t = tri.tet_count();
    let sk = Skeleton::new(tri);

    let mut ends = ParityUnionFind::new(12 * t);
    let mut corners = ParityUnionFind::new(4 * t);
    // incidence count of each (tet, corner, face) link edge, from both sides
    let mut edge_sides = vec![0u8; 16 * t];
    for g in tri.gluings() {
        let (i, k) = g.source;
        let (j, _) = g.target;
        let p = g.map;
        for v in (0..4).filter(|&v| v != k) {
            corners.union(4 * i + v, 4 * j + p.apply(v), false);
            edge_sides[16 * i + 4 * v + k] += 1;
            for w in (0..4).filter(|&w| w != k && w != v) {
                ends.union(
                    end_index(i, v, w),
                    end_index(j, p.apply(v), p.apply(w)),
                    false,
                );
            }
        }
    }

    let mut out = Vec::with_capacity(sk.vertex_count);
    for class in 0..sk.vertex_count {
        let members: Vec<(usize, usize)> = (0..t)
            .flat_map(|i| (0..4).map(move |v| (i, v)))
            .filter(|&(i, v)| sk.vertex_of[i][v] == class)
            .collect();
        let mut end_roots: Vec<usize> = members
            .iter()
            .flat_map(|&(i, v)| (0..4).filter(move |&w| w != v).map(move |w| (i, v, w)))
            .map(|(i, v, w)| ends.find(end_index(i, v, w)).0)
            .collect();
        end_roots.sort_unstable();
        end_roots.dedup();
        let mut corner_roots: Vec<usize> = members
            .iter()
            .map(|&(i, v)| corners.find(4 * i + v).0)
            .collect();
        corner_roots.sort_unstable();
        corner_roots.dedup();
        // every link edge is seen once from each adjacent corner
        let closed = members.iter().all(|&(i, v)| {
            (0..4)
                .filter(|&k| k != v)
                .all(|k| edge_sides[16 * i + 4 * v + k] == 1)
        });
        let link_triangles = members.len();
        let link_edges = 3 * link_triangles / 2;
        let link_vertices = end_roots.len();
        let euler = link_vertices as i64 - link_edges as i64 + link_triangles as i64;
        let connected = corner_roots.len() == 1;
        out.push(VertexLink {
            vertex_class: class,
            corners: members,
            link_vertices,
            link_edges,
            link_triangles,
            euler_characteristic: euler,
            closed,
            connected,
            sphere: closed && connected && euler == 2,
        });
    }
    out
}

/// Every vertex link is a 2-sphere and no edge is glued to itself in reverse.
///
/// The second condition is what the sphere test on the gluing itself misses:
/// a reversed edge has a projective-plane link at its midpoint in the
/// barycentric subdivision.
pub fn is_closed_3_manifold(tri: &Triangulation) -> bool {
    Skeleton::new(tri).reversed_edges.is_empty() && vertex_links(tri).iter().all(|l| l.sphere)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::census;

    #[test]
    fn double_tetrahedron_links_are_spheres() {
        let links = vertex_links(&census::double_tetrahedron());
        assert_eq!(links.len(), 4);
        for l in &links {
            assert_eq!((l.link_vertices, l.link_edges, l.link_triangles), (3, 3, 2));
            assert!(l.sphere);
        }
        assert!(is_closed_3_manifold(&census::double_tetrahedron()));
        assert!(is_closed_3_manifold(&Triangulation::empty()));
    }

    #[test]
    fn union_is_componentwise_manifold() {
        let d = census::double_tetrahedron();
        let u = d.disjoint_union(&census::lens_space(3, 1));
        assert!(is_closed_3_manifold(&u));
        assert!(!u.is_connected());
    }
}
