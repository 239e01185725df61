use crate::tri::Triangulation;

/// Whether `signs` orients every tetrahedron so that each gluing reverses
/// the induced boundary orientation: `s_j = -sign(p) * s_i` for every record.
pub fn is_consistent(tri: &Triangulation, signs: &[i8]) -> bool {
    tri.gluings().all(|g| {
        let (i, j) = (g.source.0, g.target.0);
        signs[j] == -(g.map.sign() as i8) * signs[i]
    })
}

/// An orientation (±1 per tetrahedron, +1 on the lowest tetrahedron of each
/// component), or `None` if the gluing is not orientable.
pub fn orientation(tri: &Triangulation) -> Option<Vec<i8>> {
    let t = tri.tet_count();
    let mut signs = vec![0i8; t];
    let mut queue = std::collections::VecDeque::new();
    for root in 0..t {
        if signs[root] != 0 {
            continue;
        }
        signs[root] = 1;
        queue.push_back(root);
        while let Some(i) = queue.pop_front() {
            for k in 0..4 {
                let (j, p) = tri.neighbor(i, k);
                let want = -(p.sign() as i8) * signs[i];
                if signs[j] == 0 {
                    signs[j] = want;
                    queue.push_back(j);
                } else if signs[j] != want {
                    return None;
                }
            }
        }
    }
    Some(signs)
}

pub fn is_orientable(tri: &Triangulation) -> bool {
    orientation(tri).is_some()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::census;
    use crate::perm::Perm4;

    #[test]
    fn double_tetrahedron_orientation() {
        let d = census::double_tetrahedron();
        assert_eq!(orientation(&d), Some(vec![1, -1]));
        assert!(is_consistent(&d, &[-1, 1]));
        assert!(!is_consistent(&d, &[1, 1]));
    }

    #[test]
    fn even_self_pairing_is_non_orientable() {
        // face 0 <-> face 1 by the even map (0 1)(2 3) forces s = -s
        let even = Perm4::new([1, 0, 3, 2]).unwrap();
        let odd = Perm4::transposition(2, 3);
        let t = Triangulation::from_adjacency(vec![[(0, even), (0, even), (0, odd), (0, odd)]])
            .unwrap();
        assert!(!is_orientable(&t));
        let odd01 = Perm4::transposition(0, 1);
        let t = Triangulation::from_adjacency(vec![[(0, odd01), (0, odd01), (0, odd), (0, odd)]])
            .unwrap();
        assert_eq!(orientation(&t), Some(vec![1]));
    }
}
