use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use super::presentation::Presentation;

/// A finitely generated abelian group `Z^free_rank + Z/d_1 + ... + Z/d_k`
/// with `1 < d_1 | d_2 | ... | d_k`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Abelianization {
    pub free_rank: usize,
    pub torsion: Vec<BigInt>,
}

impl Abelianization {
    pub fn is_trivial(&self) -> bool {
        self.free_rank == 0 && self.torsion.is_empty()
    }

    /// Order of the group, `None` if infinite.
    pub fn order(&self) -> Option<BigInt> {
        (self.free_rank == 0).then(|| self.torsion.iter().product())
    }
}

impl fmt::Display for Abelianization {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut parts: Vec<String> = Vec::new();
        if self.free_rank > 0 {
            parts.push(if self.free_rank == 1 {
                "Z".to_string()
            } else {
                format!("Z^{}", self.free_rank)
            });
        }
        parts.extend(self.torsion.iter().map(|d| format!("Z/{d}")));
        if parts.is_empty() {
            f.write_str("0")
        } else {
            f.write_str(&parts.join(" + "))
        }
    }
}

/// Diagonal of the Smith normal form of an integer matrix, nonzero entries
/// only, each dividing the next.
pub fn smith_diagonal(matrix: &[Vec<BigInt>]) -> Vec<BigInt> {
    let mut m: Vec<Vec<BigInt>> = matrix.to_vec();
    let rows = m.len();
    let cols = m.first().map_or(0, Vec::len);
    let mut diag = Vec::new();
    let mut r0 = 0;
    for c0 in 0..cols {
        if r0 == rows {
            break;
        }
        loop {
            // smallest nonzero entry of the remaining block as pivot
            let mut best: Option<(usize, usize)> = None;
            for (i, row) in m.iter().enumerate().skip(r0) {
                for (j, x) in row.iter().enumerate().skip(c0) {
                    if !x.is_zero() && best.is_none_or(|(bi, bj)| x.abs() < m[bi][bj].abs()) {
                        best = Some((i, j));
                    }
                }
            }
            let Some((pi, pj)) = best else {
                return finish(diag);
            };
            m.swap(r0, pi);
            for row in m.iter_mut() {
                row.swap(c0, pj);
            }
            let p = m[r0][c0].clone();
            let mut clean = true;
            for i in r0 + 1..rows {
                let q = m[i][c0].div_floor(&p);
                if !q.is_zero() {
                    let pivot_row = m[r0].clone();
                    for (x, y) in m[i][c0..].iter_mut().zip(&pivot_row[c0..]) {
                        *x -= &q * y;
                    }
                }
                clean &= m[i][c0].is_zero();
            }
            for j in c0 + 1..cols {
                let q = m[r0][j].div_floor(&p);
                if !q.is_zero() {
                    for row in m[r0..].iter_mut() {
                        let d = &q * &row[c0];
                        row[j] -= d;
                    }
                }
                clean &= m[r0][j].is_zero();
            }
            if !clean {
                continue;
            }
            // the pivot must divide the rest of the block
            let bad = (r0 + 1..rows)
                .flat_map(|i| (c0 + 1..cols).map(move |j| (i, j)))
                .find(|&(i, j)| !(&m[i][j] % &p).is_zero());
            if let Some((i, _)) = bad {
                let src = m[i].clone();
                for (x, y) in m[r0][c0..].iter_mut().zip(&src[c0..]) {
                    *x += y;
                }
                continue;
            }
            diag.push(p.abs());
            r0 += 1;
            break;
        }
    }
    finish(diag)
}

fn finish(mut diag: Vec<BigInt>) -> Vec<BigInt> {
    // already divisible in order, but normalise defensively
    for i in 0..diag.len() {
        for j in i + 1..diag.len() {
            let g = diag[i].gcd(&diag[j]);
            let l = diag[i].lcm(&diag[j]);
            diag[i] = g;
            diag[j] = l;
        }
    }
    diag
}

/// First homology of the presented group.
pub fn abelianization(p: &Presentation) -> Abelianization {
    let n = p.generators.len();
    let matrix: Vec<Vec<BigInt>> = p
        .relators
        .iter()
        .map(|r| {
            let mut row = vec![BigInt::zero(); n];
            for &x in r {
                let g = x.unsigned_abs() as usize - 1;
                if x > 0 {
                    row[g] += 1;
                } else {
                    row[g] -= 1;
                }
            }
            row
        })
        .collect();
    let diag = smith_diagonal(&matrix);
    Abelianization {
        free_rank: n - diag.len(),
        torsion: diag.into_iter().filter(|d| !d.is_one()).collect(),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn big(rows: &[&[i64]]) -> Vec<Vec<BigInt>> {
        rows.iter().map(|r| r.iter().map(|&x| BigInt::from(x)).collect()).collect()
    }

    #[test]
    fn trivial_and_cyclic() {
        assert!(abelianization(&Presentation::new(0, vec![])).is_trivial());
        let a = abelianization(&Presentation::new(1, vec![vec![1; 5]]));
        assert_eq!(a.torsion, vec![BigInt::from(5)]);
        assert_eq!(a.free_rank, 0);
        assert_eq!(a.to_string(), "Z/5");
        assert_eq!(abelianization(&Presentation::new(2, vec![])).to_string(), "Z^2");
    }

    #[test]
    fn known_diagonals() {
        let d = smith_diagonal(&big(&[&[2, 4, 4], &[-6, 6, 12], &[10, -4, -16]]));
        assert_eq!(d, vec![BigInt::from(2), BigInt::from(6), BigInt::from(12)]);
        let d = smith_diagonal(&big(&[&[2, 0], &[0, 3]]));
        assert_eq!(d, vec![BigInt::from(1), BigInt::from(6)]);
    }

    #[test]
    fn lens_spaces_have_cyclic_homology() {
        use crate::census::lens_space;
        use crate::pi1::presentation_from_triangulation;
        for (p, q) in [(2, 1), (3, 1), (4, 1), (5, 1), (5, 2)] {
            let pres = presentation_from_triangulation(&lens_space(p, q)).unwrap();
            let a = abelianization(&pres);
            assert_eq!(a.order(), Some(BigInt::from(p)), "L({p},{q})");
            assert!(a.torsion.len() <= 1);
        }
        let d = presentation_from_triangulation(&crate::census::double_tetrahedron()).unwrap();
        assert!(abelianization(&d).is_trivial());
    }
}
