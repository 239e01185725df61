use std::fmt;

use serde::{Deserialize, Serialize};

/// A permutation of the vertex labels {0,1,2,3} of a tetrahedron.
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(try_from = "[u8; 4]", into = "[u8; 4]")]
pub struct Perm4([u8; 4]);

/// All 24 permutations in lexicographic order of their image arrays.
pub const ALL_PERMS: [Perm4; 24] = {
    let mut out = [Perm4([0, 1, 2, 3]); 24];
    let mut n = 0;
    let mut a = 0;
    while a < 4 {
        let mut b = 0;
        while b < 4 {
            let mut c = 0;
            while c < 4 {
                let d = 6 - a - b - c;
                if a != b && a != c && b != c && d < 4 && d != a && d != b && d != c {
                    out[n] = Perm4([a as u8, b as u8, c as u8, d as u8]);
                    n += 1;
                }
                c += 1;
            }
            b += 1;
        }
        a += 1;
    }
    out
};

impl Perm4 {
    pub const IDENTITY: Perm4 = Perm4([0, 1, 2, 3]);

    pub fn new(images: [u8; 4]) -> Option<Perm4> {
        let mut seen = [false; 4];
        for &x in &images {
            if x > 3 || seen[x as usize] {
                return None;
            }
            seen[x as usize] = true;
        }
        Some(Perm4(images))
    }

    /// Swaps `a` and `b`, fixing the other two labels.
    pub fn transposition(a: usize, b: usize) -> Perm4 {
        let mut p = [0, 1, 2, 3];
        p.swap(a, b);
        Perm4(p)
    }

    #[inline]
    pub fn apply(self, x: usize) -> usize {
        self.0[x] as usize
    }

    pub fn images(self) -> [u8; 4] {
        self.0
    }

    pub fn inverse(self) -> Perm4 {
        let mut out = [0u8; 4];
        for (i, &x) in self.0.iter().enumerate() {
            out[x as usize] = i as u8;
        }
        Perm4(out)
    }

    /// `self ∘ other`: first `other`, then `self`.
    pub fn compose(self, other: Perm4) -> Perm4 {
        Perm4([
            self.0[other.0[0] as usize],
            self.0[other.0[1] as usize],
            self.0[other.0[2] as usize],
            self.0[other.0[3] as usize],
        ])
    }

    /// +1 for even permutations, -1 for odd.
    pub fn sign(self) -> i32 {
        let mut inversions = 0;
        for i in 0..4 {
            for j in i + 1..4 {
                if self.0[i] > self.0[j] {
                    inversions += 1;
                }
            }
        }
        if inversions % 2 == 0 {
            1
        } else {
            -1
        }
    }

    pub fn is_even(self) -> bool {
        self.sign() == 1
    }

    /// Position of this permutation in [`ALL_PERMS`].
    pub fn index(self) -> usize {
        ALL_PERMS.iter().position(|&p| p == self).unwrap()
    }

    /// The 12 even permutations, in lexicographic order.
    pub fn even() -> impl Iterator<Item = Perm4> {
        ALL_PERMS.into_iter().filter(|p| p.is_even())
    }

    /// Writes the images as a 4-character string such as `"1023"`.
    pub fn code(self) -> String {
        self.0.iter().map(|d| char::from(b'0' + d)).collect()
    }
}

impl Default for Perm4 {
    fn default() -> Self {
        Perm4::IDENTITY
    }
}

impl fmt::Debug for Perm4 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Perm4({})", self.code())
    }
}

impl fmt::Display for Perm4 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.code())
    }
}

impl TryFrom<[u8; 4]> for Perm4 {
    type Error = String;

    fn try_from(images: [u8; 4]) -> Result<Self, Self::Error> {
        Perm4::new(images).ok_or_else(|| format!("{images:?} is not a permutation of 0..4"))
    }
}

impl From<Perm4> for [u8; 4] {
    fn from(p: Perm4) -> [u8; 4] {
        p.0
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn table_is_complete_and_sorted() {
        let mut sorted = ALL_PERMS;
        sorted.sort();
        assert_eq!(sorted, ALL_PERMS);
        assert_eq!(ALL_PERMS[0], Perm4::IDENTITY);
        assert_eq!(Perm4::even().count(), 12);
    }

    #[test]
    fn inverse_and_compose() {
        for p in ALL_PERMS {
            assert_eq!(p.compose(p.inverse()), Perm4::IDENTITY);
            assert_eq!(p.inverse().compose(p), Perm4::IDENTITY);
            for q in ALL_PERMS {
                assert_eq!(p.compose(q).sign(), p.sign() * q.sign());
            }
        }
    }

    #[test]
    fn rejects_non_bijections() {
        assert!(Perm4::new([0, 0, 1, 2]).is_none());
        assert!(Perm4::new([0, 1, 2, 4]).is_none());
        assert_eq!(Perm4::transposition(1, 3).images(), [0, 3, 2, 1]);
        assert_eq!(Perm4::transposition(1, 3).sign(), -1);
    }
}
