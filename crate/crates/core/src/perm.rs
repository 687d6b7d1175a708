//! Permutations of `0..n`, acting on the right: `v^(pq) = (v^p)^q`.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// A bijection on `0..n` stored as its image sequence.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(try_from = "Vec<usize>", into = "Vec<usize>")]
pub struct Permutation {
    images: Vec<usize>,
}

impl TryFrom<Vec<usize>> for Permutation {
    type Error = Error;

    fn try_from(images: Vec<usize>) -> Result<Self> {
        Permutation::new(images)
    }
}

impl From<Permutation> for Vec<usize> {
    fn from(p: Permutation) -> Self {
        p.images
    }
}

impl Permutation {
    pub fn new(images: Vec<usize>) -> Result<Permutation> {
        let n = images.len();
        let mut seen = vec![false; n];
        for &x in &images {
            if x >= n || seen[x] {
                return Err(Error::NotAPermutation(format!("{images:?}")));
            }
            seen[x] = true;
        }
        Ok(Permutation { images })
    }

    pub(crate) fn from_images_unchecked(images: Vec<usize>) -> Permutation {
        debug_assert!(Permutation::new(images.clone()).is_ok());
        Permutation { images }
    }

    pub fn identity(n: usize) -> Permutation {
        Permutation {
            images: (0..n).collect(),
        }
    }

    /// The permutation sending `i` to `i + 1 (mod n)`.
    pub fn rotation(n: usize, step: usize) -> Permutation {
        Permutation {
            images: (0..n).map(|i| (i + step) % n).collect(),
        }
    }

    #[inline]
    pub fn degree(&self) -> usize {
        self.images.len()
    }

    #[inline]
    pub fn apply(&self, v: usize) -> usize {
        self.images[v]
    }

    pub fn images(&self) -> &[usize] {
        &self.images
    }

    /// `self` then `other`: the result sends `v` to `other(self(v))`.
    pub fn compose(&self, other: &Permutation) -> Result<Permutation> {
        if self.degree() != other.degree() {
            return Err(Error::DegreeMismatch {
                expected: self.degree(),
                found: other.degree(),
            });
        }
        Ok(self.then(other))
    }

    #[inline]
    pub(crate) fn then(&self, other: &Permutation) -> Permutation {
        Permutation {
            images: self.images.iter().map(|&x| other.images[x]).collect(),
        }
    }

    pub fn inverse(&self) -> Permutation {
        let mut inv = vec![0; self.degree()];
        for (v, &x) in self.images.iter().enumerate() {
            inv[x] = v;
        }
        Permutation { images: inv }
    }

    pub fn is_identity(&self) -> bool {
        self.images.iter().enumerate().all(|(v, &x)| v == x)
    }

    pub fn first_moved(&self) -> Option<usize> {
        self.images.iter().enumerate().position(|(v, &x)| v != x)
    }

    /// Element order (lcm of cycle lengths).
    pub fn order(&self) -> u128 {
        let mut seen = vec![false; self.degree()];
        let mut l: u128 = 1;
        for s in 0..self.degree() {
            if seen[s] {
                continue;
            }
            let mut len = 0u128;
            let mut x = s;
            while !seen[x] {
                seen[x] = true;
                x = self.images[x];
                len += 1;
            }
            l = lcm(l, len);
        }
        l
    }

    /// Image of a vertex set, sorted.
    pub fn image_of_set(&self, set: &[usize]) -> Vec<usize> {
        let mut out: Vec<usize> = set.iter().map(|&v| self.images[v]).collect();
        out.sort_unstable();
        out
    }

    /// Maps the sorted set onto itself.
    pub fn stabilizes(&self, sorted_set: &[usize]) -> bool {
        sorted_set
            .iter()
            .all(|&v| sorted_set.binary_search(&self.images[v]).is_ok())
    }
}

fn gcd(a: u128, b: u128) -> u128 {
    if b == 0 {
        a
    } else {
        gcd(b, a % b)
    }
}

fn lcm(a: u128, b: u128) -> u128 {
    a / gcd(a, b) * b
}

impl fmt::Display for Permutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[")?;
        for (i, x) in self.images.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{x}")?;
        }
        write!(f, "]")
    }
}

impl fmt::Debug for Permutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl FromStr for Permutation {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let inner = s
            .trim()
            .strip_prefix('[')
            .and_then(|r| r.strip_suffix(']'))
            .ok_or_else(|| Error::Parse(format!("permutation must be bracketed: {s:?}")))?;
        let images = if inner.trim().is_empty() {
            Vec::new()
        } else {
            inner
                .split(',')
                .map(|t| {
                    t.trim()
                        .parse::<usize>()
                        .map_err(|e| Error::Parse(format!("bad image {t:?}: {e}")))
                })
                .collect::<Result<Vec<_>>>()?
        };
        Permutation::new(images)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(v: &[usize]) -> Permutation {
        Permutation::new(v.to_vec()).unwrap()
    }

    #[test]
    fn composition_convention() {
        let c = p(&[1, 2, 0]);
        assert_eq!(c.compose(&Permutation::identity(3)).unwrap(), c);
        let t = p(&[1, 0, 2]);
        assert!(t.compose(&t).unwrap().is_identity());
        let r1 = Permutation::rotation(5, 1);
        assert_eq!(r1.compose(&r1).unwrap(), Permutation::rotation(5, 2));
        // v^(pq) = (v^p)^q
        let q = p(&[2, 1, 0]);
        let pq = c.compose(&q).unwrap();
        for v in 0..3 {
            assert_eq!(pq.apply(v), q.apply(c.apply(v)));
        }
        assert!(c.compose(&Permutation::identity(4)).is_err());
    }

    #[test]
    fn text_form() {
        let x: Permutation = "[3,0,1,2]".parse().unwrap();
        assert_eq!(x.to_string(), "[3,0,1,2]");
        assert!("[0,0]".parse::<Permutation>().is_err());
        assert!("0,1".parse::<Permutation>().is_err());
        assert_eq!(x.order(), 4);
        assert_eq!(x.then(&x.inverse()), Permutation::identity(4));
    }

    #[test]
    fn serde_validates() {
        let ok: Permutation = serde_json::from_str("[1,0]").unwrap();
        assert_eq!(ok, p(&[1, 0]));
        assert!(serde_json::from_str::<Permutation>("[1,1]").is_err());
    }
}
