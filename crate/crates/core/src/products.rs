//! Direct and Cartesian products, their row-major vertex bookkeeping, and the
//! row/column mixer predicates.

use serde::ser::SerializeStruct;
use serde::{Serialize, Serializer};

use crate::error::{Error, Result};
use crate::graph::Graph;
use crate::perm::Permutation;

/// Bijection `(u, i) ↔ u·n_right + i` for a product on `V(left) × V(right)`.
///
/// The row partition has classes `P_u = {u} × V(right)`; the column partition has
/// classes `L_i = V(left) × {i}`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct ProductIndex {
    pub n_left: usize,
    pub n_right: usize,
}

impl Serialize for ProductIndex {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let mut st = s.serialize_struct("ProductIndex", 3)?;
        st.serialize_field("nLeft", &self.n_left)?;
        st.serialize_field("nRight", &self.n_right)?;
        st.serialize_field("encoding", "row-major")?;
        st.end()
    }
}

impl ProductIndex {
    pub fn new(n_left: usize, n_right: usize) -> ProductIndex {
        ProductIndex { n_left, n_right }
    }

    #[inline]
    pub fn size(&self) -> usize {
        self.n_left * self.n_right
    }

    #[inline]
    pub fn encode(&self, u: usize, i: usize) -> usize {
        debug_assert!(u < self.n_left && i < self.n_right);
        u * self.n_right + i
    }

    #[inline]
    pub fn decode(&self, x: usize) -> (usize, usize) {
        (x / self.n_right, x % self.n_right)
    }

    pub fn row(&self, u: usize) -> Vec<usize> {
        (0..self.n_right).map(|i| self.encode(u, i)).collect()
    }

    pub fn column(&self, i: usize) -> Vec<usize> {
        (0..self.n_left).map(|u| self.encode(u, i)).collect()
    }

    pub fn row_partition(&self) -> Vec<Vec<usize>> {
        (0..self.n_left).map(|u| self.row(u)).collect()
    }

    pub fn col_partition(&self) -> Vec<Vec<usize>> {
        (0..self.n_right).map(|i| self.column(i)).collect()
    }

    /// Vertices whose right coordinate lies in `right_set`, i.e. `V(left) × right_set`.
    pub fn right_slab(&self, right_set: &[usize]) -> Vec<usize> {
        let mut out: Vec<usize> = (0..self.n_left)
            .flat_map(|u| right_set.iter().map(move |&i| self.encode(u, i)))
            .collect();
        out.sort_unstable();
        out
    }

    /// The componentwise permutation `(u, i) ↦ (u^a, i^b)`.
    pub fn componentwise(&self, a: &Permutation, b: &Permutation) -> Result<Permutation> {
        if a.degree() != self.n_left {
            return Err(Error::DegreeMismatch {
                expected: self.n_left,
                found: a.degree(),
            });
        }
        if b.degree() != self.n_right {
            return Err(Error::DegreeMismatch {
                expected: self.n_right,
                found: b.degree(),
            });
        }
        let images = (0..self.size())
            .map(|x| {
                let (u, i) = self.decode(x);
                self.encode(a.apply(u), b.apply(i))
            })
            .collect();
        Ok(Permutation::from_images_unchecked(images))
    }

    fn check(&self, p: &Permutation) -> Result<()> {
        if p.degree() != self.size() {
            return Err(Error::DegreeMismatch {
                expected: self.size(),
                found: p.degree(),
            });
        }
        Ok(())
    }
}

fn check_nonempty(g: &Graph, h: &Graph) -> Result<()> {
    if g.order() == 0 || h.order() == 0 {
        return Err(Error::invalid("product factors must be nonempty"));
    }
    Ok(())
}

/// `(u,i) ~ (v,j)` iff `u ~ v` and `i ~ j`. Loops multiply literally.
pub fn direct_product(g: &Graph, h: &Graph) -> Result<(Graph, ProductIndex)> {
    check_nonempty(g, h)?;
    let idx = ProductIndex::new(g.order(), h.order());
    let prod = Graph::from_fn(idx.size(), |x, y| {
        let (u, i) = idx.decode(x);
        let (v, j) = idx.decode(y);
        g.has_edge(u, v) && h.has_edge(i, j)
    });
    Ok((prod, idx))
}

/// `(u,i) ~ (v,j)` iff `u = v` and `i ~ j`, or `i = j` and `u ~ v`.
pub fn cartesian_product(g: &Graph, h: &Graph) -> Result<(Graph, ProductIndex)> {
    check_nonempty(g, h)?;
    let idx = ProductIndex::new(g.order(), h.order());
    let prod = Graph::from_fn(idx.size(), |x, y| {
        let (u, i) = idx.decode(x);
        let (v, j) = idx.decode(y);
        (u == v && h.has_edge(i, j)) || (i == j && g.has_edge(u, v))
    });
    Ok((prod, idx))
}

/// Index metadata for `Γ^{□,k}`: vertex ids are base-`n` numerals of the
/// coordinate tuple, first coordinate most significant.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct PowerIndex {
    pub base: usize,
    pub power: usize,
}

impl PowerIndex {
    pub fn encode(&self, coords: &[usize]) -> usize {
        debug_assert_eq!(coords.len(), self.power);
        coords.iter().fold(0, |acc, &c| acc * self.base + c)
    }

    pub fn decode(&self, mut x: usize) -> Vec<usize> {
        let mut out = vec![0; self.power];
        for c in out.iter_mut().rev() {
            *c = x % self.base;
            x /= self.base;
        }
        out
    }
}

/// The Cartesian product of `k` copies of `g`.
pub fn cartesian_power(g: &Graph, k: usize) -> Result<(Graph, PowerIndex)> {
    if k == 0 {
        return Err(Error::invalid("cartesian power needs k >= 1"));
    }
    if g.order() == 0 {
        return Err(Error::invalid("cartesian power of the empty graph"));
    }
    let mut acc = g.clone();
    for _ in 1..k {
        acc = cartesian_product(&acc, g)?.0;
    }
    Ok((
        acc,
        PowerIndex {
            base: g.order(),
            power: k,
        },
    ))
}

/// Some row class `P_u` is not carried onto a row class.
pub fn is_row_mixer(p: &Permutation, idx: &ProductIndex) -> Result<bool> {
    idx.check(p)?;
    Ok((0..idx.n_left).any(|u| {
        let target = idx.decode(p.apply(idx.encode(u, 0))).0;
        (1..idx.n_right).any(|i| idx.decode(p.apply(idx.encode(u, i))).0 != target)
    }))
}

/// Some column class `L_i` is not carried onto a column class.
pub fn is_col_mixer(p: &Permutation, idx: &ProductIndex) -> Result<bool> {
    idx.check(p)?;
    Ok((0..idx.n_right).any(|i| {
        let target = idx.decode(p.apply(idx.encode(0, i))).1;
        (1..idx.n_left).any(|u| idx.decode(p.apply(idx.encode(u, i))).1 != target)
    }))
}

/// The unique `(a, b)` with `p(u,i) = (a(u), b(i))`, when `p` preserves both partitions.
pub fn is_componentwise(p: &Permutation, idx: &ProductIndex) -> Result<Option<(Permutation, Permutation)>> {
    if is_row_mixer(p, idx)? || is_col_mixer(p, idx)? {
        return Ok(None);
    }
    let a = (0..idx.n_left)
        .map(|u| idx.decode(p.apply(idx.encode(u, 0))).0)
        .collect();
    let b = (0..idx.n_right)
        .map(|i| idx.decode(p.apply(idx.encode(0, i))).1)
        .collect();
    Ok(Some((Permutation::new(a)?, Permutation::new(b)?)))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::{complete, cycle};
    use crate::search::are_isomorphic;

    #[test]
    fn direct_product_examples() {
        let k2 = complete(2).unwrap();
        let (p, _) = direct_product(&k2, &k2).unwrap();
        assert_eq!(p.edge_count(), 2);
        assert!(!p.is_connected());
        let c3 = cycle(3).unwrap();
        let c6 = cycle(6).unwrap();
        assert!(are_isomorphic(&direct_product(&c3, &k2).unwrap().0, &c6).is_some());
        assert!(are_isomorphic(&direct_product(&k2, &c3).unwrap().0, &c6).is_some());
        assert!(direct_product(&Graph::edgeless(0), &k2).is_err());
    }

    #[test]
    fn loops_multiply() {
        let l = crate::graph::looped_vertex();
        let k2 = complete(2).unwrap();
        let (p, _) = direct_product(&l, &k2).unwrap();
        assert_eq!(p, k2);
        let (q, _) = direct_product(&l, &l).unwrap();
        assert!(q.has_loop(0));
    }

    #[test]
    fn cartesian_examples() {
        let k2 = complete(2).unwrap();
        let (sq, _) = cartesian_product(&k2, &k2).unwrap();
        assert!(are_isomorphic(&sq, &cycle(4).unwrap()).is_some());
        let (cube, _) = cartesian_power(&k2, 3).unwrap();
        assert_eq!(cube.order(), 8);
        assert!((0..8).all(|v| cube.degree(v) == 3));
        let c3 = cycle(3).unwrap();
        let (c3c3, _) = cartesian_product(&c3, &c3).unwrap();
        assert!((0..9).all(|v| c3c3.degree(v) == 4));
        assert_eq!(cartesian_power(&cycle(5).unwrap(), 1).unwrap().0, cycle(5).unwrap());
        assert_eq!(cartesian_power(&c3, 2).unwrap().0, c3c3);
        assert!(cartesian_power(&c3, 0).is_err());
        let idx = PowerIndex { base: 3, power: 2 };
        assert_eq!(idx.decode(idx.encode(&[2, 1])), vec![2, 1]);
    }

    #[test]
    fn mixers_and_componentwise() {
        let idx = ProductIndex::new(3, 2);
        let a: Permutation = "[1,2,0]".parse().unwrap();
        let b: Permutation = "[1,0]".parse().unwrap();
        let p = idx.componentwise(&a, &b).unwrap();
        assert!(!is_row_mixer(&p, &idx).unwrap());
        assert!(!is_col_mixer(&p, &idx).unwrap());
        assert_eq!(is_componentwise(&p, &idx).unwrap(), Some((a, b)));
        let id = Permutation::identity(6);
        assert_eq!(
            is_componentwise(&id, &idx).unwrap(),
            Some((Permutation::identity(3), Permutation::identity(2)))
        );
        // swap two whole rows
        let swap = idx
            .componentwise(&"[1,0,2]".parse().unwrap(), &Permutation::identity(2))
            .unwrap();
        assert!(!is_row_mixer(&swap, &idx).unwrap());
        assert!(is_row_mixer(&id, &ProductIndex::new(2, 2)).is_err());
    }

    #[test]
    fn explicit_column_mixer() {
        // On a 3x3 grid move (0,0) into column 1 while fixing rows.
        let idx = ProductIndex::new(3, 3);
        let mut images: Vec<usize> = (0..9).collect();
        images.swap(idx.encode(0, 0), idx.encode(0, 1));
        let p = Permutation::new(images).unwrap();
        assert!(is_col_mixer(&p, &idx).unwrap());
        assert!(!is_row_mixer(&p, &idx).unwrap());
        assert!(is_componentwise(&p, &idx).unwrap().is_none());
    }
}
