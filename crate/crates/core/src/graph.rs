//! Finite undirected graphs with optional loops, stored as adjacency bit rows.

use std::collections::HashSet;
use std::collections::VecDeque;
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::perm::Permutation;

#[inline]
pub(crate) fn words_for(n: usize) -> usize {
    n.div_ceil(64).max(1)
}

/// An undirected graph on vertices `0..n`. A loop at `v` is encoded as `v`
/// being adjacent to itself, so `v ∈ N(v)`.
#[derive(Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(into = "GraphRepr", try_from = "GraphRepr")]
pub struct Graph {
    n: usize,
    words: usize,
    bits: Vec<u64>,
}

/// Serialized form: `{"order": n, "edges": [[u, v], ...]}` with `u <= v`.
#[derive(Serialize, Deserialize)]
struct GraphRepr {
    order: usize,
    edges: Vec<(usize, usize)>,
}

impl From<Graph> for GraphRepr {
    fn from(g: Graph) -> GraphRepr {
        GraphRepr {
            order: g.order(),
            edges: g.edges(),
        }
    }
}

impl TryFrom<GraphRepr> for Graph {
    type Error = Error;

    fn try_from(r: GraphRepr) -> Result<Graph> {
        Graph::from_edges(r.order, &r.edges)
    }
}

/// A 2-colouring of a loopless graph: every edge joins `part_u` to `part_w`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Bipartition {
    pub part_u: Vec<usize>,
    pub part_w: Vec<usize>,
}

impl Bipartition {
    pub fn contains_u(&self, v: usize) -> bool {
        self.part_u.binary_search(&v).is_ok()
    }
}

impl Graph {
    /// Graph on `n` vertices with no edges.
    pub fn edgeless(n: usize) -> Graph {
        let words = words_for(n);
        Graph {
            n,
            words,
            bits: vec![0; n * words],
        }
    }

    /// Builds a graph from an edge list; `(v, v)` is a loop. Duplicates are merged.
    pub fn from_edges(n: usize, edges: &[(usize, usize)]) -> Result<Graph> {
        let mut g = Graph::edgeless(n);
        for &(u, v) in edges {
            for x in [u, v] {
                if x >= n {
                    return Err(Error::VertexOutOfRange { vertex: x, order: n });
                }
            }
            g.set_edge(u, v);
        }
        Ok(g)
    }

    /// Builds a graph from a symmetric predicate, evaluated once per unordered pair.
    pub fn from_fn(n: usize, mut adj: impl FnMut(usize, usize) -> bool) -> Graph {
        let mut g = Graph::edgeless(n);
        for u in 0..n {
            for v in u..n {
                if adj(u, v) {
                    g.set_edge(u, v);
                }
            }
        }
        g
    }

    pub(crate) fn set_edge(&mut self, u: usize, v: usize) {
        self.bits[u * self.words + v / 64] |= 1 << (v % 64);
        self.bits[v * self.words + u / 64] |= 1 << (u % 64);
    }

    #[inline]
    pub fn order(&self) -> usize {
        self.n
    }

    #[inline]
    pub(crate) fn words(&self) -> usize {
        self.words
    }

    /// Adjacency row of `v` as a bitset.
    #[inline]
    pub fn row(&self, v: usize) -> &[u64] {
        &self.bits[v * self.words..(v + 1) * self.words]
    }

    #[inline]
    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        self.bits[u * self.words + v / 64] >> (v % 64) & 1 == 1
    }

    #[inline]
    pub fn has_loop(&self, v: usize) -> bool {
        self.has_edge(v, v)
    }

    pub fn has_loops(&self) -> bool {
        (0..self.n).any(|v| self.has_loop(v))
    }

    /// Number of neighbours; a loop contributes one.
    #[inline]
    pub fn degree(&self, v: usize) -> usize {
        self.row(v).iter().map(|w| w.count_ones() as usize).sum()
    }

    pub fn neighbors(&self, v: usize) -> Result<Vec<usize>> {
        if v >= self.n {
            return Err(Error::VertexOutOfRange {
                vertex: v,
                order: self.n,
            });
        }
        Ok(self.neighbor_iter(v).collect())
    }

    pub(crate) fn neighbor_iter(&self, v: usize) -> impl Iterator<Item = usize> + '_ {
        crate::bits::iter_ones(self.row(v))
    }

    /// Edges `{u, v}` with `u <= v`, in lexicographic order.
    pub fn edges(&self) -> Vec<(usize, usize)> {
        let mut out = Vec::new();
        for u in 0..self.n {
            for v in self.neighbor_iter(u) {
                if v >= u {
                    out.push((u, v));
                }
            }
        }
        out
    }

    pub fn edge_count(&self) -> usize {
        self.edges().len()
    }

    pub fn is_connected(&self) -> bool {
        self.n > 0 && self.components().len() == 1
    }

    /// Vertex sets of the connected components, ordered by smallest vertex.
    pub fn components(&self) -> Vec<Vec<usize>> {
        let mut seen = vec![false; self.n];
        let mut comps = Vec::new();
        for s in 0..self.n {
            if seen[s] {
                continue;
            }
            seen[s] = true;
            let mut comp = vec![s];
            let mut queue = VecDeque::from([s]);
            while let Some(x) = queue.pop_front() {
                for y in self.neighbor_iter(x) {
                    if !seen[y] {
                        seen[y] = true;
                        comp.push(y);
                        queue.push_back(y);
                    }
                }
            }
            comp.sort_unstable();
            comps.push(comp);
        }
        comps
    }

    /// A 2-colouring, or `None` when an odd closed walk (a loop included) exists.
    /// Within each component the smallest vertex is coloured into `part_u`.
    pub fn is_bipartite(&self) -> Option<Bipartition> {
        let mut colour: Vec<Option<bool>> = vec![None; self.n];
        for s in 0..self.n {
            if colour[s].is_some() {
                continue;
            }
            colour[s] = Some(false);
            let mut queue = VecDeque::from([s]);
            while let Some(x) = queue.pop_front() {
                let cx = colour[x].unwrap();
                for y in self.neighbor_iter(x) {
                    match colour[y] {
                        None => {
                            colour[y] = Some(!cx);
                            queue.push_back(y);
                        }
                        Some(cy) if cy == cx => return None,
                        _ => {}
                    }
                }
            }
        }
        let (mut part_u, mut part_w) = (Vec::new(), Vec::new());
        for (v, c) in colour.iter().enumerate() {
            if c == &Some(false) {
                part_u.push(v);
            } else {
                part_w.push(v);
            }
        }
        Some(Bipartition { part_u, part_w })
    }

    /// No two distinct vertices share an open neighbourhood.
    pub fn is_twin_free(&self) -> bool {
        let mut rows = HashSet::with_capacity(self.n);
        (0..self.n).all(|v| rows.insert(self.row(v)))
    }

    pub fn has_isolated_vertex(&self) -> bool {
        (0..self.n).any(|v| self.degree(v) == 0)
    }

    /// Subgraph induced on `vertices`; vertex `vertices[k]` becomes `k`.
    pub fn induced_subgraph(&self, vertices: &[usize]) -> Graph {
        Graph::from_fn(vertices.len(), |a, b| self.has_edge(vertices[a], vertices[b]))
    }

    /// The image graph under `p`: `{u^p, v^p}` is an edge iff `{u, v}` is.
    pub fn relabel(&self, p: &Permutation) -> Result<Graph> {
        if p.degree() != self.n {
            return Err(Error::DegreeMismatch {
                expected: self.n,
                found: p.degree(),
            });
        }
        let mut g = Graph::edgeless(self.n);
        for (u, v) in self.edges() {
            g.set_edge(p.apply(u), p.apply(v));
        }
        Ok(g)
    }

    /// True iff `p` preserves adjacency and non-adjacency.
    pub fn is_automorphism(&self, p: &Permutation) -> bool {
        p.degree() == self.n
            && (0..self.n).all(|u| {
                let pu = p.apply(u);
                (u..self.n).all(|v| self.has_edge(u, v) == self.has_edge(pu, p.apply(v)))
            })
    }

    pub fn disjoint_union(&self, other: &Graph) -> Graph {
        let n = self.n + other.n;
        Graph::from_fn(n, |u, v| match (u < self.n, v < self.n) {
            (true, true) => self.has_edge(u, v),
            (false, false) => other.has_edge(u - self.n, v - self.n),
            _ => false,
        })
    }

    /// Edge-set containment on the same vertex set.
    pub fn is_subgraph_of(&self, other: &Graph) -> bool {
        self.n == other.n && self.bits.iter().zip(&other.bits).all(|(a, b)| a & !b == 0)
    }
}

impl fmt::Debug for Graph {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Graph(n={}, edges={:?})", self.n, self.edges())
    }
}

/// The cycle `C_n`: `i ~ i ± 1 (mod n)`.
pub fn cycle(n: usize) -> Result<Graph> {
    if n < 3 {
        return Err(Error::invalid(format!("cycle needs n >= 3, got {n}")));
    }
    Ok(Graph::from_fn(n, |u, v| (v + n - u) % n == 1 || (u + n - v) % n == 1))
}

/// The loopless complete graph `K_n`.
pub fn complete(n: usize) -> Result<Graph> {
    if n == 0 {
        return Err(Error::invalid("complete graph needs n >= 1"));
    }
    Ok(Graph::from_fn(n, |u, v| u != v))
}

/// The path on `n` vertices.
pub fn path(n: usize) -> Result<Graph> {
    if n == 0 {
        return Err(Error::invalid("path needs n >= 1"));
    }
    Ok(Graph::from_fn(n, |u, v| u.abs_diff(v) == 1))
}

/// The complete bipartite graph `K_{a,b}` with parts `0..a` and `a..a+b`.
pub fn complete_bipartite(a: usize, b: usize) -> Result<Graph> {
    if a == 0 || b == 0 {
        return Err(Error::invalid("complete bipartite graph needs both parts nonempty"));
    }
    Ok(Graph::from_fn(a + b, |u, v| (u < a) != (v < a)))
}

/// The circulant `Cay(Z_n, S)`. The connection set is closed under negation here;
/// residues congruent to zero are rejected.
pub fn circulant(n: usize, connection: &[usize]) -> Result<Graph> {
    if n == 0 {
        return Err(Error::invalid("circulant needs n >= 1"));
    }
    let mut set = vec![false; n];
    for &s in connection {
        let r = s % n;
        if r == 0 {
            return Err(Error::invalid(format!(
                "connection element {s} is 0 mod {n} (would be a loop)"
            )));
        }
        set[r] = true;
        set[n - r] = true;
    }
    Ok(Graph::from_fn(n, |u, v| set[(v + n - u) % n]))
}

/// A single vertex carrying a loop, the unit of the direct product.
pub fn looped_vertex() -> Graph {
    Graph::from_fn(1, |_, _| true)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn family_sizes() {
        let c3 = cycle(3).unwrap();
        assert_eq!(c3.edge_count(), 3);
        let c4 = cycle(4).unwrap();
        assert!((0..4).all(|v| c4.degree(v) == 2));
        assert_eq!(complete(2).unwrap().edges(), vec![(0, 1)]);
        assert_eq!(complete(4).unwrap().edge_count(), 6);
        let k1 = complete(1).unwrap();
        assert_eq!(k1.edge_count(), 0);
        assert!(!k1.has_loop(0));
        assert!(cycle(2).is_err());
        assert!(complete(0).is_err());
    }

    #[test]
    fn circulant_examples() {
        let g = circulant(8, &[1, 2, 6, 7]).unwrap();
        assert!((0..8).all(|v| g.degree(v) == 4));
        assert!(g.is_connected());
        assert!(g.is_bipartite().is_none());
        assert!(g.is_twin_free());
        assert_eq!(g.neighbors(0).unwrap(), vec![1, 2, 6, 7]);
        assert_eq!(circulant(6, &[1, 5]).unwrap(), cycle(6).unwrap());
        assert_eq!(circulant(5, &[1, 2, 3, 4]).unwrap(), complete(5).unwrap());
        // closure under negation is enforced
        assert_eq!(circulant(6, &[1]).unwrap(), cycle(6).unwrap());
        assert!(circulant(6, &[6]).is_err());
    }

    #[test]
    fn neighbourhoods_and_loops() {
        assert_eq!(cycle(5).unwrap().neighbors(0).unwrap(), vec![1, 4]);
        let l = looped_vertex();
        assert_eq!(l.neighbors(0).unwrap(), vec![0]);
        assert!(l.neighbors(1).is_err());
        assert!(l.is_bipartite().is_none());
    }

    #[test]
    fn connectivity() {
        assert!(cycle(7).unwrap().is_connected());
        let two_edges = Graph::from_edges(4, &[(0, 1), (2, 3)]).unwrap();
        assert!(!two_edges.is_connected());
        assert!(!Graph::edgeless(0).is_connected());
    }

    #[test]
    fn bipartition_of_even_cycle() {
        let b = cycle(6).unwrap().is_bipartite().unwrap();
        assert_eq!(b.part_u, vec![0, 2, 4]);
        assert_eq!(b.part_w, vec![1, 3, 5]);
        assert!(cycle(5).unwrap().is_bipartite().is_none());
    }

    #[test]
    fn twins() {
        assert!(!cycle(4).unwrap().is_twin_free());
        assert!(cycle(5).unwrap().is_twin_free());
        assert!(complete(2).unwrap().is_twin_free());
    }

    #[test]
    fn out_of_range_edge() {
        assert!(Graph::from_edges(2, &[(0, 2)]).is_err());
    }
}
