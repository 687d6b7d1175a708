//! Boolean square, dispensable edges and the Cartesian skeleton.

use rayon::prelude::*;

use crate::bits;
use crate::error::{Error, Result};
use crate::graph::Graph;

/// Distinct `u, v` are adjacent iff `N(u) ∩ N(v) ≠ ∅`. Always loopless.
pub fn boolean_square(g: &Graph) -> Graph {
    Graph::from_fn(g.order(), |u, v| u != v && bits::intersects(g.row(u), g.row(v)))
}

fn dispensable_unchecked(g: &Graph, u: usize, v: usize) -> bool {
    let (nu, nv) = (g.row(u), g.row(v));
    let nuv = bits::and(nu, nv);
    (0..g.order()).any(|w| {
        let nw = g.row(w);
        let first = bits::is_proper_subset(&nuv, &bits::and(nu, nw))
            || (bits::is_proper_subset(nu, nw) && bits::is_proper_subset(nw, nv));
        let second = bits::is_proper_subset(&nuv, &bits::and(nv, nw))
            || (bits::is_proper_subset(nv, nw) && bits::is_proper_subset(nw, nu));
        first && second
    })
}

/// Whether the edge `{u, v}` of `B(g)` is dispensable with respect to `g`.
pub fn is_dispensable(g: &Graph, u: usize, v: usize) -> Result<bool> {
    let n = g.order();
    for x in [u, v] {
        if x >= n {
            return Err(Error::VertexOutOfRange { vertex: x, order: n });
        }
    }
    if u == v || !bits::intersects(g.row(u), g.row(v)) {
        return Err(Error::invalid(format!(
            "{{{u},{v}}} is not an edge of the boolean square"
        )));
    }
    Ok(dispensable_unchecked(g, u, v))
}

/// Edges of `B(g)` that are dispensable, as sorted pairs `u < v`.
pub fn dispensable_edges(g: &Graph) -> Vec<(usize, usize)> {
    boolean_square(g)
        .edges()
        .into_par_iter()
        .filter(|&(u, v)| dispensable_unchecked(g, u, v))
        .collect()
}

/// `S(g)`: the boolean square with every dispensable edge removed at once.
pub fn cartesian_skeleton(g: &Graph) -> Graph {
    let b = boolean_square(g);
    let drop = dispensable_edges(g);
    if drop.is_empty() {
        return b;
    }
    Graph::from_fn(g.order(), |u, v| {
        b.has_edge(u, v) && drop.binary_search(&(u.min(v), u.max(v))).is_err()
    })
}

/// Connected components of `S(g)` with their induced subgraphs.
pub fn skeleton_components(g: &Graph) -> Vec<(Vec<usize>, Graph)> {
    let s = cartesian_skeleton(g);
    s.components()
        .into_iter()
        .map(|c| {
            let sub = s.induced_subgraph(&c);
            (c, sub)
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::{circulant, complete, cycle};
    use crate::search::are_isomorphic;

    #[test]
    fn boolean_square_of_cycles() {
        let b6 = boolean_square(&cycle(6).unwrap());
        assert_eq!(b6.components(), vec![vec![0, 2, 4], vec![1, 3, 5]]);
        assert!(are_isomorphic(&b6, &cycle(3).unwrap().disjoint_union(&cycle(3).unwrap())).is_some());
        let b7 = boolean_square(&cycle(7).unwrap());
        assert!(are_isomorphic(&b7, &cycle(7).unwrap()).is_some());
        assert!(b7.has_edge(0, 2) && b7.has_edge(0, 5));
        assert_eq!(boolean_square(&complete(2).unwrap()).edge_count(), 0);
    }

    #[test]
    fn cycles_have_no_dispensable_edges() {
        for n in 3..=12 {
            let c = cycle(n).unwrap();
            assert!(dispensable_edges(&c).is_empty(), "n={n}");
        }
        assert!(!is_dispensable(&cycle(6).unwrap(), 0, 2).unwrap());
        assert!(is_dispensable(&cycle(6).unwrap(), 0, 1).is_err());
        assert!(is_dispensable(&cycle(6).unwrap(), 0, 9).is_err());
    }

    #[test]
    fn skeleton_components_split_by_parity() {
        let comps = skeleton_components(&cycle(6).unwrap());
        let sets: Vec<_> = comps.iter().map(|(c, _)| c.clone()).collect();
        assert_eq!(sets, vec![vec![0, 2, 4], vec![1, 3, 5]]);
        assert_eq!(skeleton_components(&cycle(5).unwrap()).len(), 1);
        let k2 = skeleton_components(&complete(2).unwrap());
        assert_eq!(k2.len(), 2);
        assert!(k2.iter().all(|(c, sub)| c.len() == 1 && sub.order() == 1));
    }

    #[test]
    fn skeleton_is_subgraph_of_square() {
        let g = circulant(8, &[1, 2]).unwrap();
        let s = cartesian_skeleton(&g);
        assert!(s.is_subgraph_of(&boolean_square(&g)));
        assert!(!s.has_loops());
    }
}
