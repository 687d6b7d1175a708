//! Exhaustive isomorphism-class enumeration of small graphs.
//!
//! Classes on `n` vertices are grown from classes on `n - 1` vertices by adding
//! one vertex with every possible neighbourhood, then deduplicated by canonical
//! form. Output order is ascending canonical form, so runs are reproducible.

use std::collections::BTreeSet;

use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::graph::Graph;
use crate::search::{canonical_form, CanonicalForm};

pub const MAX_ORDER_LOOPLESS: usize = 7;
pub const MAX_ORDER_LOOPS: usize = 5;

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct EnumerateOptions {
    pub connected: bool,
    pub loops: bool,
    /// `Some(true)` keeps only bipartite graphs, `Some(false)` only non-bipartite ones.
    pub bipartite: Option<bool>,
    pub twin_free: bool,
}

impl EnumerateOptions {
    pub fn connected() -> Self {
        EnumerateOptions {
            connected: true,
            ..Default::default()
        }
    }

    pub fn accepts(&self, g: &Graph) -> bool {
        (!self.connected || g.is_connected())
            && (self.loops || !g.has_loops())
            && self.bipartite.is_none_or(|b| g.is_bipartite().is_some() == b)
            && (!self.twin_free || g.is_twin_free())
    }
}

/// One representative per isomorphism class on exactly `n` vertices passing the filters.
pub fn enumerate_graphs(n: usize, options: EnumerateOptions) -> Result<Vec<Graph>> {
    let cap = if options.loops {
        MAX_ORDER_LOOPS
    } else {
        MAX_ORDER_LOOPLESS
    };
    if n > cap {
        return Err(Error::CapExceeded {
            what: "enumeration order",
            value: n as u128,
            limit: cap as u128,
        });
    }
    Ok(enumerate_graphs_uncapped(n, options))
}

/// Every class on `1..=n_max` vertices passing the filters, smallest order first.
pub fn enumerate_up_to(n_max: usize, options: EnumerateOptions) -> Result<Vec<Graph>> {
    let mut out = Vec::new();
    for n in 1..=n_max {
        out.extend(enumerate_graphs(n, options)?);
    }
    Ok(out)
}

/// [`enumerate_graphs`] without the order cap. Eight loopless vertices is about
/// a second of work; beyond that the cost grows quickly.
pub fn enumerate_graphs_uncapped(n: usize, options: EnumerateOptions) -> Vec<Graph> {
    all_classes(n, options.loops)
        .into_iter()
        .map(|c| c.to_graph())
        .filter(|g| options.accepts(g))
        .collect()
}

fn all_classes(n: usize, loops: bool) -> BTreeSet<CanonicalForm> {
    let mut level: BTreeSet<CanonicalForm> = BTreeSet::new();
    if n == 0 {
        level.insert(canonical_form(&Graph::edgeless(0)));
        return level;
    }
    level.insert(canonical_form(&Graph::edgeless(1)));
    if loops {
        level.insert(canonical_form(&crate::graph::looped_vertex()));
    }
    for m in 2..=n {
        let prev: Vec<Graph> = level.iter().map(|c| c.to_graph()).collect();
        level = prev
            .par_iter()
            .flat_map_iter(|g| extensions(g, loops).map(|h| canonical_form(&h)))
            .collect::<Vec<_>>()
            .into_iter()
            .collect();
        debug_assert!(level.iter().all(|c| c.order == m));
    }
    level
}

fn extensions(g: &Graph, loops: bool) -> impl Iterator<Item = Graph> + '_ {
    let m = g.order();
    let loop_flags: &'static [bool] = if loops { &[false, true] } else { &[false] };
    (0u64..1 << m).flat_map(move |mask| {
        loop_flags.iter().map(move |&lp| {
            Graph::from_fn(m + 1, |u, v| match (u == m, v == m) {
                (false, false) => g.has_edge(u, v),
                (true, true) => lp,
                (true, false) => mask >> v & 1 == 1,
                (false, true) => mask >> u & 1 == 1,
            })
        })
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn known_class_counts() {
        let all = |n| enumerate_graphs(n, EnumerateOptions::default()).unwrap().len();
        assert_eq!([all(1), all(2), all(3), all(4), all(5)], [1, 2, 4, 11, 34]);
        let conn = |n| enumerate_graphs(n, EnumerateOptions::connected()).unwrap().len();
        assert_eq!(
            [conn(1), conn(2), conn(3), conn(4), conn(5), conn(6)],
            [1, 1, 2, 6, 21, 112]
        );
    }

    #[test]
    fn loopy_counts() {
        let opts = EnumerateOptions {
            loops: true,
            ..Default::default()
        };
        // graphs with loops allowed: 2, 6, 20, 90
        let counts: Vec<usize> = (1..=4).map(|n| enumerate_graphs(n, opts).unwrap().len()).collect();
        assert_eq!(counts, vec![2, 6, 20, 90]);
    }

    #[test]
    fn caps_refuse() {
        assert!(enumerate_graphs(8, EnumerateOptions::default()).unwrap_err().is_cap());
        let opts = EnumerateOptions {
            loops: true,
            ..Default::default()
        };
        assert!(enumerate_graphs(6, opts).unwrap_err().is_cap());
    }

    #[test]
    fn filters() {
        let opts = EnumerateOptions {
            connected: true,
            twin_free: true,
            ..Default::default()
        };
        // P4, the paw and K4; K4 is twin-free because neighbourhoods are open
        let g4 = enumerate_graphs(4, opts).unwrap();
        assert_eq!(g4.len(), 3);
        let k4 = crate::graph::complete(4).unwrap();
        assert!(g4.iter().any(|g| crate::search::are_isomorphic(g, &k4).is_some()));
        assert!(g4.iter().all(|g| g.is_connected() && g.is_twin_free()));
    }
}
