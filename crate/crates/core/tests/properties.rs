use proptest::prelude::*;

use prodstab::factor::cartesian_prime_factorization;
use prodstab::graph::{circulant, complete};
use prodstab::io::{emit_edge_list, emit_graph6, parse_edge_list, parse_graph6};
use prodstab::products::{cartesian_product, direct_product, is_col_mixer, is_componentwise, is_row_mixer};
use prodstab::search::{are_isomorphic, automorphism_group, canonical_form};
use prodstab::skeleton::{boolean_square, cartesian_skeleton};
use prodstab::tfa::tfa_group;
use prodstab::{Graph, Permutation, ProductIndex};

/// Graphs on `1..=max` vertices; loops only when `loops` is set.
fn graph(max: usize, loops: bool) -> impl Strategy<Value = Graph> {
    (1..=max).prop_flat_map(move |n| {
        prop::collection::vec(any::<bool>(), n * (n + 1) / 2).prop_map(move |bits| {
            let mut edges = Vec::new();
            let mut k = 0;
            for u in 0..n {
                for v in u..n {
                    if bits[k] && (u != v || loops) {
                        edges.push((u, v));
                    }
                    k += 1;
                }
            }
            Graph::from_edges(n, &edges).unwrap()
        })
    })
}

fn connected(max: usize) -> impl Strategy<Value = Graph> {
    graph(max, false).prop_filter("connected", |g| g.is_connected())
}

fn permutation(n: usize) -> impl Strategy<Value = Permutation> {
    Just((0..n).collect::<Vec<_>>())
        .prop_shuffle()
        .prop_map(|v| Permutation::new(v).unwrap())
}

fn graph_with_perm(max: usize, loops: bool) -> impl Strategy<Value = (Graph, Permutation)> {
    graph(max, loops).prop_flat_map(|g| {
        let n = g.order();
        (Just(g), permutation(n))
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(96))]

    #[test]
    fn adjacency_is_symmetric(g in graph(9, true)) {
        let n = g.order();
        for u in 0..n {
            for v in 0..n {
                prop_assert_eq!(g.has_edge(u, v), g.has_edge(v, u));
            }
        }
    }

    #[test]
    fn bipartition_matches_double_cover(g in graph(8, true)) {
        // each bipartite component lifts to two components of g × K2, others to one
        let (cover, _) = direct_product(&g, &complete(2).unwrap()).unwrap();
        let comps = g.components();
        let bipartite = comps.iter().filter(|c| g.induced_subgraph(c).is_bipartite().is_some()).count();
        prop_assert_eq!(cover.components().len(), comps.len() + bipartite);
        prop_assert_eq!(g.is_bipartite().is_some(), bipartite == comps.len());
        if let Some(parts) = g.is_bipartite() {
            for (u, v) in g.edges() {
                prop_assert_ne!(parts.contains_u(u), parts.contains_u(v));
            }
        }
    }

    #[test]
    fn circulants_are_vertex_transitive(n in 3usize..14, s in prop::collection::vec(1usize..7, 1..4)) {
        let conn: Vec<usize> = s.into_iter().map(|x| x % n).filter(|&x| x != 0).collect();
        prop_assume!(!conn.is_empty());
        let g = circulant(n, &conn).unwrap();
        for r in 0..n {
            prop_assert!(g.is_automorphism(&Permutation::rotation(n, r)));
        }
    }

    #[test]
    fn automorphism_generators_preserve_graph_and_skeleton(g in graph(8, true)) {
        let s = cartesian_skeleton(&g);
        for p in automorphism_group(&g).generators() {
            prop_assert!(g.is_automorphism(p));
            prop_assert!(s.is_automorphism(p));
        }
    }

    #[test]
    fn isomorphism_witness_maps_exactly((g, p) in graph_with_perm(8, true)) {
        let h = g.relabel(&p).unwrap();
        let w = are_isomorphic(&g, &h);
        prop_assert!(w.is_some());
        prop_assert_eq!(g.relabel(&w.unwrap()).unwrap(), h.clone());
        prop_assert!(are_isomorphic(&h, &g).is_some());
        prop_assert_eq!(canonical_form(&g), canonical_form(&h));
    }

    #[test]
    fn isomorphism_is_symmetric(g in graph(6, false), h in graph(6, false)) {
        prop_assert_eq!(are_isomorphic(&g, &h).is_some(), are_isomorphic(&h, &g).is_some());
        prop_assert_eq!(are_isomorphic(&g, &h).is_some(), canonical_form(&g) == canonical_form(&h));
    }

    #[test]
    fn product_degree_laws(g in graph(5, true), h in graph(5, true)) {
        let (d, idx) = direct_product(&g, &h).unwrap();
        let (c, _) = cartesian_product(&g, &h).unwrap();
        for u in 0..g.order() {
            for i in 0..h.order() {
                let x = idx.encode(u, i);
                prop_assert_eq!(d.degree(x), g.degree(u) * h.degree(i));
                let gl = usize::from(g.has_loop(u));
                let hl = usize::from(h.has_loop(i));
                // a loop at u or i lands on (u,i) itself and is counted once
                let both = usize::from(g.has_loop(u) && h.has_loop(i));
                prop_assert_eq!(c.degree(x), g.degree(u) + h.degree(i) - both);
                prop_assert_eq!(c.has_loop(x), gl + hl > 0);
            }
        }
    }

    #[test]
    fn cartesian_product_of_connected_is_connected(g in connected(5), h in connected(5)) {
        prop_assert!(cartesian_product(&g, &h).unwrap().0.is_connected());
    }

    #[test]
    fn componentwise_embedding_is_injective(
        a in permutation(4), b in permutation(3), c in permutation(4), d in permutation(3)
    ) {
        let idx = ProductIndex::new(4, 3);
        let p = idx.componentwise(&a, &b).unwrap();
        let q = idx.componentwise(&c, &d).unwrap();
        prop_assert_eq!(p == q, a == c && b == d);
        prop_assert_eq!(is_componentwise(&p, &idx).unwrap(), Some((a, b)));
    }

    #[test]
    fn mixer_trichotomy(p in permutation(12)) {
        let idx = ProductIndex::new(3, 4);
        let mixes = is_row_mixer(&p, &idx).unwrap() || is_col_mixer(&p, &idx).unwrap();
        prop_assert_ne!(mixes, is_componentwise(&p, &idx).unwrap().is_some());
    }

    #[test]
    fn skeleton_within_boolean_square(g in graph(8, true)) {
        let b = boolean_square(&g);
        let s = cartesian_skeleton(&g);
        prop_assert!(s.is_subgraph_of(&b));
        prop_assert!(!b.has_loops() && !s.has_loops());
        prop_assert_eq!(s.order(), g.order());
    }

    #[test]
    fn skeleton_components_follow_bipartition(g in connected(8)) {
        let comps = cartesian_skeleton(&g).components();
        match g.is_bipartite() {
            None => prop_assert_eq!(comps.len(), 1),
            Some(parts) if g.order() > 1 => {
                prop_assert_eq!(comps.len(), 2);
                let mut expected = vec![parts.part_u.clone(), parts.part_w.clone()];
                expected.sort();
                let mut found = comps.clone();
                found.sort();
                prop_assert_eq!(found, expected);
            }
            Some(_) => prop_assert_eq!(comps.len(), 1),
        }
    }

    #[test]
    fn tfa_contains_diagonal_and_respects_skeleton(g in graph(6, true)) {
        let t = tfa_group(&g).unwrap();
        let aut = automorphism_group(&g);
        prop_assert!(t.order() >= aut.order());
        prop_assert_eq!(t.order() % aut.order(), 0);
        for a in aut.generators() {
            prop_assert!(t.contains(&prodstab::tfa::TfaPair::diagonal(a.clone())));
        }
        let s = cartesian_skeleton(&g);
        let parts = if g.is_connected() { g.is_bipartite() } else { None };
        for pair in t.generators() {
            prop_assert!(s.is_automorphism(&pair.alpha));
            prop_assert!(s.is_automorphism(&pair.beta));
            if let Some(parts) = &parts {
                let u0 = parts.part_u[0];
                prop_assert_eq!(parts.contains_u(pair.alpha.apply(u0)), parts.contains_u(pair.beta.apply(u0)));
            }
        }
    }

    #[test]
    fn edge_list_round_trip(g in graph(9, true)) {
        prop_assert_eq!(parse_edge_list(&emit_edge_list(&g)).unwrap(), g);
    }

    #[test]
    fn graph6_round_trip(g in graph(12, false)) {
        prop_assert_eq!(parse_graph6(&emit_graph6(&g).unwrap()).unwrap(), g);
    }

    #[test]
    fn composition_laws(p in permutation(7), q in permutation(7), r in permutation(7)) {
        let pq = p.compose(&q).unwrap();
        for v in 0..7 {
            prop_assert_eq!(pq.apply(v), q.apply(p.apply(v)));
        }
        prop_assert_eq!(pq.compose(&r).unwrap(), p.compose(&q.compose(&r).unwrap()).unwrap());
        prop_assert!(p.compose(&p.inverse()).unwrap().is_identity());
    }

    #[test]
    fn cartesian_factorization_is_sound(g in connected(4), h in connected(4)) {
        prop_assume!(g.order() > 1 && h.order() > 1);
        let (prod, _) = cartesian_product(&g, &h).unwrap();
        let f = cartesian_prime_factorization(&prod).unwrap();
        prop_assert!(f.certified);
        prop_assert!(f.factor_count() >= 2);
        prop_assert_eq!(cartesian_prime_factorization(&prod).unwrap().factors, f.factors);
    }
}
