//! Acceptance criteria. Each test prints one line: the criterion number, PASS or
//! FAIL, the elapsed time against its budget, and a short summary.

use std::time::{Duration, Instant};

use rayon::prelude::*;

use prodstab::enumerate::{enumerate_graphs_uncapped, enumerate_up_to, EnumerateOptions};
use prodstab::factor::{
    cartesian_prime_factorization, direct_factor_exhaustive, direct_factor_search, direct_factors_of_order,
    has_cycle_direct_factor, is_cartesian_prime,
};
use prodstab::graph::{circulant, complete, cycle};
use prodstab::products::{cartesian_power, cartesian_product, direct_product, is_componentwise, is_row_mixer};
use prodstab::search::{are_isomorphic, automorphism_count, canonical_form};
use prodstab::skeleton::cartesian_skeleton;
use prodstab::stability::{is_nontrivial_pair, is_stable_graph, is_stable_pair, part_swapping_automorphism};
use prodstab::tfa::tfa_group;
use prodstab::verify::{explicit_tau, search_conjecture, verify_claim, Outcome, Report};
use prodstab::Graph;

fn conclude(id: u32, title: &str, budget: Duration, start: Instant, failures: &[String], summary: &str) {
    let elapsed = start.elapsed();
    let in_time = elapsed <= budget;
    let pass = failures.is_empty() && in_time;
    println!(
        "criterion {id:>2} {} [{:.2?} / {:?}] {title}: {summary}",
        if pass { "PASS" } else { "FAIL" },
        elapsed,
        budget
    );
    assert!(
        failures.is_empty(),
        "criterion {id}: {} failures, first: {}",
        failures.len(),
        failures[0]
    );
    assert!(in_time, "criterion {id}: {elapsed:?} exceeds {budget:?}");
}

fn claim_failures(report: &Report) -> Vec<String> {
    report
        .cases
        .iter()
        .filter(|c| matches!(c.outcome, Outcome::Fail | Outcome::Finding))
        .map(|c| format!("{} {}", c.claim_id, c.instance.label))
        .collect()
}

fn iso(a: &Graph, b: &Graph) -> bool {
    are_isomorphic(a, b).is_some()
}

#[test]
fn criterion_01_cycle_skeletons() {
    let start = Instant::now();
    let r = verify_claim("skeleton-cycles", Some(30)).unwrap();
    let mut failures = claim_failures(&r);
    if r.summary.pass != 28 {
        failures.push(format!("expected 28 passing cycles, got {}", r.summary.pass));
    }
    conclude(
        1,
        "S(C_n) for 3 <= n <= 30",
        Duration::from_secs(1),
        start,
        &failures,
        &format!("{} cycles", r.summary.pass),
    );
}

#[test]
fn criterion_02_explicit_instability() {
    let start = Instant::now();
    let gamma = circulant(8, &[1, 2]).unwrap();
    let c6 = cycle(6).unwrap();
    let mut failures = Vec::new();
    let nt = is_nontrivial_pair(&gamma, &c6).unwrap();
    if !nt.nontrivial {
        failures.push(format!("pair not nontrivial: {:?}", nt.reasons));
    }
    let (prod, idx) = direct_product(&gamma, &c6).unwrap();
    let tau = explicit_tau(6).unwrap();
    if !prod.is_automorphism(&tau) {
        failures.push("tau is not an automorphism".into());
    }
    if !is_row_mixer(&tau, &idx).unwrap() {
        failures.push("tau is not a row mixer".into());
    }
    if is_componentwise(&tau, &idx).unwrap().is_some() {
        failures.push("tau is componentwise".into());
    }
    let r = is_stable_pair(&gamma, &c6).unwrap();
    if r.is_stable() {
        failures.push("pair reported stable".into());
    }
    if (r.orders.aut_left, r.orders.aut_right) != (16, 12) || r.orders.aut_product <= 192 {
        failures.push(format!("orders {:?}", r.orders));
    }
    conclude(
        2,
        "Cay(Z8,{1,2,6,7}) x C6 unstable",
        Duration::from_secs(10),
        start,
        &failures,
        &format!("|Aut(product)| = {} > 16*12", r.orders.aut_product),
    );
}

#[test]
fn criterion_03_odd_cycle_pairs() {
    let start = Instant::now();
    let r = verify_claim("odd-cycle-pairs", Some(7)).unwrap();
    let mut failures = claim_failures(&r);
    if r.summary.pass == 0 {
        failures.push("no qualifying pairs".into());
    }
    conclude(
        3,
        "bipartite x odd cycle pairs stable",
        Duration::from_secs(600),
        start,
        &failures,
        &format!("{} stable, {} skipped as trivial", r.summary.pass, r.summary.skipped),
    );
}

#[test]
fn criterion_04_even_cycle_pairs() {
    let start = Instant::now();
    let r = verify_claim("even-cycle-pairs", Some(7)).unwrap();
    let both = r
        .cases
        .iter()
        .filter(|c| {
            c.details
                .as_ref()
                .is_some_and(|d| d["pairNontriviallyUnstable"] == true)
        })
        .count();
    let mut failures = claim_failures(&r);
    if r.summary.skipped > 0 {
        failures.push(format!("{} cases skipped", r.summary.skipped));
    }
    conclude(
        4,
        "even cycle pair instability iff",
        Duration::from_secs(900),
        start,
        &failures,
        &format!("{} graphs checked, {} with both sides true", r.summary.pass, both),
    );
}

#[test]
fn criterion_05_tfa_oracle() {
    let start = Instant::now();
    let r = verify_claim("tfa-stabilizer", Some(5)).unwrap();
    let mut failures = claim_failures(&r);
    if r.summary.skipped > 0 {
        failures.push(format!("{} graphs skipped", r.summary.skipped));
    }
    conclude(
        5,
        "TFA stabilizer order vs pair count",
        Duration::from_secs(120),
        start,
        &failures,
        &format!("{} connected graphs, loops included", r.summary.pass),
    );
}

#[test]
fn criterion_06_double_cover_order_laws() {
    let start = Instant::now();
    let mut graphs = enumerate_up_to(7, EnumerateOptions::connected()).unwrap();
    graphs.extend(
        enumerate_up_to(
            5,
            EnumerateOptions {
                loops: true,
                ..EnumerateOptions::connected()
            },
        )
        .unwrap()
        .into_iter()
        .filter(|g| g.has_loops()),
    );
    let k2 = complete(2).unwrap();
    let results: Vec<(usize, Option<String>)> = graphs
        .par_iter()
        .map(|g| {
            let cover = automorphism_count(&direct_product(g, &k2).unwrap().0);
            let tfa = tfa_group(g).unwrap().order();
            let (law, factor) = match g.is_bipartite() {
                None => (0, 2),
                Some(_) if part_swapping_automorphism(g).is_some() => (1, 4),
                Some(_) => (2, 2),
            };
            let bad = (cover != factor * tfa).then(|| format!("{:?}: {cover} vs {factor}*{tfa}", g.edges()));
            (law, bad)
        })
        .collect();
    let failures: Vec<String> = results.iter().filter_map(|(_, b)| b.clone()).collect();
    let count = |law| results.iter().filter(|(l, _)| *l == law).count();
    conclude(
        6,
        "|Aut(G x K2)| against |TFA(G)|",
        Duration::from_secs(300),
        start,
        &failures,
        &format!(
            "{} non-bipartite (2x), {} with part swap (4x), {} without (2x)",
            count(0),
            count(1),
            count(2)
        ),
    );
}

#[test]
fn criterion_07_tfa_counting_identity() {
    let start = Instant::now();
    let r = verify_claim("counting-identities", None).unwrap();
    let mut failures = claim_failures(&r);
    for label in ["C5,C6", "C7,C6", "K3,K2"] {
        let checked = r.cases.iter().any(|c| {
            c.instance.label == label && c.instance.variant.as_deref() == Some("tfa") && c.outcome == Outcome::Pass
        });
        if !checked {
            failures.push(format!("{label} not checked"));
        }
    }
    conclude(
        7,
        "|Aut(G)|^2 |TFA(S)| = |TFA(G x S)|",
        Duration::from_secs(300),
        start,
        &failures,
        &format!(
            "{} identities exact, {} skipped by hypothesis",
            r.summary.pass, r.summary.skipped
        ),
    );
}

#[test]
fn criterion_08_skeleton_product_law() {
    let start = Instant::now();
    let graphs: Vec<Graph> = enumerate_up_to(
        5,
        EnumerateOptions {
            loops: true,
            ..Default::default()
        },
    )
    .unwrap()
    .into_iter()
    .filter(|g| g.is_twin_free() && !g.has_isolated_vertex())
    .collect();
    let skeletons: Vec<Graph> = graphs.iter().map(cartesian_skeleton).collect();
    let failures: Vec<String> = (0..graphs.len())
        .into_par_iter()
        .flat_map_iter(|i| {
            let (graphs, skeletons) = (&graphs, &skeletons);
            (0..graphs.len()).filter_map(move |j| {
                let lhs = cartesian_skeleton(&direct_product(&graphs[i], &graphs[j]).unwrap().0);
                let rhs = cartesian_product(&skeletons[i], &skeletons[j]).unwrap().0;
                (lhs != rhs).then(|| format!("{:?} x {:?}", graphs[i].edges(), graphs[j].edges()))
            })
        })
        .collect();
    conclude(
        8,
        "S(G x H) = S(G) box S(H)",
        Duration::from_secs(300),
        start,
        &failures,
        &format!("{} ordered pairs, edge sets equal", graphs.len() * graphs.len()),
    );
}

#[test]
fn criterion_09_factorization() {
    let start = Instant::now();
    let mut failures = Vec::new();
    let k2 = complete(2).unwrap();

    let f = cartesian_prime_factorization(&cycle(4).unwrap()).unwrap();
    if !(f.certified && f.factors.len() == 1 && iso(&f.factors[0].0, &k2) && f.factors[0].1 == 2) {
        failures.push("C4 is not K2 box K2".into());
    }
    for n in [3, 5, 6, 7, 8] {
        if !is_cartesian_prime(&cycle(n).unwrap()).unwrap() {
            failures.push(format!("C{n} not prime"));
        }
    }
    let cube = cartesian_power(&k2, 3).unwrap().0;
    let f = cartesian_prime_factorization(&cube).unwrap();
    if !(f.certified && f.factors.len() == 1 && iso(&f.factors[0].0, &k2) && f.factors[0].1 == 3) {
        failures.push("Q3 is not K2^3".into());
    }

    let mut corpus = enumerate_up_to(7, EnumerateOptions::connected()).unwrap();
    corpus.extend(enumerate_graphs_uncapped(8, EnumerateOptions::connected()));
    let disagreements: Vec<String> = corpus
        .par_iter()
        .flat_map_iter(|g| {
            let n = g.order();
            (2..n).filter(move |d| n % d == 0).filter_map(move |d| {
                let found = direct_factor_search(g, d).unwrap();
                let sound = found.as_ref().is_none_or(|dec| dec.verify(g));
                (found.is_some() != direct_factor_exhaustive(g, d) || !sound).then(|| format!("{:?} d={d}", g.edges()))
            })
        })
        .collect();
    failures.extend(disagreements);

    let c6 = cycle(6).unwrap();
    let c3 = cycle(3).unwrap();
    if !direct_factors_of_order(&c6, 3).unwrap().contains(&canonical_form(&c3)) {
        failures.push("general direct search misses C6 = K2 x C3".into());
    }
    match has_cycle_direct_factor(&c6, 3).unwrap() {
        Some(d) if iso(&d.left_factor, &k2) && iso(&d.right_factor, &c3) => {}
        _ => failures.push("cycle search misses C6 = K2 x C3".into()),
    }
    conclude(
        9,
        "Cartesian and direct factorization",
        Duration::from_secs(600),
        start,
        &failures,
        &format!(
            "direct search agrees with the oracle on {} connected graphs up to 8 vertices",
            corpus.len()
        ),
    );
}

#[test]
fn criterion_10_stability_deciders_agree() {
    let start = Instant::now();
    let graphs = enumerate_up_to(6, EnumerateOptions::connected()).unwrap();
    let reports: Vec<_> = graphs.par_iter().map(|g| (g, is_stable_graph(g).unwrap())).collect();
    let mut failures: Vec<String> = reports
        .iter()
        .filter(|(_, r)| !r.checks.consistent())
        .map(|(g, r)| format!("{:?}: {:?}", g.edges(), r.checks))
        .collect();
    let with_tfa = reports.iter().filter(|(_, r)| r.checks.tfa.is_some()).count();
    for n in 3..=12 {
        if is_stable_graph(&cycle(n).unwrap()).unwrap().is_stable() != (n % 2 == 1) {
            failures.push(format!("C{n} stability"));
        }
    }
    conclude(
        10,
        "mixer scan, order compare and TFA agree",
        Duration::from_secs(600),
        start,
        &failures,
        &format!(
            "{} graphs, {} with the TFA check; C_n stable iff n odd",
            graphs.len(),
            with_tfa
        ),
    );
}

#[test]
fn criterion_11_conjecture_sweep() {
    let start = Instant::now();
    let r = search_conjecture("cycles:10,small:6").unwrap();
    let mut failures = claim_failures(&r);
    for case in &r.cases {
        if case.outcome == Outcome::Finding && !case.witness.as_ref().is_some_and(|w| w.recheck()) {
            failures.push(format!("finding without re-checkable witness: {}", case.instance.label));
        }
    }
    conclude(
        11,
        "stable(G, S) iff stable(G) sweep",
        Duration::from_secs(1800),
        start,
        &failures,
        &format!(
            "{} pairs agree, {} trivial pairs skipped, {} findings",
            r.summary.pass, r.summary.skipped, r.summary.finding
        ),
    );
}
