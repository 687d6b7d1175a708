//! Verification harness: each claim is a pure check of one instance, so a case
//! read back from JSON can be re-run on its own.

use std::collections::BTreeMap;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use serde_json::json;

use crate::enumerate::{enumerate_graphs, enumerate_up_to, EnumerateOptions};
use crate::error::{Error, Result};
use crate::factor::{are_direct_coprime, cartesian_prime_factorization, is_cartesian_prime};
use crate::graph::{circulant, complete, cycle, Graph};
use crate::group::{element_cap, PermGroup};
use crate::perm::Permutation;
use crate::products::{cartesian_product, direct_product, is_col_mixer, is_componentwise, is_row_mixer, ProductIndex};
use crate::report::{Verdict, Witness, SCHEMA_VERSION};
use crate::search::{are_isomorphic, automorphism_count, automorphism_group};
use crate::skeleton::{boolean_square, cartesian_skeleton};
use crate::stability::{is_nontrivial_pair, is_nontrivially_unstable, is_stable_graph, is_stable_pair};
use crate::tfa::{check_split_hypotheses, tfa_count_exhaustive, tfa_group};

/// Claims the harness knows how to check.
pub const CLAIMS: &[&str] = &[
    "skeleton-cycles",
    "tfa-stabilizer",
    "counting-identities",
    "odd-cycle-pairs",
    "even-cycle-pairs",
    "explicit-tau",
    "part-fixing-adjustment",
    "mixer-equivalence",
    "conjecture-sweep",
];

/// Largest graph the exhaustive TF-automorphism count accepts.
pub const TFA_ORACLE_MAX: usize = 5;

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "outcome", rename_all = "lowercase")]
pub enum Outcome {
    Pass,
    Fail,
    Skipped {
        reason: String,
    },
    /// A counterexample to a conjecture rather than to a proved claim.
    Finding,
}

impl Outcome {
    fn skipped(reason: impl Into<String>) -> Outcome {
        Outcome::Skipped { reason: reason.into() }
    }

    fn from_pass(pass: bool) -> Outcome {
        if pass {
            Outcome::Pass
        } else {
            Outcome::Fail
        }
    }
}

/// The graphs and parameters a single check runs on.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Instance {
    pub label: String,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub graphs: Vec<Graph>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub n: Option<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub variant: Option<String>,
}

impl Instance {
    fn graphs(label: impl Into<String>, graphs: Vec<Graph>) -> Instance {
        Instance {
            label: label.into(),
            graphs,
            n: None,
            variant: None,
        }
    }

    fn with_n(mut self, n: usize) -> Instance {
        self.n = Some(n);
        self
    }

    fn with_variant(mut self, v: &str) -> Instance {
        self.variant = Some(v.to_string());
        self
    }

    fn graph(&self, i: usize) -> Result<&Graph> {
        self.graphs
            .get(i)
            .ok_or_else(|| Error::invalid(format!("instance {:?} lacks graph {i}", self.label)))
    }

    fn param(&self) -> Result<usize> {
        self.n
            .ok_or_else(|| Error::invalid(format!("instance {:?} lacks parameter n", self.label)))
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "camelCase")]
pub struct VerificationCase {
    pub claim_id: String,
    pub instance: Instance,
    #[serde(flatten)]
    pub outcome: Outcome,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub witness: Option<Witness>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub details: Option<serde_json::Value>,
}

impl VerificationCase {
    /// Runs the case's check again and confirms the same outcome, and that any
    /// attached witness still verifies.
    pub fn recheck(&self) -> Result<bool> {
        let again = run_case(&self.claim_id, &self.instance)?;
        Ok(again.outcome == self.outcome && self.witness.as_ref().is_none_or(|w| w.recheck()))
    }
}

struct Checked {
    outcome: Outcome,
    witness: Option<Witness>,
    details: Option<serde_json::Value>,
}

impl Checked {
    fn plain(outcome: Outcome) -> Checked {
        Checked {
            outcome,
            witness: None,
            details: None,
        }
    }

    fn with_details(outcome: Outcome, details: serde_json::Value) -> Checked {
        Checked {
            outcome,
            witness: None,
            details: Some(details),
        }
    }
}

/// Runs one claim on one instance.
pub fn run_case(claim_id: &str, instance: &Instance) -> Result<VerificationCase> {
    let checked = match claim_id {
        "skeleton-cycles" => check_skeleton_cycle(instance)?,
        "tfa-stabilizer" => check_tfa_stabilizer(instance)?,
        "counting-identities" => check_counting_identity(instance)?,
        "odd-cycle-pairs" => check_odd_cycle_pair(instance)?,
        "even-cycle-pairs" => check_even_cycle_pair(instance)?,
        "explicit-tau" => check_explicit_tau(instance)?,
        "part-fixing-adjustment" => check_part_fixing(instance)?,
        "mixer-equivalence" => check_mixer_equivalence(instance)?,
        "conjecture-sweep" => check_conjecture_pair(instance)?,
        other => return Err(Error::invalid(format!("unknown claim {other:?}"))),
    };
    Ok(VerificationCase {
        claim_id: claim_id.to_string(),
        instance: instance.clone(),
        outcome: checked.outcome,
        witness: checked.witness,
        details: checked.details,
    })
}

/// Runs every instance in parallel; results keep the input order.
pub fn run_all(claim_id: &str, instances: &[Instance]) -> Result<Vec<VerificationCase>> {
    instances.par_iter().map(|i| run_case(claim_id, i)).collect()
}

// ---- skeleton of cycles ----

pub fn skeleton_cycle_instances(n_max: usize) -> Result<Vec<Instance>> {
    if n_max > 50 {
        return Err(Error::CapExceeded {
            what: "skeleton cycle length",
            value: n_max as u128,
            limit: 50,
        });
    }
    Ok((3..=n_max)
        .map(|n| Instance::graphs(format!("C{n}"), vec![]).with_n(n))
        .collect())
}

/// `C_n` for odd `n`, two copies of `C_{n/2}` for even `n`; at `n = 4` the
/// halves are single edges.
pub fn expected_cycle_skeleton(n: usize) -> Result<Graph> {
    if n % 2 == 1 {
        return cycle(n);
    }
    let half = if n == 4 { complete(2)? } else { cycle(n / 2)? };
    Ok(half.disjoint_union(&half))
}

fn check_skeleton_cycle(inst: &Instance) -> Result<Checked> {
    let n = inst.param()?;
    let c = cycle(n)?;
    let s = cartesian_skeleton(&c);
    let pass = s == boolean_square(&c) && are_isomorphic(&s, &expected_cycle_skeleton(n)?).is_some();
    Ok(Checked::with_details(
        Outcome::from_pass(pass),
        json!({ "components": s.components().len(), "edges": s.edge_count() }),
    ))
}

// ---- TFA as a block stabilizer ----

pub fn tfa_stabilizer_instances(n_max: usize) -> Result<Vec<Instance>> {
    let n_max = n_max.min(TFA_ORACLE_MAX);
    let opts = EnumerateOptions {
        connected: true,
        loops: true,
        ..Default::default()
    };
    Ok(enumerate_up_to(n_max, opts)?
        .into_iter()
        .enumerate()
        .map(|(k, g)| Instance::graphs(format!("connected#{k} n={}", g.order()), vec![g]))
        .collect())
}

fn check_tfa_stabilizer(inst: &Instance) -> Result<Checked> {
    let g = inst.graph(0)?;
    if g.order() > TFA_ORACLE_MAX {
        return Ok(Checked::plain(Outcome::skipped("oracle bound: at most 5 vertices")));
    }
    let group = tfa_group(g)?.order();
    let brute = tfa_count_exhaustive(g);
    Ok(Checked::with_details(
        Outcome::from_pass(group == brute),
        json!({ "stabilizerOrder": group.to_string(), "pairCount": brute.to_string() }),
    ))
}

// ---- counting identities ----

pub fn counting_instances() -> Result<Vec<Instance>> {
    let pairs = [
        ("K3,K2", complete(3)?, complete(2)?),
        ("C5,C6", cycle(5)?, cycle(6)?),
        ("C7,C6", cycle(7)?, cycle(6)?),
        ("K3,C6", complete(3)?, cycle(6)?),
    ];
    let mut out = Vec::new();
    for (label, g, h) in pairs {
        for variant in ["tfa", "aut"] {
            out.push(Instance::graphs(label, vec![g.clone(), h.clone()]).with_variant(variant));
        }
    }
    Ok(out)
}

/// First violated hypothesis for the TFA splitting argument, by name.
fn counting_hypothesis_failure(g: &Graph, h: &Graph) -> Result<Option<String>> {
    match check_split_hypotheses(g, h) {
        Err(Error::Hypothesis(name)) => return Ok(Some(name)),
        other => other?,
    }
    Ok((!is_stable_graph(g)?.is_stable()).then(|| "left graph stable".to_string()))
}

fn check_counting_identity(inst: &Instance) -> Result<Checked> {
    let (g, h) = (inst.graph(0)?, inst.graph(1)?);
    if let Some(name) = counting_hypothesis_failure(g, h)? {
        return Ok(Checked::plain(Outcome::skipped(name)));
    }
    let aut_g = automorphism_count(g);
    let (gh, _) = direct_product(g, h)?;
    let k2 = complete(2)?;
    let (lhs, rhs) = match inst.variant.as_deref() {
        Some("tfa") => (aut_g * aut_g * tfa_group(h)?.order(), tfa_group(&gh)?.order()),
        Some("aut") => (
            aut_g * aut_g * automorphism_count(&direct_product(h, &k2)?.0),
            automorphism_count(&direct_product(&gh, &k2)?.0),
        ),
        other => return Err(Error::invalid(format!("unknown identity {other:?}"))),
    };
    let singleton = cartesian_skeleton(h).components().iter().any(|c| c.len() == 1);
    Ok(Checked::with_details(
        Outcome::from_pass(lhs == rhs),
        json!({
            "lhs": lhs.to_string(),
            "rhs": rhs.to_string(),
            "singletonSkeletonComponentsTreatedAsUnits": singleton,
        }),
    ))
}

// ---- cycle pairs ----

/// Connected bipartite graphs on at most `n_max` vertices, paired with `C_n` for each `n`.
pub fn odd_cycle_instances(cycle_lengths: &[usize], n_max: usize) -> Result<Vec<Instance>> {
    let opts = EnumerateOptions {
        connected: true,
        bipartite: Some(true),
        ..Default::default()
    };
    let corpus: Vec<Graph> = (2..=n_max)
        .map(|n| enumerate_graphs(n, opts))
        .collect::<Result<Vec<_>>>()?
        .concat();
    let mut out = Vec::new();
    for &n in cycle_lengths {
        if n % 2 == 0 || n < 3 {
            return Err(Error::invalid(format!("odd cycle length expected, got {n}")));
        }
        for (k, g) in corpus.iter().enumerate() {
            out.push(Instance::graphs(format!("bipartite#{k} n={} x C{n}", g.order()), vec![g.clone()]).with_n(n));
        }
    }
    Ok(out)
}

fn check_odd_cycle_pair(inst: &Instance) -> Result<Checked> {
    let g = inst.graph(0)?;
    let c = cycle(inst.param()?)?;
    let nt = is_nontrivial_pair(g, &c)?;
    if !nt.nontrivial {
        return Ok(Checked::plain(Outcome::skipped(nt.reasons.join("; "))));
    }
    let r = is_stable_pair(g, &c)?;
    Ok(Checked {
        outcome: Outcome::from_pass(r.is_stable()),
        witness: r.witness,
        details: None,
    })
}

/// Connected twin-free non-bipartite graphs (loopless up to `n_max`, looped up
/// to five vertices), paired with `C_n` for each even `n`.
pub fn even_cycle_instances(cycle_lengths: &[usize], n_max: usize) -> Result<Vec<Instance>> {
    let loopless = EnumerateOptions {
        connected: true,
        twin_free: true,
        bipartite: Some(false),
        loops: false,
    };
    let looped = EnumerateOptions {
        loops: true,
        ..loopless
    };
    let mut corpus = enumerate_up_to(n_max, loopless)?;
    corpus.extend(
        enumerate_up_to(n_max.min(crate::enumerate::MAX_ORDER_LOOPS), looped)?
            .into_iter()
            .filter(|g| g.has_loops()),
    );
    let mut out = Vec::new();
    for &n in cycle_lengths {
        if n % 2 == 1 || n < 6 {
            return Err(Error::invalid(format!("even cycle length >= 6 expected, got {n}")));
        }
        for (k, g) in corpus.iter().enumerate() {
            out.push(Instance::graphs(format!("nonbipartite#{k} n={} x C{n}", g.order()), vec![g.clone()]).with_n(n));
        }
    }
    Ok(out)
}

fn check_even_cycle_pair(inst: &Instance) -> Result<Checked> {
    let g = inst.graph(0)?;
    let c = cycle(inst.param()?)?;
    let nt = is_nontrivial_pair(g, &c)?;
    let pair = is_stable_pair(g, &c)?;
    let lhs = nt.nontrivial && !pair.is_stable();
    let single = is_nontrivially_unstable(g)?;
    let coprime = are_direct_coprime(g, &c)?;
    let rhs = single && coprime;
    Ok(Checked {
        outcome: Outcome::from_pass(lhs == rhs),
        witness: pair.witness,
        details: Some(json!({
            "pairNontriviallyUnstable": lhs,
            "graphNontriviallyUnstable": single,
            "coprimeToCycle": coprime,
        })),
    })
}

// ---- explicit unexpected automorphism ----

/// `τ(u, i) = (5u + 4i mod 8, i)` on `Z₈ × Z_n`, row-major.
pub fn explicit_tau(n: usize) -> Result<Permutation> {
    if n % 2 == 1 {
        return Err(Error::invalid("tau needs an even cycle length"));
    }
    let idx = ProductIndex::new(8, n);
    Permutation::new(
        (0..8 * n)
            .map(|x| {
                let (u, i) = idx.decode(x);
                idx.encode((5 * u + 4 * i) % 8, i)
            })
            .collect(),
    )
}

pub fn tau_instances(n_max: usize) -> Vec<Instance> {
    (6..=n_max.min(20))
        .step_by(2)
        .map(|n| Instance::graphs(format!("Cay(Z8,{{1,2,6,7}}) x C{n}"), vec![]).with_n(n))
        .collect()
}

fn check_explicit_tau(inst: &Instance) -> Result<Checked> {
    let n = inst.param()?;
    if !(6..=20).contains(&n) {
        return Err(Error::invalid(format!("tau check needs 6 <= n <= 20, got {n}")));
    }
    let gam = circulant(8, &[1, 2])?;
    let (prod, idx) = direct_product(&gam, &cycle(n)?)?;
    let tau = explicit_tau(n)?;
    let automorphism = prod.is_automorphism(&tau);
    let row_mixer = is_row_mixer(&tau, &idx)?;
    let componentwise = is_componentwise(&tau, &idx)?.is_some();
    let images_ok = tau.apply(idx.encode(0, 0)) == idx.encode(0, 0) && tau.apply(idx.encode(0, 1)) == idx.encode(4, 1);
    let pass = automorphism && row_mixer && !componentwise && images_ok;
    Ok(Checked {
        outcome: Outcome::from_pass(pass),
        witness: (automorphism && row_mixer).then(|| Witness::RowMixer {
            left: gam,
            right: cycle(n).expect("n >= 6"),
            images: tau,
        }),
        details: Some(json!({
            "automorphism": automorphism,
            "rowMixer": row_mixer,
            "componentwise": componentwise,
            "pointImages": images_ok,
        })),
    })
}

// ---- part-fixing adjustment in S(g) □ S(h) ----

pub fn part_fixing_instances(samples: usize) -> Result<Vec<Instance>> {
    let pairs = [
        ("K3,K2", complete(3)?, complete(2)?),
        ("K3,C6", complete(3)?, cycle(6)?),
        ("C5,C6", cycle(5)?, cycle(6)?),
        ("C5,C8", cycle(5)?, cycle(8)?),
    ];
    Ok(pairs
        .into_iter()
        .map(|(l, g, h)| Instance::graphs(l, vec![g, h]).with_n(samples))
        .collect())
}

/// Up to `samples` elements spread evenly through the group's element order.
fn sample_elements(group: &PermGroup, samples: usize) -> Result<Vec<Permutation>> {
    let order = group.order();
    if order > element_cap() {
        let gens = group.generators();
        let mut out = vec![Permutation::identity(group.degree())];
        out.extend(gens.iter().cloned());
        out.extend(gens.iter().flat_map(|p| gens.iter().map(move |q| p.then(q))));
        out.truncate(samples.max(1));
        return Ok(out);
    }
    let step = (order / samples.max(1) as u128).max(1) as usize;
    Ok(group.elements(order)?.step_by(step).take(samples.max(1)).collect())
}

fn check_part_fixing(inst: &Instance) -> Result<Checked> {
    let (g, h) = (inst.graph(0)?, inst.graph(1)?);
    let samples = inst.n.unwrap_or(usize::MAX);
    let hyps = [
        (
            g.is_connected() && g.is_twin_free(),
            "left graph connected and twin-free",
        ),
        (g.is_bipartite().is_none(), "left graph non-bipartite"),
        (
            h.is_connected() && h.is_twin_free(),
            "right graph connected and twin-free",
        ),
        (h.is_bipartite().is_some(), "right graph bipartite"),
    ];
    if let Some((_, name)) = hyps.iter().find(|(ok, _)| !ok) {
        return Ok(Checked::plain(Outcome::skipped(*name)));
    }
    let parts = h.is_bipartite().expect("checked");
    let (sg, sh) = (cartesian_skeleton(g), cartesian_skeleton(h));
    let (box_, idx) = cartesian_product(&sg, &sh)?;
    let x_set = idx.right_slab(&parts.part_u);
    let aut_sh = automorphism_group(&sh);
    let candidates: Vec<Permutation> = aut_sh
        .elements(element_cap())?
        .filter(|s| s.is_identity() || (s.order() == 2 && !parts.contains_u(s.apply(parts.part_u[0]))))
        .collect();
    let id_g = Permutation::identity(g.order());
    let lifts: Vec<Permutation> = candidates
        .iter()
        .map(|s| idx.componentwise(&id_g, s))
        .collect::<Result<_>>()?;
    let taus = sample_elements(&automorphism_group(&box_), samples)?;
    let mut failures = Vec::new();
    for tau in &taus {
        let ok = lifts
            .iter()
            .any(|l| l.then(tau).stabilizes(&x_set) && tau.then(l).stabilizes(&x_set));
        if !ok {
            failures.push(tau.to_string());
        }
    }
    Ok(Checked::with_details(
        Outcome::from_pass(failures.is_empty()),
        json!({ "checked": taus.len(), "involutionCandidates": candidates.len(), "failures": failures }),
    ))
}

// ---- mixer equivalence on the part stabilizer ----

pub fn mixer_instances() -> Result<Vec<Instance>> {
    let pairs = [
        ("C5,C6", cycle(5)?, cycle(6)?),
        ("K4,C6", complete(4)?, cycle(6)?),
        ("K3,C6", complete(3)?, cycle(6)?),
        ("K3,C8", complete(3)?, cycle(8)?),
        ("C5,C8", cycle(5)?, cycle(8)?),
    ];
    Ok(pairs
        .into_iter()
        .map(|(l, g, h)| Instance::graphs(l, vec![g, h]))
        .collect())
}

fn mixer_hypothesis_failure(g: &Graph, h: &Graph) -> Result<Option<&'static str>> {
    if !(g.is_connected() && g.is_twin_free()) {
        return Ok(Some("left graph connected and twin-free"));
    }
    if !(h.is_connected() && h.is_twin_free()) {
        return Ok(Some("right graph connected and twin-free"));
    }
    let Some(parts) = h.is_bipartite() else {
        return Ok(Some("right graph bipartite"));
    };
    if parts.part_u.len() < 3 || parts.part_w.len() < 3 {
        return Ok(Some("both parts of the right graph have at least three vertices"));
    }
    if !is_stable_graph(g)?.is_stable() {
        return Ok(Some("left graph stable"));
    }
    let sg = cartesian_skeleton(g);
    let left_prime = sg.is_connected() && sg.order() >= 2 && is_cartesian_prime(&sg)?;
    let right_ok = {
        let sh = cartesian_skeleton(h);
        let bh = boolean_square(h);
        let mut ok = true;
        for comp in sh.components() {
            let sub = sh.induced_subgraph(&comp);
            ok &= sub.order() >= 2 && is_cartesian_prime(&sub)?;
        }
        ok && bh.components().iter().all(|c| {
            let sub = bh.induced_subgraph(c);
            sub.edge_count() != c.len() * (c.len() - 1) / 2
        })
    };
    if !left_prime && !right_ok {
        return Ok(Some(
            "left skeleton Cartesian-prime, or right skeleton components prime with no complete boolean-square component",
        ));
    }
    Ok(None)
}

/// `p` restricted to `V × part` breaks the partition `{V × {i} : i ∈ part}`.
fn restricted_col_mixer(p: &Permutation, idx: &ProductIndex, part: &[usize]) -> bool {
    part.iter().any(|&i| {
        let target = idx.decode(p.apply(idx.encode(0, i))).1;
        (1..idx.n_left).any(|u| idx.decode(p.apply(idx.encode(u, i))).1 != target)
    })
}

fn check_mixer_equivalence(inst: &Instance) -> Result<Checked> {
    let (g, h) = (inst.graph(0)?, inst.graph(1)?);
    if let Some(name) = mixer_hypothesis_failure(g, h)? {
        return Ok(Checked::plain(Outcome::skipped(name)));
    }
    let parts = h.is_bipartite().expect("checked");
    let (prod, idx) = direct_product(g, h)?;
    let stab = automorphism_group(&prod).setwise_stabilizer(&idx.right_slab(&parts.part_u))?;
    let mut tally: BTreeMap<&str, usize> = BTreeMap::new();
    let mut failures = Vec::new();
    for rho in stab.elements(element_cap())? {
        let a = is_row_mixer(&rho, &idx)?;
        let b = is_col_mixer(&rho, &idx)?;
        let c = restricted_col_mixer(&rho, &idx, &parts.part_u);
        let d = restricted_col_mixer(&rho, &idx, &parts.part_w);
        if a == b && b == c && c == d {
            *tally.entry(if a { "allTrue" } else { "allFalse" }).or_default() += 1;
        } else if failures.len() < 4 {
            failures.push(rho.to_string());
        }
    }
    Ok(Checked::with_details(
        Outcome::from_pass(failures.is_empty()),
        json!({ "stabilizerOrder": stab.order().to_string(), "tally": tally, "failures": failures }),
    ))
}

// ---- conjecture sweep ----

/// Builds `(Γ, Σ)` instances from a comma-separated corpus spec. Items:
/// `cycles:N` (cycle pairs up to length `N`), `small:K` (connected twin-free
/// graphs up to `K` vertices), `paper` (the circulant pair), `empty`.
pub fn conjecture_instances(spec: &str) -> Result<Vec<Instance>> {
    let mut out = Vec::new();
    for item in spec.split(',').map(str::trim).filter(|s| !s.is_empty()) {
        let (name, arg) = match item.split_once(':') {
            Some((n, a)) => (
                n,
                Some(
                    a.parse::<usize>()
                        .map_err(|_| Error::invalid(format!("bad corpus size in {item:?}")))?,
                ),
            ),
            None => (item, None),
        };
        match (name, arg) {
            ("cycles", Some(n_max)) => {
                for a in (3..=n_max).filter(|a| a % 2 == 1) {
                    for b in (4..=n_max).filter(|b| b % 2 == 0) {
                        out.push(Instance::graphs(format!("C{a},C{b}"), vec![cycle(a)?, cycle(b)?]));
                    }
                }
            }
            ("small", Some(k)) => {
                let base = EnumerateOptions {
                    connected: true,
                    twin_free: true,
                    ..Default::default()
                };
                let non_bip = enumerate_up_to(
                    k,
                    EnumerateOptions {
                        bipartite: Some(false),
                        ..base
                    },
                )?;
                let bip: Vec<Graph> = enumerate_up_to(
                    k,
                    EnumerateOptions {
                        bipartite: Some(true),
                        ..base
                    },
                )?
                .into_iter()
                .filter(|g| g.order() >= 2)
                .collect();
                for (i, g) in non_bip.iter().enumerate() {
                    for (j, h) in bip.iter().enumerate() {
                        out.push(Instance::graphs(
                            format!("nonbipartite#{i} n={}, bipartite#{j} n={}", g.order(), h.order()),
                            vec![g.clone(), h.clone()],
                        ));
                    }
                }
            }
            ("paper", None) => out.push(Instance::graphs(
                "Cay(Z8,{1,2,6,7}),C6",
                vec![circulant(8, &[1, 2])?, cycle(6)?],
            )),
            ("empty", None) => {}
            _ => return Err(Error::invalid(format!("unknown corpus item {item:?}"))),
        }
    }
    Ok(out)
}

fn check_conjecture_pair(inst: &Instance) -> Result<Checked> {
    let (g, h) = (inst.graph(0)?, inst.graph(1)?);
    let nt = is_nontrivial_pair(g, h)?;
    if !nt.nontrivial {
        return Ok(Checked::plain(Outcome::skipped(nt.reasons.join("; "))));
    }
    if nt.bipartite_side() != Some(1) {
        return Ok(Checked::plain(Outcome::skipped(
            "bipartite graph must be the second of the pair",
        )));
    }
    let pair = is_stable_pair(g, h)?;
    let single = is_stable_graph(g)?;
    let agree = pair.is_stable() == single.is_stable();
    Ok(Checked {
        outcome: if agree { Outcome::Pass } else { Outcome::Finding },
        witness: pair.witness.or(single.witness),
        details: Some(json!({
            "pair": pair.verdict,
            "graph": single.verdict,
            "orders": pair.orders,
        })),
    })
}

// ---- reports ----

#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct Summary {
    pub pass: usize,
    pub fail: usize,
    pub skipped: usize,
    pub finding: usize,
}

impl Summary {
    pub fn of(cases: &[VerificationCase]) -> Summary {
        let mut s = Summary::default();
        for c in cases {
            match c.outcome {
                Outcome::Pass => s.pass += 1,
                Outcome::Fail => s.fail += 1,
                Outcome::Skipped { .. } => s.skipped += 1,
                Outcome::Finding => s.finding += 1,
            }
        }
        s
    }

    pub fn all_clear(&self) -> bool {
        self.fail == 0 && self.finding == 0
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "camelCase")]
pub struct Report {
    pub schema_version: u32,
    pub claim_id: String,
    pub summary: Summary,
    pub cases: Vec<VerificationCase>,
}

impl Report {
    pub fn new(claim_id: &str, cases: Vec<VerificationCase>) -> Report {
        Report {
            schema_version: SCHEMA_VERSION,
            claim_id: claim_id.to_string(),
            summary: Summary::of(&cases),
            cases,
        }
    }
}

/// Default instances for a claim, scaled by `n_max` where it applies.
pub fn default_instances(claim_id: &str, n_max: Option<usize>) -> Result<Vec<Instance>> {
    match claim_id {
        "skeleton-cycles" => skeleton_cycle_instances(n_max.unwrap_or(30)),
        "tfa-stabilizer" => tfa_stabilizer_instances(n_max.unwrap_or(TFA_ORACLE_MAX)),
        "counting-identities" => counting_instances(),
        "odd-cycle-pairs" => odd_cycle_instances(&[3, 5], n_max.unwrap_or(7)),
        "even-cycle-pairs" => even_cycle_instances(&[6, 8], n_max.unwrap_or(7)),
        "explicit-tau" => Ok(tau_instances(n_max.unwrap_or(20))),
        "part-fixing-adjustment" => part_fixing_instances(n_max.unwrap_or(100_000)),
        "mixer-equivalence" => mixer_instances(),
        "conjecture-sweep" => {
            let k = n_max.unwrap_or(6);
            conjecture_instances(&format!("cycles:10,small:{k},paper"))
        }
        other => Err(Error::invalid(format!(
            "unknown claim {other:?}; known: {}",
            CLAIMS.join(", ")
        ))),
    }
}

/// Runs a claim over its default instances.
pub fn verify_claim(claim_id: &str, n_max: Option<usize>) -> Result<Report> {
    let instances = default_instances(claim_id, n_max)?;
    Ok(Report::new(claim_id, run_all(claim_id, &instances)?))
}

/// Runs the conjecture check over a corpus spec.
pub fn search_conjecture(spec: &str) -> Result<Report> {
    let instances = conjecture_instances(spec)?;
    Ok(Report::new(
        "conjecture-sweep",
        run_all("conjecture-sweep", &instances)?,
    ))
}

/// Cartesian factor multiset of `g` rendered for reports.
pub fn factor_summary(g: &Graph) -> Result<serde_json::Value> {
    let f = cartesian_prime_factorization(g)?;
    Ok(json!(f
        .factors
        .iter()
        .map(|(p, m)| json!({ "order": p.order(), "edges": p.edges(), "multiplicity": m }))
        .collect::<Vec<_>>()))
}

impl From<Verdict> for Outcome {
    fn from(v: Verdict) -> Outcome {
        Outcome::from_pass(v.is_stable())
    }
}
