//! Stability deciders for graphs and graph pairs.
//!
//! A pair is stable when `Aut(g × h)` equals the componentwise copy of
//! `Aut(g) × Aut(h)`. The primary decision scans generators of `Aut(g × h)`: a
//! group preserves a partition iff its generators do, so the group is
//! componentwise iff every generator is, and it is contained in
//! `Aut(g) × Aut(h)` iff each generator's components are automorphisms. The
//! order comparison `|Aut(g × h)| = |Aut(g)|·|Aut(h)|` is recorded alongside.

use serde::Serialize;

use crate::error::{Error, Result};
use crate::factor::are_direct_coprime;
use crate::graph::{complete, Graph};
use crate::perm::Permutation;
use crate::products::{direct_product, is_col_mixer, is_componentwise, is_row_mixer, ProductIndex};
use crate::report::{Verdict, Witness};
use crate::search::{automorphism_count, automorphism_group};
use crate::tfa::has_nondiagonal_tfa;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Method {
    MixerScan,
    OrderCompare,
    Tfa,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "camelCase")]
pub struct Orders {
    pub aut_product: u128,
    pub aut_left: u128,
    pub aut_right: u128,
}

/// Verdicts reached independently by each available method.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "camelCase")]
pub struct Checks {
    pub mixer_scan: Verdict,
    pub order_compare: Verdict,
    /// Present when non-diagonal TF-automorphisms characterize instability:
    /// connected graphs that are non-bipartite or have no part-swapping automorphism.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub tfa: Option<Verdict>,
}

impl Checks {
    pub fn consistent(&self) -> bool {
        self.mixer_scan == self.order_compare && self.tfa.is_none_or(|t| t == self.mixer_scan)
    }
}

#[derive(Debug, Clone, Serialize)]
#[serde(rename_all = "camelCase")]
pub struct StabilityReport {
    pub verdict: Verdict,
    pub method: Method,
    pub orders: Orders,
    pub checks: Checks,
    pub index: ProductIndex,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub witness: Option<Witness>,
}

impl StabilityReport {
    pub fn is_stable(&self) -> bool {
        self.verdict.is_stable()
    }
}

fn classify(g: &Graph, h: &Graph, p: &Permutation, idx: &ProductIndex) -> Option<Witness> {
    let (left, right, images) = (g.clone(), h.clone(), p.clone());
    if is_row_mixer(p, idx).ok()? {
        return Some(Witness::RowMixer { left, right, images });
    }
    if is_col_mixer(p, idx).ok()? {
        return Some(Witness::ColMixer { left, right, images });
    }
    let (a, b) = is_componentwise(p, idx).ok()??;
    if !g.is_automorphism(&a) || !h.is_automorphism(&b) {
        return Some(Witness::NonFactorComponentwise { left, right, images });
    }
    None
}

/// An unexpected automorphism among the generators, or failing that among
/// products of two generators.
fn find_unexpected(g: &Graph, h: &Graph, gens: &[Permutation], idx: &ProductIndex) -> Option<Witness> {
    gens.iter().find_map(|p| classify(g, h, p, idx)).or_else(|| {
        gens.iter()
            .flat_map(|p| gens.iter().map(move |q| p.then(q)))
            .find_map(|pq| classify(g, h, &pq, idx))
    })
}

/// Decides the pair `(g, h)` as given; no reordering.
pub fn is_stable_pair(g: &Graph, h: &Graph) -> Result<StabilityReport> {
    let (prod, idx) = direct_product(g, h)?;
    let aut = automorphism_group(&prod);
    let orders = Orders {
        aut_product: aut.order(),
        aut_left: automorphism_count(g),
        aut_right: automorphism_count(h),
    };
    let witness = find_unexpected(g, h, aut.generators(), &idx);
    let verdict = Verdict::from_stable(witness.is_none());
    Ok(StabilityReport {
        verdict,
        method: Method::MixerScan,
        orders,
        checks: Checks {
            mixer_scan: verdict,
            order_compare: Verdict::from_stable(orders.aut_product == orders.aut_left * orders.aut_right),
            tfa: None,
        },
        index: idx,
        witness,
    })
}

/// Stability of `g` in the single-graph sense: stability of `(g, K₂)`.
pub fn is_stable_graph(g: &Graph) -> Result<StabilityReport> {
    if g.order() == 0 {
        return Err(Error::invalid("stability of the empty graph"));
    }
    let mut report = is_stable_pair(g, &complete(2)?)?;
    if tfa_characterizes(g) {
        let nondiag = has_nondiagonal_tfa(g)?;
        report.checks.tfa = Some(Verdict::from_stable(nondiag.is_none()));
    }
    Ok(report)
}

/// Connected, and either non-bipartite or bipartite with no part-swapping automorphism.
fn tfa_characterizes(g: &Graph) -> bool {
    g.is_connected() && (g.is_bipartite().is_none() || part_swapping_automorphism(g).is_none())
}

/// For connected bipartite `g`, an automorphism exchanging the two parts.
/// Automorphisms preserve `{U, W}`, so one exists iff some generator swaps.
pub fn part_swapping_automorphism(g: &Graph) -> Option<Permutation> {
    if !g.is_connected() {
        return None;
    }
    let parts = g.is_bipartite()?;
    let u0 = parts.part_u[0];
    automorphism_group(g)
        .generators()
        .iter()
        .find(|p| !parts.contains_u(p.apply(u0)))
        .cloned()
}

/// Connected, non-bipartite, twin-free and unstable.
pub fn is_nontrivially_unstable(g: &Graph) -> Result<bool> {
    Ok(g.is_connected() && g.is_bipartite().is_none() && g.is_twin_free() && !is_stable_graph(g)?.is_stable())
}

/// Each clause of the nontrivial-pair definition, per side.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(rename_all = "camelCase")]
pub struct Nontriviality {
    pub connected: [bool; 2],
    pub twin_free: [bool; 2],
    pub bipartite: [bool; 2],
    pub coprime: bool,
    pub nontrivial: bool,
    pub reasons: Vec<String>,
}

impl Nontriviality {
    /// Index (0 or 1) of the bipartite side when exactly one side is bipartite.
    pub fn bipartite_side(&self) -> Option<usize> {
        match self.bipartite {
            [true, false] => Some(0),
            [false, true] => Some(1),
            _ => None,
        }
    }
}

/// Coprime, connected, twin-free, and exactly one side bipartite.
pub fn is_nontrivial_pair(g: &Graph, h: &Graph) -> Result<Nontriviality> {
    let connected = [g.is_connected(), h.is_connected()];
    let twin_free = [g.is_twin_free(), h.is_twin_free()];
    let bipartite = [g.is_bipartite().is_some(), h.is_bipartite().is_some()];
    let coprime = are_direct_coprime(g, h)?;
    let mut reasons = Vec::new();
    for (side, name) in ["left", "right"].iter().enumerate() {
        if !connected[side] {
            reasons.push(format!("{name} graph is disconnected"));
        }
        if !twin_free[side] {
            reasons.push(format!("{name} graph has twins"));
        }
    }
    if bipartite[0] == bipartite[1] {
        let both = if bipartite[0] { "both" } else { "neither" };
        reasons.push(format!("{both} graphs bipartite"));
    }
    if !coprime {
        reasons.push("graphs share a direct factor".to_string());
    }
    Ok(Nontriviality {
        connected,
        twin_free,
        bipartite,
        coprime,
        nontrivial: reasons.is_empty(),
        reasons,
    })
}
