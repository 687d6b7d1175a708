//! Two-fold automorphisms.
//!
//! `TFA(g)` is computed as the subgroup of `Aut(g × K₂)` that fixes the block
//! `V × {0}` setwise. With the row-major index, `(v, i)` is `2v + i`, so a block
//! preserving permutation `p` decodes to `α(v) = p(2v)/2` and `β(v) = p(2v+1)/2`.

use itertools::Itertools;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::factor::coprime_to_components;
use crate::graph::{complete, Graph};
use crate::group::PermGroup;
use crate::perm::Permutation;
use crate::products::{direct_product, ProductIndex};
use crate::search::automorphism_group_colored;
use crate::skeleton::cartesian_skeleton;

/// A pair `(α, β)` with `(s,t)` an arc iff `(s^α, t^β)` is an arc.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct TfaPair {
    pub alpha: Permutation,
    pub beta: Permutation,
}

impl TfaPair {
    pub fn diagonal(a: Permutation) -> TfaPair {
        TfaPair {
            alpha: a.clone(),
            beta: a,
        }
    }

    pub fn is_diagonal(&self) -> bool {
        self.alpha == self.beta
    }

    /// `(α₁α₂, β₁β₂)`
    pub fn compose(&self, other: &TfaPair) -> Result<TfaPair> {
        Ok(TfaPair {
            alpha: self.alpha.compose(&other.alpha)?,
            beta: self.beta.compose(&other.beta)?,
        })
    }

    /// The permutation of `V × {0,1}` this pair induces on `g × K₂`.
    pub fn to_double_cover(&self) -> Permutation {
        let n = self.alpha.degree();
        let idx = ProductIndex::new(n, 2);
        let images = (0..2 * n)
            .map(|x| {
                let (v, i) = idx.decode(x);
                let w = if i == 0 {
                    self.alpha.apply(v)
                } else {
                    self.beta.apply(v)
                };
                idx.encode(w, i)
            })
            .collect();
        Permutation::from_images_unchecked(images)
    }

    fn from_double_cover(p: &Permutation) -> TfaPair {
        let n = p.degree() / 2;
        let alpha = (0..n).map(|v| p.apply(2 * v) / 2).collect();
        let beta = (0..n).map(|v| p.apply(2 * v + 1) / 2).collect();
        TfaPair {
            alpha: Permutation::from_images_unchecked(alpha),
            beta: Permutation::from_images_unchecked(beta),
        }
    }
}

/// Checks the arc condition over all ordered pairs, loops included.
pub fn is_tfa(g: &Graph, alpha: &Permutation, beta: &Permutation) -> bool {
    let n = g.order();
    alpha.degree() == n
        && beta.degree() == n
        && (0..n).all(|s| (0..n).all(|t| g.has_edge(s, t) == g.has_edge(alpha.apply(s), beta.apply(t))))
}

/// `TFA(g)`, held as the block stabilizer inside `Aut(g × K₂)`.
#[derive(Debug, Clone)]
pub struct TfaGroup {
    n: usize,
    stabilizer: PermGroup,
}

impl TfaGroup {
    pub fn order(&self) -> u128 {
        self.stabilizer.order()
    }

    pub fn degree(&self) -> usize {
        self.n
    }

    pub fn generators(&self) -> Vec<TfaPair> {
        self.stabilizer
            .generators()
            .iter()
            .map(TfaPair::from_double_cover)
            .collect()
    }

    /// The stabilizer of `V × {0}` in `Aut(g × K₂)`, acting on `2n` points.
    pub fn as_double_cover_group(&self) -> &PermGroup {
        &self.stabilizer
    }

    pub fn contains(&self, pair: &TfaPair) -> bool {
        pair.alpha.degree() == self.n
            && pair.beta.degree() == self.n
            && self.stabilizer.contains(&pair.to_double_cover())
    }

    /// Every element, refusing when the order exceeds `cap`.
    pub fn elements(&self, cap: u128) -> Result<impl Iterator<Item = TfaPair>> {
        Ok(self.stabilizer.elements(cap)?.map(|p| TfaPair::from_double_cover(&p)))
    }
}

pub fn tfa_group(g: &Graph) -> Result<TfaGroup> {
    let n = g.order();
    if n == 0 {
        return Err(Error::invalid("TFA of the empty graph"));
    }
    let (cover, _) = direct_product(g, &complete(2)?)?;
    let colors: Vec<usize> = (0..2 * n).map(|x| x % 2).collect();
    Ok(TfaGroup {
        n,
        stabilizer: automorphism_group_colored(&cover, &colors),
    })
}

/// A TF-automorphism with `α ≠ β`. The group is diagonal iff all generators are.
pub fn has_nondiagonal_tfa(g: &Graph) -> Result<Option<TfaPair>> {
    Ok(tfa_group(g)?.generators().into_iter().find(|p| !p.is_diagonal()))
}

/// Counts TF-automorphisms by testing every pair in `Sym(V)²`.
pub fn tfa_count_exhaustive(g: &Graph) -> u128 {
    let n = g.order();
    let perms: Vec<Permutation> = (0..n).permutations(n).map(Permutation::from_images_unchecked).collect();
    perms
        .iter()
        .map(|a| perms.iter().filter(|b| is_tfa(g, a, b)).count() as u128)
        .sum()
}

/// The six permutations that split a TF-automorphism of `g × h` along the parts
/// `U`, `W` of `h`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "camelCase")]
pub struct TfaDecomposition {
    pub alpha_plus: Permutation,
    pub alpha_minus: Permutation,
    pub beta_plus: Permutation,
    pub beta_minus: Permutation,
    pub alpha0: Permutation,
    pub beta0: Permutation,
}

fn hypothesis(ok: bool, name: &str) -> Result<()> {
    if ok {
        Ok(())
    } else {
        Err(Error::Hypothesis(name.to_string()))
    }
}

/// Checks the hypotheses under which every TF-automorphism of `g × h` splits.
pub fn check_split_hypotheses(g: &Graph, h: &Graph) -> Result<()> {
    hypothesis(g.is_connected(), "left graph connected")?;
    hypothesis(g.is_twin_free(), "left graph twin-free")?;
    hypothesis(g.is_bipartite().is_none(), "left graph non-bipartite")?;
    hypothesis(h.is_connected(), "right graph connected")?;
    hypothesis(h.is_twin_free(), "right graph twin-free")?;
    hypothesis(h.is_bipartite().is_some(), "right graph bipartite")?;
    hypothesis(
        crate::stability::part_swapping_automorphism(h).is_some(),
        "right graph has a part-swapping automorphism",
    )?;
    hypothesis(
        coprime_to_components(&cartesian_skeleton(g), &cartesian_skeleton(h))?,
        "left skeleton Cartesian-coprime to each right skeleton component",
    )
}

/// Reads `α₊, α₋, α₀, β₊, β₋, β₀` off a TF-automorphism of `g × h` and confirms
/// `α|_{V×U} = (α₊, α₀)`, `α|_{V×W} = (α₋, α₀)`, `β|_{V×U} = (β₊, β₀)`,
/// `β|_{V×W} = (β₋, β₀)`, with `(α₊, β₋)`, `(α₋, β₊)` in `TFA(g)` and
/// `(α₀, β₀)` in `TFA(h)`. `None` means no such split exists.
pub fn tfa_decompose(g: &Graph, h: &Graph, pair: &TfaPair) -> Result<Option<TfaDecomposition>> {
    check_split_hypotheses(g, h)?;
    let parts = h.is_bipartite().expect("checked bipartite");
    let idx = ProductIndex::new(g.order(), h.order());
    if pair.alpha.degree() != idx.size() || pair.beta.degree() != idx.size() {
        return Err(Error::DegreeMismatch {
            expected: idx.size(),
            found: pair.alpha.degree(),
        });
    }
    let (u0, w0) = (parts.part_u[0], parts.part_w[0]);
    let row_map = |p: &Permutation, i: usize| -> Vec<usize> {
        (0..idx.n_left)
            .map(|s| idx.decode(p.apply(idx.encode(s, i))).0)
            .collect()
    };
    let col_map = |p: &Permutation| -> Vec<usize> {
        (0..idx.n_right)
            .map(|i| idx.decode(p.apply(idx.encode(0, i))).1)
            .collect()
    };
    let parts_of = |v: Vec<usize>| Permutation::new(v).ok();
    let (Some(ap), Some(am), Some(bp), Some(bm), Some(a0), Some(b0)) = (
        parts_of(row_map(&pair.alpha, u0)),
        parts_of(row_map(&pair.alpha, w0)),
        parts_of(row_map(&pair.beta, u0)),
        parts_of(row_map(&pair.beta, w0)),
        parts_of(col_map(&pair.alpha)),
        parts_of(col_map(&pair.beta)),
    ) else {
        return Ok(None);
    };
    let matches = |p: &Permutation, plus: &Permutation, minus: &Permutation, zero: &Permutation| {
        (0..idx.n_left).all(|s| {
            (0..idx.n_right).all(|i| {
                let left = if parts.contains_u(i) { plus } else { minus };
                p.apply(idx.encode(s, i)) == idx.encode(left.apply(s), zero.apply(i))
            })
        })
    };
    let ok = matches(&pair.alpha, &ap, &am, &a0)
        && matches(&pair.beta, &bp, &bm, &b0)
        && is_tfa(g, &ap, &bm)
        && is_tfa(g, &am, &bp)
        && is_tfa(h, &a0, &b0);
    Ok(ok.then_some(TfaDecomposition {
        alpha_plus: ap,
        alpha_minus: am,
        beta_plus: bp,
        beta_minus: bm,
        alpha0: a0,
        beta0: b0,
    }))
}
