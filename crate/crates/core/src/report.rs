//! Serializable verdicts and witnesses. Every witness carries the graphs it
//! talks about, so it can be re-checked from its JSON alone.

use serde::{Deserialize, Serialize};

use crate::graph::Graph;
use crate::perm::Permutation;
use crate::products::{direct_product, is_col_mixer, is_componentwise, is_row_mixer, ProductIndex};
use crate::tfa::is_tfa;

pub const SCHEMA_VERSION: u32 = 1;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Verdict {
    Stable,
    Unstable,
}

impl Verdict {
    pub fn from_stable(stable: bool) -> Verdict {
        if stable {
            Verdict::Stable
        } else {
            Verdict::Unstable
        }
    }

    pub fn is_stable(self) -> bool {
        self == Verdict::Stable
    }
}

/// Evidence of instability or of a failed claim.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "kebab-case")]
pub enum Witness {
    /// An automorphism of `left × right` that breaks the row partition.
    RowMixer {
        left: Graph,
        right: Graph,
        images: Permutation,
    },
    /// An automorphism of `left × right` that breaks the column partition.
    ColMixer {
        left: Graph,
        right: Graph,
        images: Permutation,
    },
    /// An automorphism `(a, b)` of `left × right` with `a ∉ Aut(left)` or `b ∉ Aut(right)`.
    NonFactorComponentwise {
        left: Graph,
        right: Graph,
        images: Permutation,
    },
    /// A TF-automorphism with `α ≠ β`.
    NondiagonalTfa {
        graph: Graph,
        alpha: Permutation,
        beta: Permutation,
    },
}

impl Witness {
    pub fn kind(&self) -> &'static str {
        match self {
            Witness::RowMixer { .. } => "row-mixer",
            Witness::ColMixer { .. } => "col-mixer",
            Witness::NonFactorComponentwise { .. } => "non-factor-componentwise",
            Witness::NondiagonalTfa { .. } => "nondiagonal-tfa",
        }
    }

    /// Re-runs the single check this witness asserts.
    pub fn recheck(&self) -> bool {
        match self {
            Witness::RowMixer { left, right, images } => {
                unexpected_automorphism(left, right, images, |p, idx| is_row_mixer(p, idx).unwrap_or(false))
            }
            Witness::ColMixer { left, right, images } => {
                unexpected_automorphism(left, right, images, |p, idx| is_col_mixer(p, idx).unwrap_or(false))
            }
            Witness::NonFactorComponentwise { left, right, images } => {
                unexpected_automorphism(left, right, images, |p, idx| match is_componentwise(p, idx) {
                    Ok(Some((a, b))) => !left.is_automorphism(&a) || !right.is_automorphism(&b),
                    _ => false,
                })
            }
            Witness::NondiagonalTfa { graph, alpha, beta } => alpha != beta && is_tfa(graph, alpha, beta),
        }
    }
}

fn unexpected_automorphism(
    left: &Graph,
    right: &Graph,
    p: &Permutation,
    shape: impl Fn(&Permutation, &ProductIndex) -> bool,
) -> bool {
    let Ok((prod, idx)) = direct_product(left, right) else {
        return false;
    };
    p.degree() == idx.size() && prod.is_automorphism(p) && shape(p, &idx)
}
