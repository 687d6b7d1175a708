//! Stability of graphs and graph pairs under the direct product.
//!
//! The crate decides whether `Aut(Γ × Σ)` is exactly `Aut(Γ) × Aut(Σ)`, computes
//! Cartesian skeletons and two-fold automorphism groups, factorizes graphs under
//! the Cartesian and direct products, and runs a verification harness over small
//! graph corpora.

mod bits;

pub mod enumerate;
pub mod error;
pub mod factor;
pub mod graph;
pub mod group;
pub mod io;
pub mod perm;
pub mod products;
pub mod report;
pub mod search;
pub mod skeleton;
pub mod stability;
pub mod tfa;
pub mod verify;

pub use error::{Error, Result};
pub use graph::{Bipartition, Graph};
pub use group::PermGroup;
pub use perm::Permutation;
pub use products::ProductIndex;
