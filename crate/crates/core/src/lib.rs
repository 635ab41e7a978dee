//! Left-invariant Hermitian geometry on compact Lie groups.
//!
//! Complex structures come from the Samelson construction on a maximal torus
//! and a choice of positive roots. On top of that the crate computes the
//! invariant Dolbeault complex, the Levi-Civita, Chern, Bismut and Weyl
//! connections, their Ricci forms, the Clifford module `Λ^{0,•}` and the
//! Dirac-type operator `√2(∂̄ + ∂̄*)`, and checks the identities relating them.
//!
//! ```
//! use hermlie::cli::presets;
//! use hermlie::dolbeault;
//!
//! let g = presets::build("su2xu1").unwrap();
//! let h = dolbeault::hodge_numbers(&g.alg, &g.frame).unwrap();
//! assert_eq!(h.numbers, vec![1, 1, 0]);
//! ```

pub mod cli;
pub mod clifford;
pub mod dolbeault;
pub mod error;
pub mod hermitian;
pub mod liealg;
pub mod linalg;
pub mod multilinear;
pub mod report;

pub use error::{Error, Result};
