//! Computable sofically presented dynamical systems.
//!
//! Sofic shifts and sofic relations over ℕ and ℤ are stored as essential
//! labeled graphs; every decision procedure reduces to finite-word regular
//! language questions on their block languages.
//!
//! Modules:
//! - [`automata`]: finite-word automata kernel.
//! - [`symbolic`]: sofic shifts, sofic relations and their decision procedures.
//! - [`metric`]: graph systems, certified distance brackets, dimension bound.
//! - [`toral`]: quadratic fields, carry automata and toral kernels.
//! - [`beta`]: β-shifts, β-kernels and their classification.
//! - [`autospace`]: automatic simplicial complexes and suspensions.

pub mod automata;
pub mod beta;
pub mod error;
pub mod metric;
pub mod symbolic;
pub mod toral;
pub mod autospace;

pub use error::{Error, Result};
