//! Chern class computations for first jet bundles of projective bundles
//! and hyperquadric fibrations, and the defect classification built on them.

pub mod anchor;
pub mod binomial;
pub mod chern;
pub mod chowring;
pub mod classify;
pub mod error;
pub mod hqf;
pub mod jet;

pub use error::{Error, Result};

/// Version reported by front ends as the engine version.
pub const VERSION: &str = env!("CARGO_PKG_VERSION");
