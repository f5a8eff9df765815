//! Finite category theory: the simplex category, finite and finitely
//! presented categories, truncated simplicial sets, nerves, the homotopy
//! category functor and colimits of categories.

pub mod colimit;
pub mod error;
pub mod exec;
pub mod fincat;
pub mod hofunctor;
pub mod nerve;
pub mod quiverkit;
pub mod report;
pub mod rewrite;
pub mod simplex;
pub mod sset;

pub use error::{Error, Result};
pub use exec::Exec;
pub use report::Verdict;
