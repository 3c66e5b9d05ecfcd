//! Exact push-out and pull-back amalgamation for finite Boolean algebras and
//! finite-dimensional spaces with polytopal norms.
//!
//! ```
//! use amalgam::boolean::{pushout, DualSurjection, FiniteBoolAlg};
//!
//! let r = FiniteBoolAlg::new(["r1", "r2"])?;
//! let s = FiniteBoolAlg::new(["s1", "s2", "s3"])?;
//! let a = FiniteBoolAlg::new(["a1", "a2", "a3"])?;
//! let u = DualSurjection::from_labels(r.clone(), s, [("s1", "r1"), ("s2", "r2"), ("s3", "r2")])?;
//! let v = DualSurjection::from_labels(r, a, [("a1", "r1"), ("a2", "r1"), ("a3", "r2")])?;
//! let sq = pushout(&u, &v)?;
//! assert_eq!(sq.b().atoms(), ["(s1,a1)", "(s1,a2)", "(s2,a3)", "(s3,a3)"]);
//! assert!(sq.is_pushout_diagram());
//! # Ok::<(), amalgam::Error>(())
//! ```

pub mod banach;
pub mod boolean;
pub mod cli;
pub mod error;
pub mod geometry;
pub mod io;
pub mod stone;
pub mod suites;
pub mod tower;

pub use error::{Error, Result};
