//! Bruhat and Ekedahl-Oort stratification atlases for PEL-type root data.
//!
//! Given a product of classical Dynkin diagrams, a Frobenius diagram
//! automorphism and a minuscule cocharacter (through its pairings with the
//! simple roots), [`atlas::build_atlas`] assembles the index set of Bruhat
//! strata, their Galois orbits, dimensions, closure relations and
//! Ekedahl-Oort fibers. Every formula has a brute-force counterpart in
//! [`oracle`].
//!
//! ```
//! use bruhat_strata::{build_atlas, io::preset, oracle::verify_atlas};
//!
//! let atlas = build_atlas(&preset("gu:1,2:inert")?)?;
//! assert!(!atlas.mu_ordinary.verdict());
//! assert_eq!(atlas.degree, 2);
//! assert!(verify_atlas(&atlas)?.all_passed());
//! # Ok::<(), bruhat_strata::Error>(())
//! ```

pub mod atlas;
pub mod cli;
pub mod coxeter;
pub mod error;
pub mod galois;
pub mod io;
pub mod oracle;
pub mod parabolic;
pub mod root_data;

pub use atlas::{build_atlas, Atlas, CocharSpec, PelCase, StratumRecord};
pub use coxeter::{Side, TypeSubset, WeylElement, WeylGroup};
pub use error::{Error, Result};
pub use root_data::{DiagramAutomorphism, DynkinSpec};
