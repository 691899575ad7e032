//! Noetherian-operator representations of primary polynomial ideals.
//!
//! A primary ideal can be described by its radical together with a finite
//! set of differential operators encoding the multiplicity structure. This
//! crate computes such operator sets symbolically (Macaulay matrices over
//! residue fields) and numerically (specialization at witness points
//! followed by rational-function interpolation), and provides the
//! probabilistic ideal-membership test the representation enables.

pub mod driver;
pub mod dualspace;
pub mod error;
pub mod frontend;
pub mod groebner;
pub mod linalg;
pub mod numericops;
pub mod polyring;
pub mod scalars;

pub use error::{Error, Result};
