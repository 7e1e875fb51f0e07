//! Power sums of Hermite roots computed by several independent exact routes,
//! the lattice-path combinatorics behind their leading coefficients, and the
//! numerical side: Hermite roots, Wigner ensembles and the semicircle law.

pub mod akl;
pub mod error;
pub mod exact;
pub mod hermite;
pub mod lattice;
pub mod moments;
pub mod series_analysis;
pub mod spectra;
pub mod verify;
pub mod wigner;

pub use error::{Error, Result};
