//! Exact t-invariants of quaternionic line bundles over `(4k-1)`-manifolds,
//! the quadratic linking functions they determine, and the classification
//! arithmetic for 2-connected rational homology 7-spheres built on them.

pub mod charclass;
pub mod checks;
pub mod classify;
pub mod cli;
pub mod closedforms;
pub mod coboundary;
pub mod error;
pub mod exact;
pub mod exotic;
pub mod group;
pub mod homotopy;
pub mod matrix;
pub mod poly;
pub mod series;

pub use error::{Error, Result};
pub use exact::{a_const, qz_normalize, QmodZ, Rational};
