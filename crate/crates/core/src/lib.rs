//! Graded commutative algebra over quotients of polynomial rings: Groebner
//! bases, minimal free resolutions, Tor and Ext, depth, reflexivity and
//! Serre-type conditions, Hochster-Huneke graphs, and verification
//! pipelines for rigidity statements about tensor products.

pub mod caps;
pub mod error;
pub mod fault;
pub mod field;
pub mod fixtures;
pub mod groebner;
pub mod hilbert;
pub mod homology;
pub mod linalg;
pub mod matrix;
pub mod module;
pub mod monomial;
pub mod parse;
pub mod poly;
pub mod ring;
pub mod serre;
pub mod session;
pub mod suite;

pub use caps::Caps;
pub use error::{Error, Result};
pub use field::{Coeff, Field};
pub use monomial::{Monomial, MonomialOrder};
pub use matrix::Matrix;
pub use poly::{Poly, PolyRing};
pub use ring::{make_ring, PrimeFlag, PrimeHints, QuotientRing, RIdeal};

/// Name and version recorded in reports.
pub fn tool_version() -> String {
    format!("rigidity {}", env!("CARGO_PKG_VERSION"))
}
