//! Exact heights over the rationals and rational function fields, Weil
//! functions, very-large divisors on projective space, finitely generated
//! domains and their specializations, and a small unit-equation solver.
//!
//! The algebra is generic over [`scalar::Field`]; the concrete coefficient
//! types used throughout are re-exported here.

pub mod error;
pub mod fg_domain;
pub mod divisor;
pub mod exact;
pub mod heights_ff;
pub mod heights_nf;
pub mod scalar;
pub mod specialization;
pub mod subspace;
pub mod unit_eq;
pub mod wire;

pub use error::{Error, Result};
pub use exact::{Frac, MPoly, NfElem, UPoly};
pub use scalar::{Field, Int, Rat};

pub type QPoly = UPoly<Rat>;
