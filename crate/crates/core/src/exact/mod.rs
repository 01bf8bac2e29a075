//! Exact arithmetic substrate: polynomials over the rationals and number
//! fields, factorization, resultants and linear algebra.

pub mod factor;
pub mod frac;
pub mod integer;
pub mod linalg;
pub(crate) mod modp;
pub mod mpoly;
pub mod numfield;
pub mod upoly;

pub use factor::{factor_q, is_irreducible_q, Factorization};
pub use frac::Frac;
pub use mpoly::{MPoly, Mono};
pub use numfield::{CoefField, NfElem, NumberField, PlaceField};
pub use upoly::{qpoly, UPoly};

use crate::error::{Error, Result};
use crate::scalar::Rat;

/// Discriminant `(-1)^(d(d-1)/2) Res(g, g') / lc(g)` of a univariate polynomial.
pub fn discriminant(g: &UPoly<Rat>) -> Result<Rat> {
    if g.is_constant() {
        return Err(Error::ConstantPolynomial);
    }
    let m = MPoly::from_upoly(g, 0, 1);
    Ok(MPoly::discriminant(&m, 0)
        .constant_value()
        .expect("univariate discriminant is constant"))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::rat;

    #[test]
    fn discriminant_examples() {
        assert_eq!(discriminant(&qpoly(&[1, 0, 1])).unwrap(), rat(-4));
        assert_eq!(discriminant(&qpoly(&[0, -1, 1])).unwrap(), rat(1));
        assert_eq!(discriminant(&qpoly(&[1, -2, 1])).unwrap(), rat(0));
        assert_eq!(discriminant(&qpoly(&[3])), Err(Error::ConstantPolynomial));
        // cubic x^3 + p x + q: -4p^3 - 27q^2
        assert_eq!(discriminant(&qpoly(&[1, 2, 0, 1])).unwrap(), rat(-4 * 8 - 27));
    }
}
