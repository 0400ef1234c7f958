//! Exact arithmetic over GF(2): packed and Laurent monomials, sparse
//! polynomials, factored rational functions and their one-variable
//! specializations.

mod gf64;
mod laurent;
mod monomial;
mod poly;
mod rational;
mod univariate;
mod vars;

pub use gf64::Gf64;
pub use laurent::LaurentMonomial;
pub use monomial::{Monomial, MAX_EXPONENT, MAX_VARS};
pub use poly::Polynomial;
pub use rational::{psi_coeff, RationalFunction};
pub use univariate::{UniPoly, UniRational};
pub use vars::VariableTable;

use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum AlgebraError {
    #[error("{0} variables exceed the packed monomial capacity of {max}", max = MAX_VARS)]
    TooManyVariables(usize),
    #[error("exponent overflow in packed monomial")]
    ExponentOverflow,
    #[error("division by zero")]
    DivisionByZero,
    #[error("circuit monomial is 1; the coefficient is undefined")]
    UnitCircuit,
    #[error("specialization makes a denominator vanish")]
    SpecializationSingular,
    #[error("specialization produced a negative exponent in a polynomial")]
    NegativeSpecialization,
    #[error("exact division left a remainder")]
    InexactDivision,
}

/// Substitutes every variable `v` by `t^spec[v]`.
pub fn specialize(a: &RationalFunction, spec: &[i64]) -> Result<UniRational, AlgebraError> {
    a.specialize(spec)
}

/// `1/(1 + t^a) + 1/(1 + t^b)` in GF(2)(t).
pub fn psi_specialized(a: i64, b: i64) -> Result<UniRational, AlgebraError> {
    fn frac(k: i64) -> Result<UniRational, AlgebraError> {
        let m = k.unsigned_abs() as usize;
        let den = UniPoly::from_exponents([0, m]);
        let num = if k > 0 {
            UniPoly::one()
        } else {
            UniPoly::monomial(m)
        };
        UniRational::new(num, den).ok_or(AlgebraError::SpecializationSingular)
    }
    Ok(frac(a)?.add(&frac(b)?))
}
