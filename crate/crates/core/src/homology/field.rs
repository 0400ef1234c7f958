use crate::algebra::{AlgebraError, Gf64, RationalFunction, UniRational};

/// Field elements the generic eliminations work over.
pub trait FieldElem: Clone + Send + Sync {
    fn is_zero(&self) -> bool;
    fn add(&self, other: &Self) -> Result<Self, AlgebraError>;
    fn mul(&self, other: &Self) -> Result<Self, AlgebraError>;
    fn inv(&self) -> Result<Self, AlgebraError>;
    /// Size estimate used to choose pivots.
    fn cost(&self) -> usize;
}

impl FieldElem for RationalFunction {
    fn is_zero(&self) -> bool {
        RationalFunction::is_zero(self)
    }
    fn add(&self, other: &Self) -> Result<Self, AlgebraError> {
        RationalFunction::add(self, other)
    }
    fn mul(&self, other: &Self) -> Result<Self, AlgebraError> {
        RationalFunction::mul(self, other)
    }
    fn inv(&self) -> Result<Self, AlgebraError> {
        RationalFunction::inv(self)
    }
    fn cost(&self) -> usize {
        RationalFunction::cost(self)
    }
}

impl FieldElem for UniRational {
    fn is_zero(&self) -> bool {
        UniRational::is_zero(self)
    }
    fn add(&self, other: &Self) -> Result<Self, AlgebraError> {
        Ok(UniRational::add(self, other))
    }
    fn mul(&self, other: &Self) -> Result<Self, AlgebraError> {
        Ok(UniRational::mul(self, other))
    }
    fn inv(&self) -> Result<Self, AlgebraError> {
        UniRational::inv(self).ok_or(AlgebraError::DivisionByZero)
    }
    fn cost(&self) -> usize {
        let deg = |p: &crate::algebra::UniPoly| p.degree().unwrap_or(0);
        deg(self.num()) + deg(self.den()) + 1
    }
}

impl FieldElem for Gf64 {
    fn is_zero(&self) -> bool {
        Gf64::is_zero(*self)
    }
    fn add(&self, other: &Self) -> Result<Self, AlgebraError> {
        Ok(Gf64::add(*self, *other))
    }
    fn mul(&self, other: &Self) -> Result<Self, AlgebraError> {
        Ok(Gf64::mul(*self, *other))
    }
    fn inv(&self) -> Result<Self, AlgebraError> {
        Gf64::inv(*self).ok_or(AlgebraError::DivisionByZero)
    }
    fn cost(&self) -> usize {
        1
    }
}
