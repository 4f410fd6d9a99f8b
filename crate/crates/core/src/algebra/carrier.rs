//! The operations every carrier of the Carlitz action provides.

use super::laurent::LaurentSeries;
use super::padic::PAdicElem;
use super::poly::Poly;
use crate::error::Result;

/// A commutative ring carrying an `A`-algebra structure and its own `q`-power map.
pub trait Carrier: Clone + Sized {
    fn add(&self, other: &Self) -> Result<Self>;
    fn mul(&self, other: &Self) -> Result<Self>;
    /// The zero of the same parent (field, prime, precision).
    fn zero_like(&self) -> Self;
    fn is_zero(&self) -> bool;
    /// `x ↦ x^q`.
    fn frobenius(&self, q: u64) -> Self;
    /// Multiply by an element of `A` (or of the carrier's polynomial ring).
    fn mul_poly(&self, a: &Poly) -> Result<Self>;

    fn neg(&self) -> Self;

    fn sub(&self, other: &Self) -> Result<Self> {
        self.add(&other.neg())
    }
}

impl Carrier for Poly {
    fn add(&self, other: &Self) -> Result<Self> {
        if !self.same_field(other) {
            return Err(crate::error::Error::FieldMismatch);
        }
        Ok(self + other)
    }
    fn mul(&self, other: &Self) -> Result<Self> {
        if !self.same_field(other) {
            return Err(crate::error::Error::FieldMismatch);
        }
        Ok(self * other)
    }
    fn zero_like(&self) -> Self {
        Poly::zero(self.field())
    }
    fn neg(&self) -> Self {
        -self
    }
    fn is_zero(&self) -> bool {
        Poly::is_zero(self)
    }
    fn frobenius(&self, q: u64) -> Self {
        self.tau(q)
    }
    fn mul_poly(&self, a: &Poly) -> Result<Self> {
        Ok(self * &a.lift_to(self.field())?)
    }
    fn sub(&self, other: &Self) -> Result<Self> {
        if !self.same_field(other) {
            return Err(crate::error::Error::FieldMismatch);
        }
        Ok(self - other)
    }
}

impl Carrier for LaurentSeries {
    fn add(&self, other: &Self) -> Result<Self> {
        LaurentSeries::add(self, other)
    }
    fn mul(&self, other: &Self) -> Result<Self> {
        LaurentSeries::mul(self, other)
    }
    fn zero_like(&self) -> Self {
        LaurentSeries::zero(self.field(), self.prec())
    }
    fn neg(&self) -> Self {
        LaurentSeries::neg(self)
    }
    fn is_zero(&self) -> bool {
        LaurentSeries::is_zero(self)
    }
    fn frobenius(&self, q: u64) -> Self {
        LaurentSeries::frobenius(self, q)
    }
    fn mul_poly(&self, a: &Poly) -> Result<Self> {
        LaurentSeries::mul_poly(self, &a.lift_to(self.field())?)
    }
    fn sub(&self, other: &Self) -> Result<Self> {
        LaurentSeries::sub(self, other)
    }
}

impl Carrier for PAdicElem {
    fn add(&self, other: &Self) -> Result<Self> {
        PAdicElem::add(self, other)
    }
    fn mul(&self, other: &Self) -> Result<Self> {
        PAdicElem::mul(self, other)
    }
    fn zero_like(&self) -> Self {
        PAdicElem::zero(self.context(), self.abs_prec())
    }
    fn neg(&self) -> Self {
        PAdicElem::neg(self)
    }
    fn is_zero(&self) -> bool {
        PAdicElem::is_zero(self)
    }
    fn frobenius(&self, q: u64) -> Self {
        PAdicElem::frobenius(self, q)
    }
    fn mul_poly(&self, a: &Poly) -> Result<Self> {
        PAdicElem::mul_poly(self, a)
    }
    fn sub(&self, other: &Self) -> Result<Self> {
        PAdicElem::sub(self, other)
    }
}
