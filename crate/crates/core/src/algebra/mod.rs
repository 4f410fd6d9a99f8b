//! Finite fields, polynomials, truncated Laurent and P-adic series, Tate algebras.

pub mod carrier;
pub mod enumerate;
pub mod factor;
pub mod field;
pub mod laurent;
pub mod padic;
pub mod parse;
pub mod poly;
pub mod tate;

pub use carrier::Carrier;
pub use enumerate::{enumerate_monics, monic_count, monic_from_index};
pub use factor::{factorize, is_irreducible, Factorization};
pub use field::{FFElem, Field, FieldDescriptor};
pub use laurent::LaurentSeries;
pub use padic::{PAdicContext, PAdicElem};
pub use poly::{poly_arith, Poly, PolyOp, PolyResult};
pub use tate::TatePoly;
