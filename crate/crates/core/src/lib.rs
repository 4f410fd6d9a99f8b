//! Exact arithmetic for the Carlitz module over `A = F_q[θ]`, its z-deformation
//! and its P-adic extension, Goss zeta values, and class-formula verifiers.

pub mod algebra;
pub mod carlitz;
pub mod error;
pub mod formulas;
pub mod modstruct;
pub mod rings;
pub mod suite;
pub mod zeta;

pub use algebra::{Carrier, FFElem, Field, FieldDescriptor, LaurentSeries, PAdicContext, PAdicElem, Poly, TatePoly};
pub use error::{Error, Result};
