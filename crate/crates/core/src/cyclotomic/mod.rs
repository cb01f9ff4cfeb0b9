//! Exact cyclotomic arithmetic and its reduction modulo a prime ideal over `p`.

mod cyclo;
mod fq;
mod reduction;

pub use cyclo::{is_basis_exponent, Cyclo};
pub(crate) use cyclo::zumbroich_reduce;
pub use fq::{is_irreducible, FiniteField, FqElem};
pub use reduction::{ReductionMap, RootChoice};
