//! p-blocks of the Grothendieck ring `K_G(G)` of G-equivariant vector bundles
//! on a finite group `G`.
//!
//! The block partition of the basis `M(G)` is computed twice: once from
//! congruences of the algebra morphisms `Ψ_{g,γ}` modulo a prime ideal over
//! `p`, and once from blocks of centralizers of p'-elements pushed through
//! Brauer maps.

pub mod arith;
pub mod blocks;
pub mod chartab;
pub mod context;
pub mod cyclotomic;
pub mod error;
pub mod group;
pub mod groupspec;
pub mod grothendieck;
pub mod perm;
pub mod pipeline;
pub mod theorem;

pub use arith::Prime;
pub use cyclotomic::{Cyclo, FqElem, ReductionMap, RootChoice};
pub use error::{Error, Result};
pub use group::{ClassData, ConjugacyClasses, PermGroup};
pub use perm::Perm;
