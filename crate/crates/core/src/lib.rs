//! Finite topological spaces and the lax comma category `Top⇓X` over a
//! finite base space `X`.
//!
//! Objects of `Top⇓X` are pairs `(A, α)` with `α: A → X` continuous;
//! morphisms `(A, α) → (B, β)` are continuous maps `f` with `α ≤ β·f`
//! pointwise in the natural order of `X`. The crate builds limits,
//! colimits, exponentials and Vietoris structure in this category, decides
//! descent and effective descent, and ships brute-force oracles that check
//! every construction against its universal property.

mod bits;
pub mod descent;
pub mod enumerate;
pub mod error;
pub mod famx;
pub mod finspace;
pub mod fixtures;
pub mod harness;
pub mod io;
pub mod laxcomma;
pub mod order;
pub mod vietoris;

pub use error::{Error, Result};
pub use finspace::{CMap, FiniteSpace};
pub use laxcomma::{LaxMorphism, LaxObject};
pub use order::Lattice;
