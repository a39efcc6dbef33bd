//! Many-sorted finite algebra: sorted sets, terms, congruences,
//! translations, syntactic congruences of recognizable languages, and
//! bounded formation closures.

pub mod algebra;
pub mod cli;
pub mod error;
pub mod fixtures;
pub mod formations;
pub mod iso;
pub mod sexp;
pub mod signature;
pub mod sorted;
pub mod syntactic;
pub mod term;
pub mod translations;
mod union_find;

pub use algebra::{Congruence, FiniteAlgebra, Homomorphism, Limits};
pub use error::{Error, Result};
pub use signature::Signature;
pub use sorted::{SortId, SortedEquivalence, SortedMap, SortedSet, SortedSubset};
pub use term::{GeneratorSet, Term};
