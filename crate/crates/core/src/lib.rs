//! Finite algebras of substructural and modal logics.
//!
//! Everything here computes on [`FiniteAlgebra`] values: operation tables
//! over the carrier `0..n`. On top of that sit congruence lattices,
//! deductive filters, matrix consequence, and bounded decision procedures
//! for inconsistency lemmas, deduction theorems, proof by cases and the
//! law of the excluded middle.
#![cfg_attr(not(test), no_std)]

extern crate alloc;

pub mod algebra;
pub mod bits;
pub mod classes;
pub mod congruence;
pub mod deduction;
pub mod formula;
pub mod glivenko;
pub mod principles;
pub mod search;
pub mod verdict;

#[cfg(test)]
mod testutil;

pub use algebra::{AlgebraError, FiniteAlgebra, OrderRelation, Signature, Symbol, Term, Valuation};
pub use bits::ElemSet;
pub use classes::{AlgebraClass, ClassKind, ClassOptions, ClassReport};
pub use congruence::{Congruence, CongruenceLattice};
pub use deduction::{DeductiveFilter, FilterLattice, MatrixFamily, Translation};
pub use formula::{Formula, ParseError, SchemeFamily};
pub use search::Catalog;
pub use verdict::Verdict;
