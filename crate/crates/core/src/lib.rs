//! Invariants and isomorphism decisions for countable direct limits of
//! involution simple matrix algebras presented by triple sequences.

pub mod exact;
pub mod supernat;
pub mod seqspec;
pub mod classify;
pub mod intertwine;
pub mod matrixlab;
pub mod bratteli;
