//! Finite unital ring engine: construction of ring families, structural
//! invariants, clean-decomposition classification, and a theorem
//! verification suite over a corpus of small rings.

pub mod cache;
pub mod classify;
pub mod construct;
pub mod dsl;
pub mod ring;
pub mod structure;
pub mod verify;
