//! Finite Boolean algebras as `2^atoms`, with embeddings carried dually.

pub mod algebra;
pub mod embedding;
pub mod posex;
pub mod pushout;

pub use algebra::{generated_subalgebra, AtomSet, FiniteBoolAlg, Subalgebra, MAX_ATOMS};
pub use embedding::DualSurjection;
pub use posex::{ideal_complete_witness, leq_rel, posex_witness, LeqSide, PosexWitness};
pub use pushout::{interpolant, interpolant_table, is_internal_pushout, pushout, Interpolant, PushoutSquare, PushoutVerdict};
