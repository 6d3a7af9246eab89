//! Finite abstract model structures `(M, ⊨, P(L))` and the machinery around their compactness:
//! Mod/Th operators, induced consequence, the nine compactness conditions, the topologies
//! `τ_N` and `τ_C`, ultrafilters, ultramodels and Łoś-models, plus adapters from
//! neighbouring structures and a symbolic infinite counterexample.

pub mod adapters;
pub mod amst;
pub mod bits;
pub mod check;
pub mod consequence;
pub mod counterexample;
pub mod cpl;
pub mod error;
pub mod galois;
pub mod harness;
pub mod io;
pub mod compactness;
pub mod par;
pub mod rng;
pub mod topology;
pub mod ultra;

pub use amst::{FiniteAmst, ModelId, SatSpec, SentenceId};
pub use bits::{ModelSet, SentenceSet};
pub use check::{Outcome, Status};
pub use consequence::LogicalStructure;
pub use error::{Error, Result};
pub use par::Exec;
