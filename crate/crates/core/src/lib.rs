//! Finitely presented stratified simplicial sets: posets and flags, simplicial
//! sets in normal form, stratified constructions, links, refinement, and
//! bounded model-structure probes.

pub mod delta;
pub mod error;
pub mod io;
pub mod links;
pub mod modelcheck;
pub mod poset;
pub mod refine;
pub mod sset;
pub mod strat;

pub use error::{Error, Result};
