//! Chains of co-Büchi automata: construction, Boolean operations,
//! translation to deterministic parity automata and analysis tools.

pub mod analysis;
pub mod automaton;
pub mod boolops;
pub mod cocoa;
pub mod error;
pub mod families;
pub mod format;
mod graph;
pub mod run;
pub mod word;

pub use automaton::{
    Alphabet, Automaton, Color, Letter, StateId, Transition, ACCEPTING, REJECTING,
};
pub use error::{Error, Result};
pub use run::{accepts_lasso_cobuchi, run_deterministic, RunResult};
pub use word::LassoWord;
