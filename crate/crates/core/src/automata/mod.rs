//! Finite automata over ordered alphabets.

mod alphabet;
mod dfa;
mod nfa;

pub use alphabet::{Alphabet, PaddedPairs, Symbol, Word};
pub use dfa::{shortlex_least_implicit, Dfa, Shortlex};
pub use nfa::Nfa;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum AutomataError {
    #[error("automata are over different alphabets")]
    AlphabetMismatch,
    #[error("duplicate symbol name `{0}`")]
    DuplicateSymbol(String),
    #[error("unknown symbol `{0}`")]
    UnknownSymbol(String),
    #[error("symbol index {0} is outside the alphabet")]
    SymbolOutOfRange(u32),
    #[error("no such state {0}")]
    UnknownState(u32),
}

/// Shortlex comparison: shorter words first, then lexicographic by symbol order.
pub fn shortlex_cmp(u: &[Symbol], v: &[Symbol]) -> std::cmp::Ordering {
    u.len().cmp(&v.len()).then_with(|| u.cmp(v))
}
