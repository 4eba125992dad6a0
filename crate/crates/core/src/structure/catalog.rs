//! Hand-built structures for well-known semigroups.

use crate::automata::{Alphabet, Dfa, Symbol};
use crate::relations::{diagonal, splice_relation};

use super::{InterpretedAutomaticStructure, PreAutomaticStructure};

/// The bicyclic monoid `⟨q, p | pq = 1⟩` with representatives `q*p*` and symbol order `q < p`.
pub fn bicyclic() -> InterpretedAutomaticStructure {
    let g = Alphabet::new(["q", "p"]).expect("distinct names");
    let (q, p) = (Symbol(0), Symbol(1));
    // q*p*
    let lang = Dfa::from_fn(g.clone(), 3, |s| s < 2, |s, a| match (s, a == q) {
        (0, true) => 0,
        (0 | 1, false) => 1,
        _ => 2,
    })
    .minimize();
    let eps = Dfa::word(g.clone(), &[]);
    let q_only = Dfa::words_over(g.clone(), &[q]);
    let mult_p = splice_relation(&lang, &[], &[p], &eps).expect("same alphabet");
    // q^i p^(j+1) · q = q^i p^j and q^i · q = q^(i+1)
    let mult_q = splice_relation(&lang, &[p], &[], &eps)
        .and_then(|r| r.union(&splice_relation(&q_only, &[], &[q], &eps)?))
        .expect("same alphabet");
    let structure =
        PreAutomaticStructure::new(g, lang.clone(), diagonal(&lang), vec![mult_q, mult_p]).expect("consistent parts");
    InterpretedAutomaticStructure::new(structure, vec![vec![q], vec![p]], true).expect("letters are representatives")
}

/// The free semigroup on the given generators, with `L = A+`.
pub fn free_semigroup(names: &[&str]) -> InterpretedAutomaticStructure {
    let g = Alphabet::new(names.iter().copied()).expect("distinct names");
    let lang = Dfa::nonempty_words(g.clone());
    let eps = Dfa::word(g.clone(), &[]);
    let multipliers = g
        .symbols()
        .map(|a| splice_relation(&lang, &[], &[a], &eps).expect("same alphabet"))
        .collect();
    let structure = PreAutomaticStructure::new(g.clone(), lang.clone(), diagonal(&lang), multipliers).expect("consistent parts");
    let assignment = g.symbols().map(|a| vec![a]).collect();
    InterpretedAutomaticStructure::new(structure, assignment, false).expect("letters are representatives")
}

/// The free monoid on the given generators, with `L = A*`.
pub fn free_monoid(names: &[&str]) -> InterpretedAutomaticStructure {
    let g = Alphabet::new(names.iter().copied()).expect("distinct names");
    let lang = Dfa::universal(g.clone());
    let eps = Dfa::word(g.clone(), &[]);
    let multipliers = g
        .symbols()
        .map(|a| splice_relation(&lang, &[], &[a], &eps).expect("same alphabet"))
        .collect();
    let structure = PreAutomaticStructure::new(g.clone(), lang.clone(), diagonal(&lang), multipliers).expect("consistent parts");
    let assignment = g.symbols().map(|a| vec![a]).collect();
    InterpretedAutomaticStructure::new(structure, assignment, true).expect("letters are representatives")
}
