//! Helpers shared by the integration tests.
#![allow(dead_code)]

use autosemi::automata::{Alphabet, Dfa, PaddedPairs, Symbol, Word};
use autosemi::oracle::CayleyTable;
use autosemi::relations::SyncRelation;
use autosemi::structure::{InterpretedAutomaticStructure, PreAutomaticStructure};
use rand::Rng;

pub fn named_tables() -> Vec<(&'static str, CayleyTable)> {
    vec![
        ("trivial", CayleyTable::trivial()),
        ("C2", CayleyTable::cyclic_group(2)),
        ("semilattice", CayleyTable::semilattice()),
        ("left-zero pair", CayleyTable::left_zero(2)),
        ("2x2 rectangular band", CayleyTable::rectangular_band(2, 2)),
        ("B2", CayleyTable::brandt(2)),
    ]
}

/// A random automaton over the padded alphabet of `base`, read as a relation.
pub fn random_relation(rng: &mut impl Rng, base: &Alphabet, max_states: usize) -> SyncRelation {
    let padded = base.padded().clone();
    let n = rng.gen_range(1..=max_states);
    // state n is a rejecting sink
    let table: Vec<u32> = (0..n * padded.len())
        .map(|_| if rng.gen_bool(0.7) { rng.gen_range(0..n as u32) } else { n as u32 })
        .collect();
    let accepting: Vec<bool> = (0..n).map(|_| rng.gen_bool(0.4)).collect();
    let k = padded.len();
    let dfa = Dfa::from_fn(padded, n + 1, |s| (s as usize) < n && accepting[s as usize], |s, a| {
        if s as usize == n {
            n as u32
        } else {
            table[s as usize * k + a.index()]
        }
    });
    SyncRelation::from_dfa(base, &dfa).unwrap()
}

/// All words over `base` of length at most `max_len`, shortlex order.
pub fn words_up_to(base: &Alphabet, max_len: usize) -> Vec<Word> {
    Dfa::universal(base.clone()).enumerate(usize::MAX, Some(max_len))
}

/// Pairs `(u, v)` read directly off the convolution automaton, without the relation API.
pub fn accepts_pair(r: &SyncRelation, u: &[Symbol], v: &[Symbol]) -> bool {
    let p = PaddedPairs::new(r.base().len());
    let n = u.len().max(v.len());
    let word: Word = (0..n).map(|i| p.encode(u.get(i).copied(), v.get(i).copied()).unwrap()).collect();
    r.dfa().accepts(&word)
}

/// Structure of the subsemigroup generated by `gens` in which every word of length at most
/// `max_len` is a representative, so elements have many representatives.
pub fn redundant_structure(t: &CayleyTable, gens: &[usize], max_len: usize) -> InterpretedAutomaticStructure {
    let g = Alphabet::new(gens.iter().map(|&x| t.names()[x].clone())).unwrap();
    let value = |w: &[Symbol]| w.iter().map(|s| gens[s.index()]).reduce(|x, y| t.mul(x, y)).unwrap();
    let words: Vec<Word> = Dfa::nonempty_words(g.clone()).enumerate(usize::MAX, Some(max_len));
    let lang = Dfa::finite(g.clone(), words.iter().map(|w| w.as_slice()));
    let pairs = |f: &dyn Fn(usize) -> usize| -> Vec<(Word, Word)> {
        let mut out = Vec::new();
        for u in &words {
            for v in &words {
                if f(value(u)) == value(v) {
                    out.push((u.clone(), v.clone()));
                }
            }
        }
        out
    };
    let rel = |ps: Vec<(Word, Word)>| SyncRelation::from_pairs(&g, ps.iter().map(|(u, v)| (u.as_slice(), v.as_slice())));
    let equality = rel(pairs(&|x| x));
    let multipliers = gens.iter().map(|&a| rel(pairs(&|x| t.mul(x, a)))).collect();
    let pre = PreAutomaticStructure::new(g.clone(), lang, equality, multipliers).unwrap();
    let assignment = g.symbols().map(|a| vec![a]).collect();
    InterpretedAutomaticStructure::new(pre, assignment, false).unwrap()
}

/// Length of the longest shortlex-least word over `gens` needed to reach every element.
pub fn generation_depth(t: &CayleyTable, gens: &[usize]) -> usize {
    t.shortlex_words(gens).iter().flatten().map(Vec::len).max().unwrap_or(0)
}

/// Free reduction by `pq → 1` over the letters `q = 0`, `p = 1`.
pub fn bicyclic_normal_form(w: &[Symbol]) -> Word {
    let mut out: Word = Vec::new();
    for &s in w {
        if s == Symbol(0) && out.last() == Some(&Symbol(1)) {
            out.pop();
        } else {
            out.push(s);
        }
    }
    out
}
