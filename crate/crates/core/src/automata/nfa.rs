use std::collections::HashMap;

use super::{Alphabet, AutomataError, Dfa, Symbol};

/// A nondeterministic finite automaton with ε-moves over an ordered alphabet.
///
/// States are `0..num_states()`. This is the general construction type; all
/// language-level algebra happens on [`Dfa`].
#[derive(Clone, Debug)]
pub struct Nfa {
    alphabet: Alphabet,
    initial: Vec<u32>,
    accepting: Vec<bool>,
    transitions: Vec<Vec<(Symbol, u32)>>,
    epsilon: Vec<Vec<u32>>,
}

impl Nfa {
    /// An automaton with no states, accepting nothing.
    pub fn new(alphabet: Alphabet) -> Self {
        Nfa {
            alphabet,
            initial: Vec::new(),
            accepting: Vec::new(),
            transitions: Vec::new(),
            epsilon: Vec::new(),
        }
    }

    pub fn alphabet(&self) -> &Alphabet {
        &self.alphabet
    }

    pub fn num_states(&self) -> usize {
        self.accepting.len()
    }

    pub fn add_state(&mut self, accepting: bool) -> u32 {
        self.accepting.push(accepting);
        self.transitions.push(Vec::new());
        self.epsilon.push(Vec::new());
        (self.accepting.len() - 1) as u32
    }

    fn check_state(&self, s: u32) -> Result<(), AutomataError> {
        if (s as usize) < self.num_states() {
            Ok(())
        } else {
            Err(AutomataError::UnknownState(s))
        }
    }

    pub fn set_initial(&mut self, s: u32) -> Result<(), AutomataError> {
        self.check_state(s)?;
        if !self.initial.contains(&s) {
            self.initial.push(s);
        }
        Ok(())
    }

    pub fn set_accepting(&mut self, s: u32, accepting: bool) -> Result<(), AutomataError> {
        self.check_state(s)?;
        self.accepting[s as usize] = accepting;
        Ok(())
    }

    pub fn add_transition(&mut self, from: u32, symbol: Symbol, to: u32) -> Result<(), AutomataError> {
        self.check_state(from)?;
        self.check_state(to)?;
        if symbol.index() >= self.alphabet.len() {
            return Err(AutomataError::SymbolOutOfRange(symbol.0));
        }
        self.transitions[from as usize].push((symbol, to));
        Ok(())
    }

    pub fn add_epsilon(&mut self, from: u32, to: u32) -> Result<(), AutomataError> {
        self.check_state(from)?;
        self.check_state(to)?;
        self.epsilon[from as usize].push(to);
        Ok(())
    }

    pub fn initial(&self) -> &[u32] {
        &self.initial
    }

    pub fn is_accepting(&self, s: u32) -> bool {
        self.accepting[s as usize]
    }

    pub fn transitions(&self) -> impl Iterator<Item = (u32, Symbol, u32)> + '_ {
        self.transitions
            .iter()
            .enumerate()
            .flat_map(|(s, ts)| ts.iter().map(move |&(a, t)| (s as u32, a, t)))
    }

    pub fn epsilon_moves(&self) -> impl Iterator<Item = (u32, u32)> + '_ {
        self.epsilon
            .iter()
            .enumerate()
            .flat_map(|(s, ts)| ts.iter().map(move |&t| (s as u32, t)))
    }

    /// Automaton accepting exactly the given finite set of words (a trie).
    pub fn from_words<'w, I>(alphabet: Alphabet, words: I) -> Result<Self, AutomataError>
    where
        I: IntoIterator<Item = &'w [Symbol]>,
    {
        let mut m = Nfa::new(alphabet);
        let root = m.add_state(false);
        m.set_initial(root)?;
        let mut children: HashMap<(u32, Symbol), u32> = HashMap::new();
        for word in words {
            let mut s = root;
            for &a in word {
                s = match children.get(&(s, a)) {
                    Some(&t) => t,
                    None => {
                        let t = m.add_state(false);
                        m.add_transition(s, a, t)?;
                        children.insert((s, a), t);
                        t
                    }
                };
            }
            m.accepting[s as usize] = true;
        }
        Ok(m)
    }

    fn closure_into(&self, seeds: &mut Vec<u32>, mark: &mut [u32], stamp: u32) {
        let mut stack: Vec<u32> = Vec::with_capacity(seeds.len());
        for &s in seeds.iter() {
            if mark[s as usize] != stamp {
                mark[s as usize] = stamp;
                stack.push(s);
            }
        }
        seeds.clear();
        while let Some(s) = stack.pop() {
            seeds.push(s);
            for &t in &self.epsilon[s as usize] {
                if mark[t as usize] != stamp {
                    mark[t as usize] = stamp;
                    stack.push(t);
                }
            }
        }
        seeds.sort_unstable();
    }

    /// Direct simulation of the automaton on `word`.
    pub fn accepts(&self, word: &[Symbol]) -> Result<bool, AutomataError> {
        let n = self.num_states();
        let mut mark = vec![0u32; n];
        let mut stamp = 1;
        let mut current = self.initial.clone();
        self.closure_into(&mut current, &mut mark, stamp);
        for &a in word {
            if a.index() >= self.alphabet.len() {
                return Err(AutomataError::SymbolOutOfRange(a.0));
            }
            let mut next = Vec::new();
            for &s in &current {
                for &(b, t) in &self.transitions[s as usize] {
                    if b == a {
                        next.push(t);
                    }
                }
            }
            stamp += 1;
            self.closure_into(&mut next, &mut mark, stamp);
            current = next;
        }
        Ok(current.iter().any(|&s| self.accepting[s as usize]))
    }

    /// Subset construction. The result is complete over the same alphabet and
    /// contains only reachable subsets; it is not minimized.
    pub fn determinize(&self) -> Dfa {
        let k = self.alphabet.len();
        let n = self.num_states();
        let mut mark = vec![0u32; n];
        let mut stamp = 1u32;

        let mut start = self.initial.clone();
        self.closure_into(&mut start, &mut mark, stamp);

        let mut ids: HashMap<Vec<u32>, u32> = HashMap::new();
        let mut subsets: Vec<Vec<u32>> = Vec::new();
        ids.insert(start.clone(), 0);
        subsets.push(start);

        let mut trans: Vec<u32> = Vec::new();
        let mut accepting: Vec<bool> = Vec::new();
        let mut buckets: Vec<Vec<u32>> = vec![Vec::new(); k];
        let mut i = 0;
        while i < subsets.len() {
            for b in buckets.iter_mut() {
                b.clear();
            }
            let subset = &subsets[i];
            accepting.push(subset.iter().any(|&s| self.accepting[s as usize]));
            for &s in subset {
                for &(a, t) in &self.transitions[s as usize] {
                    buckets[a.index()].push(t);
                }
            }
            for bucket in buckets.iter_mut() {
                stamp += 1;
                let mut target = std::mem::take(bucket);
                self.closure_into(&mut target, &mut mark, stamp);
                let next_id = subsets.len() as u32;
                let id = match ids.get(&target) {
                    Some(&id) => id,
                    None => {
                        ids.insert(target.clone(), next_id);
                        subsets.push(target.clone());
                        next_id
                    }
                };
                trans.push(id);
                *bucket = target;
            }
            i += 1;
        }
        Dfa::from_parts(self.alphabet.clone(), trans, accepting)
    }

    /// Minimal complete DFA for this automaton's language, canonically numbered.
    pub fn minimize(&self) -> Dfa {
        self.determinize().minimize()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ab() -> Alphabet {
        Alphabet::from_chars("ab").unwrap()
    }

    #[test]
    fn epsilon_cycle_does_not_diverge() {
        let mut m = Nfa::new(ab());
        let s0 = m.add_state(false);
        let s1 = m.add_state(false);
        let s2 = m.add_state(true);
        m.set_initial(s0).unwrap();
        m.add_epsilon(s0, s1).unwrap();
        m.add_epsilon(s1, s0).unwrap();
        m.add_transition(s1, Symbol(0), s2).unwrap();
        m.add_epsilon(s2, s0).unwrap();
        // (a)+
        assert!(!m.accepts(&[]).unwrap());
        assert!(m.accepts(&[Symbol(0), Symbol(0)]).unwrap());
        assert!(!m.accepts(&[Symbol(1)]).unwrap());
        let d = m.determinize();
        assert!(d.accepts(&[Symbol(0)]));
    }

    #[test]
    fn rejects_bad_transitions() {
        let mut m = Nfa::new(ab());
        let s = m.add_state(false);
        assert_eq!(m.add_transition(s, Symbol(5), s), Err(AutomataError::SymbolOutOfRange(5)));
        assert_eq!(m.add_transition(s, Symbol(0), 3), Err(AutomataError::UnknownState(3)));
    }

    #[test]
    fn empty_initial_set_is_empty_language() {
        let mut m = Nfa::new(ab());
        let s = m.add_state(true);
        m.add_transition(s, Symbol(0), s).unwrap();
        let d = m.minimize();
        assert!(d.is_empty());
        assert_eq!(d.num_states(), 1);
    }
}
