use std::collections::{HashMap, VecDeque};
use std::hash::Hash;

use super::{Alphabet, AutomataError, Nfa, Symbol, Word};

/// A complete deterministic automaton with start state `0`.
///
/// Values returned by [`Dfa::minimize`] (and by every boolean operation) are
/// minimal and numbered canonically, so two of them are `==` exactly when
/// they accept the same language over the same alphabet.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Dfa {
    alphabet: Alphabet,
    trans: Vec<u32>,
    accepting: Vec<bool>,
}

impl Dfa {
    pub(crate) fn from_parts(alphabet: Alphabet, trans: Vec<u32>, accepting: Vec<bool>) -> Self {
        debug_assert_eq!(trans.len(), accepting.len() * alphabet.len());
        Dfa {
            alphabet,
            trans,
            accepting,
        }
    }

    /// Build a DFA from a transition function over states `0..n`. Start state is `0`.
    pub fn from_fn(
        alphabet: Alphabet,
        n: usize,
        accepting: impl Fn(u32) -> bool,
        next: impl Fn(u32, Symbol) -> u32,
    ) -> Self {
        assert!(n > 0, "a complete DFA needs at least one state");
        let k = alphabet.len();
        let mut trans = Vec::with_capacity(n * k);
        for s in 0..n as u32 {
            for a in alphabet.symbols() {
                let t = next(s, a);
                assert!((t as usize) < n, "transition target out of range");
                trans.push(t);
            }
        }
        let accepting = (0..n as u32).map(accepting).collect();
        Dfa::from_parts(alphabet, trans, accepting)
    }

    /// Build the reachable part of an implicitly given automaton and minimize it.
    /// `step` returning `None` sends the symbol to a shared rejecting sink.
    pub fn explore<S, F, G>(alphabet: Alphabet, start: S, step: F, accept: G) -> Dfa
    where
        S: Clone + Eq + Hash,
        F: Fn(&S, Symbol) -> Option<S>,
        G: Fn(&S) -> bool,
    {
        let k = alphabet.len();
        let mut ids: HashMap<S, u32> = HashMap::new();
        let mut states: Vec<Option<S>> = vec![Some(start.clone())];
        ids.insert(start, 0);
        let mut sink: Option<u32> = None;
        let mut trans = Vec::new();
        let mut accepting = Vec::new();
        let mut i = 0;
        while i < states.len() {
            match states[i].clone() {
                None => {
                    accepting.push(false);
                    trans.extend(std::iter::repeat_n(i as u32, k));
                }
                Some(s) => {
                    accepting.push(accept(&s));
                    for a in alphabet.symbols() {
                        let id = match step(&s, a) {
                            None => *sink.get_or_insert_with(|| {
                                states.push(None);
                                (states.len() - 1) as u32
                            }),
                            Some(t) => match ids.get(&t) {
                                Some(&id) => id,
                                None => {
                                    states.push(Some(t.clone()));
                                    let id = (states.len() - 1) as u32;
                                    ids.insert(t, id);
                                    id
                                }
                            },
                        };
                        trans.push(id);
                    }
                }
            }
            i += 1;
        }
        Dfa::from_parts(alphabet, trans, accepting).minimize()
    }

    pub fn empty(alphabet: Alphabet) -> Self {
        Dfa::from_fn(alphabet, 1, |_| false, |_, _| 0)
    }

    /// `A*`.
    pub fn universal(alphabet: Alphabet) -> Self {
        Dfa::from_fn(alphabet, 1, |_| true, |_, _| 0)
    }

    /// `A+`.
    pub fn nonempty_words(alphabet: Alphabet) -> Self {
        Dfa::from_fn(alphabet, 2, |s| s == 1, |_, _| 1)
    }

    /// Words all of whose letters lie in `letters`.
    pub fn words_over(alphabet: Alphabet, letters: &[Symbol]) -> Self {
        Dfa::from_fn(alphabet, 2, |s| s == 0, |s, a| if s == 0 && letters.contains(&a) { 0 } else { 1 })
    }

    pub fn word(alphabet: Alphabet, word: &[Symbol]) -> Self {
        Dfa::finite(alphabet, [word])
    }

    pub fn finite<'w, I>(alphabet: Alphabet, words: I) -> Self
    where
        I: IntoIterator<Item = &'w [Symbol]>,
    {
        Nfa::from_words(alphabet, words)
            .expect("words must be over the alphabet")
            .minimize()
    }

    pub fn alphabet(&self) -> &Alphabet {
        &self.alphabet
    }

    pub fn num_states(&self) -> usize {
        self.accepting.len()
    }

    #[inline]
    pub fn next(&self, s: u32, a: Symbol) -> u32 {
        self.trans[s as usize * self.alphabet.len() + a.index()]
    }

    #[inline]
    pub fn is_accepting(&self, s: u32) -> bool {
        self.accepting[s as usize]
    }

    pub fn run(&self, from: u32, word: &[Symbol]) -> u32 {
        word.iter().fold(from, |s, &a| self.next(s, a))
    }

    /// Membership; symbols are assumed to be in range.
    pub fn accepts(&self, word: &[Symbol]) -> bool {
        self.is_accepting(self.run(0, word))
    }

    /// Membership with an alphabet check on the word's symbols.
    pub fn contains(&self, word: &[Symbol]) -> Result<bool, AutomataError> {
        if let Some(a) = word.iter().find(|a| a.index() >= self.alphabet.len()) {
            return Err(AutomataError::SymbolOutOfRange(a.0));
        }
        Ok(self.accepts(word))
    }

    pub fn to_nfa(&self) -> Nfa {
        let mut m = Nfa::new(self.alphabet.clone());
        for s in 0..self.num_states() {
            m.add_state(self.accepting[s]);
        }
        m.set_initial(0).expect("state 0 exists");
        for s in 0..self.num_states() as u32 {
            for a in self.alphabet.symbols() {
                m.add_transition(s, a, self.next(s, a)).expect("valid transition");
            }
        }
        m
    }

    fn reachable(&self) -> Vec<bool> {
        let mut seen = vec![false; self.num_states()];
        let mut queue = VecDeque::from([0u32]);
        seen[0] = true;
        while let Some(s) = queue.pop_front() {
            for a in self.alphabet.symbols() {
                let t = self.next(s, a);
                if !seen[t as usize] {
                    seen[t as usize] = true;
                    queue.push_back(t);
                }
            }
        }
        seen
    }

    /// States from which some accepting state is reachable.
    pub fn live_states(&self) -> Vec<bool> {
        let n = self.num_states();
        let mut preds: Vec<Vec<u32>> = vec![Vec::new(); n];
        for s in 0..n as u32 {
            for a in self.alphabet.symbols() {
                preds[self.next(s, a) as usize].push(s);
            }
        }
        let mut live = self.accepting.clone();
        let mut stack: Vec<u32> = (0..n as u32).filter(|&s| live[s as usize]).collect();
        while let Some(s) = stack.pop() {
            for &p in &preds[s as usize] {
                if !live[p as usize] {
                    live[p as usize] = true;
                    stack.push(p);
                }
            }
        }
        live
    }

    /// Minimal complete DFA, states renumbered in breadth-first order from the start
    /// (symbols visited in alphabet order).
    pub fn minimize(&self) -> Dfa {
        let k = self.alphabet.len();
        let reach = self.reachable();
        let states: Vec<u32> = (0..self.num_states() as u32).filter(|&s| reach[s as usize]).collect();
        let mut class: Vec<u32> = vec![0; self.num_states()];
        for &s in &states {
            class[s as usize] = self.accepting[s as usize] as u32;
        }
        let mut count = {
            let mut c = [false; 2];
            for &s in &states {
                c[class[s as usize] as usize] = true;
            }
            c.iter().filter(|&&b| b).count()
        };
        let mut sig: Vec<u32> = vec![0; states.len() * (k + 1)];
        loop {
            for (i, &s) in states.iter().enumerate() {
                let row = &mut sig[i * (k + 1)..(i + 1) * (k + 1)];
                row[0] = class[s as usize];
                for a in 0..k {
                    row[a + 1] = class[self.trans[s as usize * k + a] as usize];
                }
            }
            let mut ids: HashMap<&[u32], u32> = HashMap::with_capacity(states.len());
            let mut next_class = vec![0u32; states.len()];
            for i in 0..states.len() {
                let row = &sig[i * (k + 1)..(i + 1) * (k + 1)];
                let fresh = ids.len() as u32;
                next_class[i] = *ids.entry(row).or_insert(fresh);
            }
            let new_count = ids.len();
            drop(ids);
            for (i, &s) in states.iter().enumerate() {
                class[s as usize] = next_class[i];
            }
            if new_count == count {
                break;
            }
            count = new_count;
        }
        // canonical numbering
        let mut rep: Vec<Option<u32>> = vec![None; count];
        for &s in &states {
            let c = class[s as usize] as usize;
            if rep[c].is_none() {
                rep[c] = Some(s);
            }
        }
        let mut order: Vec<u32> = vec![u32::MAX; count];
        let mut queue = VecDeque::new();
        let start_class = class[0] as usize;
        order[start_class] = 0;
        queue.push_back(start_class);
        let mut next_id = 1u32;
        let mut trans = Vec::with_capacity(count * k);
        let mut accepting = Vec::with_capacity(count);
        while let Some(c) = queue.pop_front() {
            let s = rep[c].expect("every class has a member") as usize;
            accepting.push(self.accepting[s]);
            for a in 0..k {
                let tc = class[self.trans[s * k + a] as usize] as usize;
                if order[tc] == u32::MAX {
                    order[tc] = next_id;
                    next_id += 1;
                    queue.push_back(tc);
                }
                trans.push(order[tc]);
            }
        }
        Dfa::from_parts(self.alphabet.clone(), trans, accepting)
    }

    /// Product automaton over reachable state pairs, combined with `keep`, minimized.
    pub fn product(&self, other: &Dfa, keep: impl Fn(bool, bool) -> bool) -> Result<Dfa, AutomataError> {
        self.alphabet.check_same(&other.alphabet)?;
        let k = self.alphabet.len();
        let mut ids: HashMap<(u32, u32), u32> = HashMap::new();
        let mut pairs = vec![(0u32, 0u32)];
        ids.insert((0, 0), 0);
        let mut trans = Vec::new();
        let mut accepting = Vec::new();
        let mut i = 0;
        while i < pairs.len() {
            let (p, q) = pairs[i];
            accepting.push(keep(self.is_accepting(p), other.is_accepting(q)));
            for a in 0..k {
                let t = (self.trans[p as usize * k + a], other.trans[q as usize * k + a]);
                let fresh = pairs.len() as u32;
                let id = *ids.entry(t).or_insert_with(|| {
                    pairs.push(t);
                    fresh
                });
                trans.push(id);
            }
            i += 1;
        }
        Ok(Dfa::from_parts(self.alphabet.clone(), trans, accepting).minimize())
    }

    pub fn intersect(&self, other: &Dfa) -> Result<Dfa, AutomataError> {
        self.product(other, |x, y| x && y)
    }

    pub fn union(&self, other: &Dfa) -> Result<Dfa, AutomataError> {
        self.product(other, |x, y| x || y)
    }

    pub fn difference(&self, other: &Dfa) -> Result<Dfa, AutomataError> {
        self.product(other, |x, y| x && !y)
    }

    /// Complement relative to this automaton's own alphabet.
    pub fn complement(&self) -> Dfa {
        let accepting = self.accepting.iter().map(|&b| !b).collect();
        Dfa::from_parts(self.alphabet.clone(), self.trans.clone(), accepting).minimize()
    }

    pub fn is_empty(&self) -> bool {
        let reach = self.reachable();
        !(0..self.num_states()).any(|s| reach[s] && self.accepting[s])
    }

    /// True iff the accepted language is finite (no cycle through a useful state).
    pub fn is_finite(&self) -> bool {
        let reach = self.reachable();
        let live = self.live_states();
        let useful: Vec<bool> = (0..self.num_states()).map(|s| reach[s] && live[s]).collect();
        // iterative DFS colouring: 0 white, 1 grey, 2 black
        let mut colour = vec![0u8; self.num_states()];
        for root in 0..self.num_states() {
            if !useful[root] || colour[root] != 0 {
                continue;
            }
            let mut stack: Vec<(u32, usize)> = vec![(root as u32, 0)];
            colour[root] = 1;
            while let Some(&mut (s, ref mut a)) = stack.last_mut() {
                if *a == self.alphabet.len() {
                    colour[s as usize] = 2;
                    stack.pop();
                    continue;
                }
                let t = self.next(s, Symbol(*a as u32)) as usize;
                *a += 1;
                if !useful[t] {
                    continue;
                }
                match colour[t] {
                    0 => {
                        colour[t] = 1;
                        stack.push((t as u32, 0));
                    }
                    1 => return false,
                    _ => {}
                }
            }
        }
        true
    }

    pub fn is_subset_of(&self, other: &Dfa) -> Result<bool, AutomataError> {
        Ok(self.difference(other)?.is_empty())
    }

    pub fn equivalent(&self, other: &Dfa) -> Result<bool, AutomataError> {
        self.alphabet.check_same(&other.alphabet)?;
        Ok(self.minimize() == other.minimize())
    }

    /// Words in shortlex order (length first, then alphabet order).
    pub fn shortlex(&self) -> Shortlex<'_> {
        Shortlex::new(self)
    }

    /// Up to `max_count` words in shortlex order, none longer than `max_length`.
    pub fn enumerate(&self, max_count: usize, max_length: Option<usize>) -> Vec<Word> {
        let mut it = self.shortlex();
        it.max_len = max_length;
        it.take(max_count).collect()
    }

    /// The shortlex-least accepted word.
    pub fn shortlex_least(&self) -> Option<Word> {
        shortlex_least_implicit(
            0u32,
            self.alphabet.len(),
            |&s, a| Some(self.next(s, a)),
            |&s| self.is_accepting(s),
        )
    }

    /// The same language with symbols renamed into a larger alphabet; `map[i]` is the
    /// image of old symbol `i`. Symbols of `target` outside the image lead to rejection.
    pub fn embed(&self, target: &Alphabet, map: &[Symbol]) -> Dfa {
        assert_eq!(map.len(), self.alphabet.len());
        let n = self.num_states();
        let sink = n as u32;
        let mut inverse: Vec<Option<Symbol>> = vec![None; target.len()];
        for (old, &new) in map.iter().enumerate() {
            inverse[new.index()] = Some(Symbol(old as u32));
        }
        Dfa::from_fn(
            target.clone(),
            n + 1,
            |s| s != sink && self.is_accepting(s),
            |s, a| match (s == sink, inverse[a.index()]) {
                (false, Some(old)) => self.next(s, old),
                _ => sink,
            },
        )
        .minimize()
    }
}

/// Shortlex enumeration of a DFA's language.
pub struct Shortlex<'a> {
    dfa: &'a Dfa,
    /// `can[r][s]`: from `s` some accepting state is reached in exactly `r` steps.
    can: Vec<Vec<bool>>,
    len: usize,
    in_length: bool,
    stack: Vec<(u32, u32)>,
    word: Word,
    finite_bound: Option<usize>,
    max_len: Option<usize>,
}

impl<'a> Shortlex<'a> {
    fn new(dfa: &'a Dfa) -> Self {
        let finite_bound = dfa.is_finite().then_some(dfa.num_states());
        Shortlex {
            dfa,
            can: vec![dfa.accepting.clone()],
            len: 0,
            in_length: false,
            stack: Vec::new(),
            word: Vec::new(),
            finite_bound,
            max_len: None,
        }
    }

    pub fn with_max_len(mut self, max_len: usize) -> Self {
        self.max_len = Some(max_len);
        self
    }

    fn ensure_level(&mut self, r: usize) {
        while self.can.len() <= r {
            let prev = self.can.last().expect("level 0 present");
            let level = (0..self.dfa.num_states() as u32)
                .map(|s| self.dfa.alphabet.symbols().any(|a| prev[self.dfa.next(s, a) as usize]))
                .collect();
            self.can.push(level);
        }
    }
}

impl Iterator for Shortlex<'_> {
    type Item = Word;

    fn next(&mut self) -> Option<Word> {
        loop {
            if !self.in_length {
                if self.finite_bound.is_some_and(|b| self.len >= b) || self.max_len.is_some_and(|m| self.len > m) {
                    return None;
                }
                self.ensure_level(self.len);
                if !self.can[self.len][0] {
                    self.len += 1;
                    continue;
                }
                self.in_length = true;
                self.stack = vec![(0, 0)];
                self.word.clear();
            }
            let depth = self.stack.len() - 1;
            if depth == self.len {
                let out = self.word.clone();
                self.stack.pop();
                self.word.pop();
                if self.stack.is_empty() {
                    self.in_length = false;
                    self.len += 1;
                }
                return Some(out);
            }
            let remaining = self.len - depth - 1;
            let k = self.dfa.alphabet.len() as u32;
            let (s, next_sym) = *self.stack.last().expect("non-empty stack");
            let found = (next_sym..k).find(|&a| self.can[remaining][self.dfa.next(s, Symbol(a)) as usize]);
            match found {
                Some(a) => {
                    self.stack.last_mut().expect("non-empty stack").1 = a + 1;
                    self.stack.push((self.dfa.next(s, Symbol(a)), 0));
                    self.word.push(Symbol(a));
                }
                None => {
                    self.stack.pop();
                    self.word.pop();
                    if self.stack.is_empty() {
                        self.in_length = false;
                        self.len += 1;
                    }
                }
            }
        }
    }
}

/// Shortlex-least word accepted by an implicitly given deterministic automaton.
///
/// Breadth-first search expanding states in the order of their shortlex-least access
/// words, so the first accepting state discovered is reached by the answer. `step`
/// returning `None` means the symbol leads to a rejecting sink.
pub fn shortlex_least_implicit<S, F, G>(start: S, k: usize, step: F, accept: G) -> Option<Word>
where
    S: Clone + Eq + Hash,
    F: Fn(&S, Symbol) -> Option<S>,
    G: Fn(&S) -> bool,
{
    if accept(&start) {
        return Some(Vec::new());
    }
    let mut nodes: Vec<(S, usize, Symbol)> = vec![(start.clone(), usize::MAX, Symbol(0))];
    let mut seen: HashMap<S, ()> = HashMap::new();
    seen.insert(start, ());
    let mut i = 0;
    while i < nodes.len() {
        let s = nodes[i].0.clone();
        for a in 0..k as u32 {
            let a = Symbol(a);
            let Some(t) = step(&s, a) else { continue };
            if seen.contains_key(&t) {
                continue;
            }
            seen.insert(t.clone(), ());
            let done = accept(&t);
            nodes.push((t, i, a));
            if done {
                let mut word = Vec::new();
                let mut j = nodes.len() - 1;
                while nodes[j].1 != usize::MAX {
                    word.push(nodes[j].2);
                    j = nodes[j].1;
                }
                word.reverse();
                return Some(word);
            }
        }
        i += 1;
    }
    None
}
