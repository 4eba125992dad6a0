//! Synchronous rational relations: two-track automata over the padded pair alphabet.

mod splice;

use std::collections::HashMap;

use crate::automata::{Alphabet, AutomataError, Dfa, Nfa, PaddedPairs, Symbol, Word};

pub use splice::splice_relation;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum RelationError {
    #[error(transparent)]
    Automata(#[from] AutomataError),
    #[error("not a valid padded word: {0}")]
    InvalidPadding(String),
}

/// A relation on `A* × A*` given by a synchronous automaton.
///
/// The automaton is kept minimal and intersected with the valid paddings, so two
/// relations are equal as sets exactly when they compare `==`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SyncRelation {
    base: Alphabet,
    dfa: Dfa,
}

/// Convolution of two words: pairs of letters, the shorter word padded with `$` at the end.
pub fn convolve(base: &Alphabet, u: &[Symbol], v: &[Symbol]) -> Word {
    let p = PaddedPairs::new(base.len());
    (0..u.len().max(v.len()))
        .map(|i| p.encode(u.get(i).copied(), v.get(i).copied()).expect("one track is non-empty"))
        .collect()
}

/// Left inverse of [`convolve`].
pub fn deconvolve(base: &Alphabet, padded: &[Symbol]) -> Result<(Word, Word), RelationError> {
    let p = PaddedPairs::new(base.len());
    let (mut u, mut v) = (Vec::new(), Vec::new());
    let (mut u_done, mut v_done) = (false, false);
    for (i, &s) in padded.iter().enumerate() {
        if s.index() >= p.len() {
            return Err(AutomataError::SymbolOutOfRange(s.0).into());
        }
        let (x, y) = p.decode(s);
        for (t, word, done) in [(x, &mut u, &mut u_done), (y, &mut v, &mut v_done)] {
            match t {
                Some(a) if *done => {
                    return Err(RelationError::InvalidPadding(format!(
                        "letter `{}` after padding at position {i}",
                        base.name(a)
                    )))
                }
                Some(a) => word.push(a),
                None => *done = true,
            }
        }
    }
    Ok((u, v))
}

/// The language of all valid paddings: once a track shows `$` it keeps doing so.
pub fn valid_padding(base: &Alphabet) -> Dfa {
    let p = PaddedPairs::new(base.len());
    // 0: both tracks live, 1: left padded, 2: right padded
    Dfa::explore(
        base.padded().clone(),
        0u8,
        |&s, a| match (s, p.decode(a)) {
            (0, (Some(_), Some(_))) => Some(0),
            (0 | 1, (None, Some(_))) => Some(1),
            (0 | 2, (Some(_), None)) => Some(2),
            _ => None,
        },
        |_| true,
    )
}

impl SyncRelation {
    /// Wrap an automaton over `base.padded()`, discarding any invalid paddings it accepts.
    pub fn from_dfa(base: &Alphabet, dfa: &Dfa) -> Result<Self, RelationError> {
        base.padded().check_same(dfa.alphabet())?;
        let dfa = dfa.intersect(&valid_padding(base))?;
        Ok(SyncRelation {
            base: base.clone(),
            dfa,
        })
    }

    fn normalized(base: &Alphabet, dfa: Dfa) -> Self {
        SyncRelation::from_dfa(base, &dfa).expect("constructed over the padded alphabet")
    }

    pub fn from_nfa(base: &Alphabet, nfa: &Nfa) -> Result<Self, RelationError> {
        SyncRelation::from_dfa(base, &nfa.minimize())
    }

    pub fn empty(base: &Alphabet) -> Self {
        SyncRelation {
            base: base.clone(),
            dfa: Dfa::empty(base.padded().clone()),
        }
    }

    /// `A* × A*`.
    pub fn universal(base: &Alphabet) -> Self {
        SyncRelation {
            base: base.clone(),
            dfa: valid_padding(base),
        }
    }

    pub fn from_pairs<'w, I>(base: &Alphabet, pairs: I) -> Self
    where
        I: IntoIterator<Item = (&'w [Symbol], &'w [Symbol])>,
    {
        let words: Vec<Word> = pairs.into_iter().map(|(u, v)| convolve(base, u, v)).collect();
        SyncRelation::normalized(base, Dfa::finite(base.padded().clone(), words.iter().map(|w| w.as_slice())))
    }

    pub fn base(&self) -> &Alphabet {
        &self.base
    }

    pub fn dfa(&self) -> &Dfa {
        &self.dfa
    }

    fn pairs(&self) -> PaddedPairs {
        PaddedPairs::new(self.base.len())
    }

    pub fn contains(&self, u: &[Symbol], v: &[Symbol]) -> bool {
        self.dfa.accepts(&convolve(&self.base, u, v))
    }

    pub fn is_empty(&self) -> bool {
        self.dfa.is_empty()
    }

    pub fn is_finite(&self) -> bool {
        self.dfa.is_finite()
    }

    /// `{(x, z) : (x, y) ∈ self, (y, z) ∈ other}`, so that `L_u ∘ L_v = L_{uv}`.
    pub fn compose(&self, other: &SyncRelation) -> Result<SyncRelation, RelationError> {
        self.base.check_same(&other.base)?;
        let n = self.base.len();
        let p = self.pairs();
        let (r, s) = (&self.dfa, &other.dfa);
        let (r_live, s_live) = (r.live_states(), s.live_states());
        const DONE: u32 = u32::MAX;
        let track = |i: usize| (i < n).then_some(Symbol(i as u32));

        let mut m = Nfa::new(self.base.padded().clone());
        let mut ids: HashMap<(u32, u32), u32> = HashMap::new();
        let mut queue = vec![(0u32, 0u32)];
        let accept = |(a, b): (u32, u32)| (a == DONE || r.is_accepting(a)) && (b == DONE || s.is_accepting(b));
        ids.insert((0, 0), m.add_state(accept((0, 0))));
        m.set_initial(0)?;
        // One R-step on (x, y): `None` if impossible. ($,$) is the move into DONE.
        let step = |dfa: &Dfa, live: &[bool], st: u32, x: Option<Symbol>, y: Option<Symbol>| -> Option<u32> {
            match p.encode(x, y) {
                None => (st == DONE || dfa.is_accepting(st)).then_some(DONE),
                Some(pair) => {
                    if st == DONE {
                        return None;
                    }
                    let t = dfa.next(st, pair);
                    live[t as usize].then_some(t)
                }
            }
        };
        while let Some(state) = queue.pop() {
            let from = ids[&state];
            for xi in 0..=n {
                for yi in 0..=n {
                    let Some(r2) = step(r, &r_live, state.0, track(xi), track(yi)) else { continue };
                    for zi in 0..=n {
                        if xi == n && yi == n && zi == n {
                            continue;
                        }
                        let Some(s2) = step(s, &s_live, state.1, track(yi), track(zi)) else { continue };
                        let target = (r2, s2);
                        let to = match ids.get(&target) {
                            Some(&t) => t,
                            None => {
                                let t = m.add_state(accept(target));
                                ids.insert(target, t);
                                queue.push(target);
                                t
                            }
                        };
                        match p.encode(track(xi), track(zi)) {
                            Some(out) => m.add_transition(from, out, to)?,
                            None => m.add_epsilon(from, to)?,
                        }
                    }
                }
            }
        }
        Ok(SyncRelation::normalized(&self.base, m.minimize()))
    }

    pub fn invert(&self) -> SyncRelation {
        let p = self.pairs();
        let dfa = Dfa::from_fn(
            self.dfa.alphabet().clone(),
            self.dfa.num_states(),
            |s| self.dfa.is_accepting(s),
            |s, a| self.dfa.next(s, p.swap(a)),
        );
        SyncRelation {
            base: self.base.clone(),
            dfa: dfa.minimize(),
        }
    }

    pub fn union(&self, other: &SyncRelation) -> Result<SyncRelation, RelationError> {
        self.base.check_same(&other.base)?;
        Ok(SyncRelation::normalized(&self.base, self.dfa.union(&other.dfa)?))
    }

    pub fn intersect(&self, other: &SyncRelation) -> Result<SyncRelation, RelationError> {
        self.base.check_same(&other.base)?;
        Ok(SyncRelation::normalized(&self.base, self.dfa.intersect(&other.dfa)?))
    }

    pub fn difference(&self, other: &SyncRelation) -> Result<SyncRelation, RelationError> {
        self.base.check_same(&other.base)?;
        Ok(SyncRelation::normalized(&self.base, self.dfa.difference(&other.dfa)?))
    }

    /// Complement relative to `A* × A*`.
    pub fn complement(&self) -> SyncRelation {
        SyncRelation {
            base: self.base.clone(),
            dfa: valid_padding(&self.base)
                .difference(&self.dfa)
                .expect("same padded alphabet"),
        }
    }

    /// The words occurring in coordinate 1 or 2.
    pub fn project(&self, coordinate: usize) -> Dfa {
        assert!(coordinate == 1 || coordinate == 2, "coordinate must be 1 or 2");
        let p = self.pairs();
        let mut m = Nfa::new(self.base.clone());
        for s in 0..self.dfa.num_states() as u32 {
            m.add_state(self.dfa.is_accepting(s));
        }
        m.set_initial(0).expect("state 0 exists");
        for s in 0..self.dfa.num_states() as u32 {
            for a in self.dfa.alphabet().symbols() {
                let t = self.dfa.next(s, a);
                let (x, y) = p.decode(a);
                let letter = if coordinate == 1 { x } else { y };
                match letter {
                    Some(b) => m.add_transition(s, b, t),
                    None => m.add_epsilon(s, t),
                }
                .expect("valid state and symbol");
            }
        }
        m.minimize()
    }

    /// `{y : (x, y) ∈ self, x ∈ lang}`.
    pub fn image(&self, lang: &Dfa) -> Result<Dfa, RelationError> {
        let universal = Dfa::universal(self.base.clone());
        Ok(self.intersect(&product_relation(lang, &universal)?)?.project(2))
    }

    /// `{x : (x, y) ∈ self, y ∈ lang}`.
    pub fn preimage(&self, lang: &Dfa) -> Result<Dfa, RelationError> {
        let universal = Dfa::universal(self.base.clone());
        Ok(self.intersect(&product_relation(&universal, lang)?)?.project(1))
    }

    pub fn image_of_word(&self, x: &[Symbol]) -> Dfa {
        self.image(&Dfa::word(self.base.clone(), x)).expect("same alphabet")
    }

    /// The shortlex-least `y ∈ lang` with `(x, y)` in the relation, found without
    /// building the image automaton.
    pub fn image_word_least(&self, x: &[Symbol], lang: &Dfa) -> Option<Word> {
        let p = self.pairs();
        let m = x.len();
        let r = &self.dfa;
        let live = r.live_states();
        // tail[i][s]: reading (x_i,$)...(x_{m-1},$) from s accepts
        let mut tail: Vec<Vec<bool>> = vec![Vec::new(); m + 1];
        tail[m] = (0..r.num_states() as u32).map(|s| r.is_accepting(s)).collect();
        for i in (0..m).rev() {
            let pair = p.encode(Some(x[i]), None).expect("non-empty track");
            tail[i] = (0..r.num_states() as u32)
                .map(|s| tail[i + 1][r.next(s, pair) as usize])
                .collect();
        }
        crate::automata::shortlex_least_implicit(
            (0u32, 0usize, 0u32),
            self.base.len(),
            |&(s, i, l), y| {
                let pair = p.encode(x.get(i).copied(), Some(y)).expect("non-empty track");
                let t = r.next(s, pair);
                live[t as usize].then_some((t, (i + 1).min(m), lang.next(l, y)))
            },
            |&(s, i, l)| lang.is_accepting(l) && tail[i][s as usize],
        )
    }

    pub fn preimage_word_least(&self, y: &[Symbol], lang: &Dfa) -> Option<Word> {
        self.invert().image_word_least(y, lang)
    }

    /// Restrict to pairs with both coordinates in `lang`.
    pub fn restrict(&self, lang: &Dfa) -> Result<SyncRelation, RelationError> {
        self.intersect(&product_relation(lang, lang)?)
    }

    /// The same relation over a larger base alphabet; `map[i]` is the new name of symbol `i`.
    pub fn embed(&self, target: &Alphabet, map: &[Symbol]) -> SyncRelation {
        let (old, new) = (self.pairs(), PaddedPairs::new(target.len()));
        let pair_map: Vec<Symbol> = self
            .dfa
            .alphabet()
            .symbols()
            .map(|s| {
                let (x, y) = old.decode(s);
                new.encode(x.map(|a| map[a.index()]), y.map(|a| map[a.index()]))
                    .expect("non-empty track")
            })
            .collect();
        SyncRelation {
            base: target.clone(),
            dfa: self.dfa.embed(target.padded(), &pair_map),
        }
    }
}

/// `{(w, w) : w ∈ lang}`.
pub fn diagonal(lang: &Dfa) -> SyncRelation {
    let base = lang.alphabet().clone();
    let p = PaddedPairs::new(base.len());
    let dfa = Dfa::explore(
        base.padded().clone(),
        0u32,
        |&s, a| match p.decode(a) {
            (Some(x), Some(y)) if x == y => Some(lang.next(s, x)),
            _ => None,
        },
        |&s| lang.is_accepting(s),
    );
    SyncRelation { base, dfa }
}

/// `l1 × l2`.
pub fn product_relation(l1: &Dfa, l2: &Dfa) -> Result<SyncRelation, RelationError> {
    l1.alphabet().check_same(l2.alphabet())?;
    let base = l1.alphabet().clone();
    let p = PaddedPairs::new(base.len());
    #[derive(Clone, Copy, PartialEq, Eq, Hash)]
    enum Mode {
        Both,
        LeftDone,
        RightDone,
    }
    let dfa = Dfa::explore(
        base.padded().clone(),
        (0u32, 0u32, Mode::Both),
        |&(s, t, mode), a| match (mode, p.decode(a)) {
            (Mode::Both, (Some(x), Some(y))) => Some((l1.next(s, x), l2.next(t, y), Mode::Both)),
            (Mode::Both | Mode::LeftDone, (None, Some(y))) if l1.is_accepting(s) => {
                Some((s, l2.next(t, y), Mode::LeftDone))
            }
            (Mode::Both | Mode::RightDone, (Some(x), None)) if l2.is_accepting(t) => {
                Some((l1.next(s, x), t, Mode::RightDone))
            }
            _ => None,
        },
        |&(s, t, _)| l1.is_accepting(s) && l2.is_accepting(t),
    );
    Ok(SyncRelation { base, dfa })
}

/// `{(u, v) : u <_shortlex v}` for the alphabet's symbol order.
pub fn shortlex_less(base: &Alphabet) -> SyncRelation {
    let p = PaddedPairs::new(base.len());
    #[derive(Clone, Copy, PartialEq, Eq, Hash)]
    enum St {
        Equal,
        Less,
        Greater,
        LeftShorter,
        RightShorter,
    }
    let dfa = Dfa::explore(
        base.padded().clone(),
        St::Equal,
        |&s, a| match (s, p.decode(a)) {
            (St::Equal, (Some(x), Some(y))) => Some(match x.cmp(&y) {
                std::cmp::Ordering::Less => St::Less,
                std::cmp::Ordering::Equal => St::Equal,
                std::cmp::Ordering::Greater => St::Greater,
            }),
            (St::Less | St::Greater, (Some(_), Some(_))) => Some(s),
            (St::Equal | St::Less | St::Greater | St::LeftShorter, (None, Some(_))) => Some(St::LeftShorter),
            (St::Equal | St::Less | St::Greater | St::RightShorter, (Some(_), None)) => Some(St::RightShorter),
            _ => None,
        },
        |&s| matches!(s, St::Less | St::LeftShorter),
    );
    SyncRelation {
        base: base.clone(),
        dfa,
    }
}

pub fn relations_equal(r: &SyncRelation, s: &SyncRelation) -> Result<bool, RelationError> {
    r.base.check_same(&s.base)?;
    Ok(r.dfa == s.dfa)
}

pub fn is_subrelation(r: &SyncRelation, s: &SyncRelation) -> Result<bool, RelationError> {
    Ok(r.difference(s)?.is_empty())
}

/// True iff `r` is exactly the diagonal on `lang`.
pub fn is_diagonal_on(r: &SyncRelation, lang: &Dfa) -> Result<bool, RelationError> {
    relations_equal(r, &diagonal(lang))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ab() -> Alphabet {
        Alphabet::from_chars("ab").unwrap()
    }

    fn w(a: &Alphabet, s: &str) -> Word {
        a.parse_word(s).unwrap()
    }

    #[test]
    fn convolution_cases() {
        let a = Alphabet::from_chars("abc").unwrap();
        let c = convolve(&a, &w(&a, "ab"), &w(&a, "b"));
        assert_eq!(a.padded().format_word(&c), "(a,b).(b,$)");
        assert!(convolve(&a, &[], &[]).is_empty());
        let c = convolve(&a, &w(&a, "a"), &w(&a, "abc"));
        assert_eq!(a.padded().format_word(&c), "(a,a).($,b).($,c)");
        assert_eq!(deconvolve(&a, &c).unwrap(), (w(&a, "a"), w(&a, "abc")));
    }

    #[test]
    fn deconvolve_rejects_letter_after_pad() {
        let a = ab();
        let bad = a.padded().parse_word("(a,$).($,b)").unwrap();
        assert!(matches!(deconvolve(&a, &bad), Err(RelationError::InvalidPadding(_))));
    }

    #[test]
    fn compose_small() {
        let a = ab();
        let r = SyncRelation::from_pairs(&a, [(w(&a, "a").as_slice(), w(&a, "ab").as_slice())]);
        let s = SyncRelation::from_pairs(&a, [(w(&a, "ab").as_slice(), w(&a, "b").as_slice())]);
        let c = r.compose(&s).unwrap();
        let expect = SyncRelation::from_pairs(&a, [(w(&a, "a").as_slice(), w(&a, "b").as_slice())]);
        assert_eq!(c, expect);
    }

    #[test]
    fn compose_through_longer_middle_word() {
        // (a, aab) then (aab, b): the middle word outlasts both ends
        let a = ab();
        let r = SyncRelation::from_pairs(&a, [(w(&a, "a").as_slice(), w(&a, "aab").as_slice())]);
        let s = SyncRelation::from_pairs(&a, [(w(&a, "aab").as_slice(), w(&a, "b").as_slice())]);
        let c = r.compose(&s).unwrap();
        assert!(c.contains(&w(&a, "a"), &w(&a, "b")));
        assert!(c.is_finite());
        assert_eq!(c.dfa().enumerate(10, None).len(), 1);
    }

    #[test]
    fn invert_and_project() {
        let a = ab();
        let r = SyncRelation::from_pairs(
            &a,
            [
                (w(&a, "a").as_slice(), w(&a, "ab").as_slice()),
                (w(&a, "b").as_slice(), w(&a, "bb").as_slice()),
            ],
        );
        assert!(r.invert().contains(&w(&a, "ab"), &w(&a, "a")));
        assert_eq!(r.invert().invert(), r);
        let p2 = r.project(2);
        assert_eq!(p2.enumerate(10, None), vec![w(&a, "ab"), w(&a, "bb")]);
        assert_eq!(r.project(2), r.invert().project(1));
    }

    #[test]
    fn shortlex_examples() {
        let a = ab();
        let lt = shortlex_less(&a);
        assert!(lt.contains(&w(&a, "a"), &w(&a, "b")));
        assert!(lt.contains(&w(&a, "b"), &w(&a, "aa")));
        assert!(!lt.contains(&w(&a, "aa"), &w(&a, "b")));
        assert!(!lt.contains(&w(&a, "ab"), &w(&a, "ab")));
        assert!(lt.contains(&[], &w(&a, "a")));
    }

    #[test]
    fn image_word_least_matches_image() {
        let a = ab();
        let all = Dfa::universal(a.clone());
        let r = shortlex_less(&a);
        let x = w(&a, "ba");
        assert_eq!(r.image_word_least(&x, &all), Some(w(&a, "bb")));
        assert_eq!(r.image_of_word(&x).shortlex_least(), Some(w(&a, "bb")));
        assert_eq!(r.preimage_word_least(&x, &all), Some(vec![]));
        assert_eq!(SyncRelation::empty(&a).image_word_least(&x, &all), None);
    }

    #[test]
    fn product_and_diagonal() {
        let a = ab();
        let l1 = Dfa::word(a.clone(), &w(&a, "a"));
        let l2 = Dfa::finite(a.clone(), [w(&a, "b").as_slice(), w(&a, "bb").as_slice()]);
        let p = product_relation(&l1, &l2).unwrap();
        let expect = SyncRelation::from_pairs(
            &a,
            [
                (w(&a, "a").as_slice(), w(&a, "b").as_slice()),
                (w(&a, "a").as_slice(), w(&a, "bb").as_slice()),
            ],
        );
        assert_eq!(p, expect);
        assert!(diagonal(&Dfa::empty(a.clone())).is_empty());
        assert!(is_diagonal_on(&diagonal(&l2), &l2).unwrap());
    }

    #[test]
    fn complement_is_valid() {
        let a = ab();
        let r = shortlex_less(&a);
        let c = r.complement();
        assert!(r.intersect(&c).unwrap().is_empty());
        assert!(is_subrelation(&c, &SyncRelation::universal(&a)).unwrap());
        assert_eq!(r.union(&c).unwrap(), SyncRelation::universal(&a));
    }
}
