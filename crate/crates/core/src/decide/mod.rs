//! Decision procedures over interpreted automatic structures.

mod czs;
mod rees;

use std::cell::{OnceCell, RefCell};
use std::collections::HashMap;

use crate::automata::{Dfa, Symbol, Word};
use crate::relations::{diagonal, is_subrelation, product_relation, SyncRelation};
use crate::structure::{CrossSectionOptions, InterpretedAutomaticStructure, StructureError};

pub use czs::CzsOutcome;
pub use rees::{phi_relation, ReesRepresentation};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum DecisionError {
    #[error(transparent)]
    Structure(#[from] StructureError),
    #[error("the semigroup has no identity")]
    NotAMonoid,
    #[error("`{0}` does not represent an idempotent")]
    NotIdempotent(String),
    #[error("not completely zero-simple: {0}")]
    NotCzs(String),
    #[error("not completely simple: {0}")]
    NotCompletelySimple(String),
    #[error("search bound exhausted: {0}")]
    BoundExhausted(String),
}

/// Outcome of counting the left inverses of `w` with respect to an idempotent `e`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Trichotomy {
    /// Infinitely many left inverses.
    A,
    /// Finitely many, listed; the first entry is also a right inverse.
    B(Vec<Word>),
    /// Finitely many (possibly none), listed; none is a right inverse.
    C(Vec<Word>),
}

impl Trichotomy {
    pub fn tag(&self) -> char {
        match self {
            Trichotomy::A => 'A',
            Trichotomy::B(_) => 'B',
            Trichotomy::C(_) => 'C',
        }
    }
}

/// A structure with memoized multipliers.
pub(crate) struct Work {
    s: InterpretedAutomaticStructure,
    multipliers: RefCell<HashMap<Word, SyncRelation>>,
}

impl Work {
    fn new(s: InterpretedAutomaticStructure) -> Self {
        Work {
            s,
            multipliers: RefCell::new(HashMap::new()),
        }
    }

    pub(crate) fn structure(&self) -> &InterpretedAutomaticStructure {
        &self.s
    }

    fn lang(&self) -> &Dfa {
        self.s.rep_lang()
    }

    fn word_lang(&self, w: &[Symbol]) -> Dfa {
        Dfa::word(self.s.generators().clone(), w)
    }

    /// `L_w`, built from the cached multiplier of the longest known prefix.
    pub(crate) fn multiplier(&self, w: &[Symbol]) -> SyncRelation {
        if let Some(m) = self.multipliers.borrow().get(w) {
            return m.clone();
        }
        let m = match w.split_last() {
            None => self.s.equality().clone(),
            Some((_, [])) => self.s.structure().letter_multiplier(w[0]).clone(),
            Some((&a, prefix)) => self
                .multiplier(prefix)
                .compose(self.s.structure().letter_multiplier(a))
                .expect("shared alphabet"),
        };
        self.multipliers.borrow_mut().insert(w.to_vec(), m.clone());
        m
    }

    pub(crate) fn rep(&self, u: &[Symbol]) -> Result<Word, DecisionError> {
        Ok(self.s.find_representative(u)?)
    }

    pub(crate) fn same(&self, x: &[Symbol], y: &[Symbol]) -> bool {
        x == y || self.s.equality().contains(x, y)
    }

    pub(crate) fn word_problem(&self, u: &[Symbol], v: &[Symbol]) -> Result<bool, DecisionError> {
        Ok(self.same(&self.rep(u)?, &self.rep(v)?))
    }

    /// Representative of the product of two representatives.
    pub(crate) fn product(&self, x: &[Symbol], y: &[Symbol]) -> Result<Word, DecisionError> {
        if y.is_empty() {
            return Ok(x.to_vec());
        }
        self.rep(&[x, y].concat())
    }

    fn left_zeros(&self) -> Dfa {
        let s = &self.s;
        let lang = self.lang();
        let mut acc = diagonal(lang);
        for m in s.structure().multipliers() {
            acc = acc.intersect(m).expect("shared alphabet");
        }
        acc.project(1)
    }

    /// Words `w' ∈ L` with `w'·w = target`.
    fn solutions(&self, w: &[Symbol], target: &[Symbol]) -> Dfa {
        self.multiplier(w)
            .preimage(&self.word_lang(target))
            .and_then(|k| Ok(k.intersect(self.lang())?))
            .expect("shared alphabet")
    }
}

/// Runs the decision procedures for one structure, caching cross-sections and
/// multiplier relations between calls.
pub struct Decider {
    base: Work,
    with_epsilon: OnceCell<Result<Work, StructureError>>,
    without_epsilon: OnceCell<Result<Work, StructureError>>,
    options: CrossSectionOptions,
    /// Bound on enumerations (`w_a` searches and similar).
    pub search_bound: usize,
}

impl Decider {
    pub fn new(s: &InterpretedAutomaticStructure) -> Self {
        Decider {
            base: Work::new(s.clone()),
            with_epsilon: OnceCell::new(),
            without_epsilon: OnceCell::new(),
            options: CrossSectionOptions::default(),
            search_bound: 20_000,
        }
    }

    pub fn structure(&self) -> &InterpretedAutomaticStructure {
        &self.base.s
    }

    /// The cross-section used by procedures that need uniqueness. A monoid keeps `ε`
    /// as its identity's representative unless `epsilon_free`.
    pub(crate) fn cross_section(&self, epsilon_free: bool) -> Result<&Work, DecisionError> {
        let cell = if epsilon_free { &self.without_epsilon } else { &self.with_epsilon };
        let options = CrossSectionOptions {
            keep_epsilon: !epsilon_free,
            ..self.options.clone()
        };
        cell.get_or_init(|| self.base.s.to_cross_section(&options).map(Work::new))
            .as_ref()
            .map_err(|e| DecisionError::Structure(e.clone()))
    }

    pub fn cross_section_structure(&self, epsilon_free: bool) -> Result<&InterpretedAutomaticStructure, DecisionError> {
        Ok(&self.cross_section(epsilon_free)?.s)
    }

    pub fn find_representative(&self, u: &[Symbol]) -> Result<Word, DecisionError> {
        self.base.rep(u)
    }

    pub fn word_problem(&self, u: &[Symbol], v: &[Symbol]) -> Result<bool, DecisionError> {
        self.base.word_problem(u, v)
    }

    /// `xw = x'w` only for `x = x'`, decided on a cross-section.
    pub fn is_right_cancellable(&self, w: &[Symbol]) -> Result<bool, DecisionError> {
        let cs = self.cross_section(false)?;
        let m = cs.multiplier(w);
        let kernel = m.compose(&m.invert()).expect("shared alphabet");
        Ok(kernel == diagonal(cs.lang()))
    }

    /// Every generator is right cancellable: `L_a ∘ L_a⁻¹ ⊆ L_=`. Needs no interpretation.
    pub fn is_right_cancellative(&self) -> bool {
        let s = self.base.s.structure();
        s.multipliers().iter().all(|m| {
            let kernel = m.compose(&m.invert()).expect("shared alphabet");
            is_subrelation(&kernel, s.equality()).expect("shared alphabet")
        })
    }

    /// Words of `L` representing left zeros.
    pub fn left_zeros(&self) -> Dfa {
        self.base.left_zeros()
    }

    /// The representative of the zero in the cross-section, if there is a zero.
    pub fn zero(&self) -> Result<Option<Word>, DecisionError> {
        let cs = self.cross_section(false)?;
        let lz = cs.left_zeros();
        let words = lz.enumerate(2, None);
        if words.len() != 1 || !lz.is_finite() {
            return Ok(None);
        }
        let z = words.into_iter().next().expect("one word");
        let right_zero = product_relation(cs.lang(), &cs.word_lang(&z)).expect("shared alphabet");
        Ok((cs.multiplier(&z) == right_zero).then_some(z))
    }

    /// The representative of the identity in the cross-section, if the semigroup is a monoid.
    pub fn identity(&self) -> Result<Option<Word>, DecisionError> {
        let cs = self.cross_section(false)?;
        let g = cs.s.generators();
        let mut k = cs.lang().clone();
        for a in g.symbols() {
            let stab = cs.s.structure().letter_multiplier(a).preimage(&cs.word_lang(&[a])).expect("shared alphabet");
            k = k.intersect(&stab).expect("shared alphabet");
        }
        let words = k.enumerate(2, None);
        if words.len() != 1 {
            return Ok(None);
        }
        let e = words.into_iter().next().expect("one word");
        Ok((cs.multiplier(&e) == *cs.s.equality()).then_some(e))
    }

    fn require_identity(&self) -> Result<Word, DecisionError> {
        self.identity()?.ok_or(DecisionError::NotAMonoid)
    }

    /// Representatives of the left inverses of `w`.
    pub fn left_inverses(&self, w: &[Symbol]) -> Result<Dfa, DecisionError> {
        let e = self.require_identity()?;
        let cs = self.cross_section(false)?;
        Ok(cs.solutions(w, &e))
    }

    pub fn is_unit(&self, w: &[Symbol]) -> Result<bool, DecisionError> {
        let e = self.require_identity()?;
        let cs = self.cross_section(false)?;
        let k = cs.solutions(w, &e);
        let found = k.enumerate(2, None);
        if found.len() != 1 {
            return Ok(false);
        }
        Ok(cs.same(&cs.product(&cs.rep_or_empty(w)?, &found[0])?, &e))
    }

    pub fn inverse_trichotomy(&self, w: &[Symbol], e: &[Symbol]) -> Result<Trichotomy, DecisionError> {
        let cs = self.cross_section(false)?;
        trichotomy_in(cs, w, e)
    }

    pub fn is_completely_zero_simple(&self) -> Result<CzsOutcome, DecisionError> {
        czs::decide(self)
    }

    /// `S` is completely simple iff `S⁰` is completely zero-simple.
    pub fn is_completely_simple(&self) -> Result<CzsOutcome, DecisionError> {
        Decider::new(&self.base.s.adjoin_zero()).is_completely_zero_simple()
    }

    pub fn find_related_idempotents(&self, w: &[Symbol], idempotents: &[Word]) -> Result<Option<(Word, Word)>, DecisionError> {
        let cs = self.cross_section(true)?;
        let x = cs.rep(w)?;
        czs::find_related_idempotents(cs, &x, idempotents)
    }

    pub fn rees_decomposition(&self) -> Result<ReesRepresentation, DecisionError> {
        rees::decompose(self)
    }

    pub fn rees_decomposition_simple(&self) -> Result<ReesRepresentation, DecisionError> {
        let with_zero = Decider::new(&self.base.s.adjoin_zero());
        let outcome = with_zero.is_completely_zero_simple()?;
        if let CzsOutcome::No(reason) = outcome {
            return Err(DecisionError::NotCompletelySimple(reason));
        }
        let r = with_zero.rees_decomposition()?;
        if r.matrix.iter().flatten().any(Option::is_none) {
            return Err(DecisionError::NotCompletelySimple("sandwich matrix has a zero entry".into()));
        }
        Ok(r)
    }
}

impl Work {
    /// Representative of `w`, allowing the empty word when it is itself a representative.
    fn rep_or_empty(&self, w: &[Symbol]) -> Result<Word, DecisionError> {
        if w.is_empty() && self.lang().accepts(&[]) {
            return Ok(Vec::new());
        }
        self.rep(w)
    }
}

pub(crate) fn trichotomy_in(cs: &Work, w: &[Symbol], e: &[Symbol]) -> Result<Trichotomy, DecisionError> {
    let g = cs.s.generators();
    let e = cs.rep_or_empty(e)?;
    if !cs.same(&cs.product(&e, &e)?, &e) {
        return Err(DecisionError::NotIdempotent(g.format_word(&e)));
    }
    let w = cs.rep_or_empty(w)?;
    let k = cs.solutions(&w, &e);
    if !k.is_finite() {
        return Ok(Trichotomy::A);
    }
    let mut witnesses: Vec<Word> = k.shortlex().collect();
    for i in 0..witnesses.len() {
        if cs.same(&cs.product(&w, &witnesses[i])?, &e) {
            let right = witnesses.remove(i);
            witnesses.insert(0, right);
            return Ok(Trichotomy::B(witnesses));
        }
    }
    Ok(Trichotomy::C(witnesses))
}

/// One-shot form of [`Decider::word_problem`].
pub fn word_problem(s: &InterpretedAutomaticStructure, u: &[Symbol], v: &[Symbol]) -> Result<bool, DecisionError> {
    Ok(s.word_problem(u, v)?)
}

pub fn find_representative(s: &InterpretedAutomaticStructure, u: &[Symbol]) -> Result<Word, DecisionError> {
    Ok(s.find_representative(u)?)
}

#[cfg(test)]
mod tests;
