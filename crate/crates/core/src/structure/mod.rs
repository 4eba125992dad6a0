//! Automatic structures: representatives, equality and multiplier relations, and
//! assignments of generators.

pub mod catalog;
mod surgery;

use std::fmt;

use crate::automata::{Alphabet, AutomataError, Dfa, Symbol, Word};
use crate::relations::{
    diagonal, is_subrelation, product_relation, relations_equal, RelationError, SyncRelation,
};

pub use surgery::CrossSectionOptions;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum StructureError {
    #[error(transparent)]
    Relation(#[from] RelationError),
    #[error("expected {expected} multipliers, found {found}")]
    MultiplierCount { expected: usize, found: usize },
    #[error("search bound exhausted: {0}")]
    BoundExhausted(String),
    #[error("generator `{0}` is not a word of the representative language")]
    GeneratorNotInL(String),
    #[error("assigned word for `{0}` is not in the representative language")]
    AssignmentOutsideL(String),
    #[error("the new representative language differs from the old one by infinitely many words")]
    InfiniteDifference,
    #[error("the new representative language misses the element of `{0}`")]
    NotOnto(String),
    #[error("generators `{0}` and `{1}` represent the same element")]
    GeneratorsNotInjective(String, String),
    #[error("the empty word is not a representative of this structure")]
    EmptyWord,
    #[error("inconsistent structure: {0}")]
    Inconsistent(String),
}

impl From<AutomataError> for StructureError {
    fn from(e: AutomataError) -> Self {
        StructureError::Relation(e.into())
    }
}

/// `(A, L, L_=, {L_a})` without an interpretation.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PreAutomaticStructure {
    generators: Alphabet,
    rep_lang: Dfa,
    equality: SyncRelation,
    multipliers: Vec<SyncRelation>,
}

/// A failed necessary condition found by [`PreAutomaticStructure::sanity_validate`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Diagnostic {
    EqualityContainment,
    MultiplierContainment(String),
    NotReflexive,
    NotSymmetric,
    NotTransitive,
    LeftIncompatible(String),
    RightIncompatible(String),
    NotTotal(String),
    AssignmentOutsideL(String),
    EmptyWordWithoutMonoidFlag,
    NotDiagonal,
    GeneratorNotInL(String),
}

impl fmt::Display for Diagnostic {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Diagnostic::EqualityContainment => write!(f, "containment(=): L_= is not contained in L x L"),
            Diagnostic::MultiplierContainment(a) => write!(f, "containment({a}): L_{a} is not contained in L x L"),
            Diagnostic::NotReflexive => write!(f, "reflexive: L_= is not reflexive on L"),
            Diagnostic::NotSymmetric => write!(f, "symmetric: L_= is not symmetric"),
            Diagnostic::NotTransitive => write!(f, "transitive: L_= is not transitive"),
            Diagnostic::LeftIncompatible(a) => write!(f, "compatibility({a}): L_= o L_{a} is not contained in L_{a}"),
            Diagnostic::RightIncompatible(a) => write!(f, "compatibility({a}): L_{a} o L_= is not contained in L_{a}"),
            Diagnostic::NotTotal(a) => write!(f, "totality({a}): the domain of L_{a} is not L"),
            Diagnostic::AssignmentOutsideL(a) => write!(f, "assignment({a}): assigned word is not in L"),
            Diagnostic::EmptyWordWithoutMonoidFlag => write!(f, "epsilon: L contains the empty word but the monoid flag is unset"),
            Diagnostic::NotDiagonal => write!(f, "uniqueness: flagged as a cross-section but L_= is not the diagonal"),
            Diagnostic::GeneratorNotInL(a) => write!(f, "embedded({a}): flagged as embedded but `{a}` is not in L"),
        }
    }
}

impl PreAutomaticStructure {
    pub fn new(
        generators: Alphabet,
        rep_lang: Dfa,
        equality: SyncRelation,
        multipliers: Vec<SyncRelation>,
    ) -> Result<Self, StructureError> {
        generators.check_same(rep_lang.alphabet())?;
        generators.check_same(equality.base())?;
        if multipliers.len() != generators.len() {
            return Err(StructureError::MultiplierCount {
                expected: generators.len(),
                found: multipliers.len(),
            });
        }
        for m in &multipliers {
            generators.check_same(m.base())?;
        }
        Ok(PreAutomaticStructure {
            generators,
            rep_lang: rep_lang.minimize(),
            equality,
            multipliers,
        })
    }

    pub fn generators(&self) -> &Alphabet {
        &self.generators
    }

    pub fn rep_lang(&self) -> &Dfa {
        &self.rep_lang
    }

    pub fn equality(&self) -> &SyncRelation {
        &self.equality
    }

    pub fn multipliers(&self) -> &[SyncRelation] {
        &self.multipliers
    }

    pub fn letter_multiplier(&self, a: Symbol) -> &SyncRelation {
        &self.multipliers[a.index()]
    }

    /// `L_w = L_{a1} ∘ … ∘ L_{an}`, with `L_ε = L_=`.
    pub fn multiplier(&self, w: &[Symbol]) -> SyncRelation {
        let Some((&first, rest)) = w.split_first() else {
            return self.equality.clone();
        };
        rest.iter().fold(self.multipliers[first.index()].clone(), |acc, &a| {
            acc.compose(&self.multipliers[a.index()]).expect("shared base alphabet")
        })
    }

    /// `u` and `v` act identically by left multiplication on every element.
    pub fn right_trans_equiv(&self, u: &[Symbol], v: &[Symbol]) -> bool {
        self.multiplier(u) == self.multiplier(v)
    }

    /// Checkable necessary conditions for the structure to describe some semigroup.
    /// An empty result does not prove that one exists.
    pub fn sanity_validate(&self) -> Vec<Diagnostic> {
        let mut out = Vec::new();
        let l = &self.rep_lang;
        let ll = product_relation(l, l).expect("shared alphabet");
        let eq = &self.equality;
        if !is_subrelation(eq, &ll).expect("shared alphabet") {
            out.push(Diagnostic::EqualityContainment);
        }
        for a in self.generators.symbols() {
            if !is_subrelation(self.letter_multiplier(a), &ll).expect("shared alphabet") {
                out.push(Diagnostic::MultiplierContainment(self.generators.name(a).to_string()));
            }
        }
        if !is_subrelation(&diagonal(l), eq).expect("shared alphabet") {
            out.push(Diagnostic::NotReflexive);
        }
        if eq.invert() != *eq {
            out.push(Diagnostic::NotSymmetric);
        }
        if !is_subrelation(&eq.compose(eq).expect("shared alphabet"), eq).expect("shared alphabet") {
            out.push(Diagnostic::NotTransitive);
        }
        for a in self.generators.symbols() {
            let la = self.letter_multiplier(a);
            let name = self.generators.name(a).to_string();
            if !is_subrelation(&eq.compose(la).expect("shared"), la).expect("shared") {
                out.push(Diagnostic::LeftIncompatible(name.clone()));
            }
            if !is_subrelation(&la.compose(eq).expect("shared"), la).expect("shared") {
                out.push(Diagnostic::RightIncompatible(name.clone()));
            }
            if la.project(1) != *l {
                out.push(Diagnostic::NotTotal(name));
            }
        }
        out
    }

    fn contains_word(&self, w: &[Symbol]) -> bool {
        self.rep_lang.accepts(w)
    }

    /// Assignment by the first word of `L`, in shortlex order, whose multiplier equals
    /// `L_a`. Only meaningful when no two elements are right translationally equivalent.
    pub fn find_assignment(&self, bound: usize) -> Result<Vec<Word>, StructureError> {
        let candidates: Vec<(Word, SyncRelation)> = self
            .rep_lang
            .shortlex()
            .take(bound)
            .map(|w| {
                let m = self.multiplier(&w);
                (w, m)
            })
            .collect();
        self.generators
            .symbols()
            .map(|a| {
                candidates
                    .iter()
                    .find(|(_, m)| m == self.letter_multiplier(a))
                    .map(|(w, _)| w.clone())
                    .ok_or_else(|| StructureError::BoundExhausted(format!("no assignment for `{}`", self.generators.name(a))))
            })
            .collect()
    }

    /// `ι(a) = a`, available when each generator is itself a representative.
    pub fn embedded_assignment(&self) -> Result<Vec<Word>, StructureError> {
        self.generators
            .symbols()
            .map(|a| {
                if self.contains_word(&[a]) {
                    Ok(vec![a])
                } else {
                    Err(StructureError::GeneratorNotInL(self.generators.name(a).to_string()))
                }
            })
            .collect()
    }
}

/// Structural facts recorded alongside an interpreted structure.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct StructureFlags {
    /// `L_=` is the diagonal on `L`.
    pub has_uniqueness: bool,
    /// Every generator letter is in `L` and assigned to itself.
    pub generators_embedded: bool,
    /// The described semigroup is a monoid whose identity may be represented by `ε`.
    pub monoid_with_epsilon: bool,
}

/// A structure together with an assignment of generators `ι: A → L`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct InterpretedAutomaticStructure {
    structure: PreAutomaticStructure,
    assignment: Vec<Word>,
    flags: StructureFlags,
}

impl InterpretedAutomaticStructure {
    /// Flags are taken as given for `monoid_with_epsilon`; the other two are recomputed.
    pub fn new(
        structure: PreAutomaticStructure,
        assignment: Vec<Word>,
        monoid_with_epsilon: bool,
    ) -> Result<Self, StructureError> {
        if assignment.len() != structure.generators.len() {
            return Err(StructureError::MultiplierCount {
                expected: structure.generators.len(),
                found: assignment.len(),
            });
        }
        for (a, w) in structure.generators.symbols().zip(&assignment) {
            if !structure.contains_word(w) {
                return Err(StructureError::AssignmentOutsideL(structure.generators.name(a).to_string()));
            }
        }
        let flags = StructureFlags {
            has_uniqueness: false,
            generators_embedded: false,
            monoid_with_epsilon,
        };
        let mut s = InterpretedAutomaticStructure {
            structure,
            assignment,
            flags,
        };
        s.flags = s.compute_flags();
        Ok(s)
    }

    /// Assemble without recomputing flags; the caller vouches for them.
    pub fn from_parts_unchecked(
        structure: PreAutomaticStructure,
        assignment: Vec<Word>,
        flags: StructureFlags,
    ) -> Self {
        InterpretedAutomaticStructure {
            structure,
            assignment,
            flags,
        }
    }

    fn compute_flags(&self) -> StructureFlags {
        let s = &self.structure;
        StructureFlags {
            has_uniqueness: *s.equality() == diagonal(s.rep_lang()),
            generators_embedded: s
                .generators
                .symbols()
                .all(|a| s.contains_word(&[a]) && self.assignment[a.index()] == [a]),
            monoid_with_epsilon: self.flags.monoid_with_epsilon,
        }
    }

    pub fn structure(&self) -> &PreAutomaticStructure {
        &self.structure
    }

    pub fn assignment(&self) -> &[Word] {
        &self.assignment
    }

    pub fn flags(&self) -> StructureFlags {
        self.flags
    }

    pub fn generators(&self) -> &Alphabet {
        self.structure.generators()
    }

    pub fn rep_lang(&self) -> &Dfa {
        self.structure.rep_lang()
    }

    pub fn equality(&self) -> &SyncRelation {
        self.structure.equality()
    }

    pub fn multiplier(&self, w: &[Symbol]) -> SyncRelation {
        self.structure.multiplier(w)
    }

    pub fn is_cross_section(&self) -> bool {
        self.flags.has_uniqueness && self.flags.generators_embedded && !self.rep_lang().accepts(&[])
    }

    /// Structural diagnostics plus checks on the assignment and flags.
    pub fn sanity_validate(&self) -> Vec<Diagnostic> {
        let mut out = self.structure.sanity_validate();
        let g = self.generators();
        for a in g.symbols() {
            if !self.rep_lang().accepts(&self.assignment[a.index()]) {
                out.push(Diagnostic::AssignmentOutsideL(g.name(a).to_string()));
            }
        }
        if self.rep_lang().accepts(&[]) && !self.flags.monoid_with_epsilon {
            out.push(Diagnostic::EmptyWordWithoutMonoidFlag);
        }
        let actual = self.compute_flags();
        if self.flags.has_uniqueness && !actual.has_uniqueness {
            out.push(Diagnostic::NotDiagonal);
        }
        if self.flags.generators_embedded {
            for a in g.symbols() {
                if !self.rep_lang().accepts(&[a]) {
                    out.push(Diagnostic::GeneratorNotInL(g.name(a).to_string()));
                }
            }
        }
        out
    }

    /// A word of `L` representing the same element as `u`, built letter by letter from
    /// the assignment; at each step the shortlex-least candidate is taken.
    pub fn find_representative(&self, u: &[Symbol]) -> Result<Word, StructureError> {
        let Some((&first, rest)) = u.split_first() else {
            if self.flags.monoid_with_epsilon && self.rep_lang().accepts(&[]) {
                return Ok(Vec::new());
            }
            return Err(StructureError::EmptyWord);
        };
        let mut x = self.assignment[first.index()].clone();
        for &a in rest {
            x = self
                .structure
                .letter_multiplier(a)
                .image_word_least(&x, self.rep_lang())
                .ok_or_else(|| {
                    let g = self.generators();
                    StructureError::Inconsistent(format!(
                        "no image of `{}` under L_{}",
                        g.format_word(&x),
                        g.name(a)
                    ))
                })?;
        }
        Ok(x)
    }

    /// Representatives of `u` and `v` are `L_=`-related.
    pub fn word_problem(&self, u: &[Symbol], v: &[Symbol]) -> Result<bool, StructureError> {
        let x = self.find_representative(u)?;
        let y = self.find_representative(v)?;
        Ok(x == y || self.equality().contains(&x, &y))
    }

    /// The shortlex-least word of `lang` representing the same element as the
    /// representative `x ∈ L`.
    pub(crate) fn least_equivalent_in(&self, x: &[Symbol], lang: &Dfa) -> Option<Word> {
        self.equality().image_word_least(x, lang)
    }

    pub fn right_trans_equiv(&self, u: &[Symbol], v: &[Symbol]) -> bool {
        self.structure.right_trans_equiv(u, v)
    }

    pub fn with_representatives(&self, k: &Dfa) -> Result<Self, StructureError> {
        surgery::with_representatives(self, k)
    }

    pub fn to_cross_section(&self, options: &CrossSectionOptions) -> Result<Self, StructureError> {
        surgery::to_cross_section(self, options)
    }

    pub fn adjoin_zero(&self) -> Self {
        surgery::adjoin_zero(self)
    }

    /// Equality of all component automata.
    pub fn same_relations(&self, other: &Self) -> bool {
        self.generators() == other.generators()
            && self.rep_lang() == other.rep_lang()
            && relations_equal(self.equality(), other.equality()).unwrap_or(false)
            && self
                .structure
                .multipliers
                .iter()
                .zip(&other.structure.multipliers)
                .all(|(a, b)| a == b)
    }
}

