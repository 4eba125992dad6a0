//! Finite string-rewriting systems, and the rewriting system of a Turing machine.

mod machine;
mod rm;

use std::cmp::Ordering;

use crate::automata::{Alphabet, AutomataError, Dfa, Symbol, Word};

pub use machine::{Move, RunOutcome, Transition, TuringMachine};
pub use rm::{build_rm, RmSystem};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum RewriteError {
    #[error(transparent)]
    Automata(#[from] AutomataError),
    #[error("rule {0} has an empty left-hand side")]
    EmptyLhs(usize),
    #[error("no normal form within {0} rewriting steps")]
    StepBoundExceeded(usize),
    #[error("machine: {0}")]
    Machine(String),
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Rule {
    pub lhs: Word,
    pub rhs: Word,
}

#[derive(Clone, Debug)]
pub struct StringRewritingSystem {
    alphabet: Alphabet,
    rules: Vec<Rule>,
}

/// A well-founded order used to certify termination.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum TerminationOrder {
    /// More occurrences of the marker first; on a tie, compare the lengths of the blocks
    /// between markers from the left.
    DBlocks(Symbol),
    Length,
    Shortlex,
}

impl TerminationOrder {
    /// `u > v`.
    pub fn greater(&self, u: &[Symbol], v: &[Symbol]) -> bool {
        match *self {
            TerminationOrder::Length => u.len() > v.len(),
            TerminationOrder::Shortlex => crate::automata::shortlex_cmp(u, v) == Ordering::Greater,
            TerminationOrder::DBlocks(d) => {
                let count = |w: &[Symbol]| w.iter().filter(|&&x| x == d).count();
                match count(u).cmp(&count(v)) {
                    Ordering::Greater => true,
                    Ordering::Less => false,
                    Ordering::Equal => {
                        let blocks = |w: &[Symbol]| w.split(|&x| x == d).map(<[Symbol]>::len).collect::<Vec<_>>();
                        blocks(u).cmp(&blocks(v)) == Ordering::Greater
                    }
                }
            }
        }
    }
}

/// Two left-hand sides sharing a factor, and what the two rewrites produce.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CriticalPair {
    pub rules: (usize, usize),
    pub word: Word,
    pub left: Word,
    pub right: Word,
    /// Both sides reach the same normal form (`None` if the step bound ran out).
    pub joinable: Option<bool>,
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct ConvergenceReport {
    /// Rules whose right-hand side is not smaller than the left under the order.
    pub not_decreasing: Vec<usize>,
    pub overlaps: Vec<CriticalPair>,
}

impl ConvergenceReport {
    pub fn nontrivial_overlaps(&self) -> usize {
        self.overlaps.len()
    }

    pub fn is_convergent(&self) -> bool {
        self.not_decreasing.is_empty() && self.overlaps.iter().all(|c| c.joinable == Some(true))
    }
}

impl StringRewritingSystem {
    pub fn new(alphabet: Alphabet, rules: Vec<Rule>) -> Result<Self, RewriteError> {
        for (i, r) in rules.iter().enumerate() {
            if r.lhs.is_empty() {
                return Err(RewriteError::EmptyLhs(i));
            }
            for &s in r.lhs.iter().chain(&r.rhs) {
                if s.index() >= alphabet.len() {
                    return Err(AutomataError::SymbolOutOfRange(s.0).into());
                }
            }
        }
        Ok(StringRewritingSystem { alphabet, rules })
    }

    /// Rules given as pairs of words in the alphabet's notation.
    pub fn parse(alphabet: Alphabet, rules: &[(&str, &str)]) -> Result<Self, RewriteError> {
        let rules = rules
            .iter()
            .map(|(l, r)| Ok(Rule { lhs: alphabet.parse_word(l)?, rhs: alphabet.parse_word(r)? }))
            .collect::<Result<Vec<_>, AutomataError>>()?;
        StringRewritingSystem::new(alphabet, rules)
    }

    pub fn alphabet(&self) -> &Alphabet {
        &self.alphabet
    }

    pub fn rules(&self) -> &[Rule] {
        &self.rules
    }

    /// The leftmost redex of `w` starting at or after `from`: `(position, rule)`, preferring
    /// the longest left-hand side at that position.
    fn find_redex(&self, w: &[Symbol], from: usize) -> Option<(usize, usize)> {
        (from..w.len()).find_map(|i| {
            self.rules
                .iter()
                .enumerate()
                .filter(|(_, r)| w[i..].starts_with(&r.lhs))
                .max_by_key(|(k, r)| (r.lhs.len(), std::cmp::Reverse(*k)))
                .map(|(k, _)| (i, k))
        })
    }

    /// One leftmost-outermost step, or `None` if `w` is irreducible.
    pub fn step(&self, w: &[Symbol]) -> Option<(usize, Word)> {
        let (i, k) = self.find_redex(w, 0)?;
        let r = &self.rules[k];
        Some((k, [&w[..i], r.rhs.as_slice(), &w[i + r.lhs.len()..]].concat()))
    }

    /// Leftmost-outermost rewriting until irreducible.
    pub fn normal_form(&self, w: &[Symbol], step_bound: usize) -> Result<Word, RewriteError> {
        let max_lhs = self.rules.iter().map(|r| r.lhs.len()).max().unwrap_or(0);
        let mut w = w.to_vec();
        let mut from = 0;
        for _ in 0..=step_bound {
            let Some((i, k)) = self.find_redex(&w, from) else { return Ok(w) };
            let r = &self.rules[k];
            w.splice(i..i + r.lhs.len(), r.rhs.iter().copied());
            // a new redex must overlap the rewritten span
            from = i.saturating_sub(max_lhs.saturating_sub(1));
        }
        Err(RewriteError::StepBoundExceeded(step_bound))
    }

    pub fn is_irreducible(&self, w: &[Symbol]) -> bool {
        self.find_redex(w, 0).is_none()
    }

    /// The words with no left-hand side as a factor.
    pub fn irr_automaton(&self) -> Dfa {
        let lhs: Vec<&[Symbol]> = self.rules.iter().map(|r| r.lhs.as_slice()).collect();
        // state: longest suffix of the input that is a proper prefix of some left-hand side
        Dfa::explore(
            self.alphabet.clone(),
            Vec::<Symbol>::new(),
            |s, a| {
                let mut t = s.clone();
                t.push(a);
                if lhs.iter().any(|l| t.ends_with(l)) {
                    return None;
                }
                let keep = (0..=t.len())
                    .find(|&k| lhs.iter().any(|l| l.len() > t.len() - k && l.starts_with(&t[k..])))
                    .unwrap_or(t.len());
                Some(t[keep..].to_vec())
            },
            |_| true,
        )
    }

    /// Rule-by-rule decrease under `order`, and every overlap of left-hand sides with
    /// whether its critical pair resolves.
    pub fn check_convergence(&self, order: TerminationOrder, step_bound: usize) -> ConvergenceReport {
        let mut report = ConvergenceReport::default();
        for (i, r) in self.rules.iter().enumerate() {
            if !order.greater(&r.lhs, &r.rhs) {
                report.not_decreasing.push(i);
            }
        }
        let nf = |w: &[Symbol]| self.normal_form(w, step_bound).ok();
        let mut push = |rules: (usize, usize), word: Word, left: Word, right: Word| {
            let joinable = match (nf(&left), nf(&right)) {
                (Some(x), Some(y)) => Some(x == y),
                _ => None,
            };
            report.overlaps.push(CriticalPair { rules, word, left, right, joinable });
        };
        for (i, ri) in self.rules.iter().enumerate() {
            for (j, rj) in self.rules.iter().enumerate() {
                let (li, lj) = (&ri.lhs, &rj.lhs);
                // lj inside li
                if lj.len() <= li.len() {
                    for p in 0..=li.len() - lj.len() {
                        if (i == j && p == 0) || !li[p..].starts_with(lj) {
                            continue;
                        }
                        let right = [&li[..p], rj.rhs.as_slice(), &li[p + lj.len()..]].concat();
                        push((i, j), li.clone(), ri.rhs.clone(), right);
                    }
                }
                // a proper suffix of li is a proper prefix of lj
                for k in 1..li.len().min(lj.len()) {
                    if li[li.len() - k..] != lj[..k] {
                        continue;
                    }
                    let word = [li.as_slice(), &lj[k..]].concat();
                    let left = [ri.rhs.as_slice(), &lj[k..]].concat();
                    let right = [&li[..li.len() - k], rj.rhs.as_slice()].concat();
                    push((i, j), word, left, right);
                }
            }
        }
        report
    }
}
