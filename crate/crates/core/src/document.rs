//! JSON documents for interpreted automatic structures.
//!
//! ```json
//! {
//!   "format": 1,
//!   "alphabet": ["q", "p"],
//!   "rep_lang": { "states": 2, "initial": 0, "accepting": [0, 1],
//!                 "transitions": [[0, "q", 0], [0, "p", 1], [1, "p", 1]] },
//!   "equality": { ..., "transitions": [[0, ["q", "q"], 0], ...] },
//!   "multipliers": { "q": { ... }, "p": { ... } },
//!   "assignment": { "q": "q", "p": "p" },
//!   "flags": { "uniqueness": true, "generators_embedded": true, "monoid_with_epsilon": true }
//! }
//! ```
//!
//! Relations are automata over pairs, with `"$"` for padding. Words use the notation of
//! [`Alphabet::format_word`]. When `assignment` is missing, generators that are themselves
//! representatives are used, and otherwise the shortlex-least equivalent representative.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use crate::automata::{Alphabet, AutomataError, Dfa, Nfa, PaddedPairs, Symbol};
use crate::relations::{RelationError, SyncRelation};
use crate::structure::{InterpretedAutomaticStructure, PreAutomaticStructure, StructureError};

pub const FORMAT_VERSION: u32 = 1;

/// Candidate words examined when an assignment must be searched for.
const ASSIGNMENT_BOUND: usize = 10_000;

#[derive(Debug, thiserror::Error)]
pub enum DocumentError {
    #[error("invalid JSON: {0}")]
    Json(#[from] serde_json::Error),
    #[error("unsupported format version {0}")]
    Version(u32),
    #[error("{0}")]
    Automata(#[from] AutomataError),
    #[error("{0}")]
    Relation(#[from] RelationError),
    #[error("{0}")]
    Structure(#[from] StructureError),
    #[error("{0}")]
    Invalid(String),
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum Letter {
    Single(String),
    Pair([String; 2]),
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct AutomatonDoc {
    pub states: u32,
    pub initial: u32,
    pub accepting: Vec<u32>,
    pub transitions: Vec<(u32, Letter, u32)>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Default, Serialize, Deserialize)]
pub struct FlagsDoc {
    #[serde(default)]
    pub uniqueness: bool,
    #[serde(default)]
    pub generators_embedded: bool,
    #[serde(default)]
    pub monoid_with_epsilon: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct StructureDocument {
    pub format: u32,
    pub alphabet: Vec<String>,
    pub rep_lang: AutomatonDoc,
    pub equality: AutomatonDoc,
    pub multipliers: BTreeMap<String, AutomatonDoc>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub assignment: Option<BTreeMap<String, String>>,
    #[serde(default)]
    pub flags: FlagsDoc,
}

const PAD: &str = "$";

fn automaton_doc(dfa: &Dfa, letter: impl Fn(Symbol) -> Letter) -> AutomatonDoc {
    let live = dfa.live_states();
    // keep live states plus the start state, renumbered in order
    let keep: Vec<u32> = (0..dfa.num_states() as u32).filter(|&s| s == 0 || live[s as usize]).collect();
    let id = |s: u32| keep.iter().position(|&x| x == s).map(|i| i as u32);
    let mut transitions = Vec::new();
    for &s in &keep {
        for a in dfa.alphabet().symbols() {
            if let Some(t) = id(dfa.next(s, a)).filter(|_| live[dfa.next(s, a) as usize]) {
                transitions.push((id(s).expect("kept"), letter(a), t));
            }
        }
    }
    AutomatonDoc {
        states: keep.len() as u32,
        initial: 0,
        accepting: keep.iter().filter(|&&s| dfa.is_accepting(s)).map(|&s| id(s).expect("kept")).collect(),
        transitions,
    }
}

fn language_doc(dfa: &Dfa) -> AutomatonDoc {
    let g = dfa.alphabet().clone();
    automaton_doc(dfa, |a| Letter::Single(g.name(a).to_string()))
}

fn relation_doc(rel: &SyncRelation) -> AutomatonDoc {
    let g = rel.base().clone();
    let p = PaddedPairs::new(g.len());
    let name = |x: Option<Symbol>| x.map_or(PAD.to_string(), |x| g.name(x).to_string());
    automaton_doc(rel.dfa(), |a| {
        let (x, y) = p.decode(a);
        Letter::Pair([name(x), name(y)])
    })
}

fn build_nfa(doc: &AutomatonDoc, alphabet: &Alphabet, letter: impl Fn(&Letter) -> Result<Symbol, DocumentError>) -> Result<Nfa, DocumentError> {
    let mut m = Nfa::new(alphabet.clone());
    for _ in 0..doc.states {
        m.add_state(false);
    }
    m.set_initial(doc.initial)?;
    for &s in &doc.accepting {
        m.set_accepting(s, true)?;
    }
    for (from, l, to) in &doc.transitions {
        m.add_transition(*from, letter(l)?, *to)?;
    }
    Ok(m)
}

fn parse_language(doc: &AutomatonDoc, g: &Alphabet) -> Result<Dfa, DocumentError> {
    let m = build_nfa(doc, g, |l| match l {
        Letter::Single(n) => g.symbol(n).ok_or_else(|| AutomataError::UnknownSymbol(n.clone()).into()),
        Letter::Pair(_) => Err(DocumentError::Invalid("pair letter in a language automaton".into())),
    })?;
    Ok(m.minimize())
}

fn parse_relation(doc: &AutomatonDoc, g: &Alphabet) -> Result<SyncRelation, DocumentError> {
    let p = PaddedPairs::new(g.len());
    let track = |n: &str| -> Result<Option<Symbol>, DocumentError> {
        if n == PAD {
            Ok(None)
        } else {
            g.symbol(n).map(Some).ok_or_else(|| AutomataError::UnknownSymbol(n.to_string()).into())
        }
    };
    let m = build_nfa(doc, g.padded(), |l| match l {
        Letter::Pair([x, y]) => p
            .encode(track(x)?, track(y)?)
            .ok_or_else(|| DocumentError::Invalid("the pair ($, $) cannot occur".into())),
        Letter::Single(_) => Err(DocumentError::Invalid("single letter in a relation automaton".into())),
    })?;
    Ok(SyncRelation::from_nfa(g, &m)?)
}

impl StructureDocument {
    pub fn from_structure(s: &InterpretedAutomaticStructure) -> Self {
        let g = s.generators();
        let flags = s.flags();
        StructureDocument {
            format: FORMAT_VERSION,
            alphabet: g.names().to_vec(),
            rep_lang: language_doc(s.rep_lang()),
            equality: relation_doc(s.equality()),
            multipliers: g
                .symbols()
                .map(|a| (g.name(a).to_string(), relation_doc(s.structure().letter_multiplier(a))))
                .collect(),
            assignment: Some(g.symbols().zip(s.assignment()).map(|(a, w)| (g.name(a).to_string(), g.format_word(w))).collect()),
            flags: FlagsDoc {
                uniqueness: flags.has_uniqueness,
                generators_embedded: flags.generators_embedded,
                monoid_with_epsilon: flags.monoid_with_epsilon,
            },
        }
    }

    /// The uninterpreted structure; no axioms are checked beyond alphabets and counts.
    pub fn to_pre_structure(&self) -> Result<PreAutomaticStructure, DocumentError> {
        if self.format != FORMAT_VERSION {
            return Err(DocumentError::Version(self.format));
        }
        let g = Alphabet::new(self.alphabet.iter().cloned())?;
        let lang = parse_language(&self.rep_lang, &g)?;
        let eq = parse_relation(&self.equality, &g)?;
        for name in self.multipliers.keys() {
            if g.symbol(name).is_none() {
                return Err(DocumentError::Invalid(format!("multiplier for unknown generator {name}")));
            }
        }
        let multipliers = g
            .symbols()
            .map(|a| {
                let doc = self
                    .multipliers
                    .get(g.name(a))
                    .ok_or_else(|| DocumentError::Invalid(format!("no multiplier for generator {}", g.name(a))))?;
                parse_relation(doc, &g)
            })
            .collect::<Result<Vec<_>, _>>()?;
        Ok(PreAutomaticStructure::new(g, lang, eq, multipliers)?)
    }

    /// Flags other than `monoid_with_epsilon` are recomputed from the automata.
    pub fn to_structure(&self) -> Result<InterpretedAutomaticStructure, DocumentError> {
        let pre = self.to_pre_structure()?;
        let g = pre.generators().clone();
        let assignment = match &self.assignment {
            Some(map) => g
                .symbols()
                .map(|a| {
                    let w = map
                        .get(g.name(a))
                        .ok_or_else(|| DocumentError::Invalid(format!("no assignment for generator {}", g.name(a))))?;
                    Ok(g.parse_word(w)?)
                })
                .collect::<Result<Vec<_>, DocumentError>>()?,
            None => pre.embedded_assignment().or_else(|_| pre.find_assignment(ASSIGNMENT_BOUND))?,
        };
        Ok(InterpretedAutomaticStructure::new(pre, assignment, self.flags.monoid_with_epsilon)?)
    }

    pub fn parse(text: &str) -> Result<Self, DocumentError> {
        Ok(serde_json::from_str(text)?)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("documents serialize")
    }
}
