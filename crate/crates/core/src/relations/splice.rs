use std::collections::{HashMap, VecDeque};

use super::{RelationError, SyncRelation};
use crate::automata::{Dfa, Nfa, PaddedPairs, Symbol};

#[derive(Clone, PartialEq, Eq, Hash)]
enum Phase {
    /// Reading the common prefix `x` as `(c, c)` pairs.
    Prefix(u32),
    /// Inside the middle block; `j` letters of the longer middle word consumed.
    Middle(usize),
    /// Past the middle block of the second track.
    Tail,
}

#[derive(Clone, PartialEq, Eq, Hash)]
struct State {
    phase: Phase,
    /// State of the suffix automaton after the letters of `z` seen on track 1.
    z: u32,
    /// Letters of `z` seen on track 1 but not yet on track 2.
    buffer: VecDeque<Symbol>,
    /// Track 1 has ended.
    ended: bool,
}

/// `{(x·alpha·z, x·beta·z) : x ∈ prefix, z ∈ suffix}`.
///
/// Track 1 runs ahead of track 2 by `|beta| - |alpha|` letters of `z`, which are
/// carried in a bounded buffer.
pub fn splice_relation(
    prefix: &Dfa,
    alpha: &[Symbol],
    beta: &[Symbol],
    suffix: &Dfa,
) -> Result<SyncRelation, RelationError> {
    prefix.alphabet().check_same(suffix.alphabet())?;
    if alpha.len() > beta.len() {
        return Ok(splice_relation(prefix, beta, alpha, suffix)?.invert());
    }
    let base = prefix.alphabet().clone();
    let p = PaddedPairs::new(base.len());
    let z_live = suffix.live_states();
    let mut m = Nfa::new(base.padded().clone());
    let mut ids: HashMap<State, u32> = HashMap::new();
    let mut queue: Vec<State> = Vec::new();

    let is_final = |s: &State| {
        matches!(s.phase, Phase::Tail) && s.buffer.is_empty() && (s.ended || suffix.is_accepting(s.z))
    };
    let intern = |ids: &mut HashMap<State, u32>, m: &mut Nfa, s: State, queue: &mut Vec<State>| -> u32 {
        if let Some(&id) = ids.get(&s) {
            return id;
        }
        let id = m.add_state(is_final(&s));
        ids.insert(s.clone(), id);
        queue.push(s);
        id
    };
    let x_live = prefix.live_states();

    let start = State {
        phase: Phase::Prefix(0),
        z: 0,
        buffer: VecDeque::new(),
        ended: false,
    };
    let s0 = intern(&mut ids, &mut m, start, &mut queue);
    m.set_initial(s0)?;

    while let Some(st) = queue.pop() {
        let from = ids[&st];
        match st.phase {
            Phase::Prefix(x) => {
                for c in base.symbols() {
                    let x2 = prefix.next(x, c);
                    if !x_live[x2 as usize] {
                        continue;
                    }
                    let next = State {
                        phase: Phase::Prefix(x2),
                        ..st.clone()
                    };
                    let to = intern(&mut ids, &mut m, next, &mut queue);
                    m.add_transition(from, p.encode(Some(c), Some(c)).expect("letters"), to)?;
                }
                if prefix.is_accepting(x) {
                    let next = State {
                        phase: if beta.is_empty() { Phase::Tail } else { Phase::Middle(0) },
                        ..st.clone()
                    };
                    let to = intern(&mut ids, &mut m, next, &mut queue);
                    m.add_epsilon(from, to)?;
                }
            }
            Phase::Middle(_) | Phase::Tail => {
                // Track 1 choices: (letter shown, suffix state, ended, letter of z read).
                let mut options: Vec<(Option<Symbol>, u32, bool, Option<Symbol>)> = Vec::new();
                match st.phase {
                    Phase::Middle(j) if j < alpha.len() => options.push((Some(alpha[j]), st.z, false, None)),
                    _ if st.ended => options.push((None, st.z, true, None)),
                    _ => {
                        for c in base.symbols() {
                            let z = suffix.next(st.z, c);
                            if z_live[z as usize] {
                                options.push((Some(c), z, false, Some(c)));
                            }
                        }
                        if suffix.is_accepting(st.z) {
                            options.push((None, st.z, true, None));
                        }
                    }
                }
                let next_phase = match st.phase {
                    Phase::Middle(j) if j + 1 < beta.len() => Phase::Middle(j + 1),
                    _ => Phase::Tail,
                };
                for (track1, z, ended, read) in options {
                    let mut buffer = st.buffer.clone();
                    buffer.extend(read);
                    let track2 = match st.phase {
                        Phase::Middle(j) => Some(beta[j]),
                        _ => buffer.pop_front(),
                    };
                    let Some(pair) = p.encode(track1, track2) else { continue };
                    let next = State {
                        phase: next_phase.clone(),
                        z,
                        buffer,
                        ended,
                    };
                    let to = intern(&mut ids, &mut m, next, &mut queue);
                    m.add_transition(from, pair, to)?;
                }
            }
        }
    }
    SyncRelation::from_nfa(&base, &m)
}
