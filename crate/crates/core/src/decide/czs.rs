use crate::automata::{shortlex_cmp, Dfa, Symbol, Word};

use super::{trichotomy_in, Decider, DecisionError, Trichotomy, Work};

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum CzsOutcome {
    Yes,
    /// The first failing check.
    No(String),
}

impl CzsOutcome {
    pub fn is_yes(&self) -> bool {
        matches!(self, CzsOutcome::Yes)
    }
}

/// What the pipeline learns about a completely zero-simple semigroup.
pub(crate) struct CzsData {
    pub zero: Word,
    pub nonzero_generators: Vec<Symbol>,
    /// Representatives of idempotents, shortlex order.
    pub idempotents: Vec<Word>,
    /// `sl[a]`, `sr[a]`: indices into `idempotents`, for non-zero generators (else empty).
    pub sl: Vec<Vec<usize>>,
    pub sr: Vec<Vec<usize>>,
}

pub(super) fn decide(d: &Decider) -> Result<CzsOutcome, DecisionError> {
    Ok(match analyse(d)? {
        Ok(_) => CzsOutcome::Yes,
        Err(reason) => CzsOutcome::No(reason),
    })
}

fn no<T>(reason: impl Into<String>) -> Result<Result<T, String>, DecisionError> {
    Ok(Err(reason.into()))
}

pub(crate) fn analyse(d: &Decider) -> Result<Result<CzsData, String>, DecisionError> {
    let cs = d.cross_section(true)?;
    let s = cs.structure();
    let g = s.generators().clone();
    let lang = s.rep_lang();
    let name = |w: &[Symbol]| g.format_word(w);

    // (1) zero
    let zero = {
        let lz = cs.left_zeros();
        let words = lz.enumerate(2, None);
        if words.len() != 1 {
            return no("step 1: no zero");
        }
        let z = words[0].clone();
        let right = crate::relations::product_relation(lang, &cs.word_lang(&z)).expect("shared alphabet");
        if cs.multiplier(&z) != right {
            return no("step 1: no zero");
        }
        z
    };
    let is_zero = |w: &[Symbol]| w == zero.as_slice();
    let nonzero_generators: Vec<Symbol> = g.symbols().filter(|&a| !is_zero(&[a])).collect();
    if nonzero_generators.is_empty() {
        return no("step 2: every generator represents zero");
    }

    // (2) left stabilisers of each non-zero generator
    let mut sl_words: Vec<Vec<Word>> = vec![Vec::new(); g.len()];
    for &a in &nonzero_generators {
        let stab: Dfa = cs.solutions(&[a], &[a]);
        if stab.is_empty() {
            return no(format!("step 2: SL_{} is empty", g.name(a)));
        }
        if !stab.is_finite() {
            return no(format!("step 2: SL_{} is infinite", g.name(a)));
        }
        let words: Vec<Word> = stab.shortlex().collect();
        for e in &words {
            if !cs.same(&cs.product(e, e)?, e) {
                return no(format!("step 2: {} in SL_{} is not idempotent", name(e), g.name(a)));
            }
        }
        sl_words[a.index()] = words;
    }

    // (3) E and right stabilisers
    let mut idempotents: Vec<Word> = sl_words.iter().flatten().cloned().collect();
    idempotents.sort_by(|u, v| shortlex_cmp(u, v));
    idempotents.dedup();
    let index_of = |w: &Word| idempotents.iter().position(|e| e == w).expect("member of E");
    let sl: Vec<Vec<usize>> = sl_words.iter().map(|ws| ws.iter().map(index_of).collect()).collect();
    let mut sr: Vec<Vec<usize>> = vec![Vec::new(); g.len()];
    for &a in &nonzero_generators {
        for (i, e) in idempotents.iter().enumerate() {
            if cs.same(&cs.product(&[a], e)?, &[a]) {
                sr[a.index()].push(i);
            }
        }
    }
    for (i, e) in idempotents.iter().enumerate() {
        if !nonzero_generators.iter().any(|b| sr[b.index()].contains(&i)) {
            return no(format!("step 3: {} stabilises no generator on the right", name(e)));
        }
    }

    // (4) shape of the SL / SR families
    let meet = |x: &[usize], y: &[usize]| x.iter().filter(|i| y.contains(i)).count();
    let equal_or_disjoint = |x: &[usize], y: &[usize]| x == y || meet(x, y) == 0;
    for &a in &nonzero_generators {
        for &b in &nonzero_generators {
            let common = meet(&sl[a.index()], &sr[b.index()]);
            let ba_nonzero = !is_zero(&cs.rep(&[b, a])?);
            if common > 1 || (common == 1) != ba_nonzero {
                return no(format!(
                    "step 4: SL_{} and SR_{} meet in {common} elements",
                    g.name(a),
                    g.name(b)
                ));
            }
            if !equal_or_disjoint(&sl[a.index()], &sl[b.index()]) {
                return no(format!("step 4: SL_{} and SL_{} overlap", g.name(a), g.name(b)));
            }
            if !equal_or_disjoint(&sr[a.index()], &sr[b.index()]) {
                return no(format!("step 4: SR_{} and SR_{} overlap", g.name(a), g.name(b)));
            }
        }
    }

    // (5) idempotents in one SL class are R-related, in one SR class L-related
    for &a in &nonzero_generators {
        for (family, keep_right) in [(&sl[a.index()], true), (&sr[a.index()], false)] {
            for &i in family.iter() {
                for &j in family.iter().filter(|&&j| j != i) {
                    let (e, f) = (&idempotents[i], &idempotents[j]);
                    let ef = cs.product(e, f)?;
                    let target = if keep_right { f } else { e };
                    if !matches!(trichotomy_in(cs, &ef, target)?, Trichotomy::B(_)) {
                        return no(format!("step 5: {}{} is not H-related to {}", name(e), name(f), name(target)));
                    }
                }
            }
        }
    }

    // (6) generators, (7) non-zero products of two generators
    let check_related = |w: &Word, left: Symbol, right: Symbol| -> Result<Option<String>, DecisionError> {
        match find_related_idempotents(cs, w, &idempotents)? {
            None => Ok(Some(format!("no idempotents related to {}", name(w)))),
            Some((f, e)) => {
                if !sl[left.index()].contains(&index_of(&f)) || !sr[right.index()].contains(&index_of(&e)) {
                    Ok(Some(format!("idempotents related to {} lie outside SL_{} / SR_{}", name(w), g.name(left), g.name(right))))
                } else {
                    Ok(None)
                }
            }
        }
    };
    for &a in &nonzero_generators {
        if let Some(reason) = check_related(&vec![a], a, a)? {
            return no(format!("step 6: {reason}"));
        }
    }
    for &b in &nonzero_generators {
        for &a in &nonzero_generators {
            let ba = cs.rep(&[b, a])?;
            if is_zero(&ba) {
                continue;
            }
            if let Some(reason) = check_related(&ba, b, a)? {
                return no(format!("step 7: {reason}"));
            }
        }
    }

    // (8) connectivity
    let zero_lang = cs.word_lang(&zero);
    for &a in &nonzero_generators {
        for &b in &nonzero_generators {
            let first: Vec<Symbol> = nonzero_generators.iter().copied().filter(|c| sl[c.index()] == sl[a.index()]).collect();
            let last: Vec<Symbol> = nonzero_generators.iter().copied().filter(|c| sr[c.index()] == sr[b.index()]).collect();
            let lang_ab = starts_ends(&g, &first, &last);
            let found = lang.intersect(&lang_ab).and_then(|l| l.difference(&zero_lang)).expect("shared alphabet");
            if found.is_empty() {
                return no(format!("step 8: no non-zero word from SL_{} to SR_{}", g.name(a), g.name(b)));
            }
        }
    }

    Ok(Ok(CzsData {
        zero,
        nonzero_generators,
        idempotents,
        sl,
        sr,
    }))
}

/// Non-empty words starting with a letter of `first` and ending with a letter of `last`.
pub(crate) fn starts_ends(g: &crate::automata::Alphabet, first: &[Symbol], last: &[Symbol]) -> Dfa {
    // state 0: start, 1: inside with last letter in `last`, 2: inside otherwise, 3: dead
    Dfa::explore(
        g.clone(),
        0u8,
        |&s, a| match s {
            0 if !first.contains(&a) => None,
            0..=2 => Some(if last.contains(&a) { 1 } else { 2 }),
            _ => None,
        },
        |&s| s == 1,
    )
}

/// `(f, e)` with `f ∈ E` R-related and `e ∈ E` L-related to the representative `w`,
/// or `None` when the semigroup cannot be completely zero-simple.
pub(crate) fn find_related_idempotents(cs: &Work, w: &Word, idempotents: &[Word]) -> Result<Option<(Word, Word)>, DecisionError> {
    for e in idempotents {
        if !cs.same(&cs.product(w, e)?, w) {
            continue;
        }
        let Some(q) = cs.multiplier(w).preimage_word_least(e, cs.lang()) else { continue };
        let f = cs.product(w, &q)?;
        let Some(f) = idempotents.iter().find(|x| cs.same(x, &f)) else {
            return Ok(None);
        };
        if !cs.same(&cs.product(f, w)?, w) {
            return Ok(None);
        }
        return Ok(Some((f.clone(), e.clone())));
    }
    Ok(None)
}
