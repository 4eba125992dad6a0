use crate::automata::{shortlex_cmp, Dfa, Symbol, Word};
use crate::relations::{product_relation, shortlex_less, SyncRelation};

use super::{InterpretedAutomaticStructure, PreAutomaticStructure, StructureError, StructureFlags};

#[derive(Clone, Debug)]
pub struct CrossSectionOptions {
    /// Keep `ε` as the identity's representative when the monoid flag is set.
    pub keep_epsilon: bool,
    /// How many non-empty words to try when looking for a replacement for `ε`.
    pub epsilon_search_bound: usize,
}

impl Default for CrossSectionOptions {
    fn default() -> Self {
        CrossSectionOptions {
            keep_epsilon: false,
            epsilon_search_bound: 10_000,
        }
    }
}

pub(super) fn with_representatives(
    s: &InterpretedAutomaticStructure,
    k: &Dfa,
) -> Result<InterpretedAutomaticStructure, StructureError> {
    let g = s.generators().clone();
    g.check_same(k.alphabet())?;
    let l = s.rep_lang();
    let k = k.minimize();
    if k.accepts(&[]) && !s.flags.monoid_with_epsilon {
        return Err(StructureError::EmptyWord);
    }
    let extra = k.difference(l)?;
    if !extra.is_finite() {
        return Err(StructureError::InfiniteDifference);
    }
    let kl = k.intersect(l)?;
    let reps: Vec<(Word, Word)> = extra
        .shortlex()
        .map(|x| s.find_representative(&x).map(|r| (x, r)))
        .collect::<Result<_, _>>()?;

    let eq = s.equality();
    let mut covered = eq.preimage(&kl)?;
    for (_, rep) in &reps {
        covered = covered.union(&eq.preimage(&Dfa::word(g.clone(), rep))?)?;
    }
    if let Some(missed) = l.difference(&covered)?.shortlex_least() {
        return Err(StructureError::NotOnto(g.format_word(&missed)));
    }

    let rebuild = |rel: &SyncRelation| -> Result<SyncRelation, StructureError> {
        let mut out = rel.restrict(&kl)?;
        let mut finite_pairs: Vec<(Word, Word)> = Vec::new();
        for (x, x_rep) in &reps {
            let x_lang = Dfa::word(g.clone(), x);
            let rep_lang = Dfa::word(g.clone(), x_rep);
            let image = rel.image(&rep_lang)?.intersect(&kl)?;
            out = out.union(&product_relation(&x_lang, &image)?)?;
            let preimage = rel.preimage(&rep_lang)?.intersect(&kl)?;
            out = out.union(&product_relation(&preimage, &x_lang)?)?;
            for (y, y_rep) in &reps {
                if rel.contains(x_rep, y_rep) {
                    finite_pairs.push((x.clone(), y.clone()));
                }
            }
        }
        let finite = SyncRelation::from_pairs(&g, finite_pairs.iter().map(|(u, v)| (u.as_slice(), v.as_slice())));
        Ok(out.union(&finite)?)
    };

    let equality = rebuild(eq)?;
    let multipliers = s
        .structure
        .multipliers
        .iter()
        .map(&rebuild)
        .collect::<Result<Vec<_>, _>>()?;

    let mut assignment = Vec::with_capacity(g.len());
    for a in g.symbols() {
        let current = &s.assignment[a.index()];
        let word = if k.accepts(&[a]) {
            vec![a]
        } else if k.accepts(current) {
            current.clone()
        } else {
            let in_core = s.least_equivalent_in(current, &kl);
            let in_extra = reps
                .iter()
                .filter(|(_, r)| eq.contains(r, current))
                .map(|(x, _)| x.clone())
                .min_by(|u, v| shortlex_cmp(u, v));
            [in_core, in_extra]
                .into_iter()
                .flatten()
                .min_by(|u, v| shortlex_cmp(u, v))
                .ok_or_else(|| StructureError::NotOnto(g.format_word(current)))?
        };
        assignment.push(word);
    }
    let structure = PreAutomaticStructure::new(g, k, equality, multipliers)?;
    InterpretedAutomaticStructure::new(structure, assignment, s.flags.monoid_with_epsilon)
}

pub(super) fn to_cross_section(
    s: &InterpretedAutomaticStructure,
    options: &CrossSectionOptions,
) -> Result<InterpretedAutomaticStructure, StructureError> {
    let keep_epsilon = options.keep_epsilon && s.flags.monoid_with_epsilon;
    if s.is_cross_section() || (keep_epsilon && s.flags.has_uniqueness && s.flags.generators_embedded) {
        return Ok(s.clone());
    }
    let g = s.generators().clone();
    let reps: Vec<Word> = g
        .symbols()
        .map(|a| s.find_representative(&[a]))
        .collect::<Result<_, _>>()?;
    for a in g.symbols() {
        for b in g.symbols().filter(|&b| b > a) {
            let (x, y) = (&reps[a.index()], &reps[b.index()]);
            if x == y || s.equality().contains(x, y) {
                return Err(StructureError::GeneratorsNotInjective(
                    g.name(a).to_string(),
                    g.name(b).to_string(),
                ));
            }
        }
    }

    let letters: Vec<Word> = g.symbols().map(|a| vec![a]).collect();
    let k = s
        .rep_lang()
        .union(&Dfa::finite(g.clone(), letters.iter().map(|w| w.as_slice())))?;
    let mut current = if k == *s.rep_lang() && s.flags.generators_embedded {
        s.clone()
    } else {
        with_representatives(s, &k)?
    };

    if current.rep_lang().accepts(&[]) && !keep_epsilon {
        current = drop_epsilon(&current, options.epsilon_search_bound)?;
    }

    let dominated = current
        .equality()
        .intersect(&shortlex_less(&g))?
        .project(2);
    let least = current.rep_lang().difference(&dominated)?;
    if least != *current.rep_lang() {
        current = with_representatives(&current, &least)?;
    }
    Ok(current)
}

/// Remove `ε` from `L`, adding a non-empty word for the identity if `ε` was its only
/// representative.
fn drop_epsilon(
    s: &InterpretedAutomaticStructure,
    bound: usize,
) -> Result<InterpretedAutomaticStructure, StructureError> {
    let g = s.generators().clone();
    let nonempty = Dfa::nonempty_words(g.clone());
    let others = s.equality().image_of_word(&[]).intersect(&nonempty)?;
    let without = s.rep_lang().intersect(&nonempty)?;
    let k = if !others.intersect(s.rep_lang())?.is_empty() {
        without
    } else {
        let found = nonempty.shortlex().take(bound).find(|w| {
            s.find_representative(w)
                .map(|r| r.is_empty() || s.equality().contains(&r, &[]))
                .unwrap_or(false)
        });
        let w = found.ok_or_else(|| {
            StructureError::BoundExhausted(format!("no non-empty word equal to ε among the first {bound}"))
        })?;
        without.union(&Dfa::word(g.clone(), &w))?
    };
    // The old structure answers for ε while the surgery runs; the result no longer has it.
    let shrunk = with_representatives(s, &k)?;
    let flags = StructureFlags {
        monoid_with_epsilon: false,
        ..shrunk.flags
    };
    Ok(InterpretedAutomaticStructure { flags, ..shrunk })
}

fn fresh_zero_name(existing: &crate::automata::Alphabet) -> String {
    std::iter::once("z".to_string())
        .chain((1..).map(|i| format!("z{i}")))
        .find(|n| existing.symbol(n).is_none())
        .expect("unbounded supply of names")
}

pub(super) fn adjoin_zero(s: &InterpretedAutomaticStructure) -> InterpretedAutomaticStructure {
    let g = s.generators();
    let g2 = g.extended(&fresh_zero_name(g)).expect("fresh name");
    let z = Symbol(g.len() as u32);
    let map: Vec<Symbol> = g.symbols().collect();
    let zz = SyncRelation::from_pairs(&g2, [([z].as_slice(), [z].as_slice())]);
    let only_z = Dfa::word(g2.clone(), &[z]);
    let lang = s
        .rep_lang()
        .embed(&g2, &map)
        .union(&only_z)
        .expect("same alphabet");
    let equality = s.equality().embed(&g2, &map).union(&zz).expect("same alphabet");
    let mut multipliers: Vec<SyncRelation> = s
        .structure
        .multipliers
        .iter()
        .map(|m| m.embed(&g2, &map).union(&zz).expect("same alphabet"))
        .collect();
    multipliers.push(product_relation(&lang, &only_z).expect("same alphabet"));
    let mut assignment = s.assignment.clone();
    assignment.push(vec![z]);
    let structure = PreAutomaticStructure::new(g2, lang, equality, multipliers).expect("consistent parts");
    InterpretedAutomaticStructure::from_parts_unchecked(structure, assignment, s.flags)
}
