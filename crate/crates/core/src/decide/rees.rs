use std::collections::HashMap;

use crate::automata::{Alphabet, Dfa, Nfa, PaddedPairs, Symbol, Word};
use crate::relations::{diagonal, RelationError, SyncRelation};
use crate::structure::{InterpretedAutomaticStructure, PreAutomaticStructure};

use super::czs::{analyse, starts_ends};
use super::{Decider, DecisionError, Work};

/// `M⁰(G; I, Λ; Q)` for a completely zero-simple semigroup, with the maximal subgroup
/// `G` given by its own interpreted structure.
#[derive(Clone, Debug)]
pub struct ReesRepresentation {
    /// The cross-section of the input that all `L(Γ)` words below refer to.
    pub gamma: InterpretedAutomaticStructure,
    /// Structure for the maximal subgroup over the letters `c_a` and `d_λ_i`.
    pub group: InterpretedAutomaticStructure,
    /// Each row (R-class) named by its shortlex-first idempotent.
    pub rows: Vec<Word>,
    /// Each column (L-class) named by its shortlex-first idempotent.
    pub cols: Vec<Word>,
    /// `matrix[λ][i]`: entry over `L(Δ)`, `None` for zero.
    pub matrix: Vec<Vec<Option<Word>>>,
    /// `sandwich[λ][i]`: the same entries as words of `L(Γ)`.
    pub sandwich: Vec<Vec<Option<Word>>>,
    /// `idempotents[i][λ]`: the idempotent of `H_iλ`, if any.
    pub idempotents: Vec<Vec<Option<Word>>>,
    pub base_row: usize,
    pub base_col: usize,
    pub r: Vec<Word>,
    pub q: Vec<Word>,
    /// For each generator: `(i_a, λ_a, w_a)` with `a = r_{i_a} w_a q_{λ_a}`; `None` for zero.
    pub generator_data: Vec<Option<(usize, usize, Word)>>,
    pub zero: Word,
    /// Words of `L(Γ)` representing elements of the base group `H_{i₀λ₀}`.
    pub region: Dfa,
}

/// `φ(a₁…aₙ) = c_{a₁} d(a₁,a₂) c_{a₂} … c_{aₙ}` on single words.
pub fn phi_word(c: &[Option<Symbol>], d: &dyn Fn(Symbol, Symbol) -> Option<Symbol>, w: &[Symbol]) -> Option<Word> {
    let mut out = Vec::with_capacity(2 * w.len());
    for (k, &a) in w.iter().enumerate() {
        if k > 0 {
            out.push(d(w[k - 1], a)?);
        }
        out.push(c[a.index()]?);
    }
    Some(out)
}

/// `{(φ(u), φ(v)) : (u, v) ∈ rel}`, built transition by transition: each pair `(x, y)`
/// becomes the `d` pair determined by the previous letters, then the `c` pair.
pub fn phi_relation(
    rel: &SyncRelation,
    target: &Alphabet,
    c: &[Option<Symbol>],
    d: &dyn Fn(Symbol, Symbol) -> Option<Symbol>,
) -> Result<SyncRelation, RelationError> {
    let src = PaddedPairs::new(rel.base().len());
    let dst = PaddedPairs::new(target.len());
    let dfa = rel.dfa();
    let live = dfa.live_states();
    type Key = (u32, Option<(Option<Symbol>, Option<Symbol>)>);
    let mut m = Nfa::new(target.padded().clone());
    let mut ids: HashMap<Key, u32> = HashMap::new();
    let mut queue: Vec<Key> = vec![(0, None)];
    ids.insert((0, None), m.add_state(dfa.is_accepting(0)));
    m.set_initial(0)?;
    let map_c = |t: Option<Symbol>| -> Option<Option<Symbol>> {
        match t {
            None => Some(None),
            Some(a) => c[a.index()].map(Some),
        }
    };
    while let Some(key) = queue.pop() {
        let from = ids[&key];
        let (state, prev) = key;
        for pair in dfa.alphabet().symbols() {
            let next = dfa.next(state, pair);
            if !live[next as usize] {
                continue;
            }
            let (x, y) = src.decode(pair);
            let (Some(cx), Some(cy)) = (map_c(x), map_c(y)) else { continue };
            let c_pair = dst.encode(cx, cy).expect("one track is a letter");
            let target_key: Key = (next, Some((x, y)));
            let to = match ids.get(&target_key) {
                Some(&t) => t,
                None => {
                    let t = m.add_state(dfa.is_accepting(next));
                    ids.insert(target_key, t);
                    queue.push(target_key);
                    t
                }
            };
            match prev {
                None => m.add_transition(from, c_pair, to)?,
                Some((px, py)) => {
                    let link = |p: Option<Symbol>, t: Option<Symbol>| -> Option<Option<Symbol>> {
                        match (p, t) {
                            (_, None) => Some(None),
                            (Some(p), Some(t)) => d(p, t).map(Some),
                            (None, Some(_)) => None,
                        }
                    };
                    let (Some(dx), Some(dy)) = (link(px, x), link(py, y)) else { continue };
                    let d_pair = dst.encode(dx, dy).expect("one track is a letter");
                    let mid = m.add_state(false);
                    m.add_transition(from, d_pair, mid)?;
                    m.add_transition(mid, c_pair, to)?;
                }
            }
        }
    }
    SyncRelation::from_nfa(target, &m)
}

/// Partition `E` by a mutual-stabilisation test, classes in order of first member.
fn classes(cs: &Work, e: &[Word], related: impl Fn(&Work, &Word, &Word) -> Result<bool, DecisionError>) -> Result<(Vec<usize>, usize), DecisionError> {
    let mut class_of = vec![usize::MAX; e.len()];
    let mut heads: Vec<usize> = Vec::new();
    for i in 0..e.len() {
        for (c, &h) in heads.iter().enumerate() {
            if related(cs, &e[h], &e[i])? {
                class_of[i] = c;
                break;
            }
        }
        if class_of[i] == usize::MAX {
            class_of[i] = heads.len();
            heads.push(i);
        }
    }
    Ok((class_of, heads.len()))
}

pub(super) fn decompose(d: &Decider) -> Result<ReesRepresentation, DecisionError> {
    let data = analyse(d)?.map_err(DecisionError::NotCzs)?;
    let cs = d.cross_section(true)?;
    let gamma = cs.structure().clone();
    let g = gamma.generators().clone();
    let lang = gamma.rep_lang().clone();
    let e = &data.idempotents;
    let zero = data.zero.clone();
    let not_zero = |w: &Dfa| w.difference(&cs.word_lang(&zero)).expect("shared alphabet");

    // e R f iff ef = f and fe = e; e L f iff ef = e and fe = f
    let r_rel = |cs: &Work, x: &Word, y: &Word| -> Result<bool, DecisionError> {
        Ok(cs.same(&cs.product(x, y)?, y) && cs.same(&cs.product(y, x)?, x))
    };
    let l_rel = |cs: &Work, x: &Word, y: &Word| -> Result<bool, DecisionError> {
        Ok(cs.same(&cs.product(x, y)?, x) && cs.same(&cs.product(y, x)?, y))
    };
    let (row_of_e, n_rows) = classes(cs, e, r_rel)?;
    let (col_of_e, n_cols) = classes(cs, e, l_rel)?;
    let first_with = |class_of: &[usize], c: usize| e[class_of.iter().position(|&x| x == c).expect("non-empty class")].clone();
    let rows: Vec<Word> = (0..n_rows).map(|c| first_with(&row_of_e, c)).collect();
    let cols: Vec<Word> = (0..n_cols).map(|c| first_with(&col_of_e, c)).collect();
    let mut idempotents = vec![vec![None; n_cols]; n_rows];
    for (k, w) in e.iter().enumerate() {
        idempotents[row_of_e[k]][col_of_e[k]] = Some(w.clone());
    }
    let (base_row, base_col) = (row_of_e[0], col_of_e[0]);

    // rows and columns of the non-zero generators
    let mut gen_row: Vec<Option<usize>> = vec![None; g.len()];
    let mut gen_col: Vec<Option<usize>> = vec![None; g.len()];
    for &a in &data.nonzero_generators {
        gen_row[a.index()] = data.sl[a.index()].first().map(|&k| row_of_e[k]);
        gen_col[a.index()] = data.sr[a.index()].first().map(|&k| col_of_e[k]);
    }
    let letters_in = |v: &[Option<usize>], c: usize| -> Vec<Symbol> { g.symbols().filter(|a| v[a.index()] == Some(c)).collect() };
    let block = |i: usize, l: usize| -> Dfa {
        not_zero(&lang.intersect(&starts_ends(&g, &letters_in(&gen_row, i), &letters_in(&gen_col, l))).expect("shared alphabet"))
    };
    let r: Vec<Word> = (0..n_rows)
        .map(|i| {
            idempotents[i][base_col]
                .clone()
                .or_else(|| block(i, base_col).shortlex_least())
                .ok_or_else(|| DecisionError::NotCzs(format!("H-class ({i}, {base_col}) is empty")))
        })
        .collect::<Result<_, _>>()?;
    let q: Vec<Word> = (0..n_cols)
        .map(|l| {
            idempotents[base_row][l]
                .clone()
                .or_else(|| block(base_row, l).shortlex_least())
                .ok_or_else(|| DecisionError::NotCzs(format!("H-class ({base_row}, {l}) is empty")))
        })
        .collect::<Result<_, _>>()?;
    let sandwich: Vec<Vec<Option<Word>>> = (0..n_cols)
        .map(|l| {
            (0..n_rows)
                .map(|i| cs.product(&q[l], &r[i]).map(|p| (p != zero).then_some(p)))
                .collect::<Result<Vec<_>, _>>()
        })
        .collect::<Result<_, _>>()?;

    let region = block(base_row, base_col);
    let mut generator_data: Vec<Option<(usize, usize, Word)>> = vec![None; g.len()];
    for &a in &data.nonzero_generators {
        let (Some(i), Some(l)) = (gen_row[a.index()], gen_col[a.index()]) else {
            return Err(DecisionError::NotCzs(format!("generator {} has no row or column", g.name(a))));
        };
        let mut found = None;
        for w in region.shortlex().take(d.search_bound) {
            let x = cs.rep(&[r[i].as_slice(), &w, &q[l]].concat())?;
            if cs.same(&x, &[a]) {
                found = Some(w);
                break;
            }
        }
        let w = found.ok_or_else(|| DecisionError::BoundExhausted(format!("no w_{} among {} candidates", g.name(a), d.search_bound)))?;
        generator_data[a.index()] = Some((i, l, w));
    }

    // the alphabet of Δ
    let mut names: Vec<String> = Vec::new();
    let mut c_of: Vec<Option<Symbol>> = vec![None; g.len()];
    for &a in &data.nonzero_generators {
        c_of[a.index()] = Some(Symbol(names.len() as u32));
        names.push(format!("c_{}", g.name(a)));
    }
    let mut d_of: HashMap<(usize, usize), Symbol> = HashMap::new();
    for (l, row) in sandwich.iter().enumerate() {
        for (i, entry) in row.iter().enumerate() {
            if entry.is_some() {
                d_of.insert((l, i), Symbol(names.len() as u32));
                names.push(format!("d_{l}_{i}"));
            }
        }
    }
    let delta = Alphabet::new(names).map_err(|e| DecisionError::Structure(e.into()))?;
    let link = |a: Symbol, b: Symbol| -> Option<Symbol> {
        let l = gen_col[a.index()]?;
        let i = gen_row[b.index()]?;
        d_of.get(&(l, i)).copied()
    };
    let phi = |rel: &SyncRelation| -> Result<SyncRelation, DecisionError> {
        let restricted = rel.restrict(&region).map_err(|e| DecisionError::Structure(e.into()))?;
        phi_relation(&restricted, &delta, &c_of, &link).map_err(|e| DecisionError::Structure(e.into()))
    };
    let phi_w = |w: &[Symbol]| phi_word(&c_of, &link, w).expect("words of the region map under φ");

    let delta_lang = phi(&diagonal(&region))?.project(1);
    let delta_eq = phi(gamma.equality())?;
    let mut delta_mults = Vec::new();
    let mut delta_assignment = Vec::new();
    for &a in &data.nonzero_generators {
        let (_, _, w) = generator_data[a.index()].as_ref().expect("set above");
        delta_mults.push(phi(&cs.multiplier(w))?);
        delta_assignment.push(phi_w(w));
    }
    let mut entries: Vec<((usize, usize), Symbol)> = d_of.iter().map(|(&k, &v)| (k, v)).collect();
    entries.sort_by_key(|&(_, s)| s);
    for ((l, i), _) in entries {
        let p = sandwich[l][i].as_ref().expect("non-zero entry");
        delta_mults.push(phi(&cs.multiplier(p))?);
        delta_assignment.push(phi_w(p));
    }
    let pre = PreAutomaticStructure::new(delta, delta_lang, delta_eq, delta_mults)?;
    let group = InterpretedAutomaticStructure::new(pre, delta_assignment, false)?;
    let matrix = sandwich
        .iter()
        .map(|row| row.iter().map(|p| p.as_ref().map(|p| phi_w(p))).collect())
        .collect();

    Ok(ReesRepresentation {
        gamma,
        group,
        rows,
        cols,
        matrix,
        sandwich,
        idempotents,
        base_row,
        base_col,
        r,
        q,
        generator_data,
        zero,
        region,
    })
}

/// Coordinates `(i, g, λ)` of elements, with `g` a word of `L(Δ)`.
pub type ReesCoords = Option<(usize, Word, usize)>;

/// Evaluates elements of `Γ` in Rees coordinates and multiplies them by the Rees formula.
pub struct ReesCoordinator<'a> {
    rees: &'a ReesRepresentation,
    gamma: Decider,
    delta: Decider,
    group_words: Vec<Word>,
}

impl ReesRepresentation {
    /// `bound` limits the enumeration of `L(Δ)` used to locate group coordinates.
    pub fn coordinator(&self, bound: usize) -> ReesCoordinator<'_> {
        ReesCoordinator {
            rees: self,
            gamma: Decider::new(&self.gamma),
            delta: Decider::new(&self.group),
            group_words: self.group.rep_lang().enumerate(bound, None),
        }
    }

    /// The word of `L(Γ)` corresponding to a word of `L(Δ)`: drop the `d` letters.
    pub fn unphi(&self, w: &[Symbol]) -> Word {
        let delta = self.group.generators();
        let gamma = self.gamma.generators();
        w.iter()
            .filter_map(|&s| delta.name(s).strip_prefix("c_").and_then(|n| gamma.symbol(n)))
            .collect()
    }
}

impl ReesCoordinator<'_> {
    pub fn coords(&self, u: &[Symbol]) -> Result<ReesCoords, DecisionError> {
        let cs = &self.gamma.base;
        let x = cs.rep(u)?;
        if x == self.rees.zero {
            return Ok(None);
        }
        let stab = |e: &Word, left: bool| -> Result<bool, DecisionError> {
            let p = if left { cs.product(e, &x)? } else { cs.product(&x, e)? };
            Ok(cs.same(&p, &x))
        };
        let mut row = None;
        for (i, e) in self.rees.rows.iter().enumerate() {
            if stab(e, true)? {
                row = Some(i);
                break;
            }
        }
        let mut col = None;
        for (l, e) in self.rees.cols.iter().enumerate() {
            if stab(e, false)? {
                col = Some(l);
                break;
            }
        }
        let (Some(i), Some(l)) = (row, col) else {
            return Err(DecisionError::NotCzs(format!("{} lies in no row or column", self.rees.gamma.generators().format_word(&x))));
        };
        for gw in &self.group_words {
            let candidate = [self.rees.r[i].as_slice(), &self.rees.unphi(gw), &self.rees.q[l]].concat();
            if cs.same(&cs.rep(&candidate)?, &x) {
                return Ok(Some((i, gw.clone(), l)));
            }
        }
        Err(DecisionError::BoundExhausted("group coordinate not found".into()))
    }

    /// `(i, g, λ)(j, h, μ) = (i, g·P_λj·h, μ)`, or zero when `P_λj` is zero.
    pub fn multiply(&self, a: &ReesCoords, b: &ReesCoords) -> Result<ReesCoords, DecisionError> {
        let (Some((i, g, l)), Some((j, h, m))) = (a, b) else { return Ok(None) };
        let Some(p) = &self.rees.matrix[*l][*j] else { return Ok(None) };
        let w = self.delta.find_representative(&[g.as_slice(), p, h].concat())?;
        Ok(Some((*i, w, *m)))
    }

    pub fn same(&self, a: &ReesCoords, b: &ReesCoords) -> bool {
        match (a, b) {
            (None, None) => true,
            (Some((i, g, l)), Some((j, h, m))) => i == j && l == m && self.delta.base.same(g, h),
            _ => false,
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::automata::Dfa;

    #[test]
    fn phi_relation_matches_word_map() {
        let g = Alphabet::from_chars("ab").unwrap();
        let delta = Alphabet::new(["ca", "cb", "dab", "dba", "daa"]).unwrap();
        let c = vec![Some(Symbol(0)), Some(Symbol(1))];
        let d = |x: Symbol, y: Symbol| match (x.0, y.0) {
            (0, 1) => Some(Symbol(2)),
            (1, 0) => Some(Symbol(3)),
            (0, 0) => Some(Symbol(4)),
            _ => None,
        };
        let words: Vec<Word> = Dfa::nonempty_words(g.clone()).enumerate(30, Some(4));
        let pairs: Vec<(Word, Word)> = words
            .iter()
            .enumerate()
            .filter(|(k, _)| k % 3 != 1)
            .flat_map(|(_, u)| words.iter().filter(|v| v.len() + 1 >= u.len()).map(move |v| (u.clone(), v.clone())))
            .collect();
        let rel = SyncRelation::from_pairs(&g, pairs.iter().map(|(u, v)| (u.as_slice(), v.as_slice())));
        let image = phi_relation(&rel, &delta, &c, &d).unwrap();
        let mut expected: Vec<(Word, Word)> = Vec::new();
        for (u, v) in &pairs {
            if let (Some(x), Some(y)) = (phi_word(&c, &d, u), phi_word(&c, &d, v)) {
                expected.push((x, y));
            }
        }
        let direct = SyncRelation::from_pairs(&delta, expected.iter().map(|(u, v)| (u.as_slice(), v.as_slice())));
        assert_eq!(image, direct);
    }
}
