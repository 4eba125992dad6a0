//! Finite semigroups given by multiplication tables, with brute-force answers to every
//! question the decision procedures ask.

mod brute;
mod check;

use std::collections::HashMap;
use std::fmt::Write as _;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::automata::{Alphabet, Dfa, Symbol, Word};
use crate::relations::{diagonal, SyncRelation};
use crate::structure::{InterpretedAutomaticStructure, PreAutomaticStructure};

pub use brute::{brute_properties, brute_rees, BruteProperties, ReesData};
pub use check::compare_with_brute;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum OracleError {
    #[error("table is not associative: ({0}{1}){2} != {0}({1}{2})")]
    NotAssociative(String, String, String),
    #[error("malformed table: {0}")]
    Malformed(String),
    #[error("semigroup is not completely (zero-)simple")]
    NotSimple,
}

/// A finite semigroup as a full multiplication table.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CayleyTable {
    names: Vec<String>,
    /// `product[a * n + b] = a·b`
    product: Vec<usize>,
}

/// Default element names: single letters while they last.
fn default_names(n: usize) -> Vec<String> {
    if n <= 26 {
        (0..n).map(|i| ((b'a' + i as u8) as char).to_string()).collect()
    } else {
        (0..n).map(|i| format!("s{i}")).collect()
    }
}

impl CayleyTable {
    pub fn new(names: Vec<String>, product: Vec<usize>) -> Result<Self, OracleError> {
        let n = names.len();
        if product.len() != n * n {
            return Err(OracleError::Malformed(format!("expected {} entries, found {}", n * n, product.len())));
        }
        if let Some(&bad) = product.iter().find(|&&x| x >= n) {
            return Err(OracleError::Malformed(format!("entry {bad} out of range")));
        }
        Alphabet::new(names.iter().cloned()).map_err(|e| OracleError::Malformed(e.to_string()))?;
        let t = CayleyTable { names, product };
        for a in 0..n {
            for b in 0..n {
                for c in 0..n {
                    if t.mul(t.mul(a, b), c) != t.mul(a, t.mul(b, c)) {
                        return Err(OracleError::NotAssociative(
                            t.names[a].clone(),
                            t.names[b].clone(),
                            t.names[c].clone(),
                        ));
                    }
                }
            }
        }
        Ok(t)
    }

    /// Table with default element names.
    pub fn from_rows(rows: &[Vec<usize>]) -> Result<Self, OracleError> {
        let n = rows.len();
        if rows.iter().any(|r| r.len() != n) {
            return Err(OracleError::Malformed("table is not square".into()));
        }
        CayleyTable::new(default_names(n), rows.concat())
    }

    /// Text format: first line `n`, then `n` rows of `n` whitespace-separated indices.
    pub fn parse(text: &str) -> Result<Self, OracleError> {
        let mut lines = text.lines().map(str::trim).filter(|l| !l.is_empty() && !l.starts_with('#'));
        let n: usize = lines
            .next()
            .ok_or_else(|| OracleError::Malformed("empty input".into()))?
            .parse()
            .map_err(|_| OracleError::Malformed("first line must be the order".into()))?;
        let mut rows = Vec::with_capacity(n);
        for i in 0..n {
            let line = lines
                .next()
                .ok_or_else(|| OracleError::Malformed(format!("missing row {i}")))?;
            let row: Vec<usize> = line
                .split_whitespace()
                .map(|x| x.parse().map_err(|_| OracleError::Malformed(format!("bad entry `{x}` in row {i}"))))
                .collect::<Result<_, _>>()?;
            rows.push(row);
        }
        if lines.next().is_some() {
            return Err(OracleError::Malformed("trailing rows".into()));
        }
        CayleyTable::from_rows(&rows)
    }

    pub fn to_text(&self) -> String {
        let n = self.len();
        let mut out = format!("{n}\n");
        for a in 0..n {
            let row: Vec<String> = (0..n).map(|b| self.mul(a, b).to_string()).collect();
            let _ = writeln!(out, "{}", row.join(" "));
        }
        out
    }

    pub fn with_names(self, names: &[&str]) -> Result<Self, OracleError> {
        CayleyTable::new(names.iter().map(|s| s.to_string()).collect(), self.product)
    }

    pub fn len(&self) -> usize {
        self.names.len()
    }

    pub fn is_empty(&self) -> bool {
        self.names.is_empty()
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    #[inline]
    pub fn mul(&self, a: usize, b: usize) -> usize {
        self.product[a * self.len() + b]
    }

    /// Product of a non-empty word of elements.
    pub fn eval(&self, word: &[Symbol]) -> Option<usize> {
        let (first, rest) = word.split_first()?;
        Some(rest.iter().fold(first.index(), |acc, b| self.mul(acc, b.index())))
    }

    pub fn trivial() -> Self {
        CayleyTable::from_rows(&[vec![0]]).expect("associative")
    }

    /// `Z_n` with elements `1, g, g2, …`.
    pub fn cyclic_group(n: usize) -> Self {
        let rows: Vec<Vec<usize>> = (0..n).map(|a| (0..n).map(|b| (a + b) % n).collect()).collect();
        let names: Vec<String> = (0..n)
            .map(|i| match i {
                0 => "1".to_string(),
                1 => "g".to_string(),
                _ => format!("g{i}"),
            })
            .collect();
        CayleyTable::new(names, rows.concat()).expect("associative")
    }

    /// `{e, z}` with `z` absorbing.
    pub fn semilattice() -> Self {
        CayleyTable::new(vec!["e".into(), "z".into()], vec![0, 1, 1, 1]).expect("associative")
    }

    /// `xy = x`.
    pub fn left_zero(n: usize) -> Self {
        let rows: Vec<Vec<usize>> = (0..n).map(|a| vec![a; n]).collect();
        let t = CayleyTable::from_rows(&rows).expect("associative");
        if n == 2 {
            t.with_names(&["x", "y"]).expect("names")
        } else {
            t
        }
    }

    /// `I × Λ` with `(i,λ)(j,μ) = (i,μ)`.
    pub fn rectangular_band(rows: usize, cols: usize) -> Self {
        let idx = |i: usize, l: usize| i * cols + l;
        let n = rows * cols;
        let mut product = vec![0; n * n];
        for i in 0..rows {
            for l in 0..cols {
                for j in 0..rows {
                    for m in 0..cols {
                        product[idx(i, l) * n + idx(j, m)] = idx(i, m);
                    }
                }
            }
        }
        CayleyTable::new(default_names(n), product).expect("associative")
    }

    /// The Brandt semigroup `B_n`: matrix units `e_ij` and a zero.
    pub fn brandt(n: usize) -> Self {
        let size = n * n + 1;
        let zero = n * n;
        let mut product = vec![zero; size * size];
        for i in 0..n {
            for j in 0..n {
                for k in 0..n {
                    product[(i * n + j) * size + (j * n + k)] = i * n + k;
                }
            }
        }
        let mut names: Vec<String> = (0..n)
            .flat_map(|i| (0..n).map(move |j| format!("e{}{}", i + 1, j + 1)))
            .collect();
        names.push("z".into());
        CayleyTable::new(names, product).expect("associative")
    }

    /// `M⁰(G; I, Λ; P)` with `P[λ][i]` an element of `G` or `None` for zero.
    /// Element `(i, g, λ)` has index `(i·|G| + g)·|Λ| + λ`; the zero comes last.
    pub fn rees_matrix(group: &CayleyTable, sandwich: &[Vec<Option<usize>>], with_zero: bool) -> Result<Self, OracleError> {
        let cols = sandwich.len();
        let rows = sandwich.first().map_or(0, Vec::len);
        let gn = group.len();
        let idx = |i: usize, g: usize, l: usize| (i * gn + g) * cols + l;
        let n = rows * gn * cols + with_zero as usize;
        let zero = n - 1;
        let mut product = vec![0; n * n];
        for a in 0..n {
            for b in 0..n {
                let entry = if with_zero && (a == zero || b == zero) {
                    zero
                } else {
                    let (i, g, l) = (a / (gn * cols), (a / cols) % gn, a % cols);
                    let (j, h, m) = (b / (gn * cols), (b / cols) % gn, b % cols);
                    match sandwich[l][j] {
                        Some(p) => idx(i, group.mul(group.mul(g, p), h), m),
                        None if with_zero => zero,
                        None => return Err(OracleError::Malformed("zero sandwich entry without a zero".into())),
                    }
                };
                product[a * n + b] = entry;
            }
        }
        CayleyTable::new(default_names(n), product)
    }

    /// The semigroup generated by random maps on `points` points, closed under composition.
    /// Elements are listed in order of discovery.
    pub fn random(seed: u64, points: usize, generators: usize) -> Self {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let gens: Vec<Vec<u8>> = (0..generators.max(1))
            .map(|_| (0..points).map(|_| rng.gen_range(0..points) as u8).collect())
            .collect();
        let mut elements: Vec<Vec<u8>> = Vec::new();
        let mut index: HashMap<Vec<u8>, usize> = HashMap::new();
        for g in &gens {
            if !index.contains_key(g) {
                index.insert(g.clone(), elements.len());
                elements.push(g.clone());
            }
        }
        // f·g means "f then g"
        let compose = |f: &[u8], g: &[u8]| -> Vec<u8> { f.iter().map(|&x| g[x as usize]).collect() };
        let mut i = 0;
        while i < elements.len() {
            for g in &gens {
                let h = compose(&elements[i], g);
                if !index.contains_key(&h) {
                    index.insert(h.clone(), elements.len());
                    elements.push(h);
                }
            }
            i += 1;
        }
        let n = elements.len();
        let mut product = vec![0; n * n];
        for a in 0..n {
            for b in 0..n {
                product[a * n + b] = index[&compose(&elements[a], &elements[b])];
            }
        }
        CayleyTable::new(default_names(n), product).expect("composition is associative")
    }

    /// A random transformation semigroup with at most `max_order` elements. Seeds are
    /// derived deterministically from `seed` until one fits.
    pub fn random_small(seed: u64, max_order: usize) -> Self {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        loop {
            let points = rng.gen_range(2..=4);
            let gens = rng.gen_range(1..=2);
            let t = CayleyTable::random(rng.gen(), points, gens);
            if t.len() <= max_order {
                return t;
            }
        }
    }

    pub fn alphabet(&self) -> Alphabet {
        Alphabet::new(self.names.iter().cloned()).expect("names checked at construction")
    }

    /// The structure with one letter per element: `L = A`, `L_= ` the diagonal and
    /// `L_a = {(b, ba)}`.
    pub fn to_structure(&self) -> InterpretedAutomaticStructure {
        let g = self.alphabet();
        let letters: Vec<Word> = g.symbols().map(|a| vec![a]).collect();
        let lang = Dfa::finite(g.clone(), letters.iter().map(|w| w.as_slice()));
        let multipliers = g
            .symbols()
            .map(|a| {
                let pairs: Vec<(Word, Word)> = g
                    .symbols()
                    .map(|b| (vec![b], vec![Symbol(self.mul(b.index(), a.index()) as u32)]))
                    .collect();
                SyncRelation::from_pairs(&g, pairs.iter().map(|(u, v)| (u.as_slice(), v.as_slice())))
            })
            .collect();
        let structure =
            PreAutomaticStructure::new(g, lang.clone(), diagonal(&lang), multipliers).expect("consistent parts");
        InterpretedAutomaticStructure::new(structure, letters, false).expect("letters are representatives")
    }
}

impl CayleyTable {
    /// Shortlex-least word over `gens` for every element of the subsemigroup they generate.
    pub fn shortlex_words(&self, gens: &[usize]) -> Vec<Option<Word>> {
        let mut words: Vec<Option<Word>> = vec![None; self.len()];
        let mut queue: std::collections::VecDeque<usize> = std::collections::VecDeque::new();
        for (k, &g) in gens.iter().enumerate() {
            if words[g].is_none() {
                words[g] = Some(vec![Symbol(k as u32)]);
                queue.push_back(g);
            }
        }
        while let Some(x) = queue.pop_front() {
            for (k, &g) in gens.iter().enumerate() {
                let y = self.mul(x, g);
                if words[y].is_none() {
                    let mut w = words[x].clone().expect("visited");
                    w.push(Symbol(k as u32));
                    words[y] = Some(w);
                    queue.push_back(y);
                }
            }
        }
        words
    }

    /// The structure of the subsemigroup generated by `gens`, each element represented by
    /// its shortlex-least word.
    pub fn generated_structure(&self, gens: &[usize]) -> InterpretedAutomaticStructure {
        let g = Alphabet::new(gens.iter().map(|&x| self.names[x].clone())).expect("distinct names");
        let words = self.shortlex_words(gens);
        let present: Vec<usize> = (0..self.len()).filter(|&x| words[x].is_some()).collect();
        let word = |x: usize| words[x].as_deref().expect("generated element");
        let lang = Dfa::finite(g.clone(), present.iter().map(|&x| word(x)));
        let multipliers = gens
            .iter()
            .map(|&a| SyncRelation::from_pairs(&g, present.iter().map(|&x| (word(x), word(self.mul(x, a))))))
            .collect();
        let structure =
            PreAutomaticStructure::new(g, lang.clone(), diagonal(&lang), multipliers).expect("consistent parts");
        let assignment = gens.iter().map(|&a| word(a).to_vec()).collect();
        InterpretedAutomaticStructure::new(structure, assignment, false).expect("words are representatives")
    }
}

/// The structure of a finite semigroup given by its table.
pub fn from_cayley(t: &CayleyTable) -> InterpretedAutomaticStructure {
    t.to_structure()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parse_and_print() {
        let t = CayleyTable::parse("2\n0 1\n1 1\n").unwrap();
        assert_eq!(t.mul(0, 1), 1);
        assert_eq!(CayleyTable::parse(&t.to_text()).unwrap(), t);
        assert!(CayleyTable::parse("2\n0 1\n0 1\n").is_ok());
        assert!(matches!(CayleyTable::parse("2\n1 0\n0 0\n"), Err(OracleError::NotAssociative(..))));
        assert!(matches!(CayleyTable::parse("2\n0 1\n"), Err(OracleError::Malformed(_))));
    }

    #[test]
    fn named_instances_are_associative() {
        assert_eq!(CayleyTable::brandt(2).len(), 5);
        assert_eq!(CayleyTable::rectangular_band(2, 2).len(), 4);
        assert_eq!(CayleyTable::cyclic_group(2).names(), ["1", "g"]);
        let c2 = CayleyTable::cyclic_group(2);
        let rm = CayleyTable::rees_matrix(&c2, &[vec![Some(0), None], vec![None, Some(1)]], true).unwrap();
        assert_eq!(rm.len(), 9);
    }

    #[test]
    fn random_is_seed_stable() {
        let a = CayleyTable::random(7, 3, 2);
        let b = CayleyTable::random(7, 3, 2);
        assert_eq!(a, b);
        assert!(a.len() <= 27);
        assert!(CayleyTable::random_small(3, 6).len() <= 6);
    }

    #[test]
    fn cayley_structure_validates() {
        for t in [CayleyTable::trivial(), CayleyTable::semilattice(), CayleyTable::left_zero(2)] {
            let s = t.to_structure();
            assert!(s.sanity_validate().is_empty());
            assert!(s.is_cross_section());
        }
    }
}
