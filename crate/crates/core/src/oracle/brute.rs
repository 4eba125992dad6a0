use std::collections::BTreeSet;

use super::{CayleyTable, OracleError};

/// Textbook properties of a finite semigroup, computed from its table.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BruteProperties {
    pub idempotents: Vec<usize>,
    pub left_zeros: Vec<usize>,
    pub right_zeros: Vec<usize>,
    pub zero: Option<usize>,
    pub identity: Option<usize>,
    /// Units of the monoid; empty when there is no identity.
    pub units: Vec<usize>,
    pub right_cancellative: bool,
    pub left_cancellative: bool,
    /// No two distinct elements `s, t` with `xs = xt` for every `x`.
    pub left_reductive: bool,
    pub r_classes: Vec<Vec<usize>>,
    pub l_classes: Vec<Vec<usize>>,
    pub h_classes: Vec<Vec<usize>>,
    pub d_classes: Vec<Vec<usize>>,
    pub completely_simple: bool,
    pub completely_zero_simple: bool,
}

fn classes(n: usize, key: impl Fn(usize) -> BTreeSet<usize>) -> (Vec<Vec<usize>>, Vec<usize>) {
    let keys: Vec<BTreeSet<usize>> = (0..n).map(key).collect();
    let mut out: Vec<Vec<usize>> = Vec::new();
    let mut class_of = vec![0; n];
    for a in 0..n {
        match (0..a).find(|&b| keys[b] == keys[a]) {
            Some(b) => {
                class_of[a] = class_of[b];
                out[class_of[b]].push(a);
            }
            None => {
                class_of[a] = out.len();
                out.push(vec![a]);
            }
        }
    }
    (out, class_of)
}

pub fn brute_properties(t: &CayleyTable) -> BruteProperties {
    let n = t.len();
    let all = 0..n;
    let idempotents: Vec<usize> = all.clone().filter(|&a| t.mul(a, a) == a).collect();
    let left_zeros: Vec<usize> = all.clone().filter(|&z| (0..n).all(|x| t.mul(z, x) == z)).collect();
    let right_zeros: Vec<usize> = all.clone().filter(|&z| (0..n).all(|x| t.mul(x, z) == z)).collect();
    let zero = left_zeros.iter().copied().find(|z| right_zeros.contains(z));
    let identity = all.clone().find(|&e| (0..n).all(|x| t.mul(e, x) == x && t.mul(x, e) == x));
    let units = match identity {
        Some(e) => all
            .clone()
            .filter(|&u| (0..n).any(|v| t.mul(u, v) == e && t.mul(v, u) == e))
            .collect(),
        None => Vec::new(),
    };
    let injective = |f: &dyn Fn(usize) -> usize| {
        let image: BTreeSet<usize> = (0..n).map(f).collect();
        image.len() == n
    };
    let right_cancellative = all.clone().all(|a| injective(&|x| t.mul(x, a)));
    let left_cancellative = all.clone().all(|a| injective(&|x| t.mul(a, x)));
    let left_reductive = (0..n).all(|s| (s + 1..n).all(|u| (0..n).any(|x| t.mul(x, s) != t.mul(x, u))));

    // principal ideals with the adjoined identity
    let right_ideal = |a: usize| -> BTreeSet<usize> { std::iter::once(a).chain((0..n).map(|x| t.mul(a, x))).collect() };
    let left_ideal = |a: usize| -> BTreeSet<usize> { std::iter::once(a).chain((0..n).map(|x| t.mul(x, a))).collect() };
    let ideal = |a: usize| -> BTreeSet<usize> {
        let mut s = right_ideal(a);
        let snapshot: Vec<usize> = s.iter().copied().collect();
        for b in snapshot {
            s.extend((0..n).map(|x| t.mul(x, b)));
        }
        s
    };
    let (r_classes, r_of) = classes(n, right_ideal);
    let (l_classes, l_of) = classes(n, left_ideal);
    let (h_classes, _) = classes(n, |a| [r_of[a], l_of[a]].into_iter().collect());
    // in a finite semigroup D = J
    let (d_classes, _) = classes(n, ideal);

    let completely_simple = n > 0 && d_classes.len() == 1;
    let completely_zero_simple = match zero {
        Some(z) => {
            let squares_nonzero = (0..n).any(|a| (0..n).any(|b| t.mul(a, b) != z));
            let nonzero_one_class = d_classes.len() == 2;
            n >= 2 && squares_nonzero && nonzero_one_class
        }
        None => false,
    };
    BruteProperties {
        idempotents,
        left_zeros,
        right_zeros,
        zero,
        identity,
        units,
        right_cancellative,
        left_cancellative,
        left_reductive,
        r_classes,
        l_classes,
        h_classes,
        d_classes,
        completely_simple,
        completely_zero_simple,
    }
}

/// A Rees matrix description `M⁰(G; I, Λ; P)` of a finite completely (zero-)simple semigroup.
#[derive(Clone, Debug)]
pub struct ReesData {
    /// Maximal subgroup, as elements of the original table.
    pub group_elements: Vec<usize>,
    pub group: CayleyTable,
    pub rows: Vec<Vec<usize>>,
    pub cols: Vec<Vec<usize>>,
    /// `sandwich[λ][i]`: index into `group_elements`, or `None` for zero.
    pub sandwich: Vec<Vec<Option<usize>>>,
    /// Element to `(i, g, λ)`; `None` for the zero.
    pub coords: Vec<Option<(usize, usize, usize)>>,
    pub zero: Option<usize>,
}

impl ReesData {
    /// Product through the Rees formula, in coordinates.
    pub fn multiply(&self, a: Option<(usize, usize, usize)>, b: Option<(usize, usize, usize)>) -> Option<(usize, usize, usize)> {
        let ((i, g, l), (j, h, m)) = (a?, b?);
        let p = self.sandwich[l][j]?;
        Some((i, self.group.mul(self.group.mul(g, p), h), m))
    }
}

pub fn brute_rees(t: &CayleyTable) -> Result<ReesData, OracleError> {
    let props = brute_properties(t);
    if !(props.completely_simple || props.completely_zero_simple) {
        return Err(OracleError::NotSimple);
    }
    let n = t.len();
    let zero = if props.completely_simple { None } else { props.zero };
    let nonzero = |a: &usize| Some(*a) != zero;
    let rows: Vec<Vec<usize>> = props.r_classes.iter().filter(|c| nonzero(&c[0])).cloned().collect();
    let cols: Vec<Vec<usize>> = props.l_classes.iter().filter(|c| nonzero(&c[0])).cloned().collect();
    let row_of = |a: usize| rows.iter().position(|c| c.contains(&a));
    let col_of = |a: usize| cols.iter().position(|c| c.contains(&a));
    let e = *props
        .idempotents
        .iter()
        .find(|e| nonzero(e))
        .ok_or(OracleError::NotSimple)?;
    let (i0, l0) = (row_of(e).expect("non-zero"), col_of(e).expect("non-zero"));
    let group_elements: Vec<usize> = (0..n).filter(|&a| row_of(a) == Some(i0) && col_of(a) == Some(l0)).collect();
    let gpos = |a: usize| group_elements.iter().position(|&x| x == a);
    let gn = group_elements.len();
    let mut gtable = vec![0; gn * gn];
    for (x, &a) in group_elements.iter().enumerate() {
        for (y, &b) in group_elements.iter().enumerate() {
            gtable[x * gn + y] = gpos(t.mul(a, b)).ok_or(OracleError::NotSimple)?;
        }
    }
    let gnames: Vec<String> = group_elements.iter().map(|&a| t.names()[a].clone()).collect();
    let group = CayleyTable::new(gnames, gtable)?;
    // r_i ∈ R_i ∩ L_e, q_λ ∈ L_λ ∩ R_e, with r_{i0} = q_{λ0} = e
    let r: Vec<usize> = (0..rows.len())
        .map(|i| if i == i0 { Some(e) } else { rows[i].iter().copied().find(|&a| col_of(a) == Some(l0)) })
        .collect::<Option<_>>()
        .ok_or(OracleError::NotSimple)?;
    let q: Vec<usize> = (0..cols.len())
        .map(|l| if l == l0 { Some(e) } else { cols[l].iter().copied().find(|&a| row_of(a) == Some(i0)) })
        .collect::<Option<_>>()
        .ok_or(OracleError::NotSimple)?;
    let sandwich: Vec<Vec<Option<usize>>> = (0..cols.len())
        .map(|l| (0..rows.len()).map(|i| gpos(t.mul(q[l], r[i]))).collect())
        .collect();
    let mut coords = vec![None; n];
    for a in (0..n).filter(nonzero) {
        let (i, l) = (row_of(a).ok_or(OracleError::NotSimple)?, col_of(a).ok_or(OracleError::NotSimple)?);
        let g = (0..gn)
            .find(|&g| t.mul(t.mul(r[i], group_elements[g]), q[l]) == a)
            .ok_or(OracleError::NotSimple)?;
        coords[a] = Some((i, g, l));
    }
    let data = ReesData {
        group_elements,
        group,
        rows,
        cols,
        sandwich,
        coords,
        zero,
    };
    for a in 0..n {
        for b in 0..n {
            if data.multiply(data.coords[a], data.coords[b]) != data.coords[t.mul(a, b)] {
                return Err(OracleError::NotSimple);
            }
        }
    }
    Ok(data)
}
