use super::*;
use crate::oracle::{brute_properties, brute_rees, CayleyTable};
use crate::structure::catalog;

fn letter(i: usize) -> Word {
    vec![Symbol(i as u32)]
}

/// Element of the table represented by a word over its letters.
fn eval(t: &CayleyTable, w: &[Symbol]) -> usize {
    t.eval(w).expect("non-empty word")
}

fn samples() -> Vec<CayleyTable> {
    let mut v = vec![
        CayleyTable::trivial(),
        CayleyTable::cyclic_group(2),
        CayleyTable::cyclic_group(3),
        CayleyTable::semilattice(),
        CayleyTable::left_zero(2),
        CayleyTable::rectangular_band(2, 3),
        CayleyTable::brandt(2),
    ];
    v.extend((0..12).map(|seed| CayleyTable::random_small(seed, 7)));
    v
}

#[test]
fn elementwise_properties_match_tables() {
    for t in samples() {
        let p = brute_properties(&t);
        let d = Decider::new(&t.to_structure());
        let zero = d.zero().unwrap().map(|w| eval(&t, &w));
        assert_eq!(zero, p.zero, "{}", t.to_text());
        let identity = d.identity().unwrap().map(|w| eval(&t, &w));
        assert_eq!(identity, p.identity, "{}", t.to_text());
        let lz: Vec<usize> = d.left_zeros().shortlex().map(|w| eval(&t, &w)).collect();
        let mut lz_sorted = lz.clone();
        lz_sorted.sort();
        assert_eq!(lz_sorted, p.left_zeros);
        assert_eq!(d.is_right_cancellative(), p.right_cancellative, "{}", t.to_text());
        if p.identity.is_some() {
            for a in 0..t.len() {
                assert_eq!(d.is_unit(&letter(a)).unwrap(), p.units.contains(&a));
            }
        } else {
            assert_eq!(d.is_unit(&letter(0)), Err(DecisionError::NotAMonoid));
        }
    }
}

#[test]
fn trichotomy_matches_tables() {
    for t in samples() {
        let p = brute_properties(&t);
        let d = Decider::new(&t.to_structure());
        for &e in &p.idempotents {
            for w in 0..t.len() {
                let got = d.inverse_trichotomy(&letter(w), &letter(e)).unwrap();
                let k: Vec<usize> = (0..t.len()).filter(|&x| t.mul(x, w) == e).collect();
                let two_sided = k.iter().any(|&x| t.mul(w, x) == e);
                match got {
                    Trichotomy::A => panic!("finite semigroups never give A"),
                    Trichotomy::B(ws) => {
                        assert!(two_sided);
                        assert_eq!(t.mul(w, eval(&t, &ws[0])), e);
                        assert_eq!(ws.len(), k.len());
                    }
                    Trichotomy::C(ws) => {
                        assert!(!two_sided);
                        assert_eq!(ws.len(), k.len());
                    }
                }
            }
        }
        if let Some(&f) = (0..t.len()).find(|x| !p.idempotents.contains(x)).as_ref() {
            let e = p.idempotents[0];
            assert!(matches!(d.inverse_trichotomy(&letter(e), &letter(f)), Err(DecisionError::NotIdempotent(_))));
        }
    }
}

#[test]
fn simplicity_matches_tables() {
    for t in samples() {
        let p = brute_properties(&t);
        let d = Decider::new(&t.to_structure());
        assert_eq!(d.is_completely_zero_simple().unwrap().is_yes(), p.completely_zero_simple, "{}", t.to_text());
        assert_eq!(d.is_completely_simple().unwrap().is_yes(), p.completely_simple, "{}", t.to_text());
    }
}

fn check_rees(t: &CayleyTable, r: &ReesRepresentation, zero_letter: Option<usize>) {
    let brute = brute_rees(t).unwrap();
    assert_eq!(r.rows.len(), brute.rows.len());
    assert_eq!(r.cols.len(), brute.cols.len());
    let group_size = r.group.rep_lang().enumerate(1000, None).len();
    assert_eq!(group_size, brute.group.len());
    let coord = r.coordinator(1000);
    let n = t.len();
    let cs = |x: usize| letter(x);
    let elems: Vec<usize> = (0..n).collect();
    let coords: Vec<_> = elems.iter().map(|&x| coord.coords(&cs(x)).unwrap()).collect();
    for &x in &elems {
        assert_eq!(coords[x].is_none(), Some(x) == brute.zero);
        for &y in &elems {
            let via_rees = coord.multiply(&coords[x], &coords[y]).unwrap();
            assert!(coord.same(&via_rees, &coords[t.mul(x, y)]), "{x} {y}");
        }
    }
    let _ = zero_letter;
}

#[test]
fn rees_of_zero_simple_tables() {
    let c2 = CayleyTable::cyclic_group(2);
    let tables = vec![
        CayleyTable::brandt(2),
        CayleyTable::brandt(3),
        CayleyTable::rees_matrix(&c2, &[vec![Some(0), Some(1)], vec![None, Some(0)]], true).unwrap(),
        CayleyTable::rees_matrix(&CayleyTable::cyclic_group(3), &[vec![Some(1)]], true).unwrap(),
    ];
    for t in tables {
        let d = Decider::new(&t.to_structure());
        assert!(d.is_completely_zero_simple().unwrap().is_yes(), "{}", t.to_text());
        let r = d.rees_decomposition().unwrap();
        check_rees(&t, &r, None);
    }
}

#[test]
fn rees_of_simple_tables() {
    for t in [CayleyTable::rectangular_band(2, 3), CayleyTable::cyclic_group(3), CayleyTable::trivial()] {
        let d = Decider::new(&t.to_structure());
        let r = d.rees_decomposition_simple().unwrap();
        assert!(r.matrix.iter().flatten().all(Option::is_some));
        assert_eq!(r.rows.len(), brute_rees(&t).unwrap().rows.len());
    }
}

#[test]
fn longer_words_through_generated_structures() {
    // B2 from its two non-idempotent generators
    let b2 = CayleyTable::brandt(2);
    let names = b2.names().to_vec();
    let e12 = names.iter().position(|x| x == "e12").unwrap();
    let e21 = names.iter().position(|x| x == "e21").unwrap();
    let s = b2.generated_structure(&[e12, e21]);
    let d = Decider::new(&s);
    assert!(d.is_completely_zero_simple().unwrap().is_yes());
    let r = d.rees_decomposition().unwrap();
    assert_eq!((r.rows.len(), r.cols.len()), (2, 2));
    assert_eq!(r.group.rep_lang().enumerate(10, None).len(), 1);
    let z = d.zero().unwrap().unwrap();
    assert_eq!(z.len(), 2);
}

#[test]
fn bicyclic_monoid() {
    let s = catalog::bicyclic();
    let d = Decider::new(&s);
    let g = s.generators();
    let w = |t: &str| g.parse_word(t).unwrap();
    assert_eq!(d.identity().unwrap(), Some(Vec::new()));
    assert_eq!(d.zero().unwrap(), None);
    assert!(d.word_problem(&w("pq"), &[]).unwrap());
    assert!(!d.word_problem(&w("qp"), &[]).unwrap());
    assert!(!d.is_unit(&w("p")).unwrap());
    assert!(!d.is_unit(&w("q")).unwrap());
    assert!(d.is_unit(&w("pq")).unwrap());
    assert!(!d.is_right_cancellative());
    assert!(d.is_right_cancellable(&w("p")).unwrap());
    assert!(!d.is_right_cancellable(&w("q")).unwrap());
    assert!(matches!(d.inverse_trichotomy(&w("q"), &[]).unwrap(), Trichotomy::C(ref k) if k == &vec![w("p")]));
    assert_eq!(d.inverse_trichotomy(&w("qp"), &w("qp")).unwrap(), Trichotomy::B(vec![vec![], w("qp")]));
    assert!(!d.is_completely_simple().unwrap().is_yes());
}

#[test]
fn zero_has_infinitely_many_left_solutions() {
    let s = catalog::bicyclic().adjoin_zero();
    let z = Symbol(s.generators().len() as u32 - 1);
    let d = Decider::new(&s);
    assert_eq!(d.zero().unwrap().map(|w| d.word_problem(&w, &[z]).unwrap()), Some(true));
    assert_eq!(d.inverse_trichotomy(&[z], &[z]).unwrap(), Trichotomy::A);
}

#[test]
fn free_monoid_facts() {
    let s = catalog::free_monoid(&["a", "b"]);
    let d = Decider::new(&s);
    assert_eq!(d.identity().unwrap(), Some(Vec::new()));
    assert!(d.is_right_cancellative());
    assert_eq!(d.zero().unwrap(), None);
    let f = catalog::free_semigroup(&["a"]);
    let d = Decider::new(&f);
    assert_eq!(d.identity().unwrap(), None);
    assert_eq!(d.is_unit(&[Symbol(0)]), Err(DecisionError::NotAMonoid));
}
