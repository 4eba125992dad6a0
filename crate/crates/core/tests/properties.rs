mod common;

use std::collections::BTreeSet;

use autosemi::automata::{Alphabet, Dfa, Symbol, Word};
use autosemi::decide::Decider;
use autosemi::document::StructureDocument;
use autosemi::oracle::CayleyTable;
use autosemi::relations::{convolve, deconvolve, shortlex_less, splice_relation, SyncRelation};
use autosemi::rewriting::{build_rm, TuringMachine};
use autosemi::structure::catalog;
use proptest::prelude::*;

use common::bicyclic_normal_form;

fn ab() -> Alphabet {
    Alphabet::from_chars("ab").unwrap()
}

fn word(k: u32, max_len: usize) -> impl Strategy<Value = Word> {
    prop::collection::vec((0..k).prop_map(Symbol), 0..=max_len)
}

fn pairs(max: usize) -> impl Strategy<Value = BTreeSet<(Word, Word)>> {
    prop::collection::btree_set((word(2, 4), word(2, 4)), 0..=max)
}

fn finite(set: &BTreeSet<(Word, Word)>) -> SyncRelation {
    SyncRelation::from_pairs(&ab(), set.iter().map(|(u, v)| (u.as_slice(), v.as_slice())))
}

/// All pairs of a finite relation, read back by enumerating images of every word up to length 4.
fn members(r: &SyncRelation) -> BTreeSet<(Word, Word)> {
    let mut out = BTreeSet::new();
    for u in common::words_up_to(&ab(), 4) {
        for v in r.image_of_word(&u).enumerate(1000, None) {
            out.insert((u.clone(), v));
        }
    }
    out
}

const ONE_RULE: &str = "states: q0 qa\nalphabet: a\nblank: B\ninitial: q0\naccept: qa\nq0 a qa a R\n";

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn convolution_round_trip(u in word(3, 8), v in word(3, 8)) {
        let g = Alphabet::from_chars("abc").unwrap();
        let padded = convolve(&g, &u, &v);
        prop_assert_eq!(padded.len(), u.len().max(v.len()));
        prop_assert_eq!(deconvolve(&g, &padded).unwrap(), (u, v));
    }

    #[test]
    fn finite_relations_follow_set_algebra(x in pairs(6), y in pairs(6)) {
        let (r, s) = (finite(&x), finite(&y));
        prop_assert_eq!(members(&r), x.clone());
        prop_assert_eq!(members(&r.union(&s).unwrap()), x.union(&y).cloned().collect::<BTreeSet<_>>());
        prop_assert_eq!(members(&r.intersect(&s).unwrap()), x.intersection(&y).cloned().collect::<BTreeSet<_>>());
        prop_assert_eq!(members(&r.difference(&s).unwrap()), x.difference(&y).cloned().collect::<BTreeSet<_>>());
        let swapped: BTreeSet<_> = x.iter().map(|(u, v)| (v.clone(), u.clone())).collect();
        prop_assert_eq!(members(&r.invert()), swapped);
        let composed: BTreeSet<_> = x
            .iter()
            .flat_map(|(u, v)| y.iter().filter(move |(v2, _)| v2 == v).map(move |(_, w)| (u.clone(), w.clone())))
            .collect();
        prop_assert_eq!(members(&r.compose(&s).unwrap()), composed);
    }

    #[test]
    fn complement_is_an_involution(seed in any::<u64>()) {
        use rand::SeedableRng;
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(seed);
        let r = common::random_relation(&mut rng, &ab(), 5);
        prop_assert_eq!(r.complement().complement(), r.clone());
        prop_assert!(r.intersect(&r.complement()).unwrap().is_empty());
    }

    #[test]
    fn shortlex_relation_matches_comparison(u in word(2, 6), v in word(2, 6)) {
        let less = (u.len(), &u) < (v.len(), &v);
        prop_assert_eq!(shortlex_less(&ab()).contains(&u, &v), less);
    }

    #[test]
    fn splice_contains_its_instances(x in word(2, 4), alpha in word(2, 3), beta in word(2, 3), z in word(2, 4)) {
        let g = ab();
        let r = splice_relation(&Dfa::universal(g.clone()), &alpha, &beta, &Dfa::universal(g)).unwrap();
        let join = |m: &Word| [x.as_slice(), m, z.as_slice()].concat();
        prop_assert!(r.contains(&join(&alpha), &join(&beta)));
    }

    #[test]
    fn minimize_preserves_language(seed in any::<u64>()) {
        use rand::SeedableRng;
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(seed);
        let r = common::random_relation(&mut rng, &ab(), 6);
        let m = r.dfa().minimize();
        prop_assert!(m.num_states() <= r.dfa().num_states());
        for w in common::words_up_to(r.dfa().alphabet(), 3) {
            prop_assert_eq!(m.accepts(&w), r.dfa().accepts(&w));
        }
    }

    #[test]
    fn bicyclic_word_problem(u in word(2, 10), v in word(2, 10)) {
        let d = Decider::new(&catalog::bicyclic());
        prop_assert_eq!(d.word_problem(&u, &v).unwrap(), bicyclic_normal_form(&u) == bicyclic_normal_form(&v));
        let rep = d.find_representative(&u).unwrap();
        prop_assert_eq!(bicyclic_normal_form(&rep), bicyclic_normal_form(&u));
    }

    #[test]
    fn table_structures_evaluate_correctly(seed in 0u64..10_000, w in word(6, 6)) {
        let t = CayleyTable::random_small(seed, 5);
        let w: Word = w.into_iter().map(|s| Symbol(s.0 % t.len() as u32)).collect();
        prop_assume!(!w.is_empty());
        let s = t.to_structure();
        let rep = s.find_representative(&w).unwrap();
        prop_assert_eq!(t.eval(&rep), t.eval(&w));
    }

    #[test]
    fn documents_round_trip(seed in 0u64..10_000) {
        let s = CayleyTable::random_small(seed, 5).to_structure();
        let doc = StructureDocument::from_structure(&s);
        let back = StructureDocument::parse(&doc.to_json()).unwrap();
        prop_assert_eq!(&back, &doc);
        let rebuilt = back.to_structure().unwrap();
        prop_assert!(rebuilt.same_relations(&s));
        prop_assert_eq!(rebuilt.assignment(), s.assignment());
    }

    #[test]
    fn normal_forms_are_irreducible_and_smaller(w in word(7, 10)) {
        let rm = build_rm(&TuringMachine::parse(ONE_RULE).unwrap()).unwrap();
        let nf = rm.system.normal_form(&w, 10_000).unwrap();
        prop_assert!(rm.system.is_irreducible(&nf));
        prop_assert!(rm.system.irr_automaton().accepts(&nf));
        prop_assert!(nf == w || rm.order().greater(&w, &nf));
        prop_assert_eq!(rm.system.normal_form(&nf, 10_000).unwrap(), nf);
    }
}
