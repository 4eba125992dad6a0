use autosemi::automata::{Dfa, Symbol, Word};
use autosemi::decide::Decider;
use autosemi::relations::{diagonal, is_subrelation};
use autosemi::rewriting::{build_rm, RmSystem, RunOutcome, TuringMachine};

const ONE_RULE: &str = "states: q0 qa\nalphabet: a\nblank: B\ninitial: q0\naccept: qa\nq0 a qa a R\n";

/// Scans right over `a`, steps back on `b` and accepts if it sees an `a` there.
const STEP_BACK: &str = "states: q0 q1 qa\nalphabet: a b\nblank: B\ninitial: q0\naccept: qa\n\
q0 a q0 a R\nq0 b q1 b L\nq1 a qa a R\n";

/// Rewrites the input to `b`s, writes `a` on the first blank going left, then accepts on `b`.
const BLANKS: &str = "states: q0 q1 qa\nalphabet: a b\nblank: B\ninitial: q0\naccept: qa\n\
q0 a q0 b R\nq0 B q1 a L\nq1 b qa b R\nq1 a q1 a R\n";

/// Writes past the end of the tape moving right, then accepts on the next blank.
const GROW: &str = "states: q0 q1 qa\nalphabet: a\nblank: B\ninitial: q0\naccept: qa\n\
q0 a q0 a R\nq0 B q1 a R\nq1 B qa a L\n";

/// Never halts on inputs starting with `a`.
const LOOP: &str = "states: q0 q1 qa\nalphabet: a\nblank: B\ninitial: q0\naccept: qa\n\
q0 a q1 a R\nq1 a q0 a L\nq1 B q0 a L\n";

fn machine(text: &str) -> RmSystem {
    build_rm(&TuringMachine::parse(text).unwrap()).unwrap()
}

fn inputs(m: &TuringMachine, max_len: usize) -> Vec<Vec<usize>> {
    let mut out = vec![vec![]];
    let mut frontier = vec![vec![]];
    for _ in 0..max_len {
        let mut next = Vec::new();
        for w in &frontier {
            for a in 0..m.alphabet.len() {
                let mut v: Vec<usize> = w.clone();
                v.push(a);
                next.push(v);
            }
        }
        out.extend(next.iter().cloned());
        frontier = next;
    }
    out
}

#[test]
fn rm_has_no_overlaps_and_decreases() {
    for text in [ONE_RULE, STEP_BACK, BLANKS, GROW, LOOP] {
        let rm = machine(text);
        let report = rm.system.check_convergence(rm.order(), 1000);
        assert_eq!(report.nontrivial_overlaps(), 0, "{text}");
        assert!(report.not_decreasing.is_empty(), "{text}");
        assert!(report.is_convergent());
    }
}

#[test]
fn right_inverse_search_matches_simulation() {
    for text in [ONE_RULE, STEP_BACK, BLANKS, GROW, LOOP] {
        let rm = machine(text);
        for w in inputs(&rm.machine, 3) {
            let found = rm.right_invert_search(&w, 40, 100_000).unwrap();
            match rm.machine.run(&w, 1000) {
                RunOutcome::Accepted { steps, tape_len } => assert_eq!(found, Some(steps + tape_len + 1), "{text} {w:?}"),
                RunOutcome::Rejected { .. } | RunOutcome::Running => assert_eq!(found, None, "{text} {w:?}"),
            }
        }
    }
}

/// Every irreducible word up to `max_len`, depth first.
fn irreducible_words(irr: &Dfa, max_len: usize, visit: &mut dyn FnMut(&[Symbol])) {
    let k = irr.alphabet().len();
    let live = irr.live_states();
    let mut stack: Vec<(Word, u32)> = vec![(Vec::new(), 0)];
    while let Some((w, s)) = stack.pop() {
        visit(&w);
        if w.len() == max_len {
            continue;
        }
        for a in 0..k {
            let t = irr.next(s, Symbol(a as u32));
            if live[t as usize] && irr.is_accepting(t) {
                let mut v = w.clone();
                v.push(Symbol(a as u32));
                stack.push((v, t));
            }
        }
    }
}

fn check_ld(text: &str, max_len: usize) -> usize {
    let rm = machine(text);
    let s = rm.tm_structure().unwrap();
    let ld = s.structure().letter_multiplier(rm.d());
    let irr = s.rep_lang();
    // functional with domain IRR
    assert!(is_subrelation(&ld.invert().compose(ld).unwrap(), &diagonal(&ld.project(2))).unwrap());
    assert_eq!(&ld.project(1), irr);
    let mut count = 0;
    irreducible_words(irr, max_len, &mut |u| {
        let mut ud = u.to_vec();
        ud.push(rm.d());
        let v = rm.system.normal_form(&ud, 10_000).unwrap();
        assert!(ld.contains(u, &v), "{}", rm.alphabet().format_word(u));
        count += 1;
    });
    count
}

#[test]
fn ld_agrees_with_rewriting_one_rule() {
    assert!(check_ld(ONE_RULE, 8) > 100_000);
}

#[test]
fn ld_agrees_with_rewriting_left_moves() {
    check_ld(STEP_BACK, 7);
    check_ld(BLANKS, 6);
}

#[test]
fn tm_structure_is_valid_monoid() {
    let rm = machine(ONE_RULE);
    let s = rm.tm_structure().unwrap();
    assert!(s.sanity_validate().is_empty());
    let d = Decider::new(&s);
    assert_eq!(d.identity().unwrap(), Some(vec![]));
    let mut w = rm.configuration(&[0]);
    for n in 1..=4 {
        w.push(rm.d());
        assert_eq!(d.word_problem(&w, &[]).unwrap(), n == 3, "{n}");
    }
    let g = rm.alphabet();
    let pair = (g.parse_word("bar:h.q0.a.h").unwrap(), g.parse_word("bar:h.bar:a.qa.h").unwrap());
    assert!(s.structure().letter_multiplier(rm.d()).contains(&pair.0, &pair.1));
}
