use crate::automata::{Alphabet, Dfa, Symbol, Word};
use crate::relations::{diagonal, product_relation, splice_relation, RelationError, SyncRelation};
use crate::structure::{InterpretedAutomaticStructure, PreAutomaticStructure, StructureError};

use super::{Move, RewriteError, Rule, StringRewritingSystem, TerminationOrder, TuringMachine};

/// The rewriting system of a machine over `Q ∪ Σ ∪ Σ̄ ∪ {d, h, h̄}`, symbols in that order.
/// Marked letters are named `bar:<letter>`.
#[derive(Clone, Debug)]
pub struct RmSystem {
    pub machine: TuringMachine,
    pub system: StringRewritingSystem,
    /// Rule schema (1 to 9) of each rule.
    pub schema: Vec<u8>,
}

pub fn build_rm(machine: &TuringMachine) -> Result<RmSystem, RewriteError> {
    machine.validate()?;
    let m = machine;
    let mut names: Vec<String> = m.states.clone();
    names.extend(m.alphabet.iter().cloned());
    names.extend(m.alphabet.iter().map(|a| format!("bar:{a}")));
    names.extend(["d", "h", "bar:h"].map(String::from));
    let gamma = Alphabet::new(names)?;
    let enc = Encoding { nq: m.states.len(), ns: m.alphabet.len() };
    let (d, h, hbar) = (enc.d(), enc.h(), enc.hbar());
    let q = |i: usize| enc.state(i);
    let s = |i: usize| enc.letter(i);
    let bar = |i: usize| enc.marked(i);
    let sigma = 0..m.alphabet.len();
    let qa = q(m.accept);

    let mut rules: Vec<(u8, Word, Word)> = Vec::new();
    for (&(p, read), t) in &m.delta {
        let (np, b) = (q(t.state), s(t.write));
        match (read, t.dir) {
            (Some(a), Move::Right) => rules.push((1, vec![q(p), s(a), d], vec![bar(t.write), np])),
            (None, Move::Right) => rules.push((2, vec![q(p), h, d], vec![bar(t.write), np, h])),
            (Some(a), Move::Left) => {
                for c in sigma.clone() {
                    rules.push((3, vec![bar(c), q(p), s(a), d], vec![np, s(c), b]));
                }
            }
            (None, Move::Left) => {
                for c in sigma.clone() {
                    rules.push((4, vec![bar(c), q(p), h, d], vec![np, s(c), b, h]));
                }
            }
        }
    }
    rules.sort_by_key(|r| r.0);
    for a in sigma.clone() {
        rules.push((5, vec![qa, s(a), d], vec![qa]));
    }
    for a in sigma.clone() {
        rules.push((6, vec![bar(a), qa, h, d], vec![qa, h]));
    }
    rules.push((7, vec![hbar, qa, h, d], vec![]));
    for a in sigma.clone() {
        for b in sigma.clone() {
            rules.push((8, vec![s(a), s(b), d], vec![s(a), d, s(b)]));
        }
    }
    for a in sigma {
        rules.push((9, vec![s(a), h, d], vec![s(a), d, h]));
    }
    let schema = rules.iter().map(|r| r.0).collect();
    let system = StringRewritingSystem::new(gamma, rules.into_iter().map(|(_, lhs, rhs)| Rule { lhs, rhs }).collect())?;
    Ok(RmSystem { machine: m.clone(), system, schema })
}

#[derive(Clone, Copy)]
struct Encoding {
    nq: usize,
    ns: usize,
}

impl Encoding {
    fn state(self, i: usize) -> Symbol {
        Symbol(i as u32)
    }
    fn letter(self, i: usize) -> Symbol {
        Symbol((self.nq + i) as u32)
    }
    fn marked(self, i: usize) -> Symbol {
        Symbol((self.nq + self.ns + i) as u32)
    }
    fn d(self) -> Symbol {
        Symbol((self.nq + 2 * self.ns) as u32)
    }
    fn h(self) -> Symbol {
        Symbol((self.nq + 2 * self.ns + 1) as u32)
    }
    fn hbar(self) -> Symbol {
        Symbol((self.nq + 2 * self.ns + 2) as u32)
    }
}

impl RmSystem {
    fn enc(&self) -> Encoding {
        Encoding { nq: self.machine.states.len(), ns: self.machine.alphabet.len() }
    }

    pub fn alphabet(&self) -> &Alphabet {
        self.system.alphabet()
    }

    pub fn d(&self) -> Symbol {
        self.enc().d()
    }

    pub fn h(&self) -> Symbol {
        self.enc().h()
    }

    pub fn hbar(&self) -> Symbol {
        self.enc().hbar()
    }

    pub fn order(&self) -> TerminationOrder {
        TerminationOrder::DBlocks(self.d())
    }

    /// `h̄ q₀ w h`.
    pub fn configuration(&self, input: &[usize]) -> Word {
        let e = self.enc();
        let mut w = vec![e.hbar(), e.state(self.machine.initial)];
        w.extend(input.iter().map(|&a| e.letter(a)));
        w.push(e.h());
        w
    }

    /// Least `n ≤ n_max` with `h̄ q₀ w h · dⁿ →⁺ ε`. `None` proves nothing about larger `n`.
    pub fn right_invert_search(&self, input: &[usize], n_max: usize, step_bound: usize) -> Result<Option<usize>, RewriteError> {
        let mut w = self.configuration(input);
        for n in 1..=n_max {
            w.push(self.d());
            w = self.system.normal_form(&w, step_bound)?;
            if w.is_empty() {
                return Ok(Some(n));
            }
        }
        Ok(None)
    }

    /// `L_d` assembled from the three shapes of `ud`: irreducible as it stands; `d` moves left
    /// through `z` and stops after a tape letter; `d` moves left and fires one of rules (1) to (7).
    pub fn d_multiplier(&self, irr: &Dfa) -> Result<SyncRelation, RelationError> {
        let e = self.enc();
        let g = self.alphabet().clone();
        let letters: Vec<Symbol> = (0..e.ns).map(|i| e.letter(i)).collect();
        let mut last = letters.clone();
        last.push(e.h());
        // the suffixes `d` can cross: each letter must follow a tape letter
        let crossable = Dfa::explore(
            g.clone(),
            0u8,
            |&s, a| match s {
                0 if letters.contains(&a) => Some(0),
                0 if a == e.h() => Some(1),
                _ => None,
            },
            |_| true,
        );
        let nonempty = crossable.difference(&Dfa::word(g.clone(), &[]))?;
        let eps = Dfa::word(g.clone(), &[]);
        let both_irr = product_relation(irr, irr)?;

        let mut ld = splice_relation(irr, &[], &[e.d()], &eps)?;
        for &a in &letters {
            ld = ld.union(&splice_relation(irr, &[a], &[a, e.d()], &nonempty)?)?;
        }
        ld = ld.intersect(&both_irr)?;
        for (rule, &k) in self.system.rules().iter().zip(&self.schema) {
            if k > 7 {
                continue;
            }
            let n = rule.lhs.len();
            let a = rule.lhs[n - 2];
            let z = if a == e.h() { &eps } else { &crossable };
            let case = splice_relation(irr, &rule.lhs[..n - 1], &rule.rhs, z)?.intersect(&both_irr)?;
            ld = ld.union(&case)?;
        }
        Ok(ld)
    }

    /// The automatic structure on the irreducible words, with `ε` a representative.
    pub fn tm_structure(&self) -> Result<InterpretedAutomaticStructure, StructureError> {
        let g = self.alphabet().clone();
        let irr = self.system.irr_automaton();
        let eps = Dfa::word(g.clone(), &[]);
        let d = self.d();
        let multipliers = g
            .symbols()
            .map(|a| if a == d { self.d_multiplier(&irr) } else { splice_relation(&irr, &[], &[a], &eps) })
            .collect::<Result<Vec<_>, _>>()?;
        let pre = PreAutomaticStructure::new(g, irr.clone(), diagonal(&irr), multipliers)?;
        let assignment = pre.embedded_assignment()?;
        InterpretedAutomaticStructure::new(pre, assignment, true)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    pub(crate) const ONE_RULE: &str = "states: q0 qa\nalphabet: a\nblank: B\ninitial: q0\naccept: qa\nq0 a qa a R\n";

    #[test]
    fn one_rule_machine_rules() {
        let rm = build_rm(&TuringMachine::parse(ONE_RULE).unwrap()).unwrap();
        let g = rm.alphabet();
        let w = |t: &str| g.parse_word(t).unwrap();
        let has = |l: &str, r: &str| rm.system.rules().iter().filter(|x| x.lhs == w(l) && x.rhs == w(r)).count();
        assert_eq!(has("q0.a.d", "bar:a.qa"), 1);
        assert_eq!(has("bar:h.qa.h.d", ""), 1);
        assert_eq!(has("a.a.d", "a.d.a"), 1);
        // (1), (5), (6), (7), (8), (9)
        assert_eq!(rm.system.rules().len(), 6);
        assert_eq!(rm.system.normal_form(&w("bar:h.q0.a.h.d.d.d"), 100).unwrap(), Vec::<Symbol>::new());
        assert_eq!(rm.right_invert_search(&[0], 10, 1000).unwrap(), Some(3));
    }

    #[test]
    fn no_transition_never_inverts() {
        let m = TuringMachine::parse("states: q0 qa\nalphabet: a\nblank: B\ninitial: q0\naccept: qa\n").unwrap();
        let rm = build_rm(&m).unwrap();
        assert_eq!(rm.right_invert_search(&[0], 10, 1000).unwrap(), None);
    }
}
