use crate::automata::Symbol;
use crate::decide::{Decider, DecisionError};

use super::{brute_properties, CayleyTable};

/// Every verdict of the decision procedures on the table's structure that disagrees with
/// the brute-force answer, as readable lines.
pub fn compare_with_brute(t: &CayleyTable) -> Result<Vec<String>, DecisionError> {
    let p = brute_properties(t);
    let d = Decider::new(&t.to_structure());
    let element = |w: &[Symbol]| t.eval(w).expect("non-empty representative");
    let mut out = Vec::new();
    let mut check = |what: &str, got: String, want: String| {
        if got != want {
            out.push(format!("{what}: decided {got}, table says {want}"));
        }
    };
    let mut lz: Vec<usize> = d.left_zeros().shortlex().map(|w| element(&w)).collect();
    lz.sort_unstable();
    check("left zeros", format!("{lz:?}"), format!("{:?}", p.left_zeros));
    check("zero", format!("{:?}", d.zero()?.map(|w| element(&w))), format!("{:?}", p.zero));
    check("identity", format!("{:?}", d.identity()?.map(|w| element(&w))), format!("{:?}", p.identity));
    if p.identity.is_some() {
        for a in 0..t.len() {
            let got = d.is_unit(&[Symbol(a as u32)])?;
            check(&format!("unit {}", t.names()[a]), got.to_string(), p.units.contains(&a).to_string());
        }
    }
    check("right cancellative", d.is_right_cancellative().to_string(), p.right_cancellative.to_string());
    check("completely simple", d.is_completely_simple()?.is_yes().to_string(), p.completely_simple.to_string());
    check(
        "completely zero-simple",
        d.is_completely_zero_simple()?.is_yes().to_string(),
        p.completely_zero_simple.to_string(),
    );
    Ok(out)
}
