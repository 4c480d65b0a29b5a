//! Cross-check the closed-form classification against brute-force
//! enumeration of allowable tuples, the closed forms of the counting
//! function against direct counting, and the modular `(w, t)` against the
//! transit diagram.

use std::error::Error;

use onebridge::oracle::{check_equivalence, check_phi_closed_forms, check_transits, tuples_by_k};

pub fn run_example() -> Result<(), Box<dyn Error>> {
    let max_w = 25;
    let eq = check_equivalence(max_w)?;
    println!(
        "closed form vs enumeration, w ≤ {max_w}: {} triples, {} mismatches",
        eq.triples_checked,
        eq.mismatches.len()
    );
    let phi = check_phi_closed_forms(100);
    println!(
        "phi closed forms, p ≤ 100: {} pairs, {} mismatches",
        phi.pairs_checked,
        phi.mismatches.len()
    );
    let diagram = check_transits(tuples_by_k(20, 3));
    println!(
        "transit diagram, p ≤ 20, k ≤ 3: {} tuples, {} mismatches",
        diagram.tuples_checked,
        diagram.mismatches.len()
    );
    if eq.passed() && phi.passed() && diagram.passed() {
        Ok(())
    } else {
        Err("oracle disagreement".into())
    }
}

#[allow(dead_code)]
fn main() -> Result<(), Box<dyn Error>> {
    run_example()
}
