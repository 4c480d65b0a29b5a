//! Count knots, knots admitting a solid torus filling, and fillings, for
//! every triple up to a winding bound.
//!
//! `cargo run --release --example census_summary [max_w]`

use std::error::Error;

use onebridge::run_census;

pub fn run_example() -> Result<(), Box<dyn Error>> {
    let bounds: Vec<i64> = match std::env::args().nth(1).and_then(|a| a.parse().ok()) {
        Some(max_w) => vec![max_w],
        None => vec![10, 20, 40],
    };
    println!("max_w  triples  knots  admitting  fillings  canonical");
    for max_w in bounds {
        let s = run_census(max_w)?.summary;
        println!(
            "{:>5}  {:>7}  {:>5}  {:>9}  {:>8}  {:>9}",
            max_w,
            s.triple_count,
            s.knot_count,
            s.admitting_count,
            s.filling_count,
            s.canonical_knot_count
        );
    }
    Ok(())
}

#[allow(dead_code)]
fn main() -> Result<(), Box<dyn Error>> {
    run_example()
}
