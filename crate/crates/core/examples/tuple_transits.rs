//! Convert allowable 5-tuples into braid parameters, then re-derive `w` and
//! `t` by drawing the arc as a spiral and ranking its meridian crossings.

use std::error::Error;

use onebridge::oracle::{measure_w_t, simulate_transits};
use onebridge::{tuple_to_braid, AllowableTuple, TupleImage};

pub fn run_example() -> Result<(), Box<dyn Error>> {
    let tuples = [
        (3, 2, 2, 2, -1),
        (5, 3, 1, 1, 1),
        (8, 5, 0, 3, 1),
        (2, 1, 1, 1, 1),
    ];
    for (p, q, k, x, eps) in tuples {
        let tuple = AllowableTuple::new(p, q, k, x, eps)?;
        let image = match tuple_to_braid(&tuple) {
            TupleImage::Braid { braid } => braid.to_string(),
            TupleImage::Degenerate { w, b, t, bound } => {
                format!("degenerate ({w}, {b}, {t}), violates {bound}")
            }
        };
        let path = simulate_transits(&tuple)?;
        let (w, t) = measure_w_t(&path)?;
        let crossings: Vec<String> = path.positions.iter().map(|r| r.to_string()).collect();
        println!("{tuple} -> {image}");
        println!("  crossings [{}]", crossings.join(", "));
        println!("  measured w = {w}, t = {t}");
    }
    Ok(())
}

#[allow(dead_code)]
fn main() -> Result<(), Box<dyn Error>> {
    run_example()
}
