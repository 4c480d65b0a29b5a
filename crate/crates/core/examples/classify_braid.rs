//! Classify the solid torus fillings of a few 1-bridge braids.
//!
//! `cargo run --example classify_braid [w b t]`

use std::error::Error;

use onebridge::braids::components;
use onebridge::{fillings_of, Braid};

pub fn classify(braid: &Braid) -> Vec<String> {
    fillings_of(braid)
        .iter()
        .map(|f| {
            let cases: Vec<String> = f.cases().map(|c| c.number().to_string()).collect();
            format!("{} [case {}]", f.slope, cases.join(", "))
        })
        .collect()
}

pub fn run_example() -> Result<(), Box<dyn Error>> {
    let args: Vec<i64> = std::env::args()
        .skip(1)
        .filter_map(|a| a.parse().ok())
        .collect();
    let braids = match args[..] {
        [w, b, t] => vec![Braid::new(w, b, t)?],
        _ => vec![
            Braid::new(7, 2, 4)?,
            Braid::new(8, 3, 6)?,
            Braid::new(6, 2, 3)?,
            Braid::new(6, 1, 3)?,
        ],
    };
    for braid in &braids {
        let n = components(braid);
        let kind = if n == 1 {
            "knot".to_owned()
        } else {
            format!("link, {n} components")
        };
        let slopes = classify(braid);
        if slopes.is_empty() {
            println!("{braid} ({kind}): no solid torus fillings");
        } else {
            println!("{braid} ({kind}): {}", slopes.join("  "));
        }
    }
    Ok(())
}

#[allow(dead_code)]
fn main() -> Result<(), Box<dyn Error>> {
    run_example()
}
