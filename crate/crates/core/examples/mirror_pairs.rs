//! The orientation-reversing mirror sends `K(w, b, t)` to `K(w, w-b-1, w-t-1)`
//! and a `p/q` filling to a `p/(p-q)` filling.

use std::error::Error;

use onebridge::census::verify_mirror_pairs;
use onebridge::classify::filling_slopes;
use onebridge::{mirror, Braid, MirrorImage};

fn show(braid: &Braid) -> String {
    let slopes: Vec<String> = filling_slopes(braid)
        .iter()
        .map(|s| s.to_string())
        .collect();
    format!("{braid} {{{}}}", slopes.join(", "))
}

pub fn run_example() -> Result<(), Box<dyn Error>> {
    for (w, b, t) in [(5, 2, 1), (4, 2, 1), (7, 2, 4)] {
        let braid = Braid::new(w, b, t)?;
        if let MirrorImage::InRange { braid: image } = mirror(&braid) {
            println!("{}  <->  {}", show(&braid), show(&image));
        }
    }
    let report = verify_mirror_pairs(20)?;
    println!(
        "w ≤ 20: {} mirror pairs checked, {} mismatches",
        report.pairs_checked,
        report.mismatches.len()
    );
    Ok(())
}

#[allow(dead_code)]
fn main() -> Result<(), Box<dyn Error>> {
    run_example()
}
