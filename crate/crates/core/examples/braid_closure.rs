//! Braid words, strand permutations and knot/link detection.

use std::error::Error;

use onebridge::braids::{braid_word_json, components};
use onebridge::{closure_permutation, is_canonical, mirror, Braid, MirrorImage};

pub fn run_example() -> Result<(), Box<dyn Error>> {
    for (w, b, t) in [(4, 1, 2), (5, 2, 1), (6, 1, 3), (7, 4, 2), (10, 1, 1)] {
        let braid = Braid::new(w, b, t)?;
        let perm = closure_permutation(&braid);
        let mirrored = match mirror(&braid) {
            MirrorImage::InRange { braid } => braid.to_string(),
            MirrorImage::OutOfRange { w, b, t } => format!("out of range ({w}, {b}, {t})"),
        };
        println!("{braid}");
        println!("  word       {}", braid_word_json(&braid));
        println!("  closure    {perm}  ({} components)", components(&braid));
        println!("  canonical  {}", is_canonical(&braid));
        println!("  mirror     {mirrored}");
    }
    Ok(())
}

#[allow(dead_code)]
fn main() -> Result<(), Box<dyn Error>> {
    run_example()
}
