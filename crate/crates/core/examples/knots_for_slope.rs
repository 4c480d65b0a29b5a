//! Every 1-bridge braid up to a winding bound whose exterior becomes a solid
//! torus after filling along a fixed slope. The count keeps growing with the
//! bound for any `p ≥ 3`, and is always zero for `2/1`.

use std::error::Error;

use onebridge::{knots_for_slope, Slope};

pub fn run_example() -> Result<(), Box<dyn Error>> {
    let slope = Slope::new(3, 1)?;
    for (braid, tuple) in knots_for_slope(slope, 12)? {
        println!("{slope}: {braid} from tuple {tuple}");
    }
    for (p, q) in [(2, 1), (3, 2), (5, 2)] {
        let slope = Slope::new(p, q)?;
        let counts: Vec<String> = [25, 50, 100]
            .iter()
            .map(|&max_w| {
                Ok(format!(
                    "w≤{max_w}: {}",
                    knots_for_slope(slope, max_w)?.len()
                ))
            })
            .collect::<Result<_, onebridge::Error>>()?;
        println!("{slope}  {}", counts.join(", "));
    }
    Ok(())
}

#[allow(dead_code)]
fn main() -> Result<(), Box<dyn Error>> {
    run_example()
}
