//! Rebuild the table of canonical knots with `w ≤ 10` and compare it with the
//! checked-in golden copy.

use std::error::Error;

use onebridge::census::{diff_against_golden, render_table1, table1};

pub fn run_example() -> Result<(), Box<dyn Error>> {
    let rows = table1(10)?;
    let rendered = render_table1(&rows);
    print!("{rendered}");
    let diffs = diff_against_golden(&rendered);
    if diffs.is_empty() {
        println!("{} rows, identical to golden table", rows.len());
        Ok(())
    } else {
        for d in &diffs {
            println!("{d}");
        }
        Err(format!("{} lines differ", diffs.len()).into())
    }
}

#[allow(dead_code)]
fn main() -> Result<(), Box<dyn Error>> {
    run_example()
}
