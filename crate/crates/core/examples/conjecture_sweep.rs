//! Checks the general-order statement with the initial conditions
//! V_0 = 0, V_1 = ... = V_{m-1} = 1 and with the zero-padded alternative.

use mbonacci::sympoly::DEFAULT_ENUMERATION_CAP;
use mbonacci::verify::{verify_conjecture, Variant};

fn main() -> mbonacci::Result<()> {
    let stated = verify_conjecture(8, 100, Variant::AsStated, 12, DEFAULT_ENUMERATION_CAP)?;
    match &stated.first_counterexample {
        Some(ce) => println!(
            "as stated: first counterexample at m={}, n={}: nested sum {} but V_(n+1) = {}",
            ce.m,
            ce.n,
            ce.lhs.as_deref().unwrap_or("?"),
            ce.rhs.as_deref().unwrap_or("?")
        ),
        None => println!("as stated: no counterexample"),
    }

    let corrected = verify_conjecture(8, 100, Variant::Corrected, 12, DEFAULT_ENUMERATION_CAP)?;
    println!("{}", corrected.to_text());
    Ok(())
}
