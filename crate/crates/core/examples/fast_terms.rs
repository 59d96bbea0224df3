//! Far-out terms by companion-matrix powering, checked against plain
//! iteration.

use std::time::Instant;

use mbonacci::recurrences::{make_family, Family};

fn main() -> mbonacci::Result<()> {
    let n: u64 = std::env::args().nth(1).and_then(|s| s.parse().ok()).unwrap_or(100_000);
    let trib = make_family(Family::Tribonacci, 3)?;

    let t = Instant::now();
    let fast = trib.term_fast(n);
    let fast_time = t.elapsed();

    let t = Instant::now();
    let slow = trib.term(n);
    let slow_time = t.elapsed();

    assert_eq!(fast, slow);
    let digits = fast.to_string();
    println!(
        "T_{n} has {} digits: {}...{}",
        digits.len(),
        &digits[..12.min(digits.len())],
        &digits[digits.len().saturating_sub(12)..]
    );
    println!("matrix power {fast_time:?}, iteration {slow_time:?}");

    for m in 4..=6 {
        let w = make_family(Family::PaddedW, m)?;
        println!("W({m})_1000 mod 10^9 = {}", w.term_fast(1000) % 1_000_000_000u64);
    }
    Ok(())
}
