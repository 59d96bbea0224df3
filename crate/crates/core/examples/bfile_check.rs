//! Cross-checks computed terms against an OEIS b-file. With no argument a
//! small in-memory file is used.

use mbonacci::bfile::{check_window, parse_bfile};
use mbonacci::recurrences::{make_family, Family};

const SAMPLE: &str = "# Tribonacci, offset 0\n0 0\n1 1\n2 1\n3 2\n4 4\n5 7\n6 13\n7 24\n8 44\n9 81\n10 149\n";

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let text = match std::env::args().nth(1) {
        Some(path) => std::fs::read_to_string(path)?,
        None => SAMPLE.to_string(),
    };
    let entries = parse_bfile(&text)?;
    let hi = entries.iter().map(|e| e.index).max().unwrap_or(0);
    let terms = make_family(Family::Tribonacci, 3)?.window(0, hi)?;
    let check = check_window(&entries, 0, &terms)?;
    println!(
        "{} terms checked, {} mismatches",
        check.checked.len(),
        check.mismatches.len()
    );
    for mm in &check.mismatches {
        println!(
            "  line {}: index {} expected {} computed {}",
            mm.line, mm.index, mm.expected, mm.computed
        );
    }
    Ok(())
}
