//! The nested sum over the roots of x^3 - x^2 - x - 1 is the Tribonacci
//! sequence shifted by one, and the same holds for Fibonacci at m = 2.

use mbonacci::recurrences::{make_family, Family};
use mbonacci::symmetric::{h_sequence, vieta};

fn main() -> mbonacci::Result<()> {
    let e = vieta(3)?;
    println!("e1, e2, e3 = {}, {}, {}", e.get(1), e.get(2), e.get(3));

    let h = h_sequence(3, 15)?;
    let trib = make_family(Family::Tribonacci, 3)?.window(1, 16)?;
    println!("{:>3}  {:>6}  {:>6}", "n", "h_n", "T_n+1");
    for (n, (u, t)) in h.values.iter().zip(&trib).enumerate() {
        println!("{n:>3}  {u:>6}  {t:>6}");
        assert_eq!(u, t);
    }

    let h2 = h_sequence(2, 20)?;
    let fib = make_family(Family::Fibonacci, 2)?.window(1, 21)?;
    assert_eq!(h2.values, fib);
    println!("m = 2: h_n = F_(n+1) for n <= 20");
    Ok(())
}
