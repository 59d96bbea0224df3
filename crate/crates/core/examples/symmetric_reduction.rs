//! Expands the nested sum as a polynomial in the roots, rewrites it in
//! elementary symmetric polynomials and evaluates at the Vieta values.

use mbonacci::symmetric::vieta;
use mbonacci::sympoly::{nested_sum_poly, reduce_to_e_basis};

fn main() -> mbonacci::Result<()> {
    for (n, m) in [(2, 3), (3, 3), (4, 3), (2, 4), (3, 4)] {
        let f = nested_sum_poly(n, m)?;
        let g = reduce_to_e_basis(&f)?;
        let e = vieta(m)?;
        let at_vieta = g.evaluate(&e.e);
        println!("n={n} m={m}: {} terms, h = {g}  ->  {at_vieta}", f.len());
        assert_eq!(g.expand(), f);
    }

    let f = nested_sum_poly(2, 3)?;
    println!("\nh_2(x1, x2, x3) = {f}");
    Ok(())
}
