//! Durand-Kerner roots and the nested sum computed directly from them.

use mbonacci::rootfind::{find_roots, numeric_nested_sum, vieta_residuals};
use mbonacci::symmetric::h_sequence;
use mbonacci::sympoly::DEFAULT_ENUMERATION_CAP;

fn main() -> mbonacci::Result<()> {
    for m in 2..=6 {
        let rs = find_roots(m, 1e-13, 500)?;
        let worst_vieta = vieta_residuals(&rs).into_iter().fold(0.0, f64::max);
        println!(
            "m={m}: dominant {:.10}, {} iterations, max residual {:.1e}, vieta {:.1e}",
            rs.dominant_root().re,
            rs.iterations,
            rs.max_residual(),
            worst_vieta
        );

        let exact = h_sequence(m, 20)?;
        for n in [5u32, 10, 20] {
            let z = numeric_nested_sum(&rs, n, DEFAULT_ENUMERATION_CAP)?;
            let x: f64 = exact.values[n as usize].to_string().parse().unwrap();
            println!(
                "   n={n:>2}: {:>14.6} vs {x:>10}  (rel err {:.1e})",
                z.re,
                (z.re - x).abs() / x.max(1.0)
            );
        }
    }
    Ok(())
}
