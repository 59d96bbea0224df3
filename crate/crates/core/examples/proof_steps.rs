//! The algebraic steps of the induction, checked as exact identities.

use mbonacci::quotient::{layer_defect, layer_sum, verify_layer_identity, RingKind};
use mbonacci::sympoly::verify_u_step;

fn main() -> mbonacci::Result<()> {
    for n in 0..=12 {
        assert!(verify_u_step(n)?);
    }
    println!("stepping identity holds for n <= 12");

    for m in [2, 3, 6] {
        let ok = (0..=30).all(|n| verify_layer_identity(n, m).unwrap());
        println!("m={m}: layer recurrence holds for n <= 30: {ok}");
    }

    for n in 1..=5 {
        println!("S_{n} (m=3) = {}", layer_sum(n, 3)?);
    }

    // with b merely another root, the recurrence leaves a nonzero remainder
    let d = layer_defect(RingKind::TensorSquare, 0, 3)?;
    println!("defect in the tensor square at n=0: {d}");
    Ok(())
}
