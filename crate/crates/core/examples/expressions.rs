//! The small expression language over e(k), p(k), h(k) and the sequences.

use mbonacci::expr::{eval_str, parse_str};

fn main() {
    let cases = [
        (3, "p(2) + e(2)"),
        (3, "e(1)*e(2)*e(3)"),
        (3, "h(10) - T(11)"),
        (2, "h(9) - F(10)"),
        (4, "h(2) - V(3)"),
        (5, "e(7)"),
        (3, "-(p(3) - 3*e(3))^2"),
        (3, "p(2) +* 1"),
        (2, "T(4)"),
    ];
    for (m, src) in cases {
        match eval_str(src, m) {
            Ok(v) => println!("m={m}  {:<22} = {v}   [{}]", src, parse_str(src).unwrap()),
            Err(e) => println!("m={m}  {src:<22} : {e}"),
        }
    }
}
