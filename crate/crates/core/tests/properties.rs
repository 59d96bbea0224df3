mod common;

use mbonacci::expr::{evaluate, parse_str};
use mbonacci::sympoly::{composition_count, compositions, is_symmetric, nested_sum_poly, MultivariatePoly};
use num_bigint::BigInt;
use proptest::prelude::*;

fn poly(num_vars: usize) -> impl Strategy<Value = MultivariatePoly> {
    proptest::collection::vec((proptest::collection::vec(0u32..4, num_vars), -20i64..20), 0..8).prop_map(move |terms| {
        MultivariatePoly::from_terms(num_vars, terms.into_iter().map(|(e, c)| (e, BigInt::from(c))))
    })
}

proptest! {
    #[test]
    fn addition_commutes_and_associates(a in poly(3), b in poly(3), c in poly(3)) {
        prop_assert_eq!(&a + &b, &b + &a);
        prop_assert_eq!(&(&a + &b) + &c, &a + &(&b + &c));
        prop_assert!((&a - &a).is_zero());
    }

    #[test]
    fn multiplication_commutes_associates_distributes(a in poly(3), b in poly(3), c in poly(3)) {
        prop_assert_eq!(&a * &b, &b * &a);
        prop_assert_eq!(&(&a * &b) * &c, &a * &(&b * &c));
        prop_assert_eq!(&a * &(&b + &c), &(&a * &b) + &(&a * &c));
    }

    #[test]
    fn compositions_are_complete_and_ordered(n in 0u32..9, m in 1usize..5) {
        let all: Vec<Vec<u32>> = compositions(n, m).unwrap().collect();
        prop_assert_eq!(all.len() as u128, composition_count(n, m));
        prop_assert!(all.iter().all(|c| c.len() == m && c.iter().sum::<u32>() == n));
        prop_assert!(all.windows(2).all(|w| w[0] < w[1]));
    }

    #[test]
    fn nested_sums_are_symmetric(n in 0u32..6, m in 1usize..5) {
        prop_assert!(is_symmetric(&nested_sum_poly(n, m).unwrap()));
    }

    #[test]
    fn printed_expressions_reparse(tree in common::ast()) {
        let printed = tree.to_string();
        let back = parse_str(&printed).unwrap();
        prop_assert_eq!(&back, &tree);
        prop_assert_eq!(back.to_string(), printed);
    }

    #[test]
    fn printing_preserves_value(tree in common::ast()) {
        let back = parse_str(&tree.to_string()).unwrap();
        // m = 3 makes every function defined except F
        let a = evaluate(&tree, 3);
        let b = evaluate(&back, 3);
        prop_assert_eq!(a.is_ok(), b.is_ok());
        if let (Ok(x), Ok(y)) = (a, b) {
            prop_assert_eq!(x, y);
        }
    }

    #[test]
    fn error_offsets_stay_inside_input(s in "[ ()+*^0-9ephTVWFx$-]{1,20}") {
        if let Err(e) = parse_str(&s) {
            let offset = match e {
                mbonacci::Error::Lex { offset, .. } | mbonacci::Error::Parse { offset, .. } => offset,
                other => panic!("unexpected error {other:?}"),
            };
            prop_assert!(offset < s.len(), "offset {} in {:?}", offset, s);
        }
    }
}
