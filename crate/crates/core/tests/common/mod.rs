#![allow(dead_code)]

use mbonacci::expr::{Ast, Func};
use num_bigint::BigUint;
use proptest::prelude::*;

pub fn func() -> impl Strategy<Value = Func> {
    proptest::sample::select(Func::ALL.to_vec())
}

pub fn leaf() -> impl Strategy<Value = Ast> {
    prop_oneof![
        (0u64..1000).prop_map(Ast::int),
        any::<u128>().prop_map(|v| Ast::Int(BigUint::from(v))),
        (func(), 0u64..40).prop_map(|(f, k)| Ast::call(f, k)),
    ]
}

/// Arbitrary expression trees, including shapes the printer must
/// parenthesize (nested powers, negated products, right-nested sums).
pub fn ast() -> impl Strategy<Value = Ast> {
    leaf().prop_recursive(5, 48, 2, |inner| {
        prop_oneof![
            inner.clone().prop_map(|a| Ast::Neg(Box::new(a))),
            (inner.clone(), inner.clone()).prop_map(|(a, b)| Ast::Add(Box::new(a), Box::new(b))),
            (inner.clone(), inner.clone()).prop_map(|(a, b)| Ast::Sub(Box::new(a), Box::new(b))),
            (inner.clone(), inner.clone()).prop_map(|(a, b)| Ast::Mul(Box::new(a), Box::new(b))),
            (inner, 0u32..6).prop_map(|(a, k)| Ast::Pow(Box::new(a), k)),
        ]
    })
}

/// Nodes in the tree.
pub fn size(a: &Ast) -> usize {
    match a {
        Ast::Int(_) | Ast::Call { .. } => 1,
        Ast::Neg(x) | Ast::Pow(x, _) => 1 + size(x),
        Ast::Add(x, y) | Ast::Sub(x, y) | Ast::Mul(x, y) => 1 + size(x) + size(y),
    }
}
