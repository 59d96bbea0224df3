//! Elementary, complete homogeneous and power-sum values of the roots of
//! `x^m - x^{m-1} - ... - 1`, computed exactly from the coefficients.

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::recurrences::{make_family, Family};
use crate::rootfind::char_poly;

/// `e[k-1] = e_k(alpha_1, ..., alpha_m)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct VietaVector {
    pub m: usize,
    pub e: Vec<BigInt>,
}

impl VietaVector {
    /// `e_k`, with `e_0 = 1` and `e_k = 0` past the number of roots.
    pub fn get(&self, k: usize) -> BigInt {
        match k {
            0 => BigInt::one(),
            k if k <= self.m => self.e[k - 1].clone(),
            _ => BigInt::zero(),
        }
    }
}

/// `values[n] = h_n` of the roots, for `n = 0..=N`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct HSequence {
    pub m: usize,
    pub values: Vec<BigInt>,
}

/// `values[n] = p_n` of the roots; `p_0 = m`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PSequence {
    pub m: usize,
    pub values: Vec<BigInt>,
}

fn sign(k: usize) -> BigInt {
    if k.is_multiple_of(2) {
        BigInt::one()
    } else {
        -BigInt::one()
    }
}

/// Vieta's formulas: for monic `x^m + c_1 x^{m-1} + ... + c_m`,
/// `e_k = (-1)^k c_k`.
pub fn vieta(m: usize) -> Result<VietaVector> {
    if m < 2 {
        return Err(Error::InvalidOrder(m));
    }
    let coeffs = char_poly(m)?;
    let e = (1..=m).map(|k| sign(k) * &coeffs[k]).collect();
    Ok(VietaVector { m, e })
}

/// `h_n = sum_{k=1}^{min(n,m)} (-1)^{k+1} e_k h_{n-k}` from `h_0 = 1`.
pub fn h_sequence(m: usize, n_max: usize) -> Result<HSequence> {
    let v = vieta(m)?;
    // alternating-sign e_k, computed once
    let weights: Vec<BigInt> = (1..=m).map(|k| -sign(k) * v.get(k)).collect();
    let mut values: Vec<BigInt> = Vec::with_capacity(n_max + 1);
    values.push(BigInt::one());
    for n in 1..=n_max {
        let mut acc = BigInt::zero();
        for k in 1..=n.min(m) {
            let w = &weights[k - 1];
            if w.is_one() {
                acc += &values[n - k];
            } else if (-w).is_one() {
                acc -= &values[n - k];
            } else {
                acc += w * &values[n - k];
            }
        }
        values.push(acc);
    }
    Ok(HSequence { m, values })
}

/// Power sums via Newton's identities:
/// `p_n = sum_{k=1}^{min(n-1,m)} (-1)^{k-1} e_k p_{n-k} + (-1)^{n-1} n e_n`,
/// the last term present only while `n <= m`.
pub fn power_sums(m: usize, n_max: usize) -> Result<PSequence> {
    let v = vieta(m)?;
    let mut values: Vec<BigInt> = Vec::with_capacity(n_max + 1);
    values.push(BigInt::from(m));
    for n in 1..=n_max {
        let mut acc = BigInt::zero();
        for k in 1..=(n - 1).min(m) {
            acc += sign(k - 1) * v.get(k) * &values[n - k];
        }
        if n <= m {
            acc += sign(n - 1) * BigInt::from(n) * v.get(n);
        }
        values.push(acc);
    }
    Ok(PSequence { m, values })
}

/// Entry `n` is true iff `h_n` equals the zero-padded m-bonacci term
/// `W_{n+1}`.
pub fn identity_check(m: usize, n_max: usize) -> Result<Vec<bool>> {
    let h = h_sequence(m, n_max)?;
    let w = make_family(Family::PaddedW, m)?.window(1, n_max as u64 + 1)?;
    Ok(h.values.iter().zip(&w).map(|(a, b)| a == b).collect())
}

/// Checks `n h_n = sum_{k=1}^n p_k h_{n-k}` for every `n <= n_max`, asserting
/// that the right-hand side is divisible by `n` before comparing.
pub fn newton_h_p_check(m: usize, n_max: usize) -> Result<Vec<bool>> {
    let h = h_sequence(m, n_max)?;
    let p = power_sums(m, n_max)?;
    let mut out = vec![true];
    for n in 1..=n_max {
        let rhs: BigInt = (1..=n).map(|k| &p.values[k] * &h.values[n - k]).sum();
        let nn = BigInt::from(n);
        let divisible = (&rhs % &nn).is_zero();
        out.push(divisible && rhs / nn == h.values[n]);
    }
    Ok(out)
}

/// Sign pattern check used in tests and reports: `e_k = (-1)^{k+1}`.
pub fn vieta_alternates(v: &VietaVector) -> bool {
    v.e.iter()
        .enumerate()
        .all(|(i, e)| e.abs().is_one() && (e.is_positive() == (i % 2 == 0)))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::recurrences::{companion_power, CompanionMatrix};

    fn ints(xs: &[i64]) -> Vec<BigInt> {
        xs.iter().map(|&x| BigInt::from(x)).collect()
    }

    #[test]
    fn vieta_values() {
        assert_eq!(vieta(3).unwrap().e, ints(&[1, -1, 1]));
        assert_eq!(vieta(2).unwrap().e, ints(&[1, -1]));
        assert_eq!(vieta(5).unwrap().e, ints(&[1, -1, 1, -1, 1]));
        assert_eq!(vieta(1), Err(Error::InvalidOrder(1)));
        for m in 2..=16 {
            assert!(vieta_alternates(&vieta(m).unwrap()), "m={m}");
        }
    }

    #[test]
    fn h_values() {
        assert_eq!(h_sequence(3, 3).unwrap().values, ints(&[1, 1, 2, 4]));
        assert_eq!(h_sequence(2, 3).unwrap().values, ints(&[1, 1, 2, 3]));
        assert_eq!(h_sequence(4, 5).unwrap().values, ints(&[1, 1, 2, 4, 8, 15]));
        assert_eq!(h_sequence(3, 0).unwrap().values, ints(&[1]));
    }

    #[test]
    fn p_values() {
        assert_eq!(power_sums(3, 1).unwrap().values, ints(&[3, 1]));
        let p = power_sums(3, 2).unwrap();
        assert_eq!(p.values[2], BigInt::from(3));
        assert_eq!(&p.values[2] + vieta(3).unwrap().get(2), BigInt::from(2));
    }

    #[test]
    fn identity_small_orders() {
        assert!(identity_check(3, 200).unwrap().into_iter().all(|b| b));
        assert!(identity_check(2, 200).unwrap().into_iter().all(|b| b));
        assert!(identity_check(6, 100).unwrap().into_iter().all(|b| b));
    }

    #[test]
    fn power_sums_match_companion_traces() {
        for m in 2..=8 {
            let p = power_sums(m, 50).unwrap();
            let c = CompanionMatrix::all_ones(m);
            for n in 0..=50u64 {
                assert_eq!(p.values[n as usize], companion_power(&c, n).trace(), "m={m} n={n}");
            }
        }
    }

    #[test]
    fn second_newton_family() {
        for m in 2..=8 {
            assert!(newton_h_p_check(m, 50).unwrap().into_iter().all(|b| b), "m={m}");
        }
    }

    #[test]
    fn h_recurrence_invariant() {
        for m in 2..=7 {
            let h = h_sequence(m, 60).unwrap().values;
            assert_eq!(h[0], BigInt::one());
            for n in 1..=60 {
                let s: BigInt = (1..=n.min(m)).map(|k| &h[n - k]).sum();
                assert_eq!(h[n], s);
            }
        }
    }
}
