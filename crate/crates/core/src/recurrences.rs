//! Unit-coefficient linear recurrences over big integers.
//!
//! Every family in scope satisfies `a_n = a_{n-1} + ... + a_{n-m}` and differs
//! only in its initial terms:
//!
//! | family        | order | initial terms                         |
//! |---------------|-------|---------------------------------------|
//! | `fibonacci`   | 2     | `0, 1`                                |
//! | `tribonacci`  | 3     | `0, 1, 1`                             |
//! | `conjectureV` | m     | `0, 1, 1, ..., 1`                     |
//! | `paddedW`     | m     | `W_0 = 0, W_1 = 1, W_j = sum of the m previous terms, negatives read as 0` |
//!
//! `paddedW` is the zero-padded m-bonacci sequence. It agrees with Fibonacci
//! at `m = 2` and Tribonacci at `m = 3` and is the family that actually
//! matches the nested sums for every order. `conjectureV` is kept separate so
//! reports never mix the two up.

use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_traits::{One, Zero};

use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Family {
    Tribonacci,
    Fibonacci,
    ConjectureV,
    PaddedW,
    Custom,
}

impl Family {
    pub fn as_str(self) -> &'static str {
        match self {
            Family::Tribonacci => "tribonacci",
            Family::Fibonacci => "fibonacci",
            Family::ConjectureV => "conjectureV",
            Family::PaddedW => "paddedW",
            Family::Custom => "custom",
        }
    }
}

impl fmt::Display for Family {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for Family {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "tribonacci" => Ok(Family::Tribonacci),
            "fibonacci" => Ok(Family::Fibonacci),
            "conjectureV" | "conjecture-v" | "V" => Ok(Family::ConjectureV),
            "paddedW" | "padded-w" | "W" => Ok(Family::PaddedW),
            "custom" => Ok(Family::Custom),
            other => Err(Error::InvalidSpec(format!("unknown family {other:?}"))),
        }
    }
}

/// An order-`m` linear recurrence `a_n = sum_k coefficients[k-1] * a_{n-k}`
/// with explicit terms for indices `0..m`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RecurrenceSpec {
    order: usize,
    coefficients: Vec<BigInt>,
    initial_terms: Vec<BigInt>,
    family: Family,
}

impl RecurrenceSpec {
    pub fn new(coefficients: Vec<BigInt>, initial_terms: Vec<BigInt>, family: Family) -> Result<Self> {
        let order = coefficients.len();
        if order < 2 {
            return Err(Error::InvalidSpec(format!("order must be at least 2, got {order}")));
        }
        if initial_terms.len() != order {
            return Err(Error::InvalidSpec(format!(
                "{} initial terms given for order {order}",
                initial_terms.len()
            )));
        }
        Ok(Self {
            order,
            coefficients,
            initial_terms,
            family,
        })
    }

    pub fn order(&self) -> usize {
        self.order
    }

    pub fn coefficients(&self) -> &[BigInt] {
        &self.coefficients
    }

    pub fn initial_terms(&self) -> &[BigInt] {
        &self.initial_terms
    }

    pub fn family(&self) -> Family {
        self.family
    }

    /// The `n`-th term by forward iteration over a rolling window of `m` values.
    pub fn term(&self, n: u64) -> BigInt {
        let m = self.order;
        if n < m as u64 {
            return self.initial_terms[n as usize].clone();
        }
        // ring buffer: slot (i mod m) holds a_i
        let mut ring = self.initial_terms.clone();
        let mut next = m as u64;
        loop {
            let mut acc = BigInt::zero();
            for (k, c) in self.coefficients.iter().enumerate() {
                let idx = ((next - 1 - k as u64) % m as u64) as usize;
                if c.is_one() {
                    acc += &ring[idx];
                } else if !c.is_zero() {
                    acc += c * &ring[idx];
                }
            }
            if next == n {
                return acc;
            }
            ring[(next % m as u64) as usize] = acc;
            next += 1;
        }
    }

    /// The `n`-th term via `O(log n)` products of the companion matrix.
    pub fn term_fast(&self, n: u64) -> BigInt {
        let m = self.order;
        if n < m as u64 {
            return self.initial_terms[n as usize].clone();
        }
        // state s_j = (a_{j+m-1}, ..., a_j); s_{j+1} = C s_j, so a_n is the
        // last entry of C^n s_0.
        let power = companion_power(&CompanionMatrix::from_spec(self), n);
        let last = &power.entries[m - 1];
        let mut acc = BigInt::zero();
        for (col, entry) in last.iter().enumerate() {
            if !entry.is_zero() {
                acc += entry * &self.initial_terms[m - 1 - col];
            }
        }
        acc
    }

    /// Terms `lo..=hi` in order.
    pub fn window(&self, lo: u64, hi: u64) -> Result<Vec<BigInt>> {
        if lo > hi {
            return Err(Error::Range { lo, hi });
        }
        let m = self.order;
        let mut out = Vec::with_capacity((hi - lo + 1) as usize);
        let mut last: Vec<BigInt> = Vec::with_capacity(m);
        let start = if lo >= m as u64 {
            // seed the window with a_{lo-m}..a_{lo-1}
            let seed = lo - m as u64;
            for i in 0..m as u64 {
                last.push(self.term_fast(seed + i));
            }
            lo
        } else {
            0
        };
        for n in start..=hi {
            let value = if n < m as u64 {
                self.initial_terms[n as usize].clone()
            } else {
                let mut acc = BigInt::zero();
                for (k, c) in self.coefficients.iter().enumerate() {
                    acc += c * &last[last.len() - 1 - k];
                }
                acc
            };
            if last.len() == m {
                last.remove(0);
            }
            last.push(value.clone());
            if n >= lo {
                out.push(value);
            }
        }
        Ok(out)
    }
}

/// Builds the canonical spec for a family at order `m`.
pub fn make_family(family: Family, m: usize) -> Result<RecurrenceSpec> {
    if m < 2 {
        return Err(Error::InvalidSpec(format!("order must be at least 2, got {m}")));
    }
    let ones = vec![BigInt::one(); m];
    let initial: Vec<BigInt> = match family {
        Family::Tribonacci if m == 3 => vec![0, 1, 1].into_iter().map(BigInt::from).collect(),
        Family::Fibonacci if m == 2 => vec![BigInt::zero(), BigInt::one()],
        Family::Tribonacci | Family::Fibonacci => {
            return Err(Error::InvalidSpec(format!(
                "{family} is only defined at one order, not m = {m}"
            )));
        }
        Family::ConjectureV => (0..m).map(|i| BigInt::from(u8::from(i > 0))).collect(),
        Family::PaddedW => padded_head(m),
        Family::Custom => {
            return Err(Error::InvalidSpec(
                "custom specs are built with RecurrenceSpec::new".into(),
            ));
        }
    };
    RecurrenceSpec::new(ones, initial, family)
}

/// W_0..W_{m-1} of the zero-padded m-bonacci sequence.
fn padded_head(m: usize) -> Vec<BigInt> {
    let mut w: Vec<BigInt> = Vec::with_capacity(m);
    for j in 0..m {
        let value = match j {
            0 => BigInt::zero(),
            1 => BigInt::one(),
            _ => w[j.saturating_sub(m)..j].iter().sum(),
        };
        w.push(value);
    }
    w
}

/// Square matrix whose top row holds the recurrence coefficients and whose
/// subdiagonal is all ones.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CompanionMatrix {
    pub dimension: usize,
    pub entries: Vec<Vec<BigInt>>,
}

impl CompanionMatrix {
    pub fn from_coefficients(coefficients: &[BigInt]) -> Self {
        let m = coefficients.len();
        let mut entries = vec![vec![BigInt::zero(); m]; m];
        entries[0].clone_from_slice(coefficients);
        for i in 1..m {
            entries[i][i - 1] = BigInt::one();
        }
        Self { dimension: m, entries }
    }

    pub fn from_spec(spec: &RecurrenceSpec) -> Self {
        Self::from_coefficients(&spec.coefficients)
    }

    /// Companion matrix of `x^m - x^{m-1} - ... - 1`.
    pub fn all_ones(m: usize) -> Self {
        Self::from_coefficients(&vec![BigInt::one(); m])
    }

    pub fn identity(m: usize) -> Self {
        let mut entries = vec![vec![BigInt::zero(); m]; m];
        for (i, row) in entries.iter_mut().enumerate() {
            row[i] = BigInt::one();
        }
        Self { dimension: m, entries }
    }

    pub fn mul(&self, rhs: &Self) -> Self {
        let m = self.dimension;
        assert_eq!(m, rhs.dimension, "companion matrix dimension mismatch");
        let mut entries = vec![vec![BigInt::zero(); m]; m];
        for (i, row) in entries.iter_mut().enumerate() {
            for k in 0..m {
                let a = &self.entries[i][k];
                if a.is_zero() {
                    continue;
                }
                for (j, out) in row.iter_mut().enumerate() {
                    let b = &rhs.entries[k][j];
                    if !b.is_zero() {
                        *out += a * b;
                    }
                }
            }
        }
        Self { dimension: m, entries }
    }

    pub fn trace(&self) -> BigInt {
        (0..self.dimension).map(|i| &self.entries[i][i]).sum()
    }
}

/// `mat^n` by square-and-multiply.
pub fn companion_power(mat: &CompanionMatrix, n: u64) -> CompanionMatrix {
    let mut result = CompanionMatrix::identity(mat.dimension);
    if n == 0 {
        return result;
    }
    let mut base = mat.clone();
    let mut exp = n;
    loop {
        if exp & 1 == 1 {
            result = result.mul(&base);
        }
        exp >>= 1;
        if exp == 0 {
            break;
        }
        base = base.mul(&base);
    }
    result
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ints(xs: &[i64]) -> Vec<BigInt> {
        xs.iter().map(|&x| BigInt::from(x)).collect()
    }

    // plain u128 iteration, independent of the rolling-window code
    fn oracle(initial: &[u128], n: usize) -> u128 {
        let m = initial.len();
        let mut seq = initial.to_vec();
        while seq.len() <= n {
            let s = seq[seq.len() - m..].iter().sum();
            seq.push(s);
        }
        seq[n]
    }

    #[test]
    fn family_heads() {
        assert_eq!(
            make_family(Family::Tribonacci, 3).unwrap().initial_terms(),
            ints(&[0, 1, 1])
        );
        assert_eq!(
            make_family(Family::ConjectureV, 4).unwrap().initial_terms(),
            ints(&[0, 1, 1, 1])
        );
        assert_eq!(
            make_family(Family::PaddedW, 4).unwrap().initial_terms(),
            ints(&[0, 1, 1, 2])
        );
        assert_eq!(
            make_family(Family::PaddedW, 6).unwrap().initial_terms(),
            ints(&[0, 1, 1, 2, 4, 8])
        );
    }

    #[test]
    fn family_order_mismatch() {
        assert!(matches!(make_family(Family::Tribonacci, 4), Err(Error::InvalidSpec(_))));
        assert!(matches!(make_family(Family::Fibonacci, 3), Err(Error::InvalidSpec(_))));
        assert!(matches!(
            make_family(Family::ConjectureV, 1),
            Err(Error::InvalidSpec(_))
        ));
        assert!(RecurrenceSpec::new(ints(&[1, 1]), ints(&[0]), Family::Custom).is_err());
        assert!(RecurrenceSpec::new(ints(&[1]), ints(&[0]), Family::Custom).is_err());
    }

    #[test]
    fn tribonacci_terms() {
        let t = make_family(Family::Tribonacci, 3).unwrap();
        assert_eq!(oracle(&[0, 1, 1], 10), 149);
        assert_eq!(t.term(0), BigInt::from(0));
        assert_eq!(t.term(2), BigInt::from(1));
        assert_eq!(t.term(10), BigInt::from(149));
        assert_eq!(t.term_fast(10), BigInt::from(149));
    }

    #[test]
    fn fibonacci_fast() {
        let f = make_family(Family::Fibonacci, 2).unwrap();
        assert_eq!(f.term_fast(4), BigInt::from(3));
        assert_eq!(f.term_fast(0), BigInt::from(0));
    }

    #[test]
    fn windows() {
        let t = make_family(Family::Tribonacci, 3).unwrap();
        assert_eq!(t.window(0, 3).unwrap(), ints(&[0, 1, 1, 2]));
        let v = make_family(Family::ConjectureV, 4).unwrap();
        let expect: Vec<i64> = (0..=6).map(|n| oracle(&[0, 1, 1, 1], n) as i64).collect();
        assert_eq!(expect, vec![0, 1, 1, 1, 3, 6, 11]);
        assert_eq!(v.window(0, 6).unwrap(), ints(&expect));
        assert_eq!(t.window(5, 5).unwrap(), vec![t.term(5)]);
        assert_eq!(
            t.window(40, 45).unwrap(),
            (40..=45).map(|n| t.term(n)).collect::<Vec<_>>()
        );
        assert_eq!(t.window(2, 1), Err(Error::Range { lo: 2, hi: 1 }));
    }

    #[test]
    fn companion_traces() {
        let c3 = CompanionMatrix::all_ones(3);
        assert_eq!(companion_power(&c3, 0), CompanionMatrix::identity(3));
        assert_eq!(companion_power(&c3, 1).trace(), BigInt::from(1));
        assert_eq!(companion_power(&c3, 2).trace(), BigInt::from(3));
    }

    #[test]
    fn fast_matches_iterative_for_all_families() {
        let specs = [
            make_family(Family::Fibonacci, 2).unwrap(),
            make_family(Family::Tribonacci, 3).unwrap(),
            make_family(Family::ConjectureV, 5).unwrap(),
            make_family(Family::PaddedW, 7).unwrap(),
        ];
        for spec in &specs {
            let all = spec.window(0, 5000).unwrap();
            for n in (0..=5000u64).step_by(97).chain([4999, 5000]) {
                assert_eq!(spec.term_fast(n), all[n as usize], "{} n={n}", spec.family());
            }
            assert_eq!(spec.term(5000), all[5000]);
        }
    }

    #[test]
    fn custom_coefficients() {
        // a_n = 2 a_{n-1} + 3 a_{n-2}: 1, 1, 5, 13, 41, 121
        let spec = RecurrenceSpec::new(ints(&[2, 3]), ints(&[1, 1]), Family::Custom).unwrap();
        assert_eq!(spec.window(0, 5).unwrap(), ints(&[1, 1, 5, 13, 41, 121]));
        assert_eq!(spec.term_fast(5), BigInt::from(121));
        assert_eq!(spec.term(5), BigInt::from(121));
    }

    #[test]
    fn tribonacci_recurrence_holds() {
        let t = make_family(Family::Tribonacci, 3).unwrap();
        let w = t.window(0, 1003).unwrap();
        for n in 0..=1000 {
            assert_eq!(w[n + 3], &w[n + 2] + &w[n + 1] + &w[n]);
        }
    }

    #[test]
    fn padded_matches_small_families() {
        let w2 = make_family(Family::PaddedW, 2).unwrap().window(0, 200).unwrap();
        let w3 = make_family(Family::PaddedW, 3).unwrap().window(0, 200).unwrap();
        assert_eq!(w2, make_family(Family::Fibonacci, 2).unwrap().window(0, 200).unwrap());
        assert_eq!(w3, make_family(Family::Tribonacci, 3).unwrap().window(0, 200).unwrap());
    }

    #[test]
    fn padded_head_is_powers_of_two() {
        for m in 2..=12usize {
            let w = make_family(Family::PaddedW, m).unwrap();
            for k in 2..=m as u64 {
                assert_eq!(w.term(k), BigInt::one() << (k - 2) as usize, "m={m} k={k}");
            }
        }
    }

    #[test]
    fn family_parse_roundtrip() {
        for f in [
            Family::Tribonacci,
            Family::Fibonacci,
            Family::ConjectureV,
            Family::PaddedW,
            Family::Custom,
        ] {
            assert_eq!(f.as_str().parse::<Family>().unwrap(), f);
        }
        assert!("lucas".parse::<Family>().is_err());
    }
}
