//! Exact arithmetic modulo `p_m = x^m - x^{m-1} - ... - 1`.
//!
//! Three rings are supported, all free `Z`-modules with a monomial basis:
//!
//! | kind            | ring                                        | basis               |
//! |-----------------|---------------------------------------------|---------------------|
//! | `Single`        | `Z[x]/(p_m(x))`                             | `x^i`, `i < m`      |
//! | `TensorSquare`  | `Z[a,b]/(p_m(a), p_m(b))`                   | `a^i b^j`, `i, j < m` |
//! | `DistinctPair`  | `Z[a,b]/(p_m(a), (p_m(a)-p_m(b))/(a-b))`    | `a^i b^j`, `i < m, j < m-1` |
//!
//! In the tensor square `a` and `b` are two independent roots, possibly
//! equal. `DistinctPair` adds the divided difference, which is monic of
//! degree `m-1` in `b`, so `b` is a root of `p_m(x)/(x-a)`: an ordered pair of
//! distinct roots. `b - a` is a zero divisor in the tensor square, which is
//! why identities derived by cancelling it only hold in `DistinctPair`.
//!
//! Elements are stored fully reduced as a row-major array indexed by
//! `i * b_len + j` for the monomial `a^i b^j` (`b_len = 1` for `Single`).

use std::fmt;
use std::ops::{Add, Sub};

use num_bigint::BigInt;
use num_traits::{One, Zero};

use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum RingKind {
    Single,
    TensorSquare,
    DistinctPair,
}

impl RingKind {
    pub fn arity(self) -> usize {
        match self {
            RingKind::Single => 1,
            RingKind::TensorSquare | RingKind::DistinctPair => 2,
        }
    }

    /// Number of basis exponents in the `a` and `b` slots.
    fn dims(self, m: usize) -> (usize, usize) {
        match self {
            RingKind::Single => (m, 1),
            RingKind::TensorSquare => (m, m),
            RingKind::DistinctPair => (m, m - 1),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct RingElement {
    m: usize,
    kind: RingKind,
    coeffs: Vec<BigInt>,
}

impl RingElement {
    pub fn zero_in(kind: RingKind, m: usize) -> Result<Self> {
        if m < 2 {
            return Err(Error::InvalidOrder(m));
        }
        let (a, b) = kind.dims(m);
        Ok(Self {
            m,
            kind,
            coeffs: vec![BigInt::zero(); a * b],
        })
    }

    pub fn unit_in(kind: RingKind, m: usize) -> Result<Self> {
        let mut u = Self::zero_in(kind, m)?;
        u.coeffs[0] = BigInt::one();
        Ok(u)
    }

    /// Zero of `Z[x]/(p_m)` (arity 1) or of the tensor square (arity 2).
    pub fn zero(m: usize, arity: usize) -> Result<Self> {
        Self::zero_in(kind_for_arity(arity)?, m)
    }

    pub fn unit(m: usize, arity: usize) -> Result<Self> {
        Self::unit_in(kind_for_arity(arity)?, m)
    }

    /// Class of `sum_{i,j} terms[(i, j)] a^i b^j` for any exponents; use
    /// `j = 0` for `Single`.
    pub fn from_monomials(kind: RingKind, m: usize, terms: &[((usize, usize), BigInt)]) -> Result<Self> {
        if m < 2 {
            return Err(Error::InvalidOrder(m));
        }
        if kind == RingKind::Single && terms.iter().any(|((_, j), _)| *j != 0) {
            return Err(Error::InvalidSpec("single-variable ring has no b exponent".into()));
        }
        let rows = terms.iter().map(|((i, _), _)| i + 1).max().unwrap_or(1).max(2 * m - 1);
        let cols = terms.iter().map(|((_, j), _)| j + 1).max().unwrap_or(1);
        let mut buf = Dense::new(rows, cols);
        for ((i, j), c) in terms {
            *buf.at(*i, *j) += c;
        }
        Ok(buf.reduce(kind, m))
    }

    /// Class of a one-variable polynomial given by ascending coefficients.
    pub fn from_poly(m: usize, coeffs: &[BigInt]) -> Result<Self> {
        let terms: Vec<_> = coeffs.iter().enumerate().map(|(i, c)| ((i, 0), c.clone())).collect();
        Self::from_monomials(RingKind::Single, m, &terms)
    }

    pub fn m(&self) -> usize {
        self.m
    }

    pub fn kind(&self) -> RingKind {
        self.kind
    }

    pub fn arity(&self) -> usize {
        self.kind.arity()
    }

    pub fn coeffs(&self) -> &[BigInt] {
        &self.coeffs
    }

    /// Coefficient of the reduced basis monomial `a^i b^j` (`j = 0` for
    /// `Single`).
    pub fn coeff(&self, i: usize, j: usize) -> &BigInt {
        let (a, b) = self.kind.dims(self.m);
        assert!(i < a && j < b, "a^{i} b^{j} is not a reduced basis monomial");
        &self.coeffs[i * b + j]
    }

    fn same_shape(&self, other: &Self) -> Result<()> {
        if self.m != other.m || self.kind != other.kind {
            return Err(Error::ShapeMismatch {
                m1: self.m,
                a1: self.arity(),
                m2: other.m,
                a2: other.arity(),
            });
        }
        Ok(())
    }

    pub fn try_add(&self, other: &Self) -> Result<Self> {
        self.same_shape(other)?;
        Ok(Self {
            coeffs: self.coeffs.iter().zip(&other.coeffs).map(|(a, b)| a + b).collect(),
            ..self.clone()
        })
    }

    pub fn try_sub(&self, other: &Self) -> Result<Self> {
        self.same_shape(other)?;
        Ok(Self {
            coeffs: self.coeffs.iter().zip(&other.coeffs).map(|(a, b)| a - b).collect(),
            ..self.clone()
        })
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(Zero::is_zero)
    }

    /// Trace of multiplication by `self` on `Z[x]/(p_m)` in the basis
    /// `1, x, ..., x^{m-1}`.
    pub fn trace(&self) -> BigInt {
        assert_eq!(
            self.kind,
            RingKind::Single,
            "trace is defined on the single-variable ring"
        );
        let x = generator(self.m, 1, 1).expect("shape already valid");
        let mut x_j = RingElement::unit(self.m, 1).expect("shape already valid");
        let mut acc = BigInt::zero();
        for j in 0..self.m {
            acc += &ring_mul(self, &x_j).expect("same shape").coeffs[j];
            x_j = ring_mul(&x_j, &x).expect("same shape");
        }
        acc
    }
}

/// Highest `a` power first, e.g. `2*a^2*b - a + 1`. The variable is `x` in
/// the single-variable ring.
impl fmt::Display for RingElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let (_, b_len) = self.kind.dims(self.m);
        let power = |name: &str, e: usize| match e {
            0 => None,
            1 => Some(name.to_string()),
            _ => Some(format!("{name}^{e}")),
        };
        let mut first = true;
        for idx in (0..self.coeffs.len()).rev() {
            let c = &self.coeffs[idx];
            if c.is_zero() {
                continue;
            }
            let (i, j) = (idx / b_len, idx % b_len);
            let vars: Vec<String> = if self.kind == RingKind::Single {
                power("x", i).into_iter().collect()
            } else {
                power("a", i).into_iter().chain(power("b", j)).collect()
            };
            let mag = c.magnitude();
            if first {
                if c.sign() == num_bigint::Sign::Minus {
                    f.write_str("-")?;
                }
            } else {
                f.write_str(if c.sign() == num_bigint::Sign::Minus {
                    " - "
                } else {
                    " + "
                })?;
            }
            first = false;
            match (vars.is_empty(), mag.is_one()) {
                (true, _) => write!(f, "{mag}")?,
                (false, true) => f.write_str(&vars.join("*"))?,
                (false, false) => write!(f, "{mag}*{}", vars.join("*"))?,
            }
        }
        if first {
            f.write_str("0")?;
        }
        Ok(())
    }
}

impl Add for &RingElement {
    type Output = RingElement;

    fn add(self, rhs: &RingElement) -> RingElement {
        self.try_add(rhs).expect("ring shape mismatch")
    }
}

impl Sub for &RingElement {
    type Output = RingElement;

    fn sub(self, rhs: &RingElement) -> RingElement {
        self.try_sub(rhs).expect("ring shape mismatch")
    }
}

fn kind_for_arity(arity: usize) -> Result<RingKind> {
    match arity {
        1 => Ok(RingKind::Single),
        2 => Ok(RingKind::TensorSquare),
        _ => Err(Error::InvalidSpec(format!("arity must be 1 or 2, got {arity}"))),
    }
}

/// Unreduced row-major scratch array; rows index the `a` exponent.
struct Dense {
    rows: usize,
    cols: usize,
    data: Vec<BigInt>,
}

impl Dense {
    fn new(rows: usize, cols: usize) -> Self {
        Self {
            rows,
            cols,
            data: vec![BigInt::zero(); rows * cols],
        }
    }

    fn at(&mut self, i: usize, j: usize) -> &mut BigInt {
        &mut self.data[i * self.cols + j]
    }

    /// `a^d -> a^{d-1} + ... + a^{d-m}` for `d >= m` in column `j`.
    fn reduce_a_column(&mut self, j: usize, m: usize) {
        for d in (m..self.rows).rev() {
            let c = std::mem::take(self.at(d, j));
            if c.is_zero() {
                continue;
            }
            for k in 1..=m {
                *self.at(d - k, j) += &c;
            }
        }
    }

    /// `b^d -> b^{d-1} + ... + b^{d-m}` for `d >= m` in every row.
    fn reduce_b_tensor(&mut self, m: usize) {
        for i in 0..self.rows {
            for d in (m..self.cols).rev() {
                let c = std::mem::take(self.at(i, d));
                if c.is_zero() {
                    continue;
                }
                for k in 1..=m {
                    *self.at(i, d - k) += &c;
                }
            }
        }
    }

    /// Eliminates `b^d` for `d >= m-1` with the divided difference
    /// `q(a,b) = sum_{j<m} q_j(a) b^j`, `q_{m-1} = 1`,
    /// `q_j(a) = a^{m-1-j} - (1 + a + ... + a^{m-2-j})`.
    fn reduce_b_distinct(&mut self, m: usize) {
        debug_assert!(self.rows >= 2 * m - 1);
        for d in (m - 1..self.cols).rev() {
            self.reduce_a_column(d, m);
            for i in 0..m {
                let c = std::mem::take(self.at(i, d));
                if c.is_zero() {
                    continue;
                }
                let shift = d + 1 - m;
                for j in 0..m - 1 {
                    *self.at(i + m - 1 - j, shift + j) -= &c;
                    for t in 0..=m - 2 - j {
                        *self.at(i + t, shift + j) += &c;
                    }
                }
            }
        }
    }

    fn reduce(mut self, kind: RingKind, m: usize) -> RingElement {
        if self.rows < 2 * m - 1 {
            let mut wider = Dense::new(2 * m - 1, self.cols);
            for i in 0..self.rows {
                for j in 0..self.cols {
                    *wider.at(i, j) = std::mem::take(self.at(i, j));
                }
            }
            self = wider;
        }
        match kind {
            RingKind::Single => {}
            RingKind::TensorSquare => self.reduce_b_tensor(m),
            RingKind::DistinctPair => self.reduce_b_distinct(m),
        }
        let (a_len, b_len) = kind.dims(m);
        let mut coeffs = vec![BigInt::zero(); a_len * b_len];
        for j in 0..b_len.min(self.cols) {
            self.reduce_a_column(j, m);
            for i in 0..a_len {
                coeffs[i * b_len + j] = std::mem::take(self.at(i, j));
            }
        }
        RingElement { m, kind, coeffs }
    }
}

/// Class of the indeterminate in tensor slot `slot` (1-based) of
/// `Z[x]/(p_m)` (arity 1) or the tensor square (arity 2).
pub fn generator(m: usize, arity: usize, slot: usize) -> Result<RingElement> {
    generator_in(kind_for_arity(arity)?, m, slot)
}

pub fn generator_in(kind: RingKind, m: usize, slot: usize) -> Result<RingElement> {
    let arity = kind.arity();
    if slot == 0 || slot > arity {
        return Err(Error::SlotOutOfRange { slot, arity });
    }
    let exps = if slot == 1 { (1, 0) } else { (0, 1) };
    RingElement::from_monomials(kind, m, &[(exps, BigInt::one())])
}

/// Product with full reduction in every slot.
pub fn ring_mul(u: &RingElement, v: &RingElement) -> Result<RingElement> {
    u.same_shape(v)?;
    let m = u.m;
    let (a_len, b_len) = u.kind.dims(m);
    let mut buf = Dense::new(2 * a_len - 1, 2 * b_len - 1);
    let nonzero = |e: &RingElement| -> Vec<(usize, usize, BigInt)> {
        e.coeffs
            .iter()
            .enumerate()
            .filter(|(_, c)| !c.is_zero())
            .map(|(p, c)| (p / b_len, p % b_len, c.clone()))
            .collect()
    };
    let (us, vs) = (nonzero(u), nonzero(v));
    for (i1, j1, a) in &us {
        for (i2, j2, b) in &vs {
            *buf.at(i1 + i2, j1 + j2) += a * b;
        }
    }
    Ok(buf.reduce(u.kind, m))
}

/// Square-and-multiply power; `ring_pow(u, 0)` is the unit.
pub fn ring_pow(u: &RingElement, n: u64) -> RingElement {
    let mut result = RingElement::unit_in(u.kind, u.m).expect("shape already valid");
    let mut base = u.clone();
    let mut exp = n;
    while exp > 0 {
        if exp & 1 == 1 {
            result = ring_mul(&result, &base).expect("same shape");
        }
        exp >>= 1;
        if exp > 0 {
            base = ring_mul(&base, &base).expect("same shape");
        }
    }
    result
}

/// `S_n = sum_{i=0}^{n-1} a^i b^{n-i}` in the given two-slot ring; every term
/// has `b`-degree at least 1.
pub fn layer_sum_in(kind: RingKind, n: u64, m: usize) -> Result<RingElement> {
    if kind.arity() != 2 {
        return Err(Error::InvalidSpec("layer sums live in a two-slot ring".into()));
    }
    if n == 0 {
        return Err(Error::InvalidSpec("layer sums start at n = 1".into()));
    }
    let a = generator_in(kind, m, 1)?;
    let b = generator_in(kind, m, 2)?;
    let mut b_powers = Vec::with_capacity(n as usize + 1);
    let mut cur = RingElement::unit_in(kind, m)?;
    for _ in 0..=n {
        b_powers.push(cur.clone());
        cur = ring_mul(&cur, &b)?;
    }
    let mut a_pow = RingElement::unit_in(kind, m)?;
    let mut acc = RingElement::zero_in(kind, m)?;
    for i in 0..n {
        acc = &acc + &ring_mul(&a_pow, &b_powers[(n - i) as usize])?;
        a_pow = ring_mul(&a_pow, &a)?;
    }
    Ok(acc)
}

/// `S_n` for an ordered pair of distinct roots.
pub fn layer_sum(n: u64, m: usize) -> Result<RingElement> {
    layer_sum_in(RingKind::DistinctPair, n, m)
}

/// `S_{n+m+1} - (S_{n+1} + ... + S_{n+m})` in the given ring.
pub fn layer_defect(kind: RingKind, n: u64, m: usize) -> Result<RingElement> {
    let mut rhs = RingElement::zero_in(kind, m)?;
    for k in 1..=m as u64 {
        rhs = &rhs + &layer_sum_in(kind, n + k, m)?;
    }
    layer_sum_in(kind, n + m as u64 + 1, m)?.try_sub(&rhs)
}

/// Checks `S_{n+m+1} = S_{n+1} + ... + S_{n+m}`.
///
/// Two statements are verified, both exactly:
/// - the identity itself for distinct roots `a != b`;
/// - `(b - a) * (S_{n+m+1} - sum) = 0` in the tensor square, i.e. using only
///   `p_m(a) = p_m(b) = 0`.
pub fn verify_layer_identity(n: u64, m: usize) -> Result<bool> {
    if !layer_defect(RingKind::DistinctPair, n, m)?.is_zero() {
        return Ok(false);
    }
    let kind = RingKind::TensorSquare;
    let diff = generator_in(kind, m, 2)?.try_sub(&generator_in(kind, m, 1)?)?;
    Ok(ring_mul(&diff, &layer_defect(kind, n, m)?)?.is_zero())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::symmetric::power_sums;

    fn poly(m: usize, c: &[i64]) -> RingElement {
        RingElement::from_poly(m, &c.iter().map(|&x| BigInt::from(x)).collect::<Vec<_>>()).unwrap()
    }

    fn ab(kind: RingKind, m: usize, terms: &[(usize, usize, i64)]) -> RingElement {
        let t: Vec<_> = terms.iter().map(|&(i, j, c)| ((i, j), BigInt::from(c))).collect();
        RingElement::from_monomials(kind, m, &t).unwrap()
    }

    #[test]
    fn generators() {
        let g = generator(3, 1, 1).unwrap();
        assert_eq!(g, poly(3, &[0, 1]));
        assert_eq!(g.coeff(1, 0), &BigInt::one());
        let b = generator(3, 2, 2).unwrap();
        assert_eq!(b.coeff(0, 1), &BigInt::one());
        assert_eq!(b.coeffs().iter().filter(|c| !c.is_zero()).count(), 1);
        assert_eq!(generator(3, 2, 1).unwrap().coeff(1, 0), &BigInt::one());
        assert_eq!(ring_pow(&g, 0), RingElement::unit(3, 1).unwrap());
        assert_eq!(generator(3, 1, 2), Err(Error::SlotOutOfRange { slot: 2, arity: 1 }));
        assert!(generator(3, 3, 1).is_err());
        assert!(generator(1, 1, 1).is_err());
    }

    #[test]
    fn reduction_relation() {
        let x = poly(3, &[0, 1]);
        let x2 = poly(3, &[0, 0, 1]);
        assert_eq!(ring_mul(&x2, &x).unwrap(), poly(3, &[1, 1, 1]));
        let u = poly(3, &[5, -2, 7]);
        assert_eq!(ring_mul(&u, &RingElement::unit(3, 1).unwrap()).unwrap(), u);
        let y = poly(2, &[0, 1]);
        assert_eq!(ring_mul(&y, &y).unwrap(), poly(2, &[1, 1]));
        assert!(ring_mul(&x, &y).is_err());
        assert!(ring_mul(&x, &generator(3, 2, 1).unwrap()).is_err());
    }

    #[test]
    fn powers() {
        let g = generator(3, 1, 1).unwrap();
        assert_eq!(ring_pow(&g, 3), poly(3, &[1, 1, 1]));
        assert_eq!(ring_pow(&g, 1), g);
        // x^4 = x^3 + x^2 + x = 2x^2 + 2x + 1
        assert_eq!(ring_pow(&g, 4), poly(3, &[1, 2, 2]));
        assert_eq!(ring_pow(&g, 5), ring_mul(&ring_pow(&g, 4), &g).unwrap());
        assert_eq!(poly(3, &[0, 0, 0, 0, 1]), ring_pow(&g, 4));
    }

    #[test]
    fn defining_relation_all_orders() {
        for m in 2..=8 {
            let g = generator(m, 1, 1).unwrap();
            let sum = (0..m as u64).fold(RingElement::zero(m, 1).unwrap(), |acc, k| &acc + &ring_pow(&g, k));
            assert_eq!(ring_pow(&g, m as u64), sum, "m={m}");
        }
    }

    #[test]
    fn distinct_pair_relations() {
        for m in 2..=6 {
            let kind = RingKind::DistinctPair;
            let a = generator_in(kind, m, 1).unwrap();
            let b = generator_in(kind, m, 2).unwrap();
            // b is still a root of p_m
            let bm = ring_pow(&b, m as u64);
            let tail = (0..m as u64).fold(RingElement::zero_in(kind, m).unwrap(), |acc, k| &acc + &ring_pow(&b, k));
            assert_eq!(bm, tail, "m={m}");
            assert_eq!(ring_mul(&a, &b).unwrap(), ring_mul(&b, &a).unwrap());
        }
        // m = 2: a + b = 1
        let kind = RingKind::DistinctPair;
        let s = &generator_in(kind, 2, 1).unwrap() + &generator_in(kind, 2, 2).unwrap();
        assert_eq!(s, RingElement::unit_in(kind, 2).unwrap());
    }

    #[test]
    fn layer_sums() {
        let d = RingKind::DistinctPair;
        assert_eq!(layer_sum(1, 3).unwrap(), generator_in(d, 3, 2).unwrap());
        assert_eq!(layer_sum(2, 3).unwrap(), ab(d, 3, &[(0, 2, 1), (1, 1, 1)]));
        let rhs = &(&layer_sum(6, 3).unwrap() + &layer_sum(5, 3).unwrap()) + &layer_sum(4, 3).unwrap();
        assert_eq!(layer_sum(7, 3).unwrap(), rhs);
        assert!(layer_sum(0, 3).is_err());
        assert!(layer_sum_in(RingKind::Single, 2, 3).is_err());
        let t = RingKind::TensorSquare;
        assert_eq!(layer_sum_in(t, 2, 3).unwrap(), ab(t, 3, &[(0, 2, 1), (1, 1, 1)]));
    }

    #[test]
    fn layer_identity_grid() {
        for m in 2..=6 {
            for n in 0..=30 {
                assert!(verify_layer_identity(n, m).unwrap(), "m={m} n={n}");
            }
        }
    }

    #[test]
    fn tensor_square_needs_the_b_minus_a_factor() {
        // for m = 3 the defect is a^n (a + ab + a^2 b^2 + b), which vanishes
        // only once b is known to differ from a
        let t = RingKind::TensorSquare;
        let defect = layer_defect(t, 0, 3).unwrap();
        assert_eq!(defect, ab(t, 3, &[(1, 0, 1), (1, 1, 1), (2, 2, 1), (0, 1, 1)]));
        assert!(!defect.is_zero());
        assert_eq!(defect.to_string(), "a^2*b^2 + a*b + a + b");
    }

    #[test]
    fn display() {
        assert_eq!(poly(3, &[1, -2, 3]).to_string(), "3*x^2 - 2*x + 1");
        assert_eq!(poly(3, &[0, 0, -1]).to_string(), "-x^2");
        assert_eq!(RingElement::zero(4, 2).unwrap().to_string(), "0");
        assert_eq!(
            ab(RingKind::DistinctPair, 3, &[(0, 1, -1), (2, 0, 5)]).to_string(),
            "5*a^2 - b"
        );
    }

    #[test]
    fn wrong_order_identity_fails() {
        let lhs = layer_sum(5, 3).unwrap();
        let rhs = &layer_sum(4, 3).unwrap() + &layer_sum(3, 3).unwrap();
        assert_ne!(lhs, rhs);
    }

    #[test]
    fn trace_gives_power_sums() {
        for m in 2..=6 {
            let p = power_sums(m, 30).unwrap();
            let g = generator(m, 1, 1).unwrap();
            for n in 0..=30 {
                assert_eq!(ring_pow(&g, n).trace(), p.values[n as usize], "m={m} n={n}");
            }
        }
    }

    #[test]
    fn tensor_slots_are_independent() {
        let t = RingKind::TensorSquare;
        let m = 3;
        let a = generator(m, 2, 1).unwrap();
        let b = generator(m, 2, 2).unwrap();
        assert_eq!(ring_mul(&a, &b).unwrap(), ring_mul(&b, &a).unwrap());
        assert_eq!(ring_mul(&a, &b).unwrap(), ab(t, m, &[(1, 1, 1)]));
        let a3 = ring_pow(&a, 3);
        assert_eq!(a3, ab(t, m, &[(2, 0, 1), (1, 0, 1), (0, 0, 1)]));
        let a3b2 = ring_mul(&a3, &ring_pow(&b, 2)).unwrap();
        assert_eq!(a3b2, ab(t, m, &[(2, 2, 1), (1, 2, 1), (0, 2, 1)]));
    }
}
