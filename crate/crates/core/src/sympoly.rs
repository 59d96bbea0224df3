//! Sparse multivariate polynomials over big integers, the nested power sum as
//! a formal polynomial, and reduction of symmetric polynomials to the
//! elementary basis.
//!
//! Exponent vectors are dense `Vec<u32>` of length `num_vars`. Terms are kept
//! in a `BTreeMap`, so iteration is ascending pure-lex with `x1 > x2 > ...`
//! and the lex-leading monomial is the last entry.

use std::collections::{BTreeMap, BTreeSet, HashMap};
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::{BigInt, BigUint};
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};
use crate::symmetric::vieta;

/// Largest number of monomials any enumeration may produce unless overridden.
pub const DEFAULT_ENUMERATION_CAP: u64 = 1_000_000;

pub type Exponent = Vec<u32>;

/// `C(n + m - 1, m - 1)`, the number of compositions of `n` into `m` parts,
/// saturated at `u128::MAX`.
pub fn composition_count(n: u32, m: usize) -> u128 {
    if m == 0 {
        return u128::from(n == 0);
    }
    let k = (m - 1) as u64;
    let top = n as u64 + k;
    let mut c = BigUint::one();
    for i in 0..k {
        c = c * BigUint::from(top - i) / BigUint::from(i + 1);
    }
    c.to_u128().unwrap_or(u128::MAX)
}

fn check_cap(n: u32, m: usize, cap: u64) -> Result<u128> {
    let count = composition_count(n, m);
    if count > cap as u128 {
        return Err(Error::CapExceeded { count, cap });
    }
    Ok(count)
}

/// Lexicographic enumeration of all length-`m` vectors of non-negative
/// integers summing to `n`.
#[derive(Debug, Clone)]
pub struct Compositions {
    next: Option<Exponent>,
    remaining: u128,
}

impl Iterator for Compositions {
    type Item = Exponent;

    fn next(&mut self) -> Option<Exponent> {
        let current = self.next.take()?;
        self.remaining -= 1;
        let m = current.len();
        if m >= 2 {
            // rightmost i < m-1 with something to its right
            let mut suffix = 0u32;
            let mut i = m - 1;
            while i > 0 {
                suffix += current[i];
                i -= 1;
                if suffix > 0 {
                    let mut succ = current.clone();
                    succ[i] += 1;
                    for slot in succ[i + 1..].iter_mut() {
                        *slot = 0;
                    }
                    succ[m - 1] = suffix - 1;
                    self.next = Some(succ);
                    break;
                }
            }
        }
        Some(current)
    }

    fn size_hint(&self) -> (usize, Option<usize>) {
        let r = usize::try_from(self.remaining).unwrap_or(usize::MAX);
        (r, Some(r))
    }
}

/// All compositions of `n` into `m` parts under the default cap.
pub fn compositions(n: u32, m: usize) -> Result<Compositions> {
    compositions_with_cap(n, m, DEFAULT_ENUMERATION_CAP)
}

pub fn compositions_with_cap(n: u32, m: usize, cap: u64) -> Result<Compositions> {
    if m == 0 {
        return Err(Error::InvalidSpec("compositions need at least one part".into()));
    }
    let count = check_cap(n, m, cap)?;
    let mut first = vec![0; m];
    first[m - 1] = n;
    Ok(Compositions {
        next: Some(first),
        remaining: count,
    })
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct MultivariatePoly {
    num_vars: usize,
    terms: BTreeMap<Exponent, BigInt>,
}

impl MultivariatePoly {
    pub fn zero(num_vars: usize) -> Self {
        Self {
            num_vars,
            terms: BTreeMap::new(),
        }
    }

    pub fn one(num_vars: usize) -> Self {
        Self::constant(num_vars, BigInt::one())
    }

    pub fn constant(num_vars: usize, c: BigInt) -> Self {
        Self::monomial(vec![0; num_vars], c)
    }

    pub fn monomial(exponent: Exponent, coeff: BigInt) -> Self {
        let mut p = Self::zero(exponent.len());
        if !coeff.is_zero() {
            p.terms.insert(exponent, coeff);
        }
        p
    }

    /// The variable `x_{index+1}`.
    pub fn var(num_vars: usize, index: usize) -> Self {
        assert!(index < num_vars, "variable index {index} out of range");
        let mut e = vec![0; num_vars];
        e[index] = 1;
        Self::monomial(e, BigInt::one())
    }

    /// Builds a polynomial from `(exponent, coefficient)` pairs, merging
    /// duplicates and dropping zeros.
    pub fn from_terms<I>(num_vars: usize, terms: I) -> Self
    where
        I: IntoIterator<Item = (Exponent, BigInt)>,
    {
        let mut p = Self::zero(num_vars);
        for (e, c) in terms {
            assert_eq!(e.len(), num_vars, "exponent length mismatch");
            p.add_term(e, c);
        }
        p
    }

    pub fn num_vars(&self) -> usize {
        self.num_vars
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl DoubleEndedIterator<Item = (&Exponent, &BigInt)> + ExactSizeIterator {
        self.terms.iter()
    }

    pub fn coeff(&self, exponent: &[u32]) -> BigInt {
        self.terms.get(exponent).cloned().unwrap_or_default()
    }

    /// Lex-leading term.
    pub fn leading_term(&self) -> Option<(&Exponent, &BigInt)> {
        self.terms.last_key_value()
    }

    pub fn total_degree(&self) -> Option<u32> {
        self.terms.keys().map(|e| e.iter().sum()).max()
    }

    fn add_term(&mut self, exponent: Exponent, coeff: BigInt) {
        if coeff.is_zero() {
            return;
        }
        use std::collections::btree_map::Entry;
        match self.terms.entry(exponent) {
            Entry::Vacant(v) => {
                v.insert(coeff);
            }
            Entry::Occupied(mut o) => {
                *o.get_mut() += coeff;
                if o.get().is_zero() {
                    o.remove();
                }
            }
        }
    }

    pub fn scale(&self, c: &BigInt) -> Self {
        if c.is_zero() {
            return Self::zero(self.num_vars);
        }
        Self {
            num_vars: self.num_vars,
            terms: self.terms.iter().map(|(e, v)| (e.clone(), v * c)).collect(),
        }
    }

    pub fn pow(&self, mut exp: u32) -> Self {
        let mut result = Self::one(self.num_vars);
        let mut base = self.clone();
        while exp > 0 {
            if exp & 1 == 1 {
                result = &result * &base;
            }
            exp >>= 1;
            if exp > 0 {
                base = &base * &base;
            }
        }
        result
    }

    /// The polynomial with variables `i` and `j` exchanged.
    pub fn swap_vars(&self, i: usize, j: usize) -> Self {
        Self {
            num_vars: self.num_vars,
            terms: self
                .terms
                .iter()
                .map(|(e, c)| {
                    let mut e = e.clone();
                    e.swap(i, j);
                    (e, c.clone())
                })
                .collect(),
        }
    }

    fn assert_same_ring(&self, other: &Self) {
        assert_eq!(
            self.num_vars, other.num_vars,
            "polynomials over different variable counts"
        );
    }
}

impl Add for &MultivariatePoly {
    type Output = MultivariatePoly;

    fn add(self, rhs: &MultivariatePoly) -> MultivariatePoly {
        self.assert_same_ring(rhs);
        let mut out = self.clone();
        for (e, c) in &rhs.terms {
            out.add_term(e.clone(), c.clone());
        }
        out
    }
}

impl Sub for &MultivariatePoly {
    type Output = MultivariatePoly;

    fn sub(self, rhs: &MultivariatePoly) -> MultivariatePoly {
        self.assert_same_ring(rhs);
        let mut out = self.clone();
        for (e, c) in &rhs.terms {
            out.add_term(e.clone(), -c);
        }
        out
    }
}

impl Neg for &MultivariatePoly {
    type Output = MultivariatePoly;

    fn neg(self) -> MultivariatePoly {
        self.scale(&-BigInt::one())
    }
}

impl Mul for &MultivariatePoly {
    type Output = MultivariatePoly;

    #[allow(clippy::suspicious_arithmetic_impl)]
    fn mul(self, rhs: &MultivariatePoly) -> MultivariatePoly {
        self.assert_same_ring(rhs);
        let mut out = MultivariatePoly::zero(self.num_vars);
        for (ea, ca) in &self.terms {
            for (eb, cb) in &rhs.terms {
                let e = ea.iter().zip(eb).map(|(a, b)| a + b).collect();
                out.add_term(e, ca * cb);
            }
        }
        out
    }
}

macro_rules! forward_owned {
    ($tr:ident, $f:ident) => {
        impl $tr for MultivariatePoly {
            type Output = MultivariatePoly;
            fn $f(self, rhs: MultivariatePoly) -> MultivariatePoly {
                (&self).$f(&rhs)
            }
        }
    };
}
forward_owned!(Add, add);
forward_owned!(Sub, sub);
forward_owned!(Mul, mul);

fn write_monomial(f: &mut fmt::Formatter<'_>, prefix: &str, e: &[u32]) -> fmt::Result {
    let mut first = true;
    for (i, &k) in e.iter().enumerate() {
        if k == 0 {
            continue;
        }
        if !first {
            f.write_str("*")?;
        }
        first = false;
        write!(f, "{prefix}{}", i + 1)?;
        if k > 1 {
            write!(f, "^{k}")?;
        }
    }
    Ok(())
}

fn write_terms<'a>(
    f: &mut fmt::Formatter<'_>,
    prefix: &str,
    terms: impl Iterator<Item = (&'a Exponent, &'a BigInt)>,
) -> fmt::Result {
    let mut first = true;
    for (e, c) in terms {
        let constant = e.iter().all(|&k| k == 0);
        let mag = c.abs();
        match (first, c.is_negative()) {
            (true, true) => f.write_str("-")?,
            (true, false) => {}
            (false, true) => f.write_str(" - ")?,
            (false, false) => f.write_str(" + ")?,
        }
        first = false;
        if constant {
            write!(f, "{mag}")?;
        } else {
            if !mag.is_one() {
                write!(f, "{mag}*")?;
            }
            write_monomial(f, prefix, e)?;
        }
    }
    if first {
        f.write_str("0")?;
    }
    Ok(())
}

/// Lex-descending, e.g. `x1^2 + x1*x2 - 2*x3 + 1`.
impl fmt::Display for MultivariatePoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write_terms(f, "x", self.terms.iter().rev())
    }
}

/// A polynomial in the elementary symmetric generators `e_1..e_m`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct EPolynomial {
    m: usize,
    terms: BTreeMap<Exponent, BigInt>,
}

impl EPolynomial {
    pub fn zero(m: usize) -> Self {
        Self {
            m,
            terms: BTreeMap::new(),
        }
    }

    /// The single generator `e_k`.
    pub fn generator(k: usize, m: usize) -> Self {
        assert!((1..=m).contains(&k), "generator e_{k} out of range for m = {m}");
        let mut e = vec![0; m];
        e[k - 1] = 1;
        let mut p = Self::zero(m);
        p.terms.insert(e, BigInt::one());
        p
    }

    pub fn from_terms<I: IntoIterator<Item = (Exponent, BigInt)>>(m: usize, terms: I) -> Self {
        let mut p = Self::zero(m);
        for (e, c) in terms {
            assert_eq!(e.len(), m, "exponent length mismatch");
            p.add_term(e, c);
        }
        p
    }

    fn add_term(&mut self, e: Exponent, c: BigInt) {
        let slot = self.terms.entry(e.clone()).or_default();
        *slot += c;
        if slot.is_zero() {
            self.terms.remove(&e);
        }
    }

    pub fn m(&self) -> usize {
        self.m
    }

    pub fn terms(&self) -> impl DoubleEndedIterator<Item = (&Exponent, &BigInt)> {
        self.terms.iter()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    /// Substitutes `e_k = values[k-1]`.
    pub fn evaluate(&self, values: &[BigInt]) -> BigInt {
        assert_eq!(values.len(), self.m, "expected {} generator values", self.m);
        self.terms
            .iter()
            .map(|(e, c)| {
                e.iter()
                    .zip(values)
                    .fold(c.clone(), |acc, (&k, v)| acc * num_traits::pow(v.clone(), k as usize))
            })
            .sum()
    }

    /// Expands back into the variables `x_1..x_m` using [`elementary_poly`].
    pub fn expand(&self) -> MultivariatePoly {
        let gens: Vec<MultivariatePoly> = (1..=self.m).map(|k| elementary_poly(k, self.m)).collect();
        let mut out = MultivariatePoly::zero(self.m);
        for (e, c) in &self.terms {
            let mut term = MultivariatePoly::constant(self.m, c.clone());
            for (g, &k) in gens.iter().zip(e) {
                if k > 0 {
                    term = &term * &g.pow(k);
                }
            }
            out = &out + &term;
        }
        out
    }
}

impl fmt::Display for EPolynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write_terms(f, "e", self.terms.iter().rev())
    }
}

/// Sum of every monomial of total degree `n` in `m` variables, each with
/// coefficient 1.
pub fn nested_sum_poly(n: u32, m: usize) -> Result<MultivariatePoly> {
    nested_sum_poly_with_cap(n, m, DEFAULT_ENUMERATION_CAP)
}

pub fn nested_sum_poly_with_cap(n: u32, m: usize, cap: u64) -> Result<MultivariatePoly> {
    let terms = compositions_with_cap(n, m, cap)?.map(|e| (e, BigInt::one())).collect();
    Ok(MultivariatePoly { num_vars: m, terms })
}

/// The `k`-th elementary symmetric polynomial in `m` variables; zero when
/// `k > m`.
pub fn elementary_poly(k: usize, m: usize) -> MultivariatePoly {
    if k > m {
        return MultivariatePoly::zero(m);
    }
    let terms = k_subsets(m, k)
        .into_iter()
        .map(|s| {
            let mut e = vec![0; m];
            for i in s {
                e[i] = 1;
            }
            (e, BigInt::one())
        })
        .collect();
    MultivariatePoly { num_vars: m, terms }
}

fn k_subsets(m: usize, k: usize) -> Vec<Vec<usize>> {
    fn go(start: usize, m: usize, k: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == k {
            out.push(cur.clone());
            return;
        }
        for i in start..m {
            if m - i < k - cur.len() {
                break;
            }
            cur.push(i);
            go(i + 1, m, k, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    go(0, m, k, &mut Vec::with_capacity(k), &mut out);
    out
}

/// True iff `f` is unchanged by every adjacent transposition of variables.
pub fn is_symmetric(f: &MultivariatePoly) -> bool {
    let mut buf = Vec::with_capacity(f.num_vars);
    for i in 0..f.num_vars.saturating_sub(1) {
        for (e, c) in &f.terms {
            buf.clear();
            buf.extend_from_slice(e);
            buf.swap(i, i + 1);
            if f.terms.get(&buf) != Some(c) {
                return false;
            }
        }
    }
    true
}

fn weakly_decreasing(e: &[u32]) -> bool {
    e.windows(2).all(|w| w[0] >= w[1])
}

/// A symmetric polynomial stored by its coefficients on weakly decreasing
/// exponent vectors only; every other coefficient is that of its sorted
/// rearrangement.
type DominantTable = BTreeMap<Exponent, BigInt>;

fn sorted_desc(mut e: Exponent) -> Exponent {
    e.sort_unstable_by(|a, b| b.cmp(a));
    e
}

/// Multiplies a symmetric polynomial by `e_k`, working on dominant
/// monomials: `[x^mu](f e_k) = sum_S [x^{mu - 1_S}] f` over `k`-subsets `S`.
fn mul_by_elementary(f: &DominantTable, subsets: &[Vec<usize>]) -> DominantTable {
    let mut targets: BTreeSet<Exponent> = BTreeSet::new();
    for nu in f.keys() {
        for s in subsets {
            let mut e = nu.clone();
            for &i in s {
                e[i] += 1;
            }
            targets.insert(sorted_desc(e));
        }
    }
    let mut out = DominantTable::new();
    for mu in targets {
        let mut acc = BigInt::zero();
        'subset: for s in subsets {
            let mut e = mu.clone();
            for &i in s {
                if e[i] == 0 {
                    continue 'subset;
                }
                e[i] -= 1;
            }
            if let Some(c) = f.get(&sorted_desc(e)) {
                acc += c;
            }
        }
        if !acc.is_zero() {
            out.insert(mu, acc);
        }
    }
    out
}

struct ElementaryProducts {
    m: usize,
    subsets: Vec<Vec<Vec<usize>>>,
    cache: HashMap<Exponent, DominantTable>,
}

impl ElementaryProducts {
    fn new(m: usize) -> Self {
        let subsets = (0..=m).map(|k| k_subsets(m, k)).collect();
        let mut cache = HashMap::new();
        let mut unit = DominantTable::new();
        unit.insert(vec![0; m], BigInt::one());
        cache.insert(vec![0; m], unit);
        Self { m, subsets, cache }
    }

    /// `prod_k e_k^{powers[k-1]}` on dominant monomials.
    fn get(&mut self, powers: &[u32]) -> &DominantTable {
        if !self.cache.contains_key(powers) {
            // peel one factor off the highest generator present
            let k = (0..self.m).rev().find(|&i| powers[i] > 0).expect("unit is cached");
            let mut smaller = powers.to_vec();
            smaller[k] -= 1;
            let base = self.get(&smaller).clone();
            let product = mul_by_elementary(&base, &self.subsets[k + 1]);
            self.cache.insert(powers.to_vec(), product);
        }
        &self.cache[powers]
    }
}

/// Rewrites a symmetric polynomial in the elementary basis by repeated
/// elimination of the lex-leading monomial `x^lambda` with
/// `e_1^{l1-l2} e_2^{l2-l3} ... e_m^{lm}`.
pub fn reduce_to_e_basis(f: &MultivariatePoly) -> Result<EPolynomial> {
    let m = f.num_vars;
    if !is_symmetric(f) {
        return Err(Error::NotSymmetric);
    }
    let mut work: DominantTable = f
        .terms
        .iter()
        .filter(|(e, _)| weakly_decreasing(e))
        .map(|(e, c)| (e.clone(), c.clone()))
        .collect();

    let max_degree = f.total_degree().unwrap_or(0);
    // number of exponent vectors of degree <= max_degree bounds the steps
    let guard = composition_count(max_degree, m + 1).saturating_add(1);

    let mut products = ElementaryProducts::new(m);
    let mut out = EPolynomial::zero(m);
    let mut steps: u128 = 0;
    while let Some((lead, c)) = work.last_key_value() {
        if !weakly_decreasing(lead) {
            return Err(Error::NotSymmetric);
        }
        steps += 1;
        if steps > guard {
            return Err(Error::Internal(format!("symmetric reduction exceeded {guard} steps")));
        }
        let lead = lead.clone();
        let c = c.clone();
        let powers: Exponent = (0..m)
            .map(|i| lead[i] - lead.get(i + 1).copied().unwrap_or(0))
            .collect();
        let product = products.get(&powers);
        debug_assert_eq!(product.last_key_value(), Some((&lead, &BigInt::one())));
        for (e, v) in product {
            let slot = work.entry(e.clone()).or_default();
            *slot -= &c * v;
            if slot.is_zero() {
                work.remove(e);
            }
        }
        if work.contains_key(&lead) {
            return Err(Error::Internal("leading monomial survived elimination".into()));
        }
        out.add_term(powers, c);
    }
    Ok(out)
}

/// `h_n` of the roots of `x^m - x^{m-1} - ... - 1` by enumeration, symmetric
/// reduction and substitution of the Vieta values. Never touches the `h`
/// recurrence.
pub fn nested_sum_exact(n: u32, m: usize) -> Result<BigInt> {
    nested_sum_exact_with_cap(n, m, DEFAULT_ENUMERATION_CAP)
}

pub fn nested_sum_exact_with_cap(n: u32, m: usize, cap: u64) -> Result<BigInt> {
    let v = vieta(m)?;
    let f = nested_sum_poly_with_cap(n, m, cap)?;
    let reduced = reduce_to_e_basis(&f).map_err(|err| match err {
        Error::NotSymmetric => Error::Internal("nested sum reported as non-symmetric".into()),
        other => other,
    })?;
    Ok(reduced.evaluate(&v.e))
}

/// Checks, over generic variables `a, b, c`,
/// `H_{n+1}(a,b,c) = c H_n(a,b,c) + sum_{i=0}^n a^i b^{n+1-i} + a^{n+1}`
/// where `H_n` is the nested sum. No root relations are involved.
pub fn verify_u_step(n: u32) -> Result<bool> {
    verify_u_step_with_cap(n, DEFAULT_ENUMERATION_CAP)
}

pub fn verify_u_step_with_cap(n: u32, cap: u64) -> Result<bool> {
    let lhs = nested_sum_poly_with_cap(n + 1, 3, cap)?;
    let a = |k: u32, j: u32| MultivariatePoly::monomial(vec![k, j, 0], BigInt::one());
    let c = MultivariatePoly::var(3, 2);
    let mut rhs = &c * &nested_sum_poly_with_cap(n, 3, cap)?;
    for i in 0..=n {
        rhs = &rhs + &a(i, n + 1 - i);
    }
    rhs = &rhs + &a(n + 1, 0);
    Ok(lhs == rhs)
}
