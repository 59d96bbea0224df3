//! Numeric roots of `x^m - x^{m-1} - ... - 1` and floating-point evaluation
//! of the nested power sums over them.

use std::f64::consts::TAU;

use num_bigint::BigInt;
use num_complex::Complex64;
use num_traits::{One, ToPrimitive};

use crate::error::{Error, Result};
use crate::summation::CompensatedComplexSum;
use crate::sympoly::compositions_with_cap;

/// Radius of the circle the initial guesses are placed on.
pub const INITIAL_RADIUS: f64 = 1.5;
/// Angular offset of the first guess, keeping every guess off the real axis.
pub const INITIAL_ANGLE: f64 = 0.4;

/// Coefficients of `x^m - x^{m-1} - ... - x - 1`, highest degree first.
pub fn char_poly(m: usize) -> Result<Vec<BigInt>> {
    if m < 2 {
        return Err(Error::InvalidOrder(m));
    }
    let mut c = vec![-BigInt::one(); m + 1];
    c[0] = BigInt::one();
    Ok(c)
}

#[derive(Debug, Clone, PartialEq)]
pub struct RootSet {
    pub m: usize,
    pub roots: Vec<Complex64>,
    /// `|p(root)|` for each root, by Horner evaluation.
    pub residuals: Vec<f64>,
    pub iterations: usize,
    pub converged: bool,
}

impl RootSet {
    /// The root of largest modulus.
    pub fn dominant_root(&self) -> Complex64 {
        *self
            .roots
            .iter()
            .max_by(|a, b| a.norm().total_cmp(&b.norm()))
            .expect("root set is never empty")
    }

    /// True iff exactly one root lies outside the unit circle and the rest
    /// lie inside, each by at least `margin`.
    pub fn has_single_dominant(&self, margin: f64) -> bool {
        let outside = self.roots.iter().filter(|r| r.norm() > 1.0 + margin).count();
        let inside = self.roots.iter().filter(|r| r.norm() < 1.0 - margin).count();
        outside == 1 && inside == self.m - 1
    }

    pub fn max_residual(&self) -> f64 {
        self.residuals.iter().copied().fold(0.0, f64::max)
    }
}

fn float_coeffs(m: usize) -> Result<Vec<f64>> {
    Ok(char_poly(m)?
        .iter()
        .map(|c| c.to_f64().expect("coefficients are +-1"))
        .collect())
}

fn horner(coeffs: &[f64], z: Complex64) -> Complex64 {
    coeffs.iter().fold(Complex64::new(0.0, 0.0), |acc, &c| acc * z + c)
}

/// Durand-Kerner simultaneous iteration.
///
/// Stops as soon as the largest per-root update drops below `tol`; when
/// `max_iter` sweeps pass first the result carries `converged = false`.
pub fn find_roots(m: usize, tol: f64, max_iter: usize) -> Result<RootSet> {
    if tol.is_nan() || tol <= 0.0 {
        return Err(Error::InvalidSpec(format!(
            "root tolerance must be positive, got {tol}"
        )));
    }
    let coeffs = float_coeffs(m)?;
    let mut roots: Vec<Complex64> = (0..m)
        .map(|k| Complex64::from_polar(INITIAL_RADIUS, INITIAL_ANGLE + TAU * k as f64 / m as f64))
        .collect();

    let mut converged = false;
    let mut iterations = 0;
    while iterations < max_iter {
        iterations += 1;
        let mut next = roots.clone();
        let mut max_step = 0.0f64;
        for (i, z) in roots.iter().enumerate() {
            let denom = roots
                .iter()
                .enumerate()
                .filter(|&(j, _)| j != i)
                .fold(Complex64::new(1.0, 0.0), |acc, (_, w)| acc * (z - w));
            let step = horner(&coeffs, *z) / denom;
            next[i] = z - step;
            max_step = max_step.max(step.norm());
        }
        roots = next;
        if max_step < tol {
            converged = true;
            break;
        }
    }

    let residuals = roots.iter().map(|&z| horner(&coeffs, z).norm()).collect();
    Ok(RootSet {
        m,
        roots,
        residuals,
        iterations,
        converged,
    })
}

/// `|e_k(roots) - (-1)^{k+1}|` for `k = 1..=m`.
pub fn vieta_residuals(rs: &RootSet) -> Vec<f64> {
    // coefficients of prod (x - r), highest degree first
    let mut poly = vec![Complex64::new(1.0, 0.0)];
    for r in &rs.roots {
        let mut next = vec![Complex64::new(0.0, 0.0); poly.len() + 1];
        for (i, c) in poly.iter().enumerate() {
            next[i] += c;
            next[i + 1] -= c * r;
        }
        poly = next;
    }
    (1..=rs.m)
        .map(|k| {
            let sign = if k % 2 == 0 { 1.0 } else { -1.0 };
            let e_k = poly[k] * sign;
            let expected = if k % 2 == 1 { 1.0 } else { -1.0 };
            (e_k - expected).norm()
        })
        .collect()
}

/// Sum of `prod_i root_i^{c_i}` over every composition `c` of `n` into `m`
/// parts, accumulated with compensated summation.
pub fn numeric_nested_sum(rs: &RootSet, n: u32, cap: u64) -> Result<Complex64> {
    let comps = compositions_with_cap(n, rs.m, cap)?;
    let powers: Vec<Vec<Complex64>> = rs
        .roots
        .iter()
        .map(|r| {
            let mut row = Vec::with_capacity(n as usize + 1);
            let mut acc = Complex64::new(1.0, 0.0);
            for _ in 0..=n {
                row.push(acc);
                acc *= r;
            }
            row
        })
        .collect();
    let mut sum = CompensatedComplexSum::new();
    for exps in comps {
        let term = exps
            .iter()
            .enumerate()
            .fold(Complex64::new(1.0, 0.0), |acc, (i, &e)| acc * powers[i][e as usize]);
        sum.add(term);
    }
    Ok(sum.value())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::sympoly::DEFAULT_ENUMERATION_CAP;

    // independent real-root oracle on [lo, hi] with a sign change
    fn bisect(f: impl Fn(f64) -> f64, mut lo: f64, mut hi: f64) -> f64 {
        for _ in 0..200 {
            let mid = 0.5 * (lo + hi);
            if (f(lo) < 0.0) == (f(mid) < 0.0) {
                lo = mid;
            } else {
                hi = mid;
            }
        }
        0.5 * (lo + hi)
    }

    #[test]
    fn char_poly_shapes() {
        let ints = |xs: &[i64]| xs.iter().map(|&x| BigInt::from(x)).collect::<Vec<_>>();
        assert_eq!(char_poly(3).unwrap(), ints(&[1, -1, -1, -1]));
        assert_eq!(char_poly(2).unwrap(), ints(&[1, -1, -1]));
        assert_eq!(char_poly(5).unwrap(), ints(&[1, -1, -1, -1, -1, -1]));
        assert!(char_poly(1).is_err());
    }

    #[test]
    fn tribonacci_constant() {
        let oracle = bisect(|x| x * x * x - x * x - x - 1.0, 1.0, 2.0);
        assert!((oracle - 1.8392867552).abs() < 1e-9);
        let rs = find_roots(3, 1e-12, 200).unwrap();
        assert!(rs.converged);
        let d = rs.dominant_root();
        assert!((d.re - oracle).abs() < 1e-9 && d.im.abs() < 1e-9);
        let sum: Complex64 = rs.roots.iter().sum();
        assert!((sum - 1.0).norm() < 1e-9);
    }

    #[test]
    fn golden_ratio() {
        let rs = find_roots(2, 1e-12, 200).unwrap();
        let phi = (1.0 + 5f64.sqrt()) / 2.0;
        assert!((rs.dominant_root().re - phi).abs() < 1e-9);
        let other = rs.roots.iter().find(|r| r.re < 0.0).unwrap();
        assert!((other.re - (1.0 - phi)).abs() < 1e-9);
    }

    #[test]
    fn residuals_and_moduli() {
        let mut last = 1.0;
        for m in 2..=8 {
            let rs = find_roots(m, 1e-12, 500).unwrap();
            assert!(rs.converged, "m={m}");
            assert!(rs.max_residual() < 1e-10, "m={m} residual {}", rs.max_residual());
            assert!(rs.has_single_dominant(1e-6), "m={m}");
            let d = rs.dominant_root().norm();
            assert!(d > last && d < 2.0, "m={m} dominant {d}");
            last = d;
            assert!(vieta_residuals(&rs).iter().all(|&r| r < 1e-9), "m={m}");
        }
    }

    #[test]
    fn non_convergence_is_reported() {
        let rs = find_roots(5, 1e-12, 2).unwrap();
        assert!(!rs.converged);
        assert_eq!(rs.iterations, 2);
        assert!(find_roots(3, 0.0, 10).is_err());
    }

    #[test]
    fn nested_sums() {
        let rs3 = find_roots(3, 1e-12, 200).unwrap();
        assert_eq!(
            numeric_nested_sum(&rs3, 0, DEFAULT_ENUMERATION_CAP).unwrap(),
            Complex64::new(1.0, 0.0)
        );
        let u3 = numeric_nested_sum(&rs3, 3, DEFAULT_ENUMERATION_CAP).unwrap();
        assert!((u3 - 4.0).norm() < 1e-8);
        let rs4 = find_roots(4, 1e-12, 200).unwrap();
        let v = numeric_nested_sum(&rs4, 2, DEFAULT_ENUMERATION_CAP).unwrap();
        assert!((v - 2.0).norm() < 1e-8);
        assert!(matches!(
            numeric_nested_sum(&rs4, 2, 5),
            Err(Error::CapExceeded { count: 10, cap: 5 })
        ));
    }
}
