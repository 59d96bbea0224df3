//! Verification sweeps producing [`VerificationReport`]s.

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;
use std::time::Instant;

use num_bigint::BigInt;

use crate::error::{Error, Result};
use crate::quotient::verify_layer_identity;
use crate::recurrences::{make_family, Family};
use crate::report::{Cell, Params, Status, VerificationReport};
use crate::symmetric::h_sequence;
use crate::sympoly::{nested_sum_exact_with_cap, verify_u_step_with_cap};

/// Largest `n` the enumeration-and-reduction pipeline confirms in
/// [`verify_identity`].
pub const REDUCE_MAX_N: u64 = 20;
/// Default largest `n` cross-checked by enumeration in [`verify_conjecture`].
pub const CROSS_CHECK_MAX_N: u64 = 12;
/// `verify_u_step` is run for `n` up to this bound.
pub const U_STEP_MAX_N: u64 = 30;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Variant {
    /// Right-hand side `V_{n+1}` with `V_0 = 0, V_1 = ... = V_{m-1} = 1`.
    AsStated,
    /// Right-hand side `W_{n+1}`, the zero-padded m-bonacci sequence.
    Corrected,
}

impl Variant {
    pub fn as_str(self) -> &'static str {
        match self {
            Variant::AsStated => "as-stated",
            Variant::Corrected => "corrected",
        }
    }

    fn family(self) -> Family {
        match self {
            Variant::AsStated => Family::ConjectureV,
            Variant::Corrected => Family::PaddedW,
        }
    }

    fn label(self) -> &'static str {
        match self {
            Variant::AsStated => "as-stated (V_0 = 0, V_1 = ... = V_{m-1} = 1)",
            Variant::Corrected => "corrected (zero-padded m-bonacci W; a hypothesis introduced by this tool)",
        }
    }
}

impl fmt::Display for Variant {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for Variant {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "as-stated" => Ok(Variant::AsStated),
            "corrected" => Ok(Variant::Corrected),
            other => Err(Error::InvalidSpec(format!("unknown variant {other:?}"))),
        }
    }
}

fn compare(m: usize, n: u64, check: &str, lhs: &BigInt, rhs: &BigInt) -> Cell {
    Cell {
        m,
        n,
        check: check.into(),
        lhs: Some(lhs.to_string()),
        rhs: Some(rhs.to_string()),
        status: if lhs == rhs { Status::Pass } else { Status::Fail },
    }
}

fn skipped(m: usize, n: u64, check: &str) -> Cell {
    Cell {
        m,
        n,
        check: check.into(),
        lhs: None,
        rhs: None,
        status: Status::SkippedCap,
    }
}

fn boolean(m: usize, n: u64, check: &str, ok: bool) -> Cell {
    Cell {
        m,
        n,
        check: check.into(),
        lhs: None,
        rhs: None,
        status: if ok { Status::Pass } else { Status::Fail },
    }
}

/// `reduce` pipeline value, or `None` when the enumeration is over the cap.
fn reduced_or_skip(n: u64, m: usize, cap: u64) -> Result<Option<BigInt>> {
    match nested_sum_exact_with_cap(n as u32, m, cap) {
        Ok(v) => Ok(Some(v)),
        Err(Error::CapExceeded { .. }) => Ok(None),
        Err(e) => Err(e),
    }
}

/// `h_n == W_{n+1}` for `n <= n_max` via the recurrence pipeline, and via
/// enumeration plus symmetric reduction for `n <= min(n_max, 20)`.
pub fn verify_identity(m: usize, n_max: u64, cap: u64) -> Result<VerificationReport> {
    let params = Params {
        m_range: (m, m),
        n_range: (0, n_max),
        methods: vec!["recurrence".into(), "reduce".into()],
        variant: None,
        tolerances: BTreeMap::new(),
        enumeration_cap: cap,
    };
    let mut report = VerificationReport::new(format!("verify identity --m {m} --max-n {n_max}"), params);
    let w = make_family(Family::PaddedW, m)?.window(1, n_max + 1)?;

    let t = Instant::now();
    let h = h_sequence(m, n_max as usize)?;
    for (n, (lhs, rhs)) in h.values.iter().zip(&w).enumerate() {
        report.push(compare(m, n as u64, "recurrence", lhs, rhs));
    }
    report.record_time("recurrence", t.elapsed());

    let t = Instant::now();
    for n in 0..=n_max.min(REDUCE_MAX_N) {
        match reduced_or_skip(n, m, cap)? {
            Some(v) => report.push(compare(m, n, "reduce", &v, &w[n as usize])),
            None => report.push(skipped(m, n, "reduce")),
        }
    }
    report.record_time("reduce", t.elapsed());
    Ok(report.finish())
}

/// Nested sum against `V_{n+1}` or `W_{n+1}` for every `2 <= m <= m_max`,
/// `n <= n_max`. The nested sum comes from the `h` recurrence and, for
/// `n <= cross_max_n`, is confirmed independently by enumeration and
/// symmetric reduction (check `lhs-cross`).
pub fn verify_conjecture(
    m_max: usize,
    n_max: u64,
    variant: Variant,
    cross_max_n: u64,
    cap: u64,
) -> Result<VerificationReport> {
    if m_max < 2 {
        return Err(Error::InvalidOrder(m_max));
    }
    let params = Params {
        m_range: (2, m_max),
        n_range: (0, n_max),
        methods: vec!["recurrence".into(), "reduce".into()],
        variant: Some(variant.label().into()),
        tolerances: BTreeMap::new(),
        enumeration_cap: cap,
    };
    let mut report = VerificationReport::new(
        format!(
            "verify conjecture --variant {variant} --max-m {m_max} --max-n {n_max} --cross-check-max-n {cross_max_n}"
        ),
        params,
    );
    for m in 2..=m_max {
        let t = Instant::now();
        let h = h_sequence(m, n_max as usize)?;
        let rhs = make_family(variant.family(), m)?.window(1, n_max + 1)?;
        for (n, (l, r)) in h.values.iter().zip(&rhs).enumerate() {
            report.push(compare(m, n as u64, "conjecture", l, r));
        }
        report.record_time("recurrence", t.elapsed());

        let t = Instant::now();
        for n in 0..=n_max.min(cross_max_n) {
            match reduced_or_skip(n, m, cap)? {
                Some(v) => report.push(compare(m, n, "lhs-cross", &h.values[n as usize], &v)),
                None => report.push(skipped(m, n, "lhs-cross")),
            }
        }
        report.record_time("reduce", t.elapsed());
    }
    Ok(report.finish())
}

/// The algebraic steps of the induction: the three-variable stepping
/// identity (`u-step`, generic variables, `n <= min(n_max, 30)`) and the
/// layer-sum recurrence at order `m` (`layer`, `n <= n_max`).
pub fn verify_proof_steps(m: usize, n_max: u64, cap: u64) -> Result<VerificationReport> {
    let params = Params {
        m_range: (m, m),
        n_range: (0, n_max),
        methods: vec!["polynomial-identity".into(), "quotient-ring".into()],
        variant: None,
        tolerances: BTreeMap::new(),
        enumeration_cap: cap,
    };
    let mut report = VerificationReport::new(format!("verify proof-steps --m {m} --max-n {n_max}"), params);

    let t = Instant::now();
    for n in 0..=n_max.min(U_STEP_MAX_N) {
        match verify_u_step_with_cap(n as u32, cap) {
            Ok(ok) => report.push(boolean(m, n, "u-step", ok)),
            Err(Error::CapExceeded { .. }) => report.push(skipped(m, n, "u-step")),
            Err(e) => return Err(e),
        }
    }
    report.record_time("polynomial-identity", t.elapsed());

    let t = Instant::now();
    for n in 0..=n_max {
        report.push(boolean(m, n, "layer", verify_layer_identity(n, m)?));
    }
    report.record_time("quotient-ring", t.elapsed());
    Ok(report.finish())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::report::Verdict;
    use crate::sympoly::DEFAULT_ENUMERATION_CAP;

    #[test]
    fn identity_small() {
        let r = verify_identity(3, 50, DEFAULT_ENUMERATION_CAP).unwrap();
        assert!(r.passed());
        assert_eq!(r.count("recurrence", Status::Pass), 51);
        assert_eq!(r.count("reduce", Status::Pass), 21);
    }

    #[test]
    fn identity_respects_cap() {
        let r = verify_identity(5, 20, 1000).unwrap();
        assert!(r.passed());
        assert!(r.count("reduce", Status::SkippedCap) > 0);
    }

    #[test]
    fn conjecture_as_stated_breaks_at_order_four() {
        let r = verify_conjecture(4, 10, Variant::AsStated, 12, DEFAULT_ENUMERATION_CAP).unwrap();
        assert_eq!(r.verdict, Verdict::Fail);
        let ce = r.first_counterexample.unwrap();
        assert_eq!((ce.m, ce.n, ce.check.as_str()), (4, 2, "conjecture"));
        assert_eq!((ce.lhs.as_deref(), ce.rhs.as_deref()), (Some("2"), Some("1")));
        // orders 2 and 3 are clean
        assert!(r.cells.iter().filter(|c| c.m < 4).all(|c| c.status == Status::Pass));
        // and the left side was confirmed by the second pipeline
        assert!(r
            .cells
            .iter()
            .filter(|c| c.check == "lhs-cross")
            .all(|c| c.status == Status::Pass));
    }

    #[test]
    fn conjecture_corrected() {
        let r = verify_conjecture(6, 40, Variant::Corrected, 8, DEFAULT_ENUMERATION_CAP).unwrap();
        assert!(r.passed());
        assert!(verify_conjecture(1, 5, Variant::Corrected, 0, 10).is_err());
    }

    #[test]
    fn proof_steps() {
        for m in [2, 3, 6] {
            let r = verify_proof_steps(m, 12, DEFAULT_ENUMERATION_CAP).unwrap();
            assert!(r.passed(), "m={m}");
            assert_eq!(r.count("u-step", Status::Pass), 13);
            assert_eq!(r.count("layer", Status::Pass), 13);
        }
    }

    #[test]
    fn variant_parse() {
        assert_eq!("as-stated".parse::<Variant>().unwrap(), Variant::AsStated);
        assert_eq!("corrected".parse::<Variant>().unwrap(), Variant::Corrected);
        assert!("both".parse::<Variant>().is_err());
    }
}
