//! OEIS b-file ingestion: one `index value` pair per line, `#` comments and
//! blank lines ignored.

use num_bigint::BigInt;

use crate::error::{Error, Result};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BFileEntry {
    pub index: u64,
    pub value: BigInt,
    /// 1-based source line.
    pub line: usize,
}

pub fn parse_bfile(text: &str) -> Result<Vec<BFileEntry>> {
    let mut out = Vec::new();
    for (i, raw) in text.lines().enumerate() {
        let line = i + 1;
        let trimmed = raw.trim();
        if trimmed.is_empty() || trimmed.starts_with('#') {
            continue;
        }
        let bad = |message: String| Error::BFile { line, message };
        let mut fields = trimmed.split_whitespace();
        let (Some(idx), Some(val)) = (fields.next(), fields.next()) else {
            return Err(bad(format!("expected \"index value\", found {trimmed:?}")));
        };
        if let Some(extra) = fields.next() {
            return Err(bad(format!("unexpected trailing field {extra:?}")));
        }
        let index = idx
            .parse::<u64>()
            .map_err(|_| bad(format!("index {idx:?} is not a non-negative integer")))?;
        let value = val
            .parse::<BigInt>()
            .map_err(|_| bad(format!("value {val:?} is not an integer")))?;
        out.push(BFileEntry { index, value, line });
    }
    Ok(out)
}

/// A b-file value that disagrees with the computed term.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Mismatch {
    pub index: u64,
    pub expected: BigInt,
    pub computed: BigInt,
    pub line: usize,
}

#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct BFileCheck {
    /// Indices of the window that the b-file covers.
    pub checked: Vec<u64>,
    pub mismatches: Vec<Mismatch>,
}

/// Compares `terms` (holding indices `lo, lo+1, ...`) against the entries
/// that fall inside the window. Those entries must have contiguous indices.
pub fn check_window(entries: &[BFileEntry], lo: u64, terms: &[BigInt]) -> Result<BFileCheck> {
    let hi = lo + terms.len() as u64;
    let mut report = BFileCheck::default();
    let mut prev: Option<u64> = None;
    for e in entries.iter().filter(|e| (lo..hi).contains(&e.index)) {
        if let Some(p) = prev {
            if e.index != p + 1 {
                return Err(Error::BFile {
                    line: e.line,
                    message: format!("gap in indices: expected {}, found {}", p + 1, e.index),
                });
            }
        }
        prev = Some(e.index);
        let computed = &terms[(e.index - lo) as usize];
        report.checked.push(e.index);
        if *computed != e.value {
            report.mismatches.push(Mismatch {
                index: e.index,
                expected: e.value.clone(),
                computed: computed.clone(),
                line: e.line,
            });
        }
    }
    Ok(report)
}
