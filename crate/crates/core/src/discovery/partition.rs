use crate::engine::{domain_hi, domain_lo, GPPairEntry};
use crate::exact::QSqrt2;

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum PartitionIssue {
    Empty,
    Unsorted { row: usize },
    BadStart { at: QSqrt2 },
    BadEnd { at: QSqrt2 },
    /// Uncovered `[from, to)` between two rows.
    Gap { after_row: usize, from: QSqrt2, to: QSqrt2 },
    /// Rows `after_row` and the next share `[from, to)`.
    Overlap { after_row: usize, from: QSqrt2, to: QSqrt2 },
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PartitionReport {
    pub rows: usize,
    pub issues: Vec<PartitionIssue>,
}

impl PartitionReport {
    pub fn passed(&self) -> bool {
        self.issues.is_empty()
    }
}

/// Checks that the half-open row intervals are sorted, adjacent and tile `[1 − √2/2, √2/2)`.
pub fn validate_partition(entries: &[GPPairEntry]) -> PartitionReport {
    let mut issues = Vec::new();
    if entries.is_empty() {
        issues.push(PartitionIssue::Empty);
        return PartitionReport { rows: 0, issues };
    }
    for w in entries.windows(2) {
        if w[1].xi1 < w[0].xi1 {
            issues.push(PartitionIssue::Unsorted { row: w[1].index });
        }
    }
    let first = &entries[0];
    if first.xi1 != domain_lo() {
        issues.push(PartitionIssue::BadStart { at: first.xi1.clone() });
    }
    let last = &entries[entries.len() - 1];
    if last.xi2 != domain_hi() {
        issues.push(PartitionIssue::BadEnd { at: last.xi2.clone() });
    }
    for w in entries.windows(2) {
        let (a, b) = (&w[0], &w[1]);
        if a.xi2 < b.xi1 {
            issues.push(PartitionIssue::Gap {
                after_row: a.index,
                from: a.xi2.clone(),
                to: b.xi1.clone(),
            });
        } else if a.xi2 > b.xi1 {
            issues.push(PartitionIssue::Overlap {
                after_row: a.index,
                from: b.xi1.clone(),
                to: a.xi2.clone(),
            });
        }
    }
    PartitionReport {
        rows: entries.len(),
        issues,
    }
}
