use num_bigint::BigInt;

use super::DiscoveryError;
use crate::engine::{domain_hi, domain_lo};
use crate::exact::{BigRat, QSqrt2};

pub const DEFAULT_CELL_BUDGET: usize = 1_000_000;

/// A maximal half-open ε-range `[lo, hi)` on which `v_1..v_N` is constant.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SweepCell {
    pub lo: QSqrt2,
    pub hi: QSqrt2,
    pub prefix: Vec<BigInt>,
}

impl SweepCell {
    pub fn midpoint(&self) -> QSqrt2 {
        (&self.lo + &self.hi).scale(&BigRat::new(1.into(), 2.into()))
    }
}

/// Exact partition of `[lo, hi)` into cells of constant `v_1..v_depth`.
///
/// Only odd steps depend on ε; a cell with value `v` splits at every
/// `ε* = (m/2)√2 − v` strictly inside it, and `ε*` opens the upper cell.
pub fn sweep(lo: &QSqrt2, hi: &QSqrt2, depth: usize, budget: usize) -> Result<Vec<SweepCell>, DiscoveryError> {
    if lo < &domain_lo() || hi > &domain_hi() {
        return Err(DiscoveryError::Domain(format!("[{lo}, {hi}) leaves [1-sqrt2/2, sqrt2/2)")));
    }
    sweep_unchecked(lo, hi, depth, budget)
}

pub(crate) fn sweep_unchecked(
    lo: &QSqrt2,
    hi: &QSqrt2,
    depth: usize,
    budget: usize,
) -> Result<Vec<SweepCell>, DiscoveryError> {
    if lo >= hi {
        return Err(DiscoveryError::Domain(format!("empty range [{lo}, {hi})")));
    }
    if depth < 2 {
        return Err(DiscoveryError::Invalid("sweep depth must be at least 2".into()));
    }
    let mut cells = vec![SweepCell {
        lo: lo.clone(),
        hi: hi.clone(),
        prefix: vec![BigInt::from(1)],
    }];
    let sqrt2 = QSqrt2::sqrt2();
    let half = QSqrt2::ratio(1, 2);
    for n in 1..depth {
        let mut next = Vec::with_capacity(cells.len());
        for cell in cells {
            let v = QSqrt2::from_integer(cell.prefix[n - 1].clone());
            if n % 2 == 0 {
                let mut c = cell;
                c.prefix.push((&sqrt2 * &(&v + &half)).floor());
                next.push(c);
                continue;
            }
            let first = (&sqrt2 * &(&v + &cell.lo)).floor();
            let last = (&sqrt2 * &(&v + &cell.hi)).ceil() - 1;
            let splits = usize::try_from(&last - &first).unwrap_or(usize::MAX);
            if next.len().saturating_add(splits).saturating_add(1) > budget {
                return Err(DiscoveryError::Budget {
                    budget,
                    depth_reached: n,
                });
            }
            let mut start = cell.lo.clone();
            let mut m = first;
            loop {
                let end = if m < last {
                    QSqrt2::half_int(&m + 1, cell.prefix[n - 1].clone())
                } else {
                    cell.hi.clone()
                };
                let mut prefix = cell.prefix.clone();
                prefix.push(m.clone());
                next.push(SweepCell {
                    lo: start,
                    hi: end.clone(),
                    prefix,
                });
                if m >= last {
                    break;
                }
                start = end;
                m += 1;
            }
        }
        cells = next;
    }
    Ok(cells)
}

/// A run of ε over which `v_n` keeps one value.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct StepSegment {
    pub lo: QSqrt2,
    pub hi: QSqrt2,
    pub value: BigInt,
}

/// The step function `ε ↦ v_n(ε)` on `[lo, hi)`, adjacent equal values merged.
pub fn jump_profile(lo: &QSqrt2, hi: &QSqrt2, n: usize, budget: usize) -> Result<Vec<StepSegment>, DiscoveryError> {
    let cells = sweep(lo, hi, n, budget)?;
    let mut out: Vec<StepSegment> = Vec::new();
    for c in cells {
        let value = c.prefix[n - 1].clone();
        match out.last_mut() {
            Some(last) if last.value == value => last.hi = c.hi,
            _ => out.push(StepSegment {
                lo: c.lo,
                hi: c.hi,
                value,
            }),
        }
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::engine::value_at;

    #[test]
    fn depth_two_splits_once() {
        let cells = sweep(&domain_lo(), &domain_hi(), 2, 100).unwrap();
        assert_eq!(cells.len(), 2);
        assert_eq!(cells[0].hi, QSqrt2::half_int(2, 1));
        assert_eq!(cells[0].prefix[1], BigInt::from(1));
        assert_eq!(cells[1].prefix[1], BigInt::from(2));
        let three = sweep(&domain_lo(), &domain_hi(), 3, 100).unwrap();
        assert_eq!(three.len(), 2);
        assert_eq!(three[0].hi, cells[0].hi);
    }

    #[test]
    fn cells_reproduce_direct_generation() {
        let cells = sweep(&domain_lo(), &domain_hi(), 15, 1000).unwrap();
        for c in &cells {
            for e in [c.lo.clone(), c.midpoint()] {
                for (i, want) in c.prefix.iter().enumerate() {
                    assert_eq!(&value_at(&e, i + 1), want);
                }
            }
        }
        for w in cells.windows(2) {
            assert_eq!(w[0].hi, w[1].lo);
            assert_ne!(w[0].prefix, w[1].prefix);
        }
    }

    #[test]
    fn budget_is_enforced() {
        let err = sweep(&domain_lo(), &domain_hi(), 12, 2).unwrap_err();
        assert!(matches!(err, DiscoveryError::Budget { budget: 2, .. }));
    }

    #[test]
    fn outside_domain_rejected() {
        assert!(sweep(&QSqrt2::zero(), &QSqrt2::ratio(1, 2), 4, 10).is_err());
        assert!(sweep(&QSqrt2::ratio(1, 2), &QSqrt2::ratio(1, 2), 4, 10).is_err());
    }

    #[test]
    fn profile_merges_equal_values() {
        let p = jump_profile(&domain_lo(), &domain_hi(), 2, 100).unwrap();
        assert_eq!(p.len(), 2);
        let q = jump_profile(&domain_lo(), &domain_hi(), 1, 100);
        assert!(q.is_err());
    }
}
