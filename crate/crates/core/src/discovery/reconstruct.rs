use num_bigint::BigInt;

use super::sweep::sweep;
use super::DiscoveryError;
use crate::engine::{digits_of_target, domain_hi, domain_lo, theorem_table, AlgebraicTarget, PairTarget};
use crate::exact::QSqrt2;

/// A maximal ε-range sharing one digit prefix, with the target found for it.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DiscoveredRow {
    pub lo: QSqrt2,
    pub hi: QSqrt2,
    pub digits: Vec<BigInt>,
    /// `None` marks an unidentified region.
    pub target: Option<PairTarget>,
    /// Table rows whose interval lies inside `[lo, hi)`.
    pub table_rows: Vec<usize>,
    /// The table row equal to this one in both interval and target.
    pub exact_row: Option<usize>,
}

/// Candidate targets: `√2` first, then `(α√2 − β)/2^l` with `α` odd,
/// `α + β = 2^{l+1}`, `t ∈ [0, 2)`, by increasing `l`.
fn candidates(l_bound: u32) -> Vec<PairTarget> {
    let mut out = vec![PairTarget::Sqrt2];
    let two = QSqrt2::from_integer(2);
    for l in 0..=l_bound {
        let top = BigInt::from(1) << (l as usize + 1);
        let mut alpha = BigInt::from(1);
        while alpha < top {
            let t = AlgebraicTarget::new(alpha.clone(), &top - &alpha, l);
            let v = t.value();
            if !v.is_negative() && v < two {
                out.push(PairTarget::Algebraic(t));
            }
            alpha += 2;
        }
    }
    out
}

/// Rebuilds the pair table from a full-domain sweep.
///
/// Cells of depth `depth` are grouped by their first `digit_depth` digits;
/// each group gets the first candidate target whose digits agree.
pub fn reconstruct_table(
    depth: usize,
    digit_depth: usize,
    l_bound: u32,
    budget: usize,
) -> Result<Vec<DiscoveredRow>, DiscoveryError> {
    if digit_depth == 0 || depth < 2 * digit_depth + 1 {
        return Err(DiscoveryError::Invalid("need depth >= 2*digit_depth + 1 and digit_depth >= 1".into()));
    }
    let cells = sweep(&domain_lo(), &domain_hi(), depth, budget)?;
    let mut rows: Vec<DiscoveredRow> = Vec::new();
    for c in cells {
        let p = &c.prefix;
        let digits: Vec<BigInt> = (1..=digit_depth).map(|n| &p[2 * n] - (&p[2 * n - 2] << 1usize)).collect();
        match rows.last_mut() {
            Some(last) if last.digits == digits => last.hi = c.hi,
            _ => rows.push(DiscoveredRow {
                lo: c.lo,
                hi: c.hi,
                digits,
                target: None,
                table_rows: Vec::new(),
                exact_row: None,
            }),
        }
    }

    let cands: Vec<(PairTarget, Vec<BigInt>)> = candidates(l_bound)
        .into_iter()
        .map(|t| {
            let d = digits_of_target(&t.value(), digit_depth).expect("candidates lie in [0, 2)").digits;
            (t, d)
        })
        .collect();
    let table = theorem_table();
    for row in &mut rows {
        row.target = cands.iter().find(|(_, d)| *d == row.digits).map(|(t, _)| t.clone());
        row.table_rows = table
            .iter()
            .filter(|r| row.lo <= r.xi1 && r.xi2 <= row.hi)
            .map(|r| r.index)
            .collect();
        row.exact_row = table
            .iter()
            .find(|r| r.xi1 == row.lo && r.xi2 == row.hi && Some(&r.target) == row.target.as_ref())
            .map(|r| r.index);
    }
    Ok(rows)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn shallow_reconstruction() {
        let rows = reconstruct_table(21, 10, 8, 10_000).unwrap();
        let exact: Vec<_> = rows.iter().filter_map(|r| r.exact_row).collect();
        assert_eq!(exact, vec![1, 2, 3, 4, 8]);
        let merged = rows.iter().find(|r| r.table_rows == vec![5, 6, 7]).unwrap();
        assert_eq!(merged.target, Some(PairTarget::Sqrt2));
    }

    #[test]
    fn coarse_table_is_self_consistent() {
        for r in reconstruct_table(9, 4, 8, 10_000).unwrap() {
            let t = r.target.expect("identified");
            assert_eq!(digits_of_target(&t.value(), 4).unwrap().digits, r.digits);
        }
    }

    #[test]
    fn depth_must_cover_digits() {
        assert!(reconstruct_table(20, 10, 4, 100).is_err());
    }
}
