use std::fmt;

use super::sweep::sweep_unchecked;
use super::DiscoveryError;
use crate::engine::{delta, domain_hi, domain_lo, exact_trace, theorem_table, Check, GPPairEntry};
use crate::exact::QSqrt2;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Side {
    Left,
    Right,
}

impl fmt::Display for Side {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Side::Left => "left",
            Side::Right => "right",
        })
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct EndpointReport {
    pub index: usize,
    pub side: Side,
    pub endpoint: QSqrt2,
    /// Depth of the local sweep; 0 when the endpoint is a domain bound.
    pub depth: usize,
    pub breakpoints: Vec<QSqrt2>,
    pub checks: Vec<Check>,
}

impl EndpointReport {
    pub fn passed(&self) -> bool {
        self.checks.iter().all(|c| c.pass)
    }
}

fn check(name: &str, pass: bool, witness: String) -> Check {
    Check {
        name: name.into(),
        pass,
        witness,
    }
}

/// Confirms that a row endpoint is exactly where the recurrence jumps.
///
/// For an algebraic row the base-case value `v_{2(l+2)} = ⌊α√2⌋ + 2α` must hold
/// on the inner side and fail on the outer side (probes at `ξ` and `ξ − δ`).
/// Every interior endpoint is also swept over `[ξ − δ, ξ + δ)` at the deepest
/// base-case index of the rows meeting there; exactly one breakpoint, at `ξ`,
/// must appear. The outer ends of the table are domain bounds.
pub fn verify_endpoint(pair: &GPPairEntry, side: Side) -> Result<EndpointReport, DiscoveryError> {
    let xi = match side {
        Side::Left => pair.xi1.clone(),
        Side::Right => pair.xi2.clone(),
    };
    let mut report = EndpointReport {
        index: pair.index,
        side,
        endpoint: xi.clone(),
        depth: 0,
        breakpoints: Vec::new(),
        checks: Vec::new(),
    };
    if (side == Side::Left && xi == domain_lo()) || (side == Side::Right && xi == domain_hi()) {
        report.checks.push(check("domain-bound", true, xi.to_string()));
        return Ok(report);
    }
    if xi <= domain_lo() || xi >= domain_hi() {
        return Err(DiscoveryError::Domain(format!("endpoint {xi} outside the domain")));
    }
    let d = delta();
    let below = &xi - &d;

    if let Some(a) = pair.target.algebraic() {
        let n = a.comp_index();
        let want = a.comp_value();
        let v = |e: &QSqrt2| exact_trace(e, n)[n - 1].clone();
        let (inside, outside) = match side {
            Side::Left => (&xi, &below),
            Side::Right => (&below, &xi),
        };
        let (vi, vo) = (v(inside), v(outside));
        report
            .checks
            .push(check("comp-inside", vi == want, format!("v_{n}={vi}, want {want}")));
        report
            .checks
            .push(check("comp-outside", vo != want, format!("v_{n}={vo}")));
    }

    let depth = theorem_table()
        .iter()
        .filter(|r| r.xi1 == xi || r.xi2 == xi)
        .filter_map(|r| r.target.algebraic().map(|a| a.comp_index()))
        .max()
        .unwrap_or(2);
    report.depth = depth;
    let cells = sweep_unchecked(&below, &(&xi + &d), depth, 1 << 16)?;
    report.breakpoints = cells.iter().skip(1).map(|c| c.lo.clone()).collect();
    let pass = report.breakpoints.len() == 1 && report.breakpoints[0] == xi;
    let witness = report
        .breakpoints
        .iter()
        .map(|b| b.as_half_int().map_or(b.to_string(), |(c, d)| format!("({c},{d})")))
        .collect::<Vec<_>>()
        .join(" ");
    report.checks.push(check("single-breakpoint", pass, witness));
    Ok(report)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::engine::table_row;

    #[test]
    fn second_row_left() {
        let r = verify_endpoint(&table_row(2).unwrap(), Side::Left).unwrap();
        assert!(r.passed(), "{r:?}");
        assert_eq!(r.breakpoints, vec![QSqrt2::half_int(2, 1)]);
    }

    #[test]
    fn outer_ends_are_domain_bounds() {
        let r = verify_endpoint(&table_row(1).unwrap(), Side::Left).unwrap();
        assert!(r.passed());
        assert_eq!(r.depth, 0);
        let r = verify_endpoint(&table_row(8).unwrap(), Side::Right).unwrap();
        assert!(r.passed());
    }

    #[test]
    fn direct_row_has_sweep_only() {
        let r = verify_endpoint(&table_row(5).unwrap(), Side::Right).unwrap();
        assert!(r.passed(), "{r:?}");
        assert_eq!(r.depth, 62);
        assert!(r.checks.iter().all(|c| !c.name.starts_with("comp")));
    }
}
