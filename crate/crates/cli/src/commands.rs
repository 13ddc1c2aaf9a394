use std::fmt::Display;
use std::sync::Arc;

use num_bigint::BigInt;
use num_traits::ToPrimitive;
use serde_json::{json, Value};

use gp_core::discovery::{
    bisect_jump, jump_profile, min_poly_deg2, reconstruct_table, sweep, validate_partition, verify_endpoint,
    IdentifierRegistry, Side, DEFAULT_CELL_BUDGET,
};
use gp_core::engine::{
    certify_pair, closed_form_check, corollary_check, digits_from_trace, first_bad_digit, generate_with,
    normality_probe, table_row, theorem_table, verify_pair, Epsilon, GPPairEntry, PairTarget, SequenceSpec,
};
use gp_core::strategy::{FloorRegistry, IntervalFloor};
use gp_core::{FloorStrategy, QSqrt2};

use crate::report::{Outcome, RunReport, Table};
use crate::{
    Command, CorollaryArgs, CounterexampleArgs, DigitsArgs, DiscoverArgs, NormalityArgs, PairSel, PlotArgs, SideArg,
    SweepArgs, TableArgs, VerifyArgs,
};

type CmdResult = Result<Outcome, String>;

const PLACES: usize = 12;

fn err(e: impl Display) -> String {
    e.to_string()
}

pub(crate) fn dispatch(cmd: &Command) -> CmdResult {
    match cmd {
        Command::Digits(a) => digits(a),
        Command::Verify(a) => verify(a),
        Command::Discover(a) => discover(a),
        Command::Plotdata(a) => plotdata(a),
        Command::Counterexample(a) => counterexample(a),
        Command::Corollary(a) => corollary(a),
        Command::Normality(a) => normality(a),
        Command::Sweep(a) => sweep_cmd(a),
        Command::Table(a) => table(a),
        Command::Strategies => strategies(),
    }
}

/// Commands whose natural output is the table itself.
pub(crate) fn table_is_primary(cmd: &Command) -> bool {
    matches!(cmd, Command::Plotdata(_))
}

fn exact_arg(src: &str) -> Result<QSqrt2, String> {
    match Epsilon::parse(src).map_err(err)? {
        Epsilon::Exact(q) => Ok(q),
        Epsilon::Real(_) => Err(format!("'{src}' is not an element of Q(sqrt2)")),
    }
}

fn range_arg(src: &str) -> Result<(QSqrt2, QSqrt2), String> {
    let (a, b) = src
        .split_once(':')
        .ok_or_else(|| format!("range '{src}' must look like lo:hi"))?;
    let (lo, hi) = (exact_arg(a)?, exact_arg(b)?);
    if lo >= hi {
        return Err(format!("empty range {src}"));
    }
    Ok((lo, hi))
}

fn big_json(n: &BigInt) -> Value {
    match n.to_i64() {
        Some(v) => json!(v),
        None => json!(n.to_string()),
    }
}

fn cd_text(q: &QSqrt2) -> (String, String) {
    match q.as_half_int() {
        Some((c, d)) => (c.to_string(), d.to_string()),
        None => (String::new(), String::new()),
    }
}

fn q_json(q: &QSqrt2) -> Value {
    let mut v = json!({ "exact": q.to_string(), "decimal": q.to_decimal(PLACES) });
    if let Some((c, d)) = q.as_half_int() {
        v["c"] = big_json(&c);
        v["d"] = big_json(&d);
    }
    v
}

fn target_text(t: &PairTarget) -> String {
    match t {
        PairTarget::Sqrt2 => "sqrt2".into(),
        PairTarget::Algebraic(a) => format!("({}*sqrt2-{})/2^{}", a.alpha, a.beta, a.l),
    }
}

fn digits(a: &DigitsArgs) -> CmdResult {
    let mut r = RunReport::new("digits");
    r.input("epsilon", a.epsilon.canonical());
    r.input("count", a.count);
    if a.count == 0 {
        return Err("count must be at least 1".into());
    }
    let registry = FloorRegistry::default();
    let name = match &a.floor {
        Some(n) => n.as_str(),
        None => registry.default_for(&a.epsilon.value).name(),
    };
    let strategy: Arc<dyn FloorStrategy> = match (name, a.max_bits) {
        ("interval", Some(max_bits)) => Arc::new(IntervalFloor { max_bits }),
        _ => registry
            .get(name)
            .ok_or_else(|| format!("unknown floor strategy '{name}' (have: {})", registry.names().join(", ")))?,
    };
    r.input("floor", strategy.name());
    if let Some(bits) = a.max_bits {
        r.input("max_bits", bits);
    }
    let spec = SequenceSpec::new(a.epsilon.value.clone(), 2 * a.count + 1).map_err(err)?;
    let trace = generate_with(&spec, strategy.as_ref()).map_err(err)?;
    let ds = digits_from_trace(&trace, a.count).map_err(err)?;

    let mut table = Table::new(&["n", "digit"]);
    for (i, d) in ds.digits.iter().enumerate() {
        table.push(vec![(i + 1).to_string(), d.to_string()]);
    }
    let bad: Vec<(usize, &BigInt)> = ds
        .digits
        .iter()
        .enumerate()
        .filter(|(_, d)| **d != BigInt::from(0) && **d != BigInt::from(1))
        .map(|(i, d)| (i + 1, d))
        .collect();
    for (n, d) in &bad {
        r.anomaly(format!("d_{n} = {d}"));
    }
    r.check(
        "binary-digits",
        bad.is_empty(),
        bad.first().map_or("all digits in {0,1}".to_string(), |(n, d)| format!("d_{n} = {d}")),
    );
    r.output("digits", Value::Array(ds.digits.iter().map(big_json).collect()));
    r.output(
        "text",
        ds.digits.iter().map(|d| d.to_string()).collect::<Vec<_>>().join(" "),
    );
    Ok(Outcome {
        report: r,
        table: Some(table),
    })
}

fn rows_for(sel: PairSel) -> Vec<GPPairEntry> {
    match sel {
        PairSel::All => theorem_table(),
        PairSel::Row(i) => vec![table_row(i).expect("validated by the parser")],
    }
}

fn verify(a: &VerifyArgs) -> CmdResult {
    let mut r = RunReport::new("verify");
    r.input("pair", match a.pair {
        PairSel::All => "all".to_string(),
        PairSel::Row(i) => i.to_string(),
    });
    r.input("depth", a.depth);
    if a.depth == 0 {
        return Err("depth must be at least 1".into());
    }
    let mut rows_out = Vec::new();
    for pair in rows_for(a.pair) {
        let i = pair.index;
        let mut row_pass = true;
        for (label, eps) in ["xi1", "mid", "xi2-delta"].iter().zip(pair.samples()) {
            let m = verify_pair(&pair, &Epsilon::Exact(eps), a.depth).map_err(err)?;
            let witness = match &m.first_mismatch {
                None => format!("{} digits match", m.checked),
                Some(x) => format!("d_{}: trace {} target {}", x.index, x.trace_digit, x.target_digit),
            };
            row_pass &= m.matched();
            r.check(format!("row{i}/digits@{label}"), m.matched(), witness);
        }
        let mut row = json!({
            "row": i,
            "xi1": q_json(&pair.xi1),
            "xi2": q_json(&pair.xi2),
            "target": target_text(&pair.target),
        });
        if pair.is_direct() {
            let cf = closed_form_check(&pair, &QSqrt2::ratio(1, 2), 1..=50).map_err(err)?;
            for form in &cf.forms {
                let required = form.form != "even-printed";
                let witness = match form.mismatches.first() {
                    None => format!("{} values", form.checked),
                    Some(m) => format!("k={}: expected {} got {}", m.k, m.expected, m.actual),
                };
                if required {
                    row_pass &= form.holds();
                    r.check(format!("row{i}/closed-form/{}", form.form), form.holds(), witness);
                } else if !form.holds() {
                    r.note(format!(
                        "row {i}: even form with 2^(k-2) differs ({} of {} k); the 2^(k-1) form holds",
                        form.mismatches.len(),
                        form.checked
                    ));
                }
            }
            r.note(format!(
                "row {i}: epsilon interval [{}, {})",
                pair.xi1.to_decimal(7),
                pair.xi2.to_decimal(7)
            ));
        } else {
            let cert = certify_pair(&pair).map_err(err)?;
            for c in &cert.checks {
                row_pass &= c.pass;
                r.check(format!("row{i}/{}", c.name), c.pass, c.witness.clone());
            }
            row["comp_index"] = json!(cert.comp_index);
            row["comp_value"] = big_json(&cert.comp_value);
            r.note(format!("row {i}: v_{} = {} on the whole interval", cert.comp_index, cert.comp_value));
        }
        row["pass"] = json!(row_pass);
        rows_out.push(row);
    }
    let passed = rows_out.iter().filter(|v| v["pass"] == json!(true)).count();
    r.output("rows", Value::Array(rows_out.clone()));
    r.output("passed", format!("{passed}/{}", rows_out.len()));
    Ok(r.into())
}

/// Jump index and threshold whose `inf{ε : v_n(ε) ≥ target}` is the requested endpoint.
fn jump_for(pair: &GPPairEntry, side: Side) -> Option<(usize, BigInt, usize)> {
    let (owner, owner_side) = match (pair.target.algebraic(), side) {
        (Some(_), _) => (pair.clone(), side),
        (None, Side::Left) => (table_row(pair.index - 1)?, Side::Right),
        (None, Side::Right) => (table_row(pair.index + 1)?, Side::Left),
    };
    let t = owner.target.algebraic()?;
    let v = t.comp_value();
    let target = match owner_side {
        Side::Left => v,
        Side::Right => v + 1,
    };
    Some((t.comp_index(), target, owner.index))
}

fn discover(a: &DiscoverArgs) -> CmdResult {
    let mut r = RunReport::new("discover");
    r.input("row", a.row);
    let side = match a.side {
        SideArg::Left => Side::Left,
        SideArg::Right => Side::Right,
    };
    r.input("side", side);
    r.input("tol_bits", a.tol_bits);
    r.input("bound", &a.bound);
    r.input("window", &a.window);
    r.input("identifier", &a.identifier);
    let pair = table_row(a.row).ok_or_else(|| format!("row must be 1..8, got {}", a.row))?;
    let ids = IdentifierRegistry::default();
    let identifier = ids
        .get(&a.identifier)
        .ok_or_else(|| format!("unknown identifier '{}' (have: {})", a.identifier, ids.names().join(", ")))?;
    let (lo, hi) = range_arg(&a.window)?;
    if !lo.is_rational() || !hi.is_rational() {
        return Err("window ends must be rational".into());
    }
    let (lo, hi) = (lo.rational_part().clone(), hi.rational_part().clone());

    let ep = verify_endpoint(&pair, side).map_err(err)?;
    if ep.depth == 0 {
        for c in &ep.checks {
            r.check(c.name.clone(), c.pass, c.witness.clone());
        }
        r.output("endpoint", q_json(&ep.endpoint));
        r.note(format!("{side} endpoint of row {} is a bound of the epsilon domain", a.row));
        return Ok(r.into());
    }

    let (n, target, owner) = jump_for(&pair, side).ok_or("no algebraic row meets this endpoint")?;
    r.output("n", n);
    r.output("target", big_json(&target));
    if owner != pair.index {
        r.note(format!("endpoint shared with row {owner}; jump of its base-case index"));
    }
    let enc = bisect_jump(n, &target, &lo, &hi, a.tol_bits).map_err(err)?;
    r.output(
        "bracket",
        json!({ "lo": enc.lo().to_string(), "hi": enc.hi().to_string() }),
    );
    let found = identifier.identify(&enc, &a.bound).map_err(err)?;
    let (c, d) = cd_text(&found.value);
    r.output("c", c.clone());
    r.output("d", d.clone());
    r.output("endpoint", q_json(&found.value));
    r.output("poly", found.poly.to_string());
    r.check(
        "identified",
        enc.contains_exact(&found.value),
        format!("(c,d) = ({c},{d}) inside bracket"),
    );

    // Independent recovery by generic quadratic relation on a tighter bracket.
    let pb = BigInt::from(4) * &a.bound * &a.bound;
    let bits = 3 * pb.bits() as u32 + 16;
    let fine = bisect_jump(n, &target, enc.lo(), enc.hi(), bits).map_err(err)?;
    let poly = min_poly_deg2(&fine, &pb).map_err(err)?;
    let root = poly.root_in(&fine);
    r.output("min_poly", poly.to_string());
    r.check(
        "min-poly",
        root.as_ref() == Some(&found.value),
        format!("{poly} at {bits} bits"),
    );

    r.check(
        "table-endpoint",
        found.value == ep.endpoint,
        format!("row {} {side} = {}", a.row, ep.endpoint),
    );
    for c in &ep.checks {
        r.check(format!("endpoint/{}", c.name), c.pass, c.witness.clone());
    }
    Ok(r.into())
}

fn plotdata(a: &PlotArgs) -> CmdResult {
    let mut r = RunReport::new("plotdata");
    r.input("figure", a.figure);
    let table = match a.figure {
        1 => {
            let mut t = Table::new(&["row", "lo_c", "lo_d", "hi_c", "hi_d", "lo", "hi", "target", "t"]);
            let rows = theorem_table();
            let part = validate_partition(&rows);
            r.check("partition", part.passed(), format!("{} rows tile the domain", part.rows));
            for p in &rows {
                let (lc, ld) = cd_text(&p.xi1);
                let (hc, hd) = cd_text(&p.xi2);
                t.push(vec![
                    p.index.to_string(),
                    lc,
                    ld,
                    hc,
                    hd,
                    p.xi1.to_decimal(PLACES),
                    p.xi2.to_decimal(PLACES),
                    target_text(&p.target),
                    p.target.value().to_decimal(PLACES),
                ]);
            }
            t
        }
        2 => {
            r.input("range", &a.range);
            r.input("depth", a.depth);
            let (lo, hi) = range_arg(&a.range)?;
            let budget = a.budget.unwrap_or(DEFAULT_CELL_BUDGET);
            let segs = jump_profile(&lo, &hi, a.depth, budget).map_err(err)?;
            let mut t = Table::new(&[
                "lo_c", "lo_d", "hi_c", "hi_d", "lo_exact", "hi_exact", "lo", "hi", "v",
            ]);
            for s in &segs {
                let (lc, ld) = cd_text(&s.lo);
                let (hc, hd) = cd_text(&s.hi);
                t.push(vec![
                    lc,
                    ld,
                    hc,
                    hd,
                    s.lo.to_string(),
                    s.hi.to_string(),
                    s.lo.to_decimal(PLACES),
                    s.hi.to_decimal(PLACES),
                    s.value.to_string(),
                ]);
            }
            let jumps: Vec<Value> = segs.iter().skip(1).map(|s| q_json(&s.lo)).collect();
            r.output("jumps", Value::Array(jumps));
            r.output("segments", segs.len());
            t
        }
        f => return Err(format!("figure must be 1 or 2, got {f}")),
    };
    r.output("rows", table.rows.len());
    match &a.out {
        Some(path) => {
            std::fs::write(path, table.to_csv()).map_err(|e| format!("{}: {e}", path.display()))?;
            r.input("out", path.display());
            Ok(r.into())
        }
        None => Ok(Outcome {
            report: r,
            table: Some(table),
        }),
    }
}

fn counterexample(a: &CounterexampleArgs) -> CmdResult {
    let mut r = RunReport::new("counterexample");
    r.input("epsilon", a.epsilon.canonical());
    r.input("limit", a.limit);
    match first_bad_digit(&a.epsilon.value, a.limit).map_err(err)? {
        Some((n, d)) => {
            r.anomaly(format!("d_{n} = {d}"));
            r.output("index", n);
            r.output("digit", big_json(&d));
        }
        None => {
            r.note(format!("d_1..d_{} all in {{0,1}}", a.limit));
            r.output("index", Value::Null);
        }
    }
    Ok(r.into())
}

fn corollary(a: &CorollaryArgs) -> CmdResult {
    let mut r = RunReport::new("corollary");
    r.input("max_n", a.max_n);
    r.input("max_bits", a.max_bits);
    let rep = corollary_check(a.max_n, a.max_bits).map_err(err)?;
    r.check(
        "identity",
        rep.identity_holds,
        "759250125*sqrt2 = 2^29*t + 314491699",
    );
    let witness = match rep.mismatches.first() {
        None => format!("digits n+1 agree for 31 <= n <= {}", rep.max_n),
        Some(m) => format!("n={}: trace {} binary {}", m.n, m.trace_digit, m.binary_digit),
    };
    r.check("digits", rep.mismatches.is_empty(), witness);
    r.output("integer_bits", rep.integer_bits);
    r.output("first_agreement", rep.first_agreement);
    r.output("mismatches", rep.mismatches.len());
    Ok(r.into())
}

fn normality(a: &NormalityArgs) -> CmdResult {
    let mut r = RunReport::new("normality");
    r.input("multiplier", a.multiplier);
    r.input("k", a.k);
    let rep = normality_probe(a.multiplier, a.k).map_err(err)?;
    r.output("exponent_offset", rep.exponent_offset);
    r.output("min_frac", q_json(&rep.min_frac));
    r.output("argmin", rep.argmin);
    r.output("max_frac", q_json(&rep.max_frac));
    r.output("argmax", rep.argmax);
    Ok(r.into())
}

fn sweep_cmd(a: &SweepArgs) -> CmdResult {
    let mut r = RunReport::new("sweep");
    let (lo, hi) = (exact_arg(&a.lo)?, exact_arg(&a.hi)?);
    r.input("lo", &lo);
    r.input("hi", &hi);
    r.input("depth", a.depth);
    let budget = a.budget.unwrap_or(DEFAULT_CELL_BUDGET);
    let cells = sweep(&lo, &hi, a.depth, budget).map_err(err)?;
    let mut t = Table::new(&[
        "lo_c", "lo_d", "hi_c", "hi_d", "lo_exact", "hi_exact", "lo", "hi", "v_prefix",
    ]);
    let mut out = Vec::new();
    for c in &cells {
        let (lc, ld) = cd_text(&c.lo);
        let (hc, hd) = cd_text(&c.hi);
        let prefix = c.prefix.iter().map(|v| v.to_string()).collect::<Vec<_>>().join(" ");
        t.push(vec![
            lc,
            ld,
            hc,
            hd,
            c.lo.to_string(),
            c.hi.to_string(),
            c.lo.to_decimal(PLACES),
            c.hi.to_decimal(PLACES),
            prefix.clone(),
        ]);
        out.push(json!({ "lo": q_json(&c.lo), "hi": q_json(&c.hi), "v_prefix": prefix }));
    }
    r.output("cells", Value::Array(out));
    Ok(Outcome {
        report: r,
        table: Some(t),
    })
}

fn table(a: &TableArgs) -> CmdResult {
    let mut r = RunReport::new("table");
    r.input("depth", a.depth);
    r.input("digit_depth", a.digit_depth);
    r.input("l_bound", a.l_bound);
    let budget = a.budget.unwrap_or(DEFAULT_CELL_BUDGET);
    let rows = reconstruct_table(a.depth, a.digit_depth, a.l_bound, budget).map_err(err)?;
    let mut t = Table::new(&["lo_c", "lo_d", "hi_c", "hi_d", "lo", "hi", "target", "table_rows", "exact_row"]);
    let mut out = Vec::new();
    for row in &rows {
        let (lc, ld) = cd_text(&row.lo);
        let (hc, hd) = cd_text(&row.hi);
        let target = row.target.as_ref().map_or("?".to_string(), target_text);
        let members = row.table_rows.iter().map(|i| i.to_string()).collect::<Vec<_>>().join(" ");
        let exact = row.exact_row.map_or(String::new(), |i| i.to_string());
        if row.target.is_none() {
            r.note(format!("no target found for [{}, {})", row.lo.to_decimal(PLACES), row.hi.to_decimal(PLACES)));
        }
        out.push(json!({
            "lo": q_json(&row.lo),
            "hi": q_json(&row.hi),
            "target": target,
            "table_rows": row.table_rows,
            "exact_row": row.exact_row,
        }));
        t.push(vec![
            lc,
            ld,
            hc,
            hd,
            row.lo.to_decimal(PLACES),
            row.hi.to_decimal(PLACES),
            target,
            members,
            exact,
        ]);
    }
    let exact: Vec<usize> = rows.iter().filter_map(|r| r.exact_row).collect();
    let covered = theorem_table()
        .iter()
        .all(|p| rows.iter().any(|row| row.table_rows.contains(&p.index)));
    r.check("covers-table", covered, format!("exact rows {exact:?}"));
    r.output("rows", Value::Array(out));
    Ok(Outcome {
        report: r,
        table: Some(t),
    })
}

fn strategies() -> CmdResult {
    let mut r = RunReport::new("strategies");
    let floors = FloorRegistry::default();
    let ids = IdentifierRegistry::default();
    let list = |pairs: Vec<(&str, &str)>| {
        Value::Array(pairs.into_iter().map(|(n, s)| json!({ "name": n, "summary": s })).collect())
    };
    r.output(
        "floor",
        list(floors.names().into_iter().map(|n| (n, floors.get(n).unwrap().summary())).collect()),
    );
    r.output(
        "identifier",
        list(ids.names().into_iter().map(|n| (n, ids.get(n).unwrap().summary())).collect()),
    );
    Ok(r.into())
}
