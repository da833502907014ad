//! Verification suites: each row puts a closed form next to the exact solver and, where one
//! exists, an explicit construction.

use std::fmt;
use std::fmt::Write as _;
use std::ops::RangeInclusive;
use std::str::FromStr;

use serde_json::{json, Value};

use crate::constructions::{
    color_line_star_product, color_power_star_product, color_star_product, color_total_star_product, cyclic_grid,
    power3_from_grid, rook_grid_coloring, star_product, Construction, ConstructionError,
};
use crate::formulas::{
    m_degree_formula, phi_line_star_product, phi_rook_bounds, phi_star_product, phi_star_product_power,
    phi_total_star_product, MDegreeFamily, PhiResult, ROOK_TABLE,
};
use crate::graph::{complete, Graph};
use crate::operators::{cartesian_product, graph_power, line_graph, total_graph};
use crate::solver::{self, SearchConfig, SolverError};
use crate::SCHEMA;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Suite {
    StarProduct,
    LineStarProduct,
    TotalStarProduct,
    StarProductPower,
    Rook,
    MDegree,
    Counts,
}

impl Suite {
    pub const ALL: [Suite; 7] = [
        Suite::StarProduct,
        Suite::LineStarProduct,
        Suite::TotalStarProduct,
        Suite::StarProductPower,
        Suite::Rook,
        Suite::MDegree,
        Suite::Counts,
    ];

    pub fn as_str(self) -> &'static str {
        match self {
            Suite::StarProduct => "star-product",
            Suite::LineStarProduct => "line-star-product",
            Suite::TotalStarProduct => "total-star-product",
            Suite::StarProductPower => "star-product-power",
            Suite::Rook => "rook",
            Suite::MDegree => "mdegree",
            Suite::Counts => "counts",
        }
    }
}

impl fmt::Display for Suite {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for Suite {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let alias = match s {
            "line" => "line-star-product",
            "total" => "total-star-product",
            "power" => "star-product-power",
            "m-degree" => "mdegree",
            "count" => "counts",
            other => other,
        };
        Suite::ALL.into_iter().find(|x| x.as_str() == alias).ok_or_else(|| {
            let names: Vec<&str> = Suite::ALL.iter().map(|x| x.as_str()).collect();
            format!("unknown suite {s:?}; expected one of {}", names.join(", "))
        })
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Agreement {
    Match,
    BoundsContain,
    /// The closed form does not apply; the solver value stands.
    SolverArbitrated,
    /// The solver ran out of budget; only the construction was checked.
    Budget,
    Mismatch,
}

impl Agreement {
    pub fn as_str(self) -> &'static str {
        match self {
            Agreement::Match => "match",
            Agreement::BoundsContain => "bounds-contain",
            Agreement::SolverArbitrated => "solver-arbitrated",
            Agreement::Budget => "budget",
            Agreement::Mismatch => "MISMATCH",
        }
    }
}

/// What the solver said about a row.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum SolverCell {
    Value(u128),
    Budget(String),
    Skipped,
}

#[derive(Debug, Clone, PartialEq)]
pub struct VerifyRow {
    pub parameters: Vec<(&'static str, usize)>,
    /// Inclusive interval predicted by the closed form or the reference count.
    pub expected: Option<(u128, u128)>,
    pub expected_source: String,
    pub solver: SolverCell,
    pub construction_k: Option<u32>,
    pub certificate_valid: Option<bool>,
    pub agreement: Agreement,
    pub note: Option<String>,
}

impl VerifyRow {
    fn new(parameters: Vec<(&'static str, usize)>) -> Self {
        VerifyRow {
            parameters,
            expected: None,
            expected_source: String::new(),
            solver: SolverCell::Skipped,
            construction_k: None,
            certificate_valid: None,
            agreement: Agreement::Match,
            note: None,
        }
    }

    fn expect_phi(&mut self, r: &PhiResult) {
        self.expected = Some((r.lower() as u128, r.upper() as u128));
        self.expected_source = r.source.to_string();
        if !r.preconditions_met {
            self.note = Some(r.explanation.clone());
        }
    }

    fn expected_text(&self) -> String {
        match self.expected {
            Some((a, b)) if a == b => a.to_string(),
            Some((a, b)) => format!("[{a}, {b}]"),
            None => "-".into(),
        }
    }

    fn params_text(&self) -> String {
        self.parameters.iter().map(|(k, v)| format!("{k}={v}")).collect::<Vec<_>>().join(" ")
    }

    // Combines the three columns into an agreement; `arbitrated` marks rows outside the hypothesis.
    fn settle(&mut self, arbitrated: bool) {
        let exact = self.expected.filter(|(a, b)| a == b).map(|(a, _)| a);
        let within = |v: u128| self.expected.is_none_or(|(a, b)| a <= v && v <= b);
        let mut mismatch = self.certificate_valid == Some(false);
        if let Some(k) = self.construction_k {
            let k = k as u128;
            mismatch |= !within(k) && !arbitrated;
            mismatch |= exact.is_some_and(|e| e != k) && !arbitrated;
        }
        if let SolverCell::Value(v) = self.solver {
            mismatch |= !within(v);
            if let Some(k) = self.construction_k {
                mismatch |= k as u128 > v;
            }
        }
        self.agreement = if mismatch {
            Agreement::Mismatch
        } else if arbitrated {
            Agreement::SolverArbitrated
        } else if matches!(self.solver, SolverCell::Budget(_)) {
            Agreement::Budget
        } else if exact.is_some() || self.expected.is_none() {
            Agreement::Match
        } else {
            Agreement::BoundsContain
        };
    }

    pub fn to_json(&self) -> Value {
        let params: serde_json::Map<String, Value> = self.parameters.iter().map(|(k, v)| (k.to_string(), json!(v))).collect();
        let solver = match &self.solver {
            SolverCell::Value(v) => u64::try_from(*v).map_or_else(|_| json!(v.to_string()), Value::from),
            SolverCell::Budget(why) => json!({ "budget_exhausted": why }),
            SolverCell::Skipped => Value::Null,
        };
        let expected = match self.expected {
            Some((a, b)) if a == b => json!(a as u64),
            Some((a, b)) => json!({ "lower": a as u64, "upper": b as u64 }),
            None => Value::Null,
        };
        json!({
            "parameters": params,
            "expected": expected,
            "expected_source": self.expected_source,
            "solver": solver,
            "construction_k": self.construction_k,
            "certificate_valid": self.certificate_valid,
            "agreement": self.agreement.as_str(),
            "note": self.note,
        })
    }
}

#[derive(Debug, Clone)]
pub struct VerifyOptions {
    pub n: RangeInclusive<usize>,
    pub m: RangeInclusive<usize>,
    /// Power for [`Suite::StarProductPower`].
    pub k: usize,
    /// Family for [`Suite::MDegree`]; `None` runs all five.
    pub family: Option<MDegreeFamily>,
    /// Skip the exact solver and check formulas against constructions only.
    pub skip_solver: bool,
    pub search: SearchConfig,
}

impl Default for VerifyOptions {
    fn default() -> Self {
        VerifyOptions { n: 2..=5, m: 2..=5, k: 2, family: None, skip_solver: false, search: SearchConfig::default() }
    }
}

#[derive(Debug, Clone)]
pub struct VerifyReport {
    pub suite: Suite,
    pub rows: Vec<VerifyRow>,
}

impl VerifyReport {
    pub fn mismatches(&self) -> usize {
        self.rows.iter().filter(|r| r.agreement == Agreement::Mismatch).count()
    }

    pub fn to_json(&self) -> Value {
        json!({
            "schema": SCHEMA,
            "suite": self.suite.as_str(),
            "mismatches": self.mismatches(),
            "rows": self.rows.iter().map(VerifyRow::to_json).collect::<Vec<_>>(),
        })
    }

    pub fn to_text(&self) -> String {
        let header = ["parameters", "expected", "source", "solver", "construction", "valid", "agreement"];
        let mut table: Vec<[String; 7]> = vec![header.map(String::from)];
        for r in &self.rows {
            let solver = match &r.solver {
                SolverCell::Value(v) => v.to_string(),
                SolverCell::Budget(_) => "budget".into(),
                SolverCell::Skipped => "-".into(),
            };
            table.push([
                r.params_text(),
                r.expected_text(),
                r.expected_source.clone(),
                solver,
                r.construction_k.map_or("-".into(), |k| k.to_string()),
                r.certificate_valid.map_or("-".into(), |v| v.to_string()),
                r.agreement.as_str().to_string(),
            ]);
        }
        let widths: Vec<usize> = (0..7).map(|c| table.iter().map(|row| row[c].chars().count()).max().unwrap_or(0)).collect();
        let mut out = String::new();
        for row in &table {
            let line: Vec<String> = row.iter().zip(&widths).map(|(cell, &w)| format!("{cell:<w$}")).collect();
            let _ = writeln!(out, "{}", line.join("  ").trim_end());
        }
        let _ = writeln!(out, "{} rows, {} mismatches", self.rows.len(), self.mismatches());
        out
    }
}

fn pairs(opts: &VerifyOptions) -> Vec<(usize, usize)> {
    let mut out = Vec::new();
    for n in opts.n.clone() {
        for m in opts.m.clone() {
            if m <= n {
                out.push((n, m));
            }
        }
    }
    out
}

fn solve_phi(g: &Graph, opts: &VerifyOptions) -> SolverCell {
    if opts.skip_solver {
        return SolverCell::Skipped;
    }
    match solver::b_chromatic_number(g, &opts.search) {
        Ok(r) => SolverCell::Value(r.phi as u128),
        Err(e) => SolverCell::Budget(e.to_string()),
    }
}

fn record(row: &mut VerifyRow, built: Result<Construction, ConstructionError>) {
    match built {
        Ok(c) => {
            row.construction_k = Some(c.k());
            row.certificate_valid = Some(crate::coloring::is_valid_certificate(&c.graph, &c.certificate));
        }
        Err(ConstructionError::Discrepancy { actual, claimed, .. }) => {
            row.note = Some(format!("construction refused: pattern gives {claimed}, exact value {actual}"));
        }
        Err(e) => {
            row.certificate_valid = Some(false);
            row.note = Some(e.to_string());
        }
    }
}

/// Runs one suite. Budget exhaustion marks the row and the run continues.
pub fn run_suite(suite: Suite, opts: &VerifyOptions) -> VerifyReport {
    let rows = match suite {
        Suite::StarProduct => pairs(opts)
            .into_iter()
            .map(|(n, m)| {
                let mut row = VerifyRow::new(vec![("n", n), ("m", m)]);
                let f = phi_star_product(n, m);
                row.expect_phi(&f);
                row.solver = solve_phi(&star_product(n, m).graph, opts);
                record(&mut row, color_star_product(n, m));
                row.settle(!f.preconditions_met);
                row
            })
            .collect(),
        Suite::LineStarProduct => pairs(opts)
            .into_iter()
            .filter(|&(_, m)| m >= 1)
            .map(|(n, m)| {
                let mut row = VerifyRow::new(vec![("n", n), ("m", m)]);
                row.expect_phi(&phi_line_star_product(n, m).expect("m >= 1"));
                let g = line_graph(&star_product(n, m).graph).expect("products of stars have edges");
                row.solver = solve_phi(&g, opts);
                record(&mut row, color_line_star_product(n, m));
                row.settle(false);
                row
            })
            .collect(),
        Suite::TotalStarProduct => pairs(opts)
            .into_iter()
            .filter(|&(_, m)| m >= 3)
            .map(|(n, m)| {
                let mut row = VerifyRow::new(vec![("n", n), ("m", m)]);
                row.expect_phi(&phi_total_star_product(n, m).expect("m >= 3"));
                let g = total_graph(&star_product(n, m).graph).expect("total graph");
                row.solver = solve_phi(&g, opts);
                record(&mut row, color_total_star_product(n, m));
                row.settle(false);
                row
            })
            .collect(),
        Suite::StarProductPower => pairs(opts)
            .into_iter()
            .filter(|&(_, m)| m >= 1)
            .map(|(n, m)| {
                let k = opts.k.max(1);
                let mut row = VerifyRow::new(vec![("n", n), ("m", m), ("k", k)]);
                let f = phi_star_product_power(n, m, k).expect("k >= 1");
                row.expect_phi(&f);
                let g = graph_power(&star_product(n, m).graph, k).expect("k >= 1");
                row.solver = solve_phi(&g, opts);
                let tabled = ROOK_TABLE.iter().any(|&(key, _)| key == (n, m));
                let built = if k == 3 && tabled {
                    rook_grid_coloring(n).and_then(|grid| power3_from_grid(n, m, &grid))
                } else {
                    color_power_star_product(n, m, k)
                };
                record(&mut row, built);
                row.settle(!f.preconditions_met);
                row
            })
            .collect(),
        Suite::Rook => pairs(opts)
            .into_iter()
            .filter(|&(_, m)| m >= 1)
            .map(|(n, m)| {
                let mut row = VerifyRow::new(vec![("n", n), ("m", m)]);
                row.expect_phi(&phi_rook_bounds(n, m));
                let g = cartesian_product(&complete(n).expect("n >= 1"), &complete(m).expect("m >= 1"))
                    .expect("non-empty")
                    .graph;
                row.solver = solve_phi(&g, opts);
                let grid = if m == 3 { rook_grid_coloring(n) } else { Ok(cyclic_grid(n, m)) };
                record(&mut row, grid.and_then(|g| g.to_certificate()));
                row.settle(false);
                row
            })
            .collect(),
        Suite::MDegree => {
            let families = opts.family.map_or(MDegreeFamily::ALL.to_vec(), |f| vec![f]);
            let mut rows = Vec::new();
            for family in families {
                for (n, m) in pairs(opts) {
                    let Ok(formula) = m_degree_formula(family, n, m) else { continue };
                    let p = star_product(n, m).graph;
                    let g = match family {
                        MDegreeFamily::StarProduct => p,
                        MDegreeFamily::LineStarProduct => line_graph(&p).expect("edges"),
                        MDegreeFamily::TotalStarProduct => total_graph(&p).expect("total"),
                        MDegreeFamily::Power2 => graph_power(&p, 2).expect("k = 2"),
                        MDegreeFamily::Power3 => graph_power(&p, 3).expect("k = 3"),
                    };
                    let mut row = VerifyRow::new(vec![("n", n), ("m", m)]);
                    row.expected = Some((formula as u128, formula as u128));
                    row.expected_source = family.as_str().to_string();
                    row.solver = SolverCell::Value(solver::m_degree(&g) as u128);
                    row.settle(false);
                    rows.push(row);
                }
            }
            rows
        }
        Suite::Counts => PUBLISHED_COUNTS
            .iter()
            .map(|&(n, m, k, expected)| {
                let mut row = VerifyRow::new(vec![("n", n), ("m", m), ("k", k)]);
                row.expected = Some((expected, expected));
                row.expected_source = "reference count".into();
                let g = cartesian_product(&complete(n).expect("n >= 1"), &complete(m).expect("m >= 1"))
                    .expect("non-empty")
                    .graph;
                row.solver = if opts.skip_solver {
                    SolverCell::Skipped
                } else {
                    match solver::count_b_colorings(&g, k as u32, &opts.search) {
                        Ok(r) => SolverCell::Value(r.count),
                        Err(SolverError::Budget { partial, .. }) => SolverCell::Budget(format!("{partial:?}")),
                        Err(e) => SolverCell::Budget(e.to_string()),
                    }
                };
                row.settle(false);
                row
            })
            .collect(),
    };
    VerifyReport { suite, rows }
}

/// Published values of `B(K_n □ K_m, k)` as `(n, m, k, count)`.
pub const PUBLISHED_COUNTS: &[(usize, usize, usize, u128)] = &[(3, 3, 3, 12), (4, 3, 5, 11384), (5, 3, 6, 570240)];

#[cfg(test)]
mod tests {
    use super::*;

    fn opts(n: RangeInclusive<usize>, m: RangeInclusive<usize>) -> VerifyOptions {
        VerifyOptions { n, m, ..VerifyOptions::default() }
    }

    #[test]
    fn star_suite_small() {
        let r = run_suite(Suite::StarProduct, &opts(1..=4, 1..=4));
        assert_eq!(r.rows.len(), 10);
        assert_eq!(r.mismatches(), 0, "{}", r.to_text());
        let low = r.rows.iter().find(|row| row.parameters == [("n", 3), ("m", 1)]).unwrap();
        assert_eq!(low.agreement, Agreement::SolverArbitrated);
        assert_eq!(low.solver, SolverCell::Value(2));
        let hi = r.rows.iter().find(|row| row.parameters == [("n", 4), ("m", 3)]).unwrap();
        assert_eq!((hi.agreement, hi.construction_k), (Agreement::Match, Some(5)));
    }

    #[test]
    fn mdegree_suite() {
        let o = VerifyOptions { family: Some(MDegreeFamily::Power2), ..opts(2..=5, 2..=5) };
        let r = run_suite(Suite::MDegree, &o);
        assert_eq!(r.rows.len(), 10);
        assert!(r.rows.iter().all(|row| row.agreement == Agreement::Match));
    }

    #[test]
    fn mismatch_detection() {
        let mut row = VerifyRow::new(vec![("n", 1)]);
        row.expected = Some((5, 5));
        row.solver = SolverCell::Value(4);
        row.settle(false);
        assert_eq!(row.agreement, Agreement::Mismatch);
        let mut row = VerifyRow::new(vec![("n", 1)]);
        row.expected = Some((3, 6));
        row.solver = SolverCell::Value(4);
        row.construction_k = Some(4);
        row.certificate_valid = Some(true);
        row.settle(false);
        assert_eq!(row.agreement, Agreement::BoundsContain);
        row.solver = SolverCell::Budget("nodes".into());
        row.settle(false);
        assert_eq!(row.agreement, Agreement::Budget);
    }

    #[test]
    fn report_output() {
        let r = run_suite(Suite::Rook, &VerifyOptions { skip_solver: true, ..opts(3..=6, 3..=3) });
        assert_eq!(r.mismatches(), 0, "{}", r.to_text());
        let text = r.to_text();
        assert!(text.starts_with("parameters"));
        assert!(text.ends_with("4 rows, 0 mismatches\n"));
        assert_eq!(r.to_json()["rows"][1]["construction_k"], 5);
        assert_eq!("power".parse::<Suite>(), Ok(Suite::StarProductPower));
        assert!("bogus".parse::<Suite>().is_err());
    }
}
