//! Closed forms for φ and the m-degree on star-based families.
//!
//! Products are symmetric, so every function normalizes its pair to `n >= m` first.

use std::fmt;
use std::str::FromStr;

use serde_json::{json, Value};

use crate::SCHEMA;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum FormulaError {
    #[error("{family}: outside hypothesis, needs {requirement} (got {params})")]
    Hypothesis { family: &'static str, requirement: &'static str, params: String },
    #[error("unknown family {0:?}")]
    UnknownFamily(String),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum PhiKind {
    Exact(usize),
    Bounds { lower: usize, upper: usize },
}

/// A predicted value of φ, or an interval for it, with where it came from.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PhiResult {
    pub kind: PhiKind,
    /// Family identifier, e.g. `"star-product"` or `"rook-table"`.
    pub source: &'static str,
    pub preconditions_met: bool,
    pub explanation: String,
    /// Set when the stored value departs from a closed form quoted for the family.
    pub annotation: Option<String>,
}

impl PhiResult {
    fn exact(v: usize, source: &'static str, explanation: impl Into<String>) -> Self {
        PhiResult { kind: PhiKind::Exact(v), source, preconditions_met: true, explanation: explanation.into(), annotation: None }
    }

    fn bounds(lower: usize, upper: usize, source: &'static str, explanation: impl Into<String>) -> Self {
        debug_assert!(lower <= upper);
        let kind = if lower == upper { PhiKind::Exact(lower) } else { PhiKind::Bounds { lower, upper } };
        PhiResult { kind, source, preconditions_met: true, explanation: explanation.into(), annotation: None }
    }

    pub fn exact_value(&self) -> Option<usize> {
        match self.kind {
            PhiKind::Exact(v) => Some(v),
            PhiKind::Bounds { .. } => None,
        }
    }

    pub fn lower(&self) -> usize {
        match self.kind {
            PhiKind::Exact(v) => v,
            PhiKind::Bounds { lower, .. } => lower,
        }
    }

    pub fn upper(&self) -> usize {
        match self.kind {
            PhiKind::Exact(v) => v,
            PhiKind::Bounds { upper, .. } => upper,
        }
    }

    pub fn contains(&self, v: usize) -> bool {
        self.lower() <= v && v <= self.upper()
    }

    pub fn to_json(&self) -> Value {
        let value = match self.kind {
            PhiKind::Exact(v) => json!({ "exact": v }),
            PhiKind::Bounds { lower, upper } => json!({ "lower": lower, "upper": upper }),
        };
        json!({
            "value": value,
            "source": self.source,
            "preconditions_met": self.preconditions_met,
            "explanation": self.explanation,
            "annotation": self.annotation,
        })
    }
}

impl fmt::Display for PhiResult {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.kind {
            PhiKind::Exact(v) => write!(f, "{v}"),
            PhiKind::Bounds { lower, upper } => write!(f, "[{lower}, {upper}]"),
        }
    }
}

fn ordered(n: usize, m: usize) -> (usize, usize) {
    if n >= m {
        (n, m)
    } else {
        (m, n)
    }
}

/// Rook graphs `K_n □ K_m` (n >= m) whose φ is known individually rather than by formula.
pub const ROOK_TABLE: &[((usize, usize), usize)] = &[((3, 3), 3), ((4, 3), 5), ((5, 3), 6)];

fn rook_table(n: usize, m: usize) -> Option<usize> {
    ROOK_TABLE.iter().find(|&&(key, _)| key == (n, m)).map(|&(_, v)| v)
}

/// `S_n`: 1 for the single vertex, 2 otherwise.
pub fn phi_star(n: usize) -> PhiResult {
    if n == 0 {
        PhiResult::exact(1, "star", "S_0 is a single vertex")
    } else {
        PhiResult::exact(2, "star", "a star with at least one leaf is bipartite with a universal centre")
    }
}

/// `S_n □ S_m`: `m + 2` once both stars have two leaves. Below that the value is left to the
/// solver, with the interval `[2, m + 2]`.
pub fn phi_star_product(n: usize, m: usize) -> PhiResult {
    let (n, m) = ordered(n, m);
    if m == 0 {
        let mut r = phi_star(n);
        r.source = "star-product";
        r.explanation = format!("S_{n} □ S_0 = S_{n}");
        return r;
    }
    if m >= 2 {
        return PhiResult::exact(m + 2, "star-product", format!("m + 2 with n={n} >= m={m} >= 2"));
    }
    let mut r = PhiResult::bounds(2, m + 2, "star-product", "solver-arbitrated: the m + 2 pattern needs m >= 2");
    r.preconditions_met = false;
    r
}

/// `L(S_n □ S_m)`: `n + m`, from the clique on the edges at the hub.
pub fn phi_line_star_product(n: usize, m: usize) -> Result<PhiResult, FormulaError> {
    let (n, m) = ordered(n, m);
    if m == 0 {
        return Err(FormulaError::Hypothesis { family: "line-star-product", requirement: "n, m >= 1", params: format!("n={n}, m={m}") });
    }
    Ok(PhiResult::exact(n + m, "line-star-product", "n + m"))
}

/// `L(S_n) = K_n`, so φ is `n`. The closed form `n - 1` that circulates for this family
/// counts one vertex too few, and the result says so.
pub fn phi_line_star(n: usize) -> Result<PhiResult, FormulaError> {
    if n < 2 {
        return Err(FormulaError::Hypothesis { family: "line-star", requirement: "n >= 2", params: format!("n={n}") });
    }
    let mut r = PhiResult::exact(n, "line-star", "L(S_n) is the complete graph K_n");
    r.annotation = Some(format!("discrepancy: the quoted value n - 1 = {} disagrees with L(S_n) = K_{n}", n - 1));
    Ok(r)
}

/// `T(S_n □ S_m)` for `n >= m >= 3`: `2m + n + 1` if `n > 2(m - 1)`, else `2n + 3`.
pub fn phi_total_star_product(n: usize, m: usize) -> Result<PhiResult, FormulaError> {
    let (n, m) = ordered(n, m);
    if m < 3 {
        return Err(FormulaError::Hypothesis {
            family: "total-star-product",
            requirement: "n >= m >= 3",
            params: format!("n={n}, m={m}"),
        });
    }
    Ok(if n > 2 * (m - 1) {
        PhiResult::exact(2 * m + n + 1, "total-star-product", "2m + n + 1 since n > 2(m - 1)")
    } else {
        PhiResult::exact(2 * n + 3, "total-star-product", "2n + 3 since n <= 2(m - 1)")
    })
}

/// `S_n^k`: 2 for `k = 1`, `n + 1` once the power is complete.
pub fn phi_star_power(n: usize, k: usize) -> Result<PhiResult, FormulaError> {
    if k == 0 {
        return Err(FormulaError::Hypothesis { family: "star-power", requirement: "k >= 1", params: format!("n={n}, k={k}") });
    }
    if n == 0 {
        return Ok(phi_star(0));
    }
    Ok(if k == 1 {
        PhiResult::exact(2, "star-power", "S_n itself")
    } else {
        PhiResult::exact(n + 1, "star-power", "diameter 2, so the power is K_{n+1}")
    })
}

/// `(S_n □ S_m)^k` for `n >= m`.
pub fn phi_star_product_power(n: usize, m: usize, k: usize) -> Result<PhiResult, FormulaError> {
    let (n, m) = ordered(n, m);
    let src = "star-product-power";
    if k == 0 {
        return Err(FormulaError::Hypothesis { family: src, requirement: "k >= 1", params: format!("n={n}, m={m}, k=0") });
    }
    if m == 0 {
        return phi_star_power(n, k);
    }
    Ok(match k {
        1 => {
            let mut r = phi_star_product(n, m);
            r.source = src;
            r
        }
        2 if n > m => PhiResult::exact(m + n + 1, src, "m + n + 1 since n > m"),
        2 => PhiResult::exact(2 * n + 2, src, "2n + 2 since n = m"),
        3 => {
            let hubs = n + m + 1;
            let rook = phi_rook_bounds(n, m);
            let mut r = match rook.kind {
                PhiKind::Exact(v) => PhiResult::exact(v + hubs, src, format!("φ(K_{n} □ K_{m}) + n + m + 1")),
                PhiKind::Bounds { .. } => PhiResult::bounds(
                    2 * n + m + 1,
                    m * m + n + 1,
                    src,
                    format!("2n + m + 1 <= φ <= m² + n + 1 since n < m(m - 1) = {}", m * (m - 1)),
                ),
            };
            if rook.source == "rook-table" {
                r.source = "rook-table";
            }
            r
        }
        _ => PhiResult::exact(n * m + n + m + 1, src, "diameter 4, so the power is complete"),
    })
}

/// `K_n □ K_m` for `n >= m >= 1`: `n` once `n >= m(m - 1)`, otherwise `[n, m(m - 1)]`, with
/// [`ROOK_TABLE`] taking precedence.
pub fn phi_rook_bounds(n: usize, m: usize) -> PhiResult {
    let (n, m) = ordered(n, m);
    if let Some(v) = rook_table(n, m) {
        return PhiResult::exact(v, "rook-table", format!("individually determined value for K_{n} □ K_{m}"));
    }
    if n >= m * (m - 1) {
        PhiResult::exact(n, "rook", format!("n >= m(m - 1) = {}", m * (m - 1)))
    } else {
        PhiResult::bounds(n, m * (m - 1), "rook", format!("m <= n < m(m - 1) = {}", m * (m - 1)))
    }
}

/// Families with a closed-form m-degree.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum MDegreeFamily {
    StarProduct,
    LineStarProduct,
    TotalStarProduct,
    Power2,
    Power3,
}

impl MDegreeFamily {
    pub const ALL: [MDegreeFamily; 5] = [
        MDegreeFamily::StarProduct,
        MDegreeFamily::LineStarProduct,
        MDegreeFamily::TotalStarProduct,
        MDegreeFamily::Power2,
        MDegreeFamily::Power3,
    ];

    pub fn as_str(self) -> &'static str {
        match self {
            MDegreeFamily::StarProduct => "star_product",
            MDegreeFamily::LineStarProduct => "line_star_product",
            MDegreeFamily::TotalStarProduct => "total_star_product",
            MDegreeFamily::Power2 => "power2",
            MDegreeFamily::Power3 => "power3",
        }
    }

    /// Smallest `m` (after normalizing to `n >= m`) the closed form covers.
    pub fn min_m(self) -> usize {
        match self {
            MDegreeFamily::Power2 => 1,
            MDegreeFamily::TotalStarProduct => 3,
            _ => 2,
        }
    }
}

impl fmt::Display for MDegreeFamily {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for MDegreeFamily {
    type Err = FormulaError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let key = s.replace('-', "_");
        MDegreeFamily::ALL
            .into_iter()
            .find(|f| f.as_str() == key || (key == "total" && *f == MDegreeFamily::TotalStarProduct))
            .or(match key.as_str() {
                "star" => Some(MDegreeFamily::StarProduct),
                "line" => Some(MDegreeFamily::LineStarProduct),
                _ => None,
            })
            .ok_or_else(|| FormulaError::UnknownFamily(s.to_string()))
    }
}

/// m-degree of the family member built from `S_n` and `S_m`.
pub fn m_degree_formula(family: MDegreeFamily, n: usize, m: usize) -> Result<usize, FormulaError> {
    let (n, m) = ordered(n, m);
    if m < family.min_m() {
        let requirement = match family.min_m() {
            1 => "n >= m >= 1",
            2 => "n >= m >= 2",
            _ => "n >= m >= 3",
        };
        return Err(FormulaError::Hypothesis { family: family.as_str(), requirement, params: format!("n={n}, m={m}") });
    }
    Ok(match family {
        MDegreeFamily::StarProduct => m + 2,
        MDegreeFamily::LineStarProduct => m + n,
        MDegreeFamily::TotalStarProduct if n > 2 * (m - 1) => 2 * m + n + 1,
        MDegreeFamily::TotalStarProduct => 2 * n + 3,
        MDegreeFamily::Power2 => m + n + 2,
        MDegreeFamily::Power3 => 2 * m + 2 * n,
    })
}

/// One row of the formula table.
#[derive(Debug, Clone, Copy)]
pub struct FormulaEntry {
    pub id: &'static str,
    pub hypothesis: &'static str,
    pub formula: &'static str,
    /// Parameter names, in the order [`FormulaEntry::evaluate`] expects.
    pub params: &'static [&'static str],
}

pub const TABLE: &[FormulaEntry] = &[
    FormulaEntry { id: "star", hypothesis: "n >= 0", formula: "1 if n = 0, else 2", params: &["n"] },
    FormulaEntry { id: "star-product", hypothesis: "n >= m >= 2", formula: "m + 2", params: &["n", "m"] },
    FormulaEntry { id: "line-star", hypothesis: "n >= 2", formula: "n (L(S_n) = K_n)", params: &["n"] },
    FormulaEntry { id: "line-star-product", hypothesis: "n, m >= 1", formula: "n + m", params: &["n", "m"] },
    FormulaEntry {
        id: "total-star-product",
        hypothesis: "n >= m >= 3",
        formula: "2m + n + 1 if n > 2(m - 1), else 2n + 3",
        params: &["n", "m"],
    },
    FormulaEntry { id: "star-power", hypothesis: "n >= 1, k >= 1", formula: "2 if k = 1, else n + 1", params: &["n", "k"] },
    FormulaEntry {
        id: "star-product-power",
        hypothesis: "n >= m >= 1, k >= 1",
        formula: "k=1: m + 2; k=2: m + n + 1 (n > m) or 2n + 2 (n = m); k=3: 2n + m + 1 if n >= m(m - 1), else between 2n + m + 1 and m² + n + 1; k>=4: nm + n + m + 1",
        params: &["n", "m", "k"],
    },
    FormulaEntry {
        id: "rook",
        hypothesis: "n >= m >= 1",
        formula: "n if n >= m(m - 1), else between n and m(m - 1); K_3□K_3 = 3, K_4□K_3 = 5, K_5□K_3 = 6",
        params: &["n", "m"],
    },
];

impl FormulaEntry {
    pub fn evaluate(&self, args: &[usize]) -> Result<PhiResult, FormulaError> {
        let a = |i: usize| args.get(i).copied().unwrap_or(0);
        match self.id {
            "star" => Ok(phi_star(a(0))),
            "star-product" => Ok(phi_star_product(a(0), a(1))),
            "line-star" => phi_line_star(a(0)),
            "line-star-product" => phi_line_star_product(a(0), a(1)),
            "total-star-product" => phi_total_star_product(a(0), a(1)),
            "star-power" => phi_star_power(a(0), a(1)),
            "star-product-power" => phi_star_product_power(a(0), a(1), a(2)),
            _ => Ok(phi_rook_bounds(a(0), a(1))),
        }
    }
}

/// The whole table with every entry evaluated on `1..=max` for each parameter (`n >= m`).
pub fn table_json(max: usize) -> Value {
    let mut entries = Vec::new();
    for e in TABLE {
        let mut results = Vec::new();
        for args in grid(e.params, max) {
            if let Ok(r) = e.evaluate(&args) {
                let params: serde_json::Map<String, Value> =
                    e.params.iter().zip(&args).map(|(k, v)| (k.to_string(), json!(v))).collect();
                results.push(json!({ "parameters": params, "result": r.to_json() }));
            }
        }
        entries.push(json!({
            "id": e.id,
            "hypothesis": e.hypothesis,
            "formula": e.formula,
            "results": results,
        }));
    }
    let mdeg: Vec<Value> = MDegreeFamily::ALL
        .iter()
        .map(|&f| {
            let values: Vec<Value> = grid(&["n", "m"], max)
                .into_iter()
                .filter_map(|a| m_degree_formula(f, a[0], a[1]).ok().map(|v| json!({ "n": a[0], "m": a[1], "m_degree": v })))
                .collect();
            json!({ "family": f.as_str(), "values": values })
        })
        .collect();
    json!({ "schema": SCHEMA, "phi": entries, "m_degree": mdeg })
}

// Parameter tuples with n >= m; k (when present) runs 1..=4.
fn grid(params: &[&str], max: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    match params {
        ["n"] => out.extend((0..=max).map(|n| vec![n])),
        ["n", "k"] => {
            for n in 1..=max {
                out.extend((1..=4).map(|k| vec![n, k]));
            }
        }
        ["n", "m"] => {
            for n in 1..=max {
                out.extend((1..=n).map(|m| vec![n, m]));
            }
        }
        _ => {
            for n in 1..=max {
                for m in 1..=n {
                    out.extend((1..=4).map(|k| vec![n, m, k]));
                }
            }
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn stars_and_products() {
        assert_eq!(phi_star(0).exact_value(), Some(1));
        assert_eq!(phi_star(1).exact_value(), Some(2));
        assert_eq!(phi_star(7).exact_value(), Some(2));
        assert_eq!(phi_star_product(4, 3).exact_value(), Some(5));
        assert_eq!(phi_star_product(3, 3).exact_value(), Some(5));
        assert_eq!(phi_star_product(3, 4), phi_star_product(4, 3));
        let low = phi_star_product(5, 1);
        assert!(!low.preconditions_met);
        assert_eq!((low.lower(), low.upper()), (2, 3));
    }

    #[test]
    fn line_and_total() {
        assert_eq!(phi_line_star_product(4, 3).unwrap().exact_value(), Some(7));
        assert_eq!(phi_line_star_product(1, 1).unwrap().exact_value(), Some(2));
        assert_eq!(phi_line_star_product(5, 3).unwrap().exact_value(), Some(8));
        assert_eq!(phi_total_star_product(5, 3).unwrap().exact_value(), Some(12));
        assert_eq!(phi_total_star_product(5, 4).unwrap().exact_value(), Some(13));
        assert_eq!(phi_total_star_product(4, 3).unwrap().exact_value(), Some(11));
        assert!(phi_total_star_product(5, 2).is_err());
        let l = phi_line_star(5).unwrap();
        assert_eq!(l.exact_value(), Some(5));
        assert!(l.annotation.unwrap().contains("discrepancy"));
    }

    #[test]
    fn powers() {
        assert_eq!(phi_star_power(3, 1).unwrap().exact_value(), Some(2));
        assert_eq!(phi_star_power(3, 2).unwrap().exact_value(), Some(4));
        assert_eq!(phi_star_power(5, 9).unwrap().exact_value(), Some(6));
        assert_eq!(phi_star_product_power(4, 3, 2).unwrap().exact_value(), Some(8));
        assert_eq!(phi_star_product_power(3, 3, 2).unwrap().exact_value(), Some(8));
        assert_eq!(phi_star_product_power(6, 3, 3).unwrap().exact_value(), Some(16));
        assert_eq!(phi_star_product_power(4, 3, 3).unwrap().exact_value(), Some(13));
        assert_eq!(phi_star_product_power(3, 3, 4).unwrap().exact_value(), Some(16));
        assert_eq!(phi_star_product_power(4, 3, 7).unwrap().exact_value(), Some(20));
        let open = phi_star_product_power(5, 4, 3).unwrap();
        assert_eq!((open.lower(), open.upper()), (15, 22));
        // the small cases listed for m = 3, with the factors in either order
        for (n, v) in [(1, 8), (2, 9), (3, 10), (4, 13), (5, 15), (6, 16), (9, 22)] {
            assert_eq!(phi_star_product_power(n, 3, 3).unwrap().exact_value(), Some(v), "n={n}");
        }
    }

    #[test]
    fn rooks() {
        assert_eq!(phi_rook_bounds(3, 3).exact_value(), Some(3));
        assert_eq!(phi_rook_bounds(6, 3).exact_value(), Some(6));
        assert_eq!(phi_rook_bounds(4, 3).exact_value(), Some(5));
        assert_eq!(phi_rook_bounds(3, 5).exact_value(), Some(6));
        let b = phi_rook_bounds(5, 4);
        assert_eq!((b.lower(), b.upper()), (5, 12));
    }

    #[test]
    fn m_degrees() {
        use MDegreeFamily::*;
        assert_eq!(m_degree_formula(StarProduct, 4, 3), Ok(5));
        assert_eq!(m_degree_formula(Power3, 4, 3), Ok(14));
        assert_eq!(m_degree_formula(TotalStarProduct, 5, 4), Ok(13));
        assert_eq!(m_degree_formula(TotalStarProduct, 4, 5), Ok(13));
        assert!(m_degree_formula(TotalStarProduct, 5, 2).is_err());
        assert_eq!("power2".parse::<MDegreeFamily>(), Ok(Power2));
        assert_eq!("total".parse::<MDegreeFamily>(), Ok(TotalStarProduct));
        assert!("tensor".parse::<MDegreeFamily>().is_err());
    }

    #[test]
    fn table_export() {
        let t = table_json(4);
        assert_eq!(t["schema"], SCHEMA);
        assert_eq!(t["phi"].as_array().unwrap().len(), TABLE.len());
        let total = &t["phi"][4];
        assert_eq!(total["id"], "total-star-product");
        assert_eq!(total["results"][0]["parameters"]["n"], 3);
    }
}
