//! Text renderings of a [`StirlingTriangle`].

use std::fmt::Write as _;

use serde::{Deserialize, Serialize};
use stirling_core::{Family, LambdaPoly, Rational, StirlingTriangle};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Format {
    Csv,
    Tsv,
    Json,
    Latex,
}

#[derive(Debug, Serialize, Deserialize)]
struct JsonTriangle {
    family: String,
    max_n: usize,
    entries: Vec<JsonEntry>,
}

/// Coefficients ascending in λ, as decimal rational strings.
#[derive(Debug, Serialize, Deserialize)]
struct JsonEntry {
    n: usize,
    k: usize,
    coeffs: Vec<String>,
}

pub fn render(triangle: &StirlingTriangle, format: Format) -> String {
    match format {
        Format::Csv => render_delimited(triangle, ','),
        Format::Tsv => render_delimited(triangle, '\t'),
        Format::Json => render_json(triangle),
        Format::Latex => render_latex(triangle),
    }
}

fn render_delimited(triangle: &StirlingTriangle, sep: char) -> String {
    let mut out = format!("n{sep}k{sep}value\n");
    for (n, k, p) in triangle.entries() {
        writeln!(out, "{n}{sep}{k}{sep}{}", p.to_ascending_string()).unwrap();
    }
    out
}

fn render_json(triangle: &StirlingTriangle) -> String {
    let doc = JsonTriangle {
        family: triangle.family().name().to_string(),
        max_n: triangle.max_n(),
        entries: triangle
            .entries()
            .map(|(n, k, p)| JsonEntry {
                n,
                k,
                coeffs: if p.is_zero() {
                    vec!["0".to_string()]
                } else {
                    p.coeffs().iter().map(Rational::to_string).collect()
                },
            })
            .collect(),
    };
    let mut out = serde_json::to_string(&doc).expect("plain data serializes");
    out.push('\n');
    out
}

/// Parses the JSON rendering back into a triangle.
pub fn parse_json(text: &str) -> Result<StirlingTriangle, String> {
    let doc: JsonTriangle = serde_json::from_str(text).map_err(|e| e.to_string())?;
    let family: Family = doc
        .family
        .parse()
        .map_err(|e: stirling_core::Error| e.to_string())?;
    let mut rows: Vec<Vec<LambdaPoly>> =
        (0..=doc.max_n).map(|n| Vec::with_capacity(n + 1)).collect();
    for e in doc.entries {
        let row = rows
            .get_mut(e.n)
            .ok_or_else(|| format!("entry ({},{}) beyond max_n {}", e.n, e.k, doc.max_n))?;
        if row.len() != e.k {
            return Err(format!("entry ({},{}) out of order", e.n, e.k));
        }
        let coeffs = e
            .coeffs
            .iter()
            .map(|c| c.parse::<Rational>())
            .collect::<Result<Vec<_>, _>>()
            .map_err(|err| err.to_string())?;
        row.push(LambdaPoly::from_coeffs(coeffs));
    }
    StirlingTriangle::from_rows(family, rows).map_err(|e| e.to_string())
}

fn latex_symbol(family: Family, n: usize, k: usize) -> String {
    match family {
        Family::S1 => format!("S_{{1}}({n},{k})"),
        Family::S1U => format!("{{{n} \\brack {k}}}"),
        Family::S2 => format!("{{{n} \\brace {k}}}"),
        Family::DS1 => format!("S_{{1,\\lambda}}({n},{k})"),
        Family::DS2 => format!("S_{{2,\\lambda}}({n},{k})"),
        Family::NS1 => format!("S_{{1,\\lambda}}^{{*}}({n},{k})"),
        Family::NS1U => format!("{{{n} \\brack {k}}}_{{\\lambda}}^{{*}}"),
        Family::NS2 => format!("{{{n} \\brace {k}}}_{{\\lambda}}^{{*}}"),
    }
}

/// One `symbol=polynomial` line per entry, powers of λ descending.
fn render_latex(triangle: &StirlingTriangle) -> String {
    let mut out = String::new();
    for (n, k, p) in triangle.entries() {
        writeln!(
            out,
            "{}={}",
            latex_symbol(triangle.family(), n, k),
            p.to_latex()
        )
        .unwrap();
    }
    out
}
