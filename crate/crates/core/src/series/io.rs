//! Text formats for star products and graph series.
//!
//! ```text
//! format kgs-star v1; normalization=operator; order=2
//! 0; 2 0; ; 1
//! 1; 2 1; 0 1; 1
//! ```
//!
//! Each line is `<hbar-order>; <graph>; <coefficient>`; the leading order is
//! optional and, when present, must agree with the graph. `#` starts a
//! comment line. Series files use the header `format kgs-series v1; sinks=m`.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::One;

use super::{GraphSeries, SeriesError, StarProduct};
use crate::coeff::Coefficient;
use crate::graph::{FormalityGraph, GraphError};

/// How coefficients in a star-product file are scaled.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum Normalization {
    /// Raw weights `w(Γ)`; the loader divides by `n!`.
    Weights,
    /// Full operator coefficients `w(Γ)/n!`.
    #[default]
    Operator,
}

/// Parsed header fields.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct SeriesHeader {
    pub kind: String,
    pub normalization: Normalization,
    pub sinks: Option<usize>,
    pub order: Option<usize>,
}

fn syntax(line: usize, message: impl Into<String>) -> SeriesError {
    SeriesError::Syntax {
        line,
        message: message.into(),
    }
}

fn parse_header(line_no: usize, line: &str) -> Result<SeriesHeader, SeriesError> {
    let mut fields = line.split(';').map(str::trim);
    let first = fields.next().unwrap_or_default();
    let kind = match first.split_whitespace().collect::<Vec<_>>().as_slice() {
        ["format", kind, "v1"] => kind.to_string(),
        _ => return Err(syntax(line_no, format!("bad header {first:?}"))),
    };
    let mut header = SeriesHeader {
        kind,
        ..Default::default()
    };
    for field in fields.filter(|f| !f.is_empty()) {
        let (key, value) = field
            .split_once('=')
            .ok_or_else(|| syntax(line_no, format!("bad header field {field:?}")))?;
        let number = || {
            value
                .trim()
                .parse::<usize>()
                .map_err(|_| syntax(line_no, format!("bad value in {field:?}")))
        };
        match key.trim() {
            "normalization" => {
                header.normalization = match value.trim() {
                    "weights" => Normalization::Weights,
                    "operator" => Normalization::Operator,
                    other => {
                        return Err(syntax(line_no, format!("unknown normalization {other:?}")))
                    }
                }
            }
            "sinks" => header.sinks = Some(number()?),
            "order" => header.order = Some(number()?),
            other => return Err(syntax(line_no, format!("unknown header key {other:?}"))),
        }
    }
    Ok(header)
}

struct Parsed {
    header: SeriesHeader,
    terms: Vec<(usize, FormalityGraph, Coefficient)>,
}

fn parse_lines(text: &str) -> Result<Parsed, SeriesError> {
    let mut header = None;
    let mut terms = Vec::new();
    for (i, raw) in text.lines().enumerate() {
        let line_no = i + 1;
        let line = raw.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        if line.starts_with("format") {
            if header.is_some() || !terms.is_empty() {
                return Err(syntax(line_no, "header must be the first line"));
            }
            header = Some(parse_header(line_no, line)?);
            continue;
        }
        let fields: Vec<&str> = line.split(';').collect();
        let (stated, graph_text, coeff_text) = match fields.len() {
            3 => (None, format!("{};{}", fields[0], fields[1]), fields[2]),
            4 => {
                let n = fields[0]
                    .trim()
                    .parse::<usize>()
                    .map_err(|_| syntax(line_no, "bad hbar order"))?;
                (Some(n), format!("{};{}", fields[1], fields[2]), fields[3])
            }
            _ => return Err(syntax(line_no, "expected `[order;] graph; coefficient`")),
        };
        let graph: FormalityGraph =
            graph_text
                .parse()
                .map_err(|source: GraphError| SeriesError::Graph {
                    line: line_no,
                    source,
                })?;
        if stated.is_some_and(|n| n != graph.aerial()) {
            return Err(syntax(
                line_no,
                "stated order differs from aerial vertex count",
            ));
        }
        let coeff = Coefficient::parse(coeff_text).map_err(|source| SeriesError::Coeff {
            line: line_no,
            source,
        })?;
        terms.push((line_no, graph, coeff));
    }
    Ok(Parsed {
        header: header.unwrap_or_default(),
        terms,
    })
}

fn factorial(n: usize) -> BigRational {
    (1..=n).fold(BigRational::one(), |acc, k| {
        acc * BigRational::from_integer(BigInt::from(k))
    })
}

/// Reads a two-sink star product, normalizing weights to operator
/// coefficients and validating the unit and bracket terms.
pub fn load_star_product(text: &str) -> Result<StarProduct, SeriesError> {
    let parsed = parse_lines(text)?;
    let mut series = GraphSeries::new(2);
    let mut max_order = 0;
    for (line, g, c) in &parsed.terms {
        if g.sinks() != 2 {
            return Err(SeriesError::SinkMismatch {
                expected: 2,
                found: g.sinks(),
            });
        }
        if !g.is_kontsevich() {
            return Err(SeriesError::NotKontsevich { line: *line });
        }
        let c = match parsed.header.normalization {
            Normalization::Operator => c.clone(),
            Normalization::Weights => c.scale(&factorial(g.aerial()).recip()),
        };
        max_order = max_order.max(g.aerial());
        series.add_graph(g, &c);
    }
    let order = parsed.header.order.unwrap_or(0).max(max_order);
    if series.get(&FormalityGraph::edgeless(2)) != Some(&Coefficient::one()) {
        return Err(SeriesError::MissingUnit);
    }
    if order >= 1 && !series.contains(&FormalityGraph::wedge()) {
        return Err(SeriesError::MissingBracket);
    }
    if series.order(0).len() != 1 {
        return Err(SeriesError::MissingUnit);
    }
    Ok(StarProduct { series, order })
}

fn write_terms(out: &mut String, s: &GraphSeries) {
    // ascending order, then canonical encoding
    let mut terms: Vec<_> = s.iter().collect();
    terms.sort_by_key(|(g, _)| g.aerial());
    for (g, c) in terms {
        if g.aerial() == 0 {
            out.push_str(&format!("0; {} 0; ; {}\n", g.sinks(), c));
        } else {
            out.push_str(&format!("{}; {}; {}\n", g.aerial(), g, c));
        }
    }
}

/// Writes a star product with operator normalization.
pub fn write_star_product(star: &StarProduct) -> String {
    let mut out = format!(
        "format kgs-star v1; normalization=operator; order={}\n",
        star.order
    );
    write_terms(&mut out, &star.series);
    out
}

/// Reads a series file; the sink count comes from the header or, failing
/// that, from the first graph.
pub fn load_series(text: &str) -> Result<GraphSeries, SeriesError> {
    let parsed = parse_lines(text)?;
    let sinks = parsed
        .header
        .sinks
        .or_else(|| parsed.terms.first().map(|(_, g, _)| g.sinks()))
        .unwrap_or(3);
    let mut series = GraphSeries::new(sinks);
    for (_, g, c) in &parsed.terms {
        if g.sinks() != sinks {
            return Err(SeriesError::SinkMismatch {
                expected: sinks,
                found: g.sinks(),
            });
        }
        series.add_graph(g, c);
    }
    Ok(series)
}

pub fn write_series(s: &GraphSeries) -> String {
    let mut out = format!("format kgs-series v1; sinks={}\n", s.sinks());
    write_terms(&mut out, s);
    out
}
