//! Factorization certificates and their text form.
//!
//! ```text
//! format kgs-cert v1; order=(1, 1, 1); hbar=2; status=True
//! # (1, 1, 1): 3K -> +1L -> +0K
//! 3 1; 0 1 2; 1
//! ```

use std::fmt;

use thiserror::Error;

use super::expand_leibniz;
use crate::coeff::Coefficient;
use crate::graph::FormalityGraph;
use crate::series::{DiffOrder, GraphSeries};
use crate::Mode;

#[derive(Debug, Error)]
pub enum CertificateError {
    #[error("line {line}: {message}")]
    Syntax { line: usize, message: String },
    #[error("certificate has no header")]
    MissingHeader,
}

/// One `aK -> +bL -> +cK` search trace.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LayerLog {
    pub order: Vec<usize>,
    /// Number of Kontsevich graphs in the target.
    pub target_size: usize,
    /// Per layer: new Leibniz graphs, then new Kontsevich graphs.
    pub steps: Vec<(usize, usize)>,
    pub status: bool,
}

impl LayerLog {
    /// The counter line without the status.
    pub fn trace(&self) -> String {
        let mut s = format!("{}: {}K", DiffOrder(&self.order), self.target_size);
        for (l, k) in &self.steps {
            s.push_str(&format!(" -> +{l}L -> +{k}K"));
        }
        s
    }

    /// Index of the last layer that was searched.
    pub fn layers_used(&self) -> usize {
        self.steps.len().saturating_sub(1)
    }
}

fn status_word(ok: bool) -> &'static str {
    if ok {
        "True"
    } else {
        "False"
    }
}

impl fmt::Display for LayerLog {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}\n{}", self.trace(), status_word(self.status))
    }
}

/// A Leibniz combination claimed to expand to one component.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Certificate {
    pub order: Vec<usize>,
    pub hbar_order: usize,
    pub terms: Vec<(FormalityGraph, Coefficient)>,
    pub log: Option<LayerLog>,
    pub status: bool,
}

impl Certificate {
    /// `Σ c_L · expand(L)`.
    pub fn expansion(&self, mode: Mode) -> GraphSeries {
        let sinks = self
            .terms
            .first()
            .map_or(self.order.len(), |(g, _)| g.sinks());
        let mut out = GraphSeries::new(sinks);
        for (l, c) in &self.terms {
            out.add_scaled(&expand_leibniz(l, mode), c);
        }
        out
    }

    /// The Leibniz combination as a series (sign-absorbed canonical graphs).
    pub fn combination(&self) -> GraphSeries {
        let sinks = self
            .terms
            .first()
            .map_or(self.order.len(), |(g, _)| g.sinks());
        let mut out = GraphSeries::new(sinks);
        for (l, c) in &self.terms {
            out.add_graph(l, c);
        }
        out
    }

    /// Exact re-expansion check: `Σ c_L expand(L) − target`, empty on
    /// success.
    pub fn residual(&self, target: &GraphSeries, mode: Mode) -> GraphSeries {
        let mut r = self.expansion(mode);
        r.sub_series(target);
        r
    }

    pub fn to_text(&self) -> String {
        let mut out = format!(
            "format kgs-cert v1; order={}; hbar={}; status={}\n",
            DiffOrder(&self.order),
            self.hbar_order,
            status_word(self.status)
        );
        if let Some(log) = &self.log {
            out.push_str(&format!("# {}\n", log.trace()));
        }
        for (l, c) in &self.terms {
            out.push_str(&format!("{l}; {c}\n"));
        }
        out
    }

    pub fn parse(text: &str) -> Result<Certificate, CertificateError> {
        let syntax = |line: usize, message: &str| CertificateError::Syntax {
            line,
            message: message.to_string(),
        };
        let mut cert: Option<Certificate> = None;
        for (i, raw) in text.lines().enumerate() {
            let line_no = i + 1;
            let line = raw.trim();
            if line.is_empty() || line.starts_with('#') {
                continue;
            }
            let Some(c) = cert.as_mut() else {
                cert = Some(parse_header(line).ok_or_else(|| syntax(line_no, "bad header"))?);
                continue;
            };
            let (graph, coeff) = line
                .rsplit_once(';')
                .ok_or_else(|| syntax(line_no, "expected `graph; coefficient`"))?;
            let graph: FormalityGraph = graph
                .parse()
                .map_err(|e| syntax(line_no, &format!("{e}")))?;
            if !graph.is_leibniz() {
                return Err(syntax(line_no, "certificate terms must be Leibniz graphs"));
            }
            let coeff = Coefficient::parse(coeff).map_err(|e| syntax(line_no, &format!("{e}")))?;
            c.terms.push((graph, coeff));
        }
        cert.ok_or(CertificateError::MissingHeader)
    }
}

fn parse_header(line: &str) -> Option<Certificate> {
    let rest = line.strip_prefix("format kgs-cert v1")?;
    let open = rest.find('(')?;
    let close = rest.find(')')?;
    let order = rest[open + 1..close]
        .split(',')
        .map(|d| d.trim().parse().ok())
        .collect::<Option<Vec<usize>>>()?;
    let mut hbar = None;
    let mut status = None;
    for field in rest[close + 1..]
        .split(';')
        .map(str::trim)
        .filter(|f| !f.is_empty())
    {
        match field.split_once('=')? {
            ("hbar", v) => hbar = v.trim().parse().ok(),
            ("status", "True") => status = Some(true),
            ("status", "False") => status = Some(false),
            _ => return None,
        }
    }
    Some(Certificate {
        order,
        hbar_order: hbar?,
        terms: Vec::new(),
        log: None,
        status: status?,
    })
}
