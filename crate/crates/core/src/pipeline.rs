//! The command layer behind the `kgs` binary: each function takes file
//! contents and options and returns data plus the text the CLI prints.

use std::fmt::Write as _;
use std::fs;
use std::path::{Path, PathBuf};

use num_rational::BigRational;
use thiserror::Error;

use crate::coeff::Coefficient;
use crate::graph::{
    generate_kontsevich_graphs, generate_leibniz_graphs, leibniz_census, FormalityGraph,
    LeibnizFilters,
};
use crate::jacobi::{
    factorize_series, reduce_series, Certificate, CertificateError, ClosureOptions,
    FactorizationReport, FactorizeOptions, Reduction,
};
use crate::oracle::{
    check_certificate, evaluate_series, evaluate_series_at, Arg, CertificateCheck, EvalError, Poly,
    PolyBivector,
};
use crate::series::{
    associator, load_series, load_star_product, solve_star_through, write_series,
    write_star_product, DiffOrder, GraphSeries, SeriesError, StarProduct,
};
use crate::Mode;

/// Environment variable naming the directory with external weight data.
pub const FIXTURES_ENV: &str = "KGS_FIXTURES";

#[derive(Debug, Error)]
pub enum PipelineError {
    #[error(transparent)]
    Series(#[from] SeriesError),
    #[error(transparent)]
    Certificate(#[from] CertificateError),
    #[error(transparent)]
    Eval(#[from] EvalError),
    #[error("{path}: {source}")]
    Io {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },
    #[error("{0}")]
    Usage(String),
}

pub fn read_file(path: &Path) -> Result<String, PipelineError> {
    fs::read_to_string(path).map_err(|source| PipelineError::Io {
        path: path.to_path_buf(),
        source,
    })
}

pub fn write_file(path: &Path, contents: &str) -> Result<(), PipelineError> {
    let io = |source| PipelineError::Io {
        path: path.to_path_buf(),
        source,
    };
    if let Some(dir) = path.parent() {
        if !dir.as_os_str().is_empty() {
            fs::create_dir_all(dir).map_err(io)?;
        }
    }
    fs::write(path, contents).map_err(io)
}

/// Directory with external weight files, when configured.
pub fn fixtures_dir() -> Option<PathBuf> {
    std::env::var_os(FIXTURES_ENV)
        .map(PathBuf::from)
        .filter(|p| p.is_dir())
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum GraphKind {
    Kontsevich,
    Leibniz,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Generated {
    pub graphs: Vec<FormalityGraph>,
    /// One line of `key=count` pairs.
    pub summary: String,
}

impl Generated {
    pub fn to_text(&self) -> String {
        self.graphs.iter().map(|g| format!("{g}\n")).collect()
    }
}

/// Generates a graph set. Leibniz sets are reported per filter stage and the
/// returned graphs are the last stage (nonzero, all sinks hit, and affine in
/// affine mode).
pub fn cmd_generate(kind: GraphKind, sinks: usize, aerial: usize, mode: Mode) -> Generated {
    match kind {
        GraphKind::Kontsevich => {
            let cap = (mode == Mode::Affine).then_some(1);
            let graphs = generate_kontsevich_graphs(sinks, aerial, cap);
            Generated {
                summary: format!("graphs={}", graphs.len()),
                graphs,
            }
        }
        GraphKind::Leibniz => {
            let census = leibniz_census(sinks, aerial);
            let filters = LeibnizFilters {
                nonzero: true,
                all_sinks_hit: true,
                affine: mode == Mode::Affine,
            };
            let graphs = generate_leibniz_graphs(sinks, aerial, filters);
            let mut summary = format!(
                "generated={} nonzero={} all-sinks={}",
                census.generated, census.nonzero, census.all_sinks_hit
            );
            if mode == Mode::Affine {
                let _ = write!(summary, " affine={}", graphs.len());
            }
            Generated { graphs, summary }
        }
    }
}

/// The associator of a star product through order `k`, restricted to the
/// mode, with per-order graph counts.
pub fn cmd_associator(
    star_text: &str,
    k: usize,
    mode: Mode,
) -> Result<(GraphSeries, String), PipelineError> {
    let star = load_star_product(star_text)?.restrict(mode);
    let assoc = associator(&star, k)?.restrict(mode);
    let mut summary = String::new();
    for n in 0..=k {
        let _ = writeln!(summary, "order {n}: {} graphs", assoc.order(n).len());
    }
    Ok((assoc, summary))
}

pub fn cmd_factorize(
    assoc_text: &str,
    k: usize,
    opts: &FactorizeOptions,
) -> Result<FactorizationReport, PipelineError> {
    let assoc = load_series(assoc_text)?;
    if assoc.sinks() != 3 && !assoc.is_empty() {
        return Err(SeriesError::SinkMismatch {
            expected: 3,
            found: assoc.sinks(),
        }
        .into());
    }
    Ok(factorize_series(&assoc, k, opts))
}

/// File name used for a certificate.
pub fn certificate_file_name(cert: &Certificate) -> String {
    let order: Vec<String> = cert.order.iter().map(|d| d.to_string()).collect();
    format!("cert-h{}-{}.txt", cert.hbar_order, order.join("-"))
}

pub fn write_certificates(
    dir: &Path,
    report: &FactorizationReport,
) -> Result<Vec<PathBuf>, PipelineError> {
    let mut paths = Vec::new();
    for cert in report.certificates() {
        let path = dir.join(certificate_file_name(cert));
        write_file(&path, &cert.to_text())?;
        paths.push(path);
    }
    Ok(paths)
}

/// The part of `series` a certificate speaks about.
pub fn component_of(series: &GraphSeries, cert: &Certificate) -> GraphSeries {
    series.filter(|g, _| g.aerial() == cert.hbar_order && g.differential_order() == cert.order)
}

#[derive(Debug, Clone)]
pub struct VerifyReport {
    pub check: CertificateCheck,
    pub text: String,
}

/// Checks a certificate against the matching component of `target_text`.
///
/// Without explicit Poisson samples so(3) and the symplectic plane are used.
/// The non-Poisson sample is quadratic in full mode and affine otherwise.
pub fn cmd_verify(
    cert_text: &str,
    target_text: &str,
    mode: Mode,
    poisson_texts: &[String],
) -> Result<VerifyReport, PipelineError> {
    let cert = Certificate::parse(cert_text)?;
    let target = component_of(&load_series(target_text)?, &cert).restrict(mode);
    let poisson: Vec<PolyBivector> = if poisson_texts.is_empty() {
        vec![PolyBivector::so3(), PolyBivector::symplectic2()]
    } else {
        poisson_texts
            .iter()
            .map(|t| PolyBivector::parse(t))
            .collect::<Result<_, _>>()?
    };
    let non_poisson = match mode {
        Mode::Full => vec![PolyBivector::p0()],
        Mode::Affine => vec![PolyBivector::affine_non_poisson()],
    };
    let check = check_certificate(&cert, &target, mode, &non_poisson, &poisson)?;
    let word = |ok| if ok { "pass" } else { "FAIL" };
    let mut text = format!(
        "{} h^{}: {} graphs, {} Leibniz terms\n",
        DiffOrder(&cert.order),
        cert.hbar_order,
        target.len(),
        cert.terms.len()
    );
    let _ = writeln!(text, "structural: {}", word(check.structural));
    let _ = writeln!(text, "semantic: {}", word(check.semantic));
    let _ = writeln!(text, "poisson: {}", word(check.poisson));
    if !check.structural {
        let _ = writeln!(text, "residual: {} graphs", check.residual.len());
        for (g, c) in check.residual.iter().take(10) {
            let _ = writeln!(text, "  {g}; {c}");
        }
    }
    Ok(VerifyReport { check, text })
}

pub fn cmd_reduce(
    star_text: &str,
    exponent: usize,
    opts: &ClosureOptions,
) -> Result<Reduction, PipelineError> {
    let star = load_star_product(star_text)?.restrict(opts.mode);
    Ok(reduce_series(&star, exponent, opts))
}

/// Human-readable summary of a reduction.
pub fn reduction_summary(r: &Reduction) -> String {
    let mut text = String::new();
    for log in &r.logs {
        let _ = writeln!(text, "{log}");
    }
    let _ = writeln!(
        text,
        "status: {}; coefficients left: {}; Leibniz terms: {}",
        if r.status { "True" } else { "False" },
        r.reduced.series.len(),
        r.leibniz.len()
    );
    if !r.status {
        let _ = writeln!(text, "residual: {} graphs", r.residual.len());
    }
    text
}

/// Parses a CLI argument: a polynomial in `x1..xd`, or `symbol`.
pub fn parse_arg(text: &str, dim: usize) -> Result<Arg, PipelineError> {
    if text.trim() == "symbol" {
        return Ok(Arg::Symbol);
    }
    Poly::parse(text, dim)
        .map(Arg::Poly)
        .map_err(|e| PipelineError::Usage(e.to_string()))
}

/// Evaluates a series on a bivector. `z` is kept formal unless given.
pub fn cmd_eval(
    series_text: &str,
    poisson_text: &str,
    args: &[String],
    z: Option<&str>,
) -> Result<String, PipelineError> {
    let series = load_series(series_text)?;
    let p = PolyBivector::parse(poisson_text)?;
    let args: Vec<Arg> = args
        .iter()
        .map(|a| parse_arg(a, p.dim()))
        .collect::<Result<_, _>>()?;
    let mut out = String::new();
    match z {
        Some(z) => {
            let z = parse_rational(z)
                .ok_or_else(|| PipelineError::Usage(format!("bad value for z: {z:?}")))?;
            let values = evaluate_series_at(&series, &p, &args, &z)?;
            for (n, v) in values {
                let _ = writeln!(out, "h^{n}: {v}");
            }
        }
        None => {
            for ((n, e), v) in evaluate_series(&series, &p, &args)? {
                let _ = writeln!(out, "h^{n} z^{e}: {v}");
            }
        }
    }
    if out.is_empty() {
        out.push_str("0\n");
    }
    Ok(out)
}

/// A star product built order by order up to `k`.
pub fn cmd_solve(k: usize, mode: Mode) -> Result<StarProduct, PipelineError> {
    Ok(solve_star_through(k, mode)?)
}

pub fn star_text(star: &StarProduct) -> String {
    write_star_product(star)
}

pub fn series_text(series: &GraphSeries) -> String {
    write_series(series)
}

/// Parses a rational number for `--z`.
pub fn parse_rational(text: &str) -> Option<BigRational> {
    Coefficient::parse(text)
        .ok()
        .filter(|c| c.degree().unwrap_or(0) == 0)
        .map(|c| c.slice(0))
}
