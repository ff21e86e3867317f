//! Independent semantic checks: graphs evaluated as operators on explicit
//! polynomial bivectors.

mod eval;
mod poly;

pub use eval::{
    evaluate_graph, evaluate_series, evaluate_series_at, Arg, EvalError, PolyBivector, Trivector,
};
pub use poly::{Poly, PolyParseError};

use std::collections::BTreeMap;

use crate::jacobi::Certificate;
use crate::series::{slice_series, GraphSeries};
use crate::Mode;

/// Outcome of [`check_certificate`]; each flag is one independent check.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CertificateCheck {
    /// `Σ c_L expand(L) = target` exactly.
    pub structural: bool,
    /// On every non-Poisson sample the target and the Leibniz combination
    /// have the same symbol, slice by slice in `z`.
    pub semantic: bool,
    /// On every Poisson sample the target evaluates to zero.
    pub poisson: bool,
    /// Structural residual, empty when `structural` holds.
    pub residual: GraphSeries,
}

impl CertificateCheck {
    pub fn passed(&self) -> bool {
        self.structural && self.semantic && self.poisson
    }

    /// Name of the first failing check.
    pub fn failure(&self) -> Option<&'static str> {
        if !self.structural {
            Some("structural")
        } else if !self.semantic {
            Some("semantic")
        } else if !self.poisson {
            Some("poisson")
        } else {
            None
        }
    }
}

fn symbols(sinks: usize) -> Vec<Arg> {
    vec![Arg::Symbol; sinks]
}

/// Values keyed by `z`-exponent only; a Leibniz graph has one aerial vertex
/// fewer than its expansion, so ħ-orders are not comparable.
fn by_z_exponent(
    s: &GraphSeries,
    p: &PolyBivector,
    args: &[Arg],
) -> Result<BTreeMap<usize, Poly>, EvalError> {
    let mut out: BTreeMap<usize, Poly> = BTreeMap::new();
    for ((_, e), v) in evaluate_series(s, p, args)? {
        let nv = v.nvars();
        out.entry(e)
            .or_insert_with(|| Poly::zero(nv))
            .add_assign(&v);
    }
    out.retain(|_, v| !v.is_zero());
    Ok(out)
}

/// Checks a certificate against its target component three ways.
///
/// Arguments are formal exponentials, so every comparison is between full
/// operator symbols. In affine mode the non-Poisson samples must be affine.
pub fn check_certificate(
    cert: &Certificate,
    target: &GraphSeries,
    mode: Mode,
    non_poisson: &[PolyBivector],
    poisson: &[PolyBivector],
) -> Result<CertificateCheck, EvalError> {
    let residual = cert.residual(target, mode);
    let structural = cert.status && residual.is_empty();
    let args = symbols(target.sinks());
    let combination = cert.combination();

    let mut semantic = true;
    for p in non_poisson {
        let lhs = by_z_exponent(target, p, &args)?;
        let rhs = by_z_exponent(&combination, p, &args)?;
        if lhs != rhs {
            semantic = false;
            break;
        }
    }
    let mut poisson_ok = true;
    for p in poisson {
        for e in target.z_exponents() {
            if !evaluate_series(&slice_series(target, e), p, &args)?.is_empty() {
                poisson_ok = false;
            }
        }
        if !evaluate_series(&combination, p, &args)?.is_empty() {
            poisson_ok = false;
        }
    }
    Ok(CertificateCheck {
        structural,
        semantic,
        poisson: poisson_ok,
        residual,
    })
}
