//! Leibniz graphs: expansion through the Jacobiator, edge contraction,
//! layered factorization of associator components and certificates.

mod cert;
mod expand;
mod layers;

pub use cert::{Certificate, CertificateError, LayerLog};
pub use expand::{contract_edges, expand_leibniz};
pub use layers::{
    factorize_component, factorize_series, layer_closure, reduce_series, Closure, ClosureOptions,
    FactorizationReport, FactorizeOptions, Layer, OrderReport, Reduction, SlicePolicy,
};
