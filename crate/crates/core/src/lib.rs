//! Graph calculus for star products: Kontsevich and Leibniz graphs, exact
//! ℚ[z] coefficients, associators and their factorization through layers of
//! Leibniz graphs, with a polynomial evaluation oracle.

pub mod coeff;
pub mod graph;
pub mod jacobi;
pub mod linsolve;
pub mod oracle;
pub mod pipeline;
pub mod series;

use std::fmt;
use std::str::FromStr;

use graph::FormalityGraph;

/// Which bivectors the computation is meant for.
///
/// `Affine` keeps only graphs that can be nonzero on bivectors with affine
/// coefficients: wedges with in-degree at most 1, the trident at most 2.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Default)]
pub enum Mode {
    #[default]
    Full,
    Affine,
}

impl Mode {
    pub fn admits(self, g: &FormalityGraph) -> bool {
        match self {
            Mode::Full => true,
            Mode::Affine => g.is_affine(),
        }
    }
}

impl fmt::Display for Mode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Mode::Full => "full",
            Mode::Affine => "affine",
        })
    }
}

impl FromStr for Mode {
    type Err = String;
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "full" => Ok(Mode::Full),
            "affine" => Ok(Mode::Affine),
            other => Err(format!("unknown mode {other:?} (expected full or affine)")),
        }
    }
}
