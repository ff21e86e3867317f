//! Graphs as multidifferential operators on explicit polynomial bivectors.

use std::collections::{BTreeMap, HashMap};

use num_rational::BigRational;
use num_traits::{One, Zero};
use thiserror::Error;

use super::poly::{Poly, PolyParseError};
use crate::graph::FormalityGraph;
use crate::series::GraphSeries;

#[derive(Debug, Error)]
pub enum EvalError {
    #[error("graph has {expected} sinks but {found} arguments were given")]
    Arity { expected: usize, found: usize },
    #[error("argument in {found} variables, bivector dimension {expected}")]
    Dimension { expected: usize, found: usize },
    #[error("line {line}: {message}")]
    Syntax { line: usize, message: String },
    #[error("line {line}: {source}")]
    Poly {
        line: usize,
        #[source]
        source: PolyParseError,
    },
}

/// An antisymmetric bivector on ℝ^d with polynomial components.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PolyBivector {
    dim: usize,
    comps: Vec<Poly>,
}

impl PolyBivector {
    /// From the components `P^{ij}` with `i < j` (0-based); the rest follow
    /// by antisymmetry.
    pub fn from_upper(dim: usize, upper: &[(usize, usize, Poly)]) -> Self {
        let mut comps = vec![Poly::zero(dim); dim * dim];
        for (i, j, p) in upper {
            assert!(i < j && *j < dim, "need 0 <= i < j < dim");
            assert_eq!(p.nvars(), dim, "component in the wrong number of variables");
            comps[i * dim + j] = p.clone();
            comps[j * dim + i] = -p;
        }
        PolyBivector { dim, comps }
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn get(&self, i: usize, j: usize) -> &Poly {
        &self.comps[i * self.dim + j]
    }

    /// The linear Lie-Poisson structure of so(3): `P^{12} = x3` and cyclic.
    pub fn so3() -> Self {
        let x = |i| Poly::var(3, i);
        PolyBivector::from_upper(3, &[(0, 1, x(2)), (1, 2, x(0)), (0, 2, -&x(1))])
    }

    /// The constant symplectic structure on ℝ²: `P^{12} = 1`.
    pub fn symplectic2() -> Self {
        PolyBivector::from_upper(2, &[(0, 1, Poly::one(2))])
    }

    /// A quadratic non-Poisson bivector: `P^{12} = x1²`, `P^{13} = x2`,
    /// `P^{23} = x3`.
    pub fn p0() -> Self {
        let x = |i| Poly::var(3, i);
        PolyBivector::from_upper(3, &[(0, 1, &x(0) * &x(0)), (0, 2, x(1)), (1, 2, x(2))])
    }

    /// An affine non-Poisson bivector: `P^{12} = x3`, `P^{13} = x1 + 1`,
    /// `P^{23} = x3`.
    pub fn affine_non_poisson() -> Self {
        let x = |i| Poly::var(3, i);
        PolyBivector::from_upper(
            3,
            &[(0, 1, x(2)), (0, 2, &x(0) + &Poly::one(3)), (1, 2, x(2))],
        )
    }

    pub fn extend(&self, nvars: usize) -> Self {
        PolyBivector {
            dim: self.dim,
            comps: self.comps.iter().map(|p| p.extend(nvars)).collect(),
        }
    }

    fn nvars(&self) -> usize {
        self.comps.first().map_or(self.dim, Poly::nvars)
    }

    /// `Jac^{ijk} = Σ_l P^{il}∂_l P^{jk} + P^{jl}∂_l P^{ki} + P^{kl}∂_l P^{ij}`.
    pub fn jacobiator(&self) -> Trivector {
        let d = self.dim;
        let mut comps = vec![Poly::zero(self.nvars()); d * d * d];
        for i in 0..d {
            for j in 0..d {
                for k in 0..d {
                    let mut acc = Poly::zero(self.nvars());
                    for l in 0..d {
                        for (a, b, c) in [(i, j, k), (j, k, i), (k, i, j)] {
                            let dp = self.get(b, c).derivative(l);
                            if !dp.is_zero() && !self.get(a, l).is_zero() {
                                acc.add_assign(&(self.get(a, l) * &dp));
                            }
                        }
                    }
                    comps[(i * d + j) * d + k] = acc;
                }
            }
        }
        Trivector { dim: d, comps }
    }

    pub fn is_poisson(&self) -> bool {
        self.jacobiator().comps.iter().all(Poly::is_zero)
    }

    /// Reads `dim d` followed by `i j; <polynomial>` lines (1-based,
    /// `i < j`, variables `x1..xd`).
    pub fn parse(text: &str) -> Result<Self, EvalError> {
        let mut dim = None;
        let mut upper = Vec::new();
        for (n, raw) in text.lines().enumerate() {
            let line_no = n + 1;
            let line = raw.trim();
            if line.is_empty() || line.starts_with('#') {
                continue;
            }
            let syntax = |message: &str| EvalError::Syntax {
                line: line_no,
                message: message.to_string(),
            };
            let Some(d) = dim else {
                let d = line
                    .strip_prefix("dim")
                    .and_then(|r| r.trim().parse::<usize>().ok())
                    .filter(|&d| d > 0)
                    .ok_or_else(|| syntax("expected `dim d`"))?;
                dim = Some(d);
                continue;
            };
            let (idx, poly) = line
                .split_once(';')
                .ok_or_else(|| syntax("expected `i j; poly`"))?;
            let ij: Vec<usize> = idx
                .split_whitespace()
                .map(|t| t.parse().map_err(|_| syntax("bad index")))
                .collect::<Result<_, _>>()?;
            let [i, j] = ij[..] else {
                return Err(syntax("expected two indices"));
            };
            if !(1 <= i && i < j && j <= d) {
                return Err(syntax("indices must satisfy 1 <= i < j <= dim"));
            }
            let p = Poly::parse(poly, d).map_err(|source| EvalError::Poly {
                line: line_no,
                source,
            })?;
            upper.push((i - 1, j - 1, p));
        }
        let dim = dim.ok_or(EvalError::Syntax {
            line: 0,
            message: "missing `dim` line".into(),
        })?;
        Ok(PolyBivector::from_upper(dim, &upper))
    }
}

/// A trivector with polynomial components, indexed `(i, j, k)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Trivector {
    dim: usize,
    comps: Vec<Poly>,
}

impl Trivector {
    pub fn get(&self, i: usize, j: usize, k: usize) -> &Poly {
        &self.comps[(i * self.dim + j) * self.dim + k]
    }

    pub fn is_zero(&self) -> bool {
        self.comps.iter().all(Poly::is_zero)
    }
}

/// What sits on a sink.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Arg {
    Poly(Poly),
    /// A formal exponential: each derivative `∂_i` landing on sink `k` is
    /// recorded as a symbol variable `ξ_{k,i}` (index `d + k·d + i`), so the
    /// value is the full symbol of the operator.
    Symbol,
}

/// Sum over all index assignments to edges of the product of the
/// differentiated vertex contents. A trident carries the Jacobiator.
pub fn evaluate_graph(
    g: &FormalityGraph,
    p: &PolyBivector,
    args: &[Arg],
) -> Result<Poly, EvalError> {
    let m = g.sinks();
    if args.len() != m {
        return Err(EvalError::Arity {
            expected: m,
            found: args.len(),
        });
    }
    let d = p.dim();
    for a in args {
        if let Arg::Poly(q) = a {
            if q.nvars() != d {
                return Err(EvalError::Dimension {
                    expected: d,
                    found: q.nvars(),
                });
            }
        }
    }
    let symbolic = args.iter().any(|a| matches!(a, Arg::Symbol));
    let nvars = if symbolic { d + m * d } else { d };
    let p = p.extend(nvars);
    let jac = g.trident().map(|_| p.jacobiator());
    let args: Vec<Arg> = args
        .iter()
        .map(|a| match a {
            Arg::Poly(q) => Arg::Poly(q.extend(nvars)),
            Arg::Symbol => Arg::Symbol,
        })
        .collect();

    let edges = g.edges();
    let v_count = g.vertex_count();
    let mut incoming: Vec<Vec<usize>> = vec![Vec::new(); v_count];
    let mut outgoing: Vec<Vec<usize>> = vec![Vec::new(); v_count];
    for (e, &(s, t)) in edges.iter().enumerate() {
        outgoing[s].push(e);
        incoming[t].push(e);
    }
    let trident_label = g.trident().map(|t| m + t);

    // content key: (vertex class, out indices, sorted derivative indices)
    let mut cache: HashMap<(usize, Vec<usize>, Vec<usize>), Poly> = HashMap::new();
    let mut content = |v: usize, out: Vec<usize>, mut der: Vec<usize>| -> Poly {
        der.sort_unstable();
        let class = if v < m {
            v
        } else if Some(v) == trident_label {
            m + 1
        } else {
            m
        };
        cache
            .entry((class, out.clone(), der.clone()))
            .or_insert_with(|| {
                let mut base = if v < m {
                    match &args[v] {
                        Arg::Poly(q) => q.clone(),
                        Arg::Symbol => {
                            let powers: Vec<(usize, u32)> =
                                der.iter().map(|&i| (d + v * d + i, 1)).collect();
                            return Poly::monomial(nvars, &powers, BigRational::one());
                        }
                    }
                } else if Some(v) == trident_label {
                    jac.as_ref()
                        .expect("trident content")
                        .get(out[0], out[1], out[2])
                        .clone()
                } else {
                    p.get(out[0], out[1]).clone()
                };
                for &i in &der {
                    if base.is_zero() {
                        break;
                    }
                    base = base.derivative(i);
                }
                base
            })
            .clone()
    };

    let mut total = Poly::zero(nvars);
    let mut idx = vec![0usize; edges.len()];
    'outer: loop {
        let mut term = Poly::one(nvars);
        let mut zero = false;
        for v in 0..v_count {
            let out: Vec<usize> = outgoing[v].iter().map(|&e| idx[e]).collect();
            let der: Vec<usize> = incoming[v].iter().map(|&e| idx[e]).collect();
            let c = content(v, out, der);
            if c.is_zero() {
                zero = true;
                break;
            }
            term = &term * &c;
        }
        if !zero {
            total.add_assign(&term);
        }
        let mut k = 0;
        loop {
            if k == idx.len() {
                break 'outer;
            }
            idx[k] += 1;
            if idx[k] < d {
                break;
            }
            idx[k] = 0;
            k += 1;
        }
    }
    Ok(total)
}

/// Values of a series, keyed by `(ħ-order, z-exponent)`; zero entries are
/// omitted.
pub fn evaluate_series(
    s: &GraphSeries,
    p: &PolyBivector,
    args: &[Arg],
) -> Result<BTreeMap<(usize, usize), Poly>, EvalError> {
    let mut out: BTreeMap<(usize, usize), Poly> = BTreeMap::new();
    for (g, c) in s.iter() {
        let v = evaluate_graph(g, p, args)?;
        if v.is_zero() {
            continue;
        }
        for e in c.exponents() {
            let slot = out
                .entry((g.aerial(), e))
                .or_insert_with(|| Poly::zero(v.nvars()));
            slot.add_scaled(&v, &c.slice(e));
        }
    }
    out.retain(|_, v| !v.is_zero());
    Ok(out)
}

/// Values by ħ-order with `z` replaced by a rational number.
pub fn evaluate_series_at(
    s: &GraphSeries,
    p: &PolyBivector,
    args: &[Arg],
    z: &BigRational,
) -> Result<BTreeMap<usize, Poly>, EvalError> {
    let mut out: BTreeMap<usize, Poly> = BTreeMap::new();
    for ((n, e), v) in evaluate_series(s, p, args)? {
        let zpow = (0..e).fold(BigRational::one(), |acc, _| acc * z);
        if zpow.is_zero() {
            continue;
        }
        let nv = v.nvars();
        out.entry(n)
            .or_insert_with(|| Poly::zero(nv))
            .add_scaled(&v, &zpow);
    }
    out.retain(|_, v| !v.is_zero());
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn wedge_is_the_bracket() {
        let p = PolyBivector::so3();
        let x = |i| Arg::Poly(Poly::var(3, i));
        let v = evaluate_graph(&FormalityGraph::wedge(), &p, &[x(0), x(1)]).unwrap();
        assert_eq!(v, Poly::var(3, 2));
    }

    #[test]
    fn jacobiators() {
        assert!(PolyBivector::so3().is_poisson());
        assert!(PolyBivector::symplectic2().is_poisson());
        assert!(!PolyBivector::p0().is_poisson());
        assert!(!PolyBivector::affine_non_poisson().is_poisson());
    }

    #[test]
    fn arity_checked() {
        let p = PolyBivector::so3();
        assert!(matches!(
            evaluate_graph(&FormalityGraph::wedge(), &p, &[Arg::Symbol]),
            Err(EvalError::Arity { .. })
        ));
    }

    #[test]
    fn parses_bivector_files() {
        let p = PolyBivector::parse("dim 3\n1 2; x3\n2 3; x1\n1 3; -x2\n").unwrap();
        assert_eq!(p, PolyBivector::so3());
        assert!(PolyBivector::parse("dim 3\n2 1; x3\n").is_err());
        assert!(PolyBivector::parse("1 2; x3\n").is_err());
    }
}
