//! Sparse multivariate polynomials over ℚ.

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("malformed polynomial {text:?}: {reason}")]
pub struct PolyParseError {
    pub text: String,
    pub reason: String,
}

/// A polynomial in `nvars` variables; exponent vectors map to nonzero
/// rationals.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Poly {
    nvars: usize,
    terms: BTreeMap<Vec<u32>, BigRational>,
}

impl Poly {
    pub fn zero(nvars: usize) -> Self {
        Poly {
            nvars,
            terms: BTreeMap::new(),
        }
    }

    pub fn constant(nvars: usize, c: BigRational) -> Self {
        let mut p = Poly::zero(nvars);
        if !c.is_zero() {
            p.terms.insert(vec![0; nvars], c);
        }
        p
    }

    pub fn one(nvars: usize) -> Self {
        Poly::constant(nvars, BigRational::one())
    }

    pub fn integer(nvars: usize, n: i64) -> Self {
        Poly::constant(nvars, BigRational::from_integer(BigInt::from(n)))
    }

    /// The variable with 0-based index `i`.
    pub fn var(nvars: usize, i: usize) -> Self {
        Poly::monomial(nvars, &[(i, 1)], BigRational::one())
    }

    /// `c · Π x_i^{e_i}`.
    pub fn monomial(nvars: usize, powers: &[(usize, u32)], c: BigRational) -> Self {
        let mut exp = vec![0; nvars];
        for &(i, e) in powers {
            assert!(i < nvars, "variable {i} out of range");
            exp[i] += e;
        }
        let mut p = Poly::zero(nvars);
        if !c.is_zero() {
            p.terms.insert(exp, c);
        }
        p
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&[u32], &BigRational)> {
        self.terms.iter().map(|(e, c)| (e.as_slice(), c))
    }

    pub fn total_degree(&self) -> Option<u32> {
        self.terms.keys().map(|e| e.iter().sum()).max()
    }

    /// The same polynomial viewed in `nvars ≥ self.nvars()` variables.
    pub fn extend(&self, nvars: usize) -> Poly {
        assert!(nvars >= self.nvars, "cannot drop variables");
        Poly {
            nvars,
            terms: self
                .terms
                .iter()
                .map(|(e, c)| {
                    let mut e = e.clone();
                    e.resize(nvars, 0);
                    (e, c.clone())
                })
                .collect(),
        }
    }

    fn add_term(&mut self, exp: Vec<u32>, c: BigRational) {
        if c.is_zero() {
            return;
        }
        match self.terms.entry(exp) {
            std::collections::btree_map::Entry::Vacant(v) => {
                v.insert(c);
            }
            std::collections::btree_map::Entry::Occupied(mut o) => {
                *o.get_mut() += c;
                if o.get().is_zero() {
                    o.remove();
                }
            }
        }
    }

    pub fn add_assign(&mut self, other: &Poly) {
        assert_eq!(self.nvars, other.nvars, "variable count mismatch");
        for (e, c) in &other.terms {
            self.add_term(e.clone(), c.clone());
        }
    }

    /// `self += c · other`.
    pub fn add_scaled(&mut self, other: &Poly, c: &BigRational) {
        assert_eq!(self.nvars, other.nvars, "variable count mismatch");
        for (e, v) in &other.terms {
            self.add_term(e.clone(), v * c);
        }
    }

    pub fn scale(&self, c: &BigRational) -> Poly {
        let mut out = Poly::zero(self.nvars);
        out.add_scaled(self, c);
        out
    }

    /// `∂/∂x_i`.
    pub fn derivative(&self, i: usize) -> Poly {
        let mut out = Poly::zero(self.nvars);
        for (e, c) in &self.terms {
            if e[i] == 0 {
                continue;
            }
            let mut e2 = e.clone();
            e2[i] -= 1;
            out.add_term(e2, c * BigRational::from_integer(BigInt::from(e[i])));
        }
        out
    }

    /// Splits by the exponents of the variables in `range`: key is the
    /// exponent sub-vector, value the polynomial with those variables removed
    /// from the monomial (kept in the same variable count).
    pub fn split_by(&self, range: std::ops::Range<usize>) -> BTreeMap<Vec<u32>, Poly> {
        let mut out: BTreeMap<Vec<u32>, Poly> = BTreeMap::new();
        for (e, c) in &self.terms {
            let key = e[range.clone()].to_vec();
            let mut rest = e.clone();
            for x in &mut rest[range.clone()] {
                *x = 0;
            }
            out.entry(key)
                .or_insert_with(|| Poly::zero(self.nvars))
                .add_term(rest, c.clone());
        }
        out
    }

    /// Parses `x1..xN` polynomials such as `-3/2*x1^2*x3 + x2 - 1`.
    pub fn parse(text: &str, nvars: usize) -> Result<Poly, PolyParseError> {
        let err = |reason: String| PolyParseError {
            text: text.to_string(),
            reason,
        };
        let cleaned = text.replace('\u{2212}', "-");
        let mut out = Poly::zero(nvars);
        let mut sign = BigRational::one();
        let mut current = String::new();
        let mut terms = Vec::new();
        for ch in cleaned.chars() {
            match ch {
                '+' | '-' => {
                    let prev = current.trim_end().chars().last();
                    if matches!(prev, Some('/') | Some('^') | Some('*')) {
                        current.push(ch);
                        continue;
                    }
                    if current.trim().is_empty() {
                        if ch == '-' {
                            sign = -sign;
                        }
                        continue;
                    }
                    terms.push((sign.clone(), std::mem::take(&mut current)));
                    sign = if ch == '-' {
                        -BigRational::one()
                    } else {
                        BigRational::one()
                    };
                }
                _ => current.push(ch),
            }
        }
        if current.trim().is_empty() {
            return Err(err("empty or dangling term".into()));
        }
        terms.push((sign, current));
        for (sign, term) in terms {
            let mut coeff = sign;
            let mut exp = vec![0u32; nvars];
            for factor in term.split('*') {
                let factor = factor.trim();
                if let Some(rest) = factor.strip_prefix('x') {
                    let (idx, pow) = match rest.split_once('^') {
                        Some((i, p)) => (
                            i,
                            p.trim()
                                .parse::<u32>()
                                .map_err(|_| err(format!("bad power in {factor:?}")))?,
                        ),
                        None => (rest, 1),
                    };
                    let idx: usize = idx
                        .trim()
                        .parse()
                        .map_err(|_| err(format!("bad variable {factor:?}")))?;
                    if idx == 0 || idx > nvars {
                        return Err(err(format!("variable x{idx} out of range 1..={nvars}")));
                    }
                    exp[idx - 1] += pow;
                } else {
                    let r = match factor.split_once('/') {
                        Some((p, q)) => {
                            let p: BigInt = p
                                .trim()
                                .parse()
                                .map_err(|_| err(format!("bad number {factor:?}")))?;
                            let q: BigInt = q
                                .trim()
                                .parse()
                                .map_err(|_| err(format!("bad number {factor:?}")))?;
                            if q.is_zero() {
                                return Err(err("division by zero".into()));
                            }
                            BigRational::new(p, q)
                        }
                        None => BigRational::from_integer(
                            factor
                                .parse()
                                .map_err(|_| err(format!("bad factor {factor:?}")))?,
                        ),
                    };
                    coeff *= r;
                }
            }
            out.add_term(exp, coeff);
        }
        Ok(out)
    }
}

impl Add for &Poly {
    type Output = Poly;
    fn add(self, rhs: &Poly) -> Poly {
        let mut out = self.clone();
        out.add_assign(rhs);
        out
    }
}

impl Sub for &Poly {
    type Output = Poly;
    fn sub(self, rhs: &Poly) -> Poly {
        let mut out = self.clone();
        out.add_scaled(rhs, &-BigRational::one());
        out
    }
}

impl Neg for &Poly {
    type Output = Poly;
    fn neg(self) -> Poly {
        self.scale(&-BigRational::one())
    }
}

impl Mul for &Poly {
    type Output = Poly;
    fn mul(self, rhs: &Poly) -> Poly {
        assert_eq!(self.nvars, rhs.nvars, "variable count mismatch");
        let mut out = Poly::zero(self.nvars);
        for (e1, c1) in &self.terms {
            for (e2, c2) in &rhs.terms {
                let e: Vec<u32> = e1.iter().zip(e2).map(|(a, b)| a + b).collect();
                out.add_term(e, c1 * c2);
            }
        }
        out
    }
}

fn fmt_rational(r: &BigRational) -> String {
    if r.is_integer() {
        r.numer().to_string()
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

impl fmt::Display for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return f.write_str("0");
        }
        for (n, (e, c)) in self.terms.iter().rev().enumerate() {
            let neg = c.is_negative();
            match (n, neg) {
                (0, true) => f.write_str("-")?,
                (0, false) => {}
                (_, true) => f.write_str(" - ")?,
                (_, false) => f.write_str(" + ")?,
            }
            let abs = c.abs();
            let vars: Vec<String> = e
                .iter()
                .enumerate()
                .filter(|(_, &p)| p > 0)
                .map(|(i, &p)| {
                    if p == 1 {
                        format!("x{}", i + 1)
                    } else {
                        format!("x{}^{p}", i + 1)
                    }
                })
                .collect();
            if vars.is_empty() {
                f.write_str(&fmt_rational(&abs))?;
            } else if abs.is_one() {
                f.write_str(&vars.join("*"))?;
            } else {
                write!(f, "{}*{}", fmt_rational(&abs), vars.join("*"))?;
            }
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parse_and_print() {
        let p = Poly::parse("-3/2*x1^2*x3 + x2 - 1", 3).unwrap();
        assert_eq!(Poly::parse(&p.to_string(), 3).unwrap(), p);
        assert!(Poly::parse("x4", 3).is_err());
        assert!(Poly::parse("x1 +", 3).is_err());
    }

    #[test]
    fn product_rule() {
        let x = Poly::var(2, 0);
        let y = Poly::var(2, 1);
        let p = &(&x * &x) * &y;
        let d = p.derivative(0);
        assert_eq!(d, Poly::parse("2*x1*x2", 2).unwrap());
        assert!(d.derivative(0).derivative(0).is_zero());
    }
}
