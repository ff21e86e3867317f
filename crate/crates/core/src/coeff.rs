//! Exact coefficients in ℚ[z], where `z` stands for ζ(3)²/π⁶.
//!
//! Text form: terms `p/q`, `p/q*z`, `p/q*z^e` joined by `+` or `-`, highest
//! power of `z` first, e.g. `-3/128*z + 31/725760`.

use std::fmt;
use std::ops::{Add, AddAssign, Mul, Neg, Sub, SubAssign};
use std::str::FromStr;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("malformed coefficient {text:?}: {reason}")]
pub struct CoeffParseError {
    pub text: String,
    pub reason: String,
}

/// A polynomial in `z` with arbitrary-precision rational coefficients.
///
/// Stored densely by exponent with trailing zeros trimmed, so the zero
/// coefficient is the empty vector.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Default)]
pub struct Coefficient {
    terms: Vec<BigRational>,
}

impl Coefficient {
    pub fn zero() -> Self {
        Coefficient { terms: Vec::new() }
    }

    pub fn one() -> Self {
        Self::rational(BigRational::one())
    }

    pub fn rational(r: BigRational) -> Self {
        let mut c = Coefficient { terms: vec![r] };
        c.trim();
        c
    }

    pub fn integer(n: i64) -> Self {
        Self::rational(BigRational::from_integer(BigInt::from(n)))
    }

    pub fn ratio(p: i64, q: i64) -> Self {
        Self::rational(BigRational::new(BigInt::from(p), BigInt::from(q)))
    }

    /// `r · z^exponent`.
    pub fn monomial(r: BigRational, exponent: usize) -> Self {
        let mut terms = vec![BigRational::zero(); exponent + 1];
        terms[exponent] = r;
        let mut c = Coefficient { terms };
        c.trim();
        c
    }

    /// The formal symbol `z` itself.
    pub fn z() -> Self {
        Self::monomial(BigRational::one(), 1)
    }

    fn trim(&mut self) {
        while self.terms.last().is_some_and(|t| t.is_zero()) {
            self.terms.pop();
        }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// Degree in `z`; `None` for the zero coefficient.
    pub fn degree(&self) -> Option<usize> {
        self.terms.len().checked_sub(1)
    }

    /// Coefficient of `z^exponent`.
    pub fn slice(&self, exponent: usize) -> BigRational {
        self.terms
            .get(exponent)
            .cloned()
            .unwrap_or_else(BigRational::zero)
    }

    /// Exponents with a nonzero rational coefficient, ascending.
    pub fn exponents(&self) -> impl Iterator<Item = usize> + '_ {
        self.terms
            .iter()
            .enumerate()
            .filter(|(_, t)| !t.is_zero())
            .map(|(e, _)| e)
    }

    pub fn scale(&self, r: &BigRational) -> Self {
        let mut c = Coefficient {
            terms: self.terms.iter().map(|t| t * r).collect(),
        };
        c.trim();
        c
    }

    /// Substitutes a rational value for `z`.
    pub fn evaluate(&self, z: &BigRational) -> BigRational {
        self.terms
            .iter()
            .rev()
            .fold(BigRational::zero(), |acc, t| acc * z + t)
    }

    pub fn parse(text: &str) -> Result<Self, CoeffParseError> {
        text.parse()
    }
}

impl From<BigRational> for Coefficient {
    fn from(r: BigRational) -> Self {
        Self::rational(r)
    }
}

impl AddAssign<&Coefficient> for Coefficient {
    fn add_assign(&mut self, rhs: &Coefficient) {
        if self.terms.len() < rhs.terms.len() {
            self.terms.resize(rhs.terms.len(), BigRational::zero());
        }
        for (a, b) in self.terms.iter_mut().zip(&rhs.terms) {
            *a += b;
        }
        self.trim();
    }
}

impl SubAssign<&Coefficient> for Coefficient {
    fn sub_assign(&mut self, rhs: &Coefficient) {
        if self.terms.len() < rhs.terms.len() {
            self.terms.resize(rhs.terms.len(), BigRational::zero());
        }
        for (a, b) in self.terms.iter_mut().zip(&rhs.terms) {
            *a -= b;
        }
        self.trim();
    }
}

impl Add<&Coefficient> for &Coefficient {
    type Output = Coefficient;
    fn add(self, rhs: &Coefficient) -> Coefficient {
        let mut out = self.clone();
        out += rhs;
        out
    }
}

impl Sub<&Coefficient> for &Coefficient {
    type Output = Coefficient;
    fn sub(self, rhs: &Coefficient) -> Coefficient {
        let mut out = self.clone();
        out -= rhs;
        out
    }
}

impl Mul<&Coefficient> for &Coefficient {
    type Output = Coefficient;
    fn mul(self, rhs: &Coefficient) -> Coefficient {
        if self.is_zero() || rhs.is_zero() {
            return Coefficient::zero();
        }
        let mut terms = vec![BigRational::zero(); self.terms.len() + rhs.terms.len() - 1];
        for (i, a) in self.terms.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in rhs.terms.iter().enumerate() {
                terms[i + j] += a * b;
            }
        }
        let mut c = Coefficient { terms };
        c.trim();
        c
    }
}

impl Neg for &Coefficient {
    type Output = Coefficient;
    fn neg(self) -> Coefficient {
        Coefficient {
            terms: self.terms.iter().map(|t| -t).collect(),
        }
    }
}

impl Neg for Coefficient {
    type Output = Coefficient;
    fn neg(self) -> Coefficient {
        -&self
    }
}

fn fmt_rational(r: &BigRational) -> String {
    if r.is_integer() {
        r.numer().to_string()
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

impl fmt::Display for Coefficient {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return f.write_str("0");
        }
        let mut first = true;
        for (e, r) in self.terms.iter().enumerate().rev() {
            if r.is_zero() {
                continue;
            }
            let negative = r.is_negative();
            let abs = r.abs();
            if first {
                if negative {
                    f.write_str("-")?;
                }
            } else {
                f.write_str(if negative { " - " } else { " + " })?;
            }
            first = false;
            let body = match e {
                0 => fmt_rational(&abs),
                _ => {
                    let power = if e == 1 {
                        "z".to_string()
                    } else {
                        format!("z^{e}")
                    };
                    if abs.is_one() {
                        power
                    } else {
                        format!("{}*{power}", fmt_rational(&abs))
                    }
                }
            };
            f.write_str(&body)?;
        }
        Ok(())
    }
}

fn parse_rational(tok: &str) -> Option<BigRational> {
    match tok.split_once('/') {
        Some((p, q)) => {
            let p: BigInt = p.trim().parse().ok()?;
            let q: BigInt = q.trim().parse().ok()?;
            if q.is_zero() {
                return None;
            }
            Some(BigRational::new(p, q))
        }
        None => Some(BigRational::from_integer(tok.trim().parse().ok()?)),
    }
}

fn parse_term(term: &str) -> Option<(BigRational, usize)> {
    let mut value = BigRational::one();
    let mut exponent = 0usize;
    let mut saw_factor = false;
    for factor in term.split('*') {
        let factor = factor.trim();
        if factor.is_empty() {
            return None;
        }
        saw_factor = true;
        if let Some(rest) = factor.strip_prefix('z') {
            let rest = rest.trim();
            exponent += if rest.is_empty() {
                1
            } else {
                rest.strip_prefix('^')?.trim().parse::<usize>().ok()?
            };
        } else {
            value *= parse_rational(factor)?;
        }
    }
    saw_factor.then_some((value, exponent))
}

impl FromStr for Coefficient {
    type Err = CoeffParseError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let err = |reason: &str| CoeffParseError {
            text: s.to_string(),
            reason: reason.to_string(),
        };
        // accept the unicode minus sign as well
        let text = s.replace('\u{2212}', "-");
        let text = text.trim();
        if text.is_empty() {
            return Err(err("empty"));
        }
        let mut out = Coefficient::zero();
        let mut sign = 1;
        let mut current = String::new();
        let flush = |current: &mut String,
                     sign: i32,
                     out: &mut Coefficient|
         -> Result<(), CoeffParseError> {
            let (mut value, e) = parse_term(current).ok_or_else(|| err("bad term"))?;
            if sign < 0 {
                value = -value;
            }
            *out += &Coefficient::monomial(value, e);
            current.clear();
            Ok(())
        };
        for ch in text.chars() {
            match ch {
                '+' | '-' => {
                    // a sign right after '/' or '^' is not a term separator
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
                    flush(&mut current, sign, &mut out)?;
                    sign = if ch == '-' { -1 } else { 1 };
                }
                _ => current.push(ch),
            }
        }
        if current.trim().is_empty() {
            return Err(err("trailing operator"));
        }
        flush(&mut current, sign, &mut out)?;
        Ok(out)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(p: i64, d: i64) -> BigRational {
        BigRational::new(p.into(), d.into())
    }

    #[test]
    fn adds_fractions() {
        let s = &Coefficient::ratio(1, 2) + &Coefficient::ratio(1, 3);
        assert_eq!(s, Coefficient::ratio(5, 6));
        assert_eq!(s.to_string(), "5/6");
    }

    #[test]
    fn parses_l1_weight() {
        let w: Coefficient = "-3/128*z + 31/725760".parse().unwrap();
        assert_eq!(w.slice(1), q(-3, 128));
        assert_eq!(w.slice(0), q(31, 725760));
        assert_eq!(w.to_string(), "-3/128*z + 31/725760");
        assert!((&w * &Coefficient::zero()).is_zero());
        let unicode: Coefficient = "\u{2212}3/128*z + 31/725760".parse().unwrap();
        assert_eq!(unicode, w);
    }

    #[test]
    fn slices() {
        let c = Coefficient::ratio(5, 6);
        assert_eq!(c.slice(0), q(5, 6));
        assert_eq!(c.slice(1), q(0, 1));
    }

    #[test]
    fn multiplies_polynomially() {
        let a: Coefficient = "2 + 3*z".parse().unwrap();
        let b: Coefficient = "5 - z".parse().unwrap();
        assert_eq!((&a * &b).to_string(), "-3*z^2 + 13*z + 10");
    }

    #[test]
    fn parse_forms() {
        for (text, shown) in [
            ("0", "0"),
            ("-1", "-1"),
            ("z", "z"),
            ("-z", "-z"),
            ("1/2*z^3 - 4/6", "1/2*z^3 - 2/3"),
            ("  7 * z  +  -1/2 ", "7*z - 1/2"),
            ("3/-4", "-3/4"),
        ] {
            let c: Coefficient = text.parse().unwrap();
            assert_eq!(c.to_string(), shown, "{text}");
            assert_eq!(c.to_string().parse::<Coefficient>().unwrap(), c);
        }
        for bad in ["", "+", "1 +", "1/0", "x", "z^", "1 * * 2"] {
            assert!(bad.parse::<Coefficient>().is_err(), "{bad:?}");
        }
    }

    #[test]
    fn evaluates_at_rational_z() {
        let c: Coefficient = "2*z + 1".parse().unwrap();
        assert_eq!(c.evaluate(&q(1, 2)), q(2, 1));
    }
}
