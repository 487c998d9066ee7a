//! Coefficient vectors and univariate polynomials over the rationals.
//!
//! [`PolyVec`] is the fixed-length vector `u = (u₁, …, u_{n+1})` that
//! parametrizes companion matrices and Bezoutians; index `i` holds the
//! coefficient of `λ^i`. [`Poly`] is an ordinary trimmed polynomial used for
//! division, gcd and the Euclidean remainder sequences.

use std::fmt;
use std::str::FromStr;

use crate::error::{Error, Result};
use crate::rational::{format_list, parse_list, Rational};

/// The vector `(u₁, …, u_{n+1})` of a degree-`n` polynomial `u(λ) = Σ u_{i+1} λ^i`.
///
/// The length is at least 2. The endpoint coefficients may be zero; the
/// operations that need them nonzero (companion matrices) check for it.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct PolyVec {
    coeffs: Vec<Rational>,
}

impl PolyVec {
    pub fn new(coeffs: Vec<Rational>) -> Result<Self> {
        if coeffs.len() < 2 {
            return Err(Error::InvalidSize(format!(
                "a coefficient vector needs at least 2 entries, got {}",
                coeffs.len()
            )));
        }
        Ok(PolyVec { coeffs })
    }

    /// Integer literal; panics if fewer than 2 coefficients.
    pub fn from_ints(coeffs: &[i64]) -> Self {
        Self::new(coeffs.iter().map(|&c| Rational::int(c)).collect()).expect("at least 2 coefficients")
    }

    /// The degree `n`, i.e. one less than the vector length.
    pub fn n(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn coeffs(&self) -> &[Rational] {
        &self.coeffs
    }

    /// `u_{i+1}`, the coefficient of `λ^i`.
    pub fn coeff(&self, i: usize) -> &Rational {
        &self.coeffs[i]
    }

    /// `u₁`, the constant coefficient.
    pub fn first(&self) -> &Rational {
        &self.coeffs[0]
    }

    /// `u_{n+1}`, the coefficient of `λ^n`.
    pub fn last(&self) -> &Rational {
        &self.coeffs[self.n()]
    }

    pub fn first_nonzero(&self) -> bool {
        !self.first().is_zero()
    }

    pub fn last_nonzero(&self) -> bool {
        !self.last().is_zero()
    }

    pub fn require_endpoints(&self) -> Result<()> {
        if !self.first_nonzero() {
            return Err(Error::ZeroEndpoint { which: "u1" });
        }
        if !self.last_nonzero() {
            return Err(Error::ZeroEndpoint { which: "u(n+1)" });
        }
        Ok(())
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(Rational::is_zero)
    }

    /// `u^J = J u`.
    pub fn reverse(&self) -> PolyVec {
        PolyVec {
            coeffs: self.coeffs.iter().rev().cloned().collect(),
        }
    }

    /// `u(x)` by Horner's rule.
    pub fn eval(&self, x: &Rational) -> Rational {
        horner(&self.coeffs, x)
    }

    pub fn to_poly(&self) -> Poly {
        Poly::new(self.coeffs.clone())
    }

    /// Scalar multiple.
    pub fn scale(&self, c: &Rational) -> PolyVec {
        PolyVec {
            coeffs: self.coeffs.iter().map(|x| x * c).collect(),
        }
    }

    /// `a·self + b·other` for equal lengths.
    pub fn combine(&self, a: &Rational, other: &PolyVec, b: &Rational) -> Result<PolyVec> {
        if self.coeffs.len() != other.coeffs.len() {
            return Err(Error::DimensionMismatch {
                op: "linear combination",
                left: (self.coeffs.len(), 1),
                right: (other.coeffs.len(), 1),
            });
        }
        Ok(PolyVec {
            coeffs: self
                .coeffs
                .iter()
                .zip(&other.coeffs)
                .map(|(x, y)| a * x + b * y)
                .collect(),
        })
    }
}

impl FromStr for PolyVec {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        PolyVec::new(parse_list(s)?)
    }
}

impl fmt::Display for PolyVec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&format_list(&self.coeffs))
    }
}

impl fmt::Debug for PolyVec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "PolyVec({self})")
    }
}

/// `u(x)` for a plain coefficient slice.
pub fn poly_eval(u: &PolyVec, x: &Rational) -> Rational {
    u.eval(x)
}

fn horner(coeffs: &[Rational], x: &Rational) -> Rational {
    let mut acc = Rational::zero();
    for c in coeffs.iter().rev() {
        acc = &acc * x + c;
    }
    acc
}

/// A dense univariate polynomial with no trailing zero coefficients.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct Poly {
    coeffs: Vec<Rational>,
}

impl Poly {
    pub fn new(mut coeffs: Vec<Rational>) -> Self {
        while coeffs.last().is_some_and(Rational::is_zero) {
            coeffs.pop();
        }
        Poly { coeffs }
    }

    pub fn zero() -> Self {
        Poly { coeffs: Vec::new() }
    }

    pub fn one() -> Self {
        Poly {
            coeffs: vec![Rational::one()],
        }
    }

    /// `λ^k`.
    pub fn monomial(k: usize) -> Self {
        let mut coeffs = vec![Rational::zero(); k + 1];
        coeffs[k] = Rational::one();
        Poly { coeffs }
    }

    pub fn from_ints(coeffs: &[i64]) -> Self {
        Poly::new(coeffs.iter().map(|&c| Rational::int(c)).collect())
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn coeffs(&self) -> &[Rational] {
        &self.coeffs
    }

    /// Coefficient of `λ^i`, zero past the degree.
    pub fn coeff(&self, i: usize) -> Rational {
        self.coeffs.get(i).cloned().unwrap_or_else(Rational::zero)
    }

    pub fn lead(&self) -> Option<&Rational> {
        self.coeffs.last()
    }

    pub fn eval(&self, x: &Rational) -> Rational {
        horner(&self.coeffs, x)
    }

    /// Coefficients padded with zeros (or truncated) to `len` entries.
    pub fn padded(&self, len: usize) -> Vec<Rational> {
        (0..len).map(|i| self.coeff(i)).collect()
    }

    pub fn scale(&self, c: &Rational) -> Poly {
        if c.is_zero() {
            return Poly::zero();
        }
        Poly {
            coeffs: self.coeffs.iter().map(|x| x * c).collect(),
        }
    }

    pub fn monic(&self) -> Poly {
        match self.lead() {
            None => Poly::zero(),
            Some(l) => self.scale(&l.recip().expect("nonzero leading coefficient")),
        }
    }

    /// `λ^k · self`.
    pub fn shift(&self, k: usize) -> Poly {
        if self.is_zero() {
            return Poly::zero();
        }
        let mut coeffs = vec![Rational::zero(); k];
        coeffs.extend_from_slice(&self.coeffs);
        Poly { coeffs }
    }

    pub fn add(&self, rhs: &Poly) -> Poly {
        let len = self.coeffs.len().max(rhs.coeffs.len());
        Poly::new((0..len).map(|i| self.coeff(i) + rhs.coeff(i)).collect())
    }

    pub fn sub(&self, rhs: &Poly) -> Poly {
        let len = self.coeffs.len().max(rhs.coeffs.len());
        Poly::new((0..len).map(|i| self.coeff(i) - rhs.coeff(i)).collect())
    }

    pub fn mul(&self, rhs: &Poly) -> Poly {
        if self.is_zero() || rhs.is_zero() {
            return Poly::zero();
        }
        let mut out = vec![Rational::zero(); self.coeffs.len() + rhs.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in rhs.coeffs.iter().enumerate() {
                if !b.is_zero() {
                    out[i + j] += a * b;
                }
            }
        }
        Poly::new(out)
    }

    /// Euclidean division: `self = q·divisor + r` with `deg r < deg divisor`.
    pub fn div_rem(&self, divisor: &Poly) -> Result<(Poly, Poly)> {
        let dd = divisor.degree().ok_or(Error::Precondition("division by the zero polynomial".into()))?;
        let inv_lead = divisor.lead().and_then(Rational::recip).expect("nonzero lead");
        let mut rem = self.coeffs.clone();
        let Some(ds) = self.degree().filter(|&d| d >= dd) else {
            return Ok((Poly::zero(), self.clone()));
        };
        let mut quot = vec![Rational::zero(); ds - dd + 1];
        for k in (0..=ds - dd).rev() {
            let c = &rem[k + dd] * &inv_lead;
            if c.is_zero() {
                continue;
            }
            for (j, d) in divisor.coeffs.iter().enumerate() {
                if !d.is_zero() {
                    rem[k + j] -= &c * d;
                }
            }
            quot[k] = c;
        }
        rem.truncate(dd);
        Ok((Poly::new(quot), Poly::new(rem)))
    }

    /// Pseudo-division: returns `(q, r, f)` with `f·self = q·divisor + r`,
    /// `f = lead(divisor)^(δ+1)` and `δ = deg self − deg divisor`. No
    /// division is performed, so integer inputs give integer outputs.
    pub fn pseudo_div_rem(&self, divisor: &Poly) -> Result<(Poly, Poly, Rational)> {
        let dd = divisor.degree().ok_or(Error::Precondition("division by the zero polynomial".into()))?;
        let lead = divisor.lead().expect("nonzero lead").clone();
        let Some(ds) = self.degree().filter(|&d| d >= dd) else {
            return Ok((Poly::zero(), self.clone(), Rational::one()));
        };
        let mut rem = self.coeffs.clone();
        let mut quot = vec![Rational::zero(); ds - dd + 1];
        let mut factor = Rational::one();
        for k in (0..=ds - dd).rev() {
            let c = std::mem::take(&mut rem[k + dd]);
            for x in rem[..k + dd].iter_mut().chain(&mut quot[k + 1..]) {
                if !x.is_zero() {
                    *x *= &lead;
                }
            }
            factor *= &lead;
            if c.is_zero() {
                continue;
            }
            for (j, d) in divisor.coeffs[..dd].iter().enumerate() {
                if !d.is_zero() {
                    rem[k + j] -= &c * d;
                }
            }
            quot[k] = c;
        }
        rem.truncate(dd);
        Ok((Poly::new(quot), Poly::new(rem), factor))
    }
}

impl fmt::Display for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            f.write_str("0")
        } else {
            f.write_str(&format_list(&self.coeffs))
        }
    }
}

impl fmt::Debug for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Poly({self})")
    }
}

/// Monic greatest common divisor of `u(λ)` and `v(λ)` by Euclid's algorithm.
pub fn poly_gcd(u: &PolyVec, v: &PolyVec) -> Result<Poly> {
    gcd(&u.to_poly(), &v.to_poly())
}

pub fn gcd(a: &Poly, b: &Poly) -> Result<Poly> {
    if a.is_zero() && b.is_zero() {
        return Err(Error::BothZero);
    }
    let (mut a, mut b) = (a.monic(), b.monic());
    while !b.is_zero() {
        let (_, r) = a.div_rem(&b)?;
        a = b;
        b = r.monic();
    }
    Ok(a)
}

/// True when `gcd(u, v)` is a nonzero constant.
pub fn is_coprime(u: &PolyVec, v: &PolyVec) -> Result<bool> {
    Ok(poly_gcd(u, v)?.degree() == Some(0))
}

/// `u^J = J u`.
pub fn reverse(u: &PolyVec) -> PolyVec {
    u.reverse()
}
