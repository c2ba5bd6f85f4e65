//! Dense integer polynomials with arbitrary-precision coefficients.

mod bivar;
mod gcd;
mod resultant;
mod series;

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::de::Error as _;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};

pub use bivar::BivarPoly;
pub use gcd::gcd;
pub use resultant::{prem, resultant, resultant_bivar};
pub use series::power_series_root;

/// Arbitrary-precision integer. `num_bigint` keeps it canonical.
pub type BigIntScalar = BigInt;

/// Dense polynomial over ℤ, constant term first.
///
/// The coefficient vector never ends in a zero; the zero polynomial is the
/// empty vector.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct IntPoly {
    coeffs: Vec<BigInt>,
}

impl IntPoly {
    pub fn new(mut coeffs: Vec<BigInt>) -> Self {
        while coeffs.last().is_some_and(|c| c.is_zero()) {
            coeffs.pop();
        }
        IntPoly { coeffs }
    }

    pub fn from_i64(coeffs: &[i64]) -> Self {
        Self::new(coeffs.iter().map(|&c| BigInt::from(c)).collect())
    }

    pub fn zero() -> Self {
        IntPoly { coeffs: Vec::new() }
    }

    pub fn one() -> Self {
        Self::constant(BigInt::one())
    }

    pub fn constant(c: BigInt) -> Self {
        Self::new(vec![c])
    }

    /// The monomial `x`.
    pub fn x() -> Self {
        Self::from_i64(&[0, 1])
    }

    /// `c·x^k`.
    pub fn monomial(c: BigInt, k: usize) -> Self {
        let mut v = vec![BigInt::zero(); k + 1];
        v[k] = c;
        Self::new(v)
    }

    pub fn coeffs(&self) -> &[BigInt] {
        &self.coeffs
    }

    pub fn into_coeffs(self) -> Vec<BigInt> {
        self.coeffs
    }

    /// Coefficient of `x^k`, zero beyond the degree.
    pub fn coeff(&self, k: usize) -> BigInt {
        self.coeffs.get(k).cloned().unwrap_or_default()
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Degree, or `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    /// Degree with the zero polynomial mapped to 0.
    pub fn deg(&self) -> usize {
        self.degree().unwrap_or(0)
    }

    pub fn leading(&self) -> Option<&BigInt> {
        self.coeffs.last()
    }

    pub fn is_monic(&self) -> bool {
        self.leading().is_some_and(|c| c.is_one())
    }

    pub fn eval(&self, x: &BigInt) -> BigInt {
        let mut acc = BigInt::zero();
        for c in self.coeffs.iter().rev() {
            acc = acc * x + c;
        }
        acc
    }

    /// Horner evaluation in floating point; coefficients are rounded first.
    pub fn eval_f64(&self, x: crate::C64) -> crate::C64 {
        let mut acc = crate::C64::new(0.0, 0.0);
        for c in self.coeffs.iter().rev() {
            acc = acc * x + c.to_f64().unwrap_or(f64::NAN);
        }
        acc
    }

    pub fn scale(&self, k: &BigInt) -> Self {
        if k.is_zero() {
            return Self::zero();
        }
        IntPoly { coeffs: self.coeffs.iter().map(|c| c * k).collect() }
    }

    /// Divides every coefficient by `k`, which must divide each exactly.
    pub fn div_scalar(&self, k: &BigInt) -> Result<Self> {
        let mut out = Vec::with_capacity(self.coeffs.len());
        for c in &self.coeffs {
            let (q, r) = c.div_rem(k);
            if !r.is_zero() {
                return Err(Error::NonDivisible);
            }
            out.push(q);
        }
        Ok(IntPoly { coeffs: out })
    }

    /// Nonnegative gcd of the coefficients.
    pub fn content(&self) -> BigInt {
        let mut g = BigInt::zero();
        for c in &self.coeffs {
            g = g.gcd(c);
            if g.is_one() {
                break;
            }
        }
        g
    }

    /// `self / content(self)`, keeping the sign of every coefficient.
    pub fn primitive_part(&self) -> Self {
        let g = self.content();
        if g.is_zero() || g.is_one() {
            return self.clone();
        }
        self.div_scalar(&g).expect("content divides every coefficient")
    }

    /// Multiplies by −1 if needed so the leading coefficient is positive.
    pub fn normalize_sign(self) -> Self {
        match self.leading() {
            Some(l) if l.is_negative() => -self,
            _ => self,
        }
    }

    pub fn derivative(&self) -> Self {
        Self::new(
            self.coeffs
                .iter()
                .enumerate()
                .skip(1)
                .map(|(k, c)| c * BigInt::from(k))
                .collect(),
        )
    }

    pub fn pow(&self, e: u32) -> Self {
        let mut result = Self::one();
        let mut base = self.clone();
        let mut e = e;
        while e > 0 {
            if e & 1 == 1 {
                result = &result * &base;
            }
            e >>= 1;
            if e > 0 {
                base = &base * &base;
            }
        }
        result
    }

    /// `self += factor · x^shift · other`.
    fn add_assign_shifted(&mut self, other: &IntPoly, factor: &BigInt, shift: usize) {
        if self.coeffs.len() < other.coeffs.len() + shift {
            self.coeffs.resize(other.coeffs.len() + shift, BigInt::zero());
        }
        for (i, c) in other.coeffs.iter().enumerate() {
            self.coeffs[i + shift] += c * factor;
        }
        self.trim();
    }

    fn trim(&mut self) {
        while self.coeffs.last().is_some_and(|c| c.is_zero()) {
            self.coeffs.pop();
        }
    }
}

pub fn add(p: &IntPoly, q: &IntPoly) -> IntPoly {
    p + q
}

pub fn sub(p: &IntPoly, q: &IntPoly) -> IntPoly {
    p - q
}

pub fn mul(p: &IntPoly, q: &IntPoly) -> IntPoly {
    p * q
}

pub fn derivative(p: &IntPoly) -> IntPoly {
    p.derivative()
}

/// Quotient `p / q` over ℤ; fails unless the remainder is zero.
pub fn exact_div(p: &IntPoly, q: &IntPoly) -> Result<IntPoly> {
    let lq = q.leading().ok_or(Error::ZeroInput)?;
    let Some(dp) = p.degree() else {
        return Ok(IntPoly::zero());
    };
    let dq = q.deg();
    if dp < dq {
        return Err(Error::NonDivisible);
    }
    let mut r = p.coeffs.clone();
    let mut quot = vec![BigInt::zero(); dp - dq + 1];
    for k in (0..=dp - dq).rev() {
        let (t, rem) = r[k + dq].div_rem(lq);
        if !rem.is_zero() {
            return Err(Error::NonDivisible);
        }
        if !t.is_zero() {
            for (i, c) in q.coeffs.iter().enumerate() {
                r[k + i] -= &t * c;
            }
        }
        quot[k] = t;
    }
    if r.iter().any(|c| !c.is_zero()) {
        return Err(Error::NonDivisible);
    }
    Ok(IntPoly::new(quot))
}

impl Add for &IntPoly {
    type Output = IntPoly;
    fn add(self, rhs: &IntPoly) -> IntPoly {
        let (long, short) = if self.coeffs.len() >= rhs.coeffs.len() {
            (self, rhs)
        } else {
            (rhs, self)
        };
        let mut v = long.coeffs.clone();
        for (a, b) in v.iter_mut().zip(&short.coeffs) {
            *a += b;
        }
        IntPoly::new(v)
    }
}

impl Sub for &IntPoly {
    type Output = IntPoly;
    fn sub(self, rhs: &IntPoly) -> IntPoly {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        let mut v = self.coeffs.clone();
        v.resize(n, BigInt::zero());
        for (a, b) in v.iter_mut().zip(&rhs.coeffs) {
            *a -= b;
        }
        IntPoly::new(v)
    }
}

impl Mul for &IntPoly {
    type Output = IntPoly;
    fn mul(self, rhs: &IntPoly) -> IntPoly {
        if self.is_zero() || rhs.is_zero() {
            return IntPoly::zero();
        }
        let mut v = vec![BigInt::zero(); self.coeffs.len() + rhs.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in rhs.coeffs.iter().enumerate() {
                v[i + j] += a * b;
            }
        }
        IntPoly::new(v)
    }
}

impl Neg for &IntPoly {
    type Output = IntPoly;
    fn neg(self) -> IntPoly {
        IntPoly { coeffs: self.coeffs.iter().map(|c| -c).collect() }
    }
}

impl Neg for IntPoly {
    type Output = IntPoly;
    fn neg(self) -> IntPoly {
        -&self
    }
}

macro_rules! forward_owned {
    ($tr:ident, $f:ident) => {
        impl $tr for IntPoly {
            type Output = IntPoly;
            fn $f(self, rhs: IntPoly) -> IntPoly {
                (&self).$f(&rhs)
            }
        }
    };
}
forward_owned!(Add, add);
forward_owned!(Sub, sub);
forward_owned!(Mul, mul);

impl fmt::Debug for IntPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "IntPoly({self})")
    }
}

impl fmt::Display for IntPoly {
    /// Highest degree first, e.g. `x^3 + 2x^2 + x + 1`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (k, c) in self.coeffs.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            let mag = c.abs();
            if first {
                if c.is_negative() {
                    write!(f, "-")?;
                }
            } else {
                write!(f, " {} ", if c.is_negative() { '-' } else { '+' })?;
            }
            first = false;
            match (k, mag.is_one()) {
                (0, _) => write!(f, "{mag}")?,
                (1, true) => write!(f, "x")?,
                (1, false) => write!(f, "{mag}x")?,
                (_, true) => write!(f, "x^{k}")?,
                (_, false) => write!(f, "{mag}x^{k}")?,
            }
        }
        Ok(())
    }
}

impl Serialize for IntPoly {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.collect_seq(self.coeffs.iter().map(|c| c.to_string()))
    }
}

impl<'de> Deserialize<'de> for IntPoly {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let strings = Vec::<String>::deserialize(d)?;
        let coeffs = strings
            .iter()
            .map(|s| s.parse::<BigInt>().map_err(D::Error::custom))
            .collect::<std::result::Result<Vec<_>, _>>()?;
        Ok(IntPoly::new(coeffs))
    }
}
