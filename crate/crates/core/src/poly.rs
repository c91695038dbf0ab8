//! Dense exact-rational polynomials and truncated power series.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};
use crate::exact::{int, rational_vec, Rational};

/// `C(n, k)`, zero outside `0 <= k <= n`.
pub fn binomial(n: u64, k: i64) -> BigInt {
    if k < 0 || k as u64 > n {
        return BigInt::zero();
    }
    let k = (k as u64).min(n - k as u64);
    let mut acc = BigInt::one();
    for i in 0..k {
        acc *= n - i;
        acc /= i + 1;
    }
    acc
}

/// Writes `Σ c_k · mono(k)` with signs folded into the separators.
pub(crate) fn write_terms<'a, I, F>(f: &mut fmt::Formatter<'_>, terms: I, mono: F) -> fmt::Result
where
    I: Iterator<Item = (usize, &'a Rational)>,
    F: Fn(usize) -> String,
{
    let mut first = true;
    for (k, c) in terms {
        if c.is_zero() {
            continue;
        }
        let m = mono(k);
        let neg = c.is_negative();
        let mag = c.abs();
        match (first, neg) {
            (true, true) => f.write_str("-")?,
            (true, false) => {}
            (false, true) => f.write_str(" - ")?,
            (false, false) => f.write_str(" + ")?,
        }
        first = false;
        if m.is_empty() {
            write!(f, "{mag}")?;
        } else if mag.is_one() {
            f.write_str(&m)?;
        } else {
            write!(f, "{mag} {m}")?;
        }
    }
    if first {
        f.write_str("0")?;
    }
    Ok(())
}

fn power_label(var: &str, k: usize) -> String {
    match k {
        0 => String::new(),
        1 => var.to_owned(),
        _ => format!("{var}^{k}"),
    }
}

/// Univariate polynomial; `coeffs[i]` multiplies `T^i`, trailing zeros
/// trimmed.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct UniPoly {
    coeffs: Vec<Rational>,
}

impl UniPoly {
    pub fn new(mut coeffs: Vec<Rational>) -> Self {
        while coeffs.last().is_some_and(Zero::is_zero) {
            coeffs.pop();
        }
        Self { coeffs }
    }

    pub fn from_ints(cs: &[i64]) -> Self {
        Self::new(cs.iter().map(|&c| int(c)).collect())
    }

    pub fn zero() -> Self {
        Self::default()
    }

    pub fn constant(c: Rational) -> Self {
        Self::new(vec![c])
    }

    pub fn monomial(c: Rational, k: usize) -> Self {
        let mut v = vec![Rational::zero(); k + 1];
        v[k] = c;
        Self::new(v)
    }

    pub fn coeffs(&self) -> &[Rational] {
        &self.coeffs
    }

    pub fn coeff(&self, i: usize) -> Rational {
        self.coeffs.get(i).cloned().unwrap_or_else(Rational::zero)
    }

    /// `None` marks the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn scale(&self, c: &Rational) -> Self {
        Self::new(self.coeffs.iter().map(|a| a * c).collect())
    }

    pub fn eval(&self, x: &Rational) -> Rational {
        self.coeffs
            .iter()
            .rev()
            .fold(Rational::zero(), |acc, c| acc * x + c)
    }

    /// Euclidean division over ℚ.
    pub fn div_rem(&self, divisor: &UniPoly) -> Result<(UniPoly, UniPoly)> {
        let dd = divisor.degree().ok_or(Error::DivisionByZero)?;
        let lead = &divisor.coeffs[dd];
        let mut rem = self.coeffs.clone();
        let Some(nd) = self.degree().filter(|&n| n >= dd) else {
            return Ok((UniPoly::zero(), self.clone()));
        };
        let mut quot = vec![Rational::zero(); nd - dd + 1];
        for k in (0..=nd - dd).rev() {
            let c = &rem[k + dd] / lead;
            if c.is_zero() {
                continue;
            }
            for (j, dc) in divisor.coeffs.iter().enumerate() {
                rem[k + j] -= &c * dc;
            }
            quot[k] = c;
        }
        Ok((UniPoly::new(quot), UniPoly::new(rem)))
    }

    pub fn to_series(&self, order: usize) -> TruncatedSeries {
        TruncatedSeries::new(self.coeffs.clone(), order)
    }

    /// Display adapter using `var` as the indeterminate.
    pub fn display_in<'a>(&'a self, var: &'a str) -> impl fmt::Display + 'a {
        struct D<'a>(&'a UniPoly, &'a str);
        impl fmt::Display for D<'_> {
            fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
                write_terms(f, self.0.coeffs.iter().enumerate(), |k| power_label(self.1, k))
            }
        }
        D(self, var)
    }
}

impl fmt::Display for UniPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.display_in("T"))
    }
}

impl Serialize for UniPoly {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        rational_vec::serialize(&self.coeffs, s)
    }
}

impl<'de> Deserialize<'de> for UniPoly {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        rational_vec::deserialize(d).map(UniPoly::new)
    }
}

impl Add for &UniPoly {
    type Output = UniPoly;
    fn add(self, o: &UniPoly) -> UniPoly {
        let n = self.coeffs.len().max(o.coeffs.len());
        UniPoly::new((0..n).map(|i| self.coeff(i) + o.coeff(i)).collect())
    }
}

impl Sub for &UniPoly {
    type Output = UniPoly;
    fn sub(self, o: &UniPoly) -> UniPoly {
        let n = self.coeffs.len().max(o.coeffs.len());
        UniPoly::new((0..n).map(|i| self.coeff(i) - o.coeff(i)).collect())
    }
}

impl Mul for &UniPoly {
    type Output = UniPoly;
    fn mul(self, o: &UniPoly) -> UniPoly {
        if self.is_zero() || o.is_zero() {
            return UniPoly::zero();
        }
        let mut out = vec![Rational::zero(); self.coeffs.len() + o.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in o.coeffs.iter().enumerate() {
                out[i + j] += a * b;
            }
        }
        UniPoly::new(out)
    }
}

impl Neg for &UniPoly {
    type Output = UniPoly;
    fn neg(self) -> UniPoly {
        UniPoly::new(self.coeffs.iter().map(|c| -c).collect())
    }
}

impl Add for UniPoly {
    type Output = UniPoly;
    fn add(self, o: UniPoly) -> UniPoly {
        &self + &o
    }
}

impl Sub for UniPoly {
    type Output = UniPoly;
    fn sub(self, o: UniPoly) -> UniPoly {
        &self - &o
    }
}

impl Mul for UniPoly {
    type Output = UniPoly;
    fn mul(self, o: UniPoly) -> UniPoly {
        &self * &o
    }
}

/// Power series known modulo `T^(order+1)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TruncatedSeries {
    order: usize,
    coeffs: Vec<Rational>,
}

impl TruncatedSeries {
    /// Pads or truncates `coeffs` to exactly `order + 1` entries.
    pub fn new(mut coeffs: Vec<Rational>, order: usize) -> Self {
        coeffs.resize(order + 1, Rational::zero());
        Self { order, coeffs }
    }

    pub fn zero(order: usize) -> Self {
        Self::new(Vec::new(), order)
    }

    pub fn constant(c: Rational, order: usize) -> Self {
        Self::new(vec![c], order)
    }

    /// `1 / (1 - r T)` to the given order.
    pub fn geometric(r: &Rational, order: usize) -> Self {
        let mut coeffs = Vec::with_capacity(order + 1);
        let mut p = Rational::one();
        for _ in 0..=order {
            coeffs.push(p.clone());
            p *= r;
        }
        Self { order, coeffs }
    }

    pub fn order(&self) -> usize {
        self.order
    }

    pub fn coeffs(&self) -> &[Rational] {
        &self.coeffs
    }

    /// `[T^k]` of the series.
    pub fn coefficient(&self, k: usize) -> Result<&Rational> {
        self.coeffs.get(k).ok_or(Error::OrderExceeded {
            k,
            order: self.order,
        })
    }

    pub fn scale(&self, c: &Rational) -> Self {
        Self {
            order: self.order,
            coeffs: self.coeffs.iter().map(|a| a * c).collect(),
        }
    }

    pub fn truncate(&self, order: usize) -> Self {
        Self::new(self.coeffs.clone(), order.min(self.order))
    }

    /// Multiplicative inverse modulo `T^(order+1)`.
    pub fn invert(&self) -> Result<Self> {
        let a0 = &self.coeffs[0];
        if a0.is_zero() {
            return Err(Error::NonUnitSeries);
        }
        let inv0 = a0.recip();
        let mut out: Vec<Rational> = Vec::with_capacity(self.order + 1);
        out.push(inv0.clone());
        for k in 1..=self.order {
            let mut s = Rational::zero();
            for j in 1..=k {
                let a = &self.coeffs[j];
                if !a.is_zero() {
                    s += a * &out[k - j];
                }
            }
            out.push(-s * &inv0);
        }
        Ok(Self {
            order: self.order,
            coeffs: out,
        })
    }

    pub fn to_poly(&self) -> UniPoly {
        UniPoly::new(self.coeffs.clone())
    }
}

impl Add for &TruncatedSeries {
    type Output = TruncatedSeries;
    fn add(self, o: &TruncatedSeries) -> TruncatedSeries {
        let order = self.order.min(o.order);
        TruncatedSeries {
            order,
            coeffs: (0..=order).map(|i| &self.coeffs[i] + &o.coeffs[i]).collect(),
        }
    }
}

impl Sub for &TruncatedSeries {
    type Output = TruncatedSeries;
    fn sub(self, o: &TruncatedSeries) -> TruncatedSeries {
        let order = self.order.min(o.order);
        TruncatedSeries {
            order,
            coeffs: (0..=order).map(|i| &self.coeffs[i] - &o.coeffs[i]).collect(),
        }
    }
}

/// Product truncated to the smaller of the two orders.
impl Mul for &TruncatedSeries {
    type Output = TruncatedSeries;
    fn mul(self, o: &TruncatedSeries) -> TruncatedSeries {
        let order = self.order.min(o.order);
        let mut out = vec![Rational::zero(); order + 1];
        for (i, a) in self.coeffs.iter().take(order + 1).enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in o.coeffs.iter().take(order + 1 - i).enumerate() {
                if !b.is_zero() {
                    out[i + j] += a * b;
                }
            }
        }
        TruncatedSeries { order, coeffs: out }
    }
}

impl fmt::Display for TruncatedSeries {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write_terms(f, self.coeffs.iter().enumerate(), |k| power_label("T", k))?;
        write!(f, " + O(T^{})", self.order + 1)
    }
}

/// Substitutes `t = T/(1-T)` into `n` and expands to the given order.
pub fn compose_t_over_one_minus_t(n: &UniPoly, order: usize) -> TruncatedSeries {
    // multiplying by T/(1-T) is a shift followed by prefix sums
    let mut acc = vec![Rational::zero(); order + 1];
    for c in n.coeffs().iter().rev() {
        let mut running = Rational::zero();
        for slot in acc.iter_mut() {
            let prev = std::mem::replace(slot, running.clone());
            running += prev;
        }
        acc[0] += c;
    }
    TruncatedSeries::new(acc, order)
}

/// `Σ A_i x0^(n-i) x1^i`, stored as exactly `n + 1` coefficients.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct HomogBivariate {
    coeffs: Vec<Rational>,
}

impl HomogBivariate {
    /// `coeffs.len()` fixes the degree as `len - 1`; an empty vector is
    /// rejected.
    pub fn new(coeffs: Vec<Rational>) -> Result<Self> {
        if coeffs.is_empty() {
            return Err(Error::Schema("homogeneous polynomial needs n + 1 >= 1 coefficients".into()));
        }
        Ok(Self { coeffs })
    }

    pub fn from_ints(cs: &[i64]) -> Result<Self> {
        Self::new(cs.iter().map(|&c| int(c)).collect())
    }

    pub fn zero(degree: usize) -> Self {
        Self {
            coeffs: vec![Rational::zero(); degree + 1],
        }
    }

    pub fn degree(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn coeffs(&self) -> &[Rational] {
        &self.coeffs
    }

    pub fn coeff(&self, i: usize) -> &Rational {
        &self.coeffs[i]
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(Zero::is_zero)
    }

    pub fn scale(&self, c: &Rational) -> Self {
        Self {
            coeffs: self.coeffs.iter().map(|a| a * c).collect(),
        }
    }

    pub fn into_coeffs(self) -> Vec<Rational> {
        self.coeffs
    }
}

impl Mul for &HomogBivariate {
    type Output = HomogBivariate;
    fn mul(self, o: &HomogBivariate) -> HomogBivariate {
        let mut out = vec![Rational::zero(); self.degree() + o.degree() + 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            for (j, b) in o.coeffs.iter().enumerate() {
                out[i + j] += a * b;
            }
        }
        HomogBivariate { coeffs: out }
    }
}

impl fmt::Display for HomogBivariate {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let n = self.degree();
        write_terms(f, self.coeffs.iter().enumerate(), |i| {
            let a = power_label("x0", n - i);
            let b = power_label("x1", i);
            match (a.is_empty(), b.is_empty()) {
                (true, true) => String::new(),
                (false, true) => a,
                (true, false) => b,
                (false, false) => format!("{a} {b}"),
            }
        })
    }
}
