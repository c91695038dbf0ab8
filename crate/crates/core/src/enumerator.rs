//! Formal weight enumerators and the Eisenstein polynomials of H₁.

use std::fmt;

use num_bigint::BigInt;
use num_traits::{One, Pow, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::exact::{parse_rational, rational_to_string, Rational};
use crate::poly::{binomial, HomogBivariate, UniPoly};

/// Homogeneous `Σ A_i x0^(n-i) x1^i` with `A_0 = 1`.
///
/// The minimum distance is always recomputed from the coefficients.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct FormalWeightEnumerator {
    poly: HomogBivariate,
}

impl FormalWeightEnumerator {
    pub fn new(coeffs: Vec<Rational>) -> Result<Self> {
        Self::from_bivariate(HomogBivariate::new(coeffs)?)
    }

    pub fn from_bivariate(poly: HomogBivariate) -> Result<Self> {
        if !poly.coeff(0).is_one() {
            return Err(Error::InvariantViolation(format!(
                "coefficient of x0^n is {}, expected 1",
                poly.coeff(0)
            )));
        }
        Ok(Self { poly })
    }

    pub fn degree(&self) -> usize {
        self.poly.degree()
    }

    pub fn coeffs(&self) -> &[Rational] {
        self.poly.coeffs()
    }

    pub fn as_bivariate(&self) -> &HomogBivariate {
        &self.poly
    }

    /// Smallest `i >= 1` with `A_i != 0`.
    pub fn min_distance(&self) -> Result<usize> {
        self.coeffs()
            .iter()
            .enumerate()
            .skip(1)
            .find(|(_, a)| !a.is_zero())
            .map(|(i, _)| i)
            .ok_or(Error::NoMinimumDistance)
    }
}

impl fmt::Display for FormalWeightEnumerator {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.poly.fmt(f)
    }
}

fn check_eisenstein_degree(ell: u32) -> Result<()> {
    if ell % 4 != 0 || ell < 8 {
        return Err(Error::UnsupportedDegree(ell));
    }
    Ok(())
}

/// `(-1)^(ℓ/4) + 2^((ℓ-4)/2)`, the x0^ℓ coefficient of the closed form.
pub fn eisenstein_leading(ell: u32) -> BigInt {
    let sign = if (ell / 4) % 2 == 0 { 1 } else { -1 };
    BigInt::from(sign) + BigInt::from(2).pow((ell - 4) / 2)
}

/// Closed form of the degree-`ell` Eisenstein polynomial of H₁.
pub fn eisenstein_closed_form(ell: u32) -> Result<HomogBivariate> {
    check_eisenstein_degree(ell)?;
    let sign = if (ell / 4) % 2 == 0 { 1 } else { -1 };
    let lead = Rational::from_integer(eisenstein_leading(ell));
    let n = ell as usize;
    let mut coeffs = vec![Rational::zero(); n + 1];
    coeffs[0] = lead.clone();
    coeffs[n] = lead;
    for j in (4..n).step_by(4) {
        coeffs[j] = Rational::from_integer(binomial(ell as u64, j as i64) * sign);
    }
    HomogBivariate::new(coeffs)
}

/// Outcome of dividing by the `x0^n` coefficient.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Normalized {
    Zero,
    Enumerator(FormalWeightEnumerator),
}

impl Normalized {
    pub fn into_enumerator(self) -> Option<FormalWeightEnumerator> {
        match self {
            Normalized::Zero => None,
            Normalized::Enumerator(f) => Some(f),
        }
    }
}

pub fn normalize(raw: &HomogBivariate) -> Result<Normalized> {
    if raw.is_zero() {
        return Ok(Normalized::Zero);
    }
    let lead = raw.coeff(0);
    if lead.is_zero() {
        return Err(Error::NoLeadingTerm);
    }
    let f = FormalWeightEnumerator::from_bivariate(raw.scale(&lead.recip()))?;
    Ok(Normalized::Enumerator(f))
}

/// Normalized Eisenstein polynomial of degree `ell` from the closed form.
pub fn normalized_eisenstein(ell: u32) -> Result<FormalWeightEnumerator> {
    match normalize(&eisenstein_closed_form(ell)?)? {
        Normalized::Enumerator(f) => Ok(f),
        Normalized::Zero => Err(Error::UnsupportedDegree(ell)),
    }
}

pub(crate) fn check_q(q: &Rational) -> Result<()> {
    if q.is_one() {
        Err(Error::InvalidQ)
    } else {
        Ok(())
    }
}

/// `N_f(t) = (1/(q-1)) Σ_{i=d}^{n} (A_i / C(n,i)) t^(i-d)`.
pub fn normalized_weight_enumerator(f: &FormalWeightEnumerator, q: &Rational) -> Result<UniPoly> {
    check_q(q)?;
    let d = f.min_distance()?;
    let n = f.degree();
    let scale = (q - Rational::one()).recip();
    let coeffs = (d..=n)
        .map(|i| {
            let c = Rational::from_integer(binomial(n as u64, i as i64));
            &f.coeffs()[i] / c * &scale
        })
        .collect();
    Ok(UniPoly::new(coeffs))
}

/// On-disk form: `{"degree": n, "coefficients": ["1", ..., "A_n"]}`.
#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct EnumeratorDocument {
    pub degree: usize,
    pub coefficients: Vec<String>,
}

impl EnumeratorDocument {
    pub fn from_enumerator(f: &FormalWeightEnumerator) -> Self {
        Self {
            degree: f.degree(),
            coefficients: f.coeffs().iter().map(rational_to_string).collect(),
        }
    }

    pub fn to_enumerator(&self) -> Result<FormalWeightEnumerator> {
        if self.coefficients.len() != self.degree + 1 {
            return Err(Error::Schema(format!(
                "degree {} needs {} coefficients, found {}",
                self.degree,
                self.degree + 1,
                self.coefficients.len()
            )));
        }
        let coeffs = self
            .coefficients
            .iter()
            .map(|s| parse_rational(s))
            .collect::<Result<Vec<_>>>()?;
        FormalWeightEnumerator::new(coeffs)
    }
}

pub fn load_enumerator(document: &str) -> Result<FormalWeightEnumerator> {
    let doc: EnumeratorDocument =
        serde_json::from_str(document).map_err(|e| Error::Schema(e.to_string()))?;
    doc.to_enumerator()
}

pub fn store_enumerator(f: &FormalWeightEnumerator) -> String {
    let mut s = serde_json::to_string_pretty(&EnumeratorDocument::from_enumerator(f))
        .expect("enumerator documents always serialize");
    s.push('\n');
    s
}
