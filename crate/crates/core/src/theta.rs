//! Genus-1 theta constants and the theta map on weight enumerators.
//!
//! Series are in the nome `u = exp(πiτ/2)`, so `f_a(τ) = Σ_{b ≡ a (2)} u^(b²)`
//! has integer exponents. Exponent `4k` corresponds to `q^k` for the
//! classical `q = exp(2πiτ)`.

use num_bigint::BigInt;
use num_traits::{One, Zero};
use serde::Serialize;

use crate::enumerator::FormalWeightEnumerator;
use crate::error::Result;
use crate::exact::{is_p_integral, lcm_of_denominators, padic_valuation, rational_vec, Rational, Valuation};
use crate::poly::HomogBivariate;

pub const NOME: &str = "exp(pi*i*tau/2)";

/// Series in the nome known modulo `u^(order+1)`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct QSeries {
    nome: &'static str,
    order: usize,
    #[serde(with = "rational_vec")]
    coefficients: Vec<Rational>,
}

impl QSeries {
    pub fn new(mut coefficients: Vec<Rational>, order: usize) -> Self {
        coefficients.resize(order + 1, Rational::zero());
        Self {
            nome: NOME,
            order,
            coefficients,
        }
    }

    pub fn order(&self) -> usize {
        self.order
    }

    pub fn coeffs(&self) -> &[Rational] {
        &self.coefficients
    }

    pub fn coeff(&self, k: usize) -> &Rational {
        &self.coefficients[k]
    }
}

/// Sparse theta constant: `(exponent, multiplicity)` pairs up to `order`.
fn theta_terms(a: u8, order: usize) -> Vec<(usize, i64)> {
    let mut out = Vec::new();
    let mut b = (a % 2) as usize;
    while b * b <= order {
        out.push((b * b, if b == 0 { 1 } else { 2 }));
        b += 2;
    }
    out
}

/// `f_a = Σ_{b ∈ ℤ, b ≡ a (mod 2)} u^(b²)` to the given order.
pub fn theta_constant(a: u8, order: usize) -> QSeries {
    let mut coeffs = vec![Rational::zero(); order + 1];
    for (e, m) in theta_terms(a, order) {
        coeffs[e] = Rational::from_integer(BigInt::from(m));
    }
    QSeries::new(coeffs, order)
}

fn mul_sparse(dense: &[BigInt], sparse: &[(usize, i64)], order: usize) -> Vec<BigInt> {
    let mut out = vec![BigInt::zero(); order + 1];
    for (i, a) in dense.iter().enumerate() {
        if a.is_zero() {
            continue;
        }
        for &(e, m) in sparse {
            if i + e > order {
                break;
            }
            out[i + e] += a * m;
        }
    }
    out
}

/// Substitutes `x0 ← f_0`, `x1 ← f_1` into a homogeneous polynomial.
///
/// Evaluated as the homogeneous Horner scheme
/// `(((A_0 f_0 + A_1 f_1) f_0 + A_2 f_1²) f_0 + ...)` over integers after
/// clearing denominators, so every step multiplies by a sparse series.
pub fn th_map_poly(f: &HomogBivariate, order: usize) -> QSeries {
    let scale = lcm_of_denominators(f.coeffs());
    let ints: Vec<BigInt> = f
        .coeffs()
        .iter()
        .map(|c| (c * Rational::from_integer(scale.clone())).to_integer())
        .collect();
    let t0 = theta_terms(0, order);
    let t1 = theta_terms(1, order);

    let mut f1_pow = vec![BigInt::zero(); order + 1];
    f1_pow[0] = BigInt::one();
    let mut acc = vec![BigInt::zero(); order + 1];
    acc[0] = ints[0].clone();
    for a in ints.iter().skip(1) {
        acc = mul_sparse(&acc, &t0, order);
        f1_pow = mul_sparse(&f1_pow, &t1, order);
        if !a.is_zero() {
            for (slot, p) in acc.iter_mut().zip(&f1_pow) {
                *slot += a * p;
            }
        }
    }
    let inv = Rational::from_integer(scale).recip();
    QSeries::new(
        acc.into_iter()
            .map(|c| Rational::from_integer(c) * &inv)
            .collect(),
        order,
    )
}

pub fn th_map(f: &FormalWeightEnumerator, order: usize) -> QSeries {
    th_map_poly(f.as_bivariate(), order)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SeriesIntegrality {
    pub p: u64,
    pub integral: bool,
    pub first_violation: Option<usize>,
    pub order: usize,
}

/// Checks `v_p >= 0` on every computed coefficient.
pub fn qseries_p_integrality(s: &QSeries, p: u64) -> Result<SeriesIntegrality> {
    let mut first_violation = None;
    for (k, c) in s.coeffs().iter().enumerate() {
        if !is_p_integral(c, p)? {
            first_violation = Some(k);
            break;
        }
    }
    Ok(SeriesIntegrality {
        p,
        integral: first_violation.is_none(),
        first_violation,
        order: s.order(),
    })
}

/// Smallest valuation over the computed coefficients.
pub fn qseries_min_valuation(s: &QSeries, p: u64) -> Result<Valuation> {
    s.coeffs()
        .iter()
        .map(|c| padic_valuation(c, p))
        .try_fold(Valuation::Infinity, |acc, v| Ok(acc.min(v?)))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::enumerator::normalized_eisenstein;
    use crate::exact::{int, rat};

    fn support(s: &QSeries) -> Vec<(usize, i64)> {
        s.coeffs()
            .iter()
            .enumerate()
            .filter(|(_, c)| !c.is_zero())
            .map(|(k, c)| (k, i64::try_from(c.to_integer()).unwrap()))
            .collect()
    }

    #[test]
    fn theta_constant_examples() {
        assert_eq!(support(&theta_constant(0, 20)), vec![(0, 1), (4, 2), (16, 2)]);
        assert_eq!(support(&theta_constant(1, 30)), vec![(1, 2), (9, 2), (25, 2)]);
        assert_eq!(support(&theta_constant(0, 0)), vec![(0, 1)]);
    }

    #[test]
    fn e8_theta_prefix() {
        let s = th_map(&normalized_eisenstein(8).unwrap(), 40);
        assert_eq!(s.coeff(0), &int(1));
        assert_eq!(s.coeff(4), &int(240));
        assert_eq!(s.coeff(8), &int(2160));
        assert_eq!(s.coeff(12), &int(6720));
        // E8 theta is 1 + 240 Σ σ3(k) q^k
        let sigma3 = |k: usize| (1..=k).filter(|d| k % d == 0).map(|d| (d * d * d) as i64).sum::<i64>();
        for k in 1..=10 {
            assert_eq!(s.coeff(4 * k), &int(240 * sigma3(k)), "k={k}");
            for r in 1..4 {
                if 4 * k - r <= 40 {
                    assert!(s.coeff(4 * k - r).is_zero());
                }
            }
        }
    }

    #[test]
    fn pure_x0_power() {
        let mut c = vec![int(0); 5];
        c[0] = int(1);
        let f = FormalWeightEnumerator::new(c).unwrap();
        let s = th_map(&f, 30);
        assert_eq!(s.coeff(0), &int(1));
        // f0^4: number of ways to write k as a sum of four even squares
        assert_eq!(s.coeff(4), &int(8));
    }

    #[test]
    fn integrality_checks() {
        let s = th_map(&normalized_eisenstein(8).unwrap(), 40);
        assert!(qseries_p_integrality(&s, 3).unwrap().integral);
        let mut c = vec![int(0); 4];
        c[2] = rat(1, 5);
        let bad = QSeries::new(c, 3);
        let r = qseries_p_integrality(&bad, 5).unwrap();
        assert!(!r.integral);
        assert_eq!(r.first_violation, Some(2));
        assert_eq!(qseries_min_valuation(&bad, 5).unwrap(), Valuation::Finite(-1));
        assert!(qseries_p_integrality(&bad, 4).is_err());
    }

    #[test]
    fn json_shape() {
        let s = theta_constant(1, 2);
        assert_eq!(
            serde_json::to_string(&s).unwrap(),
            r#"{"nome":"exp(pi*i*tau/2)","order":2,"coefficients":["0","2","0"]}"#
        );
    }
}
