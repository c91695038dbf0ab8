//! Duursma zeta polynomials.
//!
//! Four independent constructions are provided. The linear-system route
//! works straight from the defining coefficient identity and serves as the
//! reference; the series route goes through the normalized weight
//! enumerator; the closed and expanded forms apply only to the Eisenstein
//! family of H₁ with `q = 2`.

mod integrality;
mod linsys;
mod numeric;
mod roots;

pub use integrality::{lemma_quantity_mod_p, lemma_unit_check, p_integrality_report, FermatCase, LemmaCheck, PIntegralityReport};
pub use numeric::{find_roots, rha_check_numeric, ComplexDd, RootMethod, RootReport};
pub use roots::{exact_roots, interlace_check, numerator_root_angles, ArcOccupancy, ExactRoots, InterlaceReport, RationalAngle};

use num_bigint::BigInt;
use num_traits::{One, Pow, Zero};

use crate::enumerator::{check_q, eisenstein_leading, normalized_eisenstein, normalized_weight_enumerator, FormalWeightEnumerator};
use crate::error::{Error, Result};
use crate::exact::{int, lcm_of_denominators, Rational};
use crate::poly::{binomial, compose_t_over_one_minus_t, TruncatedSeries, UniPoly};

/// `P_f(T)` with the data it was derived from.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ZetaPolynomial {
    pub poly: UniPoly,
    pub q: Rational,
    pub source_degree: usize,
    pub source_min_distance: usize,
}

impl ZetaPolynomial {
    /// Upper bound `n - d` on the degree.
    pub fn degree_bound(&self) -> usize {
        self.source_degree - self.source_min_distance
    }
}

/// Which construction produced a zeta polynomial.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum ZetaMethod {
    LinearSystem,
    Series,
    Closed,
    Expanded,
}

impl ZetaMethod {
    pub const ALL: [ZetaMethod; 4] = [
        ZetaMethod::LinearSystem,
        ZetaMethod::Series,
        ZetaMethod::Closed,
        ZetaMethod::Expanded,
    ];

    pub fn name(self) -> &'static str {
        match self {
            ZetaMethod::LinearSystem => "linsys",
            ZetaMethod::Series => "series",
            ZetaMethod::Closed => "closed",
            ZetaMethod::Expanded => "expanded",
        }
    }
}

/// Zeta polynomial of the normalized Eisenstein polynomial of degree `ell`
/// (q = 2) by the chosen method.
pub fn eisenstein_zeta(ell: u32, method: ZetaMethod) -> Result<ZetaPolynomial> {
    match method {
        ZetaMethod::LinearSystem => zeta_via_linear_system(&normalized_eisenstein(ell)?, &int(2)),
        ZetaMethod::Series => zeta_via_series(&normalized_eisenstein(ell)?, &int(2)),
        ZetaMethod::Closed => zeta_closed_form(ell),
        ZetaMethod::Expanded => zeta_expanded_form(ell),
    }
}

/// `1 / ((1 - T)(1 - qT))` coefficients `Σ_{a<=m} q^a` for `m = 0..=order`.
fn kernel_coeffs(q: &Rational, order: usize) -> Vec<Rational> {
    let mut out = Vec::with_capacity(order + 1);
    let mut power = Rational::one();
    let mut sum = Rational::zero();
    for _ in 0..=order {
        sum += &power;
        out.push(sum.clone());
        power *= q;
    }
    out
}

/// Solves the defining identity
/// `[T^(n-d)] P(T)/((1-T)(1-qT)) · (x0·T + x1·(1-T))^n = (f - x0^n)/(q-1)`
/// monomial by monomial.
pub fn zeta_via_linear_system(f: &FormalWeightEnumerator, q: &Rational) -> Result<ZetaPolynomial> {
    check_q(q)?;
    let n = f.degree();
    let d = f.min_distance()?;
    let unknowns = n - d + 1;
    let kernel = kernel_coeffs(q, n - d);
    let scale = (q - Rational::one()).recip();

    let mut rows = Vec::with_capacity(n + 1);
    let mut rhs = Vec::with_capacity(n + 1);
    for i in 0..=n {
        // x0^(n-i) x1^i contributes C(n,i) T^(n-i) (1-T)^i, so the
        // T^(n-d) coefficient pulls [T^(i-d-k)] (1-T)^i against z_k.
        let outer = Rational::from_integer(binomial(n as u64, i as i64));
        let mut row = vec![Rational::zero(); unknowns];
        if i >= d {
            let top = i - d;
            for (j, slot) in row.iter_mut().enumerate().take(top + 1) {
                let mut acc = Rational::zero();
                for k in j..=top {
                    let e = top - k;
                    let mut c = Rational::from_integer(binomial(i as u64, e as i64));
                    if e % 2 == 1 {
                        c = -c;
                    }
                    acc += c * &kernel[k - j];
                }
                *slot = acc * &outer;
            }
        }
        let target = if i == 0 {
            &f.coeffs()[0] - Rational::one()
        } else {
            f.coeffs()[i].clone()
        } * &scale;

        let l = lcm_of_denominators(row.iter().chain(std::iter::once(&target)));
        let lr = Rational::from_integer(l);
        rows.push(
            row.iter()
                .map(|c| (c * &lr).to_integer())
                .collect::<Vec<BigInt>>(),
        );
        rhs.push((target * &lr).to_integer());
    }

    let solution = linsys::solve_fraction_free(rows, rhs)?;
    Ok(ZetaPolynomial {
        poly: UniPoly::new(solution),
        q: q.clone(),
        source_degree: n,
        source_min_distance: d,
    })
}

/// Expands `N_f(T/(1-T)) · (1-T)(1-qT) / (1-T)^(d+1)` modulo `T^(n-d+1)`.
pub fn zeta_via_series(f: &FormalWeightEnumerator, q: &Rational) -> Result<ZetaPolynomial> {
    let nwe = normalized_weight_enumerator(f, q)?;
    let n = f.degree();
    let d = f.min_distance()?;
    let order = n - d;

    let composed = compose_t_over_one_minus_t(&nwe, order);
    let kernel = UniPoly::new(vec![Rational::one(), -(q + Rational::one()), q.clone()]).to_series(order);
    // 1/(1-T)^(d+1) = Σ C(d+k, d) T^k
    let denom = TruncatedSeries::new(
        (0..=order)
            .map(|k| Rational::from_integer(binomial((d + k) as u64, d as i64)))
            .collect(),
        order,
    );
    let series = &(&composed * &kernel) * &denom;
    Ok(ZetaPolynomial {
        poly: series.to_poly(),
        q: q.clone(),
        source_degree: n,
        source_min_distance: d,
    })
}

fn eisenstein_sign(ell: u32) -> i64 {
    if (ell / 4) % 2 == 0 {
        1
    } else {
        -1
    }
}

fn check_ell(ell: u32) -> Result<()> {
    if ell % 4 != 0 || ell < 8 {
        Err(Error::UnsupportedDegree(ell))
    } else {
        Ok(())
    }
}

/// `1 - 2T + 2T^2`
pub fn rha_quadratic() -> UniPoly {
    UniPoly::from_ints(&[1, -2, 2])
}

/// `(-1)^(ℓ/4) + 2^((ℓ-4)/2) T^(ℓ-4)`
pub fn closed_form_numerator(ell: u32) -> Result<UniPoly> {
    check_ell(ell)?;
    let m = (ell - 4) as usize;
    let top = Rational::from_integer(BigInt::from(2).pow((ell - 4) / 2));
    let mut p = UniPoly::monomial(top, m);
    p = &p + &UniPoly::constant(int(eisenstein_sign(ell)));
    Ok(p)
}

fn family_zeta(ell: u32, poly: UniPoly) -> ZetaPolynomial {
    ZetaPolynomial {
        poly,
        q: int(2),
        source_degree: ell as usize,
        source_min_distance: 4,
    }
}

/// Exact quotient of the closed-form numerator by `1 - 2T + 2T^2`, scaled
/// by the inverse leading coefficient of the Eisenstein polynomial.
pub fn zeta_closed_form(ell: u32) -> Result<ZetaPolynomial> {
    let numerator = closed_form_numerator(ell)?;
    let (quot, rem) = numerator.div_rem(&rha_quadratic())?;
    if !rem.is_zero() {
        return Err(Error::InexactDivision);
    }
    let inv = Rational::from_integer(eisenstein_leading(ell)).recip();
    Ok(family_zeta(ell, quot.scale(&inv)))
}

/// Block expansion `Σ_{i=1}^{ℓ/4-1} s_i 4^(i-1) (T^(4i-4) + 2T^(4i-3) + 2T^(4i-2))`
/// with `s_i = (-1)^(i-1)` for even `ℓ/4` and `(-1)^i` for odd `ℓ/4`.
pub fn zeta_expanded_form(ell: u32) -> Result<ZetaPolynomial> {
    check_ell(ell)?;
    let m = ell / 4;
    let mut coeffs = vec![Rational::zero(); (ell - 4) as usize];
    for i in 1..m {
        let odd_exponent = if m % 2 == 0 { i - 1 } else { i };
        let sign = if odd_exponent % 2 == 0 { 1 } else { -1 };
        let w = Rational::from_integer(BigInt::from(4).pow(i - 1) * sign);
        let base = 4 * (i - 1) as usize;
        coeffs[base] = w.clone();
        coeffs[base + 1] = &w * int(2);
        coeffs[base + 2] = &w * int(2);
    }
    let inv = Rational::from_integer(eisenstein_leading(ell)).recip();
    Ok(family_zeta(ell, UniPoly::new(coeffs).scale(&inv)))
}

/// Checks `lead · (1 - 2T + 2T^2) · P_ℓ(T) = (-1)^(ℓ/4) + 2^((ℓ-4)/2) T^(ℓ-4)`
/// with `P_ℓ` from the series route. Every root of the right-hand side has
/// modulus `2^(-1/2)`.
pub fn rha_check_structural(ell: u32) -> Result<bool> {
    let p = zeta_via_series(&normalized_eisenstein(ell)?, &int(2))?;
    let lead = Rational::from_integer(eisenstein_leading(ell));
    let lhs = (&rha_quadratic() * &p.poly).scale(&lead);
    Ok(lhs == closed_form_numerator(ell)?)
}
