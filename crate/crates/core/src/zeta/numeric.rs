//! Numeric RHA check by simultaneous (Aberth–Ehrlich) root iteration in
//! double-double arithmetic, about 106 bits of mantissa.

use std::ops::{Add, Div, Mul, Sub};

use num_traits::{Signed, ToPrimitive, Zero};
use serde::Serialize;
use twofloat::TwoFloat;

use crate::error::{Error, Result};
use crate::exact::Rational;
use crate::poly::UniPoly;

use super::ZetaPolynomial;

/// Unit roundoff of double-double arithmetic.
const DD_EPS: f64 = 4.93e-32;
const MAX_ITERATIONS: usize = 500;

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct ComplexDd {
    pub re: TwoFloat,
    pub im: TwoFloat,
}

impl ComplexDd {
    pub fn new(re: TwoFloat, im: TwoFloat) -> Self {
        Self { re, im }
    }

    fn from_f64(re: f64, im: f64) -> Self {
        Self::new(TwoFloat::from(re), TwoFloat::from(im))
    }

    fn real(re: TwoFloat) -> Self {
        Self::new(re, TwoFloat::from(0.0))
    }

    pub fn norm_sqr(&self) -> TwoFloat {
        self.re * self.re + self.im * self.im
    }

    pub fn abs(&self) -> TwoFloat {
        self.norm_sqr().sqrt()
    }

    fn is_zero(&self) -> bool {
        self.re == TwoFloat::from(0.0) && self.im == TwoFloat::from(0.0)
    }

    pub fn to_f64(self) -> (f64, f64) {
        (self.re.hi(), self.im.hi())
    }
}

impl Add for ComplexDd {
    type Output = Self;
    fn add(self, o: Self) -> Self {
        Self::new(self.re + o.re, self.im + o.im)
    }
}

impl Sub for ComplexDd {
    type Output = Self;
    fn sub(self, o: Self) -> Self {
        Self::new(self.re - o.re, self.im - o.im)
    }
}

impl Mul for ComplexDd {
    type Output = Self;
    fn mul(self, o: Self) -> Self {
        Self::new(
            self.re * o.re - self.im * o.im,
            self.re * o.im + self.im * o.re,
        )
    }
}

impl Div for ComplexDd {
    type Output = Self;
    fn div(self, o: Self) -> Self {
        let d = o.norm_sqr();
        Self::new(
            (self.re * o.re + self.im * o.im) / d,
            (self.im * o.re - self.re * o.im) / d,
        )
    }
}

fn to_dd(x: &Rational) -> TwoFloat {
    let hi = x.to_f64().unwrap_or(f64::NAN);
    let lo = Rational::from_float(hi)
        .map(|h| (x - h).to_f64().unwrap_or(0.0))
        .unwrap_or(0.0);
    TwoFloat::new_add(hi, lo)
}

/// `(p(z), p'(z), Σ |c_i| |z|^i)` for real double-double coefficients.
fn horner(coeffs: &[TwoFloat], z: ComplexDd) -> (ComplexDd, ComplexDd, TwoFloat) {
    let zero = ComplexDd::from_f64(0.0, 0.0);
    let r = z.abs();
    let mut p = zero;
    let mut dp = zero;
    let mut bound = TwoFloat::from(0.0);
    for &c in coeffs.iter().rev() {
        dp = dp * z + p;
        p = p * z + ComplexDd::real(c);
        bound = bound * r + c.abs();
    }
    (p, dp, bound)
}

/// All complex roots of a nonzero polynomial, with multiplicity.
///
/// Roots at zero are split off exactly; the rest are found by Aberth
/// iteration and accepted only when each residual is within a small
/// multiple of the double-double rounding bound.
pub fn find_roots(poly: &UniPoly) -> Result<Vec<ComplexDd>> {
    let deg = poly
        .degree()
        .ok_or_else(|| Error::InvariantViolation("zero polynomial has no finite root set".into()))?;
    let lowest = poly.coeffs().iter().position(|c| !c.is_zero()).unwrap_or(0);
    let mut roots = vec![ComplexDd::from_f64(0.0, 0.0); lowest];
    let n = deg - lowest;
    if n == 0 {
        return Ok(roots);
    }
    let lead = &poly.coeffs()[deg];
    let monic: Vec<TwoFloat> = poly.coeffs()[lowest..]
        .iter()
        .map(|c| to_dd(&(c / lead)))
        .collect();

    let radius = monic[0].hi().abs().powf(1.0 / n as f64).max(1e-3);
    let mut z: Vec<ComplexDd> = (0..n)
        .map(|k| {
            let theta = 2.0 * std::f64::consts::PI * k as f64 / n as f64 + 0.4;
            ComplexDd::from_f64(radius * theta.cos(), radius * theta.sin())
        })
        .collect();

    let mut settled = 0;
    for _ in 0..MAX_ITERATIONS {
        let mut worst = 0.0f64;
        for k in 0..n {
            let (p, dp, _) = horner(&monic, z[k]);
            if p.is_zero() {
                continue;
            }
            let w = p / dp;
            let mut s = ComplexDd::from_f64(0.0, 0.0);
            for (j, zj) in z.iter().enumerate() {
                if j != k {
                    let diff = z[k] - *zj;
                    if !diff.is_zero() {
                        s = s + ComplexDd::from_f64(1.0, 0.0) / diff;
                    }
                }
            }
            let corr = w / (ComplexDd::from_f64(1.0, 0.0) - w * s);
            z[k] = z[k] - corr;
            let scale = z[k].abs().hi().max(1e-300);
            worst = worst.max(corr.abs().hi() / scale);
        }
        if worst < 1e-30 {
            settled += 1;
            if settled >= 2 {
                break;
            }
        }
    }

    for zk in &z {
        let (p, _, bound) = horner(&monic, *zk);
        let tolerance = 64.0 * (n as f64 + 1.0) * DD_EPS * bound.hi();
        if !(p.abs().hi() <= tolerance) {
            return Err(Error::NonConvergence {
                iterations: MAX_ITERATIONS,
            });
        }
    }
    roots.extend(z);
    Ok(roots)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum RootMethod {
    Structural,
    Numeric,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct RootReport {
    pub method: RootMethod,
    pub mantissa_bits: u32,
    pub roots: Vec<(f64, f64)>,
    pub deviations: Vec<f64>,
    pub max_deviation: f64,
    pub tolerance: f64,
    pub verdict: bool,
}

/// Finds every root of `P` and compares its modulus with `1/sqrt(q)`.
pub fn rha_check_numeric(p: &ZetaPolynomial, tolerance: f64) -> Result<RootReport> {
    if !p.q.is_positive() {
        return Err(Error::InvalidQ);
    }
    let roots = find_roots(&p.poly)?;
    let target = to_dd(&p.q.recip()).sqrt();
    let deviations: Vec<f64> = roots
        .iter()
        .map(|z| (z.abs() - target).abs().hi())
        .collect();
    let max_deviation = deviations.iter().copied().fold(0.0, f64::max);
    Ok(RootReport {
        method: RootMethod::Numeric,
        mantissa_bits: 106,
        roots: roots.iter().map(|z| z.to_f64()).collect(),
        verdict: max_deviation <= tolerance,
        deviations,
        max_deviation,
        tolerance,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::{int, rat};

    fn zp(poly: UniPoly, q: i64) -> ZetaPolynomial {
        let n = poly.degree().unwrap_or(0) + 1;
        ZetaPolynomial {
            poly,
            q: int(q),
            source_degree: n,
            source_min_distance: 1,
        }
    }

    #[test]
    fn p8_roots_on_circle() {
        let p = UniPoly::new(vec![rat(1, 5), rat(2, 5), rat(2, 5)]);
        let r = rha_check_numeric(&zp(p, 2), 1e-9).unwrap();
        assert!(r.verdict);
        assert!(r.max_deviation <= 1e-12);
        // roots are (-1 ± i)/2
        for (re, im) in &r.roots {
            assert!((re + 0.5).abs() < 1e-15 && (im.abs() - 0.5).abs() < 1e-15);
        }
    }

    #[test]
    fn constant_has_no_roots() {
        let r = rha_check_numeric(&zp(UniPoly::constant(int(3)), 2), 1e-9).unwrap();
        assert!(r.verdict);
        assert!(r.roots.is_empty());
    }

    #[test]
    fn off_circle_control() {
        let r = rha_check_numeric(&zp(UniPoly::from_ints(&[1, -2]), 2), 1e-9).unwrap();
        assert!(!r.verdict);
        assert!((r.roots[0].0 - 0.5).abs() < 1e-20);
    }

    #[test]
    fn zero_roots_split_off() {
        let roots = find_roots(&UniPoly::from_ints(&[0, 0, -1, 1])).unwrap();
        assert_eq!(roots.len(), 3);
        assert_eq!(roots.iter().filter(|z| z.is_zero()).count(), 2);
        assert!(find_roots(&UniPoly::zero()).is_err());
    }

    #[test]
    fn high_precision_conversion() {
        let x = rat(1, 3);
        let d = to_dd(&x);
        let back = Rational::from_float(d.hi()).unwrap() + Rational::from_float(d.lo()).unwrap();
        let err = (back - x).abs();
        assert!(err < rat(1, 1 << 62) * rat(1, 1 << 40));
    }
}
