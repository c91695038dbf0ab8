//! Exact rational and Gaussian-rational arithmetic, p-adic valuations and
//! reduction modulo a prime.

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::{BigInt, BigUint};
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Arbitrary-precision rational, always in lowest terms with a positive
/// denominator.
pub type Rational = BigRational;

pub fn rat(n: i64, d: i64) -> Rational {
    Rational::new(BigInt::from(n), BigInt::from(d))
}

pub fn int(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

/// Renders `num/den`, dropping the denominator when it is 1.
pub fn rational_to_string(x: &Rational) -> String {
    x.to_string()
}

pub fn parse_rational(s: &str) -> Result<Rational> {
    let t = s.trim();
    t.parse::<Rational>()
        .map_err(|e| Error::Schema(format!("bad rational {t:?}: {e}")))
}

/// Serde adapter storing a [`Rational`] as its `num/den` string.
pub mod rational_str {
    use super::*;
    use serde::{Deserializer, Serializer};

    pub fn serialize<S: Serializer>(x: &Rational, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(&rational_to_string(x))
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> std::result::Result<Rational, D::Error> {
        let s = String::deserialize(d)?;
        parse_rational(&s).map_err(serde::de::Error::custom)
    }
}

/// Serde adapter for a sequence of [`Rational`]s as strings.
pub mod rational_vec {
    use super::*;
    use serde::ser::SerializeSeq;
    use serde::{Deserializer, Serializer};

    pub fn serialize<S: Serializer>(xs: &[Rational], s: S) -> std::result::Result<S::Ok, S::Error> {
        let mut seq = s.serialize_seq(Some(xs.len()))?;
        for x in xs {
            seq.serialize_element(&rational_to_string(x))?;
        }
        seq.end()
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(
        d: D,
    ) -> std::result::Result<Vec<Rational>, D::Error> {
        let v = Vec::<String>::deserialize(d)?;
        v.iter()
            .map(|s| parse_rational(s).map_err(serde::de::Error::custom))
            .collect()
    }
}

/// Element `re + im·i` of ℚ(i).
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct GaussianRational {
    #[serde(with = "rational_str")]
    pub re: Rational,
    #[serde(with = "rational_str")]
    pub im: Rational,
}

impl GaussianRational {
    pub fn new(re: Rational, im: Rational) -> Self {
        Self { re, im }
    }

    pub fn from_ints(re: i64, im: i64) -> Self {
        Self::new(int(re), int(im))
    }

    pub fn real(re: Rational) -> Self {
        Self::new(re, Rational::zero())
    }

    pub fn zero() -> Self {
        Self::from_ints(0, 0)
    }

    pub fn one() -> Self {
        Self::from_ints(1, 0)
    }

    pub fn i() -> Self {
        Self::from_ints(0, 1)
    }

    pub fn is_zero(&self) -> bool {
        self.re.is_zero() && self.im.is_zero()
    }

    pub fn is_real(&self) -> bool {
        self.im.is_zero()
    }

    pub fn conj(&self) -> Self {
        Self::new(self.re.clone(), -self.im.clone())
    }

    /// `re² + im²`
    pub fn norm(&self) -> Rational {
        &self.re * &self.re + &self.im * &self.im
    }

    pub fn scale(&self, c: &Rational) -> Self {
        Self::new(&self.re * c, &self.im * c)
    }

    pub fn inverse(&self) -> Option<Self> {
        if self.is_zero() {
            return None;
        }
        let n = self.norm();
        Some(Self::new(&self.re / &n, -&self.im / &n))
    }

    pub fn pow(&self, mut e: u32) -> Self {
        let mut base = self.clone();
        let mut acc = Self::one();
        while e > 0 {
            if e & 1 == 1 {
                acc = &acc * &base;
            }
            base = &base * &base;
            e >>= 1;
        }
        acc
    }
}

impl fmt::Display for GaussianRational {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match (self.re.is_zero(), self.im.is_zero()) {
            (_, true) => write!(f, "{}", self.re),
            (true, false) => write!(f, "{}i", self.im),
            (false, false) if self.im.is_negative() => write!(f, "{} - {}i", self.re, -&self.im),
            (false, false) => write!(f, "{} + {}i", self.re, self.im),
        }
    }
}

impl Add for &GaussianRational {
    type Output = GaussianRational;
    fn add(self, o: &GaussianRational) -> GaussianRational {
        GaussianRational::new(&self.re + &o.re, &self.im + &o.im)
    }
}

impl Sub for &GaussianRational {
    type Output = GaussianRational;
    fn sub(self, o: &GaussianRational) -> GaussianRational {
        GaussianRational::new(&self.re - &o.re, &self.im - &o.im)
    }
}

impl Mul for &GaussianRational {
    type Output = GaussianRational;
    fn mul(self, o: &GaussianRational) -> GaussianRational {
        GaussianRational::new(
            &self.re * &o.re - &self.im * &o.im,
            &self.re * &o.im + &self.im * &o.re,
        )
    }
}

impl Neg for &GaussianRational {
    type Output = GaussianRational;
    fn neg(self) -> GaussianRational {
        GaussianRational::new(-&self.re, -&self.im)
    }
}

impl Add for GaussianRational {
    type Output = GaussianRational;
    fn add(self, o: GaussianRational) -> GaussianRational {
        &self + &o
    }
}

impl Mul for GaussianRational {
    type Output = GaussianRational;
    fn mul(self, o: GaussianRational) -> GaussianRational {
        &self * &o
    }
}

/// p-adic valuation; `Infinity` is the valuation of zero and compares
/// above every finite value.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Valuation {
    Finite(i64),
    Infinity,
}

impl Valuation {
    pub fn finite(self) -> Option<i64> {
        match self {
            Valuation::Finite(v) => Some(v),
            Valuation::Infinity => None,
        }
    }
}

impl fmt::Display for Valuation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Valuation::Finite(v) => write!(f, "{v}"),
            Valuation::Infinity => f.write_str("inf"),
        }
    }
}

/// Deterministic primality for 64-bit inputs.
pub fn is_prime(p: u64) -> bool {
    num_prime::nt_funcs::is_prime64(p)
}

fn check_prime(p: u64) -> Result<()> {
    if is_prime(p) {
        Ok(())
    } else {
        Err(Error::NonPrimeModulus(p))
    }
}

fn multiplicity(n: &BigInt, p: &BigInt) -> i64 {
    let mut n = n.abs();
    let mut k = 0;
    loop {
        let (q, r) = n.div_rem(p);
        if !r.is_zero() {
            return k;
        }
        n = q;
        k += 1;
    }
}

pub fn padic_valuation(x: &Rational, p: u64) -> Result<Valuation> {
    check_prime(p)?;
    if x.is_zero() {
        return Ok(Valuation::Infinity);
    }
    let p = BigInt::from(p);
    Ok(Valuation::Finite(
        multiplicity(x.numer(), &p) - multiplicity(x.denom(), &p),
    ))
}

pub fn is_p_integral(x: &Rational, p: u64) -> Result<bool> {
    Ok(padic_valuation(x, p)? >= Valuation::Finite(0))
}

pub fn pow_mod(base: u64, mut exp: u64, m: u64) -> u64 {
    let m128 = m as u128;
    let mut b = base as u128 % m128;
    let mut acc = 1u128 % m128;
    while exp > 0 {
        if exp & 1 == 1 {
            acc = acc * b % m128;
        }
        b = b * b % m128;
        exp >>= 1;
    }
    acc as u64
}

fn residue_of(n: &BigInt, p: u64) -> u64 {
    let r = n.mod_floor(&BigInt::from(p));
    r.to_u64().expect("residue below p")
}

/// Image of a p-integral rational in ℤ/p.
pub fn mod_p_residue(x: &Rational, p: u64) -> Result<u64> {
    if !is_p_integral(x, p)? {
        return Err(Error::NotPIntegral { p });
    }
    let num = residue_of(x.numer(), p);
    let den = residue_of(x.denom(), p);
    let inv = pow_mod(den, p - 2, p);
    Ok(((num as u128 * inv as u128) % p as u128) as u64)
}

/// Prime factorization of `|n|`; empty for `|n| <= 1`.
pub fn factorize(n: &BigInt) -> BTreeMap<BigUint, usize> {
    let m = n.magnitude();
    if m <= &BigUint::one() {
        return BTreeMap::new();
    }
    num_prime::nt_funcs::factorize(m.clone())
}

pub fn lcm_of_denominators<'a>(xs: impl IntoIterator<Item = &'a Rational>) -> BigInt {
    xs.into_iter()
        .fold(BigInt::one(), |acc, x| acc.lcm(x.denom()))
}


#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn valuation_examples() {
        assert_eq!(padic_valuation(&int(0), 7).unwrap(), Valuation::Infinity);
        assert_eq!(padic_valuation(&rat(2, 5), 5).unwrap(), Valuation::Finite(-1));
        assert_eq!(padic_valuation(&int(14), 7).unwrap(), Valuation::Finite(1));
        assert_eq!(padic_valuation(&int(14), 9), Err(Error::NonPrimeModulus(9)));
    }

    #[test]
    fn integrality_examples() {
        assert!(is_p_integral(&rat(1, 5), 3).unwrap());
        assert!(!is_p_integral(&rat(1, 5), 5).unwrap());
        for p in [2, 3, 5, 7, 11, 13, 97, 2_147_483_647] {
            assert!(is_p_integral(&int(33), p).unwrap());
        }
        assert_eq!(is_p_integral(&int(1), 1), Err(Error::NonPrimeModulus(1)));
    }

    #[test]
    fn residue_examples() {
        assert_eq!(mod_p_residue(&int(15), 7).unwrap(), 1);
        assert_eq!(mod_p_residue(&int(0), 11).unwrap(), 0);
        assert_eq!(mod_p_residue(&rat(1, 2), 5).unwrap(), 3);
        assert_eq!(mod_p_residue(&rat(-1, 2), 5).unwrap(), 2);
        assert_eq!(mod_p_residue(&rat(1, 5), 5), Err(Error::NotPIntegral { p: 5 }));
    }

    #[test]
    fn rational_strings() {
        assert_eq!(rational_to_string(&rat(-2, 4)), "-1/2");
        assert_eq!(rational_to_string(&int(7)), "7");
        assert_eq!(parse_rational(" 14/70 ").unwrap(), rat(1, 5));
        assert!(parse_rational("1/0").is_err());
        assert!(parse_rational("x").is_err());
    }

    #[test]
    fn gaussian_json() {
        let z = GaussianRational::new(rat(1, 2), rat(-1, 2));
        let s = serde_json::to_string(&z).unwrap();
        assert_eq!(s, r#"{"re":"1/2","im":"-1/2"}"#);
        assert_eq!(serde_json::from_str::<GaussianRational>(&s).unwrap(), z);
    }

    #[test]
    fn gaussian_field_ops() {
        let z = GaussianRational::new(rat(1, 2), rat(1, 2));
        assert!((&z.conj() * &z).is_real());
        assert_eq!(&z * &z.inverse().unwrap(), GaussianRational::one());
        assert_eq!(GaussianRational::i().pow(4), GaussianRational::one());
        assert!(GaussianRational::zero().inverse().is_none());
    }

    #[test]
    fn factorize_denominators() {
        let n = (BigInt::one() << 94u32) + 1;
        let f = factorize(&n);
        let back: BigUint = f.iter().map(|(p, &k)| p.pow(k as u32)).product();
        assert_eq!(BigInt::from(back), n);
        assert!(f.contains_key(&BigUint::from(5u32)));
        assert!(factorize(&BigInt::from(-1)).is_empty());
    }
}
