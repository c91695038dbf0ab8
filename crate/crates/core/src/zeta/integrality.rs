use std::collections::{BTreeMap, BTreeSet};

use num_bigint::BigUint;
use num_traits::{ToPrimitive, Zero};
use serde::Serialize;

use crate::error::{Error, Result};
use crate::exact::{factorize, is_prime, pow_mod, Rational};
use crate::poly::UniPoly;

/// Minimum coefficient valuation for every prime dividing some
/// denominator, plus the primes where that minimum is negative.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct PIntegralityReport {
    pub min_valuations: BTreeMap<BigUint, i64>,
    pub violating: BTreeSet<BigUint>,
}

impl PIntegralityReport {
    pub fn valuation_at(&self, p: u64) -> Option<i64> {
        self.min_valuations.get(&BigUint::from(p)).copied()
    }

    pub fn violates(&self, p: u64) -> bool {
        self.violating.contains(&BigUint::from(p))
    }
}

fn count_factor(mut n: BigUint, p: &BigUint) -> i64 {
    let mut k = 0;
    while (&n % p).is_zero() {
        n /= p;
        k += 1;
    }
    k
}

pub fn p_integrality_report(p: &UniPoly) -> PIntegralityReport {
    let mut primes = BTreeSet::new();
    for c in p.coeffs() {
        primes.extend(factorize(c.denom()).into_keys());
    }
    let mut report = PIntegralityReport::default();
    for prime in primes {
        let min = p
            .coeffs()
            .iter()
            .filter(|c| !c.is_zero())
            .map(|c: &Rational| {
                count_factor(c.numer().magnitude().clone(), &prime)
                    - count_factor(c.denom().magnitude().clone(), &prime)
            })
            .min()
            .expect("a prime from a denominator implies a nonzero coefficient");
        if min < 0 {
            report.violating.insert(prime.clone());
        }
        report.min_valuations.insert(prime, min);
    }
    report
}

/// The two cases in which the Fermat congruence for the unit is stated.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum FermatCase {
    /// `p ≡ 3 (mod 4)`: quantity `-1 + 2^(p-3) ≡ -3·2^(p-3)`.
    ThreeModFour,
    /// `p ≡ 1 (mod 4)`: quantity `1 + 2^(p-3) ≡ 5·2^(p-3)`.
    OneModFour,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct LemmaCheck {
    pub p: u64,
    pub ell: u64,
    pub residue: u64,
    pub case: FermatCase,
    pub fermat_residue: u64,
    pub congruence_holds: bool,
}

/// `(-1)^(ℓ/4) + 2^((ℓ-4)/2) mod p` with `ℓ = 2(p-1)`, for any odd prime.
pub fn lemma_quantity_mod_p(p: u64) -> Result<u64> {
    if p == 2 || !is_prime(p) {
        return Err(Error::NonPrimeModulus(p));
    }
    let ell = 2 * (p - 1);
    let power = pow_mod(2, (ell - 4) / 2, p);
    let r = if (ell / 4) % 2 == 0 {
        (power + 1) % p
    } else {
        (power + p - 1) % p
    };
    Ok(r)
}

/// Unit check for the leading coefficient of `φ_{2(p-1)}` modulo `p`,
/// together with the matching Fermat-form congruence.
pub fn lemma_unit_check(p: u64) -> Result<LemmaCheck> {
    if p == 3 || p == 5 {
        return Err(Error::ExcludedPrime(p));
    }
    let residue = lemma_quantity_mod_p(p)?;
    let two_pow = pow_mod(2, p - 3, p);
    let (case, factor) = if p % 4 == 3 {
        (FermatCase::ThreeModFour, p - 3)
    } else {
        (FermatCase::OneModFour, 5 % p)
    };
    let fermat_residue = ((factor as u128 * two_pow as u128) % p as u128)
        .to_u64()
        .expect("below p");
    if residue == 0 {
        return Err(Error::UnitCheckFailed(p));
    }
    Ok(LemmaCheck {
        p,
        ell: 2 * (p - 1),
        residue,
        case,
        fermat_residue,
        congruence_holds: residue == fermat_residue,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::{int, rat};

    #[test]
    fn report_examples() {
        let p8 = UniPoly::new(vec![rat(1, 5), rat(2, 5), rat(2, 5)]);
        let r = p_integrality_report(&p8);
        assert_eq!(r.valuation_at(5), Some(-1));
        assert_eq!(r.violating, BTreeSet::from([BigUint::from(5u32)]));

        let p12 = UniPoly::new([-1, -2, -2, 0, 4, 8, 8].iter().map(|&c| rat(c, 15)).collect());
        let r = p_integrality_report(&p12);
        assert_eq!(r.valuation_at(3), Some(-1));
        assert_eq!(r.valuation_at(5), Some(-1));
        assert_eq!(r.valuation_at(7), None);
        assert!(!r.violates(7));

        assert!(p_integrality_report(&UniPoly::constant(int(1))).min_valuations.is_empty());
    }

    #[test]
    fn only_denominator_primes_reported() {
        let p = UniPoly::new(vec![rat(10, 3), rat(1, 9)]);
        let r = p_integrality_report(&p);
        assert_eq!(r.valuation_at(3), Some(-2));
        assert_eq!(r.valuation_at(2), None);
        assert_eq!(r.valuation_at(5), None);
    }

    #[test]
    fn unit_check_examples() {
        let c7 = lemma_unit_check(7).unwrap();
        assert_eq!(c7.residue, 1);
        assert_eq!(c7.case, FermatCase::ThreeModFour);
        assert!(c7.congruence_holds);

        let c13 = lemma_unit_check(13).unwrap();
        assert_eq!(c13.residue, 11);
        assert_eq!(c13.fermat_residue, 5120 % 13);
        assert!(c13.congruence_holds);

        assert_eq!(lemma_unit_check(5), Err(Error::ExcludedPrime(5)));
        assert_eq!(lemma_unit_check(3), Err(Error::ExcludedPrime(3)));
        assert_eq!(lemma_quantity_mod_p(5).unwrap(), 0);
        assert_eq!(lemma_unit_check(9), Err(Error::NonPrimeModulus(9)));
    }
}
