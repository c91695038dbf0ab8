//! Exact root structure of the Eisenstein-family zeta polynomials.
//!
//! Every root of `P_ℓ` has modulus `2^(-1/2)` and an argument that is a
//! rational multiple of π, so root sets are compared as exact angles.

use std::cmp::Ordering;
use std::fmt;

use num_integer::Integer;
use serde::{Serialize, Serializer};

use crate::error::{Error, Result};
use crate::exact::{rat, Rational};

/// The angle `(num/den)·π`, reduced and normalized into `[0, 2π)`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct RationalAngle {
    num: u64,
    den: u64,
}

impl RationalAngle {
    /// # Panics
    /// If `den == 0`.
    pub fn new(num: i64, den: u64) -> Self {
        assert!(den > 0, "angle denominator must be positive");
        let period = 2 * den as i128;
        let n = (num as i128).rem_euclid(period) as u64;
        let g = n.gcd(&den);
        Self {
            num: n / g,
            den: den / g,
        }
    }

    /// Multiples of π: `(num, den)` with `0 <= num/den < 2`.
    pub fn as_fraction(&self) -> (u64, u64) {
        (self.num, self.den)
    }

    pub fn radians(&self) -> f64 {
        std::f64::consts::PI * self.num as f64 / self.den as f64
    }
}

impl Ord for RationalAngle {
    fn cmp(&self, o: &Self) -> Ordering {
        (self.num as u128 * o.den as u128).cmp(&(o.num as u128 * self.den as u128))
    }
}

impl PartialOrd for RationalAngle {
    fn partial_cmp(&self, o: &Self) -> Option<Ordering> {
        Some(self.cmp(o))
    }
}

/// `3/4` for 3π/4; `0` for the zero angle.
impl fmt::Display for RationalAngle {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.den == 1 {
            write!(f, "{}", self.num)
        } else {
            write!(f, "{}/{}", self.num, self.den)
        }
    }
}

impl Serialize for RationalAngle {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(&self.to_string())
    }
}

fn check_ell(ell: u32) -> Result<()> {
    if ell % 4 != 0 || ell < 8 {
        Err(Error::UnsupportedDegree(ell))
    } else {
        Ok(())
    }
}

/// Arguments of the roots of `(-1)^(ℓ/4) + 2^((ℓ-4)/2) T^(ℓ-4)`, sorted.
///
/// With `m = ℓ - 4` the roots solve `T^m = -(-1)^(ℓ/4) 2^(-m/2)`: the m-th
/// roots of unity when `ℓ ≡ 4 (mod 8)`, the m-th roots of -1 otherwise.
pub fn numerator_root_angles(ell: u32) -> Result<Vec<RationalAngle>> {
    check_ell(ell)?;
    let m = (ell - 4) as u64;
    let roots_of_unity = (ell / 4) % 2 == 1;
    let mut out: Vec<_> = (0..m as i64)
        .map(|k| {
            if roots_of_unity {
                RationalAngle::new(2 * k, m)
            } else {
                RationalAngle::new(2 * k + 1, m)
            }
        })
        .collect();
    out.sort();
    Ok(out)
}

/// Root set of `P_ℓ`: modulus `sqrt(modulus_squared)` and exact arguments.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ExactRoots {
    pub ell: u32,
    #[serde(with = "crate::exact::rational_str")]
    pub modulus_squared: Rational,
    pub angles: Vec<RationalAngle>,
}

/// Roots of `P_ℓ`: the numerator roots minus `(1 ± i)/2`, the roots of
/// `1 - 2T + 2T^2`, which sit at arguments `±π/4`.
pub fn exact_roots(ell: u32) -> Result<ExactRoots> {
    let mut angles = numerator_root_angles(ell)?;
    for excluded in [RationalAngle::new(1, 4), RationalAngle::new(-1, 4)] {
        let pos = angles
            .iter()
            .position(|a| *a == excluded)
            .ok_or(Error::ExclusionMismatch)?;
        angles.remove(pos);
    }
    Ok(ExactRoots {
        ell,
        modulus_squared: rat(1, 2),
        angles,
    })
}

/// Open arc from `start` counterclockwise to `end`, with the zeros of the
/// next polynomial falling strictly inside it.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ArcOccupancy {
    pub start: RationalAngle,
    pub end: RationalAngle,
    pub count: usize,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct InterlaceReport {
    pub ell: u32,
    pub next_ell: u32,
    pub common_angles: Vec<RationalAngle>,
    pub arcs: Vec<ArcOccupancy>,
    pub arcs_covered: bool,
}

fn strictly_inside(a: RationalAngle, start: RationalAngle, end: RationalAngle) -> bool {
    match start.cmp(&end) {
        Ordering::Less => start < a && a < end,
        Ordering::Greater => a > start || a < end,
        // a single zero leaves the whole circle minus one point
        Ordering::Equal => a != start,
    }
}

/// Arc-coverage test between the zeros of `P_ℓ` and `P_(ℓ+4)`: every open
/// arc between circularly consecutive zeros of `P_ℓ` must contain a zero of
/// `P_(ℓ+4)`. Shared zeros are listed separately.
pub fn interlace_check(ell: u32) -> Result<InterlaceReport> {
    let lower = exact_roots(ell)?.angles;
    let upper = exact_roots(ell + 4)?.angles;
    let common_angles = lower
        .iter()
        .filter(|a| upper.binary_search(a).is_ok())
        .copied()
        .collect();
    let k = lower.len();
    let arcs: Vec<ArcOccupancy> = (0..k)
        .map(|i| {
            let (start, end) = (lower[i], lower[(i + 1) % k]);
            let count = upper
                .iter()
                .filter(|&&a| strictly_inside(a, start, end))
                .count();
            ArcOccupancy { start, end, count }
        })
        .collect();
    let arcs_covered = arcs.iter().all(|a| a.count > 0);
    Ok(InterlaceReport {
        ell,
        next_ell: ell + 4,
        common_angles,
        arcs,
        arcs_covered,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn angles(xs: &[(i64, u64)]) -> Vec<RationalAngle> {
        xs.iter().map(|&(n, d)| RationalAngle::new(n, d)).collect()
    }

    #[test]
    fn angle_canonical_form() {
        assert_eq!(RationalAngle::new(-1, 4), RationalAngle::new(7, 4));
        assert_eq!(RationalAngle::new(6, 8), RationalAngle::new(3, 4));
        assert_eq!(RationalAngle::new(4, 2), RationalAngle::new(0, 1));
        assert_eq!(RationalAngle::new(6, 8).to_string(), "3/4");
        assert!(RationalAngle::new(1, 2) < RationalAngle::new(3, 4));
    }

    #[test]
    fn roots_for_ell_8_and_12() {
        assert_eq!(exact_roots(8).unwrap().angles, angles(&[(3, 4), (5, 4)]));
        assert_eq!(
            exact_roots(12).unwrap().angles,
            angles(&[(0, 1), (1, 2), (3, 4), (1, 1), (5, 4), (3, 2)])
        );
        for ell in (8..=60).step_by(4) {
            assert_eq!(exact_roots(ell).unwrap().angles.len(), ell as usize - 6);
        }
    }

    #[test]
    fn interlace_small_cases() {
        let r = interlace_check(8).unwrap();
        assert!(r.arcs_covered);
        assert_eq!(r.common_angles, angles(&[(3, 4), (5, 4)]));
        assert_eq!(r.arcs.len(), 2);
        let r = interlace_check(12).unwrap();
        assert!(r.arcs_covered);
        assert_eq!(r.arcs.len(), 6);
        assert_eq!(r.arcs.iter().map(|a| a.count).sum::<usize>() + r.common_angles.len(), 10);
    }

    #[test]
    fn wrapping_arc() {
        let (s, e) = (RationalAngle::new(3, 2), RationalAngle::new(1, 2));
        assert!(strictly_inside(RationalAngle::new(0, 1), s, e));
        assert!(!strictly_inside(RationalAngle::new(1, 1), s, e));
        assert!(!strictly_inside(s, s, e));
    }
}
