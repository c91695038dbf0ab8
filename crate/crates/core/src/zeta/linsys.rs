//! Fraction-free (Bareiss) elimination for overdetermined integer systems
//! that must have a unique solution.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::exact::Rational;

/// Solves `rows · x = rhs` over ℚ for a system with full column rank.
///
/// Rows past the column count must reduce to `0 = 0`; any other residue is
/// reported as inconsistency.
pub(crate) fn solve_fraction_free(rows: Vec<Vec<BigInt>>, rhs: Vec<BigInt>) -> Result<Vec<Rational>> {
    let m = rows.len();
    let cols = rows.first().map_or(0, Vec::len);
    if rhs.len() != m {
        return Err(Error::SingularSystem("row and right-hand side counts differ".into()));
    }
    if m < cols {
        return Err(Error::SingularSystem(format!("{m} equations for {cols} unknowns")));
    }
    let mut a: Vec<Vec<BigInt>> = rows
        .into_iter()
        .zip(rhs)
        .map(|(mut r, b)| {
            r.push(b);
            r
        })
        .collect();

    let mut prev = BigInt::one();
    for k in 0..cols {
        let pivot = (k..m)
            .find(|&r| !a[r][k].is_zero())
            .ok_or_else(|| Error::SingularSystem(format!("no pivot in column {k}")))?;
        a.swap(k, pivot);
        let (top, bottom) = a.split_at_mut(k + 1);
        let pr = &top[k];
        for row in bottom.iter_mut() {
            let lead = row[k].clone();
            for j in k + 1..=cols {
                let num = &pr[k] * &row[j] - &lead * &pr[j];
                let (q, r) = num.div_rem(&prev);
                if !r.is_zero() {
                    return Err(Error::SingularSystem("inexact Bareiss step".into()));
                }
                row[j] = q;
            }
            row[k] = BigInt::zero();
        }
        prev = a[k][k].clone();
    }

    if let Some(r) = a[cols..].iter().position(|row| !row[cols].is_zero()) {
        return Err(Error::SingularSystem(format!(
            "equation {} is inconsistent",
            cols + r
        )));
    }

    let mut x = vec![Rational::zero(); cols];
    for k in (0..cols).rev() {
        let mut s = Rational::from_integer(a[k][cols].clone());
        for j in k + 1..cols {
            s -= Rational::from_integer(a[k][j].clone()) * &x[j];
        }
        x[k] = s / Rational::from_integer(a[k][k].clone());
    }
    Ok(x)
}
