//! Finite matrix groups over ℚ(i) and the group average of `(σx0)^ℓ`.
//!
//! A matrix `σ` acts on the column vector `(x0, x1)ᵗ`, so `σx0` is the
//! linear form `σ00·x0 + σ01·x1` read from the first row.

use std::collections::{HashSet, VecDeque};
use std::ops::Mul;

use num_bigint::BigInt;
use num_traits::Zero;

use crate::error::{Error, Result};
use crate::exact::{rat, GaussianRational, Rational};
use crate::poly::{binomial, HomogBivariate};

/// 2×2 unitary matrix with Gaussian-rational entries.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct UnitaryMatrix2 {
    entries: [[GaussianRational; 2]; 2],
}

impl UnitaryMatrix2 {
    pub fn new(entries: [[GaussianRational; 2]; 2]) -> Result<Self> {
        let m = Self { entries };
        if m.is_unitary() {
            Ok(m)
        } else {
            Err(Error::NotUnitary)
        }
    }

    pub fn identity() -> Self {
        let (o, z) = (GaussianRational::one(), GaussianRational::zero());
        Self {
            entries: [[o.clone(), z.clone()], [z, o]],
        }
    }

    pub fn entries(&self) -> &[[GaussianRational; 2]; 2] {
        &self.entries
    }

    pub fn entry(&self, r: usize, c: usize) -> &GaussianRational {
        &self.entries[r][c]
    }

    pub fn conj_transpose(&self) -> Self {
        let e = &self.entries;
        Self {
            entries: [
                [e[0][0].conj(), e[1][0].conj()],
                [e[0][1].conj(), e[1][1].conj()],
            ],
        }
    }

    pub fn is_unitary(&self) -> bool {
        let product = Self {
            entries: mul_entries(&self.entries, &self.conj_transpose().entries),
        };
        product == Self::identity()
    }

    pub fn pow(&self, k: u32) -> Self {
        (0..k).fold(Self::identity(), |acc, _| &acc * self)
    }
}

fn mul_entries(
    a: &[[GaussianRational; 2]; 2],
    b: &[[GaussianRational; 2]; 2],
) -> [[GaussianRational; 2]; 2] {
    let cell = |r: usize, c: usize| &(&a[r][0] * &b[0][c]) + &(&a[r][1] * &b[1][c]);
    [[cell(0, 0), cell(0, 1)], [cell(1, 0), cell(1, 1)]]
}

impl Mul for &UnitaryMatrix2 {
    type Output = UnitaryMatrix2;
    fn mul(self, o: &UnitaryMatrix2) -> UnitaryMatrix2 {
        UnitaryMatrix2 {
            entries: mul_entries(&self.entries, &o.entries),
        }
    }
}

/// The two generators of H₁: `((1+i)/2)·[[1, 1], [1, -1]]` and `diag(1, i)`.
pub fn h1_generators() -> (UnitaryMatrix2, UnitaryMatrix2) {
    let h = GaussianRational::new(rat(1, 2), rat(1, 2));
    let first = UnitaryMatrix2 {
        entries: [[h.clone(), h.clone()], [h.clone(), -&h]],
    };
    let second = UnitaryMatrix2 {
        entries: [
            [GaussianRational::one(), GaussianRational::zero()],
            [GaussianRational::zero(), GaussianRational::i()],
        ],
    };
    debug_assert!(first.is_unitary() && second.is_unitary());
    (first, second)
}

/// Finite group of unitary matrices in BFS discovery order.
#[derive(Clone, Debug)]
pub struct MatrixGroup {
    elements: Vec<UnitaryMatrix2>,
    index: HashSet<UnitaryMatrix2>,
}

impl MatrixGroup {
    pub fn order(&self) -> usize {
        self.elements.len()
    }

    pub fn elements(&self) -> &[UnitaryMatrix2] {
        &self.elements
    }

    pub fn contains(&self, m: &UnitaryMatrix2) -> bool {
        self.index.contains(m)
    }

    pub fn is_closed_under_multiplication(&self) -> bool {
        self.elements
            .iter()
            .all(|a| self.elements.iter().all(|b| self.contains(&(a * b))))
    }

    pub fn is_closed_under_inverse(&self) -> bool {
        self.elements
            .iter()
            .all(|a| self.contains(&a.conj_transpose()))
    }
}

/// Smallest multiplicatively closed set containing `generators`.
///
/// Fails with [`Error::CapExceeded`] once more than `cap` elements have been
/// discovered.
pub fn closure(generators: &[UnitaryMatrix2], cap: usize) -> Result<MatrixGroup> {
    let mut elements = Vec::new();
    let mut index = HashSet::new();
    let mut queue = VecDeque::new();
    let mut admit = |m: UnitaryMatrix2,
                     elements: &mut Vec<UnitaryMatrix2>,
                     queue: &mut VecDeque<usize>|
     -> Result<()> {
        if index.insert(m.clone()) {
            if elements.len() == cap {
                return Err(Error::CapExceeded { cap });
            }
            queue.push_back(elements.len());
            elements.push(m);
        }
        Ok(())
    };
    for g in generators {
        admit(g.clone(), &mut elements, &mut queue)?;
    }
    while let Some(i) = queue.pop_front() {
        for g in generators {
            let next = &elements[i] * g;
            admit(next, &mut elements, &mut queue)?;
        }
    }
    let index = elements.iter().cloned().collect();
    Ok(MatrixGroup { elements, index })
}

/// H₁ as the closure of [`h1_generators`].
pub fn h1() -> MatrixGroup {
    let (a, b) = h1_generators();
    closure(&[a, b], 1000).expect("H1 is finite")
}

/// Coefficients of `(a·x0 + b·x1)^n` as `x0^(n-i) x1^i`.
fn linear_form_power(a: &GaussianRational, b: &GaussianRational, n: usize) -> Vec<GaussianRational> {
    let mut a_pows = vec![GaussianRational::one()];
    let mut b_pows = vec![GaussianRational::one()];
    for k in 1..=n {
        a_pows.push(&a_pows[k - 1] * a);
        b_pows.push(&b_pows[k - 1] * b);
    }
    (0..=n)
        .map(|i| {
            let c = Rational::from_integer(binomial(n as u64, i as i64));
            (&a_pows[n - i] * &b_pows[i]).scale(&c)
        })
        .collect()
}

/// `(1/|G|) Σ_{σ∈G} (σx0)^ℓ`.
pub fn reynolds_power(group: &MatrixGroup, ell: usize) -> Result<HomogBivariate> {
    let mut acc = vec![GaussianRational::zero(); ell + 1];
    for sigma in group.elements() {
        let terms = linear_form_power(sigma.entry(0, 0), sigma.entry(0, 1), ell);
        for (slot, t) in acc.iter_mut().zip(&terms) {
            *slot = &*slot + t;
        }
    }
    let inv_order = Rational::new(BigInt::from(1), BigInt::from(group.order()));
    let coeffs = acc
        .into_iter()
        .enumerate()
        .map(|(i, c)| {
            if c.im.is_zero() {
                Ok(c.re * &inv_order)
            } else {
                Err(Error::NonRealResult { index: i })
            }
        })
        .collect::<Result<Vec<_>>>()?;
    HomogBivariate::new(coeffs)
}

/// `f(M·(x0, x1)ᵗ)` as Gaussian coefficients of `x0^(n-i) x1^i`.
pub fn substitute(f: &HomogBivariate, m: &UnitaryMatrix2) -> Vec<GaussianRational> {
    let n = f.degree();
    let row0 = linear_powers(m.entry(0, 0), m.entry(0, 1), n);
    let row1 = linear_powers(m.entry(1, 0), m.entry(1, 1), n);
    let mut out = vec![GaussianRational::zero(); n + 1];
    for (i, a) in f.coeffs().iter().enumerate() {
        if a.is_zero() {
            continue;
        }
        let prod = mul_gauss_poly(&row0[n - i], &row1[i]);
        for (slot, c) in out.iter_mut().zip(&prod) {
            *slot = &*slot + &c.scale(a);
        }
    }
    out
}

/// `f` is fixed by the substitution `(x0, x1)ᵗ ↦ M·(x0, x1)ᵗ`.
pub fn is_invariant_under(f: &HomogBivariate, m: &UnitaryMatrix2) -> bool {
    substitute(f, m)
        .iter()
        .zip(f.coeffs())
        .all(|(s, c)| s.is_real() && &s.re == c)
}

fn linear_powers(a: &GaussianRational, b: &GaussianRational, n: usize) -> Vec<Vec<GaussianRational>> {
    let mut out = vec![vec![GaussianRational::one()]];
    let lin = vec![a.clone(), b.clone()];
    for k in 1..=n {
        let next = mul_gauss_poly(&out[k - 1], &lin);
        out.push(next);
    }
    out
}

fn mul_gauss_poly(p: &[GaussianRational], q: &[GaussianRational]) -> Vec<GaussianRational> {
    let mut out = vec![GaussianRational::zero(); p.len() + q.len() - 1];
    for (i, a) in p.iter().enumerate() {
        if a.is_zero() {
            continue;
        }
        for (j, b) in q.iter().enumerate() {
            out[i + j] = &out[i + j] + &(a * b);
        }
    }
    out
}
