//! Dense polynomials in the monomial basis over `f64` or exact rationals.

use std::fmt::Debug;
use std::ops::{Add, Div, Mul, Neg, Sub};

use num::traits::{FromPrimitive, One, Zero};
use num::BigRational;

/// Field-like scalar the ladder recursions can run over.
pub trait Scalar:
    Clone
    + Debug
    + PartialEq
    + Zero
    + One
    + FromPrimitive
    + Add<Output = Self>
    + Sub<Output = Self>
    + Mul<Output = Self>
    + Div<Output = Self>
    + Neg<Output = Self>
{
    fn from_int(v: u32) -> Self {
        <Self as FromPrimitive>::from_u32(v).expect("u32 is representable")
    }
}

impl Scalar for f64 {}
impl Scalar for BigRational {}

/// `c[0] + c[1] x + ... + c[d] x^d`, stored low degree first with no trailing zeros
/// (the zero polynomial has no coefficients).
#[derive(Debug, Clone, PartialEq)]
pub struct Polynomial<T> {
    coeffs: Vec<T>,
}

impl<T: Scalar> Polynomial<T> {
    pub fn new(mut coeffs: Vec<T>) -> Self {
        while coeffs.last().is_some_and(|c| c.is_zero()) {
            coeffs.pop();
        }
        Self { coeffs }
    }

    pub fn one() -> Self {
        Self::new(vec![T::one()])
    }

    pub fn coeffs(&self) -> &[T] {
        &self.coeffs
    }

    /// Degree, or `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn leading(&self) -> Option<&T> {
        self.coeffs.last()
    }

    pub fn derivative(&self) -> Self {
        Self::new(
            self.coeffs
                .iter()
                .enumerate()
                .skip(1)
                .map(|(i, c)| c.clone() * T::from_int(i as u32))
                .collect(),
        )
    }

    /// Multiplies by `a + b x`.
    pub fn mul_linear(&self, a: &T, b: &T) -> Self {
        let mut out = vec![T::zero(); self.coeffs.len() + 1];
        for (i, c) in self.coeffs.iter().enumerate() {
            out[i] = out[i].clone() + a.clone() * c.clone();
            out[i + 1] = out[i + 1].clone() + b.clone() * c.clone();
        }
        Self::new(out)
    }

    pub fn eval(&self, x: &T) -> T {
        self.coeffs
            .iter()
            .rev()
            .fold(T::zero(), |acc, c| acc * x.clone() + c.clone())
    }
}

impl<T: Scalar> Add for Polynomial<T> {
    type Output = Self;

    fn add(self, rhs: Self) -> Self {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        let get = |p: &Self, i: usize| p.coeffs.get(i).cloned().unwrap_or_else(T::zero);
        Self::new((0..n).map(|i| get(&self, i) + get(&rhs, i)).collect())
    }
}

impl Polynomial<f64> {
    /// Sum of absolute coefficients; bounds `|p(x)| / x^deg` for `x >= 1`.
    pub fn abs_coeff_sum(&self) -> f64 {
        self.coeffs.iter().map(|c| c.abs()).sum()
    }

    /// Number of sign changes of `p` over a sampled interval, ignoring exact zeros.
    pub fn sign_changes(&self, samples: impl IntoIterator<Item = f64>) -> usize {
        let mut prev = 0.0_f64;
        let mut changes = 0;
        for x in samples {
            let v = self.eval(&x);
            if v == 0.0 {
                continue;
            }
            if prev != 0.0 && v.signum() != prev.signum() {
                changes += 1;
            }
            prev = v;
        }
        changes
    }
}
