//! Univariate power series with exact integer coefficients, truncated
//! after a fixed degree.

use std::ops::Mul;

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

/// `Σ_{k <= degree} c_k x^k`; everything above `degree` is dropped.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TruncatedSeries {
    coeffs: Vec<BigInt>,
}

impl TruncatedSeries {
    pub fn zero(degree: usize) -> Self {
        Self {
            coeffs: vec![BigInt::zero(); degree + 1],
        }
    }

    pub fn one(degree: usize) -> Self {
        Self::monomial(degree, 0, BigInt::one())
    }

    pub fn monomial(degree: usize, k: usize, c: BigInt) -> Self {
        let mut s = Self::zero(degree);
        if k <= degree {
            s.coeffs[k] = c;
        }
        s
    }

    pub fn from_coeffs(degree: usize, coeffs: impl IntoIterator<Item = BigInt>) -> Self {
        let mut s = Self::zero(degree);
        for (k, c) in coeffs.into_iter().take(degree + 1).enumerate() {
            s.coeffs[k] = c;
        }
        s
    }

    /// `(1 + x)^e` for a nonnegative integer `e`.
    pub fn one_plus_x_pow(degree: usize, e: u64) -> Self {
        Self::from_coeffs(
            degree,
            (0..=degree as i64).map(|k| crate::numeric::binomial(e as i64, k)),
        )
    }

    /// `1 / (1 - x)^e = Σ C(e-1+k, k) x^k`.
    pub fn geometric_pow(degree: usize, e: u64) -> Self {
        if e == 0 {
            return Self::one(degree);
        }
        Self::from_coeffs(
            degree,
            (0..=degree as i64).map(|k| crate::numeric::binomial(e as i64 - 1 + k, k)),
        )
    }

    pub fn degree(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn coeff(&self, k: usize) -> BigInt {
        self.coeffs.get(k).cloned().unwrap_or_default()
    }

    pub fn coeffs(&self) -> &[BigInt] {
        &self.coeffs
    }

    pub fn pow(&self, mut e: u64) -> Self {
        let mut acc = Self::one(self.degree());
        let mut base = self.clone();
        while e > 0 {
            if e & 1 == 1 {
                acc = &acc * &base;
            }
            e >>= 1;
            if e > 0 {
                base = &base * &base;
            }
        }
        acc
    }

    /// Multiplicative inverse; needs constant term `±1` to stay integral.
    pub fn inverse(&self) -> Option<Self> {
        let c0 = &self.coeffs[0];
        if !(c0.abs().is_one()) {
            return None;
        }
        let n = self.degree();
        let mut inv = Self::zero(n);
        inv.coeffs[0] = c0.clone();
        for k in 1..=n {
            let s: BigInt = (1..=k).map(|j| &self.coeffs[j] * &inv.coeffs[k - j]).sum();
            inv.coeffs[k] = -(s * c0);
        }
        Some(inv)
    }
}

impl Mul for &TruncatedSeries {
    type Output = TruncatedSeries;

    fn mul(self, rhs: &TruncatedSeries) -> TruncatedSeries {
        let degree = self.degree().min(rhs.degree());
        let mut out = TruncatedSeries::zero(degree);
        for (i, a) in self.coeffs.iter().enumerate().take(degree + 1) {
            if a.is_zero() {
                continue;
            }
            for (j, b) in rhs.coeffs.iter().enumerate().take(degree + 1 - i) {
                out.coeffs[i + j] += a * b;
            }
        }
        out
    }
}
