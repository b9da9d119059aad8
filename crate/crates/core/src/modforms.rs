//! Truncated integer q-series and the weight-4 level-25 eta-quotient cusp
//! form `f = f₁ + 5f₂ + 20f₃ + 25f₄ + 25f₅`,
//! `f_i = η^{5−i}(z) η⁴(5z) η^{i−1}(25z)`.

use alloc::vec;
use alloc::vec::Vec;

use num_bigint::BigInt;
use num_traits::{ToPrimitive, Zero};

use crate::error::{Error, Result};
use crate::rational::Rational;

/// Truncation used when none is given.
pub const DEFAULT_TRUNCATION: usize = 60;

/// `Σ_{n=0}^{M} c(n) qⁿ + O(q^{M+1})` with exact integer coefficients.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct QSeries {
    coeffs: Vec<BigInt>,
}

impl QSeries {
    pub fn zero(truncation: usize) -> Self {
        Self {
            coeffs: vec![BigInt::zero(); truncation + 1],
        }
    }

    pub fn one(truncation: usize) -> Self {
        let mut s = Self::zero(truncation);
        s.coeffs[0] = BigInt::from(1);
        s
    }

    pub fn from_coeffs(coeffs: Vec<BigInt>) -> Self {
        assert!(!coeffs.is_empty(), "a series keeps at least c(0)");
        Self { coeffs }
    }

    /// The largest `n` with `c(n)` known.
    pub fn truncation(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn coeffs(&self) -> &[BigInt] {
        &self.coeffs
    }

    pub fn coefficient(&self, n: usize) -> Result<&BigInt> {
        self.coeffs.get(n).ok_or(Error::IndexBeyondTruncation {
            index: n,
            truncation: self.truncation(),
        })
    }

    /// Truncates both operands to the smaller order.
    pub fn add(&self, other: &Self) -> Self {
        let m = self.truncation().min(other.truncation());
        Self {
            coeffs: (0..=m).map(|i| &self.coeffs[i] + &other.coeffs[i]).collect(),
        }
    }

    pub fn mul(&self, other: &Self) -> Self {
        let m = self.truncation().min(other.truncation());
        let mut out = vec![BigInt::zero(); m + 1];
        for (i, a) in self.coeffs.iter().enumerate().take(m + 1) {
            if a.is_zero() {
                continue;
            }
            for (j, b) in other.coeffs.iter().enumerate().take(m + 1 - i) {
                out[i + j] += a * b;
            }
        }
        Self { coeffs: out }
    }

    pub fn scale(&self, k: i64) -> Self {
        Self {
            coeffs: self.coeffs.iter().map(|c| c * k).collect(),
        }
    }

    /// Multiplication by `q^k`, keeping the truncation order.
    pub fn shift(&self, k: usize) -> Self {
        let m = self.truncation();
        let mut out = vec![BigInt::zero(); m + 1];
        for i in k..=m {
            out[i] = self.coeffs[i - k].clone();
        }
        Self { coeffs: out }
    }
}

/// `∏_{n≥1} (1 − q^{scale·n})^{exponent}` to order `M`.
pub fn euler_product(exponent: u32, scale: usize, truncation: usize) -> QSeries {
    assert!(scale >= 1);
    let mut s = QSeries::one(truncation);
    for k in (scale..=truncation).step_by(scale) {
        for _ in 0..exponent {
            // multiply in place by (1 − q^k)
            for d in (k..=truncation).rev() {
                let (lo, hi) = s.coeffs.split_at_mut(d);
                hi[0] -= &lo[d - k];
            }
        }
    }
    s
}

/// `η(scale·z)^exponent`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct EtaFactor {
    pub scale: usize,
    pub exponent: u32,
}

/// `∏ η(s·z)^e` as a q-series; the prefactors `q^{s·e/24}` must combine to
/// an integer power of `q`.
pub fn eta_quotient(factors: &[EtaFactor], truncation: usize) -> Result<QSeries> {
    let order = factors.iter().fold(Rational::ZERO, |acc, f| {
        acc + Rational::new(f.scale as i64 * f.exponent as i64, 24)
    });
    if !order.is_integer() {
        return Err(Error::NonIntegralEtaOrder);
    }
    let body = factors.iter().fold(QSeries::one(truncation), |acc, f| {
        acc.mul(&euler_product(f.exponent, f.scale, truncation))
    });
    Ok(body.shift(order.numer() as usize))
}

/// `f = f₁ + 5f₂ + 20f₃ + 25f₄ + 25f₅` to order `M`.
pub fn build_f(truncation: usize) -> QSeries {
    const WEIGHTS: [i64; 5] = [1, 5, 20, 25, 25];
    (1..=5u32).zip(WEIGHTS).fold(QSeries::zero(truncation), |acc, (i, w)| {
        let fi = eta_quotient(
            &[
                EtaFactor { scale: 1, exponent: 5 - i },
                EtaFactor { scale: 5, exponent: 4 },
                EtaFactor { scale: 25, exponent: i - 1 },
            ],
            truncation,
        )
        .expect("each term has leading exponent i");
        acc.add(&fi.scale(w))
    })
}

/// `c(n)` from the expansion of `f` to order `M`.
pub fn cusp_coefficient(n: usize, truncation: usize) -> Result<i64> {
    let f = build_f(truncation);
    Ok(f.coefficient(n)?.to_i64().expect("c(n) fits in i64 at this order"))
}
