//! The p-adic hypergeometric function `ₙGₙ[a₁…aₙ; b₁…bₙ | t]_p`.
//!
//! ```text
//! ₙGₙ[a; b | t]_p = −1/(p−1) Σ_{j=0}^{p−2} (−1)^{jn} ω̄^j(t)
//!     × ∏_i Γ_p(⟨a_i − j/(p−1)⟩)/Γ_p(⟨a_i⟩) · Γ_p(⟨−b_i + j/(p−1)⟩)/Γ_p(⟨−b_i⟩)
//!         · (−p)^{−⌊⟨a_i⟩ − j/(p−1)⌋ − ⌊⟨−b_i⟩ + j/(p−1)⌋}
//! ```
//!
//! Only `t` changes between evaluations for a fixed prime and parameter set,
//! so [`GEvaluator`] precomputes the `t`-independent part of every summand
//! (one gamma sweep) and each evaluation is then `O(p)`.

use alloc::collections::BTreeMap;
use alloc::vec::Vec;

use crate::error::{Error, Result};
use crate::gamma::GammaTable;
use crate::modular::{is_prime, Modulus};
use crate::padic::{mod_p, teichmuller, PadicNumber};
use crate::rational::{reduce_rational, Rational};

/// Extra p-adic digits carried beyond the target precision.
pub const GUARD_DIGITS: u32 = 2;

/// Parameters `(a₁…aₙ; b₁…bₙ)`, stored as fractional parts in `[0, 1)`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct GParams {
    upper: Vec<Rational>,
    lower: Vec<Rational>,
}

impl GParams {
    pub fn new(upper: Vec<Rational>, lower: Vec<Rational>) -> Result<Self> {
        if upper.is_empty() || upper.len() != lower.len() {
            return Err(Error::ParameterShape);
        }
        Ok(Self {
            upper: upper.into_iter().map(Rational::fract).collect(),
            lower: lower.into_iter().map(Rational::fract).collect(),
        })
    }

    /// `[1/4, 3/4; 1/3, 2/3]`, the trace-of-Frobenius parameters.
    pub fn trace() -> Self {
        Self::new(
            alloc::vec![Rational::new(1, 4), Rational::new(3, 4)],
            alloc::vec![Rational::new(1, 3), Rational::new(2, 3)],
        )
        .unwrap()
    }

    /// `[1/5, 2/5, 3/5, 4/5; 0, 0, 0, 0]`, tied to the level-25 cusp form.
    pub fn quintic() -> Self {
        Self::new(
            (1..5).map(|k| Rational::new(k, 5)).collect(),
            alloc::vec![Rational::ZERO; 4],
        )
        .unwrap()
    }

    /// `[0, 0; 0, 1/2]`, used for curves over `F_3`.
    pub fn characteristic_three() -> Self {
        Self::new(
            alloc::vec![Rational::ZERO, Rational::ZERO],
            alloc::vec![Rational::ZERO, Rational::new(1, 2)],
        )
        .unwrap()
    }

    pub fn n(&self) -> usize {
        self.upper.len()
    }

    pub fn upper(&self) -> &[Rational] {
        &self.upper
    }

    pub fn lower(&self) -> &[Rational] {
        &self.lower
    }

    /// Checks `p` is an odd prime and every parameter lies in `Z_p`.
    pub fn check_prime(&self, p: u64) -> Result<()> {
        check_odd_prime(p)?;
        if self
            .upper
            .iter()
            .chain(&self.lower)
            .all(|r| r.is_p_integral(p))
        {
            Ok(())
        } else {
            Err(Error::BadParameterDenominator { p })
        }
    }
}

pub(crate) fn check_odd_prime(p: u64) -> Result<()> {
    if p == 2 {
        Err(Error::EvenPrime(p))
    } else if !is_prime(p) {
        Err(Error::NotPrime(p))
    } else {
        Ok(())
    }
}

/// An evaluated `ₙGₙ`. The value satisfies `valuation ≥ delta`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GValue {
    pub value: PadicNumber,
    pub prime: u64,
    pub params: GParams,
    /// `t mod p`.
    pub argument: u64,
    pub delta: i64,
}

/// `t`-independent part of one summand: `unit · p^exponent`.
#[derive(Debug, Clone, Copy)]
struct Summand {
    exponent: i64,
    unit: u64,
}

/// Evaluates `ₙGₙ[params | ·]_p` at many arguments for one prime.
#[derive(Debug, Clone)]
pub struct GEvaluator {
    params: GParams,
    prime: u64,
    work_precision: u32,
    delta: i64,
    summands: Vec<Summand>,
}

impl GEvaluator {
    pub fn new(params: &GParams, p: u64, target: u32) -> Result<Self> {
        Self::with_guard(params, p, target, GUARD_DIGITS)
    }

    pub fn with_guard(params: &GParams, p: u64, target: u32, guard: u32) -> Result<Self> {
        params.check_prime(p)?;
        let nw = target + guard;
        let q = p as i64 - 1;
        let step = |j: i64| Rational::new(j, q);

        let mut args = Vec::with_capacity(2 * params.n() * (p as usize - 1));
        for j in 0..q {
            for (&a, &b) in params.upper.iter().zip(&params.lower) {
                args.push((a - step(j)).fract());
                args.push((-b + step(j)).fract());
            }
        }
        let table = GammaTable::for_rationals(p, nw, args)?;
        let m = table.modulus();

        let mut denominator = 1 % m.value();
        for (&a, &b) in params.upper.iter().zip(&params.lower) {
            denominator = m.mul(denominator, table.at_fract(a)?);
            denominator = m.mul(denominator, table.at_fract(-b)?);
        }
        let denominator_inv = m.inv(denominator).expect("gamma values are units");

        let n = params.n() as i64;
        let mut summands = Vec::with_capacity(q as usize);
        for j in 0..q {
            let mut exponent = 0i64;
            let mut unit = denominator_inv;
            for (&a, &b) in params.upper.iter().zip(&params.lower) {
                let upper_arg = a - step(j);
                let lower_arg = (-b).fract() + step(j);
                exponent -= upper_arg.floor() + lower_arg.floor();
                unit = m.mul(unit, table.at_fract(upper_arg)?);
                unit = m.mul(unit, table.at_fract(lower_arg)?);
            }
            // (−1)^{jn} and the sign of (−p)^exponent
            unit = m.mul(unit, m.sign(j * n + exponent));
            summands.push(Summand { exponent, unit });
        }
        let delta = summands.iter().map(|s| s.exponent).min().unwrap();
        Ok(Self {
            params: params.clone(),
            prime: p,
            work_precision: nw,
            delta,
            summands,
        })
    }

    pub fn prime(&self) -> u64 {
        self.prime
    }

    pub fn params(&self) -> &GParams {
        &self.params
    }

    pub fn work_precision(&self) -> u32 {
        self.work_precision
    }

    /// The smallest `p`-exponent among the summands; equals [`delta_bound`].
    pub fn delta(&self) -> i64 {
        self.delta
    }

    /// `ₙGₙ[params | t]_p` for `t ∈ F_p`, given by any integer representative.
    pub fn eval(&self, t: i64) -> GValue {
        let p = self.prime;
        let t = mod_p(t, p);
        let value = if t == 0 {
            // ω̄^j(0) = 0 for every j, the trivial character included.
            PadicNumber::zero(p)
        } else {
            self.sum(t)
        };
        GValue {
            value,
            prime: p,
            params: self.params.clone(),
            argument: t,
            delta: self.delta,
        }
    }

    fn sum(&self, t: u64) -> PadicNumber {
        let p = self.prime;
        let nw = self.work_precision;
        let m = Modulus::prime_power(p, nw);
        let w_bar = m.inv(teichmuller(t, p, nw)).expect("ω(t) is a unit");

        // Summands sharing a p-exponent are added as plain residues.
        let mut by_exponent: BTreeMap<i64, u64> = BTreeMap::new();
        let mut char_value = 1 % m.value();
        for s in &self.summands {
            let slot = by_exponent.entry(s.exponent).or_insert(0);
            *slot = m.add(*slot, m.mul(s.unit, char_value));
            char_value = m.mul(char_value, w_bar);
        }
        let total = by_exponent
            .into_iter()
            .fold(PadicNumber::zero(p), |acc, (e, u)| {
                acc.add(&PadicNumber::new(p, e, u, nw))
            });
        let scale = PadicNumber::from_rational(p, Rational::new(-1, p as i64 - 1), nw);
        total.mul(&scale)
    }
}

/// `ₙGₙ[params | t]_p` with `N + GUARD_DIGITS` digits of working precision.
pub fn g_eval(params: &GParams, t: i64, p: u64, n: u32) -> Result<GValue> {
    Ok(GEvaluator::new(params, p, n)?.eval(t))
}

/// Reduces a rational argument such as `−27b²/4a³` into `F_p`.
pub fn argument_mod_p(t: Rational, p: u64) -> Result<u64> {
    reduce_rational(t, Modulus::new(p), p)
}

/// `min_{0≤j≤p−2} f(j)` with
/// `f(j) = #{i : ⟨a_i⟩ < j/(p−1)} − #{i : ⟨b_i⟩* ≤ j/(p−1)}` and
/// `⟨b⟩* = 1 − ⟨−b⟩`. The value of `ₙGₙ` lies in `p^δ Z_p`.
pub fn delta_bound(params: &GParams, p: u64) -> Result<i64> {
    params.check_prime(p)?;
    let q = p as i64 - 1;
    let f = |j: i64| {
        let x = Rational::new(j, q);
        let below = params.upper.iter().filter(|&&a| a.fract() < x).count() as i64;
        let reached = params
            .lower
            .iter()
            .filter(|&&b| Rational::ONE - (-b).fract() <= x)
            .count() as i64;
        below - reached
    };
    Ok((0..q).map(f).min().unwrap())
}

#[cfg(test)]
mod tests {
    use super::*;
    use alloc::vec;

    fn r(n: i64, d: i64) -> Rational {
        Rational::new(n, d)
    }

    /// The summand exponents written with explicit floors, independent of
    /// the threshold counting in `delta_bound`.
    fn delta_by_floors(upper: &[Rational], lower: &[Rational], p: u64) -> i64 {
        let q = p as i64 - 1;
        (0..q)
            .map(|j| {
                upper
                    .iter()
                    .zip(lower)
                    .map(|(&a, &b)| -(a.fract() - r(j, q)).floor() - ((-b).fract() + r(j, q)).floor())
                    .sum::<i64>()
            })
            .min()
            .unwrap()
    }

    #[test]
    fn delta_examples() {
        assert_eq!(delta_bound(&GParams::trace(), 13), Ok(-1));
        let half = GParams::new(vec![r(1, 2)], vec![r(1, 2)]).unwrap();
        assert_eq!(delta_by_floors(half.upper(), half.lower(), 5), -1);
        assert_eq!(delta_bound(&half, 5), Ok(-1));
        let zero = GParams::new(vec![Rational::ZERO], vec![Rational::ZERO]).unwrap();
        assert_eq!(delta_bound(&zero, 7), Ok(0));
        assert_eq!(
            delta_bound(&GParams::trace(), 3),
            Err(Error::BadParameterDenominator { p: 3 })
        );
    }

    #[test]
    fn zero_argument_gives_zero() {
        let g = g_eval(&GParams::trace(), 0, 7, 2).unwrap();
        assert!(g.value.is_zero());
        assert_eq!(g.value.valuation_lower_bound(), i64::MAX);
    }

    #[test]
    fn rejects_bad_primes() {
        assert_eq!(g_eval(&GParams::quintic(), 1, 2, 2).unwrap_err(), Error::EvenPrime(2));
        assert_eq!(g_eval(&GParams::quintic(), 1, 9, 2).unwrap_err(), Error::NotPrime(9));
        assert_eq!(
            g_eval(&GParams::quintic(), 1, 5, 2).unwrap_err(),
            Error::BadParameterDenominator { p: 5 }
        );
    }

    #[test]
    fn anchor_curve_value() {
        // y² = x³ + x + 1 over F_5 has a_5 = −3, so the value is −3/5.
        let t = argument_mod_p(r(-27, 4), 5).unwrap();
        assert_eq!(t, 2);
        let g = g_eval(&GParams::trace(), t as i64, 5, 2).unwrap();
        assert_eq!(g.value.valuation(), Some(-1));
        let expected = PadicNumber::from_rational(5, r(-3, 5), 8);
        assert!(g.value.agrees_with(&expected, g.value.absolute_precision()));
        assert_eq!(g.value.shift(1).centered_lift(4), Ok(-3));
    }

    #[test]
    fn evaluator_delta_matches_bound() {
        for p in [5u64, 7, 11, 13, 29] {
            let e = GEvaluator::new(&GParams::trace(), p, 2).unwrap();
            assert_eq!(e.delta(), delta_bound(&GParams::trace(), p).unwrap());
        }
    }

    #[test]
    fn canonicalizes_integer_shifts() {
        let a = GParams::new(vec![r(1, 4), r(3, 4)], vec![r(1, 3), r(2, 3)]).unwrap();
        let b = GParams::new(vec![r(-3, 4), r(11, 4)], vec![r(-5, 3), r(8, 3)]).unwrap();
        assert_eq!(a, b);
    }
}
