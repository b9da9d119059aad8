//! Valuation-tracked p-adic numbers at finite precision, Teichmüller lifts
//! and Legendre symbols.

use core::fmt;

use crate::error::{Error, Result};
use crate::modular::{checked_pow, Modulus};
use crate::rational::{reduce_rational, Rational};

/// Largest relative precision kept for a prime, so that `p^N < 2^62`.
pub fn max_precision(p: u64) -> u32 {
    let mut n = 0;
    let mut q: u64 = 1;
    while let Some(next) = q.checked_mul(p) {
        if next >= 1 << 62 {
            break;
        }
        q = next;
        n += 1;
    }
    n
}

/// An element `unit · p^valuation` of `Q_p`, with the unit known mod
/// `p^precision`.
///
/// Zero is a separate state that carries how far it is known: an exact zero,
/// or a value only known to be `≡ 0 mod p^k` (the result of cancellation).
#[derive(Clone, Copy, PartialEq, Eq, Hash)]
pub struct PadicNumber {
    prime: u64,
    repr: Repr,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
enum Repr {
    Zero { known_to: Option<i64> },
    Unit { valuation: i64, unit: u64, precision: u32 },
}

impl PadicNumber {
    /// The exact zero.
    pub fn zero(prime: u64) -> Self {
        Self {
            prime,
            repr: Repr::Zero { known_to: None },
        }
    }

    /// A value known only to lie in `p^k Z_p`.
    pub fn zero_mod(prime: u64, k: i64) -> Self {
        Self {
            prime,
            repr: Repr::Zero { known_to: Some(k) },
        }
    }

    /// `p^valuation · x`, where `x` is any integer known mod `p^precision`.
    /// Factors of `p` in `x` move into the valuation (and cost precision).
    pub fn new(prime: u64, valuation: i64, x: u64, precision: u32) -> Self {
        let precision = precision.min(max_precision(prime));
        let modulus = Modulus::prime_power(prime, precision);
        let mut x = modulus.reduce(x);
        if x == 0 {
            return Self::zero_mod(prime, valuation + precision as i64);
        }
        let mut v = valuation;
        let mut n = precision;
        while x % prime == 0 {
            x /= prime;
            v += 1;
            n -= 1;
        }
        Self {
            prime,
            repr: Repr::Unit {
                valuation: v,
                unit: x,
                precision: n,
            },
        }
    }

    /// A residue mod `p^n`, i.e. an element of `Z_p` known to absolute
    /// precision `n`.
    pub fn from_residue(prime: u64, residue: u64, n: u32) -> Self {
        Self::new(prime, 0, residue, n)
    }

    pub fn from_integer(prime: u64, x: i64, precision: u32) -> Self {
        if x == 0 {
            return Self::zero(prime);
        }
        let mut v = 0;
        let mut x = x;
        while x % prime as i64 == 0 {
            x /= prime as i64;
            v += 1;
        }
        let m = Modulus::prime_power(prime, precision.min(max_precision(prime)));
        Self::new(prime, v, m.reduce_i64(x), precision)
    }

    /// The image of a rational in `Q_p`, with `precision` digits of unit.
    pub fn from_rational(prime: u64, r: Rational, precision: u32) -> Self {
        if r.numer() == 0 {
            return Self::zero(prime);
        }
        let p = prime as i64;
        let (mut num, mut den, mut v) = (r.numer(), r.denom(), 0i64);
        while num % p == 0 {
            num /= p;
            v += 1;
        }
        while den % p == 0 {
            den /= p;
            v -= 1;
        }
        let precision = precision.min(max_precision(prime));
        let m = Modulus::prime_power(prime, precision);
        let u = reduce_rational(Rational::new(num, den), m, prime).expect("p removed from denominator");
        Self::new(prime, v, u, precision)
    }

    pub fn prime(&self) -> u64 {
        self.prime
    }

    pub fn is_zero(&self) -> bool {
        matches!(self.repr, Repr::Zero { .. })
    }

    /// `None` for zero.
    pub fn valuation(&self) -> Option<i64> {
        match self.repr {
            Repr::Unit { valuation, .. } => Some(valuation),
            Repr::Zero { .. } => None,
        }
    }

    /// A lower bound on the valuation that the data supports: the valuation
    /// itself, or the known-to precision of a zero.
    pub fn valuation_lower_bound(&self) -> i64 {
        match self.repr {
            Repr::Unit { valuation, .. } => valuation,
            Repr::Zero { known_to } => known_to.unwrap_or(i64::MAX),
        }
    }

    /// The unit part, in `[1, p^precision)`; zero for a zero value.
    pub fn unit(&self) -> u64 {
        match self.repr {
            Repr::Unit { unit, .. } => unit,
            Repr::Zero { .. } => 0,
        }
    }

    /// Relative precision of the unit.
    pub fn precision(&self) -> u32 {
        match self.repr {
            Repr::Unit { precision, .. } => precision,
            Repr::Zero { .. } => 0,
        }
    }

    /// The value is known modulo `p^absolute_precision`. `i64::MAX` for an
    /// exact zero.
    pub fn absolute_precision(&self) -> i64 {
        match self.repr {
            Repr::Unit {
                valuation,
                precision,
                ..
            } => valuation + precision as i64,
            Repr::Zero { known_to } => known_to.unwrap_or(i64::MAX),
        }
    }

    /// Drops digits beyond absolute precision `k`.
    pub fn truncate(&self, k: i64) -> Self {
        if k >= self.absolute_precision() {
            return *self;
        }
        match self.repr {
            Repr::Unit { valuation, unit, .. } if k > valuation => {
                Self::new(self.prime, valuation, unit, (k - valuation) as u32)
            }
            _ => Self::zero_mod(self.prime, k),
        }
    }

    pub fn neg(&self) -> Self {
        match self.repr {
            Repr::Unit {
                valuation,
                unit,
                precision,
            } => {
                let m = Modulus::prime_power(self.prime, precision);
                Self::new(self.prime, valuation, m.neg(unit), precision)
            }
            Repr::Zero { .. } => *self,
        }
    }

    pub fn add(&self, other: &Self) -> Self {
        assert_eq!(self.prime, other.prime, "mixed primes");
        let p = self.prime;
        let abs = self.absolute_precision().min(other.absolute_precision());
        let (a, b) = match (self.repr, other.repr) {
            (Repr::Zero { .. }, _) => return other.truncate(abs),
            (_, Repr::Zero { .. }) => return self.truncate(abs),
            (
                Repr::Unit {
                    valuation: va,
                    unit: ua,
                    ..
                },
                Repr::Unit {
                    valuation: vb,
                    unit: ub,
                    ..
                },
            ) => ((va, ua), (vb, ub)),
        };
        let v = a.0.min(b.0);
        let rel = (abs - v) as u32;
        let m = Modulus::prime_power(p, rel);
        let shifted = |(val, unit): (i64, u64)| {
            let k = (val - v) as u32;
            if k >= rel {
                0
            } else {
                m.mul(m.reduce(unit), checked_pow(p, k).expect("shift fits"))
            }
        };
        Self::new(p, v, m.add(shifted(a), shifted(b)), rel)
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.neg())
    }

    pub fn mul(&self, other: &Self) -> Self {
        assert_eq!(self.prime, other.prime, "mixed primes");
        match (self.repr, other.repr) {
            (
                Repr::Unit {
                    valuation: va,
                    unit: ua,
                    precision: na,
                },
                Repr::Unit {
                    valuation: vb,
                    unit: ub,
                    precision: nb,
                },
            ) => {
                let n = na.min(nb);
                let m = Modulus::prime_power(self.prime, n);
                Self::new(self.prime, va + vb, m.mul(m.reduce(ua), m.reduce(ub)), n)
            }
            (Repr::Zero { known_to: None }, _) | (_, Repr::Zero { known_to: None }) => {
                Self::zero(self.prime)
            }
            _ => Self::zero_mod(
                self.prime,
                self.valuation_lower_bound()
                    .saturating_add(other.valuation_lower_bound()),
            ),
        }
    }

    /// `self · p^k`
    pub fn shift(&self, k: i64) -> Self {
        match self.repr {
            Repr::Unit {
                valuation,
                unit,
                precision,
            } => Self {
                prime: self.prime,
                repr: Repr::Unit {
                    valuation: valuation + k,
                    unit,
                    precision,
                },
            },
            Repr::Zero { known_to } => Self {
                prime: self.prime,
                repr: Repr::Zero {
                    known_to: known_to.map(|x| x + k),
                },
            },
        }
    }

    /// Multiplicative inverse; `None` for zero.
    pub fn inv(&self) -> Option<Self> {
        match self.repr {
            Repr::Unit {
                valuation,
                unit,
                precision,
            } => {
                let m = Modulus::prime_power(self.prime, precision);
                Some(Self::new(self.prime, -valuation, m.inv(unit)?, precision))
            }
            Repr::Zero { .. } => None,
        }
    }

    /// The value mod `p^n`. Requires valuation ≥ 0 and absolute precision
    /// at least `n`.
    pub fn residue(&self, n: u32) -> Result<u64> {
        if let Some(v) = self.valuation() {
            if v < 0 {
                return Err(Error::NegativeValuation(v));
            }
        }
        if self.absolute_precision() < n as i64 {
            return Err(Error::AmbiguousLift {
                bound: 0,
                precision: self.absolute_precision(),
            });
        }
        Ok(match self.repr {
            Repr::Unit { valuation, unit, .. } => {
                if valuation >= n as i64 {
                    0
                } else {
                    let m = Modulus::prime_power(self.prime, n);
                    m.mul(unit, checked_pow(self.prime, valuation as u32).unwrap())
                }
            }
            Repr::Zero { .. } => 0,
        })
    }

    /// Whether `self ≡ other mod p^k`. Both values must be known to at
    /// least `p^k`.
    pub fn agrees_with(&self, other: &Self, k: i64) -> bool {
        debug_assert!(self.absolute_precision() >= k && other.absolute_precision() >= k);
        self.sub(other).valuation_lower_bound() >= k
    }

    /// The unique integer `m` with `|m| ≤ bound` congruent to the value.
    pub fn centered_lift(&self, bound: u64) -> Result<i64> {
        let v = self.valuation_lower_bound();
        if v < 0 {
            return Err(Error::NegativeValuation(v));
        }
        let abs = self.absolute_precision().min(max_precision(self.prime) as i64);
        let modulus = checked_pow(self.prime, abs as u32).unwrap();
        if 2 * bound >= modulus {
            return Err(Error::AmbiguousLift {
                bound,
                precision: abs,
            });
        }
        let r = self.residue(abs as u32)?;
        if r <= bound {
            Ok(r as i64)
        } else if modulus - r <= bound {
            Ok(-((modulus - r) as i64))
        } else {
            Err(Error::NoLiftInWindow { bound })
        }
    }
}

impl fmt::Debug for PadicNumber {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl fmt::Display for PadicNumber {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.repr {
            Repr::Zero { known_to: None } => write!(f, "0"),
            Repr::Zero { known_to: Some(k) } => write!(f, "O({}^{})", self.prime, k),
            Repr::Unit {
                valuation,
                unit,
                precision,
            } => write!(
                f,
                "{}·{}^{} + O({}^{})",
                unit,
                self.prime,
                valuation,
                self.prime,
                valuation + precision as i64
            ),
        }
    }
}

/// `ω(x) mod p^n`: the `(p−1)`-th root of unity congruent to `x` mod `p`,
/// with `ω(0) = 0`.
pub fn teichmuller(x: u64, p: u64, n: u32) -> u64 {
    let m = Modulus::prime_power(p, n);
    let x = x % p;
    if x == 0 {
        return 0;
    }
    // x ↦ x^p gains one correct digit per step; n − 1 steps reach the lift.
    let mut w = x;
    for _ in 0..n {
        let next = m.pow(w, p);
        if next == w {
            break;
        }
        w = next;
    }
    w
}

/// `ω^k(x) mod p^n` for any integer `k`; every power of `ω` vanishes at 0,
/// the trivial character included.
pub fn teichmuller_pow(x: u64, k: i64, p: u64, n: u32) -> u64 {
    if x % p == 0 {
        return 0;
    }
    let m = Modulus::prime_power(p, n);
    m.pow(teichmuller(x, p, n), k.rem_euclid(p as i64 - 1) as u64)
}

/// Residue of `x` mod `p`, for any integer `x`.
pub fn mod_p(x: i64, p: u64) -> u64 {
    x.rem_euclid(p as i64) as u64
}

/// The Legendre symbol `(x/p)`.
pub fn legendre(x: i64, p: u64) -> i32 {
    let x = mod_p(x, p);
    if x == 0 {
        return 0;
    }
    match Modulus::new(p).pow(x, (p - 1) / 2) {
        1 => 1,
        _ => -1,
    }
}

/// The unique integer `m` with `|m| ≤ bound` and `m ≡ x`.
pub fn centered_lift(x: &PadicNumber, bound: u64) -> Result<i64> {
    x.centered_lift(bound)
}
