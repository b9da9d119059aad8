//! Exact rationals for hypergeometric parameters, with reduction into `Z/p^N`.

use core::cmp::Ordering;
use core::fmt;
use core::ops::{Add, Mul, Neg, Sub};
use core::str::FromStr;

use crate::error::{Error, Result};
use crate::modular::{gcd, Modulus};

/// A rational number in lowest terms with a positive denominator.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct Rational {
    num: i64,
    den: i64,
}

impl Rational {
    pub const ZERO: Rational = Rational { num: 0, den: 1 };
    pub const ONE: Rational = Rational { num: 1, den: 1 };

    /// Panics on a zero denominator.
    pub fn new(num: i64, den: i64) -> Self {
        assert!(den != 0, "zero denominator");
        let (num, den) = if den < 0 { (-num, -den) } else { (num, den) };
        let g = gcd(num.unsigned_abs(), den as u64).max(1) as i64;
        Self {
            num: num / g,
            den: den / g,
        }
    }

    pub fn integer(n: i64) -> Self {
        Self { num: n, den: 1 }
    }

    pub fn numer(self) -> i64 {
        self.num
    }

    pub fn denom(self) -> i64 {
        self.den
    }

    pub fn is_integer(self) -> bool {
        self.den == 1
    }

    /// `⌊r⌋`
    pub fn floor(self) -> i64 {
        self.num.div_euclid(self.den)
    }

    /// `⟨r⟩ = r − ⌊r⌋`, in `[0, 1)`.
    pub fn fract(self) -> Rational {
        Rational {
            num: self.num.rem_euclid(self.den),
            den: self.den,
        }
    }

    /// Splits `r` as `(⟨r⟩, ⌊r⌋)`.
    pub fn frac_floor(self) -> (Rational, i64) {
        (self.fract(), self.floor())
    }

    /// Whether `r` lies in `Q ∩ Z_p`.
    pub fn is_p_integral(self, p: u64) -> bool {
        self.den as u64 % p != 0
    }

    /// `num · den⁻¹ mod p^n`.
    pub fn reduce(self, p: u64, n: u32) -> Result<u64> {
        reduce_rational(self, Modulus::prime_power(p, n), p)
    }
}

/// Image of `r` under `Q ∩ Z_p → Z/modulus`, where `modulus` is a power of `p`.
pub fn reduce_rational(r: Rational, modulus: Modulus, p: u64) -> Result<u64> {
    if !r.is_p_integral(p) {
        return Err(Error::DenominatorDivisibleByP { den: r.den, p });
    }
    let inv = modulus
        .inv(modulus.reduce_i64(r.den))
        .ok_or(Error::DenominatorDivisibleByP { den: r.den, p })?;
    Ok(modulus.mul(modulus.reduce_i64(r.num), inv))
}

impl Default for Rational {
    fn default() -> Self {
        Self::ZERO
    }
}

impl From<i64> for Rational {
    fn from(n: i64) -> Self {
        Self::integer(n)
    }
}

impl Add for Rational {
    type Output = Rational;
    fn add(self, rhs: Rational) -> Rational {
        Rational::new(self.num * rhs.den + rhs.num * self.den, self.den * rhs.den)
    }
}

impl Sub for Rational {
    type Output = Rational;
    fn sub(self, rhs: Rational) -> Rational {
        self + (-rhs)
    }
}

impl Neg for Rational {
    type Output = Rational;
    fn neg(self) -> Rational {
        Rational {
            num: -self.num,
            den: self.den,
        }
    }
}

impl Mul for Rational {
    type Output = Rational;
    fn mul(self, rhs: Rational) -> Rational {
        Rational::new(self.num * rhs.num, self.den * rhs.den)
    }
}

impl Ord for Rational {
    fn cmp(&self, other: &Self) -> Ordering {
        (self.num as i128 * other.den as i128).cmp(&(other.num as i128 * self.den as i128))
    }
}

impl PartialOrd for Rational {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for Rational {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.den == 1 {
            write!(f, "{}", self.num)
        } else {
            write!(f, "{}/{}", self.num, self.den)
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ParseRationalError;

impl fmt::Display for ParseRationalError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("expected a rational of the form NUM or NUM/DEN")
    }
}

impl FromStr for Rational {
    type Err = ParseRationalError;

    fn from_str(s: &str) -> core::result::Result<Self, Self::Err> {
        let s = s.trim();
        match s.split_once('/') {
            Some((n, d)) => {
                let n: i64 = n.trim().parse().map_err(|_| ParseRationalError)?;
                let d: i64 = d.trim().parse().map_err(|_| ParseRationalError)?;
                if d == 0 {
                    return Err(ParseRationalError);
                }
                Ok(Rational::new(n, d))
            }
            None => s.parse().map(Rational::integer).map_err(|_| ParseRationalError),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn reduce_examples() {
        assert_eq!(Rational::ZERO.reduce(5, 3), Ok(0));
        assert_eq!(Rational::new(1, 4).reduce(5, 3), Ok(94));
        assert_eq!(
            Rational::new(1, 3).reduce(3, 2),
            Err(Error::DenominatorDivisibleByP { den: 3, p: 3 })
        );
    }

    #[test]
    fn frac_floor_examples() {
        assert_eq!(Rational::new(3, 4).frac_floor(), (Rational::new(3, 4), 0));
        assert_eq!(Rational::new(-1, 2).frac_floor(), (Rational::new(1, 2), -1));
        assert_eq!(Rational::new(7, 3).frac_floor(), (Rational::new(1, 3), 2));
    }

    #[test]
    fn parses() {
        assert_eq!("3/4".parse(), Ok(Rational::new(3, 4)));
        assert_eq!("-2".parse(), Ok(Rational::integer(-2)));
        assert_eq!(" 2/-6 ".parse(), Ok(Rational::new(-1, 3)));
        assert!("1/0".parse::<Rational>().is_err());
    }

    fn p_free(p: i64) -> impl Strategy<Value = Rational> {
        (-1000i64..1000, 1i64..60)
            .prop_filter("p-free denominator", move |(_, d)| d % p != 0)
            .prop_map(|(n, d)| Rational::new(n, d))
    }

    proptest! {
        #[test]
        fn reduction_is_additive(r1 in p_free(7), r2 in p_free(7)) {
            let m = Modulus::prime_power(7, 4);
            let lhs = (r1 + r2).reduce(7, 4).unwrap();
            let rhs = m.add(r1.reduce(7, 4).unwrap(), r2.reduce(7, 4).unwrap());
            prop_assert_eq!(lhs, rhs);
        }

        #[test]
        fn frac_floor_recombines(n in -10_000i64..10_000, d in 1i64..500) {
            let r = Rational::new(n, d);
            let (f, fl) = r.frac_floor();
            prop_assert!(f >= Rational::ZERO && f < Rational::ONE);
            prop_assert_eq!(f + Rational::integer(fl), r);
        }
    }
}
