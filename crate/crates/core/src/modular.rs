//! Residue arithmetic modulo prime powers and small integer helpers.

/// Arithmetic in `Z/mZ` for a modulus below `2^63`.
///
/// Residues are always kept in least nonnegative form.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct Modulus {
    m: u64,
}

impl Modulus {
    pub fn new(m: u64) -> Self {
        assert!(m >= 1 && m < (1 << 63), "modulus out of range: {m}");
        Self { m }
    }

    /// The modulus `p^n`. Panics if it does not fit.
    pub fn prime_power(p: u64, n: u32) -> Self {
        Self::new(checked_pow(p, n).expect("p^n overflows u64"))
    }

    #[inline]
    pub fn value(self) -> u64 {
        self.m
    }

    #[inline]
    pub fn reduce(self, x: u64) -> u64 {
        x % self.m
    }

    #[inline]
    pub fn reduce_i64(self, x: i64) -> u64 {
        x.rem_euclid(self.m as i64) as u64
    }

    #[inline]
    pub fn reduce_i128(self, x: i128) -> u64 {
        x.rem_euclid(self.m as i128) as u64
    }

    #[inline]
    pub fn add(self, a: u64, b: u64) -> u64 {
        let s = a + b;
        if s >= self.m {
            s - self.m
        } else {
            s
        }
    }

    #[inline]
    pub fn sub(self, a: u64, b: u64) -> u64 {
        if a >= b {
            a - b
        } else {
            a + self.m - b
        }
    }

    #[inline]
    pub fn neg(self, a: u64) -> u64 {
        if a == 0 {
            0
        } else {
            self.m - a
        }
    }

    #[inline]
    pub fn mul(self, a: u64, b: u64) -> u64 {
        if self.m <= u32::MAX as u64 {
            a * b % self.m
        } else {
            ((a as u128 * b as u128) % self.m as u128) as u64
        }
    }

    pub fn pow(self, mut base: u64, mut exp: u64) -> u64 {
        let mut acc = 1 % self.m;
        base %= self.m;
        while exp > 0 {
            if exp & 1 == 1 {
                acc = self.mul(acc, base);
            }
            base = self.mul(base, base);
            exp >>= 1;
        }
        acc
    }

    /// `(-1)^k`.
    #[inline]
    pub fn sign(self, k: i64) -> u64 {
        if k.rem_euclid(2) == 0 {
            1 % self.m
        } else {
            self.neg(1 % self.m)
        }
    }

    /// Inverse of `a`, or `None` when `gcd(a, m) != 1`.
    pub fn inv(self, a: u64) -> Option<u64> {
        let (g, x, _) = ext_gcd(a as i128 % self.m as i128, self.m as i128);
        if g != 1 {
            return None;
        }
        Some(self.reduce_i128(x))
    }
}

/// Extended Euclid: returns `(g, x, y)` with `a·x + b·y = g`.
pub fn ext_gcd(a: i128, b: i128) -> (i128, i128, i128) {
    let (mut old_r, mut r) = (a, b);
    let (mut old_s, mut s) = (1i128, 0i128);
    let (mut old_t, mut t) = (0i128, 1i128);
    while r != 0 {
        let q = old_r.div_euclid(r);
        (old_r, r) = (r, old_r - q * r);
        (old_s, s) = (s, old_s - q * s);
        (old_t, t) = (t, old_t - q * t);
    }
    if old_r < 0 {
        (-old_r, -old_s, -old_t)
    } else {
        (old_r, old_s, old_t)
    }
}

pub fn gcd(mut a: u64, mut b: u64) -> u64 {
    while b != 0 {
        (a, b) = (b, a % b);
    }
    a
}

pub fn checked_pow(base: u64, exp: u32) -> Option<u64> {
    let mut acc: u64 = 1;
    for _ in 0..exp {
        acc = acc.checked_mul(base)?;
    }
    Some(acc)
}

pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2;
    while d * d <= n {
        if n % d == 0 {
            return false;
        }
        d += 1;
    }
    true
}

/// Primes in `lo..=hi`.
pub fn primes_in(lo: u64, hi: u64) -> impl Iterator<Item = u64> {
    (lo..=hi).filter(|&n| is_prime(n))
}

/// `⌊√n⌋`.
pub fn isqrt(n: u64) -> u64 {
    if n < 2 {
        return n;
    }
    let mut x = n;
    let mut y = n / 2 + n % 2;
    while y < x {
        x = y;
        y = (x + n / x) / 2;
    }
    x
}

/// `⌊2√p⌋`, the Hasse bound on `|a_p|`.
pub fn hasse_bound(p: u64) -> u64 {
    isqrt(4 * p)
}

/// Smallest `n ≥ 1` with `p^n > 2·bound`, so a residue mod `p^n` has at most
/// one representative in `[-bound, bound]`.
pub fn precision_for_bound(p: u64, bound: u64) -> u32 {
    let mut n = 1;
    let mut q = p;
    while q <= 2 * bound {
        q *= p;
        n += 1;
    }
    n
}

/// Montgomery multiplication modulo an odd `m < 2^63`, with `R = 2^64`.
///
/// Used by the gamma sweep, whose running product is one long dependency
/// chain of modular multiplications.
#[derive(Debug, Clone, Copy)]
pub struct Montgomery {
    m: u64,
    /// `-m^{-1} mod 2^64`
    m_neg_inv: u64,
    /// `R^2 mod m`
    r2: u64,
}

impl Montgomery {
    pub fn new(m: u64) -> Self {
        assert!(m % 2 == 1 && m < (1 << 63), "Montgomery modulus must be odd and < 2^63");
        // Newton iteration for m^{-1} mod 2^64.
        let mut inv: u64 = 1;
        for _ in 0..6 {
            inv = inv.wrapping_mul(2u64.wrapping_sub(m.wrapping_mul(inv)));
        }
        let r = ((1u128 << 64) % m as u128) as u64;
        let r2 = ((r as u128 * r as u128) % m as u128) as u64;
        Self {
            m,
            m_neg_inv: inv.wrapping_neg(),
            r2,
        }
    }

    #[inline(always)]
    fn redc(self, t: u128) -> u64 {
        let lo = t as u64;
        let q = lo.wrapping_mul(self.m_neg_inv);
        let s = t + q as u128 * self.m as u128;
        // t < m·2^64 and q·m < m·2^64, so s >> 64 < 2m.
        let r = (s >> 64) as u64;
        if r >= self.m {
            r - self.m
        } else {
            r
        }
    }

    #[inline(always)]
    pub fn mul(self, a: u64, b: u64) -> u64 {
        self.redc(a as u128 * b as u128)
    }

    #[inline(always)]
    pub fn add(self, a: u64, b: u64) -> u64 {
        let s = a + b;
        if s >= self.m {
            s - self.m
        } else {
            s
        }
    }

    #[inline(always)]
    pub fn neg(self, a: u64) -> u64 {
        if a == 0 {
            0
        } else {
            self.m - a
        }
    }

    pub fn to_mont(self, a: u64) -> u64 {
        self.mul(a % self.m, self.r2)
    }

    pub fn from_mont(self, a: u64) -> u64 {
        self.redc(a as u128)
    }
}
