//! Traces of Frobenius from `₂G₂[1/4, 3/4; 1/3, 2/3 | ·]_p`, and the
//! `₄G₄` value attached to the level-25 cusp form.

use crate::elliptic::WeierstrassCurve;
use crate::error::{Error, Result};
use crate::hypergeom_g::{check_odd_prime, GEvaluator, GParams, GValue};
use crate::modular::{hasse_bound, isqrt, precision_for_bound, Modulus};
use crate::padic::{legendre, mod_p, PadicNumber};
use crate::pi_ring::check_short_curve;

/// The trace evaluator for one prime `p > 3`; the gamma sweep is shared by
/// every curve over `F_p`.
#[derive(Debug, Clone)]
pub struct TraceEvaluator {
    prime: u64,
    g: GEvaluator,
}

impl TraceEvaluator {
    /// `n` is raised to the precision that makes the Hasse-window lift
    /// unique, if needed.
    pub fn new(p: u64, n: u32) -> Result<Self> {
        check_odd_prime(p)?;
        if p <= 3 {
            return Err(Error::SmallPrime(p));
        }
        let n = n.max(precision_for_bound(p, hasse_bound(p)));
        Ok(Self {
            prime: p,
            g: GEvaluator::new(&GParams::trace(), p, n)?,
        })
    }

    pub fn prime(&self) -> u64 {
        self.prime
    }

    pub fn g_value(&self, t: i64) -> GValue {
        self.g.eval(t)
    }

    /// `sign · p · ₂G₂[… | t]`, lifted into `[−2√p, 2√p]`.
    fn lift(&self, sign: i32, t: u64) -> Result<i64> {
        let p = self.prime;
        let g = self.g.eval(t as i64).value;
        let scaled = if sign < 0 { g.shift(1).neg() } else { g.shift(1) };
        scaled.centered_lift(hasse_bound(p))
    }

    /// `a_p(y² = x³ + ax + b) = φ(b) · p · ₂G₂[… | −27b²/4a³]`.
    pub fn trace_short(&self, a: i64, b: i64) -> Result<i64> {
        let p = self.prime;
        check_short_curve(a, b, p)?;
        let m = Modulus::new(p);
        let (a, b) = (mod_p(a, p), mod_p(b, p));
        let num = m.neg(m.mul(27 % p, m.mul(b, b)));
        let den = m.mul(4, m.pow(a, 3));
        let t = m.mul(num, m.inv(den).unwrap());
        self.lift(legendre(b as i64, p), t)
    }

    /// `a_p(E) = φ(−6c₆) · p · ₂G₂[… | 1 − 1728/j]` for any model of `E`.
    pub fn trace_curve(&self, e: &WeierstrassCurve) -> Result<i64> {
        let p = self.prime;
        if e.p != p {
            return Err(Error::MixedRings);
        }
        let inv = e.invariants();
        let j = inv.j.ok_or(Error::CurveSingular)?;
        let m = Modulus::new(p);
        if j == 0 || j == 1728 % p {
            return Err(Error::ExcludedJInvariant);
        }
        let t = m.sub(1, m.mul(1728 % p, m.inv(j).unwrap()));
        let sign = legendre(m.mul(m.reduce_i64(-6), inv.c6) as i64, p);
        self.lift(sign, t)
    }
}

/// `a_p` of `y² = x³ + ax + b` through the `₂G₂` value.
pub fn trace_via_g(a: i64, b: i64, p: u64, n: u32) -> Result<i64> {
    TraceEvaluator::new(p, n)?.trace_short(a, b)
}

/// `a_p` of a general Weierstrass model through `c₆` and `j`.
pub fn trace_via_c6(e: &WeierstrassCurve, n: u32) -> Result<i64> {
    TraceEvaluator::new(e.p, n)?.trace_curve(e)
}

/// Lift window for `₄G₄[…|1]_p − (5/p)p`: `⌊2p^{3/2}⌋ + p`.
pub fn g4_lift_bound(p: u64) -> u64 {
    isqrt(4 * p * p * p) + p
}

/// `₄G₄[1/5, 2/5, 3/5, 4/5; 0, 0, 0, 0 | 1]_p`.
pub fn g4_modular(p: u64, n: u32) -> Result<GValue> {
    let n = n.max(precision_for_bound(p, g4_lift_bound(p)));
    Ok(GEvaluator::new(&GParams::quintic(), p, n)?.eval(1))
}

/// `₄G₄[…|1]_p − (5/p)·p` as an integer; expected to be `c(p)`.
pub fn g4_modular_coefficient(p: u64, n: u32) -> Result<i64> {
    let g = g4_modular(p, n)?.value;
    let correction = legendre(5, p) as i64 * p as i64;
    let prec = g.absolute_precision() as u32;
    g.sub(&PadicNumber::from_integer(p, correction, prec))
        .centered_lift(g4_lift_bound(p))
}
