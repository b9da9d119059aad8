//! Weierstrass models over `F_p`, their invariants, admissible changes of
//! variables, and `a_p` by direct counting.

use crate::error::{Error, Result};
use crate::hypergeom_g::{g_eval, GParams, GUARD_DIGITS};
use crate::modular::{hasse_bound, is_prime, precision_for_bound, Modulus};
use crate::padic::{legendre, mod_p};

/// `y² + a1·xy + a3·y = x³ + a2·x² + a4·x + a6` over `F_p`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct WeierstrassCurve {
    pub p: u64,
    pub a1: u64,
    pub a2: u64,
    pub a3: u64,
    pub a4: u64,
    pub a6: u64,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct CurveInvariants {
    pub b2: u64,
    pub b4: u64,
    pub b6: u64,
    pub b8: u64,
    pub c4: u64,
    pub c6: u64,
    pub discriminant: u64,
    /// `None` when the model is singular.
    pub j: Option<u64>,
}

/// `x = u²x' + r`, `y = u³y' + su²x' + t`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct AdmissibleTransform {
    pub u: u64,
    pub r: u64,
    pub s: u64,
    pub t: u64,
}

impl AdmissibleTransform {
    pub const IDENTITY: Self = Self {
        u: 1,
        r: 0,
        s: 0,
        t: 0,
    };
}

impl WeierstrassCurve {
    /// Coefficients are reduced mod `p`.
    pub fn new(p: u64, coeffs: [i64; 5]) -> Result<Self> {
        if !is_prime(p) {
            return Err(Error::NotPrime(p));
        }
        let [a1, a2, a3, a4, a6] = coeffs.map(|c| mod_p(c, p));
        Ok(Self {
            p,
            a1,
            a2,
            a3,
            a4,
            a6,
        })
    }

    /// `y² = x³ + ax + b`.
    pub fn short(p: u64, a: i64, b: i64) -> Result<Self> {
        Self::new(p, [0, 0, 0, a, b])
    }

    pub fn coeffs(&self) -> [u64; 5] {
        [self.a1, self.a2, self.a3, self.a4, self.a6]
    }

    pub fn is_short(&self) -> bool {
        self.a1 == 0 && self.a2 == 0 && self.a3 == 0
    }

    pub fn invariants(&self) -> CurveInvariants {
        let m = Modulus::new(self.p);
        let [a1, a2, a3, a4, a6] = self.coeffs();
        let c = |x: i64| m.reduce_i64(x);
        let b2 = m.add(m.mul(a1, a1), m.mul(4 % self.p, a2));
        let b4 = m.add(m.mul(2 % self.p, a4), m.mul(a1, a3));
        let b6 = m.add(m.mul(a3, a3), m.mul(4 % self.p, a6));
        let b8 = {
            let t1 = m.mul(m.mul(a1, a1), a6);
            let t2 = m.mul(c(4), m.mul(a2, a6));
            let t3 = m.mul(m.mul(a1, a3), a4);
            let t4 = m.mul(a2, m.mul(a3, a3));
            let t5 = m.mul(a4, a4);
            m.sub(m.add(m.sub(m.add(t1, t2), t3), t4), t5)
        };
        let c4 = m.sub(m.mul(b2, b2), m.mul(c(24), b4));
        let c6 = {
            let t1 = m.neg(m.pow(b2, 3));
            let t2 = m.mul(c(36), m.mul(b2, b4));
            let t3 = m.mul(c(216), b6);
            m.sub(m.add(t1, t2), t3)
        };
        // −b2²b8 − 8b4³ − 27b6² + 9b2b4b6, valid in every characteristic.
        let discriminant = {
            let t1 = m.neg(m.mul(m.mul(b2, b2), b8));
            let t2 = m.mul(c(8), m.pow(b4, 3));
            let t3 = m.mul(c(27), m.mul(b6, b6));
            let t4 = m.mul(c(9), m.mul(m.mul(b2, b4), b6));
            m.add(m.sub(m.sub(t1, t2), t3), t4)
        };
        let j = m.inv(discriminant).map(|d| m.mul(m.pow(c4, 3), d));
        CurveInvariants {
            b2,
            b4,
            b6,
            b8,
            c4,
            c6,
            discriminant,
            j: if discriminant == 0 { None } else { j },
        }
    }

    pub fn is_singular(&self) -> bool {
        self.invariants().discriminant == 0
    }

    /// `j(E)`, or `CurveSingular`.
    pub fn j_invariant(&self) -> Result<u64> {
        self.invariants().j.ok_or(Error::CurveSingular)
    }

    pub fn apply_transform(&self, tr: &AdmissibleTransform) -> Result<Self> {
        let p = self.p;
        let m = Modulus::new(p);
        let (u, r, s, t) = (tr.u % p, tr.r % p, tr.s % p, tr.t % p);
        let ui = m.inv(u).ok_or(Error::ZeroU)?;
        let [a1, a2, a3, a4, a6] = self.coeffs();
        let k = |x: u64| x % p;

        let n1 = m.add(a1, m.mul(k(2), s));
        let n2 = m.sub(m.add(m.sub(a2, m.mul(s, a1)), m.mul(k(3), r)), m.mul(s, s));
        let n3 = m.add(m.add(a3, m.mul(r, a1)), m.mul(k(2), t));
        let n4 = {
            let mut v = m.sub(a4, m.mul(s, a3));
            v = m.add(v, m.mul(k(2), m.mul(r, a2)));
            v = m.sub(v, m.mul(m.add(t, m.mul(r, s)), a1));
            v = m.add(v, m.mul(k(3), m.mul(r, r)));
            m.sub(v, m.mul(k(2), m.mul(s, t)))
        };
        let n6 = {
            let mut v = m.add(a6, m.mul(r, a4));
            v = m.add(v, m.mul(m.mul(r, r), a2));
            v = m.add(v, m.pow(r, 3));
            v = m.sub(v, m.mul(t, a3));
            v = m.sub(v, m.mul(t, t));
            m.sub(v, m.mul(m.mul(r, t), a1))
        };
        Ok(Self {
            p,
            a1: m.mul(n1, ui),
            a2: m.mul(n2, m.pow(ui, 2)),
            a3: m.mul(n3, m.pow(ui, 3)),
            a4: m.mul(n4, m.pow(ui, 4)),
            a6: m.mul(n6, m.pow(ui, 6)),
        })
    }

    /// `(a, b, T)` with `T(E)` equal to `y² = x³ + ax + b`. Needs `p > 3`.
    pub fn to_short_form(&self) -> Result<(u64, u64, AdmissibleTransform)> {
        let p = self.p;
        if p <= 3 {
            return Err(Error::SmallPrime(p));
        }
        let m = Modulus::new(p);
        let half = m.inv(2).unwrap();
        let third = m.inv(3).unwrap();
        let s = m.neg(m.mul(self.a1, half));
        let r = m.mul(m.sub(m.add(m.mul(s, s), m.mul(s, self.a1)), self.a2), third);
        let t = m.neg(m.mul(m.add(self.a3, m.mul(r, self.a1)), half));
        let tr = AdmissibleTransform { u: 1, r, s, t };
        let e = self.apply_transform(&tr)?;
        debug_assert!(e.is_short());
        Ok((e.a4, e.a6, tr))
    }

    /// Number of projective points, by a double loop over `(x, y)`.
    pub fn count_points(&self) -> u64 {
        let m = Modulus::new(self.p);
        let [a1, a2, a3, a4, a6] = self.coeffs();
        let mut count = 1;
        for x in 0..self.p {
            let rhs = m.add(m.add(m.add(m.pow(x, 3), m.mul(a2, m.mul(x, x))), m.mul(a4, x)), a6);
            let lin = m.add(m.mul(a1, x), a3);
            for y in 0..self.p {
                if m.add(m.mul(y, y), m.mul(lin, y)) == rhs {
                    count += 1;
                }
            }
        }
        count
    }

    /// `a_p = p + 1 − #E(F_p)` by enumeration.
    pub fn ap_enumerate(&self) -> Result<i64> {
        if self.is_singular() {
            return Err(Error::CurveSingular);
        }
        Ok(self.p as i64 + 1 - self.count_points() as i64)
    }

    /// `a_p = −Σ_x φ((2y + a1x + a3)²)`, completing the square in `y`.
    /// Needs `p` odd.
    pub fn ap_legendre(&self) -> Result<i64> {
        let p = self.p;
        if p == 2 {
            return Err(Error::EvenPrime(p));
        }
        if self.is_singular() {
            return Err(Error::CurveSingular);
        }
        let m = Modulus::new(p);
        let [a1, a2, a3, a4, a6] = self.coeffs();
        let sum: i64 = (0..p)
            .map(|x| {
                let rhs = m.add(m.add(m.add(m.pow(x, 3), m.mul(a2, m.mul(x, x))), m.mul(a4, x)), a6);
                let lin = m.add(m.mul(a1, x), a3);
                let disc = m.add(m.mul(4, rhs), m.mul(lin, lin));
                legendre(disc as i64, p) as i64
            })
            .sum();
        Ok(-sum)
    }
}

/// `a_p` of `y² = x³ + ax + b` as `−Σ_x φ(x³ + ax + b)`.
pub fn ap_legendre_sum(a: i64, b: i64, p: u64) -> Result<i64> {
    WeierstrassCurve::short(p, a, b)?.ap_legendre()
}

/// The quadratic twist `y² = x³ + ad²x + bd³`.
pub fn quadratic_twist(a: i64, b: i64, d: i64, p: u64) -> (i64, i64) {
    let m = Modulus::new(p);
    let d = mod_p(d, p);
    let a = m.mul(mod_p(a, p), m.pow(d, 2));
    let b = m.mul(mod_p(b, p), m.pow(d, 3));
    (a as i64, b as i64)
}

/// Both sides of the characteristic-3 formula for `y² = x³ + ax² + b`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct CharacteristicThreeCheck {
    pub a: u64,
    pub b: u64,
    pub enumerated: i64,
    pub formula: i64,
}

impl CharacteristicThreeCheck {
    pub fn holds(&self) -> bool {
        self.enumerated == self.formula
    }
}

/// `a₃` of `y² = x³ + ax² + b` over `F_3` by counting and as
/// `φ(a) · ₂G₂[0, 0; 0, 1/2 | −a/b]_3`.
pub fn a3_special(a: i64, b: i64) -> Result<CharacteristicThreeCheck> {
    let p = 3;
    let (a, b) = (mod_p(a, p), mod_p(b, p));
    if a == 0 || b == 0 {
        return Err(Error::ExcludedJInvariant);
    }
    let enumerated = WeierstrassCurve::new(p, [0, a as i64, 0, 0, b as i64])?.ap_enumerate()?;
    let m = Modulus::new(p);
    let t = m.mul(m.neg(a), m.inv(b).unwrap());
    let bound = hasse_bound(p);
    let g = g_eval(
        &GParams::characteristic_three(),
        t as i64,
        p,
        precision_for_bound(p, bound).max(GUARD_DIGITS),
    )?;
    let formula = g.value.centered_lift(bound)? * legendre(a as i64, p) as i64;
    Ok(CharacteristicThreeCheck {
        a,
        b,
        enumerated,
        formula,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn invariants_examples() {
        let e = WeierstrassCurve::short(5, 1, 1).unwrap();
        let inv = e.invariants();
        assert_eq!((inv.c4, inv.discriminant, inv.j), (2, 4, Some(2)));
        for (a, b) in [(1i64, 1i64), (3, 5), (10, 2)] {
            let p = 101;
            let inv = WeierstrassCurve::short(p, a, b).unwrap().invariants();
            let m = Modulus::new(p);
            assert_eq!(inv.c4, m.reduce_i64(-48 * a));
            assert_eq!(inv.c6, m.reduce_i64(-864 * b));
            assert_eq!(inv.discriminant, m.reduce_i64(-16 * (4 * a * a * a + 27 * b * b)));
        }
        let j0 = WeierstrassCurve::short(7, 0, 1).unwrap();
        assert_eq!(j0.j_invariant(), Ok(0));
        assert_eq!(WeierstrassCurve::short(5, 0, 0).unwrap().j_invariant(), Err(Error::CurveSingular));
    }

    #[test]
    fn short_form_examples() {
        let e = WeierstrassCurve::new(7, [0, 0, 1, 0, 0]).unwrap();
        let (a, b, _) = e.to_short_form().unwrap();
        assert_eq!((a, b), (0, 2));
        let s = WeierstrassCurve::short(13, 4, 9).unwrap();
        assert_eq!(s.to_short_form().unwrap(), (4, 9, AdmissibleTransform::IDENTITY));
        assert_eq!(s.apply_transform(&AdmissibleTransform::IDENTITY).unwrap(), s);
        let zero = AdmissibleTransform { u: 13, ..AdmissibleTransform::IDENTITY };
        assert_eq!(s.apply_transform(&zero), Err(Error::ZeroU));
    }

    #[test]
    fn anchor_counts() {
        let e = WeierstrassCurve::short(5, 1, 1).unwrap();
        assert_eq!(e.count_points(), 9);
        assert_eq!(e.ap_enumerate(), Ok(-3));
        assert_eq!(ap_legendre_sum(1, 1, 5), Ok(-3));
        assert_eq!(WeierstrassCurve::short(5, 0, 0).unwrap().ap_enumerate(), Err(Error::CurveSingular));
    }

    #[test]
    fn characteristic_three() {
        let c = a3_special(1, 1).unwrap();
        assert_eq!((c.enumerated, c.formula), (-2, -2));
        for a in 1..3 {
            for b in 1..3 {
                assert!(a3_special(a, b).unwrap().holds(), "a={a} b={b}");
            }
        }
    }
}
