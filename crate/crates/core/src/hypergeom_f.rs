//! The normalized finite-field hypergeometric function `ₙ₊₁Fₙ(A; B | x)_p`,
//! evaluated through Gauss sums in the ramified ring.
//!
//! Characters are ω̄-exponents: the index `c` stands for `ω̄^c`, so
//! `χ(−1) = (−1)^c` and `χ(x) = ω(x)^{−c}`.

use alloc::vec::Vec;

use crate::error::{Error, Result};
use crate::hypergeom_g::{check_odd_prime, g_eval, GParams};
use crate::modular::{gcd, hasse_bound, precision_for_bound, Modulus};
use crate::padic::{max_precision, mod_p, teichmuller_pow, PadicNumber};
use crate::pi_ring::{check_short_curve, GaussSums, PiRingElement};
use crate::rational::Rational;

/// Upper characters `A₀…Aₙ` and lower characters `B₁…Bₙ` as ω̄-indices in
/// `[0, p−2]`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CharTuple {
    prime: u64,
    upper: Vec<u64>,
    lower: Vec<u64>,
}

impl CharTuple {
    pub fn new(p: u64, upper: &[i64], lower: &[i64]) -> Result<Self> {
        check_odd_prime(p)?;
        if upper.len() != lower.len() + 1 {
            return Err(Error::ParameterShape);
        }
        let q = p as i64 - 1;
        let canon = |v: &[i64]| v.iter().map(|&j| j.rem_euclid(q) as u64).collect();
        Ok(Self {
            prime: p,
            upper: canon(upper),
            lower: canon(lower),
        })
    }

    pub fn prime(&self) -> u64 {
        self.prime
    }

    pub fn upper(&self) -> &[u64] {
        &self.upper
    }

    pub fn lower(&self) -> &[u64] {
        &self.lower
    }

    /// Order of the character `ω̄^j`.
    pub fn order(&self, j: u64) -> u64 {
        let q = self.prime - 1;
        q / gcd(j % q, q)
    }

    /// The `ₙ₊₁Gₙ₊₁` parameters of the same value at `t⁻¹`: each index `c`
    /// becomes `c/(p−1)`, and a lower `0` is prepended.
    pub fn to_g_params(&self) -> GParams {
        let q = self.prime as i64 - 1;
        let frac = |&c: &u64| Rational::new(c as i64, q);
        let lower = core::iter::once(Rational::ZERO)
            .chain(self.lower.iter().map(frac))
            .collect();
        GParams::new(self.upper.iter().map(frac).collect(), lower).unwrap()
    }
}

/// `ₙ₊₁Fₙ(A; B | x)_p` to `p^N`. Ring arithmetic is exact, so the only
/// digits lost are one per division by a nontrivial Gauss sum.
pub fn f_eval(chars: &CharTuple, x: i64, n: u32) -> Result<PadicNumber> {
    let p = chars.prime;
    let x = mod_p(x, p);
    if x == 0 {
        return Ok(PadicNumber::zero(p));
    }
    let divisions = chars.upper.iter().chain(&chars.lower).filter(|&&c| c != 0).count();
    let nw = (n + divisions as u32).min(max_precision(p));
    let gauss = GaussSums::new(p, nw)?;
    f_eval_with(chars, x as i64, &gauss)
}

/// [`f_eval`] with precomputed Gauss sums.
pub fn f_eval_with(chars: &CharTuple, x: i64, gauss: &GaussSums) -> Result<PadicNumber> {
    let p = chars.prime;
    let nw = gauss.precision();
    let x = mod_p(x, p);
    if x == 0 {
        return Ok(PadicNumber::zero(p));
    }
    let m = Modulus::prime_power(p, nw);
    let q = p as i64 - 1;
    let (upper, lower): (Vec<i64>, Vec<i64>) = (
        chars.upper.iter().map(|&c| c as i64).collect(),
        chars.lower.iter().map(|&c| c as i64).collect(),
    );

    let mut normalizer = PiRingElement::one(p, nw);
    for &a in &upper {
        normalizer = normalizer.mul(&gauss.inverse(a))?;
    }
    for &b in &lower {
        normalizer = normalizer.mul(&gauss.inverse(-b))?;
    }

    let sign_power = upper.len() as i64;
    let mut total = PiRingElement::zero(p, nw);
    for c in 0..q {
        let mut term = gauss.g(-c).clone();
        for &a in &upper {
            term = term.mul(gauss.g(a + c))?;
        }
        for &b in &lower {
            term = term.mul(gauss.g(-(b + c)))?;
        }
        let scalar = m.mul(m.sign(c * sign_power), teichmuller_pow(x, -c, p, nw));
        total = total.add(&term.scale_by(scalar))?;
    }
    let total = total.mul(&normalizer)?.scale_by(m.inv(m.reduce_i64(q)).unwrap());
    total.to_padic()
}

/// Both sides of `F(A; B | t) = G[a; 0, b | t⁻¹]` for `t ≠ 0`.
pub fn lemma_sides(chars: &CharTuple, t: i64, n: u32) -> Result<(PadicNumber, PadicNumber)> {
    let p = chars.prime;
    let t = mod_p(t, p);
    if t == 0 {
        return Err(Error::ZeroArgument);
    }
    let f = f_eval(chars, t as i64, n)?;
    let t_inv = Modulus::new(p).inv(t).unwrap();
    let g = g_eval(&chars.to_g_params(), t_inv as i64, p, n)?.value;
    Ok((f, g))
}

/// Compares the two sides of the lemma to `p^N`.
pub fn lemma_holds(chars: &CharTuple, t: i64, n: u32) -> Result<bool> {
    let (f, g) = lemma_sides(chars, t, n)?;
    let k = (n as i64).min(f.absolute_precision()).min(g.absolute_precision());
    Ok(f.agrees_with(&g, k))
}

/// `(ψ, ψ⁵; ε)` for `ψ = ω^{k(p−1)/12}`; needs `12 | p − 1`.
pub fn lennon_characters(p: u64, k: i64) -> Result<CharTuple> {
    check_odd_prime(p)?;
    if p % 12 != 1 {
        return Err(Error::WrongCongruenceClass { p, modulus: 12 });
    }
    let step = k * ((p as i64 - 1) / 12);
    // ω^e = ω̄^{−e}
    CharTuple::new(p, &[-step, -5 * step], &[0])
}

/// The order-12 characters `ω^{k(p−1)/12}`.
pub const ORDER_12_EXPONENTS: [i64; 4] = [1, 5, 7, 11];

/// Evaluates `ψ³(−a³/27) · ₂F₁(ψ, ψ⁵; ε | (4a³+27b²)/4a³)_p` for curves
/// `y² = x³ + ax + b` over one prime `p ≡ 1 (mod 12)`.
#[derive(Debug, Clone)]
pub struct LennonEvaluator {
    prime: u64,
    gauss: GaussSums,
}

impl LennonEvaluator {
    pub fn new(p: u64, n: u32) -> Result<Self> {
        check_odd_prime(p)?;
        if p % 12 != 1 {
            return Err(Error::WrongCongruenceClass { p, modulus: 12 });
        }
        // ψ and ψ⁵ are nontrivial: two divisions by p.
        let n = n.max(precision_for_bound(p, hasse_bound(p)));
        let gauss = GaussSums::new(p, (n + 2).min(max_precision(p)))?;
        Ok(Self { prime: p, gauss })
    }

    pub fn prime(&self) -> u64 {
        self.prime
    }

    /// The value for `ψ = ω^{k(p−1)/12}`.
    pub fn trace_with(&self, a: i64, b: i64, k: i64) -> Result<i64> {
        let p = self.prime;
        check_short_curve(a, b, p)?;
        let nw = self.gauss.precision();
        let chars = lennon_characters(p, k)?;
        let mp = Modulus::new(p);
        let c = mp.mul(mp.neg(mp.pow(mod_p(a, p), 3)), mp.inv(27 % p).unwrap());
        let step = k * ((p as i64 - 1) / 12);
        let factor = teichmuller_pow(c, 3 * step, p, nw);
        let a3 = mp.mul(4, mp.pow(mod_p(a, p), 3));
        let num = mp.add(a3, mp.mul(27 % p, mp.pow(mod_p(b, p), 2)));
        let x = mp.mul(num, mp.inv(a3).unwrap());
        let f = f_eval_with(&chars, x as i64, &self.gauss)?;
        f.mul(&PadicNumber::from_residue(p, factor, nw))
            .centered_lift(hasse_bound(p))
    }

    /// `ψ = ω^{(p−1)/12}`.
    pub fn trace(&self, a: i64, b: i64) -> Result<i64> {
        self.trace_with(a, b, 1)
    }

    /// The value for each order-12 character.
    pub fn all_characters(&self, a: i64, b: i64) -> Vec<(i64, Result<i64>)> {
        ORDER_12_EXPONENTS
            .into_iter()
            .map(|k| (k, self.trace_with(a, b, k)))
            .collect()
    }
}

/// `a_p = ψ³(−a³/27) · ₂F₁(ψ, ψ⁵; ε | (4a³+27b²)/4a³)_p` with
/// `ψ = ω^{(p−1)/12}`, for `p ≡ 1 (mod 12)`.
pub fn lennon_trace(a: i64, b: i64, p: u64, n: u32) -> Result<i64> {
    LennonEvaluator::new(p, n)?.trace(a, b)
}

/// The same formula for each order-12 character `ω^{k(p−1)/12}`,
/// `k ∈ {1, 5, 7, 11}`.
pub fn lennon_all_characters(a: i64, b: i64, p: u64, n: u32) -> Result<Vec<(i64, Result<i64>)>> {
    let e = LennonEvaluator::new(p, n)?;
    check_short_curve(a, b, p)?;
    Ok(e.all_characters(a, b))
}

/// `₄F₃(χ₅, χ₅², χ₅³, χ₅⁴; ε, ε, ε | 1)_p` with `χ₅ = ω^{(p−1)/5}`.
pub fn f4_modular(p: u64, n: u32) -> Result<PadicNumber> {
    check_odd_prime(p)?;
    if p % 5 != 1 {
        return Err(Error::WrongCongruenceClass { p, modulus: 5 });
    }
    let step = (p as i64 - 1) / 5;
    let upper: Vec<i64> = (1..5).map(|k| -k * step).collect();
    f_eval(&CharTuple::new(p, &upper, &[0, 0, 0])?, 1, n)
}
