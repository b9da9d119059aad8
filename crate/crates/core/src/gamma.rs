//! Morita's p-adic gamma function.
//!
//! `Γ_p(n) = (−1)^n ∏_{0<j<n, p∤j} j` for positive integers, `Γ_p(0) = 1`,
//! extended to `Z_p` by continuity. Since `Γ_p(x) ≡ Γ_p(y) mod p^k` whenever
//! `x ≡ y mod p^k`, the value mod `p^N` at any `x ∈ Z_p` is the defining
//! product at the least nonnegative residue of `x` mod `p^N`.
//!
//! Values are produced in batch by [`gamma_sweep`]: a single pass over
//! `0..=max(targets)` carrying the running product, capturing the requested
//! residues on the way.

use alloc::vec::Vec;

use crate::error::{Error, Result};
use crate::modular::{Modulus, Montgomery};
use crate::padic::{mod_p, teichmuller_pow};
use crate::rational::{reduce_rational, Rational};

/// Independent running products carried side by side through the sweep.
const LANES: usize = 4;

/// Γ_p values at a set of residues mod `p^precision`, for one prime.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GammaTable {
    prime: u64,
    precision: u32,
    /// Sorted by residue.
    entries: Vec<(u64, u64)>,
}

impl GammaTable {
    pub fn prime(&self) -> u64 {
        self.prime
    }

    pub fn precision(&self) -> u32 {
        self.precision
    }

    pub fn modulus(&self) -> Modulus {
        Modulus::prime_power(self.prime, self.precision)
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn entries(&self) -> &[(u64, u64)] {
        &self.entries
    }

    /// `Γ_p` at a residue mod `p^precision`, to full table precision.
    pub fn get(&self, residue: u64) -> Result<u64> {
        let residue = self.modulus().reduce(residue);
        self.entries
            .binary_search_by_key(&residue, |&(r, _)| r)
            .map(|i| self.entries[i].1)
            .map_err(|_| Error::MissingGammaTarget(residue))
    }

    /// `Γ_p(r)` for `r ∈ Q ∩ Z_p` (the argument itself, not its fractional
    /// part).
    pub fn at_rational(&self, r: Rational) -> Result<u64> {
        self.get(reduce_rational(r, self.modulus(), self.prime)?)
    }

    /// `Γ_p(⟨r⟩)`.
    pub fn at_fract(&self, r: Rational) -> Result<u64> {
        self.at_rational(r.fract())
    }

    /// Builds a table holding `Γ_p(r)` for each rational `r`.
    pub fn for_rationals<I>(p: u64, n: u32, args: I) -> Result<Self>
    where
        I: IntoIterator<Item = Rational>,
    {
        let m = Modulus::prime_power(p, n);
        let targets = args
            .into_iter()
            .map(|r| reduce_rational(r, m, p))
            .collect::<Result<Vec<_>>>()?;
        Ok(gamma_sweep(p, n, &targets))
    }
}

/// `Γ_p(m) mod p^n`, where `m` is a residue mod `p^n` captured by `table`.
pub fn gamma_at(m: u64, n: u32, table: &GammaTable) -> Result<u64> {
    if n > table.precision {
        return Err(Error::PrecisionExceedsTable {
            requested: n,
            available: table.precision,
        });
    }
    let v = table.get(m)?;
    Ok(Modulus::prime_power(table.prime, n).reduce(v))
}

/// `Γ_p(⟨r⟩) mod p^n`.
pub fn gamma_frac(r: Rational, n: u32, table: &GammaTable) -> Result<u64> {
    if n > table.precision {
        return Err(Error::PrecisionExceedsTable {
            requested: n,
            available: table.precision,
        });
    }
    let v = table.at_fract(r)?;
    Ok(Modulus::prime_power(table.prime, n).reduce(v))
}

struct Lane<'a> {
    j: u64,
    end: u64,
    acc: u64,
    /// Montgomery form of `−j`.
    neg_j: u64,
    targets: &'a [u64],
    captured: Vec<u64>,
}

impl Lane<'_> {
    fn active(&self) -> bool {
        self.j < self.end
    }
}

/// Γ_p mod `p^n` at every residue in `targets`, in one forward sweep.
///
/// Cost is one modular multiplication per integer up to the largest target,
/// independent of how many targets are requested; only the targets are
/// stored.
pub fn gamma_sweep(p: u64, n: u32, targets: &[u64]) -> GammaTable {
    assert!(p % 2 == 1, "gamma_sweep needs an odd prime");
    let modulus = Modulus::prime_power(p, n);
    let mut sorted: Vec<u64> = targets.iter().map(|&t| modulus.reduce(t)).collect();
    sorted.sort_unstable();
    sorted.dedup();
    let Some(&last) = sorted.last() else {
        return GammaTable {
            prime: p,
            precision: n,
            entries: Vec::new(),
        };
    };

    let mont = Montgomery::new(modulus.value());
    let one = mont.to_mont(1);
    let end = last + 1;
    let lane_len = end.div_ceil(LANES as u64);

    // Γ(m) = ∏_{0≤j<m} s(j), with s(j) = −j for p ∤ j and s(j) = −1 otherwise.
    // Each lane carries the partial product over its own slice of j.
    let mut lanes: Vec<Lane<'_>> = (0..LANES as u64)
        .map(|k| {
            let start = (k * lane_len).min(end);
            let stop = ((k + 1) * lane_len).min(end);
            let lo = sorted.partition_point(|&t| t < start);
            let hi = sorted.partition_point(|&t| t < stop);
            Lane {
                j: start,
                end: stop,
                acc: one,
                neg_j: mont.to_mont(modulus.neg(start)),
                targets: &sorted[lo..hi],
                captured: Vec::with_capacity(hi - lo),
            }
        })
        .collect();

    loop {
        // Settle every lane at its current position: capture targets and
        // step over multiples of p, until the next plain multiplication.
        for lane in lanes.iter_mut() {
            while lane.active() {
                if lane.targets.get(lane.captured.len()) == Some(&lane.j) {
                    lane.captured.push(lane.acc);
                    continue;
                }
                if lane.j % p == 0 {
                    lane.acc = mont.neg(lane.acc);
                    lane.j += 1;
                    lane.neg_j = mont.add(lane.neg_j, mont.neg(one));
                    continue;
                }
                break;
            }
        }

        let mut step = u64::MAX;
        for lane in lanes.iter().filter(|l| l.active()) {
            let next_target = lane
                .targets
                .get(lane.captured.len())
                .copied()
                .unwrap_or(lane.end);
            let next_multiple = (lane.j / p + 1) * p;
            step = step.min(next_target.min(next_multiple).min(lane.end) - lane.j);
        }
        if step == u64::MAX {
            break;
        }

        let mut state: [(u64, u64, bool); LANES] = [(0, 0, false); LANES];
        for (s, lane) in state.iter_mut().zip(lanes.iter()) {
            *s = (lane.acc, lane.neg_j, lane.active());
        }
        let minus_one = mont.neg(one);
        if state.iter().all(|s| s.2) {
            for _ in 0..step {
                for s in state.iter_mut() {
                    s.0 = mont.mul(s.0, s.1);
                    s.1 = mont.add(s.1, minus_one);
                }
            }
        } else {
            for _ in 0..step {
                for s in state.iter_mut().filter(|s| s.2) {
                    s.0 = mont.mul(s.0, s.1);
                    s.1 = mont.add(s.1, minus_one);
                }
            }
        }
        for (s, lane) in state.iter().zip(lanes.iter_mut()) {
            if s.2 {
                lane.acc = s.0;
                lane.neg_j = s.1;
                lane.j += step;
            }
        }
    }

    let mut entries = Vec::with_capacity(sorted.len());
    let mut prefix = one;
    for lane in &lanes {
        debug_assert_eq!(lane.captured.len(), lane.targets.len());
        for (&t, &partial) in lane.targets.iter().zip(&lane.captured) {
            entries.push((t, mont.from_mont(mont.mul(prefix, partial))));
        }
        prefix = mont.mul(prefix, lane.acc);
    }
    GammaTable {
        prime: p,
        precision: n,
        entries,
    }
}

/// Every argument used by the identity checks below at prime `p`.
pub fn identity_arguments(p: u64) -> Vec<Rational> {
    let q = p as i64 - 1;
    let mut args = Vec::new();
    for r in 0..=q {
        let x = Rational::new(r, q);
        args.push(x);
        args.push(Rational::ONE - x);
        for m in multipliers(p) {
            for h in 0..m {
                args.push((x + Rational::integer(h)) * Rational::new(1, m));
                args.push(Rational::new(h, m));
            }
        }
    }
    for j in 0..q {
        for t in multipliers(p) {
            args.push(Rational::new(t * j, q).fract());
            args.push(Rational::new(-t * j, q).fract());
            for h in 0..t {
                args.push((Rational::new(h, t) + Rational::new(j, q)).fract());
                args.push((Rational::new(1 + h, t) - Rational::new(j, q)).fract());
            }
        }
    }
    args
}

/// The multipliers `m ∈ {2, 3, 4, 6}` prime to `p`.
pub fn multipliers(p: u64) -> impl Iterator<Item = i64> {
    [2i64, 3, 4, 6].into_iter().filter(move |m| *m as u64 % p != 0)
}

/// `Γ_p(x)·Γ_p(1−x) = (−1)^{x₀}` with `x₀ ∈ {1, …, p}`, `x₀ ≡ x mod p`.
pub fn reflection_holds(x: Rational, table: &GammaTable) -> Result<bool> {
    let p = table.prime;
    let m = table.modulus();
    let lhs = m.mul(table.at_rational(x)?, table.at_rational(Rational::ONE - x)?);
    let x_mod_p = reduce_rational(x, Modulus::new(p), p)?;
    let x0 = if x_mod_p == 0 { p } else { x_mod_p };
    Ok(lhs == m.sign(x0 as i64))
}

/// The multiplication formula at `x = r/(p−1)`:
/// `∏_{h<m} Γ_p((x+h)/m) = ω(m^{(1−x)(1−p)}) Γ_p(x) ∏_{0<h<m} Γ_p(h/m)`.
pub fn multiplication_formula_holds(m: i64, r: i64, table: &GammaTable) -> Result<bool> {
    let p = table.prime;
    let md = table.modulus();
    let q = p as i64 - 1;
    let x = Rational::new(r, q);
    let mut lhs = 1 % md.value();
    for h in 0..m {
        lhs = md.mul(lhs, table.at_rational((x + Rational::integer(h)) * Rational::new(1, m))?);
    }
    let e = (Rational::ONE - x) * Rational::integer(1 - p as i64);
    debug_assert!(e.is_integer());
    let mut rhs = md.mul(teichmuller_pow(mod_p(m, p), e.numer(), p, table.precision), table.at_rational(x)?);
    for h in 1..m {
        rhs = md.mul(rhs, table.at_rational(Rational::new(h, m))?);
    }
    Ok(lhs == rhs)
}

/// `Γ_p(⟨tj/(p−1)⟩) ω(t^{tj}) ∏_{0<h<t} Γ_p(h/t) = ∏_{h<t} Γ_p(⟨h/t + j/(p−1)⟩)`.
pub fn shifted_product_holds(t: i64, j: i64, table: &GammaTable) -> Result<bool> {
    let p = table.prime;
    let md = table.modulus();
    let q = p as i64 - 1;
    let mut lhs = md.mul(
        table.at_fract(Rational::new(t * j, q))?,
        teichmuller_pow(mod_p(t, p), t * j, p, table.precision),
    );
    for h in 1..t {
        lhs = md.mul(lhs, table.at_rational(Rational::new(h, t))?);
    }
    let mut rhs = 1 % md.value();
    for h in 0..t {
        rhs = md.mul(rhs, table.at_fract(Rational::new(h, t) + Rational::new(j, q))?);
    }
    Ok(lhs == rhs)
}

/// `Γ_p(⟨−tj/(p−1)⟩) ω(t^{−tj}) ∏_{0<h<t} Γ_p(h/t) = ∏_{h<t} Γ_p(⟨(1+h)/t − j/(p−1)⟩)`.
pub fn mirrored_product_holds(t: i64, j: i64, table: &GammaTable) -> Result<bool> {
    let p = table.prime;
    let md = table.modulus();
    let q = p as i64 - 1;
    let mut lhs = md.mul(
        table.at_fract(Rational::new(-t * j, q))?,
        teichmuller_pow(mod_p(t, p), -t * j, p, table.precision),
    );
    for h in 1..t {
        lhs = md.mul(lhs, table.at_rational(Rational::new(h, t))?);
    }
    let mut rhs = 1 % md.value();
    for h in 0..t {
        rhs = md.mul(rhs, table.at_fract(Rational::new(1 + h, t) - Rational::new(j, q))?);
    }
    Ok(lhs == rhs)
}
