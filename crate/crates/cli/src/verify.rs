//! Range checks of the identities, each producing a [`VerificationReport`].
//!
//! Records are produced in a fixed order (primes ascending, then curves or
//! parameters in the order listed or sorted after sampling), so a run is
//! reproducible from its flags and seed.

use std::time::Instant;

use frobenius_core::elliptic::{a3_special, ap_legendre_sum};
use frobenius_core::gamma::{
    identity_arguments, mirrored_product_holds, multiplication_formula_holds, multipliers,
    reflection_holds, shifted_product_holds,
};
use frobenius_core::hypergeom_f::{f4_modular, lemma_sides, lennon_characters};
use frobenius_core::hypergeom_g::{delta_bound, g_eval};
use frobenius_core::modforms::build_f;
use frobenius_core::modular::{hasse_bound, primes_in, Modulus};
use frobenius_core::padic::{teichmuller_pow, PadicNumber};
use frobenius_core::pi_ring::{ap_via_gauss, point_count_via_theta, theta_reconstruct, FpPolynomial};
use frobenius_core::trace::{g4_lift_bound, g4_modular_coefficient};
use frobenius_core::{
    AdmissibleTransform, GParams, GammaTable, GaussSums, LennonEvaluator, PiRingElement, Rational,
    TraceEvaluator, WeierstrassCurve,
};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::report::{Side, VerificationReport};

/// Settings shared by every task.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct RunOptions {
    /// Target p-adic precision `N`.
    pub precision: u32,
    /// Record per-item wall time (makes output nondeterministic).
    pub timing: bool,
}

impl Default for RunOptions {
    fn default() -> Self {
        Self {
            precision: 2,
            timing: false,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Selection {
    Exhaustive,
    Sample { count: usize, seed: u64 },
}

impl Selection {
    pub fn seed(&self) -> Option<u64> {
        match *self {
            Selection::Exhaustive => None,
            Selection::Sample { seed, .. } => Some(seed),
        }
    }
}

/// Independent stream per prime, so adding a prime to the range does not
/// change the curves drawn for the others.
pub fn rng_for(seed: u64, p: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed ^ p.wrapping_mul(0x9e37_79b9_7f4a_7c15))
}

/// Picks `count` items (all if fewer) and keeps them in their original order.
pub fn sample_sorted<T: Clone>(items: &[T], count: usize, rng: &mut impl Rng) -> Vec<T> {
    let k = count.min(items.len());
    let mut idx = rand::seq::index::sample(rng, items.len(), k).into_vec();
    idx.sort_unstable();
    idx.into_iter().map(|i| items[i].clone()).collect()
}

/// `(a, b)` with `a, b ≠ 0` and `4a³ + 27b² ≠ 0`: exactly the short curves
/// over `F_p` with `j ∉ {0, 1728}`.
pub fn admissible_curves(p: u64) -> Vec<(i64, i64)> {
    (1..p as i64)
        .flat_map(|a| (1..p as i64).map(move |b| (a, b)))
        .filter(|&(a, b)| !WeierstrassCurve::short(p, a, b).unwrap().is_singular())
        .collect()
}

fn select(curves: Vec<(i64, i64)>, sel: Selection, p: u64) -> Vec<(i64, i64)> {
    match sel {
        Selection::Exhaustive => curves,
        Selection::Sample { count, seed } => sample_sorted(&curves, count, &mut rng_for(seed, p)),
    }
}

fn timed<T>(timing: bool, f: impl FnOnce() -> T) -> (T, Option<f64>) {
    let start = Instant::now();
    let out = f();
    (out, timing.then(|| start.elapsed().as_secs_f64() * 1e3))
}

fn curve_label(a: i64, b: i64) -> String {
    format!("y^2 = x^3 + {a}x + {b}")
}

/// Main theorem over a prime range: the `₂G₂` trace against the Legendre
/// sum, and against enumeration for `p ≤ 31`.
pub fn verify_trace(p_min: u64, p_max: u64, sel: Selection, opts: RunOptions) -> VerificationReport {
    let mut report = VerificationReport::new("trace", opts.precision, sel.seed());
    for p in primes_in(p_min.max(5), p_max) {
        let ev = match TraceEvaluator::new(p, opts.precision) {
            Ok(ev) => ev,
            Err(e) => {
                report.push(p, "evaluator", Side::error(e), Side::text("-"), false);
                continue;
            }
        };
        let bound = hasse_bound(p) as i64;
        for (a, b) in select(admissible_curves(p), sel, p) {
            let (lhs, elapsed) = timed(opts.timing, || ev.trace_short(a, b));
            let rhs = ap_legendre_sum(a, b, p);
            let enumerated = (p <= 31).then(|| WeierstrassCurve::short(p, a, b).unwrap().ap_enumerate());
            let matched = lhs.is_ok()
                && lhs == rhs
                && enumerated.as_ref().is_none_or(|e| *e == lhs)
                && lhs.as_ref().is_ok_and(|x| x.abs() <= bound);
            let rec = report.push(p, curve_label(a, b), Side::result(&lhs, p), Side::result(&rhs, p), matched);
            rec.note = enumerated.map(|e| match e {
                Ok(x) => format!("enumerate={x}"),
                Err(err) => format!("enumerate: {err}"),
            });
            rec.elapsed_ms = elapsed;
        }
    }
    report
}

/// Corollary: the `c₆`/`j` route on randomly transformed models equals
/// enumeration on the original curve.
pub fn verify_corollary(
    primes: &[u64],
    curves: usize,
    transforms: usize,
    seed: u64,
    opts: RunOptions,
) -> VerificationReport {
    let mut report = VerificationReport::new("corollary", opts.precision, Some(seed));
    for &p in primes {
        let ev = match TraceEvaluator::new(p, opts.precision) {
            Ok(ev) => ev,
            Err(e) => {
                report.push(p, "evaluator", Side::error(e), Side::text("-"), false);
                continue;
            }
        };
        let mut rng = rng_for(seed, p);
        for (a, b) in sample_sorted(&admissible_curves(p), curves, &mut rng) {
            let e = WeierstrassCurve::short(p, a, b).unwrap();
            let expected = e.ap_enumerate();
            for _ in 0..transforms {
                let tr = AdmissibleTransform {
                    u: rng.gen_range(1..p),
                    r: rng.gen_range(0..p),
                    s: rng.gen_range(0..p),
                    t: rng.gen_range(0..p),
                };
                let model = e.apply_transform(&tr).unwrap();
                let (lhs, elapsed) = timed(opts.timing, || ev.trace_curve(&model));
                let matched = lhs.is_ok() && lhs == expected && model.ap_enumerate() == expected;
                let [a1, a2, a3, a4, a6] = model.coeffs();
                let rec = report.push(
                    p,
                    format!("[{a1},{a2},{a3},{a4},{a6}] from {}", curve_label(a, b)),
                    Side::result(&lhs, p),
                    Side::result(&expected, p),
                    matched,
                );
                rec.note = Some(format!("u={} r={} s={} t={}", tr.u, tr.r, tr.s, tr.t));
                rec.elapsed_ms = elapsed;
            }
        }
    }
    report
}

fn tally(report: &mut VerificationReport, p: u64, name: &str, checks: impl IntoIterator<Item = bool>) {
    let (mut held, mut total) = (0i64, 0i64);
    for ok in checks {
        total += 1;
        held += ok as i64;
    }
    report.push(p, name, Side::integer(held, p), Side::integer(total, p), held == total && total > 0);
}

/// Γ_p reflection and multiplication up to `gamma_p_max`; the two product
/// identities up to `lemma_p_max`; character orthogonality, Gauss sums,
/// Hasse–Davenport and θ up to `ring_p_max`; θ point counts for the anchor
/// curve at `p ∈ {5, 7, 11, 13}` within range.
pub fn verify_identities(gamma_p_max: u64, lemma_p_max: u64, ring_p_max: u64, opts: RunOptions) -> VerificationReport {
    let mut report = VerificationReport::new("identities", opts.precision, None);
    let n = opts.precision.max(2);
    let top = gamma_p_max.max(lemma_p_max).max(ring_p_max);
    for p in primes_in(3, top) {
        let q = p as i64 - 1;
        let table = GammaTable::for_rationals(p, n, identity_arguments(p)).unwrap();
        if p <= gamma_p_max {
            tally(
                &mut report,
                p,
                "gamma reflection",
                (0..=q).map(|r| reflection_holds(Rational::new(r, q), &table).unwrap()),
            );
            for m in multipliers(p) {
                tally(
                    &mut report,
                    p,
                    &format!("gamma multiplication m={m}"),
                    (0..=q).map(|r| multiplication_formula_holds(m, r, &table).unwrap()),
                );
            }
        }
        if p <= lemma_p_max {
            for t in multipliers(p) {
                tally(
                    &mut report,
                    p,
                    &format!("gamma shifted product t={t}"),
                    (0..q).map(|j| shifted_product_holds(t, j, &table).unwrap()),
                );
                tally(
                    &mut report,
                    p,
                    &format!("gamma mirrored product t={t}"),
                    (0..q).map(|j| mirrored_product_holds(t, j, &table).unwrap()),
                );
            }
        }
        if p <= ring_p_max {
            ring_identities(&mut report, p, n);
        }
    }
    report
}

fn ring_identities(report: &mut VerificationReport, p: u64, n: u32) {
    let q = p as i64 - 1;
    let m = Modulus::prime_power(p, n);
    // Σ_x ω^j(x) = (p−1)[j ≡ 0] and Σ_j ω^j(x) = (p−1)[x ≡ 1]
    tally(
        report,
        p,
        "character orthogonality",
        (0..q).map(|j| {
            let s = (0..p).fold(0, |acc, x| m.add(acc, teichmuller_pow(x, j, p, n)));
            s == if j == 0 { q as u64 } else { 0 }
        })
        .chain((1..p).map(|x| {
            let s = (0..q).fold(0, |acc, j| m.add(acc, teichmuller_pow(x, j, p, n)));
            s == if x == 1 { q as u64 } else { 0 }
        })),
    );
    let gauss = GaussSums::new(p, n).unwrap();
    tally(report, p, "gauss product rule", (0..q).map(|j| gauss.product_rule_holds(j)));
    for mm in [2i64, 3, 4, 6].into_iter().filter(|mm| q % mm == 0) {
        tally(
            report,
            p,
            &format!("hasse-davenport m={mm}"),
            (0..q).map(|s| gauss.hasse_davenport_holds(mm, s)),
        );
    }
    let theta: Vec<PiRingElement> = (0..p as i64).map(|x| theta_reconstruct(x, &gauss)).collect();
    let total = theta.iter().fold(PiRingElement::zero(p, n), |acc, t| acc.add(t).unwrap());
    tally(report, p, "theta sums to zero", [total.is_zero()]);
    tally(
        report,
        p,
        "theta additive",
        (1..p).flat_map(|a| (1..p).map(move |b| (a, b))).filter(|(a, b)| (a + b) % p != 0).map(|(a, b)| {
            let prod = theta[a as usize].mul(&theta[b as usize]).unwrap();
            prod.same_value(&theta[((a + b) % p) as usize]).unwrap()
        }),
    );
    if [5, 7, 11, 13].contains(&p) {
        let curve = FpPolynomial::new(2, vec![(1, 3, 0), (1, 1, 0), (1, 0, 0), (-1, 0, 2)]);
        let lhs = point_count_via_theta(&curve, p, n);
        let rhs = curve.count_zeros(p);
        report.push(
            p,
            "theta point count x^3 + x + 1 - y^2",
            Side::result(&lhs.clone().map(|x| x as i64), p),
            Side::integer(rhs as i64, p),
            lhs == Ok(rhs),
        );
    }
}

/// The Gauss-sum expression for `a_p` against enumeration, every admissible
/// curve.
pub fn verify_gauss_route(p_min: u64, p_max: u64, opts: RunOptions) -> VerificationReport {
    let mut report = VerificationReport::new("gauss-ap", opts.precision, None);
    for p in primes_in(p_min.max(5), p_max) {
        for (a, b) in admissible_curves(p) {
            let (lhs, elapsed) = timed(opts.timing, || ap_via_gauss(a, b, p, opts.precision));
            let rhs = WeierstrassCurve::short(p, a, b).unwrap().ap_enumerate();
            let matched = lhs.is_ok() && lhs == rhs;
            report
                .push(p, curve_label(a, b), Side::result(&lhs, p), Side::result(&rhs, p), matched)
                .elapsed_ms = elapsed;
        }
    }
    report
}

/// `₄G₄[…|1] − (5/p)p = c(p)` for odd `p ≠ 5`, and `₄F₃(…|1) − p = c(p)`
/// for `p ≡ 1 (mod 5)`.
pub fn verify_modform(p_max: u64, truncation: usize, opts: RunOptions) -> VerificationReport {
    let mut report = VerificationReport::new("modform", opts.precision, None);
    let f = build_f(truncation);
    for p in primes_in(3, p_max).filter(|&p| p != 5) {
        let c = f
            .coefficient(p as usize)
            .map(|c| i64::try_from(c).expect("c(p) fits in i64"));
        let (lhs, elapsed) = timed(opts.timing, || g4_modular_coefficient(p, opts.precision));
        let matched = lhs.is_ok() && lhs == c;
        report
            .push(p, "4G4[1/5,2/5,3/5,4/5; 0,0,0,0 | 1] - (5/p)p", Side::result(&lhs, p), Side::result(&c, p), matched)
            .elapsed_ms = elapsed;
        if p % 5 == 1 {
            let bound = g4_lift_bound(p);
            let n = opts.precision.max(frobenius_core::modular::precision_for_bound(p, bound));
            let f4 = f4_modular(p, n).and_then(|v| {
                let prec = v.absolute_precision() as u32;
                v.sub(&PadicNumber::from_integer(p, p as i64, prec)).centered_lift(bound)
            });
            let matched = f4.is_ok() && f4 == c && f4 == lhs;
            report.push(p, "4F3(chi5..chi5^4; eps,eps,eps | 1) - p", Side::result(&f4, p), Side::result(&c, p), matched);
        }
    }
    report
}

/// `F(ψ, ψ⁵; ε | t) = G[…; 0, 0 | t⁻¹]` for `samples` random `t ∈ F_p*`.
pub fn verify_lemma_gf(primes: &[u64], samples: usize, seed: u64, opts: RunOptions) -> VerificationReport {
    let mut report = VerificationReport::new("lemma-gf", opts.precision, Some(seed));
    let n = opts.precision;
    for &p in primes {
        let chars = match lennon_characters(p, 1) {
            Ok(c) => c,
            Err(e) => {
                report.push(p, "characters", Side::error(e), Side::text("-"), false);
                continue;
            }
        };
        let ts: Vec<i64> = (1..p as i64).collect();
        for t in sample_sorted(&ts, samples, &mut rng_for(seed, p)) {
            let subject = format!("upper={:?} lower={:?} t={t}", chars.upper(), chars.lower());
            let (sides, elapsed) = timed(opts.timing, || lemma_sides(&chars, t, n));
            let rec = match sides {
                Ok((f, g)) => {
                    let k = (n as i64).min(f.absolute_precision()).min(g.absolute_precision());
                    let matched = f.agrees_with(&g, k);
                    report.push(p, subject, Side::padic(&f), Side::padic(&g), matched)
                }
                Err(e) => report.push(p, subject, Side::error(e), Side::text("-"), false),
            };
            rec.elapsed_ms = elapsed;
        }
    }
    report
}

/// Lennon's formula with `ψ = ω^{(p−1)/12}` against enumeration; the note
/// lists the value for every order-12 character.
pub fn verify_lennon(
    primes: &[u64],
    exhaustive_max: u64,
    samples: usize,
    seed: u64,
    opts: RunOptions,
) -> VerificationReport {
    let mut report = VerificationReport::new("lennon", opts.precision, Some(seed));
    for &p in primes {
        let ev = match LennonEvaluator::new(p, opts.precision) {
            Ok(ev) => ev,
            Err(e) => {
                report.push(p, "evaluator", Side::error(e), Side::text("-"), false);
                continue;
            }
        };
        let sel = if p <= exhaustive_max {
            Selection::Exhaustive
        } else {
            Selection::Sample { count: samples, seed }
        };
        for (a, b) in select(admissible_curves(p), sel, p) {
            let (all, elapsed) = timed(opts.timing, || ev.all_characters(a, b));
            let lhs = all[0].1.clone();
            let rhs = WeierstrassCurve::short(p, a, b).unwrap().ap_enumerate();
            let note = all
                .iter()
                .map(|(k, v)| match v {
                    Ok(x) => format!("psi^{k}={x}"),
                    Err(e) => format!("psi^{k}: {e}"),
                })
                .collect::<Vec<_>>()
                .join(" ");
            let matched = lhs.is_ok() && lhs == rhs;
            let rec = report.push(p, curve_label(a, b), Side::result(&lhs, p), Side::result(&rhs, p), matched);
            rec.note = Some(note);
            rec.elapsed_ms = elapsed;
        }
    }
    report
}

/// The four curves `y² = x³ + ax² + b` over `F_3`.
pub fn verify_p3(opts: RunOptions) -> VerificationReport {
    let mut report = VerificationReport::new("p3", opts.precision, None);
    for a in 1..3 {
        for b in 1..3 {
            let subject = format!("y^2 = x^3 + {a}x^2 + {b}");
            match a3_special(a, b) {
                Ok(c) => {
                    report.push(3, subject, Side::integer(c.formula, 3), Side::integer(c.enumerated, 3), c.holds());
                }
                Err(e) => {
                    report.push(3, subject, Side::error(e), Side::text("-"), false);
                }
            }
        }
    }
    report
}

const DELTA_PRIMES: [u64; 15] = [3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41, 43, 47, 53];

/// `valuation(ₙGₙ) ≥ δ` for random parameter sets with `n ≤ 4` and
/// denominators up to 6.
pub fn verify_delta(cases: usize, seed: u64, opts: RunOptions) -> VerificationReport {
    let mut report = VerificationReport::new("delta", opts.precision, Some(seed));
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let random_param = |rng: &mut ChaCha8Rng| Rational::new(rng.gen_range(-6..=6), rng.gen_range(1..=6));
    let mut done = 0;
    while done < cases {
        let n = rng.gen_range(1..=4);
        let upper: Vec<Rational> = (0..n).map(|_| random_param(&mut rng)).collect();
        let lower: Vec<Rational> = (0..n).map(|_| random_param(&mut rng)).collect();
        let p = DELTA_PRIMES[rng.gen_range(0..DELTA_PRIMES.len())];
        let t = rng.gen_range(1..p as i64);
        if !upper.iter().chain(&lower).all(|r| r.is_p_integral(p)) {
            continue;
        }
        done += 1;
        let params = GParams::new(upper, lower).unwrap();
        let subject = format!(
            "upper={} lower={} t={t}",
            join(params.upper()),
            join(params.lower())
        );
        let delta = delta_bound(&params, p).unwrap();
        let (g, elapsed) = timed(opts.timing, || g_eval(&params, t, p, opts.precision));
        let rec = match g {
            Ok(g) => {
                let matched = g.value.valuation_lower_bound() >= delta;
                let lhs = Side::text(
                    g.value
                        .valuation()
                        .map_or_else(|| format!("zero to {}", g.value.absolute_precision()), |v| v.to_string()),
                );
                report.push(p, subject, lhs, Side::text(delta.to_string()), matched)
            }
            Err(e) => report.push(p, subject, Side::error(e), Side::text(delta.to_string()), false),
        };
        rec.elapsed_ms = elapsed;
    }
    report
}

fn join(v: &[Rational]) -> String {
    v.iter().map(|r| r.to_string()).collect::<Vec<_>>().join(",")
}
