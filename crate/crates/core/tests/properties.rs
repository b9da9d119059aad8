use frobenius_core::elliptic::{ap_legendre_sum, quadratic_twist};
use frobenius_core::hypergeom_g::{delta_bound, g_eval};
use frobenius_core::modforms::{euler_product, QSeries};
use frobenius_core::modular::{hasse_bound, primes_in, Modulus};
use frobenius_core::padic::legendre;
use frobenius_core::pi_ring::{point_count_via_theta, FpPolynomial};
use frobenius_core::{AdmissibleTransform, GEvaluator, GParams, PiRingElement, Rational, WeierstrassCurve};
use num_bigint::BigInt;
use proptest::prelude::*;

const SMALL_PRIMES: [u64; 15] = [3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41, 43, 47, 53];

fn rational_param() -> impl Strategy<Value = Rational> {
    (-6i64..=6, 1i64..=6).prop_map(|(n, d)| Rational::new(n, d))
}

fn params_and_prime() -> impl Strategy<Value = (Vec<Rational>, Vec<Rational>, u64)> {
    params_with_primes(&SMALL_PRIMES)
}

fn params_with_primes(primes: &[u64]) -> impl Strategy<Value = (Vec<Rational>, Vec<Rational>, u64)> {
    let primes = primes.to_vec();
    (1usize..=4)
        .prop_flat_map(move |n| {
            (
                prop::collection::vec(rational_param(), n),
                prop::collection::vec(rational_param(), n),
                prop::sample::select(primes.clone()),
            )
        })
        .prop_filter("denominators coprime to p", |(a, b, p)| {
            a.iter().chain(b).all(|r| r.is_p_integral(*p))
        })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(150))]

    #[test]
    fn valuation_respects_delta((upper, lower, p) in params_and_prime(), t in 1i64..1000) {
        let params = GParams::new(upper, lower).unwrap();
        let g = g_eval(&params, t, p, 2).unwrap();
        let delta = delta_bound(&params, p).unwrap();
        prop_assert_eq!(g.delta, delta);
        prop_assert!(g.value.valuation_lower_bound() >= delta);
    }

    #[test]
    fn integer_shifts_do_not_matter(
        (upper, lower, p) in params_and_prime(),
        shifts in prop::collection::vec(-3i64..=3, 8),
        t in 1i64..1000,
    ) {
        let shift = |v: &[Rational], off: usize| -> Vec<Rational> {
            v.iter().enumerate().map(|(i, &r)| r + Rational::integer(shifts[off + i])).collect()
        };
        let a = GParams::new(upper.clone(), lower.clone()).unwrap();
        let b = GParams::new(shift(&upper, 0), shift(&lower, 4)).unwrap();
        prop_assert_eq!(g_eval(&a, t, p, 2).unwrap().value, g_eval(&b, t, p, 2).unwrap().value);
    }

    #[test]
    fn extra_guard_digit_is_stable((upper, lower, p) in params_with_primes(&SMALL_PRIMES[..9]), t in 1i64..1000) {
        let params = GParams::new(upper, lower).unwrap();
        let base = GEvaluator::new(&params, p, 2).unwrap().eval(t).value;
        let more = GEvaluator::with_guard(&params, p, 2, 3).unwrap().eval(t).value;
        let k = base.absolute_precision().min(more.absolute_precision());
        prop_assert!(base.agrees_with(&more, k));
    }

    #[test]
    fn trace_parameters_are_p_integral(p in prop::sample::select(vec![5u64, 7, 11, 13, 17, 19, 23, 29, 31, 37]), t in 1i64..1000) {
        let g = g_eval(&GParams::trace(), t, p, 2).unwrap();
        prop_assert!(g.value.shift(1).valuation_lower_bound() >= 0);
    }

    #[test]
    fn transforms_preserve_invariants(
        p in prop::sample::select(vec![5u64, 7, 11, 13, 17, 19, 23, 29, 31]),
        coeffs in prop::array::uniform5(-50i64..50),
        (u, r, s, t) in (1u64..1000, 0u64..1000, 0u64..1000, 0u64..1000),
    ) {
        let e = WeierstrassCurve::new(p, coeffs).unwrap();
        prop_assume!(!e.is_singular() && u % p != 0);
        let e2 = e.apply_transform(&AdmissibleTransform { u, r, s, t }).unwrap();
        let (i1, i2) = (e.invariants(), e2.invariants());
        let m = Modulus::new(p);
        let ui = m.inv(u % p).unwrap();
        prop_assert_eq!(i2.j, i1.j);
        prop_assert_eq!(i2.discriminant, m.mul(i1.discriminant, m.pow(ui, 12)));
        prop_assert_eq!(i2.c4, m.mul(i1.c4, m.pow(ui, 4)));
        prop_assert_eq!(i2.c6, m.mul(i1.c6, m.pow(ui, 6)));
        prop_assert_eq!(e2.ap_enumerate(), e.ap_enumerate());
        let (a, b, tr) = e.to_short_form().unwrap();
        let short = e.apply_transform(&tr).unwrap();
        prop_assert!(short.is_short());
        prop_assert_eq!((short.a4, short.a6), (a, b));
        prop_assert_eq!(short.count_points(), e.count_points());
    }

    #[test]
    fn invariant_relations(p in prop::sample::select(vec![5u64, 7, 101, 1009]), coeffs in prop::array::uniform5(-500i64..500)) {
        let inv = WeierstrassCurve::new(p, coeffs).unwrap().invariants();
        let m = Modulus::new(p);
        prop_assert_eq!(m.mul(1728 % p, inv.discriminant), m.sub(m.pow(inv.c4, 3), m.pow(inv.c6, 2)));
        prop_assert_eq!(m.mul(4, inv.b8), m.sub(m.mul(inv.b2, inv.b6), m.mul(inv.b4, inv.b4)));
        if let Some(j) = inv.j {
            prop_assert_eq!(m.mul(j, inv.discriminant), m.pow(inv.c4, 3));
        }
    }

    #[test]
    fn series_product_laws(
        a in prop::collection::vec(-20i64..20, 16),
        b in prop::collection::vec(-20i64..20, 16),
        c in prop::collection::vec(-20i64..20, 16),
    ) {
        let s = |v: &[i64]| QSeries::from_coeffs(v.iter().map(|&x| BigInt::from(x)).collect());
        let (a, b, c) = (s(&a), s(&b), s(&c));
        prop_assert_eq!(a.mul(&b), b.mul(&a));
        prop_assert_eq!(a.mul(&b).mul(&c), a.mul(&b.mul(&c)));
    }

    #[test]
    fn ring_laws(
        p in prop::sample::select(vec![3u64, 5, 7, 11]),
        xs in prop::collection::vec(0u64..1_000_000, 30),
        scales in prop::array::uniform3(-2i64..=2),
    ) {
        let n = 3;
        let elt = |k: usize| {
            (0..p - 1).fold(PiRingElement::zero(p, n), |acc, i| {
                acc.add(&PiRingElement::monomial(p, n, i, xs[k * 10 + i as usize])).unwrap()
            }).div_p_pow(scales[k])
        };
        let (x, y, z) = (elt(0), elt(1), elt(2));
        let lhs = x.mul(&y).unwrap().mul(&z).unwrap();
        prop_assert!(lhs.same_value(&x.mul(&y.mul(&z).unwrap()).unwrap()).unwrap());
        let dist = x.mul(&y.add(&z).unwrap()).unwrap();
        prop_assert!(dist.same_value(&x.mul(&y).unwrap().add(&x.mul(&z).unwrap()).unwrap()).unwrap());
        prop_assert!(x.mul(&y).unwrap().same_value(&y.mul(&x).unwrap()).unwrap());
    }

    #[test]
    fn theta_point_counts(
        p in prop::sample::select(vec![5u64, 7]),
        terms in prop::collection::vec((-5i64..5, 0u32..4, 0u32..3), 1..4),
    ) {
        let f = FpPolynomial::new(2, terms);
        prop_assert_eq!(point_count_via_theta(&f, p, 2).unwrap(), f.count_zeros(p));
    }
}

#[test]
fn enumeration_matches_legendre_sum() {
    for p in primes_in(5, 31) {
        for a in 0..p as i64 {
            for b in 0..p as i64 {
                let e = WeierstrassCurve::short(p, a, b).unwrap();
                if e.is_singular() {
                    continue;
                }
                let ap = e.ap_enumerate().unwrap();
                assert_eq!(ap_legendre_sum(a, b, p), Ok(ap));
                assert_eq!(e.ap_legendre(), Ok(ap));
                assert!(ap.unsigned_abs() <= hasse_bound(p));
            }
        }
    }
}

#[test]
fn quadratic_twist_negates_trace() {
    for p in primes_in(5, 31) {
        let d = (2..p as i64).find(|&d| legendre(d, p) == -1).unwrap();
        for a in 0..p as i64 {
            for b in 0..p as i64 {
                let Ok(ap) = ap_legendre_sum(a, b, p) else { continue };
                let (ta, tb) = quadratic_twist(a, b, d, p);
                assert_eq!(WeierstrassCurve::short(p, ta, tb).unwrap().ap_enumerate(), Ok(-ap));
            }
        }
    }
}

#[test]
fn cube_of_series() {
    let e = euler_product(1, 1, 30);
    assert_eq!(e.mul(&e).mul(&e), euler_product(3, 1, 30));
}
