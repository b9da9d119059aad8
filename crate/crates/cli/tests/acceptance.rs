//! Acceptance suite: one line per criterion, nonzero exit if any fails.

use std::process::ExitCode;
use std::time::Instant;

use frobenius::verify::{
    verify_corollary, verify_delta, verify_gauss_route, verify_identities, verify_lemma_gf, verify_lennon,
    verify_modform, verify_p3, verify_trace, RunOptions, Selection,
};
use frobenius::VerificationReport;
use frobenius_core::elliptic::ap_legendre_sum;
use frobenius_core::hypergeom_g::g_eval;
use frobenius_core::modular::{hasse_bound, primes_in};
use frobenius_core::trace::trace_via_g;
use frobenius_core::{GParams, WeierstrassCurve};

const SEED: u64 = 20240601;
const OPTS: RunOptions = RunOptions {
    precision: 2,
    timing: false,
};

struct Outcome {
    passed: bool,
    detail: String,
}

fn from_report(r: &VerificationReport, min_records: usize) -> Outcome {
    let enough = r.records.len() >= min_records;
    let mut detail = format!("{} records, {} mismatches", r.records.len(), r.mismatches());
    if !enough {
        detail.push_str(&format!(", expected at least {min_records}"));
    }
    if let Some(bad) = r.records.iter().find(|x| !x.matched) {
        detail.push_str(&format!(
            "; first: p={} {} lhs={} rhs={}",
            bad.prime, bad.subject, bad.lhs.value, bad.rhs.value
        ));
    }
    Outcome {
        passed: r.passed() && enough,
        detail,
    }
}

fn anchor() -> Outcome {
    let e = WeierstrassCurve::short(5, 1, 1).unwrap();
    let routes = [e.ap_enumerate(), ap_legendre_sum(1, 1, 5), trace_via_g(1, 1, 5, 2)];
    let g = g_eval(&GParams::trace(), 2, 5, 2).unwrap().value;
    let valuation = g.valuation();
    let lift = g.shift(1).centered_lift(hasse_bound(5));
    let passed = routes.iter().all(|r| *r == Ok(-3)) && valuation == Some(-1) && lift == Ok(-3);
    Outcome {
        passed,
        detail: format!("routes {routes:?}, G valuation {valuation:?}, lift of 5G {lift:?}"),
    }
}

/// Every `a_p` computed by the trace-producing tasks is an integer inside
/// the Hasse window; an ambiguous or missing lift would surface as an error
/// value instead.
fn hasse(reports: &[&VerificationReport]) -> Outcome {
    let mut checked = 0;
    let mut failures = Vec::new();
    for r in reports {
        for rec in &r.records {
            checked += 1;
            let ok = rec
                .lhs
                .value
                .parse::<i64>()
                .is_ok_and(|a| a.unsigned_abs() <= hasse_bound(rec.prime));
            if !ok && failures.len() < 3 {
                failures.push(format!("{} p={} {}: {}", rec.task, rec.prime, rec.subject, rec.lhs.value));
            }
        }
    }
    Outcome {
        passed: failures.is_empty() && checked > 0,
        detail: if failures.is_empty() {
            format!("{checked} values within 2√p")
        } else {
            format!("out of window: {}", failures.join("; "))
        },
    }
}

fn main() -> ExitCode {
    let mut all = true;
    let mut report_line = |id: u32, name: &str, start: Instant, o: Outcome| {
        let status = if o.passed { "pass" } else { "FAIL" };
        println!(
            "criterion {id:>2} {status}  {name} ({}; {:.1}s)",
            o.detail,
            start.elapsed().as_secs_f64()
        );
        all &= o.passed;
    };

    let t = Instant::now();
    let exhaustive = verify_trace(5, 31, Selection::Exhaustive, OPTS);
    report_line(1, "main theorem, every admissible curve, 5 ≤ p ≤ 31", t, from_report(&exhaustive, 1500));

    let t = Instant::now();
    let sampled = verify_trace(37, 199, Selection::Sample { count: 50, seed: SEED }, OPTS);
    let n_primes = primes_in(37, 199).count();
    report_line(2, "main theorem, 50 sampled curves per prime, 37 ≤ p ≤ 199", t, from_report(&sampled, 50 * n_primes));

    let t = Instant::now();
    let primes: Vec<u64> = primes_in(5, 31).collect();
    let corollary = verify_corollary(&primes, 10, 20, SEED, OPTS);
    report_line(3, "corollary on transformed models, 5 ≤ p ≤ 31", t, from_report(&corollary, 200 * primes.len()));

    let t = Instant::now();
    report_line(4, "anchor curve y^2 = x^3 + x + 1 over F_5", t, anchor());

    let t = Instant::now();
    let gamma = verify_identities(97, 31, 0, OPTS);
    report_line(5, "gamma reflection and multiplication (p ≤ 97), product identities (p ≤ 31)", t, from_report(&gamma, 100));

    let t = Instant::now();
    let ring = verify_identities(0, 0, 31, OPTS);
    report_line(6, "Gauss sums, Hasse-Davenport, theta, theta point counts (p ≤ 31)", t, from_report(&ring, 40));

    let t = Instant::now();
    let gauss = verify_gauss_route(5, 13, OPTS);
    report_line(7, "a_p from Gauss sums, p ∈ {5, 7, 11, 13}", t, from_report(&gauss, 200));

    let t = Instant::now();
    let lemma = verify_lemma_gf(&[13, 37, 61], 10, SEED, OPTS);
    report_line(8, "F at t against G at 1/t, p ∈ {13, 37, 61}", t, from_report(&lemma, 30));

    let t = Instant::now();
    let lennon = verify_lennon(&[13, 37, 61, 73, 97], 13, 25, SEED, OPTS);
    for rec in lennon.records.iter().filter(|r| r.prime == 13).take(3) {
        println!("    p=13 {}: {}", rec.subject, rec.note.as_deref().unwrap_or(""));
    }
    report_line(9, "Lennon's formula, p ∈ {13, 37, 61, 73, 97}", t, from_report(&lennon, 100 + 4 * 25));

    let t = Instant::now();
    let modform = verify_modform(47, 60, OPTS);
    let f4_primes: Vec<u64> = modform
        .records
        .iter()
        .filter(|r| r.subject.starts_with("4F3"))
        .map(|r| r.prime)
        .collect();
    let mut o = from_report(&modform, 13 + 3);
    o.passed &= f4_primes == [11, 31, 41];
    report_line(10, "4G4 and 4F3 against the level-25 cusp form", t, o);

    let t = Instant::now();
    report_line(11, "the four curves over F_3", t, from_report(&verify_p3(OPTS), 4));

    let t = Instant::now();
    report_line(12, "valuation of G is at least delta", t, from_report(&verify_delta(200, SEED, OPTS), 200));

    let t = Instant::now();
    report_line(
        13,
        "Hasse bound and unique lifts",
        t,
        hasse(&[&exhaustive, &sampled, &corollary, &gauss, &lennon]),
    );

    if all {
        println!("all criteria passed");
        ExitCode::SUCCESS
    } else {
        println!("some criteria failed");
        ExitCode::FAILURE
    }
}
