use std::io::{self, Write};
use std::ops::RangeInclusive;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use frobenius::verify::{self, RunOptions, Selection};
use frobenius::VerificationReport;
use frobenius_core::elliptic::WeierstrassCurve;
use frobenius_core::hypergeom_f::f_eval;
use frobenius_core::hypergeom_g::g_eval;
use frobenius_core::modforms::build_f;
use frobenius_core::modular::{is_prime, primes_in};
use frobenius_core::pi_ring::ap_via_gauss;
use frobenius_core::trace::trace_via_c6;
use frobenius_core::{CharTuple, GParams, GammaTable, Rational};

#[derive(Parser)]
#[command(name = "frobenius", version, about = "Exact p-adic hypergeometric values and traces of Frobenius")]
struct Cli {
    /// Target p-adic precision N.
    #[arg(long, global = true, env = "FROBENIUS_PRECISION", default_value_t = 2)]
    prec: u32,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Γ_p(x) mod p^N.
    Gamma {
        #[arg(long)]
        p: u64,
        /// A rational NUM/DEN with DEN prime to p.
        #[arg(long, allow_hyphen_values = true, value_parser = parse_rational)]
        x: Rational,
    },
    /// ₙGₙ[upper; lower | t]_p.
    GEval {
        #[arg(long)]
        p: u64,
        #[arg(long, value_delimiter = ',', allow_hyphen_values = true, required = true, value_parser = parse_rational)]
        upper: Vec<Rational>,
        #[arg(long, value_delimiter = ',', allow_hyphen_values = true, required = true, value_parser = parse_rational)]
        lower: Vec<Rational>,
        #[arg(long, allow_hyphen_values = true)]
        t: i64,
    },
    /// Trace of Frobenius of a curve over F_p.
    Ap {
        #[arg(long)]
        p: u64,
        /// `A,B` for y² = x³ + Ax + B, or `A1,A2,A3,A4,A6`.
        #[arg(long, value_delimiter = ',', allow_hyphen_values = true, required = true)]
        curve: Vec<i64>,
        #[arg(long, value_enum, default_value_t = Method::Enumerate)]
        method: Method,
    },
    /// b- and c-invariants, discriminant and j of a curve over F_p.
    Invariants {
        #[arg(long)]
        p: u64,
        #[arg(long, value_delimiter = ',', allow_hyphen_values = true, required = true)]
        curve: Vec<i64>,
    },
    /// ₙ₊₁Fₙ(A; B | x) with characters given as ω̄-exponents.
    FEval {
        #[arg(long)]
        p: u64,
        #[arg(long, value_delimiter = ',', allow_hyphen_values = true, required = true)]
        upper: Vec<i64>,
        #[arg(long, value_delimiter = ',', allow_hyphen_values = true)]
        lower: Vec<i64>,
        #[arg(long, allow_hyphen_values = true)]
        x: i64,
    },
    /// The level-25 weight-4 cusp form.
    Modform {
        #[command(subcommand)]
        command: ModformCommand,
    },
    /// Range checks; prints one record per line and a summary.
    Verify(VerifyArgs),
}

#[derive(Clone, Copy, ValueEnum)]
enum Method {
    Enumerate,
    Legendre,
    Gauss,
    /// The ₂G₂ formula through c₆ and j.
    G,
}

#[derive(Subcommand)]
enum ModformCommand {
    /// c(n).
    Coeff {
        #[arg(long)]
        n: usize,
        #[arg(long, default_value_t = 60)]
        truncation: usize,
    },
}

#[derive(Args)]
struct VerifyArgs {
    /// JSON lines (the default).
    #[arg(long, global = true, conflicts_with = "csv")]
    json: bool,
    #[arg(long, global = true)]
    csv: bool,
    /// Add per-record wall time; output is then no longer reproducible.
    #[arg(long, global = true)]
    timing: bool,
    #[command(subcommand)]
    task: Task,
}

#[derive(Subcommand)]
enum Task {
    /// a_p from ₂G₂ against the Legendre sum and enumeration.
    Trace {
        /// Inclusive, e.g. 5..97.
        #[arg(long, value_parser = parse_range, default_value = "5..31")]
        p_range: RangeInclusive<u64>,
        #[arg(long, conflicts_with = "sample")]
        exhaustive: bool,
        /// Curves drawn per prime.
        #[arg(long)]
        sample: Option<usize>,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
    /// The c₆/j form on transformed models.
    Corollary {
        #[arg(long, value_parser = parse_range, default_value = "5..31")]
        p_range: RangeInclusive<u64>,
        #[arg(long, default_value_t = 10)]
        curves: usize,
        #[arg(long, default_value_t = 20)]
        transforms: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
    /// Γ_p, Gauss-sum, character and θ identities.
    Identities {
        #[arg(long, default_value_t = 31)]
        p_max: u64,
        /// Bound for reflection and multiplication, if different.
        #[arg(long)]
        gamma_p_max: Option<u64>,
    },
    /// a_p from Gauss sums against enumeration.
    GaussAp {
        #[arg(long, value_parser = parse_range, default_value = "5..13")]
        p_range: RangeInclusive<u64>,
    },
    /// ₄G₄ and ₄F₃ against the cusp form coefficients.
    Modform {
        #[arg(long, default_value_t = 47)]
        p_max: u64,
        #[arg(long, default_value_t = 60)]
        truncation: usize,
    },
    /// F(ψ, ψ⁵; ε | t) against ₂G₂ at t⁻¹.
    LemmaGf {
        #[arg(long, value_delimiter = ',', default_value = "13,37,61")]
        primes: Vec<u64>,
        #[arg(long, default_value_t = 10)]
        samples: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
    /// Lennon's ₂F₁ trace formula for p ≡ 1 mod 12.
    Lennon {
        #[arg(long, value_delimiter = ',', default_value = "13,37,61,73,97")]
        primes: Vec<u64>,
        /// Every admissible curve up to this prime, samples above it.
        #[arg(long, default_value_t = 13)]
        exhaustive_max: u64,
        #[arg(long, default_value_t = 25)]
        samples: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
    /// The four curves y² = x³ + ax² + b over F_3.
    P3,
    /// valuation(ₙGₙ) ≥ δ on random parameters.
    Delta {
        #[arg(long, default_value_t = 100)]
        cases: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
}

fn parse_range(s: &str) -> Result<RangeInclusive<u64>, String> {
    let (lo, hi) = s
        .split_once("..=")
        .or_else(|| s.split_once(".."))
        .ok_or_else(|| format!("expected LO..HI, got {s:?}"))?;
    let parse = |x: &str| x.trim().parse::<u64>().map_err(|e| format!("{x:?}: {e}"));
    Ok(parse(lo)?..=parse(hi)?)
}

fn parse_rational(s: &str) -> Result<Rational, String> {
    s.trim().parse::<Rational>().map_err(|e| e.to_string())
}

fn require_prime(p: u64) -> Result<(), String> {
    if is_prime(p) {
        Ok(())
    } else {
        Err(format!("{p} is not prime"))
    }
}

fn curve(p: u64, coeffs: &[i64]) -> Result<WeierstrassCurve, String> {
    let c = match *coeffs {
        [a, b] => [0, 0, 0, a, b],
        [a1, a2, a3, a4, a6] => [a1, a2, a3, a4, a6],
        _ => return Err("--curve takes 2 or 5 coefficients".into()),
    };
    WeierstrassCurve::new(p, c).map_err(|e| e.to_string())
}

fn run(command: Command, n: u32) -> Result<ExitCode, String> {
    let mut out = io::stdout().lock();
    let err = |e: frobenius_core::Error| e.to_string();
    match command {
        Command::Gamma { p, x } => {
            require_prime(p)?;
            let table = GammaTable::for_rationals(p, n, [x]).map_err(err)?;
            writeln!(out, "{}", table.at_rational(x).map_err(err)?).map_err(|e| e.to_string())?;
        }
        Command::GEval { p, upper, lower, t } => {
            let params = GParams::new(upper, lower).map_err(err)?;
            let g = g_eval(&params, t, p, n).map_err(err)?;
            let valuation = g.value.valuation().map_or("none (zero)".to_string(), |v| v.to_string());
            writeln!(out, "value {}", g.value).map_err(|e| e.to_string())?;
            writeln!(out, "valuation {valuation}").map_err(|e| e.to_string())?;
            writeln!(out, "unit {}", g.value.unit()).map_err(|e| e.to_string())?;
            writeln!(out, "delta {}", g.delta).map_err(|e| e.to_string())?;
        }
        Command::Ap { p, curve: coeffs, method } => {
            require_prime(p)?;
            let e = curve(p, &coeffs)?;
            let ap = match method {
                Method::Enumerate => e.ap_enumerate(),
                Method::Legendre => e.ap_legendre(),
                Method::Gauss => {
                    if !e.is_short() {
                        return Err("--method gauss needs a short curve A,B".into());
                    }
                    ap_via_gauss(e.a4 as i64, e.a6 as i64, p, n)
                }
                Method::G => trace_via_c6(&e, n),
            }
            .map_err(err)?;
            writeln!(out, "{ap}").map_err(|e| e.to_string())?;
        }
        Command::Invariants { p, curve: coeffs } => {
            require_prime(p)?;
            let inv = curve(p, &coeffs)?.invariants();
            let j = inv.j.map_or("undefined (singular)".to_string(), |j| j.to_string());
            writeln!(
                out,
                "b2 {}\nb4 {}\nb6 {}\nb8 {}\nc4 {}\nc6 {}\ndiscriminant {}\nj {j}",
                inv.b2, inv.b4, inv.b6, inv.b8, inv.c4, inv.c6, inv.discriminant
            )
            .map_err(|e| e.to_string())?;
        }
        Command::FEval { p, upper, lower, x } => {
            require_prime(p)?;
            let chars = CharTuple::new(p, &upper, &lower).map_err(err)?;
            writeln!(out, "{}", f_eval(&chars, x, n).map_err(err)?).map_err(|e| e.to_string())?;
        }
        Command::Modform {
            command: ModformCommand::Coeff { n: index, truncation },
        } => {
            let f = build_f(truncation);
            writeln!(out, "{}", f.coefficient(index).map_err(err)?).map_err(|e| e.to_string())?;
        }
        Command::Verify(args) => {
            let opts = RunOptions { precision: n, timing: args.timing };
            let report = run_task(args.task, opts);
            let written = if args.csv {
                report.write_csv(&mut out)
            } else {
                report.write_json_lines(&mut out)
            };
            written.map_err(|e| e.to_string())?;
            if args.csv {
                let s = report.summary();
                eprintln!("{}: {} records, {} mismatches", s.status, s.records, s.mismatches);
            }
            return Ok(if report.passed() { ExitCode::SUCCESS } else { ExitCode::from(1) });
        }
    }
    Ok(ExitCode::SUCCESS)
}

fn run_task(task: Task, opts: RunOptions) -> VerificationReport {
    match task {
        Task::Trace { p_range, sample, seed, .. } => {
            let sel = sample.map_or(Selection::Exhaustive, |count| Selection::Sample { count, seed });
            verify::verify_trace(*p_range.start(), *p_range.end(), sel, opts)
        }
        Task::Corollary { p_range, curves, transforms, seed } => {
            let primes: Vec<u64> = primes_in((*p_range.start()).max(5), *p_range.end()).collect();
            verify::verify_corollary(&primes, curves, transforms, seed, opts)
        }
        Task::Identities { p_max, gamma_p_max } => {
            verify::verify_identities(gamma_p_max.unwrap_or(p_max), p_max, p_max, opts)
        }
        Task::GaussAp { p_range } => verify::verify_gauss_route(*p_range.start(), *p_range.end(), opts),
        Task::Modform { p_max, truncation } => verify::verify_modform(p_max, truncation, opts),
        Task::LemmaGf { primes, samples, seed } => verify::verify_lemma_gf(&primes, samples, seed, opts),
        Task::Lennon { primes, exhaustive_max, samples, seed } => {
            verify::verify_lennon(&primes, exhaustive_max, samples, seed, opts)
        }
        Task::P3 => verify::verify_p3(opts),
        Task::Delta { cases, seed } => verify::verify_delta(cases, seed, opts),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli.command, cli.prec) {
        Ok(code) => code,
        Err(msg) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
    }
}
