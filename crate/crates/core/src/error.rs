use thiserror::Error;

pub type Result<T, E = Error> = core::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("denominator {den} is divisible by p = {p}")]
    DenominatorDivisibleByP { den: i64, p: u64 },
    #[error("a parameter denominator is divisible by p = {p}")]
    BadParameterDenominator { p: u64 },
    #[error("{0} is not an odd prime")]
    EvenPrime(u64),
    #[error("{0} is not prime")]
    NotPrime(u64),
    #[error("no integer in [-{bound}, {bound}] is congruent to the residue")]
    NoLiftInWindow { bound: u64 },
    #[error("lift is ambiguous: precision p^{precision} does not exceed twice the bound {bound}")]
    AmbiguousLift { bound: u64, precision: i64 },
    #[error("cannot lift a value of negative valuation {0} to an integer")]
    NegativeValuation(i64),
    #[error("requested precision {requested} exceeds the table precision {available}")]
    PrecisionExceedsTable { requested: u32, available: u32 },
    #[error("residue {0} was not captured by the gamma sweep")]
    MissingGammaTarget(u64),
    #[error("ring elements belong to different rings")]
    MixedRings,
    #[error("character index {index} outside 0..={max}")]
    IndexOutOfRange { index: i64, max: i64 },
    #[error("character sum has a nonzero coefficient at pi^{degree}")]
    NonRationalResult { degree: usize },
    #[error("the curve is singular")]
    CurveSingular,
    #[error("j-invariant is 0 or 1728")]
    ExcludedJInvariant,
    #[error("p = {p} is not congruent to 1 mod {modulus}")]
    WrongCongruenceClass { p: u64, modulus: u64 },
    #[error("admissible transform needs u != 0")]
    ZeroU,
    #[error("coefficient {index} lies beyond the truncation order {truncation}")]
    IndexBeyondTruncation { index: usize, truncation: usize },
    #[error("p must exceed 3 for this operation (got {0})")]
    SmallPrime(u64),
    #[error("parameter lists have the wrong lengths")]
    ParameterShape,
    #[error("the argument must be nonzero in F_p")]
    ZeroArgument,
    #[error("eta quotient has non-integral leading exponent")]
    NonIntegralEtaOrder,
}
