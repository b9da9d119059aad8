//! Exact p-adic arithmetic for traces of Frobenius.
//!
//! The crate evaluates Morita's p-adic gamma function, Gauss sums in the
//! totally ramified ring `Z_p[π]/(π^{p-1} + p)`, the normalized
//! finite-field hypergeometric functions `ₙ₊₁Fₙ`, and the p-adic function
//! `ₙGₙ[a; b | t]_p` built from gamma quotients. Elliptic curve tooling and
//! q-expansions of an eta-quotient cusp form provide independent ground
//! truth for the identities connecting them.
//!
//! Everything here is pure computation over integers; the crate is
//! `no_std` and only needs `alloc`.

#![no_std]
#![forbid(unsafe_code)]

extern crate alloc;

mod error;

pub mod elliptic;
pub mod gamma;
pub mod hypergeom_f;
pub mod hypergeom_g;
pub mod modforms;
pub mod modular;
pub mod padic;
pub mod pi_ring;
pub mod rational;
pub mod trace;

pub use elliptic::{AdmissibleTransform, CurveInvariants, WeierstrassCurve};
pub use error::{Error, Result};
pub use gamma::GammaTable;
pub use hypergeom_f::CharTuple;
pub use hypergeom_g::{GEvaluator, GParams, GValue};
pub use modforms::QSeries;
pub use padic::PadicNumber;
pub use pi_ring::{GaussSum, GaussSums, PiRingElement};
pub use rational::Rational;
pub use hypergeom_f::LennonEvaluator;
pub use trace::TraceEvaluator;
