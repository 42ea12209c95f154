//! Exact computations with sl₂ conformal blocks divisors on M̄₀,ₙ.
//!
//! The crate is organised bottom-up:
//!
//! * [`fusion`] computes ranks of sl₂ conformal blocks bundles by several
//!   independent routes (factorization with memoization, the Pascal-style
//!   recurrence for `(1^j, t)`, a binomial closed form, reflection of the
//!   level-unbounded table, and a high-precision Verlinde sum).
//! * [`divisors`] works in the symmetric boundary basis `B₂ … B_{⌊n/2⌋}`:
//!   F-curve intersections, `Ψ` and `K`, four-point degrees and the classes
//!   `D_ℓ` of the all-ones conformal blocks divisors.
//! * [`nefcone`] certifies independence of curve families, the nef faces the
//!   divisors lie on and symmetric log-canonical decompositions.
//! * [`pullbacks`] pulls divisors back from `M̄_g` (hyperelliptic map) and
//!   from `M̄_{2(g+1)}` (flag map) and runs the F-divisor inequalities.
//! * [`verify`] bundles the published claims into one reproducible battery,
//!   and [`cli`] exposes everything on the command line.
//!
//! All divisor arithmetic is exact over `BigRational`; floating point appears
//! only inside the numeric Verlinde evaluator.

pub mod arith;
pub mod cli;
pub mod divisors;
pub mod error;
pub mod fusion;
pub mod linalg;
pub mod nefcone;
pub mod pullbacks;
pub mod verify;

pub use divisors::{FCurve, SymDivisor};
pub use error::{Error, Result};
pub use fusion::{Level, RankCache, WeightVector};
