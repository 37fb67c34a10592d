//! Certified evaluation of cosecant and cotangent sums, harmonic-number
//! series and their asymptotic expansions, plus a verifier that checks the
//! identities and inequalities tying them together.
//!
//! All numerical code is generic over [`xfloat::Real`]; [`Scalar`] is the
//! default 30-digit backend.

pub mod asymptotics;
pub mod error;
pub mod harmonic;
pub mod precision;
pub mod tables;
pub mod trig;
pub mod verify;

pub use error::{Error, Result};
pub use precision::{Backend, CompensatedSum, Constants, Context, PrecisionPolicy};
pub use xfloat::{Dd, Qd, Real};

/// Default scalar, about 30 significant digits.
pub type Scalar = Dd;
pub type DdContext = Context<Dd>;
pub type QdContext = Context<Qd>;
