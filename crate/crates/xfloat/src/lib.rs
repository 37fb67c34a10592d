//! Extended-precision scalars for verification-grade numerics.
//!
//! [`Real`] is the scalar contract (built on `num-traits`) and is
//! implemented by `f64`, [`DoubleDouble`] and [`QuadDouble`]. Decimal
//! conversion goes through exact rationals, see [`decimal`].

pub mod decimal;
mod dd;
pub mod eft;
mod elementary;
mod macros;
mod qd;
mod real;

pub use dd::DoubleDouble;
pub use qd::QuadDouble;
pub use real::Real;

/// About 30 significant decimal digits.
pub type Dd = DoubleDouble;
/// About 60 significant decimal digits.
pub type Qd = QuadDouble;
