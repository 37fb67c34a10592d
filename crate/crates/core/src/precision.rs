//! Precision policy, backend selection and the shared evaluation context.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use serde::Serialize;
use xfloat::Real;

use crate::error::{Error, Result};
use crate::tables::{bernoulli_rationals, BernoulliTable, EvenZetaTable, K_MAX};

pub const DEFAULT_DIGITS: u32 = 30;
pub const DEFAULT_MARGIN: u32 = 5;
/// Largest precision any backend provides.
pub const MAX_DIGITS: u32 = 60;
pub const DIGITS_ENV: &str = "TRIGSUM_DIGITS";

/// Working precision in significant decimal digits, and how many of them
/// are held back when comparing quantities that should agree.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct PrecisionPolicy {
    working_digits: u32,
    check_margin: u32,
}

impl PrecisionPolicy {
    pub fn new(working_digits: u32, check_margin: u32) -> Result<Self> {
        if working_digits < 15 {
            return Err(Error::InvalidPolicy(format!(
                "working_digits must be at least 15, got {working_digits}"
            )));
        }
        if working_digits > MAX_DIGITS {
            return Err(Error::InvalidPolicy(format!(
                "working_digits above {MAX_DIGITS} are not supported, got {working_digits}"
            )));
        }
        if check_margin == 0 || check_margin >= working_digits {
            return Err(Error::InvalidPolicy(format!(
                "check_margin must lie in 1..{working_digits}, got {check_margin}"
            )));
        }
        Ok(Self {
            working_digits,
            check_margin,
        })
    }

    /// Policy with the default margin.
    pub fn with_digits(working_digits: u32) -> Result<Self> {
        Self::new(working_digits, DEFAULT_MARGIN)
    }

    /// Default policy, with `TRIGSUM_DIGITS` overriding the digit count.
    pub fn from_env() -> Result<Self> {
        match std::env::var(DIGITS_ENV) {
            Ok(v) => {
                let digits = v.trim().parse::<u32>().map_err(|_| {
                    Error::InvalidPolicy(format!("{DIGITS_ENV}={v:?} is not a digit count"))
                })?;
                Self::with_digits(digits)
            }
            Err(_) => Ok(Self::default()),
        }
    }

    pub fn working_digits(&self) -> u32 {
        self.working_digits
    }

    pub fn check_margin(&self) -> u32 {
        self.check_margin
    }

    /// `10^(check_margin - working_digits)` as an exact rational.
    pub fn tolerance_exact(&self) -> BigRational {
        let e = (self.working_digits - self.check_margin) as usize;
        BigRational::new(BigInt::one(), num_traits::pow(BigInt::from(10), e))
    }

    pub fn tolerance<T: Real>(&self) -> T {
        T::from_rational(&self.tolerance_exact())
    }

    pub fn tolerance_f64(&self) -> f64 {
        10f64.powi(self.check_margin as i32 - self.working_digits as i32)
    }

    pub fn backend(&self) -> Backend {
        Backend::for_digits(self.working_digits)
    }
}

impl Default for PrecisionPolicy {
    fn default() -> Self {
        Self {
            working_digits: DEFAULT_DIGITS,
            check_margin: DEFAULT_MARGIN,
        }
    }
}

/// Scalar implementation backing a policy.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Backend {
    F64,
    DoubleDouble,
    QuadDouble,
}

impl Backend {
    /// Cheapest backend carrying `digits` significant digits.
    pub fn for_digits(digits: u32) -> Backend {
        if digits <= f64::DIGITS {
            Backend::F64
        } else if digits <= xfloat::Dd::DIGITS {
            Backend::DoubleDouble
        } else {
            Backend::QuadDouble
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            Backend::F64 => f64::NAME,
            Backend::DoubleDouble => xfloat::Dd::NAME,
            Backend::QuadDouble => xfloat::Qd::NAME,
        }
    }
}

#[inline]
pub(crate) fn recip<T: Real>(x: T) -> T {
    T::one() / x
}

/// Neumaier's variant of compensated summation.
#[derive(Clone, Copy, Debug, Default)]
pub struct CompensatedSum<T> {
    sum: T,
    comp: T,
}

impl<T: Real> CompensatedSum<T> {
    pub fn new() -> Self {
        Self {
            sum: T::zero(),
            comp: T::zero(),
        }
    }

    #[inline]
    pub fn add(&mut self, x: T) {
        let t = self.sum + x;
        if self.sum.abs() >= x.abs() {
            self.comp += (self.sum - t) + x;
        } else {
            self.comp += (x - t) + self.sum;
        }
        self.sum = t;
    }

    pub fn value(&self) -> T {
        self.sum + self.comp
    }
}

impl<T: Real> Extend<T> for CompensatedSum<T> {
    fn extend<I: IntoIterator<Item = T>>(&mut self, iter: I) {
        for x in iter {
            self.add(x);
        }
    }
}

impl<T: Real> FromIterator<T> for CompensatedSum<T> {
    fn from_iter<I: IntoIterator<Item = T>>(iter: I) -> Self {
        let mut s = Self::new();
        s.extend(iter);
        s
    }
}

#[derive(Clone, Copy, Debug)]
pub struct Constants<T> {
    pub pi: T,
    pub ln2: T,
    pub euler_gamma: T,
    pub ln_pi_over_2: T,
    pub ln_2pi: T,
}

impl<T: Real> Constants<T> {
    pub fn new(policy: &PrecisionPolicy) -> Self {
        let pi = T::pi();
        let ln2 = T::ln_2();
        let ln_pi = pi.ln();
        Self {
            pi,
            ln2,
            euler_gamma: compute_gamma::<T>(policy),
            ln_pi_over_2: ln_pi - ln2,
            ln_2pi: ln_pi + ln2,
        }
    }
}

/// Euler's constant from the expansion of `H_n`.
///
/// `γ = H_n − ln n − 1/(2n) + Σ_{k<m} b_{2k}/(2k n^{2k})` up to a remainder
/// of absolute value below `|b_{2m}|/(2m n^{2m})`. The rational part is
/// evaluated exactly, so only `ln n` and the final rounding touch `T`.
pub fn compute_gamma<T: Real>(policy: &PrecisionPolicy) -> T {
    let bernoulli = bernoulli_rationals(K_MAX);
    let target = {
        let digits = BigRational::new(
            BigInt::one(),
            num_traits::pow(BigInt::from(10), policy.working_digits() as usize + 2),
        );
        let ulp = T::epsilon().to_rational() / BigRational::from_integer(8.into());
        if ulp < digits {
            ulp
        } else {
            digits
        }
    };
    for n in [10u64, 100, 1000, 10_000] {
        let n_rat = BigRational::from_integer(BigInt::from(n));
        let n2 = &n_rat * &n_rat;
        let mut n_pow = n2.clone();
        for m in 1..=K_MAX {
            let bound = bernoulli[m - 1].abs()
                / (BigRational::from_integer(BigInt::from(2 * m)) * &n_pow);
            if bound < target {
                return gamma_from(n, m, &bernoulli);
            }
            n_pow *= &n2;
        }
    }
    unreachable!("n = 10^4 with m = {K_MAX} reaches any supported precision")
}

fn gamma_from<T: Real>(n: u64, m: usize, bernoulli: &[BigRational]) -> T {
    let n_rat = BigRational::from_integer(BigInt::from(n));
    let mut exact = BigRational::zero();
    for j in 1..=n {
        exact += BigRational::new(BigInt::one(), BigInt::from(j));
    }
    exact -= BigRational::new(BigInt::one(), BigInt::from(2 * n));
    let n2 = &n_rat * &n_rat;
    let mut n_pow = n2.clone();
    for (k, b) in bernoulli.iter().enumerate().take(m - 1) {
        exact += b / (BigRational::from_integer(BigInt::from(2 * (k + 1))) * &n_pow);
        n_pow *= &n2;
    }
    T::from_rational(&exact) - T::from_int(n as i64).ln()
}

/// Everything the series and expansion code needs, built once per policy.
#[derive(Clone, Debug)]
pub struct Context<T> {
    policy: PrecisionPolicy,
    pub constants: Constants<T>,
    pub bernoulli: BernoulliTable<T>,
    pub zeta: EvenZetaTable<T>,
    max_terms: u64,
}

/// Default cap on the number of terms a single series evaluation may use.
pub const DEFAULT_MAX_TERMS: u64 = 10_000_000;

impl<T: Real> Context<T> {
    pub fn new(policy: PrecisionPolicy) -> Result<Self> {
        if policy.working_digits() > T::DIGITS {
            return Err(Error::InvalidPolicy(format!(
                "{} carries {} digits, policy asks for {}",
                T::NAME,
                T::DIGITS,
                policy.working_digits()
            )));
        }
        let bernoulli = BernoulliTable::new(K_MAX);
        let zeta = EvenZetaTable::new(&bernoulli);
        Ok(Self {
            policy,
            constants: Constants::new(&policy),
            bernoulli,
            zeta,
            max_terms: DEFAULT_MAX_TERMS,
        })
    }

    /// Context at the backend's full precision with the default margin.
    pub fn full_precision() -> Self {
        let policy = PrecisionPolicy::with_digits(T::DIGITS.max(15))
            .expect("backend digit counts are valid policies");
        Self::new(policy).expect("policy matches backend")
    }

    pub fn with_max_terms(mut self, max_terms: u64) -> Self {
        self.max_terms = max_terms.max(1);
        self
    }

    pub fn policy(&self) -> &PrecisionPolicy {
        &self.policy
    }

    pub fn max_terms(&self) -> u64 {
        self.max_terms
    }

    pub fn tolerance(&self) -> T {
        self.policy.tolerance()
    }

    /// Smallest absolute tolerance a series evaluation will accept.
    pub fn noise_floor(&self) -> f64 {
        let eps = T::epsilon().hi() * 64.0;
        eps.max(10f64.powi(-(self.policy.working_digits() as i32)))
    }
}
