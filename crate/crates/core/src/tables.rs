//! Bernoulli numbers and even zeta/eta values.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};
use xfloat::Real;

use crate::error::{Error, Result};

/// Default table depth. Asymptotic expansions diverge in the truncation
/// order, so deeper tables buy nothing.
pub const K_MAX: usize = 16;

/// `b_2, b_4, …, b_{2·k_max}` as exact rationals.
///
/// Uses `Σ_{j=0}^{n} C(n+1, j) B_j = 0`, all in integers and rationals.
pub fn bernoulli_rationals(k_max: usize) -> Vec<BigRational> {
    let top = 2 * k_max;
    let mut b: Vec<BigRational> = Vec::with_capacity(top + 1);
    b.push(BigRational::one());
    for n in 1..=top {
        // binomial C(n+1, j) built incrementally
        let mut binom = BigInt::one();
        let mut acc = BigRational::zero();
        for (j, bj) in b.iter().enumerate() {
            acc += bj * BigRational::from_integer(binom.clone());
            binom = binom * BigInt::from(n + 1 - j) / BigInt::from(j + 1);
        }
        b.push(-acc / BigRational::from_integer(BigInt::from(n + 1)));
    }
    b.into_iter().skip(2).step_by(2).collect()
}

#[derive(Clone, Debug)]
pub struct BernoulliTable<T> {
    exact: Vec<BigRational>,
    values: Vec<T>,
}

impl<T: Real> BernoulliTable<T> {
    pub fn new(k_max: usize) -> Self {
        let exact = bernoulli_rationals(k_max);
        let values = exact.iter().map(T::from_rational).collect();
        Self { exact, values }
    }

    pub fn k_max(&self) -> usize {
        self.values.len()
    }

    fn check(&self, k: usize) -> Result<usize> {
        if k == 0 || k > self.k_max() {
            return Err(Error::Capacity {
                k,
                k_max: self.k_max(),
            });
        }
        Ok(k - 1)
    }

    /// `b_{2k}`.
    pub fn get(&self, k: usize) -> Result<T> {
        self.check(k).map(|i| self.values[i])
    }

    pub fn exact(&self, k: usize) -> Result<&BigRational> {
        self.check(k).map(|i| &self.exact[i])
    }

    /// Generation method, recorded alongside the data.
    pub fn method(&self) -> &'static str {
        "exact rational recurrence"
    }
}

#[derive(Clone, Debug)]
pub struct EvenZetaTable<T> {
    zeta: Vec<T>,
    eta: Vec<T>,
}

impl<T: Real> EvenZetaTable<T> {
    /// `ζ(2k) = (−1)^{k−1} b_{2k} (2π)^{2k} / (2·(2k)!)` and
    /// `η(2k) = (1 − 2^{1−2k}) ζ(2k)`.
    pub fn new(bernoulli: &BernoulliTable<T>) -> Self {
        let two_pi = T::pi().mul_pow2(1);
        let mut zeta = Vec::with_capacity(bernoulli.k_max());
        let mut eta = Vec::with_capacity(bernoulli.k_max());
        let mut factorial = BigInt::one();
        for k in 1..=bernoulli.k_max() {
            factorial *= BigInt::from((2 * k - 1) * 2 * k);
            let b = bernoulli.exact[k - 1].clone();
            let b_abs = if b < BigRational::zero() { -b } else { b };
            let coeff = b_abs / BigRational::from_integer(factorial.clone() * 2);
            let z = T::from_rational(&coeff) * two_pi.powi(2 * k as i32);
            let factor = T::one() - T::one().mul_pow2(1 - 2 * k as i32);
            zeta.push(z);
            eta.push(factor * z);
        }
        Self { zeta, eta }
    }

    pub fn k_max(&self) -> usize {
        self.zeta.len()
    }

    fn check(&self, k: usize) -> Result<usize> {
        if k == 0 || k > self.k_max() {
            return Err(Error::Capacity {
                k,
                k_max: self.k_max(),
            });
        }
        Ok(k - 1)
    }

    /// `ζ(2k)`.
    pub fn zeta(&self, k: usize) -> Result<T> {
        self.check(k).map(|i| self.zeta[i])
    }

    /// `η(2k)`.
    pub fn eta(&self, k: usize) -> Result<T> {
        self.check(k).map(|i| self.eta[i])
    }

    pub fn method(&self) -> &'static str {
        "closed form in b_2k and pi"
    }
}
