//! Finite trigonometric sums and the closed-form secant sums.
//!
//! Every angle is a rational multiple of π reduced in integers before it
//! reaches the scalar type, so cotangents at π/2 vanish exactly and no
//! angle is built up by repeated increments. Sums are accumulated with
//! compensation: the terms at the ends of the range are O(p) while the
//! middle ones are O(1).

use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_rational::BigRational;
use xfloat::Real;

use crate::error::{Error, Result};
use crate::precision::{recip, CompensatedSum};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum TrigSumKind {
    /// `Σ_{k=1}^{p−1} csc(kπ/p)`
    I,
    /// `Σ_{k=1}^{p−1} k·cot(kπ/p)`
    J,
    /// `Σ_{k=1}^{p−1} tan(kπ/2p)`
    K,
    /// `Σ_{k=1}^{p−1} cot(kπ/2p)`
    KTilde,
    /// `Σ_{k=1}^{p−1} k/sin(kπ/p)`
    L,
    /// `Σ_{k=1}^{p} (2k−1)·cot((2k−1)π/2p)`
    M,
}

impl TrigSumKind {
    pub const ALL: [TrigSumKind; 6] = [
        TrigSumKind::I,
        TrigSumKind::J,
        TrigSumKind::K,
        TrigSumKind::KTilde,
        TrigSumKind::L,
        TrigSumKind::M,
    ];

    pub fn name(self) -> &'static str {
        match self {
            TrigSumKind::I => "I",
            TrigSumKind::J => "J",
            TrigSumKind::K => "K",
            TrigSumKind::KTilde => "Ktilde",
            TrigSumKind::L => "L",
            TrigSumKind::M => "M",
        }
    }

    pub fn eval<T: Real>(self, p: u64) -> T {
        match self {
            TrigSumKind::I => cosecant_sum(p),
            TrigSumKind::J => cotangent_sum(p),
            TrigSumKind::K => tangent_sum(p),
            TrigSumKind::KTilde => cot_half_sum(p),
            TrigSumKind::L => weighted_cosecant_sum(p),
            TrigSumKind::M => odd_cotangent_sum(p),
        }
    }
}

impl fmt::Display for TrigSumKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for TrigSumKind {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        TrigSumKind::ALL
            .into_iter()
            .find(|k| k.name().eq_ignore_ascii_case(s))
            .ok_or_else(|| Error::Domain(format!("unknown trigonometric sum `{s}`")))
    }
}

fn index(p: u64) -> i64 {
    i64::try_from(p).expect("p fits in i64")
}

/// `I_p`; zero for `p = 1`.
pub fn cosecant_sum<T: Real>(p: u64) -> T {
    let p = index(p);
    (1..p)
        .map(|k| recip(T::sin_cos_pi(k, p).0))
        .collect::<CompensatedSum<T>>()
        .value()
}

/// `J_p`; the middle term of even `p` is an exact zero.
pub fn cotangent_sum<T: Real>(p: u64) -> T {
    cosecant_cotangent_sums::<T>(p).1
}

/// `(I_p, J_p)` from one pass over the angles.
pub fn cosecant_cotangent_sums<T: Real>(p: u64) -> (T, T) {
    let p = index(p);
    let mut csc = CompensatedSum::new();
    let mut cot = CompensatedSum::new();
    for k in 1..p {
        let (s, c) = T::sin_cos_pi(k, p);
        let r = recip(s);
        csc.add(r);
        cot.add(T::from_int(k) * c * r);
    }
    (csc.value(), cot.value())
}

/// `K_p`.
pub fn tangent_sum<T: Real>(p: u64) -> T {
    let p = index(p);
    (1..p)
        .map(|k| {
            let (s, c) = T::sin_cos_pi(k, 2 * p);
            s / c
        })
        .collect::<CompensatedSum<T>>()
        .value()
}

/// `K̃_p`.
pub fn cot_half_sum<T: Real>(p: u64) -> T {
    let p = index(p);
    (1..p)
        .map(|k| {
            let (s, c) = T::sin_cos_pi(k, 2 * p);
            c / s
        })
        .collect::<CompensatedSum<T>>()
        .value()
}

/// `L_p`.
pub fn weighted_cosecant_sum<T: Real>(p: u64) -> T {
    let p = index(p);
    (1..p)
        .map(|k| T::from_int(k) / T::sin_cos_pi(k, p).0)
        .collect::<CompensatedSum<T>>()
        .value()
}

/// `M_p`; the term with `2k − 1 = p` is an exact zero.
pub fn odd_cotangent_sum<T: Real>(p: u64) -> T {
    let p = index(p);
    (1..=p)
        .map(|k| {
            let j = 2 * k - 1;
            let (s, c) = T::sin_cos_pi(j, 2 * p);
            T::from_int(j) * c / s
        })
        .collect::<CompensatedSum<T>>()
        .value()
}

fn check_power(power: u32) -> Result<()> {
    if power == 2 || power == 4 {
        Ok(())
    } else {
        Err(Error::Domain(format!(
            "secant power sums are available for powers 2 and 4, not {power}"
        )))
    }
}

/// `Σ_{k=1}^{p−1} sec^power(kπ/2p)` for `power ∈ {2, 4}`.
pub fn secant_power_sum<T: Real>(p: u64, power: u32) -> Result<T> {
    check_power(power)?;
    let p = index(p);
    Ok((1..p)
        .map(|k| {
            let c = T::sin_cos_pi(k, 2 * p).1;
            let sec2 = recip(c * c);
            if power == 2 {
                sec2
            } else {
                sec2 * sec2
            }
        })
        .collect::<CompensatedSum<T>>()
        .value())
}

/// Exact value of [`secant_power_sum`]: `(2/3)(p²−1)` or
/// `(4/45)(2p⁴+5p²−7)`.
pub fn closed_form_secant_power_exact(p: u64, power: u32) -> Result<BigRational> {
    check_power(power)?;
    let p = BigInt::from(p);
    let p2 = &p * &p;
    Ok(if power == 2 {
        BigRational::new(2 * (&p2 - 1), 3.into())
    } else {
        BigRational::new(4 * (2 * &p2 * &p2 + 5 * &p2 - 7), 45.into())
    })
}

pub fn closed_form_secant_power<T: Real>(p: u64, power: u32) -> Result<T> {
    closed_form_secant_power_exact(p, power).map(|r| T::from_rational(&r))
}

/// `Σ_{k=1}^{p} sec(2kπ/(2p+1))`.
pub fn kou_secant_sum<T: Real>(p: u64) -> T {
    let p = index(p);
    (1..=p)
        .map(|k| recip(T::sin_cos_pi(2 * k, 2 * p + 1).1))
        .collect::<CompensatedSum<T>>()
        .value()
}

/// `p` for even `p`, `−p−1` for odd `p`.
pub fn kou_closed_form(p: u64) -> i64 {
    let p = index(p);
    if p % 2 == 0 {
        p
    } else {
        -p - 1
    }
}
