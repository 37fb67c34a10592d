//! Truncated asymptotic expansions with guaranteed two-sided brackets.
//!
//! Each expansion alternates in sign term by term in a way that makes the
//! truncation error sign-definite: stopping after an even number of terms
//! overshoots, after an odd number undershoots. The bracket endpoints are
//! the truncations at consecutive orders, widened by a few ulps so their
//! own rounding cannot void the enclosure.

use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::One;
use serde::Serialize;
use xfloat::Real;

use crate::error::{Error, Result};
use crate::harmonic::harmonic;
use crate::precision::{recip, CompensatedSum, Context};
use crate::trig::cotangent_sum;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
pub enum Target {
    H,
    C,
    D,
    I,
    J,
}

impl Target {
    pub const ALL: [Target; 5] = [Target::H, Target::C, Target::D, Target::I, Target::J];

    pub fn name(self) -> &'static str {
        match self {
            Target::H => "H",
            Target::C => "C",
            Target::D => "D",
            Target::I => "I",
            Target::J => "J",
        }
    }

    /// True when the truncation parameter is `n` (pairs of terms) rather
    /// than the order `m`.
    pub fn takes_pairs(self) -> bool {
        matches!(self, Target::I | Target::J)
    }

    /// Dispatches to the matching expansion; `size` is `n` for `H` and `p`
    /// otherwise.
    pub fn expand<T: Real>(
        self,
        ctx: &Context<T>,
        size: u64,
        truncation: usize,
    ) -> Result<ExpansionResult<T>> {
        match self {
            Target::H => h_expansion(ctx, size, truncation),
            Target::C => c_expansion(ctx, size, truncation),
            Target::D => d_expansion(ctx, size, truncation),
            Target::I => i_expansion(ctx, size, truncation),
            Target::J => j_expansion(ctx, size, truncation),
        }
    }
}

impl fmt::Display for Target {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Target {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Target::ALL
            .into_iter()
            .find(|t| t.name().eq_ignore_ascii_case(s))
            .ok_or_else(|| Error::Domain(format!("unknown expansion target `{s}`")))
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum Diagnostic {
    /// The truncation exceeds `max(1, 3·size)`, past which the divergent
    /// series usually stops helping.
    BeyondTruncationGuard { limit: u64 },
    /// One more order would give a wider bracket.
    NextBracketWider,
}

#[derive(Clone, Debug, Serialize)]
pub struct ExpansionResult<T> {
    pub truncated_value: T,
    pub lower: T,
    pub upper: T,
    /// `m` for H, C, D; `n` for I, J.
    pub terms: usize,
    pub target: Target,
    pub diagnostics: Vec<Diagnostic>,
}

impl<T: Real> ExpansionResult<T> {
    pub fn width(&self) -> T {
        self.upper - self.lower
    }

    pub fn contains(&self, x: T) -> bool {
        self.lower < x && x < self.upper
    }
}

const GUARD_FACTOR: u64 = 3;

/// Builds the result from the truncated value and the signed offset to the
/// other endpoint.
fn bracket<T: Real>(
    target: Target,
    terms: usize,
    truncated: T,
    offset: T,
    guard: (usize, u64),
    next_wider: bool,
) -> ExpansionResult<T> {
    let other = truncated + offset;
    let (lo, hi) = if offset < T::zero() {
        (other, truncated)
    } else {
        (truncated, other)
    };
    let slack = T::epsilon().mul_pow2(2) * lo.abs().max(hi.abs());
    let mut diagnostics = Vec::new();
    let (used, size) = guard;
    let limit = (GUARD_FACTOR * size).max(1);
    if used as u64 > limit {
        diagnostics.push(Diagnostic::BeyondTruncationGuard { limit });
    }
    if next_wider {
        diagnostics.push(Diagnostic::NextBracketWider);
    }
    ExpansionResult {
        truncated_value: truncated,
        lower: lo - slack,
        upper: hi + slack,
        terms,
        target,
        diagnostics,
    }
}

fn require_positive(name: &str, v: u64) -> Result<()> {
    if v == 0 {
        Err(Error::Domain(format!("{name} must be at least 1")))
    } else {
        Ok(())
    }
}

fn from_u64<T: Real>(n: u64) -> T {
    T::from_int(i64::try_from(n).expect("size fits in i64"))
}

/// `Σ_{k=1}^{m−1} b_{2k} w_k / (2k x^{2k})`, with `w_k` supplied.
fn bernoulli_series<T: Real>(
    ctx: &Context<T>,
    x: T,
    m: usize,
    weight: impl Fn(usize) -> Result<T>,
) -> Result<T> {
    let inv_x2 = T::one() / (x * x);
    let mut scale = inv_x2;
    let mut acc = CompensatedSum::new();
    for k in 1..m {
        let b = ctx.bernoulli.get(k)?;
        acc.add(b * weight(k)? * scale / T::from_int(2 * k as i64));
        scale *= inv_x2;
    }
    Ok(acc.value())
}

/// `|b_{2m}| w_m / (2m x^{2m})`.
fn remainder_width<T: Real>(ctx: &Context<T>, x: T, m: usize, w: T) -> Result<T> {
    let b = ctx.bernoulli.get(m)?.abs();
    Ok(b * w / (T::from_int(2 * m as i64) * x.powi(2 * m as i32)))
}

fn next_wider_by_order<T: Real>(
    ctx: &Context<T>,
    m: usize,
    width_at: impl Fn(usize) -> Result<T>,
) -> Result<bool> {
    if m + 1 > ctx.bernoulli.k_max() {
        return Ok(false);
    }
    Ok(width_at(m + 1)? > width_at(m)?)
}

/// `ln n + γ + 1/(2n) − Σ_{k<m} b_{2k}/(2k n^{2k})`, bracketing `H_n`.
pub fn h_expansion<T: Real>(ctx: &Context<T>, n: u64, m: usize) -> Result<ExpansionResult<T>> {
    require_positive("n", n)?;
    require_positive("m", m as u64)?;
    ctx.bernoulli.get(m)?;
    let x = from_u64::<T>(n);
    let c = &ctx.constants;
    let truncated = x.ln() + c.euler_gamma + recip(x.mul_pow2(1))
        - bernoulli_series(ctx, x, m, |_| Ok(T::one()))?;
    let width_at = |m: usize| remainder_width(ctx, x, m, T::one());
    let w = width_at(m)?;
    // H_n − truncated = (−1)^m R with 0 < R < w
    let offset = if m % 2 == 1 { -w } else { w };
    let wider = next_wider_by_order(ctx, m, width_at)?;
    Ok(bracket(Target::H, m, truncated, offset, (m, n), wider))
}

/// `−Σ_{k<m} b_{2k} ζ(2k)/(2k p^{2k})`, bracketing `C_p`.
pub fn c_expansion<T: Real>(ctx: &Context<T>, p: u64, m: usize) -> Result<ExpansionResult<T>> {
    require_positive("p", p)?;
    require_positive("m", m as u64)?;
    ctx.bernoulli.get(m)?;
    let x = from_u64::<T>(p);
    let truncated = -bernoulli_series(ctx, x, m, |k| ctx.zeta.zeta(k))?;
    let width_at = |m: usize| remainder_width(ctx, x, m, ctx.zeta.zeta(m)?);
    let w = width_at(m)?;
    let offset = if m % 2 == 1 { -w } else { w };
    let wider = next_wider_by_order(ctx, m, width_at)?;
    Ok(bracket(Target::C, m, truncated, offset, (m, p), wider))
}

/// `ln2/(2p) − Σ_{k<m} b_{2k} η(2k)/(2k p^{2k})`, bracketing `D_p`.
pub fn d_expansion<T: Real>(ctx: &Context<T>, p: u64, m: usize) -> Result<ExpansionResult<T>> {
    require_positive("p", p)?;
    require_positive("m", m as u64)?;
    ctx.bernoulli.get(m)?;
    let x = from_u64::<T>(p);
    let truncated =
        ctx.constants.ln2 / x.mul_pow2(1) - bernoulli_series(ctx, x, m, |k| ctx.zeta.eta(k))?;
    let width_at = |m: usize| remainder_width(ctx, x, m, ctx.zeta.eta(m)?);
    let w = width_at(m)?;
    let offset = if m % 2 == 1 { -w } else { w };
    let wider = next_wider_by_order(ctx, m, width_at)?;
    Ok(bracket(Target::D, m, truncated, offset, (m, p), wider))
}

/// Exact `(2^{2k} − 2) b_{2k}² / (k·(2k)!)`.
fn cosecant_coefficient<T: Real>(ctx: &Context<T>, k: usize) -> Result<BigRational> {
    let b = ctx.bernoulli.exact(k)?;
    let pow = (BigInt::one() << (2 * k)) - 2;
    Ok(BigRational::from_integer(pow) * b * b / BigRational::from_integer(k_fact(k)))
}

/// Exact `b_{2k}² / (k·(2k)!)`.
fn cotangent_coefficient<T: Real>(ctx: &Context<T>, k: usize) -> Result<BigRational> {
    let b = ctx.bernoulli.exact(k)?;
    Ok(b * b / BigRational::from_integer(k_fact(k)))
}

/// `k·(2k)!`
fn k_fact(k: usize) -> BigInt {
    (1..=2 * k).fold(BigInt::from(k), |acc, j| acc * BigInt::from(j))
}

fn pair_bracket<T: Real>(
    ctx: &Context<T>,
    target: Target,
    p: u64,
    n: usize,
    main: T,
    term: impl Fn(usize) -> Result<T>,
) -> Result<ExpansionResult<T>> {
    let used = 2 * n + 1;
    ctx.bernoulli.get(used)?;
    let mut acc = CompensatedSum::new();
    acc.add(main);
    for k in 1..=2 * n {
        acc.add(term(k)?);
    }
    let upper = acc.value();
    let last = term(used)?;
    let wider = if used + 2 <= ctx.bernoulli.k_max() {
        term(used + 2)?.abs() > last.abs()
    } else {
        false
    };
    Ok(bracket(target, n, upper, last, (used, p), wider))
}

/// Bracket for `I_p` from `2n` (upper) and `2n + 1` (lower) correction
/// terms added to `(2p/π)(ln p + γ − ln(π/2))`.
pub fn i_expansion<T: Real>(ctx: &Context<T>, p: u64, n: usize) -> Result<ExpansionResult<T>> {
    require_positive("p", p)?;
    ctx.bernoulli.get(2 * n + 1)?;
    let c = &ctx.constants;
    let x = from_u64::<T>(p);
    let main = x.mul_pow2(1) / c.pi * (x.ln() + c.euler_gamma - c.ln_pi_over_2);
    let ratio = c.pi / x;
    let term = |k: usize| -> Result<T> {
        let v = T::from_rational(&cosecant_coefficient(ctx, k)?) * ratio.powi(2 * k as i32 - 1);
        Ok(if k % 2 == 1 { -v } else { v })
    };
    pair_bracket(ctx, Target::I, p, n, main, term)
}

/// `(1/π)(−p² ln p + (ln 2π − γ)p² − p)`.
pub fn j_main_term<T: Real>(ctx: &Context<T>, p: u64) -> T {
    let c = &ctx.constants;
    let x = from_u64::<T>(p);
    let p2 = x * x;
    (-p2 * x.ln() + (c.ln_2pi - c.euler_gamma) * p2 - x) / c.pi
}

/// Bracket for `J_p` from `2n` (upper) and `2n + 1` (lower) correction
/// terms `2π (−1)^k b_{2k}²/(k(2k)!) (2π/p)^{2k−2}`.
pub fn j_expansion<T: Real>(ctx: &Context<T>, p: u64, n: usize) -> Result<ExpansionResult<T>> {
    require_positive("p", p)?;
    ctx.bernoulli.get(2 * n + 1)?;
    let two_pi = ctx.constants.pi.mul_pow2(1);
    let ratio = two_pi / from_u64::<T>(p);
    let term = |k: usize| -> Result<T> {
        let v = T::from_rational(&cotangent_coefficient(ctx, k)?)
            * two_pi
            * ratio.powi(2 * k as i32 - 2);
        Ok(if k % 2 == 1 { -v } else { v })
    };
    pair_bracket(ctx, Target::J, p, n, j_main_term(ctx, p), term)
}

/// `θ_p = −πJ_p − p²H_p + ln(2π)p² − p/2`, which lies in `(0, 1)`.
pub fn j_harmonic_residual<T: Real>(ctx: &Context<T>, p: u64) -> Result<T> {
    require_positive("p", p)?;
    Ok(theta_from(ctx, p, cotangent_sum(p), harmonic(p)))
}

/// `θ_p` from already computed `J_p` and `H_p`.
pub fn theta_from<T: Real>(ctx: &Context<T>, p: u64, j: T, h: T) -> T {
    let c = &ctx.constants;
    let x = from_u64::<T>(p);
    let p2 = x * x;
    -c.pi * j - p2 * h + c.ln_2pi * p2 - x.mul_pow2(-1)
}
