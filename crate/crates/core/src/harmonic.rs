//! Harmonic numbers and the series `C_p`, `D_p`, `E_p`.
//!
//! `C_p = Σ_{n≥1} c_{pn}`, `D_p = Σ_{n≥1} (−1)^{n−1} d_{pn}` and
//! `E_p = Σ_{n≥0} (−1)^n (H_{p(n+1)} − H_{pn})`, where
//! `c_n = H_n − ln n − γ − 1/(2n)` and `d_n = c_n + 1/(2n)`.
//!
//! C and D are summed directly for `N` terms. Past `N` the terms are
//! replaced by the first `m − 1` terms of the expansion of `c_n`, whose
//! contributions are summed in closed form through zeta/eta tails; what is
//! left has a known sign and a bound from the expansion's remainder
//! estimate. `m = 1` is the plain `1/(12p²N)` tail bound.

use serde::Serialize;
use xfloat::Real;

use crate::error::{Error, Result};
use crate::precision::{recip, CompensatedSum, Context};

/// Smallest number of directly summed terms, whatever the tail order.
const MIN_HEAD: u64 = 8;

#[derive(Clone, Copy, Debug, Serialize)]
pub struct SeriesResult<T> {
    pub value: T,
    /// Certified bound on `|value − true sum|` from truncation.
    pub tail_bound: T,
    pub terms_used: u64,
}

impl<T: Real> SeriesResult<T> {
    pub fn lower(&self) -> T {
        self.value - self.tail_bound
    }

    pub fn upper(&self) -> T {
        self.value + self.tail_bound
    }
}

/// Running `H_n`, advanced one reciprocal at a time.
#[derive(Clone, Copy, Debug)]
pub struct HarmonicState<T> {
    n: u64,
    sum: CompensatedSum<T>,
}

impl<T: Real> Default for HarmonicState<T> {
    fn default() -> Self {
        Self::new()
    }
}

impl<T: Real> HarmonicState<T> {
    pub fn new() -> Self {
        Self {
            n: 0,
            sum: CompensatedSum::new(),
        }
    }

    pub fn n(&self) -> u64 {
        self.n
    }

    pub fn value(&self) -> T {
        self.sum.value()
    }

    pub fn advance(&mut self) {
        self.n += 1;
        self.sum.add(T::one() / from_u64::<T>(self.n));
    }

    /// Moves forward to `H_target`; never goes backwards.
    pub fn advance_to(&mut self, target: u64) -> T {
        while self.n < target {
            self.advance();
        }
        self.value()
    }
}

fn from_u64<T: Real>(n: u64) -> T {
    T::from_int(i64::try_from(n).expect("index fits in i64"))
}

pub fn harmonic<T: Real>(n: u64) -> T {
    HarmonicState::new().advance_to(n)
}

/// `c_n = H_n − ln n − γ − 1/(2n)`.
pub fn c_term<T: Real>(ctx: &Context<T>, n: u64) -> T {
    let h = harmonic::<T>(n);
    c_from_harmonic(ctx, h, n)
}

/// `d_n = H_n − ln n − γ`.
pub fn d_term<T: Real>(ctx: &Context<T>, n: u64) -> T {
    let nn = from_u64::<T>(n);
    harmonic::<T>(n) - nn.ln() - ctx.constants.euler_gamma
}

fn c_from_harmonic<T: Real>(ctx: &Context<T>, h: T, n: u64) -> T {
    let nn = from_u64::<T>(n);
    h - nn.ln() - ctx.constants.euler_gamma - recip(nn.mul_pow2(1))
}

fn check_args<T: Real>(ctx: &Context<T>, p: u64, tol: f64) -> Result<()> {
    if p == 0 {
        return Err(Error::Domain("p must be at least 1".into()));
    }
    if !(tol > 0.0 && tol.is_finite()) {
        return Err(Error::Domain(format!("tolerance must be positive, got {tol}")));
    }
    let floor = ctx.noise_floor();
    if tol < floor {
        return Err(Error::Precision { tol, floor });
    }
    Ok(())
}

/// Picks the tail order `m` and head length `N` minimizing work, given
/// `ln N_m` for each order. Work is about `N·p` reciprocals.
fn plan(p: u64, k_max: usize, ln_needed: impl Fn(usize) -> f64) -> (usize, u64) {
    let mut best: Option<(f64, usize, u64)> = None;
    for m in 1..=k_max {
        let ln_n = ln_needed(m);
        if ln_n > 40.0 {
            continue;
        }
        let n = (ln_n.exp().ceil() as u64).max(MIN_HEAD);
        let cost = n as f64 * (p as f64 + 4.0 * m as f64);
        if best.is_none_or(|(c, _, _)| cost < c) {
            best = Some((cost, m, n));
        }
    }
    let (_, m, n) = best.unwrap_or((0.0, 1, u64::MAX));
    (m, n)
}

fn ln_abs_bernoulli<T: Real>(ctx: &Context<T>, m: usize) -> f64 {
    ctx.bernoulli.get(m).expect("m within table").hi().abs().ln()
}

/// Highest usable tail order. The tails `ζ(2k) − Σ_{n≤N} n^{−2k}` are
/// formed by subtraction and carry an absolute error of about one ulp,
/// which the expansion scales by `|b_{2k}|/(2k p^{2k})`; orders whose
/// correction would need a weight above one are skipped.
fn max_order<T: Real>(ctx: &Context<T>, p: u64) -> usize {
    let lp = (p as f64).ln();
    let mut m = 1;
    while m < ctx.bernoulli.k_max() {
        let k = m as f64;
        if ln_abs_bernoulli(ctx, m) - (2.0 * k).ln() - 2.0 * k * lp > 0.0 {
            break;
        }
        m += 1;
    }
    m
}

struct Partial<T> {
    /// Sum of everything except the sign-known remainder.
    body: T,
    /// Remainder lies strictly between zero and `sign·bound`.
    bound: T,
    sign_negative: bool,
}

impl<T: Real> Partial<T> {
    fn midpoint(&self) -> SeriesResult<T> {
        let half = self.bound.mul_pow2(-1);
        let value = if self.sign_negative {
            self.body - half
        } else {
            self.body + half
        };
        SeriesResult {
            value,
            tail_bound: half,
            terms_used: 0,
        }
    }
}

fn budget_error<T: Real>(r: &SeriesResult<T>, budget: u64) -> Error {
    Error::Budget {
        budget,
        lower: r.lower().to_string(),
        upper: r.upper().to_string(),
    }
}

/// Direct sums over `n ≤ N` of `c_{pn}` (alternating or not), along with
/// the matching partial sums of `n^{−2k}`, `k < m`.
fn head<T: Real>(ctx: &Context<T>, p: u64, m: usize, n_max: u64, alternating: bool) -> (T, Vec<T>) {
    let mut h = HarmonicState::<T>::new();
    let mut sum = CompensatedSum::new();
    let mut powers: Vec<CompensatedSum<T>> = vec![CompensatedSum::new(); m.saturating_sub(1)];
    for n in 1..=n_max {
        let hn = h.advance_to(p * n);
        let c = c_from_harmonic(ctx, hn, p * n);
        let negative = alternating && n % 2 == 0;
        sum.add(if negative { -c } else { c });
        let nn = from_u64::<T>(n);
        let inv2 = recip(nn * nn);
        let mut pw = inv2;
        for acc in powers.iter_mut() {
            acc.add(if negative { -pw } else { pw });
            pw *= inv2;
        }
    }
    (sum.value(), powers.iter().map(|s| s.value()).collect())
}

/// `Σ_{k<m} b_{2k}/(2k p^{2k}) · tail_k`.
fn expansion_tail<T: Real>(ctx: &Context<T>, p: u64, tails: &[T]) -> T {
    let pp = from_u64::<T>(p);
    let inv_p2 = recip(pp * pp);
    let mut scale = inv_p2;
    let mut acc = CompensatedSum::new();
    for (i, tail) in tails.iter().enumerate() {
        let k = i + 1;
        let b = ctx.bernoulli.get(k).expect("k within table");
        acc.add(b * scale * *tail / T::from_int(2 * k as i64));
        scale *= inv_p2;
    }
    acc.value()
}

fn c_partial<T: Real>(ctx: &Context<T>, p: u64, m: usize, n: u64) -> Partial<T> {
    let (head_sum, powers) = head(ctx, p, m, n, false);
    let tails: Vec<T> = powers
        .iter()
        .enumerate()
        .map(|(i, s)| ctx.zeta.zeta(i + 1).expect("k within table") - *s)
        .collect();
    let body = head_sum - expansion_tail(ctx, p, &tails);
    // Σ_{n>N} n^{−2m} < 1/((2m−1) N^{2m−1})
    let b = ctx.bernoulli.get(m).expect("m within table").abs();
    let pp = from_u64::<T>(p);
    let nn = from_u64::<T>(n);
    let two_m = 2 * m as i32;
    let bound = b
        / (T::from_int(two_m as i64)
            * pp.powi(two_m)
            * T::from_int(two_m as i64 - 1)
            * nn.powi(two_m - 1));
    Partial {
        body,
        bound,
        sign_negative: m % 2 == 1,
    }
}

/// `C_p` to within `tol`.
pub fn c_series<T: Real>(ctx: &Context<T>, p: u64, tol: f64) -> Result<SeriesResult<T>> {
    check_args(ctx, p, tol)?;
    let k_max = max_order(ctx, p);
    let lp = (p as f64).ln();
    let (m, n) = plan(p, k_max, |m| {
        let mf = m as f64;
        (ln_abs_bernoulli(ctx, m) - (4.0 * mf * (2.0 * mf - 1.0)).ln() - 2.0 * mf * lp - tol.ln())
            / (2.0 * mf - 1.0)
    });
    run_certified(ctx, n, tol, |n| c_partial(ctx, p, m, n))
}

fn d_partial<T: Real>(ctx: &Context<T>, p: u64, m: usize, n: u64) -> Partial<T> {
    let (head_sum, powers) = head(ctx, p, m, n, true);
    let tails: Vec<T> = powers
        .iter()
        .enumerate()
        .map(|(i, s)| ctx.zeta.eta(i + 1).expect("k within table") - *s)
        .collect();
    let pp = from_u64::<T>(p);
    let body = ctx.constants.ln2 / pp.mul_pow2(1) + head_sum - expansion_tail(ctx, p, &tails);
    // alternating remainder: first omitted term, sign (−1)^{m+N}
    let b = ctx.bernoulli.get(m).expect("m within table").abs();
    let two_m = 2 * m as i32;
    let bound = b / (T::from_int(two_m as i64) * (pp * from_u64::<T>(n + 1)).powi(two_m));
    Partial {
        body,
        bound,
        sign_negative: (m as u64 + n) % 2 == 1,
    }
}

/// `D_p` to within `tol`.
pub fn d_series<T: Real>(ctx: &Context<T>, p: u64, tol: f64) -> Result<SeriesResult<T>> {
    check_args(ctx, p, tol)?;
    let k_max = max_order(ctx, p);
    let lp = (p as f64).ln();
    let (m, n) = plan(p, k_max, |m| {
        let mf = m as f64;
        let ln_n1 = (ln_abs_bernoulli(ctx, m) - (4.0 * mf).ln() - tol.ln()) / (2.0 * mf) - lp;
        // bound is in N + 1
        ln_n1.exp().max(1.0).ln()
    });
    run_certified(ctx, n, tol, |n| d_partial(ctx, p, m, n))
}

/// Evaluates at the planned `N`, nudging it up if rounding in the plan left
/// the bound a hair above `tol`.
fn run_certified<T: Real>(
    ctx: &Context<T>,
    planned: u64,
    tol: f64,
    eval: impl Fn(u64) -> Partial<T>,
) -> Result<SeriesResult<T>> {
    let budget = ctx.max_terms();
    let tol_t = T::from_f64(tol).expect("finite tolerance");
    let mut n = planned;
    loop {
        if n > budget {
            let mut r = eval(budget).midpoint();
            r.terms_used = budget;
            return Err(budget_error(&r, budget));
        }
        let mut r = eval(n).midpoint();
        r.terms_used = n;
        if r.tail_bound <= tol_t {
            return Ok(r);
        }
        n = n + n / 8 + 1;
    }
}

/// `E_p` to within `tol`, without going through `D_p`.
///
/// The terms `t_n = H_{p(n+1)} − H_{pn}` are moments `∫ u^n dμ` of a
/// positive measure of mass `H_p` on `[0, 1]`. Averaging the partial sums
/// `S_0..S_K` `K` times gives `A_K` with
/// `E_p − A_K = −∫ u(1−u)^K / (2^K (1+u)) dμ`, which lies in
/// `(−H_p/((K+1) 2^K), 0)`.
pub fn e_series<T: Real>(ctx: &Context<T>, p: u64, tol: f64) -> Result<SeriesResult<T>> {
    check_args(ctx, p, tol)?;
    let h_p = (p as f64).ln() + 1.0;
    let mut k: u64 = 1;
    while ((k + 1) as f64) * 2f64.powi(k as i32 + 1) < h_p / tol {
        k += 1;
    }
    let budget = ctx.max_terms();
    loop {
        let terms = k + 1;
        if terms > budget {
            let r = euler_average::<T>(p, budget - 1);
            return Err(budget_error(&r, budget));
        }
        let r = euler_average::<T>(p, k);
        if r.tail_bound <= T::from_f64(tol).expect("finite tolerance") {
            return Ok(r);
        }
        k += 1;
    }
}

fn euler_average<T: Real>(p: u64, k: u64) -> SeriesResult<T> {
    let mut partial = Vec::with_capacity(k as usize + 1);
    let mut s = CompensatedSum::new();
    let mut first = T::zero();
    for n in 0..=k {
        let block: CompensatedSum<T> = (p * n + 1..=p * (n + 1))
            .map(|j| recip(from_u64::<T>(j)))
            .collect();
        let t = block.value();
        if n == 0 {
            first = t;
        }
        s.add(if n % 2 == 0 { t } else { -t });
        partial.push(s.value());
    }
    let (lo_raw, hi_raw) = {
        let a = partial[partial.len() - 1];
        let b = if partial.len() > 1 { partial[partial.len() - 2] } else { T::zero() };
        if a < b { (a, b) } else { (b, a) }
    };
    for level in 0..k as usize {
        for i in 0..partial.len() - 1 - level {
            partial[i] = (partial[i] + partial[i + 1]).mul_pow2(-1);
        }
    }
    let averaged = partial[0];
    let bound = first / (from_u64::<T>(k + 1) * T::one().mul_pow2(k as i32));
    let half = bound.mul_pow2(-1);
    let value = averaged - half;
    debug_assert!(k == 0 || (value > lo_raw && value < hi_raw));
    SeriesResult {
        value,
        tail_bound: half,
        terms_used: k + 1,
    }
}
