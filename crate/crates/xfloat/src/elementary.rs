//! Elementary functions shared by the multi-word backends.
//!
//! Everything here is written against basic arithmetic on the backend type
//! plus a per-type cache of constants and tables. Accuracy target is a few
//! units of the backend's epsilon for arguments of moderate size.

use std::ops::{Add, Div, Mul, Neg, Sub};

use num_rational::BigRational;

use crate::decimal::parse_rational;

const PI_DIGITS: &str = "3.14159265358979323846264338327950288419716939937510582097494459230781640628620899862803482534211706798";
const LN2_DIGITS: &str = "0.69314718055994530941723212145817656807550013436025525412068000949339362196969471560586332699641868754";

/// Table of `sin(kπ/32)`, `cos(kπ/32)` for `k = 0..=8`.
const TABLE_STEPS: usize = 8;

pub(crate) trait Multiword:
    Copy
    + PartialOrd
    + Add<Output = Self>
    + Sub<Output = Self>
    + Mul<Output = Self>
    + Div<Output = Self>
    + Neg<Output = Self>
    + 'static
{
    /// Unit roundoff as a double.
    const UNIT: f64;
    /// Newton steps needed from a double-precision seed.
    const NEWTON_STEPS: usize;

    fn word(x: f64) -> Self;
    fn leading(self) -> f64;
    fn scale2(self, e: i32) -> Self;
    fn mul_f64(self, b: f64) -> Self;
    fn from_exact_rational(r: &BigRational) -> Self;
    fn cache() -> &'static Cache<Self>;
}

pub(crate) struct Cache<T> {
    pub pi: T,
    pub half_pi: T,
    pub ln2: T,
    /// `1/n!` for `n = 0..`.
    inv_fact: Vec<T>,
    table: Vec<(T, T)>,
    /// Taylor degree bound for |t| <= π/64.
    small_terms: usize,
    /// Taylor degree bound for the exp kernel.
    exp_terms: usize,
}

impl<T: Multiword> Cache<T> {
    pub fn build() -> Self {
        let pi = T::from_exact_rational(&parse_rational(PI_DIGITS).expect("pi literal"));
        let ln2 = T::from_exact_rational(&parse_rational(LN2_DIGITS).expect("ln2 literal"));
        let target = T::UNIT / 16.0;
        let mut inv_fact = vec![T::word(1.0)];
        for n in 1..80u32 {
            let prev = *inv_fact.last().expect("nonempty");
            inv_fact.push(prev / T::word(n as f64));
        }
        let degree_for = |x: f64| -> usize {
            // first n with x^n / n! below target, relative to x
            let mut term = 1.0f64;
            let mut n = 1usize;
            loop {
                term *= x / n as f64;
                if term < target || n + 2 >= inv_fact.len() {
                    return n;
                }
                n += 1;
            }
        };
        let small_terms = degree_for(std::f64::consts::PI / 64.0) + 1;
        let wide_terms = degree_for(std::f64::consts::PI / 4.0) + 1;
        let exp_terms = degree_for(std::f64::consts::LN_2 / 2048.0) + 1;
        let mut cache = Cache {
            pi,
            half_pi: pi.scale2(-1),
            ln2,
            inv_fact,
            table: Vec::new(),
            small_terms,
            exp_terms,
        };
        let step = pi.scale2(-5);
        let table = (0..=TABLE_STEPS)
            .map(|k| taylor_sin_cos(&cache, step.mul_f64(k as f64), wide_terms))
            .collect();
        cache.table = table;
        cache
    }
}

/// Taylor sums of `sin t` and `cos t` truncated after degree `degree`.
fn taylor_sin_cos<T: Multiword>(cache: &Cache<T>, t: T, degree: usize) -> (T, T) {
    let t2 = t * t;
    let mut top = degree;
    if top.is_multiple_of(2) {
        top += 1;
    }
    // sin: t * Σ (-1)^i t^{2i} / (2i+1)!
    let mut s = T::word(0.0);
    let mut i = top;
    loop {
        let sign = if ((i - 1) / 2).is_multiple_of(2) { 1.0 } else { -1.0 };
        s = s * t2 + cache.inv_fact[i].mul_f64(sign);
        if i == 1 {
            break;
        }
        i -= 2;
    }
    let s = s * t;
    let mut c = T::word(0.0);
    let mut i = top + 1;
    loop {
        let sign = if (i / 2).is_multiple_of(2) { 1.0 } else { -1.0 };
        c = c * t2 + cache.inv_fact[i].mul_f64(sign);
        if i == 0 {
            break;
        }
        i -= 2;
    }
    (s, c)
}

pub(crate) fn sin_cos<T: Multiword>(x: T) -> (T, T) {
    let zero = T::word(0.0);
    let one = T::word(1.0);
    if x == zero {
        return (zero, one);
    }
    let cache = T::cache();
    let q = (x.leading() / std::f64::consts::FRAC_PI_2).round();
    let r = x - cache.half_pi.mul_f64(q);
    let k = (r.leading() * 32.0 / std::f64::consts::PI).round();
    let t = r - cache.pi.scale2(-5).mul_f64(k);
    let (st, ct) = taylor_sin_cos(cache, t, cache.small_terms);
    let idx = (k.abs() as usize).min(TABLE_STEPS);
    let (mut sk, ck) = cache.table[idx];
    if k < 0.0 {
        sk = -sk;
    }
    let s = sk * ct + ck * st;
    let c = ck * ct - sk * st;
    match (q as i64).rem_euclid(4) {
        0 => (s, c),
        1 => (c, -s),
        2 => (-s, -c),
        _ => (-c, s),
    }
}

pub(crate) fn exp<T: Multiword>(x: T) -> T {
    let lead = x.leading();
    if lead.is_nan() {
        return x;
    }
    if lead > 709.0 {
        return T::word(f64::INFINITY);
    }
    if lead < -745.0 {
        return T::word(0.0);
    }
    if lead == 0.0 {
        return T::word(1.0);
    }
    let cache = T::cache();
    let k = (lead / std::f64::consts::LN_2).round();
    let r = x - cache.ln2.mul_f64(k);
    let s = r.scale2(-10);
    // expm1(s) = s * Σ_{n>=1} s^{n-1}/n!
    let mut acc = T::word(0.0);
    for n in (1..=cache.exp_terms).rev() {
        acc = acc * s + cache.inv_fact[n];
    }
    let mut e = acc * s;
    let two = T::word(2.0);
    for _ in 0..10 {
        e = e * (e + two);
    }
    (e + T::word(1.0)).scale2(k as i32)
}

pub(crate) fn ln<T: Multiword>(x: T) -> T {
    let lead = x.leading();
    if lead.is_nan() || lead < 0.0 {
        return T::word(f64::NAN);
    }
    if lead == 0.0 {
        return T::word(f64::NEG_INFINITY);
    }
    if lead.is_infinite() {
        return x;
    }
    let one = T::word(1.0);
    let mut y = T::word(lead.ln());
    for _ in 0..T::NEWTON_STEPS {
        y = y + x * exp(-y) - one;
    }
    y
}

pub(crate) fn sqrt<T: Multiword>(x: T) -> T {
    let lead = x.leading();
    if lead == 0.0 {
        return T::word(0.0);
    }
    if lead < 0.0 || lead.is_nan() {
        return T::word(f64::NAN);
    }
    let mut y = T::word(lead.sqrt());
    for _ in 0..T::NEWTON_STEPS {
        y = (y + x / y).scale2(-1);
    }
    y
}
