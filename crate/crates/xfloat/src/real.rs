use std::fmt::{Debug, Display};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{FromPrimitive, Num, NumAssign, Signed, ToPrimitive, Zero};

/// Real scalar used by the numerical code.
///
/// The arithmetic surface comes from `num-traits`; the extra methods are the
/// handful of transcendental functions and exact conversions the callers
/// need. Implementations must be deterministic: identical inputs give
/// bit-identical outputs.
pub trait Real:
    Copy
    + Send
    + Sync
    + 'static
    + Debug
    + Display
    + Default
    + PartialOrd
    + Num
    + NumAssign
    + Signed
    + FromPrimitive
    + ToPrimitive
{
    /// Short backend name, e.g. `"f64"` or `"dd"`.
    const NAME: &'static str;

    /// Decimal digits the backend carries with per-operation relative error
    /// at most `10^(1 - DIGITS)`.
    const DIGITS: u32;

    /// Relative spacing of representable values near one.
    fn epsilon() -> Self;

    fn pi() -> Self;

    fn ln_2() -> Self;

    fn sqrt(self) -> Self;

    fn exp(self) -> Self;

    fn ln(self) -> Self;

    fn sin_cos(self) -> (Self, Self);

    /// `self * 2^exp`, exact barring overflow.
    fn mul_pow2(self, exp: i32) -> Self;

    fn floor(self) -> Self;

    /// Leading double of the value.
    fn hi(self) -> f64;

    /// Exact value as a rational.
    fn to_rational(self) -> BigRational;

    /// Nearest value (to within the backend's precision).
    fn from_rational(r: &BigRational) -> Self;

    fn from_int(n: i64) -> Self {
        if n.unsigned_abs() <= (1u64 << 53) {
            Self::from_f64(n as f64).expect("finite")
        } else {
            Self::from_rational(&BigRational::from_integer(BigInt::from(n)))
        }
    }

    fn ratio(num: i64, den: i64) -> Self {
        Self::from_int(num) / Self::from_int(den)
    }

    fn sin(self) -> Self {
        self.sin_cos().0
    }

    fn cos(self) -> Self {
        self.sin_cos().1
    }

    fn tan(self) -> Self {
        let (s, c) = self.sin_cos();
        s / c
    }

    fn powi(self, n: i32) -> Self {
        let mut base = if n < 0 { Self::one() / self } else { self };
        let mut e = n.unsigned_abs();
        let mut acc = Self::one();
        while e > 0 {
            if e & 1 == 1 {
                acc *= base;
            }
            e >>= 1;
            if e > 0 {
                base = base * base;
            }
        }
        acc
    }

    fn round(self) -> Self {
        (self + Self::from_f64(0.5).expect("finite")).floor()
    }

    fn max(self, other: Self) -> Self {
        if other > self {
            other
        } else {
            self
        }
    }

    fn min(self, other: Self) -> Self {
        if other < self {
            other
        } else {
            self
        }
    }

    /// `sin(πn/d)` and `cos(πn/d)` with the reduction done in integers.
    ///
    /// Multiples of `π/2` give exact zeros and ones; everything else is
    /// evaluated at a reduced angle in `(0, π/4]`.
    fn sin_cos_pi(num: i64, den: i64) -> (Self, Self) {
        assert!(den != 0, "zero denominator");
        let (mut n, mut d) = (num as i128, den as i128);
        if d < 0 {
            n = -n;
            d = -d;
        }
        // angle = π n/d, fold into [0, 2π)
        n = n.rem_euclid(2 * d);
        // octant arithmetic on 4n / d
        let (mut s_sign, mut c_sign) = (1i8, 1i8);
        if n >= d {
            n -= d;
            s_sign = -s_sign;
            c_sign = -c_sign;
        }
        // now angle in [0, π)
        if 2 * n > d {
            n = d - n;
            c_sign = -c_sign;
        }
        // angle in [0, π/2]
        let one = Self::one();
        let zero = Self::zero();
        let apply = |s: Self, c: Self| -> (Self, Self) {
            (
                if s_sign < 0 { -s } else { s },
                if c_sign < 0 { -c } else { c },
            )
        };
        if n == 0 {
            return apply(zero, one);
        }
        if 2 * n == d {
            return apply(one, zero);
        }
        let swap = 4 * n > d;
        if swap {
            // π/2 - angle = π (d - 2n) / (2d)
            let m = d - 2 * n;
            let dd = 2 * d;
            let (s, c) = reduced_sin_cos::<Self>(m, dd);
            apply(c, s)
        } else {
            let (s, c) = reduced_sin_cos::<Self>(n, d);
            apply(s, c)
        }
    }
}

fn reduced_sin_cos<T: Real>(n: i128, d: i128) -> (T, T) {
    let g = gcd(n, d);
    let (n, d) = (n / g, d / g);
    let angle = int128::<T>(n) * T::pi() / int128::<T>(d);
    angle.sin_cos()
}

fn int128<T: Real>(v: i128) -> T {
    match i64::try_from(v) {
        Ok(v) => T::from_int(v),
        Err(_) => T::from_rational(&BigRational::from_integer(BigInt::from(v))),
    }
}

fn gcd(mut a: i128, mut b: i128) -> i128 {
    a = a.abs();
    b = b.abs();
    while b != 0 {
        let t = a % b;
        a = b;
        b = t;
    }
    a.max(1)
}

impl Real for f64 {
    const NAME: &'static str = "f64";
    const DIGITS: u32 = 15;

    fn epsilon() -> Self {
        f64::EPSILON
    }

    fn pi() -> Self {
        std::f64::consts::PI
    }

    fn ln_2() -> Self {
        std::f64::consts::LN_2
    }

    fn sqrt(self) -> Self {
        f64::sqrt(self)
    }

    fn exp(self) -> Self {
        f64::exp(self)
    }

    fn ln(self) -> Self {
        f64::ln(self)
    }

    fn sin_cos(self) -> (Self, Self) {
        f64::sin_cos(self)
    }

    fn mul_pow2(self, exp: i32) -> Self {
        self * 2f64.powi(exp)
    }

    fn floor(self) -> Self {
        f64::floor(self)
    }

    fn hi(self) -> f64 {
        self
    }

    fn to_rational(self) -> BigRational {
        BigRational::from_float(self).expect("finite value")
    }

    fn from_rational(r: &BigRational) -> Self {
        if r.is_zero() {
            return 0.0;
        }
        r.to_f64().unwrap_or(f64::NAN)
    }
}
