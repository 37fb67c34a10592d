//! Double-double arithmetic: an unevaluated sum `hi + lo` of two doubles
//! with `|lo| <= ulp(hi) / 2`, about 106 significant bits.

use std::sync::OnceLock;

use num_rational::BigRational;
use num_traits::{ToPrimitive, Zero};

use crate::eft::{quick_two_sum, two_prod, two_sum};
use crate::elementary::{self, Cache, Multiword};
use crate::macros::multiword_boilerplate;
use crate::Real;

#[derive(Clone, Copy, Debug, Default)]
pub struct DoubleDouble {
    hi: f64,
    lo: f64,
}

impl DoubleDouble {
    pub const fn new(hi: f64, lo: f64) -> Self {
        Self { hi, lo }
    }

    /// Builds a normalized value from two doubles of arbitrary overlap.
    pub fn from_pair(a: f64, b: f64) -> Self {
        let (hi, lo) = two_sum(a, b);
        Self { hi, lo }
    }

    pub fn components(self) -> (f64, f64) {
        (self.hi, self.lo)
    }

    #[inline]
    fn word(x: f64) -> Self {
        Self { hi: x, lo: 0.0 }
    }

    #[inline]
    fn leading(self) -> f64 {
        self.hi
    }

    #[inline]
    fn is_zero_value(self) -> bool {
        self.hi == 0.0 && self.lo == 0.0
    }

    #[inline]
    fn plus(self, b: Self) -> Self {
        let (s1, s2) = two_sum(self.hi, b.hi);
        let (t1, t2) = two_sum(self.lo, b.lo);
        let s2 = s2 + t1;
        let (s1, s2) = quick_two_sum(s1, s2);
        let s2 = s2 + t2;
        let (hi, lo) = quick_two_sum(s1, s2);
        Self { hi, lo }
    }

    #[inline]
    fn minus(self, b: Self) -> Self {
        self.plus(b.negate())
    }

    #[inline]
    fn negate(self) -> Self {
        Self {
            hi: -self.hi,
            lo: -self.lo,
        }
    }

    #[inline]
    fn times(self, b: Self) -> Self {
        let (p, e) = two_prod(self.hi, b.hi);
        let e = e + (self.hi * b.lo + self.lo * b.hi);
        let (hi, lo) = quick_two_sum(p, e);
        Self { hi, lo }
    }

    #[inline]
    fn times_f64(self, b: f64) -> Self {
        let (p, e) = two_prod(self.hi, b);
        let e = e + self.lo * b;
        let (hi, lo) = quick_two_sum(p, e);
        Self { hi, lo }
    }

    #[inline]
    fn over(self, b: Self) -> Self {
        let q1 = self.hi / b.hi;
        let r = self.minus(b.times_f64(q1));
        let q2 = r.hi / b.hi;
        let r = r.minus(b.times_f64(q2));
        let q3 = r.hi / b.hi;
        let (q1, q2) = quick_two_sum(q1, q2);
        Self { hi: q1, lo: q2 }.plus(Self::word(q3))
    }

    fn floor_value(self) -> Self {
        let hi = self.hi.floor();
        if hi == self.hi {
            let lo = self.lo.floor();
            let (hi, lo) = quick_two_sum(hi, lo);
            Self { hi, lo }
        } else {
            Self { hi, lo: 0.0 }
        }
    }

    fn trunc_value(self) -> Self {
        if self.hi >= 0.0 {
            self.floor_value()
        } else {
            self.negate().floor_value().negate()
        }
    }

    fn rational(self) -> BigRational {
        let mut r = BigRational::zero();
        for c in [self.hi, self.lo] {
            if c != 0.0 {
                r += BigRational::from_float(c).expect("finite component");
            }
        }
        r
    }

    fn nearest(r: &BigRational) -> Self {
        let hi = r.to_f64().unwrap_or(f64::NAN);
        if !hi.is_finite() || hi == 0.0 {
            return Self::word(hi);
        }
        let rest = r - BigRational::from_float(hi).expect("finite");
        let lo = rest.to_f64().unwrap_or(0.0);
        let (hi, lo) = quick_two_sum(hi, lo);
        Self { hi, lo }
    }
}

multiword_boilerplate!(DoubleDouble);

static CACHE: OnceLock<Cache<DoubleDouble>> = OnceLock::new();

impl Multiword for DoubleDouble {
    const UNIT: f64 = 1.232_595_164_407_831e-32; // 2^-106
    const NEWTON_STEPS: usize = 2;

    fn word(x: f64) -> Self {
        DoubleDouble::word(x)
    }

    fn leading(self) -> f64 {
        self.hi
    }

    fn scale2(self, e: i32) -> Self {
        let f = 2f64.powi(e);
        Self {
            hi: self.hi * f,
            lo: self.lo * f,
        }
    }

    fn mul_f64(self, b: f64) -> Self {
        self.times_f64(b)
    }

    fn from_exact_rational(r: &BigRational) -> Self {
        Self::nearest(r)
    }

    fn cache() -> &'static Cache<Self> {
        CACHE.get_or_init(Cache::build)
    }
}

impl Real for DoubleDouble {
    const NAME: &'static str = "dd";
    const DIGITS: u32 = 30;

    fn epsilon() -> Self {
        Self::word(4.930_380_657_631_324e-32) // 2^-104
    }

    fn pi() -> Self {
        Self::cache().pi
    }

    fn ln_2() -> Self {
        Self::cache().ln2
    }

    fn sqrt(self) -> Self {
        elementary::sqrt(self)
    }

    fn exp(self) -> Self {
        elementary::exp(self)
    }

    fn ln(self) -> Self {
        elementary::ln(self)
    }

    fn sin_cos(self) -> (Self, Self) {
        elementary::sin_cos(self)
    }

    fn mul_pow2(self, exp: i32) -> Self {
        Multiword::scale2(self, exp)
    }

    fn floor(self) -> Self {
        self.floor_value()
    }

    fn hi(self) -> f64 {
        self.hi
    }

    fn to_rational(self) -> BigRational {
        self.rational()
    }

    fn from_rational(r: &BigRational) -> Self {
        Self::nearest(r)
    }
}
