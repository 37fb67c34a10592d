//! Quad-double arithmetic: four nonoverlapping doubles, about 212
//! significant bits.
//!
//! Sums and products are formed as exact expansions and then compressed to
//! the four leading components, which trades some speed for results that
//! are accurate to the last component.

use std::sync::OnceLock;

use num_rational::BigRational;
use num_traits::{ToPrimitive, Zero};

use crate::eft::{two_prod, Expansion};
use crate::elementary::{self, Cache, Multiword};
use crate::macros::multiword_boilerplate;
use crate::Real;

#[derive(Clone, Copy, Debug, Default)]
pub struct QuadDouble {
    c: [f64; 4],
}

impl QuadDouble {
    pub fn components(self) -> [f64; 4] {
        self.c
    }

    /// Normalizes an arbitrary list of doubles into a quad-double.
    pub fn from_parts(parts: &[f64]) -> Self {
        let mut e = Expansion::new();
        for &p in parts {
            e.grow(p);
        }
        Self::from_expansion(&mut e)
    }

    fn from_expansion(e: &mut Expansion) -> Self {
        if e.is_empty() {
            return Self::word(0.0);
        }
        let lead = e.leading::<4>();
        if !lead[0].is_finite() {
            return Self::word(lead[0]);
        }
        Self { c: lead }
    }

    #[inline]
    fn word(x: f64) -> Self {
        Self {
            c: [x, 0.0, 0.0, 0.0],
        }
    }

    #[inline]
    fn leading(self) -> f64 {
        self.c[0]
    }

    fn is_zero_value(self) -> bool {
        self.c[0] == 0.0
    }

    fn non_finite(a: f64, b: f64, op: impl Fn(f64, f64) -> f64) -> Option<Self> {
        if a.is_finite() && b.is_finite() {
            None
        } else {
            Some(Self::word(op(a, b)))
        }
    }

    fn plus(self, b: Self) -> Self {
        if let Some(v) = Self::non_finite(self.c[0], b.c[0], |x, y| x + y) {
            return v;
        }
        let mut e = Expansion::new();
        for i in (0..4).rev() {
            e.grow(self.c[i]);
            e.grow(b.c[i]);
        }
        Self::from_expansion(&mut e)
    }

    fn negate(self) -> Self {
        Self {
            c: [-self.c[0], -self.c[1], -self.c[2], -self.c[3]],
        }
    }

    fn minus(self, b: Self) -> Self {
        self.plus(b.negate())
    }

    fn times(self, b: Self) -> Self {
        if let Some(v) = Self::non_finite(self.c[0], b.c[0], |x, y| x * y) {
            return v;
        }
        let a = self.c;
        let b = b.c;
        let mut e = Expansion::new();
        // order 4 terms are rounded products, lower orders are exact
        e.grow(a[1] * b[3]);
        e.grow(a[2] * b[2]);
        e.grow(a[3] * b[1]);
        for order in (0..4usize).rev() {
            for i in 0..=order {
                let (p, err) = two_prod(a[i], b[order - i]);
                e.grow(err);
                e.grow(p);
            }
        }
        Self::from_expansion(&mut e)
    }

    fn times_f64(self, b: f64) -> Self {
        let mut e = Expansion::new();
        for i in (0..4).rev() {
            let (p, err) = two_prod(self.c[i], b);
            e.grow(err);
            e.grow(p);
        }
        Self::from_expansion(&mut e)
    }

    fn over(self, b: Self) -> Self {
        if let Some(v) = Self::non_finite(self.c[0], b.c[0], |x, y| x / y) {
            return v;
        }
        if b.c[0] == 0.0 {
            return Self::word(self.c[0] / 0.0);
        }
        // long division keeping the remainder as an exact expansion
        let mut rem = Expansion::new();
        for i in (0..4).rev() {
            rem.grow(self.c[i]);
        }
        let mut q = [0.0f64; 5];
        for qi in q.iter_mut() {
            rem.compress();
            let est = rem.estimate() / b.c[0];
            *qi = est;
            if est == 0.0 {
                break;
            }
            for j in (0..4).rev() {
                let (p, err) = two_prod(b.c[j], est);
                rem.grow(-err);
                rem.grow(-p);
            }
        }
        Self::from_parts(&q)
    }

    fn floor_value(self) -> Self {
        let mut out = [0.0f64; 4];
        for (o, &c) in out.iter_mut().zip(&self.c) {
            let f = c.floor();
            *o = f;
            if f != c {
                break;
            }
        }
        Self::from_parts(&out)
    }

    fn trunc_value(self) -> Self {
        if self.c[0] >= 0.0 {
            self.floor_value()
        } else {
            self.negate().floor_value().negate()
        }
    }

    fn rational(self) -> BigRational {
        let mut r = BigRational::zero();
        for c in self.c {
            if c != 0.0 {
                r += BigRational::from_float(c).expect("finite component");
            }
        }
        r
    }

    fn nearest(r: &BigRational) -> Self {
        let mut parts = [0.0f64; 5];
        let mut rest = r.clone();
        for p in parts.iter_mut() {
            let v = rest.to_f64().unwrap_or(f64::NAN);
            if !v.is_finite() {
                return Self::word(v);
            }
            *p = v;
            if v == 0.0 {
                break;
            }
            rest -= BigRational::from_float(v).expect("finite");
        }
        Self::from_parts(&parts)
    }
}

multiword_boilerplate!(QuadDouble);

static CACHE: OnceLock<Cache<QuadDouble>> = OnceLock::new();

impl Multiword for QuadDouble {
    const UNIT: f64 = 1.519_290_839_321_567e-64; // 2^-212
    const NEWTON_STEPS: usize = 3;

    fn word(x: f64) -> Self {
        QuadDouble::word(x)
    }

    fn leading(self) -> f64 {
        self.c[0]
    }

    fn scale2(self, e: i32) -> Self {
        let f = 2f64.powi(e);
        Self {
            c: [self.c[0] * f, self.c[1] * f, self.c[2] * f, self.c[3] * f],
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

impl Real for QuadDouble {
    const NAME: &'static str = "qd";
    const DIGITS: u32 = 60;

    fn epsilon() -> Self {
        Self::word(6.077_163_357_286_271e-64) // 2^-210
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
        self.c[0]
    }

    fn to_rational(self) -> BigRational {
        self.rational()
    }

    fn from_rational(r: &BigRational) -> Self {
        Self::nearest(r)
    }
}
