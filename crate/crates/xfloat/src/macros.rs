/// Operator, `num-traits` and formatting impls shared by the multi-word
/// types. The type must provide inherent `plus`, `minus`, `times`, `over`, `negate`,
/// `word`, `leading`, `is_zero_value` and `trunc_value` methods.
macro_rules! multiword_boilerplate {
    ($ty:ident) => {
        impl ::std::ops::Add for $ty {
            type Output = $ty;
            #[inline]
            fn add(self, rhs: $ty) -> $ty {
                $ty::plus(self, rhs)
            }
        }

        impl ::std::ops::Sub for $ty {
            type Output = $ty;
            #[inline]
            fn sub(self, rhs: $ty) -> $ty {
                $ty::minus(self, rhs)
            }
        }

        impl ::std::ops::Mul for $ty {
            type Output = $ty;
            #[inline]
            fn mul(self, rhs: $ty) -> $ty {
                $ty::times(self, rhs)
            }
        }

        impl ::std::ops::Div for $ty {
            type Output = $ty;
            #[inline]
            fn div(self, rhs: $ty) -> $ty {
                $ty::over(self, rhs)
            }
        }

        impl ::std::ops::Rem for $ty {
            type Output = $ty;
            fn rem(self, rhs: $ty) -> $ty {
                let q = $ty::trunc_value($ty::over(self, rhs));
                $ty::minus(self, $ty::times(q, rhs))
            }
        }

        impl ::std::ops::Neg for $ty {
            type Output = $ty;
            #[inline]
            fn neg(self) -> $ty {
                $ty::negate(self)
            }
        }

        impl ::std::ops::AddAssign for $ty {
            #[inline]
            fn add_assign(&mut self, rhs: $ty) {
                *self = $ty::plus(*self, rhs);
            }
        }

        impl ::std::ops::SubAssign for $ty {
            #[inline]
            fn sub_assign(&mut self, rhs: $ty) {
                *self = $ty::minus(*self, rhs);
            }
        }

        impl ::std::ops::MulAssign for $ty {
            #[inline]
            fn mul_assign(&mut self, rhs: $ty) {
                *self = $ty::times(*self, rhs);
            }
        }

        impl ::std::ops::DivAssign for $ty {
            #[inline]
            fn div_assign(&mut self, rhs: $ty) {
                *self = $ty::over(*self, rhs);
            }
        }

        impl ::std::ops::RemAssign for $ty {
            fn rem_assign(&mut self, rhs: $ty) {
                *self = *self % rhs;
            }
        }

        impl ::std::cmp::PartialEq for $ty {
            fn eq(&self, other: &$ty) -> bool {
                $ty::minus(*self, *other).is_zero_value()
            }
        }

        impl ::std::cmp::PartialOrd for $ty {
            fn partial_cmp(&self, other: &$ty) -> Option<::std::cmp::Ordering> {
                $ty::minus(*self, *other)
                    .leading()
                    .partial_cmp(&0.0)
            }
        }

        impl ::num_traits::Zero for $ty {
            fn zero() -> $ty {
                $ty::word(0.0)
            }
            fn is_zero(&self) -> bool {
                self.is_zero_value()
            }
        }

        impl ::num_traits::One for $ty {
            fn one() -> $ty {
                $ty::word(1.0)
            }
        }

        impl ::num_traits::Num for $ty {
            type FromStrRadixErr = $crate::decimal::ParseError;
            fn from_str_radix(s: &str, radix: u32) -> Result<$ty, Self::FromStrRadixErr> {
                if radix != 10 {
                    return Err($crate::decimal::ParseError::Radix(radix));
                }
                $crate::decimal::parse::<$ty>(s)
            }
        }

        impl ::num_traits::Signed for $ty {
            fn abs(&self) -> $ty {
                if self.leading() < 0.0 {
                    $ty::negate(*self)
                } else {
                    *self
                }
            }
            fn abs_sub(&self, other: &$ty) -> $ty {
                if *self <= *other {
                    $ty::word(0.0)
                } else {
                    $ty::minus(*self, *other)
                }
            }
            fn signum(&self) -> $ty {
                let l = self.leading();
                if l > 0.0 {
                    $ty::word(1.0)
                } else if l < 0.0 {
                    $ty::word(-1.0)
                } else {
                    $ty::word(0.0)
                }
            }
            fn is_positive(&self) -> bool {
                self.leading() > 0.0
            }
            fn is_negative(&self) -> bool {
                self.leading() < 0.0
            }
        }

        impl ::num_traits::FromPrimitive for $ty {
            fn from_i64(n: i64) -> Option<$ty> {
                Some(<$ty as $crate::Real>::from_int(n))
            }
            fn from_u64(n: u64) -> Option<$ty> {
                let r = ::num_rational::BigRational::from_integer(::num_bigint::BigInt::from(n));
                Some(<$ty as $crate::Real>::from_rational(&r))
            }
            fn from_f64(x: f64) -> Option<$ty> {
                Some($ty::word(x))
            }
        }

        impl ::num_traits::ToPrimitive for $ty {
            fn to_i64(&self) -> Option<i64> {
                let t = $ty::trunc_value(*self);
                ::num_traits::ToPrimitive::to_i64(
                    &<$ty as $crate::Real>::to_rational(t).to_integer(),
                )
            }
            fn to_u64(&self) -> Option<u64> {
                let t = $ty::trunc_value(*self);
                ::num_traits::ToPrimitive::to_u64(
                    &<$ty as $crate::Real>::to_rational(t).to_integer(),
                )
            }
            fn to_f64(&self) -> Option<f64> {
                Some(self.leading())
            }
        }

        impl ::std::fmt::Display for $ty {
            /// Precision, when given, is the number of significant digits.
            fn fmt(&self, f: &mut ::std::fmt::Formatter<'_>) -> ::std::fmt::Result {
                let digits = f
                    .precision()
                    .unwrap_or(<$ty as $crate::Real>::DIGITS as usize)
                    .max(1);
                let s = $crate::decimal::format_sig(*self, digits);
                // `pad` would treat the precision as a length limit
                match f.width() {
                    Some(w) if f.align() == Some(::std::fmt::Alignment::Left) => {
                        write!(f, "{s:<w$}")
                    }
                    Some(w) => write!(f, "{s:>w$}"),
                    None => f.write_str(&s),
                }
            }
        }

        impl ::std::iter::Sum for $ty {
            fn sum<I: Iterator<Item = $ty>>(iter: I) -> $ty {
                iter.fold($ty::word(0.0), $ty::plus)
            }
        }
    };
}

pub(crate) use multiword_boilerplate;
