//! Accuracy of the multi-word backends against exact rational oracles.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{FromPrimitive, One, Signed, ToPrimitive, Zero};
use proptest::prelude::*;
use xfloat::decimal::{format_sig, parse, parse_rational};
use xfloat::{DoubleDouble, QuadDouble, Real};

const PI_100: &str = "3.1415926535897932384626433832795028841971693993751058209749445923078164062862089986280348253421170679";
const E_80: &str = "2.71828182845904523536028747135266249775724709369995957496696762772407663035354759";
const SQRT2_80: &str = "1.41421356237309504880168872420969807856967187537694807317667973799073247846210704";
const LN10_80: &str = "2.30258509299404568401799145468436420760110148862877297603332790096757260967735248";

fn rat(x: f64) -> BigRational {
    BigRational::from_float(x).unwrap()
}

fn abs_err<T: Real>(x: T, exact: &BigRational) -> f64 {
    (x.to_rational() - exact).abs().to_f64().unwrap()
}

/// Taylor series in exact arithmetic; stops once the next term is below
/// 2^-300 in magnitude (the series are alternating or dominated).
fn exact_sin_cos(x: &BigRational) -> (BigRational, BigRational) {
    let tiny = BigRational::new(BigInt::one(), BigInt::one() << 300);
    let mut term = BigRational::one();
    let mut sin = BigRational::zero();
    let mut cos = BigRational::zero();
    let mut n: u32 = 0;
    loop {
        // term = x^n / n!
        match n % 4 {
            0 => cos += &term,
            1 => sin += &term,
            2 => cos -= &term,
            _ => sin -= &term,
        }
        n += 1;
        term = term * x / BigRational::from_integer(BigInt::from(n));
        if term.abs() < tiny && n > 4 {
            break;
        }
    }
    (sin, cos)
}

fn exact_exp(x: &BigRational) -> BigRational {
    let tiny = BigRational::new(BigInt::one(), BigInt::one() << 300);
    let mut term = BigRational::one();
    let mut sum = BigRational::zero();
    let mut n: u32 = 0;
    loop {
        sum += &term;
        n += 1;
        term = term * x / BigRational::from_integer(BigInt::from(n));
        if term.abs() < tiny && n as f64 > x.to_f64().unwrap().abs() * 3.0 {
            break;
        }
    }
    sum
}

#[test]
fn constants_match_literals() {
    let pi = parse_rational(PI_100).unwrap();
    assert!(abs_err(DoubleDouble::pi(), &pi) < 1e-31);
    assert!(abs_err(QuadDouble::pi(), &pi) < 1e-63);
    let e = parse_rational(E_80).unwrap();
    assert!(abs_err(DoubleDouble::one().exp(), &e) < 1e-31);
    assert!(abs_err(QuadDouble::one().exp(), &e) < 1e-62);
    let sqrt2 = parse_rational(SQRT2_80).unwrap();
    assert!(abs_err(DoubleDouble::from_int(2).sqrt(), &sqrt2) < 1e-31);
    assert!(abs_err(QuadDouble::from_int(2).sqrt(), &sqrt2) < 1e-63);
    let ln10 = parse_rational(LN10_80).unwrap();
    assert!(abs_err(DoubleDouble::from_int(10).ln(), &ln10) < 1e-31);
    assert!(abs_err(QuadDouble::from_int(10).ln(), &ln10) < 1e-62);
}

#[test]
fn pi_matches_machin_series() {
    // π = 16 atan(1/5) - 4 atan(1/239), summed exactly far past 10^-70
    fn atan_inv(n: i64, terms: u32) -> BigRational {
        let mut s = BigRational::zero();
        for k in 0..terms {
            let d = BigInt::from(2 * k + 1) * num_traits::pow(BigInt::from(n), (2 * k + 1) as usize);
            let t = BigRational::new(BigInt::one(), d);
            if k % 2 == 0 {
                s += t;
            } else {
                s -= t;
            }
        }
        s
    }
    let machin = atan_inv(5, 60) * BigRational::from_integer(16.into())
        - atan_inv(239, 30) * BigRational::from_integer(4.into());
    assert!(abs_err(QuadDouble::pi(), &machin) < 1e-63);
}

#[test]
fn special_angles() {
    let (s, c) = QuadDouble::sin_cos_pi(1, 6);
    assert!(abs_err(s, &BigRational::new(1.into(), 2.into())) < 1e-63);
    let three_quarters = BigRational::new(3.into(), 4.into());
    assert!(abs_err(c * c, &three_quarters) < 1e-63);
    let (s, c) = DoubleDouble::sin_cos_pi(5, 4);
    let half = BigRational::new(1.into(), 2.into());
    assert!(abs_err(s * s, &half) < 1e-31);
    assert!(s < DoubleDouble::zero() && c < DoubleDouble::zero());
}

#[test]
fn format_and_parse_round_trip() {
    let x = QuadDouble::one() / QuadDouble::from_int(3);
    let s = format_sig(x, 60);
    assert!(s.starts_with("0.333333333333333333333333333333333333333333333333333333333333"));
    let y: QuadDouble = parse(&s).unwrap();
    assert!((x - y).abs() < QuadDouble::from_f64(1e-60).unwrap());
    let z = DoubleDouble::pi();
    assert_eq!(format!("{z:.20}"), "3.1415926535897932385");
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn dd_sin_cos_accuracy(x in -7.0f64..7.0) {
        let (es, ec) = exact_sin_cos(&rat(x));
        let (s, c) = DoubleDouble::from_f64(x).unwrap().sin_cos();
        prop_assert!(abs_err(s, &es) < 4e-32, "sin {x}");
        prop_assert!(abs_err(c, &ec) < 4e-32, "cos {x}");
    }

    #[test]
    fn qd_sin_cos_accuracy(hi in -7.0f64..7.0, lo in -1.0f64..1.0) {
        let x = QuadDouble::from_f64(hi).unwrap() + QuadDouble::from_f64(lo * 1e-17).unwrap();
        let (es, ec) = exact_sin_cos(&x.to_rational());
        let (s, c) = x.sin_cos();
        prop_assert!(abs_err(s, &es) < 1e-63, "sin {hi}");
        prop_assert!(abs_err(c, &ec) < 1e-63, "cos {hi}");
    }

    #[test]
    fn exp_ln_accuracy(x in -20.0f64..20.0) {
        let exact = exact_exp(&rat(x));
        let dd = DoubleDouble::from_f64(x).unwrap().exp();
        let qd = QuadDouble::from_f64(x).unwrap().exp();
        let scale = exact.to_f64().unwrap();
        prop_assert!(abs_err(dd, &exact) / scale < 1e-31);
        prop_assert!(abs_err(qd, &exact) / scale < 1e-62);
        // ln inverts exp
        let back = qd.ln();
        prop_assert!(abs_err(back, &rat(x)) < 1e-62 * x.abs().max(1.0));
        let back = dd.ln();
        prop_assert!(abs_err(back, &rat(x)) < 1e-31 * x.abs().max(1.0));
    }

    #[test]
    fn arithmetic_is_nearly_exact(a in -1e6f64..1e6, b in 1e-3f64..1e3, c in -1.0f64..1.0) {
        let qa = QuadDouble::from_f64(a).unwrap() / QuadDouble::from_int(3);
        let qb = QuadDouble::from_f64(b).unwrap() + QuadDouble::from_f64(c * 1e-20).unwrap();
        let (ra, rb) = (qa.to_rational(), qb.to_rational());
        for (got, want) in [
            (qa + qb, &ra + &rb),
            (qa - qb, &ra - &rb),
            (qa * qb, &ra * &rb),
            (qa / qb, &ra / &rb),
        ] {
            if !want.is_zero() {
                let rel = abs_err(got, &want) / want.abs().to_f64().unwrap();
                prop_assert!(rel < 4.0 * 1.52e-64 * 8.0, "rel {rel}");
            }
        }
        let da = DoubleDouble::from_f64(a).unwrap() / DoubleDouble::from_int(3);
        let db = DoubleDouble::from_f64(b).unwrap() + DoubleDouble::from_f64(c * 1e-20).unwrap();
        let (ra, rb) = (da.to_rational(), db.to_rational());
        for (got, want) in [
            (da + db, &ra + &rb),
            (da * db, &ra * &rb),
            (da / db, &ra / &rb),
        ] {
            if !want.is_zero() {
                let rel = abs_err(got, &want) / want.abs().to_f64().unwrap();
                prop_assert!(rel < 1e-31, "rel {rel}");
            }
        }
    }
}
