//! Known values, checked against literals and exact rationals.
//!
//! Reference decimals are 40-digit evaluations of closed forms made with an
//! independent arbitrary-precision package.

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{FromPrimitive, One, Signed, Zero};
use trigsum::asymptotics::{
    c_expansion, d_expansion, h_expansion, i_expansion, j_expansion, j_harmonic_residual,
    Diagnostic, Target,
};
use trigsum::harmonic::{c_series, c_term, d_series, d_term, e_series, harmonic};
use trigsum::precision::compute_gamma;
use trigsum::tables::{bernoulli_rationals, BernoulliTable, EvenZetaTable};
use trigsum::trig::*;
use trigsum::verify::{emit_report, render_report, verify_bounds, Format, VerificationReport};
use trigsum::{Context, Dd, Error, PrecisionPolicy, Qd, Real};
use xfloat::decimal::parse;

const GAMMA: &str = "0.5772156649015328606065120900824024310422";
const PI: &str = "3.1415926535897932384626433832795028841972";
const LN2: &str = "0.6931471805599453094172321214581765680755";
const LN_2PI: &str = "1.8378770664093454835606594728112352797228";
const C1: &str = "-0.1303307007539063114770736913644164243403";
const D1: &str = "0.2837571104739336567684576306353281403026";
const E2: &str = "1.1319717536774209643242769065489640050870";
const C2: &str = "-0.0337571104739336567684576306353281403026";

fn ctx() -> Context<Dd> {
    Context::new(PrecisionPolicy::default()).unwrap()
}

fn lit(s: &str) -> Dd {
    parse::<Dd>(s).unwrap()
}

fn q(n: i64, d: i64) -> BigRational {
    BigRational::new(BigInt::from(n), BigInt::from(d))
}

#[track_caller]
fn assert_close(got: Dd, want: Dd, tol: f64) {
    let err = (got - want).abs().hi();
    assert!(err <= tol, "got {got}, want {want}, error {err:e} > {tol:e}");
}

#[test]
fn context_constants() {
    let c = ctx();
    let k = &c.constants;
    assert_close(k.pi, lit(PI), 1e-30);
    assert_close(k.ln2, lit(LN2), 1e-30);
    assert_close(k.ln_2pi, lit(LN_2PI), 1e-30);
    assert_close(k.euler_gamma, lit(GAMMA), 1e-30);
    assert_eq!(format!("{:.30}", k.pi), "3.14159265358979323846264338328");
}

#[test]
fn gamma_at_fifteen_digits() {
    let policy = PrecisionPolicy::new(15, 3).unwrap();
    let g: f64 = compute_gamma(&policy);
    assert!((g - 0.577215664901533).abs() < 1e-15);
}

#[test]
fn gamma_bracketed_by_first_harmonic_term() {
    // H_1 − 1/2 lies within 1/12 of γ
    let g = lit(GAMMA).hi();
    assert!((0.5 - g).abs() < 1.0 / 12.0);
}

#[test]
fn bernoulli_and_zeta_values() {
    let b = bernoulli_rationals(5);
    assert_eq!(b[0], q(1, 6));
    assert_eq!(b[1], q(-1, 30));
    assert_eq!(b[2], q(1, 42));
    assert_eq!(b[4], q(5, 66));
    let table = BernoulliTable::<Dd>::new(16);
    for k in 1..=16 {
        let v = table.get(k).unwrap();
        assert_eq!(v > Dd::zero(), k % 2 == 1, "sign of b_{}", 2 * k);
    }
    let z = EvenZetaTable::new(&table);
    let pi = lit(PI);
    let pi2 = pi * pi;
    assert_close(z.zeta(1).unwrap(), pi2 / Dd::from_int(6), 1e-30);
    assert_close(z.eta(1).unwrap(), pi2 / Dd::from_int(12), 1e-30);
    assert_close(z.zeta(2).unwrap(), pi2 * pi2 / Dd::from_int(90), 1e-30);
    let mut prev_zeta = Dd::from_int(2);
    let mut prev_eta = Dd::zero();
    for k in 1..=16 {
        let (zk, ek) = (z.zeta(k).unwrap(), z.eta(k).unwrap());
        assert!(zk > Dd::one() && zk < prev_zeta);
        assert!(ek > Dd::from_f64(0.5).unwrap() && ek < Dd::one() && ek > prev_eta);
        prev_zeta = zk;
        prev_eta = ek;
    }
}

#[test]
fn trigonometric_sums() {
    let s3 = lit("1.7320508075688772935274463415058723669428");
    assert_eq!(cosecant_sum::<Dd>(1), Dd::zero());
    assert_close(cosecant_sum::<Dd>(2), Dd::one(), 1e-31);
    assert_close(cosecant_sum::<Dd>(3), Dd::from_int(4) / s3, 1e-30);
    assert_eq!(cotangent_sum::<Dd>(2), Dd::zero());
    assert_close(cotangent_sum::<Dd>(3), -(Dd::one() / s3), 1e-30);
    assert_close(cotangent_sum::<Dd>(4), Dd::from_int(-2), 1e-30);
    assert_close(tangent_sum::<Dd>(2), Dd::one(), 1e-31);
    assert_close(weighted_cosecant_sum::<Dd>(3), s3.mul_pow2(1), 1e-30);
    assert_eq!(odd_cotangent_sum::<Dd>(1), Dd::zero());
}

#[test]
fn secant_sums() {
    let two: Dd = secant_power_sum(2, 2).unwrap();
    assert_close(two, Dd::from_int(2), 1e-30);
    let four: Dd = secant_power_sum(3, 4).unwrap();
    assert_close(four, Dd::from_int(160) / Dd::from_int(9), 1e-29);
    assert_eq!(closed_form_secant_power_exact(3, 4).unwrap(), q(160, 9));
    for power in [2, 4] {
        assert_eq!(secant_power_sum::<Dd>(1, power).unwrap(), Dd::zero());
        assert!(closed_form_secant_power_exact(1, power).unwrap().is_zero());
    }
    assert_close(kou_secant_sum::<Dd>(1), Dd::from_int(-2), 1e-30);
    assert_close(kou_secant_sum::<Dd>(2), Dd::from_int(2), 1e-30);
    assert_close(kou_secant_sum::<Dd>(3), Dd::from_int(-4), 1e-30);
}

#[test]
fn harmonic_numbers() {
    assert_eq!(harmonic::<Dd>(0), Dd::zero());
    assert_eq!(harmonic::<Dd>(2), Dd::from_f64(1.5).unwrap());
    let h10 = harmonic::<Dd>(10).to_rational();
    assert!((h10 - q(7381, 2520)).abs() < q(1, 10).pow(30));
}

#[test]
fn c_and_d_terms() {
    let c = ctx();
    let g = lit(GAMMA);
    assert_close(d_term(&c, 1), Dd::one() - g, 1e-30);
    assert_close(c_term(&c, 1), Dd::from_f64(0.5).unwrap() - g, 1e-30);
    let c100 = c_term(&c, 100).hi();
    assert!(c100 < 0.0 && c100 > -1.0 / 120_000.0);
}

#[test]
fn series_values() {
    let c = ctx();
    let cv = c_series(&c, 1, 1e-28).unwrap();
    assert_close(cv.value, lit(C1), 1e-27);
    let dv = d_series(&c, 1, 1e-28).unwrap();
    assert_close(dv.value, lit(D1), 1e-27);
    let e1 = e_series(&c, 1, 1e-28).unwrap();
    assert_close(e1.value, lit(LN2), 1e-27);
    let e2 = e_series(&c, 2, 1e-28).unwrap();
    assert_close(e2.value, lit(E2), 1e-27);
    let c2 = c_series(&c, 2, 1e-28).unwrap();
    assert_close(c2.value, lit(C2), 1e-27);

    // loose tolerance still lands within its own bound
    let loose = c_series(&c, 1, 1e-12).unwrap();
    assert!(loose.tail_bound.hi() <= 1e-12);
    assert_close(loose.value, lit(C1), 1e-12);
    let e = e_series(&c, 1, 1e-12).unwrap();
    assert_close(e.value, lit(LN2), 1e-12);
}

#[test]
fn series_leading_behaviour() {
    let c = ctx();
    let pi = lit(PI);
    let c2 = c_series(&c, 2, 1e-20).unwrap().value.hi();
    let lead = -(pi * pi).hi() / 288.0;
    assert!(((c2 - lead) / lead).abs() < 0.1);

    let d100 = d_series(&c, 100, 1e-20).unwrap().value.hi();
    let ln2 = lit(LN2).hi();
    assert!((d100 - ln2 / 200.0).abs() < 6.9e-6);

    // second-order remainder at p = 10
    let d10 = d_series(&c, 10, 1e-20).unwrap().value;
    let eta2 = pi * pi / Dd::from_int(12);
    let rem = d10 - lit(LN2) / Dd::from_int(20) + eta2 / Dd::from_int(1200);
    assert!(rem.abs().hi() < 7.9e-7);

    for p in 1..=50 {
        assert!(c_series(&c, p, 1e-15).unwrap().value < Dd::zero());
        assert!(d_series(&c, p, 1e-15).unwrap().value > Dd::zero());
        let h = harmonic::<Dd>(p);
        let e = e_series(&c, p, 1e-15).unwrap().value;
        let s1 = h - (harmonic::<Dd>(2 * p) - h);
        assert!(s1 < e && e < h, "p={p}");
    }
}

#[test]
fn series_errors() {
    let c = ctx();
    assert!(matches!(c_series(&c, 0, 1e-10), Err(Error::Domain(_))));
    assert!(matches!(d_series(&c, 1, 0.0), Err(Error::Domain(_))));
    assert!(matches!(e_series(&c, 1, 1e-35), Err(Error::Precision { .. })));
    let tight = ctx().with_max_terms(3);
    let err = c_series(&tight, 1, 1e-25).unwrap_err();
    assert!(err.is_resource_limit());
    match err {
        Error::Budget { lower, upper, .. } => {
            let lo: f64 = lower.parse().unwrap();
            let hi: f64 = upper.parse().unwrap();
            assert!(lo < hi);
        }
        other => panic!("unexpected {other:?}"),
    }
}

#[test]
fn expansion_examples() {
    let c = ctx();
    let i3 = i_expansion(&c, 3, 0).unwrap();
    assert!((i3.lower.hi() - 2.309_047_372_980_106).abs() < 1e-15);
    assert!((i3.upper.hi() - 2.338_136_193_846_679).abs() < 1e-15);
    assert!(i3.contains(cosecant_sum(3)));

    let j2 = j_expansion(&c, 2, 0).unwrap();
    assert!((j2.upper.hi() - 0.08596177594281176).abs() < 1e-15);
    assert!((j2.lower.hi() + 0.0013046866569047168).abs() < 1e-15);
    assert!(j2.contains(Dd::zero()));

    let c1 = c_expansion(&c, 1, 1).unwrap();
    assert!(c1.upper.abs().hi() < 1e-30);
    assert!((c1.lower.hi() + 0.13707783890401887).abs() < 1e-15);
    assert!(c1.contains(lit(C1)));

    let d1 = d_expansion(&c, 1, 1).unwrap();
    assert!((d1.lower.hi() - 0.278034670827964).abs() < 1e-12);
    assert!((d1.upper.hi() - 0.34657359027997264).abs() < 1e-15);
    assert!(d1.contains(lit(D1)));

    let h10 = h_expansion(&c, 10, 3).unwrap();
    assert!(h10.lower.to_rational() < q(7381, 2520) && q(7381, 2520) < h10.upper.to_rational());
    let h1 = h_expansion(&c, 1, 1).unwrap();
    assert!((h1.lower.hi() - 0.99388233156820).abs() < 1e-12);
    assert!((h1.upper.hi() - 1.077_215_664_901_533).abs() < 1e-15);

    let w100 = h_expansion(&c, 100, 2).unwrap().width();
    let w10 = h_expansion(&c, 10, 2).unwrap().width();
    assert!(w100 < w10);
}

#[test]
fn expansion_structure() {
    let c = ctx();
    for target in Target::ALL {
        for size in [1u64, 2, 5, 40] {
            for t in 0..=3usize {
                let t = if target.takes_pairs() { t } else { t + 1 };
                let e = target.expand(&c, size, t).unwrap();
                assert!(e.lower < e.upper);
                assert!(e.lower <= e.truncated_value && e.truncated_value <= e.upper);
                assert_eq!(e.target, target);
            }
        }
    }
    // p → 2p shrinks a fixed-order bracket by at least 4^m
    for m in 1..=4 {
        let w1 = c_expansion(&c, 5, m).unwrap().width();
        let w2 = c_expansion(&c, 10, m).unwrap().width();
        assert!(w2 * Dd::from_int(4i64.pow(m as u32)) <= w1 + w1 * Dd::from_f64(1e-20).unwrap());
    }
    let d = d_series(&c, 10, 1e-25).unwrap().value;
    for m in 1..=5 {
        assert!(d_expansion(&c, 10, m).unwrap().contains(d));
    }
    assert!(matches!(i_expansion(&c, 3, 8), Err(Error::Capacity { .. })));
    assert!(matches!(h_expansion(&c, 0, 1), Err(Error::Domain(_))));
    let deep = i_expansion(&c, 1, 3).unwrap();
    assert!(deep.diagnostics.contains(&Diagnostic::BeyondTruncationGuard { limit: 3 }));
}

#[test]
fn theta_values() {
    let c = ctx();
    let ln2pi = lit(LN_2PI);
    assert_close(
        j_harmonic_residual(&c, 1).unwrap(),
        ln2pi - Dd::from_f64(1.5).unwrap(),
        1e-29,
    );
    assert_close(
        j_harmonic_residual(&c, 2).unwrap(),
        ln2pi * Dd::from_int(4) - Dd::from_int(7),
        1e-29,
    );
}

#[test]
fn quad_double_reaches_sixty_digits() {
    let c = Context::<Qd>::new(PrecisionPolicy::new(60, 5).unwrap()).unwrap();
    let v = e_series(&c, 1, 1e-58).unwrap().value;
    let ln2 = parse::<Qd>(
        "0.69314718055994530941723212145817656807550013436025525412068000949339",
    )
    .unwrap();
    assert!((v - ln2).abs().hi() < 1e-58);
}

#[test]
fn report_formats() {
    let policy = PrecisionPolicy::default();
    let empty = VerificationReport::<Dd> {
        policy,
        records: Vec::new(),
        summary: BTreeMap::new(),
    };
    assert_eq!(
        render_report(&empty, Format::Csv).unwrap(),
        "check_id,p,passed,margin,lhs,rhs\n"
    );

    let c = ctx();
    let one = verify_bounds(&c, 5, 5, &[0]).unwrap();
    let mut single = one.clone();
    single.records.truncate(1);
    let csv = render_report(&single, Format::Csv).unwrap();
    let lines: Vec<_> = csv.lines().collect();
    assert_eq!(lines.len(), 2);
    assert!(lines[1].starts_with("chen_upper,5,true,"));
    // numbers carry the policy's digits and read back as the same value
    let fields: Vec<_> = lines[1].split(',').collect();
    let lhs = parse::<Dd>(fields[4]).unwrap();
    assert!(((lhs - single.records[0].lhs) / lhs).abs().hi() < 1e-29);

    let mut a = Vec::new();
    let mut b = Vec::new();
    emit_report(&one, Format::Json, &mut a).unwrap();
    emit_report(&one, Format::Json, &mut b).unwrap();
    assert_eq!(a, b);
    let v: serde_json::Value = serde_json::from_slice(&a).unwrap();
    assert_eq!(v["all_asserted_pass"], true);
    assert_eq!(v["policy"]["working_digits"], 30);
}

#[test]
fn summary_matches_records() {
    let report = verify_bounds(&ctx(), 1, 30, &[0, 1, 2, 3]).unwrap();
    let mut tally: BTreeMap<&str, usize> = BTreeMap::new();
    for r in &report.records {
        *tally.entry(&r.check_id).or_default() += 1;
    }
    for (id, s) in &report.summary {
        assert_eq!(tally[id.as_str()], s.total);
        assert_eq!(s.total, s.passed + s.failed + s.unasserted);
    }
    let keys: Vec<_> = report.records.iter().map(|r| (&r.check_id, r.p)).collect();
    let mut sorted = keys.clone();
    sorted.sort();
    assert_eq!(keys, sorted);
    // the p < 3 records of the first upper bound are kept apart
    let small: Vec<_> = report.by_id("chen_small_p").map(|r| r.p).collect();
    assert_eq!(small, vec![1, 2]);
    assert!(report.by_id("chen_upper").all(|r| r.p >= 3 && r.asserted));
    // exact harmonic numbers as a spot check of the rational reference
    let mut h = BigRational::zero();
    for k in 1..=30 {
        h += BigRational::new(BigInt::one(), BigInt::from(k));
    }
    assert!((harmonic::<Dd>(30).to_rational() - h).abs() < q(1, 10).pow(29));
}
