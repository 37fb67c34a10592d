//! Numerical checks of the identities, closed forms and inequalities that
//! relate the trigonometric sums, the harmonic series and the expansions.
//!
//! Every check produces a [`CheckRecord`] with a signed margin: positive
//! means the check passed with that much room. Reports are sorted by
//! `(check_id, p)` and rendered with a fixed number of significant digits,
//! so two runs with the same inputs produce identical bytes.

use std::collections::BTreeMap;
use std::fmt;
use std::io::Write;
use std::str::FromStr;

use serde::Serialize;
use xfloat::decimal::format_sig;
use xfloat::Real;

use crate::asymptotics::{i_expansion, j_expansion, theta_from};
use crate::error::{Error, Result};
use crate::harmonic::{c_series, d_series, e_series, HarmonicState, SeriesResult};
use crate::precision::{recip, Context, PrecisionPolicy};
use crate::trig::{
    closed_form_secant_power, cosecant_cotangent_sums, cot_half_sum, cotangent_sum,
    kou_closed_form, kou_secant_sum, odd_cotangent_sum, secant_power_sum, tangent_sum,
    weighted_cosecant_sum,
};

/// Largest `n` accepted by [`verify_bounds`].
pub const MAX_BOUND_ORDER: usize = 3;

/// Below this `p` the first cosecant upper bound is reported but not
/// asserted.
const SMALL_P: u64 = 3;

#[derive(Clone, Debug, PartialEq)]
pub struct CheckRecord<T> {
    pub check_id: String,
    pub p: u64,
    pub passed: bool,
    /// Room left before the check would fail; negative on failure.
    pub margin: T,
    pub lhs: T,
    pub rhs: T,
    /// Unasserted records are informational and never fail a run.
    pub asserted: bool,
    pub note: Option<String>,
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize)]
pub struct CheckSummary {
    pub total: usize,
    pub passed: usize,
    pub failed: usize,
    pub unasserted: usize,
}

#[derive(Clone, Debug)]
pub struct VerificationReport<T> {
    pub policy: PrecisionPolicy,
    pub records: Vec<CheckRecord<T>>,
    pub summary: BTreeMap<String, CheckSummary>,
}

impl<T: Real> VerificationReport<T> {
    fn new(policy: PrecisionPolicy, mut records: Vec<CheckRecord<T>>) -> Self {
        records.sort_by(|a, b| (&a.check_id, a.p).cmp(&(&b.check_id, b.p)));
        let mut summary: BTreeMap<String, CheckSummary> = BTreeMap::new();
        for r in &records {
            let s = summary.entry(r.check_id.clone()).or_default();
            s.total += 1;
            if !r.asserted {
                s.unasserted += 1;
            } else if r.passed {
                s.passed += 1;
            } else {
                s.failed += 1;
            }
        }
        Self {
            policy,
            records,
            summary,
        }
    }

    /// Asserted records that failed.
    pub fn failures(&self) -> impl Iterator<Item = &CheckRecord<T>> {
        self.records.iter().filter(|r| r.asserted && !r.passed)
    }

    pub fn all_asserted_pass(&self) -> bool {
        self.failures().next().is_none()
    }

    pub fn merge(self, other: Self) -> Self {
        let mut records = self.records;
        records.extend(other.records);
        Self::new(self.policy, records)
    }

    /// Records with the given id, in order of `p`.
    pub fn by_id<'a>(&'a self, id: &'a str) -> impl Iterator<Item = &'a CheckRecord<T>> + 'a {
        self.records.iter().filter(move |r| r.check_id == id)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Format {
    Csv,
    Json,
}

impl FromStr for Format {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.to_ascii_lowercase().as_str() {
            "csv" => Ok(Format::Csv),
            "json" => Ok(Format::Json),
            _ => Err(Error::Domain(format!("unknown report format `{s}`"))),
        }
    }
}

impl fmt::Display for Format {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Format::Csv => "csv",
            Format::Json => "json",
        })
    }
}

fn identity<T: Real>(id: &str, p: u64, lhs: T, rhs: T, tol: T) -> CheckRecord<T> {
    let scale = lhs.abs().max(rhs.abs()).max(T::one());
    let margin = tol * scale - (lhs - rhs).abs();
    CheckRecord {
        check_id: id.to_string(),
        p,
        passed: margin >= T::zero(),
        margin,
        lhs,
        rhs,
        asserted: true,
        note: None,
    }
}

/// `lhs < rhs`.
fn below<T: Real>(id: String, p: u64, lhs: T, rhs: T, asserted: bool) -> CheckRecord<T> {
    let margin = rhs - lhs;
    CheckRecord {
        check_id: id,
        p,
        passed: margin > T::zero(),
        margin,
        lhs,
        rhs,
        asserted,
        note: None,
    }
}

fn unavailable<T: Real>(id: &str, p: u64, err: &Error) -> CheckRecord<T> {
    CheckRecord {
        check_id: id.to_string(),
        p,
        passed: false,
        margin: T::zero(),
        lhs: T::zero(),
        rhs: T::zero(),
        asserted: true,
        note: Some(err.to_string()),
    }
}

fn check_range(p_from: u64, p_to: u64) -> Result<()> {
    if p_from == 0 || p_from > p_to {
        return Err(Error::Domain(format!(
            "p range {p_from}..{p_to} must satisfy 1 <= from <= to"
        )));
    }
    Ok(())
}

fn check_tol<T: Real>(ctx: &Context<T>, tol: f64) -> Result<T> {
    if !(tol.is_finite() && tol > 0.0) {
        return Err(Error::Domain(format!("tolerance {tol} must be positive")));
    }
    if tol < ctx.noise_floor() {
        return Err(Error::Precision {
            tol,
            floor: ctx.noise_floor(),
        });
    }
    Ok(T::from_f64(tol).expect("finite"))
}

fn from_u64<T: Real>(p: u64) -> T {
    T::from_u64(p).expect("finite")
}

/// Pushes a record that needs a series value, or a failed record carrying
/// the error when the series could not be evaluated.
fn with_series<T: Real>(
    out: &mut Vec<CheckRecord<T>>,
    id: &str,
    p: u64,
    series: &Result<SeriesResult<T>>,
    f: impl FnOnce(T) -> (T, T),
    tol: T,
) {
    match series {
        Ok(s) => {
            let (lhs, rhs) = f(s.value);
            out.push(identity(id, p, lhs, rhs, tol));
        }
        Err(e) => out.push(unavailable(id, p, e)),
    }
}

/// Relations among the finite sums and between them and the series
/// `C_p`, `D_p`, `E_p`, each to relative tolerance `tol`.
///
/// The series are evaluated to `tol/10`. A series that exceeds the term
/// budget turns its checks into failed records with the error as a note.
pub fn verify_identities<T: Real>(
    ctx: &Context<T>,
    p_from: u64,
    p_to: u64,
    tol: f64,
) -> Result<VerificationReport<T>> {
    verify_identities_at(ctx, p_from, p_to, tol, tol / 10.0)
}

/// [`verify_identities`] with the series tolerance chosen separately.
pub fn verify_identities_at<T: Real>(
    ctx: &Context<T>,
    p_from: u64,
    p_to: u64,
    tol: f64,
    series_tol: f64,
) -> Result<VerificationReport<T>> {
    check_range(p_from, p_to)?;
    let tol_t = check_tol(ctx, tol)?;
    check_tol(ctx, series_tol)?;
    let c = &ctx.constants;
    let mut out = Vec::new();

    for p in p_from..=p_to {
        let x = from_u64::<T>(p);
        let (i, j) = cosecant_cotangent_sums::<T>(p);
        let k = tangent_sum::<T>(p);
        let kt = cot_half_sum::<T>(p);
        let l = weighted_cosecant_sum::<T>(p);
        let m = odd_cotangent_sum::<T>(p);
        let j2 = cotangent_sum::<T>(2 * p);

        out.push(identity("tan_eq_cot_half", p, k, kt, tol_t));
        out.push(identity("tan_eq_csc", p, k, i, tol_t));
        out.push(identity("weighted_csc", p, l.mul_pow2(1), x * i, tol_t));
        out.push(identity("odd_cot_vs_cot", p, m, j2 - j.mul_pow2(1), tol_t));
        out.push(identity("odd_cot_vs_csc", p, m, -x * i, tol_t));

        let cs = c_series(ctx, p, series_tol);
        let ds = d_series(ctx, p, series_tol);
        let es = e_series(ctx, p, series_tol);
        let log_part = x.ln() + c.euler_gamma - c.ln_pi_over_2;
        let two_ln2_pi = c.ln2.mul_pow2(1) / c.pi;

        match (&es, &ds) {
            (Ok(e), Ok(d)) => out.push(identity(
                "e_vs_d",
                p,
                e.value,
                log_part + d.value.mul_pow2(1),
                tol_t,
            )),
            (Err(err), _) | (_, Err(err)) => out.push(unavailable("e_vs_d", p, err)),
        }
        with_series(
            &mut out,
            "csc_vs_e",
            p,
            &es,
            |e| (i, -two_ln2_pi + x.mul_pow2(1) / c.pi * e),
            tol_t,
        );
        with_series(
            &mut out,
            "csc_vs_d",
            p,
            &ds,
            |d| {
                let rhs =
                    -two_ln2_pi + x.mul_pow2(1) / c.pi * log_part + x.mul_pow2(2) / c.pi * d;
                (i, rhs)
            },
            tol_t,
        );
        with_series(
            &mut out,
            "cot_vs_c",
            p,
            &cs,
            |cv| {
                let p2 = x * x;
                let rhs = -p2 * x.ln() + (c.ln_2pi - c.euler_gamma) * p2 - x + p2.mul_pow2(1) * cv;
                (c.pi * j, rhs)
            },
            tol_t,
        );

        let inv_p: T = recip(x);
        with_series(
            &mut out,
            "d_closed_form",
            p,
            &ds,
            |d| {
                let rhs = (c.ln_pi_over_2 - c.euler_gamma - x.ln()).mul_pow2(-1)
                    + c.ln2.mul_pow2(-1) * inv_p
                    + c.pi.mul_pow2(-2) * inv_p * i;
                (d, rhs)
            },
            tol_t,
        );
        with_series(
            &mut out,
            "e_closed_form",
            p,
            &es,
            |e| (e, c.ln2 * inv_p + c.pi.mul_pow2(-1) * inv_p * i),
            tol_t,
        );
        with_series(
            &mut out,
            "c_closed_form",
            p,
            &cs,
            |cv| {
                let rhs = (x.ln() + c.euler_gamma - c.ln_2pi).mul_pow2(-1)
                    + inv_p.mul_pow2(-1)
                    + c.pi.mul_pow2(-1) * inv_p * inv_p * j;
                (cv, rhs)
            },
            tol_t,
        );
    }
    Ok(VerificationReport::new(*ctx.policy(), out))
}

/// The secant power sums and the alternating secant sum against their
/// closed forms, to relative tolerance `tol`.
pub fn verify_closed_forms<T: Real>(
    ctx: &Context<T>,
    p_from: u64,
    p_to: u64,
    tol: f64,
) -> Result<VerificationReport<T>> {
    check_range(p_from, p_to)?;
    let tol_t = check_tol(ctx, tol)?;
    let mut out = Vec::new();
    for p in p_from..=p_to {
        for (id, power) in [("secant2_closed_form", 2), ("secant4_closed_form", 4)] {
            let lhs = secant_power_sum::<T>(p, power)?;
            let rhs = closed_form_secant_power::<T>(p, power)?;
            out.push(identity(id, p, lhs, rhs, tol_t));
        }
        let kou = T::from_i64(kou_closed_form(p)).expect("finite");
        out.push(identity("kou_closed_form", p, kou_secant_sum::<T>(p), kou, tol_t));
    }
    Ok(VerificationReport::new(*ctx.policy(), out))
}

/// The two-sided expansion bounds on `I_p` and `J_p` for each `n` in
/// `orders`, and `0 < θ_p < 1`.
///
/// The `n = 0` cosecant upper bound is reported for `p < 3` under its own
/// id and not asserted.
pub fn verify_bounds<T: Real>(
    ctx: &Context<T>,
    p_from: u64,
    p_to: u64,
    orders: &[usize],
) -> Result<VerificationReport<T>> {
    check_range(p_from, p_to)?;
    if let Some(&n) = orders.iter().find(|&&n| n > MAX_BOUND_ORDER) {
        return Err(Error::Domain(format!(
            "bound order {n} exceeds {MAX_BOUND_ORDER}"
        )));
    }
    let mut orders = orders.to_vec();
    orders.sort_unstable();
    orders.dedup();

    let mut h = HarmonicState::<T>::new();
    let mut out = Vec::new();
    for p in p_from..=p_to {
        let (i, j) = cosecant_cotangent_sums::<T>(p);
        for &n in &orders {
            let ie = i_expansion(ctx, p, n)?;
            let upper_id = match (n, p < SMALL_P) {
                (0, true) => "chen_small_p".to_string(),
                (0, false) => "chen_upper".to_string(),
                _ => format!("csc_upper_n{n}"),
            };
            let asserted = !(n == 0 && p < SMALL_P);
            out.push(below(upper_id, p, i, ie.upper, asserted));
            out.push(below(format!("csc_lower_n{n}"), p, ie.lower, i, true));

            let je = j_expansion(ctx, p, n)?;
            out.push(below(format!("cot_upper_n{n}"), p, j, je.upper, true));
            out.push(below(format!("cot_lower_n{n}"), p, je.lower, j, true));
        }
        let theta = theta_from(ctx, p, j, h.advance_to(p));
        out.push(below("theta_positive".into(), p, T::zero(), theta, true));
        out.push(below("theta_below_one".into(), p, theta, T::one(), true));
    }
    Ok(VerificationReport::new(*ctx.policy(), out))
}

/// Identities, closed forms and bounds over one range.
pub fn verify_all<T: Real>(
    ctx: &Context<T>,
    p_from: u64,
    p_to: u64,
    orders: &[usize],
    tol: f64,
) -> Result<VerificationReport<T>> {
    let ids = verify_identities(ctx, p_from, p_to, tol)?;
    let closed = verify_closed_forms(ctx, p_from, p_to, tol)?;
    let bounds = verify_bounds(ctx, p_from, p_to, orders)?;
    Ok(ids.merge(closed).merge(bounds))
}

#[derive(Serialize)]
struct JsonRecord<'a> {
    check_id: &'a str,
    p: u64,
    passed: bool,
    margin: String,
    lhs: String,
    rhs: String,
    asserted: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    note: Option<&'a str>,
}

#[derive(Serialize)]
struct JsonReport<'a> {
    policy: &'a PrecisionPolicy,
    all_asserted_pass: bool,
    summary: &'a BTreeMap<String, CheckSummary>,
    records: Vec<JsonRecord<'a>>,
}

/// Writes the report. CSV has the columns
/// `check_id,p,passed,margin,lhs,rhs`; JSON carries the policy, the
/// per-check summary and every record. Numbers are decimal strings with the
/// policy's working digits.
pub fn emit_report<T: Real, W: Write>(
    report: &VerificationReport<T>,
    format: Format,
    writer: W,
) -> Result<()> {
    let digits = report.policy.working_digits() as usize;
    let num = |x: T| format_sig(x, digits);
    match format {
        Format::Csv => {
            let mut w = csv::Writer::from_writer(writer);
            w.write_record(["check_id", "p", "passed", "margin", "lhs", "rhs"])
                .map_err(csv_error)?;
            for r in &report.records {
                w.write_record([
                    r.check_id.clone(),
                    r.p.to_string(),
                    r.passed.to_string(),
                    num(r.margin),
                    num(r.lhs),
                    num(r.rhs),
                ])
                .map_err(csv_error)?;
            }
            w.flush()?;
        }
        Format::Json => {
            let doc = JsonReport {
                policy: &report.policy,
                all_asserted_pass: report.all_asserted_pass(),
                summary: &report.summary,
                records: report
                    .records
                    .iter()
                    .map(|r| JsonRecord {
                        check_id: &r.check_id,
                        p: r.p,
                        passed: r.passed,
                        margin: num(r.margin),
                        lhs: num(r.lhs),
                        rhs: num(r.rhs),
                        asserted: r.asserted,
                        note: r.note.as_deref(),
                    })
                    .collect(),
            };
            let mut writer = writer;
            serde_json::to_writer_pretty(&mut writer, &doc).map_err(std::io::Error::from)?;
            writer.write_all(b"\n")?;
        }
    }
    Ok(())
}

fn csv_error(e: csv::Error) -> Error {
    Error::Io(e.into())
}

/// The report rendered to a string.
pub fn render_report<T: Real>(report: &VerificationReport<T>, format: Format) -> Result<String> {
    let mut buf = Vec::new();
    emit_report(report, format, &mut buf)?;
    Ok(String::from_utf8(buf).expect("reports are UTF-8"))
}
