//! Named comparison suites: brute-force tables against the closed-form
//! evaluators, identity residuals, and pattern-count cross-checks.
//!
//! Every suite produces [`CheckReport`]s, which serialize as one JSON object
//! per line. All comparisons are exact.

use std::collections::BTreeSet;

use num_bigint::BigInt;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::gf::{self, binomial};
use crate::patterns::{self, Pattern};
use crate::sequence::{is_p_ascent, is_primitive, oracle_table, oracle_table_filtered, walk, PAscentSequence, StatSelector};
use crate::series::{parse_series, Discrepancy, Exponents, MultiPoly, SeriesError, TSeries, Var};

/// Oracle enumerations larger than this many words are refused.
pub const ORACLE_WORD_LIMIT: u64 = 100_000_000;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum VerifyError {
    #[error("unknown suite {0:?}")]
    UnknownSuite(String),
    #[error("{suite}: {reason}")]
    Unsupported { suite: String, reason: String },
    #[error("enumeration budget exceeded: about {estimated} sequences, limit {limit}")]
    BudgetExceeded { estimated: BigInt, limit: u64 },
    #[error(transparent)]
    Series(#[from] SeriesError),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Status {
    Pass,
    Fail,
}

/// Parameters a suite ran with. Absent fields do not apply. For suites that
/// sweep a range (`r`, `m`, `k` in some identities) the value is the upper end.
#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct Parameters {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub p: Option<u32>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub order: Option<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub udeg: Option<u32>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub k: Option<u32>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub r: Option<u32>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub m: Option<u32>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub pattern: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub primitive: Option<bool>,
}

impl Parameters {
    fn new(p: Option<u32>, order: usize) -> Self {
        Parameters {
            p,
            order: Some(order),
            ..Default::default()
        }
    }
}

/// Where two sides first disagree. `monomial` holds the exponents of
/// `(u, v, z, x)`; for plain integer sequences it is all zeros and `t_order`
/// is the index.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Mismatch {
    pub t_order: usize,
    pub monomial: Exponents,
    pub expected: String,
    pub actual: String,
}

impl From<Discrepancy> for Mismatch {
    fn from((n, e, expected, actual): Discrepancy) -> Self {
        Mismatch {
            t_order: n,
            monomial: e,
            expected: expected.to_string(),
            actual: actual.to_string(),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CheckReport {
    pub suite: String,
    pub parameters: Parameters,
    pub status: Status,
    pub first_discrepancy: Option<Mismatch>,
    /// Which sub-check failed, or why the suite could not run.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub detail: Option<String>,
}

impl CheckReport {
    pub fn passed(&self) -> bool {
        self.status == Status::Pass
    }

    pub fn to_json_line(&self) -> String {
        serde_json::to_string(self).expect("report serializes")
    }
}

/// Compare two series coefficientwise and report the first difference.
pub fn compare_series(suite: &str, parameters: Parameters, expected: &TSeries, actual: &TSeries) -> CheckReport {
    let mut c = Check::new(suite, parameters);
    c.series("", expected, actual);
    c.finish()
}

/// Compare two integer sequences indexed from `first_index`.
pub fn compare_counts(
    suite: &str,
    parameters: Parameters,
    first_index: usize,
    expected: &[BigInt],
    actual: &[BigInt],
) -> CheckReport {
    let mut c = Check::new(suite, parameters);
    c.counts("", first_index, expected, actual);
    c.finish()
}

/// Accumulates sub-checks and keeps the first failure.
struct Check {
    suite: String,
    parameters: Parameters,
    failure: Option<(Mismatch, String)>,
}

impl Check {
    fn new(suite: &str, parameters: Parameters) -> Self {
        Check {
            suite: suite.to_string(),
            parameters,
            failure: None,
        }
    }

    fn ok(&self) -> bool {
        self.failure.is_none()
    }

    fn fail(&mut self, label: &str, m: Mismatch) {
        if self.failure.is_none() {
            self.failure = Some((m, label.to_string()));
        }
    }

    fn series(&mut self, label: &str, expected: &TSeries, actual: &TSeries) {
        if !self.ok() {
            return;
        }
        if let Some(d) = expected.first_difference(actual) {
            self.fail(label, d.into());
        } else if expected.order() != actual.order() {
            let n = expected.order().min(actual.order());
            self.fail(
                label,
                Mismatch {
                    t_order: n,
                    monomial: [0; 4],
                    expected: format!("order {}", expected.order()),
                    actual: format!("order {}", actual.order()),
                },
            );
        }
    }

    fn value(&mut self, label: &str, n: usize, expected: &BigInt, actual: &BigInt) {
        if self.ok() && expected != actual {
            self.fail(
                label,
                Mismatch {
                    t_order: n,
                    monomial: [0; 4],
                    expected: expected.to_string(),
                    actual: actual.to_string(),
                },
            );
        }
    }

    fn counts(&mut self, label: &str, first_index: usize, expected: &[BigInt], actual: &[BigInt]) {
        for (i, (e, a)) in expected.iter().zip(actual).enumerate() {
            self.value(label, first_index + i, e, a);
        }
        if expected.len() != actual.len() {
            let n = first_index + expected.len().min(actual.len());
            self.fail(
                label,
                Mismatch {
                    t_order: n,
                    monomial: [0; 4],
                    expected: format!("{} terms", expected.len()),
                    actual: format!("{} terms", actual.len()),
                },
            );
        }
    }

    fn holds(&mut self, label: &str, n: usize, ok: bool) {
        if !ok {
            self.fail(
                label,
                Mismatch {
                    t_order: n,
                    monomial: [0; 4],
                    expected: "true".into(),
                    actual: "false".into(),
                },
            );
        }
    }

    fn finish(self) -> CheckReport {
        match self.failure {
            None => CheckReport {
                suite: self.suite,
                parameters: self.parameters,
                status: Status::Pass,
                first_discrepancy: None,
                detail: None,
            },
            Some((m, label)) => CheckReport {
                suite: self.suite,
                parameters: self.parameters,
                status: Status::Fail,
                first_discrepancy: Some(m),
                detail: (!label.is_empty()).then_some(label),
            },
        }
    }
}

fn unsupported(suite: &str, reason: impl Into<String>) -> VerifyError {
    VerifyError::Unsupported {
        suite: suite.to_string(),
        reason: reason.into(),
    }
}

fn require_p(suite: &str, p: u32) -> Result<(), VerifyError> {
    if p == 0 {
        Err(unsupported(suite, "p must be at least 1"))
    } else {
        Ok(())
    }
}

/// Number of p-ascent sequences of length at most `order`.
pub fn oracle_size_estimate(p: u32, order: usize) -> BigInt {
    gf::eval_a(p, order)
        .specialize_i64(&[(Var::Z, 1)])
        .scalar_coeffs()
        .expect("scalar after z = 1")
        .into_iter()
        .sum()
}

fn check_budget(p: u32, order: usize) -> Result<(), VerifyError> {
    let estimated = oracle_size_estimate(p, order);
    if estimated > BigInt::from(ORACLE_WORD_LIMIT) {
        return Err(VerifyError::BudgetExceeded {
            estimated,
            limit: ORACLE_WORD_LIMIT,
        });
    }
    Ok(())
}

/// Generating functions that can be checked against brute-force enumeration.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum OracleTarget {
    G,
    G1Full,
    G1U,
    A,
    R,
    H,
    Maxk(u32),
    P,
}

impl OracleTarget {
    pub const NAMES: [&'static str; 8] = ["G", "G1_full", "G1_u", "A", "R", "H", "maxk", "P"];

    pub fn name(&self) -> &'static str {
        match self {
            OracleTarget::G => "G",
            OracleTarget::G1Full => "G1_full",
            OracleTarget::G1U => "G1_u",
            OracleTarget::A => "A",
            OracleTarget::R => "R",
            OracleTarget::H => "H",
            OracleTarget::Maxk(_) => "maxk",
            OracleTarget::P => "P",
        }
    }

    /// `k` is required for `maxk` and ignored otherwise.
    pub fn parse(name: &str, k: Option<u32>) -> Result<Self, VerifyError> {
        Ok(match name {
            "G" => OracleTarget::G,
            "G1_full" => OracleTarget::G1Full,
            "G1_u" => OracleTarget::G1U,
            "A" => OracleTarget::A,
            "R" => OracleTarget::R,
            "H" => OracleTarget::H,
            "P" => OracleTarget::P,
            "maxk" => match k {
                Some(k) if k >= 1 => OracleTarget::Maxk(k),
                _ => return Err(unsupported("oracle_maxk", "k >= 1 is required")),
            },
            _ => return Err(VerifyError::UnknownSuite(format!("oracle_{name}"))),
        })
    }
}

/// No run of `k + 1` equal letters ending at the last position.
fn repetition_at_most(k: u32) -> impl Fn(&[u32]) -> bool + Sync {
    move |w: &[u32]| {
        let k = k as usize;
        if w.len() <= k {
            return true;
        }
        let tail = &w[w.len() - k - 1..];
        tail.iter().any(|&x| x != tail[0])
    }
}

/// Compare the brute-force table (specialized to the target's variables)
/// with the closed-form evaluator, through `t^order`.
pub fn check_oracle_vs(target: OracleTarget, p: u32, order: usize) -> Result<CheckReport, VerifyError> {
    let suite = format!("oracle_{}", target.name());
    require_p(&suite, p)?;
    if target == OracleTarget::P && p != 1 {
        return Err(unsupported(&suite, "the Fishburn series is the p = 1 case"));
    }
    check_budget(p, order)?;
    let mut params = Parameters::new(Some(p), order);
    let udeg = order as u32;
    let (expected, actual) = match target {
        OracleTarget::G => (oracle_table(p, order, StatSelector::ALL), gf::eval_g(p, order)?),
        OracleTarget::G1Full => (
            oracle_table(p, order, StatSelector::ALL).coefficient_of(Var::X, 1),
            gf::eval_g1_full(p, order)?,
        ),
        OracleTarget::G1U => {
            params.udeg = Some(udeg);
            (
                oracle_table(p, order, StatSelector::ALL)
                    .coefficient_of(Var::X, 1)
                    .specialize_i64(&[(Var::V, 1)]),
                gf::eval_g1_u(p, order, udeg),
            )
        }
        OracleTarget::A => (oracle_table(p, order, StatSelector::zeros_only()), gf::eval_a(p, order)),
        OracleTarget::R => (
            oracle_table_filtered(p, order, StatSelector::NONE, &is_primitive),
            gf::eval_r(p, order),
        ),
        OracleTarget::H => {
            params.udeg = Some(udeg);
            let select = StatSelector {
                ascents: true,
                zeros: true,
                ..StatSelector::NONE
            };
            (
                &oracle_table(p, order, select) - &TSeries::one(order),
                gf::eval_h(p, order, udeg),
            )
        }
        OracleTarget::Maxk(k) => {
            params.k = Some(k);
            (
                oracle_table_filtered(p, order, StatSelector::NONE, &repetition_at_most(k)),
                gf::eval_maxk(p, k, order),
            )
        }
        OracleTarget::P => (oracle_table(1, order, StatSelector::NONE), gf::eval_p(order)),
    };
    Ok(compare_series(&suite, params, &expected, &actual))
}

/// Identity suites, in registry order.
pub const IDENTITIES: [&str; 11] = [
    "kernel_G",
    "kernel_H",
    "rel16",
    "psi",
    "jelinek",
    "H_gives_A",
    "primitive_substitution",
    "delta_gamma_calculus",
    "cancellation",
    "maxk_boundary",
    "G1_full_vs_u",
];

const REL16_MAX_R: u32 = 3;
const PSI_MAX_M: u32 = 6;
const CALCULUS_MAX: u32 = 6;

fn t_series(order: usize) -> TSeries {
    TSeries::t(order)
}

fn poly(s: &str) -> MultiPoly {
    crate::series::parse_poly(s).expect("fixed polynomial parses")
}

/// Check a named identity through `t^order`. `p` is ignored by `psi` and
/// `delta_gamma_calculus`; `jelinek` requires `p = 1`.
pub fn check_identity(name: &str, p: u32, order: usize) -> Result<CheckReport, VerifyError> {
    let udeg = order as u32;
    let report = match name {
        "kernel_G" => {
            require_p(name, p)?;
            check_budget(p, order)?;
            let mut c = Check::new(name, Parameters::new(Some(p), order));
            let full = oracle_table(p, order, StatSelector::ALL);
            let kernel = gf::kernel_denominator(order);
            let u = MultiPoly::var(Var::U);
            let v = MultiPoly::var(Var::V);
            let z = MultiPoly::var(Var::Z);
            let t = t_series(order);
            let shift_factor = &(&(&v - &MultiPoly::one()) * &z) - &v;
            for r in 1..order.max(2) as u32 {
                let gr = full.coefficient_of(Var::X, r);
                let gr1 = gr.specialize_i64(&[(Var::V, 1)]);
                let lhs = &kernel * &gr;
                let lead = &(&z.pow(r) * &(&u * &v)) * &(&v.pow(p) - &MultiPoly::one());
                let rhs = &(&TSeries::monomial(lead, r as usize + 1, order) + &(&t * &gr1.mul_poly(&shift_factor)))
                    + &(&t * &gr1.subst_u_to_uv().mul_poly(&(&u * &v.pow(p + 1))));
                c.series(&format!("r={r}"), &lhs, &rhs);
            }
            c.finish()
        }
        "kernel_H" => {
            require_p(name, p)?;
            check_budget(p, order)?;
            let select = StatSelector {
                ascents: true,
                last: true,
                zeros: true,
                run: false,
            };
            let h = &oracle_table(p, order, select) - &TSeries::one(order);
            let h1 = h.specialize_i64(&[(Var::V, 1)]);
            let u = MultiPoly::var(Var::U);
            let v = MultiPoly::var(Var::V);
            let t = t_series(order);
            let lhs = &gf::kernel_denominator(order) * &h;
            let rhs = &(&TSeries::monomial(poly("(v-1)z"), 1, order) + &(&t * &h1.mul_poly(&poly("z(v-1)-v"))))
                + &(&t * &h1.subst_u_to_uv().mul_poly(&(&u * &v.pow(p + 1))));
            compare_series(name, Parameters::new(Some(p), order), &lhs, &rhs)
        }
        "rel16" => {
            require_p(name, p)?;
            check_budget(p, order)?;
            let mut params = Parameters::new(Some(p), order);
            params.r = Some(REL16_MAX_R);
            let mut c = Check::new(name, params);
            let full = oracle_table(p, order, StatSelector::ALL);
            let g1 = full.coefficient_of(Var::X, 1);
            for r in 1..=REL16_MAX_R {
                let gr = full.coefficient_of(Var::X, r);
                let shift = TSeries::monomial(poly("z").pow(r - 1), r as usize - 1, order);
                c.series(&format!("oracle r={r}"), &gr, &(&shift * &g1));
                c.series(&format!("eval r={r}"), &gr, &gf::eval_gr(p, r, order)?);
            }
            c.finish()
        }
        "psi" => {
            let mut params = Parameters::new(None, order);
            params.udeg = Some(udeg);
            params.m = Some(PSI_MAX_M);
            let mut c = Check::new(name, params);
            for m in 0..=PSI_MAX_M {
                let (lhs, rhs) = gf::psi(m, order, udeg);
                c.series(&format!("m={m}"), &rhs, &lhs);
            }
            c.finish()
        }
        "jelinek" => {
            if p != 1 {
                return Err(unsupported(name, "only the p = 1 identity is known"));
            }
            compare_series(
                name,
                Parameters::new(Some(1), order),
                &gf::eval_a1_product_form(order),
                &gf::eval_a(1, order),
            )
        }
        "H_gives_A" => {
            require_p(name, p)?;
            let mut params = Parameters::new(Some(p), order);
            params.udeg = Some(udeg);
            let h = gf::eval_h(p, order, udeg).specialize_i64(&[(Var::U, 1)]);
            compare_series(name, params, &gf::eval_a(p, order), &(&TSeries::one(order) + &h))
        }
        "primitive_substitution" => {
            require_p(name, p)?;
            let mut c = Check::new(name, Parameters::new(Some(p), order));
            let a1 = gf::eval_a(p, order).specialize_i64(&[(Var::Z, 1)]);
            let r = gf::eval_r(p, order);
            let fwd = parse_series("1 - t", order)?.invert()?;
            let fwd = &t_series(order) * &fwd;
            let back = parse_series("1 + t", order)?.invert()?;
            let back = &t_series(order) * &back;
            c.series("R(t/(1-t)) = A", &a1, &r.compose_t(&fwd)?);
            c.series("A(t/(1+t)) = R", &r, &a1.compose_t(&back)?);
            c.finish()
        }
        "delta_gamma_calculus" => {
            let mut params = Parameters::new(None, order);
            params.k = Some(CALCULUS_MAX);
            let mut c = Check::new(name, params);
            let u = TSeries::constant(MultiPoly::var(Var::U), order);
            let um1 = TSeries::constant(poly("u - 1"), order);
            for k in 0..=CALCULUS_MAX {
                let dk = gf::delta(k, order);
                let sub = u.div(&dk)?;
                let (lhs, rhs) = (
                    &um1.substitute_var(Var::U, &sub) * &dk,
                    &gf::one_minus_t_pow(k, order) * &um1,
                );
                c.series(&format!("(u-1) k={k}"), &rhs, &lhs);
                for s in 0..=CALCULUS_MAX {
                    let lhs = &gf::delta(s, order).substitute_var(Var::U, &sub) * &dk;
                    c.series(&format!("delta s={s} k={k}"), &gf::delta(s + k, order), &lhs);
                    if s >= 1 {
                        let lhs = &gf::gamma(s, order).substitute_var(Var::U, &sub) * &dk;
                        c.series(&format!("gamma s={s} k={k}"), &gf::gamma(s + k, order), &lhs);
                    }
                    let lhs = sub.div(&gf::delta(s, order).substitute_var(Var::U, &sub))?;
                    let rhs = u.div(&gf::delta(s + k, order))?;
                    c.series(&format!("u/delta s={s} k={k}"), &rhs, &lhs);
                }
            }
            for s in 0..=CALCULUS_MAX {
                c.series(&format!("delta_bar s={s}"), &gf::delta(s, order).subst_u_to_uv(), &gf::delta_bar(s, order));
                c.series(&format!("gamma_bar s={s}"), &gf::gamma(s, order).subst_u_to_uv(), &gf::gamma_bar(s, order));
            }
            c.finish()
        }
        "cancellation" => {
            require_p(name, p)?;
            let mut params = Parameters::new(Some(p), order);
            params.udeg = Some(udeg);
            let mut c = Check::new(name, params);
            for (label, s) in [("G1_u", gf::eval_g1_u(p, order, udeg)), ("H", gf::eval_h(p, order, udeg))] {
                for (n, coeff) in s.coeffs().iter().enumerate() {
                    if let Some((e, k)) = coeff.terms().find(|(e, _)| e[0] as usize >= n) {
                        c.fail(
                            label,
                            Mismatch {
                                t_order: n,
                                monomial: *e,
                                expected: "0".into(),
                                actual: k.to_string(),
                            },
                        );
                    }
                }
            }
            c.finish()
        }
        "maxk_boundary" => {
            require_p(name, p)?;
            let mut params = Parameters::new(Some(p), order);
            params.k = Some(order as u32 + 2);
            let mut c = Check::new(name, params);
            let a1 = gf::eval_a(p, order).specialize_i64(&[(Var::Z, 1)]);
            c.series("k=1", &gf::eval_r(p, order), &gf::eval_maxk(p, 1, order));
            for k in [order as u32, order as u32 + 2] {
                c.series(&format!("k={k}"), &a1, &gf::eval_maxk(p, k.max(1), order));
            }
            c.finish()
        }
        "G1_full_vs_u" => {
            require_p(name, p)?;
            let mut params = Parameters::new(Some(p), order);
            params.udeg = Some(udeg);
            let full = gf::eval_g1_full(p, order)?.specialize_i64(&[(Var::V, 1)]);
            compare_series(name, params, &gf::eval_g1_u(p, order, udeg), &full)
        }
        _ => return Err(VerifyError::UnknownSuite(name.to_string())),
    };
    Ok(report)
}

/// Pattern suites, in registry order.
pub const PATTERN_SUITES: [&str; 8] = [
    "pattern_closed",
    "pattern_gf",
    "decomposition_10",
    "recursion_012",
    "bijection_10_012",
    "embed_project",
    "vincular_212",
    "avoid_00_distinct",
];

/// Every `(pattern, primitive)` pair with a closed form for some `p`.
pub const CLOSED_FORM_PAIRS: [(&str, bool); 7] = [
    ("01", false),
    ("01", true),
    ("10", false),
    ("10", true),
    ("00", false),
    ("00", true),
    ("012", false),
];

fn pattern(s: &str) -> Pattern {
    s.parse().expect("fixed pattern parses")
}

fn brute_counts(p: u32, pat: &Pattern, from: usize, to: usize, primitive: bool) -> Vec<BigInt> {
    (from..=to)
        .into_par_iter()
        .map(|n| patterns::count_avoiders(p, pat, n, primitive))
        .collect()
}

fn pattern_params(p: u32, order: usize, pat: &str, primitive: bool) -> Parameters {
    Parameters {
        pattern: Some(pat.to_string()),
        primitive: Some(primitive),
        ..Parameters::new(Some(p), order)
    }
}

/// Run a pattern suite; some produce one report per supported pattern.
pub fn check_pattern_suite(name: &str, p: u32, order: usize) -> Result<Vec<CheckReport>, VerifyError> {
    require_p(name, p)?;
    let mut out = Vec::new();
    match name {
        "pattern_closed" => {
            for (pat_s, primitive) in CLOSED_FORM_PAIRS {
                let pat = pattern(pat_s);
                if patterns::closed_count(p, &pat, 1, primitive).is_err() {
                    continue;
                }
                let closed: Vec<BigInt> = (1..=order)
                    .map(|n| patterns::closed_count(p, &pat, n, primitive).expect("supported pair"))
                    .collect();
                let brute = brute_counts(p, &pat, 1, order, primitive);
                out.push(compare_counts(name, pattern_params(p, order, pat_s, primitive), 1, &brute, &closed));
            }
        }
        "pattern_gf" => {
            for (pat_s, primitive) in CLOSED_FORM_PAIRS {
                let pat = pattern(pat_s);
                let Ok(series) = patterns::gf_avoiders(p, &pat, primitive, order) else {
                    continue;
                };
                let coeffs = series.scalar_coeffs().expect("scalar series");
                let brute = brute_counts(p, &pat, 0, order, primitive);
                out.push(compare_counts(name, pattern_params(p, order, pat_s, primitive), 0, &brute, &coeffs));
            }
        }
        "decomposition_10" => {
            let pat = pattern("10");
            let a = brute_counts(p, &pat, 1, order, false);
            let r = brute_counts(p, &pat, 1, order, true);
            let composed: Vec<BigInt> = (1..=order as u64)
                .map(|n| (1..=n).map(|s| binomial(n - 1, s - 1) * &r[s as usize - 1]).sum())
                .collect();
            let mut c = Check::new(name, pattern_params(p, order, "10", false));
            c.counts("plain from primitive", 1, &a, &composed);
            c.counts("primitive closed form", 1, &r, &(1..=order).map(|n| patterns::primitive_avoid_10(p, n)).collect::<Vec<_>>());
            c.counts("plain closed form", 1, &a, &(1..=order).map(|n| patterns::avoid_10(p, n)).collect::<Vec<_>>());
            out.push(c.finish());
        }
        "recursion_012" => {
            if p < 2 {
                return Err(unsupported(name, "the recursion is seeded at p = 2"));
            }
            let brute = brute_counts(p, &pattern("012"), 1, order, false);
            let rec: Vec<BigInt> = (1..=order).map(|n| patterns::avoid_012_recursive(p, n)).collect();
            out.push(compare_counts(name, pattern_params(p, order, "012", false), 1, &brute, &rec));
        }
        "bijection_10_012" => {
            let mut params = Parameters::new(Some(2), order);
            params.pattern = Some("10".into());
            out.push(check_bijection(name, params, order));
        }
        "embed_project" => out.push(check_embedding(name, p, order)),
        "vincular_212" => {
            let ternary: Vec<BigInt> = (1..=order).map(patterns::count_vincular_212_ternary).collect();
            let brute = brute_counts(3, &pattern("00"), 1, order, false);
            let mut params = Parameters::new(Some(3), order);
            params.pattern = Some("00".into());
            out.push(compare_counts(name, params, 1, &brute, &ternary));
        }
        "avoid_00_distinct" => {
            let pat = pattern("00");
            let mut c = Check::new(name, pattern_params(p, order, "00", false));
            walk(p, order, &|_: &[u32]| true, &mut |w: &[u32], _| {
                if c.ok() {
                    let distinct = w.iter().collect::<BTreeSet<_>>().len() == w.len();
                    c.holds(&patterns::format_word(w), w.len(), patterns::occurs(&pat, w) != distinct);
                }
            });
            out.push(c.finish());
        }
        _ => return Err(VerifyError::UnknownSuite(name.to_string())),
    }
    Ok(out)
}

fn check_bijection(name: &str, params: Parameters, order: usize) -> CheckReport {
    let mut c = Check::new(name, params);
    let p10 = pattern("10");
    let p012 = pattern("012");
    for n in 0..=order {
        let src = patterns::avoiders(2, &p10, n, false);
        let dst = patterns::avoiders(2, &p012, n, false);
        c.value("class sizes", n, &BigInt::from(src.len()), &BigInt::from(dst.len()));
        if n >= 2 {
            let closed = BigInt::from(n + 1) << (n - 2);
            c.value("closed size", n, &closed, &BigInt::from(src.len()));
        }
        let mut images = Vec::with_capacity(src.len());
        for w in &src {
            match patterns::bijection_10_to_012(w) {
                Ok(img) => {
                    let back = patterns::bijection_012_to_10(&img);
                    c.holds(&format!("inverse of {}", patterns::format_word(w)), n, back.as_deref() == Ok(w.as_slice()));
                    images.push(img);
                }
                Err(_) => c.holds(&format!("forward on {}", patterns::format_word(w)), n, false),
            }
        }
        images.sort();
        c.holds("image equals the 012 class", n, images == dst);
    }
    c.finish()
}

fn check_embedding(name: &str, p: u32, order: usize) -> CheckReport {
    let mut c = Check::new(name, Parameters::new(Some(p), order));
    walk(p, order, &|_: &[u32]| true, &mut |w: &[u32], ascents| {
        if !c.ok() {
            return;
        }
        let seq = PAscentSequence::new(p, w.to_vec()).expect("walk yields valid words");
        let e = patterns::embed(&seq);
        let back = patterns::project(&e, p);
        c.holds(&format!("round trip {}", patterns::format_word(w)), w.len(), back.as_ref() == Ok(&seq));
        if !w.is_empty() && w.len() < order {
            // one letter past the allowance is the first invalid extension
            let mut cand = w.to_vec();
            for x in 0..=p + ascents + 1 {
                cand.push(x);
                let lhs = is_p_ascent(&cand, p).expect("p >= 1");
                let rhs = is_p_ascent(&patterns::embed_word(&cand, p), 1).expect("p = 1");
                c.holds(&format!("validity {}", patterns::format_word(&cand)), cand.len(), lhs == rhs);
                cand.pop();
            }
        }
    });
    // arbitrary short words starting with 0; a word starting with a small
    // nonzero letter is invalid but its embedding need not be
    let len = order.min(6);
    let alphabet = 7u32;
    for l in 1..=len {
        let total = alphabet.pow(l as u32 - 1);
        for code in 0..total {
            let mut x = code;
            let w: Vec<u32> = std::iter::once(0)
                .chain((1..l).map(|_| {
                    let d = x % alphabet;
                    x /= alphabet;
                    d
                }))
                .collect();
            let lhs = is_p_ascent(&w, p).expect("p >= 1");
            let rhs = is_p_ascent(&patterns::embed_word(&w, p), 1).expect("p = 1");
            c.holds(&format!("validity {}", patterns::format_word(&w)), l, lhs == rhs);
        }
    }
    c.finish()
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SuiteKind {
    Oracle,
    Identity,
    Pattern,
}

/// A suite and the public functions it exercises.
#[derive(Debug, Clone, Copy)]
pub struct SuiteInfo {
    pub name: &'static str,
    pub kind: SuiteKind,
    pub covers: &'static [&'static str],
}

pub const REGISTRY: &[SuiteInfo] = &[
    SuiteInfo { name: "oracle_G", kind: SuiteKind::Oracle, covers: &["eval_g", "eval_g1_full", "kernel_denominator", "kernel_sum"] },
    SuiteInfo { name: "oracle_G1_full", kind: SuiteKind::Oracle, covers: &["eval_g1_full"] },
    SuiteInfo { name: "oracle_G1_u", kind: SuiteKind::Oracle, covers: &["eval_g1_u", "kernel_sum"] },
    SuiteInfo { name: "oracle_A", kind: SuiteKind::Oracle, covers: &["eval_a"] },
    SuiteInfo { name: "oracle_R", kind: SuiteKind::Oracle, covers: &["eval_r"] },
    SuiteInfo { name: "oracle_H", kind: SuiteKind::Oracle, covers: &["eval_h"] },
    SuiteInfo { name: "oracle_maxk", kind: SuiteKind::Oracle, covers: &["eval_maxk"] },
    SuiteInfo { name: "oracle_P", kind: SuiteKind::Oracle, covers: &["eval_p"] },
    SuiteInfo { name: "kernel_G", kind: SuiteKind::Identity, covers: &["kernel_denominator"] },
    SuiteInfo { name: "kernel_H", kind: SuiteKind::Identity, covers: &["kernel_denominator"] },
    SuiteInfo { name: "rel16", kind: SuiteKind::Identity, covers: &["eval_gr"] },
    SuiteInfo { name: "psi", kind: SuiteKind::Identity, covers: &["psi"] },
    SuiteInfo { name: "jelinek", kind: SuiteKind::Identity, covers: &["eval_a1_product_form", "eval_a"] },
    SuiteInfo { name: "H_gives_A", kind: SuiteKind::Identity, covers: &["eval_h", "eval_a"] },
    SuiteInfo { name: "primitive_substitution", kind: SuiteKind::Identity, covers: &["eval_r", "eval_a"] },
    SuiteInfo { name: "delta_gamma_calculus", kind: SuiteKind::Identity, covers: &["delta", "gamma", "delta_bar", "gamma_bar", "one_minus_t_pow"] },
    SuiteInfo { name: "cancellation", kind: SuiteKind::Identity, covers: &["eval_g1_u", "eval_h"] },
    SuiteInfo { name: "maxk_boundary", kind: SuiteKind::Identity, covers: &["eval_maxk"] },
    SuiteInfo { name: "G1_full_vs_u", kind: SuiteKind::Identity, covers: &["eval_g1_full", "eval_g1_u"] },
    SuiteInfo {
        name: "pattern_closed",
        kind: SuiteKind::Pattern,
        covers: &["closed_count:01", "closed_count:10", "closed_count:00", "closed_count:012", "count_avoiders"],
    },
    SuiteInfo { name: "pattern_gf", kind: SuiteKind::Pattern, covers: &["gf_avoiders:01", "gf_avoiders:10", "gf_avoiders:00"] },
    SuiteInfo { name: "decomposition_10", kind: SuiteKind::Pattern, covers: &["avoid_10", "primitive_avoid_10"] },
    SuiteInfo { name: "recursion_012", kind: SuiteKind::Pattern, covers: &["avoid_012_recursive"] },
    SuiteInfo { name: "bijection_10_012", kind: SuiteKind::Pattern, covers: &["bijection_10_to_012", "bijection_012_to_10"] },
    SuiteInfo { name: "embed_project", kind: SuiteKind::Pattern, covers: &["embed", "embed_word", "project"] },
    SuiteInfo { name: "vincular_212", kind: SuiteKind::Pattern, covers: &["count_vincular_212_ternary"] },
    SuiteInfo { name: "avoid_00_distinct", kind: SuiteKind::Pattern, covers: &["occurs"] },
];

/// Every evaluator and closed form that must appear in some suite.
pub const COVERAGE_TARGETS: &[&str] = &[
    "delta",
    "gamma",
    "delta_bar",
    "gamma_bar",
    "one_minus_t_pow",
    "kernel_sum",
    "kernel_denominator",
    "eval_g1_u",
    "eval_g1_full",
    "eval_gr",
    "eval_g",
    "eval_h",
    "eval_a",
    "eval_p",
    "eval_r",
    "eval_maxk",
    "psi",
    "eval_a1_product_form",
    "count_avoiders",
    "closed_count:01",
    "closed_count:10",
    "closed_count:00",
    "closed_count:012",
    "avoid_10",
    "primitive_avoid_10",
    "avoid_012_recursive",
    "gf_avoiders:01",
    "gf_avoiders:10",
    "gf_avoiders:00",
    "bijection_10_to_012",
    "bijection_012_to_10",
    "embed",
    "embed_word",
    "project",
    "count_vincular_212_ternary",
    "occurs",
];

const fn str_eq(a: &str, b: &str) -> bool {
    let (a, b) = (a.as_bytes(), b.as_bytes());
    if a.len() != b.len() {
        return false;
    }
    let mut i = 0;
    while i < a.len() {
        if a[i] != b[i] {
            return false;
        }
        i += 1;
    }
    true
}

const fn is_covered(target: &str) -> bool {
    let mut i = 0;
    while i < REGISTRY.len() {
        let covers = REGISTRY[i].covers;
        let mut j = 0;
        while j < covers.len() {
            if str_eq(covers[j], target) {
                return true;
            }
            j += 1;
        }
        i += 1;
    }
    false
}

const fn registry_complete() -> bool {
    let mut i = 0;
    while i < COVERAGE_TARGETS.len() {
        if !is_covered(COVERAGE_TARGETS[i]) {
            return false;
        }
        i += 1;
    }
    true
}

const _: () = assert!(registry_complete(), "an evaluator or closed form is not covered by any suite");

/// Suite names accepted by [`run_suite`].
pub fn suite_names() -> impl Iterator<Item = &'static str> {
    REGISTRY.iter().map(|s| s.name)
}

/// Parameters for a single suite run.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct SuiteParams {
    pub p: u32,
    pub order: usize,
    /// Repetition bound for `oracle_maxk`.
    pub k: Option<u32>,
}

/// Run one named suite.
pub fn run_suite(name: &str, params: &SuiteParams) -> Result<Vec<CheckReport>, VerifyError> {
    let info = REGISTRY
        .iter()
        .find(|s| s.name == name)
        .ok_or_else(|| VerifyError::UnknownSuite(name.to_string()))?;
    match info.kind {
        SuiteKind::Oracle => {
            let target = OracleTarget::parse(&name["oracle_".len()..], params.k)?;
            Ok(vec![check_oracle_vs(target, params.p, params.order)?])
        }
        SuiteKind::Identity => Ok(vec![check_identity(name, params.p, params.order)?]),
        SuiteKind::Pattern => check_pattern_suite(name, params.p, params.order),
    }
}

/// A report for a suite that could not run at all.
fn error_report(name: &str, params: &SuiteParams, err: &VerifyError) -> CheckReport {
    CheckReport {
        suite: name.to_string(),
        parameters: Parameters {
            k: params.k,
            ..Parameters::new(Some(params.p), params.order)
        },
        status: Status::Fail,
        first_discrepancy: Some(Mismatch {
            t_order: params.order,
            monomial: [0; 4],
            expected: "suite completes".into(),
            actual: err.to_string(),
        }),
        detail: Some(err.to_string()),
    }
}

/// The job list behind [`run_all`], in report order.
pub fn full_matrix(budget: usize) -> Vec<(&'static str, SuiteParams)> {
    assert!(budget >= 4, "budget must be at least 4");
    let job = |name, p, order| (name, SuiteParams { p, order, k: None });
    let mut jobs = Vec::new();
    for p in 1..=4u32 {
        for name in ["oracle_G", "oracle_G1_full", "oracle_G1_u", "oracle_A", "oracle_R", "oracle_H"] {
            jobs.push(job(name, p, budget));
        }
        jobs.push((
            "oracle_maxk",
            SuiteParams {
                p,
                order: budget,
                k: Some(2),
            },
        ));
        if p == 1 {
            jobs.push(job("oracle_P", 1, budget));
        }
        for name in ["kernel_G", "kernel_H", "rel16", "G1_full_vs_u"] {
            jobs.push(job(name, p, budget));
        }
        for name in ["H_gives_A", "primitive_substitution", "cancellation", "maxk_boundary"] {
            jobs.push(job(name, p, budget + 2));
        }
        for name in ["pattern_closed", "pattern_gf", "decomposition_10"] {
            jobs.push(job(name, p, budget + 2));
        }
        if p >= 2 {
            jobs.push(job("recursion_012", p, budget + 2));
        }
        jobs.push(job("embed_project", p, budget));
        jobs.push(job("avoid_00_distinct", p, budget));
    }
    jobs.push(job("jelinek", 1, 3 * budget + 6));
    jobs.push(job("psi", 1, 2 * budget + 4));
    jobs.push(job("delta_gamma_calculus", 1, budget + 4));
    jobs.push(job("bijection_10_012", 2, budget + 4));
    jobs.push(job("vincular_212", 3, budget + 2));
    jobs
}

/// Run the whole matrix for `p = 1..=4`, enumerating words up to length
/// `budget`. Suites run in parallel; reports come back in matrix order.
pub fn run_all(budget: usize) -> Vec<CheckReport> {
    full_matrix(budget)
        .par_iter()
        .map(|(name, params)| run_suite(name, params).unwrap_or_else(|e| vec![error_report(name, params, &e)]))
        .collect::<Vec<_>>()
        .into_iter()
        .flatten()
        .collect()
}
