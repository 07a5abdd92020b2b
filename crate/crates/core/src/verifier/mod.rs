//! Identity checks and verification suites.
//!
//! Every check follows the same discipline: the engine recomputes an object
//! from first principles (structure equations, solved constraints), the
//! transcribed reference expression is reduced into the canonical alphabet,
//! and the two are subtracted. A check passes exactly when the residual is
//! the zero rational function; residuals are reported in canonical text.
//!
//! The flagship check is the master volume identity: the exterior
//! derivative of `Phi = sum_{i<j} (lambda_i + lambda_j) theta_{ij}`,
//! expanded in the coframe, has volume coefficient
//! `f3 (sum_i c_i h_{44,i}^2 + 1)`.

pub mod crosscheck;
mod fixtures;
pub mod latex;

pub use fixtures::{FixtureError, Fixtures};

use std::time::Instant;

use serde::{Deserialize, Serialize};

use crate::coframe::{d_form, theta, theta_pairs, DForm};
use crate::reduction::{ReductionContext, ReductionError};
use crate::symkernel::{rat, MultiPoly, RatFunc};

#[derive(Clone, Copy, PartialEq, Eq, Debug, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum CheckStatus {
    Pass,
    Fail,
}

/// Outcome of one named check.
#[derive(Clone, PartialEq, Eq, Debug, Serialize, Deserialize)]
pub struct CheckResult {
    pub name: String,
    pub status: CheckStatus,
    /// Canonical text of lhs - rhs; `"0"` on pass. A failing residual that
    /// satisfies lhs + rhs = 0 carries an orientation diagnostic.
    pub residual: String,
    pub elapsed_ms: u64,
}

impl CheckResult {
    pub fn passed(&self) -> bool {
        self.status == CheckStatus::Pass
    }
}

/// Compare two exact rational functions, timing from `started`.
fn compare(name: &str, lhs: &RatFunc, rhs: &RatFunc, started: Instant) -> CheckResult {
    let residual = lhs - rhs;
    let (status, text) = if residual.is_zero() {
        (CheckStatus::Pass, "0".to_string())
    } else {
        let mut text = residual.to_string();
        if (lhs + rhs).is_zero() {
            text.push_str("  # lhs + rhs = 0: likely orientation/sign-convention error");
        }
        (CheckStatus::Fail, text)
    };
    CheckResult {
        name: name.to_string(),
        status,
        residual: text,
        elapsed_ms: started.elapsed().as_millis() as u64,
    }
}

/// Engine-computed volume coefficient of d(theta_ij): differentiate through
/// the structure equations, expand the connection forms, read off the
/// orientation coefficient.
pub fn compute_x(ctx: &ReductionContext, i: u8, j: u8) -> RatFunc {
    let dtheta = d_form(&theta(i, j), ctx).expect("theta has constant coefficients");
    dtheta.expand_connection(ctx).volume_coefficient()
}

/// Engine-computed volume coefficient of d(Phi).
pub fn compute_dphi(ctx: &ReductionContext) -> RatFunc {
    let mut total = DForm::zero(4);
    for (i, j) in theta_pairs() {
        let weight = &ctx.lambda(i).expect("index") + &ctx.lambda(j).expect("index");
        let phi_ij = theta(i, j).scale(&RatFunc::from_poly(weight));
        total = &total + &d_form(&phi_ij, ctx).expect("polynomial curvature coefficients");
    }
    total.expand_connection(ctx).volume_coefficient()
}

/// The master identity: volume coefficient of d(Phi) against the
/// transcribed right side.
pub fn check_dphi(ctx: &ReductionContext, fixtures: &Fixtures) -> CheckResult {
    let started = Instant::now();
    let lhs = compute_dphi(ctx);
    let rhs = ctx.reduce(fixtures.dphi_rhs()).expect("reference reduces");
    compare("dphi", &lhs, &rhs, started)
}

/// The six per-pair volume coefficients against their closed forms.
pub fn check_x(ctx: &ReductionContext, fixtures: &Fixtures) -> Vec<CheckResult> {
    theta_pairs()
        .into_iter()
        .map(|(i, j)| {
            let started = Instant::now();
            let lhs = compute_x(ctx, i, j);
            let rhs = ctx.reduce(fixtures.x(i, j)).expect("reference reduces");
            compare(&format!("x{i}{j}"), &lhs, &rhs, started)
        })
        .collect()
}

/// The solved diagonal-derivative coefficients against their closed forms.
/// The solve and the transcription are independent routes, so this guards
/// both the Cramer elimination and the reference file.
pub fn check_con3(ctx: &ReductionContext, fixtures: &Fixtures) -> CheckResult {
    let started = Instant::now();
    let mut residuals = Vec::new();
    for a in 1..=3u8 {
        let lhs = ctx.con3_coefficient(a).expect("index").clone();
        let rhs = ctx.reduce(fixtures.con3(a)).expect("reference reduces");
        let r = &lhs - &rhs;
        if !r.is_zero() {
            residuals.push(format!("coefficient {a}: {r}"));
        }
    }
    finish_joint("con3", residuals, started)
}

/// The four partial-fraction identities: each reduces to zero.
pub fn check_partial_fractions(ctx: &ReductionContext, fixtures: &Fixtures) -> Vec<CheckResult> {
    Fixtures::partial_fraction_triples()
        .into_iter()
        .map(|t| {
            let started = Instant::now();
            let lhs = ctx.reduce(fixtures.partial_fraction(t)).expect("reference reduces");
            let name = format!("pf_{}{}{}", t.0, t.1, t.2);
            compare(&name, &lhs, &RatFunc::zero(), started)
        })
        .collect()
}

/// The weighted-trace and cubic trace identities.
pub fn check_traces(ctx: &ReductionContext, fixtures: &Fixtures) -> Vec<CheckResult> {
    let mut out = Vec::new();

    let started = Instant::now();
    let lhs = ctx.reduce(fixtures.trace_weighted()).expect("reference reduces");
    out.push(compare("trace_weighted", &lhs, &RatFunc::zero(), started));

    let started = Instant::now();
    let mut residuals = Vec::new();
    for i in 1..=4u8 {
        let lhs = ctx.reduce(fixtures.trace_cubic(i)).expect("reference reduces");
        if !lhs.is_zero() {
            residuals.push(format!("instance {i}: {lhs}"));
        }
    }
    out.push(finish_joint("trace_cubic", residuals, started));
    out
}

/// Sum-of-squares certificate for the nonnegativity of the c_i numerators:
/// `3 f2 - 4 lambda_i^2` equals the sum of squared differences of the other
/// three curvatures, an exact polynomial identity on the zero-trace locus.
#[derive(Clone, Debug)]
pub struct SosCertificate {
    pub index: u8,
    /// The numerator polynomial, canonical.
    pub target: MultiPoly,
    /// Squared bases: pairwise differences of the other three curvatures.
    pub squares: Vec<MultiPoly>,
}

impl SosCertificate {
    pub fn new(ctx: &ReductionContext, index: u8) -> Result<SosCertificate, ReductionError> {
        if !(1..=4).contains(&index) {
            return Err(ReductionError::IndexOutOfRange(index, "1..=4"));
        }
        let f2 = ctx.power_sum(2)?;
        let li = ctx.lambda(index)?;
        let target = &f2.scale(&rat(3, 1)) - &li.pow(2).scale(&rat(4, 1));
        let others: Vec<u8> = (1..=4).filter(|&a| a != index).collect();
        let mut squares = Vec::new();
        for p in 0..others.len() {
            for q in (p + 1)..others.len() {
                squares.push(ctx.lambda_diff(others[p], others[q])?);
            }
        }
        Ok(SosCertificate { index, target, squares })
    }

    /// Target minus the sum of squares; zero iff the certificate is valid.
    pub fn residual(&self) -> MultiPoly {
        let mut sum = MultiPoly::zero();
        for b in &self.squares {
            sum = &sum + &b.pow(2);
        }
        &self.target - &sum
    }

    pub fn verified(&self) -> bool {
        self.residual().is_zero()
    }
}

/// The four sum-of-squares certificates as checks.
pub fn check_sos(ctx: &ReductionContext) -> Vec<CheckResult> {
    (1..=4u8)
        .map(|i| {
            let started = Instant::now();
            let cert = SosCertificate::new(ctx, i).expect("index in range");
            let residual = RatFunc::from_poly(cert.residual());
            compare(&format!("sos_{i}"), &residual, &RatFunc::zero(), started)
        })
        .collect()
}

/// Newton relations between power sums and elementary symmetric functions
/// at zero trace: f2 = -2 sigma2, f3 = 3 sigma3, f4 = f2^2/2 - 4 sigma4.
pub fn check_newton(ctx: &ReductionContext) -> Vec<CheckResult> {
    let mut out = Vec::new();

    let started = Instant::now();
    let f2 = ctx.power_sum(2).expect("order");
    let s2 = ctx.sigma(2).expect("order");
    out.push(compare(
        "newton_f2",
        &RatFunc::from_poly(f2.clone()),
        &RatFunc::from_poly(s2.scale(&rat(-2, 1))),
        started,
    ));

    let started = Instant::now();
    let f3 = ctx.power_sum(3).expect("order");
    let s3 = ctx.sigma(3).expect("order");
    out.push(compare(
        "newton_f3",
        &RatFunc::from_poly(f3),
        &RatFunc::from_poly(s3.scale(&rat(3, 1))),
        started,
    ));

    let started = Instant::now();
    let f4 = ctx.power_sum(4).expect("order");
    let s4 = ctx.sigma(4).expect("order");
    let rhs = &f2.pow(2).scale(&rat(1, 2)) - &s4.scale(&rat(4, 1));
    out.push(compare("newton_f4", &RatFunc::from_poly(f4), &RatFunc::from_poly(rhs), started));

    out
}

fn finish_joint(name: &str, residuals: Vec<String>, started: Instant) -> CheckResult {
    let (status, text) = if residuals.is_empty() {
        (CheckStatus::Pass, "0".to_string())
    } else {
        (CheckStatus::Fail, residuals.join("; "))
    };
    CheckResult {
        name: name.to_string(),
        status,
        residual: text,
        elapsed_ms: started.elapsed().as_millis() as u64,
    }
}

/// A named group of checks.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum Suite {
    All,
    Dphi,
    X,
    PartialFractions,
    Traces,
    Sos,
    Con3,
    Newton,
}

impl Suite {
    pub fn parse(name: &str) -> Option<Suite> {
        Some(match name {
            "all" => Suite::All,
            "dphi" => Suite::Dphi,
            "x" => Suite::X,
            "partial_fractions" => Suite::PartialFractions,
            "traces" => Suite::Traces,
            "sos" => Suite::Sos,
            "con3" => Suite::Con3,
            "newton" => Suite::Newton,
            _ => return None,
        })
    }

    pub fn name(self) -> &'static str {
        match self {
            Suite::All => "all",
            Suite::Dphi => "dphi",
            Suite::X => "x",
            Suite::PartialFractions => "partial_fractions",
            Suite::Traces => "traces",
            Suite::Sos => "sos",
            Suite::Con3 => "con3",
            Suite::Newton => "newton",
        }
    }

    /// Every selectable suite name, for usage messages.
    pub fn names() -> &'static [&'static str] {
        &["all", "dphi", "x", "partial_fractions", "traces", "sos", "con3", "newton"]
    }
}

/// Run a suite. Results are merged and sorted by check name, so report
/// contents are deterministic.
pub fn run_suite(ctx: &ReductionContext, fixtures: &Fixtures, suite: Suite) -> Vec<CheckResult> {
    let mut out = Vec::new();
    let mut add = |mut v: Vec<CheckResult>| out.append(&mut v);
    match suite {
        Suite::All => {
            add(vec![check_dphi(ctx, fixtures)]);
            add(check_x(ctx, fixtures));
            add(check_partial_fractions(ctx, fixtures));
            add(check_traces(ctx, fixtures));
            add(check_sos(ctx));
            add(vec![check_con3(ctx, fixtures)]);
            add(check_newton(ctx));
        }
        Suite::Dphi => add(vec![check_dphi(ctx, fixtures)]),
        Suite::X => add(check_x(ctx, fixtures)),
        Suite::PartialFractions => add(check_partial_fractions(ctx, fixtures)),
        Suite::Traces => add(check_traces(ctx, fixtures)),
        Suite::Sos => add(check_sos(ctx)),
        Suite::Con3 => add(vec![check_con3(ctx, fixtures)]),
        Suite::Newton => add(check_newton(ctx)),
    }
    out.sort_by(|a, b| a.name.cmp(&b.name));
    out
}
