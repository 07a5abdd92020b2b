//! Seeded numeric crosscheck.
//!
//! The symbolic checks compare engine output against reduced references;
//! this module compares them again along an independent route. Reference
//! expressions are evaluated verbatim in the raw alphabet (the fourth
//! curvature gets its trace value, derivatives get free samples), while the
//! engine objects are evaluated in the canonical alphabet. All arithmetic
//! is exact rational, so agreement is equality, not closeness.

use std::time::Instant;

use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::reduction::ReductionContext;
use crate::symkernel::{Assignment, RatFunc, Rational, Symbol};

use super::{compute_dphi, compute_x, CheckResult, CheckStatus, Fixtures};
use crate::coframe::theta_pairs;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum CrosscheckError {
    #[error("trial count must be at least 1")]
    InvalidTrials,
}

/// One sampled evaluation point.
#[derive(Debug, Clone)]
pub struct SamplePoint {
    /// Curvature values; the fourth is the negated sum of the first three,
    /// and all four are pairwise distinct.
    pub lambdas: [Rational; 4],
    /// Values for the eight free derivative generators, in alphabet order.
    pub derivs: [Rational; 8],
}

impl SamplePoint {
    /// Assignment over the raw alphabet (includes the fourth curvature).
    pub fn raw_assignment(&self) -> Assignment {
        let mut pt = self.canonical_assignment();
        pt.insert(Symbol::Lambda(4), self.lambdas[3].clone());
        pt
    }

    /// Assignment over the canonical alphabet only.
    pub fn canonical_assignment(&self) -> Assignment {
        let mut pt = Assignment::new();
        for i in 0..3 {
            pt.insert(Symbol::Lambda(i as u8 + 1), self.lambdas[i].clone());
        }
        let deriv_symbols = [
            Symbol::Deriv(1),
            Symbol::Deriv(2),
            Symbol::Deriv(3),
            Symbol::Deriv(4),
            Symbol::Mixed(1, 2, 3),
            Symbol::Mixed(1, 2, 4),
            Symbol::Mixed(1, 3, 4),
            Symbol::Mixed(2, 3, 4),
        ];
        for (s, v) in deriv_symbols.into_iter().zip(&self.derivs) {
            pt.insert(s, v.clone());
        }
        pt
    }
}

fn small_rational(rng: &mut ChaCha8Rng) -> Rational {
    let num: i64 = rng.gen_range(-100..=100);
    let den: i64 = rng.gen_range(1..=100);
    Rational::new(num.into(), den.into())
}

/// One unconstrained curvature draw; the fourth entry carries the trace
/// value but distinctness is not enforced.
pub fn draw_candidate(rng: &mut ChaCha8Rng) -> [Rational; 4] {
    let l1 = small_rational(rng);
    let l2 = small_rational(rng);
    let l3 = small_rational(rng);
    let l4 = -(&l1 + &l2 + &l3);
    [l1, l2, l3, l4]
}

/// Whether all four curvature values are pairwise distinct.
pub fn pairwise_distinct(lambdas: &[Rational; 4]) -> bool {
    for i in 0..4 {
        for j in (i + 1)..4 {
            if lambdas[i] == lambdas[j] {
                return false;
            }
        }
    }
    true
}

/// Draw until the curvatures are pairwise distinct, then fill in the free
/// derivative samples.
pub fn sample_point(rng: &mut ChaCha8Rng) -> SamplePoint {
    let lambdas = loop {
        let c = draw_candidate(rng);
        if pairwise_distinct(&c) {
            break c;
        }
    };
    let derivs = std::array::from_fn(|_| small_rational(rng));
    SamplePoint { lambdas, derivs }
}

/// Run `trials` sampled comparisons of the reference expressions against
/// the engine-computed objects. Deterministic for a fixed seed.
pub fn numeric_crosscheck(
    ctx: &ReductionContext,
    fixtures: &Fixtures,
    seed: u64,
    trials: u32,
) -> Result<CheckResult, CrosscheckError> {
    if trials == 0 {
        return Err(CrosscheckError::InvalidTrials);
    }
    let started = Instant::now();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);

    // Exact engine objects, computed once.
    let engine_x: Vec<((u8, u8), RatFunc)> = theta_pairs()
        .into_iter()
        .map(|(i, j)| ((i, j), compute_x(ctx, i, j)))
        .collect();
    let engine_dphi = compute_dphi(ctx);

    let fail = |detail: String| CheckResult {
        name: "crosscheck".to_string(),
        status: CheckStatus::Fail,
        residual: detail,
        elapsed_ms: started.elapsed().as_millis() as u64,
    };

    for trial in 0..trials {
        let pt = sample_point(&mut rng);
        let raw = pt.raw_assignment();
        let canonical = pt.canonical_assignment();
        let describe = |what: &str, reference: &Rational, engine: &Rational| {
            format!(
                "trial {trial}: {what} disagrees at lambdas = [{}, {}, {}, {}], derivs = [{}]: reference = {reference}, engine = {engine}",
                pt.lambdas[0], pt.lambdas[1], pt.lambdas[2], pt.lambdas[3],
                pt.derivs.iter().map(|d| d.to_string()).collect::<Vec<_>>().join(", "),
            )
        };

        for ((i, j), engine) in &engine_x {
            let reference = fixtures.x(*i, *j).eval(&raw).expect("distinct curvatures");
            let computed = engine.eval(&canonical).expect("distinct curvatures");
            if reference != computed {
                return Ok(fail(describe(&format!("x{i}{j}"), &reference, &computed)));
            }
        }

        let reference = fixtures.dphi_rhs().eval(&raw).expect("distinct curvatures");
        let computed = engine_dphi.eval(&canonical).expect("distinct curvatures");
        if reference != computed {
            return Ok(fail(describe("dphi", &reference, &computed)));
        }
    }

    Ok(CheckResult {
        name: "crosscheck".to_string(),
        status: CheckStatus::Pass,
        residual: "0".to_string(),
        elapsed_ms: started.elapsed().as_millis() as u64,
    })
}
