//! Structural properties of the verified identities, beyond the pass/fail
//! residual checks: the volume coefficients decompose the way the derivation
//! says they must, mixed second-fundamental-form derivatives cancel from the
//! master identity, and the certified nonnegativity is confirmed numerically
//! at sampled zero-trace points.

use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha8Rng;

use mhs5_core::coframe::{d_function, theta, theta_pairs};
use mhs5_core::reduction::ReductionContext;
use mhs5_core::symkernel::{MultiPoly, RatFunc, Rational, Symbol};
use mhs5_core::verifier::crosscheck::{numeric_crosscheck, sample_point};
use mhs5_core::verifier::{compute_dphi, compute_x, run_suite, Fixtures, Suite, SosCertificate};

use num_traits::Zero;

fn ctx() -> ReductionContext {
    ReductionContext::new()
}

/// Replace every derivative symbol in `p` by zero.
fn freeze_derivatives(p: &MultiPoly) -> MultiPoly {
    let mut out = p.clone();
    for s in p.support() {
        if s.is_derivative() {
            out = out.substitute(s, &MultiPoly::zero());
        }
    }
    out
}

#[test]
fn full_suite_yields_every_check() {
    let ctx = ctx();
    let fixtures = Fixtures::builtin();
    let results = run_suite(&ctx, fixtures, Suite::All);

    let expected = [
        "con3", "dphi", "newton_f2", "newton_f3", "newton_f4", "pf_123", "pf_124", "pf_134",
        "pf_234", "sos_1", "sos_2", "sos_3", "sos_4", "trace_cubic", "trace_weighted", "x12",
        "x13", "x14", "x23", "x24", "x34",
    ];
    let names: Vec<&str> = results.iter().map(|r| r.name.as_str()).collect();
    assert_eq!(names, expected);
    for r in &results {
        assert!(r.passed(), "check {} failed: {}", r.name, r.residual);
    }
}

#[test]
fn volume_coefficients_have_gauss_constant_term() {
    // Freezing the derivative symbols in X_ij must leave exactly minus the
    // Gauss curvature term R_ijij = 1 + lambda_i lambda_j: the derivative
    // contributions are the only other ingredient of the structure equations.
    let ctx = ctx();
    for (i, j) in theta_pairs() {
        let x = compute_x(&ctx, i, j);
        assert!(
            x.den().support().iter().all(|s| !s.is_derivative()),
            "denominator of X_{i}{j} mentions a derivative symbol"
        );
        let frozen = RatFunc::new(freeze_derivatives(x.num()), x.den().clone())
            .expect("denominator unchanged");
        let gauss = ctx.gauss(i, j, i, j).expect("valid indices");
        assert_eq!(
            frozen,
            -&RatFunc::from_poly(gauss),
            "derivative-free part of X_{i}{j} is not -R_{i}{j}{i}{j}"
        );
    }
}

#[test]
fn weighted_sum_reproduces_dphi() {
    // d(Phi) assembled pairwise by the Leibniz rule: for each pair,
    // d((li + lj) theta_ij) contributes d(li + lj) ^ theta_ij plus
    // (li + lj) d(theta_ij). Summing the volume coefficients must agree
    // with the direct top-level computation.
    let ctx = ctx();
    let mut assembled = RatFunc::zero();
    for (i, j) in theta_pairs() {
        let weight = &ctx.lambda(i).expect("index") + &ctx.lambda(j).expect("index");
        let dw = d_function(&weight, &ctx).expect("polynomial weight");
        let correction = dw.wedge(&theta(i, j)).expand_connection(&ctx).volume_coefficient();
        let weighted = &RatFunc::from_poly(weight) * &compute_x(&ctx, i, j);
        assembled = &assembled + &(&correction + &weighted);
    }
    assert_eq!(assembled, compute_dphi(&ctx));
}

#[test]
fn mixed_derivatives_cancel_from_dphi() {
    // The six theta_ij each carry mixed derivative terms through their
    // connection forms; in the weighted sum every one cancels, leaving only
    // the diagonal gradient h_{44,m}.
    let dphi = compute_dphi(&ctx());
    assert!(dphi.is_canonical());
    for s in dphi.support() {
        assert!(
            matches!(s, Symbol::Lambda(_) | Symbol::Deriv(_)),
            "unexpected symbol {} survives in d(Phi)",
            s.name()
        );
    }
}

#[test]
fn derivative_free_part_of_dphi_is_f3() {
    // Freezing the gradient terms h_{44,m} = 0 in the master identity
    // leaves f3 (sum_i c_i 0 + 1) = f3.
    let ctx = ctx();
    let dphi = compute_dphi(&ctx);
    let frozen = RatFunc::new(freeze_derivatives(dphi.num()), dphi.den().clone())
        .expect("denominator is derivative-free");
    let f3 = ctx.power_sum(3).expect("order");
    assert_eq!(frozen, RatFunc::from_poly(f3));
}

#[test]
fn certified_nonnegativity_holds_at_sampled_points() {
    // The sum-of-squares certificates prove 3 f2 - 4 li^2 >= 0 on the
    // zero-trace locus; both the targets and the assembled weights c_i are
    // confirmed nonnegative at sampled points with distinct curvatures.
    let ctx = ctx();
    let fixtures = Fixtures::builtin();
    let certs: Vec<SosCertificate> =
        (1..=4).map(|i| SosCertificate::new(&ctx, i).expect("index in range")).collect();
    for cert in &certs {
        assert!(cert.verified(), "certificate {} has nonzero residual", cert.index);
    }

    let mut rng = ChaCha8Rng::seed_from_u64(2026);
    for _ in 0..1000 {
        let pt = sample_point(&mut rng);
        let canonical = pt.canonical_assignment();
        let raw = pt.raw_assignment();
        for cert in &certs {
            let value = cert.target.eval(&canonical).expect("full assignment");
            assert!(
                value >= Rational::zero(),
                "target of certificate {} is negative at {:?}",
                cert.index,
                pt.lambdas
            );
        }
        for i in 1..=4u8 {
            let value = fixtures.c(i).eval(&raw).expect("distinct curvatures");
            assert!(value >= Rational::zero(), "c_{i} is negative at {:?}", pt.lambdas);
        }
    }
}

#[test]
fn crosscheck_agrees_on_seeded_samples() {
    let ctx = ctx();
    let fixtures = Fixtures::builtin();
    let result = numeric_crosscheck(&ctx, fixtures, 42, 100).expect("positive trials");
    assert!(result.passed(), "crosscheck failed: {}", result.residual);
}
