//! Finite solution sets for the fixed-multiplicity moment systems.
//!
//! With at most three distinct curvature values the three moment equations
//! `sum m_i x_i^k = f_k` (k = 1, 2, 3) eliminate to a single univariate
//! polynomial with rational coefficients: directly for one value, through a
//! quadratic for two, and through the symmetric functions of the two simple
//! values for the (2,1,1) pattern (the only three-part partition of 4).
//! Roots come from certified isolation and back-substitution is exact
//! wherever the eliminated root is, so candidates satisfy the equations they
//! were solved from identically; the remaining moment equations are enforced
//! as residuals within `TOLERANCE`, which keeps closed-form curvature lists
//! recoverable from rational approximations of irrational moments while an
//! exactly consistent system still filters exactly (zero residual).

use num_traits::Signed;

use super::roots::{isolate_real_roots, UniPoly};
use super::{ModelError, PrincipalCurvatures, QuadRat, Scalar, TOLERANCE};
use crate::symkernel::Rational;

/// All real solutions of the moment system for a multiplicity pattern with
/// at most three parts. An inconsistent system yields an empty list.
pub fn solve_curvatures(
    pattern: &[u32],
    f1: &Rational,
    f2: &Rational,
    f3: &Rational,
) -> Result<Vec<PrincipalCurvatures>, ModelError> {
    if pattern.is_empty() || pattern.len() > 3 {
        return Err(ModelError::InvalidPattern(format!(
            "the numeric solver covers 1 to 3 distinct values, got {pattern:?} \
             (four distinct values are the symbolic engine's regime)"
        )));
    }
    if pattern.contains(&0) || pattern.iter().sum::<u32>() != 4 {
        return Err(ModelError::InvalidPattern(format!(
            "multiplicities must be positive and sum to 4, got {pattern:?}"
        )));
    }
    if f2.is_negative() {
        return Err(ModelError::InvalidPattern(format!(
            "f2 is a sum of squares and cannot be negative, got {f2}"
        )));
    }

    let mut sorted = pattern.to_vec();
    sorted.sort_unstable_by(|a, b| b.cmp(a));
    let mut solutions = match sorted.as_slice() {
        [4] => solve_single(f1, f2, f3),
        [m1, m2] => solve_pair(*m1, *m2, f1, f2, f3),
        [2, 1, 1] => solve_two_one_one(f1, f2, f3),
        _ => unreachable!("patterns summing to 4 with <= 3 parts"),
    };
    dedupe(&mut solutions);
    solutions.sort_by(|a, b| {
        let ka: Vec<f64> = a.values().iter().map(Scalar::to_f64).collect();
        let kb: Vec<f64> = b.values().iter().map(Scalar::to_f64).collect();
        kb.partial_cmp(&ka).expect("finite")
    });
    Ok(solutions)
}

/// Absolute value of a rational as f64, for residual filtering.
fn rat_abs(r: &Rational) -> f64 {
    use num_traits::ToPrimitive;
    r.to_f64().map(f64::abs).unwrap_or(f64::INFINITY)
}

/// One distinct value: `x = f1/4`, kept only if it meets the higher moments.
fn solve_single(f1: &Rational, f2: &Rational, f3: &Rational) -> Vec<PrincipalCurvatures> {
    let four = Rational::from_integer(4.into());
    let x = f1 / &four;
    let r2 = &(&four * &(&x * &x)) - f2;
    let r3 = &(&four * &(&x * &x * &x)) - f3;
    if rat_abs(&r2) <= TOLERANCE && rat_abs(&r3) <= TOLERANCE {
        vec![PrincipalCurvatures::new(vec![
            Scalar::from_rational(x);
            4
        ])]
    } else {
        vec![]
    }
}

/// Two distinct values `x` (mult `m1`) and `y` (mult `m2`): eliminating `y`
/// through the trace equation leaves an exact quadratic in `x`, so the
/// solutions live in a quadratic field and the cubic-moment residual is
/// evaluated there.
fn solve_pair(
    m1: u32,
    m2: u32,
    f1: &Rational,
    f2: &Rational,
    f3: &Rational,
) -> Vec<PrincipalCurvatures> {
    let (rm1, rm2) = (
        Rational::from_integer(m1.into()),
        Rational::from_integer(m2.into()),
    );
    // m1 m2 x^2 + (f1 - m1 x)^2 = m2 f2.
    let a = &rm1 * &(&rm1 + &rm2);
    let b = &(-&(&rm1 * f1)) * &Rational::from_integer(2.into());
    let c = &(f1 * f1) - &(&rm2 * f2);
    let mut out = Vec::new();
    for x in quadratic_roots(&a, &b, &c) {
        let qf1 = QuadRat::from_rational(f1.clone());
        let qm1 = QuadRat::from_rational(rm1.clone());
        let qm2 = QuadRat::from_rational(rm2.clone());
        let y = qf1
            .checked_sub(&qm1.checked_mul(&x).expect("same field"))
            .and_then(|t| t.checked_div(&qm2))
            .expect("same field");
        let cubic = qm1
            .checked_mul(&x.pow(3))
            .and_then(|t| t.checked_add(&qm2.checked_mul(&y.pow(3)).expect("same field")))
            .expect("same field");
        let residual = cubic
            .checked_sub(&QuadRat::from_rational(f3.clone()))
            .expect("same field");
        if residual.to_f64().abs() > TOLERANCE {
            continue;
        }
        let mut values = vec![Scalar::from_quad(x.clone()); m1 as usize];
        values.extend(vec![Scalar::from_quad(y); m2 as usize]);
        out.push(PrincipalCurvatures::new(values));
    }
    out
}

/// Exact real roots of `a x^2 + b x + c` (a != 0) in a quadratic field.
fn quadratic_roots(a: &Rational, b: &Rational, c: &Rational) -> Vec<QuadRat> {
    let disc = &(b * b) - &(Rational::from_integer(4.into()) * &(a * c));
    let Some(sqrt_disc) = QuadRat::sqrt_of_rational(&disc) else {
        return vec![];
    };
    let two_a = QuadRat::from_rational(Rational::from_integer(2.into()) * a);
    let neg_b = QuadRat::from_rational(-b);
    let plus = neg_b
        .checked_add(&sqrt_disc)
        .and_then(|n| n.checked_div(&two_a))
        .expect("same field");
    if sqrt_disc.is_zero() {
        return vec![plus];
    }
    let minus = neg_b
        .checked_sub(&sqrt_disc)
        .and_then(|n| n.checked_div(&two_a))
        .expect("same field");
    vec![plus, minus]
}

/// Pattern (2,1,1): let the simple values be `x, y` and the double one `z`.
/// With `s = x + y` and `q = xy`, the trace fixes `z = (f1 - s)/2`, the
/// second moment fixes `q`, and the third eliminates to a cubic in `s`:
/// `6 s^3 - 9 f1 s^2 + (6 f1^2 - 6 f2) s + 4 f3 - f1^3 = 0`.
fn solve_two_one_one(f1: &Rational, f2: &Rational, f3: &Rational) -> Vec<PrincipalCurvatures> {
    let int = |n: i64| Rational::from_integer(n.into());
    let cubic = UniPoly::new(vec![
        &(f3 * &int(4)) - &(f1 * &(f1 * f1)),
        &(&(f1 * f1) * &int(6)) - &(f2 * &int(6)),
        f1 * &int(-9),
        int(6),
    ]);
    let mut out = Vec::new();
    for root in isolate_real_roots(&cubic) {
        match root.as_exact() {
            Some(s) => out.extend(expand_pair_exact(s, f1, f2)),
            None => out.extend(expand_pair_numeric(root.to_f64(), f1, f2, f3)),
        }
    }
    out
}

/// Exact back-substitution for a rational `s = x + y`.
fn expand_pair_exact(s: &Rational, f1: &Rational, f2: &Rational) -> Vec<PrincipalCurvatures> {
    let two = Rational::from_integer(2.into());
    let rest = f1 - s;
    let q = &(&(s * s) + &(&(&rest * &rest) / &two)) - f2;
    let q = q / &two;
    let z = rest / &two;
    // x, y are the roots of t^2 - s t + q.
    let one = Rational::from_integer(1.into());
    quadratic_roots(&one, &(-s), &q)
        .into_iter()
        .map(|x| {
            let y = QuadRat::from_rational(s.clone())
                .checked_sub(&x)
                .expect("same field");
            PrincipalCurvatures::new(vec![
                Scalar::from_quad(x),
                Scalar::from_quad(y),
                Scalar::from_rational(z.clone()),
                Scalar::from_rational(z.clone()),
            ])
        })
        .collect()
}

/// Floating back-substitution for a bracketed `s`; candidates failing the
/// residual filter are discarded.
fn expand_pair_numeric(
    s: f64,
    f1: &Rational,
    f2: &Rational,
    f3: &Rational,
) -> Vec<PrincipalCurvatures> {
    let to_f = |r: &Rational| -> f64 {
        use num_traits::ToPrimitive;
        r.to_f64().unwrap_or(f64::NAN)
    };
    let (f1, f2, f3) = (to_f(f1), to_f(f2), to_f(f3));
    let z = (f1 - s) / 2.0;
    let q = (s * s + (f1 - s) * (f1 - s) / 2.0 - f2) / 2.0;
    let disc = s * s - 4.0 * q;
    if disc < -TOLERANCE {
        return vec![];
    }
    let sq = disc.max(0.0).sqrt();
    let x = (s + sq) / 2.0;
    let y = (s - sq) / 2.0;
    let residual = (x + y + 2.0 * z - f1).abs().max(
        (x * x + y * y + 2.0 * z * z - f2)
            .abs()
            .max((x * x * x + y * y * y + 2.0 * z * z * z - f3).abs()),
    );
    if residual > TOLERANCE {
        return vec![];
    }
    vec![PrincipalCurvatures::new(vec![
        Scalar::Approx(x),
        Scalar::Approx(y),
        Scalar::Approx(z),
        Scalar::Approx(z),
    ])]
}

/// Drop repeated solutions (same sorted value list within tolerance or
/// exactly for exact scalars).
fn dedupe(solutions: &mut Vec<PrincipalCurvatures>) {
    let mut kept: Vec<PrincipalCurvatures> = Vec::new();
    for cand in solutions.drain(..) {
        let duplicate = kept.iter().any(|k| {
            k.values()
                .iter()
                .zip(cand.values())
                .all(|(a, b)| a.near(b))
        });
        if !duplicate {
            kept.push(cand);
        }
    }
    *solutions = kept;
}
