//! Principal-curvature models and their scalar invariants.
//!
//! The minimal isoparametric hypersurfaces of S^5 with at most four distinct
//! principal curvatures have closed-form curvature lists in real quadratic
//! fields, so the module computes with exact `a + b*sqrt(d)` scalars and
//! degrades to floating point only when two different surds meet. The
//! invariant set ties the power sums, elementary symmetric functions,
//! squared norm S, mean curvatures, and scalar curvature together; the
//! Newton relations at zero trace and `R = 12 + 16 H^2 - S` are asserted on
//! every construction, so an `InvariantSet` is internally consistent by
//! construction.

pub mod roots;
mod solve;

pub use solve::solve_curvatures;

use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::ser::SerializeStruct;
use serde::{Serialize, Serializer};
use thiserror::Error;

use crate::symkernel::Rational;

/// Comparison tolerance for floating-point scalars throughout the module.
pub const TOLERANCE: f64 = 1e-9;

#[derive(Clone, PartialEq, Eq, Debug, Error)]
pub enum ModelError {
    #[error("invalid multiplicity pattern: {0}")]
    InvalidPattern(String),
    #[error(
        "g = 3 admits no minimal isoparametric hypersurface in S^5: for g = 3 \
         the multiplicities must all be equal, and 3m = 4 has no integer solution"
    )]
    GThreeObstruction,
    #[error("classification requires a minimal hypersurface: f1 = {0} is not zero")]
    NonMinimal(String),
}

/// Element `a + b*sqrt(d)` of a real quadratic field. `d = 0` exactly for
/// rational values; square factors of `d` are folded into `b` on
/// construction, so equal values have equal representations whenever they
/// share the same `d`.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct QuadRat {
    a: Rational,
    b: Rational,
    d: u64,
}

impl QuadRat {
    pub fn from_rational(a: Rational) -> QuadRat {
        QuadRat {
            a,
            b: Rational::zero(),
            d: 0,
        }
    }

    pub fn from_int(n: i64) -> QuadRat {
        QuadRat::from_rational(Rational::from_integer(n.into()))
    }

    /// `a + b*sqrt(d)`, normalized: zero surd part forces `d = 0`.
    pub fn new(a: Rational, b: Rational, d: u64) -> QuadRat {
        if b.is_zero() || d == 0 {
            QuadRat::from_rational(a)
        } else if d == 1 {
            QuadRat::from_rational(a + b)
        } else {
            QuadRat { a, b, d }
        }
    }

    /// Exact square root of a nonnegative rational, as `s*sqrt(d)` with the
    /// square part of the radicand extracted. `None` for negative input.
    pub fn sqrt_of_rational(r: &Rational) -> Option<QuadRat> {
        if r.is_negative() {
            return None;
        }
        if r.is_zero() {
            return Some(QuadRat::from_int(0));
        }
        // sqrt(n/m) = sqrt(n*m)/m.
        let radicand = r.numer() * r.denom();
        let (square, rest) = extract_square(&radicand);
        let scale = Rational::new(square, r.denom().clone());
        let d = rest.to_u64()?;
        Some(QuadRat::new(Rational::zero(), scale, d))
    }

    pub fn is_zero(&self) -> bool {
        self.a.is_zero() && self.b.is_zero()
    }

    pub fn is_rational(&self) -> bool {
        self.d == 0
    }

    pub fn as_rational(&self) -> Option<&Rational> {
        self.is_rational().then_some(&self.a)
    }

    pub fn to_f64(&self) -> f64 {
        let a = self.a.to_f64().unwrap_or(f64::NAN);
        let b = self.b.to_f64().unwrap_or(f64::NAN);
        a + b * (self.d as f64).sqrt()
    }

    /// Shared radicand for a binary operation, `None` when the two surds are
    /// incompatible.
    fn join_root(&self, other: &QuadRat) -> Option<u64> {
        match (self.d, other.d) {
            (0, d) | (d, 0) => Some(d),
            (d1, d2) if d1 == d2 => Some(d1),
            _ => None,
        }
    }

    pub fn checked_add(&self, other: &QuadRat) -> Option<QuadRat> {
        let d = self.join_root(other)?;
        Some(QuadRat::new(&self.a + &other.a, &self.b + &other.b, d))
    }

    pub fn checked_sub(&self, other: &QuadRat) -> Option<QuadRat> {
        self.checked_add(&other.neg())
    }

    pub fn checked_mul(&self, other: &QuadRat) -> Option<QuadRat> {
        let d = self.join_root(other)?;
        let root = Rational::from_integer(d.into());
        Some(QuadRat::new(
            &self.a * &other.a + &(&self.b * &other.b) * &root,
            &self.a * &other.b + &self.b * &other.a,
            d,
        ))
    }

    /// `None` for incompatible surds; panics on division by zero.
    pub fn checked_div(&self, other: &QuadRat) -> Option<QuadRat> {
        let d = self.join_root(other)?;
        assert!(!other.is_zero(), "division by zero scalar");
        let root = Rational::from_integer(d.into());
        // (a - b sqrt(d)) (a + b sqrt(d)) = a^2 - b^2 d, nonzero because
        // sqrt(d) is irrational for the retained d.
        let norm = &other.a * &other.a - &(&other.b * &other.b) * &root;
        let conj = QuadRat::new(other.a.clone(), -&other.b, d);
        let num = self.checked_mul(&conj)?;
        Some(QuadRat::new(num.a / &norm, num.b / &norm, d))
    }

    pub fn neg(&self) -> QuadRat {
        QuadRat::new(-&self.a, -&self.b, self.d)
    }

    pub fn pow(&self, e: u32) -> QuadRat {
        let mut out = QuadRat::from_int(1);
        for _ in 0..e {
            out = out.checked_mul(self).expect("same field");
        }
        out
    }
}

impl fmt::Display for QuadRat {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_rational() {
            return write!(f, "{}", self.a);
        }
        let surd = if self.b.abs().is_one() {
            format!("sqrt({})", self.d)
        } else {
            format!("{}*sqrt({})", self.b.abs(), self.d)
        };
        if self.a.is_zero() {
            if self.b.is_negative() {
                write!(f, "-{surd}")
            } else {
                write!(f, "{surd}")
            }
        } else if self.b.is_negative() {
            write!(f, "{} - {surd}", self.a)
        } else {
            write!(f, "{} + {surd}", self.a)
        }
    }
}

/// Split `n >= 0` as `square^2 * rest` with `rest` free of small square
/// factors. Trial division runs over primes below 10^4; any remaining
/// square factor beyond that is detected only when `rest` itself is a
/// perfect square. A coarser split stays numerically correct, it merely
/// keeps a reducible radicand.
fn extract_square(n: &BigInt) -> (BigInt, BigInt) {
    let mut square = BigInt::one();
    let mut rest = n.clone();
    let mut p = BigInt::from(2);
    while (&p * &p) <= rest && p < BigInt::from(10_000) {
        loop {
            let (q, r) = rest.div_rem(&(&p * &p));
            if r.is_zero() {
                square *= &p;
                rest = q;
            } else {
                break;
            }
        }
        p += 1;
    }
    let s = rest.sqrt();
    if &s * &s == rest {
        square *= &s;
        rest = BigInt::one();
    }
    (square, rest)
}

/// Real scalar: exact in a quadratic field where a closed form exists,
/// floating point otherwise. Mixed-surd operations degrade to floating
/// point; everything else stays exact.
#[derive(Clone, PartialEq, Debug)]
pub enum Scalar {
    Exact(QuadRat),
    Approx(f64),
}

impl Scalar {
    pub fn from_int(n: i64) -> Scalar {
        Scalar::Exact(QuadRat::from_int(n))
    }

    pub fn from_rational(r: Rational) -> Scalar {
        Scalar::Exact(QuadRat::from_rational(r))
    }

    pub fn from_quad(q: QuadRat) -> Scalar {
        Scalar::Exact(q)
    }

    pub fn to_f64(&self) -> f64 {
        match self {
            Scalar::Exact(q) => q.to_f64(),
            Scalar::Approx(x) => *x,
        }
    }

    pub fn is_exact(&self) -> bool {
        matches!(self, Scalar::Exact(_))
    }

    pub fn exact(&self) -> Option<&QuadRat> {
        match self {
            Scalar::Exact(q) => Some(q),
            Scalar::Approx(_) => None,
        }
    }

    fn binary(
        &self,
        other: &Scalar,
        exact: impl Fn(&QuadRat, &QuadRat) -> Option<QuadRat>,
        approx: impl Fn(f64, f64) -> f64,
    ) -> Scalar {
        if let (Scalar::Exact(a), Scalar::Exact(b)) = (self, other) {
            if let Some(q) = exact(a, b) {
                return Scalar::Exact(q);
            }
        }
        Scalar::Approx(approx(self.to_f64(), other.to_f64()))
    }

    pub fn add(&self, other: &Scalar) -> Scalar {
        self.binary(other, QuadRat::checked_add, |a, b| a + b)
    }

    pub fn sub(&self, other: &Scalar) -> Scalar {
        self.binary(other, QuadRat::checked_sub, |a, b| a - b)
    }

    pub fn mul(&self, other: &Scalar) -> Scalar {
        self.binary(other, QuadRat::checked_mul, |a, b| a * b)
    }

    pub fn div(&self, other: &Scalar) -> Scalar {
        self.binary(other, QuadRat::checked_div, |a, b| a / b)
    }

    pub fn neg(&self) -> Scalar {
        match self {
            Scalar::Exact(q) => Scalar::Exact(q.neg()),
            Scalar::Approx(x) => Scalar::Approx(-x),
        }
    }

    pub fn pow(&self, e: u32) -> Scalar {
        match self {
            Scalar::Exact(q) => Scalar::Exact(q.pow(e)),
            Scalar::Approx(x) => Scalar::Approx(x.powi(e as i32)),
        }
    }

    pub fn is_zero(&self) -> bool {
        match self {
            Scalar::Exact(q) => q.is_zero(),
            Scalar::Approx(x) => x.abs() <= TOLERANCE,
        }
    }

    /// Exact equality for compatible exact values, tolerance otherwise.
    pub fn near(&self, other: &Scalar) -> bool {
        if let (Scalar::Exact(a), Scalar::Exact(b)) = (self, other) {
            if let Some(diff) = a.checked_sub(b) {
                return diff.is_zero();
            }
        }
        (self.to_f64() - other.to_f64()).abs() <= TOLERANCE
    }

    pub fn near_int(&self, n: i64) -> bool {
        self.near(&Scalar::from_int(n))
    }
}

impl fmt::Display for Scalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Scalar::Exact(q) => write!(f, "{q}"),
            Scalar::Approx(x) => write!(f, "{x}"),
        }
    }
}

/// Exact integers serialize as JSON integers, everything else as a float.
impl Serialize for Scalar {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        if let Scalar::Exact(q) = self {
            if let Some(r) = q.as_rational() {
                if r.is_integer() {
                    if let Some(n) = r.numer().to_i64() {
                        return serializer.serialize_i64(n);
                    }
                }
            }
        }
        serializer.serialize_f64(self.to_f64())
    }
}

/// Four principal curvatures, sorted descending, with the multiplicity
/// partition read off from equalities among the values.
#[derive(Clone, Debug)]
pub struct PrincipalCurvatures {
    values: Vec<Scalar>,
    multiplicities: Vec<u32>,
}

impl PrincipalCurvatures {
    pub fn new(mut values: Vec<Scalar>) -> PrincipalCurvatures {
        assert_eq!(values.len(), 4, "hypersurfaces of S^5 have 4 curvatures");
        values.sort_by(|a, b| b.to_f64().partial_cmp(&a.to_f64()).expect("finite"));
        let mut multiplicities = Vec::new();
        for k in 0..values.len() {
            if k > 0 && values[k].near(&values[k - 1]) {
                *multiplicities.last_mut().unwrap() += 1;
            } else {
                multiplicities.push(1);
            }
        }
        PrincipalCurvatures {
            values,
            multiplicities,
        }
    }

    pub fn values(&self) -> &[Scalar] {
        &self.values
    }

    pub fn multiplicities(&self) -> &[u32] {
        &self.multiplicities
    }

    /// Number of distinct curvatures.
    pub fn g(&self) -> usize {
        self.multiplicities.len()
    }

    pub fn is_exact(&self) -> bool {
        self.values.iter().all(Scalar::is_exact)
    }
}

impl Serialize for PrincipalCurvatures {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        let mut s = serializer.serialize_struct("PrincipalCurvatures", 4)?;
        s.serialize_field("values", &self.values)?;
        let exact: Option<Vec<String>> = self
            .is_exact()
            .then(|| self.values.iter().map(|v| v.to_string()).collect());
        s.serialize_field("values_exact", &exact)?;
        s.serialize_field("multiplicities", &self.multiplicities)?;
        s.serialize_field("g", &self.g())?;
        s.end()
    }
}

/// Power sums, elementary symmetric functions, and the derived curvature
/// invariants of one curvature list.
#[derive(Clone, Debug, Serialize)]
pub struct InvariantSet {
    pub f1: Scalar,
    pub f2: Scalar,
    pub f3: Scalar,
    pub f4: Scalar,
    pub sigma1: Scalar,
    pub sigma2: Scalar,
    pub sigma3: Scalar,
    pub sigma4: Scalar,
    #[serde(rename = "S")]
    pub s: Scalar,
    #[serde(rename = "H")]
    pub h: Scalar,
    #[serde(rename = "H3")]
    pub h3: Scalar,
    #[serde(rename = "R")]
    pub r: Scalar,
    pub g: usize,
}

/// Compute every invariant of a curvature list. When the trace vanishes the
/// zero-trace Newton relations are asserted, and the scalar-curvature
/// relation `R = 12 + 16 H^2 - S` holds by construction.
pub fn invariants(pc: &PrincipalCurvatures) -> InvariantSet {
    let v = pc.values();
    let sum = |terms: &mut dyn Iterator<Item = Scalar>| {
        terms.fold(Scalar::from_int(0), |acc, t| acc.add(&t))
    };
    let power = |k: u32| sum(&mut v.iter().map(|x| x.pow(k)));
    let f1 = power(1);
    let f2 = power(2);
    let f3 = power(3);
    let f4 = power(4);

    let sigma1 = f1.clone();
    let mut sigma2 = Scalar::from_int(0);
    let mut sigma3 = Scalar::from_int(0);
    for i in 0..4 {
        for j in (i + 1)..4 {
            sigma2 = sigma2.add(&v[i].mul(&v[j]));
            for k in (j + 1)..4 {
                sigma3 = sigma3.add(&v[i].mul(&v[j]).mul(&v[k]));
            }
        }
    }
    let sigma4 = v[0].mul(&v[1]).mul(&v[2]).mul(&v[3]);

    let s = f2.clone();
    let h = f1.div(&Scalar::from_int(4));
    let h3 = sigma3.div(&Scalar::from_int(4));
    let r = Scalar::from_int(12)
        .add(&Scalar::from_int(16).mul(&h.pow(2)))
        .sub(&s);

    if f1.is_zero() {
        assert!(
            f2.near(&sigma2.mul(&Scalar::from_int(-2))),
            "zero-trace Newton relation f2 = -2 sigma2 violated"
        );
        assert!(
            f3.near(&sigma3.mul(&Scalar::from_int(3))),
            "zero-trace Newton relation f3 = 3 sigma3 violated"
        );
        let expected = f2
            .pow(2)
            .div(&Scalar::from_int(2))
            .sub(&sigma4.mul(&Scalar::from_int(4)));
        assert!(
            f4.near(&expected),
            "zero-trace Newton relation f4 = f2^2/2 - 4 sigma4 violated"
        );
    }

    InvariantSet {
        f1,
        f2,
        f3,
        f4,
        sigma1,
        sigma2,
        sigma3,
        sigma4,
        s,
        h,
        h3,
        r,
        g: pc.g(),
    }
}

/// The minimal member of each isoparametric family, by number of distinct
/// curvatures and multiplicity pattern.
pub fn minimal_isoparametric(g: u32, pattern: &[u32]) -> Result<PrincipalCurvatures, ModelError> {
    if g == 3 {
        return Err(ModelError::GThreeObstruction);
    }
    let mut sorted = pattern.to_vec();
    sorted.sort_unstable_by(|a, b| b.cmp(a));
    let rational = |n: i64, d: i64| {
        Scalar::Exact(QuadRat::from_rational(Rational::new(n.into(), d.into())))
    };
    let surd = |a: (i64, i64), b: (i64, i64), d: u64| {
        Scalar::Exact(QuadRat::new(
            Rational::new(a.0.into(), a.1.into()),
            Rational::new(b.0.into(), b.1.into()),
            d,
        ))
    };
    let values = match (g, sorted.as_slice()) {
        // Equatorial S^4: totally geodesic.
        (1, [4]) => vec![rational(0, 1); 4],
        // Minimal Clifford torus S^2 x S^2, multiplicities (2, 2).
        (2, [2, 2]) => vec![
            rational(1, 1),
            rational(1, 1),
            rational(-1, 1),
            rational(-1, 1),
        ],
        // Minimal Clifford S^1 x S^3, multiplicities (1, 3).
        (2, [3, 1]) => vec![
            surd((0, 1), (1, 1), 3),
            surd((0, 1), (-1, 3), 3),
            surd((0, 1), (-1, 3), 3),
            surd((0, 1), (-1, 3), 3),
        ],
        // Cartan-type g = 4 model: lambda_k = cot(pi/8 + (k-1) pi/4), i.e.
        // (1 + sqrt 2, sqrt 2 - 1, 1 - sqrt 2, -1 - sqrt 2).
        (4, [1, 1, 1, 1]) => vec![
            surd((1, 1), (1, 1), 2),
            surd((-1, 1), (1, 1), 2),
            surd((1, 1), (-1, 1), 2),
            surd((-1, 1), (-1, 1), 2),
        ],
        _ => {
            return Err(ModelError::InvalidPattern(format!(
                "g = {g} with multiplicities {pattern:?} is not a minimal \
                 isoparametric combination for S^5 (valid: g=1 [4]; g=2 [2,2] \
                 or [1,3]; g=4 [1,1,1,1])"
            )));
        }
    };
    let pc = PrincipalCurvatures::new(values);
    debug_assert!(invariants(&pc).f1.is_zero());
    Ok(pc)
}

/// Classification outcome against the three model families.
#[derive(Clone, Copy, PartialEq, Eq, Debug, Serialize)]
pub enum Classification {
    Equator,
    CliffordProduct,
    CartanG4,
    NotInTheoremFamily,
}

/// Place a minimal invariant set within the model families by its S, g, and
/// H3 values. Non-minimal input is rejected.
pub fn classify(inv: &InvariantSet) -> Result<Classification, ModelError> {
    if !inv.f1.is_zero() {
        return Err(ModelError::NonMinimal(inv.f1.to_string()));
    }
    let class = if inv.s.near_int(0) {
        Classification::Equator
    } else if inv.s.near_int(4) && inv.g == 2 {
        Classification::CliffordProduct
    } else if inv.s.near_int(12) && inv.g == 4 && inv.h3.is_zero() {
        Classification::CartanG4
    } else {
        Classification::NotInTheoremFamily
    };
    Ok(class)
}
