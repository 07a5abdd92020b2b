//! Certified real-root isolation for univariate rational polynomials.
//!
//! A Sturm chain gives exact root counts over half-open intervals, a Cauchy
//! bound brackets all real roots, and exact bisection shrinks each bracket
//! until the root is hit exactly or the width drops below 2^-45, after which
//! the minimal-denominator rational inside the bracket is probed once; that
//! element is unique at this width, so rational roots of modest denominator
//! are always reported exactly. Every step is exact rational arithmetic, so
//! the returned root count is a certificate, not a heuristic.

use num_bigint::BigInt;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::symkernel::Rational;

/// Dense univariate polynomial over the rationals, constant term first.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct UniPoly {
    coeffs: Vec<Rational>,
}

impl UniPoly {
    /// Coefficients lowest power first; trailing zeros are trimmed.
    pub fn new(mut coeffs: Vec<Rational>) -> UniPoly {
        while coeffs.last().is_some_and(Rational::is_zero) {
            coeffs.pop();
        }
        UniPoly { coeffs }
    }

    pub fn from_ints(coeffs: &[i64]) -> UniPoly {
        UniPoly::new(
            coeffs
                .iter()
                .map(|&c| Rational::from_integer(c.into()))
                .collect(),
        )
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn eval(&self, x: &Rational) -> Rational {
        let mut acc = Rational::zero();
        for c in self.coeffs.iter().rev() {
            acc = acc * x + c;
        }
        acc
    }

    pub fn derivative(&self) -> UniPoly {
        UniPoly::new(
            self.coeffs
                .iter()
                .enumerate()
                .skip(1)
                .map(|(k, c)| c * Rational::from_integer(k.into()))
                .collect(),
        )
    }

    /// Euclidean division by a nonzero divisor: `(quotient, remainder)`.
    pub fn divmod(&self, d: &UniPoly) -> (UniPoly, UniPoly) {
        assert!(!d.is_zero(), "division by the zero polynomial");
        let dd = d.degree().unwrap();
        let lead = d.coeffs[dd].clone();
        if self.coeffs.len() <= dd {
            return (UniPoly::zero(), self.clone());
        }
        let mut rem = self.coeffs.clone();
        let mut quot = vec![Rational::zero(); rem.len() - dd];
        while rem.len() > dd {
            let k = rem.len() - 1;
            let q = &rem[k] / &lead;
            if !q.is_zero() {
                for i in 0..dd {
                    let delta = &q * &d.coeffs[i];
                    rem[k - dd + i] -= delta;
                }
                quot[k - dd] = q;
            }
            rem.pop();
        }
        (UniPoly::new(quot), UniPoly::new(rem))
    }

    fn zero() -> UniPoly {
        UniPoly { coeffs: vec![] }
    }

    /// Scaled by the reciprocal of `|lead|`: sign pattern preserved, sizes
    /// controlled.
    fn sign_normalized(&self) -> UniPoly {
        match self.coeffs.last() {
            None => UniPoly::zero(),
            Some(lead) => {
                let s = lead.abs().recip();
                UniPoly::new(self.coeffs.iter().map(|c| c * &s).collect())
            }
        }
    }

    /// Monic gcd by the Euclidean algorithm.
    pub fn gcd(a: &UniPoly, b: &UniPoly) -> UniPoly {
        let mut f = a.sign_normalized();
        let mut g = b.sign_normalized();
        while !g.is_zero() {
            let r = f.divmod(&g).1.sign_normalized();
            f = g;
            g = r;
        }
        f.sign_normalized()
    }

    /// Same real roots, all simple.
    pub fn squarefree_part(&self) -> UniPoly {
        if self.degree().unwrap_or(0) < 2 {
            return self.clone();
        }
        let g = UniPoly::gcd(self, &self.derivative());
        if g.degree() == Some(0) {
            self.clone()
        } else {
            self.divmod(&g).0
        }
    }

    /// Strict bound on the absolute value of every real root.
    fn cauchy_bound(&self) -> Rational {
        let lead = self.coeffs.last().expect("nonzero").abs();
        let max = self
            .coeffs
            .iter()
            .rev()
            .skip(1)
            .map(Signed::abs)
            .max()
            .unwrap_or_else(Rational::zero);
        Rational::one() + max / lead
    }
}

/// An isolated real root: exact when bisection or the minimal-denominator
/// probe lands on it, otherwise an open bracket of width below 2^-45
/// containing exactly one root.
#[derive(Clone, PartialEq, Eq, Debug)]
pub enum RootLoc {
    Exact(Rational),
    Bracket(Rational, Rational),
}

impl RootLoc {
    pub fn to_f64(&self) -> f64 {
        match self {
            RootLoc::Exact(r) => r.to_f64().unwrap_or(f64::NAN),
            RootLoc::Bracket(a, b) => ((a + b) / Rational::from_integer(2.into()))
                .to_f64()
                .unwrap_or(f64::NAN),
        }
    }

    pub fn as_exact(&self) -> Option<&Rational> {
        match self {
            RootLoc::Exact(r) => Some(r),
            RootLoc::Bracket(..) => None,
        }
    }
}

/// Sturm chain of a squarefree polynomial.
struct SturmChain {
    chain: Vec<UniPoly>,
}

impl SturmChain {
    fn new(p: &UniPoly) -> SturmChain {
        let mut chain = vec![p.sign_normalized(), p.derivative().sign_normalized()];
        loop {
            let n = chain.len();
            if chain[n - 1].is_zero() {
                chain.pop();
                break;
            }
            let r = chain[n - 2].divmod(&chain[n - 1]).1;
            if r.is_zero() {
                break;
            }
            let neg = UniPoly::new(r.coeffs.iter().map(|c| -c).collect()).sign_normalized();
            chain.push(neg);
        }
        SturmChain { chain }
    }

    fn variations(&self, x: &Rational) -> usize {
        let mut count = 0;
        let mut last: Option<bool> = None;
        for p in &self.chain {
            let v = p.eval(x);
            if v.is_zero() {
                continue;
            }
            let sign = v.is_positive();
            if let Some(prev) = last {
                if prev != sign {
                    count += 1;
                }
            }
            last = Some(sign);
        }
        count
    }

    /// Number of distinct real roots in the half-open interval `(a, b]`.
    fn count(&self, a: &Rational, b: &Rational) -> usize {
        self.variations(a).saturating_sub(self.variations(b))
    }
}

/// All distinct real roots of `p`, ascending, each exact or bracketed to
/// width below 2^-45. Panics on the zero polynomial.
pub fn isolate_real_roots(p: &UniPoly) -> Vec<RootLoc> {
    assert!(!p.is_zero(), "the zero polynomial has no isolated roots");
    let mut remaining = p.squarefree_part();
    let mut roots: Vec<RootLoc> = Vec::new();
    // A midpoint that evaluates to zero is an exact root; deflate and
    // restart so every later interval endpoint is root-free.
    'restart: loop {
        if remaining.degree().unwrap_or(0) == 0 {
            break;
        }
        match isolate_squarefree(&remaining) {
            Ok(brackets) => {
                roots.extend(brackets.into_iter().map(|(a, b)| RootLoc::Bracket(a, b)));
                break;
            }
            Err(root) => {
                let linear = UniPoly::new(vec![-&root, Rational::one()]);
                remaining = remaining.divmod(&linear).0;
                roots.push(RootLoc::Exact(root));
                continue 'restart;
            }
        }
    }
    roots.sort_by(|a, b| a.to_f64().partial_cmp(&b.to_f64()).expect("finite"));
    roots
}

/// One isolation pass; `Err(root)` reports an exact hit that the caller
/// must deflate before retrying.
fn isolate_squarefree(p: &UniPoly) -> Result<Vec<(Rational, Rational)>, Rational> {
    let chain = SturmChain::new(p);
    let bound = p.cauchy_bound();
    let mut stack = vec![(-&bound, bound.clone())];
    let mut out = Vec::new();
    let eps = Rational::new(BigInt::from(1), BigInt::from(1u64 << 45));
    while let Some((a, b)) = stack.pop() {
        let n = chain.count(&a, &b);
        if n == 0 {
            continue;
        }
        if n == 1 {
            out.push(refine(p, a, b, &eps)?);
            continue;
        }
        let mid = (&a + &b) / Rational::from_integer(2.into());
        if p.eval(&mid).is_zero() {
            return Err(mid);
        }
        stack.push((a, mid.clone()));
        stack.push((mid, b));
    }
    Ok(out)
}

/// Shrink a single-root bracket below `eps` by exact bisection, then probe
/// the simplest rational inside it. The endpoints are never roots, so the
/// endpoint signs stay opposite.
fn refine(
    p: &UniPoly,
    mut a: Rational,
    mut b: Rational,
    eps: &Rational,
) -> Result<(Rational, Rational), Rational> {
    let two = Rational::from_integer(2.into());
    let sign_a = p.eval(&a).is_positive();
    debug_assert!(p.eval(&b).is_positive() != sign_a);
    while &(&b - &a) > eps {
        let mid = (&a + &b) / &two;
        let v = p.eval(&mid);
        if v.is_zero() {
            return Err(mid);
        }
        if v.is_positive() == sign_a {
            a = mid;
        } else {
            b = mid;
        }
    }
    let probe = simplest_in(&a, &b);
    if p.eval(&probe).is_zero() {
        return Err(probe);
    }
    Ok((a, b))
}

/// The rational with the smallest denominator in the open interval `(a, b)`.
/// Two distinct rationals `p/q`, `p'/q'` are at least `1/(q q')` apart, so
/// inside a bracket of width below 2^-45 the minimal-denominator element is
/// unique and any rational root with denominator below ~2^22 equals it.
fn simplest_in(a: &Rational, b: &Rational) -> Rational {
    debug_assert!(a < b);
    if a.is_negative() && b.is_positive() {
        Rational::zero()
    } else if !a.is_negative() {
        simplest_nonneg(a, b)
    } else {
        -simplest_nonneg(&-b, &-a)
    }
}

/// Continued-fraction descent for `0 <= a < b`: take the integer just above
/// `a` if it fits, otherwise recurse on the reciprocals of the fractional
/// parts. Each step consumes one continued-fraction term of the endpoints,
/// so the recursion terminates.
fn simplest_nonneg(a: &Rational, b: &Rational) -> Rational {
    let fa = a.floor();
    let next = &fa + Rational::one();
    if &next < b {
        return next;
    }
    let a1 = a - &fa;
    let b1 = b - &fa;
    let inner = if a1.is_zero() {
        b1.recip().floor() + Rational::one()
    } else {
        simplest_nonneg(&b1.recip(), &a1.recip())
    };
    fa + inner.recip()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::symkernel::rat;

    fn approx(roots: &[RootLoc]) -> Vec<f64> {
        roots.iter().map(RootLoc::to_f64).collect()
    }

    #[test]
    fn isolates_quadratic_surds() {
        let p = UniPoly::from_ints(&[-2, 0, 1]);
        let roots = isolate_real_roots(&p);
        assert_eq!(roots.len(), 2);
        let vals = approx(&roots);
        assert!((vals[0] + 2f64.sqrt()).abs() < 1e-12);
        assert!((vals[1] - 2f64.sqrt()).abs() < 1e-12);
    }

    #[test]
    fn finds_rational_roots_exactly() {
        // (x + 3) * x * (x - 1/2) = x^3 + 5/2 x^2 - 3/2 x.
        let p = UniPoly::new(vec![rat(0, 1), rat(-3, 2), rat(5, 2), rat(1, 1)]);
        let roots = isolate_real_roots(&p);
        assert_eq!(roots.len(), 3);
        let exact: Vec<_> = roots.iter().filter_map(RootLoc::as_exact).cloned().collect();
        assert!(exact.contains(&rat(-3, 1)));
        assert!(exact.contains(&rat(0, 1)));
        assert!(exact.contains(&rat(1, 2)));
    }

    #[test]
    fn multiple_roots_are_counted_once() {
        // (x - 1)^2 * (x + 2).
        let p = UniPoly::from_ints(&[2, -3, 0, 1]);
        let roots = isolate_real_roots(&p);
        assert_eq!(roots.len(), 2);
    }

    #[test]
    fn cubic_with_mixed_roots() {
        // x^3 - 6x + 4 = (x - 2)(x^2 + 2x - 2): roots 2, -1 +- sqrt(3).
        let p = UniPoly::from_ints(&[4, -6, 0, 1]);
        let roots = isolate_real_roots(&p);
        assert_eq!(roots.len(), 3);
        let vals = approx(&roots);
        assert!((vals[0] - (-1.0 - 3f64.sqrt())).abs() < 1e-12);
        assert!((vals[1] - (-1.0 + 3f64.sqrt())).abs() < 1e-12);
        assert!((vals[2] - 2.0).abs() < 1e-12);
    }

    #[test]
    fn no_real_roots_gives_empty_set() {
        let p = UniPoly::from_ints(&[1, 0, 1]);
        assert!(isolate_real_roots(&p).is_empty());
    }

    #[test]
    fn brackets_are_tight() {
        let p = UniPoly::from_ints(&[-2, 0, 1]);
        for root in isolate_real_roots(&p) {
            if let RootLoc::Bracket(a, b) = root {
                assert!(&b - &a < rat(1, 1 << 30));
            }
        }
    }

    #[test]
    fn division_round_trips() {
        let p = UniPoly::from_ints(&[4, -6, 0, 1]);
        let d = UniPoly::from_ints(&[-2, 1]);
        let (q, r) = p.divmod(&d);
        assert!(r.is_zero());
        assert_eq!(q, UniPoly::from_ints(&[-2, 2, 1]));
    }
}
