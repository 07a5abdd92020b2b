//! Rational functions in canonical reduced form.
//!
//! Invariants maintained by every constructor and operation:
//!
//! * numerator and denominator have no common polynomial factor;
//! * both have integer coefficients with no common integer content across
//!   the pair (the pair is jointly primitive);
//! * the denominator's leading coefficient is positive;
//! * zero is represented as `0/1`.
//!
//! Under these rules equal functions are structurally equal, so syntactic
//! comparison decides semantic equality.

use std::fmt;

use num_traits::{Signed, Zero};

use super::gcd::gcd_inner;
use super::poly::Assignment;
use super::{KernelError, MultiPoly, Rational, Symbol};

#[derive(Clone, PartialEq, Eq, Debug)]
pub struct RatFunc {
    num: MultiPoly,
    den: MultiPoly,
}

impl RatFunc {
    /// Build `num/den` in canonical form. Errors if `den` is zero.
    pub fn new(num: MultiPoly, den: MultiPoly) -> Result<RatFunc, KernelError> {
        if den.is_zero() {
            return Err(KernelError::DivisionByZero);
        }
        Ok(RatFunc::normalized(num, den))
    }

    fn normalized(num: MultiPoly, den: MultiPoly) -> RatFunc {
        debug_assert!(!den.is_zero());
        if num.is_zero() {
            return RatFunc { num: MultiPoly::zero(), den: MultiPoly::one() };
        }
        let g = gcd_inner(&num, &den);
        let num = num.exact_div(&g).expect("gcd divides numerator");
        let den = den.exact_div(&g).expect("gcd divides denominator");
        let (cn, pn) = num.int_normalized();
        let (cd, pd) = den.int_normalized();
        let ratio = cn / cd;
        debug_assert!(ratio.denom().is_positive());
        RatFunc {
            num: pn.scale(&Rational::from_integer(ratio.numer().clone())),
            den: pd.scale(&Rational::from_integer(ratio.denom().clone())),
        }
    }

    pub fn zero() -> RatFunc {
        RatFunc { num: MultiPoly::zero(), den: MultiPoly::one() }
    }

    pub fn one() -> RatFunc {
        RatFunc { num: MultiPoly::one(), den: MultiPoly::one() }
    }

    pub fn from_poly(p: MultiPoly) -> RatFunc {
        RatFunc::normalized(p, MultiPoly::one())
    }

    pub fn from_int(n: i64) -> RatFunc {
        RatFunc::from_poly(MultiPoly::from_int(n))
    }

    pub fn from_rational(c: Rational) -> RatFunc {
        RatFunc::from_poly(MultiPoly::constant(c))
    }

    pub fn from_symbol(s: Symbol) -> RatFunc {
        RatFunc::from_poly(MultiPoly::symbol(s))
    }

    pub fn num(&self) -> &MultiPoly {
        &self.num
    }

    pub fn den(&self) -> &MultiPoly {
        &self.den
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    pub fn is_one(&self) -> bool {
        self.num == MultiPoly::one() && self.den.is_one()
    }

    /// Whether the function is a polynomial (denominator is constant).
    pub fn is_polynomial(&self) -> bool {
        self.den.is_constant()
    }

    /// The function as a polynomial, if the denominator is constant.
    pub fn as_polynomial(&self) -> Option<MultiPoly> {
        let c = self.den.constant_value()?;
        Some(self.num.scale(&c.recip()))
    }

    /// Whether only canonical symbols occur.
    pub fn is_canonical(&self) -> bool {
        self.num.is_canonical() && self.den.is_canonical()
    }

    pub fn checked_div(&self, rhs: &RatFunc) -> Result<RatFunc, KernelError> {
        if rhs.is_zero() {
            return Err(KernelError::DivisionByZero);
        }
        Ok(RatFunc::normalized(&self.num * &rhs.den, &self.den * &rhs.num))
    }

    pub fn recip(&self) -> Result<RatFunc, KernelError> {
        RatFunc::one().checked_div(self)
    }

    /// Integer power; negative exponents invert (error on zero base).
    pub fn pow(&self, e: i32) -> Result<RatFunc, KernelError> {
        let base = if e < 0 { self.recip()? } else { self.clone() };
        let k = e.unsigned_abs();
        Ok(RatFunc {
            num: base.num.pow(k),
            den: base.den.pow(k),
        })
    }

    /// Evaluate at a point; errors if the denominator vanishes there.
    pub fn eval(&self, point: &Assignment) -> Result<Rational, KernelError> {
        let d = self.den.eval(point)?;
        if d.is_zero() {
            return Err(KernelError::DenominatorVanishes);
        }
        Ok(self.num.eval(point)? / d)
    }

    /// Symbols occurring in numerator or denominator.
    pub fn support(&self) -> std::collections::BTreeSet<Symbol> {
        let mut s = self.num.support();
        s.extend(self.den.support());
        s
    }
}

impl std::ops::Neg for &RatFunc {
    type Output = RatFunc;
    fn neg(self) -> RatFunc {
        RatFunc { num: -&self.num, den: self.den.clone() }
    }
}

impl std::ops::Add for &RatFunc {
    type Output = RatFunc;
    fn add(self, rhs: &RatFunc) -> RatFunc {
        // a/b + c/d with g = gcd(b, d): (a*(d/g) + c*(b/g)) / (b*(d/g)).
        let g = gcd_inner(&self.den, &rhs.den);
        let db = self.den.exact_div(&g).expect("gcd divides");
        let dd = rhs.den.exact_div(&g).expect("gcd divides");
        let num = &(&self.num * &dd) + &(&rhs.num * &db);
        let den = &self.den * &dd;
        RatFunc::normalized(num, den)
    }
}

impl std::ops::Sub for &RatFunc {
    type Output = RatFunc;
    fn sub(self, rhs: &RatFunc) -> RatFunc {
        self + &(-rhs)
    }
}

impl std::ops::Mul for &RatFunc {
    type Output = RatFunc;
    fn mul(self, rhs: &RatFunc) -> RatFunc {
        if self.is_zero() || rhs.is_zero() {
            return RatFunc::zero();
        }
        // Cross-cancel before multiplying to keep intermediate sizes down.
        let g1 = gcd_inner(&self.num, &rhs.den);
        let g2 = gcd_inner(&rhs.num, &self.den);
        let n1 = self.num.exact_div(&g1).expect("gcd divides");
        let d2 = rhs.den.exact_div(&g1).expect("gcd divides");
        let n2 = rhs.num.exact_div(&g2).expect("gcd divides");
        let d1 = self.den.exact_div(&g2).expect("gcd divides");
        RatFunc::normalized(&n1 * &n2, &d1 * &d2)
    }
}

macro_rules! forward_owned_binop {
    ($trait:ident, $method:ident) => {
        impl std::ops::$trait for RatFunc {
            type Output = RatFunc;
            fn $method(self, rhs: RatFunc) -> RatFunc {
                (&self).$method(&rhs)
            }
        }
        impl std::ops::$trait<&RatFunc> for RatFunc {
            type Output = RatFunc;
            fn $method(self, rhs: &RatFunc) -> RatFunc {
                (&self).$method(rhs)
            }
        }
        impl std::ops::$trait<RatFunc> for &RatFunc {
            type Output = RatFunc;
            fn $method(self, rhs: RatFunc) -> RatFunc {
                self.$method(&rhs)
            }
        }
    };
}

forward_owned_binop!(Add, add);
forward_owned_binop!(Sub, sub);
forward_owned_binop!(Mul, mul);

impl std::ops::Neg for RatFunc {
    type Output = RatFunc;
    fn neg(self) -> RatFunc {
        -&self
    }
}

impl From<MultiPoly> for RatFunc {
    fn from(p: MultiPoly) -> RatFunc {
        RatFunc::from_poly(p)
    }
}

impl fmt::Display for RatFunc {
    /// Canonical text form: plain polynomial when the denominator is one,
    /// otherwise `(num)/(den)`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.den.is_one() {
            write!(f, "{}", self.num)
        } else {
            write!(f, "({})/({})", self.num, self.den)
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::symkernel::rat;

    fn l(i: u8) -> MultiPoly {
        MultiPoly::symbol(Symbol::Lambda(i))
    }

    fn rf(num: MultiPoly, den: MultiPoly) -> RatFunc {
        RatFunc::new(num, den).unwrap()
    }

    #[test]
    fn construction_cancels() {
        let f = rf(&l(1).pow(2) - &l(2).pow(2), &l(1) - &l(2));
        assert!(f.is_polynomial());
        assert_eq!(f.as_polynomial().unwrap(), &l(1) + &l(2));
        assert_eq!(f.to_string(), "l1 + l2");
    }

    #[test]
    fn zero_denominator_rejected() {
        assert_eq!(
            RatFunc::new(l(1), MultiPoly::zero()).unwrap_err(),
            KernelError::DivisionByZero
        );
        let e = RatFunc::from_poly(l(1)).checked_div(&RatFunc::zero()).unwrap_err();
        assert_eq!(e, KernelError::DivisionByZero);
    }

    #[test]
    fn canonical_form_is_route_independent() {
        // (2/3)*l1 / l2 built two ways.
        let a = rf(l(1).scale(&rat(2, 3)), l(2));
        let b = rf(l(1).scale(&rat(2, 1)), l(2).scale(&rat(3, 1)));
        assert_eq!(a, b);
        assert_eq!(a.num(), &l(1).scale(&rat(2, 1)));
        assert_eq!(a.den(), &l(2).scale(&rat(3, 1)));
        assert_eq!(a.to_string(), "(2*l1)/(3*l2)");
    }

    #[test]
    fn denominator_sign_is_positive() {
        let f = rf(l(1), -&l(2));
        assert_eq!(f.to_string(), "(-l1)/(l2)");
    }

    #[test]
    fn opposite_fractions_cancel() {
        let a = rf(MultiPoly::one(), &l(1) - &l(2));
        let b = rf(MultiPoly::one(), &l(2) - &l(1));
        assert!((&a + &b).is_zero());
        assert_eq!(&a + &b, RatFunc::zero());
    }

    #[test]
    fn field_identities() {
        let f = rf(&l(1) + &l(2), &(&l(1) - &l(3)) * &l(2));
        assert!(f.checked_div(&f).unwrap().is_one());
        let g = &f * &f.recip().unwrap();
        assert!(g.is_one());
        assert_eq!(f.pow(-2).unwrap(), f.recip().unwrap().pow(2).unwrap());
        assert!((&f - &f).is_zero());
    }

    #[test]
    fn eval_with_vanishing_denominator() {
        let f = rf(MultiPoly::one(), &l(1) - &l(2));
        let mut pt = Assignment::new();
        pt.insert(Symbol::Lambda(1), rat(2, 1));
        pt.insert(Symbol::Lambda(2), rat(2, 1));
        assert_eq!(f.eval(&pt).unwrap_err(), KernelError::DenominatorVanishes);
        pt.insert(Symbol::Lambda(2), rat(1, 2));
        assert_eq!(f.eval(&pt).unwrap(), rat(2, 3));
    }

    #[test]
    fn mul_cross_cancellation() {
        // (l1-l2)/(l2-l3) * (l2-l3)/(l1-l2) = 1
        let a = rf(&l(1) - &l(2), &l(2) - &l(3));
        let b = rf(&l(2) - &l(3), &l(1) - &l(2));
        assert!((&a * &b).is_one());
    }
}
