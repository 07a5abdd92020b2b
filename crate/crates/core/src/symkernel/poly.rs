//! Sparse multivariate polynomials with exact rational coefficients.
//!
//! Terms are kept in a map ordered by the graded lexicographic monomial
//! order (total degree first, then exponents read from the most significant
//! symbol down). The map never stores zero coefficients, so structural
//! equality is semantic equality.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use super::{KernelError, Rational, Symbol, NUM_SYMBOLS};

/// Evaluation point: values for the symbols occurring in an expression.
pub type Assignment = BTreeMap<Symbol, Rational>;

/// Exponent vector over the full symbol alphabet.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug)]
pub struct Monomial {
    exps: [u16; NUM_SYMBOLS],
}

impl Monomial {
    /// The empty product.
    pub const ONE: Monomial = Monomial { exps: [0; NUM_SYMBOLS] };

    /// Single symbol to the first power.
    pub fn symbol(s: Symbol) -> Monomial {
        Monomial::ONE.with_exp(s, 1)
    }

    /// Copy of `self` with the exponent of `s` replaced.
    pub fn with_exp(mut self, s: Symbol, e: u16) -> Monomial {
        self.exps[s.index()] = e;
        self
    }

    pub fn exp(&self, s: Symbol) -> u16 {
        self.exps[s.index()]
    }

    pub fn degree(&self) -> u32 {
        self.exps.iter().map(|&e| e as u32).sum()
    }

    pub fn is_one(&self) -> bool {
        self.exps.iter().all(|&e| e == 0)
    }

    /// Product of two monomials.
    pub fn mul(&self, other: &Monomial) -> Monomial {
        let mut exps = [0u16; NUM_SYMBOLS];
        for (e, (a, b)) in exps.iter_mut().zip(self.exps.iter().zip(&other.exps)) {
            *e = a.checked_add(*b).expect("exponent overflow");
        }
        Monomial { exps }
    }

    /// Exact quotient, if `other` divides `self`.
    pub fn div(&self, other: &Monomial) -> Option<Monomial> {
        let mut exps = [0u16; NUM_SYMBOLS];
        for (e, (a, b)) in exps.iter_mut().zip(self.exps.iter().zip(&other.exps)) {
            *e = a.checked_sub(*b)?;
        }
        Some(Monomial { exps })
    }

    pub fn divides(&self, other: &Monomial) -> bool {
        other.div(self).is_some()
    }

    /// Symbols with nonzero exponent, most significant first.
    pub fn symbols(&self) -> impl Iterator<Item = (Symbol, u16)> + '_ {
        self.exps
            .iter()
            .enumerate()
            .filter(|(_, &e)| e > 0)
            .map(|(i, &e)| (Symbol::from_index(i), e))
    }

    /// Whether only canonical symbols occur.
    pub fn is_canonical(&self) -> bool {
        self.symbols().all(|(s, _)| s.is_canonical())
    }
}

impl PartialOrd for Monomial {
    fn partial_cmp(&self, other: &Self) -> Option<std::cmp::Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for Monomial {
    /// Graded lexicographic order. Exponent arrays are indexed with the most
    /// significant symbol first, so array order is exactly lex order.
    fn cmp(&self, other: &Self) -> std::cmp::Ordering {
        self.degree()
            .cmp(&other.degree())
            .then_with(|| self.exps.cmp(&other.exps))
    }
}

impl fmt::Display for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_one() {
            return f.write_str("1");
        }
        let mut first = true;
        for (s, e) in self.symbols() {
            if !first {
                f.write_str("*")?;
            }
            first = false;
            if e == 1 {
                write!(f, "{s}")?;
            } else {
                write!(f, "{s}^{e}")?;
            }
        }
        Ok(())
    }
}

/// Sparse polynomial over the fixed alphabet.
#[derive(Clone, PartialEq, Eq, Debug, Default)]
pub struct MultiPoly {
    terms: BTreeMap<Monomial, Rational>,
}

impl MultiPoly {
    pub fn zero() -> MultiPoly {
        MultiPoly::default()
    }

    pub fn one() -> MultiPoly {
        MultiPoly::from_int(1)
    }

    pub fn from_int(n: i64) -> MultiPoly {
        MultiPoly::constant(Rational::from_integer(n.into()))
    }

    pub fn constant(c: Rational) -> MultiPoly {
        MultiPoly::term(Monomial::ONE, c)
    }

    pub fn symbol(s: Symbol) -> MultiPoly {
        MultiPoly::term(Monomial::symbol(s), Rational::one())
    }

    /// Single-term polynomial `c * m`.
    pub fn term(m: Monomial, c: Rational) -> MultiPoly {
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(m, c);
        }
        MultiPoly { terms }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_constant(&self) -> bool {
        self.terms.is_empty() || (self.terms.len() == 1 && self.terms.contains_key(&Monomial::ONE))
    }

    pub fn is_one(&self) -> bool {
        self.constant_value().is_some_and(|c| c.is_one())
    }

    /// The value of a constant polynomial, `None` if non-constant.
    pub fn constant_value(&self) -> Option<Rational> {
        if self.is_zero() {
            Some(Rational::zero())
        } else if self.is_constant() {
            self.terms.get(&Monomial::ONE).cloned()
        } else {
            None
        }
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    /// Terms in ascending monomial order.
    pub fn terms(&self) -> impl DoubleEndedIterator<Item = (&Monomial, &Rational)> {
        self.terms.iter()
    }

    /// Greatest monomial with respect to the graded lex order.
    pub fn leading_monomial(&self) -> Option<&Monomial> {
        self.terms.last_key_value().map(|(m, _)| m)
    }

    pub fn leading_coefficient(&self) -> Option<&Rational> {
        self.terms.last_key_value().map(|(_, c)| c)
    }

    pub fn total_degree(&self) -> Option<u32> {
        self.terms.keys().map(|m| m.degree()).max()
    }

    /// Highest exponent of `s` across the support.
    pub fn degree_in(&self, s: Symbol) -> u16 {
        self.terms.keys().map(|m| m.exp(s)).max().unwrap_or(0)
    }

    /// Symbols occurring with nonzero exponent.
    pub fn support(&self) -> BTreeSet<Symbol> {
        let mut out = BTreeSet::new();
        for m in self.terms.keys() {
            for (s, _) in m.symbols() {
                out.insert(s);
            }
        }
        out
    }

    pub fn contains_symbol(&self, s: Symbol) -> bool {
        self.terms.keys().any(|m| m.exp(s) > 0)
    }

    /// Whether the polynomial lies in the canonical subring.
    pub fn is_canonical(&self) -> bool {
        self.terms.keys().all(|m| m.is_canonical())
    }

    /// Build from (monomial, coefficient) pairs, merging duplicates.
    pub fn from_terms<I: IntoIterator<Item = (Monomial, Rational)>>(iter: I) -> MultiPoly {
        let mut out = MultiPoly::zero();
        for (m, c) in iter {
            out.add_term(m, c);
        }
        out
    }

    pub(crate) fn add_term(&mut self, m: Monomial, c: Rational) {
        if c.is_zero() {
            return;
        }
        use std::collections::btree_map::Entry;
        match self.terms.entry(m) {
            Entry::Vacant(v) => {
                v.insert(c);
            }
            Entry::Occupied(mut o) => {
                *o.get_mut() += c;
                if o.get().is_zero() {
                    o.remove();
                }
            }
        }
    }

    pub fn scale(&self, c: &Rational) -> MultiPoly {
        if c.is_zero() {
            return MultiPoly::zero();
        }
        MultiPoly {
            terms: self.terms.iter().map(|(m, v)| (*m, v * c)).collect(),
        }
    }

    pub fn pow(&self, e: u32) -> MultiPoly {
        let mut acc = MultiPoly::one();
        let mut base = self.clone();
        let mut e = e;
        while e > 0 {
            if e & 1 == 1 {
                acc = &acc * &base;
            }
            e >>= 1;
            if e > 0 {
                base = &base * &base;
            }
        }
        acc
    }

    /// Evaluate at a point; every symbol in the support needs a value.
    pub fn eval(&self, point: &Assignment) -> Result<Rational, KernelError> {
        let mut total = Rational::zero();
        for (m, c) in &self.terms {
            let mut v = c.clone();
            for (s, e) in m.symbols() {
                let x = point
                    .get(&s)
                    .ok_or_else(|| KernelError::MissingAssignment(s.name()))?;
                v *= x.pow(e as i32);
            }
            total += v;
        }
        Ok(total)
    }

    /// Formal partial derivative with respect to one symbol.
    pub fn partial_derivative(&self, s: Symbol) -> MultiPoly {
        let mut out = MultiPoly::zero();
        for (m, c) in &self.terms {
            let e = m.exp(s);
            if e == 0 {
                continue;
            }
            let dm = m.with_exp(s, e - 1);
            out.add_term(dm, c * Rational::from_integer(e.into()));
        }
        out
    }

    /// Substitute a polynomial for one symbol.
    pub fn substitute(&self, s: Symbol, value: &MultiPoly) -> MultiPoly {
        let mut powers: BTreeMap<u16, MultiPoly> = BTreeMap::new();
        let mut out = MultiPoly::zero();
        for (m, c) in &self.terms {
            let e = m.exp(s);
            if e == 0 {
                out.add_term(*m, c.clone());
                continue;
            }
            let rest = MultiPoly::term(m.with_exp(s, 0), c.clone());
            let pw = powers.entry(e).or_insert_with(|| value.pow(e as u32));
            out = &out + &(&rest * &*pw);
        }
        out
    }

    /// Coefficient of `s^k`, as a polynomial in the remaining symbols.
    pub fn coefficient_of(&self, s: Symbol, k: u16) -> MultiPoly {
        let mut out = MultiPoly::zero();
        for (m, c) in &self.terms {
            if m.exp(s) == k {
                out.add_term(m.with_exp(s, 0), c.clone());
            }
        }
        out
    }

    /// Coefficients `[c_0, ..., c_d]` of powers of `s`, lowest first.
    pub fn coefficients_in(&self, s: Symbol) -> Vec<MultiPoly> {
        let d = self.degree_in(s);
        (0..=d).map(|k| self.coefficient_of(s, k)).collect()
    }

    /// Rebuild from coefficients of powers of `s`, lowest first.
    pub fn from_coefficients_in(s: Symbol, coeffs: &[MultiPoly]) -> MultiPoly {
        let mut out = MultiPoly::zero();
        for (k, c) in coeffs.iter().enumerate() {
            let sk = MultiPoly::term(Monomial::ONE.with_exp(s, k as u16), Rational::one());
            out = &out + &(c * &sk);
        }
        out
    }

    /// Exact polynomial division; `None` when `d` does not divide `self`.
    pub fn exact_div(&self, d: &MultiPoly) -> Option<MultiPoly> {
        assert!(!d.is_zero(), "division by the zero polynomial");
        let dm = d.leading_monomial().unwrap();
        let dc = d.leading_coefficient().unwrap();
        let mut rem = self.clone();
        let mut quot = MultiPoly::zero();
        while !rem.is_zero() {
            let (rm, rc) = rem.terms.last_key_value().unwrap();
            let qm = rm.div(dm)?;
            let qc = rc / dc;
            let t = MultiPoly::term(qm, qc);
            rem = &rem - &(&t * d);
            quot = &quot + &t;
        }
        Some(quot)
    }

    /// Split into a rational factor and an integer-primitive polynomial with
    /// positive leading coefficient, so that `self = factor * primitive`.
    /// The zero polynomial yields `(1, 0)`.
    pub fn int_normalized(&self) -> (Rational, MultiPoly) {
        if self.is_zero() {
            return (Rational::one(), MultiPoly::zero());
        }
        let mut den_lcm = num_bigint::BigInt::one();
        for c in self.terms.values() {
            den_lcm = den_lcm.lcm(c.denom());
        }
        let mut num_gcd = num_bigint::BigInt::zero();
        for c in self.terms.values() {
            num_gcd = num_gcd.gcd(&(c.numer() * &den_lcm / c.denom()));
        }
        let mut factor = Rational::new(num_gcd, den_lcm);
        let mut prim = self.scale(&factor.recip());
        if prim.leading_coefficient().unwrap().is_negative() {
            prim = -&prim;
            factor = -factor;
        }
        (factor, prim)
    }

    /// Integer-primitive, positive leading coefficient representative of the
    /// scalar-multiple class of `self`.
    pub fn int_primitive(&self) -> MultiPoly {
        self.int_normalized().1
    }
}

impl From<Symbol> for MultiPoly {
    fn from(s: Symbol) -> MultiPoly {
        MultiPoly::symbol(s)
    }
}

impl std::ops::Neg for &MultiPoly {
    type Output = MultiPoly;
    fn neg(self) -> MultiPoly {
        MultiPoly {
            terms: self.terms.iter().map(|(m, c)| (*m, -c)).collect(),
        }
    }
}

impl std::ops::Add for &MultiPoly {
    type Output = MultiPoly;
    fn add(self, rhs: &MultiPoly) -> MultiPoly {
        let mut out = self.clone();
        for (m, c) in &rhs.terms {
            out.add_term(*m, c.clone());
        }
        out
    }
}

impl std::ops::Sub for &MultiPoly {
    type Output = MultiPoly;
    fn sub(self, rhs: &MultiPoly) -> MultiPoly {
        let mut out = self.clone();
        for (m, c) in &rhs.terms {
            out.add_term(*m, -c);
        }
        out
    }
}

impl std::ops::Mul for &MultiPoly {
    type Output = MultiPoly;
    fn mul(self, rhs: &MultiPoly) -> MultiPoly {
        let mut out = MultiPoly::zero();
        for (m1, c1) in &self.terms {
            for (m2, c2) in &rhs.terms {
                out.add_term(m1.mul(m2), c1 * c2);
            }
        }
        out
    }
}

macro_rules! forward_owned_binop {
    ($trait:ident, $method:ident) => {
        impl std::ops::$trait for MultiPoly {
            type Output = MultiPoly;
            fn $method(self, rhs: MultiPoly) -> MultiPoly {
                (&self).$method(&rhs)
            }
        }
        impl std::ops::$trait<&MultiPoly> for MultiPoly {
            type Output = MultiPoly;
            fn $method(self, rhs: &MultiPoly) -> MultiPoly {
                (&self).$method(rhs)
            }
        }
        impl std::ops::$trait<MultiPoly> for &MultiPoly {
            type Output = MultiPoly;
            fn $method(self, rhs: MultiPoly) -> MultiPoly {
                self.$method(&rhs)
            }
        }
    };
}

forward_owned_binop!(Add, add);
forward_owned_binop!(Sub, sub);
forward_owned_binop!(Mul, mul);

impl std::ops::Neg for MultiPoly {
    type Output = MultiPoly;
    fn neg(self) -> MultiPoly {
        -&self
    }
}

fn write_rational(f: &mut fmt::Formatter<'_>, c: &Rational) -> fmt::Result {
    if c.denom().is_one() {
        write!(f, "{}", c.numer())
    } else {
        write!(f, "{}/{}", c.numer(), c.denom())
    }
}

impl fmt::Display for MultiPoly {
    /// Canonical text form: terms from the leading monomial down, integer
    /// or `num/den` coefficients, explicit `*` between factors, `^` powers.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return f.write_str("0");
        }
        for (i, (m, c)) in self.terms.iter().rev().enumerate() {
            let neg = c.is_negative();
            if i == 0 {
                if neg {
                    f.write_str("-")?;
                }
            } else if neg {
                f.write_str(" - ")?;
            } else {
                f.write_str(" + ")?;
            }
            let a = c.abs();
            if m.is_one() {
                write_rational(f, &a)?;
            } else if a.is_one() {
                write!(f, "{m}")?;
            } else {
                write_rational(f, &a)?;
                write!(f, "*{m}")?;
            }
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::symkernel::rat;

    fn l(i: u8) -> MultiPoly {
        MultiPoly::symbol(Symbol::Lambda(i))
    }

    fn point(vals: &[(Symbol, i64)]) -> Assignment {
        vals.iter()
            .map(|(s, v)| (*s, Rational::from_integer((*v).into())))
            .collect()
    }

    #[test]
    fn difference_of_squares() {
        let p = &(&l(1) * &l(1)) - &(&l(2) * &l(2));
        let d = &l(1) - &l(2);
        let q = p.exact_div(&d).unwrap();
        assert_eq!(q, &l(1) + &l(2));
    }

    #[test]
    fn graded_lex_leading_monomial() {
        // Degree dominates: l3^2 beats l1. Ties break lexicographically:
        // l1*l2 beats l2^2, and l1^2 beats l1*l2.
        let p = &(&l(3) * &l(3)) + &l(1);
        assert_eq!(*p.leading_monomial().unwrap(), Monomial::symbol(Symbol::Lambda(3)).mul(&Monomial::symbol(Symbol::Lambda(3))));
        let q = &(&l(1) * &l(2)) + &(&l(2) * &l(2));
        assert_eq!(
            *q.leading_monomial().unwrap(),
            Monomial::symbol(Symbol::Lambda(1)).mul(&Monomial::symbol(Symbol::Lambda(2)))
        );
        let r = &(&l(1) * &l(1)) + &(&l(1) * &l(2));
        assert_eq!(
            *r.leading_monomial().unwrap(),
            Monomial::symbol(Symbol::Lambda(1)).mul(&Monomial::symbol(Symbol::Lambda(1)))
        );
    }

    #[test]
    fn square_of_sum_expands() {
        let s = &(&l(1) + &l(2)) + &l(3);
        let sq = s.pow(2);
        let squares = &(&l(1).pow(2) + &l(2).pow(2)) + &l(3).pow(2);
        let cross = &(&(&l(1) * &l(2)) + &(&l(1) * &l(3))) + &(&l(2) * &l(3));
        assert_eq!(&sq - &squares, cross.scale(&rat(2, 1)));
    }

    #[test]
    fn eval_basics() {
        let p = &(&l(1) * &l(2)) + &MultiPoly::from_int(5);
        let v = p
            .eval(&point(&[(Symbol::Lambda(1), 3), (Symbol::Lambda(2), 4)]))
            .unwrap();
        assert_eq!(v, rat(17, 1));
        assert_eq!(MultiPoly::zero().eval(&point(&[])).unwrap(), rat(0, 1));
        let err = p.eval(&point(&[(Symbol::Lambda(1), 3)])).unwrap_err();
        assert_eq!(err, KernelError::MissingAssignment("l2".into()));
    }

    #[test]
    fn derivative_and_substitute() {
        // d/dl1 (l1^2*l2 + l2) = 2*l1*l2
        let p = &(&l(1).pow(2) * &l(2)) + &l(2);
        let d = p.partial_derivative(Symbol::Lambda(1));
        assert_eq!(d, (&l(1) * &l(2)).scale(&rat(2, 1)));
        // substitute l2 := l1 + 1 into l1*l2 gives l1^2 + l1
        let q = &l(1) * &l(2);
        let sub = q.substitute(Symbol::Lambda(2), &(&l(1) + &MultiPoly::one()));
        assert_eq!(sub, &l(1).pow(2) + &l(1));
    }

    #[test]
    fn exact_div_rejects_non_multiples() {
        let p = &(&l(1) * &l(1)) + &l(2);
        assert!(p.exact_div(&(&l(1) - &l(2))).is_none());
        assert!(MultiPoly::zero().exact_div(&l(1)).is_some());
    }

    #[test]
    fn int_normalization() {
        // 4/6*l1 - 2/3*l2 = (2/3) * (l1 - l2)
        let p = &l(1).scale(&rat(4, 6)) - &l(2).scale(&rat(2, 3));
        let (c, q) = p.int_normalized();
        assert_eq!(c, rat(2, 3));
        assert_eq!(q, &l(1) - &l(2));
        // sign moves into the factor
        let (c2, q2) = (-&p).int_normalized();
        assert_eq!(c2, rat(-2, 3));
        assert_eq!(q2, q);
    }

    #[test]
    fn display_canonical_text() {
        let p = &(&l(1).pow(2) - &(&l(1) * &l(2)).scale(&rat(3, 2))) + &MultiPoly::from_int(-7);
        assert_eq!(p.to_string(), "l1^2 - 3/2*l1*l2 - 7");
        assert_eq!(MultiPoly::zero().to_string(), "0");
        assert_eq!((-&l(3)).to_string(), "-l3");
        let d = MultiPoly::symbol(Symbol::Deriv(1));
        assert_eq!((&l(1) * &d.pow(2)).to_string(), "l1*D1^2");
    }

    #[test]
    fn coefficient_extraction_round_trip() {
        let p = &(&(&l(1).pow(2) * &l(2)) + &(&l(1) * &l(3))) + &l(2);
        let coeffs = p.coefficients_in(Symbol::Lambda(1));
        assert_eq!(coeffs.len(), 3);
        assert_eq!(coeffs[0], l(2));
        assert_eq!(coeffs[2], l(2));
        let back = MultiPoly::from_coefficients_in(Symbol::Lambda(1), &coeffs);
        assert_eq!(back, p);
    }
}
