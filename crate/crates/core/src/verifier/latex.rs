//! LaTeX rendering of kernel expressions for human audit.
//!
//! Symbols print in the geometric notation: curvatures as lambda with a
//! subscript, derivative generators as second fundamental form derivatives
//! with their index triples split pair-comma-direction.

use num_traits::{One, Signed};

use crate::symkernel::{Monomial, MultiPoly, RatFunc, Rational, Symbol};

fn symbol_latex(s: Symbol) -> String {
    match s {
        Symbol::Lambda(i) => format!("\\lambda_{{{i}}}"),
        Symbol::Deriv(m) => format!("h_{{44,{m}}}"),
        Symbol::Mixed(i, j, k) => format!("h_{{{i}{j},{k}}}"),
        Symbol::Diag(a, b) => format!("h_{{{a}{a},{b}}}"),
    }
}

fn rational_latex(c: &Rational) -> String {
    if c.denom().is_one() {
        format!("{}", c.numer())
    } else {
        format!("\\tfrac{{{}}}{{{}}}", c.numer(), c.denom())
    }
}

fn monomial_latex(m: &Monomial) -> String {
    let mut parts = Vec::new();
    for (s, e) in m.symbols() {
        if e == 1 {
            parts.push(symbol_latex(s));
        } else {
            parts.push(format!("{}^{{{e}}}", symbol_latex(s)));
        }
    }
    parts.join(" ")
}

/// Render a polynomial, leading term first.
pub fn poly_latex(p: &MultiPoly) -> String {
    if p.is_zero() {
        return "0".to_string();
    }
    let mut out = String::new();
    for (k, (m, c)) in p.terms().rev().enumerate() {
        let neg = c.is_negative();
        if k == 0 {
            if neg {
                out.push('-');
            }
        } else {
            out.push_str(if neg { " - " } else { " + " });
        }
        let a = c.abs();
        if m.is_one() {
            out.push_str(&rational_latex(&a));
        } else {
            if !a.is_one() {
                out.push_str(&rational_latex(&a));
                out.push(' ');
            }
            out.push_str(&monomial_latex(m));
        }
    }
    out
}

/// Render a rational function as a (possibly trivial) fraction.
pub fn ratfunc_latex(f: &RatFunc) -> String {
    if f.den().is_one() {
        poly_latex(f.num())
    } else {
        format!("\\frac{{{}}}{{{}}}", poly_latex(f.num()), poly_latex(f.den()))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::symkernel::rat;

    #[test]
    fn renders_symbols_and_fractions() {
        let l1 = MultiPoly::symbol(Symbol::Lambda(1));
        let d2 = MultiPoly::symbol(Symbol::Deriv(2));
        let p = &(&l1 * &d2.pow(2)).scale(&rat(-3, 1)) + &MultiPoly::from_int(1);
        assert_eq!(poly_latex(&p), "-3 \\lambda_{1} h_{44,2}^{2} + 1");
        let f = RatFunc::new(p, &l1 - &MultiPoly::symbol(Symbol::Lambda(2))).unwrap();
        assert!(ratfunc_latex(&f).starts_with("\\frac{"));
        assert!(ratfunc_latex(&f).contains("\\lambda_{2}"));
        assert_eq!(poly_latex(&MultiPoly::zero()), "0");
        assert_eq!(
            poly_latex(&MultiPoly::constant(rat(1, 2))),
            "\\tfrac{1}{2}"
        );
        assert_eq!(
            poly_latex(&MultiPoly::symbol(Symbol::Mixed(1, 2, 3))),
            "h_{12,3}"
        );
    }
}
