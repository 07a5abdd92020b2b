//! Multivariate polynomial gcd over the rationals.
//!
//! Layered strategy: scalar and monomial content come off first, variables
//! present on only one side are eliminated by a coefficient-gcd projection,
//! and the remaining same-support gcd is computed by an evaluation /
//! xi-adic-reconstruction heuristic whose candidates are certified by exact
//! division of both inputs. A primitive polynomial remainder sequence is the
//! unconditional fallback, so every call returns an exact answer. The result
//! is always integer-primitive with a positive leading coefficient, the
//! canonical representative of the gcd up to units.

use std::collections::{BTreeMap, BTreeSet};

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use super::{KernelError, Monomial, MultiPoly, Rational, Symbol};

/// Canonical gcd of two polynomials. Errors if both are zero.
pub fn poly_gcd(a: &MultiPoly, b: &MultiPoly) -> Result<MultiPoly, KernelError> {
    if a.is_zero() && b.is_zero() {
        return Err(KernelError::GcdOfZeros);
    }
    Ok(gcd_inner(a, b))
}

pub(super) fn gcd_inner(a: &MultiPoly, b: &MultiPoly) -> MultiPoly {
    if a.is_zero() {
        return b.int_primitive();
    }
    if b.is_zero() {
        return a.int_primitive();
    }
    if a.is_constant() || b.is_constant() {
        return MultiPoly::one();
    }
    let a = a.int_primitive();
    let b = b.int_primitive();
    if a == b {
        return a;
    }

    // Shared monomial factor: with the per-input monomial content removed, no
    // variable divides either remaining part, so the split is exact.
    let ma = monomial_content(&a);
    let mb = monomial_content(&b);
    let shared = monomial_meet(&ma, &mb);
    let a0 = strip_monomial(&a, &ma);
    let b0 = strip_monomial(&b, &mb);

    let core = gcd_core(&a0, &b0);
    (&MultiPoly::term(shared, Rational::one()) * &core).int_primitive()
}

/// Gcd of two monomial-content-free, integer-primitive polynomials.
fn gcd_core(a: &MultiPoly, b: &MultiPoly) -> MultiPoly {
    if a.is_constant() || b.is_constant() {
        return MultiPoly::one();
    }
    // Divisibility fast path: accumulated denominators are often multiples
    // of earlier ones.
    let (small, large) = if a.total_degree() <= b.total_degree() {
        (a, b)
    } else {
        (b, a)
    };
    if small.num_terms() <= large.num_terms() && large.exact_div(small).is_some() {
        return small.clone();
    }

    let va = a.support();
    let vb = b.support();
    let extra_a: BTreeSet<Symbol> = va.difference(&vb).copied().collect();
    let extra_b: BTreeSet<Symbol> = vb.difference(&va).copied().collect();
    if !extra_a.is_empty() || !extra_b.is_empty() {
        // Any common divisor only involves shared variables, so each side can
        // be replaced by the gcd of its coefficients over the foreign ones.
        let ra = project_onto_shared(a, &extra_a);
        if ra.is_constant() {
            return MultiPoly::one();
        }
        let rb = project_onto_shared(b, &extra_b);
        if rb.is_constant() {
            return MultiPoly::one();
        }
        // Supports strictly shrank, so this terminates.
        return gcd_inner(&ra, &rb);
    }

    heuristic_gcd(a, b).unwrap_or_else(|| prs_gcd(a, b))
}

/// Exponent-wise minimum over the support, i.e. the largest monomial dividing
/// every term.
fn monomial_content(p: &MultiPoly) -> Monomial {
    let mut terms = p.terms();
    let mut content = *terms.next().expect("nonzero").0;
    for (m, _) in terms {
        if content.is_one() {
            break;
        }
        content = monomial_meet(&content, m);
    }
    content
}

fn monomial_meet(a: &Monomial, b: &Monomial) -> Monomial {
    let mut out = Monomial::ONE;
    for (s, e) in a.symbols() {
        let f = e.min(b.exp(s));
        if f > 0 {
            out = out.with_exp(s, f);
        }
    }
    out
}

fn strip_monomial(p: &MultiPoly, m: &Monomial) -> MultiPoly {
    if m.is_one() {
        return p.clone();
    }
    MultiPoly::from_terms(
        p.terms()
            .map(|(t, c)| (t.div(m).expect("content divides"), c.clone())),
    )
}

/// Gcd of the coefficients of `p` grouped by monomials in `extra`. Any
/// divisor of `p` free of those variables divides every group, so this
/// preserves the gcd against such polynomials.
fn project_onto_shared(p: &MultiPoly, extra: &BTreeSet<Symbol>) -> MultiPoly {
    if extra.is_empty() {
        return p.clone();
    }
    let mut groups: BTreeMap<Monomial, MultiPoly> = BTreeMap::new();
    for (m, c) in p.terms() {
        let mut key = Monomial::ONE;
        let mut rest = Monomial::ONE;
        for (s, e) in m.symbols() {
            if extra.contains(&s) {
                key = key.with_exp(s, e);
            } else {
                rest = rest.with_exp(s, e);
            }
        }
        groups
            .entry(key)
            .or_insert_with(MultiPoly::zero)
            .add_term(rest, c.clone());
    }
    let mut g = MultiPoly::zero();
    for q in groups.values() {
        g = gcd_inner(&g, q);
        if g.is_constant() && !g.is_zero() {
            return MultiPoly::one();
        }
    }
    g
}

/// Evaluation-based heuristic gcd for integer-coefficient polynomials.
/// Evaluates one variable at a large integer, recurses, and lifts the result
/// back through its balanced xi-adic digits. Returns the full gcd over the
/// integers, content included: the integer content at one level is the image
/// of polynomial factors from the level above, so it must survive the
/// recursion. A candidate is only returned once exact division certifies it,
/// so a `Some` answer is correct; `None` means the size guard tripped or six
/// attempts failed.
fn heuristic_gcd(a: &MultiPoly, b: &MultiPoly) -> Option<MultiPoly> {
    if a.is_constant() || b.is_constant() {
        let g = int_content(a).gcd(&int_content(b));
        return Some(MultiPoly::constant(Rational::from_integer(g)));
    }
    let Some(x) = main_variable(a, b) else {
        // Nonconstant with disjoint supports: only scalars divide both.
        let g = int_content(a).gcd(&int_content(b));
        return Some(MultiPoly::constant(Rational::from_integer(g)));
    };
    let content_gcd = int_content(a).gcd(&int_content(b));
    let ap = a.int_primitive();
    let bp = b.int_primitive();
    let dx = ap.degree_in(x).max(bp.degree_in(x)) as u64;
    let bound = max_abs_int_coeff(&ap).min(max_abs_int_coeff(&bp));
    let mut xi: BigInt = bound * 2 + 29;
    for _ in 0..6 {
        if (xi.bits() + 1) * (dx + 1) > 150_000 {
            return None;
        }
        let ae = eval_at_integer(&ap, x, &xi);
        let be = eval_at_integer(&bp, x, &xi);
        if !ae.is_zero() && !be.is_zero() {
            let ge = heuristic_gcd(&ae, &be)?;
            if let Some(lifted) = xi_adic_lift(&ge, x, &xi) {
                let candidate = lifted.int_primitive();
                if !candidate.is_zero()
                    && ap.exact_div(&candidate).is_some()
                    && bp.exact_div(&candidate).is_some()
                {
                    return Some(candidate.scale(&Rational::from_integer(content_gcd)));
                }
            }
        }
        xi = (xi * 73794i32) / 27011i32;
    }
    None
}

/// Substitute an integer for `x` by Horner evaluation of the coefficient
/// list; the result is a polynomial in the remaining variables.
fn eval_at_integer(p: &MultiPoly, x: Symbol, xi: &BigInt) -> MultiPoly {
    let coeffs = p.coefficients_in(x);
    let scalar = Rational::from_integer(xi.clone());
    let mut acc = MultiPoly::zero();
    for c in coeffs.iter().rev() {
        acc = &acc.scale(&scalar) + c;
    }
    acc
}

/// Rebuild a polynomial in `x` from the balanced xi-adic digits of `ge`:
/// digit k becomes the coefficient of `x^k`.
fn xi_adic_lift(ge: &MultiPoly, x: Symbol, xi: &BigInt) -> Option<MultiPoly> {
    let mut e = ge.clone();
    let mut digits = Vec::new();
    while !e.is_zero() {
        if digits.len() > 1024 {
            return None;
        }
        let digit = balanced_mod(&e, xi);
        e = scalar_exact_div(&(&e - &digit), xi)?;
        digits.push(digit);
    }
    Some(MultiPoly::from_coefficients_in(x, &digits))
}

/// Coefficient-wise balanced remainder in `(-xi/2, xi/2]`.
fn balanced_mod(p: &MultiPoly, xi: &BigInt) -> MultiPoly {
    let half = xi / 2;
    MultiPoly::from_terms(p.terms().filter_map(|(m, c)| {
        debug_assert!(c.is_integer());
        let mut r = c.numer().mod_floor(xi);
        if r > half {
            r -= xi;
        }
        if r.is_zero() {
            None
        } else {
            Some((*m, Rational::from_integer(r)))
        }
    }))
}

/// Divide every coefficient exactly by `xi`; `None` if any division leaves a
/// remainder.
fn scalar_exact_div(p: &MultiPoly, xi: &BigInt) -> Option<MultiPoly> {
    let mut terms = Vec::with_capacity(p.num_terms());
    for (m, c) in p.terms() {
        debug_assert!(c.is_integer());
        let (q, r) = c.numer().div_rem(xi);
        if !r.is_zero() {
            return None;
        }
        terms.push((*m, Rational::from_integer(q)));
    }
    Some(MultiPoly::from_terms(terms))
}

/// Largest absolute value among the (integer) coefficients.
fn max_abs_int_coeff(p: &MultiPoly) -> BigInt {
    p.terms()
        .map(|(_, c)| c.numer().abs())
        .max()
        .unwrap_or_else(BigInt::zero)
}

/// Gcd of the integer coefficients; zero for the zero polynomial.
fn int_content(p: &MultiPoly) -> BigInt {
    let mut g = BigInt::zero();
    for (_, c) in p.terms() {
        debug_assert!(c.is_integer());
        g = g.gcd(c.numer());
        if g.is_one() {
            break;
        }
    }
    g
}

/// Pick the shared variable minimizing the smaller of the two degrees.
fn main_variable(a: &MultiPoly, b: &MultiPoly) -> Option<Symbol> {
    let mut best: Option<(u16, Symbol)> = None;
    for s in a.support().intersection(&b.support()) {
        let score = a.degree_in(*s).min(b.degree_in(*s));
        match best {
            Some((m, _)) if m <= score => {}
            _ => best = Some((score, *s)),
        }
    }
    best.map(|(_, s)| s)
}

/// Primitive polynomial remainder sequence in the chosen main variable.
fn prs_gcd(a: &MultiPoly, b: &MultiPoly) -> MultiPoly {
    let Some(x) = main_variable(a, b) else {
        return MultiPoly::one();
    };

    let (ca, pa) = content_primitive(a, x);
    let (cb, pb) = content_primitive(b, x);
    let cg = gcd_inner(&ca, &cb);

    let (mut f, mut g) = if a.degree_in(x) >= b.degree_in(x) {
        (pa, pb)
    } else {
        (pb, pa)
    };
    while !g.is_zero() {
        if g.degree_in(x) == 0 {
            // Nonzero remainder free of the main variable: the primitive
            // parts are coprime in it.
            return cg;
        }
        let r = pseudo_remainder(&f, &g, x);
        f = g;
        g = if r.is_zero() {
            MultiPoly::zero()
        } else {
            content_primitive(&r, x).1
        };
    }
    (&cg * &f).int_primitive()
}

/// Content (gcd of the coefficients in `x`) and corresponding primitive
/// part. The primitive part is additionally integer-normalized: scalar
/// factors are units and dropping them keeps the remainder sequence small.
fn content_primitive(p: &MultiPoly, x: Symbol) -> (MultiPoly, MultiPoly) {
    let coeffs = p.coefficients_in(x);
    let mut content = MultiPoly::zero();
    for c in &coeffs {
        if !c.is_zero() {
            content = gcd_inner(&content, c);
        }
        if content.is_constant() && !content.is_zero() {
            content = MultiPoly::one();
            break;
        }
    }
    let prim = p.exact_div(&content).expect("content divides").int_primitive();
    (content, prim)
}

/// Remainder of `f` by `g` in the variable `x`, scaled by a power of the
/// leading coefficient of `g` so that no fractions of polynomials appear.
/// Callers take primitive parts afterwards, so the exact power is
/// irrelevant.
fn pseudo_remainder(f: &MultiPoly, g: &MultiPoly, x: Symbol) -> MultiPoly {
    let gc = g.coefficients_in(x);
    let dg = gc.len() - 1;
    debug_assert!(dg >= 1);
    let lead_g = &gc[dg];

    let mut rem = f.coefficients_in(x);
    while rem.len() > dg {
        let d = rem.len() - 1;
        let lead_r = rem[d].clone();
        if lead_r.is_zero() {
            rem.pop();
            continue;
        }
        for c in rem.iter_mut() {
            *c = &*c * lead_g;
        }
        for k in 0..=dg {
            rem[d - dg + k] = &rem[d - dg + k] - &(&lead_r * &gc[k]);
        }
        debug_assert!(rem[d].is_zero());
        rem.pop();
    }
    while rem.last().is_some_and(MultiPoly::is_zero) {
        rem.pop();
    }
    MultiPoly::from_coefficients_in(x, &rem)
}
