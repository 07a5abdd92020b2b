//! Exterior forms over the mixed coframe/connection basis.
//!
//! Forms live on the four-dimensional hypersurface. A term is a rational
//! function times a strictly sorted wedge word in the basis one-forms: the
//! four coframe forms omega_m and the six connection forms omega_{ij}
//! (i < j). Words are normalized by sorting with sign tracking; a repeated
//! factor kills the term. Because every form is a form on the hypersurface,
//! any word of length above four vanishes once the connection forms are
//! expanded in the coframe, so degrees are clamped at the top dimension.
//!
//! The exterior derivative is split in two: [`d_structure`] differentiates
//! a basis one-form through the structure equations
//!
//! ```text
//! d omega_i  = sum_j omega_{ij} ^ omega_j
//! d omega_{ij} = sum_k omega_{ik} ^ omega_{kj}
//!                - R_{ijij} omega_i ^ omega_j
//! ```
//!
//! and [`d_function`] differentiates a curvature polynomial through the
//! solved diagonal derivatives, `d lambda_j = sum_m h_{jj,m} omega_m`.
//! [`d_form`] combines them by the graded Leibniz rule. Differentiation is
//! performed before connection expansion; expansion is the last step.

use std::collections::BTreeMap;

use crate::reduction::ReductionContext;
use crate::symkernel::{MultiPoly, RatFunc, Symbol};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum FormError {
    #[error("coefficient contains derivative symbol {0}; only curvature polynomials are differentiable")]
    DerivativeInCoefficient(String),
    #[error("coefficient is not a polynomial: {0}")]
    NonPolynomialCoefficient(String),
}

/// Basis one-form on the hypersurface.
///
/// The derived order (coframe forms first, then connection forms, each by
/// index) is the word order used for normalization.
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub enum BasisOneForm {
    /// omega_m, m in 1..=4.
    Coframe(u8),
    /// omega_{ij}, 1 <= i < j <= 4.
    Connection(u8, u8),
}

impl BasisOneForm {
    pub fn coframe(m: u8) -> BasisOneForm {
        assert!((1..=4).contains(&m), "coframe index {m} out of range");
        BasisOneForm::Coframe(m)
    }

    /// The connection form for an ordered pair, with the sign relating it
    /// to the stored representative: `omega_{ij} = sign * omega_{min,max}`.
    pub fn connection(i: u8, j: u8) -> (BasisOneForm, i64) {
        assert!((1..=4).contains(&i) && (1..=4).contains(&j) && i != j, "bad connection pair ({i}, {j})");
        if i < j {
            (BasisOneForm::Connection(i, j), 1)
        } else {
            (BasisOneForm::Connection(j, i), -1)
        }
    }
}

impl std::fmt::Display for BasisOneForm {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            BasisOneForm::Coframe(m) => write!(f, "w{m}"),
            BasisOneForm::Connection(i, j) => write!(f, "w{i}{j}"),
        }
    }
}

type Word = Vec<BasisOneForm>;

/// Sort a wedge word, tracking the permutation sign. `None` when a factor
/// repeats.
fn normalize_word(word: &[BasisOneForm]) -> Option<(Word, i64)> {
    let mut w: Word = word.to_vec();
    let mut sign = 1i64;
    // Insertion sort; each adjacent swap flips the sign.
    for i in 1..w.len() {
        let mut j = i;
        while j > 0 && w[j - 1] > w[j] {
            w.swap(j - 1, j);
            sign = -sign;
            j -= 1;
        }
    }
    if w.windows(2).any(|p| p[0] == p[1]) {
        return None;
    }
    Some((w, sign))
}

/// Exterior form of a fixed degree over the mixed basis.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct DForm {
    degree: u8,
    terms: BTreeMap<Word, RatFunc>,
}

impl DForm {
    pub fn zero(degree: u8) -> DForm {
        assert!(degree <= 4, "degree {degree} above top dimension");
        DForm { degree, terms: BTreeMap::new() }
    }

    /// Degree-zero form with the given coefficient.
    pub fn scalar(c: RatFunc) -> DForm {
        DForm::term(c, &[])
    }

    pub fn one_form(b: BasisOneForm) -> DForm {
        DForm::term(RatFunc::one(), &[b])
    }

    /// Single term `c * word`, normalized. Degree is the word length.
    pub fn term(c: RatFunc, word: &[BasisOneForm]) -> DForm {
        let degree = word.len() as u8;
        assert!(degree <= 4, "word length {degree} above top dimension");
        let mut form = DForm::zero(degree);
        form.add_term(c, word);
        form
    }

    pub fn degree(&self) -> u8 {
        self.degree
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// Terms as (sorted word, coefficient), in word order.
    pub fn terms(&self) -> impl Iterator<Item = (&Word, &RatFunc)> {
        self.terms.iter()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    fn add_term(&mut self, c: RatFunc, word: &[BasisOneForm]) {
        if c.is_zero() {
            return;
        }
        let Some((w, sign)) = normalize_word(word) else {
            return;
        };
        let c = if sign < 0 { -c } else { c };
        use std::collections::btree_map::Entry;
        match self.terms.entry(w) {
            Entry::Vacant(v) => {
                v.insert(c);
            }
            Entry::Occupied(mut o) => {
                let sum = o.get() + &c;
                if sum.is_zero() {
                    o.remove();
                } else {
                    *o.get_mut() = sum;
                }
            }
        }
    }

    /// Coefficient of a wedge word, adjusted for the word's sign.
    pub fn coefficient(&self, word: &[BasisOneForm]) -> RatFunc {
        let Some((w, sign)) = normalize_word(word) else {
            return RatFunc::zero();
        };
        let c = self.terms.get(&w).cloned().unwrap_or_else(RatFunc::zero);
        if sign < 0 {
            -c
        } else {
            c
        }
    }

    /// Coefficient of the volume word omega_1 ^ omega_2 ^ omega_3 ^ omega_4.
    pub fn volume_coefficient(&self) -> RatFunc {
        self.coefficient(&volume_word())
    }

    pub fn scale(&self, c: &RatFunc) -> DForm {
        if c.is_zero() {
            return DForm::zero(self.degree);
        }
        DForm {
            degree: self.degree,
            terms: self.terms.iter().map(|(w, v)| (w.clone(), v * c)).collect(),
        }
    }

    /// Wedge product. Degrees above the hypersurface dimension collapse to
    /// the zero top form.
    pub fn wedge(&self, rhs: &DForm) -> DForm {
        let degree = self.degree + rhs.degree;
        if degree > 4 {
            return DForm::zero(4);
        }
        let mut out = DForm::zero(degree);
        for (w1, c1) in &self.terms {
            for (w2, c2) in &rhs.terms {
                let mut word = w1.clone();
                word.extend_from_slice(w2);
                out.add_term(c1 * c2, &word);
            }
        }
        out
    }

    /// Whether every word uses coframe forms only.
    pub fn is_coframe_only(&self) -> bool {
        self.terms
            .keys()
            .all(|w| w.iter().all(|b| matches!(b, BasisOneForm::Coframe(_))))
    }

    /// Rewrite every connection form in the coframe basis,
    /// `omega_{ij} = sum_m h_{ij,m} / (lambda_i - lambda_j) omega_m`.
    pub fn expand_connection(&self, ctx: &ReductionContext) -> DForm {
        let mut out = DForm::zero(self.degree);
        for (word, c) in &self.terms {
            let mut acc = DForm::scalar(c.clone());
            for b in word {
                let factor = match b {
                    BasisOneForm::Coframe(_) => DForm::one_form(*b),
                    BasisOneForm::Connection(i, j) => {
                        let mut f = DForm::zero(1);
                        for m in 1..=4u8 {
                            let coeff = ctx
                                .connection_coefficient(*i, *j, m)
                                .expect("valid connection pair");
                            f.add_term(coeff, &[BasisOneForm::coframe(m)]);
                        }
                        f
                    }
                };
                acc = acc.wedge(&factor);
            }
            out = &out + &acc;
        }
        debug_assert!(out.is_coframe_only());
        out
    }
}

impl std::ops::Add for &DForm {
    type Output = DForm;
    fn add(self, rhs: &DForm) -> DForm {
        if self.is_zero() {
            return rhs.clone();
        }
        if rhs.is_zero() {
            return self.clone();
        }
        assert_eq!(self.degree, rhs.degree, "degree mismatch in form addition");
        let mut out = self.clone();
        for (w, c) in &rhs.terms {
            out.add_term(c.clone(), w);
        }
        out
    }
}

impl std::ops::Sub for &DForm {
    type Output = DForm;
    fn sub(self, rhs: &DForm) -> DForm {
        self + &(-rhs)
    }
}

impl std::ops::Neg for &DForm {
    type Output = DForm;
    fn neg(self) -> DForm {
        DForm {
            degree: self.degree,
            terms: self.terms.iter().map(|(w, c)| (w.clone(), -c)).collect(),
        }
    }
}

impl std::fmt::Display for DForm {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        if self.is_zero() {
            return f.write_str("0");
        }
        let mut first = true;
        for (w, c) in &self.terms {
            if !first {
                f.write_str(" + ")?;
            }
            first = false;
            write!(f, "({c})")?;
            for b in w {
                write!(f, "^{b}")?;
            }
        }
        Ok(())
    }
}

/// The orientation word omega_1 ^ omega_2 ^ omega_3 ^ omega_4.
pub fn volume_word() -> Word {
    (1..=4).map(BasisOneForm::coframe).collect()
}

/// Exterior derivative of a basis one-form via the structure equations.
pub fn d_structure(b: BasisOneForm, ctx: &ReductionContext) -> DForm {
    let mut out = DForm::zero(2);
    match b {
        BasisOneForm::Coframe(i) => {
            // d omega_i = sum_{j != i} omega_{ij} ^ omega_j.
            for j in 1..=4u8 {
                if j == i {
                    continue;
                }
                let (conn, sign) = BasisOneForm::connection(i, j);
                out.add_term(
                    RatFunc::from_int(sign),
                    &[conn, BasisOneForm::coframe(j)],
                );
            }
        }
        BasisOneForm::Connection(i, j) => {
            // Quadratic part: sum_{k != i, j} omega_{ik} ^ omega_{kj}.
            for k in 1..=4u8 {
                if k == i || k == j {
                    continue;
                }
                let (cik, s1) = BasisOneForm::connection(i, k);
                let (ckj, s2) = BasisOneForm::connection(k, j);
                out.add_term(RatFunc::from_int(s1 * s2), &[cik, ckj]);
            }
            // Curvature part: -1/2 sum_{k,l} R_{ijkl} omega_k ^ omega_l
            // collapses to -R_{ijkl} over k < l; only (k,l) = (i,j)
            // survives in the principal frame.
            for k in 1..=4u8 {
                for m in (k + 1)..=4 {
                    let r = ctx.gauss(i, j, k, m).expect("valid indices");
                    if r.is_zero() {
                        continue;
                    }
                    out.add_term(
                        -RatFunc::from_poly(r),
                        &[BasisOneForm::coframe(k), BasisOneForm::coframe(m)],
                    );
                }
            }
        }
    }
    out
}

/// Exterior derivative of a curvature polynomial.
///
/// The polynomial may mention the eliminated fourth curvature (it is
/// substituted away first) but no derivative symbols: second derivatives
/// of the second fundamental form are outside the engine's alphabet.
pub fn d_function(p: &MultiPoly, ctx: &ReductionContext) -> Result<DForm, FormError> {
    if let Some(s) = p.support().into_iter().find(|s| s.is_derivative()) {
        return Err(FormError::DerivativeInCoefficient(s.name()));
    }
    let p = ctx.substitute_lambda4(p);
    let mut out = DForm::zero(1);
    for m in 1..=4u8 {
        let mut coeff = RatFunc::zero();
        for j in 1..=3u8 {
            let grad = p.partial_derivative(Symbol::Lambda(j));
            if grad.is_zero() {
                continue;
            }
            let h = ctx.h(j, j, m).expect("valid indices");
            coeff = &coeff + &(&RatFunc::from_poly(grad) * &h);
        }
        out.add_term(coeff, &[BasisOneForm::coframe(m)]);
    }
    Ok(out)
}

/// Exterior derivative of a form whose coefficients are curvature
/// polynomials, by the graded Leibniz rule. Differentiation happens in the
/// mixed basis; connection expansion must come after.
pub fn d_form(f: &DForm, ctx: &ReductionContext) -> Result<DForm, FormError> {
    if f.degree == 4 {
        // Top-degree forms have no exterior derivative on the hypersurface.
        return Ok(DForm::zero(4));
    }
    let mut out = DForm::zero(f.degree + 1);
    for (word, c) in &f.terms {
        let Some(cp) = c.as_polynomial() else {
            return Err(FormError::NonPolynomialCoefficient(c.to_string()));
        };
        // d(c) ^ word
        let dc = d_function(&cp, ctx)?;
        out = &out + &dc.wedge(&DForm::term(RatFunc::one(), word));
        // c * sum_r (-1)^r prefix ^ d(word_r) ^ suffix
        for r in 0..word.len() {
            let prefix = DForm::term(RatFunc::one(), &word[..r]);
            let suffix = DForm::term(RatFunc::one(), &word[r + 1..]);
            let middle = d_structure(word[r], ctx);
            let mut piece = prefix.wedge(&middle).wedge(&suffix).scale(c);
            if r % 2 == 1 {
                piece = -&piece;
            }
            out = &out + &piece;
        }
    }
    Ok(out)
}

/// The fixed 3-form theta_{ij}: the complementary coframe pair wedged with
/// the connection form, in the reference factor order.
pub fn theta(i: u8, j: u8) -> DForm {
    let w = |m: u8| BasisOneForm::coframe(m);
    let conn = |i: u8, j: u8| BasisOneForm::connection(i, j).0;
    match (i, j) {
        (1, 2) => DForm::term(RatFunc::one(), &[w(3), w(4), conn(1, 2)]),
        (1, 3) => DForm::term(RatFunc::one(), &[w(4), w(2), conn(1, 3)]),
        (1, 4) => DForm::term(RatFunc::one(), &[w(2), w(3), conn(1, 4)]),
        (2, 3) => DForm::term(RatFunc::one(), &[w(1), w(4), conn(2, 3)]),
        (2, 4) => DForm::term(RatFunc::one(), &[w(3), w(1), conn(2, 4)]),
        (3, 4) => DForm::term(RatFunc::one(), &[w(1), w(2), conn(3, 4)]),
        _ => panic!("theta index pair ({i}, {j}) out of range"),
    }
}

/// The six index pairs in lexicographic order.
pub fn theta_pairs() -> [(u8, u8); 6] {
    [(1, 2), (1, 3), (1, 4), (2, 3), (2, 4), (3, 4)]
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::symkernel::rat;

    fn w(m: u8) -> BasisOneForm {
        BasisOneForm::coframe(m)
    }

    fn conn(i: u8, j: u8) -> BasisOneForm {
        BasisOneForm::connection(i, j).0
    }

    fn one(b: BasisOneForm) -> DForm {
        DForm::one_form(b)
    }

    #[test]
    fn wedge_is_antisymmetric_on_one_forms() {
        let a = one(w(1)).wedge(&one(w(2)));
        let b = one(w(2)).wedge(&one(w(1)));
        assert_eq!(a, -&b);
        assert!(one(w(1)).wedge(&one(w(1))).is_zero());
    }

    #[test]
    fn word_normalization_sign() {
        // w4 ^ w2 = -(w2 ^ w4)
        let f = DForm::term(RatFunc::one(), &[w(4), w(2)]);
        assert_eq!(f.coefficient(&[w(2), w(4)]), RatFunc::from_int(-1));
        assert_eq!(f.coefficient(&[w(4), w(2)]), RatFunc::one());
        // coframe factors precede connection factors
        let g = DForm::term(RatFunc::one(), &[conn(1, 2), w(3)]);
        assert_eq!(g.coefficient(&[w(3), conn(1, 2)]), RatFunc::from_int(-1));
    }

    #[test]
    fn volume_orientation() {
        // (w3 ^ w4) ^ (w1 ^ w2) is an even shuffle of the volume word.
        let a = DForm::term(RatFunc::one(), &[w(3), w(4)]);
        let b = DForm::term(RatFunc::one(), &[w(1), w(2)]);
        assert_eq!(a.wedge(&b).volume_coefficient(), RatFunc::one());
        // Words above the top dimension collapse.
        let c = a.wedge(&b).wedge(&one(w(1)));
        assert!(c.is_zero());
        assert_eq!(c.degree(), 4);
    }

    #[test]
    fn theta_factor_orders() {
        // theta_13 = w4 ^ w2 ^ w13 stores as -(w2 ^ w4 ^ w13).
        let t = theta(1, 3);
        assert_eq!(t.coefficient(&[w(2), w(4), conn(1, 3)]), RatFunc::from_int(-1));
        // theta_24 = w3 ^ w1 ^ w24 stores as -(w1 ^ w3 ^ w24).
        let t = theta(2, 4);
        assert_eq!(t.coefficient(&[w(1), w(3), conn(2, 4)]), RatFunc::from_int(-1));
        // theta_12 keeps its printed order.
        let t = theta(1, 2);
        assert_eq!(t.coefficient(&[w(3), w(4), conn(1, 2)]), RatFunc::one());
        for (i, j) in theta_pairs() {
            assert_eq!(theta(i, j).degree(), 3);
        }
    }

    #[test]
    fn expansion_of_a_connection_form() {
        let ctx = ReductionContext::new();
        let e = one(conn(1, 2)).expand_connection(&ctx);
        assert!(e.is_coframe_only());
        for m in 1..=4u8 {
            assert_eq!(
                e.coefficient(&[w(m)]),
                ctx.connection_coefficient(1, 2, m).unwrap(),
                "coefficient of w{m}"
            );
        }
        // Coframe-only forms expand to themselves.
        let f = DForm::term(RatFunc::from_int(3), &[w(1), w(2)]);
        assert_eq!(f.expand_connection(&ctx), f);
    }

    #[test]
    fn expansion_of_theta_keeps_complementary_directions() {
        // theta_12 = w3 ^ w4 ^ w12: only the m = 1, 2 parts of w12 survive.
        let ctx = ReductionContext::new();
        let e = theta(1, 2).expand_connection(&ctx);
        let c1 = e.coefficient(&[w(1), w(3), w(4)]);
        let c2 = e.coefficient(&[w(2), w(3), w(4)]);
        assert_eq!(c1, ctx.connection_coefficient(1, 2, 1).unwrap());
        assert_eq!(c2, ctx.connection_coefficient(1, 2, 2).unwrap());
        assert_eq!(e.num_terms(), 2);
    }

    #[test]
    fn structure_equation_for_coframe() {
        let ctx = ReductionContext::new();
        let d1 = d_structure(w(1), &ctx);
        // d w1 = w12 ^ w2 + w13 ^ w3 + w14 ^ w4.
        let mut expected = DForm::zero(2);
        for j in 2..=4u8 {
            expected = &expected + &DForm::term(RatFunc::one(), &[conn(1, j), w(j)]);
        }
        assert_eq!(d1, expected);
    }

    #[test]
    fn structure_equation_for_connection() {
        let ctx = ReductionContext::new();
        let d12 = d_structure(conn(1, 2), &ctx);
        // Curvature part: coefficient of w1 ^ w2 is -R_{1212}.
        let r = ctx.gauss(1, 2, 1, 2).unwrap();
        assert_eq!(d12.coefficient(&[w(1), w(2)]), -RatFunc::from_poly(r));
        // Quadratic part: omega_13 ^ omega_32 = -(w13 ^ w23).
        assert_eq!(d12.coefficient(&[conn(1, 3), conn(2, 3)]), RatFunc::from_int(-1));
        assert_eq!(d12.coefficient(&[conn(1, 4), conn(2, 4)]), RatFunc::from_int(-1));
        assert_eq!(d12.num_terms(), 3);
    }

    #[test]
    fn d_function_kills_fixed_power_sums() {
        let ctx = ReductionContext::new();
        let lam = |i: u8| MultiPoly::symbol(Symbol::Lambda(i));
        // Raw f1, f2, f3 (with the raw fourth curvature) all close.
        for k in 1..=3u32 {
            let raw = (1..=4u8).fold(MultiPoly::zero(), |acc, i| &acc + &lam(i).pow(k));
            let d = d_function(&raw, &ctx).unwrap();
            assert!(d.is_zero(), "d f{k} = 0");
        }
        // Constants close; f4 does not.
        assert!(d_function(&MultiPoly::from_int(7), &ctx).unwrap().is_zero());
        let f4 = ctx.power_sum(4).unwrap();
        assert!(!d_function(&f4, &ctx).unwrap().is_zero());
    }

    #[test]
    fn d_function_of_a_single_curvature() {
        let ctx = ReductionContext::new();
        let d = d_function(&MultiPoly::symbol(Symbol::Lambda(1)), &ctx).unwrap();
        for m in 1..=4u8 {
            assert_eq!(d.coefficient(&[w(m)]), ctx.h(1, 1, m).unwrap());
        }
    }

    #[test]
    fn d_function_rejects_derivative_symbols() {
        let ctx = ReductionContext::new();
        let p = MultiPoly::symbol(Symbol::Deriv(1));
        assert_eq!(
            d_function(&p, &ctx).unwrap_err(),
            FormError::DerivativeInCoefficient("D1".into())
        );
    }

    #[test]
    fn d_form_satisfies_leibniz_on_an_instance() {
        let ctx = ReductionContext::new();
        let lam = |i: u8| MultiPoly::symbol(Symbol::Lambda(i));
        let f = DForm::term(RatFunc::from_poly(&lam(1) + &lam(2)), &[w(1)]);
        let g = DForm::term(RatFunc::from_poly(lam(3)), &[w(2), conn(1, 2)]);
        let lhs = d_form(&f.wedge(&g), &ctx).unwrap();
        let df_g = d_form(&f, &ctx).unwrap().wedge(&g);
        let f_dg = f.wedge(&d_form(&g, &ctx).unwrap());
        // deg f = 1, so the sign on f ^ dg is -1.
        let rhs = &df_g - &f_dg;
        assert_eq!(lhs, rhs);
    }

    #[test]
    fn d_form_requires_polynomial_curvature_coefficients() {
        let ctx = ReductionContext::new();
        let lam = |i: u8| MultiPoly::symbol(Symbol::Lambda(i));
        let c = RatFunc::new(MultiPoly::one(), &lam(1) - &lam(2)).unwrap();
        let f = DForm::term(c, &[w(1)]);
        assert!(matches!(d_form(&f, &ctx), Err(FormError::NonPolynomialCoefficient(_))));
        let g = DForm::term(RatFunc::from_symbol(Symbol::Deriv(2)), &[w(1)]);
        assert!(matches!(d_form(&g, &ctx), Err(FormError::DerivativeInCoefficient(_))));
    }

    #[test]
    fn d_of_top_degree_vanishes() {
        let ctx = ReductionContext::new();
        let vol = DForm::term(RatFunc::one(), &volume_word());
        assert!(d_form(&vol, &ctx).unwrap().is_zero());
    }

    #[test]
    fn scale_by_zero_clears() {
        let f = DForm::term(RatFunc::from_int(2), &[w(1), w(2)]);
        assert!(f.scale(&RatFunc::zero()).is_zero());
        assert_eq!(f.scale(&RatFunc::from_rational(rat(1, 2))).coefficient(&[w(1), w(2)]), RatFunc::one());
    }
}
