//! Exact sparse multivariate arithmetic over a fixed symbol alphabet.
//!
//! Every polynomial in the engine lives in one ring: rational coefficients
//! over the 24 symbols of [`Symbol`]. The first [`NUM_CANONICAL`] symbols
//! form the canonical alphabet (three independent curvatures plus eight free
//! derivative generators); the rest are raw symbols that the reduction layer
//! eliminates. Keeping both kinds in one ring lets fixture expressions be
//! evaluated verbatim and reduced afterwards.

mod gcd;
mod parse;
mod poly;
mod ratfunc;

pub use gcd::poly_gcd;
pub use parse::{parse_atom_expression, parse_definitions, parse_expression, Definitions, ParseError};
pub use poly::{Assignment, Monomial, MultiPoly};
pub use ratfunc::RatFunc;

use serde::{Deserialize, Serialize};

/// Exact rational scalar used throughout the engine.
pub type Rational = num_rational::BigRational;

/// Convenience constructor for small rational constants.
pub fn rat(num: i64, den: i64) -> Rational {
    assert!(den != 0, "zero denominator");
    Rational::new(num.into(), den.into())
}

/// Total number of symbols in the ring.
pub const NUM_SYMBOLS: usize = 24;

/// Number of canonical symbols; these occupy indices `0..NUM_CANONICAL`.
pub const NUM_CANONICAL: usize = 11;

/// A generator of the polynomial ring.
///
/// Significance order (most significant first), used by the graded
/// lexicographic term order and by serialization:
///
/// ```text
/// Lambda(1) > Lambda(2) > Lambda(3)
///   > Deriv(1) > Deriv(2) > Deriv(3) > Deriv(4)
///   > Mixed(1,2,3) > Mixed(1,2,4) > Mixed(1,3,4) > Mixed(2,3,4)
///   > [raw] Lambda(4) > [raw] the twelve Diag(a, b)
/// ```
///
/// `Lambda(i)` is the i-th principal curvature. `Deriv(m)` is the covariant
/// derivative h_{44,m} of the last diagonal entry of the second fundamental
/// form. `Mixed(i,j,k)` with i<j<k is h_{ij,k} for pairwise distinct
/// indices. `Diag(a, b)` is the raw diagonal derivative h_{aa,b} for a in
/// 1..=3; the reduction layer rewrites it as a rational multiple of
/// `Deriv(b)`. `Lambda(4)` is raw as well: minimality makes it the negated
/// sum of the first three.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug, Serialize, Deserialize)]
pub enum Symbol {
    /// Principal curvature, index 1..=4. Index 4 is raw.
    Lambda(u8),
    /// Free derivative generator h_{44,m}, index 1..=4.
    Deriv(u8),
    /// Free derivative generator h_{ijk} with pairwise distinct sorted
    /// indices drawn from 1..=4.
    Mixed(u8, u8, u8),
    /// Raw diagonal derivative h_{aa,b} with a in 1..=3, b in 1..=4.
    Diag(u8, u8),
}

impl Symbol {
    /// Position in the significance order; 0 is most significant.
    pub fn index(self) -> usize {
        match self {
            Symbol::Lambda(i @ 1..=3) => i as usize - 1,
            Symbol::Lambda(4) => 11,
            Symbol::Deriv(m @ 1..=4) => 2 + m as usize,
            Symbol::Mixed(1, 2, 3) => 7,
            Symbol::Mixed(1, 2, 4) => 8,
            Symbol::Mixed(1, 3, 4) => 9,
            Symbol::Mixed(2, 3, 4) => 10,
            Symbol::Diag(a @ 1..=3, b @ 1..=4) => 12 + (a as usize - 1) * 4 + (b as usize - 1),
            other => panic!("malformed symbol {other:?}"),
        }
    }

    /// Inverse of [`Symbol::index`].
    pub fn from_index(idx: usize) -> Symbol {
        ALL_SYMBOLS[idx]
    }

    /// Whether the symbol belongs to the canonical alphabet.
    pub fn is_canonical(self) -> bool {
        self.index() < NUM_CANONICAL
    }

    /// True for the eight free derivative generators.
    pub fn is_derivative(self) -> bool {
        matches!(self, Symbol::Deriv(_) | Symbol::Mixed(..) | Symbol::Diag(..))
    }

    /// Short serialization name, e.g. `l1`, `D3`, `T124`, `h223`.
    ///
    /// Diagonal symbols print as the sorted index triple of the derivative
    /// they stand for: `Diag(2, 3)` is h_{22,3} and prints `h223`.
    pub fn name(self) -> String {
        match self {
            Symbol::Lambda(i) => format!("l{i}"),
            Symbol::Deriv(m) => format!("D{m}"),
            Symbol::Mixed(i, j, k) => format!("T{i}{j}{k}"),
            Symbol::Diag(a, b) => {
                let mut t = [a, a, b];
                t.sort_unstable();
                format!("h{}{}{}", t[0], t[1], t[2])
            }
        }
    }

    /// Parse a serialization name back into a symbol.
    pub fn from_name(name: &str) -> Option<Symbol> {
        ALL_SYMBOLS.iter().copied().find(|s| s.name() == name)
    }
}

impl PartialOrd for Symbol {
    fn partial_cmp(&self, other: &Self) -> Option<std::cmp::Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for Symbol {
    /// `Lambda(1)` is the greatest symbol, matching the significance order.
    fn cmp(&self, other: &Self) -> std::cmp::Ordering {
        other.index().cmp(&self.index())
    }
}

impl std::fmt::Display for Symbol {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(&self.name())
    }
}

/// All symbols in significance order.
pub const ALL_SYMBOLS: [Symbol; NUM_SYMBOLS] = [
    Symbol::Lambda(1),
    Symbol::Lambda(2),
    Symbol::Lambda(3),
    Symbol::Deriv(1),
    Symbol::Deriv(2),
    Symbol::Deriv(3),
    Symbol::Deriv(4),
    Symbol::Mixed(1, 2, 3),
    Symbol::Mixed(1, 2, 4),
    Symbol::Mixed(1, 3, 4),
    Symbol::Mixed(2, 3, 4),
    Symbol::Lambda(4),
    Symbol::Diag(1, 1),
    Symbol::Diag(1, 2),
    Symbol::Diag(1, 3),
    Symbol::Diag(1, 4),
    Symbol::Diag(2, 1),
    Symbol::Diag(2, 2),
    Symbol::Diag(2, 3),
    Symbol::Diag(2, 4),
    Symbol::Diag(3, 1),
    Symbol::Diag(3, 2),
    Symbol::Diag(3, 3),
    Symbol::Diag(3, 4),
];

/// The canonical alphabet in significance order.
pub fn canonical_symbols() -> &'static [Symbol] {
    &ALL_SYMBOLS[..NUM_CANONICAL]
}

/// Errors raised by kernel arithmetic.
#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum KernelError {
    /// Division of rational functions by the zero function.
    #[error("division by the zero rational function")]
    DivisionByZero,
    /// `poly_gcd` applied to two zero polynomials.
    #[error("gcd of two zero polynomials is undefined")]
    GcdOfZeros,
    /// Evaluation point missing a value for a symbol that occurs.
    #[error("no value assigned to symbol {0}")]
    MissingAssignment(String),
    /// Evaluation point where a denominator vanishes.
    #[error("denominator vanishes at the evaluation point")]
    DenominatorVanishes,
}
