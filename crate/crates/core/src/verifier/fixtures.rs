//! Loader for the transcribed reference identities.
//!
//! The expressions stay in the raw alphabet exactly as written in the data
//! file; callers reduce them when a canonical comparison is needed. The
//! loader validates that every name the checks rely on is present, so a
//! broken transcription fails loudly at startup rather than inside a check.

use std::sync::OnceLock;

use crate::symkernel::{parse_definitions, Definitions, ParseError, RatFunc};

const SOURCE: &str = include_str!("reference_identities.txt");

/// Names the verifier requires, in file order.
const REQUIRED: &[&str] = &[
    "R1212", "R1313", "R1414", "R2323", "R2424", "R3434",
    "f2", "f3",
    "con3_1", "con3_2", "con3_3",
    "x12", "x13", "x14", "x23", "x24", "x34",
    "pf_123", "pf_124", "pf_134", "pf_234",
    "trace_weighted",
    "cubic_1", "cubic_2", "cubic_3", "cubic_4",
    "c1", "c2", "c3", "c4",
    "dphi_rhs",
];

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum FixtureError {
    #[error("reference file does not parse: {0}")]
    Parse(#[from] ParseError),
    #[error("reference file is missing `{0}`")]
    Missing(String),
}

/// Parsed reference identities, still in the raw alphabet.
#[derive(Debug, Clone)]
pub struct Fixtures {
    defs: Definitions,
}

impl Fixtures {
    pub fn load() -> Result<Fixtures, FixtureError> {
        let defs = parse_definitions(SOURCE)?;
        for name in REQUIRED {
            if defs.get(name).is_none() {
                return Err(FixtureError::Missing((*name).to_string()));
            }
        }
        Ok(Fixtures { defs })
    }

    /// Shared instance; the file is compiled in, so failure is a build
    /// defect and panics with the parse diagnostic.
    pub fn builtin() -> &'static Fixtures {
        static CELL: OnceLock<Fixtures> = OnceLock::new();
        CELL.get_or_init(|| Fixtures::load().expect("reference identities load"))
    }

    /// Raw expression by file name.
    pub fn get(&self, name: &str) -> Option<&RatFunc> {
        self.defs.get(name)
    }

    fn must(&self, name: &str) -> &RatFunc {
        self.defs.get(name).expect("validated at load")
    }

    /// Solved diagonal coefficient con3_a, a in 1..=3.
    pub fn con3(&self, a: u8) -> &RatFunc {
        assert!((1..=3).contains(&a));
        self.must(&format!("con3_{a}"))
    }

    /// Volume coefficient closed form for the pair (i, j), i < j.
    pub fn x(&self, i: u8, j: u8) -> &RatFunc {
        assert!(1 <= i && i < j && j <= 4, "bad pair ({i}, {j})");
        self.must(&format!("x{i}{j}"))
    }

    /// Partial-fraction identity for an index triple (sorted).
    pub fn partial_fraction(&self, triple: (u8, u8, u8)) -> &RatFunc {
        let (a, b, c) = triple;
        self.must(&format!("pf_{a}{b}{c}"))
    }

    /// The four partial-fraction triples in file order.
    pub fn partial_fraction_triples() -> [(u8, u8, u8); 4] {
        [(1, 2, 3), (1, 2, 4), (1, 3, 4), (2, 3, 4)]
    }

    pub fn trace_weighted(&self) -> &RatFunc {
        self.must("trace_weighted")
    }

    pub fn trace_cubic(&self, i: u8) -> &RatFunc {
        assert!((1..=4).contains(&i));
        self.must(&format!("cubic_{i}"))
    }

    /// Master identity coefficient c_i.
    pub fn c(&self, i: u8) -> &RatFunc {
        assert!((1..=4).contains(&i));
        self.must(&format!("c{i}"))
    }

    pub fn dphi_rhs(&self) -> &RatFunc {
        self.must("dphi_rhs")
    }

    pub fn gauss_diag(&self, i: u8, j: u8) -> &RatFunc {
        assert!(1 <= i && i < j && j <= 4, "bad pair ({i}, {j})");
        self.must(&format!("R{i}{j}{i}{j}"))
    }

    pub fn power_sum(&self, k: u8) -> &RatFunc {
        assert!((2..=3).contains(&k));
        self.must(&format!("f{k}"))
    }
}
