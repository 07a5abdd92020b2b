//! Exact verification engine for the moving-frames computation on closed
//! minimal hypersurfaces of S^5 with four distinct principal curvatures,
//! together with a numeric lab for the isoparametric model family.
//!
//! The crate is organized in layers:
//!
//! * [`symkernel`]: sparse multivariate polynomials and rational functions
//!   over exact rationals, in a fixed finite symbol alphabet.
//! * [`reduction`]: the hypersurface rewriting context. It eliminates the
//!   fourth curvature through the minimality trace and rewrites all second
//!   fundamental form derivatives into eight free generators.
//! * [`coframe`]: exterior forms over the mixed coframe/connection basis,
//!   the structure equations, and exterior differentiation.
//! * [`verifier`]: the identity checks (the master volume identity, the six
//!   per-pair volume coefficients, and the supporting algebraic identities),
//!   plus a seeded numeric crosscheck.
//! * [`models`]: exact isoparametric model curvatures, their invariants, and
//!   a certified solver recovering curvatures from low-order invariants.

pub mod coframe;
pub mod models;
pub mod reduction;
pub mod symkernel;
pub mod verifier;

/// Version string stamped into reports.
pub const ENGINE_VERSION: &str = env!("CARGO_PKG_VERSION");
