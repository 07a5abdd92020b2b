//! Exact parsing of command-line numbers and multiplicity patterns.
//!
//! Rationals accept integer (`-3`), ratio (`8/3`), and decimal (`1.25`)
//! notation; decimals convert exactly over a power-of-ten denominator, so
//! no binary-float rounding enters the pipeline.

use mhs5_core::symkernel::Rational;
use num_bigint::BigInt;
use num_traits::Zero;

/// Parse an exact rational. `None` on malformed input or zero denominator.
pub fn rational(input: &str) -> Option<Rational> {
    let s = input.trim();
    let (neg, s) = match s.strip_prefix('-') {
        Some(rest) => (true, rest),
        None => (false, s.strip_prefix('+').unwrap_or(s)),
    };
    let signed = |r: Rational| Some(if neg { -r } else { r });
    if let Some((n, d)) = s.split_once('/') {
        let n: BigInt = n.parse().ok()?;
        let d: BigInt = d.parse().ok()?;
        if d.is_zero() {
            return None;
        }
        return signed(Rational::new(n, d));
    }
    if let Some((ip, fp)) = s.split_once('.') {
        if !ip.chars().all(|c| c.is_ascii_digit()) || !fp.chars().all(|c| c.is_ascii_digit()) {
            return None;
        }
        let joined = format!("{ip}{fp}");
        if joined.is_empty() {
            return None;
        }
        let n: BigInt = joined.parse().ok()?;
        let den = num_traits::pow(BigInt::from(10), fp.len());
        return signed(Rational::new(n, den));
    }
    let n: BigInt = s.parse().ok()?;
    signed(Rational::from_integer(n))
}

/// Parse a comma-separated multiplicity pattern such as `1,1,2`. Content
/// validation (positivity, sum) is the callee's job; this only shapes the
/// list.
pub fn pattern(input: &str) -> Option<Vec<u32>> {
    input
        .split(',')
        .map(|p| p.trim().parse().ok())
        .collect::<Option<Vec<u32>>>()
}
