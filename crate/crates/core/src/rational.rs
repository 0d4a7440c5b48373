//! Exact rational scalars and their canonical text form.
//!
//! Scalars print as `p/q` in lowest terms with the sign on the numerator,
//! or as a bare integer when the denominator is 1 — exactly what
//! `BigRational`'s `Display` produces, so formatting just defers to it.
//! Parsing is stricter than `BigRational::from_str`: a zero denominator is
//! a parse error here, not a panic.

use num::{BigInt, BigRational, Zero};

use crate::{Error, Result};

/// Arbitrary-precision rational used for every scalar in the crate.
pub type Rational = BigRational;

/// `n/d` as a [`Rational`]. Panics on `d == 0`; intended for literals.
pub fn ratio(n: i64, d: i64) -> Rational {
    Rational::new(BigInt::from(n), BigInt::from(d))
}

/// Integer `n` as a [`Rational`].
pub fn int(n: i64) -> Rational {
    Rational::from(BigInt::from(n))
}

/// Canonical text form: `p/q` reduced, or `p` when the denominator is 1.
pub fn format_rational(r: &Rational) -> String {
    r.to_string()
}

/// Parse `p/q` or a bare integer. Whitespace is not accepted; the sign
/// belongs to the numerator.
pub fn parse_rational(s: &str) -> Result<Rational> {
    let (num_str, den_str) = match s.split_once('/') {
        Some((n, d)) => (n, Some(d)),
        None => (s, None),
    };
    let numer: BigInt = num_str
        .parse()
        .map_err(|_| Error::parse(format!("invalid rational numerator in {s:?}")))?;
    let denom: BigInt = match den_str {
        Some(d) => d
            .parse()
            .map_err(|_| Error::parse(format!("invalid rational denominator in {s:?}")))?,
        None => BigInt::from(1),
    };
    if denom.is_zero() {
        return Err(Error::parse(format!("zero denominator in {s:?}")));
    }
    Ok(Rational::new(numer, denom))
}
