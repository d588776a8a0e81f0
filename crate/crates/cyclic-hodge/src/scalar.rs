//! Exact rational scalars.
//!
//! The ground field is `ℚ` with arbitrary-precision arithmetic. Values are
//! always stored in lowest terms with positive denominator (guaranteed by
//! `num::BigRational`). Nothing in this crate ever rounds.

use num::{BigInt, BigRational, Signed, Zero};

/// The scalar type of the whole engine: an arbitrary-precision rational.
pub type Q = BigRational;

/// Integer scalar.
pub fn qi(n: i64) -> Q {
    Q::from(BigInt::from(n))
}

/// Rational scalar `n/d`.
///
/// # Panics
/// Panics if `d == 0`.
pub fn qr(n: i64, d: i64) -> Q {
    Q::new(BigInt::from(n), BigInt::from(d))
}

/// `(-1)^e` as a scalar.
pub fn sign_pow(e: i64) -> Q {
    if e.rem_euclid(2) == 0 {
        qi(1)
    } else {
        qi(-1)
    }
}

/// Parse an exact rational literal: an optionally signed integer or a
/// `p/q` fraction of such. No floats are accepted anywhere.
pub fn parse_rational(s: &str) -> Result<Q, String> {
    let s = s.trim();
    let parse_int = |t: &str| -> Result<BigInt, String> {
        t.trim()
            .parse::<BigInt>()
            .map_err(|_| format!("not an integer: `{t}`"))
    };
    match s.split_once('/') {
        None => Ok(Q::from(parse_int(s)?)),
        Some((num, den)) => {
            let den = parse_int(den)?;
            if den.is_zero() {
                return Err(format!("zero denominator in `{s}`"));
            }
            Ok(Q::new(parse_int(num)?, den))
        }
    }
}

/// Render a rational in the same `p/q` literal form accepted by
/// [`parse_rational`].
pub fn format_rational(q: &Q) -> String {
    if q.denom() == &BigInt::from(1) {
        q.numer().to_string()
    } else {
        format!("{}/{}", q.numer(), q.denom())
    }
}

/// True if `q` is a (possibly negative) unit-denominator integer.
pub fn is_integer(q: &Q) -> bool {
    q.denom() == &BigInt::from(1)
}

/// Absolute value (handy for pivot heuristics that only need magnitudes
/// for tie-breaking; arithmetic itself stays exact).
pub fn abs(q: &Q) -> Q {
    q.abs()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parse_and_format_round_trip() {
        for s in ["0", "5", "-7", "2/3", "-9/4", "10/5"] {
            let q = parse_rational(s).unwrap();
            let q2 = parse_rational(&format_rational(&q)).unwrap();
            assert_eq!(q, q2);
        }
        assert_eq!(parse_rational("10/5").unwrap(), qi(2));
        assert_eq!(parse_rational("-4/8").unwrap(), qr(-1, 2));
    }

    #[test]
    fn lowest_terms_positive_denominator() {
        let q = parse_rational("6/-8").unwrap();
        assert_eq!(q, qr(-3, 4));
        assert!(q.denom().is_positive());
    }

    #[test]
    fn rejects_floats_and_garbage() {
        assert!(parse_rational("0.5").is_err());
        assert!(parse_rational("1/0").is_err());
        assert!(parse_rational("x").is_err());
    }

    #[test]
    fn sign_pow_parity() {
        assert_eq!(sign_pow(0), qi(1));
        assert_eq!(sign_pow(3), qi(-1));
        assert_eq!(sign_pow(-1), qi(-1));
        assert_eq!(sign_pow(-2), qi(1));
    }
}
