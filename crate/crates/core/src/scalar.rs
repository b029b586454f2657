//! Exact rational scalars.
//!
//! Everything in the crate is computed over the rationals; there is no
//! floating point anywhere. Scalars are rendered as `num/den` text with an
//! explicit denominator so that documents are bit-exact across languages.

use std::str::FromStr;

use num::{BigInt, BigRational, One, Signed, Zero};

pub type Scalar = BigRational;

#[inline]
pub fn zero() -> Scalar {
    Scalar::zero()
}

#[inline]
pub fn one() -> Scalar {
    Scalar::one()
}

#[inline]
pub fn int(v: i64) -> Scalar {
    Scalar::from_integer(BigInt::from(v))
}

pub fn ratio(num: i64, den: i64) -> Scalar {
    Scalar::new(BigInt::from(num), BigInt::from(den))
}

/// `(-1)^k` as a scalar.
#[inline]
pub fn sign(k: u8) -> Scalar {
    if k % 2 == 0 {
        one()
    } else {
        -one()
    }
}

/// Lowest-terms `num/den` text, always with the denominator (`"3/1"`).
pub fn to_text(s: &Scalar) -> String {
    format!("{}/{}", s.numer(), s.denom())
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
#[error("malformed scalar `{0}` (expected `num/den`)")]
pub struct ScalarParseError(pub String);

/// Parses `num/den` or a bare integer. The result is reduced to lowest terms.
pub fn parse(text: &str) -> Result<Scalar, ScalarParseError> {
    let err = || ScalarParseError(text.to_string());
    let t = text.trim();
    let (n, d) = match t.split_once('/') {
        Some((n, d)) => (n, d),
        None => (t, "1"),
    };
    let n = BigInt::from_str(n).map_err(|_| err())?;
    let d = BigInt::from_str(d).map_err(|_| err())?;
    if d.is_zero() || d.is_negative() {
        return Err(err());
    }
    Ok(Scalar::new(n, d))
}

/// Deterministic xorshift stream of small rationals. Used wherever the
/// algorithms need "random" test vectors but output must be reproducible.
#[derive(Debug, Clone)]
pub struct ScalarStream {
    state: u64,
}

impl ScalarStream {
    pub fn new(seed: u64) -> Self {
        Self {
            state: seed.wrapping_mul(0x9E37_79B9_7F4A_7C15) | 1,
        }
    }

    pub fn next_u64(&mut self) -> u64 {
        let mut x = self.state;
        x ^= x << 13;
        x ^= x >> 7;
        x ^= x << 17;
        self.state = x;
        x
    }

    /// Integer in `[-radius, radius]`.
    pub fn next_int(&mut self, radius: i64) -> Scalar {
        let span = (2 * radius + 1) as u64;
        int((self.next_u64() % span) as i64 - radius)
    }

    /// Small fraction with numerator in `[-radius, radius]` and denominator in `1..=3`.
    pub fn next_fraction(&mut self, radius: i64) -> Scalar {
        let n = self.next_int(radius);
        let d = (self.next_u64() % 3) as i64 + 1;
        n / int(d)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn text_is_lowest_terms_with_denominator() {
        assert_eq!(to_text(&ratio(6, 4)), "3/2");
        assert_eq!(to_text(&int(-3)), "-3/1");
        assert_eq!(to_text(&zero()), "0/1");
    }

    #[test]
    fn parse_accepts_fractions_and_integers() {
        assert_eq!(parse("4/8").unwrap(), ratio(1, 2));
        assert_eq!(parse("-7").unwrap(), int(-7));
        assert!(parse("1/0").is_err());
        assert!(parse("1/-2").is_err());
        assert!(parse("x").is_err());
        assert!(parse("1.5").is_err());
    }

    #[test]
    fn stream_is_deterministic() {
        let a: Vec<_> = {
            let mut s = ScalarStream::new(7);
            (0..10).map(|_| s.next_fraction(3)).collect()
        };
        let b: Vec<_> = {
            let mut s = ScalarStream::new(7);
            (0..10).map(|_| s.next_fraction(3)).collect()
        };
        assert_eq!(a, b);
        assert!(a.iter().any(|x| !x.is_zero()));
    }
}
