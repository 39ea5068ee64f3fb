use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::Zero;

use super::NumError;

/// Arbitrary precision rational number, always stored in lowest terms with a
/// positive denominator.
pub type Rational = BigRational;

/// Shorthand for the rational `p/q`.
///
/// # Panics
/// Panics if `q == 0`.
pub fn rat(p: i64, q: i64) -> Rational {
    Rational::new(BigInt::from(p), BigInt::from(q))
}

/// Parses `"p"`, `"p/q"` or a plain decimal such as `"-0.125"` or `"1e-3"`
/// into an exact rational.
pub fn parse_rational(text: &str) -> Result<Rational, NumError> {
    let s = text.trim();
    let err = || NumError::Parse(text.to_string());
    if s.is_empty() {
        return Err(err());
    }
    if let Some((p, q)) = s.split_once('/') {
        let p: BigInt = p.trim().parse().map_err(|_| err())?;
        let q: BigInt = q.trim().parse().map_err(|_| err())?;
        if q.is_zero() {
            return Err(NumError::DivisionByZero);
        }
        return Ok(Rational::new(p, q));
    }
    let (mantissa, exponent) = match s.find(['e', 'E']) {
        Some(i) => {
            let e: i32 = s[i + 1..].parse().map_err(|_| err())?;
            (&s[..i], e)
        }
        None => (s, 0),
    };
    let (negative, digits) = match mantissa.strip_prefix('-') {
        Some(rest) => (true, rest),
        None => (false, mantissa.strip_prefix('+').unwrap_or(mantissa)),
    };
    let (int_part, frac_part) = digits.split_once('.').unwrap_or((digits, ""));
    if int_part.is_empty() && frac_part.is_empty() {
        return Err(err());
    }
    if !int_part.chars().chain(frac_part.chars()).all(|c| c.is_ascii_digit()) {
        return Err(err());
    }
    let joined = format!("{int_part}{frac_part}");
    let numer: BigInt = if joined.is_empty() { BigInt::zero() } else { joined.parse().map_err(|_| err())? };
    let scale = exponent - frac_part.len() as i32;
    let ten = BigInt::from(10u32);
    let mut value = Rational::from_integer(numer);
    if scale >= 0 {
        value *= Rational::from_integer(num_traits::pow(ten, scale as usize));
    } else {
        value /= Rational::from_integer(num_traits::pow(ten, (-scale) as usize));
    }
    Ok(if negative { -value } else { value })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_fractions_and_decimals() {
        assert_eq!(parse_rational("1/2").unwrap(), rat(1, 2));
        assert_eq!(parse_rational("-6/8").unwrap(), rat(-3, 4));
        assert_eq!(parse_rational("7").unwrap(), rat(7, 1));
        assert_eq!(parse_rational("-0.125").unwrap(), rat(-1, 8));
        assert_eq!(parse_rational("1e-3").unwrap(), rat(1, 1000));
        assert_eq!(parse_rational(".5").unwrap(), rat(1, 2));
        assert_eq!(parse_rational("2.5E1").unwrap(), rat(25, 1));
    }

    #[test]
    fn rejects_garbage() {
        for bad in ["", "abc", "1/0", "1/2/3", "--1", "1.2.3", "."] {
            assert!(parse_rational(bad).is_err(), "{bad}");
        }
    }
}
