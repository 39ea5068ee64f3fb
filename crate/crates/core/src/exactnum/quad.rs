use std::cmp::Ordering;
use std::fmt;
use std::ops::{Add, Div, Mul, Neg, Sub};

use num_bigint::{BigInt, Sign};
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};

use super::radical::square_free_split;
use super::rational::parse_rational;
use super::{NumError, Rational};

/// The number `a + b·√r` with rational `a`, `b` and square-free integer `r`.
///
/// Values are kept canonical: `r` is square-free, and `b = 0` exactly when
/// `r = 0`. Two values can be combined when they share `r` or when one of
/// them is rational.
///
/// The arithmetic operators panic on incompatible discriminants; the
/// `checked_*` methods report it as an error instead.
#[derive(Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(try_from = "QuadRepr", into = "QuadRepr")]
pub struct QuadExt {
    a: Rational,
    b: Rational,
    r: BigInt,
}

impl QuadExt {
    /// Builds `a + b·√r` in canonical form.
    pub fn new(a: Rational, b: Rational, r: Rational) -> Result<Self, NumError> {
        if r.is_negative() {
            return Err(NumError::NegativeRadicand(r.to_string()));
        }
        if r.is_zero() || b.is_zero() {
            return Ok(Self::from_rational(a));
        }
        // √(p/q) = √(pq)/q, and pq = k²m with m square-free.
        let pq = r.numer() * r.denom();
        let (k, m) = square_free_split(pq.magnitude());
        let coeff = b * Rational::new(BigInt::from(k), r.denom().clone());
        if m == num_bigint::BigUint::one() {
            return Ok(Self::from_rational(a + coeff));
        }
        Ok(Self { a, b: coeff, r: BigInt::from(m) })
    }

    pub fn from_rational(a: Rational) -> Self {
        Self { a, b: Rational::zero(), r: BigInt::zero() }
    }

    pub fn int(n: i64) -> Self {
        Self::from_rational(Rational::from_integer(n.into()))
    }

    /// The rational `p/q`.
    ///
    /// # Panics
    /// Panics if `q == 0`.
    pub fn ratio(p: i64, q: i64) -> Self {
        Self::from_rational(super::rat(p, q))
    }

    pub fn zero() -> Self {
        Self::int(0)
    }

    pub fn one() -> Self {
        Self::int(1)
    }

    /// `√x` for a non-negative rational `x`.
    pub fn sqrt_rational(x: &Rational) -> Result<Self, NumError> {
        Self::new(Rational::zero(), Rational::one(), x.clone())
    }

    pub fn a(&self) -> &Rational {
        &self.a
    }

    pub fn b(&self) -> &Rational {
        &self.b
    }

    /// The square-free discriminant, `0` for rationals.
    pub fn r(&self) -> &BigInt {
        &self.r
    }

    pub fn is_rational(&self) -> bool {
        self.b.is_zero()
    }

    pub fn as_rational(&self) -> Option<&Rational> {
        self.is_rational().then_some(&self.a)
    }

    pub fn is_zero(&self) -> bool {
        self.a.is_zero() && self.b.is_zero()
    }

    /// True when `self` and `other` live in a common field.
    pub fn compatible(&self, other: &Self) -> bool {
        self.is_rational() || other.is_rational() || self.r == other.r
    }

    /// The discriminant shared by `self` and `other`.
    pub fn common_r(&self, other: &Self) -> Result<BigInt, NumError> {
        if self.is_rational() {
            Ok(other.r.clone())
        } else if other.is_rational() || self.r == other.r {
            Ok(self.r.clone())
        } else {
            Err(NumError::IncompatibleDiscriminants { left: self.r.clone(), right: other.r.clone() })
        }
    }

    fn build(a: Rational, b: Rational, r: BigInt) -> Self {
        if b.is_zero() {
            Self::from_rational(a)
        } else {
            Self { a, b, r }
        }
    }

    pub fn checked_add(&self, other: &Self) -> Result<Self, NumError> {
        let r = self.common_r(other)?;
        Ok(Self::build(&self.a + &other.a, &self.b + &other.b, r))
    }

    pub fn checked_sub(&self, other: &Self) -> Result<Self, NumError> {
        let r = self.common_r(other)?;
        Ok(Self::build(&self.a - &other.a, &self.b - &other.b, r))
    }

    pub fn checked_mul(&self, other: &Self) -> Result<Self, NumError> {
        let r = self.common_r(other)?;
        let rr = Rational::from_integer(r.clone());
        let a = &self.a * &other.a + &self.b * &other.b * rr;
        let b = &self.a * &other.b + &self.b * &other.a;
        Ok(Self::build(a, b, r))
    }

    pub fn checked_div(&self, other: &Self) -> Result<Self, NumError> {
        self.common_r(other)?;
        self.checked_mul(&other.recip()?)
    }

    /// `1/x`, rationalized through the conjugate.
    pub fn recip(&self) -> Result<Self, NumError> {
        if self.is_zero() {
            return Err(NumError::DivisionByZero);
        }
        let norm = self.norm();
        Ok(Self::build(&self.a / &norm, -&self.b / &norm, self.r.clone()))
    }

    /// `a - b·√r`.
    pub fn conj(&self) -> Self {
        Self::build(self.a.clone(), -&self.b, self.r.clone())
    }

    /// `a² - b²r`, the field norm.
    pub fn norm(&self) -> Rational {
        &self.a * &self.a - &self.b * &self.b * Rational::from_integer(self.r.clone())
    }

    /// Exact sign as `-1`, `0` or `1`.
    pub fn signum(&self) -> i32 {
        let sa = sign_of(&self.a);
        let sb = sign_of(&self.b);
        if sb == 0 {
            return sa;
        }
        if sa == 0 || sa == sb {
            return sb;
        }
        // Opposite signs: the larger of a² and b²r wins.
        match (&self.a * &self.a).cmp(&(&self.b * &self.b * Rational::from_integer(self.r.clone()))) {
            Ordering::Greater => sa,
            Ordering::Less => sb,
            Ordering::Equal => 0,
        }
    }

    pub fn is_positive(&self) -> bool {
        self.signum() > 0
    }

    pub fn is_negative(&self) -> bool {
        self.signum() < 0
    }

    pub fn abs(&self) -> Self {
        if self.is_negative() {
            -self
        } else {
            self.clone()
        }
    }

    pub fn checked_cmp(&self, other: &Self) -> Result<Ordering, NumError> {
        Ok(self.checked_sub(other)?.signum().cmp(&0))
    }

    /// The larger of two compatible values.
    ///
    /// # Panics
    /// Panics on incompatible discriminants.
    pub fn max(self, other: Self) -> Self {
        if other > self {
            other
        } else {
            self
        }
    }

    /// The smaller of two compatible values.
    ///
    /// # Panics
    /// Panics on incompatible discriminants.
    pub fn min(self, other: Self) -> Self {
        if other < self {
            other
        } else {
            self
        }
    }

    /// Square root, when it exists in a quadratic field.
    ///
    /// Rationals always have one (possibly opening a new field). For
    /// irrational `x = a + b√r` a root `c + d√r` exists iff `a² - b²r` is a
    /// rational square and `(a ± √(a² - b²r))/2` is one as well.
    pub fn sqrt(&self) -> Result<Self, NumError> {
        if self.is_negative() {
            return Err(NumError::NegativeRadicand(self.to_string()));
        }
        if self.is_rational() {
            return Self::sqrt_rational(&self.a);
        }
        let not_repr = || NumError::NotRepresentable(self.to_string());
        let k = rational_sqrt(&self.norm()).ok_or_else(not_repr)?;
        let two = Rational::from_integer(2.into());
        for c2 in [(&self.a + &k) / &two, (&self.a - &k) / &two] {
            if let Some(c) = rational_sqrt(&c2) {
                if c.is_zero() {
                    continue;
                }
                let d = &self.b / (&two * &c);
                let root = Self::build(c, d, self.r.clone());
                return Ok(if root.is_negative() { -root } else { root });
            }
        }
        Err(not_repr())
    }

    /// Nearest `f64`, computed without catastrophic cancellation.
    pub fn to_f64(&self) -> f64 {
        let a = self.a.to_f64().unwrap_or(f64::NAN);
        if self.is_rational() {
            return a;
        }
        let s = self.b.to_f64().unwrap_or(f64::NAN) * self.r.to_f64().unwrap_or(f64::NAN).sqrt();
        if (a >= 0.0) == (s >= 0.0) || a == 0.0 {
            a + s
        } else {
            // a + s = (a² - b²r)/(a - s), with the numerator exact.
            self.norm().to_f64().unwrap_or(f64::NAN) / (a - s)
        }
    }
}

fn sign_of(x: &Rational) -> i32 {
    if x.is_positive() {
        1
    } else if x.is_negative() {
        -1
    } else {
        0
    }
}

fn rational_sqrt(x: &Rational) -> Option<Rational> {
    if x.is_negative() {
        return None;
    }
    let n = x.numer().sqrt();
    let d = x.denom().sqrt();
    (&n * &n == *x.numer() && &d * &d == *x.denom()).then(|| Rational::new(n, d))
}

impl PartialOrd for QuadExt {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        self.checked_cmp(other).ok()
    }
}

impl From<i64> for QuadExt {
    fn from(n: i64) -> Self {
        Self::int(n)
    }
}

impl From<Rational> for QuadExt {
    fn from(a: Rational) -> Self {
        Self::from_rational(a)
    }
}

impl From<BigInt> for QuadExt {
    fn from(n: BigInt) -> Self {
        Self::from_rational(Rational::from_integer(n))
    }
}

impl Neg for QuadExt {
    type Output = QuadExt;
    fn neg(self) -> QuadExt {
        QuadExt { a: -self.a, b: -self.b, r: self.r }
    }
}

impl Neg for &QuadExt {
    type Output = QuadExt;
    fn neg(self) -> QuadExt {
        -self.clone()
    }
}

macro_rules! forward_binop {
    ($trait:ident, $method:ident, $checked:ident) => {
        impl $trait<&QuadExt> for &QuadExt {
            type Output = QuadExt;
            fn $method(self, rhs: &QuadExt) -> QuadExt {
                match self.$checked(rhs) {
                    Ok(v) => v,
                    Err(e) => panic!("{} {} {}: {}", self, stringify!($method), rhs, e),
                }
            }
        }
        impl $trait<QuadExt> for QuadExt {
            type Output = QuadExt;
            fn $method(self, rhs: QuadExt) -> QuadExt {
                (&self).$method(&rhs)
            }
        }
        impl $trait<&QuadExt> for QuadExt {
            type Output = QuadExt;
            fn $method(self, rhs: &QuadExt) -> QuadExt {
                (&self).$method(rhs)
            }
        }
        impl $trait<QuadExt> for &QuadExt {
            type Output = QuadExt;
            fn $method(self, rhs: QuadExt) -> QuadExt {
                self.$method(&rhs)
            }
        }
        impl $trait<i64> for &QuadExt {
            type Output = QuadExt;
            fn $method(self, rhs: i64) -> QuadExt {
                self.$method(&QuadExt::int(rhs))
            }
        }
        impl $trait<i64> for QuadExt {
            type Output = QuadExt;
            fn $method(self, rhs: i64) -> QuadExt {
                (&self).$method(&QuadExt::int(rhs))
            }
        }
    };
}

forward_binop!(Add, add, checked_add);
forward_binop!(Sub, sub, checked_sub);
forward_binop!(Mul, mul, checked_mul);
forward_binop!(Div, div, checked_div);

impl std::iter::Sum for QuadExt {
    fn sum<I: Iterator<Item = QuadExt>>(iter: I) -> QuadExt {
        iter.fold(QuadExt::zero(), |acc, x| acc + x)
    }
}

impl<'a> std::iter::Sum<&'a QuadExt> for QuadExt {
    fn sum<I: Iterator<Item = &'a QuadExt>>(iter: I) -> QuadExt {
        iter.fold(QuadExt::zero(), |acc, x| acc + x)
    }
}

/// Formats as a single fraction over a common denominator, e.g.
/// `(3*sqrt(21)-8)/5`.
impl fmt::Display for QuadExt {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_rational() {
            return write!(f, "{}", self.a);
        }
        let den = self.a.denom().lcm(self.b.denom());
        let big_a = (&self.a * Rational::from_integer(den.clone())).to_integer();
        let big_b = (&self.b * Rational::from_integer(den.clone())).to_integer();
        let mut body = if big_b.is_one() {
            format!("sqrt({})", self.r)
        } else if big_b == -BigInt::one() {
            format!("-sqrt({})", self.r)
        } else {
            format!("{}*sqrt({})", big_b, self.r)
        };
        match big_a.sign() {
            Sign::Plus => body.push_str(&format!("+{big_a}")),
            Sign::Minus => body.push_str(&format!("{big_a}")),
            Sign::NoSign => {}
        }
        if den.is_one() {
            write!(f, "{body}")
        } else {
            write!(f, "({body})/{den}")
        }
    }
}

impl fmt::Debug for QuadExt {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

#[derive(Serialize, Deserialize)]
struct QuadRepr {
    a: String,
    b: String,
    r: String,
}

impl From<QuadExt> for QuadRepr {
    fn from(x: QuadExt) -> Self {
        QuadRepr { a: x.a.to_string(), b: x.b.to_string(), r: x.r.to_string() }
    }
}

impl TryFrom<QuadRepr> for QuadExt {
    type Error = NumError;
    fn try_from(repr: QuadRepr) -> Result<Self, NumError> {
        QuadExt::new(parse_rational(&repr.a)?, parse_rational(&repr.b)?, parse_rational(&repr.r)?)
    }
}

#[cfg(test)]
mod tests {
    use super::super::rat;
    use super::*;

    fn q(a: (i64, i64), b: (i64, i64), r: i64) -> QuadExt {
        QuadExt::new(rat(a.0, a.1), rat(b.0, b.1), rat(r, 1)).unwrap()
    }

    #[test]
    fn normalization() {
        let x = q((1, 1), (2, 1), 4);
        assert_eq!(x, QuadExt::int(5));
        assert!(x.r().is_zero());
        let y = q((0, 1), (1, 1), 8);
        assert_eq!((y.a().clone(), y.b().clone(), y.r().clone()), (rat(0, 1), rat(2, 1), BigInt::from(2)));
        let mu0 = q((-7, 4), (1, 4), 21);
        assert_eq!(mu0.b(), &rat(1, 4));
        assert_eq!(mu0.r(), &BigInt::from(21));
        // √(21/4) = √21/2
        let z = QuadExt::new(rat(0, 1), rat(1, 1), rat(21, 4)).unwrap();
        assert_eq!(z, q((0, 1), (1, 2), 21));
        assert!(QuadExt::new(rat(0, 1), rat(1, 1), rat(-1, 1)).is_err());
    }

    #[test]
    fn arithmetic() {
        let a = q((1, 1), (1, 1), 2);
        let b = q((3, 1), (-1, 1), 2);
        assert_eq!(&a + &b, QuadExt::int(4));
        assert_eq!(&a * &q((1, 1), (-1, 1), 2), QuadExt::int(-1));
        let inv = QuadExt::one().checked_div(&a).unwrap();
        assert_eq!(inv, q((-1, 1), (1, 1), 2));
        assert_eq!(&inv * &a, QuadExt::one());
        assert_eq!(QuadExt::one().checked_div(&QuadExt::zero()), Err(NumError::DivisionByZero));
        let c = q((0, 1), (1, 1), 3);
        assert!(matches!(a.checked_add(&c), Err(NumError::IncompatibleDiscriminants { .. })));
        assert_eq!(a.checked_add(&QuadExt::ratio(1, 2)).unwrap(), q((3, 2), (1, 1), 2));
    }

    #[test]
    fn signs() {
        assert_eq!(QuadExt::zero().signum(), 0);
        assert_eq!(q((-7, 4), (1, 4), 21).signum(), -1);
        assert_eq!(q((-8, 5), (3, 5), 21).signum(), 1);
        assert_eq!(q((3, 1), (-1, 1), 9).signum(), 0);
        assert!(q((-7, 4), (1, 4), 21) < QuadExt::ratio(-1, 2));
    }

    #[test]
    fn display() {
        assert_eq!(q((-8, 5), (3, 5), 21).to_string(), "(3*sqrt(21)-8)/5");
        assert_eq!(q((-7, 4), (1, 4), 21).to_string(), "(sqrt(21)-7)/4");
        assert_eq!(q((0, 1), (-1, 1), 2).to_string(), "-sqrt(2)");
        assert_eq!(q((1, 2), (1, 3), 5).to_string(), "(2*sqrt(5)+3)/6");
        assert_eq!(QuadExt::ratio(-3, 4).to_string(), "-3/4");
    }

    #[test]
    fn square_roots() {
        assert_eq!(QuadExt::ratio(9, 4).sqrt().unwrap(), QuadExt::ratio(3, 2));
        // (1+√2)² = 3+2√2
        assert_eq!(q((3, 1), (2, 1), 2).sqrt().unwrap(), q((1, 1), (1, 1), 2));
        // (1-√2)² = 3-2√2 has positive root √2-1
        assert_eq!(q((3, 1), (-2, 1), 2).sqrt().unwrap(), q((-1, 1), (1, 1), 2));
        assert!(q((1, 1), (1, 1), 2).sqrt().is_err());
        assert!(QuadExt::int(-1).sqrt().is_err());
    }

    #[test]
    fn float_conversion_avoids_cancellation() {
        // 1e8 + 1 - √(1e16 + 2e8) is tiny; the naive sum loses it.
        let big = 100_000_000i64;
        let x = QuadExt::new(rat(big + 1, 1), rat(-1, 1), rat(big * big + 2 * big, 1)).unwrap();
        let v = x.to_f64();
        assert!(v > 0.0 && (v - 1.0 / (2.0 * (big as f64 + 1.0))).abs() < 1e-20, "{v}");
    }

    #[test]
    fn serde_round_trip() {
        let x = q((-7, 4), (1, 4), 21);
        let s = serde_json::to_string(&x).unwrap();
        assert_eq!(s, r#"{"a":"-7/4","b":"1/4","r":"21"}"#);
        let back: QuadExt = serde_json::from_str(&s).unwrap();
        assert_eq!(back, x);
        let unnormalized: QuadExt = serde_json::from_str(r#"{"a":"0","b":"1","r":"8"}"#).unwrap();
        assert_eq!(unnormalized, q((0, 1), (2, 1), 2));
    }
}
