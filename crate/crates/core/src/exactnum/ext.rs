use std::cmp::Ordering;
use std::fmt;

use serde::{Deserialize, Deserializer, Serialize, Serializer};

use super::{NumError, QuadExt};

/// A [`QuadExt`] or one of the two infinities.
///
/// `x/0` is `+∞` for `x > 0` and `-∞` for `x < 0`. The forms `∞ - ∞`,
/// `0·∞`, `∞/∞` and `0/0` are errors.
#[derive(Clone, PartialEq, Eq, Hash)]
pub enum ExtReal {
    Finite(QuadExt),
    PosInfinity,
    NegInfinity,
}

use ExtReal::{Finite, NegInfinity, PosInfinity};

impl ExtReal {
    pub fn int(n: i64) -> Self {
        Finite(QuadExt::int(n))
    }

    pub fn ratio(p: i64, q: i64) -> Self {
        Finite(QuadExt::ratio(p, q))
    }

    pub fn is_finite(&self) -> bool {
        matches!(self, Finite(_))
    }

    pub fn finite(&self) -> Option<&QuadExt> {
        match self {
            Finite(x) => Some(x),
            _ => None,
        }
    }

    /// The finite value, or `err` for an infinity.
    pub fn finite_or(&self, err: NumError) -> Result<&QuadExt, NumError> {
        self.finite().ok_or(err)
    }

    pub fn signum(&self) -> i32 {
        match self {
            Finite(x) => x.signum(),
            PosInfinity => 1,
            NegInfinity => -1,
        }
    }

    fn infinity(sign: i32) -> Self {
        if sign > 0 {
            PosInfinity
        } else {
            NegInfinity
        }
    }

    pub fn neg(&self) -> Self {
        match self {
            Finite(x) => Finite(-x),
            PosInfinity => NegInfinity,
            NegInfinity => PosInfinity,
        }
    }

    pub fn checked_add(&self, other: &Self) -> Result<Self, NumError> {
        match (self, other) {
            (Finite(x), Finite(y)) => Ok(Finite(x.checked_add(y)?)),
            (PosInfinity, NegInfinity) | (NegInfinity, PosInfinity) => Err(NumError::Indeterminate("inf - inf")),
            (Finite(_), inf) | (inf, _) => Ok(inf.clone()),
        }
    }

    pub fn checked_sub(&self, other: &Self) -> Result<Self, NumError> {
        self.checked_add(&other.neg())
    }

    pub fn checked_mul(&self, other: &Self) -> Result<Self, NumError> {
        match (self, other) {
            (Finite(x), Finite(y)) => Ok(Finite(x.checked_mul(y)?)),
            _ => match self.signum() * other.signum() {
                0 => Err(NumError::Indeterminate("0 * inf")),
                s => Ok(Self::infinity(s)),
            },
        }
    }

    pub fn checked_div(&self, other: &Self) -> Result<Self, NumError> {
        match (self, other) {
            (Finite(x), Finite(y)) if y.is_zero() => match x.signum() {
                0 => Err(NumError::Indeterminate("0 / 0")),
                s => Ok(Self::infinity(s)),
            },
            (Finite(x), Finite(y)) => Ok(Finite(x.checked_div(y)?)),
            (Finite(_), _) => Ok(Self::int(0)),
            (_, Finite(y)) => Ok(Self::infinity(self.signum() * if y.signum() < 0 { -1 } else { 1 })),
            _ => Err(NumError::Indeterminate("inf / inf")),
        }
    }

    /// `1/x`, with `1/0 = +∞` and `1/±∞ = 0`.
    pub fn recip(&self) -> Self {
        match self {
            Finite(x) if x.is_zero() => PosInfinity,
            Finite(x) => Finite(x.recip().expect("nonzero")),
            _ => Self::int(0),
        }
    }

    pub fn checked_cmp(&self, other: &Self) -> Result<Ordering, NumError> {
        match (self, other) {
            (Finite(x), Finite(y)) => x.checked_cmp(y),
            _ => {
                let rank = |v: &Self| match v {
                    NegInfinity => 0,
                    Finite(_) => 1,
                    PosInfinity => 2,
                };
                Ok(rank(self).cmp(&rank(other)))
            }
        }
    }

    pub fn to_f64(&self) -> f64 {
        match self {
            Finite(x) => x.to_f64(),
            PosInfinity => f64::INFINITY,
            NegInfinity => f64::NEG_INFINITY,
        }
    }
}

impl From<QuadExt> for ExtReal {
    fn from(x: QuadExt) -> Self {
        Finite(x)
    }
}

impl PartialOrd for ExtReal {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        self.checked_cmp(other).ok()
    }
}

impl fmt::Display for ExtReal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Finite(x) => write!(f, "{x}"),
            PosInfinity => write!(f, "inf"),
            NegInfinity => write!(f, "-inf"),
        }
    }
}

impl fmt::Debug for ExtReal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl Serialize for ExtReal {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        match self {
            Finite(x) => x.serialize(serializer),
            PosInfinity => serializer.serialize_str("inf"),
            NegInfinity => serializer.serialize_str("-inf"),
        }
    }
}

#[derive(Deserialize)]
#[serde(untagged)]
enum ExtRepr {
    Tag(String),
    Value(QuadExt),
}

impl<'de> Deserialize<'de> for ExtReal {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        match ExtRepr::deserialize(deserializer)? {
            ExtRepr::Value(x) => Ok(Finite(x)),
            ExtRepr::Tag(s) if s == "inf" => Ok(PosInfinity),
            ExtRepr::Tag(s) if s == "-inf" => Ok(NegInfinity),
            ExtRepr::Tag(s) => Err(serde::de::Error::custom(format!("expected \"inf\" or \"-inf\", got {s:?}"))),
        }
    }
}
