use std::cmp::Ordering;
use std::fmt;
use std::ops::{Add, Div, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::{Deserialize, Deserializer, Serialize, Serializer};

/// Arithmetic mode of a matrix and of every value derived from it.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Mode {
    Exact,
    Float,
}

impl fmt::Display for Mode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Mode::Exact => "exact",
            Mode::Float => "float",
        })
    }
}

impl std::str::FromStr for Mode {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s.trim().to_ascii_lowercase().as_str() {
            "exact" => Ok(Mode::Exact),
            "float" => Ok(Mode::Float),
            other => Err(format!("unknown mode `{other}` (expected exact|float)")),
        }
    }
}

/// A matrix entry or vector component: an exact rational or a binary float.
///
/// Operations between two exact values stay exact; as soon as a float is
/// involved the result is a float.
#[derive(Clone, Debug, PartialEq)]
pub enum Scalar {
    Exact(BigRational),
    Float(f64),
}

impl Scalar {
    pub fn zero(mode: Mode) -> Self {
        match mode {
            Mode::Exact => Scalar::Exact(BigRational::zero()),
            Mode::Float => Scalar::Float(0.0),
        }
    }

    pub fn one(mode: Mode) -> Self {
        Scalar::from_i64(mode, 1)
    }

    pub fn from_i64(mode: Mode, value: i64) -> Self {
        match mode {
            Mode::Exact => Scalar::Exact(BigRational::from_integer(BigInt::from(value))),
            Mode::Float => Scalar::Float(value as f64),
        }
    }

    /// `numer / denom`; panics on a zero denominator.
    pub fn ratio(mode: Mode, numer: i64, denom: i64) -> Self {
        assert!(denom != 0, "zero denominator");
        match mode {
            Mode::Exact => Scalar::Exact(BigRational::new(numer.into(), denom.into())),
            Mode::Float => Scalar::Float(numer as f64 / denom as f64),
        }
    }

    pub fn mode(&self) -> Mode {
        match self {
            Scalar::Exact(_) => Mode::Exact,
            Scalar::Float(_) => Mode::Float,
        }
    }

    pub fn to_f64(&self) -> f64 {
        match self {
            Scalar::Exact(r) => rational_to_f64(r),
            Scalar::Float(v) => *v,
        }
    }

    /// Converts to the requested mode. Floats become the exact rational value
    /// of their binary representation.
    pub fn to_mode(&self, mode: Mode) -> Scalar {
        match (self, mode) {
            (Scalar::Exact(_), Mode::Exact) | (Scalar::Float(_), Mode::Float) => self.clone(),
            (Scalar::Exact(r), Mode::Float) => Scalar::Float(rational_to_f64(r)),
            (Scalar::Float(v), Mode::Exact) => {
                Scalar::Exact(BigRational::from_float(*v).expect("float scalars are always finite"))
            }
        }
    }

    pub fn as_exact(&self) -> Option<&BigRational> {
        match self {
            Scalar::Exact(r) => Some(r),
            Scalar::Float(_) => None,
        }
    }

    pub fn abs(&self) -> Scalar {
        match self {
            Scalar::Exact(r) => Scalar::Exact(r.abs()),
            Scalar::Float(v) => Scalar::Float(v.abs()),
        }
    }

    /// Exactly zero (no tolerance).
    pub fn is_exact_zero(&self) -> bool {
        match self {
            Scalar::Exact(r) => r.is_zero(),
            Scalar::Float(v) => *v == 0.0,
        }
    }

    /// Zero test: exact equality in exact mode, `|v| <= eps` for floats.
    pub fn is_zero_within(&self, eps: f64) -> bool {
        match self {
            Scalar::Exact(r) => r.is_zero(),
            Scalar::Float(v) => v.abs() <= eps,
        }
    }

    /// Strict positivity: `> 0` in exact mode, `> eps` for floats.
    pub fn is_positive_within(&self, eps: f64) -> bool {
        match self {
            Scalar::Exact(r) => r.is_positive(),
            Scalar::Float(v) => *v > eps,
        }
    }

    /// Strict negativity: `< 0` in exact mode, `< -eps` for floats.
    pub fn is_negative_within(&self, eps: f64) -> bool {
        match self {
            Scalar::Exact(r) => r.is_negative(),
            Scalar::Float(v) => *v < -eps,
        }
    }

    /// Text form used in JSON documents: `"num/den"` for exact values.
    pub fn to_ratio_string(&self) -> Option<String> {
        self.as_exact()
            .map(|r| format!("{}/{}", r.numer(), r.denom()))
    }

    /// Parses `"num/den"` or a plain integer into an exact scalar.
    pub fn parse_ratio(text: &str) -> Option<Scalar> {
        let text = text.trim();
        let (numer, denom) = match text.split_once('/') {
            Some((n, d)) => (
                n.trim().parse::<BigInt>().ok()?,
                d.trim().parse::<BigInt>().ok()?,
            ),
            None => (text.parse::<BigInt>().ok()?, BigInt::one()),
        };
        (!denom.is_zero()).then(|| Scalar::Exact(BigRational::new(numer, denom)))
    }
}

fn rational_to_f64(r: &BigRational) -> f64 {
    r.to_f64().unwrap_or_else(|| {
        // Numerator or denominator overflows f64; fall back on a scaled quotient.
        let n = r.numer().to_f64().unwrap_or(f64::INFINITY);
        let d = r.denom().to_f64().unwrap_or(f64::INFINITY);
        n / d
    })
}

impl From<BigRational> for Scalar {
    fn from(r: BigRational) -> Self {
        Scalar::Exact(r)
    }
}

impl From<f64> for Scalar {
    fn from(v: f64) -> Self {
        Scalar::Float(v)
    }
}

impl PartialOrd for Scalar {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        match (self, other) {
            (Scalar::Exact(a), Scalar::Exact(b)) => Some(a.cmp(b)),
            _ => self.to_f64().partial_cmp(&other.to_f64()),
        }
    }
}

impl fmt::Display for Scalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Scalar::Exact(r) => write!(f, "{r}"),
            Scalar::Float(v) => write!(f, "{v}"),
        }
    }
}

impl Serialize for Scalar {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        match self {
            Scalar::Exact(r) => serializer.serialize_str(&format!("{}/{}", r.numer(), r.denom())),
            Scalar::Float(v) => serializer.serialize_f64(*v),
        }
    }
}

impl<'de> Deserialize<'de> for Scalar {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        #[derive(Deserialize)]
        #[serde(untagged)]
        enum Repr {
            Text(String),
            Number(f64),
        }
        match Repr::deserialize(deserializer)? {
            Repr::Text(s) => Scalar::parse_ratio(&s)
                .ok_or_else(|| serde::de::Error::custom(format!("invalid rational `{s}`"))),
            Repr::Number(v) if v.is_finite() => Ok(Scalar::Float(v)),
            Repr::Number(v) => Err(serde::de::Error::custom(format!("non-finite value {v}"))),
        }
    }
}

macro_rules! binary_op {
    ($trait:ident, $method:ident, $op:tt) => {
        impl $trait<&Scalar> for &Scalar {
            type Output = Scalar;

            fn $method(self, rhs: &Scalar) -> Scalar {
                match (self, rhs) {
                    (Scalar::Exact(a), Scalar::Exact(b)) => Scalar::Exact(a $op b),
                    _ => Scalar::Float(self.to_f64() $op rhs.to_f64()),
                }
            }
        }

        impl $trait<Scalar> for Scalar {
            type Output = Scalar;

            fn $method(self, rhs: Scalar) -> Scalar {
                (&self).$method(&rhs)
            }
        }

        impl $trait<&Scalar> for Scalar {
            type Output = Scalar;

            fn $method(self, rhs: &Scalar) -> Scalar {
                (&self).$method(rhs)
            }
        }
    };
}

binary_op!(Add, add, +);
binary_op!(Sub, sub, -);
binary_op!(Mul, mul, *);
binary_op!(Div, div, /);

impl Neg for Scalar {
    type Output = Scalar;

    fn neg(self) -> Scalar {
        match self {
            Scalar::Exact(r) => Scalar::Exact(-r),
            Scalar::Float(v) => Scalar::Float(-v),
        }
    }
}

impl Neg for &Scalar {
    type Output = Scalar;

    fn neg(self) -> Scalar {
        -self.clone()
    }
}

/// Sum of a sequence of scalars in the given mode.
pub fn sum<'a, I: IntoIterator<Item = &'a Scalar>>(mode: Mode, values: I) -> Scalar {
    values
        .into_iter()
        .fold(Scalar::zero(mode), |acc, v| acc + v)
}

/// `‖v‖₁`.
pub fn l1_norm(mode: Mode, v: &[Scalar]) -> Scalar {
    v.iter().fold(Scalar::zero(mode), |acc, x| acc + x.abs())
}
