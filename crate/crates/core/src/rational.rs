//! Exact rationals and their `"p/q"` string encoding.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};

pub type Q = BigRational;

pub fn q(v: i64) -> Q {
    Q::from_integer(BigInt::from(v))
}

pub fn q_frac(num: i64, den: i64) -> Q {
    Q::new(BigInt::from(num), BigInt::from(den))
}

/// Parses `"p"`, `"-p"` or `"p/q"`.
pub fn parse_q(s: &str) -> Result<Q> {
    let s = s.trim();
    let bad = || Error::Parse(format!("not a rational: {s:?}"));
    match s.split_once('/') {
        Some((p, d)) => {
            let p: BigInt = p.trim().parse().map_err(|_| bad())?;
            let d: BigInt = d.trim().parse().map_err(|_| bad())?;
            if d.is_zero() {
                return Err(bad());
            }
            Ok(Q::new(p, d))
        }
        None => Ok(Q::from_integer(s.parse().map_err(|_| bad())?)),
    }
}

pub fn format_q(v: &Q) -> String {
    if v.is_integer() {
        v.numer().to_string()
    } else {
        format!("{}/{}", v.numer(), v.denom())
    }
}

pub fn is_integral(v: &Q) -> bool {
    v.is_integer()
}

pub fn to_i64(v: &Q) -> Option<i64> {
    if v.is_integer() {
        v.numer().to_i64()
    } else {
        None
    }
}

pub fn floor_i64(v: &Q) -> Option<i64> {
    v.floor().numer().to_i64()
}

pub fn ceil_i64(v: &Q) -> Option<i64> {
    v.ceil().numer().to_i64()
}

/// Smallest positive integer `m` with `m * v` integral for every entry.
pub fn common_denominator<'a>(vals: impl IntoIterator<Item = &'a Q>) -> BigInt {
    vals.into_iter().fold(BigInt::one(), |acc, v| {
        num_integer::Integer::lcm(&acc, v.denom())
    })
}

pub fn abs(v: &Q) -> Q {
    v.abs()
}

/// serde adapter: a single rational as a `"p/q"` string.
pub mod serde_q {
    use super::{format_q, parse_q, Q};
    use serde::{Deserialize, Deserializer, Serializer};

    pub fn serialize<S: Serializer>(v: &Q, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(&format_q(v))
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Q, D::Error> {
        let raw = RawRational::deserialize(d)?;
        raw.into_q().map_err(serde::de::Error::custom)
    }

    /// Accepts `"p/q"` strings and plain JSON integers.
    #[derive(Deserialize)]
    #[serde(untagged)]
    pub(crate) enum RawRational {
        Str(String),
        Int(i64),
    }

    impl RawRational {
        pub(crate) fn into_q(self) -> crate::error::Result<Q> {
            match self {
                RawRational::Str(s) => parse_q(&s),
                RawRational::Int(i) => Ok(super::q(i)),
            }
        }
    }
}

/// serde adapter: a vector of rationals as an array of `"p/q"` strings.
pub mod serde_q_vec {
    use super::serde_q::RawRational;
    use super::{format_q, Q};
    use serde::ser::SerializeSeq;
    use serde::{Deserialize, Deserializer, Serializer};

    pub fn serialize<S: Serializer>(v: &[Q], s: S) -> Result<S::Ok, S::Error> {
        let mut seq = s.serialize_seq(Some(v.len()))?;
        for x in v {
            seq.serialize_element(&format_q(x))?;
        }
        seq.end()
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Vec<Q>, D::Error> {
        let raw = Vec::<RawRational>::deserialize(d)?;
        raw.into_iter()
            .map(|r| r.into_q().map_err(serde::de::Error::custom))
            .collect()
    }
}

/// serde adapter: a list of rational vectors.
pub mod serde_q_vecs {
    use super::serde_q::RawRational;
    use super::{format_q, Q};
    use serde::{Deserialize, Deserializer, Serialize, Serializer};

    pub fn serialize<S: Serializer>(v: &[Vec<Q>], s: S) -> Result<S::Ok, S::Error> {
        let strs: Vec<Vec<String>> = v.iter().map(|r| r.iter().map(format_q).collect()).collect();
        strs.serialize(s)
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Vec<Vec<Q>>, D::Error> {
        let raw = Vec::<Vec<RawRational>>::deserialize(d)?;
        raw.into_iter()
            .map(|row| {
                row.into_iter()
                    .map(|r| r.into_q().map_err(serde::de::Error::custom))
                    .collect()
            })
            .collect()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parse_and_format() {
        assert_eq!(parse_q("3/6").unwrap(), q_frac(1, 2));
        assert_eq!(parse_q("-4").unwrap(), q(-4));
        assert_eq!(format_q(&q_frac(-6, 4)), "-3/2");
        assert_eq!(format_q(&q(7)), "7");
        assert!(parse_q("1/0").is_err());
        assert!(parse_q("x").is_err());
    }

    #[test]
    fn floors() {
        assert_eq!(floor_i64(&q_frac(-3, 2)), Some(-2));
        assert_eq!(ceil_i64(&q_frac(-3, 2)), Some(-1));
        assert_eq!(common_denominator(&[q_frac(1, 4), q_frac(1, 6)]), BigInt::from(12));
    }
}
