//! Exact polynomial, rational-function and truncated power-series arithmetic
//! over arbitrary-precision integers, plus infinite-product factorization.
//!
//! Everything is expressed in the single variable `t` (`t = q^2` for the
//! length-graded series of a Weyl group).

mod poly;
mod product;
mod ratfunc;
mod series;

pub use poly::{bracket, poly_lcm, to_q_string, IntPoly};
pub use product::{compose_to, product_compose, product_decompose, ProductForm};
pub use ratfunc::{ratfunc_arith, reverse_variable, RatFunc, RatOp};
pub use series::{expand, Series};

use thiserror::Error;

/// Default truncation order for series work.
pub const DEFAULT_ORDER: usize = 40;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum PolyError {
    #[error("division by the zero polynomial")]
    DivisionByZero,
    #[error("division by the zero rational function")]
    ZeroRatFunc,
    #[error("polynomial division is not exact over the integers")]
    InexactDivision,
    #[error("denominator vanishes at t = 0 (series pole)")]
    PoleAtZero,
    #[error("denominator constant term {0} is not a unit; no integer series expansion")]
    NonUnitDenominator(String),
    #[error("bracket [0] is undefined")]
    ZeroBracket,
    #[error("zero polynomial has no lcm")]
    ZeroInput,
    #[error("series constant term must be 1, found {0}")]
    ConstantTermNotOne(String),
    #[error("series constant term must be a unit to invert, found {0}")]
    NotInvertible(String),
    #[error("non-integral product exponent at k = {0}")]
    NonIntegralExponent(usize),
}

/// Serde helper for lists of big integers: plain JSON integers when they fit
/// in 128 bits, decimal strings otherwise. Both forms are accepted on input.
pub(crate) mod int_list {
    use num_bigint::BigInt;
    use num_traits::ToPrimitive;
    use serde::de::{self, Deserializer, SeqAccess, Visitor};
    use serde::ser::{SerializeSeq, Serializer};
    use std::fmt;
    use std::str::FromStr;

    /// Serialize one big integer with the same convention.
    pub(crate) struct Single<'a>(pub &'a BigInt);

    impl serde::Serialize for Single<'_> {
        fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
            if let Some(v) = self.0.to_i64() {
                s.serialize_i64(v)
            } else if let Some(v) = self.0.to_i128() {
                s.serialize_i128(v)
            } else {
                s.serialize_str(&self.0.to_string())
            }
        }
    }

    pub fn serialize<S: Serializer>(v: &[BigInt], s: S) -> Result<S::Ok, S::Error> {
        let mut seq = s.serialize_seq(Some(v.len()))?;
        for x in v {
            seq.serialize_element(&Single(x))?;
        }
        seq.end()
    }

    pub(crate) struct OneBig(pub BigInt);

    impl<'de> serde::Deserialize<'de> for OneBig {
        fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
            struct V;
            impl Visitor<'_> for V {
                type Value = OneBig;
                fn expecting(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
                    write!(f, "an integer or a decimal string")
                }
                fn visit_i64<E: de::Error>(self, v: i64) -> Result<OneBig, E> {
                    Ok(OneBig(v.into()))
                }
                fn visit_u64<E: de::Error>(self, v: u64) -> Result<OneBig, E> {
                    Ok(OneBig(v.into()))
                }
                fn visit_i128<E: de::Error>(self, v: i128) -> Result<OneBig, E> {
                    Ok(OneBig(v.into()))
                }
                fn visit_u128<E: de::Error>(self, v: u128) -> Result<OneBig, E> {
                    Ok(OneBig(v.into()))
                }
                fn visit_str<E: de::Error>(self, v: &str) -> Result<OneBig, E> {
                    BigInt::from_str(v.trim()).map(OneBig).map_err(E::custom)
                }
            }
            d.deserialize_any(V)
        }
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Vec<BigInt>, D::Error> {
        struct V;
        impl<'de> Visitor<'de> for V {
            type Value = Vec<BigInt>;
            fn expecting(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
                write!(f, "a list of integers")
            }
            fn visit_seq<A: SeqAccess<'de>>(self, mut seq: A) -> Result<Vec<BigInt>, A::Error> {
                let mut out = Vec::new();
                while let Some(OneBig(x)) = seq.next_element()? {
                    out.push(x);
                }
                Ok(out)
            }
        }
        d.deserialize_seq(V)
    }
}

/// Serializes `BTreeMap<usize, BigInt>` as an object keyed by decimal strings.
pub(crate) mod int_map {
    use std::collections::BTreeMap;

    use num_bigint::BigInt;
    use serde::ser::{SerializeMap, Serializer};

    use super::int_list::Single;

    pub fn serialize<S: Serializer>(m: &BTreeMap<usize, BigInt>, s: S) -> Result<S::Ok, S::Error> {
        let mut map = s.serialize_map(Some(m.len()))?;
        for (k, v) in m {
            map.serialize_entry(&k.to_string(), &Single(v))?;
        }
        map.end()
    }
}
