//! Serde glue for `BigInt`: values that fit in an `i64` are written as JSON
//! numbers, larger ones as decimal strings. Both forms are accepted on input.

use num_bigint::BigInt;
use num_traits::ToPrimitive;
use serde::de::{self, Visitor};
use serde::{Deserializer, Serializer};
use std::fmt;

pub fn serialize<S: Serializer>(v: &BigInt, s: S) -> Result<S::Ok, S::Error> {
    match v.to_i64() {
        Some(x) => s.serialize_i64(x),
        None => s.serialize_str(&v.to_string()),
    }
}

pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<BigInt, D::Error> {
    struct V;
    impl<'de> Visitor<'de> for V {
        type Value = BigInt;
        fn expecting(&self, f: &mut fmt::Formatter) -> fmt::Result {
            f.write_str("an integer or a decimal string")
        }
        fn visit_i64<E: de::Error>(self, v: i64) -> Result<BigInt, E> {
            Ok(v.into())
        }
        fn visit_u64<E: de::Error>(self, v: u64) -> Result<BigInt, E> {
            Ok(v.into())
        }
        fn visit_str<E: de::Error>(self, v: &str) -> Result<BigInt, E> {
            v.parse().map_err(E::custom)
        }
    }
    d.deserialize_any(V)
}

/// Same encoding for fixed-size arrays of `BigInt`.
pub mod arr2 {
    use super::*;
    use serde::ser::SerializeTuple;
    use serde::Deserialize;

    #[derive(serde::Serialize, Deserialize)]
    struct W(#[serde(with = "super")] BigInt);

    pub fn serialize<S: Serializer>(v: &[BigInt; 2], s: S) -> Result<S::Ok, S::Error> {
        let mut t = s.serialize_tuple(2)?;
        for x in v {
            t.serialize_element(&W(x.clone()))?;
        }
        t.end()
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<[BigInt; 2], D::Error> {
        let [W(a), W(b)] = <[W; 2]>::deserialize(d)?;
        Ok([a, b])
    }
}

/// A 2x2 array of `BigInt`, row-major.
pub mod arr22 {
    use super::*;
    use serde::{Deserialize, Serialize};

    #[derive(Serialize, Deserialize)]
    struct Row(#[serde(with = "super::arr2")] [BigInt; 2]);

    pub fn serialize<S: Serializer>(v: &[[BigInt; 2]; 2], s: S) -> Result<S::Ok, S::Error> {
        [Row(v[0].clone()), Row(v[1].clone())].serialize(s)
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<[[BigInt; 2]; 2], D::Error> {
        let [Row(a), Row(b)] = <[Row; 2]>::deserialize(d)?;
        Ok([a, b])
    }
}
