//! Serde adapters: every scalar crosses the JSON boundary as a decimal
//! string ("p/q" or "p"), never as a float.

use num_bigint::BigInt;
use serde::{Deserialize, Deserializer, Serializer};

use crate::exact::{parse_rat, rat_to_string, BigRat};

pub mod rat_string {
    use super::*;

    pub fn serialize<S: Serializer>(x: &BigRat, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(&rat_to_string(x))
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<BigRat, D::Error> {
        let raw = String::deserialize(d)?;
        parse_rat(&raw).map_err(serde::de::Error::custom)
    }
}

pub mod rat_vec {
    use super::*;

    pub fn serialize<S: Serializer>(xs: &[BigRat], s: S) -> Result<S::Ok, S::Error> {
        s.collect_seq(xs.iter().map(rat_to_string))
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Vec<BigRat>, D::Error> {
        let raw = Vec::<String>::deserialize(d)?;
        raw.iter()
            .map(|s| parse_rat(s).map_err(serde::de::Error::custom))
            .collect()
    }
}

pub mod int_vec {
    use super::*;
    use std::str::FromStr;

    pub fn serialize<S: Serializer>(xs: &[BigInt], s: S) -> Result<S::Ok, S::Error> {
        s.collect_seq(xs.iter().map(|x| x.to_string()))
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Vec<BigInt>, D::Error> {
        let raw = Vec::<String>::deserialize(d)?;
        raw.iter()
            .map(|s| BigInt::from_str(s).map_err(serde::de::Error::custom))
            .collect()
    }
}
