use std::str::FromStr;

use num_bigint::BigInt;
use serde::de::{self, Deserializer, Visitor};
use serde::{Deserialize, Serialize, Serializer};

use super::{IntMatrix, IntVector};

/// Integer that serializes as a decimal string and accepts either strings or JSON numbers.
#[derive(Clone, Debug, PartialEq, Eq)]
pub(crate) struct JsonInt(pub BigInt);

impl Serialize for JsonInt {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(&self.0.to_string())
    }
}

impl<'de> Deserialize<'de> for JsonInt {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        struct V;
        impl<'de> Visitor<'de> for V {
            type Value = JsonInt;
            fn expecting(&self, f: &mut std::fmt::Formatter) -> std::fmt::Result {
                f.write_str("an integer or a decimal string")
            }
            fn visit_i64<E: de::Error>(self, v: i64) -> Result<JsonInt, E> {
                Ok(JsonInt(v.into()))
            }
            fn visit_u64<E: de::Error>(self, v: u64) -> Result<JsonInt, E> {
                Ok(JsonInt(v.into()))
            }
            fn visit_str<E: de::Error>(self, v: &str) -> Result<JsonInt, E> {
                BigInt::from_str(v.trim()).map(JsonInt).map_err(E::custom)
            }
        }
        d.deserialize_any(V)
    }
}

/// Wire form of a matrix: `{"rows": r, "cols": c, "entries": ["..", ..]}` row-major.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct MatrixJson {
    pub rows: usize,
    pub cols: usize,
    entries: Vec<JsonInt>,
}

impl From<&IntMatrix> for MatrixJson {
    fn from(m: &IntMatrix) -> Self {
        MatrixJson {
            rows: m.rows(),
            cols: m.cols(),
            entries: m.entries().iter().cloned().map(JsonInt).collect(),
        }
    }
}

impl TryFrom<MatrixJson> for IntMatrix {
    type Error = crate::Error;
    fn try_from(j: MatrixJson) -> crate::Result<IntMatrix> {
        IntMatrix::new(j.rows, j.cols, j.entries.into_iter().map(|x| x.0).collect())
    }
}

/// Vectors travel as single-column matrices.
#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(try_from = "MatrixJson", into = "MatrixJson")]
pub struct VectorJson(pub IntVector);

impl From<VectorJson> for MatrixJson {
    fn from(v: VectorJson) -> Self {
        MatrixJson {
            rows: v.0.dim(),
            cols: 1,
            entries: v.0.into_entries().into_iter().map(JsonInt).collect(),
        }
    }
}

impl TryFrom<MatrixJson> for VectorJson {
    type Error = crate::Error;
    fn try_from(j: MatrixJson) -> crate::Result<VectorJson> {
        if j.cols != 1 && j.rows != 1 {
            return Err(crate::Error::MalformedMatrix("vector must be a single row or column".into()));
        }
        let m = IntMatrix::try_from(j)?;
        Ok(VectorJson(IntVector::new(m.entries().to_vec())))
    }
}

impl Serialize for IntMatrix {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        MatrixJson::from(self).serialize(s)
    }
}

impl<'de> Deserialize<'de> for IntMatrix {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let j = MatrixJson::deserialize(d)?;
        IntMatrix::try_from(j).map_err(de::Error::custom)
    }
}

impl Serialize for IntVector {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        VectorJson(self.clone()).serialize(s)
    }
}

impl<'de> Deserialize<'de> for IntVector {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        VectorJson::deserialize(d).map(|v| v.0)
    }
}
