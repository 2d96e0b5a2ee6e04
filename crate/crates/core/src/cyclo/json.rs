use num_bigint::BigInt;
use num_traits::Zero;
use serde::{Deserialize, Serialize};

use super::{Field, Scalar};
use crate::error::{Error, Result};

/// Wire form of a scalar: φ(4h) rationals `[num, den]` as decimal strings, power basis of ζ.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(transparent)]
pub struct ScalarJson(pub Vec<[String; 2]>);

impl Field {
  pub fn to_json(&self, s: &Scalar) -> ScalarJson {
    ScalarJson(
      (0..self.degree())
        .map(|i| {
          let (n, d) = s.coordinate(i);
          [n.to_string(), d.to_string()]
        })
        .collect(),
    )
  }

  pub fn from_json(&self, js: &ScalarJson) -> Result<Scalar> {
    if js.0.len() != self.degree() {
      return Err(Error::Parse(format!(
        "scalar has {} coordinates, field of height {} needs {}",
        js.0.len(),
        self.h(),
        self.degree()
      )));
    }
    let mut acc = Scalar::zero();
    for (i, [n, d]) in js.0.iter().enumerate() {
      let n: BigInt = n.trim().parse().map_err(|_| Error::Parse(format!("bad numerator {n:?}")))?;
      let d: BigInt = d.trim().parse().map_err(|_| Error::Parse(format!("bad denominator {d:?}")))?;
      if d.is_zero() {
        return Err(Error::Parse("zero denominator".into()));
      }
      if n.is_zero() {
        continue;
      }
      let mut num = vec![BigInt::zero(); i + 1];
      num[i] = n;
      acc += &Scalar::from_parts(num, d);
    }
    Ok(acc)
  }

  /// Accepts either the full wire form or a bare integer / `"num/den"` rational shorthand.
  pub fn scalar_from_value(&self, v: &serde_json::Value) -> Result<Scalar> {
    match v {
      serde_json::Value::Number(n) => {
        let i = n.as_i64().ok_or_else(|| Error::Parse(format!("non-integer scalar {n}")))?;
        Ok(Scalar::from_int(i))
      },
      serde_json::Value::String(s) => {
        let (n, d) = match s.split_once('/') {
          Some((n, d)) => (n, d),
          None => (s.as_str(), "1"),
        };
        let n: BigInt = n.trim().parse().map_err(|_| Error::Parse(format!("bad rational {s:?}")))?;
        let d: BigInt = d.trim().parse().map_err(|_| Error::Parse(format!("bad rational {s:?}")))?;
        if d.is_zero() {
          return Err(Error::Parse("zero denominator".into()));
        }
        Ok(Scalar::from_parts(vec![n], d))
      },
      other => self.from_json(&serde_json::from_value(other.clone())?),
    }
  }
}
