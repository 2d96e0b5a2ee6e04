use std::fmt;
use std::ops::{Add, AddAssign, Neg, Sub, SubAssign};

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

/// An element of Q(ζ) in the power basis, stored as integer numerators over one positive
/// denominator.
///
/// Canonical form: trailing zero numerators are trimmed, the denominator is positive and
/// coprime to the content of the numerators, and zero is the empty numerator list over 1.
/// Structural equality is therefore field equality.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Scalar {
  pub(crate) num: Vec<BigInt>,
  pub(crate) den: BigInt,
}

impl Scalar {
  pub fn zero() -> Self { Scalar { num: Vec::new(), den: BigInt::one() } }

  pub fn one() -> Self { Scalar::from_int(1) }

  pub fn from_int(n: i64) -> Self {
    let mut s = Scalar { num: vec![BigInt::from(n)], den: BigInt::one() };
    s.trim();
    s
  }

  /// The rational number `num / den`.
  ///
  /// # Panics
  /// If `den` is zero.
  pub fn from_ratio(num: i64, den: i64) -> Self {
    assert!(den != 0, "zero denominator");
    Scalar::from_parts(vec![BigInt::from(num)], BigInt::from(den))
  }

  /// Builds a scalar from power-basis numerators over a common denominator.
  ///
  /// # Panics
  /// If `den` is zero.
  pub fn from_parts(num: Vec<BigInt>, den: BigInt) -> Self {
    assert!(!den.is_zero(), "zero denominator");
    let mut s = Scalar { num, den };
    s.normalize();
    s
  }

  pub fn is_zero(&self) -> bool { self.num.is_empty() }

  pub fn is_one(&self) -> bool { self.num.len() == 1 && self.num[0].is_one() && self.den.is_one() }

  /// True when the scalar lies in Q (no ζ component).
  pub fn is_rational(&self) -> bool { self.num.len() <= 1 }

  /// Numerators in the power basis (trailing zeros trimmed).
  pub fn numerators(&self) -> &[BigInt] { &self.num }

  pub fn denominator(&self) -> &BigInt { &self.den }

  /// Coordinate `i` in the power basis as a reduced fraction `(num, den)`.
  pub fn coordinate(&self, i: usize) -> (BigInt, BigInt) {
    let n = self.num.get(i).cloned().unwrap_or_default();
    if n.is_zero() {
      return (n, BigInt::one());
    }
    let g = n.gcd(&self.den);
    (n / &g, &self.den / &g)
  }

  /// Multiplies by the rational `num / den`.
  pub fn scale_ratio(&self, num: &BigInt, den: &BigInt) -> Scalar {
    if self.is_zero() || num.is_zero() {
      return Scalar::zero();
    }
    Scalar::from_parts(self.num.iter().map(|c| c * num).collect(), &self.den * den)
  }

  fn trim(&mut self) {
    while self.num.last().is_some_and(|c| c.is_zero()) {
      self.num.pop();
    }
  }

  pub(crate) fn normalize(&mut self) {
    self.trim();
    if self.num.is_empty() {
      self.den = BigInt::one();
      return;
    }
    if self.den.is_negative() {
      self.den = -std::mem::take(&mut self.den);
      for c in &mut self.num {
        *c = -std::mem::take(c);
      }
    }
    if self.den.is_one() {
      return;
    }
    let mut g = self.den.clone();
    for c in &self.num {
      if g.is_one() {
        break;
      }
      if !c.is_zero() {
        g = g.gcd(c);
      }
    }
    if !g.is_one() {
      for c in &mut self.num {
        *c /= &g;
      }
      self.den /= &g;
    }
  }

  fn combine(&self, rhs: &Scalar, sign: bool) -> Scalar {
    if rhs.is_zero() {
      return self.clone();
    }
    if self.is_zero() {
      return if sign { rhs.clone() } else { -rhs };
    }
    let len = self.num.len().max(rhs.num.len());
    let mut num = Vec::with_capacity(len);
    if self.den == rhs.den {
      for i in 0..len {
        let a = self.num.get(i);
        let b = rhs.num.get(i);
        num.push(match (a, b, sign) {
          (Some(a), Some(b), true) => a + b,
          (Some(a), Some(b), false) => a - b,
          (Some(a), None, _) => a.clone(),
          (None, Some(b), true) => b.clone(),
          (None, Some(b), false) => -b,
          (None, None, _) => BigInt::zero(),
        });
      }
      return Scalar::from_parts(num, self.den.clone());
    }
    let lcm = self.den.lcm(&rhs.den);
    let fa = &lcm / &self.den;
    let fb = &lcm / &rhs.den;
    for i in 0..len {
      let a = self.num.get(i).map(|a| a * &fa).unwrap_or_default();
      let b = rhs.num.get(i).map(|b| b * &fb).unwrap_or_default();
      num.push(if sign { a + b } else { a - b });
    }
    Scalar::from_parts(num, lcm)
  }
}

impl Default for Scalar {
  fn default() -> Self { Scalar::zero() }
}

impl Add<&Scalar> for &Scalar {
  type Output = Scalar;
  fn add(self, rhs: &Scalar) -> Scalar { self.combine(rhs, true) }
}

impl Sub<&Scalar> for &Scalar {
  type Output = Scalar;
  fn sub(self, rhs: &Scalar) -> Scalar { self.combine(rhs, false) }
}

impl Add for Scalar {
  type Output = Scalar;
  fn add(self, rhs: Scalar) -> Scalar { self.combine(&rhs, true) }
}

impl Sub for Scalar {
  type Output = Scalar;
  fn sub(self, rhs: Scalar) -> Scalar { self.combine(&rhs, false) }
}

impl AddAssign<&Scalar> for Scalar {
  fn add_assign(&mut self, rhs: &Scalar) { *self = self.combine(rhs, true); }
}

impl SubAssign<&Scalar> for Scalar {
  fn sub_assign(&mut self, rhs: &Scalar) { *self = self.combine(rhs, false); }
}

impl Neg for &Scalar {
  type Output = Scalar;
  fn neg(self) -> Scalar { Scalar { num: self.num.iter().map(|c| -c).collect(), den: self.den.clone() } }
}

impl Neg for Scalar {
  type Output = Scalar;
  fn neg(mut self) -> Scalar {
    for c in &mut self.num {
      *c = -std::mem::take(c);
    }
    self
  }
}

impl fmt::Display for Scalar {
  fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
    if self.is_zero() {
      return write!(f, "0");
    }
    let mut terms = Vec::new();
    for (i, c) in self.num.iter().enumerate() {
      if c.is_zero() {
        continue;
      }
      let mag = c.abs();
      let sign = if c.is_negative() { "-" } else { "+" };
      let body = match (i, mag.is_one()) {
        (0, _) => mag.to_string(),
        (1, true) => "ζ".to_string(),
        (1, false) => format!("{mag}ζ"),
        (_, true) => format!("ζ^{i}"),
        (_, false) => format!("{mag}ζ^{i}"),
      };
      terms.push((sign, body));
    }
    let mut out = String::new();
    for (k, (sign, body)) in terms.iter().enumerate() {
      match (k, *sign) {
        (0, "-") => out.push('-'),
        (0, _) => {},
        (_, s) => out.push_str(&format!(" {s} ")),
      }
      out.push_str(body);
    }
    if self.den.is_one() {
      write!(f, "{out}")
    } else if terms.len() == 1 {
      write!(f, "{out}/{}", self.den)
    } else {
      write!(f, "({out})/{}", self.den)
    }
  }
}

impl fmt::Debug for Scalar {
  fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result { write!(f, "Scalar({self})") }
}

#[cfg(test)]
mod tests {
  use super::*;

  #[test]
  fn canonical_form_is_unique() {
    let a = Scalar::from_parts(vec![BigInt::from(2), BigInt::from(4), BigInt::zero()], BigInt::from(-6));
    let b = Scalar::from_parts(vec![BigInt::from(-1), BigInt::from(-2)], BigInt::from(3));
    assert_eq!(a, b);
    assert_eq!(a.denominator(), &BigInt::from(3));
  }

  #[test]
  fn zero_is_empty() {
    let s = Scalar::from_parts(vec![BigInt::zero(), BigInt::zero()], BigInt::from(7));
    assert!(s.is_zero());
    assert_eq!(s, Scalar::zero());
    assert_eq!(s.to_string(), "0");
  }

  #[test]
  fn add_and_sub_with_mixed_denominators() {
    let half = Scalar::from_ratio(1, 2);
    let third = Scalar::from_ratio(1, 3);
    assert_eq!(&half + &third, Scalar::from_ratio(5, 6));
    assert_eq!(&half - &half, Scalar::zero());
    assert_eq!(-&third, Scalar::from_ratio(-1, 3));
  }

  #[test]
  fn display_renders_power_basis() {
    let s = Scalar::from_parts(vec![BigInt::from(1), BigInt::from(-2), BigInt::zero(), BigInt::from(1)], BigInt::from(5));
    assert_eq!(s.to_string(), "(1 - 2ζ + ζ^3)/5");
  }
}
