use std::fmt;
use std::sync::Arc;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Zero};

use super::Scalar;
use crate::error::{Error, Result};

/// The n-th cyclotomic polynomial as integer coefficients, lowest degree first.
///
/// Computed by exact division of x^n - 1 by Φ_d for every proper divisor d of n.
pub fn cyclotomic_polynomial(n: usize) -> Vec<i64> {
  assert!(n >= 1, "cyclotomic index must be positive");
  let mut poly = vec![0i64; n + 1];
  poly[0] = -1;
  poly[n] = 1;
  for d in (1..n).filter(|d| n.is_multiple_of(*d)) {
    poly = divide_monic(&poly, &cyclotomic_polynomial(d));
  }
  poly
}

fn divide_monic(num: &[i64], den: &[i64]) -> Vec<i64> {
  let mut rem = num.to_vec();
  let dn = den.len() - 1;
  let qdeg = rem.len() - 1 - dn;
  let mut quot = vec![0i64; qdeg + 1];
  for k in (0..=qdeg).rev() {
    let c = rem[k + dn];
    quot[k] = c;
    if c != 0 {
      for (j, &dj) in den.iter().enumerate() {
        rem[k + j] -= c * dj;
      }
    }
  }
  debug_assert!(rem.iter().all(|&r| r == 0), "inexact cyclotomic division");
  quot
}

fn euler_phi(n: usize) -> usize { (1..=n).filter(|k| k.gcd(&n) == 1).count() }

struct FieldInner {
  h:        usize,
  order:    usize,
  degree:   usize,
  min_poly: Vec<i64>,
  /// ζ^j reduced modulo Φ_{4h}, for 0 <= j < 4h.
  powers:   Vec<Vec<BigInt>>,
  /// Exponents k coprime to 4h, k != 1: the non-trivial Galois automorphisms ζ ↦ ζ^k.
  conjugators: Vec<usize>,
}

/// Field context for Q(ζ_{4h}), q = ζ². Cheap to clone and safe to share across threads.
#[derive(Clone)]
pub struct Field {
  inner: Arc<FieldInner>,
}

impl Field {
  /// Context for height `h`: ζ is a primitive 4h-th root of unity.
  pub fn new(h: i64) -> Result<Field> {
    if h < 2 {
      return Err(Error::InvalidHeight(h));
    }
    let h = h as usize;
    let order = 4 * h;
    let min_poly = cyclotomic_polynomial(order);
    let degree = min_poly.len() - 1;
    debug_assert_eq!(degree, euler_phi(order));

    let mut powers: Vec<Vec<BigInt>> = Vec::with_capacity(order);
    let mut cur = vec![0i64; degree];
    cur[0] = 1;
    for _ in 0..order {
      powers.push(cur.iter().map(|&c| BigInt::from(c)).collect());
      // multiply by x and reduce with the monic minimal polynomial
      let top = cur[degree - 1];
      for j in (1..degree).rev() {
        cur[j] = cur[j - 1] - top * min_poly[j];
      }
      cur[0] = -top * min_poly[0];
    }
    let conjugators = (2..order).filter(|k| k.gcd(&order) == 1).collect();
    Ok(Field { inner: Arc::new(FieldInner { h, order, degree, min_poly, powers, conjugators }) })
  }

  pub fn h(&self) -> usize { self.inner.h }

  /// Order 4h of ζ.
  pub fn order(&self) -> usize { self.inner.order }

  /// Degree φ(4h) of the field over Q.
  pub fn degree(&self) -> usize { self.inner.degree }

  /// Coefficients of Φ_{4h}, lowest degree first.
  pub fn min_poly(&self) -> &[i64] { &self.inner.min_poly }

  pub fn same_as(&self, other: &Field) -> bool { Arc::ptr_eq(&self.inner, &other.inner) || self.h() == other.h() }

  /// ζ^k for any integer k.
  pub fn zeta_pow(&self, k: i64) -> Scalar {
    let j = k.rem_euclid(self.inner.order as i64) as usize;
    Scalar::from_parts(self.inner.powers[j].clone(), BigInt::one())
  }

  pub fn zeta(&self) -> Scalar { self.zeta_pow(1) }

  /// q^n = ζ^{2n}.
  pub fn q_pow(&self, n: i64) -> Scalar { self.zeta_pow(2 * n) }

  pub fn q(&self) -> Scalar { self.q_pow(1) }

  pub fn mul(&self, a: &Scalar, b: &Scalar) -> Scalar {
    if a.is_zero() || b.is_zero() {
      return Scalar::zero();
    }
    if a.is_rational() {
      return b.scale_ratio(&a.num[0], &a.den);
    }
    if b.is_rational() {
      return a.scale_ratio(&b.num[0], &b.den);
    }
    let d = self.inner.degree;
    let mut prod = vec![BigInt::zero(); a.num.len() + b.num.len() - 1];
    for (i, x) in a.num.iter().enumerate() {
      if x.is_zero() {
        continue;
      }
      for (j, y) in b.num.iter().enumerate() {
        if !y.is_zero() {
          prod[i + j] += x * y;
        }
      }
    }
    let mut num: Vec<BigInt> = Vec::with_capacity(d);
    for (j, c) in prod.iter().enumerate() {
      if j < d {
        num.push(c.clone());
      } else if !c.is_zero() {
        if num.len() < d {
          num.resize(d, BigInt::zero());
        }
        for (k, r) in self.inner.powers[j].iter().enumerate() {
          if !r.is_zero() {
            num[k] += c * r;
          }
        }
      }
    }
    Scalar::from_parts(num, &a.den * &b.den)
  }

  /// Galois conjugate ζ ↦ ζ^k applied to `a`.
  fn conjugate(&self, a: &Scalar, k: usize) -> Scalar {
    let d = self.inner.degree;
    let mut num = vec![BigInt::zero(); d];
    for (i, c) in a.num.iter().enumerate() {
      if c.is_zero() {
        continue;
      }
      let img = &self.inner.powers[(i * k) % self.inner.order];
      for (j, r) in img.iter().enumerate() {
        if !r.is_zero() {
          num[j] += c * r;
        }
      }
    }
    Scalar::from_parts(num, a.den.clone())
  }

  /// Multiplicative inverse via the product of the non-trivial Galois conjugates over the norm.
  pub fn inv(&self, a: &Scalar) -> Result<Scalar> {
    if a.is_zero() {
      return Err(Error::SingularScalar);
    }
    if a.is_rational() {
      return Ok(Scalar::from_parts(vec![a.den.clone()], a.num[0].clone()));
    }
    let mut cofactor = Scalar::one();
    for &k in &self.inner.conjugators {
      cofactor = self.mul(&cofactor, &self.conjugate(a, k));
    }
    let norm = self.mul(a, &cofactor);
    debug_assert!(norm.is_rational(), "norm must be rational");
    Ok(cofactor.scale_ratio(&norm.den, &norm.num[0]))
  }

  pub fn div(&self, a: &Scalar, b: &Scalar) -> Result<Scalar> { Ok(self.mul(a, &self.inv(b)?)) }

  pub fn pow(&self, a: &Scalar, mut e: u64) -> Scalar {
    let mut base = a.clone();
    let mut acc = Scalar::one();
    while e > 0 {
      if e & 1 == 1 {
        acc = self.mul(&acc, &base);
      }
      base = self.mul(&base, &base);
      e >>= 1;
    }
    acc
  }

  /// Complex approximation with ζ = exp(iπ/(2h)). For display only; never used in computation.
  pub fn approx(&self, a: &Scalar) -> (f64, f64) {
    let theta = std::f64::consts::PI / (2.0 * self.inner.h as f64);
    let den = bigint_to_f64(&a.den);
    let (mut re, mut im) = (0.0, 0.0);
    for (i, c) in a.num.iter().enumerate() {
      let v = bigint_to_f64(c) / den;
      re += v * (theta * i as f64).cos();
      im += v * (theta * i as f64).sin();
    }
    (re, im)
  }
}

fn bigint_to_f64(x: &BigInt) -> f64 { x.to_string().parse().unwrap_or(f64::NAN) }

impl fmt::Debug for Field {
  fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
    write!(f, "Field(h={}, Q(ζ_{}), degree {})", self.inner.h, self.inner.order, self.inner.degree)
  }
}

#[cfg(test)]
mod tests {
  use super::*;

  #[test]
  fn small_cyclotomics() {
    assert_eq!(cyclotomic_polynomial(1), vec![-1, 1]);
    assert_eq!(cyclotomic_polynomial(4), vec![1, 0, 1]);
    assert_eq!(cyclotomic_polynomial(8), vec![1, 0, 0, 0, 1]);
    assert_eq!(cyclotomic_polynomial(12), vec![1, 0, -1, 0, 1]);
    assert_eq!(cyclotomic_polynomial(20), vec![1, 0, -1, 0, 1, 0, -1, 0, 1]);
  }

  #[test]
  fn field_new_degrees() {
    let f2 = Field::new(2).unwrap();
    assert_eq!(f2.degree(), 4);
    assert_eq!(f2.min_poly(), &[1, 0, 0, 0, 1]);
    let f3 = Field::new(3).unwrap();
    assert_eq!(f3.degree(), 4);
    assert_eq!(f3.min_poly(), &[1, 0, -1, 0, 1]);
    assert_eq!(Field::new(4).unwrap().degree(), 8);
    assert_eq!(Field::new(5).unwrap().degree(), 8);
    assert!(matches!(Field::new(1), Err(Error::InvalidHeight(1))));
  }

  #[test]
  fn zeta_times_zeta_cubed_is_minus_one_at_h2() {
    let f = Field::new(2).unwrap();
    assert_eq!(f.mul(&f.zeta(), &f.zeta_pow(3)), Scalar::from_int(-1));
  }

  #[test]
  fn q_to_the_h_is_minus_one() {
    for h in 2..=6 {
      let f = Field::new(h).unwrap();
      assert_eq!(f.mul(&f.q(), &f.q_pow(h - 1)), Scalar::from_int(-1));
      assert_eq!(f.q_pow(2 * h), Scalar::one());
    }
  }

  #[test]
  fn q_is_primitive_2h_root() {
    for h in 2..=6 {
      let f = Field::new(h).unwrap();
      for j in 1..2 * h {
        assert_ne!(f.q_pow(j), Scalar::one(), "h={h} j={j}");
      }
      let q2 = f.q_pow(2);
      for j in 1..h {
        assert_ne!(f.pow(&q2, j as u64), Scalar::one());
      }
      assert_eq!(f.pow(&q2, h as u64), Scalar::one());
    }
  }

  #[test]
  fn inverse_and_division() {
    let f = Field::new(3).unwrap();
    let a = &f.zeta() + &Scalar::from_int(2);
    let inv = f.inv(&a).unwrap();
    assert_eq!(f.mul(&a, &inv), Scalar::one());
    assert!(matches!(f.div(&a, &Scalar::zero()), Err(Error::SingularScalar)));
  }

  #[test]
  fn approx_of_q() {
    let f = Field::new(3).unwrap();
    let (re, im) = f.approx(&f.q());
    assert!((re - 0.5).abs() < 1e-12 && (im - 3f64.sqrt() / 2.0).abs() < 1e-12);
  }
}
