use super::{Field, Scalar};
use crate::error::{Error, Result};

impl Field {
  /// The q-integer [n] = (q^n - q^{-n}) / (q - q^{-1}), computed as the finite sum
  /// q^{n-1} + q^{n-3} + … + q^{1-n}.
  pub fn q_int(&self, n: i64) -> Scalar {
    let period = 2 * self.h() as i64;
    let r = n.rem_euclid(period);
    // [n + 2h] = [n] since q^{2h} = 1
    let mut acc = Scalar::zero();
    for j in 0..r {
      acc += &self.q_pow(r - 1 - 2 * j);
    }
    acc
  }

  /// [n]! = [1][2]…[n]; [0]! = 1.
  pub fn q_factorial(&self, n: u64) -> Scalar {
    (1..=n as i64).fold(Scalar::one(), |acc, k| self.mul(&acc, &self.q_int(k)))
  }

  /// 1/[n]! for 0 <= n <= h-1; refuses n >= h where [n]! contains the factor [h] = 0.
  pub fn q_divided_power_coeff(&self, n: i64) -> Result<Scalar> {
    if n < 0 {
      return Err(Error::OutOfRange(format!("divided power exponent {n} is negative")));
    }
    if n >= self.h() as i64 {
      return Err(Error::ZeroDivisor { n, h: self.h() });
    }
    self.inv(&self.q_factorial(n as u64))
  }

  /// 1 + q² + … + q^{2(n-1)}.
  pub fn q2_partial_sum(&self, n: u64) -> Scalar {
    (0..n as i64).fold(Scalar::zero(), |acc, j| &acc + &self.q_pow(2 * j))
  }
}
