use serde::{Deserialize, Serialize};

use super::{rank, ExactMatrix};
use crate::cyclo::Field;
use crate::error::{Error, Result};

/// Rank profile `r_j = rank(N^j)` for `j = 0..=h` and Jordan block multiplicities `m_1..m_h`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct NilpotentProfile {
  pub h:              usize,
  pub ranks:          Vec<usize>,
  pub multiplicities: Vec<usize>,
}

impl NilpotentProfile {
  pub fn dim(&self) -> usize { self.ranks[0] }
}

fn require_square(n: &ExactMatrix) -> Result<()> {
  if !n.is_square() {
    return Err(Error::Dimension(format!("expected a square matrix, got {}x{}", n.rows(), n.cols())));
  }
  Ok(())
}

/// Fails unless `N^h = 0`. The error names the nilpotency index when `N` is nilpotent at all.
pub fn check_nilpotent(field: &Field, n: &ExactMatrix, h: usize) -> Result<()> {
  require_square(n)?;
  let mut p = ExactMatrix::identity(n.rows());
  for _ in 0..h {
    p = p.mul(field, n)?;
  }
  if p.is_zero() {
    return Ok(());
  }
  Err(not_nilpotent(field, n, h, p))
}

fn not_nilpotent(field: &Field, n: &ExactMatrix, h: usize, mut power: ExactMatrix) -> Error {
  let mut j = h;
  while j < n.rows() {
    power = power.mul(field, n).expect("square");
    j += 1;
    if power.is_zero() {
      return Error::NotNilpotent { h, detail: format!("smallest vanishing power is {j}") };
    }
  }
  Error::NotNilpotent { h, detail: "the matrix is not nilpotent".into() }
}

/// Ranks of the powers of `N` and the multiplicities `m_n = r_{n-1} - 2 r_n + r_{n+1}`.
pub fn nilpotent_profile(field: &Field, n: &ExactMatrix, h: usize) -> Result<NilpotentProfile> {
  require_square(n)?;
  if h < 1 {
    return Err(Error::InvalidHeight(h as i64));
  }
  let dim = n.rows();
  let mut ranks = vec![dim];
  let mut p = ExactMatrix::identity(dim);
  for _ in 1..=h {
    if *ranks.last().expect("nonempty") == 0 {
      ranks.push(0);
      continue;
    }
    p = p.mul(field, n)?;
    ranks.push(rank(field, &p));
  }
  if ranks[h] != 0 {
    return Err(not_nilpotent(field, n, h, p));
  }
  let r = |j: usize| if j <= h { ranks[j] as i64 } else { 0 };
  let multiplicities = (1..=h)
    .map(|k| {
      let m = r(k - 1) - 2 * r(k) + r(k + 1);
      debug_assert!(m >= 0);
      m as usize
    })
    .collect();
  Ok(NilpotentProfile { h, ranks, multiplicities })
}

#[cfg(test)]
mod tests {
  use super::*;
  use crate::linalg::{jordan_matrix, shift_block};

  #[test]
  fn single_block() {
    let f = Field::new(3).unwrap();
    let p = nilpotent_profile(&f, &shift_block(3), 3).unwrap();
    assert_eq!(p.ranks, vec![3, 2, 1, 0]);
    assert_eq!(p.multiplicities, vec![0, 0, 1]);
  }

  #[test]
  fn zero_map() {
    let f = Field::new(2).unwrap();
    let p = nilpotent_profile(&f, &ExactMatrix::zeros(5, 5), 2).unwrap();
    assert_eq!(p.multiplicities, vec![5, 0]);
  }

  #[test]
  fn mixed_blocks() {
    let f = Field::new(3).unwrap();
    let p = nilpotent_profile(&f, &jordan_matrix(&[0, 1, 2]), 3).unwrap();
    assert_eq!(p.multiplicities, vec![0, 1, 2]);
    assert_eq!(p.multiplicities.iter().enumerate().map(|(i, m)| (i + 1) * m).sum::<usize>(), p.dim());
  }

  #[test]
  fn reports_nilpotency_index() {
    let f = Field::new(2).unwrap();
    let err = nilpotent_profile(&f, &shift_block(4), 2).unwrap_err();
    assert!(err.to_string().contains("smallest vanishing power is 4"), "{err}");
    let err = check_nilpotent(&f, &ExactMatrix::identity(2), 2).unwrap_err();
    assert!(err.to_string().contains("not nilpotent"), "{err}");
  }
}
