//! Sparse exact linear algebra over Q(ζ).

mod echelon;
mod io;
mod matrix;
mod nilpotent;
mod solve;
mod subspace;
mod vector;

use std::collections::HashMap;

pub use echelon::{rank_of_rows, rref, Echelon, Strategy};
pub use io::MatrixFile;
pub use matrix::{jordan_matrix, shift_block, ExactMatrix};
pub use nilpotent::{check_nilpotent, nilpotent_profile, NilpotentProfile};
pub use solve::{solve_unique, SolveFailure};
pub use subspace::Subspace;
pub use vector::SparseVec;

use crate::cyclo::{Field, Scalar};

pub fn rank(field: &Field, m: &ExactMatrix) -> usize { rank_with(field, m, Strategy::default()) }

pub fn rank_with(field: &Field, m: &ExactMatrix, strategy: Strategy) -> usize {
  rank_of_rows(field, m.row_vectors().to_vec(), m.cols(), strategy)
}

/// Kernel of `m` as a subspace of F^cols.
pub fn kernel_basis(field: &Field, m: &ExactMatrix) -> Subspace {
  let ech = rref(field, m.row_vectors().to_vec(), m.cols(), Strategy::default());
  let mut is_pivot = vec![false; m.cols()];
  for &p in &ech.pivots {
    is_pivot[p] = true;
  }
  // free column f contributes e_f - Σ_r R[r][f] e_{pivot(r)}
  let mut extra: HashMap<usize, Vec<(usize, Scalar)>> = HashMap::new();
  for (row, &p) in ech.rows.iter().zip(&ech.pivots) {
    for (c, v) in row.iter() {
      if *c != p {
        extra.entry(*c).or_default().push((p, -v));
      }
    }
  }
  let vectors = (0..m.cols())
    .filter(|&f| !is_pivot[f])
    .map(|f| {
      let mut entries = extra.remove(&f).unwrap_or_default();
      entries.push((f, Scalar::one()));
      SparseVec::from_entries(entries)
    })
    .collect();
  Subspace::from_vectors(field, m.cols(), vectors)
}

/// Column space of `m` as a subspace of F^rows.
pub fn image_basis(field: &Field, m: &ExactMatrix) -> Subspace { Subspace::from_vectors(field, m.rows(), m.columns()) }

#[cfg(test)]
mod tests {
  use super::*;
  use proptest::prelude::*;

  #[test]
  fn small_ranks() {
    let f = Field::new(2).unwrap();
    assert_eq!(rank(&f, &ExactMatrix::zeros(3, 3)), 0);
    assert_eq!(rank(&f, &ExactMatrix::identity(4)), 4);
    assert_eq!(rank(&f, &shift_block(3)), 2);
  }

  #[test]
  fn kernels_of_extremes() {
    let f = Field::new(2).unwrap();
    assert_eq!(kernel_basis(&f, &ExactMatrix::identity(3)).dim(), 0);
    assert_eq!(kernel_basis(&f, &ExactMatrix::zeros(3, 3)), Subspace::full(3));
    assert_eq!(image_basis(&f, &shift_block(3)), Subspace::coordinate(3, [0, 1]));
  }

  fn small_scalar(f: &Field, k: u8) -> Scalar {
    match k % 7 {
      0..=2 => Scalar::zero(),
      3 => Scalar::one(),
      4 => Scalar::from_int(-2),
      5 => f.q(),
      _ => f.zeta(),
    }
  }

  proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]
    #[test]
    fn rank_nullity_and_transpose(h in 2i64..5, rows in 1usize..7, cols in 1usize..7, seed in proptest::collection::vec(any::<u8>(), 36)) {
      let f = Field::new(h).unwrap();
      let m = ExactMatrix::from_triplets(rows, cols, (0..rows).flat_map(|r| (0..cols).map(move |c| (r, c)))
        .map(|(r, c)| (r, c, small_scalar(&f, seed[r * 6 + c])))).unwrap();
      let r = rank(&f, &m);
      prop_assert_eq!(r, rank(&f, &m.transpose()));
      prop_assert_eq!(r, rank_with(&f, &m, super::Strategy::FractionFree));
      let ker = kernel_basis(&f, &m);
      prop_assert_eq!(ker.dim() + r, cols);
      for v in ker.basis() {
        prop_assert!(m.apply(&f, v).is_zero());
      }
      prop_assert_eq!(image_basis(&f, &m).dim(), r);
    }
  }
}
