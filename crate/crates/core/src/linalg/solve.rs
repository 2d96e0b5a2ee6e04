use super::echelon::{rref, Strategy};
use super::SparseVec;
use crate::cyclo::{Field, Scalar};

/// Why a linear system failed to have exactly one solution.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum SolveFailure {
  Inconsistent,
  Underdetermined { free: usize },
}

/// Solves `Σ_j row_i[j] x_j = rhs_i` for `unknowns` values, requiring a unique solution.
pub fn solve_unique(field: &Field, equations: Vec<(SparseVec, Scalar)>, unknowns: usize) -> Result<Vec<Scalar>, SolveFailure> {
  let rows = equations
    .into_iter()
    .map(|(row, rhs)| if rhs.is_zero() { row } else { row.axpy(field, &rhs, &SparseVec::unit(unknowns)) })
    .collect();
  let ech = rref(field, rows, unknowns + 1, Strategy::default());
  if ech.pivots.last() == Some(&unknowns) {
    return Err(SolveFailure::Inconsistent);
  }
  if ech.rank() < unknowns {
    return Err(SolveFailure::Underdetermined { free: unknowns - ech.rank() });
  }
  // each row is x_p + c·e_rhs with c = rhs_i moved to the right-hand side
  Ok(ech.rows.iter().map(|r| r.get(unknowns)).collect())
}

#[cfg(test)]
mod tests {
  use super::*;

  #[test]
  fn unique_inconsistent_and_free() {
    let f = Field::new(2).unwrap();
    let eq = |a: &[(usize, i64)], b: i64| {
      (SparseVec::from_entries(a.iter().map(|&(i, v)| (i, Scalar::from_int(v)))), Scalar::from_int(b))
    };
    let x = solve_unique(&f, vec![eq(&[(0, 1), (1, 1)], 3), eq(&[(0, 1), (1, -1)], 1)], 2).unwrap();
    assert_eq!(x, vec![Scalar::from_int(2), Scalar::from_int(1)]);
    assert_eq!(solve_unique(&f, vec![eq(&[(0, 1)], 1), eq(&[(0, 2)], 1)], 1), Err(SolveFailure::Inconsistent));
    assert_eq!(solve_unique(&f, vec![eq(&[(0, 1), (1, 1)], 1)], 2), Err(SolveFailure::Underdetermined { free: 1 }));
  }
}
