use std::fmt;

use super::SparseVec;
use crate::cyclo::{Field, Scalar};
use crate::error::{Error, Result};

/// A sparse matrix over Q(ζ), stored row-major. Stored entries are always nonzero.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct ExactMatrix {
  rows: usize,
  cols: usize,
  data: Vec<SparseVec>,
}

impl ExactMatrix {
  pub fn zeros(rows: usize, cols: usize) -> Self { ExactMatrix { rows, cols, data: vec![SparseVec::new(); rows] } }

  pub fn identity(n: usize) -> Self { Self::scalar(n, &Scalar::one()) }

  pub fn scalar(n: usize, c: &Scalar) -> Self {
    if c.is_zero() {
      return Self::zeros(n, n);
    }
    ExactMatrix { rows: n, cols: n, data: (0..n).map(|i| SparseVec::from_sorted(vec![(i, c.clone())])).collect() }
  }

  pub fn diagonal(values: Vec<Scalar>) -> Self {
    let n = values.len();
    ExactMatrix {
      rows: n,
      cols: n,
      data: values
        .into_iter()
        .enumerate()
        .map(|(i, v)| if v.is_zero() { SparseVec::new() } else { SparseVec::from_sorted(vec![(i, v)]) })
        .collect(),
    }
  }

  /// Sums duplicate positions.
  pub fn from_triplets(rows: usize, cols: usize, triplets: impl IntoIterator<Item = (usize, usize, Scalar)>) -> Result<Self> {
    let mut buckets: Vec<Vec<(usize, Scalar)>> = vec![Vec::new(); rows];
    for (r, c, v) in triplets {
      if r >= rows || c >= cols {
        return Err(Error::OutOfRange(format!("entry ({r}, {c}) outside a {rows}x{cols} matrix")));
      }
      buckets[r].push((c, v));
    }
    Ok(ExactMatrix { rows, cols, data: buckets.into_iter().map(SparseVec::from_entries).collect() })
  }

  pub fn from_rows(cols: usize, rows: Vec<SparseVec>) -> Self {
    debug_assert!(rows.iter().all(|r| r.max_index().is_none_or(|m| m < cols)));
    ExactMatrix { rows: rows.len(), cols, data: rows }
  }

  pub fn from_columns(rows: usize, columns: &[SparseVec]) -> Self {
    let mut buckets: Vec<Vec<(usize, Scalar)>> = vec![Vec::new(); rows];
    for (c, col) in columns.iter().enumerate() {
      for (r, v) in col.iter() {
        buckets[*r].push((c, v.clone()));
      }
    }
    ExactMatrix { rows, cols: columns.len(), data: buckets.into_iter().map(SparseVec::from_sorted).collect() }
  }

  pub fn rows(&self) -> usize { self.rows }

  pub fn cols(&self) -> usize { self.cols }

  pub fn is_square(&self) -> bool { self.rows == self.cols }

  pub fn row(&self, i: usize) -> &SparseVec { &self.data[i] }

  pub fn row_vectors(&self) -> &[SparseVec] { &self.data }

  pub fn into_rows(self) -> Vec<SparseVec> { self.data }

  pub fn get(&self, i: usize, j: usize) -> Scalar { self.data[i].get(j) }

  pub fn nnz(&self) -> usize { self.data.iter().map(SparseVec::nnz).sum() }

  pub fn is_zero(&self) -> bool { self.data.iter().all(SparseVec::is_zero) }

  /// Nonzero entries as `(row, col, value)` in row-major order.
  pub fn triplets(&self) -> impl Iterator<Item = (usize, usize, &Scalar)> {
    self.data.iter().enumerate().flat_map(|(r, row)| row.iter().map(move |(c, v)| (r, *c, v)))
  }

  /// Replaces entry `(i, j)`.
  pub fn set(&mut self, i: usize, j: usize, v: Scalar) {
    let mut entries: Vec<(usize, Scalar)> = self.data[i].iter().filter(|(c, _)| *c != j).cloned().collect();
    entries.push((j, v));
    self.data[i] = SparseVec::from_entries(entries);
  }

  pub fn transpose(&self) -> ExactMatrix {
    let mut buckets: Vec<Vec<(usize, Scalar)>> = vec![Vec::new(); self.cols];
    for (r, row) in self.data.iter().enumerate() {
      for (c, v) in row.iter() {
        buckets[*c].push((r, v.clone()));
      }
    }
    ExactMatrix { rows: self.cols, cols: self.rows, data: buckets.into_iter().map(SparseVec::from_sorted).collect() }
  }

  pub fn column(&self, j: usize) -> SparseVec {
    SparseVec::from_sorted(
      self.data.iter().enumerate().filter_map(|(r, row)| row.get_ref(j).map(|v| (r, v.clone()))).collect(),
    )
  }

  pub fn columns(&self) -> Vec<SparseVec> { self.transpose().data }

  fn check_same_shape(&self, other: &ExactMatrix) -> Result<()> {
    if self.rows != other.rows || self.cols != other.cols {
      return Err(Error::Dimension(format!(
        "{}x{} vs {}x{}",
        self.rows, self.cols, other.rows, other.cols
      )));
    }
    Ok(())
  }

  pub fn add(&self, field: &Field, other: &ExactMatrix) -> Result<ExactMatrix> {
    self.check_same_shape(other)?;
    Ok(ExactMatrix {
      rows: self.rows,
      cols: self.cols,
      data: self.data.iter().zip(&other.data).map(|(a, b)| a.add(field, b)).collect(),
    })
  }

  pub fn sub(&self, field: &Field, other: &ExactMatrix) -> Result<ExactMatrix> {
    self.check_same_shape(other)?;
    Ok(ExactMatrix {
      rows: self.rows,
      cols: self.cols,
      data: self.data.iter().zip(&other.data).map(|(a, b)| a.sub(field, b)).collect(),
    })
  }

  /// `self + c·other`.
  pub fn axpy(&self, field: &Field, c: &Scalar, other: &ExactMatrix) -> Result<ExactMatrix> {
    self.check_same_shape(other)?;
    Ok(ExactMatrix {
      rows: self.rows,
      cols: self.cols,
      data: self.data.iter().zip(&other.data).map(|(a, b)| a.axpy(field, c, b)).collect(),
    })
  }

  pub fn scale(&self, field: &Field, c: &Scalar) -> ExactMatrix {
    ExactMatrix { rows: self.rows, cols: self.cols, data: self.data.iter().map(|r| r.scale(field, c)).collect() }
  }

  pub fn neg(&self) -> ExactMatrix {
    ExactMatrix { rows: self.rows, cols: self.cols, data: self.data.iter().map(SparseVec::neg).collect() }
  }

  pub fn mul(&self, field: &Field, other: &ExactMatrix) -> Result<ExactMatrix> {
    if self.cols != other.rows {
      return Err(Error::Dimension(format!(
        "cannot multiply {}x{} by {}x{}",
        self.rows, self.cols, other.rows, other.cols
      )));
    }
    let mut acc: Vec<Option<Scalar>> = vec![None; other.cols];
    let mut touched: Vec<usize> = Vec::new();
    let mut data = Vec::with_capacity(self.rows);
    for row in &self.data {
      for (k, a) in row.iter() {
        for (j, b) in other.data[*k].iter() {
          let p = field.mul(a, b);
          match &mut acc[*j] {
            Some(s) => *s += &p,
            slot @ None => {
              *slot = Some(p);
              touched.push(*j);
            },
          }
        }
      }
      touched.sort_unstable();
      let entries: Vec<(usize, Scalar)> =
        touched.drain(..).filter_map(|j| acc[j].take().filter(|v| !v.is_zero()).map(|v| (j, v))).collect();
      data.push(SparseVec::from_sorted(entries));
    }
    Ok(ExactMatrix { rows: self.rows, cols: other.cols, data })
  }

  /// Matrix-vector product `self · v`.
  pub fn apply(&self, field: &Field, v: &SparseVec) -> SparseVec {
    if v.is_zero() {
      return SparseVec::new();
    }
    SparseVec::from_sorted(
      self
        .data
        .iter()
        .enumerate()
        .filter_map(|(i, row)| {
          let s = row.dot(field, v);
          (!s.is_zero()).then_some((i, s))
        })
        .collect(),
    )
  }

  pub fn pow(&self, field: &Field, k: usize) -> Result<ExactMatrix> {
    if !self.is_square() {
      return Err(Error::Dimension("power of a non-square matrix".into()));
    }
    let mut acc = ExactMatrix::identity(self.rows);
    for _ in 0..k {
      acc = acc.mul(field, self)?;
    }
    Ok(acc)
  }

  /// Commutator `self·other - other·self`.
  pub fn commutator(&self, field: &Field, other: &ExactMatrix) -> Result<ExactMatrix> {
    self.mul(field, other)?.sub(field, &other.mul(field, self)?)
  }

  /// Kronecker product with index `(i, j) ↦ i·dim(other) + j`.
  pub fn kron(&self, field: &Field, other: &ExactMatrix) -> ExactMatrix {
    let mut data = Vec::with_capacity(self.rows * other.rows);
    for arow in &self.data {
      for brow in &other.data {
        let mut entries = Vec::with_capacity(arow.nnz() * brow.nnz());
        for (ac, av) in arow.iter() {
          for (bc, bv) in brow.iter() {
            entries.push((ac * other.cols + bc, field.mul(av, bv)));
          }
        }
        data.push(SparseVec::from_sorted(entries));
      }
    }
    ExactMatrix { rows: self.rows * other.rows, cols: self.cols * other.cols, data }
  }

  pub fn block_diagonal(blocks: &[&ExactMatrix]) -> ExactMatrix {
    let rows = blocks.iter().map(|b| b.rows).sum();
    let cols = blocks.iter().map(|b| b.cols).sum();
    let mut data = Vec::with_capacity(rows);
    let mut offset = 0;
    for b in blocks {
      for row in &b.data {
        data.push(row.shifted(offset));
      }
      offset += b.cols;
    }
    ExactMatrix { rows, cols, data }
  }

  /// Stacks matrices with equal column counts on top of each other.
  pub fn vstack(blocks: &[&ExactMatrix]) -> Result<ExactMatrix> {
    let cols = blocks.first().map(|b| b.cols).unwrap_or(0);
    if blocks.iter().any(|b| b.cols != cols) {
      return Err(Error::Dimension("vstack with unequal column counts".into()));
    }
    let data: Vec<SparseVec> = blocks.iter().flat_map(|b| b.data.iter().cloned()).collect();
    Ok(ExactMatrix { rows: data.len(), cols, data })
  }

  /// Copies `block` into position `(row0, col0)`, adding to existing entries.
  pub fn add_block(&mut self, field: &Field, row0: usize, col0: usize, block: &ExactMatrix) {
    for (r, row) in block.data.iter().enumerate() {
      let shifted = row.shifted(col0);
      self.data[row0 + r] = self.data[row0 + r].add(field, &shifted);
    }
  }

  /// Restriction to a block of rows and columns.
  pub fn submatrix(&self, rows: std::ops::Range<usize>, cols: std::ops::Range<usize>) -> ExactMatrix {
    let data = self.data[rows.clone()]
      .iter()
      .map(|r| SparseVec::from_sorted(r.iter().filter(|(c, _)| cols.contains(c)).map(|(c, v)| (c - cols.start, v.clone())).collect()))
      .collect();
    ExactMatrix { rows: rows.len(), cols: cols.len(), data }
  }

  /// First column with a nonzero entry, if any: a witness basis vector for a failed identity.
  pub fn first_nonzero_column(&self) -> Option<usize> { self.data.iter().filter_map(SparseVec::leading).map(|(c, _)| c).min() }

  pub fn to_dense(&self) -> Vec<Vec<Scalar>> { self.data.iter().map(|r| r.to_dense(self.cols)).collect() }
}

impl fmt::Debug for ExactMatrix {
  fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
    writeln!(f, "ExactMatrix {}x{} ({} nonzeros)", self.rows, self.cols, self.nnz())?;
    for (r, c, v) in self.triplets().take(64) {
      writeln!(f, "  ({r}, {c}) = {v}")?;
    }
    Ok(())
  }
}

/// The n×n nilpotent shift block with ones on the superdiagonal.
pub fn shift_block(n: usize) -> ExactMatrix {
  ExactMatrix::from_triplets(n, n, (0..n.saturating_sub(1)).map(|i| (i, i + 1, Scalar::one()))).expect("in range")
}

/// Block-diagonal nilpotent matrix with `multiplicities[n-1]` shift blocks of size n.
pub fn jordan_matrix(multiplicities: &[usize]) -> ExactMatrix {
  let blocks: Vec<ExactMatrix> = multiplicities
    .iter()
    .enumerate()
    .flat_map(|(i, &m)| std::iter::repeat_n(i + 1, m))
    .map(shift_block)
    .collect();
  ExactMatrix::block_diagonal(&blocks.iter().collect::<Vec<_>>())
}

#[cfg(test)]
mod tests {
  use super::*;

  #[test]
  fn shift_block_powers() {
    let f = Field::new(3).unwrap();
    let q3 = shift_block(3);
    assert_eq!(q3.nnz(), 2);
    assert_eq!(q3.pow(&f, 2).unwrap().nnz(), 1);
    assert!(q3.pow(&f, 3).unwrap().is_zero());
  }

  #[test]
  fn kron_matches_definition() {
    let f = Field::new(2).unwrap();
    let a = ExactMatrix::from_triplets(2, 2, [(0, 1, f.q()), (1, 0, Scalar::one())]).unwrap();
    let b = ExactMatrix::from_triplets(2, 2, [(0, 0, Scalar::from_int(2)), (1, 1, Scalar::one())]).unwrap();
    let k = a.kron(&f, &b);
    assert_eq!(k.get(0, 2), f.mul(&f.q(), &Scalar::from_int(2)));
    assert_eq!(k.get(1, 3), f.q());
    assert_eq!(k.get(2, 0), Scalar::from_int(2));
    // mixed product property
    let lhs = a.kron(&f, &b).mul(&f, &b.kron(&f, &a)).unwrap();
    let rhs = a.mul(&f, &b).unwrap().kron(&f, &b.mul(&f, &a).unwrap());
    assert_eq!(lhs, rhs);
  }

  #[test]
  fn transpose_twice_is_identity() {
    let f = Field::new(2).unwrap();
    let m = ExactMatrix::from_triplets(2, 3, [(0, 2, f.zeta()), (1, 0, Scalar::from_int(-3))]).unwrap();
    assert_eq!(m.transpose().transpose(), m);
    assert_eq!(m.transpose().get(2, 0), f.zeta());
  }

  #[test]
  fn jordan_matrix_shape() {
    let j = jordan_matrix(&[0, 1, 2]);
    assert_eq!(j.rows(), 8);
    assert_eq!(j.nnz(), 1 + 2 + 2);
  }
}
