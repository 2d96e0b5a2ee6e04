use super::echelon::{rref, Echelon, Strategy};
use super::{ExactMatrix, SparseVec};
use crate::cyclo::{Field, Scalar};
use crate::error::{Error, Result};

/// A subspace of F^n held as the reduced row echelon basis of its vectors.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Subspace {
  ambient: usize,
  ech:     Echelon,
}

impl Subspace {
  pub fn zero(ambient: usize) -> Self { Subspace { ambient, ech: Echelon::default() } }

  pub fn full(ambient: usize) -> Self {
    Subspace { ambient, ech: Echelon { rows: (0..ambient).map(SparseVec::unit).collect(), pivots: (0..ambient).collect() } }
  }

  /// Span of the given vectors, echelonized.
  pub fn from_vectors(field: &Field, ambient: usize, vectors: Vec<SparseVec>) -> Self {
    Subspace { ambient, ech: rref(field, vectors, ambient, Strategy::default()) }
  }

  /// Span of the coordinate vectors `e_i` for the given indices.
  pub fn coordinate(ambient: usize, indices: impl IntoIterator<Item = usize>) -> Self {
    let mut idx: Vec<usize> = indices.into_iter().collect();
    idx.sort_unstable();
    idx.dedup();
    Subspace { ambient, ech: Echelon { rows: idx.iter().map(|&i| SparseVec::unit(i)).collect(), pivots: idx } }
  }

  pub fn ambient_dim(&self) -> usize { self.ambient }

  pub fn dim(&self) -> usize { self.ech.rows.len() }

  /// Echelon basis vectors.
  pub fn basis(&self) -> &[SparseVec] { &self.ech.rows }

  pub fn pivots(&self) -> &[usize] { &self.ech.pivots }

  /// Coordinates that are not pivots: a basis of a complement, and of the quotient F^n / self.
  pub fn complement_indices(&self) -> Vec<usize> {
    let mut is_pivot = vec![false; self.ambient];
    for &p in &self.ech.pivots {
      is_pivot[p] = true;
    }
    (0..self.ambient).filter(|&i| !is_pivot[i]).collect()
  }

  /// Residual of `v` after removing its component along the echelon basis.
  pub fn reduce(&self, field: &Field, v: &SparseVec) -> SparseVec { self.ech.reduce(field, v) }

  pub fn contains_vector(&self, field: &Field, v: &SparseVec) -> bool { self.reduce(field, v).is_zero() }

  /// Coordinates of `v` in the echelon basis, if `v` lies in the subspace.
  pub fn coordinates(&self, field: &Field, v: &SparseVec) -> Option<Vec<Scalar>> {
    self.contains_vector(field, v).then(|| self.ech.pivots.iter().map(|&p| v.get(p)).collect())
  }

  fn check_ambient(&self, other: &Subspace) -> Result<()> {
    if self.ambient != other.ambient {
      return Err(Error::AmbientMismatch { left: self.ambient, right: other.ambient });
    }
    Ok(())
  }

  pub fn contains(&self, field: &Field, other: &Subspace) -> Result<bool> {
    self.check_ambient(other)?;
    Ok(other.basis().iter().all(|v| self.contains_vector(field, v)))
  }

  pub fn sum(&self, field: &Field, other: &Subspace) -> Result<Subspace> {
    self.check_ambient(other)?;
    let vectors = self.basis().iter().chain(other.basis()).cloned().collect();
    Ok(Subspace::from_vectors(field, self.ambient, vectors))
  }

  pub fn intersect(&self, field: &Field, other: &Subspace) -> Result<Subspace> {
    self.check_ambient(other)?;
    if self.dim() == 0 || other.dim() == 0 {
      return Ok(Subspace::zero(self.ambient));
    }
    // Σ x_i a_i = Σ y_j b_j  ⇔  (x, y) ∈ ker [a_1 … a_k | -b_1 … -b_l]
    let ka = self.dim();
    let mut columns: Vec<SparseVec> = self.basis().to_vec();
    columns.extend(other.basis().iter().map(SparseVec::neg));
    let m = ExactMatrix::from_columns(self.ambient, &columns);
    let kernel = super::kernel_basis(field, &m);
    let vectors = kernel
      .basis()
      .iter()
      .map(|xy| {
        xy.iter().filter(|(i, _)| *i < ka).fold(SparseVec::new(), |acc, (i, c)| acc.axpy(field, c, &self.basis()[*i]))
      })
      .collect();
    Ok(Subspace::from_vectors(field, self.ambient, vectors))
  }

  /// dim(self) - dim(sub), requiring `sub ⊆ self`.
  pub fn quotient_dim_mod(&self, field: &Field, sub: &Subspace) -> Result<usize> {
    if !self.contains(field, sub)? {
      return Err(Error::NotContained("quotient by a subspace that is not contained".into()));
    }
    Ok(self.dim() - sub.dim())
  }

  /// Image of the subspace under `m`.
  pub fn image_under(&self, field: &Field, m: &ExactMatrix) -> Subspace {
    Subspace::from_vectors(field, m.rows(), self.basis().iter().map(|v| m.apply(field, v)).collect())
  }

  /// Index of a basis vector mapped outside the subspace by `m`, if any.
  pub fn invariance_witness(&self, field: &Field, m: &ExactMatrix) -> Option<usize> {
    self.basis().iter().position(|v| !self.contains_vector(field, &m.apply(field, v)))
  }

  /// Completes the echelon basis of `sub` (assumed contained) to a basis of `self`, returning only
  /// the added vectors, taken from `self`'s echelon basis in order.
  pub fn completion_of(&self, field: &Field, sub: &Subspace) -> Vec<SparseVec> {
    let mut acc = sub.ech.clone();
    let mut added = Vec::new();
    for v in self.basis() {
      let r = acc.reduce(field, v);
      if !r.is_zero() {
        added.push(v.clone());
        let span: Vec<SparseVec> = acc.rows.iter().cloned().chain(std::iter::once(v.clone())).collect();
        acc = rref(field, span, self.ambient, Strategy::default());
      }
    }
    added
  }
}
