use std::collections::HashMap;

use serde::{Deserialize, Serialize};

use crate::cyclo::{Field, Scalar};
use crate::linalg::{ExactMatrix, SparseVec};

/// Basis label `|p, m>` of the Fock module: shifted weight `p`, occupation `m`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct FockIndex {
  pub p: i64,
  pub m: i64,
}

impl FockIndex {
  pub fn is_valid(h: i64, p: i64, m: i64) -> bool { 0 < p && p < 2 * h && (p - h).max(0) <= m && m <= (p - 1).min(h - 1) }
}

impl std::fmt::Display for FockIndex {
  fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result { write!(f, "({},{})", self.p, self.m) }
}

/// All `(p, m)` with `0 < p < 2h`, `max(0, p-h) ≤ m ≤ min(p-1, h-1)`, in lexicographic order.
pub fn fock_basis(h: usize) -> Vec<FockIndex> {
  let h = h as i64;
  (1..2 * h).flat_map(|p| ((p - h).max(0)..=(p - 1).min(h - 1)).map(move |m| FockIndex { p, m })).collect()
}

/// The Fock module `F` with lookup from labels to positions.
#[derive(Clone, Debug)]
pub struct FockSpace {
  h:     usize,
  basis: Vec<FockIndex>,
  index: HashMap<FockIndex, usize>,
}

impl FockSpace {
  pub fn new(h: usize) -> Self {
    let basis = fock_basis(h);
    let index = basis.iter().enumerate().map(|(i, b)| (*b, i)).collect();
    FockSpace { h, basis, index }
  }

  pub fn h(&self) -> usize { self.h }

  pub fn dim(&self) -> usize { self.basis.len() }

  pub fn basis(&self) -> &[FockIndex] { &self.basis }

  pub fn label(&self, i: usize) -> FockIndex { self.basis[i] }

  pub fn index_of(&self, p: i64, m: i64) -> Option<usize> { self.index.get(&FockIndex { p, m }).copied() }

  pub fn vacuum(&self) -> usize { self.index_of(1, 0).expect("vacuum exists") }

  /// Diagonal operator with eigenvalue `f(p, m)` on `|p, m>`.
  pub fn diag(&self, f: impl Fn(FockIndex) -> Scalar) -> ExactMatrix { ExactMatrix::diagonal(self.basis.iter().map(|&b| f(b)).collect()) }

  /// `|p, m> ↦ c(p, m) |target(p, m)>`, dropping targets outside the module.
  pub fn shift_op(&self, target: impl Fn(FockIndex) -> (i64, i64), coeff: impl Fn(FockIndex) -> Scalar) -> ExactMatrix {
    let triplets = self.basis.iter().enumerate().filter_map(|(j, &b)| {
      let (p, m) = target(b);
      self.index_of(p, m).map(|i| (i, j, coeff(b)))
    });
    ExactMatrix::from_triplets(self.dim(), self.dim(), triplets).expect("in range")
  }

  /// `[p]` as a diagonal operator, shifted: eigenvalue `[p + shift]`.
  pub fn bracket_p(&self, field: &Field, shift: i64) -> ExactMatrix { self.diag(|b| field.q_int(b.p + shift)) }

  pub fn unit(&self, p: i64, m: i64) -> Option<SparseVec> { self.index_of(p, m).map(SparseVec::unit) }

  /// Label of a column of `F ⊗ F̄` written `(p,m)⊗(p̄,m̄)`.
  pub fn pair_label(&self, k: usize) -> String {
    let n = self.dim();
    format!("{}⊗{}", self.basis[k / n], self.basis[k % n])
  }
}
