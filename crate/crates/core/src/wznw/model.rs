//! The assembled zero-mode model and its on-disk cache.

use std::path::{Path, PathBuf};

use serde::{Deserialize, Serialize};

use super::bilinear::{build_bilinears, verify_bilinears, Bilinears};
use super::chiral::{build_chiral_ops, verify_matrix_relations, ChiralOps};
use super::fock::{FockIndex, FockSpace};
use super::invariant::{invariant_basis, invariant_subspace, invariant_homology, verify_invariant_basis, InvariantHomology};
use super::quea::{build_quea, build_single_copy, verify_quea, Quea, SingleCopy};
use super::tensors::check_tensors;
use crate::cyclo::{Field, ScalarJson};
use crate::error::{Error, Result};
use crate::linalg::{ExactMatrix, MatrixFile, SparseVec, Subspace};
use crate::report::{Check, SuiteReport};

/// Bumped whenever the cached layout or the construction changes.
pub const CACHE_FORMAT: u32 = 1;

#[derive(Clone, Debug)]
pub struct ZeroModeModel {
  pub field:     Field,
  pub fock:      FockSpace,
  pub ops:       ChiralOps,
  /// `q^{p}` and `q^{-p}` on `F`; the barred copies are the same matrices on `F̄`.
  pub q_p:       ExactMatrix,
  pub q_p_inv:   ExactMatrix,
  pub single:    SingleCopy,
  pub quea:      Quea,
  pub bilinears: Bilinears,
  pub h_i:       Subspace,
  pub inv_basis: Vec<SparseVec>,
}

impl ZeroModeModel {
  /// Solves for the lowering operators and derives everything else.
  pub fn build(h: usize) -> Result<Self> {
    let field = Field::new(h as i64)?;
    let fock = FockSpace::new(h);
    let ops = build_chiral_ops(&field, &fock)?;
    Self::from_ops(field, fock, ops)
  }

  fn from_ops(field: Field, fock: FockSpace, ops: ChiralOps) -> Result<Self> {
    let h = fock.h();
    let single = build_single_copy(&field, &fock, &ops);
    let quea = build_quea(&field, &fock, &single);
    let bilinears = build_bilinears(&field, &ops);
    let h_i = invariant_subspace(&field, &quea, &bilinears);
    if h_i.dim() != 2 * h - 1 {
      return Err(Error::ModelConstruction(format!("invariant subspace has dimension {}, expected {}", h_i.dim(), 2 * h - 1)));
    }
    let inv_basis = invariant_basis(&field, &fock, &bilinears)?;
    Ok(ZeroModeModel {
      q_p: fock.diag(|b| field.q_pow(b.p)),
      q_p_inv: fock.diag(|b| field.q_pow(-b.p)),
      field,
      fock,
      ops,
      single,
      quea,
      bilinears,
      h_i,
      inv_basis,
    })
  }

  pub fn h(&self) -> usize { self.fock.h() }

  pub fn fock_basis(&self) -> &[FockIndex] { self.fock.basis() }

  /// The antichiral basis uses the same labels `(p̄, m̄)`.
  pub fn bar_fock_basis(&self) -> &[FockIndex] { self.fock.basis() }

  /// `dim H = h⁴`.
  pub fn h_dim(&self) -> usize { self.fock.dim() * self.fock.dim() }

  /// Every identity of the chiral algebra, the quantum group action and the bilinears.
  pub fn verify_relations(&self) -> SuiteReport {
    let mut r = SuiteReport::new("relations", self.h());
    r.extend(check_tensors(&self.field));
    r.extend(verify_matrix_relations(&self.field, &self.fock, &self.ops));
    r.extend(verify_quea(&self.field, &self.fock, &self.ops, &self.single, &self.quea));
    r.extend(verify_bilinears(&self.field, &self.fock, &self.bilinears));
    r
  }

  /// Parts (a), (b) and (c) of the structure theorem for `H_I`.
  pub fn verify_theorem0(&self) -> Result<SuiteReport> {
    let h = self.h();
    let mut r = SuiteReport::new("theorem0", h);
    r.push(Check::expect_eq("dim_f", self.fock.dim(), h * h));
    r.push(Check::expect_eq("dim_h", self.h_dim(), h.pow(4)));
    r.push(Check::expect_eq("dim_h_i", self.h_i.dim(), 2 * h - 1));
    let vac = SparseVec::unit(super::invariant::pair_vacuum(&self.fock));
    r.push(Check::from_witness("vacuum_in_h_i", (!self.h_i.contains_vector(&self.field, &vac)).then(|| "|1>_I".to_string())));
    r.extend(verify_invariant_basis(&self.field, &self.fock, &self.bilinears.a, &self.h_i, &self.inv_basis));
    let InvariantHomology { dims, checks } = invariant_homology(&self.field, h, &self.bilinears.a, &self.h_i, &self.inv_basis)?;
    r.extend(checks);
    r.record("dims", dims);
    r.record("dim_h_i", self.h_i.dim());
    Ok(r)
  }
}

#[derive(Serialize, Deserialize)]
struct CacheFile {
  format:    u32,
  h:         usize,
  ops:       Vec<MatrixFile>,
  h_i_basis: Vec<Vec<(usize, ScalarJson)>>,
}

/// Cache path for height `h`.
pub fn cache_path(dir: &Path, h: usize) -> PathBuf { dir.join(format!("zero-mode-h{h}-v{CACHE_FORMAT}.json")) }

impl ZeroModeModel {
  /// Writes the solved chiral operators; derived data is rebuilt on load.
  pub fn save(&self, dir: &Path) -> Result<PathBuf> {
    let ops = [(1, 1), (1, 2), (2, 1), (2, 2)]
      .iter()
      .map(|&(i, al)| MatrixFile::from_matrix(&self.field, self.ops.a(i, al)))
      .collect();
    let h_i_basis =
      self.h_i.basis().iter().map(|v| v.iter().map(|(k, c)| (*k, self.field.to_json(c))).collect()).collect();
    let file = CacheFile { format: CACHE_FORMAT, h: self.h(), ops, h_i_basis };
    std::fs::create_dir_all(dir)?;
    let path = cache_path(dir, self.h());
    std::fs::write(&path, serde_json::to_string(&file)?)?;
    Ok(path)
  }

  /// Loads a cached model, or `None` when no usable cache entry exists.
  pub fn load(dir: &Path, h: usize) -> Result<Option<Self>> {
    let path = cache_path(dir, h);
    let Ok(text) = std::fs::read_to_string(&path) else { return Ok(None) };
    let Ok(file) = serde_json::from_str::<CacheFile>(&text) else { return Ok(None) };
    if file.format != CACHE_FORMAT || file.h != h || file.ops.len() != 4 {
      return Ok(None);
    }
    let field = Field::new(h as i64)?;
    let fock = FockSpace::new(h);
    let mats = file.ops.iter().map(|m| m.to_matrix_in(&field)).collect::<Result<Vec<_>>>()?;
    let [a11, a12, a21, a22]: [ExactMatrix; 4] = mats.try_into().expect("length checked");
    let model = Self::from_ops(field, fock, ChiralOps::new([[a11, a12], [a21, a22]]))?;
    let cached_h_i: Vec<SparseVec> = file
      .h_i_basis
      .iter()
      .map(|v| v.iter().map(|(k, c)| Ok((*k, model.field.from_json(c)?))).collect::<Result<Vec<_>>>().map(SparseVec::from_entries))
      .collect::<Result<_>>()?;
    if cached_h_i != model.h_i.basis() {
      return Err(Error::ModelConstruction(format!("cache entry {} disagrees with the rebuilt invariant subspace", path.display())));
    }
    Ok(Some(model))
  }

  /// Cached build: reuses `dir` unless `refresh` is set, and stores fresh builds there.
  pub fn build_cached(h: usize, dir: Option<&Path>, refresh: bool) -> Result<Self> {
    if let (Some(d), false) = (dir, refresh) {
      if let Some(m) = Self::load(d, h)? {
        return Ok(m);
      }
    }
    let m = Self::build(h)?;
    if let Some(d) = dir {
      m.save(d)?;
    }
    Ok(m)
  }
}

#[cfg(test)]
mod tests {
  use super::*;

  #[test]
  fn dimensions_and_theorem0() {
    for h in 2..=4 {
      let m = ZeroModeModel::build(h).unwrap();
      assert_eq!(m.fock_basis().len(), h * h);
      assert_eq!(m.h_i.dim(), 2 * h - 1);
      let rel = m.verify_relations();
      assert!(rel.passed(), "h={h}: {:?}", rel.failures().collect::<Vec<_>>());
      let t0 = m.verify_theorem0().unwrap();
      assert!(t0.passed(), "h={h}: {:?}", t0.failures().collect::<Vec<_>>());
      assert_eq!(t0.data["dims"], serde_json::json!(vec![1; h - 1]));
    }
  }

  #[test]
  fn h2_lowering_examples() {
    let m = ZeroModeModel::build(2).unwrap();
    let f = &m.field;
    let a = &m.bilinears.a;
    // A|2>_I = [2]|1>_I = 0, A|3>_I = [3]|2>_I = -|2>_I
    assert!(a.apply(f, &m.inv_basis[1]).is_zero());
    assert_eq!(a.apply(f, &m.inv_basis[2]), m.inv_basis[1].neg());
    assert_eq!(m.inv_basis[0], SparseVec::unit(0));
  }

  #[test]
  fn cache_round_trip() {
    let dir = tempfile::tempdir().unwrap();
    let m = ZeroModeModel::build_cached(3, Some(dir.path()), false).unwrap();
    assert!(cache_path(dir.path(), 3).exists());
    let again = ZeroModeModel::load(dir.path(), 3).unwrap().unwrap();
    assert_eq!(again.h_i, m.h_i);
    assert_eq!(again.ops.a(2, 1), m.ops.a(2, 1));
    assert!(ZeroModeModel::load(dir.path(), 2).unwrap().is_none());
  }
}
