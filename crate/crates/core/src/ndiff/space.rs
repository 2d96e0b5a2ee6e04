use serde::{Deserialize, Serialize};

use crate::cyclo::Field;
use crate::error::{Error, Result};
use crate::linalg::{check_nilpotent, image_basis, kernel_basis, ExactMatrix, SparseVec, Subspace};

/// A finite-dimensional space with an endomorphism `d`, `d^h = 0`, optionally graded with `d` of degree +1.
#[derive(Clone, Debug)]
pub struct HDiffSpace {
  h:       usize,
  d:       ExactMatrix,
  grading: Option<Vec<usize>>,
}

impl HDiffSpace {
  pub fn new(field: &Field, h: usize, d: ExactMatrix) -> Result<Self> {
    if h < 2 {
      return Err(Error::InvalidHeight(h as i64));
    }
    check_nilpotent(field, &d, h)?;
    Ok(HDiffSpace { h, d, grading: None })
  }

  /// `grading[n]` is the dimension of the degree-n component; components are laid out consecutively.
  pub fn graded(field: &Field, h: usize, d: ExactMatrix, grading: Vec<usize>) -> Result<Self> {
    let total: usize = grading.iter().sum();
    if total != d.rows() {
      return Err(Error::Dimension(format!("grading sums to {total}, differential has size {}", d.rows())));
    }
    let space = HDiffSpace { grading: Some(grading), ..Self::new(field, h, d)? };
    let offsets = space.offsets().expect("graded");
    for (r, c, _) in space.d.triplets() {
      let (dr, dc) = (degree_of(&offsets, r), degree_of(&offsets, c));
      if dr != dc + 1 {
        return Err(Error::Dimension(format!("d has an entry ({r}, {c}) from degree {dc} to degree {dr}")));
      }
    }
    Ok(space)
  }

  pub fn h(&self) -> usize { self.h }

  pub fn dim(&self) -> usize { self.d.rows() }

  pub fn d(&self) -> &ExactMatrix { &self.d }

  pub fn grading(&self) -> Option<&[usize]> { self.grading.as_deref() }

  /// Start offsets of the degree components, with the total dimension appended.
  pub fn offsets(&self) -> Option<Vec<usize>> {
    self.grading.as_ref().map(|g| {
      let mut out = vec![0];
      for n in g {
        out.push(out.last().expect("nonempty") + n);
      }
      out
    })
  }

  /// `d^0, d^1, …, d^{h-1}`.
  pub fn powers(&self, field: &Field) -> Vec<ExactMatrix> {
    let mut out = vec![ExactMatrix::identity(self.dim())];
    for j in 1..self.h {
      out.push(out[j - 1].mul(field, &self.d).expect("square"));
    }
    out
  }
}

fn degree_of(offsets: &[usize], i: usize) -> usize { offsets.partition_point(|&o| o <= i) - 1 }

/// One generalized homology group with its echelon data.
#[derive(Clone, Debug)]
pub struct Homology {
  pub k:               usize,
  pub dim:             usize,
  pub kernel:          Subspace,
  pub image:           Subspace,
  /// Vectors completing `image` to a basis of `kernel`.
  pub representatives: Vec<SparseVec>,
  /// `dim H^n_(k)` per degree, for graded spaces.
  pub per_degree:      Option<Vec<usize>>,
}

fn check_k(h: usize, k: usize) -> Result<()> {
  if k == 0 || k >= h {
    return Err(Error::OutOfRange(format!("homology index k = {k} outside 1..={}", h - 1)));
  }
  Ok(())
}

fn homology_from_powers(field: &Field, space: &HDiffSpace, powers: &[ExactMatrix], k: usize) -> Homology {
  let h = space.h;
  let kernel = kernel_basis(field, &powers[k]);
  let image = image_basis(field, &powers[h - k]);
  debug_assert!(kernel.contains(field, &image).unwrap_or(false));
  let representatives = kernel.completion_of(field, &image);
  let per_degree = space.offsets().map(|off| {
    (0..off.len() - 1)
      .map(|n| {
        let (lo, hi) = (off[n], off[n + 1]);
        let ker_n = kernel_basis(field, &powers[k].submatrix(0..space.dim(), lo..hi)).dim();
        let im_n = match n.checked_sub(h - k) {
          Some(src) => crate::linalg::rank(field, &powers[h - k].submatrix(lo..hi, off[src]..off[src + 1])),
          None => 0,
        };
        ker_n - im_n
      })
      .collect()
  });
  Homology { k, dim: kernel.dim() - image.dim(), kernel, image, representatives, per_degree }
}

pub fn gen_homology(field: &Field, space: &HDiffSpace, k: usize) -> Result<Homology> {
  check_k(space.h, k)?;
  Ok(homology_from_powers(field, space, &space.powers(field), k))
}

/// Summary of all `H_(k)`, `k = 1..h-1`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct HomologyReport {
  pub h:          usize,
  pub dims:       Vec<usize>,
  #[serde(skip_serializing_if = "Option::is_none", default)]
  pub per_degree: Option<Vec<Vec<usize>>>,
}

pub fn homology_report(field: &Field, space: &HDiffSpace) -> HomologyReport {
  let powers = space.powers(field);
  let all: Vec<Homology> = (1..space.h).map(|k| homology_from_powers(field, space, &powers, k)).collect();
  HomologyReport {
    h:          space.h,
    dims:       all.iter().map(|x| x.dim).collect(),
    per_degree: space.grading.as_ref().map(|_| all.iter().map(|x| x.per_degree.clone().expect("graded")).collect()),
  }
}

#[cfg(test)]
mod tests {
  use super::*;
  use crate::linalg::{jordan_matrix, shift_block};

  #[test]
  fn zero_differential() {
    let f = Field::new(2).unwrap();
    let s = HDiffSpace::new(&f, 2, ExactMatrix::zeros(3, 3)).unwrap();
    assert_eq!(gen_homology(&f, &s, 1).unwrap().dim, 3);
  }

  #[test]
  fn full_block_is_acyclic() {
    for h in 2..6usize {
      let f = Field::new(h as i64).unwrap();
      let s = HDiffSpace::new(&f, h, shift_block(h)).unwrap();
      assert!(homology_report(&f, &s).dims.iter().all(|&d| d == 0));
    }
  }

  #[test]
  fn mixed_blocks() {
    let f = Field::new(3).unwrap();
    let s = HDiffSpace::new(&f, 3, jordan_matrix(&[0, 1, 2])).unwrap();
    let hom = gen_homology(&f, &s, 1).unwrap();
    assert_eq!(hom.dim, 1);
    assert_eq!(hom.representatives.len(), 1);
    assert!(!hom.image.contains_vector(&f, &hom.representatives[0]));
    assert_eq!(homology_report(&f, &s).dims, vec![1, 1]);
  }

  #[test]
  fn rejects_bad_input() {
    let f = Field::new(2).unwrap();
    assert!(matches!(HDiffSpace::new(&f, 2, shift_block(3)), Err(Error::NotNilpotent { .. })));
    let s = HDiffSpace::new(&f, 2, shift_block(2)).unwrap();
    assert!(matches!(gen_homology(&f, &s, 2), Err(Error::OutOfRange(_))));
    assert!(HDiffSpace::graded(&f, 2, shift_block(2), vec![2]).is_err());
  }

  #[test]
  fn graded_split() {
    // degree 0 -> degree 1 by the 1x1 identity, plus a lone vector in degree 1
    let f = Field::new(2).unwrap();
    let d = ExactMatrix::from_triplets(3, 3, [(1, 0, crate::cyclo::Scalar::one())]).unwrap();
    let s = HDiffSpace::graded(&f, 2, d, vec![1, 2]).unwrap();
    let r = homology_report(&f, &s);
    assert_eq!(r.dims, vec![1]);
    assert_eq!(r.per_degree, Some(vec![vec![0, 1]]));
  }
}
