use crate::cyclo::{Field, Scalar};
use crate::error::{Error, Result};
use crate::linalg::{check_nilpotent, ExactMatrix, SparseVec, Subspace};

use super::HDiffSpace;

/// `h` copies of `E` in degrees `0..h-1` with `(δψ)_n = ψ_{n-1}` and `(ℒψ)_n = q^{2n} L ψ_n`.
/// The result carries no grading since `ℒ` has degree 0.
pub fn cone(field: &Field, l: &ExactMatrix, h: usize) -> Result<HDiffSpace> {
  check_nilpotent(field, l, h)?;
  let e = l.rows();
  let mut m = ExactMatrix::zeros(h * e, h * e);
  for n in 0..h {
    m.add_block(field, n * e, n * e, &l.scale(field, &field.q_pow(2 * n as i64)));
    if n > 0 {
      m.add_block(field, n * e, (n - 1) * e, &ExactMatrix::identity(e));
    }
  }
  HDiffSpace::new(field, h, m)
}

/// Coordinates of `v` modulo `w`, in the basis of non-pivot coordinates of `w`.
fn project(field: &Field, w: &Subspace, position: &[Option<usize>], v: &SparseVec) -> SparseVec {
  w.reduce(field, v).reindex(|i| position[i])
}

fn quotient_positions(w: &Subspace) -> (Vec<usize>, Vec<Option<usize>>) {
  let coords = w.complement_indices();
  let mut position = vec![None; w.ambient_dim()];
  for (k, &i) in coords.iter().enumerate() {
    position[i] = Some(k);
  }
  (coords, position)
}

/// The map induced by `a` on `V / W`, in the basis of `W`'s non-pivot coordinates.
pub fn induced_quotient_map(field: &Field, a: &ExactMatrix, w: &Subspace) -> Result<ExactMatrix> {
  if let Some(witness) = w.invariance_witness(field, a) {
    return Err(Error::InvariantViolation { witness });
  }
  let (coords, position) = quotient_positions(w);
  let columns: Vec<SparseVec> =
    coords.iter().map(|&j| project(field, w, &position, &a.apply(field, &SparseVec::unit(j)))).collect();
  Ok(ExactMatrix::from_columns(coords.len(), &columns))
}

/// The restriction of `a` to an invariant subspace, in the echelon basis of `w`.
pub fn restrict_to(field: &Field, a: &ExactMatrix, w: &Subspace) -> Result<ExactMatrix> {
  let columns = w
    .basis()
    .iter()
    .enumerate()
    .map(|(i, v)| {
      let image = a.apply(field, v);
      w.coordinates(field, &image).map(|c| SparseVec::from_dense(&c)).ok_or(Error::InvariantViolation { witness: i })
    })
    .collect::<Result<Vec<_>>>()?;
  Ok(ExactMatrix::from_columns(w.dim(), &columns))
}

/// `H⁰ = V`, `Hⁿ = V/W` for `1 ≤ n ≤ h-1`, with `d` the projection, then identities, then zero.
#[derive(Clone, Debug)]
pub struct CanonicalComplex {
  pub space:           HDiffSpace,
  pub w:               Subspace,
  /// Coordinates of `V` whose classes form the basis of `V/W`.
  pub quotient_coords: Vec<usize>,
}

impl CanonicalComplex {
  pub fn ambient_dim(&self) -> usize { self.w.ambient_dim() }

  pub fn quotient_dim(&self) -> usize { self.quotient_coords.len() }

  /// Embedding of `V` as the degree-0 component.
  pub fn degree0_embedding(&self) -> ExactMatrix {
    let n = self.ambient_dim();
    ExactMatrix::from_triplets(self.space.dim(), n, (0..n).map(|i| (i, i, Scalar::one()))).expect("in range")
  }

  /// Checks that only degree 0 carries homology and that it equals `W` there, for every k.
  pub fn homology_only_in_degree0(&self, field: &Field) -> bool {
    let h = self.space.h();
    let n = self.ambient_dim();
    let powers = self.space.powers(field);
    (1..h).all(|k| {
      let hom = super::space::gen_homology(field, &self.space, k).expect("k in range");
      let degree_zero_kernel = crate::linalg::kernel_basis(field, &powers[k].submatrix(0..self.space.dim(), 0..n));
      hom.per_degree.as_ref().is_some_and(|pd| pd.iter().skip(1).all(|&x| x == 0) && pd[0] == self.w.dim())
        && degree_zero_kernel == self.w
    })
  }
}

pub fn canonical_hcomplex(field: &Field, ambient_dim: usize, w: &Subspace, h: usize) -> Result<CanonicalComplex> {
  if w.ambient_dim() != ambient_dim {
    return Err(Error::AmbientMismatch { left: ambient_dim, right: w.ambient_dim() });
  }
  let (coords, position) = quotient_positions(w);
  let c = coords.len();
  let total = ambient_dim + (h - 1) * c;
  let mut d = ExactMatrix::zeros(total, total);
  if h >= 2 && c > 0 {
    let pi: Vec<SparseVec> = (0..ambient_dim).map(|j| project(field, w, &position, &SparseVec::unit(j))).collect();
    d.add_block(field, ambient_dim, 0, &ExactMatrix::from_columns(c, &pi));
    for n in 1..h - 1 {
      let start = ambient_dim + (n - 1) * c;
      d.add_block(field, start + c, start, &ExactMatrix::identity(c));
    }
  }
  let mut grading = vec![ambient_dim];
  grading.extend(std::iter::repeat_n(c, h - 1));
  let space = HDiffSpace::graded(field, h, d, grading)?;
  Ok(CanonicalComplex { space, w: w.clone(), quotient_coords: coords })
}

/// The degree-0 extension of `a0`: `a0` on `H⁰`, `q^{2n}` times the induced quotient map on `Hⁿ`.
pub fn extend_endomorphism(field: &Field, cc: &CanonicalComplex, a0: &ExactMatrix) -> Result<ExactMatrix> {
  let h = cc.space.h();
  check_nilpotent(field, a0, h)?;
  let induced = induced_quotient_map(field, a0, &cc.w)?;
  let (n0, c) = (cc.ambient_dim(), cc.quotient_dim());
  let mut a = ExactMatrix::zeros(cc.space.dim(), cc.space.dim());
  a.add_block(field, 0, 0, a0);
  for n in 1..h {
    let start = n0 + (n - 1) * c;
    a.add_block(field, start, start, &induced.scale(field, &field.q_pow(2 * n as i64)));
  }
  Ok(a)
}

/// `Q = d + A` with its degree filtration.
#[derive(Clone, Debug)]
pub struct TotalComplex {
  pub space:      HDiffSpace,
  /// Start offsets of the degree components of the underlying graded space, plus the total dimension.
  pub boundaries: Vec<usize>,
}

pub fn total_differential(field: &Field, space: &HDiffSpace, a: &ExactMatrix) -> Result<TotalComplex> {
  let h = space.h();
  let d = space.d();
  check_nilpotent(field, a, h)?;
  let lhs = a.mul(field, d)?;
  let rhs = d.mul(field, a)?.scale(field, &field.q_pow(2));
  let diff = lhs.sub(field, &rhs)?;
  if let Some(witness) = diff.first_nonzero_column() {
    return Err(Error::QCommutation { witness });
  }
  let q = d.add(field, a)?;
  let boundaries = space.offsets().unwrap_or_else(|| vec![0, space.dim()]);
  Ok(TotalComplex { space: HDiffSpace::new(field, h, q)?, boundaries })
}

#[cfg(test)]
mod tests {
  use super::*;
  use crate::linalg::shift_block;
  use crate::ndiff::homology_report;

  #[test]
  fn cone_of_zero_is_a_shift() {
    let f = Field::new(2).unwrap();
    let s = cone(&f, &ExactMatrix::zeros(1, 1), 2).unwrap();
    assert_eq!(s.d(), &shift_block(2).transpose());
    assert_eq!(homology_report(&f, &s).dims, vec![0]);
  }

  #[test]
  fn cone_of_shift() {
    let f = Field::new(3).unwrap();
    let s = cone(&f, &shift_block(2), 3).unwrap();
    assert_eq!(s.dim(), 6);
    assert_eq!(homology_report(&f, &s).dims, vec![0, 0]);
  }

  #[test]
  fn canonical_complex_extremes() {
    let f = Field::new(2).unwrap();
    let full = canonical_hcomplex(&f, 3, &Subspace::full(3), 2).unwrap();
    assert_eq!(full.space.dim(), 3);
    assert!(full.space.d().is_zero());
    assert!(full.homology_only_in_degree0(&f));
    let zero = canonical_hcomplex(&f, 1, &Subspace::zero(1), 2).unwrap();
    assert_eq!(zero.space.dim(), 2);
    assert_eq!(homology_report(&f, &zero.space).per_degree, Some(vec![vec![0, 0]]));
    assert!(zero.homology_only_in_degree0(&f));
  }

  #[test]
  fn extension_and_total_differential() {
    // V = C^3 with A0 = shift, W = span(e0) is invariant
    let f = Field::new(3).unwrap();
    let a0 = shift_block(3);
    let w = Subspace::coordinate(3, [0]);
    let cc = canonical_hcomplex(&f, 3, &w, 3).unwrap();
    assert!(cc.homology_only_in_degree0(&f));
    let a = extend_endomorphism(&f, &cc, &a0).unwrap();
    let tot = total_differential(&f, &cc.space, &a).unwrap();
    assert_eq!(tot.boundaries, vec![0, 3, 5, 7]);
    // W with A0|W = 0 has H_(1) = H_(2) = 1
    assert_eq!(homology_report(&f, &tot.space).dims, vec![1, 1]);
    let bad = Subspace::coordinate(3, [1]);
    let cc = canonical_hcomplex(&f, 3, &bad, 3).unwrap();
    assert!(matches!(extend_endomorphism(&f, &cc, &a0), Err(Error::InvariantViolation { witness: 0 })));
  }

  #[test]
  fn zero_extension_and_trivial_totals() {
    let f = Field::new(2).unwrap();
    let cc = canonical_hcomplex(&f, 2, &Subspace::coordinate(2, [0]), 2).unwrap();
    let a = extend_endomorphism(&f, &cc, &ExactMatrix::zeros(2, 2)).unwrap();
    assert!(a.is_zero());
    let tot = total_differential(&f, &cc.space, &a).unwrap();
    assert_eq!(tot.space.d(), cc.space.d());
    let only_a = HDiffSpace::new(&f, 2, ExactMatrix::zeros(2, 2)).unwrap();
    let tot = total_differential(&f, &only_a, &shift_block(2)).unwrap();
    assert_eq!(tot.space.d(), &shift_block(2));
  }

  #[test]
  fn q_commutation_failure() {
    let f = Field::new(3).unwrap();
    let space = HDiffSpace::new(&f, 3, shift_block(3)).unwrap();
    assert!(matches!(total_differential(&f, &space, &shift_block(3)), Err(Error::QCommutation { .. })));
  }
}
