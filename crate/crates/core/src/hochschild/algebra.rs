//! The algebra generated by the quantum group actions inside `End(H)`.

use std::collections::HashMap;
use std::sync::Mutex;

use crate::cyclo::{Field, Scalar};
use crate::error::{Error, Result};
use crate::linalg::{ExactMatrix, SparseVec, Subspace};
use crate::report::Check;
use crate::wznw::{pair_vacuum, ZeroModeModel};

/// Finite-dimensional algebra spanned by products of generators acting on `H`.
///
/// Elements are identified with their matrices flattened row-major into `F^{N²}`. The basis is
/// kept in echelon form with distinct, normalized leading entries; basis element 0 is the
/// identity.
#[derive(Debug)]
pub struct ImageAlgebra {
  field:      Field,
  n:          usize,
  vacuum:     usize,
  generators: Vec<(String, ExactMatrix)>,
  basis:      Vec<ExactMatrix>,
  flat:       Vec<SparseVec>,
  lead:       HashMap<usize, usize>,
  counit:     Vec<Scalar>,
  table:      Mutex<HashMap<(usize, usize), SparseVec>>,
}

fn flatten(m: &ExactMatrix) -> SparseVec {
  let n = m.cols();
  SparseVec::from_entries(m.triplets().map(|(i, j, v)| (i * n + j, v.clone())))
}

fn unflatten(v: &SparseVec, n: usize) -> ExactMatrix {
  ExactMatrix::from_triplets(n, n, v.iter().map(|(k, c)| (k / n, k % n, c.clone()))).expect("in range")
}

impl ImageAlgebra {
  /// Generated by `Δ(E), Δ(F), Δ(K^{±1/2}), B, B', q^{±(p-p̄)}` and the identity.
  pub fn build(model: &ZeroModeModel) -> Result<Self> {
    let q = &model.quea;
    let gens = vec![
      ("delta_e".to_string(), q.de.clone()),
      ("delta_f".to_string(), q.df.clone()),
      ("delta_k_half".to_string(), q.dk_half.clone()),
      ("delta_k_half_inv".to_string(), q.dk_half_inv.clone()),
      ("b".to_string(), model.bilinears.b.clone()),
      ("b_prime".to_string(), model.bilinears.b_prime.clone()),
      ("q_p_minus_pbar".to_string(), q.q_pmp.clone()),
      ("q_p_minus_pbar_inv".to_string(), q.q_pmp_inv.clone()),
    ];
    Self::from_generators(&model.field, gens, pair_vacuum(&model.fock))
  }

  /// Saturates the span of the identity under left multiplication by `gens`.
  ///
  /// `vacuum` indexes a common eigenvector of all generators; the counit is the eigenvalue.
  pub fn from_generators(field: &Field, gens: Vec<(String, ExactMatrix)>, vacuum: usize) -> Result<Self> {
    let n = gens.first().map(|(_, g)| g.rows()).ok_or_else(|| Error::Dimension("no generators".into()))?;
    if gens.iter().any(|(_, g)| g.rows() != n || g.cols() != n) {
      return Err(Error::Dimension("generators must be square of equal size".into()));
    }
    let mut alg = ImageAlgebra {
      field: field.clone(),
      n,
      vacuum,
      generators: gens,
      basis: Vec::new(),
      flat: Vec::new(),
      lead: HashMap::new(),
      counit: Vec::new(),
      table: Mutex::new(HashMap::new()),
    };
    alg.insert(&ExactMatrix::identity(n));
    let mut next = 0;
    while next < alg.basis.len() {
      let x = alg.basis[next].clone();
      for g in 0..alg.generators.len() {
        let y = alg.generators[g].1.mul(field, &x)?;
        alg.insert(&y);
      }
      next += 1;
    }
    if let Some(i) = (0..alg.dim()).find(|&i| !alg.fixes_vacuum_line(&alg.basis[i])) {
      return Err(Error::Mismatch(format!("basis element {i} does not preserve the vacuum line; no counit")));
    }
    alg.counit = alg.basis.iter().map(|x| x.get(vacuum, vacuum)).collect();
    Ok(alg)
  }

  fn fixes_vacuum_line(&self, x: &ExactMatrix) -> bool {
    x.column(self.vacuum).iter().all(|(i, _)| *i == self.vacuum)
  }

  /// Adds `m` to the basis if it is independent; returns whether it was added.
  fn insert(&mut self, m: &ExactMatrix) -> bool {
    let (rest, _) = self.reduce(flatten(m));
    let Some((l, c)) = rest.leading() else { return false };
    let inv = self.field.inv(c).expect("leading entry is nonzero");
    let row = rest.scale(&self.field, &inv);
    self.lead.insert(l, self.flat.len());
    self.basis.push(unflatten(&row, self.n));
    self.flat.push(row);
    true
  }

  /// Strips leading entries that are basis pivots; returns the remainder and the coefficients used.
  fn reduce(&self, mut v: SparseVec) -> (SparseVec, SparseVec) {
    let mut coeffs = Vec::new();
    while let Some((l, c)) = v.leading() {
      let Some(&r) = self.lead.get(&l) else { break };
      let c = c.clone();
      v = v.axpy(&self.field, &-&c, &self.flat[r]);
      coeffs.push((r, c));
    }
    (v, SparseVec::from_entries(coeffs))
  }

  pub fn field(&self) -> &Field { &self.field }

  pub fn dim(&self) -> usize { self.basis.len() }

  /// Dimension of the space acted on.
  pub fn module_dim(&self) -> usize { self.n }

  pub fn basis(&self) -> &[ExactMatrix] { &self.basis }

  pub fn generators(&self) -> &[(String, ExactMatrix)] { &self.generators }

  pub fn unit_index(&self) -> usize { 0 }

  pub fn vacuum(&self) -> usize { self.vacuum }

  pub fn counit(&self) -> &[Scalar] { &self.counit }

  /// `ε(x)`, read off the vacuum.
  pub fn counit_of(&self, x: &ExactMatrix) -> Scalar { x.get(self.vacuum, self.vacuum) }

  /// Coordinates of `m` in the basis, or `None` if `m` is not in the algebra.
  pub fn coordinates(&self, m: &ExactMatrix) -> Option<SparseVec> {
    let (rest, coeffs) = self.reduce(flatten(m));
    rest.is_zero().then_some(coeffs)
  }

  pub fn element(&self, coords: &SparseVec) -> ExactMatrix {
    let flat = coords.iter().fold(SparseVec::new(), |acc, (i, c)| acc.axpy(&self.field, c, &self.flat[*i]));
    unflatten(&flat, self.n)
  }

  /// Structure constants of `x_a x_b`, computed on first use.
  pub fn mul(&self, a: usize, b: usize) -> SparseVec {
    if let Some(v) = self.table.lock().expect("table lock").get(&(a, b)) {
      return v.clone();
    }
    let prod = self.basis[a].mul(&self.field, &self.basis[b]).expect("square");
    let coords = self.coordinates(&prod).expect("the algebra is closed under products");
    self.table.lock().expect("table lock").insert((a, b), coords.clone());
    coords
  }

  /// Unit, closure under the generators, counit values and multiplicativity, and the
  /// invariance `XΨ = ε(X)Ψ` on every basis vector of `h_i`.
  pub fn verify(&self, h_i: &Subspace) -> Vec<Check> {
    let f = &self.field;
    let mut out = vec![Check::expect_eq("unit_is_identity", self.basis[0] == ExactMatrix::identity(self.n), true)];
    out.push(Check::expect_eq("counit_unit", self.counit[0].is_one(), true));
    let mut closure = None;
    let mut character = None;
    'outer: for (name, g) in &self.generators {
      let eg = self.counit_of(g);
      for (i, x) in self.basis.iter().enumerate() {
        let y = g.mul(f, x).expect("square");
        if self.coordinates(&y).is_none() {
          closure = Some(format!("{name}·x_{i}"));
          break 'outer;
        }
        if character.is_none() && self.counit_of(&y) != f.mul(&eg, &self.counit[i]) {
          character = Some(format!("ε({name}·x_{i})"));
        }
      }
    }
    out.push(Check::from_witness("closed_under_generators", closure));
    out.push(Check::from_witness("counit_multiplicative", character));
    for (name, g) in &self.generators {
      let expected = if name.starts_with("delta_e") || name.starts_with("delta_f") || name.starts_with("b") { 0 } else { 1 };
      out.push(Check::expect_eq(format!("counit_{name}"), self.counit_of(g), Scalar::from_int(expected)));
    }
    let broken = self.basis.iter().enumerate().find_map(|(i, x)| {
      h_i.basis().iter().position(|v| x.apply(f, v) != v.scale(f, &self.counit[i])).map(|j| format!("x_{i} on H_I basis vector {j}"))
    });
    out.push(Check::from_witness("invariant_vectors_see_counit", broken));
    out
  }
}

#[cfg(test)]
mod tests {
  use super::*;

  #[test]
  fn diagonal_generators_span_their_idempotents() {
    // q^{diag(0,1,2)} at h=3 generates all diagonal matrices (distinct eigenvalues)
    let f = Field::new(3).unwrap();
    let g = ExactMatrix::diagonal(vec![Scalar::one(), f.q(), f.q_pow(2)]);
    let alg = ImageAlgebra::from_generators(&f, vec![("g".into(), g.clone())], 0).unwrap();
    assert_eq!(alg.dim(), 3);
    // echelon basis: I, then elements vanishing at the vacuum coordinate
    assert_eq!(alg.counit(), &[Scalar::one(), Scalar::zero(), Scalar::zero()]);
    let sq = g.mul(&f, &g).unwrap();
    assert!(alg.counit_of(&sq).is_one());
    let c = alg.coordinates(&sq).unwrap();
    assert_eq!(alg.element(&c), sq);
    assert!(alg.coordinates(&shift()).is_none());
  }

  fn shift() -> ExactMatrix { crate::linalg::shift_block(3) }

  #[test]
  fn model_algebra_h2() {
    let m = ZeroModeModel::build(2).unwrap();
    let alg = ImageAlgebra::build(&m).unwrap();
    for c in alg.verify(&m.h_i) {
      assert!(c.passed(), "{c:?}");
    }
    // structure constants agree with matrix products
    for a in 0..alg.dim() {
      for b in 0..alg.dim() {
        let prod = alg.basis()[a].mul(alg.field(), &alg.basis()[b]).unwrap();
        assert_eq!(alg.element(&alg.mul(a, b)), prod);
      }
    }
  }
}
