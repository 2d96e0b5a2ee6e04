//! The invariant subspace `H_I` and its distinguished basis `|n>_I`.

use super::bilinear::{pair_diag, Bilinears};
use super::fock::FockSpace;
use super::quea::Quea;
use crate::cyclo::Field;
use crate::error::{Error, Result};
use crate::linalg::{kernel_basis, ExactMatrix, SparseVec, Subspace};
use crate::ndiff::{gen_homology, restrict_to, HDiffSpace};
use crate::report::Check;

/// Joint kernel of `Δ(E), Δ(F), Δ(K)-1, B, B', q^{p-p̄}-1`.
pub fn invariant_subspace(field: &Field, quea: &Quea, bl: &Bilinears) -> Subspace {
  let n = quea.dk.rows();
  let one = ExactMatrix::identity(n);
  let dk = quea.dk.sub(field, &one).expect("same shape");
  let qd = quea.q_pmp.sub(field, &one).expect("same shape");
  let stack = ExactMatrix::vstack(&[&quea.de, &quea.df, &dk, &bl.b, &bl.b_prime, &qd]).expect("same width");
  kernel_basis(field, &stack)
}

/// Index of `|1,0>⊗|1,0>` in `H`.
pub fn pair_vacuum(fock: &FockSpace) -> usize { fock.vacuum() * fock.dim() + fock.vacuum() }

/// `|n+1>_I = Σ_{ℓ=m}^{n-m} q^{ℓ(n-ℓ)} (A'₁)^{[ℓ]} (A'₂)^{[n-ℓ]} |vac>` for `n = 0..2h-2`, with
/// `m = max(0, n-h+1)`. Only divided powers below `h` occur.
pub fn invariant_basis(field: &Field, fock: &FockSpace, bl: &Bilinears) -> Result<Vec<SparseVec>> {
  let h = fock.h() as i64;
  let vac = SparseVec::unit(pair_vacuum(fock));
  // (A'₂)^j |vac> for j < h
  let mut a2_pows = vec![vac];
  for j in 1..h as usize {
    let next = bl.ap_parts[1].apply(field, &a2_pows[j - 1]);
    a2_pows.push(next);
  }
  let apply_a1 = |k: i64, v: &SparseVec| (0..k).fold(v.clone(), |acc, _| bl.ap_parts[0].apply(field, &acc));
  (0..=2 * h - 2)
    .map(|n| {
      let m = (n - h + 1).max(0);
      (m..=n - m).try_fold(SparseVec::new(), |acc, l| {
        let c = field.mul(
          &field.mul(&field.q_pow(l * (n - l)), &field.q_divided_power_coeff(l)?),
          &field.q_divided_power_coeff(n - l)?,
        );
        Ok(acc.axpy(field, &c, &apply_a1(l, &a2_pows[(n - l) as usize])))
      })
    })
    .collect()
}

/// Membership of each `|n>_I` in `H_I`, independence, `A|n>_I = [n]|n-1>_I` with `|0>_I = 0`,
/// and `([p] - [n])|n>_I = 0`.
pub fn verify_invariant_basis(field: &Field, fock: &FockSpace, a: &ExactMatrix, h_i: &Subspace, basis: &[SparseVec]) -> Vec<Check> {
  let bracket_p = pair_diag(fock, |p, _| field.q_int(p));
  let mut out = Vec::new();
  let outside = basis.iter().position(|v| !h_i.contains_vector(field, v));
  out.push(Check::from_witness("inv_basis_in_h_i", outside.map(|i| format!("|{}>_I", i + 1))));
  let span = Subspace::from_vectors(field, a.rows(), basis.to_vec());
  out.push(Check::expect_eq("inv_basis_spans_h_i", (span.dim(), span == *h_i), (basis.len(), true)));
  let lowering = (1..=basis.len()).find(|&n| {
    let lhs = a.apply(field, &basis[n - 1]);
    let rhs = if n == 1 { SparseVec::new() } else { basis[n - 2].scale(field, &field.q_int(n as i64)) };
    lhs != rhs
  });
  out.push(Check::from_witness("a_lowers_inv_basis", lowering.map(|n| format!("|{n}>_I"))));
  let weight = (1..=basis.len()).find(|&n| {
    let v = &basis[n - 1];
    !bracket_p.apply(field, v).sub(field, &v.scale(field, &field.q_int(n as i64))).is_zero()
  });
  out.push(Check::from_witness("p_weight_inv_basis", weight.map(|n| format!("|{n}>_I"))));
  out
}

/// Generalized homology of `A` on `H_I`.
#[derive(Clone, Debug)]
pub struct InvariantHomology {
  pub dims:   Vec<usize>,
  pub checks: Vec<Check>,
}

/// `H_(n)(H_I, A)` for `n = 1..h-1`, each expected one-dimensional and generated by `|n>_I`.
pub fn invariant_homology(field: &Field, h: usize, a: &ExactMatrix, h_i: &Subspace, basis: &[SparseVec]) -> Result<InvariantHomology> {
  let mut checks = Vec::new();
  let restricted = match restrict_to(field, a, h_i) {
    Ok(r) => {
      checks.push(Check::pass("a_preserves_h_i"));
      r
    }
    Err(Error::InvariantViolation { witness }) => {
      checks.push(Check::fail("a_preserves_h_i", format!("basis vector {witness} of H_I")));
      return Ok(InvariantHomology { dims: Vec::new(), checks });
    }
    Err(e) => return Err(e),
  };
  let space = HDiffSpace::new(field, h, restricted)?;
  let mut dims = Vec::new();
  for n in 1..h {
    let hom = gen_homology(field, &space, n)?;
    dims.push(hom.dim);
    checks.push(Check::expect_eq(format!("h_{n}_dim"), hom.dim, 1));
    let coords = h_i
      .coordinates(field, &basis[n - 1])
      .map(|c| SparseVec::from_dense(&c))
      .ok_or_else(|| Error::ModelConstruction(format!("|{n}>_I is not in H_I")))?;
    let in_ker = hom.kernel.contains_vector(field, &coords);
    let in_im = hom.image.contains_vector(field, &coords);
    let witness = match (in_ker, in_im) {
      (true, false) => None,
      (false, _) => Some(format!("|{n}>_I not in Ker A^{n}")),
      (true, true) => Some(format!("|{n}>_I in Im A^{}", h - n)),
    };
    checks.push(Check::from_witness(format!("h_{n}_generator"), witness));
  }
  Ok(InvariantHomology { dims, checks })
}
