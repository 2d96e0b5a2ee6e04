//! The zero-mode h-complex `H•` with `Q = d + A`.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::cyclo::Field;
use crate::error::{Error, Result};
use crate::linalg::{kernel_basis, rank, ExactMatrix};
use crate::ndiff::{
  canonical_hcomplex, cone, extend_endomorphism, gen_homology, homology_report, induced_quotient_map, random_nilpotent,
  CanonicalComplex, HDiffSpace,
};
use crate::report::{Check, SuiteReport};
use crate::wznw::{invariant_homology, ZeroModeModel};

/// `H⁰ = H`, `Hⁿ = H/H_I` for `1 ≤ n ≤ h-1`, with the extension of `A` and `Q = d + A`.
#[derive(Clone, Debug)]
pub struct ZeroModeComplex {
  pub canonical: CanonicalComplex,
  pub a:         ExactMatrix,
  pub q:         ExactMatrix,
}

impl ZeroModeComplex {
  pub fn h(&self) -> usize { self.canonical.space.h() }

  pub fn dim(&self) -> usize { self.q.rows() }

  pub fn d(&self) -> &ExactMatrix { self.canonical.space.d() }

  /// `(H•, Q)` as an h-differential space; fails if `Q^h ≠ 0`.
  pub fn q_space(&self, field: &Field) -> Result<HDiffSpace> { HDiffSpace::new(field, self.h(), self.q.clone()) }
}

/// Assembles `H•`, extends `A` and forms `Q` without checking the identities.
pub fn build_zero_mode_complex(model: &ZeroModeModel) -> Result<ZeroModeComplex> {
  let f = &model.field;
  let canonical = canonical_hcomplex(f, model.h_dim(), &model.h_i, model.h())?;
  let a = extend_endomorphism(f, &canonical, &model.bilinears.a)?;
  let q = canonical.space.d().add(f, &a)?;
  Ok(ZeroModeComplex { canonical, a, q })
}

/// `h⁴ + (h-1)(h⁴ - 2h + 1)`.
pub fn expected_total_dim(h: usize) -> usize { h.pow(4) + (h - 1) * (h.pow(4) - 2 * h + 1) }

fn nonzero_witness(m: &ExactMatrix) -> Option<String> { m.first_nonzero_column().map(|c| format!("column {c}")) }

/// `β : H• → E•`: the quotient map in degree 0 and the identity in degrees `1..h-1`.
fn beta(field: &Field, cx: &ZeroModeComplex) -> ExactMatrix {
  let cc = &cx.canonical;
  let (n0, c, h) = (cc.ambient_dim(), cc.quotient_dim(), cx.h());
  let mut b = ExactMatrix::zeros(h * c, cx.dim());
  b.add_block(field, 0, 0, &cc.space.d().submatrix(n0..n0 + c, 0..n0));
  for n in 1..h {
    b.add_block(field, n * c, n0 + (n - 1) * c, &ExactMatrix::identity(c));
  }
  b
}

/// Generalized homology of `(H•, Q)` against that of `(H_I, A)`, the identities for `d`, `A` and
/// `Q`, and the short exact sequence `0 → H_I → H• → E• → 0` with the acyclic cone `E•` on
/// `H/H_I`. `trials` further cones on random nilpotent matrices must be acyclic too.
pub fn verify_theorem1(model: &ZeroModeModel, trials: usize, seed: u64) -> Result<SuiteReport> {
  let f = &model.field;
  let h = model.h();
  let a0 = &model.bilinears.a;
  let mut r = SuiteReport::new("theorem1", h);
  r.seed = Some(seed);
  let cx = build_zero_mode_complex(model)?;
  let (n0, total) = (model.h_dim(), cx.dim());
  let d = cx.d();
  r.push(Check::expect_eq("total_dim", total, expected_total_dim(h)));
  r.push(Check::expect_eq("homology_only_in_degree0", cx.canonical.homology_only_in_degree0(f), true));

  // A d = q² d A, A^h = 0, Q^h = 0
  let ad = cx.a.mul(f, d)?;
  let da = d.mul(f, &cx.a)?.scale(f, &f.q_pow(2));
  r.push(Check::from_witness("a_d_q_commute", nonzero_witness(&ad.sub(f, &da)?)));
  r.push(Check::from_witness("a_nilpotent", nonzero_witness(&cx.a.pow(f, h)?)));
  r.push(Check::from_witness("q_nilpotent", nonzero_witness(&cx.q.pow(f, h)?)));
  if !r.passed() {
    return Ok(r);
  }

  // Q agrees with A on H_I in degree 0
  let q_on_h_i = model.h_i.basis().iter().position(|v| cx.q.apply(f, v) != a0.apply(f, v));
  r.push(Check::from_witness("q_is_a_on_h_i", q_on_h_i.map(|i| format!("H_I basis vector {i}"))));

  let space = cx.q_space(f)?;
  let t0 = invariant_homology(f, h, a0, &model.h_i, &model.inv_basis)?;
  let mut dims = Vec::new();
  for k in 1..h {
    let hom = gen_homology(f, &space, k)?;
    dims.push(hom.dim);
    r.push(Check::expect_eq(format!("h_{k}_dim"), hom.dim, 1));
    // α(|k>_I) generates H_(k)(H•, Q)
    let v = &model.inv_basis[k - 1];
    let witness = match (hom.kernel.contains_vector(f, v), hom.image.contains_vector(f, v)) {
      (true, false) => None,
      (false, _) => Some(format!("|{k}>_I not in Ker Q^{k}")),
      (true, true) => Some(format!("|{k}>_I in Im Q^{}", h - k)),
    };
    r.push(Check::from_witness(format!("h_{k}_generator"), witness));
  }
  r.push(Check::expect_eq("matches_h_i_homology", dims.clone(), t0.dims.clone()));

  // 0 → (H_I, A) → (H•, Q) → (E•, δ + ℒ) → 0
  let induced = induced_quotient_map(f, a0, &model.h_i)?;
  let e = cone(f, &induced, h)?;
  let b = beta(f, &cx);
  let alpha = ExactMatrix::from_columns(total, model.h_i.basis());
  let a_on_h_i = crate::ndiff::restrict_to(f, a0, &model.h_i)?;
  r.push(Check::from_witness("alpha_chain_map", nonzero_witness(&cx.q.mul(f, &alpha)?.sub(f, &alpha.mul(f, &a_on_h_i)?)?)));
  r.push(Check::from_witness("beta_chain_map", nonzero_witness(&b.mul(f, &cx.q)?.sub(f, &e.d().mul(f, &b)?)?)));
  r.push(Check::from_witness("beta_after_alpha", nonzero_witness(&b.mul(f, &alpha)?)));
  let (rank_alpha, rank_beta, ker_beta) = (rank(f, &alpha), rank(f, &b), kernel_basis(f, &b).dim());
  r.push(Check::expect_eq("alpha_injective", rank_alpha, model.h_i.dim()));
  r.push(Check::expect_eq("beta_surjective", rank_beta, e.dim()));
  r.push(Check::expect_eq("exact_in_middle", ker_beta, rank_alpha));
  r.push(Check::expect_eq("dimension_ledger", total, model.h_i.dim() + e.dim()));
  let cone_dims = homology_report(f, &e).dims;
  r.push(Check::expect_eq("cone_acyclic", cone_dims.clone(), vec![0; h - 1]));

  let mut rng = ChaCha8Rng::seed_from_u64(seed);
  let mut bad = None;
  for t in 0..trials {
    let dim = rng.gen_range(1..=10);
    let (l, _) = random_nilpotent(f, dim, h, &mut rng);
    let dims = homology_report(f, &cone(f, &l, h)?).dims;
    if dims.iter().any(|&x| x != 0) && bad.is_none() {
      bad = Some(format!("trial {t} (dim {dim}): {dims:?}"));
    }
  }
  r.push(Check::from_witness("random_cones_acyclic", bad));
  r.record("dims", dims);
  r.record("h_i_dims", t0.dims);
  r.record("cone_dims", cone_dims);
  r.record("total_dim", total);
  r.record("degree0_dim", n0);
  r.record("cone_trials", trials);
  Ok(r)
}

/// Whether the kernel of `d` on the degree-0 component is exactly `H_I`.
pub fn degree0_kernel_of_d(model: &ZeroModeModel, cx: &ZeroModeComplex) -> Result<bool> {
  let f = &model.field;
  let n0 = model.h_dim();
  let d0 = cx.d().submatrix(0..cx.dim(), 0..n0);
  let ker = kernel_basis(f, &d0);
  if ker.ambient_dim() != n0 {
    return Err(Error::Dimension("degree-0 block".into()));
  }
  Ok(ker == model.h_i)
}

#[cfg(test)]
mod tests {
  use super::*;

  #[test]
  fn theorem1_small_heights() {
    for h in 2..=3 {
      let m = ZeroModeModel::build(h).unwrap();
      let r = verify_theorem1(&m, 5, 1).unwrap();
      assert!(r.passed(), "h={h}: {:?}", r.failures().collect::<Vec<_>>());
      assert_eq!(r.data["dims"], serde_json::json!(vec![1; h - 1]));
      let cx = build_zero_mode_complex(&m).unwrap();
      assert!(degree0_kernel_of_d(&m, &cx).unwrap());
    }
  }

  #[test]
  fn total_dimension_formula() {
    assert_eq!(expected_total_dim(2), 16 + 13);
    assert_eq!(expected_total_dim(3), 81 + 2 * 76);
  }
}
