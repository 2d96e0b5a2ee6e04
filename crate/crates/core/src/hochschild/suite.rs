//! Checks on the Hochschild h-complex and its filtered homology in degree zero.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use super::algebra::ImageAlgebra;
use super::cochain::{multi_indices, random_cochain, Evaluator, Term};
use crate::cyclo::Scalar;
use crate::error::Result;
use crate::linalg::{kernel_basis, ExactMatrix, SparseVec, Subspace};
use crate::report::{Check, SuiteReport};
use crate::wznw::ZeroModeModel;

/// Largest number of evaluation points the exhaustive checks will visit for one power.
pub const EXHAUSTIVE_LIMIT: usize = 200_000;

/// Evaluation points drawn when a check cannot visit every multi-index.
const SAMPLED_POINTS: usize = 400;

fn words(idx: &[usize]) -> Vec<Vec<usize>> { idx.iter().map(|&i| vec![i]).collect() }

/// `(1, …, 1, X)` for every basis element `X`, then every multi-index of length `len`.
fn points_unit_first(dim: usize, len: usize) -> impl Iterator<Item = Vec<usize>> {
  let units = (0..dim).map(move |x| {
    let mut p = vec![0; len];
    if let Some(last) = p.last_mut() {
      *last = x;
    }
    p
  });
  units.chain(multi_indices(dim, len))
}

/// Columns `Ψ` of `start` (as a span) with `build(Ψ)` vanishing at every point; stops early once
/// the span is zero.
fn common_kernel(
  ev: &Evaluator,
  start: ExactMatrix,
  eval: impl Fn(&ExactMatrix, &[Vec<usize>]) -> ExactMatrix,
  points: impl Iterator<Item = Vec<usize>>,
) -> Subspace {
  let f = ev.algebra().field();
  let n = start.rows();
  let mut basis = start;
  for p in points {
    if basis.cols() == 0 {
      break;
    }
    let values = eval(&basis, &words(&p));
    if values.is_zero() {
      continue;
    }
    let keep = kernel_basis(f, &values);
    basis = basis.mul(f, &ExactMatrix::from_columns(basis.cols(), keep.basis())).expect("shapes agree");
  }
  Subspace::from_vectors(f, n, basis.columns())
}

fn exhaustive_count(dim: usize, len: usize) -> Option<usize> {
  dim.checked_pow(len as u32).filter(|&c| c <= EXHAUSTIVE_LIMIT)
}

/// `d = d_H` on `H`: `dΨ(X) = XΨ − Ψε(X)` for every basis element.
pub fn verify_degree0(ev: &Evaluator) -> Check {
  let alg = ev.algebra();
  let f = alg.field();
  let id = ExactMatrix::identity(alg.module_dim());
  let t = Term::Batch(&id).d();
  let bad = alg.basis().iter().enumerate().find_map(|(i, x)| {
    let expected = x.sub(f, &id.scale(f, &alg.counit()[i])).expect("square");
    (ev.eval(&t, &[vec![i]]) != expected).then(|| format!("x_{i}"))
  });
  Check::from_witness("degree0_is_hochschild", bad)
}

/// `(1+q²)(1+q²+q⁴)⋯(1+⋯+q^{2(n-1)})`.
pub fn unit_prefix_factor(field: &crate::cyclo::Field, n: usize) -> Scalar {
  (1..=n as u64).fold(Scalar::one(), |acc, j| field.mul(&acc, &field.q2_partial_sum(j)))
}

/// `dⁿΨ(1,…,1,X) = c_n dΨ(X)` for `n = 1..h-1`, every basis element `X` and all `Ψ` at once.
pub fn verify_unit_prefix(ev: &Evaluator, h: usize) -> Vec<Check> {
  let alg = ev.algebra();
  let f = alg.field();
  let id = ExactMatrix::identity(alg.module_dim());
  let once = Term::Batch(&id).d();
  let mut out = Vec::new();
  for n in 1..h {
    let t = Term::Batch(&id).d_pow(n);
    let c = unit_prefix_factor(f, n);
    let bad = (0..alg.dim()).find_map(|x| {
      let mut args = vec![vec![0]; n];
      args[n - 1] = vec![x];
      let lhs = ev.eval(&t, &args);
      (lhs != ev.eval(&once, &[vec![x]]).scale(f, &c)).then(|| format!("X = x_{x}"))
    });
    out.push(Check::from_witness(format!("unit_prefix_n{n}"), bad));
    out.push(Check::expect_eq(format!("unit_prefix_factor_nonzero_n{n}"), c.is_zero(), false));
  }
  out.push(Check::expect_eq("unit_prefix_factor_vanishes_at_h", unit_prefix_factor(f, h).is_zero(), true));
  out
}

/// How `Ker dᵏ` on `H` was obtained.
#[derive(Clone, Debug, Serialize)]
pub struct PowerKernel {
  pub k:          usize,
  pub dim:        usize,
  pub points:     usize,
  pub exhaustive: bool,
}

/// `Ker(dᵏ : H → Cᵏ)` for `k = 1..=h`, visiting every multi-index when there are at most
/// [`EXHAUSTIVE_LIMIT`], otherwise the `(1,…,1,X)` points and a seeded sample.
pub fn d_power_kernels(ev: &Evaluator, h: usize, rng: &mut impl Rng) -> Vec<(PowerKernel, Subspace)> {
  let alg = ev.algebra();
  let n = alg.module_dim();
  (1..=h)
    .map(|k| {
      let (points, exhaustive): (Vec<Vec<usize>>, bool) = match exhaustive_count(alg.dim(), k) {
        Some(_) => (points_unit_first(alg.dim(), k).collect(), true),
        None => {
          let mut pts: Vec<Vec<usize>> = points_unit_first(alg.dim(), k).take(alg.dim()).collect();
          pts.extend((0..SAMPLED_POINTS).map(|_| (0..k).map(|_| rng.gen_range(0..alg.dim())).collect()));
          (pts, false)
        }
      };
      let count = points.len();
      let ker = common_kernel(ev, ExactMatrix::identity(n), |b, p| ev.eval(&Term::Batch(b).d_pow(k), p), points.into_iter());
      (PowerKernel { k, dim: ker.dim(), points: count, exhaustive }, ker)
    })
    .collect()
}

/// On a full basis of `H`: `Ker dᵏ = H_I` for every `k = 1..h-1`, so vanishing of any
/// single power, invariance and vanishing of all powers coincide.
pub fn verify_power_kernels(model: &ZeroModeModel, kernels: &[(PowerKernel, Subspace)]) -> Vec<Check> {
  let h = model.h();
  let mut out: Vec<Check> = kernels
    .iter()
    .filter(|(pk, _)| pk.k < h)
    .map(|(pk, ker)| {
      let witness = (*ker != model.h_i).then(|| format!("dim Ker d^{} = {} vs dim H_I = {}", pk.k, ker.dim(), model.h_i.dim()));
      Check::from_witness(format!("kernel_d{}", pk.k), witness)
    })
    .collect();
  let vac = SparseVec::unit(crate::wznw::pair_vacuum(&model.fock));
  let vac_ok = kernels.iter().all(|(_, ker)| ker.contains_vector(&model.field, &vac));
  out.push(Check::expect_eq("vacuum_in_power_kernels", vac_ok, true));
  out
}

/// `dim dʲ(H) = h⁴ − (2h−1)` for `j = 1..h-1`, and `dʰ(H) = 0`.
pub fn verify_power_ranks(model: &ZeroModeModel, kernels: &[(PowerKernel, Subspace)]) -> (Vec<Check>, Vec<usize>) {
  let h = model.h();
  let n = model.h_dim();
  let mut out = Vec::new();
  let mut ranks = Vec::new();
  for (pk, ker) in kernels {
    let r = n - ker.dim();
    ranks.push(r);
    let expected = if pk.k < h { n - (2 * h - 1) } else { 0 };
    out.push(Check::expect_eq(format!("rank_d{}", pk.k), r, expected));
  }
  (out, ranks)
}

/// Counts of nonzero evaluations, showing the identity checks are not vacuous.
#[derive(Clone, Debug, Default, Serialize)]
pub struct IdentityStats {
  pub trials:                usize,
  pub points:                usize,
  pub nonzero_d_pow_h_minus_1: usize,
  pub nonzero_a_pow_h_minus_1: usize,
  pub nonzero_d:             usize,
}

/// A point of length `len` built around a support index of `w`, padded with units and random
/// basis elements.
fn sample_point(w_support: &[Vec<usize>], dim: usize, len: usize, rng: &mut impl Rng) -> Vec<usize> {
  let mut p: Vec<usize> = match w_support.get(rng.gen_range(0..w_support.len().max(1))) {
    Some(s) => s.iter().map(|&i| if rng.gen_bool(0.25) { rng.gen_range(0..dim) } else { i }).collect(),
    None => Vec::new(),
  };
  p.truncate(len);
  while p.len() < len {
    let pos = rng.gen_range(0..=p.len());
    let x = if rng.gen_bool(0.5) { 0 } else { rng.gen_range(0..dim) };
    p.insert(pos, x);
  }
  p
}

/// `dʰ = 0`, `Ad − q²dA = 0`, `Af_α = q²f_αA`, `Aʰ = 0` and `(d+A)ʰ = 0` on seeded random sparse
/// cochains of degree `0..=max_degree`, each evaluated at `points` sampled multi-indices per
/// identity and component.
pub fn verify_identities(
  ev: &Evaluator,
  a: &ExactMatrix,
  h: usize,
  max_degree: usize,
  trials: usize,
  points: usize,
  rng: &mut impl Rng,
) -> (Vec<Check>, IdentityStats) {
  let alg = ev.algebra();
  let f = alg.field();
  let (dim, n) = (alg.dim(), alg.module_dim());
  let q2 = f.q_pow(2);
  let mut stats = IdentityStats { trials, ..Default::default() };
  let mut fails: [Option<String>; 5] = Default::default();
  let names = ["d_pow_h_vanishes", "a_d_q_commute", "a_face_q_commute", "a_pow_h_vanishes", "q_pow_h_vanishes"];
  let mut note = |slot: usize, t: usize, p: &[usize]| {
    if fails[slot].is_none() {
      fails[slot] = Some(format!("trial {t} at {p:?}"));
    }
  };
  for t in 0..trials {
    let deg = t % (max_degree + 1);
    let terms = rng.gen_range(1..=4);
    let w = random_cochain(f, dim, n, deg, terms, rng);
    let support: Vec<Vec<usize>> = w.iter().map(|(k, _)| k.clone()).collect();
    let base = || Term::Cochain(&w);
    let d_h = base().d_pow(h);
    let d_h1 = base().d_pow(h - 1);
    let ad = base().d().a(a);
    let da = base().a(a).d();
    let a_h = base().a_pow(a, h);
    let a_h1 = base().a_pow(a, h - 1);
    let q_h = base().q_pow(a, h);
    let d1 = base().d();
    for _ in 0..points {
      stats.points += 1;
      let p = sample_point(&support, dim, deg + h, rng);
      if !ev.eval(&d_h, &words(&p)).is_zero() {
        note(0, t, &p);
      }
      let p = sample_point(&support, dim, deg + h - 1, rng);
      if !ev.eval(&d_h1, &words(&p)).is_zero() {
        stats.nonzero_d_pow_h_minus_1 += 1;
      }
      let p = sample_point(&support, dim, deg + 1, rng);
      let lhs = ev.eval(&ad, &words(&p));
      if lhs != ev.eval(&da, &words(&p)).scale(f, &q2) {
        note(1, t, &p);
      }
      if !ev.eval(&d1, &words(&p)).is_zero() {
        stats.nonzero_d += 1;
      }
      for alpha in 0..=deg + 1 {
        let lhs = ev.eval(&base().face(alpha).a(a), &words(&p));
        let rhs = ev.eval(&base().a(a).face(alpha), &words(&p)).scale(f, &q2);
        if lhs != rhs {
          note(2, t, &p);
        }
      }
      let p = sample_point(&support, dim, deg, rng);
      if !ev.eval(&a_h, &words(&p)).is_zero() {
        note(3, t, &p);
      }
      if !ev.eval(&a_h1, &words(&p)).is_zero() {
        stats.nonzero_a_pow_h_minus_1 += 1;
      }
      for len in deg..=deg + h {
        let p = sample_point(&support, dim, len, rng);
        if !ev.eval(&q_h, &words(&p)).is_zero() {
          note(4, t, &p);
        }
      }
    }
  }
  let checks = names.iter().zip(fails).map(|(name, w)| Check::from_witness(*name, w)).collect();
  (checks, stats)
}

/// `F⁰H_(k)(C, Q)` computed directly and through its characterization.
#[derive(Clone, Debug)]
pub struct FilteredHomology {
  pub k:                 usize,
  /// `{Ψ ∈ H : QᵏΨ = 0}`.
  pub kernel:            Subspace,
  /// `A^{h-k}Φ` for `Φ ∈ H` with `Q^{h-k}Φ ∈ H`.
  pub image:             Subspace,
  pub dim:               usize,
  /// `Ker Aᵏ ∩ H_I`.
  pub char_kernel:       Subspace,
  /// `A^{h-k}(H_I)`.
  pub char_image:        Subspace,
  pub dim_characterized: usize,
  pub representatives:   Vec<SparseVec>,
}

/// Degree-0 filtered homology of `Q` on the cochain complex.
///
/// Directly: `QᵏΨ` is evaluated on every multi-index of each length `0..=k`, and the boundary
/// side uses preimages `Φ ∈ H` whose `Q^{h-k}Φ` has no component above degree 0.
pub fn filtered_homology_f0(ev: &Evaluator, model: &ZeroModeModel, k: usize) -> Result<FilteredHomology> {
  let f = &model.field;
  let h = model.h();
  let a = &model.bilinears.a;
  let dim = ev.algebra().dim();
  if k == 0 || k >= h {
    return Err(crate::error::Error::OutOfRange(format!("k = {k} outside 1..={}", h - 1)));
  }
  for len in 1..=k.max(h - k) {
    if exhaustive_count(dim, len).is_none() {
      return Err(crate::error::Error::OutOfRange(format!("{dim}^{len} evaluation points exceed {EXHAUSTIVE_LIMIT}")));
    }
  }
  let n = model.h_dim();
  let id = ExactMatrix::identity(n);
  let all_points = |lo: usize, hi: usize| (lo..=hi).flat_map(move |len| multi_indices(dim, len));
  let kernel = common_kernel(ev, id.clone(), |b, p| ev.eval(&Term::Batch(b).q_pow(a, k), p), all_points(0, k));
  let pre = common_kernel(ev, id, |b, p| ev.eval(&Term::Batch(b).q_pow(a, h - k), p), all_points(1, h - k));
  let a_hk = a.pow(f, h - k)?;
  let image = pre.image_under(f, &a_hk);
  let representatives = kernel.completion_of(f, &image);
  let dim_direct = kernel.quotient_dim_mod(f, &image)?;

  let char_kernel = kernel_basis(f, &a.pow(f, k)?).intersect(f, &model.h_i)?;
  let char_image = model.h_i.image_under(f, &a_hk);
  let dim_characterized = char_kernel.quotient_dim_mod(f, &char_image)?;
  Ok(FilteredHomology { k, kernel, image, dim: dim_direct, char_kernel, char_image, dim_characterized, representatives })
}

/// The ends of `QᵏΨ` on `H`: its degree-`k` component is `dᵏΨ` and its degree-0 component `AᵏΨ`.
fn verify_q_power_ends(ev: &Evaluator, a: &ExactMatrix, k: usize, rng: &mut impl Rng) -> Check {
  let dim = ev.algebra().dim();
  let id = ExactMatrix::identity(ev.algebra().module_dim());
  let q = Term::Batch(&id).q_pow(a, k);
  let top = Term::Batch(&id).d_pow(k);
  let bottom = Term::Batch(&id).a_pow(a, k);
  if ev.eval(&q, &[]) != ev.eval(&bottom, &[]) {
    return Check::fail(format!("q_pow_ends_k{k}"), "degree 0");
  }
  let bad = (0..16).find_map(|_| {
    let p: Vec<usize> = (0..k).map(|_| rng.gen_range(0..dim)).collect();
    (ev.eval(&q, &words(&p)) != ev.eval(&top, &words(&p))).then(|| format!("{p:?}"))
  });
  Check::from_witness(format!("q_pow_ends_k{k}"), bad)
}

/// Degree caps for the random-cochain identities.
pub fn default_max_degree(h: usize) -> usize { if h == 2 { 2 } else { 1 } }

/// The full Hochschild suite: image algebra, degree-0 agreement, unit-prefix factors, kernels and
/// ranks of the powers of `d`, the identities on random cochains and the filtered homology.
pub fn verify_hochschild(model: &ZeroModeModel, trials: usize, seed: u64) -> Result<SuiteReport> {
  let h = model.h();
  let mut r = SuiteReport::new("hochschild", h);
  r.seed = Some(seed);
  let mut rng = ChaCha8Rng::seed_from_u64(seed);
  let alg = ImageAlgebra::build(model)?;
  r.extend(alg.verify(&model.h_i));
  r.record("algebra_dim", alg.dim());
  let ev = Evaluator::new(&alg);
  r.push(verify_degree0(&ev));
  r.extend(verify_unit_prefix(&ev, h));

  let kernels = d_power_kernels(&ev, h, &mut rng);
  r.extend(verify_power_kernels(model, &kernels));
  let (checks, ranks) = verify_power_ranks(model, &kernels);
  r.extend(checks);
  r.record("d_power_ranks", ranks);
  r.record("d_power_kernels", kernels.iter().map(|(pk, _)| pk.clone()).collect::<Vec<_>>());

  let a = &model.bilinears.a;
  let (checks, stats) = verify_identities(&ev, a, h, default_max_degree(h), trials, 2, &mut rng);
  r.extend(checks);
  r.push(Check::expect_eq("identities_nonvacuous", stats.nonzero_d_pow_h_minus_1 > 0 && stats.nonzero_a_pow_h_minus_1 > 0, true));
  r.record("identity_stats", stats);

  let mut dims = Vec::new();
  let mut dims_char = Vec::new();
  for k in 1..h {
    r.push(verify_q_power_ends(&ev, a, k, &mut rng));
    let fh = filtered_homology_f0(&ev, model, k)?;
    r.push(Check::expect_eq(format!("filtered_dim_k{k}"), fh.dim, 1));
    r.push(Check::expect_eq(format!("filtered_agree_k{k}"), (fh.kernel == fh.char_kernel, fh.image == fh.char_image), (true, true)));
    r.push(Check::expect_eq(format!("filtered_characterized_k{k}"), fh.dim_characterized, 1));
    dims.push(fh.dim);
    dims_char.push(fh.dim_characterized);
  }
  r.record("filtered_dims", dims);
  r.record("filtered_dims_characterized", dims_char);
  Ok(r)
}

#[cfg(test)]
mod tests {
  use super::*;

  #[test]
  fn prefactors() {
    let f = crate::cyclo::Field::new(3).unwrap();
    assert!(unit_prefix_factor(&f, 1).is_one());
    // 1 + q² with q = e^{iπ/3}: a primitive sixth root of unity, nonzero
    assert_eq!(unit_prefix_factor(&f, 2), &Scalar::one() + &f.q_pow(2));
    assert!(unit_prefix_factor(&f, 3).is_zero());
  }

  #[test]
  fn sampled_points_have_requested_length() {
    let mut rng = ChaCha8Rng::seed_from_u64(3);
    for len in 0..5 {
      assert_eq!(sample_point(&[vec![4, 5]], 9, len, &mut rng).len(), len);
    }
  }

  #[test]
  fn suite_h2() {
    let m = ZeroModeModel::build(2).unwrap();
    let r = verify_hochschild(&m, 20, 11).unwrap();
    assert!(r.passed(), "{:?}", r.failures().collect::<Vec<_>>());
    assert_eq!(r.data["filtered_dims"], serde_json::json!([1]));
    assert_eq!(r.data["d_power_ranks"], serde_json::json!([13, 0]));
  }
}
