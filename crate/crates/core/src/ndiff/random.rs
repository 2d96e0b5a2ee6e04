use rand::Rng;

use crate::cyclo::{Field, Scalar};
use crate::linalg::{jordan_matrix, ExactMatrix, SparseVec, Subspace};

fn small_scalar(field: &Field, rng: &mut impl Rng) -> Scalar {
  let base = match rng.gen_range(0..3) {
    0 => Scalar::one(),
    1 => field.q(),
    _ => field.q_pow(-1),
  };
  if rng.gen_bool(0.5) { -base } else { base }
}

/// Random elementary change of basis `P` applied as `M ↦ P M P⁻¹`, with the same `P` applied to `vectors`.
fn conjugate(field: &Field, m: &mut ExactMatrix, vectors: &mut [SparseVec], rng: &mut impl Rng, steps: usize) {
  let n = m.rows();
  if n < 2 {
    return;
  }
  for _ in 0..steps {
    let i = rng.gen_range(0..n);
    let mut j = rng.gen_range(0..n - 1);
    if j >= i {
      j += 1;
    }
    let c = small_scalar(field, rng);
    // P = I + c e_ij, P⁻¹ = I - c e_ij
    let p = ExactMatrix::identity(n).add(field, &ExactMatrix::from_triplets(n, n, [(i, j, c.clone())]).expect("in range")).expect("square");
    let p_inv = ExactMatrix::identity(n).add(field, &ExactMatrix::from_triplets(n, n, [(i, j, -c)]).expect("in range")).expect("square");
    *m = p.mul(field, m).and_then(|x| x.mul(field, &p_inv)).expect("square");
    for v in vectors.iter_mut() {
      *v = p.apply(field, v);
    }
  }
}

/// Random multiplicities `m_1..m_h` with `Σ n·m_n = dim`.
fn random_partition(dim: usize, h: usize, rng: &mut impl Rng) -> Vec<usize> {
  let mut m = vec![0; h];
  let mut left = dim;
  while left > 0 {
    let size = rng.gen_range(1..=h.min(left));
    m[size - 1] += 1;
    left -= size;
  }
  m
}

/// A random `h`-nilpotent matrix of size `dim` together with its Jordan multiplicities.
pub fn random_nilpotent(field: &Field, dim: usize, h: usize, rng: &mut impl Rng) -> (ExactMatrix, Vec<usize>) {
  let m = random_partition(dim, h, rng);
  let mut a = jordan_matrix(&m);
  conjugate(field, &mut a, &mut [], rng, 2 * dim);
  (a, m)
}

/// An `h`-nilpotent `a0` on `F^dim` with an `a0`-invariant subspace `w`.
#[derive(Clone, Debug)]
pub struct InvariantTriple {
  pub dim: usize,
  pub w:   Subspace,
  pub a0:  ExactMatrix,
}

/// Built in Jordan form, where the first `t` vectors of each chain span an invariant subspace, then conjugated.
pub fn random_invariant_triple(field: &Field, dim: usize, h: usize, rng: &mut impl Rng) -> InvariantTriple {
  let m = random_partition(dim, h, rng);
  let mut a0 = jordan_matrix(&m);
  let mut w_vectors = Vec::new();
  let mut start = 0;
  for (i, &count) in m.iter().enumerate() {
    let size = i + 1;
    for _ in 0..count {
      let t = rng.gen_range(0..=size);
      w_vectors.extend((start..start + t).map(SparseVec::unit));
      start += size;
    }
  }
  conjugate(field, &mut a0, &mut w_vectors, rng, 2 * dim);
  InvariantTriple { dim, w: Subspace::from_vectors(field, dim, w_vectors), a0 }
}

#[cfg(test)]
mod tests {
  use rand::SeedableRng;
  use rand_chacha::ChaCha8Rng;

  use super::*;
  use crate::linalg::nilpotent_profile;

  #[test]
  fn conjugation_preserves_jordan_type() {
    let f = Field::new(4).unwrap();
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    for _ in 0..10 {
      let (a, m) = random_nilpotent(&f, 9, 4, &mut rng);
      assert_eq!(nilpotent_profile(&f, &a, 4).unwrap().multiplicities, m);
    }
  }

  #[test]
  fn triples_are_invariant() {
    let f = Field::new(3).unwrap();
    let mut rng = ChaCha8Rng::seed_from_u64(11);
    for _ in 0..10 {
      let t = random_invariant_triple(&f, 7, 3, &mut rng);
      assert_eq!(t.w.invariance_witness(&f, &t.a0), None);
    }
  }
}
