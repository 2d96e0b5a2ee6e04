//! Constant tensors of the quadratic exchange relations.

use crate::cyclo::{Field, Scalar};
use crate::linalg::ExactMatrix;
use crate::report::Check;

/// `E^{αβ} = E_{αβ}`: `E^{12} = -q^{1/2}`, `E^{21} = q^{-1/2}`, zero on the diagonal. Indices are 1-based.
pub fn epsilon_q(field: &Field, a: usize, b: usize) -> Scalar {
  match (a, b) {
    (1, 2) => -field.zeta(),
    (2, 1) => field.zeta_pow(-1),
    _ => Scalar::zero(),
  }
}

/// Sign tensor of the determinant condition. `ε_{12} = 1`; the opposite choice flips the sign of the lowering operators.
pub fn epsilon_sign(i: usize, j: usize) -> i64 {
  match (i, j) {
    (1, 2) => 1,
    (2, 1) => -1,
    _ => 0,
  }
}

fn pair(a: usize, b: usize) -> usize { 2 * (a - 1) + (b - 1) }

/// `𝒜^{α1α2}_{β1β2} = E^{α1α2} E_{β1β2}` as a 4×4 matrix, rows `(α1α2)`, columns `(β1β2)`.
pub fn antisymmetrizer(field: &Field) -> ExactMatrix {
  let mut t = Vec::new();
  for (a1, a2, b1, b2) in quadruples() {
    t.push((pair(a1, a2), pair(b1, b2), field.mul(&epsilon_q(field, a1, a2), &epsilon_q(field, b1, b2))));
  }
  ExactMatrix::from_triplets(4, 4, t).expect("in range")
}

/// `[p]·𝒜(p)`, with `𝒜(p)^{i1i2}_{j1j2} = [p+i1-i2]/[p] (δ^{i1}_{j1}δ^{i2}_{j2} - δ^{i1}_{j2}δ^{i2}_{j1})`.
pub fn dynamic_antisymmetrizer_poly(field: &Field, p: i64) -> ExactMatrix {
  let mut t = Vec::new();
  for (i1, i2, j1, j2) in quadruples() {
    let delta = i64::from(i1 == j1 && i2 == j2) - i64::from(i1 == j2 && i2 == j1);
    if delta != 0 {
      let c = field.q_int(p + i1 as i64 - i2 as i64);
      t.push((pair(i1, i2), pair(j1, j2), if delta > 0 { c } else { -c }));
    }
  }
  ExactMatrix::from_triplets(4, 4, t).expect("in range")
}

fn quadruples() -> impl Iterator<Item = (usize, usize, usize, usize)> {
  (1..=2).flat_map(|a| (1..=2).flat_map(move |b| (1..=2).flat_map(move |c| (1..=2).map(move |d| (a, b, c, d)))))
}

fn first_bad(diff: &ExactMatrix) -> Option<String> { diff.first_nonzero_column().map(|c| format!("tensor column {c}")) }

/// Hecke and braiding identities of the constant tensor, Hecke identity of `𝒜(p)` for every `p` in the module.
pub fn check_tensors(field: &Field) -> Vec<Check> {
  let h = field.h() as i64;
  let a = antisymmetrizer(field);
  let two = field.q_int(2);
  let hecke = a.mul(field, &a).and_then(|x| x.sub(field, &a.scale(field, &two))).expect("4x4");
  let i2 = ExactMatrix::identity(2);
  let a12 = a.kron(field, &i2);
  let a23 = i2.kron(field, &a);
  let braid = |x: &ExactMatrix, y: &ExactMatrix| x.mul(field, y).and_then(|m| m.mul(field, x)).and_then(|m| m.sub(field, x)).expect("8x8");
  let dynamic = (1..2 * h).find_map(|p| {
    // ([p]𝒜(p))² = [2][p]·([p]𝒜(p))
    let m = dynamic_antisymmetrizer_poly(field, p);
    let lhs = m.mul(field, &m).expect("4x4");
    let rhs = m.scale(field, &field.mul(&two, &field.q_int(p)));
    (lhs != rhs).then(|| format!("p={p}"))
  });
  vec![
    Check::from_witness("hecke", first_bad(&hecke)),
    Check::from_witness("braiding_12", first_bad(&braid(&a12, &a23))),
    Check::from_witness("braiding_23", first_bad(&braid(&a23, &a12))),
    Check::from_witness("hecke_dynamic", dynamic),
  ]
}
