//! Bilinears in the chiral and antichiral zero modes, acting on `H = F ⊗ F̄`.

use super::chiral::{diff_witness, ChiralOps};
use super::fock::FockSpace;
use crate::cyclo::Field;
use crate::linalg::{ExactMatrix, SparseVec};
use crate::report::Check;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Bilinears {
  /// `A = Σ_α a²_α ā^α₂`.
  pub a:        ExactMatrix,
  /// `A' = Σ_α a¹_α ā^α₁`.
  pub a_prime:  ExactMatrix,
  /// `B = Σ_α a¹_α ā^α₂`.
  pub b:        ExactMatrix,
  /// `B' = -Σ_α a²_α ā^α₁`.
  pub b_prime:  ExactMatrix,
  /// `A_α = a²_α ā^α₂`, no sum.
  pub a_parts:  [ExactMatrix; 2],
  /// `A'_α = a¹_α ā^α₁`, no sum.
  pub ap_parts: [ExactMatrix; 2],
}

pub fn build_bilinears(field: &Field, ops: &ChiralOps) -> Bilinears {
  let part = |i: usize, j: usize, al: usize| ops.a(i, al).kron(field, ops.abar(al, j));
  let sum = |i, j| part(i, j, 1).add(field, &part(i, j, 2)).expect("same shape");
  Bilinears {
    a:        sum(2, 2),
    a_prime:  sum(1, 1),
    b:        sum(1, 2),
    b_prime:  sum(2, 1).neg(),
    a_parts:  [part(2, 2, 1), part(2, 2, 2)],
    ap_parts: [part(1, 1, 1), part(1, 1, 2)],
  }
}

/// Diagonal `f(p, p̄)` on `H`.
pub fn pair_diag(fock: &FockSpace, f: impl Fn(i64, i64) -> crate::cyclo::Scalar) -> ExactMatrix {
  let b = fock.basis();
  ExactMatrix::diagonal(b.iter().flat_map(|x| b.iter().map(|y| f(x.p, y.p))).collect::<Vec<_>>())
}

pub fn verify_bilinears(field: &Field, fock: &FockSpace, bl: &Bilinears) -> Vec<Check> {
  let h = fock.h();
  let m = |x: &ExactMatrix, y: &ExactMatrix| x.mul(field, y).expect("square");
  let comm = |x: &ExactMatrix, y: &ExactMatrix| x.commutator(field, y).expect("square");
  let chk = |id: &str, l: &ExactMatrix, r: &ExactMatrix| Check::from_witness(id, diff_witness(field, l, r, |c| fock.pair_label(c)));
  let zero = ExactMatrix::zeros(bl.a.rows(), bl.a.cols());
  let nilpotent = |id: &str, x: &ExactMatrix| chk(id, &x.pow(field, h).expect("square"), &zero);
  let sum_w = |s: i64| pair_diag(fock, move |p, pb| field.q_pow(p + pb + s));
  let diff_w = |s: i64| pair_diag(fock, move |p, pb| field.q_pow(p - pb + s));

  let mut out = vec![
    chk("a_a_prime", &comm(&bl.a, &bl.a_prime), &pair_diag(fock, |p, pb| field.q_int(p + pb))),
    chk("b_b_prime", &comm(&bl.b, &bl.b_prime), &pair_diag(fock, |p, pb| field.q_int(p - pb))),
    chk("shift_a", &m(&sum_w(0), &bl.a), &m(&bl.a, &sum_w(-2))),
    chk("shift_a_prime", &m(&sum_w(0), &bl.a_prime), &m(&bl.a_prime, &sum_w(2))),
    chk("shift_b", &m(&diff_w(0), &bl.b), &m(&bl.b, &diff_w(2))),
    chk("shift_b_prime", &m(&diff_w(0), &bl.b_prime), &m(&bl.b_prime, &diff_w(-2))),
    chk("q_commute_a", &m(&bl.a_parts[1], &bl.a_parts[0]), &m(&bl.a_parts[0], &bl.a_parts[1]).scale(field, &field.q_pow(2))),
    chk(
      "q_commute_a_prime",
      &m(&bl.ap_parts[1], &bl.ap_parts[0]),
      &m(&bl.ap_parts[0], &bl.ap_parts[1]).scale(field, &field.q_pow(2)),
    ),
    nilpotent("nilpotent_a1", &bl.a_parts[0]),
    nilpotent("nilpotent_a2", &bl.a_parts[1]),
    nilpotent("nilpotent_a_prime1", &bl.ap_parts[0]),
    nilpotent("nilpotent_a_prime2", &bl.ap_parts[1]),
    nilpotent("nilpotent_a", &bl.a),
    nilpotent("nilpotent_a_prime", &bl.a_prime),
  ];
  for (name, x, y) in [
    ("a_b", &bl.a, &bl.b),
    ("a_b_prime", &bl.a, &bl.b_prime),
    ("a_prime_b", &bl.a_prime, &bl.b),
    ("a_prime_b_prime", &bl.a_prime, &bl.b_prime),
  ] {
    out.push(chk(&format!("commute_{name}"), &comm(x, y), &zero));
  }
  let vac = SparseVec::unit(fock.vacuum() * fock.dim() + fock.vacuum());
  let killed = [&bl.a, &bl.b, &bl.b_prime].iter().all(|x| x.apply(field, &vac).is_zero());
  out.push(Check::from_witness("a_b_kill_vacuum", (!killed).then(|| fock.pair_label(0))));
  out
}

#[cfg(test)]
mod tests {
  use super::*;
  use crate::wznw::build_chiral_ops;

  #[test]
  fn relations_hold() {
    for h in 2..=4usize {
      let f = Field::new(h as i64).unwrap();
      let fock = FockSpace::new(h);
      let ops = build_chiral_ops(&f, &fock).unwrap();
      let bl = build_bilinears(&f, &ops);
      for c in verify_bilinears(&f, &fock, &bl) {
        assert!(c.passed(), "h={h}: {c:?}");
      }
      // A^{h-1} does not vanish
      assert!(!bl.a.pow(&f, h - 1).unwrap().is_zero());
    }
  }

  #[test]
  fn broken_bilinear_is_caught() {
    let f = Field::new(2).unwrap();
    let fock = FockSpace::new(2);
    let ops = build_chiral_ops(&f, &fock).unwrap();
    let mut bl = build_bilinears(&f, &ops);
    bl.b_prime = bl.b_prime.neg();
    let failed: Vec<_> = verify_bilinears(&f, &fock, &bl).into_iter().filter(|c| !c.passed()).map(|c| c.id).collect();
    assert_eq!(failed, vec!["b_b_prime"]);
  }
}
