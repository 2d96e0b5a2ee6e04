//! Chiral zero-mode operators `a^i_α` on the Fock module and their barred partners.

use std::collections::{BTreeMap, HashMap};

use super::fock::FockSpace;
use super::tensors::{epsilon_q, epsilon_sign};
use crate::cyclo::{Field, Scalar};
use crate::error::{Error, Result};
use crate::linalg::{solve_unique, ExactMatrix, SolveFailure, SparseVec};
use crate::report::Check;

/// `a^i_α` for `i, α ∈ {1, 2}`, stored as `ops[i-1][α-1]`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ChiralOps {
  ops: [[ExactMatrix; 2]; 2],
}

impl ChiralOps {
  pub fn new(ops: [[ExactMatrix; 2]; 2]) -> Self { ChiralOps { ops } }

  /// `a^i_α` (1-based indices).
  pub fn a(&self, i: usize, alpha: usize) -> &ExactMatrix { &self.ops[i - 1][alpha - 1] }

  /// `ā^α_i`, realized as the matrix of `a^i_α` on the same module.
  pub fn abar(&self, alpha: usize, i: usize) -> &ExactMatrix { self.a(i, alpha) }

  pub fn a_mut(&mut self, i: usize, alpha: usize) -> &mut ExactMatrix { &mut self.ops[i - 1][alpha - 1] }
}

/// `a¹₁|p,m> = |p+1,m+1>`, `a¹₂|p,m> = q^m |p+1,m>`, zero outside the module.
pub fn raising_ops(field: &Field, fock: &FockSpace) -> [ExactMatrix; 2] {
  [
    fock.shift_op(|b| (b.p + 1, b.m + 1), |_| Scalar::one()),
    fock.shift_op(|b| (b.p + 1, b.m), |b| field.q_pow(b.m)),
  ]
}

/// Unknown entries of `a²_1`, `a²_2` on the `p → p-1` pattern.
struct Unknowns {
  slots:  Vec<(usize, usize, usize)>,
  lookup: HashMap<(usize, usize, usize), usize>,
}

impl Unknowns {
  fn new(fock: &FockSpace) -> Self {
    let mut slots = Vec::new();
    for alpha in 1..=2 {
      for (j, b) in fock.basis().iter().enumerate() {
        for (i, t) in fock.basis().iter().enumerate() {
          if t.p == b.p - 1 {
            slots.push((alpha, i, j));
          }
        }
      }
    }
    let lookup = slots.iter().enumerate().map(|(k, s)| (*s, k)).collect();
    Unknowns { slots, lookup }
  }
}

/// Matrix identities linear in the unknown lowering operators: `Σ c·L·X_α·R + C = 0`.
struct System<'a> {
  field:    &'a Field,
  unknowns: &'a Unknowns,
  terms:    BTreeMap<(usize, usize, usize), Vec<(usize, Scalar)>>,
  consts:   BTreeMap<(usize, usize, usize), Scalar>,
}

impl<'a> System<'a> {
  fn term(&mut self, id: usize, c: &Scalar, left: Option<&ExactMatrix>, alpha: usize, right: Option<&ExactMatrix>) {
    let f = self.field;
    let left_t = left.map(ExactMatrix::transpose);
    for (k, &(al, s, t)) in self.unknowns.slots.iter().enumerate() {
      if al != alpha {
        continue;
      }
      let lefts: Vec<(usize, Scalar)> = match &left_t {
        None => vec![(s, Scalar::one())],
        Some(lt) => lt.row(s).entries().to_vec(),
      };
      let rights: Vec<(usize, Scalar)> = match right {
        None => vec![(t, Scalar::one())],
        Some(r) => r.row(t).entries().to_vec(),
      };
      for (r, lv) in &lefts {
        for (col, rv) in &rights {
          let coeff = f.mul(c, &f.mul(lv, rv));
          self.terms.entry((id, *r, *col)).or_default().push((k, coeff));
        }
      }
    }
  }

  fn constant(&mut self, id: usize, c: &Scalar, m: &ExactMatrix) {
    for (r, col, v) in m.triplets() {
      let slot = self.consts.entry((id, r, col)).or_default();
      *slot += &self.field.mul(c, v);
    }
  }

  fn solve(self) -> std::result::Result<Vec<Scalar>, SolveFailure> {
    let System { field, unknowns, mut terms, consts } = self;
    for key in consts.keys() {
      terms.entry(*key).or_default();
    }
    let equations = terms
      .into_iter()
      .map(|(key, t)| {
        let rhs = consts.get(&key).map(|c| -c).unwrap_or_default();
        (SparseVec::from_entries(t), rhs)
      })
      .filter(|(row, rhs)| !(row.is_zero() && rhs.is_zero()))
      .collect();
    solve_unique(field, equations, unknowns.slots.len())
  }
}

/// Solves for `a²_α` from the commutation, determinant and mixed exchange relations with `a²_α|1,0> = 0`.
pub fn build_chiral_ops(field: &Field, fock: &FockSpace) -> Result<ChiralOps> {
  let raise = raising_ops(field, fock);
  let r = |alpha: usize| &raise[alpha - 1];
  let unknowns = Unknowns::new(fock);
  let mut sys = System { field, unknowns: &unknowns, terms: BTreeMap::new(), consts: BTreeMap::new() };
  let one = Scalar::one();
  let minus = Scalar::from_int(-1);
  let bracket = |shift: i64| fock.bracket_p(field, shift);
  let mut id = 0;

  // [a¹_α, a²_α] = 0
  for alpha in 1..=2 {
    sys.term(id, &one, Some(r(alpha)), alpha, None);
    sys.term(id, &minus, None, alpha, Some(r(alpha)));
    id += 1;
  }
  // ε_{ij} a^i_α a^j_β = [p] E_{αβ}
  for alpha in 1..=2 {
    for beta in 1..=2 {
      sys.term(id, &Scalar::from_int(epsilon_sign(1, 2)), Some(r(alpha)), beta, None);
      sys.term(id, &Scalar::from_int(epsilon_sign(2, 1)), None, alpha, Some(r(beta)));
      sys.constant(id, &-epsilon_q(field, alpha, beta), &bracket(0));
      id += 1;
    }
  }
  // [p] Σ_σ a^{i1}_{σ1} a^{i2}_{σ2} E^{σ1σ2} E_{α1α2} = [p+i1-i2] (a^{i1}_{α1} a^{i2}_{α2} - a^{i2}_{α1} a^{i1}_{α2}), i1 ≠ i2
  let p0 = bracket(0);
  for (i1, i2) in [(1usize, 2usize), (2, 1)] {
    let shifted = bracket(i1 as i64 - i2 as i64);
    for a1 in 1..=2 {
      for a2 in 1..=2 {
        let e_low = epsilon_q(field, a1, a2);
        for s1 in 1..=2 {
          for s2 in 1..=2 {
            let c = field.mul(&epsilon_q(field, s1, s2), &e_low);
            if c.is_zero() {
              continue;
            }
            if i1 == 1 {
              sys.term(id, &c, Some(&p0.mul(field, r(s1))?), s2, None);
            } else {
              sys.term(id, &c, Some(&p0), s1, Some(r(s2)));
            }
          }
        }
        // minus [p+i1-i2] a^{i1}_{a1} a^{i2}_{a2}, plus [p+i1-i2] a^{i2}_{a1} a^{i1}_{a2}
        if i1 == 1 {
          sys.term(id, &minus, Some(&shifted.mul(field, r(a1))?), a2, None);
          sys.term(id, &one, Some(&shifted), a1, Some(r(a2)));
        } else {
          sys.term(id, &minus, Some(&shifted), a1, Some(r(a2)));
          sys.term(id, &one, Some(&shifted.mul(field, r(a1))?), a2, None);
        }
        id += 1;
      }
    }
  }
  // a²_α|1,0> = 0 holds by the pattern: no state has p = 0.

  let solution = sys.solve().map_err(|e| {
    Error::ModelConstruction(match e {
      SolveFailure::Inconsistent => "lowering-operator constraints are inconsistent".into(),
      SolveFailure::Underdetermined { free } => format!("lowering-operator constraints leave {free} free parameters"),
    })
  })?;
  let n = fock.dim();
  let mut lower = [ExactMatrix::zeros(n, n), ExactMatrix::zeros(n, n)];
  for (k, &(alpha, i, j)) in unknowns.slots.iter().enumerate() {
    if !solution[k].is_zero() {
      lower[alpha - 1].set(i, j, solution[k].clone());
    }
  }
  let [r1, r2] = raise;
  let [l1, l2] = lower;
  debug_assert!(unknowns.lookup.len() == unknowns.slots.len());
  Ok(ChiralOps::new([[r1, r2], [l1, l2]]))
}

/// Witness label of the first column where `lhs` and `rhs` differ.
pub(crate) fn diff_witness(field: &Field, lhs: &ExactMatrix, rhs: &ExactMatrix, label: impl Fn(usize) -> String) -> Option<String> {
  let d = lhs.sub(field, rhs).expect("same shape");
  d.first_nonzero_column().map(label)
}

/// Every quadratic relation of the chiral algebra as a matrix identity on `F`, then the barred mirror.
pub fn verify_matrix_relations(field: &Field, fock: &FockSpace, ops: &ChiralOps) -> Vec<Check> {
  let h = fock.h();
  let label = |c: usize| fock.label(c).to_string();
  let m = |x: &ExactMatrix, y: &ExactMatrix| x.mul(field, y).expect("square");
  let id_check = |id: String, lhs: &ExactMatrix, rhs: &ExactMatrix| Check::from_witness(id, diff_witness(field, lhs, rhs, label));
  let a = |i, al| ops.a(i, al);
  let n = fock.dim();
  let zero = ExactMatrix::zeros(n, n);
  let p0 = fock.bracket_p(field, 0);
  let qp = fock.diag(|b| field.q_pow(b.p));
  let mut out = Vec::new();

  // a_1 a_2 𝒜 = 𝒜(p) a_1 a_2 multiplied through by [p]
  for i1 in 1..=2 {
    for i2 in 1..=2 {
      let shifted = fock.bracket_p(field, i1 as i64 - i2 as i64);
      let mut bad = None;
      for a1 in 1..=2 {
        for a2 in 1..=2 {
          let mut lhs = zero.clone();
          for s1 in 1..=2 {
            for s2 in 1..=2 {
              let c = field.mul(&epsilon_q(field, s1, s2), &epsilon_q(field, a1, a2));
              lhs = lhs.axpy(field, &c, &m(a(i1, s1), a(i2, s2))).expect("square");
            }
          }
          let lhs = m(&p0, &lhs);
          let rhs = m(&shifted, &m(a(i1, a1), a(i2, a2)).sub(field, &m(a(i2, a1), a(i1, a2))).expect("square"));
          if bad.is_none() {
            bad = diff_witness(field, &lhs, &rhs, label).map(|w| format!("α=({a1},{a2}) at {w}"));
          }
        }
      }
      out.push(Check::from_witness(format!("exchange_{i1}{i2}"), bad));
    }
  }
  for i in 1..=2 {
    out.push(id_check(format!("q_commute_{i}"), &m(a(i, 2), a(i, 1)), &m(a(i, 1), a(i, 2)).scale(field, &field.q())));
  }
  for al in 1..=2 {
    out.push(id_check(format!("commute_a1{al}_a2{al}"), &m(a(1, al), a(2, al)), &m(a(2, al), a(1, al))));
  }
  for al in 1..=2 {
    // q^p a¹_α = a¹_α q^{p+1},  q^p a²_α = a²_α q^{p-1}
    out.push(id_check(format!("shift_a1{al}"), &m(&qp, a(1, al)), &m(a(1, al), &qp).scale(field, &field.q())));
    out.push(id_check(format!("shift_a2{al}"), &m(&qp, a(2, al)), &m(a(2, al), &qp).scale(field, &field.q_pow(-1))));
  }
  for al in 1..=2 {
    for be in 1..=2 {
      let mut lhs = zero.clone();
      for i in 1..=2 {
        for j in 1..=2 {
          let s = epsilon_sign(i, j);
          if s != 0 {
            lhs = lhs.axpy(field, &Scalar::from_int(s), &m(a(i, al), a(j, be))).expect("square");
          }
        }
      }
      out.push(id_check(format!("determinant_{al}{be}"), &lhs, &p0.scale(field, &epsilon_q(field, al, be))));
    }
  }
  for i in 1..=2 {
    for al in 1..=2 {
      out.push(id_check(format!("nilpotent_a{i}{al}"), &a(i, al).pow(field, h).expect("square"), &zero));
    }
  }
  let vac = SparseVec::unit(fock.vacuum());
  let vacuum_bad = (1..=2).find(|&al| !a(2, al).apply(field, &vac).is_zero()).map(|al| format!("a2{al}|1,0> != 0"));
  out.push(Check::from_witness("vacuum", vacuum_bad));
  let hp_bad = fock.basis().iter().find(|b| !field.q_int(h as i64 * b.p).is_zero()).map(|b| b.to_string());
  out.push(Check::from_witness("ideal_hp", hp_bad));

  // barred sector, written with ā^α_i
  let ab = |al, i| ops.abar(al, i);
  for j in 1..=2 {
    out.push(id_check(format!("bar_q_commute_{j}"), &m(ab(2, j), ab(1, j)), &m(ab(1, j), ab(2, j)).scale(field, &field.q())));
  }
  for al in 1..=2 {
    out.push(id_check(format!("bar_commute_{al}"), &m(ab(al, 1), ab(al, 2)), &m(ab(al, 2), ab(al, 1))));
    out.push(id_check(format!("bar_shift_{al}1"), &m(&qp, ab(al, 1)), &m(ab(al, 1), &qp).scale(field, &field.q())));
    out.push(id_check(format!("bar_shift_{al}2"), &m(&qp, ab(al, 2)), &m(ab(al, 2), &qp).scale(field, &field.q_pow(-1))));
  }
  for al in 1..=2 {
    for be in 1..=2 {
      let mut lhs = zero.clone();
      for i in 1..=2 {
        for j in 1..=2 {
          let s = epsilon_sign(i, j);
          if s != 0 {
            lhs = lhs.axpy(field, &Scalar::from_int(s), &m(ab(al, i), ab(be, j))).expect("square");
          }
        }
      }
      out.push(id_check(format!("bar_determinant_{al}{be}"), &lhs, &p0.scale(field, &epsilon_q(field, al, be))));
    }
  }
  let bar_vacuum_bad = (1..=2).find(|&al| !ab(al, 2).apply(field, &vac).is_zero()).map(|al| format!("ā{al}2|1,0> != 0"));
  out.push(Check::from_witness("bar_vacuum", bar_vacuum_bad));
  out
}

#[cfg(test)]
mod tests {
  use super::*;

  #[test]
  fn raising_examples() {
    let f = Field::new(2).unwrap();
    let fock = FockSpace::new(2);
    let [r1, _] = raising_ops(&f, &fock);
    let v = r1.apply(&f, &fock.unit(1, 0).unwrap());
    assert_eq!(v, fock.unit(2, 1).unwrap());
    assert!(r1.apply(&f, &fock.unit(2, 1).unwrap()).is_zero());
  }

  #[test]
  fn relations_hold_for_small_heights() {
    for h in 2..=4 {
      let f = Field::new(h as i64).unwrap();
      let fock = FockSpace::new(h);
      let ops = build_chiral_ops(&f, &fock).unwrap();
      for c in verify_matrix_relations(&f, &fock, &ops) {
        assert!(c.passed(), "h={h}: {c:?}");
      }
    }
  }

  #[test]
  fn determinant_on_vacuum() {
    let f = Field::new(3).unwrap();
    let fock = FockSpace::new(3);
    let ops = build_chiral_ops(&f, &fock).unwrap();
    let vac = fock.unit(1, 0).unwrap();
    let lhs = ops.a(1, 1).apply(&f, &ops.a(2, 2).apply(&f, &vac)).sub(&f, &ops.a(2, 1).apply(&f, &ops.a(1, 2).apply(&f, &vac)));
    assert_eq!(lhs, vac.scale(&f, &epsilon_q(&f, 1, 2)));
  }

  #[test]
  fn corrupted_entry_is_caught() {
    let f = Field::new(2).unwrap();
    let fock = FockSpace::new(2);
    let mut ops = build_chiral_ops(&f, &fock).unwrap();
    let i = fock.index_of(2, 0).unwrap();
    let j = fock.index_of(1, 0).unwrap();
    ops.a_mut(1, 2).set(i, j, Scalar::from_int(5));
    let failed: Vec<Check> = verify_matrix_relations(&f, &fock, &ops).into_iter().filter(|c| !c.passed()).collect();
    assert!(!failed.is_empty());
    assert!(failed.iter().all(|c| c.witness.is_some()));
  }
}
