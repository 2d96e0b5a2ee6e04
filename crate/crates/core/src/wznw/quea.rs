//! The quantum group actions on `F`, `F̄` and `H = F ⊗ F̄`.

use super::chiral::{diff_witness, ChiralOps};
use super::fock::FockSpace;
use crate::cyclo::{Field, Scalar};
use crate::linalg::{ExactMatrix, SparseVec};
use crate::report::Check;

/// `E, F, q^{±H}` on `F` and `Ē, F̄, q^{±H̄}` on `F̄`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SingleCopy {
  pub qh:       ExactMatrix,
  pub qh_inv:   ExactMatrix,
  pub e:        ExactMatrix,
  pub f:        ExactMatrix,
  pub qhbar:    ExactMatrix,
  pub qhbar_inv: ExactMatrix,
  pub ebar:     ExactMatrix,
  pub fbar:     ExactMatrix,
}

/// Coproduct actions on `H`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Quea {
  pub de:          ExactMatrix,
  pub df:          ExactMatrix,
  /// `Δ(K^{1/2}) = q^{(H+H̄)/2}`.
  pub dk_half:     ExactMatrix,
  pub dk_half_inv: ExactMatrix,
  /// `Δ(K) = q^{H+H̄}`.
  pub dk:          ExactMatrix,
  /// `q^{p-p̄}` and its inverse.
  pub q_pmp:       ExactMatrix,
  pub q_pmp_inv:   ExactMatrix,
}

/// Weight of `|p,m>` under `H`: `q^H|p,m> = q^{2m-p+1}|p,m>`. The barred weight is its negative.
pub fn weight(p: i64, m: i64) -> i64 { 2 * m - p + 1 }

/// Parent of `|p,m>` along the defining monomial: `(α, parent, c)` with `|p,m> = c·a¹_α|parent>`.
fn parent(field: &Field, fock: &FockSpace, j: usize) -> Option<(usize, usize, Scalar)> {
  let b = fock.label(j);
  if b.p == 1 {
    return None;
  }
  if b.m >= 1 {
    Some((1, fock.index_of(b.p - 1, b.m - 1).expect("valid parent"), Scalar::one()))
  } else {
    Some((2, fock.index_of(b.p - 1, 0).expect("valid parent"), field.q_pow(-b.m)))
  }
}

/// Defines `X` on every basis vector from `X|1,0> = 0` and a rule `X a¹_α v = rule(α, v, X v)`.
fn by_recursion(
  field: &Field,
  fock: &FockSpace,
  rule: impl Fn(usize, &SparseVec, &SparseVec) -> SparseVec,
) -> ExactMatrix {
  let n = fock.dim();
  let mut cols: Vec<Option<SparseVec>> = vec![None; n];
  cols[fock.vacuum()] = Some(SparseVec::new());
  // lexicographic order visits parents (p-1) before children
  for j in 0..n {
    if let Some((alpha, par, c)) = parent(field, fock, j) {
      let x_par = cols[par].clone().expect("parent visited first");
      cols[j] = Some(rule(alpha, &SparseVec::unit(par), &x_par).scale(field, &c));
    }
  }
  ExactMatrix::from_columns(n, &cols.into_iter().map(|c| c.expect("all visited")).collect::<Vec<_>>())
}

pub fn build_single_copy(field: &Field, fock: &FockSpace, ops: &ChiralOps) -> SingleCopy {
  let qh = fock.diag(|b| field.q_pow(weight(b.p, b.m)));
  let qh_inv = fock.diag(|b| field.q_pow(-weight(b.p, b.m)));
  let qhbar = qh_inv.clone();
  let qhbar_inv = qh.clone();
  let a = |i, al| ops.a(i, al);
  let ab = |al, i| ops.abar(al, i);
  let ap = |m: &ExactMatrix, v: &SparseVec| m.apply(field, v);

  // E a¹_α v = a¹_α E v + δ²_α a¹₁ q^H v
  let e = by_recursion(field, fock, |al, v, ev| {
    let mut out = ap(a(1, al), ev);
    if al == 2 {
      out = out.add(field, &ap(a(1, 1), &ap(&qh, v)));
    }
    out
  });
  // F a¹_α v = q^{2α-3} a¹_α F v + δ¹_α a¹₂ v
  let f = by_recursion(field, fock, |al, v, fv| {
    let mut out = ap(a(1, al), fv).scale(field, &field.q_pow(2 * al as i64 - 3));
    if al == 1 {
      out = out.add(field, &ap(a(1, 2), v));
    }
    out
  });
  // Ē ā^α₁ v = q^{2α-3} (ā^α₁ Ē v - δ^α₁ ā²₁ v)
  let ebar = by_recursion(field, fock, |al, v, ev| {
    let mut out = ap(ab(al, 1), ev);
    if al == 1 {
      out = out.sub(field, &ap(ab(2, 1), v));
    }
    out.scale(field, &field.q_pow(2 * al as i64 - 3))
  });
  // F̄ ā^α₁ v = ā^α₁ F̄ v - δ^α₂ q^{-H̄} ā¹₁ v
  let fbar = by_recursion(field, fock, |al, v, fv| {
    let mut out = ap(ab(al, 1), fv);
    if al == 2 {
      out = out.sub(field, &ap(&qhbar_inv, &ap(ab(1, 1), v)));
    }
    out
  });
  SingleCopy { qh, qh_inv, e, f, qhbar, qhbar_inv, ebar, fbar }
}

pub fn build_quea(field: &Field, fock: &FockSpace, sc: &SingleCopy) -> Quea {
  let i = ExactMatrix::identity(fock.dim());
  let de = sc.e.kron(field, &i).add(field, &sc.qh.kron(field, &sc.ebar)).expect("same shape");
  let df = sc.f.kron(field, &sc.qhbar_inv).add(field, &i.kron(field, &sc.fbar)).expect("same shape");
  let pairs: Vec<(i64, i64)> = fock
    .basis()
    .iter()
    .flat_map(|x| fock.basis().iter().map(move |y| (weight(x.p, x.m) - weight(y.p, y.m), x.p - y.p)))
    .collect();
  // H + H̄ on |x>⊗|y> is weight(x) - weight(y); ζ = q^{1/2}
  let diag = |f: &dyn Fn(&(i64, i64)) -> Scalar| ExactMatrix::diagonal(pairs.iter().map(f).collect());
  Quea {
    dk_half:     diag(&|(hh, _)| field.zeta_pow(*hh)),
    dk_half_inv: diag(&|(hh, _)| field.zeta_pow(-*hh)),
    dk:          diag(&|(hh, _)| field.q_pow(*hh)),
    q_pmp:       diag(&|(_, d)| field.q_pow(*d)),
    q_pmp_inv:   diag(&|(_, d)| field.q_pow(-*d)),
    de,
    df,
  }
}

/// Exchange relations of `E, F, Ē, F̄` with the chiral operators, the `U_q(sl₂)` relations on each
/// copy and on the coproduct, and invariance of every `a^i_α ā^α_j`.
pub fn verify_quea(field: &Field, fock: &FockSpace, ops: &ChiralOps, sc: &SingleCopy, quea: &Quea) -> Vec<Check> {
  let n = fock.dim();
  let m = |x: &ExactMatrix, y: &ExactMatrix| x.mul(field, y).expect("square");
  let label = |c: usize| fock.label(c).to_string();
  let pair_label = |c: usize| fock.pair_label(c);
  let chk = |id: String, lhs: &ExactMatrix, rhs: &ExactMatrix| Check::from_witness(id, diff_witness(field, lhs, rhs, label));
  let chk2 = |id: String, lhs: &ExactMatrix, rhs: &ExactMatrix| Check::from_witness(id, diff_witness(field, lhs, rhs, pair_label));
  let a = |i, al| ops.a(i, al);
  let ab = |al, i| ops.abar(al, i);
  let zero = ExactMatrix::zeros(n, n);
  let mut out = Vec::new();
  let vac = SparseVec::unit(fock.vacuum());
  let kills = [&sc.e, &sc.f, &sc.ebar, &sc.fbar].iter().all(|x| x.apply(field, &vac).is_zero());
  out.push(Check::from_witness("single_vacuum", (!kills).then(|| "(1,0)".to_string())));

  for i in 1..=2 {
    for al in 1..=2 {
      let s = (al == 1) as i64 - (al == 2) as i64;
      // q^H a^i_α = a^i_α q^{H+δ¹_α-δ²_α}
      out.push(chk(format!("qh_a{i}{al}"), &m(&sc.qh, a(i, al)), &m(a(i, al), &sc.qh).scale(field, &field.q_pow(s))));
      // q^{H̄} ā^α_i = ā^α_i q^{H̄-δ¹_α+δ²_α}
      out.push(chk(format!("qhbar_abar{al}{i}"), &m(&sc.qhbar, ab(al, i)), &m(ab(al, i), &sc.qhbar).scale(field, &field.q_pow(-s))));
      // [E, a^i_α] = δ²_α a^i₁ q^H
      let rhs = if al == 2 { m(a(i, 1), &sc.qh) } else { zero.clone() };
      out.push(chk(format!("e_a{i}{al}"), &m(&sc.e, a(i, al)).sub(field, &m(a(i, al), &sc.e)).expect("square"), &rhs));
      // F a^i_α - q^{2α-3} a^i_α F = δ¹_α a^i₂
      let rhs = if al == 1 { a(i, 2).clone() } else { zero.clone() };
      let lhs = m(&sc.f, a(i, al)).sub(field, &m(a(i, al), &sc.f).scale(field, &field.q_pow(2 * al as i64 - 3))).expect("square");
      out.push(chk(format!("f_a{i}{al}"), &lhs, &rhs));
      // q^{3-2α} Ē ā^α_i - ā^α_i Ē = -δ^α₁ ā²_i
      let lhs = m(&sc.ebar, ab(al, i)).scale(field, &field.q_pow(3 - 2 * al as i64)).sub(field, &m(ab(al, i), &sc.ebar)).expect("square");
      let rhs = if al == 1 { ab(2, i).neg() } else { zero.clone() };
      out.push(chk(format!("ebar_abar{al}{i}"), &lhs, &rhs));
      // [ā^α_i, F̄] = δ^α₂ q^{-H̄} ā¹_i
      let lhs = m(ab(al, i), &sc.fbar).sub(field, &m(&sc.fbar, ab(al, i))).expect("square");
      let rhs = if al == 2 { m(&sc.qhbar_inv, ab(1, i)) } else { zero.clone() };
      out.push(chk(format!("fbar_abar{al}{i}"), &lhs, &rhs));
    }
  }

  let denom = field.inv(&(&field.q() - &field.q_pow(-1))).expect("q != q^{-1}");
  let sl2 = |tag: &str, k: &ExactMatrix, k_inv: &ExactMatrix, e: &ExactMatrix, f: &ExactMatrix, two: bool| {
    let c = |id: String, l: &ExactMatrix, r: &ExactMatrix| if two { chk2(id, l, r) } else { chk(id, l, r) };
    vec![
      c(format!("{tag}_k_e"), &m(&m(k, e), k_inv), &e.scale(field, &field.q_pow(2))),
      c(format!("{tag}_k_f"), &m(&m(k, f), k_inv), &f.scale(field, &field.q_pow(-2))),
      c(
        format!("{tag}_e_f"),
        &m(e, f).sub(field, &m(f, e)).expect("square"),
        &k.sub(field, k_inv).expect("square").scale(field, &denom),
      ),
    ]
  };
  out.extend(sl2("sl2", &sc.qh, &sc.qh_inv, &sc.e, &sc.f, false));
  out.extend(sl2("sl2_bar", &sc.qhbar, &sc.qhbar_inv, &sc.ebar, &sc.fbar, false));
  let dk_inv = m(&quea.dk_half_inv, &quea.dk_half_inv);
  out.extend(sl2("sl2_coproduct", &quea.dk, &dk_inv, &quea.de, &quea.df, true));
  out.push(chk2("k_half_squared".into(), &m(&quea.dk_half, &quea.dk_half), &quea.dk));
  out.push(chk2("k_half_inverse".into(), &m(&quea.dk_half, &quea.dk_half_inv), &ExactMatrix::identity(n * n)));

  for i in 1..=2 {
    for j in 1..=2 {
      let bil = (1..=2)
        .map(|al| a(i, al).kron(field, ab(al, j)))
        .reduce(|x, y| x.add(field, &y).expect("same shape"))
        .expect("two terms");
      for (name, x) in [("e", &quea.de), ("f", &quea.df), ("k", &quea.dk)] {
        out.push(chk2(format!("invariance_{name}_{i}{j}"), &m(x, &bil), &m(&bil, x)));
      }
    }
  }
  out
}

#[cfg(test)]
mod tests {
  use super::*;
  use crate::wznw::build_chiral_ops;

  #[test]
  fn weights_and_relations() {
    for h in 2..=4usize {
      let f = Field::new(h as i64).unwrap();
      let fock = FockSpace::new(h);
      let ops = build_chiral_ops(&f, &fock).unwrap();
      let sc = build_single_copy(&f, &fock, &ops);
      let q = build_quea(&f, &fock, &sc);
      for c in verify_quea(&f, &fock, &ops, &sc, &q) {
        assert!(c.passed(), "h={h}: {c:?}");
      }
      let vac = SparseVec::unit(0);
      assert!(q.de.apply(&f, &vac).is_zero());
      assert!(q.df.apply(&f, &vac).is_zero());
      assert_eq!(q.dk.apply(&f, &vac), vac);
    }
  }

  #[test]
  fn weight_formula() {
    assert_eq!(weight(1, 0), 0);
    assert_eq!(weight(2, 1), 1);
    assert_eq!(weight(2, 0), -1);
  }
}
