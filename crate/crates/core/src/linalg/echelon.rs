//! Exact Gauss–Jordan elimination over Q(ζ).
//!
//! Rows are first split into connected components (rows sharing a column are connected) and
//! each component is eliminated on its own; the operators built in this crate are strongly
//! block structured by weight, so components are small. For ranks the pivot is taken in the
//! column with the fewest remaining nonzeros; reduced row echelon forms need leftmost pivots,
//! so there columns are taken in order. In both cases the sparsest row of the column is used.
//! The reduced row echelon form is unique, so the result does not depend on the strategy.

use std::collections::{BTreeSet, HashMap};

use rayon::prelude::*;

use super::SparseVec;
use crate::cyclo::{Field, Scalar};

/// Elimination strategy.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash)]
pub enum Strategy {
  /// Normalize each pivot row and subtract multiples of it.
  #[default]
  Markowitz,
  /// Cross-multiply rows (`p·r - c·pivot`) without inverting pivots until the final normalization.
  FractionFree,
}

/// Reduced row echelon form: rows sorted by pivot column, each pivot equal to one and the only
/// nonzero in its column.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Echelon {
  pub rows:   Vec<SparseVec>,
  pub pivots: Vec<usize>,
}

impl Echelon {
  pub fn rank(&self) -> usize { self.rows.len() }

  /// `v - Σ v[p_r]·row_r`; zero iff `v` lies in the row space.
  pub fn reduce(&self, field: &Field, v: &SparseVec) -> SparseVec {
    let mut out = v.clone();
    for (row, &p) in self.rows.iter().zip(&self.pivots) {
      if let Some(c) = v.get_ref(p) {
        out = out.axpy(field, &-c, row);
      }
    }
    out
  }
}

fn find(parent: &mut [usize], mut x: usize) -> usize {
  while parent[x] != x {
    parent[x] = parent[parent[x]];
    x = parent[x];
  }
  x
}

/// Groups nonzero rows into connected components by shared columns.
fn components(rows: Vec<SparseVec>, ncols: usize) -> Vec<Vec<SparseVec>> {
  let mut parent: Vec<usize> = (0..ncols).collect();
  for row in &rows {
    if let Some((first, _)) = row.leading() {
      let a = find(&mut parent, first);
      for (c, _) in row.iter().skip(1) {
        let b = find(&mut parent, *c);
        if a != b {
          parent[b] = a;
        }
      }
    }
  }
  let mut groups: HashMap<usize, usize> = HashMap::new();
  let mut out: Vec<Vec<SparseVec>> = Vec::new();
  for row in rows {
    let Some((first, _)) = row.leading() else { continue };
    let root = find(&mut parent, first);
    let slot = *groups.entry(root).or_insert_with(|| {
      out.push(Vec::new());
      out.len() - 1
    });
    out[slot].push(row);
  }
  out
}

/// Forward elimination of one component; returns `(pivot column, row)` in selection order.
/// With `leftmost` the pivot column is the smallest remaining one, otherwise the sparsest.
fn forward(field: &Field, rows: Vec<SparseVec>, strategy: Strategy, leftmost: bool) -> Vec<(usize, SparseVec)> {
  let key = move |count: usize, col: usize| if leftmost { (0, col) } else { (count, col) };
  let mut active: Vec<Option<SparseVec>> = rows.into_iter().map(Some).collect();
  let mut by_col: HashMap<usize, BTreeSet<usize>> = HashMap::new();
  for (i, row) in active.iter().enumerate() {
    for (c, _) in row.as_ref().expect("fresh").iter() {
      by_col.entry(*c).or_default().insert(i);
    }
  }
  let mut queue: BTreeSet<(usize, usize)> = by_col.iter().map(|(c, s)| key(s.len(), *c)).collect();
  let mut out = Vec::new();

  while let Some(&(_, col)) = queue.iter().next() {
    let members = by_col.remove(&col).expect("queued column");
    queue.remove(&key(members.len(), col));
    let piv_id = *members
      .iter()
      .min_by_key(|&&i| (active[i].as_ref().expect("active").nnz(), i))
      .expect("nonempty column");
    let mut pivot_row = active[piv_id].take().expect("active");
    for (c, _) in pivot_row.iter() {
      if *c != col {
        detach(&mut by_col, &mut queue, key, *c, piv_id);
      }
    }
    let pivot_val = pivot_row.get(col);
    if strategy == Strategy::Markowitz {
      let inv = field.inv(&pivot_val).expect("pivot is nonzero");
      pivot_row = pivot_row.scale(field, &inv);
    }
    for &other in members.iter().filter(|&&i| i != piv_id) {
      let row = active[other].take().expect("active");
      for (c, _) in row.iter() {
        if *c != col {
          detach(&mut by_col, &mut queue, key, *c, other);
        }
      }
      let coeff = row.get(col);
      let reduced = match strategy {
        Strategy::Markowitz => row.axpy(field, &-coeff, &pivot_row),
        Strategy::FractionFree => row.scale(field, &pivot_val).axpy(field, &-coeff, &pivot_row),
      };
      debug_assert!(reduced.get_ref(col).is_none());
      if !reduced.is_zero() {
        for (c, _) in reduced.iter() {
          attach(&mut by_col, &mut queue, key, *c, other);
        }
        active[other] = Some(reduced);
      }
    }
    out.push((col, pivot_row));
  }
  out
}

type Queue = BTreeSet<(usize, usize)>;

fn detach(by_col: &mut HashMap<usize, BTreeSet<usize>>, queue: &mut Queue, key: impl Fn(usize, usize) -> (usize, usize), col: usize, row: usize) {
  if let Some(set) = by_col.get_mut(&col) {
    queue.remove(&key(set.len(), col));
    set.remove(&row);
    if set.is_empty() {
      by_col.remove(&col);
    } else {
      queue.insert(key(set.len(), col));
    }
  }
}

fn attach(by_col: &mut HashMap<usize, BTreeSet<usize>>, queue: &mut Queue, key: impl Fn(usize, usize) -> (usize, usize), col: usize, row: usize) {
  let set = by_col.entry(col).or_default();
  queue.remove(&key(set.len(), col));
  set.insert(row);
  queue.insert(key(set.len(), col));
}

fn back_substitute(field: &Field, mut steps: Vec<(usize, SparseVec)>) -> Vec<(usize, SparseVec)> {
  for (col, row) in steps.iter_mut() {
    let p = row.get(*col);
    if !p.is_one() {
      *row = row.scale(field, &field.inv(&p).expect("pivot is nonzero"));
    }
  }
  let position: HashMap<usize, usize> = steps.iter().enumerate().map(|(k, (c, _))| (*c, k)).collect();
  for k in (0..steps.len()).rev() {
    let (col, row) = &steps[k];
    let targets: Vec<(usize, Scalar)> = row
      .iter()
      .filter(|(c, _)| c != col)
      .filter_map(|(c, v)| position.get(c).map(|&m| (m, v.clone())))
      .collect();
    if targets.is_empty() {
      continue;
    }
    let mut reduced = row.clone();
    for (m, v) in targets {
      debug_assert!(m > k);
      reduced = reduced.axpy(field, &-v, &steps[m].1);
    }
    steps[k].1 = reduced;
  }
  steps
}

fn run<T: Send>(field: &Field, rows: Vec<SparseVec>, ncols: usize, job: impl Fn(&Field, Vec<SparseVec>) -> T + Sync) -> Vec<T> {
  let comps = components(rows, ncols);
  if comps.len() > 1 {
    comps.into_par_iter().map(|c| job(field, c)).collect()
  } else {
    comps.into_iter().map(|c| job(field, c)).collect()
  }
}

/// Rank of the row space.
pub fn rank_of_rows(field: &Field, rows: Vec<SparseVec>, ncols: usize, strategy: Strategy) -> usize {
  run(field, rows, ncols, |f, comp| forward(f, comp, strategy, false).len()).into_iter().sum()
}

/// Reduced row echelon form of the row space.
pub fn rref(field: &Field, rows: Vec<SparseVec>, ncols: usize, strategy: Strategy) -> Echelon {
  let parts = run(field, rows, ncols, |f, comp| back_substitute(f, forward(f, comp, strategy, true)));
  let mut all: Vec<(usize, SparseVec)> = parts.into_iter().flatten().collect();
  all.sort_by_key(|(c, _)| *c);
  let (pivots, rows) = all.into_iter().unzip();
  Echelon { rows, pivots }
}

#[cfg(test)]
mod tests {
  use super::*;

  fn row(f: &Field, entries: &[(usize, i64, i64)]) -> SparseVec {
    SparseVec::from_entries(entries.iter().map(|&(c, n, qexp)| (c, f.mul(&Scalar::from_int(n), &f.q_pow(qexp)))))
  }

  #[test]
  fn rref_is_canonical_across_strategies() {
    let f = Field::new(3).unwrap();
    let rows = vec![
      row(&f, &[(0, 1, 0), (2, 2, 1), (3, 1, 0)]),
      row(&f, &[(0, 2, 0), (1, 1, 1), (3, -1, 2)]),
      row(&f, &[(1, 1, 1), (2, -4, 1), (3, -3, 2)]),
      row(&f, &[(5, 1, 0)]),
    ];
    let a = rref(&f, rows.clone(), 6, Strategy::Markowitz);
    let b = rref(&f, rows.clone(), 6, Strategy::FractionFree);
    assert_eq!(a, b);
    assert_eq!(a.pivots.len(), rank_of_rows(&f, rows.clone(), 6, Strategy::FractionFree));
    for (r, &p) in a.rows.iter().zip(&a.pivots) {
      assert_eq!(r.leading().map(|(c, _)| c), Some(p));
      assert!(r.get(p).is_one());
      for (r2, &p2) in a.rows.iter().zip(&a.pivots) {
        if p2 != p {
          assert!(r2.get(p).is_zero());
        }
      }
    }
    for r in &rows {
      assert!(a.reduce(&f, r).is_zero());
    }
  }

  #[test]
  fn components_split_disjoint_supports() {
    let f = Field::new(2).unwrap();
    let rows = vec![row(&f, &[(0, 1, 0), (1, 1, 0)]), row(&f, &[(4, 1, 0)]), row(&f, &[(1, 1, 0), (2, 1, 0)])];
    assert_eq!(components(rows, 5).len(), 2);
  }
}
