use std::collections::BTreeMap;

use crate::cyclo::{Field, Scalar};

/// A sparse vector: `(index, value)` pairs sorted by index, with no stored zeros.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct SparseVec {
  entries: Vec<(usize, Scalar)>,
}

impl SparseVec {
  pub fn new() -> Self { SparseVec { entries: Vec::new() } }

  /// Builds from arbitrary pairs; duplicates are summed and zeros dropped.
  pub fn from_entries(pairs: impl IntoIterator<Item = (usize, Scalar)>) -> Self {
    let mut acc: BTreeMap<usize, Scalar> = BTreeMap::new();
    for (i, v) in pairs {
      if v.is_zero() {
        continue;
      }
      match acc.get_mut(&i) {
        Some(slot) => *slot += &v,
        None => {
          acc.insert(i, v);
        },
      }
    }
    SparseVec { entries: acc.into_iter().filter(|(_, v)| !v.is_zero()).collect() }
  }

  /// Trusted constructor: entries must be sorted, unique and nonzero.
  pub(crate) fn from_sorted(entries: Vec<(usize, Scalar)>) -> Self {
    debug_assert!(entries.windows(2).all(|w| w[0].0 < w[1].0));
    debug_assert!(entries.iter().all(|(_, v)| !v.is_zero()));
    SparseVec { entries }
  }

  pub fn unit(i: usize) -> Self { SparseVec { entries: vec![(i, Scalar::one())] } }

  pub fn from_dense(values: &[Scalar]) -> Self {
    SparseVec { entries: values.iter().enumerate().filter(|(_, v)| !v.is_zero()).map(|(i, v)| (i, v.clone())).collect() }
  }

  pub fn to_dense(&self, dim: usize) -> Vec<Scalar> {
    let mut out = vec![Scalar::zero(); dim];
    for (i, v) in &self.entries {
      out[*i] = v.clone();
    }
    out
  }

  pub fn is_zero(&self) -> bool { self.entries.is_empty() }

  pub fn nnz(&self) -> usize { self.entries.len() }

  pub fn iter(&self) -> impl Iterator<Item = &(usize, Scalar)> { self.entries.iter() }

  pub fn entries(&self) -> &[(usize, Scalar)] { &self.entries }

  pub fn into_entries(self) -> Vec<(usize, Scalar)> { self.entries }

  pub fn leading(&self) -> Option<(usize, &Scalar)> { self.entries.first().map(|(i, v)| (*i, v)) }

  pub fn max_index(&self) -> Option<usize> { self.entries.last().map(|(i, _)| *i) }

  pub fn get(&self, i: usize) -> Scalar {
    match self.entries.binary_search_by_key(&i, |(j, _)| *j) {
      Ok(k) => self.entries[k].1.clone(),
      Err(_) => Scalar::zero(),
    }
  }

  pub fn get_ref(&self, i: usize) -> Option<&Scalar> {
    self.entries.binary_search_by_key(&i, |(j, _)| *j).ok().map(|k| &self.entries[k].1)
  }

  pub fn scale(&self, field: &Field, c: &Scalar) -> SparseVec {
    if c.is_zero() {
      return SparseVec::new();
    }
    if c.is_one() {
      return self.clone();
    }
    SparseVec { entries: self.entries.iter().map(|(i, v)| (*i, field.mul(v, c))).collect() }
  }

  pub fn neg(&self) -> SparseVec { SparseVec { entries: self.entries.iter().map(|(i, v)| (*i, -v)).collect() } }

  /// `self + c·x`.
  pub fn axpy(&self, field: &Field, c: &Scalar, x: &SparseVec) -> SparseVec {
    if c.is_zero() || x.is_zero() {
      return self.clone();
    }
    let mut out = Vec::with_capacity(self.entries.len() + x.entries.len());
    let (mut a, mut b) = (self.entries.iter().peekable(), x.entries.iter().peekable());
    loop {
      match (a.peek(), b.peek()) {
        (Some((i, u)), Some((j, w))) if i == j => {
          let s = u + &field.mul(c, w);
          if !s.is_zero() {
            out.push((*i, s));
          }
          a.next();
          b.next();
        },
        (Some((i, u)), Some((j, _))) if i < j => {
          out.push((*i, u.clone()));
          a.next();
        },
        (_, Some((j, w))) => {
          out.push((*j, field.mul(c, w)));
          b.next();
        },
        (Some((i, u)), None) => {
          out.push((*i, u.clone()));
          a.next();
        },
        (None, None) => break,
      }
    }
    SparseVec { entries: out }
  }

  pub fn add(&self, field: &Field, x: &SparseVec) -> SparseVec { self.axpy(field, &Scalar::one(), x) }

  pub fn sub(&self, field: &Field, x: &SparseVec) -> SparseVec { self.axpy(field, &Scalar::from_int(-1), x) }

  pub fn dot(&self, field: &Field, x: &SparseVec) -> Scalar {
    let mut acc = Scalar::zero();
    let (mut a, mut b) = (self.entries.iter().peekable(), x.entries.iter().peekable());
    while let (Some((i, u)), Some((j, w))) = (a.peek(), b.peek()) {
      match i.cmp(j) {
        std::cmp::Ordering::Equal => {
          acc += &field.mul(u, w);
          a.next();
          b.next();
        },
        std::cmp::Ordering::Less => {
          a.next();
        },
        std::cmp::Ordering::Greater => {
          b.next();
        },
      }
    }
    acc
  }

  /// Re-indexes entries through `map`, dropping indices mapped to `None`.
  pub fn reindex(&self, map: impl Fn(usize) -> Option<usize>) -> SparseVec {
    SparseVec::from_entries(self.entries.iter().filter_map(|(i, v)| map(*i).map(|j| (j, v.clone()))))
  }

  /// Shifts every index by `offset`.
  pub fn shifted(&self, offset: usize) -> SparseVec {
    SparseVec { entries: self.entries.iter().map(|(i, v)| (i + offset, v.clone())).collect() }
  }
}

#[cfg(test)]
mod tests {
  use super::*;

  #[test]
  fn axpy_cancels_and_merges() {
    let f = Field::new(2).unwrap();
    let x = SparseVec::from_entries([(0, Scalar::one()), (3, f.q())]);
    let y = SparseVec::from_entries([(1, Scalar::one()), (3, Scalar::one())]);
    let z = x.axpy(&f, &-f.q(), &y);
    assert_eq!(z.get(0), Scalar::one());
    assert_eq!(z.get(1), -f.q());
    assert!(z.get(3).is_zero());
    assert_eq!(z.nnz(), 2);
  }

  #[test]
  fn from_entries_sums_duplicates() {
    let v = SparseVec::from_entries([(2, Scalar::one()), (2, Scalar::from_int(-1)), (1, Scalar::from_int(4))]);
    assert_eq!(v.entries(), &[(1, Scalar::from_int(4))]);
  }
}
