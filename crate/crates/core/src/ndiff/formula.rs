use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// `dim H_(k)` for `k = 1..h-1` from Jordan multiplicities `m_1..m_h`:
/// `dim H_(n) = Σ_{j=1}^{n} Σ_{i=j}^{h-j} m_i` for `n ≤ h/2`, and `dim H_(h-n) = dim H_(n)`.
pub fn homology_dims_from_multiplicities(m: &[i64], h: usize) -> Result<Vec<usize>> {
  if h < 2 {
    return Err(Error::InvalidHeight(h as i64));
  }
  if m.len() != h {
    return Err(Error::Dimension(format!("expected {h} multiplicities, got {}", m.len())));
  }
  if let Some((i, &v)) = m.iter().enumerate().find(|(_, &v)| v < 0) {
    return Err(Error::NegativeMultiplicity { index: i + 1, value: v });
  }
  let mi = |i: usize| m[i - 1] as usize;
  let mut dims = vec![0; h - 1];
  for n in 1..=h / 2 {
    let d: usize = (1..=n).map(|j| (j..=h - j).map(mi).sum::<usize>()).sum();
    dims[n - 1] = d;
    dims[h - n - 1] = d;
  }
  Ok(dims)
}

/// Whether a nilpotent `Q`, `Q^h = 0`, on a space of the given dimension can have every `H_(n)` one-dimensional.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Feasibility {
  pub dim:       usize,
  pub h:         usize,
  pub feasible:  bool,
  /// Multiplicity vectors `m_1..m_h`.
  pub witnesses: Vec<Vec<usize>>,
}

/// All-ones homology forces either `m_{h-1} = 1` or `m_1 = 1` beside free `m_h`, so
/// `dim = h·m_h + (h-1)` or `dim = h·m_h + 1`.
pub fn feasibility(dim: usize, h: usize) -> Result<Feasibility> {
  if h < 2 {
    return Err(Error::InvalidHeight(h as i64));
  }
  let mut witnesses = Vec::new();
  for (small, rest) in [(h - 1, h - 1), (1, 1)] {
    if dim >= rest && (dim - rest).is_multiple_of(h) {
      let mut m = vec![0; h];
      m[small - 1] = 1;
      m[h - 1] += (dim - rest) / h;
      if !witnesses.contains(&m) {
        witnesses.push(m);
      }
    }
  }
  Ok(Feasibility { dim, h, feasible: !witnesses.is_empty(), witnesses })
}

#[cfg(test)]
mod tests {
  use super::*;

  #[test]
  fn formula_examples() {
    assert_eq!(homology_dims_from_multiplicities(&[0, 1, 2], 3).unwrap(), vec![1, 1]);
    assert_eq!(homology_dims_from_multiplicities(&[4, 7], 2).unwrap(), vec![4]);
    assert_eq!(homology_dims_from_multiplicities(&[1, 0, 0, 0], 4).unwrap(), vec![1, 1, 1]);
    assert!(matches!(
      homology_dims_from_multiplicities(&[1, -1, 0], 3),
      Err(Error::NegativeMultiplicity { index: 2, value: -1 })
    ));
  }

  #[test]
  fn feasibility_examples() {
    for h in 2..=6usize {
      assert!(!feasibility(h.pow(4), h).unwrap().feasible);
      let f = feasibility(2 * h - 1, h).unwrap();
      let mut expected = vec![0; h];
      expected[h - 2] = 1;
      expected[h - 1] = 1;
      assert!(f.witnesses.contains(&expected), "h={h}: {:?}", f.witnesses);
    }
    assert_eq!(feasibility(1, 3).unwrap().witnesses, vec![vec![1, 0, 0]]);
    assert_eq!(feasibility(3, 2).unwrap().witnesses, vec![vec![1, 1]]);
    assert!(!feasibility(81, 3).unwrap().feasible);
  }
}
