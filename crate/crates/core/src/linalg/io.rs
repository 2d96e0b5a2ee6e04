use std::path::Path;

use serde::{Deserialize, Serialize};

use super::ExactMatrix;
use crate::cyclo::{Field, Scalar};
use crate::error::Result;

/// On-disk matrix: `{"h", "rows", "cols", "entries": [[row, col, scalar], ...]}`.
///
/// Scalars are either the full coordinate form or an integer / `"num/den"` shorthand.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct MatrixFile {
  pub h:       i64,
  pub rows:    usize,
  pub cols:    usize,
  pub entries: Vec<(usize, usize, serde_json::Value)>,
}

impl MatrixFile {
  pub fn from_matrix(field: &Field, m: &ExactMatrix) -> Self {
    MatrixFile {
      h:       field.h() as i64,
      rows:    m.rows(),
      cols:    m.cols(),
      entries: m
        .triplets()
        .map(|(r, c, v)| (r, c, serde_json::to_value(field.to_json(v)).expect("plain strings")))
        .collect(),
    }
  }

  pub fn parse(text: &str) -> Result<Self> { Ok(serde_json::from_str(text)?) }

  pub fn read(path: &Path) -> Result<Self> { Self::parse(&std::fs::read_to_string(path)?) }

  /// Builds the matrix over the field of the stated height.
  pub fn to_matrix(&self) -> Result<(Field, ExactMatrix)> {
    let field = Field::new(self.h)?;
    let m = self.to_matrix_in(&field)?;
    Ok((field, m))
  }

  pub fn to_matrix_in(&self, field: &Field) -> Result<ExactMatrix> {
    let triplets = self
      .entries
      .iter()
      .map(|(r, c, v)| Ok((*r, *c, field.scalar_from_value(v)?)))
      .collect::<Result<Vec<(usize, usize, Scalar)>>>()?;
    ExactMatrix::from_triplets(self.rows, self.cols, triplets)
  }

  pub fn to_json_string(&self) -> String { serde_json::to_string(self).expect("serializable") }
}



#[cfg(test)]
mod tests {
  use super::*;
  use crate::linalg::shift_block;

  #[test]
  fn round_trip() {
    let f = Field::new(3).unwrap();
    let mut m = shift_block(3);
    m.set(2, 0, f.zeta());
    let text = MatrixFile::from_matrix(&f, &m).to_json_string();
    let (g, back) = MatrixFile::parse(&text).unwrap().to_matrix().unwrap();
    assert_eq!(g.h(), 3);
    assert_eq!(back, m);
  }

  #[test]
  fn shorthand_entries_and_bounds() {
    let text = r#"{"h":2,"rows":2,"cols":2,"entries":[[0,1,1],[1,0,"1/2"]]}"#;
    let (_, m) = MatrixFile::parse(text).unwrap().to_matrix().unwrap();
    assert_eq!(m.get(1, 0), Scalar::from_ratio(1, 2));
    let bad = r#"{"h":2,"rows":2,"cols":2,"entries":[[2,0,1]]}"#;
    assert!(MatrixFile::parse(bad).unwrap().to_matrix().is_err());
  }
}
