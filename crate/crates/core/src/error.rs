use thiserror::Error;

/// Errors raised by the exact algebra engine.
#[derive(Debug, Error)]
pub enum Error {
  #[error("invalid height {0}: expected h >= 2")]
  InvalidHeight(i64),

  #[error("division by the zero scalar")]
  SingularScalar,

  #[error("[{n}]! vanishes at height {h}; divided powers exist only for 0 <= n <= {max}", max = h - 1)]
  ZeroDivisor { n: i64, h: usize },

  #[error("dimension mismatch: {0}")]
  Dimension(String),

  #[error("ambient dimension mismatch: {left} vs {right}")]
  AmbientMismatch { left: usize, right: usize },

  #[error("subspace containment fails: {0}")]
  NotContained(String),

  #[error("matrix is not {h}-nilpotent: d^{h} != 0 ({detail})")]
  NotNilpotent { h: usize, detail: String },

  #[error("index out of range: {0}")]
  OutOfRange(String),

  #[error("negative multiplicity m_{index} = {value}")]
  NegativeMultiplicity { index: usize, value: i64 },

  #[error("endomorphism does not preserve the subspace (witness basis vector {witness})")]
  InvariantViolation { witness: usize },

  #[error("q-commutation A d = q^2 d A fails (witness column {witness})")]
  QCommutation { witness: usize },

  #[error("model construction failed: {0}")]
  ModelConstruction(String),

  #[error("computed result contradicts the expected structure: {0}")]
  Mismatch(String),

  #[error("parse error: {0}")]
  Parse(String),

  #[error(transparent)]
  Io(#[from] std::io::Error),

  #[error(transparent)]
  Json(#[from] serde_json::Error),
}

pub type Result<T> = std::result::Result<T, Error>;
