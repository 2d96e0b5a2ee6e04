//! Hochschild cochains with values in `H`, the h-differential `d`, the cofaces and the extension
//! of `A`, both as explicit coefficient maps and as pointwise evaluation of composite terms.

use std::cell::RefCell;
use std::collections::{BTreeMap, HashMap};

use rand::Rng;

use super::algebra::ImageAlgebra;
use crate::cyclo::{Field, Scalar};
use crate::error::{Error, Result};
use crate::linalg::{ExactMatrix, SparseVec};

/// Largest number of multi-indices the explicit operations will enumerate.
pub const EXPLICIT_LIMIT: usize = 250_000;

/// A multilinear map `U^{⊗n} → H`, stored by its values on basis multi-indices.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Cochain {
  degree: usize,
  coeffs: BTreeMap<Vec<usize>, SparseVec>,
}

impl Cochain {
  pub fn zero(degree: usize) -> Self { Cochain { degree, coeffs: BTreeMap::new() } }

  /// Degree-0 cochain: a vector of `H`.
  pub fn from_vector(v: SparseVec) -> Self {
    let mut c = Cochain::zero(0);
    c.insert(Vec::new(), v);
    c
  }

  /// Sets the value on a basis multi-index; zero values are dropped.
  ///
  /// # Panics
  /// If the multi-index length differs from the degree.
  pub fn insert(&mut self, index: Vec<usize>, value: SparseVec) {
    assert_eq!(index.len(), self.degree, "multi-index length must equal the degree");
    if value.is_zero() {
      self.coeffs.remove(&index);
    } else {
      self.coeffs.insert(index, value);
    }
  }

  pub fn degree(&self) -> usize { self.degree }

  pub fn get(&self, index: &[usize]) -> Option<&SparseVec> { self.coeffs.get(index) }

  pub fn support_len(&self) -> usize { self.coeffs.len() }

  pub fn is_zero(&self) -> bool { self.coeffs.is_empty() }

  pub fn iter(&self) -> impl Iterator<Item = (&Vec<usize>, &SparseVec)> { self.coeffs.iter() }
}

/// A composite of cochain operations, evaluated pointwise.
///
/// Terms need not be homogeneous: a term evaluated on `m` arguments yields its degree-`m`
/// component.
#[derive(Clone, Debug)]
pub enum Term<'a> {
  Cochain(&'a Cochain),
  /// Degree-0 cochains given as the columns of a matrix; evaluation returns all of them at once.
  Batch(&'a ExactMatrix),
  /// The h-differential `d`.
  D(Box<Term<'a>>),
  /// The extension `(Aω)(X₁,…,Xₙ) = q^{2n} A ω(X₁,…,Xₙ)`.
  A(&'a ExactMatrix, Box<Term<'a>>),
  /// The coface `f_α`.
  Face(usize, Box<Term<'a>>),
  Sum(Box<Term<'a>>, Box<Term<'a>>),
}

impl<'a> Term<'a> {
  pub fn d(self) -> Self { Term::D(Box::new(self)) }

  pub fn a(self, a: &'a ExactMatrix) -> Self { Term::A(a, Box::new(self)) }

  pub fn face(self, alpha: usize) -> Self { Term::Face(alpha, Box::new(self)) }

  /// `Q = d + A`.
  pub fn q(self, a: &'a ExactMatrix) -> Self { Term::Sum(Box::new(self.clone().d()), Box::new(self.a(a))) }

  pub fn d_pow(self, k: usize) -> Self { (0..k).fold(self, |t, _| t.d()) }

  pub fn a_pow(self, a: &'a ExactMatrix, k: usize) -> Self { (0..k).fold(self, |t, _| t.a(a)) }

  pub fn q_pow(self, a: &'a ExactMatrix, k: usize) -> Self { (0..k).fold(self, |t, _| t.q(a)) }

  /// Smallest and largest degree of a nonzero component.
  pub fn degrees(&self) -> (usize, usize) {
    match self {
      Term::Cochain(w) => (w.degree(), w.degree()),
      Term::Batch(_) => (0, 0),
      Term::D(t) | Term::Face(_, t) => {
        let (lo, hi) = t.degrees();
        (lo + 1, hi + 1)
      }
      Term::A(_, t) => t.degrees(),
      Term::Sum(x, y) => {
        let ((a, b), (c, d)) = (x.degrees(), y.degrees());
        (a.min(c), b.max(d))
      }
    }
  }

  /// Number of columns of an evaluation.
  pub fn width(&self) -> usize {
    match self {
      Term::Cochain(_) => 1,
      Term::Batch(m) => m.cols(),
      Term::D(t) | Term::A(_, t) | Term::Face(_, t) | Term::Sum(t, _) => t.width(),
    }
  }
}

/// Pointwise evaluation of terms on words in the algebra basis.
///
/// An argument is a word `[i₁,…,i_r]` standing for the product `x_{i₁}⋯x_{i_r}`; merging adjacent
/// arguments concatenates words, so products are never formed unless coordinates are needed.
pub struct Evaluator<'a> {
  alg:    &'a ImageAlgebra,
  coords: RefCell<HashMap<Vec<usize>, SparseVec>>,
}

impl<'a> Evaluator<'a> {
  pub fn new(alg: &'a ImageAlgebra) -> Self { Evaluator { alg, coords: RefCell::new(HashMap::new()) } }

  pub fn algebra(&self) -> &ImageAlgebra { self.alg }

  fn field(&self) -> &Field { self.alg.field() }

  /// `word · m`.
  pub fn act(&self, word: &[usize], m: &ExactMatrix) -> ExactMatrix {
    word.iter().rev().fold(m.clone(), |acc, &i| self.alg.basis()[i].mul(self.field(), &acc).expect("square"))
  }

  /// `ε(word)`.
  pub fn counit(&self, word: &[usize]) -> Scalar {
    word.iter().fold(Scalar::one(), |acc, &i| self.field().mul(&acc, &self.alg.counit_of(&self.alg.basis()[i])))
  }

  fn word_coords(&self, word: &[usize]) -> SparseVec {
    if let [i] = word {
      return SparseVec::unit(*i);
    }
    if let Some(c) = self.coords.borrow().get(word) {
      return c.clone();
    }
    let c = match word {
      [] => SparseVec::unit(self.alg.unit_index()),
      [a, b] => self.alg.mul(*a, *b),
      _ => {
        let n = self.alg.module_dim();
        let m = self.act(word, &ExactMatrix::identity(n));
        self.alg.coordinates(&m).expect("words stay in the algebra")
      }
    };
    self.coords.borrow_mut().insert(word.to_vec(), c.clone());
    c
  }

  fn zero(&self, t: &Term) -> ExactMatrix { ExactMatrix::zeros(self.alg.module_dim(), t.width()) }

  fn eval_cochain(&self, w: &Cochain, args: &[Vec<usize>]) -> ExactMatrix {
    let n = self.alg.module_dim();
    let col = |v: &SparseVec| ExactMatrix::from_columns(n, std::slice::from_ref(v));
    if args.len() != w.degree() {
      return ExactMatrix::zeros(n, 1);
    }
    if args.iter().all(|a| a.len() == 1) {
      let idx: Vec<usize> = args.iter().map(|a| a[0]).collect();
      return w.get(&idx).map(col).unwrap_or_else(|| ExactMatrix::zeros(n, 1));
    }
    let coords: Vec<SparseVec> = args.iter().map(|a| self.word_coords(a)).collect();
    let f = self.field();
    let mut acc = SparseVec::new();
    for (idx, v) in w.iter() {
      let mut c = Scalar::one();
      for (x, &i) in coords.iter().zip(idx) {
        match x.get_ref(i) {
          Some(y) => c = f.mul(&c, y),
          None => {
            c = Scalar::zero();
            break;
          }
        }
      }
      if !c.is_zero() {
        acc = acc.axpy(f, &c, v);
      }
    }
    col(&acc)
  }

  fn merged(args: &[Vec<usize>], k: usize) -> Vec<Vec<usize>> {
    let mut out: Vec<Vec<usize>> = args[..k - 1].to_vec();
    out.push(args[k - 1].iter().chain(&args[k]).copied().collect());
    out.extend_from_slice(&args[k + 1..]);
    out
  }

  /// The degree-`args.len()` component of `t` at `args`, as an `N × width` matrix.
  pub fn eval(&self, t: &Term, args: &[Vec<usize>]) -> ExactMatrix {
    let f = self.field();
    let m = args.len();
    let (lo, hi) = t.degrees();
    if m < lo || m > hi {
      return self.zero(t);
    }
    match t {
      Term::Cochain(w) => self.eval_cochain(w, args),
      Term::Batch(b) => {
        if m == 0 {
          (*b).clone()
        } else {
          self.zero(t)
        }
      }
      Term::D(inner) => {
        if m == 0 {
          return self.zero(t);
        }
        let n = m - 1;
        let mut acc = self.act(&args[0], &self.eval(inner, &args[1..]));
        for k in 1..=n {
          let v = self.eval(inner, &Self::merged(args, k));
          acc = acc.axpy(f, &f.q_pow(2 * k as i64), &v).expect("same shape");
        }
        let eps = self.counit(&args[n]);
        if !eps.is_zero() {
          let v = self.eval(inner, &args[..n]);
          acc = acc.axpy(f, &-&f.mul(&f.q_pow(2 * n as i64), &eps), &v).expect("same shape");
        }
        acc
      }
      Term::A(a, inner) => a.mul(f, &self.eval(inner, args)).expect("square").scale(f, &f.q_pow(2 * m as i64)),
      Term::Face(alpha, inner) => {
        let alpha = *alpha;
        if m == 0 || alpha > m {
          return self.zero(t);
        }
        let n = m - 1;
        if alpha == 0 {
          self.act(&args[0], &self.eval(inner, &args[1..]))
        } else if alpha <= n {
          self.eval(inner, &Self::merged(args, alpha))
        } else {
          self.eval(inner, &args[..n]).scale(f, &self.counit(&args[n]))
        }
      }
      Term::Sum(x, y) => self.eval(x, args).add(f, &self.eval(y, args)).expect("same shape"),
    }
  }
}

/// All multi-indices of length `len` over `0..dim`, in lexicographic order.
pub fn multi_indices(dim: usize, len: usize) -> impl Iterator<Item = Vec<usize>> {
  let total = dim.checked_pow(len as u32).unwrap_or(usize::MAX);
  (0..total).map(move |mut k| {
    let mut idx = vec![0; len];
    for slot in idx.iter_mut().rev() {
      *slot = k % dim;
      k /= dim;
    }
    idx
  })
}

fn words(idx: &[usize]) -> Vec<Vec<usize>> { idx.iter().map(|&i| vec![i]).collect() }

fn tabulate(ev: &Evaluator, t: &Term, degree: usize) -> Result<Cochain> {
  let dim = ev.algebra().dim();
  let count = dim.checked_pow(degree as u32).filter(|&c| c <= EXPLICIT_LIMIT);
  if count.is_none() {
    return Err(Error::OutOfRange(format!(
      "explicit degree-{degree} cochain needs {dim}^{degree} values (limit {EXPLICIT_LIMIT}); evaluate pointwise instead"
    )));
  }
  let mut out = Cochain::zero(degree);
  for idx in multi_indices(dim, degree) {
    let v = ev.eval(t, &words(&idx)).column(0);
    out.insert(idx, v);
  }
  Ok(out)
}

/// `d(ω)(X₀,…,Xₙ) = X₀ω(X₁,…,Xₙ) + Σ_k q^{2k} ω(…,X_{k-1}X_k,…) − q^{2n} ω(X₀,…,X_{n-1}) ε(Xₙ)`,
/// tabulated on all basis multi-indices.
pub fn hochschild_d(alg: &ImageAlgebra, w: &Cochain) -> Result<Cochain> {
  tabulate(&Evaluator::new(alg), &Term::Cochain(w).d(), w.degree() + 1)
}

/// The coface `f_α : Cⁿ → C^{n+1}` for `0 ≤ α ≤ n+1`.
pub fn coface(alg: &ImageAlgebra, alpha: usize, w: &Cochain) -> Result<Cochain> {
  if alpha > w.degree() + 1 {
    return Err(Error::OutOfRange(format!("coface index {alpha} on a degree-{} cochain", w.degree())));
  }
  tabulate(&Evaluator::new(alg), &Term::Cochain(w).face(alpha), w.degree() + 1)
}

/// `(Aω)(X₁,…,Xₙ) = q^{2n} A ω(X₁,…,Xₙ)`.
pub fn extend_a_cochain(field: &Field, a: &ExactMatrix, w: &Cochain) -> Cochain {
  let c = field.q_pow(2 * w.degree() as i64);
  let mut out = Cochain::zero(w.degree());
  for (idx, v) in w.iter() {
    out.insert(idx.clone(), a.apply(field, v).scale(field, &c));
  }
  out
}

/// Sparse random cochain with `terms` nonzero values, entries from `{0, ±1, ±q, ±q⁻¹}`.
pub fn random_cochain(field: &Field, alg_dim: usize, module_dim: usize, degree: usize, terms: usize, rng: &mut impl Rng) -> Cochain {
  let pool = [field.q_pow(0), field.q(), field.q_pow(-1)];
  let mut w = Cochain::zero(degree);
  for _ in 0..terms {
    let idx: Vec<usize> = (0..degree).map(|_| rng.gen_range(0..alg_dim)).collect();
    let entries = (0..rng.gen_range(1..=3)).filter_map(|_| {
      let c = &pool[rng.gen_range(0..pool.len())];
      match rng.gen_range(0..3) {
        0 => None,
        1 => Some((rng.gen_range(0..module_dim), c.clone())),
        _ => Some((rng.gen_range(0..module_dim), -c)),
      }
    });
    w.insert(idx, SparseVec::from_entries(entries));
  }
  w
}
