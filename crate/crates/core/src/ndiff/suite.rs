use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::{feasibility, homology_dims_from_multiplicities, homology_report, random_nilpotent, HDiffSpace};
use crate::cyclo::Field;
use crate::error::Result;
use crate::linalg::{nilpotent_profile, ExactMatrix};
use crate::report::{Check, SuiteReport};

/// Largest random matrix drawn by [`verify_section3`].
pub const MAX_RANDOM_DIM: usize = 12;

/// The multiplicity formula against direct homology on `trials` seeded random `h`-nilpotent
/// matrices, the feasibility verdicts at `h⁴` and `2h-1`, and, when given, the Jordan type of
/// the invariant-subspace operator `a_on_w`.
pub fn verify_section3(field: &Field, trials: usize, seed: u64, a_on_w: Option<&ExactMatrix>) -> Result<SuiteReport> {
  let h = field.h();
  let mut r = SuiteReport::new("section3", h);
  r.seed = Some(seed);
  let mut rng = ChaCha8Rng::seed_from_u64(seed);
  let (mut formula_bad, mut profile_bad) = (None, None);
  for t in 0..trials {
    let dim = rng.gen_range(1..=MAX_RANDOM_DIM);
    let (l, m) = random_nilpotent(field, dim, h, &mut rng);
    let profile = nilpotent_profile(field, &l, h)?;
    if profile.multiplicities != m && profile_bad.is_none() {
      profile_bad = Some(format!("trial {t}: planted {m:?}, measured {:?}", profile.multiplicities));
    }
    let direct = homology_report(field, &HDiffSpace::new(field, h, l)?).dims;
    let m_i: Vec<i64> = profile.multiplicities.iter().map(|&x| x as i64).collect();
    let formula = homology_dims_from_multiplicities(&m_i, h)?;
    if direct != formula && formula_bad.is_none() {
      formula_bad = Some(format!("trial {t} (dim {dim}, m = {m:?}): direct {direct:?}, formula {formula:?}"));
    }
  }
  r.push(Check::from_witness("formula_matches_direct", formula_bad));
  r.push(Check::from_witness("profile_recovers_jordan_type", profile_bad));

  let full = feasibility(h.pow(4), h)?;
  r.push(Check::from_witness("full_space_infeasible", full.feasible.then(|| format!("{:?}", full.witnesses))));
  let small = feasibility(2 * h - 1, h)?;
  let mut expected = vec![0; h];
  expected[h - 2] += 1;
  expected[h - 1] += 1;
  r.push(Check::from_witness(
    "invariant_size_feasible",
    (!small.witnesses.contains(&expected)).then(|| format!("{:?}", small.witnesses)),
  ));
  if let Some(a) = a_on_w {
    let m = nilpotent_profile(field, a, h)?.multiplicities;
    let fits = feasibility(a.rows(), h)?.witnesses.contains(&m);
    r.push(Check::from_witness("invariant_operator_type", (!fits).then(|| format!("{m:?}"))));
    r.record("invariant_operator_multiplicities", m);
  }
  r.record("feasible_witnesses", small.witnesses);
  r.record("trials", trials);
  Ok(r)
}

#[cfg(test)]
mod tests {
  use super::*;

  #[test]
  fn passes_for_small_heights() {
    for h in 2..=4 {
      let f = Field::new(h).unwrap();
      let r = verify_section3(&f, 30, 5, None).unwrap();
      assert!(r.passed(), "h={h}: {:?}", r.failures().collect::<Vec<_>>());
    }
  }

  #[test]
  fn flags_wrong_operator_type() {
    let f = Field::new(3).unwrap();
    // three 1-blocks: homology (3, 3), not all ones
    let r = verify_section3(&f, 1, 0, Some(&ExactMatrix::zeros(3, 3))).unwrap();
    assert_eq!(r.failures().map(|c| c.id.as_str()).collect::<Vec<_>>(), ["invariant_operator_type"]);
  }
}
