//! Acceptance criteria, one line each. Runs as a plain binary so the lines always print.

use std::time::{Duration, Instant};

use qhomology::cli::{run, EXIT_FAIL};
use qhomology::hochschild::{build_zero_mode_complex, verify_hochschild, verify_theorem1};
use qhomology::linalg::{kernel_basis, nilpotent_profile, ExactMatrix, MatrixFile};
use qhomology::ndiff::{feasibility, gen_homology, homology_dims_from_multiplicities, random_nilpotent, HDiffSpace};
use qhomology::report::SuiteReport;
use qhomology::wznw::ZeroModeModel;
use qhomology::{Field, Scalar};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

type Outcome = Result<String, String>;

const HEIGHTS: [usize; 4] = [2, 3, 4, 5];

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> { if cond { Ok(()) } else { Err(msg()) } }

fn failures(r: &SuiteReport) -> String {
  r.failures().map(|c| format!("{} ({})", c.id, c.witness.as_deref().unwrap_or(""))).collect::<Vec<_>>().join(", ")
}

fn require_pass(r: &SuiteReport) -> Result<(), String> {
  ensure(r.passed(), || format!("h={} {}: {}", r.h, r.suite, failures(r)))
}

fn require_ids(r: &SuiteReport, prefixes: &[&str]) -> Result<(), String> {
  for p in prefixes {
    let hits: Vec<_> = r.checks.iter().filter(|c| c.id.starts_with(p)).collect();
    ensure(!hits.is_empty(), || format!("h={} {}: no check {p}*", r.h, r.suite))?;
    if let Some(c) = hits.iter().find(|c| !c.passed()) {
      return Err(format!("h={} {}: {} ({})", r.h, r.suite, c.id, c.witness.as_deref().unwrap_or("")));
    }
  }
  Ok(())
}

fn ones(h: usize) -> serde_json::Value { serde_json::json!(vec![1; h - 1]) }

struct Models {
  models: Vec<ZeroModeModel>,
  build:  Vec<Duration>,
}

fn models() -> Result<Models, String> {
  let mut out = Models { models: Vec::new(), build: Vec::new() };
  for h in HEIGHTS {
    let t = Instant::now();
    out.models.push(ZeroModeModel::build(h).map_err(|e| format!("h={h}: {e}"))?);
    out.build.push(t.elapsed());
  }
  Ok(out)
}

fn c1(m: &Models) -> Outcome {
  for (model, t) in m.models.iter().zip(&m.build) {
    let h = model.h();
    let got = (model.fock.dim(), model.h_dim(), model.h_i.dim());
    ensure(got == (h * h, h.pow(4), 2 * h - 1), || format!("h={h}: (dim F, dim H, dim H_I) = {got:?}"))?;
    let limit = if h <= 4 { Duration::from_secs(10) } else { Duration::from_secs(120) };
    ensure(*t < limit, || format!("h={h}: build took {t:?}, limit {limit:?}"))?;
  }
  let times: Vec<String> = m.build.iter().map(|t| format!("{:.2}s", t.as_secs_f64())).collect();
  Ok(format!("dims (h², h⁴, 2h-1) for h = 2..5; build times {}", times.join(" ")))
}

fn c2(m: &Models) -> Outcome {
  let mut n = 0;
  for model in &m.models {
    let r = model.verify_relations();
    require_pass(&r)?;
    n += r.checks.len();
  }
  Ok(format!("{n} exact identities"))
}

fn c3(m: &Models) -> Outcome {
  for model in &m.models {
    let h = model.h();
    let f = &model.field;
    let r = model.verify_theorem0().map_err(|e| e.to_string())?;
    require_pass(&r)?;
    ensure(r.data["dims"] == ones(h), || format!("h={h}: dims {}", r.data["dims"]))?;
    let a = &model.bilinears.a;
    for n in 1..h {
      let v = &model.inv_basis[n - 1];
      let in_ker = kernel_basis(f, &a.pow(f, n).unwrap()).contains_vector(f, v);
      let in_im = model.h_i.image_under(f, &a.pow(f, h - n).unwrap()).contains_vector(f, v);
      ensure(in_ker && !in_im, || format!("h={h}: |{n}>_I in Ker A^n: {in_ker}, in A^(h-n)(H_I): {in_im}"))?;
    }
  }
  Ok("dim H_(n)(H_I, A) = 1 with |n>_I generating, h = 2..5".into())
}

fn c4() -> Outcome {
  let t = Instant::now();
  let trials = 200;
  for h in HEIGHTS {
    let f = Field::new(h as i64).unwrap();
    let mut rng = ChaCha8Rng::seed_from_u64(4000 + h as u64);
    for trial in 0..trials {
      let dim = rng.gen_range(1..=12);
      let (l, _) = random_nilpotent(&f, dim, h, &mut rng);
      let profile = nilpotent_profile(&f, &l, h).map_err(|e| e.to_string())?;
      let m: Vec<i64> = profile.multiplicities.iter().map(|&x| x as i64).collect();
      let formula = homology_dims_from_multiplicities(&m, h).map_err(|e| e.to_string())?;
      let space = HDiffSpace::new(&f, h, l).map_err(|e| e.to_string())?;
      let direct: Vec<usize> = (1..h).map(|k| gen_homology(&f, &space, k).unwrap().dim).collect();
      ensure(direct == formula, || format!("h={h} trial {trial}: direct {direct:?}, formula {formula:?}"))?;
    }
  }
  let t = t.elapsed();
  ensure(t < Duration::from_secs(60), || format!("took {t:?}"))?;
  Ok(format!("{trials} random matrices per h = 2..5 in {:.2}s", t.as_secs_f64()))
}

fn c5() -> Outcome {
  for h in 2..=6usize {
    let full = feasibility(h.pow(4), h).unwrap();
    ensure(!full.feasible, || format!("h={h}: dim h⁴ feasible via {:?}", full.witnesses))?;
    let small = feasibility(2 * h - 1, h).unwrap();
    let mut w = vec![0; h];
    w[h - 2] += 1;
    w[h - 1] += 1;
    ensure(small.feasible && small.witnesses.contains(&w), || format!("h={h}: 2h-1 witnesses {:?}", small.witnesses))?;
  }
  Ok("h⁴ infeasible, 2h-1 feasible with m_(h-1) = m_h = 1, h = 2..6".into())
}

fn c6(m: &Models) -> Outcome {
  for model in &m.models {
    let h = model.h();
    let r = verify_theorem1(model, 50, 6).map_err(|e| e.to_string())?;
    require_pass(&r)?;
    require_ids(&r, &["cone_acyclic", "random_cones_acyclic", "exact_in_middle", "dimension_ledger"])?;
    ensure(r.data["dims"] == ones(h), || format!("h={h}: dims {}", r.data["dims"]))?;
    ensure(r.data["cone_trials"] == 50, || format!("h={h}: cone trials {}", r.data["cone_trials"]))?;
  }
  Ok("dim H_(k)(H•, Q) = 1, model cone and 50 random cones acyclic, h = 2..5".into())
}

fn c7(m: &Models) -> Outcome {
  for model in &m.models {
    let (h, f) = (model.h(), &model.field);
    let cx = build_zero_mode_complex(model).map_err(|e| e.to_string())?;
    let ad = cx.a.mul(f, cx.d()).unwrap();
    let dad = cx.d().mul(f, &cx.a).unwrap().scale(f, &f.q_pow(2));
    ensure(ad == dad, || format!("h={h}: A d != q² d A"))?;
    ensure(cx.a.pow(f, h).unwrap().is_zero(), || format!("h={h}: A^h != 0"))?;
    ensure(cx.q.pow(f, h).unwrap().is_zero(), || format!("h={h}: Q^h != 0"))?;
    ensure(!cx.q.pow(f, h - 1).unwrap().is_zero(), || format!("h={h}: Q^(h-1) = 0 already"))?;
  }
  Ok("A d = q² d A, A^h = 0, Q^h = 0 on H•, h = 2..5".into())
}

fn hochschild_reports(m: &Models) -> Result<Vec<(SuiteReport, Duration)>, String> {
  m.models[..2]
    .iter()
    .map(|model| {
      let t = Instant::now();
      let r = verify_hochschild(model, 100, 8).map_err(|e| e.to_string())?;
      Ok((r, t.elapsed()))
    })
    .collect()
}

fn c8(reports: &[(SuiteReport, Duration)]) -> Outcome {
  let mut msg = Vec::new();
  for (r, t) in reports {
    let h = r.h;
    require_ids(r, &[
      "degree0_is_hochschild",
      "unit_prefix_n",
      "unit_prefix_factor_nonzero_n",
      "unit_prefix_factor_vanishes_at_h",
      "kernel_d",
      "vacuum_in_power_kernels",
      "d_pow_h_vanishes",
      "a_d_q_commute",
      "a_face_q_commute",
      "a_pow_h_vanishes",
      "q_pow_h_vanishes",
      "identities_nonvacuous",
      "rank_d",
    ])?;
    require_pass(r)?;
    ensure(r.data["identity_stats"]["trials"] == 100, || format!("h={h}: trials {}", r.data["identity_stats"]["trials"]))?;
    let expected: Vec<usize> = (1..h).map(|_| h.pow(4) - (2 * h - 1)).chain([0]).collect();
    ensure(r.data["d_power_ranks"] == serde_json::json!(expected), || format!("h={h}: ranks {}", r.data["d_power_ranks"]))?;
    if h == 3 {
      ensure(*t < Duration::from_secs(120), || format!("h=3 took {t:?}"))?;
    }
    msg.push(format!("h={h} {:.2}s algebra dim {}", t.as_secs_f64(), r.data["algebra_dim"]));
  }
  Ok(msg.join(", "))
}

fn c9(reports: &[(SuiteReport, Duration)]) -> Outcome {
  for (r, _) in reports {
    let h = r.h;
    require_ids(r, &["filtered_dim_k", "filtered_agree_k", "filtered_characterized_k", "q_pow_ends_k"])?;
    for key in ["filtered_dims", "filtered_dims_characterized"] {
      ensure(r.data[key] == ones(h), || format!("h={h}: {key} {}", r.data[key]))?;
    }
  }
  Ok("direct = characterized = 1 for h = 2 (k = 1) and h = 3 (k = 1, 2)".into())
}

fn c10(m: &Models) -> Outcome {
  let mut model = m.models[1].clone();
  let a21 = model.ops.a_mut(2, 1);
  let (i, j, v) = a21.triplets().next().map(|(i, j, v)| (i, j, v.clone())).ok_or("a^2_1 is zero")?;
  a21.set(i, j, &v + &Scalar::one());
  let r = model.verify_relations();
  let bad: Vec<_> = r.failures().collect();
  ensure(!bad.is_empty(), || "corrupted a^2_1 passes the relation suite".into())?;
  ensure(bad.iter().all(|c| c.witness.as_deref().is_some_and(|w| !w.is_empty())), || "failure without witness".into())?;

  let dir = tempfile::tempdir().map_err(|e| e.to_string())?;
  let path = dir.path().join("q3.json");
  let f = Field::new(3).unwrap();
  let q3 = ExactMatrix::from_triplets(3, 3, [(0, 1, Scalar::one()), (1, 2, Scalar::one())]).unwrap();
  std::fs::write(&path, MatrixFile::from_matrix(&f, &q3).to_json_string()).map_err(|e| e.to_string())?;
  let (mut out, mut err) = (Vec::new(), Vec::new());
  let args = ["qhomology", "homology", path.to_str().unwrap(), "--height", "2"];
  let code = run(args, &mut out, &mut err);
  let err = String::from_utf8_lossy(&err);
  ensure(code == EXIT_FAIL && err.contains("not 2-nilpotent") && err.contains("smallest vanishing power is 3"), || {
    format!("exit {code}, stderr {err:?}")
  })?;
  Ok(format!("{} relation failures with witnesses (first {}); Q_3 at h=2 rejected: {}", bad.len(), bad[0].id, err.trim()))
}

fn main() {
  let start = Instant::now();
  let mut results: Vec<(usize, &str, Outcome)> = Vec::new();
  match models() {
    Ok(m) => {
      results.push((1, "dimension ladder", c1(&m)));
      results.push((2, "relation suite", c2(&m)));
      results.push((3, "invariant-subspace homology", c3(&m)));
      results.push((4, "multiplicity formula oracle", c4()));
      results.push((5, "feasibility", c5()));
      results.push((6, "zero-mode complex homology", c6(&m)));
      results.push((7, "identities on the graded complex", c7(&m)));
      match hochschild_reports(&m) {
        Ok(reports) => {
          results.push((8, "hochschild suite", c8(&reports)));
          results.push((9, "filtered homology", c9(&reports)));
        }
        Err(e) => {
          results.push((8, "hochschild suite", Err(e.clone())));
          results.push((9, "filtered homology", Err(e)));
        }
      }
      results.push((10, "negative controls", c10(&m)));
    }
    Err(e) => {
      results.push((1, "dimension ladder", Err(e)));
      results.push((4, "multiplicity formula oracle", c4()));
      results.push((5, "feasibility", c5()));
    }
  }
  let mut failed = 0;
  for (n, name, outcome) in &results {
    match outcome {
      Ok(detail) => println!("criterion {n:>2} {name}: PASS ({detail})"),
      Err(why) => {
        failed += 1;
        println!("criterion {n:>2} {name}: FAIL ({why})");
      }
    }
  }
  println!("acceptance: {} of {} criteria passed in {:.1}s", results.len() - failed, 10, start.elapsed().as_secs_f64());
  if failed > 0 || results.len() != 10 {
    std::process::exit(1);
  }
}
