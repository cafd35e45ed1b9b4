//! End-to-end acceptance checks, one line per criterion.
//!
//! Runs without the libtest harness so that each criterion reports exactly
//! one PASS/FAIL line; exits non-zero if any criterion fails.

mod common;

use std::path::Path;
use std::time::Instant;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use common::{e1, integer_fixtures, is_integer, lambda_grid, random_fixtures};
use gh_simplex::correspondence::{all_correspondences, distortion, min_distortion};
use gh_simplex::generate::{random_integer_metric, random_metric};
use gh_simplex::lemmas::{max_abs_bound, max_with_abs, sup_abs_midpoint_form, sup_abs_over_set, sup_max_over_set};
use gh_simplex::simplex::{
    alpha_plus_via_mst, case_applies, case_bound, characteristics_with, gh_to_simplex_with, sweep_characteristics,
    sweep_space, BoundValue, Branch, Preset,
};
use gh_simplex::{
    classify_case, CaseTag, Characteristics, FiniteMetricSpace, Separation, Tolerance, DEFAULT_CAP,
};

const TOL: Tolerance = Tolerance::DEFAULT;

type Outcome = Result<String, String>;

fn ensure(ok: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if ok {
        Ok(())
    } else {
        Err(msg())
    }
}

fn all_fixtures() -> Vec<FiniteMetricSpace> {
    let mut v = integer_fixtures();
    v.extend(random_fixtures(120, 5, 1000));
    v
}

fn oracle(m: usize, lambda: f64, x: &FiniteMetricSpace) -> f64 {
    let s = FiniteMetricSpace::simplex(m, lambda).unwrap();
    min_distortion(&s, x, DEFAULT_CAP).unwrap().min_distortion
}

fn criterion_1() -> Outcome {
    let spaces = all_fixtures();
    let checks: Vec<Result<usize, String>> = spaces
        .par_iter()
        .map(|x| {
            let mut count = 0;
            for m in 1..=x.len() + 2 {
                for &lambda in &lambda_grid(x) {
                    let formula = gh_to_simplex_with(x, m, lambda, DEFAULT_CAP).map_err(|e| e.to_string())?;
                    let o = oracle(m, lambda, x);
                    ensure((formula.twice_gh - o).abs() <= 1e-9, || {
                        format!("n={} m={m} λ={lambda}: formula {} vs oracle {o}", x.len(), formula.twice_gh)
                    })?;
                    count += 1;
                }
            }
            Ok(count)
        })
        .collect();
    let mut total = 0;
    for c in checks {
        total += c?;
    }
    Ok(format!("{} spaces, {total} (m, λ) cases", spaces.len()))
}

fn criterion_2() -> Outcome {
    let mut count = 0;
    for x in all_fixtures() {
        let n = x.len();
        for m in n.max(2)..=n + 2 {
            for &lambda in &lambda_grid(&x) {
                let r = gh_to_simplex_with(&x, m, lambda, DEFAULT_CAP).map_err(|e| e.to_string())?;
                let want = if m > n { Branch::BiggerSimplex } else { Branch::EqualCardinality };
                ensure(r.branch == want, || format!("n={n} m={m}: branch {}", r.branch))?;
                let s = FiniteMetricSpace::simplex(m, lambda).unwrap();
                let irreducible = min_distortion(&s, &x, DEFAULT_CAP).unwrap().min_distortion;
                let exact = is_integer(&x);
                let agree = |a: f64, b: f64| if exact { a == b } else { (a - b).abs() <= 1e-9 };
                ensure(agree(r.twice_gh, irreducible), || {
                    format!("n={n} m={m} λ={lambda}: {} vs irreducible {irreducible}", r.twice_gh)
                })?;
                if m * n <= 12 {
                    let full = all_correspondences(m, n)
                        .unwrap()
                        .iter()
                        .map(|c| distortion(c.relation(), &s, &x))
                        .fold(f64::INFINITY, f64::min);
                    ensure(agree(r.twice_gh, full), || {
                        format!("n={n} m={m} λ={lambda}: {} vs all correspondences {full}", r.twice_gh)
                    })?;
                }
                count += 1;
            }
        }
    }
    Ok(format!("{count} closed-form cases"))
}

fn criterion_3() -> Outcome {
    let mut count = 0;
    let mut exact_rows = 0;
    for x in all_fixtures() {
        for m in 1..=x.len() + 2 {
            let rows = sweep_space(&x, m, &lambda_grid(&x), TOL, DEFAULT_CAP).map_err(|e| e.to_string())?;
            for r in rows {
                let v = r.value.expect("finite spaces carry the enumerated value");
                ensure(r.bound.lo() - 1e-9 <= v && v <= r.bound.hi() + 1e-9, || {
                    format!("n={} m={m} λ={}: {v} outside [{}, {}]", x.len(), r.lambda, r.bound.lo(), r.bound.hi())
                })?;
                if let BoundValue::Exact(e) = r.bound.value {
                    ensure(TOL.eq(e, v), || format!("n={} m={m} λ={}: exact {e} vs {v}", x.len(), r.lambda))?;
                    exact_rows += 1;
                }
                count += 1;
            }
        }
    }
    Ok(format!("{count} grid points, {exact_rows} in exact regions"))
}

fn chars(diam: f64, a_lo: f64, a_hi: f64, d_lo: f64, d_hi: f64) -> Characteristics {
    Characteristics {
        m: 2,
        diam,
        eps: None,
        alpha_minus: Separation::Finite(a_lo),
        alpha_plus: Separation::Finite(a_hi),
        d_minus: d_lo,
        d_plus: d_hi,
    }
}

/// Characteristics on the boundary between two cases, built from small
/// integers.
fn boundary_family() -> Vec<(CaseTag, CaseTag, Characteristics)> {
    use CaseTag::*;
    let mut out = Vec::new();
    for diam in 2..=8 {
        let diam = diam as f64;
        for a_lo in 0..=8 {
            for a_hi in a_lo..=8 {
                for d_lo in 0..=8 {
                    for d_hi in d_lo..=8 {
                        let (a_lo, a_hi, d_lo, d_hi) = (a_lo as f64, a_hi as f64, d_lo as f64, d_hi as f64);
                        if a_hi > diam || d_hi > diam {
                            continue;
                        }
                        let c = chars(diam, a_lo, a_hi, d_lo, d_hi);
                        let pairs: &[(CaseTag, CaseTag, bool)] = &[
                            (Case1, Case2, diam - a_lo == 2.0 * d_lo),
                            (Case2, Case3_1, diam - a_lo == 2.0 * d_hi),
                            (Case3_1, Case3_2, diam - a_hi == 2.0 * d_hi),
                            (AlphaZero, Case1, a_hi == 0.0 && diam <= 2.0 * d_lo),
                            (AlphaZero, Case2, a_hi == 0.0 && diam > 2.0 * d_lo),
                            (DmEqualsDiam, Case1, d_lo == diam),
                        ];
                        for &(p, q, on) in pairs {
                            if on && case_applies(p, &c, TOL).unwrap() && case_applies(q, &c, TOL).unwrap() {
                                out.push((p, q, c));
                            }
                        }
                    }
                }
            }
        }
    }
    out
}

fn criterion_4() -> Outcome {
    let family = boundary_family();
    ensure(family.len() >= 50, || format!("only {} boundary characteristics", family.len()))?;
    let mut kinds = std::collections::BTreeSet::new();
    for (p, q, c) in &family {
        kinds.insert((p.name(), q.name()));
        for k in 1..=40 {
            let lambda = k as f64 * c.diam / 10.0;
            let a = case_bound(*p, c, lambda, TOL).unwrap();
            let b = case_bound(*q, c, lambda, TOL).unwrap();
            ensure(TOL.eq(a.lo(), b.lo()) && TOL.eq(a.hi(), b.hi()), || {
                format!(
                    "{c:?} λ={lambda}: case {p} [{}, {}] vs case {q} [{}, {}]",
                    a.lo(),
                    a.hi(),
                    b.lo(),
                    b.hi()
                )
            })?;
        }
    }
    Ok(format!("{} characteristics across {} boundaries", family.len(), kinds.len()))
}

fn criterion_5() -> Outcome {
    let mut count = 0;
    for seed in 0..40u64 {
        for n in 2..=8 {
            for x in [random_metric(n, seed).unwrap(), random_integer_metric(n, 5, seed).unwrap()] {
                for m in 1..=n {
                    let c = characteristics_with(&x, m, DEFAULT_CAP).map_err(|e| e.to_string())?;
                    let via = alpha_plus_via_mst(&x, m).unwrap();
                    ensure(via == c.alpha_plus, || {
                        format!("seed {seed} n={n} m={m}: mst {via} vs enumerated {}", c.alpha_plus)
                    })?;
                    count += 1;
                }
            }
        }
    }
    Ok(format!("{count} (space, m) pairs"))
}

fn criterion_6() -> Outcome {
    let grid: Vec<f64> = (1..=40).map(|k| k as f64 * 0.125).collect();
    let circle: Preset = "circle-m2".parse().unwrap();
    for r in sweep_characteristics(&circle.characteristics(None).unwrap(), &grid, TOL).unwrap() {
        ensure(r.bound.value == BoundValue::Exact(r.lambda.max(2.0)), || {
            format!("circle λ={}: {:?}", r.lambda, r.bound.value)
        })?;
    }
    let mut count = 0;
    for n in 2..=5 {
        for lp in [0.5, 1.0, 2.0, 3.0] {
            let preset: Preset = format!("simplex-{n}-{lp}").parse().unwrap();
            let x = preset.space().unwrap();
            for m in 2..=n {
                for k in 1..=8 {
                    let lambda = k as f64 * lp / 2.0;
                    let o = oracle(m, lambda, &x);
                    if m < n {
                        let c = preset.characteristics(Some(m)).unwrap();
                        ensure(classify_case(&c, TOL).unwrap() == CaseTag::DmEqualsDiam, || {
                            format!("simplex n={n} λ'={lp} m={m} not DmEqualsDiam")
                        })?;
                        let b = sweep_characteristics(&c, &[lambda], TOL).unwrap()[0].bound;
                        let want = lp.max(lambda - lp);
                        ensure(b.value == BoundValue::Exact(want) && o == want, || {
                            format!("simplex n={n} λ'={lp} m={m} λ={lambda}: {:?}, oracle {o}, want {want}", b.value)
                        })?;
                    } else {
                        let d = gh_to_simplex_with(&x, m, lambda, DEFAULT_CAP).unwrap().twice_gh;
                        ensure(d == (lambda - lp).abs() && o == d, || {
                            format!("simplex n={n} λ'={lp} λ={lambda}: {d}, oracle {o}")
                        })?;
                    }
                    count += 1;
                }
            }
        }
    }
    Ok(format!("circle on {} grid points, {count} simplex cases", grid.len()))
}

fn within_ulp(a: f64, b: f64) -> bool {
    a == b || (a - b).abs() <= f64::EPSILON * a.abs().max(b.abs())
}

fn criterion_7() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    let samples = 10_000;
    for _ in 0..samples {
        let a: f64 = rng.gen_range(0.0..10.0);
        let b: f64 = rng.gen_range(0.0..10.0);
        let lambda: f64 = rng.gen_range(0.0..10.0);
        let len = rng.gen_range(1..8);
        let set: Vec<f64> = (0..len).map(|_| rng.gen_range(0.0..10.0)).collect();

        ensure(a.max((b - a).abs()) <= max_abs_bound(a, b), || format!("max_abs a={a} b={b}"))?;

        let direct = set.iter().map(|&x| (lambda - x).abs()).fold(f64::NEG_INFINITY, f64::max);
        let closed = sup_abs_over_set(&set, lambda).unwrap();
        ensure(within_ulp(direct, closed), || format!("sup|λ-a|: {direct} vs {closed}"))?;
        let mid = sup_abs_midpoint_form(&set, lambda).unwrap();
        ensure((direct - mid).abs() <= 8.0 * f64::EPSILON * direct.max(1.0), || {
            format!("midpoint form: {direct} vs {mid}")
        })?;

        let direct = set
            .iter()
            .map(|&x| lambda.max((lambda - x).abs()))
            .fold(f64::NEG_INFINITY, f64::max);
        let closed = sup_max_over_set(&set, lambda).unwrap();
        ensure(within_ulp(direct, closed), || format!("sup max: {direct} vs {closed}"))?;

        ensure(within_ulp(lambda.max((a - lambda).abs()), max_with_abs(a, lambda)), || {
            format!("max with abs a={a} λ={lambda}")
        })?;
    }
    Ok(format!("{samples} samples"))
}

fn run_cli(args: &[&str]) -> (i32, Vec<u8>) {
    let mut out = Vec::new();
    let mut err = Vec::new();
    let code = gh_simplex::cli::run(args.iter().copied(), &mut out, &mut err);
    (code, out)
}

fn criterion_8() -> Outcome {
    let dir = Path::new(env!("CARGO_MANIFEST_DIR")).join("tests/fixtures");
    let e1_path = dir.join("e1.csv");
    let e1_path = e1_path.to_str().unwrap();
    let cases: [(&str, Vec<&str>); 2] = [
        (
            "e1_m2.csv",
            vec!["sweep", "--input", e1_path, "--m", "2", "--lambda-min", "0.5", "--lambda-max", "5", "--lambda-step", "0.5"],
        ),
        (
            "circle_m2.csv",
            vec!["sweep", "--preset", "circle-m2", "--lambda-min", "0.5", "--lambda-max", "4", "--lambda-step", "0.5"],
        ),
    ];
    for (golden, args) in &cases {
        let want = std::fs::read(dir.join("golden").join(golden)).map_err(|e| e.to_string())?;
        for threads in ["1", "2", "4", "1"] {
            let mut full = vec!["gh-simplex", "--threads", threads];
            full.extend(args.iter().copied());
            let (code, out) = run_cli(&full);
            ensure(code == 0, || format!("{golden}: exit {code}"))?;
            ensure(out == want, || {
                format!("{golden} with {threads} threads:\n{}", String::from_utf8_lossy(&out))
            })?;
        }
    }
    // the in-memory E1 fixture must be the file's space
    let file = gh_simplex::io::read_space(Path::new(e1_path), Default::default()).unwrap();
    ensure(file == e1().with_labels(vec!["a".into(), "b".into(), "c".into()]).unwrap(), || {
        "e1.csv differs from the E1 space".into()
    })?;
    Ok("2 golden files, 4 runs each, threads 1/2/4".into())
}

fn main() {
    type Check = (&'static str, fn() -> Outcome);
    let criteria: [Check; 8] = [
        ("oracle equivalence", criterion_1),
        ("closed-form branches", criterion_2),
        ("bound sandwich", criterion_3),
        ("case-boundary agreement", criterion_4),
        ("MST cross-check", criterion_5),
        ("presets", criterion_6),
        ("scalar lemmas", criterion_7),
        ("sweep golden files", criterion_8),
    ];
    let mut failed = 0;
    for (i, (name, check)) in criteria.iter().enumerate() {
        let start = Instant::now();
        let outcome = std::panic::catch_unwind(check).unwrap_or_else(|_| Err("panicked".into()));
        let secs = start.elapsed().as_secs_f64();
        match outcome {
            Ok(detail) => println!("criterion {}: PASS  {name} ({detail}; {secs:.1}s)", i + 1),
            Err(why) => {
                failed += 1;
                println!("criterion {}: FAIL  {name}: {why}", i + 1);
            }
        }
    }
    if failed > 0 {
        std::process::exit(1);
    }
}
