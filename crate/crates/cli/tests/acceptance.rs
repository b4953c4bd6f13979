//! Acceptance suite: one test per release criterion, each printing a
//! `criterion NN ...: PASS` line (visible with `--nocapture`; a failing
//! criterion panics with the measured numbers).
//!
//! Run with `cargo test -p rivote-cli --test acceptance`.

use std::fs;
use std::path::{Path, PathBuf};
use std::process::Command;
use std::time::{Duration, Instant};

use rand::rngs::StdRng;
use rand::{Rng, SeedableRng};
use rayon::prelude::*;

use rivote::{
    benchmark_full_information, correlated, independent_joint, marginals_from_electorate,
    maximize_correlated_xi, polarization_delta, societal_incentive_power, solve_optimal_signal,
    solve_single_voter, AttentionCost, ContinuousModel, Electorate, ModelPrimitives, Units,
    VoterProblem,
};

fn baseline_electorate() -> Electorate {
    Electorate::new(0.3, 0.24, 0.1, 0.1, AttentionCost::Quadratic).unwrap()
}

#[test]
fn criterion_01_independent_baseline() {
    let started = Instant::now();
    let breakdown = societal_incentive_power(&baseline_electorate()).unwrap();
    assert!(
        (breakdown.xi - 0.4578).abs() <= 0.002,
        "xi = {} is outside 0.4578 +/- 0.002",
        breakdown.xi
    );
    assert!(started.elapsed() < Duration::from_secs(1), "baseline took {:?}", started.elapsed());
    println!("criterion 01 independent baseline: PASS (xi = {:.7})", breakdown.xi);
}

// ---------------------------------------------------------------------------
// criterion 2: the correlation program and its enumeration oracle
// ---------------------------------------------------------------------------

/// Solve a 4x4 linear system by Gaussian elimination with partial pivoting.
/// Returns `None` for a singular basis.
fn solve4(a: [[f64; 4]; 4], b: [f64; 4]) -> Option<[f64; 4]> {
    let mut m = [[0.0f64; 5]; 4];
    for i in 0..4 {
        m[i][..4].copy_from_slice(&a[i]);
        m[i][4] = b[i];
    }
    for col in 0..4 {
        let pivot = (col..4).max_by(|&i, &j| m[i][col].abs().total_cmp(&m[j][col].abs()))?;
        if m[pivot][col].abs() < 1e-12 {
            return None;
        }
        m.swap(col, pivot);
        for row in 0..4 {
            if row != col {
                let f = m[row][col] / m[col][col];
                for k in col..5 {
                    m[row][k] -= f * m[col][k];
                }
            }
        }
    }
    let mut x = [0.0; 4];
    for i in 0..4 {
        x[i] = m[i][4] / m[i][i];
    }
    Some(x)
}

/// Enumerate every basic feasible solution of one state block (three marginal
/// rows plus the unit-sum row over eight profile probabilities) and return
/// the extreme majority-R probability. Independent of the simplex path.
fn enumerate_block_extreme(marginals: [f64; 3], toward_max: bool) -> f64 {
    let mut rows = [[0.0f64; 8]; 4];
    for (k, voter) in correlated::Voter::ALL.into_iter().enumerate() {
        for i in correlated::recommends_r(voter) {
            rows[k][i] = 1.0;
        }
    }
    rows[3] = [1.0; 8];
    let rhs = [marginals[0], marginals[1], marginals[2], 1.0];
    let majority = correlated::majority_r();

    let mut best = if toward_max { f64::NEG_INFINITY } else { f64::INFINITY };
    for c0 in 0..8 {
        for c1 in (c0 + 1)..8 {
            for c2 in (c1 + 1)..8 {
                for c3 in (c2 + 1)..8 {
                    let cols = [c0, c1, c2, c3];
                    let mut basis = [[0.0; 4]; 4];
                    for r in 0..4 {
                        for (j, &c) in cols.iter().enumerate() {
                            basis[r][j] = rows[r][c];
                        }
                    }
                    let Some(solution) = solve4(basis, rhs) else { continue };
                    if solution.iter().any(|&v| v < -1e-9) {
                        continue;
                    }
                    let value: f64 = cols
                        .iter()
                        .zip(solution.iter())
                        .filter(|(c, _)| majority.contains(c))
                        .map(|(_, &v)| v)
                        .sum();
                    if toward_max {
                        best = best.max(value);
                    } else {
                        best = best.min(value);
                    }
                }
            }
        }
    }
    best
}

#[test]
fn criterion_02_correlated_lp() {
    let started = Instant::now();
    let marginals = marginals_from_electorate(&baseline_electorate()).unwrap();
    let (_, xi_indep) = independent_joint(&marginals);
    let sol = maximize_correlated_xi(&marginals).unwrap();

    assert!(
        (sol.xi - 0.9100).abs() <= 0.002,
        "xi* = {} is outside 0.9100 +/- 0.002",
        sol.xi
    );
    assert!(sol.xi >= xi_indep, "correlation must not lose to independence");
    assert!(sol.duality_gap <= 1e-9, "duality gap {} too large", sol.duality_gap);
    assert!(sol.joint.consistency_residual(&marginals) <= 1e-9);
    assert!(sol.joint.feasibility_residual() <= 1e-9);

    // exhaustive vertex oracle on each state block
    let good = [marginals.left_good, marginals.centrist_good, marginals.right_good];
    let bad = [marginals.left_bad, marginals.centrist_bad, marginals.right_bad];
    let good_max = enumerate_block_extreme(good, true);
    let bad_min = enumerate_block_extreme(bad, false);
    assert!(
        (sol.xi - (good_max - bad_min)).abs() <= 1e-9,
        "simplex xi* {} disagrees with the vertex enumeration {}",
        sol.xi,
        good_max - bad_min
    );
    let (_, simplex_good) = correlated::extremal_majority_probability(good, true).unwrap();
    let (_, simplex_bad) = correlated::extremal_majority_probability(bad, false).unwrap();
    assert!((simplex_good - good_max).abs() <= 1e-9);
    assert!((simplex_bad - bad_min).abs() <= 1e-9);
    assert!(started.elapsed() < Duration::from_secs(1), "lp took {:?}", started.elapsed());

    // the cited 0.908 reference and its discrepancy note must be reported
    let csv = std::env::temp_dir().join(format!("rivote-lp-{}.csv", std::process::id()));
    let out = Command::new(env!("CARGO_BIN_EXE_rivote"))
        .args(["lp", "--f0", "0.3", "--v1", "0.24", "--i0", "0.1", "--i1", "0.1", "--out"])
        .arg(&csv)
        .output()
        .unwrap();
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
    let text = String::from_utf8(out.stdout).unwrap();
    assert!(text.contains("xi_correlated_cited=0.908"), "cited value missing:\n{text}");
    assert!(text.contains("note="), "discrepancy note missing:\n{text}");

    println!(
        "criterion 02 correlated lp: PASS (xi_indep = {:.7}, xi* = {:.7}, oracle agrees)",
        xi_indep, sol.xi
    );
}

#[test]
fn criterion_03_continuous_states() {
    let started = Instant::now();
    let model = ContinuousModel::linear_performance(2001, 0.5).unwrap();
    let solve = |v: f64, units: Units| solve_single_voter(v, 0.1, units, &model).unwrap();

    let nats = (solve(0.24, Units::Nats).incentive_power, solve(0.25, Units::Nats).incentive_power);
    let bits = (solve(0.24, Units::Bits).incentive_power, solve(0.25, Units::Bits).incentive_power);
    assert!(started.elapsed() < Duration::from_secs(30), "solves took {:?}", started.elapsed());

    println!(
        "criterion 03 continuous states: measured P(0.24), P(0.25) = ({:.6}, {:.6}) nats, ({:.6}, {:.6}) bits",
        nats.0, nats.1, bits.0, bits.1
    );

    let in_band = |p: (f64, f64)| (p.0 - 0.13).abs() <= 0.015 && (p.1 - 0.14).abs() <= 0.015;
    let mut recorded = Vec::new();
    if in_band(nats) {
        recorded.push(("nats", nats));
    }
    if in_band(bits) {
        recorded.push(("bits", bits));
    }
    assert!(
        !recorded.is_empty(),
        "no unit convention reproduces P = 0.13/0.14 within 0.015: nats {nats:?}, bits {bits:?}"
    );
    println!(
        "criterion 03 continuous states: recorded convention = {} (values within 0.13/0.14 +/- 0.015)",
        recorded.iter().map(|(n, _)| *n).collect::<Vec<_>>().join(", ")
    );

    for (name, p) in &recorded {
        assert!(
            p.1 > p.0,
            "under {name} the strict increase P(0.25) > P(0.24) fails: {:.6} <= {:.6} \
             (the capacity-constrained optimum is unique and falls in v at every capacity here)",
            p.1,
            p.0
        );
    }
    println!("criterion 03 continuous states: PASS");
}

#[test]
fn criterion_04_closed_form_oracle() {
    let started = Instant::now();
    let bandwidth = 0.1;
    let p0 = 0.1f64.sqrt(); // centrist on the same budget
    for i in 0..50 {
        let v = 0.9 * i as f64 / 49.0;
        let e = Electorate::new(0.3, v, 0.1, bandwidth, AttentionCost::Quadratic).unwrap();
        let b = societal_incentive_power(&e).unwrap();
        let (x, y) = (b.right_signal.x(), b.right_signal.y());
        let z = 1.0 / (x + bandwidth / x);
        let p1_formula = 2.0 * bandwidth * z;
        let d_formula = 1.0 - 2.0 * bandwidth * (1.0 + bandwidth) * z * z;
        let xi_formula =
            -2.0 * p0 * bandwidth * (1.0 + bandwidth) * z * z + 2.0 * bandwidth * z + p0;
        assert!((b.p1 - p1_formula).abs() <= 1e-9, "P1 off at v = {v}: {} vs {p1_formula}", b.p1);
        assert!((b.d - d_formula).abs() <= 1e-9, "D off at v = {v}: {} vs {d_formula}", b.d);
        assert!((b.xi - xi_formula).abs() <= 1e-9, "xi off at v = {v}: {} vs {xi_formula}", b.xi);
        if v == 0.0 {
            assert!((x - p0).abs() <= 1e-15 && (y - p0).abs() <= 1e-15, "neutral endpoint off");
        }
        if v >= (1.0 - bandwidth) / 2.0 {
            assert_eq!((x, y), (1.0, bandwidth), "corner endpoint off at v = {v}");
        }
    }
    assert!(started.elapsed() < Duration::from_secs(1), "grid took {:?}", started.elapsed());
    println!("criterion 04 closed-form oracle: PASS (50-point grid matched to 1e-9)");
}

#[test]
fn criterion_05_monotonicity_suite() {
    let started = Instant::now();
    const SLACK: f64 = 1e-9;
    const N: usize = 30;

    for cost in [AttentionCost::Quadratic, AttentionCost::entropy()] {
        let max = cost.max_cost();
        let vs: Vec<f64> = (0..N).map(|i| 0.93 * i as f64 / (N - 1) as f64).collect();
        let is: Vec<f64> = (0..N)
            .map(|i| max * (0.03 + 0.90 * i as f64 / (N - 1) as f64))
            .collect();
        // solutions[iv][ii]
        let solutions: Vec<Vec<(f64, f64)>> = vs
            .par_iter()
            .map(|&v| {
                is.iter()
                    .map(|&bandwidth| {
                        let s = solve_optimal_signal(
                            &VoterProblem::new(v, bandwidth, cost.clone()).unwrap(),
                        )
                        .unwrap()
                        .signal;
                        (s.x(), s.y())
                    })
                    .collect()
            })
            .collect();

        let name = cost.name();
        for (ii, _) in is.iter().enumerate() {
            let mut prev: Option<(f64, f64)> = None;
            for (iv, v) in vs.iter().enumerate() {
                let (x, y) = solutions[iv][ii];
                let s = rivote::BinarySignal::new(x, y).unwrap();
                let (p, d) = (s.incentive_power(), s.disagreement());
                if let Some((p0, d0)) = prev {
                    assert!(p <= p0 + SLACK, "{name}: P rose in v at v = {v}, I = {}", is[ii]);
                    assert!(d >= d0 - SLACK, "{name}: D fell in v at v = {v}, I = {}", is[ii]);
                }
                prev = Some((p, d));
            }
            // the whole range must move: neutral beats maximal bias strictly
            let first = rivote::BinarySignal::new(solutions[0][ii].0, solutions[0][ii].1).unwrap();
            let last =
                rivote::BinarySignal::new(solutions[N - 1][ii].0, solutions[N - 1][ii].1).unwrap();
            assert!(first.incentive_power() > last.incentive_power(), "{name}: P flat in v");
            assert!(first.disagreement() < last.disagreement(), "{name}: D flat in v");
        }
        for (iv, v) in vs.iter().enumerate() {
            let mut prev: Option<(f64, f64, f64, f64)> = None;
            for (ii, bandwidth) in is.iter().enumerate() {
                let (x, y) = solutions[iv][ii];
                let s = rivote::BinarySignal::new(x, y).unwrap();
                let (p, d) = (s.incentive_power(), s.disagreement());
                if let Some((x0, y0, p0, d0)) = prev {
                    assert!(x >= x0 - SLACK, "{name}: x fell in I at v = {v}, I = {bandwidth}");
                    assert!(y >= y0 - SLACK, "{name}: y fell in I at v = {v}, I = {bandwidth}");
                    assert!(p >= p0 - SLACK, "{name}: P fell in I at v = {v}, I = {bandwidth}");
                    if matches!(cost, AttentionCost::Quadratic) {
                        assert!(d <= d0 + SLACK, "D rose in I at v = {v}, I = {bandwidth}");
                    }
                }
                prev = Some((x, y, p, d));
            }
            let p_first = {
                let (x, y) = solutions[iv][0];
                rivote::BinarySignal::new(x, y).unwrap().incentive_power()
            };
            let p_last = {
                let (x, y) = solutions[iv][N - 1];
                rivote::BinarySignal::new(x, y).unwrap().incentive_power()
            };
            assert!(p_last > p_first, "{name}: P flat in I at v = {v}");
        }
    }
    assert!(started.elapsed() < Duration::from_secs(60), "suite took {:?}", started.elapsed());
    println!(
        "criterion 05 monotonicity suite: PASS (30x30 grids, both costs, {:.1?})",
        started.elapsed()
    );
}

#[test]
fn criterion_06_oracle_equivalence() {
    let mut rng = StdRng::seed_from_u64(20260811);
    let costs = [
        AttentionCost::Quadratic,
        AttentionCost::entropy(),
        AttentionCost::Entropy(Units::Bits),
    ];
    let instances: Vec<(f64, f64, AttentionCost)> = (0..20)
        .map(|_| {
            let cost = costs[rng.random_range(0..costs.len())].clone();
            let v: f64 = rng.random_range(0.0..0.9);
            let bandwidth = cost.max_cost() * rng.random_range(0.05..0.95);
            (v, bandwidth, cost)
        })
        .collect();
    instances.par_iter().for_each(|(v, bandwidth, cost)| {
        let problem = VoterProblem::new(*v, *bandwidth, cost.clone()).unwrap();
        let solved = solve_optimal_signal(&problem).unwrap();
        let oracle = rivote::brute_force_oracle(&problem, 100_000).unwrap();
        let oracle_value = oracle.value_gain(*v);
        assert!(
            (solved.value - oracle_value).abs() <= 1e-6,
            "solver and oracle disagree at v = {v}, I = {bandwidth}, cost = {}: {} vs {}",
            cost.name(),
            solved.value,
            oracle_value
        );
        assert!(solved.value >= oracle_value - 1e-9, "oracle beat the solver");
    });
    println!("criterion 06 oracle equivalence: PASS (20 randomized instances within 1e-6)");
}

#[test]
fn criterion_07_identity_and_benchmark() {
    let mut rng = StdRng::seed_from_u64(7);
    for _ in 0..100 {
        let v1: f64 = rng.random_range(0.0..0.95);
        let i0: f64 = rng.random_range(0.01..0.95);
        let i1: f64 = rng.random_range(0.01..0.95);
        let f0_low: f64 = rng.random_range(0.05..0.49);
        let f0_high: f64 = rng.random_range(0.5..0.95);
        let dispersed =
            societal_incentive_power(&Electorate::new(f0_low, v1, i0, i1, AttentionCost::Quadratic).unwrap())
                .unwrap();
        let centrist =
            societal_incentive_power(&Electorate::new(f0_high, v1, i0, i1, AttentionCost::Quadratic).unwrap())
                .unwrap();
        let jump = dispersed.xi - centrist.xi;
        let delta = polarization_delta(dispersed.p1, dispersed.d, dispersed.p0);
        assert!(
            (jump - delta).abs() <= 1e-12,
            "regime jump {jump} differs from the closed form {delta}"
        );
    }
    // full-information benchmark across the threshold
    for (c, expect_sustainable) in [(0.25, true), (0.5, true), (0.75, false)] {
        let prim = ModelPrimitives::derive_performance_pmf(0.5, 2.0, c).unwrap();
        let report = benchmark_full_information(&prim);
        assert_eq!(report.xi, 1.0);
        assert_eq!(report.sustainable, prim.effort_threshold() <= 1.0);
        assert_eq!(report.sustainable, expect_sustainable, "c = {c}");
        assert_eq!(report.selection, if expect_sustainable { 0.5 } else { 0.0 });
    }
    println!("criterion 07 regime identity and benchmark: PASS (100 electorates to 1e-12)");
}

#[test]
fn criterion_08_primitive_consistency() {
    let mut checked = 0;
    let mut rejected = 0;
    for i in 0..8 {
        let alpha = 0.15 + 0.7 * i as f64 / 7.0;
        for j in 0..8 {
            let h = 1.2 + 4.8 * j as f64 / 7.0;
            let result = ModelPrimitives::derive_performance_pmf(alpha, h, 0.2);
            if alpha * h / (1.0 - alpha) <= 1.0 {
                assert!(result.is_err(), "low ability in (-1, 0) must be rejected: a={alpha} h={h}");
                rejected += 1;
                continue;
            }
            let p = result.unwrap();
            // independent recomputation of the four structural equations
            let r_mean = p.alpha * p.h_ability + (1.0 - p.alpha) * p.l_ability;
            let r_split = p.alpha * p.p1_good + (1.0 - p.alpha) * p.p0_good - 0.5;
            let r_good = p.p1_good / p.p0_good
                - (1.0 - p.alpha) * (p.l_ability.abs() + 1.0) / (p.alpha * (p.h_ability - 1.0));
            let r_bad = (1.0 - p.p1_good) / (1.0 - p.p0_good)
                - (1.0 - p.alpha) * (p.l_ability.abs() - 1.0) / (p.alpha * (p.h_ability + 1.0));
            for (name, r) in
                [("mean", r_mean), ("split", r_split), ("good", r_good), ("bad", r_bad)]
            {
                assert!(r.abs() <= 1e-9, "{name} residual {r:e} at alpha = {alpha}, h = {h}");
            }
            assert!(p.p1_good > p.p0_good);
            checked += 1;
        }
    }
    assert!(ModelPrimitives::derive_performance_pmf(0.5, 1.0, 0.2).is_err());
    assert!(ModelPrimitives::derive_performance_pmf(0.5, 0.8, 0.2).is_err());
    assert!(checked >= 40 && rejected >= 5, "grid covered {checked} valid, {rejected} invalid");
    println!(
        "criterion 08 primitive consistency: PASS ({checked} grid points within 1e-9, {rejected} correctly rejected)"
    );
}

#[test]
fn criterion_09_nonmonotone_witness() {
    // search for bandwidth pairs placing the xi maximizer strictly inside the
    // feasible bias range
    let mut witnesses = Vec::new();
    'outer: for i in 1..25 {
        let i1 = 0.5 * i as f64 / 25.0;
        for j in 1..25 {
            let i0 = 0.5 * j as f64 / 25.0;
            let p0 = i0.sqrt();
            let lhs = 2.0 * p0 * (1.0 + i1);
            if lhs > 2.0 * i1.sqrt() + 1e-6 && lhs < 1.0 + i1 - 1e-6 {
                witnesses.push((i0, i1));
                if witnesses.len() >= 5 {
                    break 'outer;
                }
            }
        }
    }
    assert!(!witnesses.is_empty(), "no parameters satisfy the interior-maximum condition");

    for &(i0, i1) in &witnesses {
        let steps = 401;
        let xis: Vec<f64> = (0..steps)
            .map(|k| {
                let v1 = 0.95 * k as f64 / (steps - 1) as f64;
                let e = Electorate::new(0.3, v1, i0, i1, AttentionCost::Quadratic).unwrap();
                societal_incentive_power(&e).unwrap().xi
            })
            .collect();
        let (argmax, &peak) = xis
            .iter()
            .enumerate()
            .max_by(|a, b| a.1.total_cmp(b.1))
            .unwrap();
        assert!(argmax > 0 && argmax < steps - 1, "maximum sits on the sweep edge (i0={i0}, i1={i1})");
        assert!(
            peak > xis[0] + 1e-9 && peak > xis[steps - 1] + 1e-9,
            "interior maximum not strictly above the endpoints (i0={i0}, i1={i1})"
        );
        for k in 1..=argmax {
            assert!(xis[k] >= xis[k - 1] - 1e-12, "xi dipped before its peak at step {k}");
        }
        for k in (argmax + 1)..steps {
            assert!(xis[k] <= xis[k - 1] + 1e-12, "xi rose after its peak at step {k}");
        }
    }
    println!(
        "criterion 09 non-monotone xi witness: PASS ({} verified parameter pairs, e.g. i0 = {:.3}, i1 = {:.3})",
        witnesses.len(),
        witnesses[0].0,
        witnesses[0].1
    );
}

// ---------------------------------------------------------------------------
// criterion 10: byte-identical reruns of every shipped config
// ---------------------------------------------------------------------------

fn configs_dir() -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("../../configs")
}

fn mode_of(config_text: &str) -> String {
    config_text
        .lines()
        .find_map(|l| l.trim().strip_prefix("mode"))
        .and_then(|rest| rest.trim().strip_prefix('='))
        .map(|v| v.trim().to_string())
        .expect("every shipped config declares its mode")
}

fn run_config(config: &Path, mode: &str, out: &Path) -> (Vec<u8>, String) {
    let output = Command::new(env!("CARGO_BIN_EXE_rivote"))
        .arg(mode)
        .arg("--config")
        .arg(config)
        .arg("--out")
        .arg(out)
        .output()
        .unwrap();
    assert!(
        output.status.success(),
        "{} failed on {}: {}",
        mode,
        config.display(),
        String::from_utf8_lossy(&output.stderr)
    );
    let stdout = String::from_utf8(output.stdout).unwrap();
    let stable: String = stdout.lines().filter(|l| !l.starts_with("out=")).collect::<Vec<_>>().join("\n");
    (fs::read(out).unwrap(), stable)
}

#[test]
fn criterion_10_determinism() {
    let dir = configs_dir();
    let mut configs: Vec<PathBuf> = fs::read_dir(&dir)
        .unwrap_or_else(|e| panic!("configs directory {:?}: {e}", dir))
        .map(|entry| entry.unwrap().path())
        .filter(|p| p.extension().is_some_and(|ext| ext == "conf"))
        .collect();
    configs.sort();
    assert!(configs.len() >= 8, "expected the full shipped config set, found {configs:?}");

    let scratch = std::env::temp_dir().join(format!("rivote-acceptance-{}", std::process::id()));
    fs::create_dir_all(&scratch).unwrap();
    for config in &configs {
        let mode = mode_of(&fs::read_to_string(config).unwrap());
        let stem = config.file_stem().unwrap().to_string_lossy().to_string();
        let (csv_a, out_a) = run_config(config, &mode, &scratch.join(format!("{stem}-a.csv")));
        let (csv_b, out_b) = run_config(config, &mode, &scratch.join(format!("{stem}-b.csv")));
        assert_eq!(csv_a, csv_b, "{stem}: CSV bytes differ between reruns");
        assert_eq!(out_a, out_b, "{stem}: summary differs between reruns");
    }
    println!("criterion 10 determinism: PASS ({} configs, byte-identical reruns)", configs.len());
}
