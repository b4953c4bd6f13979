//! One runner per subcommand. Each runner validates the merged scenario,
//! prints a `key=value` summary to standard output, and writes a CSV file
//! when an output path is configured.

use std::fmt::Display;
use std::fs;
use std::path::Path;

use rayon::prelude::*;

use rivote::{
    benchmark_full_information, independent_joint, marginals_from_electorate,
    maximize_correlated_xi, societal_incentive_power, solve_optimal_signal, solve_single_voter,
    AttentionCost, ContinuousModel, Electorate, ModelPrimitives, SignalStatistics, VoterProblem,
};

use crate::config::{validate, ConfigError, Mode, ScenarioConfig, SweepParameter};
use crate::report::{fmt_g9, Csv};

/// Failure classes mapped to exit codes: validation -> 1, the rest -> 2.
pub enum CliError {
    Validation(Vec<ConfigError>),
    Solver(String),
    Io(String),
}

impl CliError {
    pub fn exit_code(&self) -> u8 {
        match self {
            CliError::Validation(_) => 1,
            CliError::Solver(_) | CliError::Io(_) => 2,
        }
    }

    pub fn report(&self) {
        match self {
            CliError::Validation(errors) => {
                eprintln!("configuration is invalid:");
                for e in errors {
                    eprintln!("  {e}");
                }
            }
            CliError::Solver(msg) => eprintln!("solver failure: {msg}"),
            CliError::Io(msg) => eprintln!("io failure: {msg}"),
        }
    }
}

fn summary(key: &str, value: impl Display) {
    println!("{key}={value}");
}

fn write_csv(path: &Path, csv: Csv) -> Result<(), CliError> {
    if let Some(parent) = path.parent() {
        if !parent.as_os_str().is_empty() {
            fs::create_dir_all(parent)
                .map_err(|e| CliError::Io(format!("creating {}: {e}", parent.display())))?;
        }
    }
    fs::write(path, csv.into_string())
        .map_err(|e| CliError::Io(format!("writing {}: {e}", path.display())))
}

fn check(cfg: &ScenarioConfig, mode: Mode) -> Result<(), CliError> {
    let errors = validate(cfg, mode);
    if errors.is_empty() {
        Ok(())
    } else {
        Err(CliError::Validation(errors))
    }
}

fn electorate(cfg: &ScenarioConfig) -> Result<Electorate, CliError> {
    Electorate::new(
        cfg.f0.expect("validated"),
        cfg.v1.expect("validated"),
        cfg.i0.expect("validated"),
        cfg.i1.expect("validated"),
        cfg.cost(),
    )
    .map_err(|e| CliError::Solver(e.to_string()))
}

fn primitives(cfg: &ScenarioConfig) -> Result<ModelPrimitives, CliError> {
    ModelPrimitives::derive_performance_pmf(
        cfg.alpha.expect("validated"),
        cfg.h_ability.expect("validated"),
        cfg.c.expect("validated"),
    )
    .map_err(|e| CliError::Solver(e.to_string()))
}

pub fn run(mode: Mode, cfg: &ScenarioConfig) -> Result<(), CliError> {
    check(cfg, mode)?;
    summary("mode", mode.as_str());
    match mode {
        Mode::Solve => run_solve(cfg),
        Mode::Xi => run_xi(cfg),
        Mode::Sweep => run_sweep(cfg),
        Mode::Lp => run_lp(cfg),
        Mode::Continuous => run_continuous(cfg),
        Mode::Benchmark => run_benchmark(cfg),
    }
}

fn run_solve(cfg: &ScenarioConfig) -> Result<(), CliError> {
    let cost = cfg.cost();
    let v = cfg.v1.expect("validated");
    let bandwidth = cfg.i1.expect("validated");
    let problem =
        VoterProblem::new(v, bandwidth, cost.clone()).map_err(|e| CliError::Solver(e.to_string()))?;
    let solved = solve_optimal_signal(&problem).map_err(|e| CliError::Solver(e.to_string()))?;
    let stats = SignalStatistics::from_signal(&solved.signal, v);
    let (pi_l, pi_r) = solved.signal.outcome_probabilities();

    summary("cost", cost.name());
    summary("v", fmt_g9(v));
    summary("bandwidth", fmt_g9(bandwidth));
    summary("x", fmt_g9(solved.signal.x()));
    summary("y", fmt_g9(solved.signal.y()));
    summary("pi_L", fmt_g9(pi_l));
    summary("pi_R", fmt_g9(pi_r));
    summary("a_plus", fmt_g9(stats.a_plus));
    summary("a_minus", fmt_g9(stats.a_minus));
    summary("incentive_power", fmt_g9(stats.incentive_power));
    summary("value", fmt_g9(solved.value));
    summary("lambda", fmt_g9(solved.multiplier));
    summary("kind", solved.kind.as_str());

    if let Some(path) = &cfg.out {
        let mut csv = Csv::new(&[
            "v", "bandwidth", "cost", "x", "y", "pi_L", "pi_R", "a_plus", "a_minus", "P", "value",
            "lambda", "kind",
        ]);
        csv.row(&[
            fmt_g9(v),
            fmt_g9(bandwidth),
            cost.name().to_string(),
            fmt_g9(solved.signal.x()),
            fmt_g9(solved.signal.y()),
            fmt_g9(pi_l),
            fmt_g9(pi_r),
            fmt_g9(stats.a_plus),
            fmt_g9(stats.a_minus),
            fmt_g9(stats.incentive_power),
            fmt_g9(solved.value),
            fmt_g9(solved.multiplier),
            solved.kind.as_str().to_string(),
        ]);
        write_csv(path, csv)?;
        summary("out", path.display());
    }
    Ok(())
}

fn run_xi(cfg: &ScenarioConfig) -> Result<(), CliError> {
    let e = electorate(cfg)?;
    let prim = if cfg.has_primitives() { Some(primitives(cfg)?) } else { None };
    let breakdown = societal_incentive_power(&e).map_err(|err| CliError::Solver(err.to_string()))?;
    let report = prim.as_ref().map(|p| rivote::verdict(&breakdown, p));

    summary("cost", e.cost.name());
    summary("f0", fmt_g9(e.f0));
    summary("v1", fmt_g9(e.v1));
    summary("i0", fmt_g9(e.i0));
    summary("i1", fmt_g9(e.i1));
    summary("x1", fmt_g9(breakdown.right_signal.x()));
    summary("y1", fmt_g9(breakdown.right_signal.y()));
    summary("P1", fmt_g9(breakdown.p1));
    summary("D", fmt_g9(breakdown.d));
    summary("P0", fmt_g9(breakdown.p0));
    summary("xi", fmt_g9(breakdown.xi));
    summary("regime", breakdown.regime.as_str());
    if let Some(r) = &report {
        summary("c_hat", fmt_g9(r.c_hat));
        summary("sustainable", r.sustainable);
        summary("selection", fmt_g9(r.selection));
    }

    if let Some(path) = &cfg.out {
        let mut csv = Csv::new(&[
            "f0", "v1", "i0", "i1", "cost", "x1", "y1", "P1", "D", "P0", "xi", "regime", "c_hat",
            "sustainable", "selection",
        ]);
        let (c_hat, sustainable, selection) = match &report {
            Some(r) => (fmt_g9(r.c_hat), r.sustainable.to_string(), fmt_g9(r.selection)),
            None => ("na".into(), "na".into(), "na".into()),
        };
        csv.row(&[
            fmt_g9(e.f0),
            fmt_g9(e.v1),
            fmt_g9(e.i0),
            fmt_g9(e.i1),
            e.cost.name().to_string(),
            fmt_g9(breakdown.right_signal.x()),
            fmt_g9(breakdown.right_signal.y()),
            fmt_g9(breakdown.p1),
            fmt_g9(breakdown.d),
            fmt_g9(breakdown.p0),
            fmt_g9(breakdown.xi),
            breakdown.regime.as_str().to_string(),
            c_hat,
            sustainable,
            selection,
        ]);
        write_csv(path, csv)?;
        summary("out", path.display());
    }
    Ok(())
}

struct SweepRow {
    value: f64,
    outcome: Result<SweepCells, String>,
}

struct SweepCells {
    x: f64,
    y: f64,
    p1: f64,
    d: f64,
    p0: f64,
    xi: f64,
    sustainable: Option<bool>,
}

fn run_sweep(cfg: &ScenarioConfig) -> Result<(), CliError> {
    let param = cfg.sweep_parameter.expect("validated");
    let from = cfg.sweep_from.expect("validated");
    let to = cfg.sweep_to.expect("validated");
    let steps = cfg.sweep_steps.expect("validated");
    let prim = if cfg.has_primitives() { Some(primitives(cfg)?) } else { None };
    let cost = cfg.cost();

    let values: Vec<f64> = (0..steps)
        .map(|i| {
            if i + 1 == steps {
                to
            } else {
                from + (to - from) * i as f64 / (steps - 1) as f64
            }
        })
        .collect();

    // pure evaluations in parallel; the collect keeps sweep order
    let rows: Vec<SweepRow> = values
        .par_iter()
        .map(|&value| SweepRow { value, outcome: sweep_point(cfg, &cost, param, value, prim.as_ref()) })
        .collect();

    // z = 1 / (x + y) is the natural abscissa for the incentive-power and
    // disagreement curves; under the quadratic cost it equals 1 / (x + I/x)
    let mut csv = Csv::new(&[
        param.as_str(),
        "x",
        "y",
        "z",
        "P1",
        "D",
        "P0",
        "xi",
        "sustainable",
        "status",
    ]);
    let mut failures = 0usize;
    for row in &rows {
        match &row.outcome {
            Ok(cells) => csv.row(&[
                fmt_g9(row.value),
                fmt_g9(cells.x),
                fmt_g9(cells.y),
                fmt_g9(1.0 / (cells.x + cells.y)),
                fmt_g9(cells.p1),
                fmt_g9(cells.d),
                fmt_g9(cells.p0),
                fmt_g9(cells.xi),
                cells.sustainable.map_or_else(|| "na".to_string(), |s| s.to_string()),
                "ok".to_string(),
            ]),
            Err(message) => {
                failures += 1;
                let na = "na".to_string();
                csv.row(&[
                    fmt_g9(row.value),
                    na.clone(),
                    na.clone(),
                    na.clone(),
                    na.clone(),
                    na.clone(),
                    na.clone(),
                    na.clone(),
                    na,
                    message.clone(),
                ]);
            }
        }
    }
    let path = cfg.out.as_ref().expect("validated");
    write_csv(path, csv)?;

    summary("cost", cost.name());
    summary("parameter", param.as_str());
    summary("from", fmt_g9(from));
    summary("to", fmt_g9(to));
    summary("rows", rows.len());
    summary("failures", failures);
    summary("out", path.display());
    if failures > 0 {
        return Err(CliError::Solver(format!("{failures} sweep rows failed; see the status column")));
    }
    Ok(())
}

fn sweep_point(
    cfg: &ScenarioConfig,
    cost: &AttentionCost,
    param: SweepParameter,
    value: f64,
    prim: Option<&ModelPrimitives>,
) -> Result<SweepCells, String> {
    let pick = |own: Option<f64>, target: SweepParameter| {
        if param == target {
            value
        } else {
            own.expect("validated")
        }
    };
    let e = Electorate::new(
        pick(cfg.f0, SweepParameter::F0),
        pick(cfg.v1, SweepParameter::V1),
        pick(cfg.i0, SweepParameter::I0),
        pick(cfg.i1, SweepParameter::I1),
        cost.clone(),
    )
    .map_err(|e| e.to_string())?;
    let b = societal_incentive_power(&e).map_err(|e| e.to_string())?;
    Ok(SweepCells {
        x: b.right_signal.x(),
        y: b.right_signal.y(),
        p1: b.p1,
        d: b.d,
        p0: b.p0,
        xi: b.xi,
        sustainable: prim.map(|p| rivote::verdict(&b, p).sustainable),
    })
}

/// Reference optimum circulated for the canonical correlation configuration
/// (quadratic cost, every bandwidth 0.1, v1 = 0.24). It stems from a joint
/// distribution that violates the per-voter marginal rows; the constrained
/// optimum is 0.910010, and both are reported for comparison.
const CANONICAL_LP_CITED_XI: f64 = 0.908;

fn is_canonical_lp(e: &Electorate) -> bool {
    matches!(e.cost, AttentionCost::Quadratic)
        && (e.v1 - 0.24).abs() < 1e-12
        && (e.i0 - 0.1).abs() < 1e-12
        && (e.i1 - 0.1).abs() < 1e-12
}

fn run_lp(cfg: &ScenarioConfig) -> Result<(), CliError> {
    let e = electorate(cfg)?;
    let marginals = marginals_from_electorate(&e).map_err(|err| CliError::Solver(err.to_string()))?;
    let (indep, xi_indep) = independent_joint(&marginals);
    let sol = maximize_correlated_xi(&marginals).map_err(|err| CliError::Solver(err.to_string()))?;

    summary("cost", e.cost.name());
    summary("f0", fmt_g9(e.f0));
    summary("v1", fmt_g9(e.v1));
    summary("i0", fmt_g9(e.i0));
    summary("i1", fmt_g9(e.i1));
    summary("m_right_good", fmt_g9(marginals.right_good));
    summary("m_centrist_good", fmt_g9(marginals.centrist_good));
    summary("m_left_good", fmt_g9(marginals.left_good));
    summary("m_right_bad", fmt_g9(marginals.right_bad));
    summary("m_centrist_bad", fmt_g9(marginals.centrist_bad));
    summary("m_left_bad", fmt_g9(marginals.left_bad));
    summary("xi_independent", fmt_g9(xi_indep));
    summary("xi_correlated", fmt_g9(sol.xi));
    summary("duality_gap", fmt_g9(sol.duality_gap));
    if is_canonical_lp(&e) {
        summary("xi_correlated_cited", fmt_g9(CANONICAL_LP_CITED_XI));
        summary(
            "note",
            "the cited 0.908 comes from a joint distribution that violates the marginal rows; \
             the constrained optimum is xi_correlated (see README)",
        );
    }

    if let Some(path) = &cfg.out {
        let mut csv = Csv::new(&["distribution", "state", "profile", "probability"]);
        let blocks: [(&str, &str, &[f64; 8]); 4] = [
            ("independent", "good", &indep.good),
            ("independent", "bad", &indep.bad),
            ("optimal", "good", &sol.joint.good),
            ("optimal", "bad", &sol.joint.bad),
        ];
        for (dist, state, probs) in blocks {
            for (profile, p) in rivote::correlated::PROFILES.iter().zip(probs.iter()) {
                csv.row(&[
                    dist.to_string(),
                    state.to_string(),
                    (*profile).to_string(),
                    fmt_g9(*p),
                ]);
            }
        }
        write_csv(path, csv)?;
        summary("out", path.display());
    }
    Ok(())
}

fn run_continuous(cfg: &ScenarioConfig) -> Result<(), CliError> {
    let v = cfg.cont_v.expect("validated");
    let capacity = cfg.cont_capacity.expect("validated");
    let units = cfg.units();
    let n = cfg.grid_points_or_default();
    let alpha = cfg.alpha.unwrap_or(0.5);
    let model =
        ContinuousModel::linear_performance(n, alpha).map_err(|e| CliError::Solver(e.to_string()))?;
    let sol = solve_single_voter(v, capacity, units, &model)
        .map_err(|e| CliError::Solver(e.to_string()))?;

    summary("v", fmt_g9(v));
    summary("capacity", fmt_g9(capacity));
    summary("units", units);
    summary("grid_points", n);
    summary("alpha", fmt_g9(alpha));
    summary("lambda", fmt_g9(sol.lambda));
    summary("q", fmt_g9(sol.q));
    summary("capacity_used_nats", fmt_g9(sol.capacity_used));
    summary("incentive_power", fmt_g9(sol.incentive_power));
    summary("value", fmt_g9(sol.value));
    summary("binding", sol.binding);

    let path = cfg.out.as_ref().expect("validated");
    let mut csv = Csv::new(&["omega", "m", "p1", "p0", "pbar"]);
    for i in 0..model.len() {
        csv.row(&[
            fmt_g9(model.omega()[i]),
            fmt_g9(sol.m[i]),
            fmt_g9(model.p1()[i]),
            fmt_g9(model.p0()[i]),
            fmt_g9(model.pbar()[i]),
        ]);
    }
    write_csv(path, csv)?;
    summary("out", path.display());
    Ok(())
}

fn run_benchmark(cfg: &ScenarioConfig) -> Result<(), CliError> {
    let prim = primitives(cfg)?;
    let report = benchmark_full_information(&prim);

    summary("alpha", fmt_g9(prim.alpha));
    summary("h_ability", fmt_g9(prim.h_ability));
    summary("l_ability", fmt_g9(prim.l_ability));
    summary("p1_good", fmt_g9(prim.p1_good));
    summary("p0_good", fmt_g9(prim.p0_good));
    summary("c", fmt_g9(prim.effort_cost));
    summary("c_hat", fmt_g9(report.c_hat));
    summary("xi", fmt_g9(report.xi));
    summary("sustainable", report.sustainable);
    summary("selection", fmt_g9(report.selection));

    if let Some(path) = &cfg.out {
        let mut csv = Csv::new(&[
            "alpha", "h_ability", "l_ability", "c", "p1_good", "p0_good", "c_hat", "xi",
            "sustainable", "selection",
        ]);
        csv.row(&[
            fmt_g9(prim.alpha),
            fmt_g9(prim.h_ability),
            fmt_g9(prim.l_ability),
            fmt_g9(prim.effort_cost),
            fmt_g9(prim.p1_good),
            fmt_g9(prim.p0_good),
            fmt_g9(report.c_hat),
            fmt_g9(report.xi),
            report.sustainable.to_string(),
            fmt_g9(report.selection),
        ]);
        write_csv(path, csv)?;
        summary("out", path.display());
    }
    Ok(())
}
