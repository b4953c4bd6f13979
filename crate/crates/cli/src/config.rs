//! Scenario configuration.
//!
//! Configs are plain-text `key = value` files with bracketed sections (the
//! grammar is spelled out in the README). Values from a file can be
//! overridden by command-line flags. Validation is collected: every problem
//! in the file is reported in one pass, with a line reference when the
//! offending value came from the file.

use std::collections::HashMap;
use std::fmt;
use std::path::PathBuf;

use rivote::{AttentionCost, Units};

/// What the invocation asks for.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Mode {
    Solve,
    Sweep,
    Xi,
    Lp,
    Continuous,
    Benchmark,
}

impl Mode {
    pub fn as_str(self) -> &'static str {
        match self {
            Mode::Solve => "solve",
            Mode::Sweep => "sweep",
            Mode::Xi => "xi",
            Mode::Lp => "lp",
            Mode::Continuous => "continuous",
            Mode::Benchmark => "benchmark",
        }
    }

    fn parse(s: &str) -> Option<Mode> {
        Some(match s {
            "solve" => Mode::Solve,
            "sweep" => Mode::Sweep,
            "xi" => Mode::Xi,
            "lp" => Mode::Lp,
            "continuous" => Mode::Continuous,
            "benchmark" => Mode::Benchmark,
            _ => return None,
        })
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, clap::ValueEnum)]
pub enum CostKind {
    Quadratic,
    Entropy,
}

/// Command-line mirror of [`Units`].
#[derive(Clone, Copy, Debug, PartialEq, Eq, clap::ValueEnum)]
pub enum UnitsArg {
    Nats,
    Bits,
}

impl From<UnitsArg> for Units {
    fn from(value: UnitsArg) -> Units {
        match value {
            UnitsArg::Nats => Units::Nats,
            UnitsArg::Bits => Units::Bits,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, clap::ValueEnum)]
pub enum SweepParameter {
    V1,
    I0,
    I1,
    F0,
}

impl SweepParameter {
    pub fn as_str(self) -> &'static str {
        match self {
            SweepParameter::V1 => "v1",
            SweepParameter::I0 => "i0",
            SweepParameter::I1 => "i1",
            SweepParameter::F0 => "f0",
        }
    }
}

/// One validation or parse problem.
#[derive(Clone, Debug)]
pub struct ConfigError {
    pub line: Option<usize>,
    pub message: String,
}

impl ConfigError {
    fn new(line: Option<usize>, message: impl Into<String>) -> Self {
        ConfigError { line, message: message.into() }
    }
}

impl fmt::Display for ConfigError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.line {
            Some(line) => write!(f, "line {line}: {}", self.message),
            None => write!(f, "{}", self.message),
        }
    }
}

/// Merged scenario settings. `None` means "not specified anywhere".
#[derive(Clone, Debug, Default)]
pub struct ScenarioConfig {
    pub mode: Option<Mode>,
    pub cost_kind: Option<CostKind>,
    pub units: Option<Units>,
    pub f0: Option<f64>,
    pub v1: Option<f64>,
    pub i0: Option<f64>,
    pub i1: Option<f64>,
    pub alpha: Option<f64>,
    pub h_ability: Option<f64>,
    pub c: Option<f64>,
    pub sweep_parameter: Option<SweepParameter>,
    pub sweep_from: Option<f64>,
    pub sweep_to: Option<f64>,
    pub sweep_steps: Option<usize>,
    pub cont_v: Option<f64>,
    pub cont_capacity: Option<f64>,
    pub grid_points: Option<usize>,
    pub out: Option<PathBuf>,
    /// Config line on which each field was set, for late range errors.
    lines: HashMap<&'static str, usize>,
}

impl ScenarioConfig {
    fn line_of(&self, field: &str) -> Option<usize> {
        self.lines.get(field).copied()
    }

    /// The configured attention cost (defaults: quadratic; entropy in nats).
    pub fn cost(&self) -> AttentionCost {
        match self.cost_kind.unwrap_or(CostKind::Quadratic) {
            CostKind::Quadratic => AttentionCost::Quadratic,
            CostKind::Entropy => AttentionCost::Entropy(self.units()),
        }
    }

    pub fn units(&self) -> Units {
        self.units.unwrap_or(Units::Nats)
    }

    pub fn grid_points_or_default(&self) -> usize {
        self.grid_points.unwrap_or(2001)
    }

    pub fn has_primitives(&self) -> bool {
        self.alpha.is_some() || self.h_ability.is_some() || self.c.is_some()
    }
}

/// Parse a config document. Syntax and vocabulary problems are collected;
/// recognized values are merged into the returned config regardless, so one
/// pass reports as much as possible.
pub fn parse_config(text: &str) -> (ScenarioConfig, Vec<ConfigError>) {
    let mut cfg = ScenarioConfig::default();
    let mut errors = Vec::new();
    let mut section: Option<String> = None;

    for (idx, raw) in text.lines().enumerate() {
        let line_no = idx + 1;
        let line = raw.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        if let Some(name) = line.strip_prefix('[') {
            match name.strip_suffix(']') {
                Some(name) => {
                    let name = name.trim();
                    if SECTIONS.contains(&name) {
                        section = Some(name.to_string());
                    } else {
                        errors.push(ConfigError::new(
                            Some(line_no),
                            format!("unknown section [{name}]; expected one of {SECTIONS:?}"),
                        ));
                        section = Some(name.to_string()); // keep keys attributed
                    }
                }
                None => errors.push(ConfigError::new(Some(line_no), "unterminated section header")),
            }
            continue;
        }
        let Some((key, value)) = line.split_once('=') else {
            errors.push(ConfigError::new(
                Some(line_no),
                format!("expected `key = value`, found `{line}`"),
            ));
            continue;
        };
        let key = key.trim();
        let value = value.trim();
        if value.is_empty() {
            errors.push(ConfigError::new(Some(line_no), format!("key `{key}` has no value")));
            continue;
        }
        set_key(&mut cfg, &mut errors, section.as_deref(), key, value, line_no);
    }
    (cfg, errors)
}

const SECTIONS: [&str; 6] = ["cost", "electorate", "primitives", "sweep", "continuous", "output"];

fn set_key(
    cfg: &mut ScenarioConfig,
    errors: &mut Vec<ConfigError>,
    section: Option<&str>,
    key: &str,
    value: &str,
    line: usize,
) {
    let mut bad = |msg: String| errors.push(ConfigError::new(Some(line), msg));

    macro_rules! put {
        ($field:ident, $tag:expr, $parsed:expr) => {{
            if cfg.lines.contains_key($tag) {
                bad(format!("duplicate key `{key}`"));
            } else {
                match $parsed {
                    Some(v) => {
                        cfg.$field = Some(v);
                        cfg.lines.insert($tag, line);
                    }
                    None => bad(format!("cannot parse `{value}` for key `{key}`")),
                }
            }
        }};
    }

    let float = || value.parse::<f64>().ok().filter(|v| v.is_finite());
    let count = || value.parse::<usize>().ok();
    let units = || match value {
        "nats" => Some(Units::Nats),
        "bits" => Some(Units::Bits),
        _ => None,
    };

    match (section, key) {
        (None, "mode") => put!(mode, "mode", Mode::parse(value)),
        (None, _) => bad(format!("unknown top-level key `{key}` (only `mode` is allowed)")),
        (Some("cost"), "kind") => put!(
            cost_kind,
            "cost.kind",
            match value {
                "quadratic" => Some(CostKind::Quadratic),
                "entropy" => Some(CostKind::Entropy),
                _ => None,
            }
        ),
        (Some("cost"), "units") => put!(units, "cost.units", units()),
        (Some("electorate"), "f0") => put!(f0, "electorate.f0", float()),
        (Some("electorate"), "v1") => put!(v1, "electorate.v1", float()),
        (Some("electorate"), "i0") => put!(i0, "electorate.i0", float()),
        (Some("electorate"), "i1") => put!(i1, "electorate.i1", float()),
        (Some("primitives"), "alpha") => put!(alpha, "primitives.alpha", float()),
        (Some("primitives"), "h_ability") => put!(h_ability, "primitives.h_ability", float()),
        (Some("primitives"), "c") => put!(c, "primitives.c", float()),
        (Some("sweep"), "parameter") => put!(
            sweep_parameter,
            "sweep.parameter",
            match value {
                "v1" => Some(SweepParameter::V1),
                "i0" => Some(SweepParameter::I0),
                "i1" => Some(SweepParameter::I1),
                "f0" => Some(SweepParameter::F0),
                _ => None,
            }
        ),
        (Some("sweep"), "from") => put!(sweep_from, "sweep.from", float()),
        (Some("sweep"), "to") => put!(sweep_to, "sweep.to", float()),
        (Some("sweep"), "steps") => put!(sweep_steps, "sweep.steps", count()),
        (Some("continuous"), "v") => put!(cont_v, "continuous.v", float()),
        (Some("continuous"), "capacity") => put!(cont_capacity, "continuous.capacity", float()),
        (Some("continuous"), "grid_points") => put!(grid_points, "continuous.grid_points", count()),
        (Some("continuous"), "units") => put!(units, "continuous.units", units()),
        (Some("output"), "path") => put!(out, "output.path", Some(PathBuf::from(value))),
        (Some(section), _) => bad(format!("unknown key `{key}` in section [{section}]")),
    }
}

fn push_err(errors: &mut Vec<ConfigError>, line: Option<usize>, message: String) {
    errors.push(ConfigError::new(line, message));
}

/// Validate the merged configuration for the given mode. Returns every
/// problem found.
pub fn validate(cfg: &ScenarioConfig, mode: Mode) -> Vec<ConfigError> {
    let mut errors = Vec::new();

    if let Some(declared) = cfg.mode {
        if declared != mode {
            push_err(
                &mut errors,
                cfg.line_of("mode"),
                format!(
                    "config declares mode = {} but the {} command was invoked",
                    declared.as_str(),
                    mode.as_str()
                ),
            );
        }
    }

    let max_cost = cfg.cost().max_cost();
    let check_range = |errors: &mut Vec<ConfigError>,
                       field: &str,
                       value: Option<f64>,
                       required: bool,
                       lo: f64,
                       hi: f64,
                       open: (bool, bool),
                       what: &str| {
        match value {
            None if required => {
                errors.push(ConfigError::new(None, format!("missing required value `{field}`")))
            }
            None => {}
            Some(v) => {
                let low_ok = if open.0 { v > lo } else { v >= lo };
                let high_ok = if open.1 { v < hi } else { v <= hi };
                if !(low_ok && high_ok) {
                    errors.push(ConfigError::new(
                        cfg.line_of(field),
                        format!("{field} = {v} is outside {what}"),
                    ));
                }
            }
        }
    };

    let needs_electorate = matches!(mode, Mode::Xi | Mode::Sweep | Mode::Lp);
    let needs_primitives = mode == Mode::Benchmark || (mode == Mode::Xi && cfg.has_primitives());
    // the swept parameter takes its values from the range, not the base config
    let swept = |p: SweepParameter| mode == Mode::Sweep && cfg.sweep_parameter == Some(p);

    // voter-level inputs
    if matches!(mode, Mode::Solve | Mode::Xi | Mode::Sweep | Mode::Lp) {
        check_range(
            &mut errors,
            "electorate.v1",
            cfg.v1,
            !swept(SweepParameter::V1),
            0.0,
            1.0,
            (false, true),
            "[0, 1)",
        );
        check_range(
            &mut errors,
            "electorate.i1",
            cfg.i1,
            !swept(SweepParameter::I1),
            0.0,
            max_cost,
            (true, true),
            &format!("(0, h(1) = {max_cost})"),
        );
    }
    if needs_electorate {
        check_range(
            &mut errors,
            "electorate.f0",
            cfg.f0,
            !swept(SweepParameter::F0),
            0.0,
            1.0,
            (true, true),
            "(0, 1)",
        );
        check_range(
            &mut errors,
            "electorate.i0",
            cfg.i0,
            !swept(SweepParameter::I0),
            0.0,
            max_cost,
            (true, true),
            &format!("(0, h(1) = {max_cost})"),
        );
    }

    if needs_primitives || cfg.has_primitives() {
        check_range(&mut errors, "primitives.alpha", cfg.alpha, needs_primitives, 0.0, 1.0, (true, true), "(0, 1)");
        check_range(
            &mut errors,
            "primitives.h_ability",
            cfg.h_ability,
            needs_primitives,
            1.0,
            f64::INFINITY,
            (true, true),
            "(1, inf)",
        );
        check_range(&mut errors, "primitives.c", cfg.c, needs_primitives, 0.0, f64::INFINITY, (true, true), "(0, inf)");
        // incomplete primitive blocks are an error in every mode that reads them
        if cfg.has_primitives() && !(cfg.alpha.is_some() && cfg.h_ability.is_some() && cfg.c.is_some()) {
            push_err(&mut errors, None, "primitives need all of alpha, h_ability, and c".into());
        } else if let (Some(alpha), Some(h)) = (cfg.alpha, cfg.h_ability) {
            if alpha < 1.0 && alpha > 0.0 && h > 1.0 && alpha * h / (1.0 - alpha) <= 1.0 {
                push_err(
                    &mut errors,
                    cfg.line_of("primitives.h_ability"),
                    format!(
                        "alpha = {alpha}, h_ability = {h} imply a low ability of {} inside (-1, 0); \
                         the spread around the performance states needs alpha * h / (1 - alpha) > 1",
                        -alpha * h / (1.0 - alpha)
                    ),
                );
            }
        }
    }

    if mode == Mode::Sweep {
        match cfg.sweep_parameter {
            None => push_err(&mut errors, None, "missing required value `sweep.parameter`".into()),
            Some(param) => {
                let (lo, hi, open, what): (f64, f64, (bool, bool), String) = match param {
                    SweepParameter::V1 => (0.0, 1.0, (false, true), "[0, 1)".into()),
                    SweepParameter::F0 => (0.0, 1.0, (true, true), "(0, 1)".into()),
                    SweepParameter::I0 | SweepParameter::I1 => {
                        (0.0, max_cost, (true, true), format!("(0, h(1) = {max_cost})"))
                    }
                };
                check_range(&mut errors, "sweep.from", cfg.sweep_from, true, lo, hi, open, &what);
                check_range(&mut errors, "sweep.to", cfg.sweep_to, true, lo, hi, open, &what);
            }
        }
        if let (Some(from), Some(to)) = (cfg.sweep_from, cfg.sweep_to) {
            if from >= to {
                push_err(
                    &mut errors,
                    cfg.line_of("sweep.from"),
                    format!("sweep range is empty: from = {from} must be below to = {to}"),
                );
            }
        }
        match cfg.sweep_steps {
            None => push_err(&mut errors, None, "missing required value `sweep.steps`".into()),
            Some(steps) if steps < 2 => push_err(
                &mut errors,
                cfg.line_of("sweep.steps"),
                format!("sweep.steps = {steps} must be at least 2"),
            ),
            Some(_) => {}
        }
    }

    if mode == Mode::Continuous {
        check_range(&mut errors, "continuous.v", cfg.cont_v, true, 0.0, 1.0, (true, true), "(0, 1)");
        check_range(
            &mut errors,
            "continuous.capacity",
            cfg.cont_capacity,
            true,
            0.0,
            f64::INFINITY,
            (true, true),
            "(0, inf)",
        );
        if let Some(alpha) = cfg.alpha {
            if !(0.0 < alpha && alpha < 1.0) {
                push_err(
                    &mut errors,
                    cfg.line_of("primitives.alpha"),
                    format!("alpha = {alpha} is outside (0, 1)"),
                );
            }
        }
        let n = cfg.grid_points_or_default();
        if n < 51 {
            push_err(
                &mut errors,
                cfg.line_of("continuous.grid_points"),
                format!("continuous.grid_points = {n} must be at least 51"),
            );
        }
    }

    if matches!(mode, Mode::Sweep | Mode::Lp | Mode::Continuous) && cfg.out.is_none() {
        push_err(
            &mut errors,
            None,
            format!("mode {} writes a CSV file: set [output] path or pass --out", mode.as_str()),
        );
    }

    errors
}
