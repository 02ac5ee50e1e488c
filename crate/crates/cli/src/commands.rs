use std::f64::consts::PI;
use std::fmt;

use serde_json::{json, Value};

use schlicht::explore::{line_extremals, CONJECTURE_EVIDENCE};
use schlicht::membership::ClassId;
use schlicht::semigroup::alpha_growth_bound;
use schlicht::{
    bound_audit_alpha, default_lambda_grid, delta_range_audit, delta_region_contains,
    extremal_alpha, extremal_mocanu, filtration_audit, fs_bound_audit, marx_strohhacker_audit,
    min_margin, sample_members, schwarz_lemma_audit, ClassParams, DiskGrid, Error, FiltrationLine,
    NormalizedFunction, Semigroup, TaylorSeries, Verdict, C64,
};

use crate::output::Table;
use crate::{ClassArg, Cli, Command, Common, LineArg};

/// Largest accepted truncation order.
const MAX_TRUNC: usize = 4096;
/// Smallest order for which the class operator is defined.
const MIN_TRUNC: usize = 4;

#[derive(Debug, Clone, PartialEq)]
pub enum CliError {
    /// Bad flag or parameter outside its constraint; exit code 2.
    Usage(String),
    /// The computation itself failed; exit code 1.
    Failure(String),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Usage(_) => 2,
            CliError::Failure(_) => 1,
        }
    }
}

impl fmt::Display for CliError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CliError::Usage(m) => write!(f, "usage: {m}"),
            CliError::Failure(m) => f.write_str(m),
        }
    }
}

impl std::error::Error for CliError {}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Status {
    Ok,
    Violation,
}

impl Status {
    pub fn exit_code(self) -> i32 {
        match self {
            Status::Ok => 0,
            Status::Violation => 1,
        }
    }

    pub fn label(self) -> &'static str {
        match self {
            Status::Ok => "ok",
            Status::Violation => "violation",
        }
    }

    fn from_ok(ok: bool) -> Self {
        if ok {
            Status::Ok
        } else {
            Status::Violation
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct Outcome {
    pub status: Status,
    pub result: Value,
    pub table: Table,
}

type CliResult<T> = std::result::Result<T, CliError>;

fn usage(flag: &str, constraint: impl fmt::Display) -> CliError {
    CliError::Usage(format!("{flag}: {constraint}"))
}

/// Parameter-shaped library errors become usage errors against `flag`.
fn lib_err(flag: &'static str) -> impl Fn(Error) -> CliError {
    move |e| match e {
        Error::InvalidParams(_)
        | Error::InvalidGrid(_)
        | Error::NotNormalized(_)
        | Error::OrderTooLow { .. }
        | Error::OutsideDisk { .. } => usage(flag, e),
        other => CliError::Failure(other.to_string()),
    }
}

fn to_json<T: serde::Serialize>(v: &T) -> CliResult<Value> {
    serde_json::to_value(v).map_err(|e| CliError::Failure(e.to_string()))
}

fn finite(flag: &str, v: f64) -> CliResult<f64> {
    if v.is_finite() {
        Ok(v)
    } else {
        Err(usage(flag, "must be a finite decimal"))
    }
}

fn params(alpha: f64, beta: f64) -> CliResult<ClassParams> {
    finite("--alpha", alpha)?;
    finite("--beta", beta)?;
    ClassParams::new(alpha, beta).map_err(lib_err("--alpha/--beta"))
}

fn line_value(line: LineArg, alpha: Option<f64>, beta: Option<f64>) -> CliResult<f64> {
    match line {
        LineArg::Beta => finite(
            "--beta",
            beta.ok_or_else(|| usage("--beta", "required with --line beta"))?,
        ),
        LineArg::Alpha => finite(
            "--alpha",
            alpha.ok_or_else(|| usage("--alpha", "required with --line alpha"))?,
        ),
    }
}

fn line_params(line: LineArg, s: f64) -> CliResult<ClassParams> {
    match line {
        LineArg::Beta => ClassParams::mocanu(s).map_err(lib_err("--beta")),
        LineArg::Alpha => ClassParams::alpha_line(s).map_err(lib_err("--alpha")),
    }
}

fn fmt_f(v: f64) -> String {
    format!("{v}")
}

fn parse_list(flag: &str, s: &str) -> CliResult<Vec<f64>> {
    s.split(',')
        .map(|t| {
            t.trim()
                .parse::<f64>()
                .map_err(|_| usage(flag, format!("'{t}' is not a decimal number")))
                .and_then(|v| finite(flag, v))
        })
        .collect()
}

fn parse_point(flag: &str, s: &str) -> CliResult<C64> {
    match parse_list(flag, s)?.as_slice() {
        [re] => Ok(C64::new(*re, 0.0)),
        [re, im] => Ok(C64::new(*re, *im)),
        _ => Err(usage(flag, "expected 're' or 're,im'")),
    }
}

fn parse_lambdas(s: &str) -> CliResult<Vec<C64>> {
    if s == "default" {
        return Ok(default_lambda_grid());
    }
    s.split(',')
        .map(|t| {
            let parts: Vec<&str> = t.split(':').collect();
            let num = |x: &str| {
                x.trim()
                    .parse::<f64>()
                    .ok()
                    .filter(|v| v.is_finite())
                    .ok_or_else(|| usage("--lambda-grid", format!("'{t}' is not 're' or 're:im'")))
            };
            match parts.as_slice() {
                [re] => Ok(C64::new(num(re)?, 0.0)),
                [re, im] => Ok(C64::new(num(re)?, num(im)?)),
                _ => Err(usage(
                    "--lambda-grid",
                    format!("'{t}' is not 're' or 're:im'"),
                )),
            }
        })
        .collect()
}

/// The custom grid requested by `--grid-rings` / `--grid-angles`, if any.
pub fn grid_from(common: &Common) -> CliResult<Option<DiskGrid>> {
    if common.grid_rings.is_none() && common.grid_angles.is_none() {
        return Ok(None);
    }
    let standard = DiskGrid::standard();
    let radii = match common.grid_rings {
        None => standard.radii().to_vec(),
        Some(0) => return Err(usage("--grid-rings", "must be at least 1")),
        Some(r) => (1..=r).map(|k| 0.95 * k as f64 / r as f64).collect(),
    };
    let angles = common.grid_angles.unwrap_or(standard.angles_per_ring());
    DiskGrid::new(radii, angles, standard.refinement_depth())
        .map(Some)
        .map_err(lib_err("--grid-rings/--grid-angles"))
}

fn grid(common: &Common) -> CliResult<DiskGrid> {
    Ok(grid_from(common)?.unwrap_or_default())
}

/// Built-in name or path to a JSON series `{"n": N, "coeffs": [[re, im], …]}`.
pub fn load_function(spec: &str, trunc: usize) -> CliResult<NormalizedFunction> {
    match spec {
        "id" => Ok(NormalizedFunction::identity(trunc)),
        "koebe" => Ok(NormalizedFunction::koebe(trunc)),
        "halfplane" => Ok(NormalizedFunction::half_plane(trunc)),
        "neglog" => Ok(NormalizedFunction::neg_log(trunc)),
        path => {
            let text = std::fs::read_to_string(path).map_err(|e| {
                usage("--function", format!("not a built-in (id, koebe, halfplane, neglog) and unreadable as a file: {e}"))
            })?;
            let series: TaylorSeries = serde_json::from_str(&text)
                .map_err(|e| usage("--function", format!("invalid series JSON: {e}")))?;
            let n = series.order().min(trunc);
            NormalizedFunction::normalize(series.truncate(n), 1e-10).map_err(lib_err("--function"))
        }
    }
}

fn check_trunc(trunc: usize) -> CliResult<()> {
    if (MIN_TRUNC..=MAX_TRUNC).contains(&trunc) {
        Ok(())
    } else {
        Err(usage(
            "--trunc",
            format!("must lie in [{MIN_TRUNC}, {MAX_TRUNC}]"),
        ))
    }
}

fn check_positive(flag: &str, v: usize) -> CliResult<usize> {
    if v == 0 {
        Err(usage(flag, "must be at least 1"))
    } else {
        Ok(v)
    }
}

pub fn dispatch(cli: &Cli) -> CliResult<Outcome> {
    let common = &cli.common;
    check_trunc(common.trunc)?;
    match &cli.command {
        Command::Extremal {
            line,
            alpha,
            beta,
            k,
        } => extremal(common, *line, *alpha, *beta, *k),
        Command::Membership {
            class,
            function,
            alpha,
            beta,
        } => membership(common, *class, function, *alpha, *beta),
        Command::Region {
            alpha,
            beta,
            function,
        } => region(common, *alpha, *beta, function.as_deref()),
        Command::Sweep {
            line,
            alpha,
            beta,
            lambda_grid,
            trials,
        } => sweep(common, *line, *alpha, *beta, lambda_grid, *trials),
        Command::Semigroup {
            function,
            z0,
            t_end,
            steps,
            alpha,
        } => semigroup(common, function, z0, *t_end, *steps, *alpha),
        Command::AuditFiltration {
            line,
            alpha,
            beta,
            to,
            trials,
            probe,
        } => audit_filtration(common, *line, *alpha, *beta, to.as_deref(), *trials, *probe),
        Command::AuditSchwarz { trials } => audit_schwarz(common, *trials),
        Command::AuditBound {
            alpha,
            trials,
            t_end,
        } => audit_bound(common, *alpha, *trials, t_end),
    }
}

fn extremal(
    common: &Common,
    line: LineArg,
    alpha: Option<f64>,
    beta: Option<f64>,
    k: usize,
) -> CliResult<Outcome> {
    let s = line_value(line, alpha, beta)?;
    let r = match line {
        LineArg::Beta => extremal_mocanu(s, k, common.trunc).map_err(lib_err("--beta/--k"))?,
        LineArg::Alpha => extremal_alpha(s, k, common.trunc).map_err(lib_err("--alpha/--k"))?,
    };
    let mut table = Table::new(vec![
        "lambda_re",
        "lambda_im",
        "phi_re",
        "phi_im",
        "phi_abs",
    ]);
    for p in &r.phi_at {
        table.push(vec![
            fmt_f(p.lambda.re),
            fmt_f(p.lambda.im),
            fmt_f(p.value.re),
            fmt_f(p.value.im),
            fmt_f(p.value.norm()),
        ]);
    }
    Ok(Outcome {
        status: Status::Ok,
        result: to_json(&r)?,
        table,
    })
}

fn class_id(class: ClassArg) -> Option<ClassId> {
    match class {
        ClassArg::M => Some(ClassId::MAlphaBeta),
        ClassArg::Generator => Some(ClassId::Generator),
        ClassArg::StarlikeHalf => Some(ClassId::StarlikeHalf),
        ClassArg::Convex => Some(ClassId::Convex),
        ClassArg::AHalf => Some(ClassId::AHalf),
        ClassArg::Chain => None,
    }
}

fn membership(
    common: &Common,
    class: ClassArg,
    function: &str,
    alpha: f64,
    beta: f64,
) -> CliResult<Outcome> {
    let p = params(alpha, beta)?;
    let f = load_function(function, common.trunc)?;
    let grid = grid(common)?;
    match class_id(class) {
        Some(id) => {
            let r = min_margin(&f, id, &p, &grid).map_err(lib_err("--function"))?;
            let mut table = Table::new(vec!["radius", "margin"]);
            for ring in &r.rings {
                table.push(vec![fmt_f(ring.radius), fmt_f(ring.margin)]);
            }
            Ok(Outcome {
                status: Status::from_ok(r.verdict == Verdict::Pass),
                result: to_json(&r)?,
                table,
            })
        }
        None => {
            let r = marx_strohhacker_audit(&f, &grid).map_err(lib_err("--function"))?;
            let mut table =
                Table::new(vec!["class", "verdict", "margin", "argmin_re", "argmin_im"]);
            for m in [&r.convex, &r.starlike_half, &r.a_half, &r.generator] {
                table.push(vec![
                    m.class.to_string(),
                    to_json(&m.verdict)?
                        .as_str()
                        .unwrap_or_default()
                        .to_string(),
                    fmt_f(m.margin),
                    fmt_f(m.argmin[0]),
                    fmt_f(m.argmin[1]),
                ]);
            }
            Ok(Outcome {
                status: Status::from_ok(r.is_consistent()),
                result: to_json(&r)?,
                table,
            })
        }
    }
}

/// Extent and spacing of the w-plane table printed by `region`.
const REGION_EXTENT: f64 = 4.0;
const REGION_STEP: f64 = 0.25;

fn region(common: &Common, alpha: f64, beta: f64, function: Option<&str>) -> CliResult<Outcome> {
    let p = params(alpha, beta)?;
    if let Some(spec) = function {
        let f = load_function(spec, common.trunc)?;
        let r = delta_range_audit(&f, &p, &grid(common)?).map_err(lib_err("--function"))?;
        let mut table = Table::new(vec![
            "alpha",
            "beta",
            "all_in_delta",
            "points_outside_delta",
            "generator_margin",
            "consistent",
        ]);
        table.push(vec![
            fmt_f(r.alpha),
            fmt_f(r.beta),
            r.all_in_delta.to_string(),
            r.points_outside_delta.to_string(),
            fmt_f(r.generator_margin),
            r.consistent.to_string(),
        ]);
        return Ok(Outcome {
            status: Status::from_ok(r.consistent),
            result: to_json(&r)?,
            table,
        });
    }
    let n = (2.0 * REGION_EXTENT / REGION_STEP).round() as i64;
    let mut table = Table::new(vec!["x", "y", "in_delta"]);
    let mut inside = 0usize;
    for i in 0..=n {
        for j in 0..=n {
            let w = C64::new(
                -REGION_EXTENT + i as f64 * REGION_STEP,
                -REGION_EXTENT + j as f64 * REGION_STEP,
            );
            let c = delta_region_contains(&p, w);
            inside += c as usize;
            table.push(vec![fmt_f(w.re), fmt_f(w.im), c.to_string()]);
        }
    }
    let total = table.rows.len();
    Ok(Outcome {
        status: Status::Ok,
        result: json!({
            "alpha": alpha,
            "beta": beta,
            "extent": REGION_EXTENT,
            "step": REGION_STEP,
            "points": total,
            "inside": inside,
        }),
        table,
    })
}

fn sweep(
    common: &Common,
    line: LineArg,
    alpha: Option<f64>,
    beta: Option<f64>,
    lambda_grid: &str,
    trials: usize,
) -> CliResult<Outcome> {
    let s = line_value(line, alpha, beta)?;
    let p = line_params(line, s)?;
    let flag = match line {
        LineArg::Beta => "--beta",
        LineArg::Alpha => "--alpha",
    };
    let lambdas = parse_lambdas(lambda_grid)?;
    let mut members = line_extremals(&p, common.trunc).map_err(lib_err(flag))?;
    members.extend(sample_members(&p, common.seed, trials, common.trunc).map_err(lib_err(flag))?);
    let r = fs_bound_audit(&members, &p, &lambdas).map_err(lib_err(flag))?;
    let mut table = Table::new(vec!["lambda_re", "lambda_im", "bound", "attained", "ratio"]);
    for row in &r.rows {
        table.push(vec![
            fmt_f(row.lambda_re),
            fmt_f(row.lambda_im),
            fmt_f(row.bound),
            fmt_f(row.attained),
            fmt_f(row.ratio),
        ]);
    }
    Ok(Outcome {
        status: Status::from_ok(r.violations == 0),
        result: to_json(&r)?,
        table,
    })
}

fn semigroup(
    common: &Common,
    function: &str,
    z0: &str,
    t_end: f64,
    steps: usize,
    alpha: Option<f64>,
) -> CliResult<Outcome> {
    let f = load_function(function, common.trunc)?;
    let z0 = parse_point("--z0", z0)?;
    if !(z0.norm() < 1.0) {
        return Err(usage("--z0", "must lie in the open unit disk"));
    }
    if !(finite("--t-end", t_end)? >= 0.0) {
        return Err(usage("--t-end", "must be non-negative"));
    }
    let steps = check_positive("--steps", steps)?;
    if let Some(a) = alpha {
        if !(finite("--alpha", a)? > 0.0 && a <= 1.0) {
            return Err(usage("--alpha", "must lie in (0, 1] for the growth bound"));
        }
    }
    let flow = Semigroup::new(f).map_err(|e| CliError::Failure(e.to_string()))?;
    let times: Vec<f64> = (0..=steps)
        .map(|i| t_end * i as f64 / steps as f64)
        .collect();
    let traj = flow
        .evolve_at(z0, &times)
        .map_err(|e| CliError::Failure(e.to_string()))?;

    let mut columns = vec!["t", "re", "im", "abs"];
    if alpha.is_some() {
        columns.push("bound");
    }
    let mut table = Table::new(columns);
    let mut bounds = Vec::new();
    for (i, &t) in traj.times.iter().enumerate() {
        let u = traj.point(i);
        let mut row = vec![fmt_f(t), fmt_f(u.re), fmt_f(u.im), fmt_f(u.norm())];
        if let Some(a) = alpha {
            let b = alpha_growth_bound(a, t) * z0.norm();
            bounds.push(b);
            row.push(fmt_f(b));
        }
        table.push(row);
    }
    let mut result = to_json(&traj)?;
    if alpha.is_some() {
        result["bound"] = json!(bounds);
    }
    Ok(Outcome {
        status: Status::Ok,
        result,
        table,
    })
}

/// `from + 0.1 j` for `j ≥ 1` up to 1, rounded to suppress accumulation noise.
fn default_targets(from: f64) -> Vec<f64> {
    (1..)
        .map(|j| ((from + 0.1 * j as f64) * 1e10).round() / 1e10)
        .take_while(|&s| s <= 1.0)
        .collect()
}

fn audit_filtration(
    common: &Common,
    line: LineArg,
    alpha: Option<f64>,
    beta: Option<f64>,
    to: Option<&str>,
    trials: usize,
    probe: usize,
) -> CliResult<Outcome> {
    let from = line_value(line, alpha, beta)?;
    let (fline, flag) = match line {
        LineArg::Beta => (FiltrationLine::Beta, "--beta"),
        LineArg::Alpha => (FiltrationLine::Alpha, "--alpha"),
    };
    let targets = match to {
        Some(s) => parse_list("--to", s)?,
        None => default_targets(from),
    };
    if targets.is_empty() {
        return Err(usage(
            "--to",
            "no target above the starting parameter; pass --to explicitly",
        ));
    }
    let trials = check_positive("--trials", trials)?;
    let r = filtration_audit(
        fline,
        from,
        &targets,
        trials,
        probe,
        common.seed,
        common.trunc,
        &grid(common)?,
    )
    .map_err(lib_err(flag))?;
    let mut table = Table::new(vec![
        "to",
        "passes",
        "fails",
        "inconclusive",
        "worst_margin",
        "probes",
        "outside_smaller",
    ]);
    for t in &r.targets {
        let probe = r.strictness.iter().find(|p| p.larger == t.to);
        table.push(vec![
            fmt_f(t.to),
            t.passes.to_string(),
            t.fails.to_string(),
            t.inconclusive.to_string(),
            fmt_f(t.worst_margin),
            probe.map(|p| p.probes.to_string()).unwrap_or_default(),
            probe
                .map(|p| p.outside_smaller.to_string())
                .unwrap_or_default(),
        ]);
    }
    let mut result = to_json(&r)?;
    result["strictness_label"] = json!(CONJECTURE_EVIDENCE);
    Ok(Outcome {
        status: Status::from_ok(r.all_pass()),
        result,
        table,
    })
}

fn audit_schwarz(common: &Common, trials: usize) -> CliResult<Outcome> {
    let trials = check_positive("--trials", trials)?;
    let r = schwarz_lemma_audit(common.seed, trials);
    let mut table = Table::new(vec!["trials", "violations", "max_slack_b2", "max_slack_fs"]);
    table.push(vec![
        r.trials.to_string(),
        r.violations.to_string(),
        fmt_f(r.max_slack_b2),
        fmt_f(r.max_slack_fs),
    ]);
    Ok(Outcome {
        status: Status::from_ok(r.violations == 0),
        result: to_json(&r)?,
        table,
    })
}

/// Start points of the growth-bound audit: four rings, six rays each.
pub fn bound_starts() -> Vec<C64> {
    [0.25, 0.5, 0.75, 0.9]
        .iter()
        .flat_map(|&r| (0..6).map(move |j| C64::from_polar(r, 0.1 + j as f64 * PI / 3.0)))
        .collect()
}

fn audit_bound(common: &Common, alpha: f64, trials: usize, times: &str) -> CliResult<Outcome> {
    let p = ClassParams::alpha_line(finite("--alpha", alpha)?).map_err(lib_err("--alpha"))?;
    let times = parse_list("--t-end", times)?;
    if times.iter().any(|&t| t < 0.0) {
        return Err(usage("--t-end", "times must be non-negative"));
    }
    let trials = check_positive("--trials", trials)?;
    let members =
        sample_members(&p, common.seed, trials, common.trunc).map_err(lib_err("--alpha"))?;
    let samples: Vec<(C64, f64)> = bound_starts()
        .into_iter()
        .flat_map(|z| times.iter().map(move |&t| (z, t)))
        .collect();

    let mut table = Table::new(vec![
        "member",
        "verdict",
        "violations",
        "schwarz_violations",
        "errors",
        "max_ratio",
    ]);
    let (mut violations, mut schwarz, mut errors, mut non_members) = (0, 0, 0, 0);
    let mut max_ratio: f64 = 0.0;
    for (i, f) in members.iter().enumerate() {
        let r = bound_audit_alpha(f, alpha, &samples).map_err(lib_err("--alpha"))?;
        violations += r.violations;
        schwarz += r.schwarz_violations;
        errors += r.errors.len();
        non_members += (r.member_verdict != Verdict::Pass) as usize;
        max_ratio = max_ratio.max(r.max_ratio);
        table.push(vec![
            i.to_string(),
            to_json(&r.member_verdict)?
                .as_str()
                .unwrap_or_default()
                .to_string(),
            r.violations.to_string(),
            r.schwarz_violations.to_string(),
            r.errors.len().to_string(),
            fmt_f(r.max_ratio),
        ]);
    }
    let ok = violations == 0 && schwarz == 0 && errors == 0 && non_members == 0;
    Ok(Outcome {
        status: Status::from_ok(ok),
        result: json!({
            "alpha": alpha,
            "members": members.len(),
            "times": times,
            "samples_per_member": samples.len(),
            "violations": violations,
            "schwarz_violations": schwarz,
            "errors": errors,
            "non_members": non_members,
            "max_ratio": max_ratio,
        }),
        table,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use clap::Parser;

    fn run(args: &[&str]) -> CliResult<Outcome> {
        let mut full = vec!["schlicht"];
        full.extend_from_slice(args);
        dispatch(&Cli::try_parse_from(full).expect("parses"))
    }

    #[test]
    fn lists_and_points() {
        assert_eq!(parse_list("--to", "0.5, 1").unwrap(), vec![0.5, 1.0]);
        assert!(parse_list("--to", "0.5,x").is_err());
        assert_eq!(
            parse_point("--z0", "0.1,-0.2").unwrap(),
            C64::new(0.1, -0.2)
        );
        assert!(parse_point("--z0", "1,2,3").is_err());
        assert_eq!(
            parse_lambdas("1:2,-1").unwrap(),
            vec![C64::new(1.0, 2.0), C64::new(-1.0, 0.0)]
        );
        assert_eq!(parse_lambdas("default").unwrap().len(), 123);
        assert!(parse_lambdas("1:2:3").is_err());
    }

    #[test]
    fn default_targets_step_to_one() {
        assert_eq!(default_targets(0.6), vec![0.7, 0.8, 0.9, 1.0]);
        assert_eq!(default_targets(0.0).len(), 10);
        assert!(default_targets(1.0).is_empty());
    }

    #[test]
    fn grid_flags() {
        let cli = Cli::try_parse_from([
            "schlicht",
            "audit-schwarz",
            "--grid-rings",
            "4",
            "--grid-angles",
            "90",
        ])
        .unwrap();
        let g = grid_from(&cli.common).unwrap().unwrap();
        assert_eq!(g.radii().len(), 4);
        assert!((g.max_radius() - 0.95).abs() < 1e-15);
        let cli = Cli::try_parse_from(["schlicht", "audit-schwarz", "--grid-angles", "8"]).unwrap();
        assert!(matches!(grid_from(&cli.common), Err(CliError::Usage(_))));
    }

    #[test]
    fn usage_errors_name_flag_and_constraint() {
        let e = run(&[
            "membership",
            "--function",
            "id",
            "--alpha",
            "1.5",
            "--beta",
            "0.5",
        ])
        .unwrap_err();
        assert_eq!(e.exit_code(), 2);
        assert!(e.to_string().contains("--alpha/--beta"));
        assert!(e.to_string().contains("alpha+beta must be < 2"));

        let e = run(&["extremal", "--line", "beta"]).unwrap_err();
        assert!(e.to_string().contains("--beta"));
        let e = run(&["extremal", "--line", "beta", "--beta", "0.5", "--k", "3"]).unwrap_err();
        assert_eq!(e.exit_code(), 2);
        let e = run(&["membership", "--function", "nosuchfile.json"]).unwrap_err();
        assert_eq!(e.exit_code(), 2);
        let e = run(&["audit-schwarz", "--trunc", "2"]).unwrap_err();
        assert!(e.to_string().contains("--trunc"));
        let e = run(&["sweep", "--line", "alpha", "--alpha", "1.5"]).unwrap_err();
        assert_eq!(e.exit_code(), 2);
    }

    #[test]
    fn extremal_reports_sharp_coefficient() {
        let o = run(&["extremal", "--line", "beta", "--beta", "0.5", "--k", "2"]).unwrap();
        let a3 = o.result["a3"][0].as_f64().unwrap();
        assert!((a3 - 0.375).abs() < 1e-10);
        assert_eq!(o.table.rows.len(), 123);
    }

    #[test]
    fn membership_verdicts_drive_status() {
        let o = run(&["membership", "--class", "generator", "--function", "neglog"]).unwrap();
        assert_eq!(o.status, Status::Ok);
        assert_eq!(o.result["verdict"], "pass");
        let o = run(&["membership", "--class", "convex", "--function", "koebe"]).unwrap();
        assert_eq!(o.status, Status::Violation);
        let o = run(&["membership", "--class", "chain", "--function", "halfplane"]).unwrap();
        assert_eq!(o.status, Status::Ok);
        assert_eq!(o.table.rows.len(), 4);
    }

    #[test]
    fn sweep_on_the_a_half_line() {
        let o = run(&["sweep", "--line", "alpha", "--alpha", "1"]).unwrap();
        assert_eq!(o.status, Status::Ok);
        for row in &o.table.rows {
            let l = C64::new(row[0].parse().unwrap(), row[1].parse().unwrap());
            let bound: f64 = row[2].parse().unwrap();
            assert!((bound - (C64::new(1.0, 0.0) - l).norm().max(1.0)).abs() < 1e-15);
        }
    }

    #[test]
    fn region_table_and_audit() {
        let o = run(&["region", "--alpha", "0.5", "--beta", "0"]).unwrap();
        assert_eq!(o.table.rows.len(), 33 * 33);
        let o = run(&[
            "region",
            "--alpha",
            "0",
            "--beta",
            "0",
            "--function",
            "halfplane",
        ])
        .unwrap();
        assert_eq!(o.status, Status::Ok);
    }

    #[test]
    fn semigroup_trajectory() {
        let o = run(&[
            "semigroup",
            "--function",
            "id",
            "--z0",
            "0.5,0",
            "--t-end",
            "1",
            "--steps",
            "4",
            "--alpha",
            "1",
        ])
        .unwrap();
        assert_eq!(o.table.rows.len(), 5);
        let last: f64 = o.table.rows[4][1].parse().unwrap();
        assert!((last - 0.5 * (-1.0f64).exp()).abs() < 1e-9);
        let e = run(&["semigroup", "--function", "koebe"]).unwrap_err();
        assert_eq!(e.exit_code(), 1);
        let e = run(&["semigroup", "--z0", "1,0"]).unwrap_err();
        assert_eq!(e.exit_code(), 2);
    }

    #[test]
    fn small_audits() {
        let o = run(&["audit-schwarz", "--trials", "200", "--seed", "3"]).unwrap();
        assert_eq!(o.status, Status::Ok);
        let o = run(&[
            "audit-filtration",
            "--line",
            "beta",
            "--beta",
            "0.5",
            "--to",
            "1",
            "--trials",
            "4",
            "--probe",
            "2",
        ])
        .unwrap();
        assert_eq!(o.status, Status::Ok);
        let o = run(&[
            "audit-bound",
            "--alpha",
            "0.75",
            "--trials",
            "2",
            "--t-end",
            "1",
        ])
        .unwrap();
        assert_eq!(o.status, Status::Ok);
        assert_eq!(o.result["violations"], 0);
    }
}
