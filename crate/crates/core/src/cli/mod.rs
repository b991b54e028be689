//! The `physub` command line.
//!
//! [`run`] does all the work and writes to the given streams so that the
//! binary stays a one-liner and tests can capture output.

pub mod file;
pub mod format;

use std::io::Write;
use std::path::{Path, PathBuf};

use clap::{Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use crate::born::{self, OutcomeSet, ProbabilityResult, Variant};
use crate::condition::computational_basis;
use crate::error::Error;
use crate::linalg::Tolerance;
use crate::measurement::{self, MeasurementProcess, Representation};
use crate::model::Event;
use crate::scenarios::{self, Predicate, Scenario};
use crate::verify;

use file::{load_scenario, LoadError, ScenarioFile};
use format::{chop, num};

pub const EXIT_OK: i32 = 0;
pub const EXIT_USAGE: i32 = 1;
pub const EXIT_VALIDATION: i32 = 2;
pub const EXIT_REFUSED: i32 = 3;

#[derive(Debug, Parser)]
#[command(name = "physub", version, about = "Physical-subspace Born rule calculator")]
struct Cli {
    /// Built-in scenario name or path to a scenario file.
    #[arg(long, global = true, default_value = "reference")]
    scenario: String,
    /// Emit CSV tables.
    #[arg(long, global = true, conflicts_with = "json")]
    csv: bool,
    /// Emit JSON.
    #[arg(long, global = true)]
    json: bool,
    /// Zero threshold for traces and norms [default: 1e-9]
    #[arg(long, global = true)]
    eps_zero: Option<f64>,
    /// Eigenvalue cutoff for supports and ranks [default: 1e-7]
    #[arg(long, global = true)]
    eps_eig: Option<f64>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Load and validate a scenario file.
    Validate { file: PathBuf },
    /// Evaluate one probability.
    Prob(ProbArgs),
    /// Measurement paths from a start space to a set of outcomes.
    Measure {
        /// Start space, e.g. `I@t0`.
        #[arg(long)]
        start: String,
        /// Outcomes, e.g. `Fup,Fdown@t1`.
        #[arg(long)]
        outcomes: String,
        #[arg(long, value_enum, default_value = "support")]
        rep: RepArg,
        #[arg(long, default_value_t = 0)]
        k0: usize,
    },
    /// Verifiability report for a condition and a set of outcomes.
    Verify {
        #[arg(long)]
        cond: String,
        #[arg(long)]
        outcomes: String,
        #[arg(long, default_value_t = 0)]
        k0: usize,
    },
    /// Built-in demonstrations.
    Demo {
        #[arg(value_enum)]
        which: DemoArg,
    },
    /// Built-in scenarios.
    Scenario {
        #[command(subcommand)]
        action: ScenarioAction,
    },
}

#[derive(Debug, clap::Args)]
struct ProbArgs {
    #[arg(long, value_enum)]
    rule: RuleArg,
    /// Condition, e.g. `I@t0`.
    #[arg(long)]
    cond: String,
    /// Outcome, e.g. `Fup@t1`.
    #[arg(long)]
    outcome: String,
    /// Complete outcome set for the intermediate-full rule; defaults to the outcome and its complement.
    #[arg(long)]
    outcomes: Option<String>,
    /// Second outcome for the sequence rule.
    #[arg(long)]
    then: Option<String>,
    #[arg(long, default_value_t = 0)]
    k0: usize,
    #[arg(long, value_enum, default_value = "support")]
    variant: RepArg,
}

#[derive(Debug, Clone, Copy, ValueEnum)]
enum RuleArg {
    Forward,
    IntermediateFull,
    Known,
    Before,
    Approx,
    Sequence,
}

#[derive(Debug, Clone, Copy, ValueEnum)]
enum RepArg {
    Support,
    Observable,
}

#[derive(Debug, Clone, Copy, ValueEnum)]
enum DemoArg {
    Intro,
}

#[derive(Debug, Subcommand)]
enum ScenarioAction {
    List,
    Dump { name: String },
}

#[derive(Debug, Clone, Copy, PartialEq)]
enum Format {
    Human,
    Csv,
    Json,
}

/// Failure with its exit code.
struct Failure {
    code: i32,
    message: String,
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        let code = match &e {
            Error::Validation(_) | Error::Internal(_) => EXIT_VALIDATION,
            Error::NotPhysical(_) => EXIT_REFUSED,
            e if e.is_refusal() => EXIT_REFUSED,
            _ => EXIT_USAGE,
        };
        Failure { code, message: e.to_string() }
    }
}

impl From<LoadError> for Failure {
    fn from(e: LoadError) -> Self {
        let code = match e {
            LoadError::Invalid(_) => EXIT_VALIDATION,
            _ => EXIT_USAGE,
        };
        Failure { code, message: e.to_string() }
    }
}

fn usage(message: impl Into<String>) -> Failure {
    Failure { code: EXIT_USAGE, message: message.into() }
}

type Outcome = std::result::Result<String, Failure>;

/// Runs the command line and returns the process exit code.
pub fn run<I, S>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = S>,
    S: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let text = e.render().to_string();
            return if e.use_stderr() {
                let _ = write!(err, "{text}");
                EXIT_USAGE
            } else {
                let _ = write!(out, "{text}");
                EXIT_OK
            };
        }
    };
    match execute(&cli) {
        Ok(text) => {
            let _ = out.write_all(text.as_bytes());
            EXIT_OK
        }
        Err(f) => {
            let _ = writeln!(err, "error: {}", f.message);
            f.code
        }
    }
}

fn execute(cli: &Cli) -> Outcome {
    let fmt = if cli.json {
        Format::Json
    } else if cli.csv {
        Format::Csv
    } else {
        Format::Human
    };
    match &cli.command {
        Command::Validate { file } => validate(cli, file, fmt),
        Command::Scenario { action: ScenarioAction::List } => Ok(list(fmt)),
        Command::Scenario { action: ScenarioAction::Dump { name } } => {
            let sc = apply_tolerance(cli, scenarios::builtin(name).map_err(|e| usage(e.to_string()))?)?;
            Ok(ScenarioFile::from_scenario(&sc).to_json())
        }
        Command::Demo { which: DemoArg::Intro } => demo_intro(fmt),
        Command::Prob(args) => prob(&scenario(cli)?, args, fmt),
        Command::Measure { start, outcomes, rep, k0 } => measure(&scenario(cli)?, start, outcomes, *rep, *k0, fmt),
        Command::Verify { cond, outcomes, k0 } => verify_cmd(&scenario(cli)?, cond, outcomes, *k0, fmt),
    }
}

fn tolerance(cli: &Cli, base: Tolerance) -> std::result::Result<Option<Tolerance>, Failure> {
    if cli.eps_zero.is_none() && cli.eps_eig.is_none() {
        return Ok(None);
    }
    let t = Tolerance::new(cli.eps_zero.unwrap_or(base.eps_zero), cli.eps_eig.unwrap_or(base.eps_eig))
        .map_err(|e| usage(e.to_string()))?;
    Ok(Some(t))
}

fn apply_tolerance(cli: &Cli, sc: Scenario) -> std::result::Result<Scenario, Failure> {
    match tolerance(cli, sc.model.tol())? {
        Some(t) => Ok(sc.with_tolerance(t)?),
        None => Ok(sc),
    }
}

fn scenario(cli: &Cli) -> std::result::Result<Scenario, Failure> {
    let sc = if scenarios::BUILTINS.iter().any(|(n, _)| *n == cli.scenario) {
        scenarios::builtin(&cli.scenario)?
    } else {
        let path = Path::new(&cli.scenario);
        if !path.exists() {
            return Err(usage(format!("'{}' is neither a built-in scenario nor a file", cli.scenario)));
        }
        load_scenario(path)?
    };
    apply_tolerance(cli, sc)
}

/// Splits `A,B@t` into names and index label.
fn parse_at(spec: &str) -> std::result::Result<(Vec<String>, String), Failure> {
    let (names, at) = spec.rsplit_once('@').ok_or_else(|| usage(format!("expected NAME@INDEX, got '{spec}'")))?;
    let names: Vec<String> = names.split(',').map(|s| s.trim().to_string()).collect();
    if names.iter().any(|n| n.is_empty()) || at.is_empty() {
        return Err(usage(format!("expected NAME@INDEX, got '{spec}'")));
    }
    Ok((names, at.to_string()))
}

fn single(sc: &Scenario, spec: &str) -> std::result::Result<Event, Failure> {
    let (names, at) = parse_at(spec)?;
    if names.len() != 1 {
        return Err(usage(format!("expected a single predicate in '{spec}'")));
    }
    Ok(sc.event(&names[0], &at)?)
}

fn outcome_set(sc: &Scenario, spec: &str) -> std::result::Result<(Vec<String>, OutcomeSet), Failure> {
    let (names, at) = parse_at(spec)?;
    let events = names.iter().map(|n| sc.event(n, &at)).collect::<Result<Vec<_>, _>>()?;
    Ok((names, OutcomeSet::from_events(&events, sc.model.tol())?))
}

fn validate(cli: &Cli, path: &Path, fmt: Format) -> Outcome {
    let sc = apply_tolerance(cli, load_scenario(path)?)?;
    let ranks: Vec<usize> = sc.family.projectors().iter().map(|p| p.projector_rank()).collect();
    let labels = sc.model.grid().labels().join(",");
    match fmt {
        Format::Json => Ok(json_text(&json!({
            "status": "ok",
            "name": sc.name,
            "d1": sc.model.d1(),
            "d2": sc.model.d2(),
            "grid": sc.model.grid().labels(),
            "family_ranks": ranks,
            "predicates": sc.predicates.keys().collect::<Vec<_>>(),
        }))),
        Format::Csv => Ok(format::csv(
            &strings(&["status", "name", "d1", "d2", "grid", "family_ranks"]),
            &[vec![
                "ok".into(),
                sc.name.clone(),
                sc.model.d1().to_string(),
                sc.model.d2().to_string(),
                labels,
                ranks.iter().map(|r| r.to_string()).collect::<Vec<_>>().join(" "),
            ]],
        )),
        Format::Human => Ok(format::pairs(&[
            ("status".into(), "ok".into()),
            ("name".into(), sc.name.clone()),
            ("dimensions".into(), format!("{} x {}", sc.model.d1(), sc.model.d2())),
            ("grid".into(), labels),
            ("family ranks".into(), ranks.iter().map(|r| r.to_string()).collect::<Vec<_>>().join(" ")),
            ("predicates".into(), sc.predicates.keys().cloned().collect::<Vec<_>>().join(" ")),
        ])),
    }
}

fn list(fmt: Format) -> String {
    match fmt {
        Format::Json => json_text(&Value::Array(
            scenarios::BUILTINS.iter().map(|(n, d)| json!({"name": n, "description": d})).collect(),
        )),
        Format::Csv => format::csv(
            &strings(&["name", "description"]),
            &scenarios::BUILTINS.iter().map(|(n, d)| vec![n.to_string(), d.to_string()]).collect::<Vec<_>>(),
        ),
        Format::Human => format::pairs(&scenarios::BUILTINS.iter().map(|(n, d)| (n.to_string(), d.to_string())).collect::<Vec<_>>()),
    }
}

fn strings(s: &[&str]) -> Vec<String> {
    s.iter().map(|x| x.to_string()).collect()
}

fn json_text(v: &Value) -> String {
    let mut s = serde_json::to_string_pretty(v).expect("json values serialise");
    s.push('\n');
    s
}

fn json_num(x: f64) -> Value {
    Value::String(num(x))
}

fn prob(sc: &Scenario, args: &ProbArgs, fmt: Format) -> Outcome {
    let cond_event = single(sc, &args.cond)?;
    let cond = crate::condition::Condition::from_event(&sc.model, &sc.family, &cond_event)?;
    let y = single(sc, &args.outcome)?;
    let result: ProbabilityResult = match args.rule {
        RuleArg::Forward => born::prob_forward(&cond, &y, args.k0)?,
        RuleArg::Before => born::prob_before(&cond, &y, args.k0)?,
        RuleArg::Approx => born::prob_approx(&cond, &y)?,
        RuleArg::Known => match args.variant {
            RepArg::Support => born::prob_intermediate_known(&cond, &y, args.k0, Variant::Support, None)?,
            RepArg::Observable => {
                let rep = cond.observable_rep(&computational_basis(sc.model.d1()))?;
                born::prob_intermediate_known(&cond, &y, args.k0, Variant::Observable, Some(&rep))?
            }
        },
        RuleArg::IntermediateFull => {
            let (set, i) = match &args.outcomes {
                Some(spec) => {
                    let (names, set) = outcome_set(sc, spec)?;
                    let (target, at) = parse_at(&args.outcome)?;
                    if sc.index(&at)? != set.index() {
                        return Err(usage("--outcome and --outcomes must share a grid index"));
                    }
                    let i = names
                        .iter()
                        .position(|n| *n == target[0])
                        .ok_or_else(|| usage(format!("outcome '{}' is not in the outcome set", target[0])))?;
                    (set, i)
                }
                None => (OutcomeSet::from_events(&[y.clone(), y.complement()], sc.model.tol())?, 0),
            };
            born::prob_intermediate_full(&cond, &set, i, args.k0)?
        }
        RuleArg::Sequence => {
            let then = args.then.as_deref().ok_or_else(|| usage("the sequence rule needs --then"))?;
            let y2 = single(sc, then)?;
            born::prob_sequence(&cond, &y, &y2, args.k0)?
        }
    };
    let mut rows = vec![
        ("rule".to_string(), result.rule.label().to_string()),
        ("condition".to_string(), args.cond.clone()),
        ("outcome".to_string(), args.outcome.clone()),
    ];
    if let Some(t) = &args.then {
        rows.push(("then".into(), t.clone()));
    }
    rows.push(("k0".into(), sc.model.grid().label(args.k0).to_string()));
    rows.push(("value".into(), num(result.value)));
    rows.push(("numerator".into(), num(result.numerator)));
    rows.push(("denominator".into(), num(result.denominator)));
    Ok(match fmt {
        Format::Json => json_text(&json!({
            "scenario": sc.name,
            "rule": result.rule.label(),
            "condition": args.cond,
            "outcome": args.outcome,
            "then": args.then,
            "k0": sc.model.grid().label(args.k0),
            "value": json_num(result.value),
            "numerator": json_num(result.numerator),
            "denominator": json_num(result.denominator),
            "warnings": result.warnings,
        })),
        Format::Csv => {
            let mut header: Vec<String> = rows.iter().map(|(k, _)| k.clone()).collect();
            let mut row: Vec<String> = rows.into_iter().map(|(_, v)| v).collect();
            header.push("warnings".into());
            row.push(result.warnings.join("; "));
            format::csv(&header, &[row])
        }
        Format::Human => {
            for w in &result.warnings {
                rows.push(("warning".into(), w.clone()));
            }
            format::pairs(&rows)
        }
    })
}

fn system1_matrix(sc: &Scenario, name: &str) -> std::result::Result<crate::linalg::ComplexMatrix, Failure> {
    match sc.predicate(name)? {
        p @ Predicate::Labels(_) => Ok(p.matrix(&sc.model)?),
        Predicate::Matrix(m) if m.rows() == sc.model.d1() => Ok(m.clone()),
        _ => Err(usage(format!("predicate '{name}' is not a system1 predicate"))),
    }
}

fn measure(sc: &Scenario, start: &str, outcomes: &str, rep: RepArg, k0: usize, fmt: Format) -> Outcome {
    let (start_names, start_at) = parse_at(start)?;
    if start_names.len() != 1 {
        return Err(usage("--start takes a single predicate"));
    }
    let (names, at) = parse_at(outcomes)?;
    let k1 = sc.index(&start_at)?;
    let k2 = sc.index(&at)?;
    let m0 = system1_matrix(sc, &start_names[0])?;
    let outs = names.iter().map(|n| system1_matrix(sc, n)).collect::<Result<Vec<_>, _>>()?;
    let process = MeasurementProcess::new(&sc.model, &sc.family, &m0, k1, &outs, k2, k0)?;
    let representation = match rep {
        RepArg::Support => Representation::Support,
        RepArg::Observable => Representation::Observable,
    };
    let eps = sc.model.tol().eps_zero;
    let cells = sc.position_projectors()?;
    let cell_names: Vec<String> = sc.positions.iter().map(|(n, _)| n.clone()).collect();
    let classes = process.refine_outcomes()?;
    let d1_names = |labels: &[usize]| -> String {
        labels
            .iter()
            .map(|l| {
                sc.predicates
                    .iter()
                    .find(|(_, p)| **p == Predicate::Labels(vec![*l]))
                    .map(|(n, _)| n.clone())
                    .unwrap_or_else(|| l.to_string())
            })
            .collect::<Vec<_>>()
            .join("+")
    };

    let mut header = strings(&["outcome", "index", "trace", "purity"]);
    header.extend(cell_names.iter().cloned());
    let mut rows = Vec::new();
    let mut summary = Vec::new();
    let mut json_outcomes = Vec::new();
    for (i, name) in names.iter().enumerate() {
        let path = process.kappa_path(i, representation)?;
        let traces = path.traces();
        let reachable = traces.iter().all(|&t| t > eps);
        let (purity, dist) = if reachable {
            let rho = measurement::rho_path(&path, eps)?;
            let dist = if cells.is_empty() { vec![Vec::new(); rho.len()] } else { measurement::position_distribution(&rho, &cells, eps)? };
            (measurement::purity(&rho), dist)
        } else {
            (vec![f64::NAN; traces.len()], vec![vec![f64::NAN; cells.len()]; traces.len()])
        };
        let mut json_rows = Vec::new();
        for (j, k) in path.indices().enumerate() {
            let mut row = vec![name.clone(), sc.model.grid().label(k).to_string(), num(traces[j]), num(purity[j])];
            row.extend(dist[j].iter().map(|&x| chop(x)));
            json_rows.push(json!({
                "index": sc.model.grid().label(k),
                "trace": json_num(traces[j]),
                "purity": json_num(purity[j]),
                "positions": cell_names.iter().zip(&dist[j]).map(|(n, &x)| (n.clone(), Value::String(chop(x)))).collect::<serde_json::Map<_, _>>(),
            }));
            rows.push(row);
        }
        let p = process.outcome_probability(i)?;
        let class_text = classes[i].iter().map(|c| d1_names(c)).collect::<Vec<_>>().join(" | ");
        summary.push(vec![name.clone(), num(p), process.record_kept()[i].to_string(), class_text.clone()]);
        json_outcomes.push(json!({
            "outcome": name,
            "probability": json_num(p),
            "record_kept": process.record_kept()[i],
            "classes": classes[i].iter().map(|c| d1_names(c)).collect::<Vec<_>>(),
            "path": json_rows,
        }));
    }
    let rep_label = match representation {
        Representation::Support => "support",
        Representation::Observable => "observable",
    };
    Ok(match fmt {
        Format::Json => json_text(&json!({
            "scenario": sc.name,
            "start": start,
            "representation": rep_label,
            "measurement": process.is_measurement(),
            "outcomes": json_outcomes,
        })),
        Format::Csv => format::csv(&header, &rows),
        Format::Human => {
            let mut s = format::pairs(&[
                ("start".into(), start.to_string()),
                ("representation".into(), rep_label.into()),
                ("measurement".into(), if process.is_measurement() { "yes".into() } else { "no (record not kept)".into() }),
            ]);
            s.push('\n');
            s.push_str(&format::table(&strings(&["outcome", "probability", "record_kept", "classes"]), &summary));
            s.push('\n');
            s.push_str(&format::table(&header, &rows));
            s
        }
    })
}

fn verify_cmd(sc: &Scenario, cond_spec: &str, outcomes: &str, k0: usize, fmt: Format) -> Outcome {
    let cond_event = single(sc, cond_spec)?;
    let cond = crate::condition::Condition::from_event(&sc.model, &sc.family, &cond_event)?;
    let (names, set) = outcome_set(sc, outcomes)?;
    let report = verify::verifiable(&cond, &set)?;
    let direction = report.direction;
    let mut rows = Vec::new();
    let mut json_rows = Vec::new();
    let residuals = if report.verifiable { Some(verify::verify_trace_identity(&cond, &set, k0)?) } else { None };
    for (i, (name, check)) in names.iter().zip(&report.outcomes).enumerate() {
        let (trace_res, decomp_res) = match &residuals {
            Some(r) => {
                let d = verify::decompose(&cond, &set.event(i)?, direction)?;
                (Some(r[i]), Some(d.residual))
            }
            None => (None, None),
        };
        let opt = |x: Option<f64>| x.map(chop).unwrap_or_else(|| "-".into());
        rows.push(vec![
            name.clone(),
            chop(check.commutator_physical),
            chop(check.commutator_condition),
            if check.verifiable { "yes".into() } else { "no".into() },
            opt(trace_res),
            opt(decomp_res),
        ]);
        json_rows.push(json!({
            "outcome": name,
            "commutator_physical": chop(check.commutator_physical),
            "commutator_condition": chop(check.commutator_condition),
            "verifiable": check.verifiable,
            "trace_identity_residual": trace_res.map(chop),
            "decomposition_residual": decomp_res.map(chop),
        }));
    }
    let overlaps = if report.verifiable { verify::z_overlaps(&cond, &set)? } else { Vec::new() };
    let header = strings(&["outcome", "comm_physical", "comm_condition", "verifiable", "trace_residual", "zw_residual"]);
    Ok(match fmt {
        Format::Json => json_text(&json!({
            "scenario": sc.name,
            "condition": cond_spec,
            "direction": direction.label(),
            "verifiable": report.verifiable,
            "outcomes": json_rows,
            "z_overlaps": overlaps.iter().map(|(i, j, x)| json!({"a": names[*i], "b": names[*j], "overlap": chop(*x)})).collect::<Vec<_>>(),
        })),
        Format::Csv => format::csv(&header, &rows),
        Format::Human => {
            let mut s = format::pairs(&[
                ("condition".into(), cond_spec.to_string()),
                ("direction".into(), direction.label().into()),
                ("verdict".into(), if report.verifiable { "verifiable".into() } else { "not verifiable".into() }),
            ]);
            s.push('\n');
            s.push_str(&format::table(&header, &rows));
            if !overlaps.is_empty() {
                s.push('\n');
                let orows: Vec<Vec<String>> = overlaps.iter().map(|(i, j, x)| vec![names[*i].clone(), names[*j].clone(), chop(*x)]).collect();
                s.push_str(&format::table(&strings(&["z_a", "z_b", "overlap"]), &orows));
            }
            s
        }
    })
}

fn demo_intro(fmt: Format) -> Outcome {
    let r = scenarios::intro_inconsistency_demo()?;
    let verdict = if r.demonstrates_inconsistency() {
        "textbook rule cannot give both relations; amended rule gives both"
    } else {
        "inconsistency not reproduced"
    };
    Ok(match fmt {
        Format::Json => json_text(&json!({
            "textbook_retrodiction": json_num(r.textbook_retrodiction),
            "textbook_forward": json_num(r.textbook_forward),
            "microstate_forward": r.microstate_forward.iter().map(|&x| json_num(x)).collect::<Vec<_>>(),
            "amended_forward": json_num(r.amended_forward),
            "amended_retrodiction_approx": json_num(r.amended_retrodiction_approx),
            "amended_retrodiction_known": json_num(r.amended_retrodiction_known),
            "amended_retrodiction_full": json_num(r.amended_retrodiction_full),
            "verdict": verdict,
        })),
        Format::Csv => {
            let mut rows = vec![
                vec!["textbook P(I@t0 | Fup@t1)".into(), num(r.textbook_retrodiction)],
                vec!["textbook P(Fup@t1 | I@t0)".into(), num(r.textbook_forward)],
            ];
            for (i, p) in r.microstate_forward.iter().enumerate() {
                rows.push(vec![format!("amended P(Fup@t1 | x{i}@t0)"), num(*p)]);
            }
            rows.push(vec!["amended P(Fup@t1 | I@t0)".into(), num(r.amended_forward)]);
            rows.push(vec!["amended P(I@t0 | Fup@t1) approx".into(), num(r.amended_retrodiction_approx)]);
            rows.push(vec!["amended P(I@t0 | Fup@t1) known".into(), num(r.amended_retrodiction_known)]);
            rows.push(vec!["amended P(I@t0 | Fup@t1) full".into(), num(r.amended_retrodiction_full)]);
            format::csv(&strings(&["quantity", "value"]), &rows)
        }
        Format::Human => {
            let mut rows = vec![
                ("textbook P(I@t0 | Fup@t1)".to_string(), num(r.textbook_retrodiction)),
                ("textbook P(Fup@t1 | I@t0)".to_string(), num(r.textbook_forward)),
            ];
            for (i, p) in r.microstate_forward.iter().enumerate() {
                rows.push((format!("amended P(Fup@t1 | x{i}@t0)"), num(*p)));
            }
            rows.push(("amended P(Fup@t1 | I@t0)".into(), num(r.amended_forward)));
            rows.push(("amended P(I@t0 | Fup@t1) approx".into(), num(r.amended_retrodiction_approx)));
            rows.push(("amended P(I@t0 | Fup@t1) known".into(), num(r.amended_retrodiction_known)));
            rows.push(("amended P(I@t0 | Fup@t1) full".into(), num(r.amended_retrodiction_full)));
            rows.push(("verdict".into(), verdict.into()));
            format::pairs(&rows)
        }
    })
}
