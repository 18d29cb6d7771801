//! Command-line front end: configuration, dispatch and report rendering.
//!
//! Every command produces a [`Report`]: a list of pass/fail checks, a JSON
//! body and a text rendering. Exit status is 0 when every check passes, 2 when
//! a mathematical check fails and 3 for unusable input.

use std::fmt::Write as _;
use std::path::{Path, PathBuf};
use std::sync::Arc;

use clap::{Parser, Subcommand, ValueEnum};
use serde::Serialize;
use serde_json::{json, Value};

use semiinv_core::exactnum::CycNum;
use semiinv_core::golden::{verify_g26, G26Fixture};
use semiinv_core::logforms::{is_logarithmic, logarithmic_battery, Multiarrangement};
use semiinv_core::polyring::{poly_to_json, DiffForm};
use semiinv_core::reflgroup::{hilbert_series, isotypic_series, Character, CharacterSpec, GroupError, GroupSpec, DEFAULT_CAP};
use semiinv_core::semiinv::{
    ah_recurrence_check, basic_invariants, find_generators, saito_check, Certificate, CheckResult, FormSample,
    GroupActions, SemiError, SemiInvariantContext,
};

pub const EXIT_PASS: i32 = 0;
pub const EXIT_MATH: i32 = 2;
pub const EXIT_INPUT: i32 = 3;

/// Environment variable holding the worker count.
pub const THREADS_ENV: &str = "SEMIINV_THREADS";

#[derive(Clone, Copy, Debug, PartialEq, Eq, Subcommand)]
pub enum Command {
    /// Group order, reflections, hyperplanes and basic invariant degrees.
    Info,
    /// Q_chi, Q_(chi*det) and the per-hyperplane exponents.
    Qchi,
    /// Search for generators of the chi-invariant 1-forms and certify them.
    Basis,
    /// Run the generator criterion on the forms in --forms.
    Saito,
    /// Reproduce the golden computation for the order-1296 group.
    #[command(name = "verify-g26")]
    VerifyG26,
    /// Isotypic polynomial dimensions against the predicted Hilbert series.
    Hilbert,
    /// Logarithmic membership and product closure on sampled forms.
    Logcheck,
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, ValueEnum, Serialize)]
pub enum OutputFormat {
    #[default]
    Text,
    Json,
}

#[derive(Debug, Parser)]
#[command(name = "semiinv", version, about = "Semiinvariant differential forms of finite reflection groups")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
    /// Group specification (JSON).
    #[arg(long, global = true)]
    pub group: Option<PathBuf>,
    /// Character: "det^k", "det", "trivial", or a JSON character file.
    #[arg(long = "char", global = true, default_value = "det")]
    pub character: String,
    /// Highest polynomial degree searched or tabulated.
    #[arg(long, global = true, value_parser = clap::value_parser!(u64).range(1..))]
    pub degree_cap: Option<u64>,
    #[arg(long, global = true, value_enum, default_value_t = OutputFormat::Text)]
    pub output: OutputFormat,
    /// Seed for sampled property checks.
    #[arg(long, global = true, default_value_t = 0)]
    pub seed: u64,
    /// Forms file for `saito` and `verify-g26`.
    #[arg(long, global = true)]
    pub forms: Option<PathBuf>,
}

/// A fully resolved command configuration.
#[derive(Clone, Debug)]
pub struct CommandConfig {
    pub command: Command,
    pub group_file: Option<PathBuf>,
    pub character: String,
    pub degree_cap: Option<usize>,
    pub output: OutputFormat,
    pub seed: u64,
    pub forms_file: Option<PathBuf>,
}

impl From<Cli> for CommandConfig {
    fn from(c: Cli) -> CommandConfig {
        CommandConfig {
            command: c.command,
            group_file: c.group,
            character: c.character,
            degree_cap: c.degree_cap.map(|d| d as usize),
            output: c.output,
            seed: c.seed,
            forms_file: c.forms,
        }
    }
}

/// The result of one command.
#[derive(Clone, Debug, Serialize)]
pub struct Report {
    pub command: String,
    pub checks: Vec<CheckResult>,
    pub body: Value,
    #[serde(skip)]
    pub text: String,
}

impl Report {
    pub fn pass(&self) -> bool {
        self.checks.iter().all(|c| c.pass)
    }

    pub fn render(&self, format: OutputFormat) -> String {
        match format {
            OutputFormat::Json => serde_json::to_string_pretty(self).expect("report serializes") + "\n",
            OutputFormat::Text => {
                let mut s = self.text.clone();
                for c in &self.checks {
                    let _ = writeln!(s, "[{}] {}: {}", if c.pass { "pass" } else { "FAIL" }, c.name, c.details);
                }
                s
            }
        }
    }
}

#[derive(Debug)]
pub enum CliError {
    Input(String),
    Math(String),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Input(_) => EXIT_INPUT,
            CliError::Math(_) => EXIT_MATH,
        }
    }

    pub fn message(&self) -> String {
        match self {
            CliError::Input(m) => format!("input error: {m}"),
            CliError::Math(m) => format!("mathematical failure: {m}"),
        }
    }
}

impl From<GroupError> for CliError {
    fn from(e: GroupError) -> CliError {
        match e {
            GroupError::Arithmetic(m) => CliError::Math(m),
            other => CliError::Input(other.to_string()),
        }
    }
}

impl From<SemiError> for CliError {
    fn from(e: SemiError) -> CliError {
        match e {
            SemiError::Group(g) => g.into(),
            other => CliError::Math(other.to_string()),
        }
    }
}

/// Runs a command, returning the exit status and the rendered output.
pub fn run(config: &CommandConfig) -> (i32, String) {
    match dispatch(config) {
        Ok(report) => {
            let code = if report.pass() { EXIT_PASS } else { EXIT_MATH };
            (code, report.render(config.output))
        }
        Err(e) => {
            let text = match config.output {
                OutputFormat::Json => {
                    let kind = if e.exit_code() == EXIT_INPUT { "input" } else { "math" };
                    serde_json::to_string_pretty(&json!({"error": kind, "message": e.message()})).expect("serializes") + "\n"
                }
                OutputFormat::Text => e.message() + "\n",
            };
            (e.exit_code(), text)
        }
    }
}

pub fn dispatch(config: &CommandConfig) -> Result<Report, CliError> {
    match config.command {
        Command::Info => info(config),
        Command::Qchi => qchi(config),
        Command::Basis => basis(config),
        Command::Saito => saito(config),
        Command::VerifyG26 => golden(config),
        Command::Hilbert => hilbert(config),
        Command::Logcheck => logcheck(config),
    }
}

fn load_actions(path: &Path) -> Result<Arc<GroupActions>, CliError> {
    let spec = GroupSpec::load(path)?;
    let g = spec.build(DEFAULT_CAP)?;
    Ok(Arc::new(GroupActions::new(Arc::new(g))))
}

fn group_actions(config: &CommandConfig) -> Result<Arc<GroupActions>, CliError> {
    let path = config
        .group_file
        .as_ref()
        .ok_or_else(|| CliError::Input("--group <file> is required".into()))?;
    load_actions(path)
}

fn character(config: &CommandConfig, actions: &GroupActions) -> Result<Character, CliError> {
    let path = Path::new(&config.character);
    let spec = if path.is_file() {
        let text = std::fs::read_to_string(path).map_err(|e| CliError::Input(format!("{}: {e}", path.display())))?;
        serde_json::from_str::<CharacterSpec>(&text).map_err(|e| CliError::Input(format!("{}: {e}", path.display())))?
    } else {
        CharacterSpec::parse(&config.character)?
    };
    let chi = Character::new(actions.group(), &spec)?;
    Ok(if path.is_file() { chi.with_name(&config.character) } else { chi })
}

fn context(config: &CommandConfig) -> Result<SemiInvariantContext, CliError> {
    let actions = group_actions(config)?;
    let chi = character(config, &actions)?;
    Ok(SemiInvariantContext::new(actions, chi)?)
}

fn report(command: &str, checks: Vec<CheckResult>, body: Value, text: String) -> Report {
    Report { command: command.into(), checks, body, text }
}

fn info(config: &CommandConfig) -> Result<Report, CliError> {
    let actions = group_actions(config)?;
    let g = actions.group();
    let basics = basic_invariants(&actions)?;
    let mut text = String::new();
    let _ = writeln!(text, "group {}: dimension {}, conductor {}", g.name(), g.dim(), g.conductor());
    let _ = writeln!(text, "order {}", g.order());
    let _ = writeln!(text, "reflections {}", g.reflections().len());
    let _ = writeln!(text, "hyperplanes {}", g.arrangement().len());
    let mut rows = Vec::new();
    for h in g.arrangement() {
        let _ = writeln!(text, "  alpha = {:<40} o(s_H) = {}", h.alpha().to_string(), h.stab_order());
        rows.push(json!({"alpha": poly_to_json(h.alpha()), "alpha_text": h.alpha().to_string(), "order": h.stab_order()}));
    }
    let _ = writeln!(text, "basic invariant degrees {:?}", basics.degrees);
    let prod: usize = basics.degrees.iter().product();
    let checks = vec![CheckResult::new("product of degrees equals |G|", prod == g.order(), format!("{prod} vs {}", g.order()))];
    let body = json!({
        "group": g.name(),
        "dim": g.dim(),
        "conductor": g.conductor(),
        "order": g.order(),
        "reflections": g.reflections().len(),
        "hyperplanes": rows,
        "basic_invariant_degrees": basics.degrees,
    });
    Ok(report("info", checks, body, text))
}

fn qchi(config: &CommandConfig) -> Result<Report, CliError> {
    let ctx = context(config)?;
    let g = ctx.group();
    let mut text = String::new();
    let _ = writeln!(text, "group {}, character {}", g.name(), ctx.chi().name());
    let _ = writeln!(text, "Q_chi       = {}", ctx.q_chi());
    let _ = writeln!(text, "Q_(chi*det) = {}", ctx.q_chi_det());
    let _ = writeln!(text, "{:<40} {:>6} {:>8} {:>12} {:>9}", "hyperplane", "o(s_H)", "a_H(chi)", "a_H(chi*det)", "expected");
    let mut rows = Vec::new();
    let mut all = true;
    for h in g.arrangement() {
        let r = ah_recurrence_check(g, h, ctx.chi())?;
        all &= r.pass;
        let _ = writeln!(text, "{:<40} {:>6} {:>8} {:>12} {:>9}", r.hyperplane, r.order, r.a_chi, r.a_chi_det, r.expected);
        rows.push(serde_json::to_value(&r).expect("serializes"));
    }
    let checks = vec![CheckResult::new("a_H recurrence", all, format!("{} hyperplanes", rows.len()))];
    let body = json!({
        "group": g.name(),
        "character": ctx.chi().name(),
        "q_chi": poly_to_json(ctx.q_chi()),
        "q_chi_det": poly_to_json(ctx.q_chi_det()),
        "q_chi_text": ctx.q_chi().to_string(),
        "q_chi_det_text": ctx.q_chi_det().to_string(),
        "hyperplanes": rows,
    });
    Ok(report("qchi", checks, body, text))
}

fn default_cap(ctx: &SemiInvariantContext) -> usize {
    (ctx.q_chi_det().degree().unwrap_or(0) + ctx.q_det().degree().unwrap_or(0)).max(1)
}

fn certificate_text(ctx: &SemiInvariantContext, forms: &[DiffForm], witness: Option<&CycNum>) -> String {
    let mut text = String::new();
    let _ = writeln!(text, "group {}, character {}", ctx.group().name(), ctx.chi().name());
    let _ = writeln!(text, "Q_chi       = {}", ctx.q_chi());
    let _ = writeln!(text, "Q_(chi*det) = {}", ctx.q_chi_det());
    for (i, w) in forms.iter().enumerate() {
        let _ = writeln!(text, "w{} = {}", i + 1, w);
    }
    if let Some(c) = witness {
        let _ = writeln!(text, "w1 ⌣ ... ⌣ wn = ({c}) Q_(chi*det) vol");
    }
    text
}

fn basis(config: &CommandConfig) -> Result<Report, CliError> {
    let ctx = context(config)?;
    let basics = basic_invariants(ctx.actions())?;
    let cap = config.degree_cap.unwrap_or_else(|| default_cap(&ctx));
    let (cert, log) = find_generators(&ctx, &basics, cap)?;
    let checks = vec![CheckResult::new(
        "generator criterion",
        !cert.witness_scalar.is_zero(),
        format!("degrees {:?}, witness {}", cert.degrees, cert.witness_scalar),
    )];
    let mut text = certificate_text(&ctx, &cert.forms, Some(&cert.witness_scalar));
    for s in &log {
        let _ = writeln!(
            text,
            "degree {:>3}: dim {:>3}, span {:>3}, new {}",
            s.degree, s.isotypic_dim, s.span_rank, s.new_generators
        );
    }
    let out = Certificate::new(&ctx, Some(&cert), checks.clone());
    let body = serde_json::to_value(&out).expect("serializes");
    Ok(report("basis", checks, body, text))
}

/// Reads a list of forms, either a bare JSON list or an object with a "forms" list.
pub fn read_forms(path: &Path) -> Result<Vec<DiffForm>, CliError> {
    let text = std::fs::read_to_string(path).map_err(|e| CliError::Input(format!("{}: {e}", path.display())))?;
    let value: Value = serde_json::from_str(&text).map_err(|e| CliError::Input(format!("{}: {e}", path.display())))?;
    let list = match value {
        Value::Object(mut o) => o.remove("forms").unwrap_or(Value::Null),
        other => other,
    };
    serde_json::from_value(list).map_err(|e| CliError::Input(format!("{}: {e}", path.display())))
}

fn saito(config: &CommandConfig) -> Result<Report, CliError> {
    let ctx = context(config)?;
    let path = config
        .forms_file
        .as_ref()
        .ok_or_else(|| CliError::Input("--forms <file> is required".into()))?;
    let forms = read_forms(path)?;
    for (i, w) in forms.iter().enumerate() {
        if w.nvars() != ctx.dim() || w.conductor() != ctx.conductor() {
            return Err(CliError::Input(format!(
                "form {i} has {} variables and conductor {}, the group needs {} and {}",
                w.nvars(),
                w.conductor(),
                ctx.dim(),
                ctx.conductor()
            )));
        }
    }
    let outcome = saito_check(&forms, &ctx)?;
    let (checks, cert) = match &outcome {
        Ok(c) => (
            vec![CheckResult::new("generator criterion", true, format!("degrees {:?}, witness {}", c.degrees, c.witness_scalar))],
            Some(c),
        ),
        Err(f) => (vec![CheckResult::new("generator criterion", false, f.to_string())], None),
    };
    let text = certificate_text(&ctx, &forms, cert.map(|c| &c.witness_scalar));
    let mut out = Certificate::new(&ctx, cert, checks.clone());
    out.generators = forms;
    Ok(report("saito", checks, serde_json::to_value(&out).expect("serializes"), text))
}

fn golden(config: &CommandConfig) -> Result<Report, CliError> {
    let group = config.group_file.clone().unwrap_or_else(|| PathBuf::from("fixtures/g26.json"));
    let forms = config.forms_file.clone().unwrap_or_else(|| PathBuf::from("fixtures/g26_det3_forms.json"));
    let actions = load_actions(&group)?;
    let fixture = G26Fixture::load(&forms).map_err(CliError::Input)?;
    if fixture.forms.len() != 3 || fixture.forms.iter().any(|w| w.nvars() != actions.group().dim()) {
        return Err(CliError::Input("forms fixture must hold three 1-forms in the group's variables".into()));
    }
    let r = verify_g26(actions, &fixture)?;
    let mut text = String::new();
    let _ = writeln!(
        text,
        "determinant constant against the printed polynomials: {}",
        r.printed_constant.as_ref().map_or("none".into(), |c| c.to_string())
    );
    let body = serde_json::to_value(&r).expect("serializes");
    Ok(report("verify-g26", r.checks, body, text))
}

fn hilbert(config: &CommandConfig) -> Result<Report, CliError> {
    let ctx = context(config)?;
    let g = ctx.group();
    let basics = basic_invariants(ctx.actions())?;
    let cap = config.degree_cap.unwrap_or_else(|| 2 * ctx.q_det().degree().unwrap_or(0)).max(1);
    let got = isotypic_series(g, ctx.chi(), 0, cap)?;
    let want = hilbert_series(ctx.deg_q_chi(), &basics.degrees, cap);
    let forms: Vec<Vec<usize>> = (1..=g.dim()).map(|p| isotypic_series(g, ctx.chi(), p, cap)).collect::<Result<_, _>>()?;
    let mut text = String::new();
    let _ = writeln!(text, "group {}, character {}, deg Q_chi = {}, basic degrees {:?}", g.name(), ctx.chi().name(), ctx.deg_q_chi(), basics.degrees);
    let _ = write!(text, "{:>4} {:>8} {:>10}", "d", "dim S_d", "predicted");
    for p in 1..=g.dim() {
        let _ = write!(text, " {:>7}", format!("p={p}"));
    }
    text.push('\n');
    for d in 0..=cap {
        let _ = write!(text, "{d:>4} {:>8} {:>10}", got[d], want[d]);
        for s in &forms {
            let _ = write!(text, " {:>7}", s[d]);
        }
        text.push('\n');
    }
    let first_bad = got.iter().zip(&want).position(|(a, b)| a != b);
    let checks = vec![CheckResult::new(
        "isotypic polynomials match the predicted series",
        first_bad.is_none(),
        match first_bad {
            None => format!("equal through degree {cap}"),
            Some(d) => format!("degree {d}: {} vs {}", got[d], want[d]),
        },
    )];
    let body = json!({
        "group": g.name(),
        "character": ctx.chi().name(),
        "degree_cap": cap,
        "polynomials": got,
        "predicted": want,
        "forms": forms,
    });
    Ok(report("hilbert", checks, body, text))
}

fn logcheck(config: &CommandConfig) -> Result<Report, CliError> {
    let ctx = context(config)?;
    let n = ctx.dim();
    let s1 = FormSample::new(&ctx, 1, 20, config.seed)?;
    let s2 = FormSample::new(&ctx, 2.min(n), 20, config.seed)?;
    let math = |e: semiinv_core::logforms::LogError| CliError::Math(e.to_string());
    let battery = logarithmic_battery(&ctx, &[&s1, &s2], 20, config.seed).map_err(math)?;
    // Membership must not depend on how each alpha_H is scaled.
    let arr = Multiarrangement::of_character(ctx.group(), ctx.chi()).map_err(math)?;
    let factors: Vec<CycNum> = (0..arr.hyperplanes().len())
        .map(|i| CycNum::from_ratio(ctx.conductor(), -(2 + (config.seed as i64 + i as i64) % 5), 3))
        .collect();
    let re = arr.rescaled(&factors).map_err(math)?;
    let mut rescaled_ok = true;
    for w in s1.forms().iter().chain(s2.forms().iter()) {
        rescaled_ok &= is_logarithmic(w, &re).map_err(math)?.is_none();
    }
    let checks = vec![
        battery,
        CheckResult::new("membership under rescaled defining forms", rescaled_ok, format!("{} forms", s1.len() + s2.len())),
    ];
    let mut text = String::new();
    let _ = writeln!(text, "group {}, character {}, defining polynomial {}", ctx.group().name(), ctx.chi().name(), arr.defining_poly());
    let body = json!({"group": ctx.group().name(), "character": ctx.chi().name(), "seed": config.seed});
    Ok(report("logcheck", checks, body, text))
}
