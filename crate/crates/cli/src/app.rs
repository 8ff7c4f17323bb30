//! The `ores` command line.

use std::collections::BTreeMap;
use std::io::Write;
use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::sync::Arc;

use clap::{Parser, Subcommand, ValueEnum};
use num_complex::Complex64;
use num_traits::Signed;
use ores_core::algebra::Presentation;
use ores_core::operators::{
    core_density_probe, extend_representation, invert_one_plus_astar_a, lemma_pis_equals_s_check,
    pi_s_surjectivity_probe, FockAssignment, OperatorError, OperatorSpec, ProbeReport, SurdSum,
};
use ores_core::ore::{FractionEquality, Localization, OreError, OreSearch};
use ores_core::positivity::{check_state_axioms, gns, verify_certificate, MomentFunctional, PositivityCertificate};
use ores_core::{Scalar, Word};
use serde::Deserialize;
use serde_json::json;
use thiserror::Error;

use crate::config::{resolve_presentation, ConfigError, ScenarioConfig};
use crate::eval::{factor_string, parse_scalars, EvalError, Evaluator, FractionDisplay};
use crate::parser::parse;
use crate::report::Status;
use crate::scenario::{self, ScenarioError, SCENARIOS};

#[derive(Debug, Parser)]
#[command(name = "ores", version, about = "Fractions, positivity and operator probes for presented *-algebras")]
pub struct Cli {
    /// Preset name (cx, cxy, heisenberg, free) or presentation file.
    #[arg(long, global = true)]
    pub presentation: Option<String>,
    #[arg(long, global = true)]
    pub budget_factors: Option<usize>,
    #[arg(long, global = true)]
    pub budget_degree: Option<usize>,
    /// Probe tolerance; for `op invert`, the solve tolerance.
    #[arg(long, global = true)]
    pub tol: Option<f64>,
    #[arg(long, global = true)]
    pub seed: Option<u64>,
    /// Output directory for reports.
    #[arg(long, global = true)]
    pub out: Option<PathBuf>,
    /// Scenario configuration file (JSON).
    #[arg(long, global = true)]
    pub config: Option<PathBuf>,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Print the normal form of an expression.
    Normalize { expr: String },
    /// Ore witness search.
    #[command(subcommand)]
    Ore(OreCommand),
    /// Fraction arithmetic.
    #[command(subcommand)]
    Frac(FracCommand),
    /// Positivity certificates.
    #[command(subcommand)]
    Cone(ConeCommand),
    /// GNS construction from a moment table.
    #[command(subcommand)]
    Gns(GnsCommand),
    /// Banded operators.
    #[command(subcommand)]
    Op(OpCommand),
    /// Shipped scenarios.
    #[command(subcommand)]
    Scenario(ScenarioCommand),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Side {
    /// `a·t = s·b`
    Right,
    /// `t·a = b·s`
    Left,
}

#[derive(Debug, Subcommand)]
pub enum OreCommand {
    /// Find a witness for the numerator and denominator of a fraction.
    Solve {
        fraction: String,
        #[arg(long, value_enum, default_value = "right")]
        side: Side,
    },
}

#[derive(Debug, Subcommand)]
pub enum FracCommand {
    /// `λ·f + g`.
    Add {
        f: String,
        g: String,
        #[arg(long, default_value = "1")]
        lambda: String,
    },
    Mul { f: String, g: String },
    Dagger { f: String },
    Eq { f: String, g: String },
}

#[derive(Debug, Subcommand)]
pub enum ConeCommand {
    /// Check `x = Σ λᵢ·pᵢ'pᵢ`, each term written `λ:p`.
    Verify {
        element: String,
        #[arg(required = true)]
        terms: Vec<String>,
    },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum StateKind {
    Gaussian,
    Dirac,
    Fock,
}

#[derive(Debug, Subcommand)]
pub enum GnsCommand {
    Build {
        #[arg(long, value_enum, default_value = "gaussian", conflicts_with = "moments")]
        state: StateKind,
        /// Moment table file.
        #[arg(long)]
        moments: Option<PathBuf>,
        #[arg(long, default_value_t = 4)]
        degree: usize,
        /// Coordinates of the state vector for `--state fock`.
        #[arg(long, default_value = "1")]
        omega: String,
    },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum ProbeKind {
    Surjectivity,
    Lemma,
    Core,
    Extend,
}

#[derive(Debug, Subcommand)]
pub enum OpCommand {
    /// `A·ξ`, exactly.
    Apply {
        spec: PathBuf,
        #[arg(long)]
        vector: String,
    },
    /// `(1 + A*A)⁻¹·y`.
    Invert {
        spec: PathBuf,
        #[arg(long)]
        vector: String,
        #[arg(long, default_value_t = ores_core::operators::DEFAULT_TRUNCATION_CAP)]
        cap: usize,
    },
    /// Integrability probes on the Fock representation.
    Probe {
        #[arg(value_enum)]
        kind: ProbeKind,
        #[arg(long, default_value = "frac(a; 1 + a'*a)")]
        fraction: String,
        #[arg(long)]
        vector: Option<String>,
    },
}

#[derive(Debug, Subcommand)]
pub enum ScenarioCommand {
    /// Run one scenario, or `all`.
    Run { name: String },
}

#[derive(Debug, Error)]
pub enum CliError {
    #[error("{0}")]
    Usage(String),
    #[error(transparent)]
    Config(#[from] ConfigError),
    #[error(transparent)]
    Eval(#[from] EvalError),
    #[error(transparent)]
    Ore(#[from] OreError),
    #[error(transparent)]
    Operator(#[from] OperatorError),
    #[error(transparent)]
    Scenario(#[from] ScenarioError),
    #[error("{0}")]
    Io(#[from] std::io::Error),
    #[error("{0}")]
    Check(String),
}

impl CliError {
    /// 1 for a failed check, 2 for bad input.
    pub fn exit_code(&self) -> u8 {
        match self {
            CliError::Usage(_) | CliError::Config(_) | CliError::Io(_) => 2,
            CliError::Eval(e) => match e {
                EvalError::Ore(_) | EvalError::Algebra(_) => 1,
                _ => 2,
            },
            CliError::Scenario(ScenarioError::Config(_) | ScenarioError::Unknown(_)) => 2,
            CliError::Operator(OperatorError::Format(_) | OperatorError::InvalidTolerance(_)) => 2,
            _ => 1,
        }
    }
}

pub fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { 2 } else { 0 });
        }
    };
    let mut stdout = std::io::stdout().lock();
    match run(&cli, &mut stdout) {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code())
        }
    }
}

impl Cli {
    fn scenario_config(&self) -> Result<ScenarioConfig, CliError> {
        let mut cfg = match &self.config {
            Some(path) => ScenarioConfig::load(path)?,
            None => ScenarioConfig::default(),
        };
        if let Some(p) = &self.presentation {
            cfg.presentation = Some(p.clone());
        }
        if let Some(n) = self.budget_factors {
            cfg.budget.max_factors = n;
        }
        if let Some(n) = self.budget_degree {
            cfg.budget.max_degree = n;
        }
        if let Some(t) = self.tol {
            cfg.tolerances.probe = t;
        }
        if let Some(s) = self.seed {
            cfg.seed = s;
        }
        if let Some(o) = &self.out {
            cfg.out_dir = o.clone();
        }
        cfg.validate()?;
        Ok(cfg)
    }

    fn presentation_or(&self, default: &str) -> Result<Arc<Presentation>, CliError> {
        Ok(resolve_presentation(self.presentation.as_deref().unwrap_or(default))?)
    }

    fn localization(&self, p: &Arc<Presentation>) -> Result<Localization, CliError> {
        let mut cfg = ScenarioConfig::default();
        if let Some(n) = self.budget_factors {
            cfg.budget.max_factors = n;
        }
        if let Some(n) = self.budget_degree {
            cfg.budget.max_degree = n;
        }
        Ok(cfg.localization(p)?)
    }

    fn tolerance(&self, default: f64) -> Result<f64, CliError> {
        match self.tol {
            Some(t) if !(t.is_finite() && t > 0.0) => Err(CliError::Usage(format!("--tol must be positive, got {t}"))),
            Some(t) => Ok(t),
            None => Ok(default),
        }
    }
}

/// Runs one command; `Ok(false)` when a check ran and failed.
pub fn run(cli: &Cli, out: &mut dyn Write) -> Result<bool, CliError> {
    match &cli.command {
        Command::Normalize { expr } => {
            let p = cli.presentation_or("heisenberg")?;
            let loc = cli.localization(&p)?;
            writeln!(out, "{}", Evaluator::new(&loc).parse_value(expr)?)?;
            Ok(true)
        }
        Command::Ore(OreCommand::Solve { fraction, side }) => {
            let p = cli.presentation_or("heisenberg")?;
            let loc = cli.localization(&p)?;
            let f = Evaluator::new(&loc).parse_fraction(fraction)?;
            let found = match side {
                Side::Right => loc.solve_right(f.num(), f.den())?,
                Side::Left => loc.solve_left(f.num(), f.den())?,
            };
            match found {
                OreSearch::Found(w) => {
                    let t: Vec<String> = w.t.factors().iter().map(|x| factor_string(x.p())).collect();
                    writeln!(out, "b = {}", w.b)?;
                    writeln!(out, "t = {}", if t.is_empty() { "1".into() } else { t.join(" ; ") })?;
                    Ok(true)
                }
                OreSearch::NotFoundWithinBudget => {
                    let b = loc.budget();
                    writeln!(out, "no witness within budget (factors {}, degree {})", b.max_factors, b.max_degree)?;
                    Ok(false)
                }
            }
        }
        Command::Frac(cmd) => {
            let p = cli.presentation_or("heisenberg")?;
            let loc = cli.localization(&p)?;
            let ev = Evaluator::new(&loc);
            let result = match cmd {
                FracCommand::Add { f, g, lambda } => {
                    let lambda = crate::eval::eval_scalar(&parse(lambda).map_err(EvalError::from)?)?;
                    loc.add(&lambda, &ev.parse_fraction(f)?, &ev.parse_fraction(g)?)
                }
                FracCommand::Mul { f, g } => loc.mul(&ev.parse_fraction(f)?, &ev.parse_fraction(g)?),
                FracCommand::Dagger { f } => loc.dagger(&ev.parse_fraction(f)?),
                FracCommand::Eq { f, g } => {
                    return match loc.eq(&ev.parse_fraction(f)?, &ev.parse_fraction(g)?)? {
                        FractionEquality::Equal(c) => {
                            writeln!(out, "equal")?;
                            writeln!(out, "u = {}", c.u)?;
                            writeln!(out, "v = {}", c.v)?;
                            Ok(true)
                        }
                        FractionEquality::Distinct => {
                            writeln!(out, "distinct")?;
                            Ok(false)
                        }
                        FractionEquality::NotEqualUpToBudget => {
                            writeln!(out, "not equal within budget")?;
                            Ok(false)
                        }
                    };
                }
            };
            match result {
                Ok(f) => {
                    writeln!(out, "{}", FractionDisplay(&f))?;
                    Ok(true)
                }
                Err(OreError::OreWitnessNotFound) => {
                    writeln!(out, "no Ore witness within budget")?;
                    Ok(false)
                }
                Err(e) => Err(e.into()),
            }
        }
        Command::Cone(ConeCommand::Verify { element, terms }) => {
            let p = cli.presentation_or("heisenberg")?;
            let loc = cli.localization(&p)?;
            let ev = Evaluator::new(&loc);
            let x = ev.parse_element(element)?;
            let mut cert = Vec::new();
            for t in terms {
                let (lambda, a) = t
                    .split_once(':')
                    .ok_or_else(|| CliError::Usage(format!("certificate term {t:?} is not of the form λ:p")))?;
                let lambda = crate::eval::eval_scalar(&parse(lambda).map_err(EvalError::from)?)?;
                if !lambda.is_real() || !lambda.re.is_positive() {
                    return Err(CliError::Usage(format!("weight {lambda} is not a positive rational")));
                }
                cert.push((lambda.re.clone(), ev.parse_element(a)?));
            }
            let ok = verify_certificate(&x, &PositivityCertificate::new(cert)).map_err(EvalError::from)?;
            writeln!(out, "{}", if ok { "verified" } else { "not verified" })?;
            Ok(ok)
        }
        Command::Gns(GnsCommand::Build { state, moments, degree, omega }) => gns_build(cli, *state, moments.as_deref(), *degree, omega, out),
        Command::Op(cmd) => op(cli, cmd, out),
        Command::Scenario(ScenarioCommand::Run { name }) => {
            let cfg = cli.scenario_config()?;
            let names: Vec<&str> = if name == "all" { SCENARIOS.to_vec() } else { vec![name.as_str()] };
            let mut all = true;
            for n in names {
                let report = scenario::run(n, &cfg)?;
                let path = report.write(&cfg.out_dir)?;
                writeln!(
                    out,
                    "{n}: {} passed, {} failed, {} skipped; sha256 {} -> {}",
                    report.count(Status::Pass),
                    report.count(Status::Fail),
                    report.count(Status::Skipped),
                    report.digest(),
                    path.display()
                )?;
                for item in report.failures() {
                    writeln!(out, "  FAIL {} ({}): {}", item.id, item.check, item.detail)?;
                }
                all &= report.passed();
            }
            Ok(all)
        }
    }
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct MomentFile {
    degree: usize,
    moments: Vec<MomentEntry>,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct MomentEntry {
    word: Vec<String>,
    value: [i64; 4],
}

fn load_moments(p: &Arc<Presentation>, path: &Path) -> Result<MomentFunctional, CliError> {
    let io = |e: std::io::Error| ConfigError::Io { path: path.to_path_buf(), message: e.to_string() };
    let file: MomentFile = serde_json::from_str(&std::fs::read_to_string(path).map_err(io)?)
        .map_err(|e| ConfigError::Format(e.to_string()))?;
    let mut table = BTreeMap::new();
    for m in file.moments {
        let letters = m
            .word
            .iter()
            .map(|g| p.generator_index(g).ok_or_else(|| CliError::Usage(format!("unknown generator {g}"))))
            .collect::<Result<Vec<_>, _>>()?;
        let [a, b, c, d] = m.value;
        if b == 0 || d == 0 {
            return Err(CliError::Usage("moment with a zero denominator".into()));
        }
        table.insert(Word(letters), Scalar::from_parts(a, b, c, d));
    }
    MomentFunctional::new(p, file.degree, table).map_err(|e| CliError::Usage(e.to_string()))
}

fn gns_build(
    cli: &Cli,
    state: StateKind,
    moments: Option<&Path>,
    degree: usize,
    omega: &str,
    out: &mut dyn Write,
) -> Result<bool, CliError> {
    let tol = cli.tolerance(1e-10)?;
    let f = match (moments, state) {
        (Some(path), _) => load_moments(&cli.presentation_or("cx")?, path)?,
        (None, StateKind::Gaussian) => MomentFunctional::gaussian(&cli.presentation_or("cx")?, degree),
        (None, StateKind::Dirac) => MomentFunctional::dirac(&cli.presentation_or("cx")?, degree),
        (None, StateKind::Fock) => FockAssignment::heisenberg().vector_state(&parse_scalars(omega)?, degree)?,
    };
    let report = check_state_axioms(&f).map_err(|e| CliError::Check(e.to_string()))?;
    if !report.passes() {
        writeln!(out, "not a state: {report:?}")?;
        return Ok(false);
    }
    let rep = gns(&f).map_err(|e| CliError::Check(e.to_string()))?;
    let p = rep.presentation().clone();
    writeln!(out, "degree {}  rank {}  window {}", rep.degree(), rep.rank(), rep.window())?;
    let mut ok = true;
    for g in 0..p.generator_count() as u16 {
        let m = rep.compressed(g);
        let defect = rep.adjoint_defect(g);
        ok &= defect <= tol;
        writeln!(out, "{} (adjoint defect {defect:.3e}):", p.generator_name(g))?;
        for r in 0..m.nrows() {
            let row: Vec<String> = (0..m.ncols()).map(|c| complex(m[(r, c)])).collect();
            writeln!(out, "  {}", row.join("  "))?;
        }
    }
    Ok(ok)
}

fn complex(z: Complex64) -> String {
    let clean = |x: f64| if x.abs() < 5e-13 { 0.0 } else { x };
    let (re, im) = (clean(z.re), clean(z.im));
    if im == 0.0 {
        format!("{re:>12.9}")
    } else {
        format!("{re:.9}{im:+.9}i")
    }
}

fn vector(text: &str) -> Result<Vec<Scalar>, CliError> {
    Ok(parse_scalars(text)?)
}

fn floats(v: &[Scalar]) -> Vec<Complex64> {
    v.iter().map(Scalar::to_complex).collect()
}

fn op(cli: &Cli, cmd: &OpCommand, out: &mut dyn Write) -> Result<bool, CliError> {
    let load = |path: &Path| -> Result<_, CliError> {
        let text = std::fs::read_to_string(path)
            .map_err(|e| ConfigError::Io { path: path.to_path_buf(), message: e.to_string() })?;
        Ok(OperatorSpec::from_json(&text)?.build()?)
    };
    match cmd {
        OpCommand::Apply { spec, vector: v } => {
            let a = load(spec)?;
            let xi: Vec<SurdSum> = vector(v)?.into_iter().map(SurdSum::from_scalar).collect();
            let image: Vec<[f64; 2]> = a.apply_exact(&xi).iter().map(|s| s.to_complex()).map(|z| [z.re, z.im]).collect();
            writeln!(out, "{}", json!(image))?;
            Ok(true)
        }
        OpCommand::Invert { spec, vector: v, cap } => {
            let a = load(spec)?;
            let y = floats(&vector(v)?);
            let tol = cli.tolerance(1e-10)?;
            match invert_one_plus_astar_a(&a, &y, tol, *cap) {
                Ok(r) => {
                    let x: Vec<[f64; 2]> = r.x.iter().map(|z| [z.re, z.im]).collect();
                    writeln!(out, "{}", json!({ "x": x, "residual": r.residual, "truncation_size": r.truncation_size }))?;
                    Ok(true)
                }
                Err(e @ OperatorError::TruncationLimit { .. }) => {
                    writeln!(out, "{e}")?;
                    Ok(false)
                }
                Err(e) => Err(e.into()),
            }
        }
        OpCommand::Probe { kind, fraction, vector: v } => {
            if cli.presentation.as_deref().is_some_and(|p| p != "heisenberg") {
                return Err(CliError::Usage("operator probes run on the Fock representation of the heisenberg preset".into()));
            }
            let fock = FockAssignment::heisenberg();
            let loc = cli.localization(fock.presentation())?;
            let f = Evaluator::new(&loc).parse_fraction(fraction)?;
            let tol = cli.tolerance(1e-8)?;
            let cap = ores_core::operators::DEFAULT_TRUNCATION_CAP;
            let basis = |n: usize| {
                let mut e = vec![Complex64::new(0.0, 0.0); n + 1];
                e[n] = Complex64::new(1.0, 0.0);
                e
            };
            let report = match kind {
                ProbeKind::Surjectivity => {
                    let targets: Vec<_> = match v {
                        Some(v) => vec![floats(&vector(v)?)],
                        None => (0..=5).map(basis).collect(),
                    };
                    pi_s_surjectivity_probe(&fock, f.den(), &targets, tol, cap)?
                }
                ProbeKind::Lemma => {
                    let samples: Vec<Vec<Scalar>> = match v {
                        Some(v) => vec![vector(v)?],
                        None => (0..=8)
                            .map(|n| (0..=n).map(|k| if k == n { Scalar::one() } else { Scalar::zero() }).collect())
                            .collect(),
                    };
                    lemma_pis_equals_s_check(&fock, f.den(), &samples)
                }
                ProbeKind::Core => {
                    let xi = match v {
                        Some(v) => floats(&vector(v)?),
                        None => (0..48).map(|n| Complex64::new(0.5f64.powi(n), 0.0)).collect(),
                    };
                    core_density_probe(&fock, f.num(), f.den(), &xi, tol, cap)?
                }
                ProbeKind::Extend => {
                    let xi = match v {
                        Some(v) => floats(&vector(v)?),
                        None => basis(3),
                    };
                    let w = loc.solve_left(f.num(), f.den())?.found();
                    let ext = extend_representation(&fock, &f, &xi, tol / 10.0, cap, w.as_ref())?;
                    let gap = ext.witness_route.as_ref().map(|(_, g)| *g);
                    let value: Vec<[f64; 2]> = ext.value.iter().map(|z| [z.re, z.im]).collect();
                    ProbeReport {
                        probe: "extend_representation".into(),
                        inputs: json!({ "fraction": FractionDisplay(&f).to_string(), "xi_len": xi.len(), "tol": tol, "value": value }),
                        residuals: std::iter::once(ext.residual).chain(gap).collect(),
                        truncation_size: ext.truncation_size,
                        pass: ext.residual <= tol && gap.is_none_or(|g| g <= tol),
                    }
                }
            };
            let text = serde_json::to_string_pretty(&report).expect("reports serialise");
            writeln!(out, "{text}")?;
            if let Some(dir) = &cli.out {
                std::fs::create_dir_all(dir)?;
                std::fs::write(dir.join(format!("probe-{}.json", report.probe)), format!("{text}\n"))?;
            }
            Ok(report.pass)
        }
    }
}
