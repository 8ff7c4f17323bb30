//! The shipped scenarios. Each samples its inputs sequentially from one
//! seeded generator, evaluates items in parallel, and returns a report
//! whose body depends only on the configuration.

mod cofinality;
mod extend;
mod fock;
mod gaussian_gns;
mod involution;
mod ore_axioms;

use std::sync::Arc;

use ores_core::algebra::{presets, AlgebraError, Presentation};
use ores_core::operators::OperatorError;
use ores_core::ore::{verify_equality, Fraction, FractionEquality, Localization, OreError, SProduct};
use ores_core::positivity::StateError;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde_json::{json, Value};
use thiserror::Error;

use crate::config::{resolve_presentation, ConfigError, ScenarioConfig};
use crate::eval::{factor_string, FractionDisplay};
use crate::report::{Item, Report, Status};

pub const SCENARIOS: [&str; 6] = [
    "ore-axioms",
    "involution-proposition",
    "cofinality",
    "gaussian-gns",
    "fock-integrability",
    "extend-representation",
];

#[derive(Debug, Error)]
pub enum ScenarioError {
    #[error("unknown scenario {0}; expected one of {list}", list = SCENARIOS.join(", "))]
    Unknown(String),
    #[error(transparent)]
    Config(#[from] ConfigError),
    #[error(transparent)]
    Algebra(#[from] AlgebraError),
    #[error(transparent)]
    Ore(#[from] OreError),
    #[error(transparent)]
    State(#[from] StateError),
    #[error(transparent)]
    Operator(#[from] OperatorError),
}

pub fn run(name: &str, cfg: &ScenarioConfig) -> Result<Report, ScenarioError> {
    cfg.validate()?;
    match name {
        "ore-axioms" => ore_axioms::run(cfg),
        "involution-proposition" => involution::run(cfg),
        "cofinality" => cofinality::run(cfg),
        "gaussian-gns" => gaussian_gns::run(cfg),
        "fock-integrability" => fock::run(cfg),
        "extend-representation" => extend::run(cfg),
        _ => Err(ScenarioError::Unknown(name.into())),
    }
}

fn rng(cfg: &ScenarioConfig) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(cfg.seed)
}

/// The configured presentation, or the scenario's defaults.
fn presentations(cfg: &ScenarioConfig, defaults: &[&str]) -> Result<Vec<(String, Arc<Presentation>)>, ConfigError> {
    match &cfg.presentation {
        Some(name) => Ok(vec![(label(name), resolve_presentation(name)?)]),
        None => Ok(defaults.iter().map(|n| (n.to_string(), presets::by_name(n).expect("known preset"))).collect()),
    }
}

fn label(name: &str) -> String {
    std::path::Path::new(name)
        .file_stem()
        .map(|s| s.to_string_lossy().into_owned())
        .unwrap_or_else(|| name.to_string())
}

fn factors(s: &SProduct) -> Vec<String> {
    s.factors().iter().map(|f| factor_string(f.p())).collect()
}

fn frac(f: &Fraction) -> String {
    FractionDisplay(f).to_string()
}

/// Compares two fractions. A missing witness on either side, or an
/// equality the budget cannot settle, is `skipped`; an equality
/// certificate is re-checked before it counts.
fn eq_item(
    id: String,
    check: &str,
    loc: &Localization,
    f: Result<Fraction, OreError>,
    g: Result<Fraction, OreError>,
    mut detail: Value,
) -> Item {
    let (f, g) = match (f, g) {
        (Ok(f), Ok(g)) => (f, g),
        (Err(OreError::OreWitnessNotFound), _) | (_, Err(OreError::OreWitnessNotFound)) => {
            detail["reason"] = json!("witness not found");
            return Item::new(id, check, Status::Skipped, detail);
        }
        (Err(e), _) | (_, Err(e)) => {
            detail["error"] = json!(e.to_string());
            return Item::new(id, check, Status::Fail, detail);
        }
    };
    detail["lhs"] = json!(frac(&f));
    detail["rhs"] = json!(frac(&g));
    match loc.eq(&f, &g) {
        Ok(FractionEquality::Equal(c)) => {
            let ok = verify_equality(&f, &g, &c).unwrap_or(false);
            if !ok {
                detail["error"] = json!("equality certificate does not verify");
            }
            Item::check(id, check, ok, detail)
        }
        Ok(FractionEquality::Distinct) => Item::new(id, check, Status::Fail, detail),
        Ok(FractionEquality::NotEqualUpToBudget) | Err(OreError::OreWitnessNotFound) => {
            detail["reason"] = json!("not decided within budget");
            Item::new(id, check, Status::Skipped, detail)
        }
        Err(e) => {
            detail["error"] = json!(e.to_string());
            Item::new(id, check, Status::Fail, detail)
        }
    }
}

fn rate(found: usize, total: usize) -> Value {
    json!(if total == 0 { 0.0 } else { found as f64 / total as f64 })
}
