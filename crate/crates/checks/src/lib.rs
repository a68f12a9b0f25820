//! Runs the acceptance criteria and collects one record per criterion.

pub mod criteria;
pub mod oracles;

use std::str::FromStr;
use std::time::{Duration, Instant};

use ficat::{Error, Result};
use serde::Serialize;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Profile {
    Quick,
    Full,
}

impl FromStr for Profile {
    type Err = Error;

    fn from_str(s: &str) -> Result<Profile> {
        match s {
            "quick" => Ok(Profile::Quick),
            "full" => Ok(Profile::Full),
            _ => Err(Error::Parse(format!("unknown profile '{s}' (expected quick or full)"))),
        }
    }
}

pub const NAMES: [&str; 10] = [
    "z16 regression",
    "counting identity",
    "unique factorization",
    "order laws",
    "insertion property",
    "chain-level identities",
    "resolution exactness",
    "finite-generation criterion",
    "initial-term engine",
    "axiom suite",
];

#[derive(Clone, Debug, Serialize)]
pub struct CriterionResult {
    pub criterion: u8,
    pub name: &'static str,
    pub passed: bool,
    pub detail: String,
    #[serde(skip)]
    pub elapsed: Duration,
}

pub fn run_criterion(id: u8, profile: Profile, seed: u64) -> CriterionResult {
    let start = Instant::now();
    let outcome = match id {
        1 => criteria::z16_regression(),
        2 => criteria::counting_identity(profile),
        3 => criteria::unique_factorization(profile),
        4 => criteria::order_laws_criterion(profile),
        5 => criteria::insertion_property(profile),
        6 => criteria::chain_identities(profile),
        7 => criteria::resolution_exactness(profile),
        8 => criteria::finite_generation(profile),
        9 => criteria::initial_terms(profile, seed),
        10 => criteria::axiom_suite(profile),
        _ => criteria::unknown(id),
    };
    let (passed, detail) = match outcome {
        Ok(x) => x,
        Err(e) => (false, format!("error: {e}")),
    };
    CriterionResult {
        criterion: id,
        name: NAMES.get(id as usize - 1).copied().unwrap_or("unknown"),
        passed,
        detail,
        elapsed: start.elapsed(),
    }
}

pub fn run_all(profile: Profile, seed: u64) -> Vec<CriterionResult> {
    (1..=10).map(|id| run_criterion(id, profile, seed)).collect()
}
