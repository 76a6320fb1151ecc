//! Self-verifying reproductions of worked examples and counterexamples.

mod battery;
mod counterexample;
mod gap;

use serde::Serialize;
use serde_json::{json, Value};

use crate::error::{Error, Result};
use crate::fincat::FiniteCategory;

pub use battery::{
    battery_inputs, battery_json, scenario_fibrant_groupoid_battery, BatteryGroupoid, BatteryInput, BatteryQuotient, BATTERY_DEPTH,
};
pub use counterexample::{counterexample_input, scenario_hc_counterexample, CounterexampleInput};
pub use gap::{gap_input, scenario_standard_nerve_gap, GapInput};

/// One expected outcome next to the observed one.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Claim {
    pub name: String,
    pub expected: Value,
    pub observed: Value,
}

impl Claim {
    pub fn new(name: impl Into<String>, expected: impl Serialize, observed: impl Serialize) -> Self {
        let to = |v: serde_json::Result<Value>| v.expect("claim values serialize");
        Claim { name: name.into(), expected: to(serde_json::to_value(expected)), observed: to(serde_json::to_value(observed)) }
    }

    pub fn passed(&self) -> bool {
        self.expected == self.observed
    }
}

/// A scenario after it has run: its inputs, claims and failure data.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Scenario {
    pub name: String,
    pub inputs: Value,
    pub claims: Vec<Claim>,
    pub witnesses: Value,
}

impl Scenario {
    pub fn passed(&self) -> bool {
        self.claims.iter().all(Claim::passed)
    }

    pub fn to_json(&self) -> Value {
        json!({
            "schema": "scenario/v1",
            "name": self.name,
            "passed": self.passed(),
            "inputs": self.inputs,
            "claims": self.claims.iter().map(|c| json!({
                "name": c.name,
                "passed": c.passed(),
                "expected": c.expected,
                "observed": c.observed,
            })).collect::<Vec<_>>(),
            "witnesses": self.witnesses,
        })
    }

    /// One line per claim.
    pub fn summary(&self) -> String {
        let mut out = format!("{}: {}\n", self.name, if self.passed() { "pass" } else { "FAIL" });
        for c in &self.claims {
            out.push_str(&format!(
                "  [{}] {}: expected {}, observed {}\n",
                if c.passed() { "pass" } else { "FAIL" },
                c.name,
                c.expected,
                c.observed
            ));
        }
        out
    }
}

/// The names accepted by [`replay`].
pub const COUNTEREXAMPLES: [&str; 2] = ["hc-counterexample", "standard-nerve-gap"];

pub fn replay(name: &str) -> Result<Scenario> {
    match name {
        "hc-counterexample" => scenario_hc_counterexample(),
        "standard-nerve-gap" => scenario_standard_nerve_gap(),
        _ => Err(Error::Invalid(format!("unknown scenario {name:?}; expected one of {COUNTEREXAMPLES:?}"))),
    }
}

/// A category with named objects and arrows and the composites of
/// non-identity pairs given by name.
fn named_category(objects: &[&str], arrows: &[(&str, usize, usize)], compose: &[(&str, &str, &str)]) -> Result<FiniteCategory> {
    let n = objects.len();
    let mut all: Vec<crate::fincat::Arrow> =
        (0..n).map(|x| crate::fincat::Arrow { name: format!("id{}", objects[x]), src: x, tgt: x }).collect();
    all.extend(arrows.iter().map(|&(name, src, tgt)| crate::fincat::Arrow { name: name.into(), src, tgt }));
    let pos = |name: &str| all.iter().position(|a| a.name == name).expect("named arrow");
    let table: Vec<(usize, usize, usize)> = compose.iter().map(|&(g, f, h)| (pos(g), pos(f), pos(h))).collect();
    FiniteCategory::new(
        objects.iter().map(|s| s.to_string()).collect(),
        all.clone(),
        (0..n).collect(),
        |g, f| {
            if g < n {
                f
            } else if f < n {
                g
            } else {
                table.iter().find(|t| (t.0, t.1) == (g, f)).map(|t| t.2).unwrap_or(usize::MAX)
            }
        },
    )
}
