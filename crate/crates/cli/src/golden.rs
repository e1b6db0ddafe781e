//! Worked examples as fixture jobs with their expected verdicts.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};
use serde_json::{json, Value};
use stanley_core::syntax::parse_ideal;
use stanley_core::{Error, MonomialIdeal, RingContext, VarSet};

use crate::commands;
use crate::job::{Command, JobOptions, JobSpec};

const FIXTURES: &str = include_str!("../golden.json");

/// An ideal is written as the intersection of the listed ideals.
#[derive(Debug, Deserialize)]
struct Fixture {
    name: String,
    command: Command,
    ring: String,
    #[serde(default, rename = "char")]
    characteristic: u64,
    ideal: Vec<String>,
    #[serde(default)]
    mod_ideal: Option<Vec<String>>,
    #[serde(default)]
    expect: BTreeMap<String, Value>,
    #[serde(default)]
    expect_ideal: BTreeMap<String, String>,
    #[serde(default)]
    expect_ideals: BTreeMap<String, Vec<String>>,
    #[serde(default)]
    expect_error: Option<String>,
}

#[derive(Debug, Serialize)]
pub struct GoldenResult {
    pub name: String,
    pub passed: bool,
    pub failures: Vec<String>,
}

fn meet(ring: &RingContext, parts: &[String]) -> stanley_core::Result<MonomialIdeal> {
    let ideals = parts.iter().map(|s| parse_ideal(ring, s)).collect::<stanley_core::Result<Vec<_>>>()?;
    Ok(MonomialIdeal::intersect_all(ring.nvars(), &ideals))
}

impl Fixture {
    fn job(&self, options: JobOptions) -> stanley_core::Result<JobSpec> {
        let ring = RingContext::parse_spec(&self.ring, self.characteristic)?;
        let ideal = meet(&ring, &self.ideal)?;
        let mod_ideal = self.mod_ideal.as_deref().map(|m| meet(&ring, m)).transpose()?;
        Ok(JobSpec {
            command: self.command.clone(),
            ring: Some(ring),
            ideal: Some(ideal),
            mod_ideal,
            options,
        })
    }
}

/// Reads an ideal out of a verdict field: an ideal, a primary component or a prime.
fn as_ideal(v: &Value) -> Option<MonomialIdeal> {
    if v.get("gens").is_some() {
        serde_json::from_value(v.clone()).ok()
    } else if let Some(i) = v.get("ideal") {
        as_ideal(i)
    } else {
        let nvars = v.get("nvars")?.as_u64()? as usize;
        let vars: VarSet = serde_json::from_value(v.get("vars")?.clone()).ok()?;
        Some(MonomialIdeal::prime(nvars, vars))
    }
}

fn check(f: &Fixture, ring: &RingContext, verdicts: &Value) -> stanley_core::Result<Vec<String>> {
    let mut failures = Vec::new();
    for (ptr, want) in &f.expect {
        let got = verdicts.pointer(ptr).unwrap_or(&Value::Null);
        if got != want {
            failures.push(format!("{ptr}: expected {want}, got {got}"));
        }
    }
    for (ptr, want) in &f.expect_ideal {
        let want = parse_ideal(ring, want)?;
        let got = verdicts.pointer(ptr).and_then(as_ideal);
        if got.as_ref() != Some(&want) {
            failures.push(format!("{ptr}: expected {want:?}, got {got:?}"));
        }
    }
    for (ptr, want) in &f.expect_ideals {
        let mut want = want.iter().map(|s| parse_ideal(ring, s)).collect::<stanley_core::Result<Vec<_>>>()?;
        let got: Option<Vec<MonomialIdeal>> =
            verdicts.pointer(ptr).and_then(Value::as_array).and_then(|a| a.iter().map(as_ideal).collect());
        let ordered = ptr.ends_with("dimension_filtration");
        let got = got.map(|mut g| {
            if !ordered {
                g.sort();
            }
            g
        });
        if !ordered {
            want.sort();
        }
        if got.as_ref() != Some(&want) {
            failures.push(format!("{ptr}: expected {want:?}, got {got:?}"));
        }
    }
    Ok(failures)
}

fn run_one(f: &Fixture, options: JobOptions) -> stanley_core::Result<GoldenResult> {
    let job = f.job(options)?;
    let ring = job.ring.clone().expect("fixtures name a ring");
    let failures = match (commands::run(&job), &f.expect_error) {
        (Ok(v), None) => check(f, &ring, &v)?,
        (Ok(_), Some(kind)) => vec![format!("expected a {kind} error, the job succeeded")],
        (Err(e), Some(kind)) if e.kind() == kind => vec![],
        (Err(e), _) => vec![format!("{}: {e}", e.kind())],
    };
    Ok(GoldenResult {
        name: f.name.clone(),
        passed: failures.is_empty(),
        failures,
    })
}

pub fn run_golden(options: JobOptions) -> stanley_core::Result<Value> {
    let fixtures: Vec<Fixture> =
        serde_json::from_str(FIXTURES).map_err(|e| Error::Malformed(format!("golden fixtures: {e}")))?;
    let results = fixtures.iter().map(|f| run_one(f, options)).collect::<stanley_core::Result<Vec<_>>>()?;
    let passed = results.iter().filter(|r| r.passed).count();
    Ok(json!({ "total": results.len(), "passed": passed, "results": results }))
}
