//! Plain text view of a certificate.

use std::fmt::Write;

use serde::de::DeserializeOwned;
use serde_json::Value;
use stanley_core::decomposition::{MonomialPrime, PrimaryComponent};
use stanley_core::filtration::PrimeFiltration;
use stanley_core::stanley::StanleyDecomposition;
use stanley_core::syntax::{format_ideal, format_monomial};
use stanley_core::{Monomial, MonomialIdeal, RingContext, VarSet};

use crate::job::{Certificate, Command};

fn get<T: DeserializeOwned>(v: &Value) -> T {
    serde_json::from_value(v.clone()).expect("verdict fields have engine types")
}

fn opt(v: &Value) -> String {
    if v.is_null() {
        "unknown".into()
    } else {
        v.to_string()
    }
}

fn vars(ring: &RingContext, z: VarSet) -> String {
    let names: Vec<&str> = z.iter().map(|i| ring.name(i)).collect();
    format!("{{{}}}", names.join(", "))
}

fn prime(ring: &RingContext, p: &MonomialPrime) -> String {
    let names: Vec<&str> = p.vars.iter().map(|i| ring.name(i)).collect();
    format!("({})", names.join(", "))
}

fn ideal(ring: &RingContext, v: &Value) -> String {
    format_ideal(ring, &get::<MonomialIdeal>(v))
}

fn filtration(out: &mut String, ring: &RingContext, v: &Value) {
    if v["filtration"].is_null() {
        writeln!(out, "no clean filtration exists").unwrap();
        return;
    }
    let f: PrimeFiltration = get(&v["filtration"]);
    for (i, s) in f.steps.iter().enumerate() {
        writeln!(out, "step {}: {}  S/P, P = {}", i + 1, format_monomial(ring, &s.generator), prime(ring, &s.prime)).unwrap();
    }
    let vd = &v["verdict"];
    writeln!(out, "valid {}", vd["valid"]).unwrap();
    writeln!(out, "fdepth {}", opt(&vd["fdepth"])).unwrap();
    writeln!(out, "clean {}", vd["clean"]).unwrap();
    writeln!(out, "pretty clean {}", vd["pretty_clean"]).unwrap();
    if let Some(c) = v.get("construction") {
        writeln!(out, "construction {}", c.as_str().unwrap_or("")).unwrap();
    }
    fallbacks(out, &v["fallbacks"]);
}

fn fallbacks(out: &mut String, v: &Value) {
    if let Some(list) = v.as_array() {
        for f in list {
            writeln!(out, "fallback {}: {}", f["stage"].as_str().unwrap_or(""), f["detail"].as_str().unwrap_or("")).unwrap();
        }
    }
}

fn decomposition(out: &mut String, ring: &RingContext, d: &Value, verdict: &Value) {
    let d: StanleyDecomposition = get(d);
    for s in &d.spaces {
        writeln!(out, "{} K{}", format_monomial(ring, &s.u), vars(ring, s.z)).unwrap();
    }
    writeln!(out, "valid {}", verdict["valid"]).unwrap();
    writeln!(out, "sdepth(D) {}", opt(&verdict["sdepth"])).unwrap();
    if !verdict["defect"].is_null() {
        let w: Monomial = get(&verdict["defect"]["witness"]);
        writeln!(out, "defect {} at {}", verdict["defect"]["kind"].as_str().unwrap_or(""), format_monomial(ring, &w)).unwrap();
    }
}

pub fn text(cert: &Certificate) -> String {
    let mut out = String::new();
    let v = &cert.verdicts;
    let o = &mut out;
    match (&cert.job.command, &cert.job.ring) {
        (Command::Corpus { nvars, .. }, _) => {
            writeln!(o, "variables {nvars}").unwrap();
            writeln!(o, "certified {}/{}", v["certified"], v["instances"]).unwrap();
            let hist: Vec<u64> = get(&v["gap_histogram"]);
            for (gap, count) in hist.iter().enumerate() {
                writeln!(o, "sdepth(D) - depth = {gap}: {count}").unwrap();
            }
            writeln!(o, "fdepth exact {}", v["fdepth_exact"]).unwrap();
            writeln!(o, "sequentially CM {}", v["sequentially_cm"]).unwrap();
            writeln!(o, "with fallbacks {}", v["with_fallbacks"]).unwrap();
        }
        (Command::Golden, _) => {
            if let Some(results) = v["results"].as_array() {
                for r in results {
                    let mark = if r["passed"] == true { "PASS" } else { "FAIL" };
                    writeln!(o, "{mark} {}", r["name"].as_str().unwrap_or("")).unwrap();
                    for f in r["failures"].as_array().into_iter().flatten() {
                        writeln!(o, "    {}", f.as_str().unwrap_or("")).unwrap();
                    }
                }
            }
            writeln!(o, "{}/{} passed", v["passed"], v["total"]).unwrap();
        }
        (_, None) => writeln!(o, "{v}").unwrap(),
        (cmd, Some(ring)) => match cmd {
            Command::Depth => {
                let r = &v["depth_report"];
                writeln!(o, "depth {}", r["depth"]).unwrap();
                writeln!(o, "dim {}", r["dim"]).unwrap();
                writeln!(o, "cohen-macaulay {}", r["is_cm"]).unwrap();
                writeln!(o, "characteristic {}", r["field_char"]).unwrap();
            }
            Command::PrimaryDec => {
                let comps: Vec<PrimaryComponent> = get(&v["components"]);
                for c in &comps {
                    writeln!(o, "{}  over {}", format_ideal(ring, &c.ideal), prime(ring, &c.prime)).unwrap();
                }
                writeln!(o, "dim {}", v["dim"]).unwrap();
                let min: Vec<MonomialPrime> = get(&v["minimal_primes"]);
                let min: Vec<String> = min.iter().map(|p| prime(ring, p)).collect();
                writeln!(o, "minimal primes {}", min.join(" ")).unwrap();
                if let Some(entries) = v["dimension_filtration"].as_array() {
                    for (k, e) in entries.iter().enumerate() {
                        writeln!(o, "D_{k} = {} / I", ideal(ring, e)).unwrap();
                    }
                }
            }
            Command::Polarize { full: true, .. } => {
                let pol = &v["polarization"];
                let pring: RingContext = get(&pol["ring"]);
                writeln!(o, "ring {}", pring.names().join(", ")).unwrap();
                writeln!(o, "ideal {}", ideal(&pring, &pol["ideal"])).unwrap();
                writeln!(o, "depth {} + added {} = {}", v["depth"], v["added_vars"], v["polarized_depth"]).unwrap();
                writeln!(o, "identity holds {}", v["identity_holds"]).unwrap();
            }
            Command::Polarize { .. } => {
                writeln!(o, "upper {}", ideal(ring, &v["output"]["upper"])).unwrap();
                writeln!(o, "lower {}", ideal(ring, &v["output"]["lower"])).unwrap();
                writeln!(o, "depth {} -> {}", v["depth"], opt(&v["transformed_depth"])).unwrap();
                writeln!(o, "inequality holds {}", opt(&v["inequality_holds"])).unwrap();
            }
            Command::Filtrate { .. } => filtration(o, ring, v),
            Command::Decompose { .. } => {
                decomposition(o, ring, &v["decomposition"], &v["verdict"]);
                if !v["report"].is_null() {
                    writeln!(o, "depth {}", v["report"]["depth"]).unwrap();
                    writeln!(o, "fdepth {}", opt(&v["report"]["fdepth"])).unwrap();
                }
                fallbacks(o, &v["fallbacks"]);
            }
            Command::Sdepth => {
                decomposition(o, ring, &v["witness"], &v["witness_verdict"]);
                writeln!(o, "sdepth {}", v["sdepth"]).unwrap();
            }
            Command::CheckStanley { .. } => {
                decomposition(o, ring, &v["decomposition"], &v["verdict"]);
                writeln!(o, "depth {}", v["depth"]).unwrap();
                writeln!(o, "fdepth {}", opt(&v["report"]["fdepth"])).unwrap();
                if let Some(s) = v.get("sdepth") {
                    writeln!(o, "sdepth {}", opt(s)).unwrap();
                }
                if let Some(reason) = v.get("sdepth_unresolved") {
                    writeln!(o, "exact search stopped: {}", reason.as_str().unwrap_or("")).unwrap();
                }
                writeln!(o, "stanley {}", v["stanley_ideal"]).unwrap();
                fallbacks(o, &v["fallbacks"]);
            }
            Command::Corpus { .. } | Command::Golden => unreachable!("matched above"),
        },
    }
    if let Some(ms) = cert.timing_ms {
        writeln!(o, "time {ms:.1} ms").unwrap();
    }
    out
}
