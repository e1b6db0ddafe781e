//! Seeded random sweeps over `S/I` with `n ≤ 5`, checking every certificate.

use rayon::prelude::*;
use serde::Serialize;
use serde_json::{json, Value};
use stanley_core::depth::{hochster_depth_squarefree, is_sequentially_cm, koszul_depth, QuotientModule};
use stanley_core::filtration::{verify_filtration, Builder};
use stanley_core::polarize::{full_polarization, reduce_step, IdealPair};
use stanley_core::random::{instance_rng, instance_seed, random_ideal, IdealModel};
use stanley_core::stanley::{stanley_n5_with, verify_decomposition};
use stanley_core::{Error, MonomialIdeal, RingContext};

use crate::commands::build_options;
use crate::job::JobOptions;

#[derive(Debug, Default, Serialize)]
struct Summary {
    instances: u64,
    certified: u64,
    /// `gap_histogram[g]` counts instances with `sdepth(D) - depth = g`.
    gap_histogram: Vec<u64>,
    fdepth_exact: u64,
    with_fallbacks: u64,
    sequentially_cm: u64,
}

struct Record {
    gap: usize,
    fdepth_exact: bool,
    fallbacks: bool,
    seq_cm: bool,
}

fn mismatch(stage: &str, detail: String) -> Error {
    Error::Certification {
        stage: stage.into(),
        detail,
    }
}

fn check_instance(ring: &RingContext, ideal: &MonomialIdeal, opts: &JobOptions) -> stanley_core::Result<Record> {
    let module = QuotientModule::cyclic(ring.clone(), ideal.clone())?;
    let rep = koszul_depth(&module)?;
    if rep.depth > rep.dim {
        return Err(mismatch("depth", format!("depth {} exceeds dim {}", rep.depth, rep.dim)));
    }

    let cert = stanley_n5_with(ring, ideal, build_options(opts))?;
    let verdict = verify_decomposition(&cert.decomposition);
    if !verdict.valid || verdict.sdepth != Some(cert.report.sdepth_lb) || cert.report.sdepth_lb < rep.depth {
        return Err(mismatch("stanley", format!("verdict {verdict:?}, report {:?}", cert.report)));
    }

    let pol = full_polarization(ring, ideal)?;
    let hochster = hochster_depth_squarefree(&pol.ideal, ring.characteristic())?;
    if hochster != rep.depth + pol.added_vars() {
        return Err(mismatch(
            "polarization",
            format!("Hochster depth {hochster}, expected {} + {}", rep.depth, pol.added_vars()),
        ));
    }

    if ideal.max_degree() > 1 {
        let step = reduce_step(&IdealPair::quotient_of_ring(ideal.clone()))?;
        let after = koszul_depth(&QuotientModule::new(ring.clone(), step.upper, step.lower)?)?.depth;
        if after < rep.depth {
            return Err(mismatch("reduction", format!("depth dropped from {} to {after}", rep.depth)));
        }
    }

    let seq_cm = is_sequentially_cm(ring, ideal)?.verdict;
    let mut b = Builder::new(ring.clone(), build_options(opts));
    match b.pretty_clean_n5(ideal) {
        Ok(pc) if seq_cm => {
            let v = verify_filtration(&pc.filtration);
            if !(v.valid && v.pretty_clean) {
                return Err(mismatch("pretty clean", format!("{v:?}")));
            }
        }
        Ok(_) => return Err(mismatch("pretty clean", "built for a non sequentially CM ideal".into())),
        Err(Error::NotSequentiallyCm { .. }) if !seq_cm => {}
        Err(e) => return Err(e),
    }

    Ok(Record {
        gap: cert.report.sdepth_lb - rep.depth,
        fdepth_exact: cert.report.fdepth.is_some(),
        fallbacks: !cert.fallbacks.is_empty(),
        seq_cm,
    })
}

pub fn run_corpus(seed: u64, count: u64, nvars: usize, max_degree: u32, gens: usize, opts: &JobOptions) -> stanley_core::Result<Value> {
    if nvars == 0 || nvars > 5 {
        return Err(Error::Domain(format!("corpus needs 1 to 5 variables, got {nvars}")));
    }
    let ring = RingContext::indexed("x", nvars)?;
    let model = IdealModel {
        nvars,
        max_degree,
        generators: gens,
    };
    let results: Vec<(MonomialIdeal, stanley_core::Result<Record>)> = (0..count)
        .into_par_iter()
        .map(|index| -> stanley_core::Result<_> {
            let ideal = random_ideal(&mut instance_rng(seed, index), &model)?;
            let rec = check_instance(&ring, &ideal, opts);
            Ok((ideal, rec))
        })
        .collect::<stanley_core::Result<_>>()?;

    let mut summary = Summary {
        instances: count,
        ..Summary::default()
    };
    for (index, (ideal, rec)) in results.into_iter().enumerate() {
        let rec = rec.map_err(|e| {
            let replay = json!({
                "index": index,
                "instance_seed": instance_seed(seed, index as u64),
                "ring": ring,
                "ideal": ideal,
                "error": { "kind": e.kind(), "message": e.to_string() },
            });
            mismatch("corpus", replay.to_string())
        })?;
        summary.certified += 1;
        if summary.gap_histogram.len() <= rec.gap {
            summary.gap_histogram.resize(rec.gap + 1, 0);
        }
        summary.gap_histogram[rec.gap] += 1;
        summary.fdepth_exact += u64::from(rec.fdepth_exact);
        summary.with_fallbacks += u64::from(rec.fallbacks);
        summary.sequentially_cm += u64::from(rec.seq_cm);
    }
    Ok(serde_json::to_value(summary).expect("summary serializes"))
}
