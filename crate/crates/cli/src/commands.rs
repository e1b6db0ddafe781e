use serde_json::{json, Value};
use stanley_core::decomposition::{associated_primes, dimension_filtration_ideals, primary_decomposition};
use stanley_core::depth::{koszul_depth_with, module_associated_primes, DepthOptions, QuotientModule};
use stanley_core::filtration::{search_filtration, verify_filtration, BuildOptions, Builder, PrimeFiltration, SearchGoal};
use stanley_core::polarize::{full_polarization, reduce_step, tilde_step, IdealPair, TildeMode};
use stanley_core::stanley::{
    sdepth_exact_with, stanley_n5_with, two_var_ideal_decomposition, verify_decomposition, SdepthOptions,
    StanleyDecomposition,
};
use stanley_core::{Error, MonomialIdeal, RingContext};

use crate::corpus::run_corpus;
use crate::golden::run_golden;
use crate::job::{Command, DecomposeMethod, FiltrationMode, JobOptions, JobSpec};

pub type Outcome = stanley_core::Result<Value>;

fn to_value<T: serde::Serialize>(v: &T) -> Value {
    serde_json::to_value(v).expect("engine types serialize")
}

pub fn build_options(opts: &JobOptions) -> BuildOptions {
    let base = BuildOptions::default();
    BuildOptions {
        search_cap: opts.search_cap.unwrap_or(base.search_cap),
        allow_search_fallback: opts.allow_fallback,
    }
}

fn sdepth_options(opts: &JobOptions) -> SdepthOptions {
    let base = SdepthOptions::default();
    SdepthOptions {
        node_cap: opts.search_cap.unwrap_or(base.node_cap),
        ..base
    }
}

struct Inputs<'a> {
    ring: &'a RingContext,
    lower: &'a MonomialIdeal,
    upper: MonomialIdeal,
}

impl Inputs<'_> {
    fn module(&self) -> stanley_core::Result<QuotientModule> {
        QuotientModule::new(self.ring.clone(), self.upper.clone(), self.lower.clone())
    }

    fn require_cyclic(&self, what: &str) -> stanley_core::Result<()> {
        if self.upper.is_unit() {
            Ok(())
        } else {
            Err(Error::Domain(format!("{what} works on S/I; drop --mod-ideal")))
        }
    }
}

fn inputs(job: &JobSpec) -> stanley_core::Result<Inputs<'_>> {
    let ring = job
        .ring
        .as_ref()
        .ok_or_else(|| Error::Malformed("this command needs --ring or --n".into()))?;
    let lower = job
        .ideal
        .as_ref()
        .ok_or_else(|| Error::Malformed("this command needs --ideal".into()))?;
    let upper = job
        .mod_ideal
        .clone()
        .unwrap_or_else(|| MonomialIdeal::unit(ring.nvars()));
    for ideal in [lower, &upper] {
        if ideal.nvars() != ring.nvars() {
            return Err(Error::RingMismatch {
                expected: ring.nvars(),
                found: ideal.nvars(),
            });
        }
    }
    Ok(Inputs { ring, lower, upper })
}

pub fn run(job: &JobSpec) -> Outcome {
    if let Command::Corpus {
        nvars,
        count,
        max_degree,
        gens,
    } = job.command
    {
        return run_corpus(job.options.seed, count, nvars, max_degree, gens, &job.options);
    }
    if job.command == Command::Golden {
        return run_golden(job.options);
    }
    let inp = inputs(job)?;
    match &job.command {
        Command::Depth => depth(&inp, &job.options),
        Command::PrimaryDec => primary_dec(&inp),
        Command::Polarize { var, relaxed, full } => polarize(&inp, *var, *relaxed, *full, &job.options),
        Command::Filtrate { mode } => filtrate(&inp, *mode, &job.options),
        Command::Decompose { method } => decompose(&inp, *method, &job.options),
        Command::Sdepth => sdepth(&inp, &job.options),
        Command::CheckStanley { exact } => check_stanley(&inp, *exact, &job.options),
        Command::Corpus { .. } | Command::Golden => unreachable!("handled above"),
    }
}

fn depth_opts(opts: &JobOptions) -> DepthOptions {
    DepthOptions {
        margin: opts.box_margin,
        ..DepthOptions::default()
    }
}

fn depth(inp: &Inputs, opts: &JobOptions) -> Outcome {
    let rep = koszul_depth_with(&inp.module()?, depth_opts(opts))?;
    Ok(json!({ "depth_report": rep }))
}

fn primary_dec(inp: &Inputs) -> Outcome {
    let i = inp.lower;
    let dec = primary_decomposition(i)?;
    let ass = associated_primes(i)?;
    let df = dimension_filtration_ideals(i)?;
    Ok(json!({
        "components": dec.components,
        "associated_primes": ass.ass,
        "minimal_primes": ass.min,
        "dim": ass.dim,
        "dimension_filtration": df.entries,
    }))
}

fn pair_depth_or_null(ring: &RingContext, upper: &MonomialIdeal, lower: &MonomialIdeal, opts: &JobOptions) -> stanley_core::Result<Option<usize>> {
    if upper == lower {
        return Ok(None);
    }
    let m = QuotientModule::new(ring.clone(), upper.clone(), lower.clone())?;
    Ok(Some(koszul_depth_with(&m, depth_opts(opts))?.depth))
}

fn polarize(inp: &Inputs, var: Option<usize>, relaxed: bool, full: bool, opts: &JobOptions) -> Outcome {
    let before = pair_depth_or_null(inp.ring, &inp.upper, inp.lower, opts)?
        .ok_or_else(|| Error::Domain("J/I is the zero module".into()))?;
    if full {
        inp.require_cyclic("full polarization")?;
        let pol = full_polarization(inp.ring, inp.lower)?;
        let unit = MonomialIdeal::unit(pol.ring.nvars());
        let after = pair_depth_or_null(&pol.ring, &unit, &pol.ideal, opts)?.expect("proper ideal");
        return Ok(json!({
            "polarization": pol,
            "depth": before,
            "polarized_depth": after,
            "added_vars": pol.added_vars(),
            "identity_holds": after == before + pol.added_vars(),
        }));
    }
    let pair = IdealPair::new(inp.upper.clone(), inp.lower.clone())?;
    let out = match var {
        Some(i) => {
            let mode = if relaxed { TildeMode::Relaxed } else { TildeMode::Strict };
            tilde_step(&pair, i, mode)?
        }
        None => reduce_step(&pair)?,
    };
    let after = pair_depth_or_null(inp.ring, &out.upper, &out.lower, opts)?;
    Ok(json!({
        "input": pair,
        "output": out,
        "depth": before,
        "transformed_depth": after,
        "inequality_holds": after.map(|d| d >= before),
    }))
}

fn filtration_value(f: &PrimeFiltration, fallbacks: &[stanley_core::filtration::Fallback]) -> Value {
    json!({
        "filtration": f,
        "verdict": verify_filtration(f),
        "fallbacks": fallbacks,
    })
}

fn filtrate(inp: &Inputs, mode: FiltrationMode, opts: &JobOptions) -> Outcome {
    let bopts = build_options(opts);
    let mut b = Builder::new(inp.ring.clone(), bopts);
    let f = match mode {
        FiltrationMode::Clean => {
            let (construction, f) = match auto_construction(inp)? {
                Some(c) => (c, run_construction(&mut b, inp, c)?),
                None => return filtrate(inp, FiltrationMode::Search, opts),
            };
            let mut v = filtration_value(&f, b.fallbacks());
            v["construction"] = to_value(&construction);
            return Ok(v);
        }
        FiltrationMode::CleanCm2 => b.clean_cm2(&inp.upper, inp.lower)?,
        FiltrationMode::CleanDim1 => b.clean_dim1(&inp.module()?)?,
        FiltrationMode::CleanPrimary => b.clean_primary(&inp.upper, inp.lower)?,
        FiltrationMode::Fdepth1 => b.fdepth1(&inp.module()?)?,
        FiltrationMode::PrettyClean => {
            inp.require_cyclic("pretty clean mode")?;
            let pc = b.pretty_clean_n5(inp.lower)?;
            return Ok(filtration_value(&pc.filtration, &pc.fallbacks));
        }
        FiltrationMode::Search => {
            let module = inp.module()?;
            return match search_filtration(&module, SearchGoal::Clean, bopts.search_cap)? {
                Some(steps) => Ok(filtration_value(&PrimeFiltration::new(module, steps), &[])),
                None => Ok(json!({ "filtration": null, "clean_filtration_exists": false })),
            };
        }
    };
    Ok(filtration_value(&f, b.fallbacks()))
}

/// The explicit clean construction whose hypotheses `J/I` meets, if any.
fn auto_construction(inp: &Inputs) -> stanley_core::Result<Option<FiltrationMode>> {
    let module = inp.module()?;
    let dims: Vec<usize> = module_associated_primes(&module)?.iter().map(|p| p.dim()).collect();
    if dims.iter().all(|&d| d == dims[0]) && dims[0] <= 1 {
        return Ok(Some(FiltrationMode::CleanDim1));
    }
    let rep = koszul_depth_with(&module, DepthOptions::default())?;
    if rep.is_cm && rep.dim == 2 {
        return Ok(Some(FiltrationMode::CleanCm2));
    }
    if rep.is_cm && primary_decomposition(inp.lower)?.components.len() == 1 {
        return Ok(Some(FiltrationMode::CleanPrimary));
    }
    Ok(None)
}

fn run_construction(b: &mut Builder, inp: &Inputs, mode: FiltrationMode) -> stanley_core::Result<PrimeFiltration> {
    match mode {
        FiltrationMode::CleanDim1 => b.clean_dim1(&inp.module()?),
        FiltrationMode::CleanCm2 => b.clean_cm2(&inp.upper, inp.lower),
        FiltrationMode::CleanPrimary => b.clean_primary(&inp.upper, inp.lower),
        other => unreachable!("{other:?} is not an explicit clean construction"),
    }
}

fn decomposition_value(d: &StanleyDecomposition) -> Value {
    json!({ "decomposition": d, "verdict": verify_decomposition(d) })
}

fn decompose(inp: &Inputs, method: DecomposeMethod, opts: &JobOptions) -> Outcome {
    match method {
        DecomposeMethod::Pipeline => {
            inp.require_cyclic("the pipeline")?;
            let cert = stanley_n5_with(inp.ring, inp.lower, build_options(opts))?;
            let mut v = decomposition_value(&cert.decomposition);
            v["report"] = to_value(&cert.report);
            v["fallbacks"] = to_value(&cert.fallbacks);
            Ok(v)
        }
        DecomposeMethod::TwoVar => {
            if !inp.upper.is_unit() {
                return Err(Error::Domain("the two-variable formula decomposes I itself; drop --mod-ideal".into()));
            }
            Ok(decomposition_value(&two_var_ideal_decomposition(inp.ring, inp.lower)?))
        }
        DecomposeMethod::Exact => {
            let res = sdepth_exact_with(&inp.module()?, sdepth_options(opts))?;
            Ok(decomposition_value(&res.witness))
        }
    }
}

fn sdepth(inp: &Inputs, opts: &JobOptions) -> Outcome {
    let res = sdepth_exact_with(&inp.module()?, sdepth_options(opts))?;
    Ok(json!({
        "sdepth": res.value,
        "nodes": res.nodes,
        "witness": res.witness,
        "witness_verdict": verify_decomposition(&res.witness),
    }))
}

fn check_stanley(inp: &Inputs, exact: bool, opts: &JobOptions) -> Outcome {
    inp.require_cyclic("check-stanley")?;
    let cert = stanley_n5_with(inp.ring, inp.lower, build_options(opts))?;
    let verdict = verify_decomposition(&cert.decomposition);
    let mut out = json!({
        "stanley_ideal": verdict.valid && cert.report.sdepth_lb >= cert.report.depth,
        "depth": cert.report.depth,
        "report": cert.report,
        "decomposition": cert.decomposition,
        "verdict": verdict,
        "fallbacks": cert.fallbacks,
    });
    if exact {
        match sdepth_exact_with(&inp.module()?, sdepth_options(opts)) {
            Ok(res) => {
                out["sdepth"] = json!(res.value);
                out["sdepth_witness"] = to_value(&res.witness);
            }
            Err(Error::Infeasible(msg)) => {
                out["sdepth"] = Value::Null;
                out["sdepth_unresolved"] = json!(msg);
            }
            Err(e) => return Err(e),
        }
    }
    Ok(out)
}
