//! Prime filtrations `I = I_0 ⊂ I_1 ⊂ … ⊂ I_r = J` of modules `J/I`, where
//! `I_k = I_{k-1} + (x^{a_k})` and `(I_{k-1} : x^{a_k}) = P_k`, so that
//! `I_k / I_{k-1} ≅ S/P_k(-a_k)`.

mod blocks;
mod builders;
mod search;
mod select;

use serde::{Deserialize, Serialize};

use crate::decomposition::{minimal_primes, MonomialPrime};
use crate::depth::QuotientModule;
use crate::error::{Error, Result};
use crate::monomial::{Monomial, MonomialIdeal};

pub use builders::{
    build_clean_cm2, build_clean_dim1, build_clean_primary, build_fdepth1_filtration,
    build_pretty_clean_n5, BuildOptions, Builder, FactorMode, Fallback, PrettyClean,
};
pub use search::{search_filtration, SearchGoal};
pub use select::select_cm2_prime;

#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct FiltrationStep {
    pub generator: Monomial,
    pub prime: MonomialPrime,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct PrimeFiltration {
    pub base: QuotientModule,
    pub steps: Vec<FiltrationStep>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct StepFailure {
    pub index: usize,
    pub reason: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct FiltrationVerdict {
    pub valid: bool,
    /// Distinct step primes, sorted.
    pub support: Vec<MonomialPrime>,
    /// `min dim S/P` over the support; `None` for the empty filtration.
    pub fdepth: Option<usize>,
    pub clean: bool,
    pub pretty_clean: bool,
    pub failure: Option<StepFailure>,
}

impl PrimeFiltration {
    pub fn new(base: QuotientModule, steps: Vec<FiltrationStep>) -> Self {
        PrimeFiltration { base, steps }
    }

    pub fn primes(&self) -> impl Iterator<Item = &MonomialPrime> {
        self.steps.iter().map(|s| &s.prime)
    }

    /// The chain `I_0 ⊂ … ⊂ I_r`, without checking the step conditions.
    pub fn ideals(&self) -> Vec<MonomialIdeal> {
        let mut out = vec![self.base.lower.clone()];
        for s in &self.steps {
            let next = out.last().expect("chain is nonempty").add_gen(s.generator.clone());
            out.push(next);
        }
        out
    }
}

fn invalid(index: usize, reason: String) -> FiltrationVerdict {
    FiltrationVerdict {
        valid: false,
        support: vec![],
        fdepth: None,
        clean: false,
        pretty_clean: false,
        failure: Some(StepFailure { index, reason }),
    }
}

/// Checks every step and computes support, fdepth and the clean and pretty
/// clean conditions.
pub fn verify_filtration(f: &PrimeFiltration) -> FiltrationVerdict {
    let n = f.base.nvars();
    let upper = &f.base.upper;
    let mut current = f.base.lower.clone();
    for (index, step) in f.steps.iter().enumerate() {
        let a = &step.generator;
        if a.nvars() != n || step.prime.nvars != n {
            return invalid(index, "step lives in a different ring".into());
        }
        if !upper.contains(a) {
            return invalid(index, "generator is not in J".into());
        }
        if current.contains(a) {
            return invalid(index, "generator already lies in the previous ideal".into());
        }
        let colon = current.colon(a);
        if colon != step.prime.ideal() {
            return invalid(index, format!("colon is not the prime {:?}", step.prime.vars));
        }
        current = current.add_gen(a.clone());
    }
    if current != *upper {
        return invalid(f.steps.len(), "final ideal differs from J".into());
    }
    let mut support: Vec<MonomialPrime> = f.primes().copied().collect();
    support.sort();
    support.dedup();
    let fdepth = support.iter().map(MonomialPrime::dim).min();
    let clean = if f.base.is_zero() {
        true
    } else {
        let mut min = minimal_primes(&f.base.annihilator()).unwrap_or_default();
        min.sort();
        min == support
    };
    let primes: Vec<&MonomialPrime> = f.primes().collect();
    let pretty_clean = primes.iter().enumerate().all(|(i, p)| {
        primes[i + 1..]
            .iter()
            .all(|q| !(q.contains_prime(p) && q != p))
    });
    FiltrationVerdict {
        valid: true,
        support,
        fdepth,
        clean,
        pretty_clean,
        failure: None,
    }
}

/// [`verify_filtration`], with an invalid step turned into an error.
pub fn check_filtration(f: &PrimeFiltration) -> Result<FiltrationVerdict> {
    let v = verify_filtration(f);
    match &v.failure {
        Some(StepFailure { index, reason }) => Err(Error::InvalidFiltration {
            index: *index,
            reason: reason.clone(),
        }),
        None => Ok(v),
    }
}
