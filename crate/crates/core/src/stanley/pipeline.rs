//! Stanley decompositions of `S/I`, `n ≤ 5`, with `sdepth ≥ depth`: one
//! filtration per factor of the dimension filtration, each of fdepth at
//! least `depth S/I`, glued from the bottom.

use serde::{Deserialize, Serialize};

use super::{check_decomposition, decomposition_from_filtration, glue, StanleyDecomposition};
use crate::decomposition::dimension_filtration_ideals;
use crate::depth::{koszul_depth, QuotientModule};
use crate::error::{Error, Result};
use crate::filtration::{check_filtration, BuildOptions, Builder, FactorMode, Fallback, PrimeFiltration};
use crate::monomial::MonomialIdeal;
use crate::ring::RingContext;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct StanleyReport {
    /// `sdepth` of the constructed decomposition.
    pub sdepth_lb: usize,
    /// `fdepth` of the constructed filtration.
    pub fdepth_lb: usize,
    pub depth: usize,
    /// `fdepth S/I`, declared when the lower bound meets `depth`.
    pub fdepth: Option<usize>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct StanleyCertificate {
    pub decomposition: StanleyDecomposition,
    pub filtration: PrimeFiltration,
    pub report: StanleyReport,
    pub fallbacks: Vec<Fallback>,
}

pub fn stanley_n5(ring: &RingContext, ideal: &MonomialIdeal) -> Result<StanleyCertificate> {
    stanley_n5_with(ring, ideal, BuildOptions::default())
}

pub fn stanley_n5_with(ring: &RingContext, ideal: &MonomialIdeal, opts: BuildOptions) -> Result<StanleyCertificate> {
    let n = ring.nvars();
    if n > 5 {
        return Err(Error::Domain(format!("{n} variables; at most 5 are supported")));
    }
    if !ideal.is_proper_nonzero() {
        return Err(Error::Domain("I must be proper and nonzero".into()));
    }
    let cyclic = QuotientModule::cyclic(ring.clone(), ideal.clone())?;
    let depth = koszul_depth(&cyclic)?.depth;
    let df = dimension_filtration_ideals(ideal)?;
    let mut builder = Builder::new(ring.clone(), opts);
    let mut steps = Vec::new();
    let bottom = QuotientModule::new(ring.clone(), ideal.clone(), ideal.clone())?;
    let mut glued = StanleyDecomposition::new(bottom, vec![]);
    for k in 0..=df.dim() {
        let (upper, lower) = df.factor(k);
        let factor_steps = builder.factor_steps(&df, k, FactorMode::Stanley)?;
        let module = QuotientModule::new(ring.clone(), upper.clone(), lower.clone())?;
        let f = PrimeFiltration::new(module, factor_steps);
        let v = check_filtration(&f)?;
        if v.fdepth.is_some_and(|d| d < depth) {
            return Err(Error::cert(
                "stanley n5",
                format!("factor of dimension {k} has fdepth {:?} below depth {depth}", v.fdepth),
            ));
        }
        glued = glue(&decomposition_from_filtration(&f)?, &glued)?;
        steps.extend(f.steps);
    }
    let filtration = PrimeFiltration::new(cyclic, steps);
    let fv = check_filtration(&filtration)?;
    let dv = check_decomposition(&glued)?;
    let sdepth_lb = dv.sdepth.ok_or_else(|| Error::cert("stanley n5", "empty decomposition"))?;
    let fdepth_lb = fv.fdepth.unwrap_or(sdepth_lb);
    if sdepth_lb < depth {
        return Err(Error::cert(
            "stanley n5",
            format!("decomposition has sdepth {sdepth_lb} below depth {depth}"),
        ));
    }
    Ok(StanleyCertificate {
        decomposition: glued,
        filtration,
        report: StanleyReport {
            sdepth_lb,
            fdepth_lb,
            depth,
            fdepth: (fdepth_lb == depth).then_some(depth),
        },
        fallbacks: builder.take_fallbacks(),
    })
}
