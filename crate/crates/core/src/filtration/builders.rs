//! Constructive clean, fdepth-1 and pretty clean filtrations.
//!
//! Every builder works on a pair `I ⊆ U` and may replace it by an isomorphic
//! pair: `U/(U ∩ A) ≅ (U + A)/A` for monomial ideals has the same monomials
//! `U \ A` and the same colons, so step lists carry over unchanged.

use serde::{Deserialize, Serialize};

use super::blocks::{primary_block, principal_steps, shift_steps};
use super::search::{search_filtration, SearchGoal};
use super::select::select;
use super::{verify_filtration, FiltrationStep, FiltrationVerdict, PrimeFiltration};
use crate::decomposition::{
    dimension_filtration_ideals, primary_decomposition, DimensionFiltration, MonomialPrime, PrimaryComponent,
};
use crate::depth::{is_sequentially_cm, koszul_depth, module_associated_primes, pair_depth, QuotientModule};
use crate::error::{Error, Result};
use crate::monomial::{Monomial, MonomialIdeal};
use crate::polarize::reduce_ideal;
use crate::ring::{RingContext, VarSet};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct BuildOptions {
    /// Node budget of the certified search.
    pub search_cap: usize,
    /// When an explicit construction fails to certify, search for a
    /// filtration with the required property instead of aborting.
    pub allow_search_fallback: bool,
}

impl Default for BuildOptions {
    fn default() -> Self {
        BuildOptions {
            search_cap: 20_000,
            allow_search_fallback: true,
        }
    }
}

/// A construction that did not certify and was replaced.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Fallback {
    pub stage: String,
    pub detail: String,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum FactorMode {
    /// Clean filtrations of every factor.
    PrettyClean,
    /// Filtrations with fdepth at least the depth of `S/I`.
    Stanley,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct PrettyClean {
    pub filtration: PrimeFiltration,
    pub verdict: FiltrationVerdict,
    pub fallbacks: Vec<Fallback>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum Split {
    Component(usize),
    Prime(MonomialPrime),
}

#[derive(Debug, Clone, Copy)]
enum Requirement {
    Clean,
    MinDim(usize),
}

impl Requirement {
    fn met(self, v: &FiltrationVerdict) -> bool {
        v.valid
            && match self {
                Requirement::Clean => v.clean,
                Requirement::MinDim(t) => v.fdepth.is_none_or(|d| d >= t),
            }
    }

    fn goal(self) -> SearchGoal {
        match self {
            Requirement::Clean => SearchGoal::Clean,
            Requirement::MinDim(t) => SearchGoal::MinDim(t),
        }
    }
}

pub struct Builder {
    ring: RingContext,
    opts: BuildOptions,
    fallbacks: Vec<Fallback>,
}

/// Components of `I` that matter for `U/I`: `U/I = U/(U ∩ I*)` with `I*`
/// the intersection of the kept components. The zero ideal counts as one
/// component over `(0)`.
fn reduce_pair(upper: &MonomialIdeal, lower: &MonomialIdeal) -> Result<(MonomialIdeal, MonomialIdeal, Vec<PrimaryComponent>)> {
    let n = lower.nvars();
    let mut comps: Vec<PrimaryComponent> = if lower.is_zero() {
        vec![PrimaryComponent {
            ideal: lower.clone(),
            prime: MonomialPrime::new(n, VarSet::EMPTY),
        }]
    } else {
        primary_decomposition(lower)?
            .components
            .into_iter()
            .filter(|c| !upper.is_subset(&c.ideal))
            .collect()
    };
    let mut i = 0;
    while i < comps.len() && comps.len() > 1 {
        let others = MonomialIdeal::intersect_all(
            n,
            comps.iter().enumerate().filter(|(j, _)| *j != i).map(|(_, c)| &c.ideal),
        );
        if upper.intersect(&others) == *lower {
            comps.remove(i);
        } else {
            i += 1;
        }
    }
    let star = MonomialIdeal::intersect_all(n, comps.iter().map(|c| &c.ideal));
    Ok((upper.sum(&star), star, comps))
}

fn intersect_except(comps: &[PrimaryComponent], skip: usize, n: usize) -> MonomialIdeal {
    MonomialIdeal::intersect_all(
        n,
        comps.iter().enumerate().filter(|(j, _)| *j != skip).map(|(_, c)| &c.ideal),
    )
}

fn describe(v: &FiltrationVerdict) -> String {
    match &v.failure {
        Some(f) => format!("step {} invalid: {}", f.index, f.reason),
        None => format!("clean = {}, fdepth = {:?}", v.clean, v.fdepth),
    }
}

impl Builder {
    pub fn new(ring: RingContext, opts: BuildOptions) -> Self {
        Builder {
            ring,
            opts,
            fallbacks: Vec::new(),
        }
    }

    pub fn ring(&self) -> &RingContext {
        &self.ring
    }

    pub fn fallbacks(&self) -> &[Fallback] {
        &self.fallbacks
    }

    pub fn take_fallbacks(&mut self) -> Vec<Fallback> {
        std::mem::take(&mut self.fallbacks)
    }

    fn module(&self, upper: &MonomialIdeal, lower: &MonomialIdeal) -> Result<QuotientModule> {
        QuotientModule::new(self.ring.clone(), upper.clone(), lower.clone())
    }

    fn is_cm_of_dim(&self, upper: &MonomialIdeal, lower: &MonomialIdeal, dim: usize) -> Result<bool> {
        if upper == lower {
            return Ok(false);
        }
        let rep = pair_depth(&self.ring, upper, lower)?;
        Ok(rep.is_cm && rep.dim == dim)
    }

    fn require_cm(&self, stage: &str, upper: &MonomialIdeal, lower: &MonomialIdeal, dim: usize) -> Result<()> {
        if upper == lower || self.is_cm_of_dim(upper, lower, dim)? {
            Ok(())
        } else {
            Err(Error::cert(
                stage,
                format!(
                    "pair U = {:?}, I = {:?} is not Cohen-Macaulay of dimension {dim}",
                    upper.gens(),
                    lower.gens()
                ),
            ))
        }
    }

    /// Verifies the construction; on a certification failure searches for a
    /// filtration meeting the requirement when allowed.
    fn finish(
        &mut self,
        stage: &str,
        module: &QuotientModule,
        built: Result<Vec<FiltrationStep>>,
        req: Requirement,
    ) -> Result<PrimeFiltration> {
        let attempt = built.and_then(|steps| {
            let f = PrimeFiltration::new(module.clone(), steps);
            let v = verify_filtration(&f);
            if req.met(&v) {
                Ok(f)
            } else {
                Err(Error::cert(stage, describe(&v)))
            }
        });
        match attempt {
            Err(Error::Certification { stage: s, detail }) if self.opts.allow_search_fallback => {
                let steps = search_filtration(module, req.goal(), self.opts.search_cap)?.ok_or_else(|| {
                    Error::cert(stage, format!("{detail}; no filtration with the required primes exists"))
                })?;
                self.fallbacks.push(Fallback { stage: s, detail });
                let f = PrimeFiltration::new(module.clone(), steps);
                debug_assert!(req.met(&verify_filtration(&f)));
                Ok(f)
            }
            other => other,
        }
    }

    /// Clean filtration of a module whose associated primes all have the same
    /// dimension `≤ 1`.
    pub fn clean_dim1(&mut self, module: &QuotientModule) -> Result<PrimeFiltration> {
        if module.is_zero() {
            return Ok(PrimeFiltration::new(module.clone(), vec![]));
        }
        let ass = module_associated_primes(module)?;
        if ass.iter().any(|p| p.dim() > 1) {
            return Err(Error::Domain("an associated prime has dimension above 1".into()));
        }
        if ass.iter().any(|p| p.dim() != ass[0].dim()) {
            return Err(Error::Domain(
                "associated primes of dimensions 0 and 1 together admit no clean filtration".into(),
            ));
        }
        let built = self.split_steps(&module.upper, &module.lower);
        self.finish("clean dim <= 1", module, built, Requirement::Clean)
    }

    /// Filtration with fdepth 1 of a depth-1 module whose associated primes
    /// all have dimension 2.
    pub fn fdepth1(&mut self, module: &QuotientModule) -> Result<PrimeFiltration> {
        if module.is_zero() {
            return Err(Error::Domain("fdepth of the zero module".into()));
        }
        let ass = module_associated_primes(module)?;
        if ass.iter().any(|p| p.dim() != 2) {
            return Err(Error::Domain("associated primes must all have dimension 2".into()));
        }
        let depth = koszul_depth(module)?.depth;
        if depth != 1 {
            return Err(Error::Domain(format!("module has depth {depth}, not 1")));
        }
        let built = self.split_steps(&module.upper, &module.lower);
        self.finish("fdepth 1", module, built, Requirement::MinDim(1))
    }

    /// One primary block per component: `(U ∩ Q_r)/I` recursively, then
    /// `U/(U ∩ Q_r) ≅ (U + Q_r)/Q_r`.
    fn split_steps(&mut self, upper: &MonomialIdeal, lower: &MonomialIdeal) -> Result<Vec<FiltrationStep>> {
        if upper == lower {
            return Ok(vec![]);
        }
        let n = lower.nvars();
        let (up, low, comps) = reduce_pair(upper, lower)?;
        if comps.len() == 1 {
            return primary_block(&up, &low, &comps[0].prime);
        }
        let r = comps.len() - 1;
        let rest = intersect_except(&comps, r, n);
        let q = &comps[r].ideal;
        let mut steps = self.split_steps(&up.intersect(q).sum(&rest), &rest)?;
        steps.extend(primary_block(&up.sum(q), q, &comps[r].prime)?);
        Ok(steps)
    }

    /// Clean filtration of a Cohen-Macaulay `U/I` with `I` primary.
    pub fn clean_primary(&mut self, upper: &MonomialIdeal, lower: &MonomialIdeal) -> Result<PrimeFiltration> {
        let module = self.module(upper, lower)?;
        if module.is_zero() {
            return Ok(PrimeFiltration::new(module, vec![]));
        }
        let prime = if lower.is_zero() {
            MonomialPrime::new(lower.nvars(), VarSet::EMPTY)
        } else {
            let comps = primary_decomposition(lower)?.components;
            if comps.len() != 1 {
                return Err(Error::Domain("I is not primary".into()));
            }
            comps[0].prime
        };
        let rep = koszul_depth(&module)?;
        if !rep.is_cm {
            return Err(Error::Domain(format!(
                "U/I has depth {} below its dimension {}",
                rep.depth, rep.dim
            )));
        }
        let built = self.primary_steps(upper, lower, &prime, rep.dim);
        self.finish("clean primary", &module, built, Requirement::Clean)
    }

    /// Induction on `d(I)` through `I_1`: first `(U ∩ I_1)/I`, killed by a
    /// power of `p`, then `U/(U ∩ I_1) ≅ (U + I_1)/I_1`.
    fn primary_steps(
        &mut self,
        upper: &MonomialIdeal,
        lower: &MonomialIdeal,
        prime: &MonomialPrime,
        dim: usize,
    ) -> Result<Vec<FiltrationStep>> {
        if upper == lower {
            return Ok(vec![]);
        }
        if lower.max_degree() <= 1 {
            return primary_block(upper, lower, prime);
        }
        let reduced = reduce_ideal(lower);
        if upper.is_subset(&reduced) {
            return primary_block(upper, lower, prime);
        }
        let ass = primary_decomposition(&reduced)?.primes();
        if ass != [*prime] {
            return Err(Error::cert("clean primary", "I_1 is not primary to the radical of I"));
        }
        let mut steps = primary_block(&upper.intersect(&reduced), lower, prime)?;
        let next = upper.sum(&reduced);
        self.require_cm("clean primary", &next, &reduced, dim)?;
        steps.extend(self.primary_steps(&next, &reduced, prime, dim)?);
        Ok(steps)
    }

    /// Clean filtration of a Cohen-Macaulay `U/I` of dimension 2.
    pub fn clean_cm2(&mut self, upper: &MonomialIdeal, lower: &MonomialIdeal) -> Result<PrimeFiltration> {
        let module = self.module(upper, lower)?;
        if module.is_zero() {
            return Err(Error::Domain("the zero module has no dimension".into()));
        }
        let rep = koszul_depth(&module)?;
        if !(rep.is_cm && rep.dim == 2) {
            return Err(Error::Domain(format!(
                "U/I must be Cohen-Macaulay of dimension 2 (depth {}, dim {})",
                rep.depth, rep.dim
            )));
        }
        let built = self.cm2_steps(upper, lower, None);
        self.finish("clean cm2", &module, built, Requirement::Clean)
    }

    /// Induction on the number `e` of components of `I` after reduction.
    ///
    /// A split along component `j` (`I'` the intersection of the others) is
    /// `(U ∩ I')/I ≅ ((U ∩ I') + q_j)/q_j`, then `(U + I')/I'`; a split along a
    /// prime `p` of `I` is `(U ∩ p)/I`, then `(U + p)/p`. The first attempt is
    /// the choice of the proof: a dimension-2 prime of `U` (preferring one
    /// not embedded), else a selected prime. Splits whose pieces do not
    /// certify fall through to the remaining ones in canonical order.
    fn cm2_steps(&mut self, upper: &MonomialIdeal, lower: &MonomialIdeal, guard: Option<usize>) -> Result<Vec<FiltrationStep>> {
        if upper == lower {
            return Ok(vec![]);
        }
        let (up, low, comps) = reduce_pair(upper, lower)?;
        let e = comps.len();
        if e == 1 {
            return self.primary_steps(&up, &low, &comps[0].prime, 2);
        }
        if comps.iter().any(|c| c.dim() != 2) {
            return Err(Error::cert("clean cm2", "a component of I has dimension other than 2"));
        }
        // a prime split right after another one must lower e next
        let primes_allowed = guard != Some(e);
        let ass_u: Vec<MonomialPrime> = if up.is_unit() {
            vec![]
        } else {
            primary_decomposition(&up)?.primes()
        };
        let dim2: Vec<MonomialPrime> = ass_u.iter().copied().filter(|p| p.dim() == 2).collect();
        let isolated = dim2
            .iter()
            .find(|p| !ass_u.iter().any(|q| q != *p && q.contains_prime(p)))
            .or(dim2.first())
            .copied();
        let mut attempts = Vec::new();
        match isolated {
            Some(p) => match comps.iter().position(|c| c.prime == p) {
                Some(j) => attempts.push(Split::Component(j)),
                None => return Err(Error::cert("clean cm2", format!("prime {:?} of U is not a prime of I", p.vars))),
            },
            None if primes_allowed => {
                let chosen = if up.is_unit() {
                    Some(comps[0].prime)
                } else {
                    match select(&self.ring, &up, &low) {
                        Ok(sel) => {
                            if let Some(detail) = sel.scanned {
                                self.fallbacks.push(Fallback {
                                    stage: "prime selection".into(),
                                    detail,
                                });
                            }
                            Some(sel.prime)
                        }
                        Err(Error::Domain(_)) | Err(Error::Certification { .. }) => None,
                        Err(other) => return Err(other),
                    }
                };
                attempts.extend(chosen.map(Split::Prime));
            }
            None => {}
        }
        let first = attempts.first().copied();
        for j in 0..e {
            if !attempts.contains(&Split::Component(j)) {
                attempts.push(Split::Component(j));
            }
        }
        if primes_allowed {
            for c in &comps {
                if !attempts.contains(&Split::Prime(c.prime)) {
                    attempts.push(Split::Prime(c.prime));
                }
            }
        }
        let mut rejected = Vec::new();
        for attempt in attempts {
            let mark = self.fallbacks.len();
            match self.cm2_split(&up, &low, &comps, attempt) {
                Ok(Some(steps)) => {
                    if Some(attempt) != first {
                        self.fallbacks.push(Fallback {
                            stage: "clean cm2 split".into(),
                            detail: format!(
                                "U = {:?}, I = {:?}: {} failed, used {attempt:?}",
                                up.gens(),
                                low.gens(),
                                rejected.join("; ")
                            ),
                        });
                    }
                    return Ok(steps);
                }
                Ok(None) => rejected.push(format!("{attempt:?} (pieces not Cohen-Macaulay)")),
                Err(Error::Certification { detail, .. }) => rejected.push(format!("{attempt:?} ({detail})")),
                Err(other) => return Err(other),
            }
            self.fallbacks.truncate(mark);
        }
        Err(Error::cert(
            "clean cm2",
            format!("U = {:?}, I = {:?}: no split certified: {}", up.gens(), low.gens(), rejected.join("; ")),
        ))
    }

    /// Certifies both pieces of a split and recurses; `None` when a piece is
    /// not Cohen-Macaulay of dimension 2.
    fn cm2_split(
        &mut self,
        up: &MonomialIdeal,
        low: &MonomialIdeal,
        comps: &[PrimaryComponent],
        split: Split,
    ) -> Result<Option<Vec<FiltrationStep>>> {
        let n = low.nvars();
        match split {
            Split::Component(j) => {
                let q = &comps[j].ideal;
                let rest = intersect_except(comps, j, n);
                let left_upper = up.intersect(&rest).sum(q);
                let right_upper = up.sum(&rest);
                if !self.cm2_or_zero(&left_upper, q)? || !self.cm2_or_zero(&right_upper, &rest)? {
                    return Ok(None);
                }
                let mut steps = self.primary_steps(&left_upper, q, &comps[j].prime, 2)?;
                steps.extend(self.cm2_steps(&right_upper, &rest, None)?);
                Ok(Some(steps))
            }
            Split::Prime(p) => {
                let pi = p.ideal();
                let left_upper = up.intersect(&pi);
                let right_upper = up.sum(&pi);
                if right_upper == pi
                    || !self.cm2_or_zero(&right_upper, &pi)?
                    || !self.cm2_or_zero(&left_upper, low)?
                {
                    return Ok(None);
                }
                let mut steps = self.cm2_steps(&left_upper, low, Some(comps.len()))?;
                steps.extend(primary_block(&right_upper, &pi, &p)?);
                Ok(Some(steps))
            }
        }
    }

    fn cm2_or_zero(&self, upper: &MonomialIdeal, lower: &MonomialIdeal) -> Result<bool> {
        Ok(upper == lower || self.is_cm_of_dim(upper, lower, 2)?)
    }

    pub fn select_cm2_prime(&mut self, upper: &MonomialIdeal, lower: &MonomialIdeal) -> Result<MonomialPrime> {
        let sel = select(&self.ring, upper, lower)?;
        if let Some(detail) = sel.scanned {
            self.fallbacks.push(Fallback {
                stage: "prime selection".into(),
                detail,
            });
        }
        Ok(sel.prime)
    }

    /// Steps for the factor `D_k/D_{k-1}` of the dimension filtration, as a
    /// segment of the chain from `I` to `S`.
    pub fn factor_steps(&mut self, df: &DimensionFiltration, k: usize, mode: FactorMode) -> Result<Vec<FiltrationStep>> {
        let n = self.ring.nvars();
        let (upper, lower) = df.factor(k);
        if upper == lower {
            return Ok(vec![]);
        }
        let (upper, lower) = (upper.clone(), lower.clone());
        if k + 1 == n {
            if !upper.is_unit() || lower.gens().len() != 1 {
                return Err(Error::cert("dimension filtration", "top factor is not S/(u)"));
            }
            return Ok(principal_steps(&lower.gens()[0]));
        }
        let module = self.module(&upper, &lower)?;
        match k {
            0 | 1 => Ok(self.clean_dim1(&module)?.steps),
            2 => {
                let rep = koszul_depth(&module)?;
                if rep.is_cm {
                    Ok(self.clean_cm2(&upper, &lower)?.steps)
                } else if mode == FactorMode::PrettyClean {
                    Err(Error::NotSequentiallyCm { k, depth: rep.depth })
                } else {
                    Ok(self.fdepth1(&module)?.steps)
                }
            }
            3 if n == 5 => {
                let u = if upper.is_unit() {
                    Monomial::one(n)
                } else if upper.gens().len() == 1 {
                    upper.gens()[0].clone()
                } else {
                    return Err(Error::cert("dimension filtration", "D_3 is not generated by one monomial"));
                };
                let colon = df.component_of_dim(3).colon(&u);
                let cyclic = QuotientModule::cyclic(self.ring.clone(), colon)?;
                let rep = koszul_depth(&cyclic)?;
                let goal = match mode {
                    FactorMode::PrettyClean if !rep.is_cm => {
                        return Err(Error::NotSequentiallyCm { k, depth: rep.depth })
                    }
                    FactorMode::PrettyClean => SearchGoal::Clean,
                    FactorMode::Stanley => SearchGoal::MinDim(rep.depth),
                };
                let steps = search_filtration(&cyclic, goal, self.opts.search_cap)?.ok_or_else(|| {
                    Error::cert("codimension-2 factor", format!("no filtration of S/{:?} meets {goal:?}", cyclic.lower.gens()))
                })?;
                shift_steps(steps, &u)
            }
            _ => Err(Error::Domain(format!("factor of dimension {k} with {n} variables is out of range"))),
        }
    }

    /// Concatenated clean filtrations of all dimension-filtration factors, in
    /// increasing dimension.
    pub fn pretty_clean_n5(&mut self, ideal: &MonomialIdeal) -> Result<PrettyClean> {
        let n = self.ring.nvars();
        if n > 5 {
            return Err(Error::Domain(format!("{n} variables; at most 5 are supported")));
        }
        if !ideal.is_proper_nonzero() {
            return Err(Error::Domain("I must be proper and nonzero".into()));
        }
        let seq = is_sequentially_cm(&self.ring, ideal)?;
        if let Some(f) = seq.factors.iter().find(|f| !f.report.is_cm) {
            return Err(Error::NotSequentiallyCm {
                k: f.k,
                depth: f.report.depth,
            });
        }
        let df = dimension_filtration_ideals(ideal)?;
        let mut steps = Vec::new();
        for k in 0..=df.dim() {
            steps.extend(self.factor_steps(&df, k, FactorMode::PrettyClean)?);
        }
        let filtration = PrimeFiltration::new(QuotientModule::cyclic(self.ring.clone(), ideal.clone())?, steps);
        let verdict = verify_filtration(&filtration);
        if !(verdict.valid && verdict.pretty_clean) {
            return Err(Error::cert("pretty clean", describe(&verdict)));
        }
        Ok(PrettyClean {
            filtration,
            verdict,
            fallbacks: self.take_fallbacks(),
        })
    }
}

fn builder(ring: &RingContext) -> Builder {
    Builder::new(ring.clone(), BuildOptions::default())
}

pub fn build_clean_dim1(module: &QuotientModule) -> Result<PrimeFiltration> {
    builder(&module.ring).clean_dim1(module)
}

pub fn build_fdepth1_filtration(module: &QuotientModule) -> Result<PrimeFiltration> {
    builder(&module.ring).fdepth1(module)
}

pub fn build_clean_primary(ring: &RingContext, upper: &MonomialIdeal, lower: &MonomialIdeal) -> Result<PrimeFiltration> {
    builder(ring).clean_primary(upper, lower)
}

pub fn build_clean_cm2(ring: &RingContext, upper: &MonomialIdeal, lower: &MonomialIdeal) -> Result<PrimeFiltration> {
    builder(ring).clean_cm2(upper, lower)
}

pub fn build_pretty_clean_n5(ring: &RingContext, ideal: &MonomialIdeal) -> Result<PrettyClean> {
    builder(ring).pretty_clean_n5(ideal)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::syntax::parse_ideal;

    fn ideal(r: &RingContext, s: &str) -> MonomialIdeal {
        parse_ideal(r, s).unwrap()
    }

    fn strict(r: &RingContext) -> Builder {
        Builder::new(
            r.clone(),
            BuildOptions {
                allow_search_fallback: false,
                ..BuildOptions::default()
            },
        )
    }

    #[test]
    fn cm2_golden_pairs_without_fallback() {
        let r = RingContext::indexed("x", 3).unwrap();
        let pairs = [
            (
                ideal(&r, "[x1, x3^2]").intersect(&ideal(&r, "[x2, x3]")),
                ideal(&r, "[x1*x2]"),
            ),
            (
                ideal(&r, "[x1, x3^2]").intersect(&ideal(&r, "[x2^2, x3]")),
                ideal(&r, "[x1^2*x2^2]"),
            ),
            (MonomialIdeal::unit(3), ideal(&r, "[x1*x2]")),
        ];
        for (u, i) in pairs {
            let mut b = strict(&r);
            let f = b.clean_cm2(&u, &i).unwrap();
            let v = verify_filtration(&f);
            assert!(v.valid && v.clean, "{:?}", v);
            assert_eq!(v.fdepth, Some(2));
        }
    }

    #[test]
    fn cm2_rejects_non_cm() {
        let r = RingContext::indexed("x", 4).unwrap();
        let i = ideal(&r, "[x1, x2]").intersect(&ideal(&r, "[x3, x4]"));
        let err = build_clean_cm2(&r, &MonomialIdeal::unit(4), &i).unwrap_err();
        assert_eq!(err.kind(), "domain");
    }

    #[test]
    fn primary_cases() {
        let r = RingContext::from_letters("xyz").unwrap();
        let q = ideal(&r, "[x^2, z^2]");
        let unit = MonomialIdeal::unit(3);
        let f = strict(&r).clean_primary(&unit, &q).unwrap();
        let v = verify_filtration(&f);
        assert!(v.valid && v.clean);
        assert_eq!(v.fdepth, Some(1));

        let q = ideal(&r, "[x]");
        let f = strict(&r).clean_primary(&ideal(&r, "[x, y]"), &q).unwrap();
        assert!(verify_filtration(&f).clean);

        let err = build_clean_primary(&r, &unit, &ideal(&r, "[x*y]")).unwrap_err();
        assert_eq!(err.kind(), "domain");
    }

    #[test]
    fn dim1_cases() {
        let r = RingContext::indexed("x", 3).unwrap();
        let i = ideal(&r, "[x1, x2^2]").intersect(&ideal(&r, "[x1^3, x3]"));
        let m = QuotientModule::cyclic(r.clone(), i).unwrap();
        let f = strict(&r).clean_dim1(&m).unwrap();
        let v = verify_filtration(&f);
        assert!(v.valid && v.clean);
        assert_eq!(v.support.len(), 2);

        let fin = QuotientModule::cyclic(r.clone(), ideal(&r, "[x1^2, x2, x3^2]")).unwrap();
        let v = verify_filtration(&build_clean_dim1(&fin).unwrap());
        assert!(v.valid && v.clean);
        assert_eq!(v.fdepth, Some(0));

        let mixed = ideal(&r, "[x1, x2]").intersect(&ideal(&r, "[x1^2, x2^2, x3]"));
        let mixed = QuotientModule::cyclic(r.clone(), mixed).unwrap();
        assert_eq!(build_clean_dim1(&mixed).unwrap_err().kind(), "domain");
    }

    #[test]
    fn fdepth1_on_two_planes() {
        let r = RingContext::indexed("x", 4).unwrap();
        let i = ideal(&r, "[x1, x2]").intersect(&ideal(&r, "[x3, x4]"));
        let m = QuotientModule::cyclic(r.clone(), i).unwrap();
        let f = strict(&r).fdepth1(&m).unwrap();
        assert_eq!(verify_filtration(&f).fdepth, Some(1));

        let cm = QuotientModule::cyclic(r.clone(), ideal(&r, "[x1, x2]")).unwrap();
        assert_eq!(build_fdepth1_filtration(&cm).unwrap_err().kind(), "domain");
    }

    #[test]
    fn torsion_free_non_free_module() {
        // (x, y)/(0) over K[x, y] ⊗ K[z]/(z): the maximal ideal of a plane
        let r = RingContext::from_letters("xyz").unwrap();
        let upper = ideal(&r, "[x, y, z]");
        let lower = ideal(&r, "[z]");
        let m = QuotientModule::new(r.clone(), upper, lower).unwrap();
        let f = strict(&r).fdepth1(&m).unwrap();
        let v = verify_filtration(&f);
        assert_eq!(v.fdepth, Some(1));
        assert!(v.support.iter().any(|p| p.dim() == 2));
        assert!(v.support.iter().any(|p| p.dim() == 1));
    }

    #[test]
    fn pretty_clean_and_rejection() {
        let r = RingContext::indexed("x", 5).unwrap();
        let i = ideal(&r, "[x1*x2, x1*x3]");
        let out = build_pretty_clean_n5(&r, &i).unwrap();
        assert!(out.verdict.pretty_clean);

        let i = ideal(&r, "[x1, x2]").intersect(&ideal(&r, "[x3, x4, x5]"));
        let err = build_pretty_clean_n5(&r, &i).unwrap_err();
        assert_eq!(err, Error::NotSequentiallyCm { k: 2, depth: 1 });
    }
}
