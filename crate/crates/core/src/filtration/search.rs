//! Certified depth-first search for prime filtrations whose primes satisfy a
//! goal, used where no explicit construction is available.

use std::collections::HashSet;

use super::blocks::{pair_bound, prime_witnesses};
use super::FiltrationStep;
use crate::decomposition::{minimal_primes, MonomialPrime};
use crate::depth::{koszul_depth, QuotientModule};
use crate::error::{Error, Result};
use crate::monomial::MonomialIdeal;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SearchGoal {
    /// Every step prime is a minimal prime of the module.
    Clean,
    /// Every step prime has `dim S/P ≥ t`.
    MinDim(usize),
}

struct Search<'a> {
    module: &'a QuotientModule,
    bound: Vec<u32>,
    allowed: Box<dyn Fn(&MonomialPrime) -> bool + 'a>,
    /// Lower bound on `dim S/P` over allowed primes; no completion exists
    /// once the remaining module has smaller depth.
    min_dim: usize,
    failed: HashSet<MonomialIdeal>,
    nodes: usize,
    cap: usize,
}

/// Steps from `module.lower` to `module.upper` meeting `goal`, or `None` when
/// the search space is exhausted without one.
pub fn search_filtration(module: &QuotientModule, goal: SearchGoal, node_cap: usize) -> Result<Option<Vec<FiltrationStep>>> {
    if module.is_zero() {
        return Ok(Some(vec![]));
    }
    let (allowed, min_dim): (Box<dyn Fn(&MonomialPrime) -> bool>, usize) = match goal {
        SearchGoal::Clean => {
            let min = minimal_primes(&module.annihilator())?;
            let d = min.iter().map(MonomialPrime::dim).min().unwrap_or(0);
            (Box::new(move |p| min.contains(p)), d)
        }
        SearchGoal::MinDim(t) => (Box::new(move |p: &MonomialPrime| p.dim() >= t), t),
    };
    let mut search = Search {
        module,
        bound: pair_bound(&module.upper, &module.lower),
        allowed,
        min_dim,
        failed: HashSet::new(),
        nodes: 0,
        cap: node_cap,
    };
    let mut steps = Vec::new();
    if search.descend(&module.lower, &mut steps)? {
        Ok(Some(steps))
    } else {
        Ok(None)
    }
}

impl Search<'_> {
    fn descend(&mut self, current: &MonomialIdeal, steps: &mut Vec<FiltrationStep>) -> Result<bool> {
        if *current == self.module.upper {
            return Ok(true);
        }
        if self.failed.contains(current) {
            return Ok(false);
        }
        self.nodes += 1;
        if self.nodes > self.cap {
            return Err(Error::Infeasible(format!(
                "filtration search exceeded {} nodes",
                self.cap
            )));
        }
        let mut candidates = prime_witnesses(&self.module.upper, current, &self.bound);
        // every associated prime of the rest must occur in any completion
        if candidates.iter().any(|(_, p)| !(self.allowed)(p)) {
            self.failed.insert(current.clone());
            return Ok(false);
        }
        if self.min_dim > 0 {
            let rest = QuotientModule {
                ring: self.module.ring.clone(),
                upper: self.module.upper.clone(),
                lower: current.clone(),
            };
            if koszul_depth(&rest)?.depth < self.min_dim {
                self.failed.insert(current.clone());
                return Ok(false);
            }
        }
        candidates.sort_by(|a, b| {
            b.1.dim()
                .cmp(&a.1.dim())
                .then_with(|| b.0.degree().cmp(&a.0.degree()))
                .then_with(|| a.0.cmp(&b.0))
        });
        for (m, p) in candidates {
            let next = current.add_gen(m.clone());
            steps.push(FiltrationStep { generator: m, prime: p });
            if self.descend(&next, steps)? {
                return Ok(true);
            }
            steps.pop();
        }
        self.failed.insert(current.clone());
        Ok(false)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::filtration::{verify_filtration, PrimeFiltration};
    use crate::ring::RingContext;
    use crate::syntax::parse_ideal;

    #[test]
    fn finds_clean_filtration_of_cohen_macaulay_quotient() {
        let r = RingContext::from_letters("xyzw").unwrap();
        let i = parse_ideal(&r, "[x*z, x*w, y*z]").unwrap();
        let m = QuotientModule::cyclic(r, i).unwrap();
        let steps = search_filtration(&m, SearchGoal::Clean, 10_000).unwrap().unwrap();
        let v = verify_filtration(&PrimeFiltration::new(m, steps));
        assert!(v.valid && v.clean);
    }

    #[test]
    fn reports_absence_and_cap() {
        // two planes meeting in a point: depth 1, so no clean filtration
        let r = RingContext::indexed("x", 4).unwrap();
        let i = parse_ideal(&r, "[x1, x2]")
            .unwrap()
            .intersect(&parse_ideal(&r, "[x3, x4]").unwrap());
        let m = QuotientModule::cyclic(r, i).unwrap();
        assert_eq!(search_filtration(&m, SearchGoal::Clean, 10_000).unwrap(), None);
        let steps = search_filtration(&m, SearchGoal::MinDim(1), 10_000).unwrap().unwrap();
        let v = verify_filtration(&PrimeFiltration::new(m.clone(), steps));
        assert_eq!(v.fdepth, Some(1));
        let err = search_filtration(&m, SearchGoal::MinDim(1), 0).unwrap_err();
        assert_eq!(err.kind(), "infeasible");
    }
}
