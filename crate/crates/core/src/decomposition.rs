//! Irreducible and primary decomposition of monomial ideals, associated
//! primes, and the ideals realizing the dimension filtration of `S/I`.

use std::collections::HashMap;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::monomial::{Monomial, MonomialIdeal};
use crate::ring::VarSet;

/// Prime generated by a set of variables.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct MonomialPrime {
    pub vars: VarSet,
    pub nvars: usize,
}

impl MonomialPrime {
    pub fn new(nvars: usize, vars: VarSet) -> Self {
        MonomialPrime { vars, nvars }
    }

    pub fn from_indices(nvars: usize, vars: &[usize]) -> Self {
        MonomialPrime::new(nvars, VarSet::from_indices(vars.iter().copied()))
    }

    /// `dim S/P`.
    pub fn dim(&self) -> usize {
        self.nvars - self.vars.len()
    }

    pub fn ideal(&self) -> MonomialIdeal {
        MonomialIdeal::prime(self.nvars, self.vars)
    }

    /// Variables outside the prime.
    pub fn free_vars(&self) -> VarSet {
        self.vars.complement(self.nvars)
    }

    pub fn contains_prime(&self, other: &MonomialPrime) -> bool {
        other.vars.is_subset(self.vars)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct PrimaryComponent {
    pub ideal: MonomialIdeal,
    pub prime: MonomialPrime,
}

impl PrimaryComponent {
    pub fn dim(&self) -> usize {
        self.prime.dim()
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct PrimaryDecomposition {
    pub components: Vec<PrimaryComponent>,
}

impl PrimaryDecomposition {
    pub fn intersection(&self, nvars: usize) -> MonomialIdeal {
        MonomialIdeal::intersect_all(nvars, self.components.iter().map(|c| &c.ideal))
    }

    pub fn primes(&self) -> Vec<MonomialPrime> {
        self.components.iter().map(|c| c.prime).collect()
    }
}

fn require_proper(ideal: &MonomialIdeal, what: &str) -> Result<()> {
    if ideal.is_zero() {
        return Err(Error::Domain(format!("{what} of the zero ideal")));
    }
    if ideal.is_unit() {
        return Err(Error::Domain(format!("{what} of the unit ideal")));
    }
    Ok(())
}

/// Irredundant decomposition into ideals generated by pure powers.
///
/// Splits the first mixed generator `u = x_i^a · w` (lowest index `i` in its
/// support) as `I = (I + x_i^a) ∩ (I + w)` until every ideal is irreducible.
pub fn irreducible_decomposition(ideal: &MonomialIdeal) -> Result<Vec<MonomialIdeal>> {
    require_proper(ideal, "irreducible decomposition")?;
    let mut memo = HashMap::new();
    let mut leaves = split_irreducible(ideal, &mut memo);
    leaves.sort();
    leaves.dedup();
    let mut kept: Vec<MonomialIdeal> = Vec::with_capacity(leaves.len());
    for (i, c) in leaves.iter().enumerate() {
        let redundant = leaves
            .iter()
            .enumerate()
            .any(|(j, other)| j != i && other.is_subset(c));
        if !redundant {
            kept.push(c.clone());
        }
    }
    Ok(kept)
}

fn split_irreducible(
    ideal: &MonomialIdeal,
    memo: &mut HashMap<MonomialIdeal, Vec<MonomialIdeal>>,
) -> Vec<MonomialIdeal> {
    if ideal.is_unit() {
        return vec![];
    }
    if let Some(hit) = memo.get(ideal) {
        return hit.clone();
    }
    let n = ideal.nvars();
    let mixed = ideal.gens().iter().find(|g| g.support().len() > 1);
    let result = match mixed {
        None => vec![ideal.clone()],
        Some(u) => {
            let i = u.support().iter().next().expect("mixed generator has support");
            let mut pure = vec![0; n];
            pure[i] = u.exp(i);
            let pure = Monomial::new(pure);
            let rest = u.quotient(&pure).expect("pure power divides its generator");
            let mut out = split_irreducible(&ideal.add_gen(pure), memo);
            out.extend(split_irreducible(&ideal.add_gen(rest), memo));
            out
        }
    };
    memo.insert(ideal.clone(), result.clone());
    result
}

/// Irredundant primary decomposition, components sorted by prime.
pub fn primary_decomposition(ideal: &MonomialIdeal) -> Result<PrimaryDecomposition> {
    let n = ideal.nvars();
    let irreducible = irreducible_decomposition(ideal)?;
    let mut groups: Vec<(VarSet, MonomialIdeal)> = Vec::new();
    for q in irreducible {
        let vars = q.support();
        match groups.iter_mut().find(|(v, _)| *v == vars) {
            Some((_, acc)) => *acc = acc.intersect(&q),
            None => groups.push((vars, q)),
        }
    }
    groups.sort_by_key(|g| g.0);
    let mut components: Vec<PrimaryComponent> = groups
        .into_iter()
        .map(|(vars, q)| PrimaryComponent {
            ideal: q,
            prime: MonomialPrime::new(n, vars),
        })
        .collect();

    // greedy pruning in canonical order
    let mut i = 0;
    while i < components.len() && components.len() > 1 {
        let others = components
            .iter()
            .enumerate()
            .filter(|(j, _)| *j != i)
            .map(|(_, c)| &c.ideal);
        if MonomialIdeal::intersect_all(n, others) == *ideal {
            components.remove(i);
        } else {
            i += 1;
        }
    }
    Ok(PrimaryDecomposition { components })
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct AssociatedPrimes {
    pub ass: Vec<MonomialPrime>,
    pub min: Vec<MonomialPrime>,
    pub dim: usize,
}

pub fn minimal_among(primes: &[MonomialPrime]) -> Vec<MonomialPrime> {
    primes
        .iter()
        .filter(|p| !primes.iter().any(|q| q != *p && p.contains_prime(q)))
        .copied()
        .collect()
}

pub fn associated_primes(ideal: &MonomialIdeal) -> Result<AssociatedPrimes> {
    let ass = primary_decomposition(ideal)?.primes();
    let min = minimal_among(&ass);
    let dim = min.iter().map(MonomialPrime::dim).max().unwrap_or(0);
    Ok(AssociatedPrimes { ass, min, dim })
}

/// Minimal primes of an arbitrary monomial ideal; the zero ideal gives `(0)`,
/// the unit ideal gives none.
pub fn minimal_primes(ideal: &MonomialIdeal) -> Result<Vec<MonomialPrime>> {
    if ideal.is_unit() {
        return Ok(vec![]);
    }
    if ideal.is_zero() {
        return Ok(vec![MonomialPrime::new(ideal.nvars(), VarSet::EMPTY)]);
    }
    Ok(associated_primes(ideal)?.min)
}

/// `dim S/I`, with `-1` for the unit ideal.
pub fn quotient_dim(ideal: &MonomialIdeal) -> Result<i64> {
    Ok(minimal_primes(ideal)?
        .iter()
        .map(|p| p.dim() as i64)
        .max()
        .unwrap_or(-1))
}

/// Ideals `U_k` with `D_k(S/I) = U_k / I`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct DimensionFiltration {
    pub base: MonomialIdeal,
    /// `entries[k]` for `k = 0..=dim S/I`; the last entry is the unit ideal.
    pub entries: Vec<MonomialIdeal>,
    pub decomposition: PrimaryDecomposition,
}

impl DimensionFiltration {
    pub fn dim(&self) -> usize {
        self.entries.len() - 1
    }

    /// `U_k` for `k ≥ -1`; `U_{-1} = I`.
    pub fn entry(&self, k: i64) -> &MonomialIdeal {
        if k < 0 {
            &self.base
        } else {
            let k = (k as usize).min(self.entries.len() - 1);
            &self.entries[k]
        }
    }

    /// `(U_k, U_{k-1})`, the pair presenting the factor `D_k / D_{k-1}`.
    pub fn factor(&self, k: usize) -> (&MonomialIdeal, &MonomialIdeal) {
        (self.entry(k as i64), self.entry(k as i64 - 1))
    }

    pub fn factor_is_zero(&self, k: usize) -> bool {
        let (top, bottom) = self.factor(k);
        top == bottom
    }

    /// Intersection of the components of dimension exactly `k` (unit if none).
    pub fn component_of_dim(&self, k: usize) -> MonomialIdeal {
        let n = self.base.nvars();
        MonomialIdeal::intersect_all(
            n,
            self.decomposition
                .components
                .iter()
                .filter(|c| c.dim() == k)
                .map(|c| &c.ideal),
        )
    }
}

pub fn dimension_filtration_ideals(ideal: &MonomialIdeal) -> Result<DimensionFiltration> {
    let n = ideal.nvars();
    let decomposition = primary_decomposition(ideal)?;
    let dim = decomposition
        .components
        .iter()
        .map(PrimaryComponent::dim)
        .max()
        .unwrap_or(0);
    let entries = (0..=dim)
        .map(|k| {
            MonomialIdeal::intersect_all(
                n,
                decomposition
                    .components
                    .iter()
                    .filter(|c| c.dim() > k)
                    .map(|c| &c.ideal),
            )
        })
        .collect();
    Ok(DimensionFiltration {
        base: ideal.clone(),
        entries,
        decomposition,
    })
}
