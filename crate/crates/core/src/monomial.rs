//! Monomials and monomial ideals.
//!
//! An ideal is always held by its minimal generating set, sorted
//! lexicographically by exponent vector, so structural equality is ideal
//! equality. The zero ideal has no generators; the unit ideal is `{1}`.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::ring::VarSet;

#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(transparent)]
pub struct Monomial(Vec<u32>);

impl Monomial {
    pub fn new(exps: Vec<u32>) -> Self {
        Monomial(exps)
    }

    pub fn one(n: usize) -> Self {
        Monomial(vec![0; n])
    }

    pub fn var(n: usize, i: usize) -> Self {
        let mut e = vec![0; n];
        e[i] = 1;
        Monomial(e)
    }

    /// Product of the variables in `vars`.
    pub fn squarefree(n: usize, vars: VarSet) -> Self {
        let mut e = vec![0; n];
        for i in vars.iter() {
            e[i] = 1;
        }
        Monomial(e)
    }

    pub fn exps(&self) -> &[u32] {
        &self.0
    }

    pub fn nvars(&self) -> usize {
        self.0.len()
    }

    pub fn exp(&self, i: usize) -> u32 {
        self.0[i]
    }

    pub fn degree(&self) -> u64 {
        self.0.iter().map(|&e| e as u64).sum()
    }

    pub fn is_one(&self) -> bool {
        self.0.iter().all(|&e| e == 0)
    }

    pub fn support(&self) -> VarSet {
        VarSet::from_indices(self.0.iter().enumerate().filter(|(_, &e)| e > 0).map(|(i, _)| i))
    }

    pub fn is_squarefree(&self) -> bool {
        self.0.iter().all(|&e| e <= 1)
    }

    pub fn divides(&self, other: &Monomial) -> bool {
        self.0.iter().zip(&other.0).all(|(a, b)| a <= b)
    }

    pub fn lcm(&self, other: &Monomial) -> Monomial {
        Monomial(self.0.iter().zip(&other.0).map(|(&a, &b)| a.max(b)).collect())
    }

    pub fn gcd(&self, other: &Monomial) -> Monomial {
        Monomial(self.0.iter().zip(&other.0).map(|(&a, &b)| a.min(b)).collect())
    }

    pub fn checked_mul(&self, other: &Monomial) -> Result<Monomial> {
        self.0
            .iter()
            .zip(&other.0)
            .enumerate()
            .map(|(i, (&a, &b))| a.checked_add(b).ok_or(Error::ExponentOverflow { var: i }))
            .collect::<Result<Vec<_>>>()
            .map(Monomial)
    }

    /// `self / other`, or `None` when `other` does not divide `self`.
    pub fn quotient(&self, other: &Monomial) -> Option<Monomial> {
        if !other.divides(self) {
            return None;
        }
        Some(Monomial(self.0.iter().zip(&other.0).map(|(a, b)| a - b).collect()))
    }

    /// `self / gcd(self, other)`, the colon generator.
    pub fn strip(&self, other: &Monomial) -> Monomial {
        Monomial(self.0.iter().zip(&other.0).map(|(&a, &b)| a.saturating_sub(b)).collect())
    }

    pub fn times_var(&self, i: usize) -> Result<Monomial> {
        let mut e = self.0.clone();
        e[i] = e[i].checked_add(1).ok_or(Error::ExponentOverflow { var: i })?;
        Ok(Monomial(e))
    }

    pub fn div_var(&self, i: usize) -> Option<Monomial> {
        if self.0[i] == 0 {
            return None;
        }
        let mut e = self.0.clone();
        e[i] -= 1;
        Some(Monomial(e))
    }

    /// Squarefree part (radical).
    pub fn radical(&self) -> Monomial {
        Monomial(self.0.iter().map(|&e| e.min(1)).collect())
    }

    /// Restriction to the variables in `vars` (others set to exponent 0).
    pub fn restrict(&self, vars: VarSet) -> Monomial {
        Monomial(
            self.0
                .iter()
                .enumerate()
                .map(|(i, &e)| if vars.contains(i) { e } else { 0 })
                .collect(),
        )
    }

    /// Exponents capped componentwise at `bound`.
    pub fn cap(&self, bound: &[u32]) -> Monomial {
        Monomial(self.0.iter().zip(bound).map(|(&a, &b)| a.min(b)).collect())
    }

    /// Graded lexicographic comparison (total degree first).
    pub fn grlex_cmp(&self, other: &Monomial) -> std::cmp::Ordering {
        self.degree().cmp(&other.degree()).then_with(|| self.0.cmp(&other.0))
    }
}

/// Minimal generating set of a monomial ideal. Deserialization normalizes
/// the generators.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(try_from = "RawIdeal")]
pub struct MonomialIdeal {
    nvars: usize,
    gens: Vec<Monomial>,
}

#[derive(Deserialize)]
struct RawIdeal {
    nvars: usize,
    gens: Vec<Monomial>,
}

impl TryFrom<RawIdeal> for MonomialIdeal {
    type Error = Error;

    fn try_from(raw: RawIdeal) -> Result<Self> {
        MonomialIdeal::new(raw.nvars, raw.gens)
    }
}

impl MonomialIdeal {
    /// Normalizes an arbitrary generating set to `G(I)`.
    pub fn new(nvars: usize, gens: Vec<Monomial>) -> Result<Self> {
        for g in &gens {
            if g.nvars() != nvars {
                return Err(Error::RingMismatch {
                    expected: nvars,
                    found: g.nvars(),
                });
            }
        }
        Ok(Self::from_gens_unchecked(nvars, gens))
    }

    pub(crate) fn from_gens_unchecked(nvars: usize, mut gens: Vec<Monomial>) -> Self {
        gens.sort_by(|a, b| a.grlex_cmp(b));
        gens.dedup();
        let mut kept: Vec<Monomial> = Vec::with_capacity(gens.len());
        for g in gens {
            if !kept.iter().any(|k| k.divides(&g)) {
                kept.push(g);
            }
        }
        kept.sort();
        MonomialIdeal { nvars, gens: kept }
    }

    pub fn from_exponents(nvars: usize, exps: &[&[u32]]) -> Result<Self> {
        Self::new(nvars, exps.iter().map(|e| Monomial::new(e.to_vec())).collect())
    }

    pub fn zero(nvars: usize) -> Self {
        MonomialIdeal { nvars, gens: vec![] }
    }

    pub fn unit(nvars: usize) -> Self {
        MonomialIdeal {
            nvars,
            gens: vec![Monomial::one(nvars)],
        }
    }

    /// The prime ideal generated by the variables in `vars`.
    pub fn prime(nvars: usize, vars: VarSet) -> Self {
        Self::from_gens_unchecked(nvars, vars.iter().map(|i| Monomial::var(nvars, i)).collect())
    }

    pub fn principal(m: Monomial) -> Self {
        MonomialIdeal {
            nvars: m.nvars(),
            gens: vec![m],
        }
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn gens(&self) -> &[Monomial] {
        &self.gens
    }

    pub fn is_zero(&self) -> bool {
        self.gens.is_empty()
    }

    pub fn is_unit(&self) -> bool {
        self.gens.len() == 1 && self.gens[0].is_one()
    }

    pub fn is_proper_nonzero(&self) -> bool {
        !self.is_zero() && !self.is_unit()
    }

    pub fn contains(&self, m: &Monomial) -> bool {
        self.gens.iter().any(|g| g.divides(m))
    }

    /// `self ⊆ other`.
    pub fn is_subset(&self, other: &MonomialIdeal) -> bool {
        self.gens.iter().all(|g| other.contains(g))
    }

    pub fn sum(&self, other: &MonomialIdeal) -> MonomialIdeal {
        let mut gens = self.gens.clone();
        gens.extend(other.gens.iter().cloned());
        Self::from_gens_unchecked(self.nvars, gens)
    }

    pub fn add_gen(&self, m: Monomial) -> MonomialIdeal {
        let mut gens = self.gens.clone();
        gens.push(m);
        Self::from_gens_unchecked(self.nvars, gens)
    }

    pub fn intersect(&self, other: &MonomialIdeal) -> MonomialIdeal {
        let mut gens = Vec::with_capacity(self.gens.len() * other.gens.len());
        for a in &self.gens {
            for b in &other.gens {
                gens.push(a.lcm(b));
            }
        }
        Self::from_gens_unchecked(self.nvars, gens)
    }

    pub fn intersect_all<'a, I>(nvars: usize, ideals: I) -> MonomialIdeal
    where
        I: IntoIterator<Item = &'a MonomialIdeal>,
    {
        ideals
            .into_iter()
            .fold(MonomialIdeal::unit(nvars), |acc, q| acc.intersect(q))
    }

    pub fn product(&self, other: &MonomialIdeal) -> Result<MonomialIdeal> {
        let mut gens = Vec::with_capacity(self.gens.len() * other.gens.len());
        for a in &self.gens {
            for b in &other.gens {
                gens.push(a.checked_mul(b)?);
            }
        }
        Ok(Self::from_gens_unchecked(self.nvars, gens))
    }

    /// `(I : m)`.
    pub fn colon(&self, m: &Monomial) -> MonomialIdeal {
        Self::from_gens_unchecked(self.nvars, self.gens.iter().map(|g| g.strip(m)).collect())
    }

    /// `(I : J) = ∩_{g ∈ G(J)} (I : g)`; the whole ring when `J` is zero.
    pub fn colon_ideal(&self, other: &MonomialIdeal) -> MonomialIdeal {
        other
            .gens
            .iter()
            .fold(MonomialIdeal::unit(self.nvars), |acc, g| acc.intersect(&self.colon(g)))
    }

    pub fn radical(&self) -> MonomialIdeal {
        Self::from_gens_unchecked(self.nvars, self.gens.iter().map(Monomial::radical).collect())
    }

    pub fn is_squarefree(&self) -> bool {
        self.gens.iter().all(Monomial::is_squarefree)
    }

    /// True when the ideal is generated by variables (including zero).
    pub fn as_prime(&self) -> Option<VarSet> {
        let mut vars = VarSet::EMPTY;
        for g in &self.gens {
            if g.degree() != 1 {
                return None;
            }
            vars = vars.union(g.support());
        }
        Some(vars)
    }

    /// Variables occurring in some generator.
    pub fn support(&self) -> VarSet {
        self.gens.iter().fold(VarSet::EMPTY, |acc, g| acc.union(g.support()))
    }

    /// Componentwise maximum over the generators.
    pub fn exponent_join(&self) -> Vec<u32> {
        let mut join = vec![0; self.nvars];
        for g in &self.gens {
            for (j, &e) in join.iter_mut().zip(g.exps()) {
                *j = (*j).max(e);
            }
        }
        join
    }

    /// Sets the variables of `vars` to 1 (localization at the complementary prime).
    pub fn invert_vars(&self, vars: VarSet) -> MonomialIdeal {
        let keep = vars.complement(self.nvars);
        Self::from_gens_unchecked(self.nvars, self.gens.iter().map(|g| g.restrict(keep)).collect())
    }

    /// Generators of `x_i`-degree exactly `threshold`, divided by `x_i`.
    pub(crate) fn lowered_at(&self, i: usize, threshold: u32) -> Vec<Monomial> {
        self.gens
            .iter()
            .filter(|g| g.exp(i) == threshold && threshold > 0)
            .filter_map(|g| g.div_var(i))
            .collect()
    }

    pub fn degree_profile(&self) -> Result<DegreeProfile> {
        if !self.is_proper_nonzero() {
            return Err(Error::Domain(
                "degree profile is undefined for the zero and unit ideals".into(),
            ));
        }
        let per_variable = self.exponent_join();
        let max_value = per_variable.iter().copied().max().unwrap_or(0);
        Ok(DegreeProfile {
            per_variable,
            max_value,
        })
    }

    /// Maximal degree `d(I)`, 0 for zero or unit ideals.
    pub fn max_degree(&self) -> u32 {
        self.exponent_join().into_iter().max().unwrap_or(0)
    }
}

/// `d_k(I)` per variable and `d(I)`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct DegreeProfile {
    pub per_variable: Vec<u32>,
    pub max_value: u32,
}

pub fn join_exponents(a: &[u32], b: &[u32]) -> Vec<u32> {
    a.iter().zip(b).map(|(&x, &y)| x.max(y)).collect()
}

/// All exponent vectors `0 ≤ a ≤ bound`, in lexicographic order.
pub fn box_points(bound: &[u32]) -> BoxIter {
    BoxIter {
        bound: bound.to_vec(),
        current: Some(vec![0; bound.len()]),
    }
}

pub struct BoxIter {
    bound: Vec<u32>,
    current: Option<Vec<u32>>,
}

impl Iterator for BoxIter {
    type Item = Monomial;

    fn next(&mut self) -> Option<Monomial> {
        let cur = self.current.take()?;
        let mut next = cur.clone();
        let mut k = next.len();
        loop {
            if k == 0 {
                break;
            }
            k -= 1;
            if next[k] < self.bound[k] {
                next[k] += 1;
                for e in next.iter_mut().skip(k + 1) {
                    *e = 0;
                }
                self.current = Some(next);
                break;
            }
        }
        Some(Monomial::new(cur))
    }
}
