//! Degree-lowering transforms on pairs `I ⊆ U`: the single-variable step
//! `(Ũ, Ĩ)`, the all-variable reduction `(U₁, I₁)`, and full polarization.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::monomial::{Monomial, MonomialIdeal};
use crate::ring::RingContext;

/// Monomial ideals `I ⊆ U`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct IdealPair {
    pub upper: MonomialIdeal,
    pub lower: MonomialIdeal,
}

impl IdealPair {
    pub fn new(upper: MonomialIdeal, lower: MonomialIdeal) -> Result<Self> {
        if upper.nvars() != lower.nvars() {
            return Err(Error::RingMismatch {
                expected: upper.nvars(),
                found: lower.nvars(),
            });
        }
        if !lower.is_subset(&upper) {
            return Err(Error::Precondition("lower ideal is not contained in upper".into()));
        }
        Ok(IdealPair { upper, lower })
    }

    /// `(S, I)`.
    pub fn quotient_of_ring(lower: MonomialIdeal) -> Self {
        IdealPair {
            upper: MonomialIdeal::unit(lower.nvars()),
            lower,
        }
    }

    pub fn is_trivial(&self) -> bool {
        self.upper == self.lower
    }
}

/// Which x_i-degree the single-variable step lowers.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
pub enum TildeMode {
    /// Threshold `d(I)`; requires `d_i(I) = d(I)`.
    #[default]
    Strict,
    /// Threshold `d_i(I)`, allowed to be below `d(I)`.
    Relaxed,
}

fn lowered(ideal: &MonomialIdeal, i: usize, threshold: u32) -> MonomialIdeal {
    let mut gens = ideal.gens().to_vec();
    gens.extend(ideal.lowered_at(i, threshold));
    MonomialIdeal::from_gens_unchecked(ideal.nvars(), gens)
}

/// `(Ũ, Ĩ)` with respect to `x_i`. Both ideals use the threshold taken from `I`.
pub fn tilde_step(pair: &IdealPair, i: usize, mode: TildeMode) -> Result<IdealPair> {
    let lower = &pair.lower;
    if i >= lower.nvars() {
        return Err(Error::Malformed(format!("variable index {i} out of range")));
    }
    if !lower.is_proper_nonzero() {
        return Err(Error::Precondition("tilde step needs a proper nonzero ideal".into()));
    }
    let profile = lower.degree_profile()?;
    let threshold = match mode {
        TildeMode::Strict => {
            if profile.per_variable[i] != profile.max_value {
                return Err(Error::Precondition(format!(
                    "no generator reaches degree d(I) = {} in variable {i}",
                    profile.max_value
                )));
            }
            profile.max_value
        }
        TildeMode::Relaxed => {
            if profile.per_variable[i] == 0 {
                return Err(Error::Precondition(format!("variable {i} does not occur in I")));
            }
            profile.per_variable[i]
        }
    };
    Ok(IdealPair {
        upper: lowered(&pair.upper, i, threshold),
        lower: lowered(lower, i, threshold),
    })
}

/// `I₁`, the lower ideal of [`reduce_step`] applied to `(S, I)`.
pub fn reduce_ideal(ideal: &MonomialIdeal) -> MonomialIdeal {
    if !ideal.is_proper_nonzero() {
        return ideal.clone();
    }
    reduce_step(&IdealPair::quotient_of_ring(ideal.clone()))
        .expect("reduction of a proper nonzero ideal")
        .lower
}

/// One-shot lowering: adds `u / x_i` for every generator `u` and every `i`
/// with `deg_{x_i} u = d`, without re-reading the generators in between.
pub fn lower_all_at_once(ideal: &MonomialIdeal, d: u32) -> MonomialIdeal {
    if d == 0 {
        return ideal.clone();
    }
    let mut gens = ideal.gens().to_vec();
    for i in 0..ideal.nvars() {
        gens.extend(ideal.lowered_at(i, d));
    }
    MonomialIdeal::from_gens_unchecked(ideal.nvars(), gens)
}

/// `(U₁, I₁)`: strict tilde steps for every variable, in increasing index
/// order, while `d(I)` is unchanged. The identity when `I` is squarefree.
pub fn reduce_step(pair: &IdealPair) -> Result<IdealPair> {
    let order: Vec<usize> = (0..pair.lower.nvars()).collect();
    reduce_step_in_order(pair, &order)
}

/// As [`reduce_step`] with the variables visited in `order`.
pub fn reduce_step_in_order(pair: &IdealPair, order: &[usize]) -> Result<IdealPair> {
    if !pair.lower.is_proper_nonzero() {
        return Ok(pair.clone());
    }
    let d = pair.lower.max_degree();
    if d <= 1 {
        return Ok(pair.clone());
    }
    let mut current = pair.clone();
    for &i in order {
        if current.lower.max_degree() != d {
            break;
        }
        if current.lower.exponent_join()[i] == d {
            current = tilde_step(&current, i, TildeMode::Strict)?;
        }
    }
    Ok(current)
}

/// Squarefree ideal obtained by replacing `x_k^a` with `x_k x_k' ⋯ x_k^{(a-1)}`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Polarization {
    pub ring: RingContext,
    pub ideal: MonomialIdeal,
    /// For each new variable: (original variable, copy index).
    pub var_map: Vec<(usize, u32)>,
}

impl Polarization {
    pub fn added_vars(&self) -> usize {
        self.var_map.len() - self.var_map.iter().filter(|(_, c)| *c == 0).count()
    }

    /// Specializes every copy back to its original variable.
    pub fn depolarize(&self, m: &Monomial) -> Monomial {
        let n = self.var_map.iter().map(|(k, _)| k + 1).max().unwrap_or(0);
        let mut exps = vec![0u32; n];
        for (j, &(k, _)) in self.var_map.iter().enumerate() {
            exps[k] += m.exp(j);
        }
        Monomial::new(exps)
    }
}

pub fn full_polarization(ring: &RingContext, ideal: &MonomialIdeal) -> Result<Polarization> {
    if ideal.nvars() != ring.nvars() {
        return Err(Error::RingMismatch {
            expected: ring.nvars(),
            found: ideal.nvars(),
        });
    }
    if !ideal.is_proper_nonzero() {
        return Err(Error::Precondition("polarization needs a proper nonzero ideal".into()));
    }
    let join = ideal.exponent_join();
    let mut var_map = Vec::new();
    let mut names = Vec::new();
    let mut first_copy = Vec::with_capacity(ring.nvars());
    for (k, &d) in join.iter().enumerate() {
        first_copy.push(var_map.len());
        for c in 0..d.max(1) {
            var_map.push((k, c));
            names.push(format!("{}{}", ring.name(k), "'".repeat(c as usize)));
        }
    }
    let new_ring = RingContext::new(names, ring.characteristic())?;
    let n = var_map.len();
    let gens = ideal
        .gens()
        .iter()
        .map(|g| {
            let mut exps = vec![0u32; n];
            for (k, &a) in g.exps().iter().enumerate() {
                for c in 0..a as usize {
                    exps[first_copy[k] + c] = 1;
                }
            }
            Monomial::new(exps)
        })
        .collect();
    Ok(Polarization {
        ring: new_ring,
        ideal: MonomialIdeal::new(n, gens)?,
        var_map,
    })
}
