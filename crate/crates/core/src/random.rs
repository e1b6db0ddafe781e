//! Seeded random monomial ideals: distinct exponent vectors of total degree
//! `1..=max_degree`, drawn uniformly, then minimalized.

use rand::seq::index::sample;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::monomial::{box_points, Monomial, MonomialIdeal};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct IdealModel {
    pub nvars: usize,
    pub max_degree: u32,
    /// Generators drawn before minimalization.
    pub generators: usize,
}

/// Seed of instance `index` under a master seed (splitmix64 of the pair).
pub fn instance_seed(master: u64, index: u64) -> u64 {
    let mut z = master
        .wrapping_add(index.wrapping_mul(0x9E37_79B9_7F4A_7C15))
        .wrapping_add(0x9E37_79B9_7F4A_7C15);
    z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
    z ^ (z >> 31)
}

pub fn instance_rng(master: u64, index: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(instance_seed(master, index))
}

fn exponent_vectors(model: &IdealModel) -> Vec<Monomial> {
    box_points(&vec![model.max_degree; model.nvars])
        .filter(|m| m.degree() >= 1 && m.degree() <= model.max_degree as u64)
        .collect()
}

pub fn random_ideal<R: Rng>(rng: &mut R, model: &IdealModel) -> Result<MonomialIdeal> {
    if model.nvars == 0 || model.max_degree == 0 || model.generators == 0 {
        return Err(Error::Domain("random ideals need variables, a degree and generators".into()));
    }
    let pool = exponent_vectors(model);
    let count = model.generators.min(pool.len());
    let picks = sample(rng, pool.len(), count);
    MonomialIdeal::new(model.nvars, picks.into_iter().map(|i| pool[i].clone()).collect())
}

/// `I ⊊ J`: `I` from the model, `J = I + (random ideal)`, redrawn until
/// the two differ; `J = S` when `I` swallows every draw.
pub fn random_pair<R: Rng>(rng: &mut R, model: &IdealModel) -> Result<(MonomialIdeal, MonomialIdeal)> {
    let lower = random_ideal(rng, model)?;
    let extra = IdealModel {
        generators: rng.gen_range(1..=model.generators),
        ..*model
    };
    for _ in 0..64 {
        let upper = lower.sum(&random_ideal(rng, &extra)?);
        if upper != lower {
            return Ok((upper, lower));
        }
    }
    Ok((MonomialIdeal::unit(model.nvars), lower))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn deterministic_and_bounded() {
        let model = IdealModel {
            nvars: 4,
            max_degree: 3,
            generators: 5,
        };
        let a = random_ideal(&mut instance_rng(7, 3), &model).unwrap();
        let b = random_ideal(&mut instance_rng(7, 3), &model).unwrap();
        assert_eq!(a, b);
        assert!(a.gens().iter().all(|g| g.degree() <= 3 && g.degree() >= 1));
        assert!(!a.gens().is_empty() && a.gens().len() <= 5);
        assert_ne!(instance_seed(7, 3), instance_seed(7, 4));
        let (u, i) = random_pair(&mut instance_rng(1, 1), &model).unwrap();
        assert!(i.is_subset(&u) && u != i);
    }
}
