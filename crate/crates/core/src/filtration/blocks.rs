//! Step sequences for modules over a single prime, the two-variable
//! staircase, principal quotients, and a greedy fallback.

use std::collections::BTreeMap;

use super::FiltrationStep;
use crate::decomposition::MonomialPrime;
use crate::error::{Error, Result};
use crate::monomial::{box_points, join_exponents, Monomial, MonomialIdeal};
use crate::ring::VarSet;

pub(super) fn pair_bound(upper: &MonomialIdeal, lower: &MonomialIdeal) -> Vec<u32> {
    join_exponents(&upper.exponent_join(), &lower.exponent_join())
}

/// Monomials `m` of the box with `m ∈ J \ C` and `(C : m)` prime.
pub(super) fn prime_witnesses(
    upper: &MonomialIdeal,
    current: &MonomialIdeal,
    bound: &[u32],
) -> Vec<(Monomial, MonomialPrime)> {
    let n = upper.nvars();
    box_points(bound)
        .filter(|m| upper.contains(m) && !current.contains(m))
        .filter_map(|m| {
            let colon = current.colon(&m);
            colon.as_prime().map(|v| (m, MonomialPrime::new(n, v)))
        })
        .collect()
}

/// Steps from `lower` to `upper` for `Ass(upper/lower) ⊆ {P}`.
///
/// Layers `C_0 = lower`, `C_k = upper ∩ (C_{k-1} : P)`; each layer is killed by
/// `P` and torsion-free over `S/P`, so it splits into fibers indexed by the
/// `P`-part of its monomials.
pub(super) fn primary_block(
    upper: &MonomialIdeal,
    lower: &MonomialIdeal,
    prime: &MonomialPrime,
) -> Result<Vec<FiltrationStep>> {
    let p = prime.ideal();
    let mut steps = Vec::new();
    let mut prev = lower.clone();
    while prev != *upper {
        let next = upper.intersect(&prev.colon_ideal(&p));
        if next == prev {
            return Err(Error::cert(
                "primary block",
                format!("layering over {:?} stalls before reaching J", prime.vars),
            ));
        }
        steps.extend(layer_steps(&next, &prev, prime)?);
        prev = next;
    }
    Ok(steps)
}

/// Steps of one layer `L/L'`, fibers in graded-lex order of their `P`-part.
fn layer_steps(layer: &MonomialIdeal, below: &MonomialIdeal, prime: &MonomialPrime) -> Result<Vec<FiltrationStep>> {
    let free = prime.free_vars();
    let mut fibers: BTreeMap<GrlexKey, Vec<Monomial>> = BTreeMap::new();
    for m in box_points(&pair_bound(layer, below)) {
        if layer.contains(&m) && !below.contains(&m) {
            fibers
                .entry(GrlexKey(m.restrict(prime.vars)))
                .or_default()
                .push(m.restrict(free));
        }
    }
    let mut steps = Vec::new();
    let mut current = below.clone();
    for (GrlexKey(pi), parts) in fibers {
        let gens = MonomialIdeal::new(pi.nvars(), parts)?;
        let fiber: Vec<Monomial> = gens
            .gens()
            .iter()
            .map(|z| pi.checked_mul(z))
            .collect::<Result<_>>()?;
        let block = match fiber.len() {
            1 => vec![FiltrationStep {
                generator: fiber[0].clone(),
                prime: *prime,
            }],
            _ if free.len() == 2 => staircase_steps(&pi, gens.gens(), prime, free),
            _ => {
                let top = current.sum(&MonomialIdeal::new(pi.nvars(), fiber)?);
                greedy_steps(&top, &current)?
            }
        };
        for s in &block {
            current = current.add_gen(s.generator.clone());
        }
        steps.extend(block);
    }
    Ok(steps)
}

/// Monomials ordered by degree, then lexicographically.
#[derive(PartialEq, Eq)]
struct GrlexKey(Monomial);

impl Ord for GrlexKey {
    fn cmp(&self, other: &Self) -> std::cmp::Ordering {
        self.0.grlex_cmp(&other.0)
    }
}

impl PartialOrd for GrlexKey {
    fn partial_cmp(&self, other: &Self) -> Option<std::cmp::Ordering> {
        Some(self.cmp(other))
    }
}

/// Refined filtration of a non-principal fiber `π·(x^{a_1}y^{b_1}, …, x^{a_s}y^{b_s})`
/// over `K[x, y]`, with `a_1 > … > a_s`: first `π x^{a_s} y^{b_s}` over `P`,
/// then `π x^{a_i} y^j` for `j = b_{i+1}-1, …, b_i` over `P + (y)`.
pub(super) fn staircase_steps(
    pi: &Monomial,
    gens: &[Monomial],
    prime: &MonomialPrime,
    free: VarSet,
) -> Vec<FiltrationStep> {
    let vars = free.to_vec();
    let (x, y) = (vars[0], vars[1]);
    let mut corners: Vec<(u32, u32)> = gens.iter().map(|g| (g.exp(x), g.exp(y))).collect();
    corners.sort_by_key(|c| std::cmp::Reverse(c.0));
    let n = pi.nvars();
    let at = |a: u32, b: u32| {
        let mut e = pi.exps().to_vec();
        e[x] = a;
        e[y] = b;
        Monomial::new(e)
    };
    let s = corners.len();
    let mut steps = vec![FiltrationStep {
        generator: at(corners[s - 1].0, corners[s - 1].1),
        prime: *prime,
    }];
    let killed = MonomialPrime::new(n, prime.vars.union(VarSet::singleton(y)));
    for i in (0..s - 1).rev() {
        let (a, b) = corners[i];
        let next_b = corners[i + 1].1;
        for j in (b..next_b).rev() {
            steps.push(FiltrationStep {
                generator: at(a, j),
                prime: killed,
            });
        }
    }
    steps
}

/// `S/(u)`: with `u = v_1 ⋯ v_D` (variables sorted with multiplicity), the
/// steps `u/v_1, u/(v_1 v_2), …, 1` over the primes `(v_1), …, (v_D)`.
pub(super) fn principal_steps(u: &Monomial) -> Vec<FiltrationStep> {
    let n = u.nvars();
    let mut vars = Vec::new();
    for i in 0..n {
        for _ in 0..u.exp(i) {
            vars.push(i);
        }
    }
    let mut current = u.clone();
    let mut steps = Vec::new();
    for v in vars {
        current = current.div_var(v).expect("variable divides the remaining factor");
        steps.push(FiltrationStep {
            generator: current.clone(),
            prime: MonomialPrime::from_indices(n, &[v]),
        });
    }
    steps
}

/// Any prime filtration: repeatedly adds a witness of largest prime
/// dimension, smallest in graded-lex order.
pub(super) fn greedy_steps(upper: &MonomialIdeal, lower: &MonomialIdeal) -> Result<Vec<FiltrationStep>> {
    let bound = pair_bound(upper, lower);
    let mut current = lower.clone();
    let mut steps = Vec::new();
    while current != *upper {
        let best = prime_witnesses(upper, &current, &bound)
            .into_iter()
            .min_by(|a, b| b.1.dim().cmp(&a.1.dim()).then_with(|| a.0.grlex_cmp(&b.0)))
            .ok_or_else(|| Error::cert("greedy filtration", "no associated prime witness in the box"))?;
        current = current.add_gen(best.0.clone());
        steps.push(FiltrationStep {
            generator: best.0,
            prime: best.1,
        });
    }
    Ok(steps)
}

/// Multiplies every generator by `u`, carrying a filtration of `S/J` to one of
/// `(u)/(u)∩Q` when `J = (Q : u)`.
pub(super) fn shift_steps(steps: Vec<FiltrationStep>, u: &Monomial) -> Result<Vec<FiltrationStep>> {
    steps
        .into_iter()
        .map(|s| {
            Ok(FiltrationStep {
                generator: s.generator.checked_mul(u)?,
                prime: s.prime,
            })
        })
        .collect()
}
