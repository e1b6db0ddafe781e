//! Choice of `p ∈ Ass S/I` with `U/(p ∩ U)` Cohen-Macaulay of dimension 2,
//! when `Ass S/I` has only dimension-2 primes and `Ass S/U` only dimension-1
//! primes.

use crate::decomposition::{primary_decomposition, MonomialPrime, PrimaryComponent};
use crate::depth::pair_depth;
use crate::error::{Error, Result};
use crate::monomial::MonomialIdeal;
use crate::polarize::{tilde_step, IdealPair, TildeMode};
use crate::ring::{RingContext, VarSet};

/// The selected prime, with a note when the explicit rule failed and the
/// prime came from scanning `Ass S/I`.
pub(super) struct Selection {
    pub prime: MonomialPrime,
    pub scanned: Option<String>,
}

pub fn select_cm2_prime(ring: &RingContext, upper: &MonomialIdeal, lower: &MonomialIdeal) -> Result<MonomialPrime> {
    Ok(select(ring, upper, lower)?.prime)
}

fn components(ideal: &MonomialIdeal) -> Result<Vec<PrimaryComponent>> {
    if ideal.is_unit() {
        return Ok(vec![]);
    }
    Ok(primary_decomposition(ideal)?.components)
}

/// Checks both dimension conditions.
fn conditions_hold(upper: &MonomialIdeal, lower: &MonomialIdeal) -> Result<bool> {
    if !lower.is_proper_nonzero() || !lower.is_subset(upper) || lower == upper {
        return Ok(false);
    }
    let low = components(lower)?;
    let up = components(upper)?;
    Ok(low.iter().all(|c| c.dim() == 2) && up.iter().all(|c| c.dim() == 1))
}

pub(super) fn certify(ring: &RingContext, upper: &MonomialIdeal, p: &MonomialPrime) -> Result<bool> {
    let lower = upper.intersect(&p.ideal());
    if lower == *upper {
        return Ok(false);
    }
    let rep = pair_depth(ring, upper, &lower)?;
    Ok(rep.is_cm && rep.dim == 2)
}

pub(super) fn select(ring: &RingContext, upper: &MonomialIdeal, lower: &MonomialIdeal) -> Result<Selection> {
    if !conditions_hold(upper, lower)? {
        return Err(Error::Domain(
            "prime selection needs Ass S/I of dimension 2 and Ass S/U of dimension 1".into(),
        ));
    }
    let ass = components(lower)?;
    let candidate = if upper.is_unit() {
        Some(ass[0].prime)
    } else {
        choose(upper, lower)?
    };
    if let Some(p) = candidate {
        if certify(ring, upper, &p)? {
            return Ok(Selection { prime: p, scanned: None });
        }
    }
    for c in &ass {
        if certify(ring, upper, &c.prime)? {
            let detail = match candidate {
                Some(p) => format!("rule chose {:?}, which failed; {:?} certified", p.vars, c.prime.vars),
                None => format!("rule gave no prime; {:?} certified", c.prime.vars),
            };
            return Ok(Selection {
                prime: c.prime,
                scanned: Some(detail),
            });
        }
    }
    Err(Error::cert(
        "prime selection",
        "no associated prime p of I has U/(U ∩ p) Cohen-Macaulay of dimension 2",
    ))
}

/// Induction on `d(I)`: the squarefree rule, else the degree condition,
/// else a tilde step in the lowest variable reaching `d(I)`.
fn choose(upper: &MonomialIdeal, lower: &MonomialIdeal) -> Result<Option<MonomialPrime>> {
    let d = lower.max_degree();
    if d <= 1 {
        return squarefree_rule(upper, lower);
    }
    if let Some(p) = degree_rule(upper, lower)? {
        return Ok(Some(p));
    }
    let i = match lower.exponent_join().iter().position(|&e| e == d) {
        Some(i) => i,
        None => return Ok(None),
    };
    let pair = IdealPair {
        upper: upper.clone(),
        lower: lower.clone(),
    };
    let tilde_lower = tilde_step(&pair, i, TildeMode::Strict)?.lower;
    let tilde_upper = upper.sum(&tilde_lower);
    if !conditions_hold(&tilde_upper, &tilde_lower)? {
        return Ok(None);
    }
    choose(&tilde_upper, &tilde_lower)
}

/// Variable of `big` outside `small`, for primes differing by one variable.
fn extra_var(big: VarSet, small: VarSet) -> Option<usize> {
    let diff = big.difference(small);
    if small.is_subset(big) && diff.len() == 1 {
        diff.iter().next()
    } else {
        None
    }
}

/// `I` squarefree: with `P_1 = (p_1, x_k)` the first prime of `U`, take the
/// `p_i` maximizing `s_i`, where `Q_i + p_i = (p_i, x_k^{s_i})` over the
/// components with `P_i = (p_i, x_k)`. Ties go to the lowest prime.
fn squarefree_rule(upper: &MonomialIdeal, lower: &MonomialIdeal) -> Result<Option<MonomialPrime>> {
    let n = lower.nvars();
    let up = components(upper)?;
    let low: Vec<MonomialPrime> = components(lower)?.iter().map(|c| c.prime).collect();
    let Some(first) = up.first() else {
        return Ok(None);
    };
    let Some(p1) = low.iter().find(|p| first.prime.contains_prime(p)) else {
        return Ok(None);
    };
    let Some(k) = extra_var(first.prime.vars, p1.vars) else {
        return Ok(None);
    };
    let mut best: Option<(u32, MonomialPrime)> = None;
    for c in &up {
        if !c.prime.vars.contains(k) {
            continue;
        }
        let base = MonomialPrime::new(n, c.prime.vars.difference(VarSet::singleton(k)));
        if !low.contains(&base) {
            continue;
        }
        let sum = c.ideal.sum(&base.ideal());
        let s = sum
            .gens()
            .iter()
            .filter(|g| g.support() == VarSet::singleton(k))
            .map(|g| g.exp(k))
            .min();
        let Some(s) = s else { continue };
        let better = match &best {
            None => true,
            Some((bs, bp)) => s > *bs || (s == *bs && base < *bp),
        };
        if better {
            best = Some((s, base));
        }
    }
    Ok(best.map(|(_, p)| p))
}

/// For the lowest `k` with `d_k(I) = d(I) ≤ d_k(Q_i)` and `P_i = (x_k, p)`,
/// `p ∈ Ass S/I`: the `p` maximizing `d_k(Q_i)` among components with
/// `P_i = (p_j, x_k)`. Ties go to the lowest prime.
fn degree_rule(upper: &MonomialIdeal, lower: &MonomialIdeal) -> Result<Option<MonomialPrime>> {
    let n = lower.nvars();
    let d = lower.max_degree();
    let join = lower.exponent_join();
    let up = components(upper)?;
    let low: Vec<MonomialPrime> = components(lower)?.iter().map(|c| c.prime).collect();
    let split = |c: &PrimaryComponent, k: usize| -> Option<MonomialPrime> {
        if !c.prime.vars.contains(k) {
            return None;
        }
        let base = MonomialPrime::new(n, c.prime.vars.difference(VarSet::singleton(k)));
        low.contains(&base).then_some(base)
    };
    for k in (0..n).filter(|&k| join[k] == d) {
        let triggered = up
            .iter()
            .any(|c| c.ideal.exponent_join()[k] >= d && split(c, k).is_some());
        if !triggered {
            continue;
        }
        let mut best: Option<(u32, MonomialPrime)> = None;
        for c in &up {
            let Some(base) = split(c, k) else { continue };
            let dk = c.ideal.exponent_join()[k];
            let better = match &best {
                None => true,
                Some((bd, bp)) => dk > *bd || (dk == *bd && base < *bp),
            };
            if better {
                best = Some((dk, base));
            }
        }
        return Ok(best.map(|(_, p)| p));
    }
    Ok(None)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::syntax::parse_ideal;

    #[test]
    fn squarefree_example() {
        let r = RingContext::indexed("x", 3).unwrap();
        let u = parse_ideal(&r, "[x1, x3^2]").unwrap().intersect(&parse_ideal(&r, "[x2, x3]").unwrap());
        let i = parse_ideal(&r, "[x1*x2]").unwrap();
        let p = select_cm2_prime(&r, &u, &i).unwrap();
        assert_eq!(p, MonomialPrime::from_indices(3, &[0]));
        assert!(!certify(&r, &u, &MonomialPrime::from_indices(3, &[1])).unwrap());
        assert!(select(&r, &u, &i).unwrap().scanned.is_none());
    }

    #[test]
    fn nonreduced_example() {
        let r = RingContext::indexed("x", 3).unwrap();
        let u = parse_ideal(&r, "[x1, x3^2]")
            .unwrap()
            .intersect(&parse_ideal(&r, "[x2^2, x3]").unwrap());
        let i = parse_ideal(&r, "[x1^2*x2^2]").unwrap();
        let sel = select(&r, &u, &i).unwrap();
        assert_eq!(sel.prime, MonomialPrime::from_indices(3, &[0]));
        assert!(sel.scanned.is_none());
        // both primary components of I fail
        for q in ["[x1^2]", "[x2^2]"] {
            let q = parse_ideal(&r, q).unwrap();
            let rep = pair_depth(&r, &u, &u.intersect(&q)).unwrap();
            assert!(!rep.is_cm);
        }
    }

    #[test]
    fn single_prime_and_domain_errors() {
        let r = RingContext::indexed("x", 3).unwrap();
        let i = parse_ideal(&r, "[x1]").unwrap();
        let u = parse_ideal(&r, "[x1, x2]").unwrap();
        assert_eq!(select_cm2_prime(&r, &u, &i).unwrap(), MonomialPrime::from_indices(3, &[0]));
        let bad = parse_ideal(&r, "[x1, x2, x3]").unwrap();
        assert_eq!(select_cm2_prime(&r, &bad, &i).unwrap_err().kind(), "domain");
    }
}
