//! Exact Stanley depth by interval partitions of the characteristic poset.
//!
//! For `g` dominating all generator exponents, `sdepth J/I` is the largest
//! `s` such that the points `{a ≤ g : x^a ∈ J \ I}` split into intervals
//! `[c, d]` with `ρ(d) = |{j : d_j = g_j}| ≥ s`. Splitting intervals along
//! coordinates reduces any such partition to one whose intervals are
//! `[c, c + Σ_{j∈Z} (g_j - c_j) e_j]` with `|Z ∪ F_c| = s` (where
//! `F_c = {j : c_j = g_j}`) or single points with `|F_c| ≥ s`. Each becomes
//! the space `x^c K[Z ∪ F_c]`.

use std::collections::HashSet;

use serde::{Deserialize, Serialize};

use super::{StanleyDecomposition, StanleySpace};
use crate::depth::{module_associated_primes, QuotientModule};
use crate::error::{Error, Result};
use crate::monomial::Monomial;
use crate::ring::VarSet;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct SdepthOptions {
    /// Largest box `∏ (g_i + 1)` accepted.
    pub point_cap: usize,
    /// Search nodes per threshold.
    pub node_cap: usize,
}

impl Default for SdepthOptions {
    fn default() -> Self {
        SdepthOptions {
            point_cap: 4096,
            node_cap: 200_000,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SdepthResult {
    pub value: usize,
    pub witness: StanleyDecomposition,
    /// Search nodes over all thresholds tried.
    pub nodes: usize,
}

/// Points of `J \ I` in the box `[0, g]`, indexed in mixed radix so that
/// `a ≤ b` implies `index(a) ≤ index(b)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CharacteristicPoset {
    pub bound: Vec<u32>,
    member: Vec<bool>,
    stride: Vec<usize>,
}

impl CharacteristicPoset {
    pub fn new(module: &QuotientModule, point_cap: usize) -> Result<Self> {
        let bound = module.exponent_bound();
        let mut stride = Vec::with_capacity(bound.len());
        let mut size = 1usize;
        for &g in &bound {
            stride.push(size);
            size = size
                .checked_mul(g as usize + 1)
                .filter(|&s| s <= point_cap)
                .ok_or_else(|| Error::Infeasible(format!("characteristic poset exceeds {point_cap} box points")))?;
        }
        let mut poset = CharacteristicPoset {
            bound,
            member: vec![false; size],
            stride,
        };
        for idx in 0..size {
            poset.member[idx] = module.has_monomial(&poset.point(idx));
        }
        Ok(poset)
    }

    pub fn box_size(&self) -> usize {
        self.member.len()
    }

    pub fn points(&self) -> impl Iterator<Item = Monomial> + '_ {
        (0..self.box_size()).filter(|&i| self.member[i]).map(|i| self.point(i))
    }

    pub fn len(&self) -> usize {
        self.member.iter().filter(|&&b| b).count()
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    fn point(&self, idx: usize) -> Monomial {
        let exps = self
            .bound
            .iter()
            .zip(&self.stride)
            .map(|(&g, &s)| ((idx / s) % (g as usize + 1)) as u32)
            .collect();
        Monomial::new(exps)
    }

    fn at_top(&self, a: &Monomial) -> VarSet {
        VarSet::from_indices((0..self.bound.len()).filter(|&j| a.exp(j) == self.bound[j]))
    }

    /// Box indices of `[a, a + Σ_{j∈Z}(g_j - a_j) e_j]`.
    fn interval(&self, a: &Monomial, z: VarSet) -> Vec<usize> {
        let base: usize = (0..self.bound.len()).map(|j| a.exp(j) as usize * self.stride[j]).sum();
        let mut out = vec![base];
        for j in z.iter() {
            let extra = (self.bound[j] - a.exp(j)) as usize;
            let prev = out.clone();
            for t in 1..=extra {
                out.extend(prev.iter().map(|&i| i + t * self.stride[j]));
            }
        }
        out
    }
}

struct Partition<'a> {
    poset: &'a CharacteristicPoset,
    target: usize,
    failed: HashSet<Vec<u64>>,
    nodes: usize,
    cap: usize,
}

fn subsets_of_size(from: VarSet, k: usize) -> Vec<VarSet> {
    let vars = from.to_vec();
    let mut out = Vec::new();
    let mut pick = Vec::new();
    fn rec(vars: &[usize], k: usize, start: usize, pick: &mut Vec<usize>, out: &mut Vec<VarSet>) {
        if pick.len() == k {
            out.push(VarSet::from_indices(pick.iter().copied()));
            return;
        }
        for i in start..vars.len() {
            pick.push(vars[i]);
            rec(vars, k, i + 1, pick, out);
            pick.pop();
        }
    }
    rec(&vars, k, 0, &mut pick, &mut out);
    out
}

impl Partition<'_> {
    fn covered(bits: &[u64], i: usize) -> bool {
        bits[i / 64] >> (i % 64) & 1 == 1
    }

    fn set(bits: &mut [u64], cells: &[usize], on: bool) {
        for &i in cells {
            if on {
                bits[i / 64] |= 1 << (i % 64);
            } else {
                bits[i / 64] &= !(1 << (i % 64));
            }
        }
    }

    /// Covers the remaining points; the first uncovered point in index order
    /// is the bottom of its interval.
    fn solve(&mut self, bits: &mut Vec<u64>, from: usize, chosen: &mut Vec<StanleySpace>) -> Result<bool> {
        let p = self.poset;
        let Some(idx) = (from..p.box_size()).find(|&i| p.member[i] && !Self::covered(bits, i)) else {
            return Ok(true);
        };
        if self.failed.contains(bits) {
            return Ok(false);
        }
        self.nodes += 1;
        if self.nodes > self.cap {
            return Err(Error::Infeasible(format!(
                "interval partition search exceeded {} nodes",
                self.cap
            )));
        }
        let a = p.point(idx);
        let top = p.at_top(&a);
        let n = p.bound.len();
        let options = if top.len() >= self.target {
            vec![VarSet::EMPTY]
        } else {
            subsets_of_size(top.complement(n), self.target - top.len())
        };
        for z in options {
            let cells = p.interval(&a, z);
            if cells.iter().any(|&i| !p.member[i] || Self::covered(bits, i)) {
                continue;
            }
            Self::set(bits, &cells, true);
            chosen.push(StanleySpace::new(a.clone(), z.union(top)));
            if self.solve(bits, idx + 1, chosen)? {
                return Ok(true);
            }
            chosen.pop();
            Self::set(bits, &cells, false);
        }
        self.failed.insert(bits.clone());
        Ok(false)
    }
}

/// Interval partition with every `ρ ≥ s`, as spaces, or `None`.
fn partition_at(poset: &CharacteristicPoset, s: usize, cap: usize, nodes: &mut usize) -> Result<Option<Vec<StanleySpace>>> {
    let mut search = Partition {
        poset,
        target: s,
        failed: HashSet::new(),
        nodes: 0,
        cap,
    };
    let mut bits = vec![0u64; poset.box_size().div_ceil(64)];
    let mut chosen = Vec::new();
    let found = search.solve(&mut bits, 0, &mut chosen);
    *nodes += search.nodes;
    Ok(found?.then_some(chosen))
}

pub fn sdepth_exact(module: &QuotientModule) -> Result<SdepthResult> {
    sdepth_exact_with(module, SdepthOptions::default())
}

/// Tries `s = min dim S/P` over `Ass M` downwards; the first feasible
/// threshold is the Stanley depth.
pub fn sdepth_exact_with(module: &QuotientModule, opts: SdepthOptions) -> Result<SdepthResult> {
    if module.is_zero() {
        return Err(Error::Domain("sdepth of the zero module".into()));
    }
    let poset = CharacteristicPoset::new(module, opts.point_cap)?;
    let upper = module_associated_primes(module)?
        .iter()
        .map(|p| p.dim())
        .min()
        .unwrap_or(module.nvars());
    let mut nodes = 0;
    for s in (0..=upper).rev() {
        if let Some(spaces) = partition_at(&poset, s, opts.node_cap, &mut nodes)? {
            return Ok(SdepthResult {
                value: s,
                witness: StanleyDecomposition::new(module.clone(), spaces),
                nodes,
            });
        }
    }
    Err(Error::cert("sdepth search", "no partition at threshold 0"))
}
