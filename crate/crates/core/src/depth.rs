//! Depth, dimension and Cohen-Macaulay tests for modules `J/I`.
//!
//! Depth comes from multigraded Koszul homology: `depth M = n - max{i : H_i(x; M) ≠ 0}`.
//! Each multidegree strand is a complex of 0/1-dimensional pieces, so the
//! differentials are signed incidence matrices whose ranks are computed exactly.

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::decomposition::{dimension_filtration_ideals, quotient_dim, MonomialPrime};
use crate::error::{Error, Result};
use crate::linalg::Field;
use crate::monomial::{box_points, join_exponents, Monomial, MonomialIdeal};
use crate::ring::{RingContext, VarSet};

/// The module `J/I` for monomial ideals `I ⊆ J`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct QuotientModule {
    pub ring: RingContext,
    pub upper: MonomialIdeal,
    pub lower: MonomialIdeal,
}

impl QuotientModule {
    pub fn new(ring: RingContext, upper: MonomialIdeal, lower: MonomialIdeal) -> Result<Self> {
        for ideal in [&upper, &lower] {
            if ideal.nvars() != ring.nvars() {
                return Err(Error::RingMismatch {
                    expected: ring.nvars(),
                    found: ideal.nvars(),
                });
            }
        }
        if !lower.is_subset(&upper) {
            return Err(Error::Precondition("I is not contained in J".into()));
        }
        Ok(QuotientModule { ring, upper, lower })
    }

    /// `S/I`.
    pub fn cyclic(ring: RingContext, lower: MonomialIdeal) -> Result<Self> {
        let unit = MonomialIdeal::unit(ring.nvars());
        Self::new(ring, unit, lower)
    }

    pub fn nvars(&self) -> usize {
        self.ring.nvars()
    }

    pub fn is_zero(&self) -> bool {
        self.upper == self.lower
    }

    /// `Ann(J/I) = (I : J)`.
    pub fn annihilator(&self) -> MonomialIdeal {
        self.lower.colon_ideal(&self.upper)
    }

    /// Join of all generator exponents of `I` and `J`.
    pub fn exponent_bound(&self) -> Vec<u32> {
        join_exponents(&self.upper.exponent_join(), &self.lower.exponent_join())
    }

    /// Whether `x^a` is a nonzero element of `J/I`.
    pub fn has_monomial(&self, m: &Monomial) -> bool {
        self.upper.contains(m) && !self.lower.contains(m)
    }

    pub fn field(&self) -> Field {
        Field::from_characteristic(self.ring.characteristic())
    }

    fn require_nonzero(&self, what: &str) -> Result<()> {
        if self.is_zero() {
            Err(Error::Domain(format!("{what} of the zero module")))
        } else {
            Ok(())
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct DepthOptions {
    /// Strands are evaluated on `0 ≤ a ≤ g + margin`.
    pub margin: u32,
    /// Recompute on the doubled box `0 ≤ a ≤ 2g + 2` and fail on disagreement.
    pub doubled_box_check: bool,
    pub parallel: bool,
}

impl Default for DepthOptions {
    fn default() -> Self {
        DepthOptions {
            margin: 1,
            doubled_box_check: false,
            parallel: true,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct DepthReport {
    pub depth: usize,
    pub dim: usize,
    pub is_cm: bool,
    /// Largest `i` with `H_i(x; M) ≠ 0`.
    pub koszul_top_degree: usize,
    pub field_char: u64,
}

pub fn koszul_depth(module: &QuotientModule) -> Result<DepthReport> {
    koszul_depth_with(module, DepthOptions::default())
}

pub fn koszul_depth_with(module: &QuotientModule, opts: DepthOptions) -> Result<DepthReport> {
    module.require_nonzero("depth")?;
    let n = module.nvars();
    let g = module.exponent_bound();
    let bound: Vec<u32> = g.iter().map(|&e| e + opts.margin).collect();
    let top = top_koszul_degree(module, &bound, opts.parallel);
    if opts.doubled_box_check {
        let wide: Vec<u32> = g.iter().map(|&e| 2 * e + 2).collect();
        let wide_top = top_koszul_degree(module, &wide, opts.parallel);
        if wide_top != top {
            return Err(Error::cert(
                "koszul box",
                format!("top homology degree {top:?} on the box, {wide_top:?} on the doubled box"),
            ));
        }
    }
    let top = top.ok_or_else(|| Error::cert("koszul", "no homology found for a nonzero module"))?;
    let depth = n - top;
    let dim = module_dimension(module)?;
    if depth > dim {
        return Err(Error::cert(
            "koszul",
            format!("depth {depth} exceeds dimension {dim}"),
        ));
    }
    Ok(DepthReport {
        depth,
        dim,
        is_cm: depth == dim,
        koszul_top_degree: top,
        field_char: module.ring.characteristic(),
    })
}

/// `depth S/I`.
pub fn quotient_depth(ring: &RingContext, ideal: &MonomialIdeal) -> Result<usize> {
    Ok(koszul_depth(&QuotientModule::cyclic(ring.clone(), ideal.clone())?)?.depth)
}

/// `depth J/I`.
pub fn pair_depth(ring: &RingContext, upper: &MonomialIdeal, lower: &MonomialIdeal) -> Result<DepthReport> {
    koszul_depth(&QuotientModule::new(ring.clone(), upper.clone(), lower.clone())?)
}

fn top_koszul_degree(module: &QuotientModule, bound: &[u32], parallel: bool) -> Option<usize> {
    let points: Vec<Monomial> = box_points(bound).collect();
    let field = module.field();
    if parallel {
        points
            .par_iter()
            .filter_map(|a| strand_top_degree(module, field, a))
            .max()
    } else {
        points
            .iter()
            .filter_map(|a| strand_top_degree(module, field, a))
            .max()
    }
}

/// Largest homological degree with nonzero homology in the strand of degree `a`.
fn strand_top_degree(module: &QuotientModule, field: Field, a: &Monomial) -> Option<usize> {
    let supp: Vec<usize> = a.support().to_vec();
    let s = supp.len();
    // basis of K_i in degree a: subsets F of supp(a), |F| = i, with x^{a - e_F} ∈ J \ I
    let mut present = vec![false; 1 << s];
    let mut by_size: Vec<Vec<u32>> = vec![Vec::new(); s + 1];
    for mask in 0u32..(1 << s) {
        let mut exps = a.exps().to_vec();
        for (bit, &v) in supp.iter().enumerate() {
            if mask >> bit & 1 == 1 {
                exps[v] -= 1;
            }
        }
        if module.has_monomial(&Monomial::new(exps)) {
            present[mask as usize] = true;
            by_size[mask.count_ones() as usize].push(mask);
        }
    }
    let highest = (0..=s).rev().find(|&i| !by_size[i].is_empty())?;
    let mut index = vec![usize::MAX; 1 << s];
    for masks in &by_size {
        for (k, &m) in masks.iter().enumerate() {
            index[m as usize] = k;
        }
    }
    // rank of d_i : K_i -> K_{i-1}
    let rank = |i: usize| -> usize {
        if i == 0 || i > s || by_size[i].is_empty() || by_size[i - 1].is_empty() {
            return 0;
        }
        let rows: Vec<Vec<(usize, i64)>> = by_size[i]
            .iter()
            .map(|&mask| {
                let mut row = Vec::new();
                let mut pos = 0;
                for bit in 0..s {
                    if mask >> bit & 1 == 1 {
                        let target = mask & !(1 << bit);
                        if present[target as usize] {
                            let sign = if pos % 2 == 0 { 1 } else { -1 };
                            row.push((index[target as usize], sign));
                        }
                        pos += 1;
                    }
                }
                row
            })
            .collect();
        field.rank(&rows)
    };
    let mut rank_above = rank(highest + 1);
    for i in (0..=highest).rev() {
        let r = rank(i);
        if by_size[i].len() > r + rank_above {
            return Some(i);
        }
        rank_above = r;
    }
    None
}

/// `dim J/I = dim S/(I : J)`.
pub fn module_dimension(module: &QuotientModule) -> Result<usize> {
    module.require_nonzero("dimension")?;
    let d = quotient_dim(&module.annihilator())?;
    Ok(d as usize)
}

/// Primes `(I : x^a)` over monomials `x^a ∈ J \ I`, in canonical order.
pub fn module_associated_primes(module: &QuotientModule) -> Result<Vec<MonomialPrime>> {
    module.require_nonzero("associated primes")?;
    let n = module.nvars();
    let mut primes: Vec<MonomialPrime> = box_points(&module.exponent_bound())
        .filter(|m| module.has_monomial(m))
        .filter_map(|m| {
            let colon = module.lower.colon(&m);
            if colon.is_zero() {
                Some(MonomialPrime::new(n, VarSet::EMPTY))
            } else {
                colon.as_prime().map(|v| MonomialPrime::new(n, v))
            }
        })
        .collect();
    primes.sort();
    primes.dedup();
    Ok(primes)
}

/// `depth S/I` for squarefree `I` from Hochster's formula: the graded Betti
/// number in degree `σ` is the reduced homology of the induced subcomplex
/// of the Stanley-Reisner complex on `σ`, in degree `|σ| - i - 1`.
pub fn hochster_depth_squarefree(ideal: &MonomialIdeal, characteristic: u64) -> Result<usize> {
    if !ideal.is_proper_nonzero() {
        return Err(Error::Precondition("Hochster depth needs a proper nonzero ideal".into()));
    }
    if !ideal.is_squarefree() {
        return Err(Error::Precondition("Hochster depth needs a squarefree ideal".into()));
    }
    let n = ideal.nvars();
    Ok(n - projective_dimension_squarefree(ideal, Field::from_characteristic(characteristic)))
}

fn projective_dimension_squarefree(ideal: &MonomialIdeal, field: Field) -> usize {
    // Betti numbers live on the lcm lattice of the generators
    let supports: Vec<VarSet> = ideal.gens().iter().map(Monomial::support).collect();
    let mut lattice = vec![VarSet::EMPTY];
    for &s in &supports {
        let extra: Vec<VarSet> = lattice.iter().map(|l| l.union(s)).collect();
        lattice.extend(extra);
        lattice.sort();
        lattice.dedup();
    }
    lattice
        .par_iter()
        .map(|&sigma| {
            let size = sigma.len();
            let h = reduced_homology(ideal, sigma, field);
            // β_{i,σ} = dim H̃_{|σ|-i-1} = h[|σ| - i]
            h.iter()
                .enumerate()
                .filter(|(_, &dim)| dim > 0)
                .map(|(k, _)| size - k)
                .max()
                .unwrap_or(0)
        })
        .max()
        .unwrap_or(0)
}

/// Reduced homology dimensions of the induced subcomplex on `sigma`;
/// entry `k` holds `dim H̃_{k-1}`.
fn reduced_homology(ideal: &MonomialIdeal, sigma: VarSet, field: Field) -> Vec<usize> {
    let verts = sigma.to_vec();
    let s = verts.len();
    let n = ideal.nvars();
    let is_face = |mask: u32| {
        let set = VarSet::from_indices((0..s).filter(|b| mask >> b & 1 == 1).map(|b| verts[b]));
        !ideal.contains(&Monomial::squarefree(n, set))
    };
    // faces by cardinality k = dimension + 1, the empty face included
    let mut by_size: Vec<Vec<u32>> = vec![Vec::new(); s + 1];
    let mut present = vec![false; 1 << s];
    for mask in 0u32..(1 << s) {
        if is_face(mask) {
            present[mask as usize] = true;
            by_size[mask.count_ones() as usize].push(mask);
        }
    }
    let mut index = vec![usize::MAX; 1 << s];
    for faces in &by_size {
        for (k, &m) in faces.iter().enumerate() {
            index[m as usize] = k;
        }
    }
    let rank = |k: usize| -> usize {
        if k == 0 || k > s || by_size[k].is_empty() {
            return 0;
        }
        let rows: Vec<Vec<(usize, i64)>> = by_size[k]
            .iter()
            .map(|&mask| {
                let mut row = Vec::new();
                let mut pos = 0;
                for bit in 0..s {
                    if mask >> bit & 1 == 1 {
                        let target = mask & !(1 << bit);
                        debug_assert!(present[target as usize]);
                        row.push((index[target as usize], if pos % 2 == 0 { 1 } else { -1 }));
                        pos += 1;
                    }
                }
                row
            })
            .collect();
        field.rank(&rows)
    };
    let ranks: Vec<usize> = (0..=s + 1).map(rank).collect();
    (0..=s)
        .map(|k| by_size[k].len() - ranks[k] - ranks[k + 1])
        .collect()
}

/// Cohen-Macaulay test of every nonzero factor of the dimension filtration.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SequentialCmReport {
    pub verdict: bool,
    pub factors: Vec<FactorReport>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct FactorReport {
    pub k: usize,
    pub upper: MonomialIdeal,
    pub lower: MonomialIdeal,
    pub report: DepthReport,
}

pub fn is_sequentially_cm(ring: &RingContext, ideal: &MonomialIdeal) -> Result<SequentialCmReport> {
    let df = dimension_filtration_ideals(ideal)?;
    let mut factors = Vec::new();
    for k in 0..=df.dim() {
        if df.factor_is_zero(k) {
            continue;
        }
        let (upper, lower) = df.factor(k);
        let report = pair_depth(ring, upper, lower)?;
        factors.push(FactorReport {
            k,
            upper: upper.clone(),
            lower: lower.clone(),
            report,
        });
    }
    Ok(SequentialCmReport {
        verdict: factors.iter().all(|f| f.report.is_cm),
        factors,
    })
}
