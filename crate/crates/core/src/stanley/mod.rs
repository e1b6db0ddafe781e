//! Stanley decompositions `J \ I = ⊔ u_i K[Z_i]` of monomial modules `J/I`.

mod exact;
mod pipeline;

use std::collections::HashMap;

use serde::{Deserialize, Serialize};

use crate::depth::QuotientModule;
use crate::error::{Error, Result};
use crate::filtration::{check_filtration, PrimeFiltration};
use crate::monomial::{box_points, join_exponents, Monomial, MonomialIdeal};
use crate::ring::{RingContext, VarSet};

pub use exact::{sdepth_exact, sdepth_exact_with, CharacteristicPoset, SdepthOptions, SdepthResult};
pub use pipeline::{stanley_n5, stanley_n5_with, StanleyCertificate, StanleyReport};

/// The space `u·K[Z]`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct StanleySpace {
    pub u: Monomial,
    pub z: VarSet,
}

impl StanleySpace {
    pub fn new(u: Monomial, z: VarSet) -> Self {
        StanleySpace { u, z }
    }

    pub fn contains(&self, m: &Monomial) -> bool {
        self.u.divides(m) && (0..m.nvars()).all(|i| self.z.contains(i) || m.exp(i) == self.u.exp(i))
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct StanleyDecomposition {
    pub module: QuotientModule,
    pub spaces: Vec<StanleySpace>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum DefectKind {
    /// A monomial covered by two spaces.
    Overlap,
    /// A monomial of `J \ I` covered by no space.
    Gap,
    /// A space monomial outside `J \ I`.
    Stray,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct DecompositionDefect {
    pub kind: DefectKind,
    pub witness: Monomial,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct DecompositionVerdict {
    pub valid: bool,
    /// `min |Z_i|`; `None` for the empty decomposition.
    pub sdepth: Option<usize>,
    pub defect: Option<DecompositionDefect>,
}

impl StanleyDecomposition {
    pub fn new(module: QuotientModule, spaces: Vec<StanleySpace>) -> Self {
        StanleyDecomposition { module, spaces }
    }

    pub fn sdepth(&self) -> Option<usize> {
        self.spaces.iter().map(|s| s.z.len()).min()
    }

    /// Box checked by [`verify_decomposition`]: one past the generator join of
    /// the module and of every space generator.
    pub fn verification_bound(&self) -> Vec<u32> {
        let mut g = self.module.exponent_bound();
        for s in &self.spaces {
            g = join_exponents(&g, s.u.exps());
        }
        g.iter().map(|e| e + 1).collect()
    }
}

/// Checks disjointness and exact coverage of `J \ I` on the verification box.
/// Past the generator join both sides are constant along each axis, so the
/// box decides validity.
pub fn verify_decomposition(d: &StanleyDecomposition) -> DecompositionVerdict {
    let n = d.module.nvars();
    let fail = |kind, witness| DecompositionVerdict {
        valid: false,
        sdepth: d.sdepth(),
        defect: Some(DecompositionDefect { kind, witness }),
    };
    let bound = d.verification_bound();
    let mut owner: HashMap<Monomial, usize> = HashMap::new();
    for (i, s) in d.spaces.iter().enumerate() {
        if s.u.nvars() != n || s.z.iter().any(|j| j >= n) {
            return fail(DefectKind::Stray, s.u.clone());
        }
        let mut local = bound.clone();
        let mut offset = s.u.exps().to_vec();
        for j in 0..n {
            if s.z.contains(j) {
                local[j] = bound[j] - s.u.exp(j);
            } else {
                local[j] = 0;
            }
        }
        for step in box_points(&local) {
            for j in 0..n {
                offset[j] = s.u.exp(j) + step.exp(j);
            }
            let m = Monomial::new(offset.clone());
            if !d.module.has_monomial(&m) {
                return fail(DefectKind::Stray, m);
            }
            if owner.insert(m.clone(), i).is_some() {
                return fail(DefectKind::Overlap, m);
            }
        }
    }
    for m in box_points(&bound) {
        if d.module.has_monomial(&m) && !owner.contains_key(&m) {
            return fail(DefectKind::Gap, m);
        }
    }
    DecompositionVerdict {
        valid: true,
        sdepth: d.sdepth(),
        defect: None,
    }
}

pub fn check_decomposition(d: &StanleyDecomposition) -> Result<DecompositionVerdict> {
    let v = verify_decomposition(d);
    match &v.defect {
        None => Ok(v),
        Some(defect) => Err(Error::InvalidDecomposition(format!(
            "{:?} at {:?}",
            defect.kind,
            defect.witness.exps()
        ))),
    }
}

/// Each step `(x^a, P)` contributes `x^a K[Z]` with `Z` the variables outside `P`.
pub fn decomposition_from_filtration(f: &PrimeFiltration) -> Result<StanleyDecomposition> {
    check_filtration(f)?;
    let spaces = f
        .steps
        .iter()
        .map(|s| StanleySpace::new(s.generator.clone(), s.prime.free_vars()))
        .collect();
    Ok(StanleyDecomposition::new(f.base.clone(), spaces))
}

/// Decomposition of `J/I` from one of `J/J′` and one of `J′/I`.
pub fn glue(quotient: &StanleyDecomposition, sub: &StanleyDecomposition) -> Result<StanleyDecomposition> {
    if quotient.module.ring != sub.module.ring {
        return Err(Error::RingMismatch {
            expected: quotient.module.nvars(),
            found: sub.module.nvars(),
        });
    }
    if quotient.module.lower != sub.module.upper {
        return Err(Error::Precondition(
            "the quotient's lower ideal differs from the submodule's upper ideal".into(),
        ));
    }
    let module = QuotientModule::new(
        quotient.module.ring.clone(),
        quotient.module.upper.clone(),
        sub.module.lower.clone(),
    )?;
    let spaces = sub.spaces.iter().chain(&quotient.spaces).cloned().collect();
    Ok(StanleyDecomposition::new(module, spaces))
}

/// For `I = (x^{a_1}y^{b_1}, …, x^{a_s}y^{b_s})`, `a_1 > … > a_s`:
/// `x^{a_s}y^{b_s}K[x,y] ⊕ ⊕_i ⊕_{b_i ≤ j < b_{i+1}} x^{a_i}y^j K[x]`, as a
/// decomposition of the module `I/0`.
pub fn two_var_ideal_decomposition(ring: &RingContext, ideal: &MonomialIdeal) -> Result<StanleyDecomposition> {
    if ring.nvars() != 2 {
        return Err(Error::Domain(format!(
            "the two-variable formula needs 2 variables, the ring has {}",
            ring.nvars()
        )));
    }
    let module = QuotientModule::new(ring.clone(), ideal.clone(), MonomialIdeal::zero(2))?;
    if ideal.is_zero() {
        return Ok(StanleyDecomposition::new(module, vec![]));
    }
    let mut corners: Vec<(u32, u32)> = ideal.gens().iter().map(|g| (g.exp(0), g.exp(1))).collect();
    corners.sort_by_key(|c| std::cmp::Reverse(c.0));
    let s = corners.len();
    let (x, both) = (VarSet::singleton(0), VarSet::full(2));
    let mut spaces = vec![StanleySpace::new(Monomial::new(vec![corners[s - 1].0, corners[s - 1].1]), both)];
    for i in 0..s - 1 {
        let (a, b) = corners[i];
        for j in b..corners[i + 1].1 {
            spaces.push(StanleySpace::new(Monomial::new(vec![a, j]), x));
        }
    }
    Ok(StanleyDecomposition::new(module, spaces))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::syntax::{parse_ideal, parse_monomial};

    fn space(r: &RingContext, u: &str, z: &str) -> StanleySpace {
        let vars = VarSet::from_indices(z.chars().map(|c| r.index_of(&c.to_string()).unwrap()));
        StanleySpace::new(parse_monomial(r, u).unwrap(), vars)
    }

    #[test]
    fn glued_decomposition_of_mixed_ideal() {
        let r = RingContext::from_letters("xyzw").unwrap();
        let i1 = parse_ideal(&r, "[x*z, x*w, y*z]").unwrap();
        let d1 = StanleyDecomposition::new(
            QuotientModule::cyclic(r.clone(), i1.clone()).unwrap(),
            vec![space(&r, "1", "xy"), space(&r, "w", "yw"), space(&r, "z", "wz")],
        );
        let v = verify_decomposition(&d1);
        assert!(v.valid, "{:?}", v.defect);
        assert_eq!(v.sdepth, Some(2));

        let i = parse_ideal(&r, "[x^2*z, x^2*w, y*z, x*y*w]").unwrap();
        let d2 = StanleyDecomposition::new(
            QuotientModule::new(r.clone(), i1, i).unwrap(),
            vec![space(&r, "x*z", "zw"), space(&r, "x*w", "w")],
        );
        let v = verify_decomposition(&d2);
        assert!(v.valid, "{:?}", v.defect);
        let glued = glue(&d1, &d2).unwrap();
        assert_eq!(verify_decomposition(&glued).sdepth, Some(1));
    }

    #[test]
    fn defects_have_witnesses() {
        let r = RingContext::from_letters("xy").unwrap();
        let m = QuotientModule::cyclic(r.clone(), parse_ideal(&r, "[x*y]").unwrap()).unwrap();
        let overlap = StanleyDecomposition::new(m.clone(), vec![space(&r, "1", "x"), space(&r, "1", "y")]);
        let v = verify_decomposition(&overlap);
        assert_eq!(v.defect.unwrap(), DecompositionDefect { kind: DefectKind::Overlap, witness: Monomial::one(2) });
        let gap = StanleyDecomposition::new(m.clone(), vec![space(&r, "1", "x")]);
        assert_eq!(verify_decomposition(&gap).defect.unwrap().kind, DefectKind::Gap);
        let stray = StanleyDecomposition::new(m, vec![space(&r, "1", "xy")]);
        assert_eq!(verify_decomposition(&stray).defect.unwrap().witness, Monomial::new(vec![1, 1]));
    }

    #[test]
    fn two_variable_formula() {
        let r = RingContext::from_letters("xy").unwrap();
        for (text, sdepth, count) in [("[x]", 2, 1), ("[x, y]", 1, 2), ("[x^3, x*y, y^2]", 1, 3)] {
            let d = two_var_ideal_decomposition(&r, &parse_ideal(&r, text).unwrap()).unwrap();
            let v = verify_decomposition(&d);
            assert!(v.valid, "{text}: {:?}", v.defect);
            assert_eq!(v.sdepth, Some(sdepth));
            assert_eq!(d.spaces.len(), count);
        }
        let r3 = RingContext::from_letters("xyz").unwrap();
        let err = two_var_ideal_decomposition(&r3, &parse_ideal(&r3, "[x]").unwrap()).unwrap_err();
        assert_eq!(err.kind(), "domain");
    }

    #[test]
    fn glue_rejects_mismatch_and_accepts_empty() {
        let r = RingContext::from_letters("xy").unwrap();
        let i = parse_ideal(&r, "[x]").unwrap();
        let q = StanleyDecomposition::new(QuotientModule::cyclic(r.clone(), i.clone()).unwrap(), vec![space(&r, "1", "y")]);
        let empty = StanleyDecomposition::new(QuotientModule::new(r.clone(), i.clone(), i.clone()).unwrap(), vec![]);
        assert_eq!(glue(&q, &empty).unwrap(), q);
        let other = StanleyDecomposition::new(QuotientModule::cyclic(r.clone(), i).unwrap(), vec![]);
        assert_eq!(glue(&q, &other).unwrap_err().kind(), "precondition");
    }
}
