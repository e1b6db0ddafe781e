//! Cross-checks against brute-force oracles that share no code path with the
//! engine beyond monomial membership.

use stanley_core::depth::{module_associated_primes, module_dimension, QuotientModule};
use stanley_core::filtration::{build_clean_cm2, verify_filtration, PrimeFiltration};
use stanley_core::monomial::box_points;
use stanley_core::random::{instance_rng, random_ideal, IdealModel};
use stanley_core::stanley::{
    decomposition_from_filtration, sdepth_exact, stanley_n5, two_var_ideal_decomposition, verify_decomposition,
    StanleyDecomposition,
};
use stanley_core::syntax::parse_ideal;
use stanley_core::{Monomial, MonomialIdeal, RingContext, VarSet};

fn ideal(r: &RingContext, s: &str) -> MonomialIdeal {
    parse_ideal(r, s).unwrap()
}

fn binomial(n: u64, k: u64) -> u64 {
    (0..k).fold(1, |acc, i| acc * (n - i) / (i + 1))
}

/// Monomials of degree `t` in `u K[Z]`.
fn space_count(u: &Monomial, z: VarSet, t: u64) -> u64 {
    let d = u.degree();
    if t < d {
        return 0;
    }
    let free = z.len() as u64;
    if free == 0 {
        return u64::from(t == d);
    }
    binomial(t - d + free - 1, free - 1)
}

/// Monomials of degree `t` in `J \ I`, by enumeration.
fn module_count(m: &QuotientModule, t: u64) -> u64 {
    let n = m.nvars();
    box_points(&vec![t as u32; n])
        .filter(|a| a.degree() == t && m.has_monomial(a))
        .count() as u64
}

/// Compares graded counts of the module and of the decomposition up to `top`.
fn hilbert_agrees(d: &StanleyDecomposition, top: u64) -> bool {
    (0..=top).all(|t| {
        let spaces: u64 = d.spaces.iter().map(|s| space_count(&s.u, s.z, t)).sum();
        spaces == module_count(&d.module, t)
    })
}

/// `dim J/I` as the largest `Z` along which some monomial of `J \ I` in the
/// box stays outside `I` after a high power of `x_Z`.
fn brute_dimension(m: &QuotientModule) -> usize {
    let n = m.nvars();
    let g = m.exponent_bound();
    let mut best = 0;
    for mask in 0u64..(1 << n) {
        let z = VarSet(mask);
        if z.len() <= best {
            continue;
        }
        let reach = box_points(&g).any(|a| {
            let far: Vec<u32> = (0..n).map(|j| a.exp(j) + if z.contains(j) { g[j] + 1 } else { 0 }).collect();
            m.has_monomial(&a) && m.has_monomial(&Monomial::new(far))
        });
        if reach {
            best = z.len();
        }
    }
    best
}

#[test]
fn dimension_of_principal_extension() {
    let r = RingContext::indexed("x", 4).unwrap();
    let model = IdealModel {
        nvars: 4,
        max_degree: 3,
        generators: 4,
    };
    for index in 0..40 {
        let i = random_ideal(&mut instance_rng(31, index), &model).unwrap();
        let u = Monomial::new(vec![1, 0, (index % 2) as u32, 1]);
        if i.contains(&u) {
            continue;
        }
        let m = QuotientModule::new(r.clone(), i.add_gen(u.clone()), i.clone()).unwrap();
        let dim = module_dimension(&m).unwrap();
        assert_eq!(dim, brute_dimension(&m), "I = {:?}", i.gens());
        let cyclic = QuotientModule::cyclic(r.clone(), i.colon(&u)).unwrap();
        assert_eq!(dim, brute_dimension(&cyclic));
    }
}

#[test]
fn pipeline_decompositions_match_hilbert_counts() {
    for n in 3..=5 {
        let r = RingContext::indexed("x", n).unwrap();
        let model = IdealModel {
            nvars: n,
            max_degree: 3,
            generators: 5,
        };
        for index in 0..12 {
            let i = random_ideal(&mut instance_rng(32, index), &model).unwrap();
            let cert = stanley_n5(&r, &i).unwrap();
            assert!(verify_decomposition(&cert.decomposition).valid);
            assert!(hilbert_agrees(&cert.decomposition, 7), "n = {n}, I = {:?}", i.gens());
        }
    }
}

#[test]
fn two_variable_formula_against_counts_and_search() {
    let r = RingContext::from_letters("xy").unwrap();
    let i = ideal(&r, "[x^3, x*y, y^2]");
    let d = two_var_ideal_decomposition(&r, &i).unwrap();
    assert!(hilbert_agrees(&d, 9));
    assert_eq!(verify_decomposition(&d).sdepth, Some(1));
    let exact = sdepth_exact(&d.module).unwrap();
    assert_eq!(exact.value, 1);
    assert!(hilbert_agrees(&exact.witness, 9));
}

/// Whether the points of `J \ I` in `[0, g]` split into intervals `[c, d]`
/// with at least `s` coordinates of `d` equal to `g`, trying every interval.
fn partition_exists(m: &QuotientModule, s: usize) -> bool {
    let g = m.exponent_bound();
    let n = g.len();
    let points: Vec<Monomial> = box_points(&g).filter(|a| m.has_monomial(a)).collect();
    let index = |a: &Monomial| points.iter().position(|p| p == a);
    let rho = |d: &Monomial| (0..n).filter(|&j| d.exp(j) == g[j]).count();
    fn cover(used: &mut Vec<bool>, intervals: &dyn Fn(usize) -> Vec<Vec<usize>>) -> bool {
        let Some(first) = used.iter().position(|u| !u) else { return true };
        for cells in intervals(first) {
            if cells.iter().any(|&c| used[c]) {
                continue;
            }
            cells.iter().for_each(|&c| used[c] = true);
            if cover(used, intervals) {
                return true;
            }
            cells.iter().for_each(|&c| used[c] = false);
        }
        false
    }
    let intervals = |c: usize| -> Vec<Vec<usize>> {
        let lo = &points[c];
        points
            .iter()
            .filter(|d| lo.divides(d) && rho(d) >= s)
            .filter_map(|d| {
                let span: Vec<u32> = (0..n).map(|j| d.exp(j) - lo.exp(j)).collect();
                box_points(&span)
                    .map(|step| index(&Monomial::new((0..n).map(|j| lo.exp(j) + step.exp(j)).collect())))
                    .collect::<Option<Vec<usize>>>()
            })
            .collect()
    };
    let mut used = vec![false; points.len()];
    cover(&mut used, &intervals)
}

#[test]
fn mixed_ideal_exact_sdepth() {
    let r = RingContext::from_letters("xyzw").unwrap();
    let m = QuotientModule::cyclic(r.clone(), ideal(&r, "[x^2*z, x^2*w, y*z, x*y*w]")).unwrap();
    let exact = sdepth_exact(&m).unwrap();
    assert!(hilbert_agrees(&exact.witness, 8));
    let bound = module_associated_primes(&m).unwrap().iter().map(|p| p.dim()).min().unwrap();
    assert_eq!(bound, 2);
    assert!(partition_exists(&m, exact.value));
    assert!(!partition_exists(&m, exact.value + 1));
    assert_eq!(exact.value, 1);
}

#[test]
fn exact_search_matches_unrestricted_partitions() {
    let r = RingContext::indexed("x", 3).unwrap();
    let model = IdealModel {
        nvars: 3,
        max_degree: 2,
        generators: 3,
    };
    for index in 0..25 {
        let i = random_ideal(&mut instance_rng(33, index), &model).unwrap();
        let m = QuotientModule::cyclic(r.clone(), i.clone()).unwrap();
        let exact = sdepth_exact(&m).unwrap();
        assert!(partition_exists(&m, exact.value), "I = {:?}", i.gens());
        assert!(!partition_exists(&m, exact.value + 1), "I = {:?}", i.gens());
    }
}

#[test]
fn filtration_factors_match_hilbert_counts() {
    let r = RingContext::indexed("x", 3).unwrap();
    let u = ideal(&r, "[x1, x3^2]").intersect(&ideal(&r, "[x2, x3]"));
    let i = ideal(&r, "[x1*x2]");
    let f: PrimeFiltration = build_clean_cm2(&r, &u, &i).unwrap();
    assert!(verify_filtration(&f).clean);
    let d = decomposition_from_filtration(&f).unwrap();
    assert!(hilbert_agrees(&d, 8));
}
