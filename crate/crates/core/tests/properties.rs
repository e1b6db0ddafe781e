use proptest::prelude::*;

use stanley_core::depth::{koszul_depth, module_associated_primes, pair_depth, QuotientModule};
use stanley_core::filtration::{build_fdepth1_filtration, search_filtration, verify_filtration, PrimeFiltration, SearchGoal};
use stanley_core::monomial::box_points;
use stanley_core::polarize::{reduce_ideal, reduce_step, IdealPair};
use stanley_core::stanley::{decomposition_from_filtration, sdepth_exact, stanley_n5, verify_decomposition};
use stanley_core::{Monomial, MonomialIdeal, RingContext};

fn ideal_in(n: usize, max_exp: u32, max_gens: usize) -> impl Strategy<Value = MonomialIdeal> {
    prop::collection::vec(prop::collection::vec(0..=max_exp, n), 1..=max_gens).prop_filter_map(
        "proper nonzero",
        move |rows| {
            let gens: Vec<Monomial> = rows.into_iter().map(Monomial::new).filter(|m| !m.is_one()).collect();
            let i = MonomialIdeal::new(n, gens).ok()?;
            i.is_proper_nonzero().then_some(i)
        },
    )
}

fn ring(n: usize) -> RingContext {
    RingContext::indexed("x", n).unwrap()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn lattice_operations(a in ideal_in(3, 3, 4), b in ideal_in(3, 3, 4), c in ideal_in(3, 3, 4)) {
        prop_assert_eq!(a.intersect(&b), b.intersect(&a));
        prop_assert_eq!(a.intersect(&b).intersect(&c), a.intersect(&b.intersect(&c)));
        for m in box_points(&[3, 3, 3]) {
            prop_assert_eq!(a.intersect(&b).contains(&m), a.contains(&m) && b.contains(&m));
            prop_assert_eq!(a.sum(&b).contains(&m), a.contains(&m) || b.contains(&m));
        }
    }

    #[test]
    fn colon_by_membership(a in ideal_in(3, 3, 4), u in prop::collection::vec(0u32..=2, 3)) {
        let u = Monomial::new(u);
        let colon = a.colon(&u);
        for f in box_points(&[4, 4, 4]) {
            prop_assert_eq!(colon.contains(&f), a.contains(&f.checked_mul(&u).unwrap()));
        }
    }

    #[test]
    fn depth_bounds(i in ideal_in(3, 3, 4)) {
        let m = QuotientModule::cyclic(ring(3), i.clone()).unwrap();
        let rep = koszul_depth(&m).unwrap();
        prop_assert!(rep.depth <= rep.dim);
        let ass = module_associated_primes(&m).unwrap();
        let has_max = ass.iter().any(|p| p.dim() == 0);
        prop_assert_eq!(rep.depth >= 1, !has_max);
        prop_assert!(ass.iter().all(|p| p.dim() >= rep.depth));
    }

    #[test]
    fn depth_lemma_on_pairs(i in ideal_in(3, 3, 3), extra in ideal_in(3, 2, 2)) {
        let r = ring(3);
        let u = i.sum(&extra);
        prop_assume!(u != i && !u.is_unit());
        let dui = pair_depth(&r, &u, &i).unwrap().depth;
        let dsi = pair_depth(&r, &MonomialIdeal::unit(3), &i).unwrap().depth;
        let dsu = pair_depth(&r, &MonomialIdeal::unit(3), &u).unwrap().depth;
        prop_assert!(dsu + 1 >= dui.min(dsi + 1));
    }

    #[test]
    fn reduction_reaches_squarefree(i in ideal_in(4, 3, 4)) {
        let d = i.max_degree();
        let mut pair = IdealPair::quotient_of_ring(i.clone());
        for _ in 1..d.max(1) {
            pair = reduce_step(&pair).unwrap();
        }
        prop_assert!(pair.lower.is_squarefree());
        prop_assert_eq!(reduce_ideal(&i).max_degree(), (d - 1).max(1));
    }

    #[test]
    fn decomposition_depth_equals_fdepth(i in ideal_in(3, 2, 3)) {
        let m = QuotientModule::cyclic(ring(3), i).unwrap();
        let steps = search_filtration(&m, SearchGoal::MinDim(0), 10_000).unwrap().unwrap();
        let f = PrimeFiltration::new(m, steps);
        let v = verify_filtration(&f);
        let d = decomposition_from_filtration(&f).unwrap();
        let dv = verify_decomposition(&d);
        prop_assert!(dv.valid);
        prop_assert_eq!(dv.sdepth, v.fdepth);
    }

    #[test]
    fn exact_sdepth_bounds(i in ideal_in(3, 2, 3)) {
        let r = ring(3);
        let m = QuotientModule::cyclic(r.clone(), i.clone()).unwrap();
        let exact = sdepth_exact(&m).unwrap();
        prop_assert!(verify_decomposition(&exact.witness).valid);
        let ass_min = module_associated_primes(&m).unwrap().iter().map(|p| p.dim()).min().unwrap();
        prop_assert!(exact.value <= ass_min);
        let cert = stanley_n5(&r, &i).unwrap();
        prop_assert!(exact.value >= cert.report.sdepth_lb);
        prop_assert!(cert.report.sdepth_lb >= cert.report.depth);
    }
}

#[test]
fn torsion_free_module_over_plane() {
    let r = ring(3);
    let upper = MonomialIdeal::prime(3, stanley_core::VarSet::from_indices([0, 1, 2]));
    let lower = MonomialIdeal::prime(3, stanley_core::VarSet::from_indices([2]));
    let m = QuotientModule::new(r, upper, lower).unwrap();
    let ass = module_associated_primes(&m).unwrap();
    assert!(ass.iter().all(|p| p.dim() == 2));
    let f = build_fdepth1_filtration(&m).unwrap();
    assert_eq!(verify_filtration(&f).fdepth, Some(1));
}
