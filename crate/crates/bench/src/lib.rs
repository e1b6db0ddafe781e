//! Fixed workloads shared by the benchmarks.

use stanley_core::random::{instance_rng, random_ideal, IdealModel};
use stanley_core::syntax::parse_ideal;
use stanley_core::{MonomialIdeal, QuotientModule, RingContext};

pub struct Fixture {
    pub name: &'static str,
    pub ring: RingContext,
    pub ideal: MonomialIdeal,
}

impl Fixture {
    fn parse(name: &'static str, ring: RingContext, ideal: &str) -> Self {
        let ideal = parse_ideal(&ring, ideal).expect("fixture ideals parse");
        Fixture { name, ring, ideal }
    }

    pub fn module(&self) -> QuotientModule {
        QuotientModule::cyclic(self.ring.clone(), self.ideal.clone()).expect("fixture modules are valid")
    }
}

fn x(n: usize) -> RingContext {
    RingContext::indexed("x", n).expect("valid ring")
}

/// Cyclic modules `S/I` for the depth and Stanley benchmarks.
pub fn quotients() -> Vec<Fixture> {
    vec![
        Fixture::parse("disjoint-planes", x(5), "[x1*x3, x1*x4, x1*x5, x2*x3, x2*x4, x2*x5]"),
        Fixture::parse("path-cm2", x(5), "[x3, x2*x4, x1*x4, x2*x5]"),
        Fixture::parse("mixed-n4", RingContext::from_letters("xyzw").unwrap(), "[x^2*z, x^2*w, y*z, x*y*w]"),
        Fixture::parse("cubic-n5", x(5), "[x1^3, x2^2*x3, x3*x4*x5, x1*x5^2, x2*x4^2]"),
    ]
}

/// `(U, I)` with `U/I` Cohen-Macaulay of dimension 2.
pub fn cm2_pairs() -> Vec<(&'static str, RingContext, MonomialIdeal, MonomialIdeal)> {
    let r = x(3);
    let u = parse_ideal(&r, "[x1, x3^2]").unwrap().intersect(&parse_ideal(&r, "[x2, x3]").unwrap());
    let i = parse_ideal(&r, "[x1*x2]").unwrap();
    let r4 = x(4);
    let u4 = MonomialIdeal::unit(4);
    let i4 = parse_ideal(&r4, "[x1*x3, x2*x3, x2*x4]").unwrap();
    vec![("two-primes-n3", r, u, i), ("path-n4", r4, u4, i4)]
}

/// Seeded random ideals in five variables.
pub fn random_n5(count: u64) -> Vec<MonomialIdeal> {
    let model = IdealModel {
        nvars: 5,
        max_degree: 3,
        generators: 6,
    };
    (0..count)
        .map(|i| random_ideal(&mut instance_rng(1234, i), &model).expect("random model is valid"))
        .collect()
}
