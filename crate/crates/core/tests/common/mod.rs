#![allow(dead_code)]

use hder::generate::{random_poset, Generator};
use hder::{GenConfig, IncidenceAlgebra, Poset, RingSpec};
use proptest::prelude::*;

pub fn posets() -> Vec<Poset> {
    vec![
        Poset::chain(2),
        Poset::chain(3),
        Poset::chain(4),
        Poset::vee(),
        Poset::diamond(),
        Poset::antichain(&["a", "b"]).unwrap(),
        random_poset(11, 5, 0.5),
    ]
}

pub fn rings() -> Vec<RingSpec> {
    vec![
        RingSpec::Integers,
        RingSpec::Rationals,
        RingSpec::residues(7).unwrap(),
        RingSpec::residues(6).unwrap(),
    ]
}

pub fn algebra(poset: usize, ring: usize) -> IncidenceAlgebra {
    IncidenceAlgebra::new(posets()[poset % posets().len()].clone(), rings()[ring % rings().len()])
}

pub fn arb_algebra() -> impl Strategy<Value = IncidenceAlgebra> {
    (0..posets().len(), 0..rings().len()).prop_map(|(p, r)| algebra(p, r))
}

pub fn generator(alg: &IncidenceAlgebra, seed: u64, order: usize) -> Generator {
    Generator::new(GenConfig::new(seed, 0.6, 3, order, alg.ring()).unwrap())
}
