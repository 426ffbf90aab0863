//! Reproducible random instances.
//!
//! The random source is SplitMix64 (Steele, Lea and Flood): the state
//! advances by `0x9E3779B97F4A7C15` and each output is the state passed
//! through the finalizer
//!
//! ```text
//! z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9
//! z = (z ^ (z >> 27)) * 0x94D049BB133111EB
//! z =  z ^ (z >> 31)
//! ```
//!
//! with wrapping arithmetic. Derived draws:
//!
//! * `unit()`: `(next >> 11) * 2^-53`, a float in `[0, 1)`;
//! * `below(m)`: `next % m`;
//! * a coefficient: `k = below(2·bound)`, value `k − bound` if that is
//!   negative and `k − bound + 1` otherwise, so uniform on
//!   `[−bound, bound] \ {0}`. Over the rationals a denominator
//!   `1 + below(bound)` is drawn next.
//!
//! An element draws, per segment in canonical order, `unit() < sparsity`
//! and then a coefficient if selected. A transitive map draws one unit
//! series `1 + c_1 t + … + c_N t^N` per element in input order, each `c_n`
//! drawn like an element coefficient. [`Generator::hd`] draws `ρ_1, …, ρ_N`
//! and then the grading, from one stream.

use num_bigint::BigInt;

use crate::algebra::{AlgElement, IncidenceAlgebra};
use crate::error::{Error, Result};
use crate::hder::{HigherDerivation, InnerData};
use crate::poset::Poset;
use crate::ring::{RingElem, RingSpec};
use crate::transitive::TransitiveMap;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SplitMix64 {
    state: u64,
}

impl SplitMix64 {
    pub fn new(seed: u64) -> Self {
        SplitMix64 { state: seed }
    }

    pub fn next_u64(&mut self) -> u64 {
        self.state = self.state.wrapping_add(0x9E37_79B9_7F4A_7C15);
        let mut z = self.state;
        z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
        z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
        z ^ (z >> 31)
    }

    pub fn unit(&mut self) -> f64 {
        (self.next_u64() >> 11) as f64 * (1.0 / (1u64 << 53) as f64)
    }

    pub fn below(&mut self, m: u64) -> u64 {
        self.next_u64() % m
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct GenConfig {
    pub seed: u64,
    pub sparsity: f64,
    pub coeff_bound: u64,
    pub order: usize,
    pub ring: RingSpec,
}

impl GenConfig {
    pub fn new(seed: u64, sparsity: f64, coeff_bound: u64, order: usize, ring: RingSpec) -> Result<Self> {
        if !(0.0..=1.0).contains(&sparsity) {
            return Err(Error::InvalidConfig(format!("sparsity {sparsity} outside [0, 1]")));
        }
        if coeff_bound == 0 {
            return Err(Error::InvalidConfig("coefficient bound must be at least 1".into()));
        }
        Ok(GenConfig { seed, sparsity, coeff_bound, order, ring })
    }
}

/// A single-use stream of random instances.
#[derive(Debug, Clone)]
pub struct Generator {
    cfg: GenConfig,
    rng: SplitMix64,
}

impl Generator {
    pub fn new(cfg: GenConfig) -> Self {
        let rng = SplitMix64::new(cfg.seed);
        Generator { cfg, rng }
    }

    fn coefficient(&mut self) -> RingElem {
        let bound = self.cfg.coeff_bound;
        let k = self.rng.below(2 * bound) as i128 - bound as i128;
        let num = BigInt::from(if k < 0 { k } else { k + 1 });
        match self.cfg.ring {
            RingSpec::Rationals => {
                let den = BigInt::from(1 + self.rng.below(bound));
                RingElem::from_fraction(RingSpec::Rationals, num, den).expect("non-zero denominator")
            }
            ring => RingElem::from_bigint(ring, num),
        }
    }

    fn maybe_coefficient(&mut self) -> Option<RingElem> {
        if self.rng.unit() < self.cfg.sparsity {
            Some(self.coefficient())
        } else {
            None
        }
    }

    fn check_ring(&self, alg: &IncidenceAlgebra) -> Result<()> {
        if alg.ring() != self.cfg.ring {
            return Err(Error::RingMismatch { left: self.cfg.ring.to_string(), right: alg.ring().to_string() });
        }
        Ok(())
    }

    pub fn element(&mut self, alg: &IncidenceAlgebra) -> Result<AlgElement> {
        self.check_ring(alg)?;
        let mut entries = Vec::new();
        for s in 0..alg.poset().segment_count() {
            if let Some(c) = self.maybe_coefficient() {
                entries.push((s, c));
            }
        }
        alg.element(entries)
    }

    pub fn inner(&mut self, alg: &IncidenceAlgebra) -> Result<InnerData> {
        let rho = (0..self.cfg.order).map(|_| self.element(alg)).collect::<Result<_>>()?;
        InnerData::new(alg, rho)
    }

    pub fn transitive(&mut self, alg: &IncidenceAlgebra) -> Result<TransitiveMap> {
        self.check_ring(alg)?;
        let ring = self.cfg.ring;
        let grading: Vec<Vec<RingElem>> = (0..alg.poset().len())
            .map(|_| {
                let mut g = vec![ring.one()];
                for _ in 0..self.cfg.order {
                    g.push(self.maybe_coefficient().unwrap_or_else(|| ring.zero()));
                }
                g
            })
            .collect();
        TransitiveMap::from_grading(alg, self.cfg.order, &grading)
    }

    /// `Δ_ρ ∗ σ̃` for random `ρ` and graded `σ`.
    pub fn hd(&mut self, alg: &IncidenceAlgebra) -> Result<HigherDerivation> {
        let inner = self.inner(alg)?;
        let sigma = self.transitive(alg)?;
        HigherDerivation::inner(&inner)?.mul(&sigma.tilde()?)
    }
}

pub fn gen_element(cfg: &GenConfig, alg: &IncidenceAlgebra) -> Result<AlgElement> {
    Generator::new(cfg.clone()).element(alg)
}

pub fn gen_inner(cfg: &GenConfig, alg: &IncidenceAlgebra) -> Result<InnerData> {
    Generator::new(cfg.clone()).inner(alg)
}

pub fn gen_transitive(cfg: &GenConfig, alg: &IncidenceAlgebra) -> Result<TransitiveMap> {
    Generator::new(cfg.clone()).transitive(alg)
}

pub fn gen_hd(cfg: &GenConfig, alg: &IncidenceAlgebra) -> Result<HigherDerivation> {
    Generator::new(cfg.clone()).hd(alg)
}

/// A poset on `p0, …, p{n-1}` with each relation `pi < pj` (`i < j`) kept
/// independently with probability `density`.
pub fn random_poset(seed: u64, n: usize, density: f64) -> Poset {
    let mut rng = SplitMix64::new(seed);
    let labels: Vec<String> = (0..n).map(|i| format!("p{i}")).collect();
    let mut covers = Vec::new();
    for i in 0..n {
        for j in i + 1..n {
            if rng.unit() < density {
                covers.push((labels[i].clone(), labels[j].clone()));
            }
        }
    }
    Poset::from_covers(&labels, &covers).expect("edges follow index order")
}
