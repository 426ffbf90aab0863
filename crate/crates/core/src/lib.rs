//! Higher derivations of incidence algebras of finite posets over exact
//! commutative rings, and their decomposition into an inner part and a part
//! induced by a higher transitive map.

pub mod algebra;
pub mod decompose;
pub mod error;
pub mod generate;
pub mod hder;
pub mod linmap;
pub mod poset;
pub mod ring;
pub mod series;
pub mod transitive;

pub use algebra::{AlgElement, IncidenceAlgebra};
pub use decompose::{compute_rho, decompose, lemma2_probe, verify, Decomposition, Discrepancy, ProbeFailure};
pub use error::{Error, Result};
pub use generate::{GenConfig, Generator};
pub use hder::{HigherDerivation, InnerData, LeibnizViolation};
pub use linmap::LinMap;
pub use poset::{Poset, Segment};
pub use ring::{RingElem, RingSpec};
pub use transitive::{TransitiveMap, TransitiveViolation};
