//! The incidence algebra `I(P, R)` of a finite poset. For finite `P` every
//! formal sum is finitary, so this is also the finitary incidence algebra.

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::sync::Arc;

use crate::error::{Error, Result};
use crate::poset::{Poset, Segment};
use crate::ring::{RingElem, RingSpec};

/// A poset together with a coefficient ring. Cheap to clone.
#[derive(Debug, Clone)]
pub struct IncidenceAlgebra {
    poset: Arc<Poset>,
    ring: RingSpec,
}

impl PartialEq for IncidenceAlgebra {
    fn eq(&self, other: &Self) -> bool {
        self.ring == other.ring && (Arc::ptr_eq(&self.poset, &other.poset) || self.poset == other.poset)
    }
}

impl Eq for IncidenceAlgebra {}

impl IncidenceAlgebra {
    pub fn new(poset: impl Into<Arc<Poset>>, ring: RingSpec) -> Self {
        IncidenceAlgebra { poset: poset.into(), ring }
    }

    pub fn poset(&self) -> &Poset {
        &self.poset
    }

    pub fn ring(&self) -> RingSpec {
        self.ring
    }

    pub(crate) fn ensure_same(&self, other: &IncidenceAlgebra) -> Result<()> {
        if self == other {
            Ok(())
        } else {
            Err(Error::AlgebraMismatch)
        }
    }

    pub fn zero(&self) -> AlgElement {
        AlgElement { alg: self.clone(), coeffs: BTreeMap::new() }
    }

    /// The unit `δ = Σ e_xx`.
    pub fn delta(&self) -> AlgElement {
        let coeffs = (0..self.poset.len())
            .map(|x| (self.diag(x), self.ring.one()))
            .collect();
        AlgElement { alg: self.clone(), coeffs }
    }

    /// The basis element `e_xy`; fails unless `x <= y`.
    pub fn e(&self, x: &str, y: &str) -> Result<AlgElement> {
        Ok(self.basis(self.poset.segment_by_label(x, y)?))
    }

    /// The idempotent `e_x = e_xx`.
    pub fn e_x(&self, x: &str) -> Result<AlgElement> {
        self.e(x, x)
    }

    /// The idempotent `e_X = Σ_{x ∈ X} e_xx`.
    pub fn e_subset<S: AsRef<str>>(&self, subset: &[S]) -> Result<AlgElement> {
        let indices = subset
            .iter()
            .map(|x| self.poset.index_of(x.as_ref()))
            .collect::<Result<Vec<_>>>()?;
        Ok(self.e_subset_idx(&indices))
    }

    pub fn e_subset_idx(&self, subset: &[usize]) -> AlgElement {
        let coeffs = subset.iter().map(|&x| (self.diag(x), self.ring.one())).collect();
        AlgElement { alg: self.clone(), coeffs }
    }

    pub fn basis(&self, segment: usize) -> AlgElement {
        let mut coeffs = BTreeMap::new();
        coeffs.insert(segment, self.ring.one());
        AlgElement { alg: self.clone(), coeffs }
    }

    /// Builds an element from `(segment index, coefficient)` pairs, summing
    /// repeated segments and dropping zeros.
    pub fn element(&self, entries: impl IntoIterator<Item = (usize, RingElem)>) -> Result<AlgElement> {
        let mut acc = Accumulator::default();
        for (seg, c) in entries {
            if seg >= self.poset.segment_count() {
                return Err(Error::IndexOutOfRange { index: seg, order: self.poset.segment_count() });
            }
            if c.spec() != self.ring {
                return Err(Error::RingMismatch { left: self.ring.to_string(), right: c.spec().to_string() });
            }
            acc.add(seg, &c);
        }
        Ok(acc.finish(self))
    }

    /// Like [`element`](Self::element) but keyed by segment labels.
    pub fn element_from_labels<S: AsRef<str>>(&self, entries: &[(S, S, RingElem)]) -> Result<AlgElement> {
        let indexed = entries
            .iter()
            .map(|(x, y, c)| Ok((self.poset.segment_by_label(x.as_ref(), y.as_ref())?, c.clone())))
            .collect::<Result<Vec<_>>>()?;
        self.element(indexed)
    }

    fn diag(&self, x: usize) -> usize {
        self.poset.segment_of(x, x).expect("diagonal segments always exist")
    }
}

/// Sparse coefficient accumulator keyed by segment index.
#[derive(Default)]
pub(crate) struct Accumulator {
    coeffs: BTreeMap<usize, RingElem>,
}

impl Accumulator {
    pub(crate) fn add(&mut self, seg: usize, c: &RingElem) {
        match self.coeffs.get_mut(&seg) {
            Some(existing) => *existing = &*existing + c,
            None => {
                self.coeffs.insert(seg, c.clone());
            }
        }
    }

    pub(crate) fn finish(mut self, alg: &IncidenceAlgebra) -> AlgElement {
        self.coeffs.retain(|_, c| !c.is_zero());
        AlgElement { alg: alg.clone(), coeffs: self.coeffs }
    }
}

/// A finitary series `α = Σ α_xy e_xy`, stored sparsely without zeros.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AlgElement {
    alg: IncidenceAlgebra,
    coeffs: BTreeMap<usize, RingElem>,
}

impl AlgElement {
    pub fn algebra(&self) -> &IncidenceAlgebra {
        &self.alg
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Non-zero coefficients in canonical segment order.
    pub fn terms(&self) -> impl Iterator<Item = (usize, &RingElem)> {
        self.coeffs.iter().map(|(&s, c)| (s, c))
    }

    pub fn support_len(&self) -> usize {
        self.coeffs.len()
    }

    pub fn coeff_at(&self, segment: usize) -> RingElem {
        self.coeffs.get(&segment).cloned().unwrap_or_else(|| self.alg.ring.zero())
    }

    /// `α_xy`; fails unless `x <= y`.
    pub fn coeff(&self, x: &str, y: &str) -> Result<RingElem> {
        Ok(self.coeff_at(self.alg.poset.segment_by_label(x, y)?))
    }

    /// Coefficient at `(x, y)` by element index; zero when `x ≰ y`.
    pub fn coeff_idx(&self, x: usize, y: usize) -> RingElem {
        match self.alg.poset.segment_of(x, y) {
            Some(s) => self.coeff_at(s),
            None => self.alg.ring.zero(),
        }
    }

    /// Returns a copy with the coefficient at `segment` replaced.
    pub fn with_coeff(&self, segment: usize, value: RingElem) -> AlgElement {
        let mut out = self.clone();
        if value.is_zero() {
            out.coeffs.remove(&segment);
        } else {
            out.coeffs.insert(segment, value);
        }
        out
    }

    pub fn checked_add(&self, other: &AlgElement) -> Result<AlgElement> {
        self.alg.ensure_same(&other.alg)?;
        let mut acc = Accumulator { coeffs: self.coeffs.clone() };
        for (&s, c) in &other.coeffs {
            acc.add(s, c);
        }
        Ok(acc.finish(&self.alg))
    }

    pub fn checked_sub(&self, other: &AlgElement) -> Result<AlgElement> {
        self.checked_add(&other.negated())
    }

    pub fn negated(&self) -> AlgElement {
        let coeffs = self.coeffs.iter().map(|(&s, c)| (s, -c)).collect();
        AlgElement { alg: self.alg.clone(), coeffs }
    }

    pub fn scale(&self, c: &RingElem) -> Result<AlgElement> {
        if c.spec() != self.alg.ring {
            return Err(Error::RingMismatch { left: self.alg.ring.to_string(), right: c.spec().to_string() });
        }
        let coeffs = self
            .coeffs
            .iter()
            .map(|(&s, v)| (s, c * v))
            .filter(|(_, v)| !v.is_zero())
            .collect();
        Ok(AlgElement { alg: self.alg.clone(), coeffs })
    }

    /// Convolution `(αβ)_xy = Σ_{x≤z≤y} α_xz β_zy`.
    pub fn convolve(&self, other: &AlgElement) -> Result<AlgElement> {
        self.alg.ensure_same(&other.alg)?;
        let poset = self.alg.poset();
        let mut acc = Accumulator::default();
        for (&left, a) in &self.coeffs {
            let Segment { lo: x, hi: z } = poset.segment(left);
            for (&right, b) in other.coeffs.range(poset.segments_from(z)) {
                let y = poset.segment(right).hi;
                let target = poset.segment_of(x, y).expect("order is transitive");
                acc.add(target, &(a * b));
            }
        }
        Ok(acc.finish(&self.alg))
    }

    /// `α^n`, with `α^0 = δ`.
    pub fn pow(&self, n: usize) -> AlgElement {
        let mut out = self.alg.delta();
        for _ in 0..n {
            out = &out * self;
        }
        out
    }
}

impl fmt::Display for AlgElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.coeffs.is_empty() {
            return write!(f, "0");
        }
        for (i, (&s, c)) in self.coeffs.iter().enumerate() {
            if i > 0 {
                write!(f, " + ")?;
            }
            write!(f, "{c}·e({})", self.alg.poset.segment_key(s))?;
        }
        Ok(())
    }
}

macro_rules! elem_binop {
    ($trait:ident, $method:ident, $checked:ident) => {
        impl $trait<&AlgElement> for &AlgElement {
            type Output = AlgElement;

            fn $method(self, rhs: &AlgElement) -> AlgElement {
                self.$checked(rhs).expect("incidence algebra mismatch")
            }
        }

        impl $trait for AlgElement {
            type Output = AlgElement;

            fn $method(self, rhs: AlgElement) -> AlgElement {
                (&self).$method(&rhs)
            }
        }
    };
}

elem_binop!(Add, add, checked_add);
elem_binop!(Sub, sub, checked_sub);
elem_binop!(Mul, mul, convolve);

impl Neg for &AlgElement {
    type Output = AlgElement;

    fn neg(self) -> AlgElement {
        self.negated()
    }
}

impl Neg for AlgElement {
    type Output = AlgElement;

    fn neg(self) -> AlgElement {
        self.negated()
    }
}
