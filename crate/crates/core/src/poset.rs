//! Finite partially ordered sets given by their Hasse diagram.
//!
//! Elements are addressed by index (their position in the input list).
//! Segments `(x, y)` with `x <= y` are numbered in the canonical order:
//! sorted by the topological position of `x`, then of `y`. All segments
//! sharing a lower end therefore occupy a contiguous index range.

use std::collections::{BTreeSet, HashMap};
use std::ops::Range;

use crate::error::{Error, Result};

/// A pair of element indices `(lo, hi)` with `lo <= hi`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Segment {
    pub lo: usize,
    pub hi: usize,
}

impl Segment {
    pub fn is_diagonal(self) -> bool {
        self.lo == self.hi
    }
}

#[derive(Debug, Clone)]
pub struct Poset {
    labels: Vec<String>,
    index: HashMap<String, usize>,
    leq: Vec<bool>,
    topo_order: Vec<usize>,
    topo_index: Vec<usize>,
    segments: Vec<Segment>,
    segment_index: Vec<Option<usize>>,
    starts: Vec<Range<usize>>,
}

impl PartialEq for Poset {
    fn eq(&self, other: &Self) -> bool {
        self.labels == other.labels && self.leq == other.leq
    }
}

impl Eq for Poset {}

impl Poset {
    /// Builds the reflexive-transitive closure of `covers`.
    ///
    /// The linear extension is Kahn's algorithm that always emits the
    /// available element appearing first in `elements`.
    pub fn from_covers<S: AsRef<str>>(elements: &[S], covers: &[(S, S)]) -> Result<Self> {
        let labels: Vec<String> = elements.iter().map(|s| s.as_ref().to_string()).collect();
        let mut index = HashMap::with_capacity(labels.len());
        for (i, label) in labels.iter().enumerate() {
            if label.is_empty() || label.contains(',') {
                return Err(Error::InvalidLabel(label.clone()));
            }
            if index.insert(label.clone(), i).is_some() {
                return Err(Error::DuplicateLabel(label.clone()));
            }
        }
        let lookup = |s: &str| {
            index
                .get(s)
                .copied()
                .ok_or_else(|| Error::UnknownLabel(s.to_string()))
        };
        let edges: BTreeSet<(usize, usize)> = covers
            .iter()
            .map(|(a, b)| Ok((lookup(a.as_ref())?, lookup(b.as_ref())?)))
            .collect::<Result<_>>()?;

        let n = labels.len();
        let mut succ = vec![Vec::new(); n];
        let mut indegree = vec![0usize; n];
        for &(a, b) in &edges {
            succ[a].push(b);
            indegree[b] += 1;
        }
        let mut ready: BTreeSet<usize> = (0..n).filter(|&i| indegree[i] == 0).collect();
        let mut topo_order = Vec::with_capacity(n);
        while let Some(next) = ready.pop_first() {
            topo_order.push(next);
            for &b in &succ[next] {
                indegree[b] -= 1;
                if indegree[b] == 0 {
                    ready.insert(b);
                }
            }
        }
        if topo_order.len() < n {
            let stuck = (0..n).find(|&i| indegree[i] > 0).expect("some element is on a cycle");
            return Err(Error::Cycle(labels[stuck].clone()));
        }
        let mut topo_index = vec![0; n];
        for (pos, &i) in topo_order.iter().enumerate() {
            topo_index[i] = pos;
        }

        // Reverse topological sweep: everything above a successor is above us.
        let mut leq = vec![false; n * n];
        for &x in topo_order.iter().rev() {
            leq[x * n + x] = true;
            for &y in &succ[x] {
                for z in 0..n {
                    if leq[y * n + z] {
                        leq[x * n + z] = true;
                    }
                }
            }
        }

        let mut segments = Vec::new();
        let mut segment_index = vec![None; n * n];
        let mut starts = vec![0..0; n];
        for &x in &topo_order {
            let begin = segments.len();
            for &y in &topo_order {
                if leq[x * n + y] {
                    segment_index[x * n + y] = Some(segments.len());
                    segments.push(Segment { lo: x, hi: y });
                }
            }
            starts[x] = begin..segments.len();
        }

        Ok(Poset {
            labels,
            index,
            leq,
            topo_order,
            topo_index,
            segments,
            segment_index,
            starts,
        })
    }

    /// The chain `1 < 2 < ... < n`.
    pub fn chain(n: usize) -> Self {
        let labels: Vec<String> = (1..=n).map(|i| i.to_string()).collect();
        let covers: Vec<(String, String)> =
            labels.windows(2).map(|w| (w[0].clone(), w[1].clone())).collect();
        Self::from_covers(&labels, &covers).expect("chains are posets")
    }

    pub fn antichain(labels: &[&str]) -> Result<Self> {
        Self::from_covers(labels, &[])
    }

    /// `a, b < c`.
    pub fn vee() -> Self {
        Self::from_covers(&["a", "b", "c"], &[("a", "c"), ("b", "c")]).expect("valid poset")
    }

    /// `1 < a, b < 4`.
    pub fn diamond() -> Self {
        Self::from_covers(
            &["1", "a", "b", "4"],
            &[("1", "a"), ("1", "b"), ("a", "4"), ("b", "4")],
        )
        .expect("valid poset")
    }

    pub fn len(&self) -> usize {
        self.labels.len()
    }

    pub fn is_empty(&self) -> bool {
        self.labels.is_empty()
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn label(&self, i: usize) -> &str {
        &self.labels[i]
    }

    pub fn index_of(&self, label: &str) -> Result<usize> {
        self.index
            .get(label)
            .copied()
            .ok_or_else(|| Error::UnknownLabel(label.to_string()))
    }

    pub fn leq(&self, x: &str, y: &str) -> Result<bool> {
        Ok(self.leq_idx(self.index_of(x)?, self.index_of(y)?))
    }

    pub fn leq_idx(&self, x: usize, y: usize) -> bool {
        self.leq[x * self.len() + y]
    }

    /// All `z` with `x <= z <= y`, in topological order.
    pub fn interval(&self, x: &str, y: &str) -> Result<Vec<&str>> {
        let (xi, yi) = (self.index_of(x)?, self.index_of(y)?);
        if !self.leq_idx(xi, yi) {
            return Err(Error::NotComparable { x: x.to_string(), y: y.to_string() });
        }
        Ok(self.interval_idx(xi, yi).into_iter().map(|z| self.label(z)).collect())
    }

    pub fn interval_idx(&self, x: usize, y: usize) -> Vec<usize> {
        self.topo_order
            .iter()
            .copied()
            .filter(|&z| self.leq_idx(x, z) && self.leq_idx(z, y))
            .collect()
    }

    /// Cover pairs `(x, y)`: `x < y` with nothing strictly between. Listed in
    /// canonical segment order.
    pub fn hasse_covers(&self) -> Vec<(usize, usize)> {
        self.segments
            .iter()
            .filter(|s| !s.is_diagonal() && self.interval_idx(s.lo, s.hi).len() == 2)
            .map(|s| (s.lo, s.hi))
            .collect()
    }

    pub fn topo_order(&self) -> &[usize] {
        &self.topo_order
    }

    pub fn topo_index(&self, x: usize) -> usize {
        self.topo_index[x]
    }

    pub fn segments(&self) -> &[Segment] {
        &self.segments
    }

    pub fn segment_count(&self) -> usize {
        self.segments.len()
    }

    pub fn segment(&self, index: usize) -> Segment {
        self.segments[index]
    }

    pub fn segment_of(&self, x: usize, y: usize) -> Option<usize> {
        self.segment_index[x * self.len() + y]
    }

    /// Segment index for labels `x <= y`.
    pub fn segment_by_label(&self, x: &str, y: &str) -> Result<usize> {
        let (xi, yi) = (self.index_of(x)?, self.index_of(y)?);
        self.segment_of(xi, yi)
            .ok_or_else(|| Error::NotComparable { x: x.to_string(), y: y.to_string() })
    }

    /// Segment indices whose lower end is `x`.
    pub fn segments_from(&self, x: usize) -> Range<usize> {
        self.starts[x].clone()
    }

    /// The `"x,y"` key used by every serialized record.
    pub fn segment_key(&self, index: usize) -> String {
        let s = self.segments[index];
        format!("{},{}", self.labels[s.lo], self.labels[s.hi])
    }

    pub fn parse_segment_key(&self, key: &str) -> Result<usize> {
        let (x, y) = key.split_once(',').ok_or_else(|| Error::SegmentKey(key.to_string()))?;
        self.segment_by_label(x, y)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn keys(p: &Poset) -> Vec<String> {
        (0..p.segment_count()).map(|i| p.segment_key(i)).collect()
    }

    #[test]
    fn chain_of_two() {
        let p = Poset::from_covers(&["1", "2"], &[("1", "2")]).unwrap();
        assert_eq!(keys(&p), ["1,1", "1,2", "2,2"]);
        assert!(p.leq("1", "2").unwrap());
        assert!(!p.leq("2", "1").unwrap());
    }

    #[test]
    fn vee_has_five_segments() {
        let p = Poset::vee();
        // hand closure: three diagonal pairs plus (a,c) and (b,c)
        assert_eq!(keys(&p), ["a,a", "a,c", "b,b", "b,c", "c,c"]);
        assert_eq!(p.interval("a", "c").unwrap(), ["a", "c"]);
    }

    #[test]
    fn construction_errors() {
        assert_eq!(
            Poset::from_covers(&["1", "2"], &[("1", "2"), ("2", "1")]).unwrap_err(),
            Error::Cycle("1".into())
        );
        assert!(matches!(Poset::from_covers(&["1", "1"], &[]), Err(Error::DuplicateLabel(_))));
        assert!(matches!(
            Poset::from_covers(&["1", "2"], &[("1", "3")]),
            Err(Error::UnknownLabel(_))
        ));
        assert!(matches!(Poset::from_covers(&["a,b"], &[]), Err(Error::InvalidLabel(_))));
        assert!(matches!(Poset::from_covers(&[""], &[]), Err(Error::InvalidLabel(_))));
        assert!(matches!(Poset::from_covers(&["x"], &[("x", "x")]), Err(Error::Cycle(_))));
    }

    #[test]
    fn queries() {
        let c3 = Poset::chain(3);
        assert_eq!(c3.interval("1", "3").unwrap(), ["1", "2", "3"]);
        assert_eq!(c3.interval("2", "2").unwrap(), ["2"]);
        assert!(matches!(c3.interval("3", "1"), Err(Error::NotComparable { .. })));
        assert!(c3.leq("1", "4").is_err());

        let anti = Poset::antichain(&["a", "b"]).unwrap();
        assert!(!anti.leq("a", "b").unwrap());
        assert_eq!(keys(&anti), ["a,a", "b,b"]);

        let single = Poset::antichain(&["x"]).unwrap();
        assert_eq!(keys(&single), ["x,x"]);
    }

    #[test]
    fn topological_tie_break_follows_input_order() {
        let p = Poset::from_covers(&["c", "b", "a"], &[("a", "c")]).unwrap();
        let order: Vec<&str> = p.topo_order().iter().map(|&i| p.label(i)).collect();
        assert_eq!(order, ["b", "a", "c"]);
        assert_eq!(keys(&p), ["b,b", "a,a", "a,c", "c,c"]);
    }

    #[test]
    fn hasse_diagram_drops_implied_relations() {
        let p = Poset::from_covers(&["1", "2", "3"], &[("1", "2"), ("2", "3"), ("1", "3")]).unwrap();
        assert_eq!(p.hasse_covers(), vec![(0, 1), (1, 2)]);
        let labels: Vec<&str> = p.labels().iter().map(String::as_str).collect();
        let covers: Vec<(&str, &str)> = p.hasse_covers().iter().map(|&(a, b)| (p.label(a), p.label(b))).collect();
        assert_eq!(Poset::from_covers(&labels, &covers).unwrap(), p);
    }

    #[test]
    fn segment_keys_round_trip() {
        let p = Poset::diamond();
        for i in 0..p.segment_count() {
            assert_eq!(p.parse_segment_key(&p.segment_key(i)).unwrap(), i);
        }
        assert!(p.parse_segment_key("a,b").is_err());
        assert!(p.parse_segment_key("ab").is_err());
    }
}
