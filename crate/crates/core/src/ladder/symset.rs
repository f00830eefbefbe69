//! Symbolic subsets of a ladder presentation.
//!
//! A [`SymSet`] is a finite set of base points plus, per ladder, a finite union
//! of closed index segments and at most one infinite tail. The representation
//! is kept in normal form so structural equality is set equality.

use std::collections::BTreeSet;
use std::fmt;

use super::Elem;

/// Normal-form subset of ℕ: sorted, disjoint, non-adjacent closed segments,
/// all strictly below `tail - 1` when a tail is present.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Default)]
pub struct IndexRuns {
    segments: Vec<(u64, u64)>,
    tail: Option<u64>,
}

impl IndexRuns {
    pub fn empty() -> Self {
        Self::default()
    }

    pub fn all() -> Self {
        Self::from_tail(0)
    }

    pub fn from_tail(t: u64) -> Self {
        IndexRuns { segments: Vec::new(), tail: Some(t) }
    }

    pub fn segment(a: u64, b: u64) -> Self {
        if a > b {
            return Self::empty();
        }
        IndexRuns { segments: vec![(a, b)], tail: None }
    }

    pub fn point(n: u64) -> Self {
        Self::segment(n, n)
    }

    pub fn from_parts(mut segments: Vec<(u64, u64)>, tail: Option<u64>) -> Self {
        segments.retain(|(a, b)| a <= b);
        segments.sort();
        let mut out: Vec<(u64, u64)> = Vec::with_capacity(segments.len());
        for (a, b) in segments {
            match out.last_mut() {
                Some(last) if a <= last.1.saturating_add(1) => last.1 = last.1.max(b),
                _ => out.push((a, b)),
            }
        }
        let mut tail = tail;
        if let Some(t) = tail {
            let mut t = t;
            // absorb segments reaching the tail, from the right
            while let Some(&(a, b)) = out.last() {
                if b.saturating_add(1) >= t {
                    t = t.min(a);
                    out.pop();
                } else {
                    break;
                }
            }
            tail = Some(t);
        }
        IndexRuns { segments: out, tail }
    }

    pub fn segments(&self) -> &[(u64, u64)] {
        &self.segments
    }

    pub fn tail(&self) -> Option<u64> {
        self.tail
    }

    pub fn is_empty(&self) -> bool {
        self.segments.is_empty() && self.tail.is_none()
    }

    pub fn is_all(&self) -> bool {
        self.segments.is_empty() && self.tail == Some(0)
    }

    pub fn contains(&self, n: u64) -> bool {
        self.tail.is_some_and(|t| n >= t) || self.segments.iter().any(|&(a, b)| a <= n && n <= b)
    }

    pub fn min(&self) -> Option<u64> {
        self.segments.first().map(|s| s.0).or(self.tail)
    }

    /// Largest member, `None` when empty or infinite.
    pub fn max(&self) -> Option<u64> {
        if self.tail.is_some() {
            return None;
        }
        self.segments.last().map(|s| s.1)
    }

    pub fn is_infinite(&self) -> bool {
        self.tail.is_some()
    }

    /// Largest finite index mentioned by the representation.
    pub fn max_mentioned(&self) -> u64 {
        let s = self.segments.last().map(|s| s.1).unwrap_or(0);
        s.max(self.tail.unwrap_or(0))
    }

    pub fn union(&self, other: &Self) -> Self {
        let mut segs = self.segments.clone();
        segs.extend_from_slice(&other.segments);
        let tail = match (self.tail, other.tail) {
            (Some(a), Some(b)) => Some(a.min(b)),
            (a, b) => a.or(b),
        };
        Self::from_parts(segs, tail)
    }

    pub fn complement(&self) -> Self {
        let mut segs = Vec::new();
        let mut next = 0u64;
        for &(a, b) in &self.segments {
            if a > next {
                segs.push((next, a - 1));
            }
            next = b + 1;
        }
        match self.tail {
            Some(t) => {
                if t > next {
                    segs.push((next, t - 1));
                }
                Self::from_parts(segs, None)
            }
            None => Self::from_parts(segs, Some(next)),
        }
    }

    pub fn intersect(&self, other: &Self) -> Self {
        self.complement().union(&other.complement()).complement()
    }

    pub fn difference(&self, other: &Self) -> Self {
        self.intersect(&other.complement())
    }

    pub fn is_subset(&self, other: &Self) -> bool {
        self.difference(other).is_empty()
    }

    /// Members up to and including `limit`.
    pub fn iter_upto(&self, limit: u64) -> impl Iterator<Item = u64> + '_ {
        (0..=limit).filter(move |&n| self.contains(n))
    }
}

/// Symbolic subset of a presentation with `n_base` base points and
/// `ladders.len()` ladders.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct SymSet {
    n_base: u32,
    base: BTreeSet<u32>,
    ladders: Vec<IndexRuns>,
}

impl SymSet {
    pub fn empty(n_base: u32, n_ladders: u32) -> Self {
        SymSet {
            n_base,
            base: BTreeSet::new(),
            ladders: vec![IndexRuns::empty(); n_ladders as usize],
        }
    }

    pub fn universe(n_base: u32, n_ladders: u32) -> Self {
        SymSet {
            n_base,
            base: (0..n_base).collect(),
            ladders: vec![IndexRuns::all(); n_ladders as usize],
        }
    }

    pub fn from_parts(n_base: u32, base: BTreeSet<u32>, ladders: Vec<IndexRuns>) -> Self {
        assert!(base.iter().all(|&b| b < n_base), "base index out of range");
        SymSet { n_base, base, ladders }
    }

    pub fn singleton(n_base: u32, n_ladders: u32, e: Elem) -> Self {
        let mut s = Self::empty(n_base, n_ladders);
        s.insert(e);
        s
    }

    pub fn from_elems(n_base: u32, n_ladders: u32, elems: impl IntoIterator<Item = Elem>) -> Self {
        let mut s = Self::empty(n_base, n_ladders);
        for e in elems {
            s.insert(e);
        }
        s
    }

    /// The whole of ladder `i` from index `start` on.
    pub fn ladder_tail(n_base: u32, n_ladders: u32, i: u32, start: u64) -> Self {
        let mut s = Self::empty(n_base, n_ladders);
        s.ladders[i as usize] = IndexRuns::from_tail(start);
        s
    }

    pub fn n_base(&self) -> u32 {
        self.n_base
    }

    pub fn n_ladders(&self) -> u32 {
        self.ladders.len() as u32
    }

    pub fn base_part(&self) -> &BTreeSet<u32> {
        &self.base
    }

    pub fn ladder_part(&self, i: u32) -> &IndexRuns {
        &self.ladders[i as usize]
    }

    pub fn ladder_parts(&self) -> &[IndexRuns] {
        &self.ladders
    }

    pub fn set_ladder_part(&mut self, i: u32, runs: IndexRuns) {
        self.ladders[i as usize] = runs;
    }

    pub fn insert(&mut self, e: Elem) {
        match e {
            Elem::Base(b) => {
                assert!(b < self.n_base, "base index out of range");
                self.base.insert(b);
            }
            Elem::Lad(i, n) => {
                let r = &mut self.ladders[i as usize];
                *r = r.union(&IndexRuns::point(n));
            }
        }
    }

    pub fn contains(&self, e: Elem) -> bool {
        match e {
            Elem::Base(b) => self.base.contains(&b),
            Elem::Lad(i, n) => self
                .ladders
                .get(i as usize)
                .is_some_and(|r| r.contains(n)),
        }
    }

    pub fn is_empty(&self) -> bool {
        self.base.is_empty() && self.ladders.iter().all(IndexRuns::is_empty)
    }

    pub fn is_finite(&self) -> bool {
        self.ladders.iter().all(|r| !r.is_infinite())
    }

    fn check_dims(&self, other: &Self) {
        assert!(
            self.n_base == other.n_base && self.ladders.len() == other.ladders.len(),
            "symbolic sets over different universes"
        );
    }

    pub fn union(&self, other: &Self) -> Self {
        self.check_dims(other);
        SymSet {
            n_base: self.n_base,
            base: self.base.union(&other.base).copied().collect(),
            ladders: self
                .ladders
                .iter()
                .zip(&other.ladders)
                .map(|(a, b)| a.union(b))
                .collect(),
        }
    }

    pub fn intersect(&self, other: &Self) -> Self {
        self.check_dims(other);
        SymSet {
            n_base: self.n_base,
            base: self.base.intersection(&other.base).copied().collect(),
            ladders: self
                .ladders
                .iter()
                .zip(&other.ladders)
                .map(|(a, b)| a.intersect(b))
                .collect(),
        }
    }

    pub fn complement(&self) -> Self {
        SymSet {
            n_base: self.n_base,
            base: (0..self.n_base).filter(|b| !self.base.contains(b)).collect(),
            ladders: self.ladders.iter().map(IndexRuns::complement).collect(),
        }
    }

    pub fn difference(&self, other: &Self) -> Self {
        self.intersect(&other.complement())
    }

    pub fn is_subset(&self, other: &Self) -> bool {
        self.check_dims(other);
        self.base.is_subset(&other.base)
            && self
                .ladders
                .iter()
                .zip(&other.ladders)
                .all(|(a, b)| a.is_subset(b))
    }

    pub fn meets(&self, other: &Self) -> bool {
        !self.intersect(other).is_empty()
    }

    /// Least member in scan order: base points first, then ladders by index.
    pub fn first(&self) -> Option<Elem> {
        if let Some(&b) = self.base.iter().next() {
            return Some(Elem::Base(b));
        }
        self.ladders
            .iter()
            .enumerate()
            .find_map(|(i, r)| r.min().map(|n| Elem::Lad(i as u32, n)))
    }

    /// Members in scan order, ladder indices capped at `limit`.
    pub fn elems_upto(&self, limit: u64) -> Vec<Elem> {
        let mut out: Vec<Elem> = self.base.iter().map(|&b| Elem::Base(b)).collect();
        for (i, r) in self.ladders.iter().enumerate() {
            out.extend(r.iter_upto(limit).map(|n| Elem::Lad(i as u32, n)));
        }
        out
    }

    /// Members as a finite list; `None` if the set is infinite.
    pub fn finite_elems(&self) -> Option<Vec<Elem>> {
        if !self.is_finite() {
            return None;
        }
        let limit = self.max_mentioned();
        Some(self.elems_upto(limit))
    }

    pub fn max_mentioned(&self) -> u64 {
        self.ladders.iter().map(IndexRuns::max_mentioned).max().unwrap_or(0)
    }
}

impl fmt::Display for IndexRuns {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut parts: Vec<String> = self
            .segments
            .iter()
            .map(|&(a, b)| if a == b { format!("{a}") } else { format!("{a}..={b}") })
            .collect();
        if let Some(t) = self.tail {
            parts.push(format!("{t}.."));
        }
        write!(f, "{}", parts.join(","))
    }
}
