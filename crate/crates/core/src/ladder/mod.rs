//! Countable posets presented by a finite base and finitely many ω-ladders.
//!
//! Every pair of nodes (base points or ladders) carries a closed
//! [`IndexMap`]; all symbolic operations reduce to evaluating those maps.
//! Directed sets are reduced to the canonical shapes of [`DirectedShape`]:
//! a finite directed set has a maximum, and an infinite one dominates the
//! joint tails of the ladders it is unbounded in.

mod index_map;
mod symset;

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::finite::FinPoset;

pub use index_map::{IndexMap, Tail};
pub use symset::{IndexRuns, SymSet};

/// A point of a ladder presentation. Indices refer to the lexicographically
/// sorted base and ladder identifiers; the derived order is the scan order
/// used for every witness search.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub enum Elem {
    Base(u32),
    Lad(u32, u64),
}

/// Right-hand side of a `rel` statement.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum RelKind {
    /// `b <= X from θ`: `b <= X(n)` iff `n >= θ`.
    From(u64),
    /// `X <= b upto θ`: `X(n) <= b` iff `n <= θ`.
    UpTo(u64),
    /// `X <= b always`.
    Always,
    /// `X <= Y shift c`: `X(n) <= Y(m)` iff `m >= max(0, n + c)`.
    Shift(i64),
    /// `X <= Y tail c`: `X(n) <= Y(m)` iff `m >= c`.
    Tail(u64),
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct RelStmt {
    pub lhs: String,
    pub rhs: String,
    pub kind: RelKind,
}

/// Unvalidated presentation, kept in declaration order for printing.
#[derive(Debug, Clone, PartialEq, Eq, Default, Serialize, Deserialize)]
pub struct LadderPresentation {
    pub name: String,
    pub base: Vec<String>,
    pub ladders: Vec<String>,
    pub order: Vec<(String, String)>,
    pub rels: Vec<RelStmt>,
}

/// Canonical directed set.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum DirectedShape {
    Max(Elem),
    /// Joint tails: `(ladder, start)` pairs sorted by ladder.
    Tails(Vec<(u32, u64)>),
}

impl DirectedShape {
    /// Tails of the ladders in `mask`, all starting at 0.
    pub fn tails_of_mask(mask: u32) -> Self {
        DirectedShape::Tails(ladders_of_mask(mask).into_iter().map(|i| (i, 0)).collect())
    }

    pub fn ladders(&self) -> Vec<u32> {
        match self {
            DirectedShape::Max(_) => Vec::new(),
            DirectedShape::Tails(t) => t.iter().map(|&(i, _)| i).collect(),
        }
    }
}

pub(crate) fn ladders_of_mask(mask: u32) -> Vec<u32> {
    (0..32).filter(|i| mask & (1 << i) != 0).collect()
}

fn mask_of(ladders: &[u32]) -> u32 {
    ladders.iter().fold(0, |m, &i| m | (1 << i))
}

/// Facts about the joint tails of one nonempty set of ladders.
#[derive(Debug, Clone)]
struct TailInfo {
    directed: bool,
    ub: SymSet,
    sup: Option<Elem>,
    /// A ladder of the set lying below the tail of every other member.
    top: Option<u32>,
}

/// Finite truncation together with the element behind each index.
#[derive(Debug, Clone)]
pub struct Truncation {
    pub poset: FinPoset,
    pub elems: Vec<Elem>,
}

/// Ladder presentation whose closed order has been validated.
#[derive(Debug, Clone)]
pub struct LadderPoset {
    source: LadderPresentation,
    base_ids: Vec<String>,
    ladder_ids: Vec<String>,
    /// `rel[u][v]` over nodes: bases first, then ladders.
    rel: Vec<Vec<IndexMap>>,
    nstar: u64,
    ladder_ub: Vec<SymSet>,
    ladder_down: Vec<SymSet>,
    tails: Vec<TailInfo>,
    sups: Vec<Elem>,
}

/// Largest number of ladders accepted; tail shapes are enumerated as subsets.
pub const MAX_LADDERS: usize = 12;

impl LadderPresentation {
    pub fn validate(&self) -> Result<LadderPoset> {
        LadderPoset::new(self.clone())
    }
}

impl LadderPoset {
    pub fn new(source: LadderPresentation) -> Result<Self> {
        let mut base_ids = source.base.clone();
        base_ids.sort();
        let mut ladder_ids = source.ladders.clone();
        ladder_ids.sort();
        let mut all: Vec<&String> = base_ids.iter().chain(&ladder_ids).collect();
        all.sort();
        if let Some(w) = all.windows(2).find(|w| w[0] == w[1]) {
            return Err(Error::DuplicateId(w[0].clone()));
        }
        if ladder_ids.len() > MAX_LADDERS {
            return Err(Error::PreconditionFailed(format!(
                "at most {MAX_LADDERS} ladders are supported"
            )));
        }
        let nb = base_ids.len();
        let nodes = nb + ladder_ids.len();
        let node_of = |id: &str| -> Result<(usize, bool)> {
            if let Ok(b) = base_ids.binary_search_by(|s| s.as_str().cmp(id)) {
                return Ok((b, false));
            }
            if let Ok(l) = ladder_ids.binary_search_by(|s| s.as_str().cmp(id)) {
                return Ok((nb + l, true));
            }
            Err(Error::UnknownId(id.to_owned()))
        };

        let mut rel = vec![vec![IndexMap::never(); nodes]; nodes];
        for (u, row) in rel.iter_mut().enumerate() {
            row[u] = if u < nb { IndexMap::constant(0) } else { IndexMap::identity() };
        }
        for (a, b) in &source.order {
            let (u, lu) = node_of(a)?;
            let (v, lv) = node_of(b)?;
            if lu || lv {
                return Err(Error::IllTypedRule(format!("{a} < {b}")));
            }
            rel[u][v] = rel[u][v].min(&IndexMap::constant(0));
        }
        let mut max_const = 0u64;
        for r in &source.rels {
            let (u, lu) = node_of(&r.lhs)?;
            let (v, lv) = node_of(&r.rhs)?;
            let ill = || Error::IllTypedRule(format!("{} <= {}", r.lhs, r.rhs));
            let map = match (r.kind, lu, lv) {
                (RelKind::From(t), false, true) => {
                    max_const = max_const.max(t);
                    IndexMap::constant(t)
                }
                (RelKind::UpTo(t), true, false) => {
                    max_const = max_const.max(t);
                    IndexMap::up_to(t)
                }
                (RelKind::Always, true, false) => IndexMap::constant(0),
                (RelKind::Shift(c), true, true) => {
                    max_const = max_const.max(c.unsigned_abs());
                    IndexMap::shift(c)
                }
                (RelKind::Tail(c), true, true) => {
                    max_const = max_const.max(c);
                    IndexMap::constant(c)
                }
                _ => return Err(ill()),
            };
            if u == v {
                return Err(ill());
            }
            rel[u][v] = rel[u][v].min(&map);
        }

        let name_of = |u: usize| -> String {
            if u < nb { base_ids[u].clone() } else { ladder_ids[u - nb].clone() }
        };
        floyd_warshall(&mut rel);
        check_cycles(&rel, nb, &name_of)?;
        let mut again = rel.clone();
        floyd_warshall(&mut again);
        if again != rel {
            return Err(Error::PreconditionFailed("closure did not stabilise".into()));
        }
        for u in 0..nodes {
            for v in 0..nodes {
                if !expressible(&rel[u][v], u < nb, v < nb) {
                    return Err(Error::InexpressibleClosure { from: name_of(u), to: name_of(v) });
                }
            }
        }

        let nstar = max_const + ladder_ids.len() as u64 + 2;
        let mut p = LadderPoset {
            source,
            base_ids,
            ladder_ids,
            rel,
            nstar,
            ladder_ub: Vec::new(),
            ladder_down: Vec::new(),
            tails: Vec::new(),
            sups: Vec::new(),
        };
        p.ladder_ub = (0..p.n_ladders()).map(|i| p.compute_ladder_ub(i)).collect();
        p.ladder_down = (0..p.n_ladders()).map(|i| p.compute_ladder_down(i)).collect();
        p.tails = (1u32..(1 << p.n_ladders())).map(|m| p.compute_tail_info(m)).collect();
        let sups: BTreeSet<Elem> = p.directed_masks().filter_map(|m| p.tail_sup(m)).collect();
        p.sups = sups.into_iter().collect();
        // order axioms on a truncation, exhaustively
        p.truncate(p.nstar)?;
        Ok(p)
    }

    pub fn source(&self) -> &LadderPresentation {
        &self.source
    }

    pub fn name(&self) -> &str {
        &self.source.name
    }

    pub fn base_ids(&self) -> &[String] {
        &self.base_ids
    }

    pub fn ladder_ids(&self) -> &[String] {
        &self.ladder_ids
    }

    pub fn n_base(&self) -> u32 {
        self.base_ids.len() as u32
    }

    pub fn n_ladders(&self) -> u32 {
        self.ladder_ids.len() as u32
    }

    /// Uniformity threshold: beyond it every rule-derived predicate along a
    /// ladder is constant or shifts uniformly.
    pub fn uniformity_threshold(&self) -> u64 {
        self.nstar
    }

    fn node(&self, e: Elem) -> (usize, u64) {
        match e {
            Elem::Base(b) => (b as usize, 0),
            Elem::Lad(i, n) => (self.base_ids.len() + i as usize, n),
        }
    }

    /// Closed relation between two nodes.
    pub fn rel_map(&self, u: usize, v: usize) -> &IndexMap {
        &self.rel[u][v]
    }

    pub fn check_elem(&self, e: Elem) -> Result<()> {
        let ok = match e {
            Elem::Base(b) => b < self.n_base(),
            Elem::Lad(i, _) => i < self.n_ladders(),
        };
        if ok { Ok(()) } else { Err(Error::UnknownElement(format!("{e:?}"))) }
    }

    pub fn leq(&self, x: Elem, y: Elem) -> bool {
        let (u, n) = self.node(x);
        let (v, m) = self.node(y);
        self.rel[u][v].eval(n).is_some_and(|f| f <= m)
    }

    pub fn try_leq(&self, x: Elem, y: Elem) -> Result<bool> {
        self.check_elem(x)?;
        self.check_elem(y)?;
        Ok(self.leq(x, y))
    }

    // ---- naming -------------------------------------------------------

    pub fn display(&self, e: Elem) -> String {
        match e {
            Elem::Base(b) => self.base_ids[b as usize].clone(),
            Elem::Lad(i, n) => format!("{}({})", self.ladder_ids[i as usize], n),
        }
    }

    pub fn base_index(&self, id: &str) -> Option<u32> {
        self.base_ids.binary_search_by(|s| s.as_str().cmp(id)).ok().map(|i| i as u32)
    }

    pub fn ladder_index(&self, id: &str) -> Option<u32> {
        self.ladder_ids.binary_search_by(|s| s.as_str().cmp(id)).ok().map(|i| i as u32)
    }

    /// Parses `id` (base point) or `id(n)` (ladder point).
    pub fn parse_elem(&self, text: &str) -> Result<Elem> {
        let t = text.trim();
        if let Some(open) = t.find('(') {
            let id = t[..open].trim();
            let rest = t[open + 1..].strip_suffix(')').ok_or_else(|| Error::UnknownElement(t.into()))?;
            let n: u64 = rest.trim().parse().map_err(|_| Error::UnknownElement(t.into()))?;
            let i = self.ladder_index(id).ok_or_else(|| Error::UnknownElement(t.into()))?;
            return Ok(Elem::Lad(i, n));
        }
        self.base_index(t).map(Elem::Base).ok_or_else(|| Error::UnknownElement(t.into()))
    }

    /// Inverse of [`LadderPoset::display_set`]: `{a, X(3), X(2..5), X(4..), X(*)}`.
    pub fn parse_set(&self, text: &str) -> Result<SymSet> {
        let t = text.trim();
        let body = t
            .strip_prefix('{')
            .and_then(|r| r.strip_suffix('}'))
            .ok_or_else(|| Error::UnknownElement(t.into()))?;
        let mut out = self.empty();
        for item in body.split(',').map(str::trim).filter(|s| !s.is_empty()) {
            let Some(open) = item.find('(') else {
                out.insert(self.parse_elem(item)?);
                continue;
            };
            let bad = || Error::UnknownElement(item.into());
            let id = item[..open].trim();
            let i = self.ladder_index(id).ok_or_else(bad)?;
            let arg = item[open + 1..].strip_suffix(')').ok_or_else(bad)?.trim();
            let runs = if arg == "*" {
                IndexRuns::all()
            } else if let Some((a, b)) = arg.split_once("..") {
                let a: u64 = a.trim().parse().map_err(|_| bad())?;
                if b.trim().is_empty() {
                    IndexRuns::from_tail(a)
                } else {
                    let b: u64 = b.trim().parse().map_err(|_| bad())?;
                    if b < a {
                        return Err(bad());
                    }
                    IndexRuns::segment(a, b)
                }
            } else {
                IndexRuns::point(arg.parse().map_err(|_| bad())?)
            };
            let merged = out.ladder_part(i).union(&runs);
            out.set_ladder_part(i, merged);
        }
        Ok(out)
    }

    pub fn display_set(&self, s: &SymSet) -> String {
        let mut parts: Vec<String> = s.base_part().iter().map(|&b| self.base_ids[b as usize].clone()).collect();
        for (i, r) in s.ladder_parts().iter().enumerate() {
            let id = &self.ladder_ids[i];
            if r.is_all() {
                parts.push(format!("{id}(*)"));
                continue;
            }
            for &(a, b) in r.segments() {
                if a == b {
                    parts.push(format!("{id}({a})"));
                } else {
                    parts.push(format!("{id}({a}..{b})"));
                }
            }
            if let Some(t) = r.tail() {
                parts.push(format!("{id}({t}..)"));
            }
        }
        format!("{{{}}}", parts.join(", "))
    }

    pub fn display_shape(&self, s: &DirectedShape) -> String {
        match s {
            DirectedShape::Max(e) => format!("Max({})", self.display(*e)),
            DirectedShape::Tails(t) => {
                let ids: Vec<&str> = t.iter().map(|&(i, _)| self.ladder_ids[i as usize].as_str()).collect();
                format!("Tails({})", ids.join(","))
            }
        }
    }

    // ---- symbolic sets ----------------------------------------------------

    pub fn empty(&self) -> SymSet {
        SymSet::empty(self.n_base(), self.n_ladders())
    }

    pub fn universe(&self) -> SymSet {
        SymSet::universe(self.n_base(), self.n_ladders())
    }

    pub fn singleton(&self, e: Elem) -> SymSet {
        SymSet::singleton(self.n_base(), self.n_ladders(), e)
    }

    pub fn set_of(&self, elems: impl IntoIterator<Item = Elem>) -> SymSet {
        SymSet::from_elems(self.n_base(), self.n_ladders(), elems)
    }

    /// The whole of ladder `i`.
    pub fn ladder_set(&self, i: u32) -> SymSet {
        SymSet::ladder_tail(self.n_base(), self.n_ladders(), i, 0)
    }

    pub fn ladder_tail(&self, i: u32, start: u64) -> SymSet {
        SymSet::ladder_tail(self.n_base(), self.n_ladders(), i, start)
    }

    fn prefix_runs(p: Option<Option<u64>>) -> IndexRuns {
        match p {
            None => IndexRuns::empty(),
            Some(None) => IndexRuns::all(),
            Some(Some(k)) => IndexRuns::segment(0, k),
        }
    }

    pub fn up_of(&self, e: Elem) -> SymSet {
        let (u, n) = self.node(e);
        let nb = self.base_ids.len();
        let mut s = self.empty();
        for v in 0..self.rel.len() {
            if let Some(t) = self.rel[u][v].eval(n) {
                if v < nb {
                    s.insert(Elem::Base(v as u32));
                } else {
                    s.set_ladder_part((v - nb) as u32, IndexRuns::from_tail(t));
                }
            }
        }
        s
    }

    pub fn down_of(&self, e: Elem) -> SymSet {
        let (v, m) = self.node(e);
        let nb = self.base_ids.len();
        let mut s = self.empty();
        for u in 0..self.rel.len() {
            let f = &self.rel[u][v];
            if u < nb {
                if f.eval(0).is_some_and(|t| t <= m) {
                    s.insert(Elem::Base(u as u32));
                }
            } else {
                s.set_ladder_part((u - nb) as u32, Self::prefix_runs(f.max_preimage_le(m)));
            }
        }
        s
    }

    pub fn up_set(&self, a: &SymSet) -> SymSet {
        let mut s = self.empty();
        for &b in a.base_part() {
            s = s.union(&self.up_of(Elem::Base(b)));
        }
        for (i, r) in a.ladder_parts().iter().enumerate() {
            if let Some(n) = r.min() {
                s = s.union(&self.up_of(Elem::Lad(i as u32, n)));
            }
        }
        s
    }

    pub fn down_set(&self, a: &SymSet) -> SymSet {
        let mut s = self.empty();
        for &b in a.base_part() {
            s = s.union(&self.down_of(Elem::Base(b)));
        }
        for (i, r) in a.ladder_parts().iter().enumerate() {
            if r.is_infinite() {
                s = s.union(&self.ladder_down[i]);
            } else if let Some(n) = r.max() {
                s = s.union(&self.down_of(Elem::Lad(i as u32, n)));
            }
        }
        s
    }

    pub fn is_upper(&self, a: &SymSet) -> bool {
        self.up_set(a) == *a
    }

    pub fn is_lower(&self, a: &SymSet) -> bool {
        self.down_set(a) == *a
    }

    /// Common upper bounds of all members of `a`.
    pub fn upper_bounds(&self, a: &SymSet) -> SymSet {
        let mut s = self.universe();
        for &b in a.base_part() {
            s = s.intersect(&self.up_of(Elem::Base(b)));
        }
        for (i, r) in a.ladder_parts().iter().enumerate() {
            if r.is_infinite() {
                s = s.intersect(&self.ladder_ub[i]);
            } else if let Some(n) = r.max() {
                s = s.intersect(&self.up_of(Elem::Lad(i as u32, n)));
            }
        }
        s
    }

    /// Least element of `w`, if any.
    pub fn least(&self, w: &SymSet) -> Option<Elem> {
        let candidates = w
            .base_part()
            .iter()
            .map(|&b| Elem::Base(b))
            .chain(
                w.ladder_parts()
                    .iter()
                    .enumerate()
                    .filter_map(|(i, r)| r.min().map(|n| Elem::Lad(i as u32, n))),
            );
        for c in candidates {
            if w.is_subset(&self.up_of(c)) {
                return Some(c);
            }
        }
        None
    }

    /// Greatest element of `w`, if any.
    pub fn greatest(&self, w: &SymSet) -> Option<Elem> {
        let candidates = w
            .base_part()
            .iter()
            .map(|&b| Elem::Base(b))
            .chain(
                w.ladder_parts()
                    .iter()
                    .enumerate()
                    .filter_map(|(i, r)| r.max().map(|n| Elem::Lad(i as u32, n))),
            );
        for c in candidates {
            if w.is_subset(&self.down_of(c)) {
                return Some(c);
            }
        }
        None
    }

    /// Least upper bound of an arbitrary symbolic set.
    pub fn sup_of_set(&self, a: &SymSet) -> Option<Elem> {
        self.least(&self.upper_bounds(a))
    }

    /// The bottom element, if one exists.
    pub fn bottom(&self) -> Option<Elem> {
        self.least(&self.universe())
    }

    /// Everything below some point of ladder `i`.
    pub fn ladder_down(&self, i: u32) -> &SymSet {
        &self.ladder_down[i as usize]
    }

    /// Upper bounds of the whole of ladder `i`.
    pub fn ladder_ub(&self, i: u32) -> &SymSet {
        &self.ladder_ub[i as usize]
    }

    fn compute_ladder_ub(&self, i: u32) -> SymSet {
        let nb = self.base_ids.len();
        let u = nb + i as usize;
        let mut s = self.empty();
        for v in 0..self.rel.len() {
            if v == u {
                continue;
            }
            if let Some(t) = self.rel[u][v].bound() {
                if v < nb {
                    if t == 0 {
                        s.insert(Elem::Base(v as u32));
                    }
                } else {
                    s.set_ladder_part((v - nb) as u32, IndexRuns::from_tail(t));
                }
            }
        }
        s
    }

    fn compute_ladder_down(&self, i: u32) -> SymSet {
        let nb = self.base_ids.len();
        let v = nb + i as usize;
        let mut s = self.empty();
        for u in 0..self.rel.len() {
            let f = &self.rel[u][v];
            if u < nb {
                if f.eval(0).is_some() {
                    s.insert(Elem::Base(u as u32));
                }
            } else {
                s.set_ladder_part((u - nb) as u32, Self::prefix_runs(f.finite_prefix()));
            }
        }
        s
    }

    /// Ladder `i` lies entirely below the tail of ladder `k`.
    fn ladder_below_tail(&self, i: u32, k: u32) -> bool {
        let nb = self.base_ids.len();
        self.rel[nb + i as usize][nb + k as usize].finite_prefix() == Some(None)
    }

    fn compute_tail_info(&self, mask: u32) -> TailInfo {
        let ls = ladders_of_mask(mask);
        let directed = ls.iter().all(|&i| {
            ls.iter().all(|&j| {
                ls.iter().any(|&k| self.ladder_below_tail(i, k) && self.ladder_below_tail(j, k))
            })
        });
        let ub = ls
            .iter()
            .fold(self.universe(), |acc, &i| acc.intersect(&self.ladder_ub[i as usize]));
        let sup = if directed { self.least(&ub) } else { None };
        let top = ls
            .iter()
            .copied()
            .find(|&k| ls.iter().all(|&i| self.ladder_below_tail(i, k)));
        TailInfo { directed, ub, sup, top }
    }

    fn tail_info(&self, mask: u32) -> &TailInfo {
        &self.tails[mask as usize - 1]
    }

    // ---- shapes -------------------------------------------------------------

    fn check_shape(&self, s: &DirectedShape) -> Result<u32> {
        match s {
            DirectedShape::Max(e) => {
                self.check_elem(*e)?;
                Ok(0)
            }
            DirectedShape::Tails(t) => {
                if t.is_empty() {
                    return Err(Error::MalformedShape("no ladders".into()));
                }
                if t.windows(2).any(|w| w[0].0 >= w[1].0) {
                    return Err(Error::MalformedShape("ladders must be sorted and distinct".into()));
                }
                if let Some(&(i, _)) = t.iter().find(|&&(i, _)| i >= self.n_ladders()) {
                    return Err(Error::MalformedShape(format!("unknown ladder #{i}")));
                }
                let ls: Vec<u32> = t.iter().map(|&(i, _)| i).collect();
                let mask = mask_of(&ls);
                if !self.tail_info(mask).directed {
                    return Err(Error::MalformedShape(format!(
                        "{} is not directed",
                        self.display_shape(s)
                    )));
                }
                Ok(mask)
            }
        }
    }

    /// Supremum of a shape; tail upper bounds do not depend on the starts.
    pub fn sup_of_shape(&self, s: &DirectedShape) -> Result<Option<Elem>> {
        match self.check_shape(s)? {
            0 => match s {
                DirectedShape::Max(e) => Ok(Some(*e)),
                DirectedShape::Tails(_) => unreachable!(),
            },
            mask => Ok(self.tail_info(mask).sup),
        }
    }

    /// Members of a shape: `↓`-closure is what the relations need.
    pub fn shape_down(&self, s: &DirectedShape) -> SymSet {
        match s {
            DirectedShape::Max(e) => self.down_of(*e),
            DirectedShape::Tails(t) => t
                .iter()
                .fold(self.empty(), |acc, &(i, _)| acc.union(&self.ladder_down[i as usize])),
        }
    }

    /// Masks of the directed tail shapes, in increasing mask order.
    pub fn directed_masks(&self) -> impl Iterator<Item = u32> + '_ {
        (1u32..(1 << self.n_ladders())).filter(|&m| self.tail_info(m).directed)
    }

    /// Tail shapes (as masks) whose supremum is `y`.
    pub fn tail_masks_of(&self, y: Elem) -> Vec<u32> {
        self.directed_masks()
            .filter(|&m| self.tail_info(m).sup == Some(y))
            .collect()
    }

    /// A ladder of a directed mask lying below the tails of all others.
    pub fn top_ladder(&self, mask: u32) -> Option<u32> {
        self.tail_info(mask).top
    }

    pub fn tail_ub(&self, mask: u32) -> &SymSet {
        &self.tail_info(mask).ub
    }

    pub fn tail_sup(&self, mask: u32) -> Option<Elem> {
        self.tail_info(mask).sup
    }

    pub fn is_directed_mask(&self, mask: u32) -> bool {
        self.tail_info(mask).directed
    }

    /// The sup-presentation basis: `Max(y)` followed by every directed tail
    /// shape with supremum `y`.
    pub fn sup_basis(&self, y: Elem) -> Result<Vec<DirectedShape>> {
        self.check_elem(y)?;
        let mut out = vec![DirectedShape::Max(y)];
        out.extend(self.tail_masks_of(y).into_iter().map(DirectedShape::tails_of_mask));
        Ok(out)
    }

    /// Points that are suprema of some tail shape, in scan order.
    pub fn sups(&self) -> Vec<Elem> {
        self.sups.clone()
    }

    pub fn is_sup(&self, e: Elem) -> bool {
        self.sups.binary_search(&e).is_ok()
    }

    /// `None` when every directed tail shape has a supremum, otherwise the
    /// first shape without one.
    pub fn dcpo_witness(&self) -> Option<DirectedShape> {
        self.directed_masks()
            .find(|&m| self.tail_sup(m).is_none())
            .map(DirectedShape::tails_of_mask)
    }

    pub fn is_dcpo(&self) -> bool {
        self.dcpo_witness().is_none()
    }

    /// Classifies a lower set: `Some(Some(e))` if it is directed with supremum
    /// `e`, `Some(None)` if it is directed without one, `None` otherwise.
    pub fn lower_ideal(&self, w: &SymSet) -> Option<Option<Elem>> {
        if w.is_empty() {
            return None;
        }
        if let Some(m) = self.greatest(w) {
            return Some(Some(m));
        }
        let full: Vec<u32> = (0..self.n_ladders())
            .filter(|&i| w.ladder_part(i).is_all())
            .collect();
        if full.is_empty() {
            return None;
        }
        let mask = mask_of(&full);
        if !self.tail_info(mask).directed {
            return None;
        }
        let cover = full
            .iter()
            .fold(self.empty(), |acc, &i| acc.union(&self.ladder_down[i as usize]));
        if !w.is_subset(&cover) {
            return None;
        }
        Some(self.tail_sup(mask))
    }

    /// Supremum of a directed lower set.
    pub fn directed_sup(&self, w: &SymSet) -> Option<Elem> {
        self.lower_ideal(w).flatten()
    }

    // ---- sampling and truncation ------------------------------------------

    /// Base points and ladder points with index at most `depth`, in scan order.
    pub fn elems_upto(&self, depth: u64) -> Vec<Elem> {
        let mut out: Vec<Elem> = (0..self.n_base()).map(Elem::Base).collect();
        for i in 0..self.n_ladders() {
            out.extend((0..=depth).map(|n| Elem::Lad(i, n)));
        }
        out
    }

    /// Representative points: every base point and ladder indices up to
    /// `N* + 1`.
    pub fn samples(&self) -> Vec<Elem> {
        self.elems_upto(self.nstar + 1)
    }

    pub fn truncate(&self, depth: u64) -> Result<Truncation> {
        let elems = self.elems_upto(depth);
        let names: Vec<String> = elems.iter().map(|&e| self.display(e)).collect();
        let leq: Vec<Vec<bool>> = elems
            .iter()
            .map(|&x| elems.iter().map(|&y| self.leq(x, y)).collect())
            .collect();
        let by_name: BTreeMap<String, Elem> = names.iter().cloned().zip(elems.iter().copied()).collect();
        let poset = FinPoset::from_closed(names, leq)?;
        let elems = poset.names().iter().map(|n| by_name[n]).collect();
        Ok(Truncation { poset, elems })
    }

    // ---- brute-force oracle -------------------------------------------------

    /// Bounded brute-force decision of `G ≪_w x` using only the order.
    ///
    /// Finite directed sets with supremum `x` contain `x`, so they contribute
    /// the test `x ∈ ↑G`. Tail shapes are enumerated as ladder subsets with
    /// directedness and least upper bounds checked pairwise on the truncation.
    pub fn oracle_wwb(&self, g: &SymSet, x: Elem, depth: u64) -> Result<bool> {
        if depth < self.nstar {
            return Err(Error::DepthTooSmall { depth, threshold: self.nstar });
        }
        self.check_elem(x)?;
        if g.is_empty() {
            return Err(Error::EmptySet);
        }
        let x_idx = match x {
            Elem::Lad(_, n) => n,
            Elem::Base(_) => 0,
        };
        let far = 2 * depth + x_idx + 2;
        let gs = g.elems_upto(far);
        let in_up_g = |e: Elem| gs.iter().any(|&h| self.leq(h, e));
        if !in_up_g(x) {
            return Ok(false);
        }
        let trunc = self.elems_upto(depth);
        let hi = 2 * depth;
        for mask in 1u32..(1 << self.n_ladders()) {
            let ls = ladders_of_mask(mask);
            // pairwise directedness on a window of the tails
            let directed = ls.iter().all(|&i| {
                ls.iter().all(|&j| {
                    (depth..=hi).all(|n| {
                        (depth..=hi).all(|m| {
                            ls.iter().any(|&k| {
                                let p = 4 * depth + 2;
                                self.leq(Elem::Lad(i, n), Elem::Lad(k, p))
                                    && self.leq(Elem::Lad(j, m), Elem::Lad(k, p))
                            })
                        })
                    })
                })
            });
            if !directed {
                continue;
            }
            let ubs: Vec<Elem> = trunc
                .iter()
                .copied()
                .filter(|&e| ls.iter().all(|&i| self.leq(Elem::Lad(i, hi), e)))
                .collect();
            let least = ubs.iter().copied().find(|&c| ubs.iter().all(|&e| self.leq(c, e)));
            if least != Some(x) {
                continue;
            }
            let meets = ls.iter().any(|&i| in_up_g(Elem::Lad(i, far)));
            if !meets {
                return Ok(false);
            }
        }
        Ok(true)
    }

    /// Bounded brute-force decision of `G ≪ x`: `G ≪_w z` for every `z ≥ x`
    /// in the truncation.
    pub fn oracle_wb(&self, g: &SymSet, x: Elem, depth: u64) -> Result<bool> {
        for z in self.elems_upto(depth) {
            if self.leq(x, z) && !self.oracle_wwb(g, z, depth)? {
                return Ok(false);
            }
        }
        if let Elem::Lad(_, n) = x {
            if n > depth && !self.oracle_wwb(g, x, n)? {
                return Ok(false);
            }
        }
        Ok(true)
    }

    /// Re-emits the closed order as a presentation: every closed pair becomes
    /// a rule. Used when composing presentations.
    pub fn closed_rules(&self) -> Vec<(Elem, Elem, RelKind)> {
        let nb = self.base_ids.len();
        let node_elem = |u: usize| -> Elem {
            if u < nb { Elem::Base(u as u32) } else { Elem::Lad((u - nb) as u32, 0) }
        };
        let mut out = Vec::new();
        for u in 0..self.rel.len() {
            for v in 0..self.rel.len() {
                if u == v {
                    continue;
                }
                let f = &self.rel[u][v];
                if f.is_never() {
                    continue;
                }
                let kind = match (u < nb, v < nb) {
                    (true, true) => RelKind::Always,
                    (true, false) => RelKind::From(f.eval(0).expect("finite")),
                    (false, true) => match f.finite_prefix() {
                        Some(None) => RelKind::Always,
                        Some(Some(t)) => RelKind::UpTo(t),
                        None => continue,
                    },
                    (false, false) => match f.tail() {
                        Tail::Affine(c) => RelKind::Shift(c),
                        Tail::Const(c) => RelKind::Tail(c),
                        Tail::Never => continue,
                    },
                };
                out.push((node_elem(u), node_elem(v), kind));
            }
        }
        out
    }
}

fn floyd_warshall(rel: &mut [Vec<IndexMap>]) {
    let n = rel.len();
    for k in 0..n {
        for u in 0..n {
            if rel[u][k].is_never() {
                continue;
            }
            for v in 0..n {
                if rel[k][v].is_never() {
                    continue;
                }
                let via = rel[u][k].then(&rel[k][v]);
                let best = rel[u][v].min(&via);
                rel[u][v] = best;
            }
        }
    }
}

fn check_cycles(rel: &[Vec<IndexMap>], nb: usize, name_of: &dyn Fn(usize) -> String) -> Result<()> {
    let n = rel.len();
    for u in 0..n {
        let id = if u < nb { IndexMap::constant(0) } else { IndexMap::identity() };
        if rel[u][u] != id {
            return Err(Error::Cycle(name_of(u), name_of(u)));
        }
        for v in 0..n {
            if u == v {
                continue;
            }
            let back = rel[u][v].then(&rel[v][u]);
            let cyc = if u < nb {
                back.eval(0) == Some(0)
            } else {
                back.has_non_increasing_point()
            };
            if cyc {
                return Err(Error::Cycle(name_of(u), name_of(v)));
            }
        }
    }
    Ok(())
}

fn expressible(f: &IndexMap, from_base: bool, to_base: bool) -> bool {
    if f.is_never() {
        return true;
    }
    match (from_base, to_base) {
        (true, true) => *f == IndexMap::constant(0),
        (true, false) => f.head().is_empty() && matches!(f.tail(), Tail::Const(_)),
        (false, true) => match f.finite_prefix() {
            Some(None) => *f == IndexMap::constant(0),
            Some(Some(t)) => *f == IndexMap::up_to(t),
            None => true,
        },
        (false, false) => match f.tail() {
            Tail::Affine(c) => *f == IndexMap::shift(c),
            Tail::Const(c) => *f == IndexMap::constant(c),
            Tail::Never => false,
        },
    }
}

impl fmt::Display for DirectedShape {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            DirectedShape::Max(e) => write!(f, "Max({e:?})"),
            DirectedShape::Tails(t) => write!(f, "Tails({t:?})"),
        }
    }
}
