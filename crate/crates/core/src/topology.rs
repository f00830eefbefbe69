//! Scott, wwb and wf topologies as calculi on symbolic sets.
//!
//! Opens are never enumerated wholesale. A point `a` has a cofinal chain of
//! wf-neighbourhoods `↟_w F_N(a)` where `F_N(a)` adds index `N` of a top
//! ladder for every tail shape of `a`; `↟_w` is antitone for the Smyth
//! preorder, so large `N` gives the smallest one. For wwb the smallest basic
//! neighbourhoods come from the maximal points of `↡_w a` (or a far index on
//! an infinite ladder part). Past the uniformity threshold plus the largest
//! index a set mentions, membership in interiors and closures is constant
//! along each ladder; index `H + 1` stands for that whole tail.

use crate::checkers::{self, Verdict, Witness};
use crate::error::{Error, Result};
use crate::ladder::{Elem, IndexRuns, LadderPoset, SymSet};
use crate::relations::{wwb_down, wwb_up};

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum TopologyTag {
    Scott,
    Wwb,
    Wf,
}

impl TopologyTag {
    pub fn name(self) -> &'static str {
        match self {
            TopologyTag::Scott => "scott",
            TopologyTag::Wwb => "wwb",
            TopologyTag::Wf => "wf",
        }
    }
}

/// Basic open `↟_w F` with its generator.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BasicOpen {
    pub tag: TopologyTag,
    pub generator: Vec<Elem>,
    pub realized: SymSet,
}

/// Base points and ladder indices `0..=h + 1`; the last index of each ladder
/// represents every larger one.
struct Grid {
    h: u64,
    nb: usize,
    elems: Vec<Elem>,
}

impl Grid {
    fn new(p: &LadderPoset, h: u64) -> Self {
        Grid { h, nb: p.n_base() as usize, elems: p.elems_upto(h + 1) }
    }

    /// The representative index takes the eventual value of each ladder
    /// part, so sets mentioning indices beyond the grid keep their tails.
    fn bits(&self, s: &SymSet) -> Vec<bool> {
        let rep = self.h + 1;
        let far = rep.max(s.max_mentioned() + 1);
        self.elems
            .iter()
            .map(|&e| match e {
                Elem::Lad(i, n) if n == rep => s.contains(Elem::Lad(i, far)),
                e => s.contains(e),
            })
            .collect()
    }

    fn set(&self, p: &LadderPoset, bits: &[bool]) -> SymSet {
        let mut s = p.empty();
        let width = self.h as usize + 2;
        for (k, &on) in bits.iter().enumerate() {
            if !on {
                continue;
            }
            match self.elems[k] {
                Elem::Base(_) => s.insert(self.elems[k]),
                Elem::Lad(i, n) if n == self.h + 1 => {
                    let r = s.ladder_part(i).union(&IndexRuns::from_tail(n));
                    s.set_ladder_part(i, r);
                }
                e @ Elem::Lad(..) => s.insert(e),
            }
        }
        debug_assert_eq!(self.elems.len(), self.nb + width * p.n_ladders() as usize);
        s
    }
}

fn subset(a: &[bool], b: &[bool]) -> bool {
    a.iter().zip(b).all(|(&x, &y)| !x || y)
}

fn meets(a: &[bool], b: &[bool]) -> bool {
    a.iter().zip(b).any(|(&x, &y)| x && y)
}

fn horizon(p: &LadderPoset, sets: &[&SymSet]) -> u64 {
    let m = sets.iter().map(|s| s.max_mentioned()).max().unwrap_or(0);
    p.uniformity_threshold() + m + 2
}

/// `F_N(a)`: `a` plus index `n` of a top ladder of each tail shape of `a`.
pub fn chain_member(p: &LadderPoset, a: Elem, n: u64) -> Vec<Elem> {
    let mut f = vec![a];
    for m in p.tail_masks_of(a) {
        let k = p.top_ladder(m).expect("directed tail shapes have a top ladder");
        f.push(Elem::Lad(k, n));
    }
    f.sort();
    f.dedup();
    f
}

/// Smallest wf-neighbourhood of `a` among those with generators below index `n`.
fn wf_neighbourhood(p: &LadderPoset, a: Elem, n: u64) -> SymSet {
    wwb_up(p, &p.set_of(chain_member(p, a, n))).expect("nonempty generator")
}

/// Generators of the smallest wwb-neighbourhoods of `a`.
fn wwb_generators(p: &LadderPoset, a: Elem, n: u64) -> Vec<Elem> {
    let w = wwb_down(p, a).expect("valid element");
    let mut out: Vec<Elem> = w.base_part().iter().map(|&b| Elem::Base(b)).collect();
    for (i, r) in w.ladder_parts().iter().enumerate() {
        if r.is_infinite() {
            out.push(Elem::Lad(i as u32, n.max(r.max_mentioned())));
        } else if let Some(m) = r.max() {
            out.push(Elem::Lad(i as u32, m));
        }
    }
    out
}

/// Per-point smallest neighbourhoods on a grid, as bit vectors.
struct Neighbourhoods {
    grid: Grid,
    nbhd: Vec<Vec<Vec<bool>>>,
}

impl Neighbourhoods {
    fn new(p: &LadderPoset, tag: TopologyTag, h: u64) -> Self {
        let grid = Grid::new(p, h);
        let far = 2 * h + 2;
        let nbhd = grid
            .elems
            .iter()
            .map(|&a| match tag {
                TopologyTag::Wf => vec![grid.bits(&wf_neighbourhood(p, a, far))],
                TopologyTag::Wwb => wwb_generators(p, a, far)
                    .into_iter()
                    .map(|x| grid.bits(&wwb_up(p, &p.singleton(x)).expect("nonempty")))
                    .collect(),
                TopologyTag::Scott => unreachable!("Scott opens are handled symbolically"),
            })
            .collect();
        Neighbourhoods { grid, nbhd }
    }

    fn interior_bits(&self, a: &[bool]) -> Vec<bool> {
        (0..a.len())
            .map(|k| a[k] && self.nbhd[k].iter().any(|n| subset(n, a)))
            .collect()
    }

    fn is_open(&self, a: &[bool]) -> bool {
        self.interior_bits(a) == a
    }

    fn closure_bits(&self, a: &[bool]) -> Vec<bool> {
        (0..a.len())
            .map(|k| self.nbhd[k].iter().all(|n| meets(n, a)))
            .collect()
    }
}

pub fn is_scott_open(p: &LadderPoset, u: &SymSet) -> bool {
    if !p.is_upper(u) {
        return false;
    }
    p.sups().into_iter().filter(|&y| u.contains(y)).all(|y| {
        p.tail_masks_of(y).into_iter().all(|m| {
            crate::ladder::ladders_of_mask(m)
                .into_iter()
                .any(|i| !u.ladder_part(i).is_empty())
        })
    })
}

/// Least Scott-closed superset: lower closure, then suprema of tail shapes
/// lying inside, to a fixpoint.
pub fn scott_closure(p: &LadderPoset, a: &SymSet) -> SymSet {
    let mut w = p.down_set(a);
    loop {
        let mut grown = w.clone();
        for m in p.directed_masks() {
            let inside = crate::ladder::ladders_of_mask(m)
                .into_iter()
                .all(|i| w.ladder_part(i).is_all());
            if let (true, Some(y)) = (inside, p.tail_sup(m)) {
                if !w.contains(y) {
                    grown = grown.union(&p.down_of(y));
                }
            }
        }
        if grown == w {
            return w;
        }
        w = grown;
    }
}

pub fn scott_interior(p: &LadderPoset, a: &SymSet) -> SymSet {
    scott_closure(p, &a.complement()).complement()
}

/// The wwb basics cover the poset and are filtered at every point.
pub fn wwb_topology_exists(p: &LadderPoset) -> bool {
    // a non-supremum `a` has `a ≪_w a`, and `↟_w a` is inside every basic
    // open containing `a`
    let sups = p.sups();
    if sups
        .iter()
        .any(|&a| wwb_down(p, a).expect("valid element").is_empty())
    {
        return false;
    }
    let n = p.uniformity_threshold();
    let h = 2 * n + 4;
    let grid = Grid::new(p, h);
    let cands = p.elems_upto(h);
    let ups: Vec<(Elem, Vec<bool>)> = cands
        .iter()
        .map(|&x| (x, grid.bits(&wwb_up(p, &p.singleton(x)).expect("nonempty"))))
        .collect();
    for &a in &sups {
        let below = wwb_down(p, a).expect("valid element");
        let around: Vec<&(Elem, Vec<bool>)> = ups.iter().filter(|(x, _)| below.contains(*x)).collect();
        let small: Vec<&&(Elem, Vec<bool>)> = around
            .iter()
            .filter(|(x, _)| match x {
                Elem::Lad(_, k) => *k <= n + 1,
                Elem::Base(_) => true,
            })
            .collect();
        for (_, u1) in &small {
            for (_, u2) in &small {
                let ok = around
                    .iter()
                    .any(|(_, u3)| subset(u3, u1) && subset(u3, u2));
                if !ok {
                    return false;
                }
            }
        }
    }
    true
}

fn require(p: &LadderPoset, tag: TopologyTag) -> Result<()> {
    match tag {
        TopologyTag::Scott => Ok(()),
        TopologyTag::Wf => {
            if checkers::is_quasiexact(p).holds {
                Ok(())
            } else {
                Err(Error::WfTopologyUndefined)
            }
        }
        TopologyTag::Wwb => {
            if wwb_topology_exists(p) {
                Ok(())
            } else {
                Err(Error::WwbTopologyUndefined)
            }
        }
    }
}

pub fn wf_basic(p: &LadderPoset, f: &[Elem]) -> Result<BasicOpen> {
    require(p, TopologyTag::Wf)?;
    let realized = wwb_up(p, &p.set_of(f.iter().copied()))?;
    let mut generator = f.to_vec();
    generator.sort();
    generator.dedup();
    Ok(BasicOpen { tag: TopologyTag::Wf, generator, realized })
}

pub fn wwb_basic(p: &LadderPoset, x: Elem) -> Result<BasicOpen> {
    require(p, TopologyTag::Wwb)?;
    p.check_elem(x)?;
    let realized = wwb_up(p, &p.singleton(x))?;
    Ok(BasicOpen { tag: TopologyTag::Wwb, generator: vec![x], realized })
}

pub fn interior(p: &LadderPoset, tag: TopologyTag, a: &SymSet) -> Result<SymSet> {
    require(p, tag)?;
    if tag == TopologyTag::Scott {
        return Ok(scott_interior(p, a));
    }
    let nb = Neighbourhoods::new(p, tag, horizon(p, &[a]));
    let bits = nb.interior_bits(&nb.grid.bits(a));
    Ok(nb.grid.set(p, &bits))
}

pub fn closure(p: &LadderPoset, tag: TopologyTag, a: &SymSet) -> Result<SymSet> {
    require(p, tag)?;
    if tag == TopologyTag::Scott {
        return Ok(scott_closure(p, a));
    }
    let nb = Neighbourhoods::new(p, tag, horizon(p, &[a]));
    let bits = nb.closure_bits(&nb.grid.bits(a));
    Ok(nb.grid.set(p, &bits))
}

/// Closure-membership oracle reused across many sets with bounded indices.
pub struct ClosureCtx<'a> {
    p: &'a LadderPoset,
    tag: TopologyTag,
    nb: Option<Neighbourhoods>,
}

impl<'a> ClosureCtx<'a> {
    /// Valid for sets mentioning indices up to `max_index`.
    pub fn new(p: &'a LadderPoset, tag: TopologyTag, max_index: u64) -> Result<Self> {
        require(p, tag)?;
        let nb = match tag {
            TopologyTag::Scott => None,
            t => Some(Neighbourhoods::new(p, t, p.uniformity_threshold() + max_index + 2)),
        };
        Ok(ClosureCtx { p, tag, nb })
    }

    pub fn in_closure(&self, x: Elem, a: &SymSet) -> bool {
        match &self.nb {
            None => scott_closure(self.p, a).contains(x),
            Some(nb) => {
                let h = nb.grid.h;
                let k = nb
                    .grid
                    .elems
                    .iter()
                    .position(|&e| match (e, x) {
                        (Elem::Lad(i, n), Elem::Lad(j, m)) => i == j && n == m.min(h + 1),
                        (e, x) => e == x,
                    })
                    .expect("point on grid");
                let bits = nb.grid.bits(a);
                nb.nbhd[k].iter().all(|n| meets(n, &bits))
            }
        }
    }

    pub fn tag(&self) -> TopologyTag {
        self.tag
    }
}

/// Canonical opens of `tag` with parameters up to the representative range.
fn canonical_opens(p: &LadderPoset, tag: TopologyTag) -> Vec<SymSet> {
    let n = p.uniformity_threshold();
    let samples = p.samples();
    match tag {
        TopologyTag::Scott => {
            let nb = p.n_base();
            let mut starts: Vec<Vec<Option<u64>>> = vec![Vec::new()];
            for _ in 0..p.n_ladders() {
                let mut next = Vec::new();
                for s in &starts {
                    for t in std::iter::once(None).chain((0..=n + 1).map(Some)) {
                        let mut v = s.clone();
                        v.push(t);
                        next.push(v);
                    }
                }
                starts = next;
            }
            let mut out = Vec::new();
            for bmask in 0u64..(1u64 << nb) {
                for st in &starts {
                    let mut u = p.set_of((0..nb).filter(|b| bmask & (1 << b) != 0).map(Elem::Base));
                    for (i, t) in st.iter().enumerate() {
                        if let Some(t) = t {
                            u = u.union(&p.ladder_tail(i as u32, *t));
                        }
                    }
                    if is_scott_open(p, &u) {
                        out.push(u);
                    }
                }
            }
            out
        }
        TopologyTag::Wwb => samples
            .iter()
            .map(|&x| wwb_up(p, &p.singleton(x)).expect("nonempty"))
            .collect(),
        TopologyTag::Wf => {
            let mut out = Vec::new();
            for (k, &x) in samples.iter().enumerate() {
                out.push(wwb_up(p, &p.singleton(x)).expect("nonempty"));
                for &y in &samples[k + 1..] {
                    out.push(wwb_up(p, &p.set_of([x, y])).expect("nonempty"));
                }
            }
            out
        }
    }
}

/// Every canonical open of `sub` is open in `sup`.
pub fn inclusion_check(p: &LadderPoset, sub: TopologyTag, sup: TopologyTag) -> Result<Verdict> {
    require(p, sub)?;
    require(p, sup)?;
    let opens = canonical_opens(p, sub);
    let h = 2 * p.uniformity_threshold() + 4;
    let nb = match sup {
        TopologyTag::Scott => None,
        t => Some(Neighbourhoods::new(p, t, h)),
    };
    for u in opens {
        let open = match &nb {
            None => is_scott_open(p, &u),
            Some(nb) => nb.is_open(&nb.grid.bits(&u)),
        };
        if !open {
            return Ok(Verdict::fail(Witness::Set(u)));
        }
    }
    Ok(Verdict::pass())
}

/// `↟_w F = ⋃_{x ∈ F} ↟_w x = int_wf(↑F)` on mmc quasiexact posets.
pub fn interior_identity_check(p: &LadderPoset, f: &[Elem]) -> Result<bool> {
    let qe = checkers::is_quasiexact(p).holds;
    let mmc = qe && checkers::moderately_meet_continuous(p)?.holds;
    if !(qe && mmc) {
        return Err(Error::PreconditionFailed(
            "requires a moderately meet continuous quasiexact poset".into(),
        ));
    }
    let fs = p.set_of(f.iter().copied());
    let joint = wwb_up(p, &fs)?;
    let mut pointwise = p.empty();
    for &x in f {
        pointwise = pointwise.union(&wwb_up(p, &p.singleton(x))?);
    }
    let int = interior(p, TopologyTag::Wf, &p.up_set(&fs))?;
    Ok(joint == pointwise && pointwise == int)
}
