//! Shared fixtures and test-side oracles.
//!
//! The oracles here use nothing but `leq` on bounded windows of the
//! presentation; they do not touch sup bases, tail tables or symbolic sets
//! beyond membership.
#![allow(dead_code)]

use posetlab::gallery::{ladder_fixture, LADDER_FIXTURES};
use posetlab::relations::{way_below, weak_way_below};
use posetlab::search::{random_presentation, GenConfig};
use posetlab::{Elem, FinPoset, FiniteFamily, LadderPoset, SymSet};
use rand::seq::SliceRandom;
use rand::Rng;
use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha8Rng;

pub fn gallery() -> Vec<LadderPoset> {
    LADDER_FIXTURES.iter().map(|n| ladder_fixture(n).unwrap()).collect()
}

/// The first `n` validated presentations of the default generator.
pub fn random_posets(seed: u64, n: usize) -> Vec<LadderPoset> {
    let cfg = GenConfig { seed, ..GenConfig::default() };
    (0u64..).filter_map(|i| random_presentation(&cfg, i)).take(n).collect()
}

pub fn random_dcpos(seed: u64, n: usize) -> Vec<LadderPoset> {
    let cfg = GenConfig { seed, ..GenConfig::default() };
    (0u64..)
        .filter_map(|i| random_presentation(&cfg, i))
        .filter(|p| p.is_dcpo())
        .take(n)
        .collect()
}

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// Test points: bases, ladder indices up to `N* + 1`, and every supremum.
pub fn points(p: &LadderPoset) -> Vec<Elem> {
    let mut v = p.elems_upto(p.uniformity_threshold() + 1);
    v.extend(p.sups());
    v.sort();
    v.dedup();
    v
}

/// Random set mixing base points, isolated ladder points, segments and
/// tails, with indices below `N* + 3`.
pub fn random_symset(p: &LadderPoset, r: &mut impl Rng, nonempty: bool) -> SymSet {
    let hi = p.uniformity_threshold() + 3;
    loop {
        let mut s = p.empty();
        for b in 0..p.n_base() {
            if r.gen_bool(0.35) {
                s.insert(Elem::Base(b));
            }
        }
        for i in 0..p.n_ladders() {
            match r.gen_range(0..5) {
                0 | 1 => {}
                2 => s.insert(Elem::Lad(i, r.gen_range(0..=hi))),
                3 => {
                    let a = r.gen_range(0..=hi);
                    s = s.union(&p.ladder_tail(i, a).difference(&p.ladder_tail(i, a + r.gen_range(1..4))));
                }
                _ => s = s.union(&p.ladder_tail(i, r.gen_range(0..=hi))),
            }
        }
        if !nonempty || !s.is_empty() {
            return s;
        }
    }
}

/// Random finite set of at most `k` points.
pub fn random_finite(p: &LadderPoset, r: &mut impl Rng, k: usize) -> Vec<Elem> {
    let pts = points(p);
    let n = r.gen_range(1..=k.min(pts.len()));
    let mut v: Vec<Elem> = pts.choose_multiple(r, n).copied().collect();
    v.sort();
    v
}

// ---- brute-force relation oracle ------------------------------------------

/// Joint ladder tails found directed on a window, with their least upper
/// bound among window candidates.
pub struct BruteOracle<'a> {
    p: &'a LadderPoset,
    depth: u64,
    window: u64,
    tails: Vec<(Vec<u32>, Option<Elem>)>,
    candidates: Vec<Elem>,
}

impl<'a> BruteOracle<'a> {
    pub fn new(p: &'a LadderPoset, depth: u64) -> Self {
        let window = 3 * depth + 6;
        let candidates = p.elems_upto(window);
        let mut tails = Vec::new();
        let nl = p.n_ladders();
        for mask in 1u32..(1 << nl) {
            let s: Vec<u32> = (0..nl).filter(|i| mask & (1 << i) != 0).collect();
            let directed = s.iter().all(|&i| {
                s.iter().all(|&j| {
                    (depth..=2 * depth).all(|n| {
                        (depth..=2 * depth).all(|m| {
                            s.iter().any(|&k| {
                                (depth..=window).any(|r| {
                                    p.leq(Elem::Lad(i, n), Elem::Lad(k, r)) && p.leq(Elem::Lad(j, m), Elem::Lad(k, r))
                                })
                            })
                        })
                    })
                })
            });
            if !directed {
                continue;
            }
            let ubs: Vec<Elem> = candidates
                .iter()
                .copied()
                // an index far beyond every candidate stands in for the whole tail
                .filter(|&e| s.iter().all(|&i| p.leq(Elem::Lad(i, 3 * window), e)))
                .collect();
            let least = ubs.iter().copied().find(|&c| ubs.iter().all(|&e| p.leq(c, e)));
            tails.push((s, least));
        }
        BruteOracle { p, depth, window, tails, candidates }
    }

    /// Ladder subsets whose joint tail is directed, with the least upper
    /// bound found among the candidates.
    pub fn directed_tails(&self) -> &[(Vec<u32>, Option<Elem>)] {
        &self.tails
    }

    pub fn window(&self) -> u64 {
        self.window
    }

    fn in_up(&self, g: &SymSet, e: Elem) -> bool {
        g.elems_upto(self.window + g.max_mentioned()).iter().any(|&h| self.p.leq(h, e))
    }

    /// Every directed set with supremum `x` meets `↑G`.
    pub fn wwb(&self, g: &SymSet, x: Elem) -> bool {
        if !self.in_up(g, x) {
            return false;
        }
        self.tails.iter().filter(|(_, sup)| *sup == Some(x)).all(|(s, _)| {
            s.iter().any(|&i| (self.depth..=self.window).any(|n| self.in_up(g, Elem::Lad(i, n))))
        })
    }

    /// `G ≪_w z` for every `z ≥ x` among the candidates.
    pub fn wb(&self, g: &SymSet, x: Elem) -> bool {
        self.candidates
            .iter()
            .filter(|&&z| self.p.leq(x, z))
            .all(|&z| self.wwb(g, z))
    }
}

/// Symbolic relations against the window oracle at depth `N* + 3`, over
/// singletons, random finite sets and random symbolic sets.
pub fn disagreements(p: &LadderPoset, seed: u64) -> Vec<String> {
    let oracle = BruteOracle::new(p, p.uniformity_threshold() + 3);
    let pts = points(p);
    let mut r = rng(seed);
    let mut gs: Vec<_> = pts.iter().map(|&e| p.singleton(e)).collect();
    gs.extend((0..12).map(|_| p.set_of(random_finite(p, &mut r, 3))));
    gs.extend((0..6).map(|_| random_symset(p, &mut r, true)));
    let mut bad = Vec::new();
    for g in &gs {
        for &x in &pts {
            let w = weak_way_below(p, g, x).unwrap();
            if w != oracle.wwb(g, x) {
                bad.push(format!("{}: wwb {} {} = {w}", p.name(), p.display_set(g), p.display(x)));
            }
            let s = way_below(p, g, x).unwrap();
            if s != oracle.wb(g, x) {
                bad.push(format!("{}: wb {} {} = {s}", p.name(), p.display_set(g), p.display(x)));
            }
        }
    }
    bad
}

// ---- finite posets and directed families -----------------------------------

pub fn random_finposet(r: &mut impl Rng, max: usize) -> FinPoset {
    let n = r.gen_range(1..=max);
    let names: Vec<String> = (0..n).map(|i| format!("e{i}")).collect();
    let mut pairs = Vec::new();
    for i in 0..n {
        for j in i + 1..n {
            if r.gen_bool(0.3) {
                pairs.push((names[i].clone(), names[j].clone()));
            }
        }
    }
    FinPoset::build(&names, &pairs).unwrap()
}

/// A Smyth-descending chain (hence directed) of at most `max_sets` sets of
/// size at most `max_size`, shuffled.
pub fn random_directed_family(p: &FinPoset, r: &mut impl Rng, max_sets: usize, max_size: usize) -> FiniteFamily {
    let all: Vec<usize> = (0..p.len()).collect();
    let k = r.gen_range(1..=max_sets);
    let first_n = r.gen_range(1..=max_size.min(all.len()));
    let mut sets: Vec<Vec<usize>> = vec![all.choose_multiple(r, first_n).copied().collect()];
    for _ in 1..k {
        let up: Vec<usize> = p.up_set(sets.last().unwrap()).into_iter().collect();
        let m = r.gen_range(1..=max_size.min(up.len()));
        sets.push(up.choose_multiple(r, m).copied().collect());
    }
    sets.shuffle(r);
    FiniteFamily::new(p, sets).unwrap()
}
