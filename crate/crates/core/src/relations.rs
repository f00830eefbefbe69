//! Weak way-below and way-below on ladder presentations.
//!
//! `G ≪_w x` holds iff every shape of the sup basis of `x` meets `↑G`. For a
//! tail shape that means `↑G` meets one of its ladders, equivalently `G`
//! meets the down-closure of that ladder. Only the finitely many suprema of
//! tail shapes carry conditions beyond `x ∈ ↑G`, which makes every relation
//! below an exact symbolic computation.

use crate::error::{Error, Result};
use crate::ladder::{DirectedShape, Elem, LadderPoset, SymSet};

/// Finite surrogate for `fin_w(x)` or `fin(x)`: a finite `F` belongs to the
/// family iff `x ∈ ↑F` and `F` meets every condition set.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct HittingSpec {
    pub anchor: Elem,
    /// `(shape, ↓shape)` pairs; only tail shapes contribute.
    pub conditions: Vec<(DirectedShape, SymSet)>,
}

impl HittingSpec {
    pub fn satisfied_by(&self, p: &LadderPoset, f: &SymSet) -> bool {
        p.up_set(f).contains(self.anchor) && self.conditions.iter().all(|(_, c)| c.meets(f))
    }

    pub fn condition_sets(&self) -> impl Iterator<Item = &SymSet> {
        self.conditions.iter().map(|(_, c)| c)
    }
}

/// Refutation of weak increasingness: `x ≪_w y ≤ z ≪_w u` but not `x ≪_w z`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct WitnessQuadruple {
    pub x: Elem,
    pub y: Elem,
    pub z: Elem,
    pub u: Elem,
}

fn nonempty(g: &SymSet) -> Result<()> {
    if g.is_empty() { Err(Error::EmptySet) } else { Ok(()) }
}

/// `↓E` for the tail shape given by `mask`.
fn tail_down(p: &LadderPoset, mask: u32) -> SymSet {
    p.shape_down(&DirectedShape::tails_of_mask(mask))
}

/// Whether the up-closed set `up` meets the tails of `mask`.
fn upper_meets_tails(up: &SymSet, mask: u32) -> bool {
    crate::ladder::ladders_of_mask(mask)
        .into_iter()
        .any(|i| !up.ladder_part(i).is_empty())
}

/// The first basis shape of `x` missing `↑G`, or `None` if `G ≪_w x`.
pub fn wwb_failure(p: &LadderPoset, g: &SymSet, x: Elem) -> Result<Option<DirectedShape>> {
    nonempty(g)?;
    p.check_elem(x)?;
    let up = p.up_set(g);
    Ok(failure_in_up(p, &up, x))
}

fn failure_in_up(p: &LadderPoset, up: &SymSet, x: Elem) -> Option<DirectedShape> {
    if !up.contains(x) {
        return Some(DirectedShape::Max(x));
    }
    p.tail_masks_of(x)
        .into_iter()
        .find(|&m| !upper_meets_tails(up, m))
        .map(DirectedShape::tails_of_mask)
}

pub fn weak_way_below(p: &LadderPoset, g: &SymSet, x: Elem) -> Result<bool> {
    Ok(wwb_failure(p, g, x)?.is_none())
}

/// The first `(z, shape)` with `z ≥ x` whose shape misses `↑G`, or `None` if
/// `G ≪ x`.
pub fn wb_failure(p: &LadderPoset, g: &SymSet, x: Elem) -> Result<Option<(Elem, DirectedShape)>> {
    nonempty(g)?;
    p.check_elem(x)?;
    let up = p.up_set(g);
    if !up.contains(x) {
        return Ok(Some((x, DirectedShape::Max(x))));
    }
    for z in p.sups() {
        if p.leq(x, z) {
            if let Some(s) = failure_in_up(p, &up, z) {
                return Ok(Some((z, s)));
            }
        }
    }
    Ok(None)
}

pub fn way_below(p: &LadderPoset, g: &SymSet, x: Elem) -> Result<bool> {
    Ok(wb_failure(p, g, x)?.is_none())
}

/// `↟_w F = {a : F ≪_w a}`.
pub fn wwb_up(p: &LadderPoset, f: &SymSet) -> Result<SymSet> {
    nonempty(f)?;
    let up = p.up_set(f);
    let bad: Vec<Elem> = p
        .sups()
        .into_iter()
        .filter(|&y| up.contains(y) && failure_in_up(p, &up, y).is_some())
        .collect();
    Ok(up.difference(&p.set_of(bad)))
}

/// `↟F = {a : F ≪ a}`: `↑F` minus everything below a failing supremum.
pub fn wb_up(p: &LadderPoset, f: &SymSet) -> Result<SymSet> {
    nonempty(f)?;
    let up = p.up_set(f);
    let bad: Vec<Elem> = p
        .sups()
        .into_iter()
        .filter(|&y| up.contains(y) && failure_in_up(p, &up, y).is_some())
        .collect();
    Ok(up.difference(&p.down_set(&p.set_of(bad))))
}

pub fn weak_way_below_set(p: &LadderPoset, g: &SymSet, h: &SymSet) -> Result<bool> {
    nonempty(h)?;
    Ok(h.is_subset(&wwb_up(p, g)?))
}

pub fn way_below_set(p: &LadderPoset, g: &SymSet, h: &SymSet) -> Result<bool> {
    nonempty(h)?;
    Ok(h.is_subset(&wb_up(p, g)?))
}

/// `↡_w x`.
pub fn wwb_down(p: &LadderPoset, x: Elem) -> Result<SymSet> {
    p.check_elem(x)?;
    Ok(p
        .tail_masks_of(x)
        .into_iter()
        .fold(p.down_of(x), |acc, m| acc.intersect(&tail_down(p, m))))
}

/// `↡x`.
pub fn wb_down(p: &LadderPoset, x: Elem) -> Result<SymSet> {
    p.check_elem(x)?;
    let mut acc = p.down_of(x);
    for z in p.sups() {
        if p.leq(x, z) {
            for m in p.tail_masks_of(z) {
                acc = acc.intersect(&tail_down(p, m));
            }
        }
    }
    Ok(acc)
}

/// Hitting specification for `fin_w(x)`.
pub fn fin_w_spec(p: &LadderPoset, x: Elem) -> Result<HittingSpec> {
    p.check_elem(x)?;
    let conditions = p
        .tail_masks_of(x)
        .into_iter()
        .map(|m| (DirectedShape::tails_of_mask(m), tail_down(p, m)))
        .collect();
    Ok(HittingSpec { anchor: x, conditions })
}

/// Hitting specification for `fin(x)`: conditions from every supremum above
/// `x`, deduplicated.
pub fn fin_spec(p: &LadderPoset, x: Elem) -> Result<HittingSpec> {
    p.check_elem(x)?;
    let mut conditions: Vec<(DirectedShape, SymSet)> = Vec::new();
    for z in p.sups() {
        if !p.leq(x, z) {
            continue;
        }
        for m in p.tail_masks_of(z) {
            let s = DirectedShape::tails_of_mask(m);
            if !conditions.iter().any(|(t, _)| *t == s) {
                conditions.push((s, tail_down(p, m)));
            }
        }
    }
    Ok(HittingSpec { anchor: x, conditions })
}

/// `None` if `≪_w` is weakly increasing, else the first refuting quadruple.
///
/// Only a supremum `z` can have `↡_w z ⊊ ⋃_{y ≤ z} ↡_w y`, and for
/// non-suprema `↡_w y = ↓y`.
pub fn weakly_increasing(p: &LadderPoset) -> Option<WitnessQuadruple> {
    let sups = p.sups();
    let sup_set = p.set_of(sups.iter().copied());
    for &z in &sups {
        let above = wwb_up(p, &p.singleton(z)).expect("singleton is nonempty");
        if above.is_empty() {
            continue;
        }
        let dz = p.down_of(z);
        let mut reach = p.down_set(&dz.difference(&sup_set));
        for &y in &sups {
            if p.leq(y, z) {
                reach = reach.union(&wwb_down(p, y).expect("valid element"));
            }
        }
        let own = wwb_down(p, z).expect("valid element");
        let bad = reach.difference(&own);
        let Some(x) = bad.first() else { continue };
        let xz = p.set_of([x, z]);
        let ys = dz.intersect(&wwb_up(p, &p.singleton(x)).expect("nonempty"));
        let y = ys.difference(&xz).first().or_else(|| ys.first()).expect("x reaches z");
        let xyz = p.set_of([x, y, z]);
        let u = above.difference(&xyz).first().or_else(|| above.first()).expect("nonempty");
        return Some(WitnessQuadruple { x, y, z, u });
    }
    None
}

/// Searches `↑H` for a finite `F` with `F ≪_w x`, then drops members in scan
/// order while the relation survives.
pub fn finitary_wwb_reduction(p: &LadderPoset, h: &SymSet, x: Elem) -> Result<Option<Vec<Elem>>> {
    if !weak_way_below(p, h, x)? {
        return Err(Error::PreconditionFailed("H is not weakly way below x".into()));
    }
    let up = p.up_set(h);
    let mut f: Vec<Elem> = Vec::new();
    match up.intersect(&p.down_of(x)).first() {
        Some(e) => f.push(e),
        None => return Ok(None),
    }
    for (_, c) in fin_w_spec(p, x)?.conditions {
        match up.intersect(&c).first() {
            Some(e) => {
                if !f.contains(&e) {
                    f.push(e)
                }
            }
            None => return Ok(None),
        }
    }
    f.sort();
    let mut i = 0;
    while i < f.len() {
        let mut trial = f.clone();
        trial.remove(i);
        if !trial.is_empty() && weak_way_below(p, &p.set_of(trial.iter().copied()), x)? {
            f = trial;
        } else {
            i += 1;
        }
    }
    Ok(Some(f))
}
