//! Algebraic laws of the weak way-below relation, on random symbolic sets
//! over every gallery poset.

mod common;

use posetlab::relations::{way_below, weak_way_below, weak_way_below_set};
use posetlab::{Elem, LadderPoset, SymSet};
use proptest::prelude::*;
use rand::seq::SliceRandom;
use rand::Rng;

const CASES: u32 = 500;

struct Case {
    p: LadderPoset,
    pts: Vec<Elem>,
}

fn cases() -> Vec<Case> {
    common::gallery().into_iter().map(|p| Case { pts: common::points(&p), p }).collect()
}

fn pick(c: &Case, r: &mut impl Rng) -> Elem {
    *c.pts.choose(r).unwrap()
}

fn wwb(p: &LadderPoset, g: &SymSet, x: Elem) -> bool {
    weak_way_below(p, g, x).unwrap()
}

/// Points of `h` far enough out that every ladder region is represented.
fn sample_of(p: &LadderPoset, h: &SymSet) -> Vec<Elem> {
    h.elems_upto(h.max_mentioned() + p.uniformity_threshold() + 3)
}

proptest! {
    #![proptest_config(ProptestConfig { cases: CASES, failure_persistence: None, ..ProptestConfig::default() })]

    #[test]
    fn set_relation_is_pointwise(seed in any::<u64>()) {
        let mut r = common::rng(seed);
        for c in cases() {
            let g = common::random_symset(&c.p, &mut r, true);
            let h = common::random_symset(&c.p, &mut r, true);
            let pointwise = sample_of(&c.p, &h).into_iter().all(|x| wwb(&c.p, &g, x));
            prop_assert_eq!(weak_way_below_set(&c.p, &g, &h).unwrap(), pointwise, "{}", c.p.name());
        }
    }

    #[test]
    fn only_the_upper_closure_matters(seed in any::<u64>()) {
        let mut r = common::rng(seed);
        for c in cases() {
            let g = common::random_symset(&c.p, &mut r, true);
            let h = common::random_symset(&c.p, &mut r, true);
            let up = c.p.up_set(&g);
            prop_assert_eq!(
                weak_way_below_set(&c.p, &g, &h).unwrap(),
                weak_way_below_set(&c.p, &up, &h).unwrap(),
                "{}", c.p.name()
            );
        }
    }

    #[test]
    fn monotone_on_the_left(seed in any::<u64>()) {
        let mut r = common::rng(seed);
        for c in cases() {
            let g = common::random_symset(&c.p, &mut r, true);
            let bigger = g.union(&common::random_symset(&c.p, &mut r, false));
            let h = common::random_symset(&c.p, &mut r, true);
            if weak_way_below_set(&c.p, &g, &h).unwrap() {
                prop_assert!(weak_way_below_set(&c.p, &bigger, &h).unwrap(), "{}", c.p.name());
            }
        }
    }

    #[test]
    fn antitone_on_the_right(seed in any::<u64>()) {
        let mut r = common::rng(seed);
        for c in cases() {
            let g = common::random_symset(&c.p, &mut r, true);
            let h = common::random_symset(&c.p, &mut r, true);
            let smaller = h.intersect(&common::random_symset(&c.p, &mut r, false));
            if smaller.is_empty() {
                continue;
            }
            if weak_way_below_set(&c.p, &g, &h).unwrap() {
                prop_assert!(weak_way_below_set(&c.p, &g, &smaller).unwrap(), "{}", c.p.name());
            }
        }
    }

    #[test]
    fn finite_sets_weakly_below_lie_below(seed in any::<u64>()) {
        let mut r = common::rng(seed);
        for c in cases() {
            let f = common::random_finite(&c.p, &mut r, 3);
            let x = pick(&c, &mut r);
            if wwb(&c.p, &c.p.set_of(f.iter().copied()), x) {
                prop_assert!(f.iter().any(|&a| c.p.leq(a, x)), "{}", c.p.name());
            }
        }
    }

    #[test]
    fn way_below_implies_weak_and_weak_implies_leq(seed in any::<u64>()) {
        let mut r = common::rng(seed);
        for c in cases() {
            let (x, y) = (pick(&c, &mut r), pick(&c, &mut r));
            let sx = c.p.singleton(x);
            let weak = wwb(&c.p, &sx, y);
            if way_below(&c.p, &sx, y).unwrap() {
                prop_assert!(weak, "{}: {:?} {:?}", c.p.name(), x, y);
            }
            if weak {
                prop_assert!(c.p.leq(x, y), "{}: {:?} {:?}", c.p.name(), x, y);
            }
        }
    }

    #[test]
    fn lower_points_are_absorbed(seed in any::<u64>()) {
        let mut r = common::rng(seed);
        for c in cases() {
            let (y, z) = (pick(&c, &mut r), pick(&c, &mut r));
            if !wwb(&c.p, &c.p.singleton(y), z) {
                continue;
            }
            let below = sample_of(&c.p, &c.p.down_of(y));
            let x = *below.choose(&mut r).unwrap();
            prop_assert!(wwb(&c.p, &c.p.singleton(x), z), "{}: {:?} {:?} {:?}", c.p.name(), x, y, z);
        }
    }

    #[test]
    fn only_the_part_below_x_matters(seed in any::<u64>()) {
        let mut r = common::rng(seed);
        for c in cases() {
            let f = common::random_finite(&c.p, &mut r, 4);
            let x = pick(&c, &mut r);
            let fs = c.p.set_of(f.iter().copied());
            let low = c.p.down_of(x).intersect(&fs);
            let whole = wwb(&c.p, &fs, x);
            if low.is_empty() {
                prop_assert!(!whole, "{}", c.p.name());
            } else {
                prop_assert_eq!(whole, wwb(&c.p, &low, x), "{}", c.p.name());
            }
        }
    }
}
