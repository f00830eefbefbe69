//! The two worked ladder examples, checked fact by fact.

mod common;

use posetlab::checkers::{self, build_report, PropValue};
use posetlab::finite::for_each_combination;
use posetlab::gallery::{p1, p2, p3};
use posetlab::relations::{self, finitary_wwb_reduction, fin_w_spec, way_below, weak_way_below, weak_way_below_set};
use posetlab::{DirectedShape, Elem, LadderPoset, SymSet};
use serde_json::json;

fn e(p: &LadderPoset, s: &str) -> Elem {
    p.parse_elem(s).unwrap()
}

fn set(p: &LadderPoset, s: &str) -> SymSet {
    p.parse_set(s).unwrap()
}

fn wwb(p: &LadderPoset, g: &str, x: &str) -> bool {
    weak_way_below(p, &set(p, g), e(p, x)).unwrap()
}

#[test]
fn chain_with_ladder_relations() {
    let p = p1();
    assert!(wwb(&p, "{a}", "b"));
    assert!(wwb(&p, "{c}", "d"));
    assert!(!wwb(&p, "{a}", "c"));
    assert!(wwb(&p, "{X(4)}", "c"));
    assert!(!wwb(&p, "{b}", "c"));
    assert!(p.leq(e(&p, "X(3)"), e(&p, "d")));
    assert_eq!(relations::wwb_down(&p, e(&p, "c")).unwrap(), p.ladder_set(0));
    assert_eq!(relations::wb_down(&p, e(&p, "c")).unwrap(), p.ladder_set(0));
    assert_eq!(relations::wwb_up(&p, &set(&p, "{a}")).unwrap(), set(&p, "{a, b, d}"));
    assert!(weak_way_below_set(&p, &set(&p, "{a}"), &set(&p, "{a, b}")).unwrap());
    assert!(!weak_way_below_set(&p, &set(&p, "{a}"), &set(&p, "{b, c}")).unwrap());
    let f = relations::wwb_failure(&p, &set(&p, "{a}"), e(&p, "c")).unwrap();
    assert_eq!(f, Some(DirectedShape::Tails(vec![(0, 0)])));
}

#[test]
fn chain_with_ladder_properties() {
    let p = p1();
    let r = build_report(&p, None);
    assert_eq!(r.get("dcpo"), Some(true));
    assert_eq!(r.get("exact"), Some(true));
    assert_eq!(r.get("quasiexact"), Some(true));
    assert_eq!(r.get("quasicontinuous"), Some(true));
    assert_eq!(r.get("weakly_increasing"), Some(false));
    assert_eq!(r.get("meet_continuous"), Some(false));
    assert_eq!(r.get("moderately_meet_continuous"), Some(false));
    assert_eq!(r.witnesses["weakly_increasing"], json!(["a", "b", "c", "d"]));
    assert_eq!(checkers::quasiexact_equiv_suite(&p).unwrap(), [true; 4]);
    assert_eq!(checkers::antichain_bound(&p), 5);
    assert_eq!(p.uniformity_threshold(), 3);
}

#[test]
fn chain_with_ladder_hitting_specs() {
    let p = p1();
    assert!(fin_w_spec(&p, e(&p, "b")).unwrap().conditions.is_empty());
    let c = fin_w_spec(&p, e(&p, "c")).unwrap();
    assert_eq!(c.conditions.len(), 1);
    assert_eq!(c.conditions[0].1, p.ladder_set(0));
    let f = finitary_wwb_reduction(&p, &p.ladder_set(0), e(&p, "c")).unwrap();
    assert_eq!(f, Some(vec![e(&p, "X(0)")]));
    let f = finitary_wwb_reduction(&p, &set(&p, "{a}"), e(&p, "b")).unwrap();
    assert_eq!(f, Some(vec![e(&p, "a")]));
}

#[test]
fn two_ladders_under_top_relations() {
    let p = p2();
    let top = e(&p, "top");
    // every F over the depth-4 grid with at most three points
    let grid = p.elems_upto(4);
    let (y1, y2) = (p.ladder_set(0), p.ladder_set(1));
    let mut checked = 0;
    for k in 1..=3 {
        for_each_combination(grid.len(), k, |idx| {
            let f = p.set_of(idx.iter().map(|&i| grid[i]));
            let meets_both = f.meets(&y1) && f.meets(&y2);
            assert_eq!(weak_way_below(&p, &f, top).unwrap(), meets_both, "{}", p.display_set(&f));
            checked += 1;
            false
        });
    }
    assert_eq!(checked, 11 + 55 + 165);
    assert!(relations::wwb_down(&p, top).unwrap().is_empty());
    assert!(wwb(&p, "{Y1(0), Y2(0)}", "top"));
    assert!(p.leq(e(&p, "Y1(1)"), top));
    assert!(p.down_set(&y1).intersect(&p.down_of(e(&p, "Y2(0)"))).is_empty());
    let f = relations::wb_failure(&p, &set(&p, "{Y1(0)}"), e(&p, "Y1(5)")).unwrap();
    assert_eq!(f, Some((top, DirectedShape::Tails(vec![(1, 0)]))));
    assert!(!way_below(&p, &set(&p, "{Y1(0)}"), e(&p, "Y1(5)")).unwrap());
    assert!(way_below(&p, &set(&p, "{Y1(0), Y2(7)}"), e(&p, "Y1(5)")).unwrap());
}

#[test]
fn two_ladders_under_top_properties() {
    let p = p2();
    let r = build_report(&p, None);
    assert_eq!(r.get("exact"), Some(false));
    assert_eq!(r.witnesses["exact"], json!("top"));
    assert_eq!(r.get("quasiexact"), Some(true));
    assert_eq!(r.get("quasicontinuous"), Some(true));
    assert_eq!(r.get("weakly_increasing"), Some(true));
    assert_eq!(r.get("wwb_topology_exists"), Some(false));
    assert_eq!(r.get("moderately_meet_continuous"), Some(false));
    assert!(checkers::theorem_suite(&p).is_ok());
}

#[test]
fn omega_plus_top() {
    let p = p3();
    let r = checkers::theorem_suite(&p).unwrap();
    for k in ["exact", "quasiexact", "continuous", "moderately_meet_continuous", "weakly_increasing"] {
        assert_eq!(r.properties[k], PropValue::Decided(true), "{k}");
    }
    assert!(r.anomalies.is_empty());
}

#[test]
fn weakly_increasing_witness_is_a_refutation() {
    let p = p1();
    let q = relations::weakly_increasing(&p).unwrap();
    let w = |a: Elem, b: Elem| weak_way_below(&p, &p.singleton(a), b).unwrap();
    assert!(w(q.x, q.y) && p.leq(q.y, q.z) && w(q.z, q.u) && !w(q.x, q.z));
    assert!(relations::weakly_increasing(&p2()).is_none());
    assert!(relations::weakly_increasing(&posetlab::gallery::one_point()).is_none());
}

#[test]
fn bottom_is_weakly_way_below_everything() {
    for p in common::gallery().into_iter().chain(common::random_posets(3, 60)) {
        if let Some(b) = p.bottom() {
            assert!(weak_way_below_set(&p, &p.singleton(b), &p.universe()).unwrap(), "{}", p.name());
        }
    }
}
