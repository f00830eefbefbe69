//! Interior and closure calculi and the inclusions between the three
//! topologies.

mod common;

use posetlab::checkers::{build_report, is_quasiexact};
use posetlab::gallery::{p1, p2, p3};
use posetlab::relations::wwb_up;
use posetlab::topology::{
    closure, interior_identity_check, inclusion_check, interior, is_scott_open, wf_basic, wwb_basic, wwb_topology_exists,
    TopologyTag,
};
use posetlab::{Elem, Error, LadderPoset, SymSet};
use rand::seq::SliceRandom;

const TAGS: [TopologyTag; 3] = [TopologyTag::Scott, TopologyTag::Wwb, TopologyTag::Wf];

fn available(p: &LadderPoset, tag: TopologyTag) -> bool {
    match tag {
        TopologyTag::Scott => true,
        TopologyTag::Wwb => wwb_topology_exists(p),
        TopologyTag::Wf => is_quasiexact(p).holds,
    }
}

/// Upper, and every directed tail whose supremum lies in `u` meets `u`; both
/// checked by `leq` on a window.
fn brute_scott_open(p: &LadderPoset, u: &SymSet) -> bool {
    let o = common::BruteOracle::new(p, p.uniformity_threshold() + 3);
    let w = o.window();
    let pts = p.elems_upto(w);
    let upper = pts
        .iter()
        .filter(|&&a| u.contains(a))
        .all(|&a| pts.iter().filter(|&&b| p.leq(a, b)).all(|&b| u.contains(b)));
    upper
        && o.directed_tails().iter().all(|(s, sup)| match sup {
            Some(y) if u.contains(*y) => s.iter().any(|&i| (0..=w).any(|n| u.contains(Elem::Lad(i, n)))),
            _ => true,
        })
}

#[test]
fn scott_openness_matches_brute_force() {
    let mut r = common::rng(6);
    let mut counts = [0; 2];
    for p in common::gallery().iter().chain(common::random_dcpos(6, 60).iter()) {
        for _ in 0..40 {
            let u = p.up_set(&common::random_symset(p, &mut r, false));
            let open = is_scott_open(p, &u);
            assert_eq!(open, brute_scott_open(p, &u), "{} {}", p.name(), p.display_set(&u));
            counts[usize::from(open)] += 1;
        }
    }
    assert!(counts.iter().all(|&c| c > 100), "{counts:?}");
}

#[test]
fn scott_opens_are_wf_open_on_the_exact_chain() {
    let p = p1();
    assert!(inclusion_check(&p, TopologyTag::Scott, TopologyTag::Wf).unwrap().holds);
    let mut r = common::rng(1);
    let mut seen = 0;
    for _ in 0..300 {
        let u = p.up_set(&common::random_symset(&p, &mut r, false));
        if is_scott_open(&p, &u) {
            assert_eq!(interior(&p, TopologyTag::Wf, &u).unwrap(), u, "{}", p.display_set(&u));
            seen += 1;
        }
    }
    assert!(seen > 20);
}

#[test]
fn wwb_basics_are_wf_open() {
    let mut n = 0;
    for p in common::gallery().iter().chain(common::random_dcpos(12, 200).iter()) {
        if !(available(p, TopologyTag::Wwb) && available(p, TopologyTag::Wf)) {
            continue;
        }
        assert!(inclusion_check(p, TopologyTag::Wwb, TopologyTag::Wf).unwrap().holds, "{}", p.name());
        for x in common::points(p) {
            let b = wwb_basic(p, x).unwrap().realized;
            assert_eq!(interior(p, TopologyTag::Wf, &b).unwrap(), b, "{} {}", p.name(), p.display(x));
        }
        n += 1;
    }
    assert!(n > 50, "{n}");
}

#[test]
fn omega_plus_top_has_coinciding_topologies() {
    let p = p3();
    let r = build_report(&p, None);
    assert_eq!(r.get("moderately_meet_continuous"), Some(true));
    assert_eq!(r.get("quasiexact"), Some(true));
    for (a, b) in [
        (TopologyTag::Scott, TopologyTag::Wwb),
        (TopologyTag::Wwb, TopologyTag::Wf),
        (TopologyTag::Wf, TopologyTag::Wwb),
    ] {
        assert!(inclusion_check(&p, a, b).unwrap().holds, "{} <= {}", a.name(), b.name());
    }
    let mut r = common::rng(49);
    for _ in 0..20 {
        let f = common::random_finite(&p, &mut r, 3);
        assert!(interior_identity_check(&p, &f).unwrap(), "{f:?}");
    }
    let t = p.parse_elem("t").unwrap();
    assert!(interior_identity_check(&p, &[p.parse_elem("Z(2)").unwrap(), t]).unwrap());
    assert!(interior_identity_check(&p, &[p.parse_elem("Z(0)").unwrap()]).unwrap());
    assert!(matches!(interior_identity_check(&p1(), &[t]), Err(Error::PreconditionFailed(_))));
}

#[test]
fn missing_wwb_topology_is_an_error() {
    let p = p2();
    assert!(!wwb_topology_exists(&p));
    let top = p.parse_elem("top").unwrap();
    assert!(matches!(wwb_basic(&p, top), Err(Error::WwbTopologyUndefined)));
    assert!(matches!(interior(&p, TopologyTag::Wwb, &p.universe()), Err(Error::WwbTopologyUndefined)));
    assert!(wf_basic(&p, &[top]).is_ok());
}

#[test]
fn interior_and_closure_laws() {
    let mut r = common::rng(17);
    for p in common::gallery() {
        for tag in TAGS.into_iter().filter(|&t| available(&p, t)) {
            for _ in 0..30 {
                let a = common::random_symset(&p, &mut r, false);
                let b = a.union(&common::random_symset(&p, &mut r, false));
                let (ia, ib) = (interior(&p, tag, &a).unwrap(), interior(&p, tag, &b).unwrap());
                let (ca, cb) = (closure(&p, tag, &a).unwrap(), closure(&p, tag, &b).unwrap());
                let ctx = format!("{} {} {}", p.name(), tag.name(), p.display_set(&a));
                assert!(ia.is_subset(&a), "{ctx}");
                assert!(a.is_subset(&ca), "{ctx}");
                assert!(ia.is_subset(&ib) && ca.is_subset(&cb), "{ctx}");
                assert_eq!(interior(&p, tag, &ia).unwrap(), ia, "{ctx}");
                assert_eq!(closure(&p, tag, &ca).unwrap(), ca, "{ctx}");
                // complements swap the two operators
                assert_eq!(closure(&p, tag, &a.complement()).unwrap(), ia.complement(), "{ctx}");
            }
        }
    }
}

#[test]
fn basic_opens_sit_inside_the_interior_of_their_upper_set() {
    let mut r = common::rng(23);
    for p in common::gallery().into_iter().filter(|p| available(p, TopologyTag::Wf)) {
        let mmc = build_report(&p, None).get("moderately_meet_continuous") == Some(true);
        for _ in 0..40 {
            let f = common::random_finite(&p, &mut r, 3);
            let fs = p.set_of(f.iter().copied());
            let basic = wf_basic(&p, &f).unwrap().realized;
            let int = interior(&p, TopologyTag::Wf, &p.up_set(&fs)).unwrap();
            assert!(basic.is_subset(&int), "{} {f:?}", p.name());
            if mmc {
                let mut pointwise = p.empty();
                for &x in &f {
                    pointwise = pointwise.union(&wwb_up(&p, &p.singleton(x)).unwrap());
                }
                assert!(int.is_subset(&pointwise), "{} {f:?}", p.name());
            }
        }
    }
}

#[test]
fn wf_basics_are_open_and_nested_under_refinement() {
    let mut r = common::rng(29);
    for p in common::random_dcpos(29, 80) {
        let pts = common::points(&p);
        for _ in 0..10 {
            let f: Vec<Elem> = pts.choose_multiple(&mut r, 2).copied().collect();
            let b = wf_basic(&p, &f).unwrap().realized;
            assert_eq!(interior(&p, TopologyTag::Wf, &b).unwrap(), b, "{} {f:?}", p.name());
            // a larger generator set gives a larger basic open
            let small = wf_basic(&p, &f[..1]).unwrap().realized;
            assert!(small.is_subset(&b));
        }
    }
}
