//! Acceptance gates. Prints one `PASS`/`FAIL` line per criterion and fails
//! if any gate is red.

#[path = "../../core/tests/common/mod.rs"]
mod common;

use std::panic::{catch_unwind, AssertUnwindSafe};
use std::process::Command;
use std::time::Instant;

use posetlab::checkers::{build_report, quasiexact_equiv_suite, theorem_suite, PropValue};
use posetlab::finite::for_each_combination;
use posetlab::gallery::johnstone::{johnstone_wwb_down, Bounds, Certificate, JPoint, Johnstone, OraclePresentation, ORDER_GRID};
use posetlab::gallery::{p1, p2, p3, P1_SRC};
use posetlab::relations::{way_below, weak_way_below, weak_way_below_set, weakly_increasing, wwb_down};
use posetlab::topology::{interior_identity_check, inclusion_check, wwb_topology_exists, TopologyTag};
use posetlab::{Elem, LadderPoset};
use rand::seq::SliceRandom;
use serde_json::json;

type Gate = Result<String, String>;

fn ensure(ok: bool, what: impl FnOnce() -> String) -> Result<(), String> {
    if ok { Ok(()) } else { Err(what()) }
}

fn first_ladder_example() -> Gate {
    let p = p1();
    let e = |s: &str| p.parse_elem(s).unwrap();
    let w = |g: &str, x: &str| weak_way_below(&p, &p.singleton(e(g)), e(x)).unwrap();
    ensure(w("a", "b") && w("c", "d") && !w("a", "c"), || "base relations".into())?;
    ensure(wwb_down(&p, e("c")).unwrap() == p.ladder_set(0), || "region below c".into())?;
    let r = build_report(&p, None);
    ensure(r.get("exact") == Some(true), || "exact".into())?;
    ensure(r.get("quasicontinuous") == Some(true), || "quasicontinuous".into())?;
    ensure(r.get("weakly_increasing") == Some(false), || "weakly_increasing".into())?;
    ensure(r.witnesses["weakly_increasing"] == json!(["a", "b", "c", "d"]), || "witness".into())?;
    let q = weakly_increasing(&p).unwrap();
    ensure((q.x, q.y, q.z, q.u) == (e("a"), e("b"), e("c"), e("d")), || "quadruple".into())?;
    Ok("7 facts".into())
}

fn two_ladder_example() -> Gate {
    let p = p2();
    let top = p.parse_elem("top").unwrap();
    let (y1, y2) = (p.ladder_set(0), p.ladder_set(1));
    let grid = p.elems_upto(4);
    let mut n = 0;
    let mut bad = None;
    for k in 1..=3 {
        for_each_combination(grid.len(), k, |idx| {
            let f = p.set_of(idx.iter().map(|&i| grid[i]));
            n += 1;
            if weak_way_below(&p, &f, top).unwrap() != (f.meets(&y1) && f.meets(&y2)) {
                bad = Some(p.display_set(&f));
            }
            bad.is_some()
        });
    }
    if let Some(f) = bad {
        return Err(format!("F = {f}"));
    }
    ensure(wwb_down(&p, top).unwrap().is_empty(), || "region below top".into())?;
    let r = build_report(&p, None);
    for (k, v) in [("exact", false), ("quasicontinuous", true), ("weakly_increasing", true), ("wwb_topology_exists", false)] {
        ensure(r.get(k) == Some(v), || k.into())?;
    }
    Ok(format!("{n} sets F"))
}

fn johnstone() -> Gate {
    let j = Johnstone;
    let g = j.grid(ORDER_GRID);
    for &x in &g {
        let region = johnstone_wwb_down(x);
        for &h in &g {
            let expect = match x.level {
                Some(_) => j.leq(h, x),
                None => h.col == x.col && h.level.is_some(),
            };
            ensure(j.wwb(&[h], x) == expect && region.contains(h) == expect, || format!("{h} below {x}"))?;
        }
    }
    let b = Bounds { m: 8, s: 3 };
    j.audit_certificate(Certificate::ColumnEscape { anchor: JPoint::fin(0, 0) }, b).map_err(|e| e.to_string())?;
    let r = j.report(b).map_err(|e| e.to_string())?;
    ensure(r.properties["exact"] == PropValue::Audited(true), || "exact".into())?;
    ensure(r.properties["weakly_increasing"] == PropValue::Audited(true), || "weakly_increasing".into())?;
    ensure(r.properties["quasicontinuous"] == PropValue::Audited(false), || "quasicontinuous".into())?;
    Ok(format!("{} grid points, certificate at M=8 s=3", g.len()))
}

fn implication_gate() -> Gate {
    let dcpos = common::random_dcpos(2024, 1000);
    for p in &dcpos {
        let r = theorem_suite(p).map_err(|e| e.to_string())?;
        let g = |k: &str| r.get(k) == Some(true);
        let checks = [
            g("quasiexact"),
            !g("exact") || g("quasiexact"),
            !g("quasicontinuous") || g("quasiexact"),
            !(g("moderately_meet_continuous") && g("quasiexact")) || (g("exact") && g("meet_continuous")),
            !(g("moderately_meet_continuous") && g("quasiexact") && g("weakly_increasing")) || g("continuous"),
        ];
        ensure(checks.iter().all(|&c| c), || p.name().to_owned())?;
    }
    Ok(format!("{} dcpos", dcpos.len()))
}

fn equivalence_gate() -> Gate {
    let ps: Vec<LadderPoset> =
        common::gallery().into_iter().filter(|p| p.is_dcpo()).chain(common::random_dcpos(77, 200)).collect();
    for p in &ps {
        let f = quasiexact_equiv_suite(p).map_err(|e| e.to_string())?;
        ensure(f.iter().all(|&b| b == f[0]), || format!("{}: {f:?}", p.name()))?;
    }
    Ok(format!("{} dcpos", ps.len()))
}

fn topology_gate() -> Gate {
    let holds = |p: &LadderPoset, a, b| inclusion_check(p, a, b).map(|v| v.holds).unwrap_or(false);
    ensure(holds(&p1(), TopologyTag::Scott, TopologyTag::Wf), || "P1 scott <= wf".into())?;
    let mut both = 0;
    for p in common::gallery().iter().chain(common::random_dcpos(12, 200).iter()) {
        if wwb_topology_exists(p) && posetlab::checkers::is_quasiexact(p).holds {
            both += 1;
            ensure(holds(p, TopologyTag::Wwb, TopologyTag::Wf), || format!("{} wwb <= wf", p.name()))?;
        }
    }
    let p = p3();
    for (a, b) in [(TopologyTag::Scott, TopologyTag::Wwb), (TopologyTag::Wwb, TopologyTag::Wf), (TopologyTag::Wf, TopologyTag::Wwb)] {
        ensure(holds(&p, a, b), || format!("P3 {} <= {}", a.name(), b.name()))?;
    }
    let mut r = common::rng(49);
    for _ in 0..20 {
        let f = common::random_finite(&p, &mut r, 3);
        ensure(interior_identity_check(&p, &f) == Ok(true), || format!("P3 F = {f:?}"))?;
    }
    Ok(format!("{both} posets with both topologies"))
}

fn differential_gate() -> Gate {
    let mut n = 0;
    for (i, p) in common::gallery().iter().map(|p| (1, p.clone())).chain(common::random_posets(7, 200).into_iter().enumerate().map(|(i, p)| (i as u64, p))) {
        let bad = common::disagreements(&p, i);
        ensure(bad.is_empty(), || bad.join("; "))?;
        n += 1;
    }
    Ok(format!("{n} posets"))
}

fn rudin_gate() -> Gate {
    let mut r = common::rng(8);
    for _ in 0..500 {
        let p = common::random_finposet(&mut r, 8);
        let fam = common::random_directed_family(&p, &mut r, 5, 3);
        let d = p.rudin_extract(&fam).map_err(|e| e.to_string())?;
        let directed = d.iter().all(|&x| d.iter().all(|&y| d.iter().any(|&z| p.leq(x, z) && p.leq(y, z))));
        let union = fam.union();
        let inside = d.iter().all(|x| union.contains(x));
        let meets = fam.sets().iter().all(|f| d.iter().any(|x| f.contains(x)));
        ensure(!d.is_empty() && directed && inside && meets, || format!("{d:?}"))?;
    }
    Ok("500 families".into())
}

fn law_gate() -> Gate {
    const CASES: u64 = 500;
    let gallery = common::gallery();
    for p in &gallery {
        let pts = common::points(p);
        let mut r = common::rng(900);
        for _ in 0..CASES {
            let g = common::random_symset(p, &mut r, true);
            let g2 = g.union(&common::random_symset(p, &mut r, false));
            let h = common::random_symset(p, &mut r, true);
            let h2 = h.intersect(&common::random_symset(p, &mut r, false));
            let set = |a: &posetlab::SymSet, b: &posetlab::SymSet| weak_way_below_set(p, a, b).unwrap();
            let gh = set(&g, &h);
            let sample = h.elems_upto(h.max_mentioned() + p.uniformity_threshold() + 3);
            ensure(gh == sample.iter().all(|&x| weak_way_below(p, &g, x).unwrap()), || "pointwise".into())?;
            let up = p.up_set(&g);
            ensure(gh == set(&up, &h), || "upper closure".into())?;
            ensure(!gh || set(&g2, &h), || "left monotone".into())?;
            ensure(!gh || h2.is_empty() || set(&g, &h2), || "right antitone".into())?;
            let (x, y): (Elem, Elem) = (*pts.choose(&mut r).unwrap(), *pts.choose(&mut r).unwrap());
            let f = common::random_finite(p, &mut r, 3);
            let fs = p.set_of(f.iter().copied());
            let fw = weak_way_below(p, &fs, x).unwrap();
            ensure(!fw || f.iter().any(|&a| p.leq(a, x)), || "finite sets lie below".into())?;
            let low = p.down_of(x).intersect(&fs);
            ensure(if low.is_empty() { !fw } else { fw == weak_way_below(p, &low, x).unwrap() }, || "part below x".into())?;
            let sx = p.singleton(x);
            let weak = weak_way_below(p, &sx, y).unwrap();
            ensure(!way_below(p, &sx, y).unwrap() || weak, || "way below is weak".into())?;
            ensure(!weak || p.leq(x, y), || "weak implies leq".into())?;
        }
    }
    Ok(format!("{CASES} cases on each of {} posets", gallery.len()))
}

fn bin(args: &[&str]) -> Vec<u8> {
    let o = Command::new(env!("CARGO_BIN_EXE_posetlab")).args(args).env_remove("POSETLAB_CONFIG").output().unwrap();
    assert!(o.status.success(), "{}", String::from_utf8_lossy(&o.stderr));
    o.stdout
}

fn determinism_gate() -> Gate {
    let d = tempfile::tempdir().map_err(|e| e.to_string())?;
    let f = d.path().join("p1.pos");
    std::fs::write(&f, P1_SRC).map_err(|e| e.to_string())?;
    let f = f.to_str().unwrap();
    for fmt in ["text", "json"] {
        ensure(bin(&["check", f, "--format", fmt]) == bin(&["check", f, "--format", fmt]), || format!("check {fmt}"))?;
    }
    let search = |jobs: &str| {
        bin(&["search", "--seed", "11", "--count", "300", "--query", "quasiexact & !exact", "--jobs", jobs, "--format", "json"])
    };
    let base = search("1");
    ensure(base == search("1"), || "search repeat".into())?;
    ensure(base == search("4"), || "search jobs 1 vs 4".into())?;
    Ok(format!("search output {} bytes", base.len()))
}

#[test]
fn acceptance() {
    let gates: [(&str, fn() -> Gate); 10] = [
        ("first ladder example", first_ladder_example),
        ("two ladders under a top", two_ladder_example),
        ("Johnstone audits", johnstone),
        ("implications on 1000 dcpos", implication_gate),
        ("quasiexact forms agree", equivalence_gate),
        ("topology inclusions", topology_gate),
        ("differential against the oracle", differential_gate),
        ("directed transversals", rudin_gate),
        ("relation laws", law_gate),
        ("determinism", determinism_gate),
    ];
    let mut red = Vec::new();
    for (k, (name, gate)) in gates.iter().enumerate() {
        let t = Instant::now();
        let outcome = catch_unwind(AssertUnwindSafe(gate)).unwrap_or_else(|_| Err("panicked".into()));
        let secs = t.elapsed().as_secs_f64();
        match outcome {
            Ok(detail) => println!("PASS {:>2} {name}: {detail} ({secs:.2}s)", k + 1),
            Err(why) => {
                println!("FAIL {:>2} {name}: {why} ({secs:.2}s)", k + 1);
                red.push(k + 1);
            }
        }
    }
    assert!(red.is_empty(), "failing criteria: {red:?}");
}
