//! Seeded scans.

use posetlab::checkers::build_report;
use posetlab::search::{random_presentation, random_source, scan, GenConfig, PropertyQuery};
use posetlab::Error;

#[test]
fn scans_do_not_depend_on_thread_count() {
    let cfg = GenConfig::default();
    let one = scan(&cfg, 300, "quasiexact & !exact", 1).unwrap();
    let four = scan(&cfg, 300, "quasiexact & !exact", 4).unwrap();
    assert_eq!(one, four);
    assert_eq!(serde_json::to_string(&one).unwrap(), serde_json::to_string(&four).unwrap());
    assert!(!one.matches.is_empty());
    assert!(one.matches.windows(2).all(|w| w[0].index < w[1].index));
}

#[test]
fn matches_are_exactly_the_satisfying_indices() {
    let cfg = GenConfig { seed: 9, ..GenConfig::default() };
    let q = "(exact | weakly_increasing) & !continuous";
    let s = scan(&cfg, 200, q, 2).unwrap();
    let query = PropertyQuery::parse(q).unwrap();
    let mut expected = Vec::new();
    let (mut rejected, mut dcpos) = (0, 0);
    for i in 0..200 {
        match random_presentation(&cfg, i) {
            None => rejected += 1,
            Some(p) => {
                dcpos += u64::from(p.is_dcpo());
                if query.eval(&build_report(&p, None)) {
                    expected.push(i);
                }
            }
        }
    }
    assert_eq!(s.rejected, rejected);
    assert_eq!(s.dcpos, dcpos);
    assert_eq!(s.matches.iter().map(|m| m.index).collect::<Vec<_>>(), expected);
    assert!(s.rejection_rate() < 0.5);
    for m in &s.matches {
        let src = posetlab::dsl::print(&random_source(&cfg, m.index));
        assert_eq!(m.source, src);
    }
}

#[test]
fn seeds_change_the_sample() {
    let a = GenConfig { seed: 1, ..GenConfig::default() };
    let b = GenConfig { seed: 2, ..GenConfig::default() };
    assert!((0..20).any(|i| random_source(&a, i) != random_source(&b, i)));
}

#[test]
fn bad_inputs_are_rejected() {
    let cfg = GenConfig::default();
    assert!(matches!(scan(&cfg, 10, "((", 1), Err(Error::QueryParse(_))));
    assert!(matches!(scan(&cfg, 10, "shiny", 1), Err(Error::QueryParse(_))));
    let bad = GenConfig { density: 0.0, ..cfg };
    assert!(matches!(scan(&bad, 10, "exact", 1), Err(Error::PreconditionFailed(_))));
}
