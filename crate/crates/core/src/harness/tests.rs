use super::*;
use crate::containment::contains_induced_minor;
use crate::detectors::contains_triangle;
use crate::generators::{complete_bipartite, cycle, path};
use crate::graph::Graph;
use crate::io::emit_graph6;

fn spec(suite: SuiteId, corpus: Vec<CorpusSpec>) -> SuiteSpec {
    SuiteSpec {
        suite,
        corpus,
        seed: 5,
        budget: 1_000_000,
        variant: None,
    }
}

fn temp_corpus(name: &str, graphs: &[Graph]) -> String {
    let path = std::env::temp_dir().join(format!("imlab-harness-{}-{name}.g6", std::process::id()));
    let text: String = graphs.iter().map(|g| emit_graph6(g) + "\n").collect();
    std::fs::write(&path, text).unwrap();
    path.to_string_lossy().into_owned()
}

#[test]
fn suite_ids_round_trip() {
    for id in SuiteId::ALL {
        assert_eq!(id.as_str().parse::<SuiteId>().unwrap(), id);
        assert_eq!(serde_json::to_string(&id).unwrap(), format!("\"{id}\""));
    }
    assert!("thm-999".parse::<SuiteId>().is_err());
    assert_eq!(BIG_THEOREM_T, 134);
}

#[test]
fn full_scale_theorem_is_refused() {
    let r = run_suite(&SuiteSpec::new(SuiteId::Thm134, 0, 1000)).unwrap();
    assert!(r
        .refused
        .as_deref()
        .unwrap()
        .starts_with("not desk-reproducible"));
    assert_eq!(r.processed, 0);
    assert!(r.is_clean());
}

#[test]
fn empty_corpora_give_empty_reports() {
    for id in [
        SuiteId::ThmK34ThreePc,
        SuiteId::LemExact1,
        SuiteId::ConjectureProbe,
    ] {
        let r = run_suite(&spec(id, Vec::new())).unwrap();
        assert_eq!(
            (r.processed, r.violations.len(), r.indeterminates.len()),
            (0, 0, 0)
        );
    }
    let r = run_suite(&spec(
        SuiteId::ThmK34ThreePc,
        vec![CorpusSpec::Sampled {
            min_n: 5,
            max_n: 6,
            count: 0,
        }],
    ))
    .unwrap();
    assert_eq!(r.processed, 0);
}

#[test]
fn invalid_specs_are_errors() {
    let bad = [
        spec(
            SuiteId::ThmK34ThreePc,
            vec![CorpusSpec::Generated { count: 3 }],
        ),
        spec(
            SuiteId::LemExact1,
            vec![CorpusSpec::Exhaustive { min_n: 1, max_n: 3 }],
        ),
        spec(
            SuiteId::ThmK34ThreePc,
            vec![CorpusSpec::Exhaustive {
                min_n: 1,
                max_n: 11,
            }],
        ),
        spec(
            SuiteId::ThmK34ThreePc,
            vec![CorpusSpec::Exhaustive { min_n: 5, max_n: 4 }],
        ),
        SuiteSpec {
            budget: 0,
            ..spec(SuiteId::LemExact1, Vec::new())
        },
        SuiteSpec {
            variant: Some("nope".into()),
            ..spec(SuiteId::TightnessK33, Vec::new())
        },
        SuiteSpec {
            variant: Some("es".into()),
            ..spec(SuiteId::LemExact1, Vec::new())
        },
    ];
    for s in bad {
        assert!(run_suite(&s).is_err(), "{s:?}");
    }
}

#[test]
fn small_theorem_runs_are_clean_and_deterministic() {
    let corpus = vec![
        CorpusSpec::Exhaustive { min_n: 1, max_n: 7 },
        CorpusSpec::Sampled {
            min_n: 8,
            max_n: 9,
            count: 60,
        },
    ];
    for id in [SuiteId::ThmK34ThetaTriangle, SuiteId::ThmK34ThreePc] {
        let a = run_suite(&spec(id, corpus.clone())).unwrap();
        assert!(a.is_clean() && a.indeterminates.is_empty(), "{id}");
        assert_eq!(a.processed, 1 + 1 + 2 + 6 + 21 + 112 + 853 + 60);
        let b = run_suite(&spec(id, corpus.clone())).unwrap();
        assert_eq!(a.canonical_json(), b.canonical_json());
    }
}

#[test]
fn generated_suites_are_clean() {
    for id in [
        SuiteId::LemExact1,
        SuiteId::LemOnePath,
        SuiteId::LemAllPath,
        SuiteId::LemSubK23,
        SuiteId::Lem55,
    ] {
        let r = run_suite(&spec(id, vec![CorpusSpec::Generated { count: 12 }])).unwrap();
        assert!(
            r.is_clean() && r.indeterminates.is_empty() && r.reverified,
            "{id}: {:?}",
            r.violations
        );
        assert_eq!(r.processed, 12);
    }
    let r = run_suite(&spec(
        SuiteId::Lem55,
        vec![CorpusSpec::Generated { count: 1 }],
    ))
    .unwrap();
    assert_eq!(r.count("grid_induced_k23star_not_found"), 1);
}

#[test]
fn trees_yield_no_tightness_finds() {
    let trees: Vec<Graph> = (4..12)
        .map(path)
        .chain([complete_bipartite(1, 5)])
        .collect();
    let file = temp_corpus("trees", &trees);
    let r = run_suite(&spec(
        SuiteId::TightnessK33,
        vec![CorpusSpec::File { path: file.clone() }],
    ))
    .unwrap();
    std::fs::remove_file(file).ok();
    assert!(r.finds.is_empty() && r.is_clean());
    assert_eq!(
        r.notes
            .iter()
            .filter(|n| n.ends_with("not found at this scale"))
            .count(),
        3
    );
}

#[test]
fn tightness_finds_are_certified() {
    let s = SuiteSpec {
        variant: Some("k33-triangle-theta-free".into()),
        ..spec(
            SuiteId::TightnessK33,
            vec![CorpusSpec::Generated { count: 40 }],
        )
    };
    let r = run_suite(&s).unwrap();
    assert!(!r.finds.is_empty() && r.reverified);
    let k33 = complete_bipartite(3, 3);
    for f in &r.finds {
        let g = crate::io::parse_graph6(&f.graph6).unwrap();
        assert!(contains_triangle(&g).is_none());
        assert!(contains_induced_minor(&g, &k33).found());
        assert!(reverify_item(f).is_ok());
    }
}

#[test]
fn even_hole_filter_sanity() {
    let file = temp_corpus("cycles", &[cycle(5), cycle(6)]);
    let s = SuiteSpec {
        variant: Some("es".into()),
        ..spec(
            SuiteId::ConjectureProbe,
            vec![CorpusSpec::File { path: file.clone() }],
        )
    };
    let r = run_suite(&s).unwrap();
    std::fs::remove_file(file).ok();
    assert_eq!(
        (r.count("es_even_hole_free"), r.count("es_has_even_hole")),
        (1, 1)
    );
    assert!(r.is_clean());
}

#[test]
fn tampered_certificates_are_rejected() {
    let g = cycle(5);
    let mut item = Item {
        index: 0,
        source: "test".into(),
        graph6: emit_graph6(&g),
        reason: String::new(),
        certificates: vec![Certificate::Hole {
            cycle: vec![0, 1, 2, 3, 4],
        }],
    };
    assert!(reverify_item(&item).is_ok());
    item.certificates = vec![Certificate::Triangle {
        vertices: [0, 1, 2],
    }];
    assert!(reverify_item(&item).is_err());
    let k2 = emit_graph6(&path(2));
    item.certificates = vec![Certificate::Model {
        pattern: "K2".into(),
        pattern_graph6: k2,
        relation: Relation::InducedMinor,
        branch_sets: vec![VertexSet::new([0]), VertexSet::new([2])],
    }];
    assert!(reverify_item(&item).is_err());
}

#[test]
fn sampler_is_deterministic_and_kinds_cycle() {
    let k34 = complete_bipartite(3, 4);
    for stream in 0..40u64 {
        let (g, kind) = mixed_sample(9, 11, stream, &k34);
        assert_eq!((g.clone(), kind), mixed_sample(9, 11, stream, &k34));
        assert_eq!(g.n(), 9);
        assert_eq!(kind, SampleKind::ALL[(stream % 4) as usize]);
        match kind {
            SampleKind::TriangleFree => assert!(contains_triangle(&g).is_none()),
            SampleKind::PatternSeeded => assert!(contains_induced_minor(&g, &k34).found()),
            SampleKind::Sparse => assert!(g.is_connected()),
            SampleKind::Gnp => {}
        }
    }
}
