use kmps::corpus::{self, errata, shipped, verify, Graph, Outcome, Supports, VerifyOptions};

#[test]
fn full_table_verifies() {
    let entries = shipped();
    let options = VerifyOptions::default();
    let report = verify(&entries, &options).unwrap();
    assert_eq!((report.total, report.matched, report.reciprocal, report.mismatched), (693, 664, 18, 11));
    assert!(report.ok());

    let reciprocal: Vec<usize> = report
        .entries
        .iter()
        .filter(|e| matches!(e.outcome, Outcome::Reciprocal { .. }))
        .map(|e| e.index)
        .collect();
    let expected: Vec<usize> = (344..=350).chain(360..=370).collect();
    assert_eq!(reciprocal, expected);
    assert!(report.entries.iter().filter(|e| !e.resolved()).count() == 0);

    let other: Vec<(Graph, usize)> = report
        .entries
        .iter()
        .filter(|e| matches!(e.outcome, Outcome::Mismatch { .. }))
        .map(|e| (e.graph, e.index))
        .collect();
    assert_eq!(
        other,
        vec![
            (Graph::FourIII, 193),
            (Graph::FourIV, 221),
            (Graph::FourIV, 242),
            (Graph::FourIV, 254),
            (Graph::FourV, 427),
            (Graph::FourV, 431),
            (Graph::FourV, 443),
            (Graph::FourV, 471),
            (Graph::FourVI, 649),
            (Graph::FourVI, 654),
            (Graph::FourVI, 655),
        ]
    );
    for e in report.discrepancies() {
        let a = e.adjudication().unwrap();
        assert_eq!(a.supports, Supports::Computed);
        assert_eq!(a.bfs.len(), 11);
    }
    // dropped overall sign: printed is exactly minus the computed series
    for e in report.discrepancies().filter(|e| e.graph != Graph::FourVI && matches!(e.outcome, Outcome::Mismatch { .. })) {
        assert_eq!(e.printed, e.computed.neg(), "{} {}", e.graph, e.index);
    }

    let shipped_errata: serde_json::Value = serde_json::from_str(include_str!("../data/errata.json")).unwrap();
    let fresh = serde_json::to_value(errata(&report, &entries, &options).unwrap()).unwrap();
    assert_eq!(fresh, shipped_errata);
}

#[test]
fn coverage_of_the_complete_graph_is_by_multiset() {
    let cov = corpus::coverage(&shipped());
    let k4 = cov.iter().find(|c| c.graph == Graph::FourVI).unwrap();
    assert_eq!((k4.entries, k4.distinct_orbits, k4.orbit_count), (84, 84, 276));
    assert!(k4.sorted_labels);
}
