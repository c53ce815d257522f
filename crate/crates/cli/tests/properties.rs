use binedge_cli::census::analyze_one;
use binedge_cli::{cmd_analyze, AnalysisReport, AnalyzeOptions};
use binedge_core::{FieldSpec, Graph};
use proptest::prelude::*;

fn graph() -> impl Strategy<Value = Graph> {
    (1usize..=6).prop_flat_map(|n| {
        let pairs: Vec<(usize, usize)> = (1..=n).flat_map(|u| (u + 1..=n).map(move |v| (u, v))).collect();
        let m = pairs.len();
        prop::collection::vec(any::<bool>(), m).prop_map(move |keep| {
            let edges = pairs.iter().zip(&keep).filter(|(_, &k)| k).map(|(&e, _)| e);
            Graph::from_edges(n, edges).unwrap()
        })
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn reports_round_trip_and_are_consistent(g in graph(), zn in any::<bool>()) {
        let opts = AnalyzeOptions { zn, truncation: 3, ..AnalyzeOptions::default() };
        let report = cmd_analyze(&g, &opts).unwrap();
        let text = serde_json::to_string(&report).unwrap();
        let back: AnalysisReport = serde_json::from_str(&text).unwrap();
        prop_assert_eq!(&back, &report);
        prop_assert!(report.check_consistency().is_ok());
        prop_assert!(report.buchsbaum || !report.cm);
    }

    #[test]
    fn census_records_agree_with_the_report(g in graph()) {
        let key = g.to_graph6();
        let rec = analyze_one(&key, &g, FieldSpec::Rational, 3).unwrap().seal();
        prop_assert!(rec.is_intact());
        let report = cmd_analyze(&g, &AnalyzeOptions::default()).unwrap();
        prop_assert_eq!((rec.body.depth, rec.body.dim, rec.body.cm), (report.depth, report.dim, report.cm));
        prop_assert_eq!(rec.body.reg, report.regularity.series_based);
        prop_assert_eq!(rec.body.q_size, report.poset.nodes.len());
        prop_assert_eq!(rec.body.verify.as_str(), "pass");
    }
}
