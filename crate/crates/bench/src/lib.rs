//! Graph families shared by the benchmarks.

use binedge_core::Graph;

/// `(label, graph)` pairs covering the worked examples and a few larger shapes.
pub fn families() -> Vec<(&'static str, Graph)> {
    vec![
        ("k35", Graph::complete_bipartite(5, 3).unwrap()),
        ("path5", Graph::path(5).unwrap()),
        ("k6", Graph::complete(6).unwrap()),
        ("cycle6", Graph::from_edges(6, (1..=6).map(|i| (i, i % 6 + 1))).unwrap()),
        ("path8", Graph::path(8).unwrap()),
    ]
}
