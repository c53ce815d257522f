#![allow(dead_code)]

use std::path::PathBuf;

use binedge_core::graph::parse_graph6;
use binedge_core::Graph;
use rand::Rng;
use rand_chacha::ChaCha8Rng;

pub fn fixture(name: &str) -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("tests/fixtures").join(name)
}

pub fn read_fixture(name: &str) -> String {
    std::fs::read_to_string(fixture(name)).unwrap()
}

pub fn graph6_stream(name: &str) -> Vec<Graph> {
    read_fixture(name)
        .lines()
        .map(str::trim)
        .filter(|l| !l.is_empty() && !l.starts_with('#'))
        .map(|l| parse_graph6(l).unwrap())
        .collect()
}

pub fn random_connected_graph(rng: &mut ChaCha8Rng, n: usize) -> Graph {
    loop {
        let p = rng.gen_range(0.25..0.8);
        let edges: Vec<(usize, usize)> =
            (1..=n).flat_map(|u| (u + 1..=n).map(move |v| (u, v))).filter(|_| rng.gen_bool(p)).collect();
        let g = Graph::from_edges(n, edges).unwrap();
        if g.is_connected() {
            return g;
        }
    }
}
