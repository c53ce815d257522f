#![allow(dead_code)]

use std::collections::BTreeSet;

use binedge_core::Graph;
use rand::Rng;
use rand_chacha::ChaCha8Rng;

pub fn random_graph(rng: &mut ChaCha8Rng, n: usize, p: f64) -> Graph {
    let mut edges = Vec::new();
    for u in 1..=n {
        for v in u + 1..=n {
            if rng.gen_bool(p) {
                edges.push((u, v));
            }
        }
    }
    Graph::from_edges(n, edges).unwrap()
}

pub fn random_connected_graph(rng: &mut ChaCha8Rng, n: usize) -> Graph {
    loop {
        let p = rng.gen_range(0.25..0.8);
        let g = random_graph(rng, n, p);
        if g.is_connected() {
            return g;
        }
    }
}

fn permutations(n: usize) -> Vec<Vec<usize>> {
    if n == 0 {
        return vec![Vec::new()];
    }
    let mut out = Vec::new();
    for p in permutations(n - 1) {
        for k in 0..=p.len() {
            let mut q = p.clone();
            q.insert(k, n);
            out.push(q);
        }
    }
    out
}

/// One representative per isomorphism class of connected graphs on `n`
/// vertices, found by minimizing the edge list over all relabelings.
pub fn connected_graphs(n: usize) -> Vec<Graph> {
    let pairs: Vec<(usize, usize)> = (1..=n).flat_map(|u| (u + 1..=n).map(move |v| (u, v))).collect();
    let perms = permutations(n);
    let mut classes: BTreeSet<Vec<(usize, usize)>> = BTreeSet::new();
    for mask in 0u32..1 << pairs.len() {
        let edges: Vec<(usize, usize)> =
            pairs.iter().enumerate().filter(|(i, _)| mask & (1 << i) != 0).map(|(_, &e)| e).collect();
        let g = Graph::from_edges(n, edges.clone()).unwrap();
        if !g.is_connected() {
            continue;
        }
        let canon = perms
            .iter()
            .map(|p| {
                let mut es: Vec<(usize, usize)> = edges
                    .iter()
                    .map(|&(u, v)| {
                        let (a, b) = (p[u - 1], p[v - 1]);
                        (a.min(b), a.max(b))
                    })
                    .collect();
                es.sort_unstable();
                es
            })
            .min()
            .unwrap();
        classes.insert(canon);
    }
    classes.into_iter().map(|es| Graph::from_edges(n, es).unwrap()).collect()
}

pub fn relabel(g: &Graph, perm: &[usize]) -> Graph {
    Graph::from_edges(g.n(), g.edges().into_iter().map(|(u, v)| (perm[u - 1], perm[v - 1]))).unwrap()
}
