//! Finite simple graphs on `1..=n`, vertex subsets, and the combinatorics
//! behind the primary decomposition of a binomial edge ideal.

use std::cmp::Ordering;
use std::fmt;

use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::GraphError;

/// Largest vertex count representable by [`VertexSet`].
pub const MAX_VERTICES: usize = 64;

/// Largest vertex count for which minimal prime supports are enumerated
/// by scanning every subset.
pub const MAX_SUPPORT_SCAN: usize = 24;

/// A subset of `1..=64`, stored as a bitmask (bit `v - 1` is vertex `v`).
///
/// Ordering is lexicographic on the ascending vertex lists, so `{1,5} < {2}`.
#[derive(Clone, Copy, Default, PartialEq, Eq, Hash)]
pub struct VertexSet(u64);

impl VertexSet {
    pub const fn empty() -> Self {
        VertexSet(0)
    }

    /// `{1, ..., n}`.
    pub fn full(n: usize) -> Self {
        assert!(n <= MAX_VERTICES, "at most {MAX_VERTICES} vertices");
        if n == 64 {
            VertexSet(u64::MAX)
        } else {
            VertexSet((1u64 << n) - 1)
        }
    }

    pub fn singleton(v: usize) -> Self {
        let mut s = Self::empty();
        s.insert(v);
        s
    }

    pub const fn from_bits(bits: u64) -> Self {
        VertexSet(bits)
    }

    pub const fn bits(self) -> u64 {
        self.0
    }

    pub fn contains(self, v: usize) -> bool {
        (1..=MAX_VERTICES).contains(&v) && self.0 & (1u64 << (v - 1)) != 0
    }

    pub fn insert(&mut self, v: usize) {
        assert!((1..=MAX_VERTICES).contains(&v), "vertex {v} out of range");
        self.0 |= 1u64 << (v - 1);
    }

    pub fn remove(&mut self, v: usize) {
        if (1..=MAX_VERTICES).contains(&v) {
            self.0 &= !(1u64 << (v - 1));
        }
    }

    pub fn len(self) -> usize {
        self.0.count_ones() as usize
    }

    pub fn is_empty(self) -> bool {
        self.0 == 0
    }

    pub fn union(self, other: Self) -> Self {
        VertexSet(self.0 | other.0)
    }

    pub fn intersection(self, other: Self) -> Self {
        VertexSet(self.0 & other.0)
    }

    pub fn difference(self, other: Self) -> Self {
        VertexSet(self.0 & !other.0)
    }

    pub fn is_subset(self, other: Self) -> bool {
        self.0 & !other.0 == 0
    }

    pub fn is_disjoint(self, other: Self) -> bool {
        self.0 & other.0 == 0
    }

    pub fn first(self) -> Option<usize> {
        (self.0 != 0).then(|| self.0.trailing_zeros() as usize + 1)
    }

    pub fn last(self) -> Option<usize> {
        (self.0 != 0).then(|| 64 - self.0.leading_zeros() as usize)
    }

    /// Vertices in ascending order.
    pub fn iter(self) -> VertexIter {
        VertexIter(self.0)
    }

    pub fn to_vec(self) -> Vec<usize> {
        self.iter().collect()
    }

    /// All subsets of `self`, including the empty set and `self`.
    pub fn subsets(self) -> impl Iterator<Item = VertexSet> {
        let full = self.0;
        let mut next = Some(0u64);
        std::iter::from_fn(move || {
            let cur = next?;
            next = if cur == full { None } else { Some((cur.wrapping_sub(full)) & full) };
            Some(VertexSet(cur))
        })
    }
}

pub struct VertexIter(u64);

impl Iterator for VertexIter {
    type Item = usize;

    fn next(&mut self) -> Option<usize> {
        if self.0 == 0 {
            return None;
        }
        let v = self.0.trailing_zeros() as usize + 1;
        self.0 &= self.0 - 1;
        Some(v)
    }

    fn size_hint(&self) -> (usize, Option<usize>) {
        let k = self.0.count_ones() as usize;
        (k, Some(k))
    }
}

impl IntoIterator for VertexSet {
    type Item = usize;
    type IntoIter = VertexIter;

    fn into_iter(self) -> VertexIter {
        self.iter()
    }
}

impl FromIterator<usize> for VertexSet {
    fn from_iter<I: IntoIterator<Item = usize>>(iter: I) -> Self {
        let mut s = VertexSet::empty();
        for v in iter {
            s.insert(v);
        }
        s
    }
}

impl Ord for VertexSet {
    fn cmp(&self, other: &Self) -> Ordering {
        self.iter().cmp(other.iter())
    }
}

impl PartialOrd for VertexSet {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Debug for VertexSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl fmt::Display for VertexSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("{")?;
        for (k, v) in self.iter().enumerate() {
            if k > 0 {
                f.write_str(",")?;
            }
            write!(f, "{v}")?;
        }
        f.write_str("}")
    }
}

impl Serialize for VertexSet {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        serializer.collect_seq(self.iter())
    }
}

impl<'de> Deserialize<'de> for VertexSet {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        let verts = Vec::<usize>::deserialize(deserializer)?;
        if let Some(&bad) = verts.iter().find(|&&v| v == 0 || v > MAX_VERTICES) {
            return Err(serde::de::Error::custom(format!("vertex {bad} out of range")));
        }
        Ok(verts.into_iter().collect())
    }
}

/// A finite simple graph on the vertex set `1..=n`.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Graph {
    n: usize,
    adj: Vec<VertexSet>,
}

impl Graph {
    /// The edgeless graph on `n` vertices.
    pub fn empty(n: usize) -> Result<Self, GraphError> {
        if n == 0 {
            return Err(GraphError::NoVertices);
        }
        if n > MAX_VERTICES {
            return Err(GraphError::TooManyVertices(n));
        }
        Ok(Graph { n, adj: vec![VertexSet::empty(); n] })
    }

    /// Builds a graph, rejecting loops, repeated edges and out-of-range endpoints.
    pub fn from_edges<I>(n: usize, edges: I) -> Result<Self, GraphError>
    where
        I: IntoIterator<Item = (usize, usize)>,
    {
        let mut g = Graph::empty(n)?;
        for (u, v) in edges {
            g.add_edge(u, v)?;
        }
        Ok(g)
    }

    pub fn complete(n: usize) -> Result<Self, GraphError> {
        let edges = (1..=n).flat_map(|u| (u + 1..=n).map(move |v| (u, v)));
        Graph::from_edges(n, edges)
    }

    pub fn path(n: usize) -> Result<Self, GraphError> {
        Graph::from_edges(n, (1..n).map(|u| (u, u + 1)))
    }

    /// Complete bipartite graph with parts `1..=a` and `a+1..=a+b`.
    pub fn complete_bipartite(a: usize, b: usize) -> Result<Self, GraphError> {
        let edges = (1..=a).flat_map(|u| (a + 1..=a + b).map(move |v| (u, v)));
        Graph::from_edges(a + b, edges)
    }

    fn add_edge(&mut self, u: usize, v: usize) -> Result<(), GraphError> {
        for w in [u, v] {
            if w == 0 || w > self.n {
                return Err(GraphError::VertexOutOfRange { vertex: w, n: self.n });
            }
        }
        if u == v {
            return Err(GraphError::Loop(u));
        }
        if self.adj[u - 1].contains(v) {
            return Err(GraphError::DuplicateEdge(u.min(v), u.max(v)));
        }
        self.adj[u - 1].insert(v);
        self.adj[v - 1].insert(u);
        Ok(())
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn vertices(&self) -> VertexSet {
        VertexSet::full(self.n)
    }

    pub fn neighbors(&self, v: usize) -> VertexSet {
        self.adj[v - 1]
    }

    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        (1..=self.n).contains(&u) && self.adj[u - 1].contains(v)
    }

    /// Edges `(u, v)` with `u < v`, in lexicographic order.
    pub fn edges(&self) -> Vec<(usize, usize)> {
        (1..=self.n).flat_map(|u| self.adj[u - 1].iter().filter(move |&v| v > u).map(move |v| (u, v))).collect()
    }

    pub fn edge_count(&self) -> usize {
        self.adj.iter().map(|a| a.len()).sum::<usize>() / 2
    }

    pub fn is_connected(&self) -> bool {
        components_within(self, self.vertices()).len() == 1
    }

    /// Whether the induced subgraph on `verts` is complete.
    pub fn is_clique(&self, verts: VertexSet) -> bool {
        verts.iter().all(|v| verts.difference(VertexSet::singleton(v)).is_subset(self.adj[v - 1]))
    }

    /// Encodes the graph in graph6 format (vertex `v` becomes graph6 vertex `v - 1`).
    pub fn to_graph6(&self) -> String {
        let mut out = String::new();
        let n = self.n;
        if n <= 62 {
            out.push((n as u8 + 63) as char);
        } else {
            out.push('~');
            for shift in [12, 6, 0] {
                out.push((((n >> shift) & 63) as u8 + 63) as char);
            }
        }
        let mut acc = 0u8;
        let mut nbits = 0;
        for j in 1..n {
            for i in 0..j {
                acc = (acc << 1) | self.has_edge(i + 1, j + 1) as u8;
                nbits += 1;
                if nbits == 6 {
                    out.push((acc + 63) as char);
                    acc = 0;
                    nbits = 0;
                }
            }
        }
        if nbits > 0 {
            out.push(((acc << (6 - nbits)) + 63) as char);
        }
        out
    }
}

impl fmt::Debug for Graph {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Graph(n={}, edges={:?})", self.n, self.edges())
    }
}

/// Parses a graph given either as an edge list (first line `n`, then one
/// `u v` pair per line, 1-based) or as a single graph6 line.
///
/// Blank lines and lines starting with `#` are ignored in edge lists.
pub fn parse_graph(text: &str) -> Result<Graph, GraphError> {
    let first =
        text.lines().map(str::trim).find(|l| !l.is_empty() && !l.starts_with('#')).ok_or(GraphError::EmptyInput)?;
    if first.starts_with(|c: char| c.is_ascii_digit()) {
        parse_edge_list(text)
    } else {
        parse_graph6(first)
    }
}

/// Parses the edge-list format.
pub fn parse_edge_list(text: &str) -> Result<Graph, GraphError> {
    let mut lines =
        text.lines().enumerate().map(|(i, l)| (i + 1, l.trim())).filter(|(_, l)| !l.is_empty() && !l.starts_with('#'));
    let (lineno, header) = lines.next().ok_or(GraphError::EmptyInput)?;
    let n: usize =
        header.parse().map_err(|_| GraphError::MalformedLine { line: lineno, content: header.to_string() })?;
    let mut g = Graph::empty(n)?;
    for (lineno, line) in lines {
        let malformed = || GraphError::MalformedLine { line: lineno, content: line.to_string() };
        let fields: Vec<&str> = line.split_whitespace().collect();
        let [u, v] = fields[..] else {
            return Err(malformed());
        };
        let u: usize = u.parse().map_err(|_| malformed())?;
        let v: usize = v.parse().map_err(|_| malformed())?;
        g.add_edge(u, v)?;
    }
    Ok(g)
}

/// Parses one graph6 line; the optional `>>graph6<<` header is accepted.
pub fn parse_graph6(line: &str) -> Result<Graph, GraphError> {
    let line = line.trim();
    let line = line.strip_prefix(">>graph6<<").unwrap_or(line);
    let bytes = line.as_bytes();
    let bad = |msg: &str| GraphError::InvalidGraph6(format!("{msg}: {line:?}"));
    if bytes.iter().any(|&b| !(63..=126).contains(&b)) {
        return Err(bad("byte outside the graph6 alphabet"));
    }
    let vals: Vec<usize> = bytes.iter().map(|&b| (b - 63) as usize).collect();
    let (n, body) = match vals.as_slice() {
        [] => return Err(bad("empty string")),
        [63, 63, rest @ ..] => {
            if rest.len() < 6 {
                return Err(bad("truncated size field"));
            }
            let n = rest[..6].iter().fold(0usize, |acc, &x| (acc << 6) | x);
            (n, &rest[6..])
        }
        [63, rest @ ..] => {
            if rest.len() < 3 {
                return Err(bad("truncated size field"));
            }
            let n = rest[..3].iter().fold(0usize, |acc, &x| (acc << 6) | x);
            (n, &rest[3..])
        }
        [n, rest @ ..] => (*n, rest),
    };
    if n == 0 {
        return Err(GraphError::NoVertices);
    }
    if n > MAX_VERTICES {
        return Err(GraphError::TooManyVertices(n));
    }
    let nbits = n * (n - 1) / 2;
    if body.len() != nbits.div_ceil(6) {
        return Err(bad("wrong body length"));
    }
    let bit = |k: usize| (body[k / 6] >> (5 - k % 6)) & 1 == 1;
    let mut g = Graph::empty(n)?;
    let mut k = 0;
    for j in 1..n {
        for i in 0..j {
            if bit(k) {
                g.add_edge(i + 1, j + 1)?;
            }
            k += 1;
        }
    }
    if (nbits..body.len() * 6).any(bit) {
        return Err(bad("nonzero padding bits"));
    }
    Ok(g)
}

/// Connected components of the subgraph induced on `active`, sorted by
/// minimum vertex.
pub fn components_within(g: &Graph, active: VertexSet) -> Vec<VertexSet> {
    let mut remaining = active;
    let mut comps = Vec::new();
    while let Some(start) = remaining.first() {
        let mut comp = VertexSet::singleton(start);
        let mut frontier = comp;
        while !frontier.is_empty() {
            let mut next = VertexSet::empty();
            for v in frontier {
                next = next.union(g.neighbors(v));
            }
            frontier = next.intersection(active).difference(comp);
            comp = comp.union(frontier);
        }
        remaining = remaining.difference(comp);
        comps.push(comp);
    }
    comps
}

/// Connected components of `G \ S`, singletons included, sorted by minimum vertex.
pub fn components_after_deletion(g: &Graph, s: VertexSet) -> Vec<VertexSet> {
    components_within(g, g.vertices().difference(s))
}

/// The sets `S` for which `P_S(G)` is a minimal prime of `J_G`, for a
/// connected graph: `S = ∅`, or every `i ∈ S` satisfies `c(S \ {i}) < c(S)`.
///
/// Sorted by `(|S|, lexicographic)`.
pub fn minimal_prime_supports(g: &Graph) -> Result<Vec<VertexSet>, GraphError> {
    minimal_prime_supports_within(g, g.vertices())
}

/// Same as [`minimal_prime_supports`] for the subgraph induced on `active`.
pub fn minimal_prime_supports_within(g: &Graph, active: VertexSet) -> Result<Vec<VertexSet>, GraphError> {
    if active.len() > MAX_SUPPORT_SCAN {
        return Err(GraphError::TooLarge(active.len()));
    }
    if components_within(g, active).len() != 1 {
        return Err(GraphError::Disconnected);
    }
    let count = |s: VertexSet| components_within(g, active.difference(s)).len();
    let mut supports: Vec<VertexSet> = active
        .subsets()
        .filter(|&s| {
            if s.is_empty() {
                return true;
            }
            let c = count(s);
            s.iter().all(|i| {
                let mut smaller = s;
                smaller.remove(i);
                count(smaller) < c
            })
        })
        .collect();
    supports.sort_by(|a, b| a.len().cmp(&b.len()).then(a.cmp(b)));
    Ok(supports)
}

/// A simple path `start, interior..., end` with `start < end`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct SimplePath {
    pub start: usize,
    pub interior: Vec<usize>,
    pub end: usize,
}

/// Every simple path with at least two vertices, reported once, in the
/// direction starting at the smaller endpoint.
pub fn simple_paths(g: &Graph) -> Vec<SimplePath> {
    fn extend(g: &Graph, start: usize, stack: &mut Vec<usize>, seen: VertexSet, out: &mut Vec<SimplePath>) {
        let last = *stack.last().expect("path is never empty");
        for next in g.neighbors(last).difference(seen) {
            if next > start {
                out.push(SimplePath { start, interior: stack[1..].to_vec(), end: next });
            }
            stack.push(next);
            let mut seen = seen;
            seen.insert(next);
            extend(g, start, stack, seen, out);
            stack.pop();
        }
    }

    let mut out = Vec::new();
    for start in 1..=g.n() {
        let mut stack = vec![start];
        extend(g, start, &mut stack, VertexSet::singleton(start), &mut out);
    }
    out
}
