//! Ideals of the form `⟨x_i, y_i : i ∈ S⟩ + J(K_1) + ... + J(K_c)` handled
//! purely combinatorially: a prime `P_S(H̃)` is a vertex set `S` plus the
//! supports of complete graphs, and a sum of such primes is a vertex set
//! plus an arbitrary graph on the remaining vertices.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::IdealError;
use crate::graph::{components_within, minimal_prime_supports_within, Graph, VertexSet, MAX_VERTICES};

/// A prime `P_S(H̃)`: the variables of `S` together with the 2-minors of
/// complete graphs on pairwise disjoint cliques covering `[n] \ S`.
///
/// The representation is canonical (cliques sorted by minimum vertex), so
/// structural equality is ideal equality.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(try_from = "PrimeJson", into = "PrimeJson")]
pub struct PrimeComponentIdeal {
    n: usize,
    s: VertexSet,
    cliques: Vec<VertexSet>,
}

impl PrimeComponentIdeal {
    pub fn new(n: usize, s: VertexSet, mut cliques: Vec<VertexSet>) -> Result<Self, IdealError> {
        if n > MAX_VERTICES {
            return Err(crate::error::GraphError::TooManyVertices(n).into());
        }
        let mut covered = s;
        for &c in &cliques {
            if c.is_empty() {
                return Err(IdealError::EmptyClique);
            }
            if let Some(v) = c.intersection(covered).first() {
                return Err(IdealError::Overlap(v));
            }
            covered = covered.union(c);
        }
        if let Some(v) = VertexSet::full(n).difference(covered).first() {
            return Err(IdealError::Uncovered(v));
        }
        if let Some(v) = covered.difference(VertexSet::full(n)).first() {
            return Err(crate::error::GraphError::VertexOutOfRange { vertex: v, n }.into());
        }
        cliques.sort_by_key(|c| c.first());
        Ok(PrimeComponentIdeal { n, s, cliques })
    }

    /// `P_S(G)`: cliques are the connected components of `G \ S`.
    pub fn from_support(g: &Graph, s: VertexSet) -> Self {
        let s = s.intersection(g.vertices());
        let cliques = components_within(g, g.vertices().difference(s));
        PrimeComponentIdeal { n: g.n(), s, cliques }
    }

    /// The homogeneous maximal ideal of `K[x_1..x_n, y_1..y_n]`.
    pub fn maximal(n: usize) -> Self {
        PrimeComponentIdeal { n, s: VertexSet::full(n), cliques: Vec::new() }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn s(&self) -> VertexSet {
        self.s
    }

    pub fn cliques(&self) -> &[VertexSet] {
        &self.cliques
    }

    /// `dim A/P = Σ (|C| + 1) = n - |S| + c`.
    pub fn krull_dim(&self) -> usize {
        self.cliques.iter().map(|c| c.len() + 1).sum()
    }

    pub fn height(&self) -> usize {
        2 * self.n - self.krull_dim()
    }

    /// Generated by variables only (every clique is a singleton).
    pub fn is_monomial(&self) -> bool {
        self.cliques.iter().all(|c| c.len() == 1)
    }

    pub fn is_maximal(&self) -> bool {
        self.cliques.is_empty()
    }

    /// Number of cliques with at least two vertices, i.e. the factors
    /// contributing actual 2-minors.
    pub fn nontrivial_cliques(&self) -> usize {
        self.cliques.iter().filter(|c| c.len() >= 2).count()
    }

    fn clique_of(&self, v: usize) -> Option<VertexSet> {
        self.cliques.iter().copied().find(|c| c.contains(v))
    }

    /// Whether `Δ_ab` lies in this prime.
    pub fn contains_minor(&self, a: usize, b: usize) -> bool {
        self.s.contains(a) || self.s.contains(b) || self.clique_of(a).is_some_and(|c| c.contains(b))
    }

    /// Whether this ideal contains `other`.
    ///
    /// Holds iff `S_other ⊆ S_self` and each clique of `other`, once the
    /// vertices of `S_self` are removed, has at most one vertex or lies
    /// inside a single clique of `self`.
    pub fn contains(&self, other: &PrimeComponentIdeal) -> bool {
        assert_eq!(self.n, other.n, "ideals live in different rings");
        other.s.is_subset(self.s)
            && other.cliques.iter().all(|&c| {
                let rest = c.difference(self.s);
                rest.len() <= 1 || self.cliques.iter().any(|&d| rest.is_subset(d))
            })
    }

    /// Minimal generators: `x_i, y_i` for `i ∈ S`, then `Δ_ab` within cliques.
    pub fn generators(&self) -> Vec<Generator> {
        let mut gens = Vec::new();
        for i in self.s {
            gens.push(Generator::X(i));
            gens.push(Generator::Y(i));
        }
        for &c in &self.cliques {
            let vs = c.to_vec();
            for (k, &a) in vs.iter().enumerate() {
                for &b in &vs[k + 1..] {
                    gens.push(Generator::Minor(a, b));
                }
            }
        }
        gens
    }

    /// Generator list in the usual notation, e.g. `⟨x3,y3,Δ12,Δ45⟩`.
    pub fn generator_string(&self) -> String {
        generator_string(&self.generators())
    }

    pub fn as_sum(&self) -> SumIdeal {
        SumIdeal::from_prime(self)
    }
}

impl fmt::Display for PrimeComponentIdeal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut parts = Vec::new();
        if !self.s.is_empty() {
            parts.push(format!("⟨x_i,y_i : i∈{}⟩", self.s));
        }
        for c in self.cliques.iter().filter(|c| c.len() >= 2) {
            parts.push(format!("J({c})"));
        }
        if parts.is_empty() {
            f.write_str("0")
        } else {
            f.write_str(&parts.join(" + "))
        }
    }
}

impl fmt::Debug for PrimeComponentIdeal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "P(s={}, cliques={:?})", self.s, self.cliques)
    }
}

#[derive(Serialize, Deserialize)]
struct PrimeJson {
    s: VertexSet,
    cliques: Vec<VertexSet>,
}

impl From<PrimeComponentIdeal> for PrimeJson {
    fn from(p: PrimeComponentIdeal) -> Self {
        PrimeJson { s: p.s, cliques: p.cliques }
    }
}

impl TryFrom<PrimeJson> for PrimeComponentIdeal {
    type Error = IdealError;

    fn try_from(j: PrimeJson) -> Result<Self, IdealError> {
        let all = j.cliques.iter().fold(j.s, |acc, &c| acc.union(c));
        PrimeComponentIdeal::new(all.last().unwrap_or(0), j.s, j.cliques)
    }
}

/// A minimal generator of a `P_S(H̃)` ideal.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Generator {
    X(usize),
    Y(usize),
    Minor(usize, usize),
}

impl fmt::Display for Generator {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match *self {
            Generator::X(i) => write!(f, "x{i}"),
            Generator::Y(i) => write!(f, "y{i}"),
            Generator::Minor(a, b) if a < 10 && b < 10 => write!(f, "Δ{a}{b}"),
            Generator::Minor(a, b) => write!(f, "Δ({a},{b})"),
        }
    }
}

fn generator_string(gens: &[Generator]) -> String {
    let body: Vec<String> = gens.iter().map(ToString::to_string).collect();
    format!("⟨{}⟩", body.join(","))
}

/// A sum of `P_S(H̃)`-type ideals: `⟨x_i, y_i : i ∈ S⟩ + J(K)` where `K` is
/// a graph on `[n] \ S`, not necessarily a disjoint union of cliques.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct SumIdeal {
    s: VertexSet,
    graph: Graph,
    components: Vec<VertexSet>,
}

impl SumIdeal {
    fn build(s: VertexSet, graph: Graph) -> Self {
        let components = components_within(&graph, graph.vertices().difference(s));
        SumIdeal { s, graph, components }
    }

    /// `J_G` itself.
    pub fn of_graph(g: &Graph) -> Self {
        SumIdeal::build(VertexSet::empty(), g.clone())
    }

    pub fn from_prime(p: &PrimeComponentIdeal) -> Self {
        let mut edges = Vec::new();
        for &c in p.cliques() {
            let vs = c.to_vec();
            for (k, &a) in vs.iter().enumerate() {
                edges.extend(vs[k + 1..].iter().map(|&b| (a, b)));
            }
        }
        let graph = Graph::from_edges(p.n(), edges).expect("clique edges are simple");
        SumIdeal::build(p.s(), graph)
    }

    pub fn n(&self) -> usize {
        self.graph.n()
    }

    pub fn s(&self) -> VertexSet {
        self.s
    }

    /// The graph `K` on `[n] \ S` whose binomial edge ideal is added to the variables of `S`.
    pub fn graph(&self) -> &Graph {
        &self.graph
    }

    /// Connected components of `K`, sorted by minimum vertex.
    pub fn components(&self) -> &[VertexSet] {
        &self.components
    }

    /// Components together with their edge lists.
    pub fn component_graphs(&self) -> Vec<(VertexSet, Vec<(usize, usize)>)> {
        let edges = self.graph.edges();
        self.components
            .iter()
            .map(|&c| {
                let es = edges.iter().copied().filter(|&(u, _)| c.contains(u)).collect();
                (c, es)
            })
            .collect()
    }

    /// The sum of two ideals of this shape.
    pub fn add(&self, other: &SumIdeal) -> Result<SumIdeal, IdealError> {
        if self.n() != other.n() {
            return Err(IdealError::RingMismatch(self.n(), other.n()));
        }
        let s = self.s.union(other.s);
        let mut edges = self.graph.edges();
        edges.extend(other.graph.edges());
        edges.retain(|&(u, v)| !s.contains(u) && !s.contains(v));
        edges.sort_unstable();
        edges.dedup();
        let graph = Graph::from_edges(self.n(), edges).expect("edges are deduplicated");
        Ok(SumIdeal::build(s, graph))
    }

    /// Prime iff every component of `K` is complete.
    pub fn is_prime(&self) -> bool {
        self.components.iter().all(|&c| self.graph.is_clique(c))
    }

    pub fn to_prime(&self) -> Option<PrimeComponentIdeal> {
        self.is_prime().then(|| PrimeComponentIdeal { n: self.n(), s: self.s, cliques: self.components.clone() })
    }

    /// Minimal primes: for each component `K_t` choose a minimal prime
    /// support `T_t` of `J_{K_t}`; every combination of choices gives one
    /// prime `P_{S ∪ ⋃T_t}` with cliques the components of each `K_t \ T_t`.
    pub fn decompose(&self) -> Result<Vec<PrimeComponentIdeal>, IdealError> {
        if let Some(p) = self.to_prime() {
            return Ok(vec![p]);
        }
        let mut partial: Vec<(VertexSet, Vec<VertexSet>)> = vec![(self.s, Vec::new())];
        for &comp in &self.components {
            let choices: Vec<(VertexSet, Vec<VertexSet>)> = if self.graph.is_clique(comp) {
                vec![(VertexSet::empty(), vec![comp])]
            } else {
                minimal_prime_supports_within(&self.graph, comp)?
                    .into_iter()
                    .map(|t| (t, components_within(&self.graph, comp.difference(t))))
                    .collect()
            };
            partial = partial
                .iter()
                .flat_map(|(s, cl)| {
                    choices.iter().map(move |(t, more)| {
                        let mut cl = cl.clone();
                        cl.extend(more.iter().copied());
                        (s.union(*t), cl)
                    })
                })
                .collect();
        }
        let mut primes: Vec<PrimeComponentIdeal> =
            partial.into_iter().map(|(s, cl)| PrimeComponentIdeal::new(self.n(), s, cl)).collect::<Result<_, _>>()?;
        primes.sort();
        primes.dedup();
        // combinations of componentwise minimal primes are incomparable; re-check anyway
        let keep: Vec<bool> = primes.iter().map(|p| !primes.iter().any(|q| q != p && p.contains(q))).collect();
        Ok(primes.into_iter().zip(keep).filter_map(|(p, k)| k.then_some(p)).collect())
    }

    /// Minimal generators in the usual notation.
    pub fn generator_string(&self) -> String {
        let mut gens = Vec::new();
        for i in self.s {
            gens.push(Generator::X(i));
            gens.push(Generator::Y(i));
        }
        gens.extend(self.graph.edges().into_iter().map(|(a, b)| Generator::Minor(a, b)));
        generator_string(&gens)
    }

    /// Canonical identity: `(S, sorted edge list of K)`.
    pub fn key(&self) -> (VertexSet, Vec<(usize, usize)>) {
        (self.s, self.graph.edges())
    }
}

impl fmt::Display for SumIdeal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut parts = Vec::new();
        if !self.s.is_empty() {
            parts.push(format!("⟨x_i,y_i : i∈{}⟩", self.s));
        }
        for (c, es) in self.component_graphs() {
            if es.is_empty() {
                continue;
            }
            if self.graph.is_clique(c) {
                parts.push(format!("J({c})"));
            } else {
                let es: Vec<String> = es.iter().map(|(a, b)| format!("{a}-{b}")).collect();
                parts.push(format!("J[{}]", es.join(" ")));
            }
        }
        if parts.is_empty() {
            f.write_str("0")
        } else {
            f.write_str(&parts.join(" + "))
        }
    }
}

impl fmt::Debug for SumIdeal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Sum(s={}, edges={:?})", self.s, self.graph.edges())
    }
}

/// `p + q` for two primes.
pub fn sum(p: &PrimeComponentIdeal, q: &PrimeComponentIdeal) -> Result<SumIdeal, IdealError> {
    p.as_sum().add(&q.as_sum())
}

/// Minimal primes of `J_G`; disconnected graphs are handled componentwise.
pub fn minimal_primes(g: &Graph) -> Result<Vec<PrimeComponentIdeal>, IdealError> {
    SumIdeal::of_graph(g).decompose()
}
