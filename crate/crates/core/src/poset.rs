//! The posets `P` (all sums of minimal primes) and `Q` (the recursive prime
//! closure), ordered by reverse inclusion, with open intervals `(q, 1)` and
//! their order complexes.

use std::collections::{BTreeMap, BTreeSet, HashSet};
use std::fmt::Write as _;

use serde::{Deserialize, Serialize};

use crate::error::{IdealError, PosetError};
use crate::graph::{Graph, VertexSet};
use crate::homology::{Face, SimplicialComplex};
use crate::ideal::{minimal_primes, PrimeComponentIdeal, SumIdeal};

type SumKey = (VertexSet, Vec<(usize, usize)>);

/// All sums of nonempty subsets of `gens`, deduplicated, sorted by key.
fn sum_closure(gens: &[SumIdeal]) -> Result<Vec<SumIdeal>, IdealError> {
    let mut seen: BTreeMap<SumKey, SumIdeal> = BTreeMap::new();
    let mut frontier: Vec<SumIdeal> = Vec::new();
    for g in gens {
        if seen.insert(g.key(), g.clone()).is_none() {
            frontier.push(g.clone());
        }
    }
    while let Some(x) = frontier.pop() {
        for g in gens {
            let y = x.add(g)?;
            if let std::collections::btree_map::Entry::Vacant(slot) = seen.entry(y.key()) {
                slot.insert(y.clone());
                frontier.push(y);
            }
        }
    }
    Ok(seen.into_values().collect())
}

/// `P_{J_G}`: every sum of minimal primes of `J_G`.
pub fn build_p(g: &Graph) -> Result<Vec<SumIdeal>, IdealError> {
    let gens: Vec<SumIdeal> = minimal_primes(g)?.iter().map(SumIdeal::from_prime).collect();
    sum_closure(&gens)
}

/// `Q_{J_G}`: the primes of `P_{J_G}`, together with the primes of the
/// `P`-poset of every decomposition of a non-prime sum, recursively.
pub fn build_q(g: &Graph) -> Result<QPoset, IdealError> {
    let start = minimal_primes(g)?;
    let n = g.n();
    let mut primes: BTreeSet<PrimeComponentIdeal> = BTreeSet::new();
    let mut visited: HashSet<Vec<PrimeComponentIdeal>> = HashSet::new();
    let mut worklist = vec![start.clone()];
    while let Some(mut d) = worklist.pop() {
        d.sort();
        if !visited.insert(d.clone()) {
            continue;
        }
        let gens: Vec<SumIdeal> = d.iter().map(SumIdeal::from_prime).collect();
        for x in sum_closure(&gens)? {
            match x.to_prime() {
                Some(p) => {
                    primes.insert(p);
                }
                None => worklist.push(x.decompose()?),
            }
        }
    }
    Ok(QPoset::new(n, primes.into_iter().collect()))
}

/// A finite poset of primes under reverse inclusion: `p ≤ q` iff `I_p ⊇ I_q`.
///
/// Elements are sorted by decreasing Krull dimension, then canonically, so
/// smaller ideals come first.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct QPoset {
    n: usize,
    elements: Vec<PrimeComponentIdeal>,
    /// `above[i]`: indices `j` with `I_j ⊊ I_i`, i.e. `i < j` in the poset.
    above: Vec<Vec<usize>>,
    covers: Vec<(usize, usize)>,
}

impl QPoset {
    pub fn new(n: usize, elements: Vec<PrimeComponentIdeal>) -> Self {
        QPoset::with_containment(n, elements, PrimeComponentIdeal::contains)
    }

    /// Orders `elements` by `contains(a, b)`, read as `I_a ⊇ I_b`.
    pub fn with_containment(
        n: usize,
        mut elements: Vec<PrimeComponentIdeal>,
        contains: impl Fn(&PrimeComponentIdeal, &PrimeComponentIdeal) -> bool,
    ) -> Self {
        elements.sort_by(|a, b| b.krull_dim().cmp(&a.krull_dim()).then_with(|| a.cmp(b)));
        elements.dedup();
        let m = elements.len();
        let above: Vec<Vec<usize>> =
            (0..m).map(|i| (0..m).filter(|&j| j != i && contains(&elements[i], &elements[j])).collect()).collect();
        let mut covers = Vec::new();
        for i in 0..m {
            for &j in &above[i] {
                let between = above[i].iter().any(|&k| above[k].contains(&j));
                if !between {
                    covers.push((i, j));
                }
            }
        }
        covers.sort_unstable();
        QPoset { n, elements, above, covers }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn len(&self) -> usize {
        self.elements.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elements.is_empty()
    }

    pub fn elements(&self) -> &[PrimeComponentIdeal] {
        &self.elements
    }

    pub fn element(&self, i: usize) -> &PrimeComponentIdeal {
        &self.elements[i]
    }

    pub fn index_of(&self, p: &PrimeComponentIdeal) -> Option<usize> {
        self.elements.iter().position(|e| e == p)
    }

    /// `i < j` in the poset, i.e. `I_j ⊊ I_i`.
    pub fn less(&self, i: usize, j: usize) -> bool {
        self.above[i].contains(&j)
    }

    /// Cover pairs `(i, j)`: `I_j ⊊ I_i` with nothing in between.
    pub fn covers(&self) -> &[(usize, usize)] {
        &self.covers
    }

    /// Elements with no element above them (the smallest ideals).
    pub fn maximal_elements(&self) -> Vec<usize> {
        (0..self.len()).filter(|&i| self.above[i].is_empty()).collect()
    }

    /// `(q, 1) = {z : I_z ⊊ I_q}`.
    pub fn open_interval(&self, q: &PrimeComponentIdeal) -> Result<Vec<usize>, PosetError> {
        let i = self.index_of(q).ok_or(PosetError::UnknownElement)?;
        Ok(self.open_interval_at(i))
    }

    pub fn open_interval_at(&self, i: usize) -> Vec<usize> {
        self.above[i].clone()
    }

    /// Order complex of the induced subposet on `subset`: faces are chains,
    /// labelled by element index. The empty subposet gives `{∅}`.
    pub fn order_complex(&self, subset: &[usize]) -> SimplicialComplex {
        let members: BTreeSet<usize> = subset.iter().copied().collect();
        let mut faces: Vec<Face> = vec![Vec::new()];
        let mut stack: Vec<Face> = members.iter().map(|&v| vec![v as u32]).collect();
        while let Some(chain) = stack.pop() {
            let top = *chain.last().expect("chains on the stack are nonempty") as usize;
            for &next in &self.above[top] {
                if members.contains(&next) {
                    let mut longer = chain.clone();
                    longer.push(next as u32);
                    stack.push(longer);
                }
            }
            faces.push(chain);
        }
        SimplicialComplex::from_closed_faces(faces)
    }

    pub fn interval_complex(&self, i: usize) -> SimplicialComplex {
        self.order_complex(&self.above[i])
    }

    /// Hasse diagram in DOT, larger ideals at the bottom.
    pub fn hasse_dot(&self) -> String {
        let mut out = String::from("digraph Q {\n  rankdir=BT;\n  node [shape=box];\n");
        for (i, p) in self.elements.iter().enumerate() {
            let label = format!("{} (dim {})", p.generator_string(), p.krull_dim());
            let _ = writeln!(out, "  n{i} [label=\"{}\"];", label.replace('"', "\\\""));
        }
        for &(i, j) in &self.covers {
            let _ = writeln!(out, "  n{i} -> n{j};");
        }
        out.push_str("}\n");
        out
    }

    pub fn to_json(&self) -> PosetJson {
        PosetJson {
            nodes: self
                .elements
                .iter()
                .enumerate()
                .map(|(id, p)| PosetNode { id, s: p.s(), cliques: p.cliques().to_vec(), dim: p.krull_dim() })
                .collect(),
            covers: self.covers.iter().map(|&(i, j)| [i, j]).collect(),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PosetNode {
    pub id: usize,
    pub s: VertexSet,
    pub cliques: Vec<VertexSet>,
    pub dim: usize,
}

/// `{nodes: [{id, s, cliques, dim}], covers: [[i, j], ...]}` where `I_j ⊊ I_i`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PosetJson {
    pub nodes: Vec<PosetNode>,
    pub covers: Vec<[usize; 2]>,
}
