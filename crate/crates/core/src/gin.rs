//! The generic initial ideal `gin(J_G)` as a squarefree monomial ideal, its
//! Stanley–Reisner complex, and the classical Hochster formula on it as an
//! independent oracle for the local cohomology computed by the engine.
//!
//! Variables are bits of a `u64`: `x_i` is bit `i − 1` and `y_i` is bit
//! `n + i − 1`, so graphs are limited to 32 vertices here.

use std::collections::{BTreeMap, BTreeSet, HashMap, HashSet};
use std::fmt;

use num_bigint::BigInt;
use num_traits::Zero;
use serde::{Deserialize, Serialize};

use crate::engine::{CohomologyProfile, Multiplicity};
use crate::error::EngineError;
use crate::graph::{simple_paths, Graph, VertexSet};
use crate::homology::{Face, FieldSpec, HomologyAudit, SimplicialComplex};
use crate::ideal::{minimal_primes, PrimeComponentIdeal};
use crate::poset::{build_q, QPoset};
use crate::series::{factor_series, for_each_point, RationalSeries};

pub const MAX_ORACLE_VERTICES: usize = 32;

fn x_bit(i: usize) -> u64 {
    1 << (i - 1)
}

fn y_bit(n: usize, i: usize) -> u64 {
    1 << (n + i - 1)
}

fn mask_to_face(mask: u64) -> Face {
    (0..64).filter(|b| mask & (1 << b) != 0).collect()
}

fn submasks(mask: u64) -> impl Iterator<Item = u64> {
    let mut next = Some(mask);
    std::iter::from_fn(move || {
        let cur = next?;
        next = (cur != 0).then(|| (cur - 1) & mask);
        Some(cur)
    })
}

fn check_size(n: usize) -> Result<(), EngineError> {
    if n > MAX_ORACLE_VERTICES {
        Err(EngineError::OracleTooLarge(n))
    } else {
        Ok(())
    }
}

/// A squarefree monomial in `x_1..x_n, y_1..y_n`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct Monomial {
    n: usize,
    bits: u64,
}

impl Monomial {
    pub fn new(n: usize, bits: u64) -> Self {
        Monomial { n, bits }
    }

    pub fn bits(self) -> u64 {
        self.bits
    }

    pub fn degree(self) -> u32 {
        self.bits.count_ones()
    }

    pub fn divides(self, other: Monomial) -> bool {
        self.bits & !other.bits == 0
    }

    fn sort_key(self) -> (u32, u64) {
        (self.degree(), self.bits)
    }
}

impl Ord for Monomial {
    fn cmp(&self, other: &Self) -> std::cmp::Ordering {
        self.sort_key().cmp(&other.sort_key())
    }
}

impl PartialOrd for Monomial {
    fn partial_cmp(&self, other: &Self) -> Option<std::cmp::Ordering> {
        Some(self.cmp(other))
    }
}

/// `x1x3y2`, or `1` for the empty monomial.
impl fmt::Display for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.bits == 0 {
            return f.write_str("1");
        }
        for i in 1..=self.n {
            if self.bits & x_bit(i) != 0 {
                write!(f, "x{i}")?;
            }
        }
        for i in 1..=self.n {
            if self.bits & y_bit(self.n, i) != 0 {
                write!(f, "y{i}")?;
            }
        }
        Ok(())
    }
}

/// A squarefree monomial ideal given by its minimal generators.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SquarefreeMonomialIdeal {
    n: usize,
    generators: Vec<Monomial>,
}

impl SquarefreeMonomialIdeal {
    /// Keeps the divisibility-minimal elements of `gens`.
    pub fn new(n: usize, gens: impl IntoIterator<Item = u64>) -> Self {
        let mut all: Vec<Monomial> = gens.into_iter().map(|b| Monomial::new(n, b)).collect();
        all.sort();
        all.dedup();
        let mut generators: Vec<Monomial> = Vec::new();
        for m in all {
            if !generators.iter().any(|g| g.divides(m)) {
                generators.push(m);
            }
        }
        SquarefreeMonomialIdeal { n, generators }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn generators(&self) -> &[Monomial] {
        &self.generators
    }

    pub fn is_zero(&self) -> bool {
        self.generators.is_empty()
    }

    pub fn contains_monomial(&self, m: Monomial) -> bool {
        self.generators.iter().any(|g| g.divides(m))
    }

    pub fn contains(&self, other: &SquarefreeMonomialIdeal) -> bool {
        other.generators.iter().all(|&m| self.contains_monomial(m))
    }

    /// Generators as strings, e.g. `["x1x2", "x1x3y2"]`.
    pub fn generator_strings(&self) -> Vec<String> {
        self.generators.iter().map(ToString::to_string).collect()
    }
}

impl fmt::Display for SquarefreeMonomialIdeal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.generators.is_empty() {
            return f.write_str("0");
        }
        write!(f, "⟨{}⟩", self.generator_strings().join(", "))
    }
}

/// Stanley–Reisner complex on the `2n` variables, stored by its facets.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SrComplex {
    n: usize,
    facets: Vec<u64>,
}

impl SrComplex {
    /// The complex generated by `facets`; non-maximal ones are dropped.
    pub fn from_facets(n: usize, facets: impl IntoIterator<Item = u64>) -> Self {
        let mut all: Vec<u64> = facets.into_iter().collect();
        all.sort_unstable_by_key(|f| std::cmp::Reverse((f.count_ones(), *f)));
        all.dedup();
        let mut kept: Vec<u64> = Vec::new();
        for f in all {
            if !kept.iter().any(|&k| f & !k == 0) {
                kept.push(f);
            }
        }
        kept.sort_unstable();
        SrComplex { n, facets: kept }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn facets(&self) -> &[u64] {
        &self.facets
    }

    /// `dim K[Δ]`, the largest facet size.
    pub fn krull_dim(&self) -> usize {
        self.facets.iter().map(|f| f.count_ones() as usize).max().unwrap_or(0)
    }

    pub fn contains_face(&self, face: u64) -> bool {
        self.facets.iter().any(|&f| face & !f == 0)
    }

    /// All faces, sorted by size then mask.
    pub fn faces(&self) -> Vec<u64> {
        let mut seen: HashSet<u64> = HashSet::new();
        for &f in &self.facets {
            seen.extend(submasks(f));
        }
        let mut faces: Vec<u64> = seen.into_iter().collect();
        faces.sort_unstable_by_key(|&f| (f.count_ones(), f));
        faces
    }

    pub fn f_vector(&self) -> Vec<u64> {
        let mut out = vec![0u64; self.krull_dim() + 1];
        for f in self.faces() {
            out[f.count_ones() as usize] += 1;
        }
        out
    }

    /// Minimal non-faces, i.e. the minimal generators of the Stanley–Reisner ideal.
    pub fn minimal_non_faces(&self) -> SquarefreeMonomialIdeal {
        let faces: HashSet<u64> = self.faces().into_iter().collect();
        let nvars = 2 * self.n;
        let mut found: BTreeSet<u64> = BTreeSet::new();
        for &f in &faces {
            for v in (0..nvars).filter(|v| f & (1 << v) == 0) {
                let cand = f | (1 << v);
                if faces.contains(&cand) || found.contains(&cand) {
                    continue;
                }
                let minimal = (0..nvars).filter(|w| cand & (1 << w) != 0).all(|w| faces.contains(&(cand & !(1 << w))));
                if minimal {
                    found.insert(cand);
                }
            }
        }
        SquarefreeMonomialIdeal::new(self.n, found)
    }

    /// Facets of `lk(face)`; empty when `face` is not a face.
    pub fn link_facets(&self, face: u64) -> Vec<u64> {
        let mut out: Vec<u64> = self.facets.iter().filter(|&&f| face & !f == 0).map(|&f| f & !face).collect();
        out.sort_unstable();
        out
    }

    pub fn to_simplicial_complex(&self) -> SimplicialComplex {
        SimplicialComplex::from_facets(self.facets.iter().map(|&f| mask_to_face(f)))
    }

    /// `HS(K[Δ]; t) = Σ_F t^{|F|}/(1 − t)^{|F|}`, rewritten in `u = t⁻¹` as
    /// `Σ_F (−1)^{|F|}/(1 − u)^{|F|}`.
    pub fn hilbert_series(&self) -> RationalSeries {
        self.f_vector()
            .into_iter()
            .enumerate()
            .map(|(k, f)| {
                let sign = if k % 2 == 0 { 1 } else { -1 };
                RationalSeries::new([BigInt::from(f) * sign], k as u32)
            })
            .sum()
    }
}

/// `gin(P)` for a prime `P = P_S(H̃)`:
/// `⟨x_i, y_i : i ∈ S⟩ + ⟨x_a x_b : a, b in a common clique⟩`.
pub fn gin_prime(p: &PrimeComponentIdeal) -> SquarefreeMonomialIdeal {
    let n = p.n();
    let mut gens: Vec<u64> = p.s().iter().flat_map(|i| [x_bit(i), y_bit(n, i)]).collect();
    for &c in p.cliques() {
        let vs = c.to_vec();
        for (k, &a) in vs.iter().enumerate() {
            gens.extend(vs[k + 1..].iter().map(|&b| x_bit(a) | x_bit(b)));
        }
    }
    SquarefreeMonomialIdeal::new(n, gens)
}

/// Facets of the Stanley–Reisner complex of `gin(P)`: one `x` per clique
/// together with every `y_v`, `v ∉ S`.
pub fn gin_prime_complex(p: &PrimeComponentIdeal) -> SrComplex {
    let n = p.n();
    let ys: u64 = VertexSet::full(n).difference(p.s()).iter().map(|v| y_bit(n, v)).sum();
    let mut facets = vec![ys];
    for &c in p.cliques() {
        facets = facets.iter().flat_map(|&f| c.iter().map(move |v| f | x_bit(v))).collect();
    }
    SrComplex::from_facets(n, facets)
}

/// `gin(J_G)` together with its Stanley–Reisner complex.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GinIdeal {
    pub ideal: SquarefreeMonomialIdeal,
    pub complex: SrComplex,
}

/// `gin(J_G) = ⋂_P gin(P)` over the minimal primes, computed as the union of
/// their Stanley–Reisner complexes.
pub fn gin_ideal(g: &Graph) -> Result<GinIdeal, EngineError> {
    check_size(g.n())?;
    let facets: Vec<u64> = minimal_primes(g)?.iter().flat_map(|p| gin_prime_complex(p).facets).collect();
    let complex = SrComplex::from_facets(g.n(), facets);
    let ideal = complex.minimal_non_faces();
    Ok(GinIdeal { ideal, complex })
}

/// Path monomials `x_i x_j Π y_a` and how they differ from `gin_ideal`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PathGeneratorReport {
    pub generators: SquarefreeMonomialIdeal,
    /// Minimal path monomials that are not minimal generators of `gin(J_G)`.
    pub only_paths: Vec<Monomial>,
    /// Minimal generators of `gin(J_G)` that are not minimal path monomials.
    pub only_intersection: Vec<Monomial>,
}

impl PathGeneratorReport {
    pub fn agrees(&self) -> bool {
        self.only_paths.is_empty() && self.only_intersection.is_empty()
    }
}

pub fn gin_path_generators(g: &Graph) -> Result<PathGeneratorReport, EngineError> {
    let n = g.n();
    check_size(n)?;
    let monomials = simple_paths(g).into_iter().map(|p| {
        let ys: u64 = p.interior.iter().map(|&a| y_bit(n, a)).sum();
        x_bit(p.start) | x_bit(p.end) | ys
    });
    let generators = SquarefreeMonomialIdeal::new(n, monomials);
    let gin = gin_ideal(g)?.ideal;
    let a: BTreeSet<Monomial> = generators.generators().iter().copied().collect();
    let b: BTreeSet<Monomial> = gin.generators().iter().copied().collect();
    Ok(PathGeneratorReport {
        only_paths: a.difference(&b).copied().collect(),
        only_intersection: b.difference(&a).copied().collect(),
        generators,
    })
}

/// `dim H^r(K[Δ])_a` by the classical Hochster formula, for `a ∈ ℤ^{2n}`
/// indexed like the variable bits.
pub fn hochster_graded_dim(c: &SrComplex, r: usize, a: &[i64], field: FieldSpec) -> usize {
    assert_eq!(a.len(), 2 * c.n());
    if a.iter().any(|&v| v > 0) {
        return 0;
    }
    let face: u64 = a.iter().enumerate().filter(|(_, &v)| v < 0).map(|(b, _)| 1u64 << b).sum();
    if !c.contains_face(face) {
        return 0;
    }
    let deg = r as i64 - face.count_ones() as i64 - 1;
    let link = SimplicialComplex::from_facets(c.link_facets(face).into_iter().map(mask_to_face));
    link.reduced_cohomology(field).get(deg)
}

/// Local cohomology of `K[Δ]` from links, tabulated once per complex.
///
/// Only faces whose link has nonzero reduced cohomology contribute; links
/// that are cones (all facets share a vertex) are skipped without
/// computing anything.
#[derive(Clone, Debug)]
pub struct HochsterOracle {
    n: usize,
    field: FieldSpec,
    /// `(face, degree of H̃, dim)` for every nonzero link cohomology group.
    pieces: Vec<(u64, i64, usize)>,
    /// `(r, V) → [(B, c)]`: sums of link cohomology over faces with vertex
    /// support `V` and doubly covered vertices `B`, as `[n]`-bitmasks.
    coarse: HashMap<(usize, u64), Vec<(u64, u64)>>,
    /// `(r, |F|) → Σ dim H̃^{r − |F| − 1}(lk F)`.
    by_size: BTreeMap<(usize, usize), u64>,
    audit: HomologyAudit,
    cone_links: usize,
    hilbert_series: RationalSeries,
}

impl HochsterOracle {
    pub fn new(c: &SrComplex, field: FieldSpec) -> Self {
        let n = c.n();
        let low = (1u64 << n) - 1;
        let mut audit = HomologyAudit::default();
        let mut cone_links = 0;
        let mut cache: HashMap<Vec<u64>, Vec<(i64, usize)>> = HashMap::new();
        let mut pieces = Vec::new();
        let mut coarse_acc: BTreeMap<(usize, u64, u64), u64> = BTreeMap::new();
        let mut by_size: BTreeMap<(usize, usize), u64> = BTreeMap::new();
        for face in c.faces() {
            let link = c.link_facets(face);
            let apex = link.iter().fold(u64::MAX, |acc, &f| acc & f);
            if apex != 0 {
                cone_links += 1;
                continue;
            }
            let nonzero = cache
                .entry(link)
                .or_insert_with_key(|link| {
                    let h =
                        SimplicialComplex::from_facets(link.iter().map(|&f| mask_to_face(f))).reduced_cohomology(field);
                    audit.record(&h);
                    h.nonzero()
                })
                .clone();
            let size = face.count_ones() as usize;
            let xs = face & low;
            let ys = (face >> n) & low;
            for (deg, dim) in nonzero {
                let r = (deg + size as i64 + 1) as usize;
                pieces.push((face, deg, dim));
                *coarse_acc.entry((r, xs | ys, xs & ys)).or_default() += dim as u64;
                *by_size.entry((r, size)).or_default() += dim as u64;
            }
        }
        let mut coarse: HashMap<(usize, u64), Vec<(u64, u64)>> = HashMap::new();
        for ((r, v, b), count) in coarse_acc {
            coarse.entry((r, v)).or_default().push((b, count));
        }
        HochsterOracle { n, field, pieces, coarse, by_size, audit, cone_links, hilbert_series: c.hilbert_series() }
    }

    pub fn field(&self) -> FieldSpec {
        self.field
    }

    pub fn audit(&self) -> HomologyAudit {
        self.audit
    }

    pub fn cone_links(&self) -> usize {
        self.cone_links
    }

    /// Faces with non-acyclic links, as `(face mask, degree, dimension)`.
    pub fn pieces(&self) -> &[(u64, i64, usize)] {
        &self.pieces
    }

    /// `HS(K[Δ])` from the f-vector, in `u = t⁻¹`.
    pub fn ring_hilbert_series(&self) -> &RationalSeries {
        &self.hilbert_series
    }

    /// Cohomological degrees with `H^r ≠ 0`.
    pub fn degrees(&self) -> BTreeSet<usize> {
        self.by_size.keys().map(|&(r, _)| r).collect()
    }

    /// `dim H^r_b` for `b ∈ ℤⁿ` under `deg x_i = deg y_i = e_i`, with
    /// `depth[i − 1] = −b_i ≥ 0`. A vertex `i` with `b_i = −k < 0` is covered
    /// by one of `x_i, y_i` in one way, or by both in `k − 1` ways.
    pub fn coarse_dim(&self, r: usize, depth: &[u64]) -> u128 {
        let v: u64 = depth.iter().enumerate().filter(|(_, &k)| k > 0).map(|(i, _)| 1u64 << i).sum();
        let Some(list) = self.coarse.get(&(r, v)) else {
            return 0;
        };
        list.iter()
            .map(|&(b, count)| {
                (0..self.n).filter(|i| b & (1 << i) != 0).fold(count as u128, |acc, i| acc * (depth[i] as u128 - 1))
            })
            .sum()
    }

    fn has_support(&self, r: usize, v: u64) -> bool {
        self.coarse.contains_key(&(r, v))
    }

    /// `dim H^r` in total degree `−k` for `k = 0..=max_degree`: a face `F`
    /// with `|F| ≥ 1` occupies `C(k − 1, |F| − 1)` degrees `a` of total `−k`.
    pub fn total_degree_dims(&self, r: usize, max_degree: usize) -> Vec<BigInt> {
        let mut out = vec![BigInt::zero(); max_degree + 1];
        for (&(rr, size), &count) in &self.by_size {
            if rr != r {
                continue;
            }
            for (k, slot) in out.iter_mut().enumerate() {
                let ways = match (size, k) {
                    (0, 0) => BigInt::from(1),
                    (0, _) | (_, 0) => BigInt::zero(),
                    _ if k < size => BigInt::zero(),
                    _ => binomial(k - 1, size - 1),
                };
                *slot += ways * count;
            }
        }
        out
    }

    /// `max (r − |F|)` over faces with nonzero contribution to `H^r`.
    pub fn regularity(&self) -> Option<i64> {
        self.by_size.keys().map(|&(r, size)| r as i64 - size as i64).max()
    }
}

fn binomial(n: usize, k: usize) -> BigInt {
    let mut acc = BigInt::from(1);
    for i in 0..k {
        acc = acc * (n - i) / (i + 1);
    }
    acc
}

/// The decomposition rebuilt on the monomial side: the poset of the
/// `gin(I_q)` ordered by monomial containment, its multiplicities, and a
/// check of each block `H^{d_q}(A/gin(I_q))` against the clique-factor series.
#[derive(Clone, Debug)]
pub struct Main2Report {
    pub entries: Vec<Multiplicity>,
    pub poset_matches: bool,
    pub multiplicities_match: bool,
    /// Elements whose block disagrees with `Π factor_series` (by index).
    pub block_mismatches: Vec<usize>,
    pub audit: HomologyAudit,
}

impl Main2Report {
    pub fn agrees(&self) -> bool {
        self.poset_matches && self.multiplicities_match && self.block_mismatches.is_empty()
    }
}

pub fn main2_decomposition(
    g: &Graph,
    profile: &CohomologyProfile,
    truncation: usize,
) -> Result<Main2Report, EngineError> {
    check_size(g.n())?;
    let q: QPoset = build_q(g)?;
    let ideals: HashMap<PrimeComponentIdeal, SquarefreeMonomialIdeal> =
        q.elements().iter().map(|p| (p.clone(), gin_prime(p))).collect();
    let gin_poset = QPoset::with_containment(g.n(), q.elements().to_vec(), |a, b| ideals[a].contains(&ideals[b]));
    let poset_matches =
        gin_poset.covers() == profile.poset().covers() && gin_poset.elements() == profile.poset().elements();
    let gin_profile = CohomologyProfile::from_poset(gin_poset, profile.field())?;
    let multiplicities_match = gin_profile.entries() == profile.entries();

    let mut audit = gin_profile.audit();
    let mut block_mismatches = Vec::new();
    for (i, p) in gin_profile.poset().elements().iter().enumerate() {
        let complex = gin_prime_complex(p);
        let oracle = HochsterOracle::new(&complex, profile.field());
        audit.merge(oracle.audit());
        let d = p.krull_dim();
        let expected = p
            .cliques()
            .iter()
            .map(|c| factor_series(c.len()).expect("cliques are nonempty"))
            .fold(RationalSeries::one(), |acc, f| &acc * &f)
            .expand(truncation);
        let ok = complex.krull_dim() == d
            && oracle.degrees().into_iter().collect::<Vec<_>>() == vec![d]
            && oracle.total_degree_dims(d, truncation) == expected;
        if !ok {
            block_mismatches.push(i);
        }
    }
    Ok(Main2Report {
        entries: gin_profile.entries().to_vec(),
        poset_matches,
        multiplicities_match,
        block_mismatches,
        audit,
    })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum VerificationStatus {
    Pass,
    Fail,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Mismatch {
    pub r: usize,
    pub degree: Vec<i64>,
    pub decomposition: u128,
    pub oracle: u128,
}

/// `{graph, field, truncation, checked_degrees, status, first_mismatch?}`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct VerificationReport {
    pub graph: String,
    pub field: FieldSpec,
    pub truncation: usize,
    pub checked_degrees: u64,
    pub status: VerificationStatus,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub first_mismatch: Option<Mismatch>,
}

impl VerificationReport {
    pub fn passed(&self) -> bool {
        self.status == VerificationStatus::Pass
    }
}

/// Checks `dim H^r(A/J_G)_a` from the decomposition against the Hochster
/// oracle on `gin(J_G)` for every `0 ≤ r ≤ 2n` and every `a ∈ ℤⁿ` with
/// `−truncation ≤ a_i ≤ 0`.
pub fn compare(g: &Graph, field: FieldSpec, truncation: usize) -> Result<VerificationReport, EngineError> {
    let profile = crate::engine::multiplicities(g, field)?;
    let gin = gin_ideal(g)?;
    let oracle = HochsterOracle::new(&gin.complex, field);
    Ok(compare_with(g, &profile, &oracle, truncation))
}

/// [`compare`] with the profile and oracle already computed.
///
/// Pairs `(r, a)` where neither side has a term with the support of `a`
/// are zero on both sides and are counted without being enumerated.
pub fn compare_with(
    g: &Graph,
    profile: &CohomologyProfile,
    oracle: &HochsterOracle,
    truncation: usize,
) -> VerificationReport {
    let n = g.n();
    let forms = profile.hilbert_series_zn_form();
    let box_size = (truncation as u64 + 1).saturating_pow(n as u32);
    let checked_degrees = box_size.saturating_mul(2 * n as u64 + 1);
    let mut first_mismatch = None;

    let degrees: BTreeSet<usize> = forms.keys().copied().chain(oracle.degrees()).collect();
    let mut supports: Vec<VertexSet> = VertexSet::full(n).subsets().collect();
    supports.sort_by_key(|s| (s.len(), *s));
    'outer: for r in degrees {
        let form = forms.get(&r);
        let form_supports: HashSet<VertexSet> =
            form.map(|f| f.terms.iter().map(|t| t.support()).collect()).unwrap_or_default();
        for &v in &supports {
            if !form_supports.contains(&v) && !oracle.has_support(r, v.bits()) {
                continue;
            }
            let verts = v.to_vec();
            let mut depth = vec![0u64; n];
            for_each_point(&verts, truncation as u64, &mut depth, &mut |depth| {
                if first_mismatch.is_some() {
                    return;
                }
                let lhs = form.map_or(0, |f| f.coefficient_at_depth(depth));
                let rhs = oracle.coarse_dim(r, depth);
                if lhs != rhs {
                    first_mismatch = Some(Mismatch {
                        r,
                        degree: depth.iter().map(|&k| -(k as i64)).collect(),
                        decomposition: lhs,
                        oracle: rhs,
                    });
                }
            });
            if first_mismatch.is_some() {
                break 'outer;
            }
        }
    }
    VerificationReport {
        graph: g.to_graph6(),
        field: profile.field(),
        truncation,
        checked_degrees,
        status: if first_mismatch.is_none() { VerificationStatus::Pass } else { VerificationStatus::Fail },
        first_mismatch,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::engine::multiplicities;

    fn set(vs: &[usize]) -> VertexSet {
        vs.iter().copied().collect()
    }

    fn prime(n: usize, s: &[usize], cliques: &[&[usize]]) -> PrimeComponentIdeal {
        PrimeComponentIdeal::new(n, set(s), cliques.iter().map(|c| set(c)).collect()).unwrap()
    }

    #[test]
    fn gin_prime_examples() {
        let tri = prime(3, &[], &[&[1, 2, 3]]);
        assert_eq!(gin_prime(&tri).generator_strings(), ["x1x2", "x1x3", "x2x3"]);
        let mono = prime(3, &[1, 3], &[&[2]]);
        assert_eq!(gin_prime(&mono).to_string(), "⟨x1, x3, y1, y3⟩");
        let q1 = prime(8, &[1, 2, 3, 4, 5], &[&[6, 7, 8]]);
        assert_eq!(gin_prime(&q1).to_string(), "⟨x1, x2, x3, x4, x5, y1, y2, y3, y4, y5, x6x7, x6x8, x7x8⟩");
    }

    #[test]
    fn gin_prime_complex_regenerates_generators_and_height() {
        for p in [
            prime(4, &[], &[&[1, 2, 3, 4]]),
            prime(4, &[2], &[&[1], &[3, 4]]),
            prime(4, &[1, 2, 3, 4], &[]),
            prime(5, &[3], &[&[1, 2], &[4, 5]]),
        ] {
            let c = gin_prime_complex(&p);
            assert_eq!(c.minimal_non_faces(), gin_prime(&p));
            assert_eq!(c.krull_dim(), p.krull_dim());
        }
    }

    #[test]
    fn gin_ideal_examples() {
        let k4 = gin_ideal(&Graph::complete(4).unwrap()).unwrap();
        assert_eq!(k4.ideal.generator_strings(), ["x1x2", "x1x3", "x2x3", "x1x4", "x2x4", "x3x4"]);
        let p3 = gin_ideal(&Graph::path(3).unwrap()).unwrap();
        assert_eq!(p3.ideal.generator_strings(), ["x1x2", "x2x3", "x1x3y2"]);
        assert!(gin_ideal(&Graph::empty(3).unwrap()).unwrap().ideal.is_zero());
    }

    /// Brute-force intersection of `⟨x1x2, x1x3, x2x3⟩` and `⟨x2, y2⟩` up to degree 3.
    #[test]
    fn path3_intersection_by_membership() {
        let n = 3;
        let a = SquarefreeMonomialIdeal::new(n, [0b11, 0b101, 0b110]);
        let b = SquarefreeMonomialIdeal::new(n, [x_bit(2), y_bit(n, 2)]);
        let members = (1u64..1 << 6)
            .filter(|m| m.count_ones() <= 3)
            .filter(|&m| a.contains_monomial(Monomial::new(n, m)) && b.contains_monomial(Monomial::new(n, m)));
        let brute = SquarefreeMonomialIdeal::new(n, members);
        assert_eq!(brute, gin_ideal(&Graph::path(3).unwrap()).unwrap().ideal);
    }

    #[test]
    fn path_generators() {
        let r = gin_path_generators(&Graph::path(3).unwrap()).unwrap();
        assert_eq!(r.generators.generator_strings(), ["x1x2", "x2x3", "x1x3y2"]);
        assert!(r.agrees());
        let k4 = gin_path_generators(&Graph::complete(4).unwrap()).unwrap();
        assert!(k4.agrees());
        assert_eq!(k4.generators.generators().len(), 6);
        assert!(gin_path_generators(&Graph::empty(2).unwrap()).unwrap().generators.is_zero());
    }

    #[test]
    fn hochster_graded_dim_examples() {
        // ⟨x1y1⟩: two isolated vertices
        let two_points = SrComplex::from_facets(1, [0b01, 0b10]);
        assert_eq!(hochster_graded_dim(&two_points, 1, &[0, 0], FieldSpec::Rational), 1);
        assert_eq!(hochster_graded_dim(&two_points, 1, &[1, 0], FieldSpec::Rational), 0);
        // zero ideal in x1,y1,x2,y2
        let simplex = SrComplex::from_facets(2, [0b1111]);
        assert_eq!(hochster_graded_dim(&simplex, 4, &[-1, -1, -1, -1], FieldSpec::Rational), 1);
        assert_eq!(hochster_graded_dim(&simplex, 3, &[-1, -1, -1, -1], FieldSpec::Rational), 0);
    }

    #[test]
    fn ring_series_of_two_points() {
        // K[x, y]/(xy): HS = (1 + t)/(1 - t) = 2/(1 - t) - 1, in u: -(1 + u)/(1 - u)
        let c = SrComplex::from_facets(1, [0b01, 0b10]);
        assert_eq!(c.hilbert_series(), RationalSeries::new([-1, -1], 1));
    }

    #[test]
    fn compare_small_graphs() {
        for g in [
            Graph::complete(3).unwrap(),
            Graph::path(4).unwrap(),
            Graph::complete_bipartite(2, 2).unwrap(),
            Graph::empty(2).unwrap(),
            Graph::from_edges(4, [(1, 2), (2, 3), (3, 1), (3, 4)]).unwrap(),
        ] {
            let report = compare(&g, FieldSpec::Rational, 5).unwrap();
            assert!(report.passed(), "{g:?}: {:?}", report.first_mismatch);
        }
    }

    #[test]
    fn compare_detects_a_wrong_profile() {
        // compare the oracle of P_3 against the profile of K_3: must fail
        let k3 = Graph::complete(3).unwrap();
        let p3 = Graph::path(3).unwrap();
        let profile = multiplicities(&k3, FieldSpec::Rational).unwrap();
        let oracle = HochsterOracle::new(&gin_ideal(&p3).unwrap().complex, FieldSpec::Rational);
        let report = compare_with(&k3, &profile, &oracle, 4);
        assert_eq!(report.status, VerificationStatus::Fail);
        assert!(report.first_mismatch.is_some());
    }

    #[test]
    fn serre_identity_and_regularity_on_k35() {
        let g = Graph::complete_bipartite(5, 3).unwrap();
        let profile = multiplicities(&g, FieldSpec::Rational).unwrap();
        let gin = gin_ideal(&g).unwrap();
        let oracle = HochsterOracle::new(&gin.complex, FieldSpec::Rational);
        assert_eq!(&profile.euler_series(), oracle.ring_hilbert_series());
        assert_eq!(oracle.regularity(), Some(profile.regularity().series_based));
        assert_eq!(oracle.degrees().into_iter().collect::<Vec<_>>(), vec![5, 6, 7, 9, 10]);
        for (r, s) in profile.hilbert_series_z() {
            assert_eq!(oracle.total_degree_dims(r, 10), s.expand(10), "r={r}");
        }
    }

    #[test]
    fn main2_on_k35() {
        let g = Graph::complete_bipartite(5, 3).unwrap();
        let profile = multiplicities(&g, FieldSpec::Rational).unwrap();
        let report = main2_decomposition(&g, &profile, 8).unwrap();
        assert!(report.agrees(), "{report:?}");
        assert_eq!(report.entries, profile.entries());
    }

    #[test]
    fn verification_json_shape() {
        let report = compare(&Graph::complete(3).unwrap(), FieldSpec::Rational, 3).unwrap();
        let json = serde_json::to_value(&report).unwrap();
        assert_eq!(json["status"], "pass");
        assert_eq!(json["field"], "Q");
        assert_eq!(json["truncation"], 3);
        assert!(json.get("first_mismatch").is_none());
        assert_eq!(serde_json::from_value::<VerificationReport>(json).unwrap(), report);
    }
}
