//! Finite abstract simplicial complexes and exact reduced cohomology.

pub mod rank;

use std::collections::{BTreeSet, HashMap};
use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::HomologyError;
pub use rank::SparseMatrix;

/// Coefficient field: `ℚ` or `F_p`.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(try_from = "String", into = "String")]
pub enum FieldSpec {
    #[default]
    Rational,
    Prime(u64),
}

impl FieldSpec {
    pub fn prime(p: u64) -> Result<Self, HomologyError> {
        if is_prime(p) && p < (1 << 62) {
            Ok(FieldSpec::Prime(p))
        } else {
            Err(HomologyError::NotPrime(p))
        }
    }

    pub fn characteristic(self) -> u64 {
        match self {
            FieldSpec::Rational => 0,
            FieldSpec::Prime(p) => p,
        }
    }
}

fn is_prime(p: u64) -> bool {
    p >= 2 && (2..).take_while(|d| d * d <= p).all(|d| !p.is_multiple_of(d))
}

/// Accepts `q`, `Q`, `0`, `fp:<p>`, `F_<p>`.
impl FromStr for FieldSpec {
    type Err = HomologyError;

    fn from_str(s: &str) -> Result<Self, HomologyError> {
        let t = s.trim();
        if matches!(t, "q" | "Q" | "0" | "ℚ") {
            return Ok(FieldSpec::Rational);
        }
        let digits = t
            .strip_prefix("fp:")
            .or_else(|| t.strip_prefix("F_"))
            .ok_or_else(|| HomologyError::BadFieldSpec(s.to_string()))?;
        let p: u64 = digits.parse().map_err(|_| HomologyError::BadFieldSpec(s.to_string()))?;
        FieldSpec::prime(p)
    }
}

impl fmt::Display for FieldSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            FieldSpec::Rational => f.write_str("Q"),
            FieldSpec::Prime(p) => write!(f, "fp:{p}"),
        }
    }
}

impl From<FieldSpec> for String {
    fn from(k: FieldSpec) -> String {
        k.to_string()
    }
}

impl TryFrom<String> for FieldSpec {
    type Error = HomologyError;

    fn try_from(s: String) -> Result<Self, HomologyError> {
        s.parse()
    }
}

/// A face: strictly increasing vertex labels.
pub type Face = Vec<u32>;

/// A finite simplicial complex stored as all of its faces, grouped by size.
///
/// `faces[k]` holds the faces with `k` vertices (dimension `k - 1`) in sorted
/// order. The void complex has no faces at all; the irrelevant complex `{∅}`
/// has only the empty face.
#[derive(Clone, PartialEq, Eq, Default)]
pub struct SimplicialComplex {
    faces: Vec<Vec<Face>>,
}

impl SimplicialComplex {
    pub fn void() -> Self {
        SimplicialComplex { faces: Vec::new() }
    }

    /// `{∅}`.
    pub fn irrelevant() -> Self {
        SimplicialComplex { faces: vec![vec![Vec::new()]] }
    }

    /// The complex generated by `facets` (void if there are none).
    pub fn from_facets<I>(facets: I) -> Self
    where
        I: IntoIterator<Item = Face>,
    {
        let mut by_size: Vec<BTreeSet<Face>> = Vec::new();
        for mut facet in facets {
            facet.sort_unstable();
            facet.dedup();
            assert!(facet.len() < 32, "facet too large to enumerate");
            if by_size.len() <= facet.len() {
                by_size.resize_with(facet.len() + 1, BTreeSet::new);
            }
            for mask in 0u32..(1 << facet.len()) {
                let face: Face =
                    facet.iter().enumerate().filter(|(i, _)| mask & (1 << i) != 0).map(|(_, &v)| v).collect();
                by_size[face.len()].insert(face);
            }
        }
        SimplicialComplex { faces: by_size.into_iter().map(|s| s.into_iter().collect()).collect() }
    }

    /// Builds a complex from a face collection that is already closed under
    /// taking subsets (including the empty face when nonempty).
    pub fn from_closed_faces<I>(faces: I) -> Self
    where
        I: IntoIterator<Item = Face>,
    {
        let mut by_size: Vec<BTreeSet<Face>> = Vec::new();
        for mut f in faces {
            f.sort_unstable();
            if by_size.len() <= f.len() {
                by_size.resize_with(f.len() + 1, BTreeSet::new);
            }
            by_size[f.len()].insert(f);
        }
        let c = SimplicialComplex { faces: by_size.into_iter().map(|s| s.into_iter().collect()).collect() };
        debug_assert!(c.is_closed(), "face collection is not closed under subsets");
        c
    }

    fn is_closed(&self) -> bool {
        self.faces.iter().flatten().all(|f| {
            (0..f.len()).all(|skip| {
                let sub: Face = f.iter().enumerate().filter(|&(i, _)| i != skip).map(|(_, &v)| v).collect();
                self.contains_face(&sub)
            })
        })
    }

    pub fn is_void(&self) -> bool {
        self.faces.is_empty()
    }

    /// Dimension; `-1` for `{∅}` and `None` for the void complex.
    pub fn dim(&self) -> Option<i64> {
        (!self.faces.is_empty()).then(|| self.faces.len() as i64 - 2)
    }

    /// `f_{-1}, f_0, f_1, ...`.
    pub fn f_vector(&self) -> Vec<usize> {
        self.faces.iter().map(Vec::len).collect()
    }

    pub fn faces_of_size(&self, k: usize) -> &[Face] {
        self.faces.get(k).map_or(&[], Vec::as_slice)
    }

    pub fn faces(&self) -> impl Iterator<Item = &Face> {
        self.faces.iter().flatten()
    }

    pub fn vertices(&self) -> Vec<u32> {
        self.faces_of_size(1).iter().map(|f| f[0]).collect()
    }

    pub fn contains_face(&self, face: &[u32]) -> bool {
        self.faces.get(face.len()).is_some_and(|fs| fs.binary_search_by(|f| f.as_slice().cmp(face)).is_ok())
    }

    /// Maximal faces.
    pub fn facets(&self) -> Vec<Face> {
        let mut out = Vec::new();
        for (k, fs) in self.faces.iter().enumerate() {
            let bigger = self.faces.get(k + 1);
            for f in fs {
                let maximal = bigger.is_none_or(|bs| !bs.iter().any(|b| is_subface(f, b)));
                if maximal {
                    out.push(f.clone());
                }
            }
        }
        out
    }

    /// `lk(F) = { G : G ∩ F = ∅, G ∪ F ∈ Δ }`.
    pub fn link(&self, face: &[u32]) -> Result<SimplicialComplex, HomologyError> {
        let mut face = face.to_vec();
        face.sort_unstable();
        face.dedup();
        if !self.contains_face(&face) {
            return Err(HomologyError::NotAFace(format!("{face:?}")));
        }
        let faces = self
            .faces
            .iter()
            .skip(face.len())
            .flatten()
            .filter(|g| is_subface(&face, g))
            .map(|g| g.iter().copied().filter(|v| face.binary_search(v).is_err()).collect::<Face>());
        Ok(SimplicialComplex::from_closed_faces(faces))
    }

    /// Reduced Euler characteristic `Σ_{k≥-1} (-1)^k f_k`.
    pub fn euler_characteristic(&self) -> i64 {
        self.faces
            .iter()
            .enumerate()
            .map(|(size, fs)| if size % 2 == 1 { fs.len() as i64 } else { -(fs.len() as i64) })
            .sum()
    }

    /// Matrix of the boundary map from faces of size `k` to faces of size
    /// `k - 1`, one row per face of size `k` (the transpose of the usual
    /// convention; rank is unaffected).
    pub fn boundary_matrix(&self, k: usize) -> SparseMatrix {
        let lower = self.faces_of_size(k.wrapping_sub(1));
        let index: HashMap<&[u32], usize> = lower.iter().enumerate().map(|(i, f)| (f.as_slice(), i)).collect();
        let mut m = SparseMatrix::new(lower.len());
        if k == 0 {
            return m;
        }
        for f in self.faces_of_size(k) {
            let row = (0..f.len())
                .map(|skip| {
                    let sub: Face = f.iter().enumerate().filter(|&(i, _)| i != skip).map(|(_, &v)| v).collect();
                    let sign = if skip % 2 == 0 { 1 } else { -1 };
                    (index[sub.as_slice()], sign)
                })
                .collect();
            m.push_row(row);
        }
        m
    }

    /// Reduced cohomology dimensions in degrees `-1..=dim`, computed from
    /// exact boundary ranks: `dim H̃^k = f_k − rank ∂_{k+1} − rank ∂_k`.
    pub fn reduced_cohomology(&self, field: FieldSpec) -> ReducedCohomology {
        let sizes = self.faces.len();
        let ranks: Vec<usize> =
            (0..=sizes).map(|k| if k == 0 || k >= sizes { 0 } else { self.boundary_matrix(k).rank(field) }).collect();
        let dims = (0..sizes).map(|k| self.faces[k].len() - ranks[k] - ranks[k + 1]).collect();
        ReducedCohomology { dims, euler_characteristic: self.euler_characteristic() }
    }

    /// Relabels every vertex through `map`.
    pub fn relabeled(&self, map: impl Fn(u32) -> u32) -> SimplicialComplex {
        SimplicialComplex::from_closed_faces(self.faces().map(|f| f.iter().map(|&v| map(v)).collect()))
    }
}

impl fmt::Debug for SimplicialComplex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_void() {
            return f.write_str("Complex(void)");
        }
        write!(f, "Complex(facets={:?})", self.facets())
    }
}

fn is_subface(small: &[u32], big: &[u32]) -> bool {
    let mut it = big.iter();
    small.iter().all(|v| it.by_ref().any(|w| w == v))
}

/// Reduced cohomology dimensions of one complex.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ReducedCohomology {
    /// `dims[k + 1] = dim H̃^k`.
    dims: Vec<usize>,
    euler_characteristic: i64,
}

impl ReducedCohomology {
    pub fn get(&self, degree: i64) -> usize {
        usize::try_from(degree + 1).ok().and_then(|i| self.dims.get(i)).copied().unwrap_or(0)
    }

    /// `(degree, dimension)` for every nonzero group.
    pub fn nonzero(&self) -> Vec<(i64, usize)> {
        self.dims.iter().enumerate().filter(|(_, &d)| d > 0).map(|(i, &d)| (i as i64 - 1, d)).collect()
    }

    pub fn is_acyclic(&self) -> bool {
        self.dims.iter().all(|&d| d == 0)
    }

    /// `Σ_k (-1)^k dim H̃^k`.
    pub fn alternating_sum(&self) -> i64 {
        self.nonzero().into_iter().map(|(k, d)| if k.rem_euclid(2) == 0 { d as i64 } else { -(d as i64) }).sum()
    }

    pub fn euler_characteristic(&self) -> i64 {
        self.euler_characteristic
    }

    /// The Euler–Poincaré identity `Σ (-1)^k dim H̃^k = χ̃`.
    pub fn euler_consistent(&self) -> bool {
        self.alternating_sum() == self.euler_characteristic
    }
}

/// Counts of complexes whose cohomology was computed and of Euler–Poincaré failures.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct HomologyAudit {
    pub complexes: usize,
    pub euler_mismatches: usize,
}

impl HomologyAudit {
    pub fn record(&mut self, h: &ReducedCohomology) {
        self.complexes += 1;
        if !h.euler_consistent() {
            self.euler_mismatches += 1;
        }
    }

    pub fn merge(&mut self, other: HomologyAudit) {
        self.complexes += other.complexes;
        self.euler_mismatches += other.euler_mismatches;
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn complex(facets: &[&[u32]]) -> SimplicialComplex {
        SimplicialComplex::from_facets(facets.iter().map(|f| f.to_vec()))
    }

    #[test]
    fn irrelevant_complex() {
        let c = SimplicialComplex::irrelevant();
        let h = c.reduced_cohomology(FieldSpec::Rational);
        assert_eq!(h.nonzero(), vec![(-1, 1)]);
        assert_eq!(c.euler_characteristic(), -1);
        assert_eq!(c.dim(), Some(-1));
    }

    #[test]
    fn void_complex_has_no_cohomology() {
        let c = SimplicialComplex::void();
        assert!(c.reduced_cohomology(FieldSpec::Rational).is_acyclic());
        assert_eq!(c.dim(), None);
        assert_eq!(SimplicialComplex::from_facets(Vec::<Face>::new()), c);
    }

    #[test]
    fn two_points() {
        let c = complex(&[&[1], &[2]]);
        let h = c.reduced_cohomology(FieldSpec::Rational);
        assert_eq!(h.nonzero(), vec![(0, 1)]);
        assert_eq!(c.euler_characteristic(), 1);
        assert_eq!(c.link(&[1]).unwrap(), SimplicialComplex::irrelevant());
    }

    #[test]
    fn five_vertex_path_is_acyclic() {
        let c = complex(&[&[1, 2], &[2, 3], &[3, 4], &[4, 5]]);
        assert!(c.reduced_cohomology(FieldSpec::Rational).is_acyclic());
        assert_eq!(c.euler_characteristic(), 0);
    }

    #[test]
    fn links() {
        let c = complex(&[&[1, 2, 3], &[3, 4]]);
        assert_eq!(c.link(&[]).unwrap(), c);
        assert_eq!(c.link(&[1, 2, 3]).unwrap(), SimplicialComplex::irrelevant());
        assert_eq!(c.link(&[3]).unwrap(), complex(&[&[1, 2], &[4]]));
        assert!(matches!(c.link(&[1, 4]), Err(HomologyError::NotAFace(_))));
    }

    #[test]
    fn spheres_and_projective_plane() {
        // boundary of the 3-simplex: a 2-sphere
        let s2 = complex(&[&[1, 2, 3], &[1, 2, 4], &[1, 3, 4], &[2, 3, 4]]);
        assert_eq!(s2.reduced_cohomology(FieldSpec::Rational).nonzero(), vec![(2, 1)]);
        // 6-vertex RP^2: H̃^1 = H̃^2 = F_2 over F_2, acyclic over Q
        let rp2 = complex(&[
            &[1, 2, 3],
            &[1, 3, 4],
            &[1, 4, 5],
            &[1, 5, 6],
            &[1, 2, 6],
            &[2, 3, 5],
            &[2, 4, 5],
            &[2, 4, 6],
            &[3, 4, 6],
            &[3, 5, 6],
        ]);
        assert!(rp2.reduced_cohomology(FieldSpec::Rational).is_acyclic());
        assert!(rp2.reduced_cohomology(FieldSpec::Prime(3)).is_acyclic());
        assert_eq!(rp2.reduced_cohomology(FieldSpec::Prime(2)).nonzero(), vec![(1, 1), (2, 1)]);
        for field in [FieldSpec::Rational, FieldSpec::Prime(2)] {
            assert!(rp2.reduced_cohomology(field).euler_consistent());
        }
    }

    #[test]
    fn field_spec_parsing() {
        assert_eq!("q".parse::<FieldSpec>().unwrap(), FieldSpec::Rational);
        assert_eq!("fp:7".parse::<FieldSpec>().unwrap(), FieldSpec::Prime(7));
        assert_eq!("F_2".parse::<FieldSpec>().unwrap(), FieldSpec::Prime(2));
        assert_eq!("fp:6".parse::<FieldSpec>(), Err(HomologyError::NotPrime(6)));
        assert!("r".parse::<FieldSpec>().is_err());
        assert_eq!(FieldSpec::Prime(3).to_string(), "fp:3");
    }

    #[test]
    fn facets_round_trip() {
        let c = complex(&[&[1, 2, 3], &[3, 4], &[5]]);
        let facets = c.facets();
        assert_eq!(facets, vec![vec![5], vec![3, 4], vec![1, 2, 3]]);
        assert_eq!(SimplicialComplex::from_facets(facets), c);
        assert_eq!(c.f_vector(), vec![1, 5, 4, 1]);
    }
}
