//! Local cohomology of `A/J_G` from the poset `Q`:
//! `H^r ≅ ⊕_q H^{d_q}(A/I_q)^{M_{r,q}}` with
//! `M_{r,q} = dim H̃^{r − d_q − 1}((q, 1))`.

use std::collections::BTreeMap;

use num_bigint::BigInt;
use serde::{Deserialize, Serialize};

use crate::error::EngineError;
use crate::graph::Graph;
use crate::homology::{FieldSpec, HomologyAudit, ReducedCohomology};
use crate::poset::{build_q, QPoset};
use crate::series::{factor_series, MultiSeries, MultiTerm, MultigradedSeries, RationalSeries};

/// One nonzero `M_{r,q}`; `q` indexes the poset.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct Multiplicity {
    pub r: usize,
    pub q: usize,
    pub multiplicity: usize,
}

/// Three readings of the Castelnuovo–Mumford regularity.
///
/// `series_based` is `max_r (r + end(H^r))` from the exact series;
/// `corrected_closed_form` is `max (r − d_q + #{cliques of q of size ≥ 2})`;
/// `uncorrected_closed_form` is `max (r − d_q)`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct RegularityReport {
    pub series_based: i64,
    pub corrected_closed_form: i64,
    pub uncorrected_closed_form: i64,
    pub agree: bool,
}

#[derive(Clone, Debug)]
pub struct CohomologyProfile {
    field: FieldSpec,
    poset: QPoset,
    interval_cohomology: Vec<ReducedCohomology>,
    entries: Vec<Multiplicity>,
    depth: usize,
    dim: usize,
    audit: HomologyAudit,
}

/// Computes every `M_{r,q}` over `field`.
pub fn multiplicities(g: &Graph, field: FieldSpec) -> Result<CohomologyProfile, EngineError> {
    let poset = build_q(g)?;
    CohomologyProfile::from_poset(poset, field)
}

impl CohomologyProfile {
    /// Assembles the decomposition over an already built poset.
    pub fn from_poset(poset: QPoset, field: FieldSpec) -> Result<Self, EngineError> {
        let mut audit = HomologyAudit::default();
        let mut interval_cohomology = Vec::with_capacity(poset.len());
        let mut entries = Vec::new();
        for i in 0..poset.len() {
            let complex = poset.interval_complex(i);
            let h = complex.reduced_cohomology(field);
            audit.record(&h);
            let d_q = poset.element(i).krull_dim() as i64;
            let top = complex.dim().unwrap_or(-1);
            for (deg, m) in h.nonzero() {
                if deg > top {
                    return Err(EngineError::Inconsistent(format!(
                        "cohomology above the dimension of the interval of element {i}"
                    )));
                }
                entries.push(Multiplicity { r: (deg + d_q + 1) as usize, q: i, multiplicity: m });
            }
            interval_cohomology.push(h);
        }
        entries.sort();
        let (Some(depth), Some(dim)) = (entries.iter().map(|e| e.r).min(), entries.iter().map(|e| e.r).max()) else {
            return Err(EngineError::Inconsistent("all local cohomology vanishes".into()));
        };
        let expected_dim =
            poset.maximal_elements().into_iter().map(|i| poset.element(i).krull_dim()).max().unwrap_or(0);
        if dim != expected_dim {
            return Err(EngineError::Inconsistent(format!(
                "top cohomological degree {dim} differs from the Krull dimension {expected_dim}"
            )));
        }
        if audit.euler_mismatches > 0 {
            return Err(EngineError::Inconsistent("Euler characteristic mismatch".into()));
        }
        Ok(CohomologyProfile { field, poset, interval_cohomology, entries, depth, dim, audit })
    }

    pub fn field(&self) -> FieldSpec {
        self.field
    }

    pub fn poset(&self) -> &QPoset {
        &self.poset
    }

    pub fn entries(&self) -> &[Multiplicity] {
        &self.entries
    }

    pub fn entries_at(&self, r: usize) -> impl Iterator<Item = &Multiplicity> {
        self.entries.iter().filter(move |e| e.r == r)
    }

    pub fn interval_cohomology(&self, q: usize) -> &ReducedCohomology {
        &self.interval_cohomology[q]
    }

    /// Cohomological degrees with `H^r ≠ 0`, ascending.
    pub fn degrees(&self) -> Vec<usize> {
        let mut rs: Vec<usize> = self.entries.iter().map(|e| e.r).collect();
        rs.dedup();
        rs
    }

    pub fn depth(&self) -> usize {
        self.depth
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn depth_and_dim(&self) -> (usize, usize) {
        (self.depth, self.dim)
    }

    pub fn is_cohen_macaulay(&self) -> bool {
        self.entries.iter().all(|e| e.r == self.dim)
    }

    /// Vanishing off the top degree except for blocks of the maximal ideal.
    pub fn is_buchsbaum(&self) -> bool {
        self.entries.iter().all(|e| e.r == self.dim || self.poset.element(e.q).is_maximal())
    }

    pub fn audit(&self) -> HomologyAudit {
        self.audit
    }

    fn block_series(&self, q: usize) -> RationalSeries {
        self.poset
            .element(q)
            .cliques()
            .iter()
            .map(|c| factor_series(c.len()).expect("cliques are nonempty"))
            .fold(RationalSeries::one(), |acc, f| &acc * &f)
    }

    /// `HS(H^r; t)` for every `r` with `H^r ≠ 0`, in `u = t⁻¹`.
    pub fn hilbert_series_z(&self) -> BTreeMap<usize, RationalSeries> {
        let mut out: BTreeMap<usize, RationalSeries> = BTreeMap::new();
        for e in &self.entries {
            let term = self.block_series(e.q).scale(&BigInt::from(e.multiplicity));
            let acc = out.entry(e.r).or_insert_with(RationalSeries::zero);
            *acc = &*acc + &term;
        }
        out
    }

    /// `Σ_r (−1)^r HS(H^r)`, which equals `HS(A/J_G)`.
    pub fn euler_series(&self) -> RationalSeries {
        self.hilbert_series_z().into_iter().map(|(r, s)| if r % 2 == 0 { s } else { -&s }).sum()
    }

    /// Closed-form `ℤⁿ`-graded series for every `r` with `H^r ≠ 0`.
    pub fn hilbert_series_zn_form(&self) -> BTreeMap<usize, MultigradedSeries> {
        let n = self.poset.n();
        let mut out: BTreeMap<usize, MultigradedSeries> = BTreeMap::new();
        for e in &self.entries {
            let q = self.poset.element(e.q);
            out.entry(e.r).or_insert_with(|| MultigradedSeries { n, terms: Vec::new() }).terms.push(MultiTerm {
                multiplicity: e.multiplicity as u64,
                zero_block: q.s(),
                cliques: q.cliques().to_vec(),
            });
        }
        out
    }

    /// `ℤⁿ`-graded series truncated to exponents in `[−truncation, 0]`.
    pub fn hilbert_series_zn(&self, truncation: usize) -> BTreeMap<usize, MultiSeries> {
        self.hilbert_series_zn_form().into_iter().map(|(r, f)| (r, f.expand(truncation))).collect()
    }

    pub fn regularity(&self) -> RegularityReport {
        let series_based = self
            .hilbert_series_z()
            .iter()
            .map(|(&r, s)| r as i64 - s.valuation().expect("nonzero series") as i64)
            .max()
            .expect("some H^r is nonzero");
        let closed = |extra: &dyn Fn(usize) -> i64| {
            self.entries
                .iter()
                .map(|e| e.r as i64 - self.poset.element(e.q).krull_dim() as i64 + extra(e.q))
                .max()
                .expect("some H^r is nonzero")
        };
        let corrected_closed_form = closed(&|q| self.poset.element(q).nontrivial_cliques() as i64);
        let uncorrected_closed_form = closed(&|_| 0);
        RegularityReport {
            series_based,
            corrected_closed_form,
            uncorrected_closed_form,
            agree: series_based == corrected_closed_form && series_based == uncorrected_closed_form,
        }
    }
}

/// An interval whose cohomology over `field` differs from the profile's.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct FieldDisagreement {
    pub q: usize,
    pub field: FieldSpec,
    pub reference: Vec<(i64, usize)>,
    pub other: Vec<(i64, usize)>,
}

/// Recomputes every interval's cohomology over each of `fields` and lists
/// the intervals whose dimensions change.
pub fn field_disagreements(profile: &CohomologyProfile, fields: &[FieldSpec]) -> Vec<FieldDisagreement> {
    let poset = profile.poset();
    let mut out = Vec::new();
    for &field in fields.iter().filter(|&&f| f != profile.field()) {
        for q in 0..poset.len() {
            let reference = profile.interval_cohomology(q);
            let other = poset.interval_complex(q).reduced_cohomology(field);
            if &other != reference {
                out.push(FieldDisagreement { q, field, reference: reference.nonzero(), other: other.nonzero() });
            }
        }
    }
    out
}
