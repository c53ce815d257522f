//! The `analyze` report: schema, assembly, consistency check, table rendering.

use std::collections::BTreeSet;
use std::fmt::Write as _;

use binedge_core::engine::FieldDisagreement;
use binedge_core::homology::HomologyAudit;
use binedge_core::{
    compare, field_disagreements, minimal_primes, multiplicities, FieldSpec, Graph, MultiTerm, PosetJson,
    PrimeComponentIdeal, RationalSeries, RegularityReport, VerificationReport,
};
use serde::{Deserialize, Serialize};

use crate::error::CliError;

/// Largest number of degrees a `--zn` table may enumerate per `r`.
pub const MAX_ZN_TABLE: u64 = 250_000;

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct GraphEcho {
    pub n: usize,
    pub edges: Vec<[usize; 2]>,
    pub graph6: String,
}

impl GraphEcho {
    pub fn of(g: &Graph) -> Self {
        GraphEcho { n: g.n(), edges: g.edges().into_iter().map(|(u, v)| [u, v]).collect(), graph6: g.to_graph6() }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct MultiplicityRow {
    pub r: usize,
    pub q: usize,
    pub multiplicity: usize,
    pub d_q: usize,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SeriesRow {
    pub r: usize,
    pub series: RationalSeries,
    pub display: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ZnCoefficient {
    pub degree: Vec<i64>,
    pub dim: u64,
}

/// `H^r` in the `ℤⁿ` grading: the closed form, and its table when small enough.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ZnRow {
    pub r: usize,
    pub terms: Vec<MultiTerm>,
    pub truncation: usize,
    pub coefficients: Option<Vec<ZnCoefficient>>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct AnalysisReport {
    pub graph: GraphEcho,
    pub field: FieldSpec,
    pub minimal_primes: Vec<PrimeComponentIdeal>,
    pub poset: PosetJson,
    pub multiplicities: Vec<MultiplicityRow>,
    pub depth: usize,
    pub dim: usize,
    pub cm: bool,
    pub buchsbaum: bool,
    pub regularity: RegularityReport,
    pub hilbert_z: Vec<SeriesRow>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub hilbert_zn: Option<Vec<ZnRow>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub verification: Option<VerificationReport>,
    pub field_disagreements: Vec<FieldDisagreement>,
    pub homology_audit: HomologyAudit,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AnalyzeOptions {
    pub field: FieldSpec,
    pub truncation: usize,
    pub zn: bool,
    pub verify: bool,
}

impl Default for AnalyzeOptions {
    fn default() -> Self {
        AnalyzeOptions { field: FieldSpec::Rational, truncation: 12, zn: false, verify: false }
    }
}

fn zn_table_size(term_supports: &BTreeSet<usize>, truncation: usize) -> u64 {
    term_supports.iter().map(|&k| (truncation as u64).saturating_pow(k as u32)).fold(0u64, u64::saturating_add)
}

pub fn cmd_analyze(g: &Graph, opts: &AnalyzeOptions) -> Result<AnalysisReport, CliError> {
    let profile = multiplicities(g, opts.field)?;
    let poset = profile.poset();
    let rows = profile
        .entries()
        .iter()
        .map(|e| MultiplicityRow { r: e.r, q: e.q, multiplicity: e.multiplicity, d_q: poset.element(e.q).krull_dim() })
        .collect();
    let hilbert_z = profile
        .hilbert_series_z()
        .into_iter()
        .map(|(r, series)| SeriesRow { r, display: series.to_string(), series })
        .collect();
    let hilbert_zn = opts.zn.then(|| {
        profile
            .hilbert_series_zn_form()
            .into_iter()
            .map(|(r, form)| {
                let sizes: BTreeSet<usize> = form.terms.iter().map(|t| t.support().len()).collect();
                let coefficients = (zn_table_size(&sizes, opts.truncation) <= MAX_ZN_TABLE).then(|| {
                    form.expand(opts.truncation)
                        .coeffs
                        .into_iter()
                        .map(|(degree, dim)| ZnCoefficient {
                            degree,
                            dim: u64::try_from(dim).expect("coefficient fits in u64"),
                        })
                        .collect()
                });
                ZnRow { r, terms: form.terms, truncation: opts.truncation, coefficients }
            })
            .collect()
    });
    let verification = if opts.verify { Some(compare(g, opts.field, opts.truncation)?) } else { None };
    let other_fields: Vec<FieldSpec> = [FieldSpec::Rational, FieldSpec::Prime(2), FieldSpec::Prime(3)]
        .into_iter()
        .filter(|&f| f != opts.field)
        .collect();
    let report = AnalysisReport {
        graph: GraphEcho::of(g),
        field: opts.field,
        minimal_primes: minimal_primes(g)?,
        poset: poset.to_json(),
        multiplicities: rows,
        depth: profile.depth(),
        dim: profile.dim(),
        cm: profile.is_cohen_macaulay(),
        buchsbaum: profile.is_buchsbaum(),
        regularity: profile.regularity(),
        hilbert_z,
        hilbert_zn,
        verification,
        field_disagreements: field_disagreements(&profile, &other_fields),
        homology_audit: profile.audit(),
    };
    report.check_consistency().map_err(CliError::Inconsistent)?;
    Ok(report)
}

impl AnalysisReport {
    /// Cross-checks the derived fields against each other.
    pub fn check_consistency(&self) -> Result<(), String> {
        if self.cm != (self.depth == self.dim) {
            return Err(format!("cm = {} but depth {} and dim {}", self.cm, self.depth, self.dim));
        }
        if self.cm && !self.buchsbaum {
            return Err("Cohen-Macaulay but not Buchsbaum".into());
        }
        if self.depth > self.dim {
            return Err("depth exceeds dimension".into());
        }
        for row in &self.multiplicities {
            let node = self.poset.nodes.get(row.q).ok_or("multiplicity for a missing poset element")?;
            if node.dim != row.d_q || row.r < row.d_q {
                return Err(format!("row r={} q={} disagrees with the poset", row.r, row.q));
            }
        }
        let rs: BTreeSet<usize> = self.multiplicities.iter().map(|m| m.r).collect();
        let series_rs: BTreeSet<usize> = self.hilbert_z.iter().map(|s| s.r).collect();
        if rs != series_rs {
            return Err("Hilbert series degrees differ from the multiplicity table".into());
        }
        if rs.first() != Some(&self.depth) || rs.last() != Some(&self.dim) {
            return Err("depth or dimension differs from the multiplicity table".into());
        }
        let top = self.minimal_primes.iter().map(PrimeComponentIdeal::krull_dim).max();
        if top != Some(self.dim) {
            return Err("dimension differs from the minimal primes".into());
        }
        let reg = &self.regularity;
        let agree = reg.series_based == reg.corrected_closed_form && reg.series_based == reg.uncorrected_closed_form;
        if agree != reg.agree {
            return Err("regularity agreement flag is wrong".into());
        }
        if self.homology_audit.euler_mismatches > 0 {
            return Err("Euler characteristic mismatch".into());
        }
        Ok(())
    }

    pub fn render_table(&self) -> String {
        let mut out = String::new();
        let g = &self.graph;
        let _ = writeln!(out, "graph      n={} edges={} graph6={}", g.n, g.edges.len(), g.graph6);
        let _ = writeln!(out, "field      {}", self.field);
        let _ = writeln!(out, "minimal primes ({})", self.minimal_primes.len());
        for p in &self.minimal_primes {
            let _ = writeln!(out, "  {}  dim {}", p.generator_string(), p.krull_dim());
        }
        let _ = writeln!(out, "poset Q    {} elements, {} covers", self.poset.nodes.len(), self.poset.covers.len());
        for node in &self.poset.nodes {
            let p = PrimeComponentIdeal::new(g.n, node.s, node.cliques.clone()).expect("poset nodes are primes");
            let _ = writeln!(out, "  q{:<3} dim {:<3} {}", node.id, node.dim, p.generator_string());
        }
        let _ = writeln!(out, "local cohomology");
        let _ = writeln!(out, "  {:>3}  {:>5}  {:>3}  {:>4}", "r", "q", "M", "d_q");
        for row in &self.multiplicities {
            let _ =
                writeln!(out, "  {:>3}  {:>5}  {:>3}  {:>4}", row.r, format!("q{}", row.q), row.multiplicity, row.d_q);
        }
        for s in &self.hilbert_z {
            let _ = writeln!(out, "  HS(H^{}) = {}", s.r, s.display);
        }
        let yes = |b: bool| if b { "yes" } else { "no" };
        let _ = writeln!(out, "depth      {}", self.depth);
        let _ = writeln!(out, "dim        {}", self.dim);
        let _ = writeln!(out, "CM         {}", yes(self.cm));
        let _ = writeln!(out, "Buchsbaum  {}", yes(self.buchsbaum));
        let r = &self.regularity;
        let _ = writeln!(
            out,
            "regularity series {}, corrected closed form {}, uncorrected closed form {}{}",
            r.series_based,
            r.corrected_closed_form,
            r.uncorrected_closed_form,
            if r.agree { "" } else { "  [DISAGREE]" }
        );
        if let Some(rows) = &self.hilbert_zn {
            for row in rows {
                match &row.coefficients {
                    Some(cs) => {
                        let _ = writeln!(
                            out,
                            "  Z^n table H^{} (N={}): {} nonzero degrees",
                            row.r,
                            row.truncation,
                            cs.len()
                        );
                        for c in cs {
                            let _ = writeln!(out, "    {:?} {}", c.degree, c.dim);
                        }
                    }
                    None => {
                        let _ = writeln!(
                            out,
                            "  Z^n table H^{} (N={}): too large, closed form only",
                            row.r, row.truncation
                        );
                    }
                }
            }
        }
        if let Some(v) = &self.verification {
            let _ =
                writeln!(out, "verification {:?} over {} degrees (N={})", v.status, v.checked_degrees, v.truncation);
        }
        for d in &self.field_disagreements {
            let _ = writeln!(out, "field check q{} over {}: {:?} vs {:?}", d.q, d.field, d.reference, d.other);
        }
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn k35() -> AnalysisReport {
        cmd_analyze(&Graph::complete_bipartite(5, 3).unwrap(), &AnalyzeOptions::default()).unwrap()
    }

    #[test]
    fn consistency_check_catches_tampering() {
        let good = k35();
        good.check_consistency().unwrap();

        let mut r = good.clone();
        r.cm = true;
        assert!(r.check_consistency().is_err());
        let mut r = good.clone();
        r.dim = 9;
        assert!(r.check_consistency().is_err());
        let mut r = good.clone();
        r.regularity.agree = !r.regularity.agree;
        assert!(r.check_consistency().is_err());
        let mut r = good.clone();
        r.multiplicities[0].d_q += 1;
        assert!(r.check_consistency().is_err());
        let mut r = good;
        r.hilbert_z.pop();
        assert!(r.check_consistency().is_err());
    }

    #[test]
    fn zn_table_is_capped() {
        let g = Graph::complete_bipartite(5, 3).unwrap();
        let opts = AnalyzeOptions { zn: true, truncation: 12, ..AnalyzeOptions::default() };
        let rows = cmd_analyze(&g, &opts).unwrap().hilbert_zn.unwrap();
        assert_eq!(rows.len(), 5);
        let capped: Vec<usize> = rows.iter().filter(|r| r.coefficients.is_none()).map(|r| r.r).collect();
        assert_eq!(capped, [9]);
        assert!(rows.iter().all(|r| !r.terms.is_empty()));

        let opts = AnalyzeOptions { zn: true, truncation: 3, ..AnalyzeOptions::default() };
        let rows = cmd_analyze(&Graph::path(3).unwrap(), &opts).unwrap().hilbert_zn.unwrap();
        let table = rows[0].coefficients.as_ref().unwrap();
        assert!(table.iter().all(|c| c.dim > 0 && c.degree.iter().all(|&a| (-3..=0).contains(&a))));
    }

    #[test]
    fn table_mentions_every_section() {
        let text = k35().render_table();
        for needle in
            ["minimal primes (3)", "poset Q    6 elements", "HS(H^5) = (2t^-3 + t^-4)/(1-t^-1)^4", "Buchsbaum  no"]
        {
            assert!(text.contains(needle), "{needle}\n{text}");
        }
    }
}
