//! Hochster-type decomposition of the local cohomology of `A/J_G` for a binomial
//! edge ideal `J_G`, over the poset of prime sums, cross-checked against the classical
//! Hochster formula for its generic initial ideal.

pub mod engine;
pub mod error;
pub mod gin;
pub mod graph;
pub mod homology;
pub mod ideal;
pub mod poset;
pub mod series;

pub use engine::{
    field_disagreements, multiplicities, CohomologyProfile, FieldDisagreement, Multiplicity, RegularityReport,
};
pub use error::{EngineError, GraphError, HomologyError, IdealError, PosetError, SeriesError};
pub use gin::{
    compare, gin_ideal, gin_path_generators, gin_prime, hochster_graded_dim, main2_decomposition, GinIdeal,
    HochsterOracle, Monomial, SquarefreeMonomialIdeal, SrComplex, VerificationReport, VerificationStatus,
};
pub use graph::{parse_graph, Graph, VertexSet};
pub use homology::{FieldSpec, ReducedCohomology, SimplicialComplex};
pub use ideal::{minimal_primes, PrimeComponentIdeal, SumIdeal};
pub use poset::{build_p, build_q, PosetJson, PosetNode, QPoset};
pub use series::{factor_series, CliqueFactor, MultiSeries, MultiTerm, MultigradedSeries, RationalSeries};
