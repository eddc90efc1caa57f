//! Spectral classification of Coxeter graphs.
//!
//! A Coxeter graph is classified spherical, affine, hyperbolic (strongly or
//! weakly) or higher rank from the spectrum of its generalized adjacency
//! matrix `A = 2I - C`. On top of that sit the sign-split decomposition of
//! higher-rank graphs with checkable certificates, the search for separated
//! hyperbolic pairs, and exhaustive corpus verification.

pub mod cli;
pub mod decompose;
pub mod enumerate;
pub mod error;
pub mod graph;
pub mod spectral;

pub use decompose::{
    certify_higher_rank_via_separation, corollary4_hypothesis, decompose_higher_rank, find_disjoint_hyperbolic_pair,
    find_separated_hyperbolic_pair, rayleigh_bound_check, sign_split, DecompositionCertificate, SeparationCertificate,
    SignSplit,
};
pub use enumerate::{
    classical_diagram, cone_vertex_witness, connected_graphs, free_trees, make_subhyperbolic_triple, paper_figure,
    verify_corpus, DiagramFamily, Figure, TripleSpec,
};
pub use error::{Error, Result};
pub use graph::{
    are_disjoint, are_separated, build_graph, canonical_form, connected_components, induced_subgraph, BondLabel,
    CanonicalForm, CoxeterGraph, VertexSet,
};
pub use spectral::{classify, Classification, CoxeterClass, Signature, Tolerance};
