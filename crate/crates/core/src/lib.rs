//! Permutation- and size-invariant embeddings of node-attributed graphs built
//! from spectral densities of the normalized adjacency.
//!
//! The pipeline per graph:
//!
//! 1. normalize the adjacency into a shift operator with spectrum in `[-1, 1]`
//!    ([`graph`]);
//! 2. estimate the density of states and the local densities of every
//!    attribute signal (and of pairs of signals) as histograms, using Gauss
//!    quadrature rules obtained from Lanczos ([`lanczos`], [`dos`]);
//! 3. reduce each histogram against Chebyshev and signed-power filter banks
//!    ([`filterbank`]) and concatenate everything ([`embed`]).
//!
//! [`oracle`] holds dense reference implementations for small graphs.
//!
//! All numeric code is generic over [`Scalar`] (`f32`, `f64`); the aliases
//! below fix the precision for the common case.

#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod dos;
pub mod embed;
pub mod error;
pub mod filterbank;
pub mod graph;
pub mod ingest;
pub mod lanczos;
pub mod oracle;
pub mod scalar;
mod tridiag;

pub use dos::{
    bin_centers, bin_index, bin_quadrature, cldos_from_ldos, estimate_cldos_hist, estimate_dos_hist,
    estimate_dos_hist_exhaustive, estimate_dos_hist_with_probes, estimate_ldos_hist, probe_vector, DosMode,
    EstimatorConfig, HistogramKind,
};
pub use embed::{
    embed_dataset, embed_graph, feature_count, feature_layout, ColumnDescriptor, ColumnManifest, DegreeAttribute,
    EmbedDiagnostics, EmbeddingConfig, FeatureKind, GraphFailure, PairSelection,
};
pub use error::{Error, Result};
pub use filterbank::{aggregate, chebyshev_frf_table, power_frf_table, FrfFamily};
pub use graph::{
    attribute_vectors, build_graph, normalize_adjacency, AttributeColumn, AttributeKind, AttributeOptions,
    AttributeSchema, ColumnValues,
};
pub use ingest::{load_edgelist, load_edgelist_dir, load_tudataset, write_tudataset};
pub use lanczos::{gauss_quadrature, lanczos_tridiagonalize, tridiagonal_quadrature};
pub use oracle::{exact_cldos_hist, exact_dos_hist, exact_ldos_hist, exact_spectrum, exact_trace_phi};
pub use scalar::Scalar;

pub type Graph = graph::Graph<f64>;
pub type ShiftOperator = graph::ShiftOperator<f64>;
pub type AttributeVector = graph::AttributeVector<f64>;
pub type SpectralHistogram = dos::SpectralHistogram<f64>;
pub type QuadratureRule = lanczos::QuadratureRule<f64>;
pub type LanczosFactorization = lanczos::LanczosFactorization<f64>;
pub type FrfTable = filterbank::FrfTable<f64>;
pub type FilterBank = embed::FilterBank<f64>;
pub type Embedding = embed::Embedding<f64>;
pub type DatasetEmbedding = embed::DatasetEmbedding<f64>;
pub type GraphDataset = ingest::GraphDataset<f64>;
pub type ExactSpectrum = oracle::ExactSpectrum<f64>;

pub type Graph32 = graph::Graph<f32>;
pub type ShiftOperator32 = graph::ShiftOperator<f32>;
pub type AttributeVector32 = graph::AttributeVector<f32>;
pub type SpectralHistogram32 = dos::SpectralHistogram<f32>;
pub type FrfTable32 = filterbank::FrfTable<f32>;
pub type Embedding32 = embed::Embedding<f32>;
pub type GraphDataset32 = ingest::GraphDataset<f32>;
