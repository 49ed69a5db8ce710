//! Whole-graph embeddings: feature layout, per-graph assembly and
//! dataset-level parallel driver.

use std::fmt;
use std::sync::Arc;
use std::time::{Duration, Instant};

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::dos::{
    cldos_from_ldos, estimate_dos_hist, estimate_ldos_hist, EstimatorConfig, HistogramKind, SpectralHistogram,
};
use crate::error::{Error, Result};
use crate::filterbank::{aggregate, chebyshev_frf_table, power_frf_table, FrfTable, DEFAULT_POWER_GUARD};
use crate::graph::{attribute_vectors, normalize_adjacency, AttributeOptions, AttributeSchema, Graph};
use crate::ingest::GraphDataset;
use crate::scalar::Scalar;

/// Whether the standardized degree sequence is appended as a graph signal.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum DegreeAttribute {
    /// Only for schemas without attribute columns.
    #[default]
    Auto,
    Always,
    Never,
}

impl DegreeAttribute {
    pub fn resolve(self, schema: &AttributeSchema) -> bool {
        match self {
            DegreeAttribute::Auto => schema.is_empty(),
            DegreeAttribute::Always => true,
            DegreeAttribute::Never => false,
        }
    }
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum PairSelection {
    #[default]
    AllPairs,
    /// Signal index pairs, in the order their blocks should appear.
    Explicit(Vec<(usize, usize)>),
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct EmbeddingConfig {
    pub estimator: EstimatorConfig,
    /// Number of Chebyshev functions, and of signed powers.
    pub frf: usize,
    pub include_dos: bool,
    pub include_ldos: bool,
    pub include_cldos: bool,
    pub include_hist: bool,
    pub include_cheb: bool,
    pub include_pow: bool,
    pub pair_selection: PairSelection,
    pub eps_guard: f64,
    pub degree: DegreeAttribute,
    /// Histogram count per graph above which a warning is emitted.
    pub histogram_budget: usize,
}

impl Default for EmbeddingConfig {
    fn default() -> Self {
        EmbeddingConfig {
            estimator: EstimatorConfig::default(),
            frf: 100,
            include_dos: true,
            include_ldos: true,
            include_cldos: true,
            include_hist: true,
            include_cheb: true,
            include_pow: true,
            pair_selection: PairSelection::AllPairs,
            eps_guard: DEFAULT_POWER_GUARD,
            degree: DegreeAttribute::Auto,
            histogram_budget: 1024,
        }
    }
}

impl EmbeddingConfig {
    pub fn validate(&self) -> Result<()> {
        self.estimator.validate()?;
        if self.frf < 2 || !self.frf.is_multiple_of(2) {
            return Err(Error::InvalidConfig(format!(
                "K must be even and >= 2, got {}",
                self.frf
            )));
        }
        if !(self.eps_guard > 0.0) {
            return Err(Error::InvalidConfig("power guard must be positive".into()));
        }
        Ok(())
    }

    /// Signal index pairs coupled by cLDOS blocks for `d` signals.
    pub fn pairs(&self, d: usize) -> Result<Vec<(usize, usize)>> {
        match &self.pair_selection {
            PairSelection::AllPairs => Ok((0..d).flat_map(|i| (i + 1..d).map(move |j| (i, j))).collect()),
            PairSelection::Explicit(list) => {
                let mut seen = std::collections::HashSet::new();
                for &(i, j) in list {
                    if i == j || i >= d || j >= d || !seen.insert((i.min(j), i.max(j))) {
                        return Err(Error::InvalidPair(i, j));
                    }
                }
                Ok(list.clone())
            }
        }
    }

    fn feature_kinds(&self) -> usize {
        let b = if self.include_hist { self.estimator.bins } else { 0 };
        let c = if self.include_cheb { self.frf } else { 0 };
        let p = if self.include_pow { self.frf } else { 0 };
        b + c + p
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(tag = "kind", content = "index", rename_all = "lowercase")]
pub enum FeatureKind {
    /// Histogram bin, 0-based.
    Hist(usize),
    /// Chebyshev aggregate, 1-based (`phi_1 = 1`).
    Cheb(usize),
    /// Power aggregate with signed exponent.
    Pow(i32),
}

#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct ColumnDescriptor {
    pub source: HistogramKind,
    /// Signal labels: none for DOS, one for LDOS, two for cLDOS.
    pub attributes: Vec<String>,
    pub feature: FeatureKind,
}

impl fmt::Display for ColumnDescriptor {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.source {
            HistogramKind::Dos => write!(f, "dos")?,
            HistogramKind::Ldos => write!(f, "ldos[{}]", self.attributes.join("|"))?,
            HistogramKind::Cldos => write!(f, "cldos[{}]", self.attributes.join("|"))?,
        }
        match self.feature {
            FeatureKind::Hist(b) => write!(f, ".hist.{b}"),
            FeatureKind::Cheb(k) => write!(f, ".cheb.{k}"),
            FeatureKind::Pow(p) => write!(f, ".pow.{p}"),
        }
    }
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct ColumnManifest {
    pub columns: Vec<ColumnDescriptor>,
}

impl ColumnManifest {
    pub fn len(&self) -> usize {
        self.columns.len()
    }

    pub fn is_empty(&self) -> bool {
        self.columns.is_empty()
    }

    pub fn labels(&self) -> Vec<String> {
        self.columns.iter().map(ToString::to_string).collect()
    }
}

/// Histogram sources in embedding order.
fn sources(cfg: &EmbeddingConfig, labels: &[String], pairs: &[(usize, usize)]) -> Vec<(HistogramKind, Vec<String>)> {
    let mut out = Vec::new();
    if cfg.include_dos {
        out.push((HistogramKind::Dos, Vec::new()));
    }
    if cfg.include_ldos {
        out.extend(labels.iter().map(|l| (HistogramKind::Ldos, vec![l.clone()])));
    }
    if cfg.include_cldos {
        out.extend(
            pairs
                .iter()
                .map(|&(i, j)| (HistogramKind::Cldos, vec![labels[i].clone(), labels[j].clone()])),
        );
    }
    out
}

/// Column manifest for `cfg` on graphs with the given schema.
///
/// Blocks follow DOS, then one LDOS block per signal, then one cLDOS block
/// per pair. Each block is `B` bins, `K` Chebyshev and `K` power aggregates,
/// minus whatever the flags switch off.
pub fn feature_layout(cfg: &EmbeddingConfig, schema: &AttributeSchema) -> Result<ColumnManifest> {
    cfg.validate()?;
    let labels = schema.signal_labels(cfg.degree.resolve(schema));
    let pairs = cfg.pairs(labels.len())?;
    let half = (cfg.frf / 2) as i32;
    let mut columns = Vec::new();
    for (source, attributes) in sources(cfg, &labels, &pairs) {
        let mut push = |feature| {
            columns.push(ColumnDescriptor {
                source,
                attributes: attributes.clone(),
                feature,
            })
        };
        if cfg.include_hist {
            (0..cfg.estimator.bins).for_each(|b| push(FeatureKind::Hist(b)));
        }
        if cfg.include_cheb {
            (1..=cfg.frf).for_each(|k| push(FeatureKind::Cheb(k)));
        }
        if cfg.include_pow {
            (1..=half)
                .chain((1..=half).map(|p| -p))
                .for_each(|p| push(FeatureKind::Pow(p)));
        }
    }
    if columns.is_empty() {
        return Err(Error::EmptyFeatureSet);
    }
    Ok(ColumnManifest { columns })
}

/// Expected embedding length without building the manifest.
pub fn feature_count(cfg: &EmbeddingConfig, d: usize, pairs: usize) -> usize {
    let blocks =
        usize::from(cfg.include_dos) + if cfg.include_ldos { d } else { 0 } + if cfg.include_cldos { pairs } else { 0 };
    blocks * cfg.feature_kinds()
}

/// Frequency response tables shared by every graph of a run.
#[derive(Clone, Debug)]
pub struct FilterBank<T = f64> {
    pub chebyshev: Option<FrfTable<T>>,
    pub power: Option<FrfTable<T>>,
}

impl<T: Scalar> FilterBank<T> {
    pub fn new(cfg: &EmbeddingConfig) -> Result<Self> {
        cfg.validate()?;
        let bins = cfg.estimator.bins;
        Ok(FilterBank {
            chebyshev: cfg.include_cheb.then(|| chebyshev_frf_table(cfg.frf, bins)),
            power: if cfg.include_pow {
                Some(power_frf_table(cfg.frf, bins, T::of(cfg.eps_guard))?)
            } else {
                None
            },
        })
    }
}

#[derive(Clone, Debug, Default, PartialEq, Serialize, Deserialize)]
pub struct EmbedDiagnostics {
    pub clamped_ritz: usize,
    /// Histograms carrying mass in bins where negative powers are muted.
    pub guarded_hits: usize,
    /// Labels of graph signals that were identically zero on this graph.
    pub zero_signals: Vec<String>,
}

#[derive(Clone, Debug)]
pub struct Embedding<T = f64> {
    pub graph_id: usize,
    pub values: Vec<T>,
    pub manifest: Arc<ColumnManifest>,
    pub diagnostics: EmbedDiagnostics,
}

fn append_features<T: Scalar>(
    out: &mut Vec<T>,
    h: &SpectralHistogram<T>,
    cfg: &EmbeddingConfig,
    bank: &FilterBank<T>,
    diag: &mut EmbedDiagnostics,
) -> Result<()> {
    if cfg.include_hist {
        out.extend_from_slice(&h.bins);
    }
    if let Some(t) = &bank.chebyshev {
        out.extend(aggregate(h, t)?);
    }
    if let Some(t) = &bank.power {
        out.extend(aggregate(h, t)?);
        if t.guarded_bins().iter().any(|&b| !h.bins[b].is_zero()) {
            diag.guarded_hits += 1;
        }
    }
    diag.clamped_ritz += h.clamped_ritz;
    Ok(())
}

/// Embeds one graph.
///
/// `graph_index` keys the DOS probe stream, so the same graph at the same
/// index always yields the same vector.
pub fn embed_graph<T: Scalar>(
    g: &Graph<T>,
    cfg: &EmbeddingConfig,
    bank: &FilterBank<T>,
    manifest: &Arc<ColumnManifest>,
    graph_index: usize,
) -> Result<Embedding<T>> {
    let schema = g.schema();
    let include_degree = cfg.degree.resolve(schema);
    let op = normalize_adjacency(g);
    let est = &cfg.estimator;
    let mut diag = EmbedDiagnostics::default();
    let mut values = Vec::with_capacity(manifest.len());

    if cfg.include_dos {
        let h = estimate_dos_hist(&op, est, graph_index as u64)?;
        append_features(&mut values, &h, cfg, bank, &mut diag)?;
    }

    if cfg.include_ldos || cfg.include_cldos {
        let signals = attribute_vectors(g, AttributeOptions { include_degree })?;
        diag.zero_signals = signals
            .iter()
            .filter(|s| s.is_zero())
            .map(|s| s.label.clone())
            .collect();
        let pairs = if cfg.include_cldos {
            cfg.pairs(signals.len())?
        } else {
            Vec::new()
        };

        let ldos = signals
            .iter()
            .map(|s| estimate_ldos_hist(&op, s, est))
            .collect::<Result<Vec<_>>>()?;
        if cfg.include_ldos {
            for h in &ldos {
                append_features(&mut values, h, cfg, bank, &mut diag)?;
            }
        }
        for &(i, j) in &pairs {
            let hs = estimate_ldos_hist(&op, &signals[i].sum(&signals[j]), est)?;
            let h = cldos_from_ldos(&hs, &ldos[i], &ldos[j])?;
            append_features(&mut values, &h, cfg, bank, &mut diag)?;
        }
    }

    if values.len() != manifest.len() {
        return Err(Error::DimensionMismatch {
            expected: manifest.len(),
            got: values.len(),
        });
    }
    if let Some(column) = values.iter().position(|x| !x.is_finite()) {
        return Err(Error::NonFiniteFeature {
            column,
            label: manifest.columns[column].to_string(),
        });
    }
    Ok(Embedding {
        graph_id: graph_index,
        values,
        manifest: manifest.clone(),
        diagnostics: diag,
    })
}

#[derive(Debug)]
pub struct GraphFailure {
    pub graph_index: usize,
    pub error: Error,
}

#[derive(Debug)]
pub struct DatasetEmbedding<T = f64> {
    /// Successful embeddings in dataset order.
    pub embeddings: Vec<Embedding<T>>,
    /// Wall time of each successful embedding, parallel to `embeddings`.
    pub timings: Vec<Duration>,
    pub failures: Vec<GraphFailure>,
    pub manifest: Arc<ColumnManifest>,
    pub warnings: Vec<String>,
}

/// Embeds every graph of `ds` on `workers` threads.
///
/// Configuration errors abort the whole call; errors of individual graphs are
/// collected in [`DatasetEmbedding::failures`] with their indices.
pub fn embed_dataset<T: Scalar>(
    ds: &GraphDataset<T>,
    cfg: &EmbeddingConfig,
    workers: usize,
) -> Result<DatasetEmbedding<T>> {
    if workers == 0 {
        return Err(Error::InvalidConfig("need at least one worker".into()));
    }
    let manifest = Arc::new(feature_layout(cfg, &ds.schema)?);
    let bank = FilterBank::new(cfg)?;

    let mut warnings = Vec::new();
    let d = ds.schema.signal_count(cfg.degree.resolve(&ds.schema));
    let pairs = if cfg.include_cldos { cfg.pairs(d)?.len() } else { 0 };
    let histograms = usize::from(cfg.include_dos) + d + pairs;
    if histograms > cfg.histogram_budget {
        let msg = format!(
            "{histograms} histograms per graph exceed the budget of {}; consider an explicit pair list",
            cfg.histogram_budget
        );
        log::warn!("{msg}");
        warnings.push(msg);
    }

    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(workers)
        .build()
        .map_err(|e| Error::InvalidConfig(format!("thread pool: {e}")))?;
    let results: Vec<(Result<Embedding<T>>, Duration)> = pool.install(|| {
        ds.graphs
            .par_iter()
            .enumerate()
            .map(|(idx, g)| {
                let t0 = Instant::now();
                let r = if **g.schema() != *ds.schema {
                    Err(Error::SchemaMismatch(format!(
                        "graph {idx} does not use the dataset schema"
                    )))
                } else {
                    embed_graph(g, cfg, &bank, &manifest, idx)
                };
                (r, t0.elapsed())
            })
            .collect()
    });

    let mut out = DatasetEmbedding {
        embeddings: Vec::with_capacity(results.len()),
        timings: Vec::with_capacity(results.len()),
        failures: Vec::new(),
        manifest,
        warnings,
    };
    for (idx, (r, dt)) in results.into_iter().enumerate() {
        match r {
            Ok(e) => {
                out.embeddings.push(e);
                out.timings.push(dt);
            }
            Err(error) => out.failures.push(GraphFailure {
                graph_index: idx,
                error,
            }),
        }
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::{build_graph, AttributeColumn, ColumnValues};

    fn k2() -> Graph<f64> {
        build_graph(2, &[(0, 1, 1.0)], vec![], Arc::new(AttributeSchema::empty())).unwrap()
    }

    fn two_continuous() -> AttributeSchema {
        AttributeSchema::new(vec![AttributeColumn::continuous("a"), AttributeColumn::continuous("b")]).unwrap()
    }

    #[test]
    fn table_ii_lengths() {
        let cfg = EmbeddingConfig::default();
        assert_eq!(feature_layout(&cfg, &two_continuous()).unwrap().len(), 1600);
        assert_eq!(feature_layout(&cfg, &AttributeSchema::empty()).unwrap().len(), 800);
        let hist_only = EmbeddingConfig {
            include_ldos: false,
            include_cldos: false,
            include_cheb: false,
            include_pow: false,
            ..EmbeddingConfig::default()
        };
        assert_eq!(feature_layout(&hist_only, &two_continuous()).unwrap().len(), 200);
    }

    #[test]
    fn empty_feature_set() {
        let cfg = EmbeddingConfig {
            include_dos: false,
            include_cldos: false,
            degree: DegreeAttribute::Never,
            ..EmbeddingConfig::default()
        };
        assert!(matches!(
            feature_layout(&cfg, &AttributeSchema::empty()),
            Err(Error::EmptyFeatureSet)
        ));
    }

    #[test]
    fn manifest_order_and_labels() {
        let cfg = EmbeddingConfig {
            estimator: EstimatorConfig {
                bins: 2,
                ..EstimatorConfig::default()
            },
            frf: 2,
            ..EmbeddingConfig::default()
        };
        let m = feature_layout(&cfg, &two_continuous()).unwrap();
        let labels = m.labels();
        assert_eq!(labels.len(), 6 * 4);
        assert_eq!(labels[0], "dos.hist.0");
        assert_eq!(labels[2], "dos.cheb.1");
        assert_eq!(labels[5], "dos.pow.-1");
        assert_eq!(labels[6], "ldos[attr:a].hist.0");
        assert_eq!(labels[18], "cldos[attr:a|attr:b].hist.0");
        let unique: std::collections::HashSet<_> = labels.iter().collect();
        assert_eq!(unique.len(), labels.len());
    }

    #[test]
    fn explicit_pairs_validated() {
        let mut cfg = EmbeddingConfig {
            pair_selection: PairSelection::Explicit(vec![(1, 0)]),
            ..EmbeddingConfig::default()
        };
        let m = feature_layout(&cfg, &two_continuous()).unwrap();
        assert_eq!(m.len(), 1600);
        assert_eq!(m.columns.last().unwrap().attributes, vec!["attr:b", "attr:a"]);
        cfg.pair_selection = PairSelection::Explicit(vec![(0, 2)]);
        assert!(matches!(
            feature_layout(&cfg, &two_continuous()),
            Err(Error::InvalidPair(0, 2))
        ));
        cfg.pair_selection = PairSelection::Explicit(vec![(0, 1), (1, 0)]);
        assert!(feature_layout(&cfg, &two_continuous()).is_err());
    }

    #[test]
    fn k2_dos_hist_and_cheb() {
        let cfg = EmbeddingConfig {
            estimator: EstimatorConfig {
                bins: 4,
                ..EstimatorConfig::default()
            },
            frf: 2,
            include_ldos: false,
            include_cldos: false,
            include_pow: false,
            ..EmbeddingConfig::default()
        };
        let g = k2();
        let manifest = Arc::new(feature_layout(&cfg, g.schema()).unwrap());
        let bank = FilterBank::new(&cfg).unwrap();
        let e = embed_graph(&g, &cfg, &bank, &manifest, 0).unwrap();
        let expect = [1.0, 0.0, 0.0, 1.0, 2.0, 0.0];
        assert_eq!(e.values.len(), 6);
        for (a, b) in e.values.iter().zip(expect) {
            assert!((a - b).abs() < 1e-12, "{:?}", e.values);
        }
    }

    #[test]
    fn absent_label_gives_zero_block() {
        let schema = Arc::new(
            AttributeSchema::new(vec![AttributeColumn::categorical("c", vec!["x".into(), "y".into()])]).unwrap(),
        );
        let g = build_graph(
            3,
            &[(0, 1, 1.0), (1, 2, 1.0)],
            vec![ColumnValues::Categorical(vec!["x".into(); 3])],
            schema.clone(),
        )
        .unwrap();
        let cfg = EmbeddingConfig {
            estimator: EstimatorConfig {
                bins: 4,
                ..EstimatorConfig::default()
            },
            frf: 2,
            include_dos: false,
            include_cldos: false,
            ..EmbeddingConfig::default()
        };
        let manifest = Arc::new(feature_layout(&cfg, &schema).unwrap());
        let e = embed_graph(&g, &cfg, &FilterBank::new(&cfg).unwrap(), &manifest, 0).unwrap();
        let block = 4 + 2 + 2;
        assert!(e.values[..block].iter().any(|&x| x != 0.0));
        assert!(e.values[block..].iter().all(|&x| x == 0.0));
        assert_eq!(e.diagnostics.zero_signals, vec!["attr:c=y"]);
    }

    #[test]
    fn feature_count_matches_layout() {
        let cfg = EmbeddingConfig::default();
        assert_eq!(feature_count(&cfg, 2, 1), 1600);
    }
}
