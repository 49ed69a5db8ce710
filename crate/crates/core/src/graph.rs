//! Attributed graphs, the normalized shift operator and graph signals.

use std::collections::HashSet;
use std::sync::Arc;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::scalar::Scalar;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum AttributeKind {
    Categorical,
    Binary,
    Continuous,
}

/// One attribute column shared by every graph of a dataset.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct AttributeColumn {
    pub name: String,
    pub kind: AttributeKind,
    /// Value set for categorical and binary columns, empty for continuous ones.
    /// The order here fixes the order of the indicator vectors.
    pub domain: Vec<String>,
}

impl AttributeColumn {
    pub fn categorical(name: impl Into<String>, domain: Vec<String>) -> Self {
        AttributeColumn {
            name: name.into(),
            kind: AttributeKind::Categorical,
            domain,
        }
    }

    pub fn binary(name: impl Into<String>, domain: [String; 2]) -> Self {
        AttributeColumn {
            name: name.into(),
            kind: AttributeKind::Binary,
            domain: domain.to_vec(),
        }
    }

    pub fn continuous(name: impl Into<String>) -> Self {
        AttributeColumn {
            name: name.into(),
            kind: AttributeKind::Continuous,
            domain: Vec::new(),
        }
    }

    fn is_indicator(&self) -> bool {
        self.kind != AttributeKind::Continuous
    }
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct AttributeSchema {
    columns: Vec<AttributeColumn>,
}

impl AttributeSchema {
    pub fn new(columns: Vec<AttributeColumn>) -> Result<Self> {
        let mut names = HashSet::new();
        for c in &columns {
            if !names.insert(c.name.as_str()) {
                return Err(Error::InvalidSchema(format!("duplicate column name {:?}", c.name)));
            }
            match c.kind {
                AttributeKind::Categorical if c.domain.is_empty() => {
                    return Err(Error::InvalidSchema(format!("column {:?} has an empty domain", c.name)));
                }
                AttributeKind::Binary if c.domain.len() != 2 => {
                    return Err(Error::InvalidSchema(format!(
                        "binary column {:?} needs exactly two values",
                        c.name
                    )));
                }
                AttributeKind::Continuous if !c.domain.is_empty() => {
                    return Err(Error::InvalidSchema(format!(
                        "continuous column {:?} cannot carry a domain",
                        c.name
                    )));
                }
                _ => {}
            }
            let distinct: HashSet<_> = c.domain.iter().collect();
            if distinct.len() != c.domain.len() {
                return Err(Error::InvalidSchema(format!(
                    "column {:?} repeats a domain value",
                    c.name
                )));
            }
        }
        Ok(AttributeSchema { columns })
    }

    pub fn empty() -> Self {
        AttributeSchema::default()
    }

    pub fn columns(&self) -> &[AttributeColumn] {
        &self.columns
    }

    pub fn is_empty(&self) -> bool {
        self.columns.is_empty()
    }

    /// Labels of the graph signals produced by [`attribute_vectors`], in output order.
    pub fn signal_labels(&self, include_degree: bool) -> Vec<String> {
        let mut labels = Vec::new();
        for c in &self.columns {
            if c.is_indicator() {
                labels.extend(c.domain.iter().map(|v| format!("attr:{}={}", c.name, v)));
            } else {
                labels.push(format!("attr:{}", c.name));
            }
        }
        if include_degree {
            labels.push("degree".to_string());
        }
        labels
    }

    /// Number of graph signals after one-hot expansion (`D`).
    pub fn signal_count(&self, include_degree: bool) -> usize {
        let attrs: usize = self
            .columns
            .iter()
            .map(|c| if c.is_indicator() { c.domain.len() } else { 1 })
            .sum();
        attrs + usize::from(include_degree)
    }
}

/// Raw per-node values of one attribute column.
#[derive(Clone, Debug, PartialEq)]
pub enum ColumnValues<T> {
    Categorical(Vec<String>),
    Continuous(Vec<T>),
}

impl<T> ColumnValues<T> {
    pub fn len(&self) -> usize {
        match self {
            ColumnValues::Categorical(v) => v.len(),
            ColumnValues::Continuous(v) => v.len(),
        }
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }
}

/// Undirected weighted graph with per-node attributes.
///
/// The adjacency is held in compressed rows with both orientations of every
/// edge stored, so row `i` lists every neighbour of `i` in ascending order.
#[derive(Clone, Debug)]
pub struct Graph<T = f64> {
    n: usize,
    row_ptr: Vec<usize>,
    col_idx: Vec<usize>,
    weights: Vec<T>,
    attributes: Vec<ColumnValues<T>>,
    schema: Arc<AttributeSchema>,
}

/// Validates and assembles a [`Graph`].
///
/// `edges` lists every undirected edge once in either orientation. Self-loops
/// are allowed and land on the diagonal.
pub fn build_graph<T: Scalar>(
    n: usize,
    edges: &[(usize, usize, T)],
    attributes: Vec<ColumnValues<T>>,
    schema: Arc<AttributeSchema>,
) -> Result<Graph<T>> {
    if n == 0 {
        return Err(Error::EmptyGraph);
    }
    let mut seen = HashSet::with_capacity(edges.len());
    let mut degree = vec![0usize; n];
    for &(i, j, w) in edges {
        for idx in [i, j] {
            if idx >= n {
                return Err(Error::IndexOutOfRange { index: idx, n });
            }
        }
        if !(w > T::zero()) || !w.is_finite() {
            return Err(Error::NonPositiveWeight {
                i,
                j,
                weight: w.to_f64_lossy(),
            });
        }
        let key = (i.min(j), i.max(j));
        if !seen.insert(key) {
            return Err(Error::DuplicateEdge { i: key.0, j: key.1 });
        }
        degree[i] += 1;
        if i != j {
            degree[j] += 1;
        }
    }

    if attributes.len() != schema.columns().len() {
        return Err(Error::SchemaMismatch(format!(
            "{} attribute columns for a schema of {}",
            attributes.len(),
            schema.columns().len()
        )));
    }
    for (values, col) in attributes.iter().zip(schema.columns()) {
        if values.len() != n {
            return Err(Error::SchemaMismatch(format!(
                "column {:?} has {} values for {} nodes",
                col.name,
                values.len(),
                n
            )));
        }
        let kind_ok = matches!(
            (values, col.kind),
            (ColumnValues::Continuous(_), AttributeKind::Continuous)
                | (
                    ColumnValues::Categorical(_),
                    AttributeKind::Categorical | AttributeKind::Binary
                )
        );
        if !kind_ok {
            return Err(Error::SchemaMismatch(format!(
                "column {:?} has the wrong value kind",
                col.name
            )));
        }
    }

    let mut row_ptr = vec![0usize; n + 1];
    for i in 0..n {
        row_ptr[i + 1] = row_ptr[i] + degree[i];
    }
    let mut fill = row_ptr.clone();
    let nnz = row_ptr[n];
    let mut col_idx = vec![0usize; nnz];
    let mut weights = vec![T::zero(); nnz];
    for &(i, j, w) in edges {
        col_idx[fill[i]] = j;
        weights[fill[i]] = w;
        fill[i] += 1;
        if i != j {
            col_idx[fill[j]] = i;
            weights[fill[j]] = w;
            fill[j] += 1;
        }
    }
    for i in 0..n {
        let (lo, hi) = (row_ptr[i], row_ptr[i + 1]);
        let mut row: Vec<(usize, T)> = col_idx[lo..hi]
            .iter()
            .copied()
            .zip(weights[lo..hi].iter().copied())
            .collect();
        row.sort_unstable_by_key(|&(c, _)| c);
        for (k, (c, w)) in row.into_iter().enumerate() {
            col_idx[lo + k] = c;
            weights[lo + k] = w;
        }
    }

    Ok(Graph {
        n,
        row_ptr,
        col_idx,
        weights,
        attributes,
        schema,
    })
}

impl<T: Scalar> Graph<T> {
    pub fn node_count(&self) -> usize {
        self.n
    }

    /// Number of undirected edges, self-loops included.
    pub fn edge_count(&self) -> usize {
        self.edges().count()
    }

    /// Undirected edges as `(i, j, w)` with `i <= j`, in row order.
    pub fn edges(&self) -> impl Iterator<Item = (usize, usize, T)> + '_ {
        (0..self.n).flat_map(move |i| {
            self.neighbors(i)
                .filter(move |&(j, _)| j >= i)
                .map(move |(j, w)| (i, j, w))
        })
    }

    pub fn neighbors(&self, i: usize) -> impl Iterator<Item = (usize, T)> + '_ {
        let range = self.row_ptr[i]..self.row_ptr[i + 1];
        self.col_idx[range.clone()]
            .iter()
            .copied()
            .zip(self.weights[range].iter().copied())
    }

    /// Weighted degrees `d_i = sum_j w_ij`.
    pub fn degrees(&self) -> Vec<T> {
        (0..self.n).map(|i| self.neighbors(i).map(|(_, w)| w).sum()).collect()
    }

    pub fn attributes(&self) -> &[ColumnValues<T>] {
        &self.attributes
    }

    pub fn schema(&self) -> &Arc<AttributeSchema> {
        &self.schema
    }

    /// Relabels nodes so that node `i` becomes node `perm[i]`.
    pub fn permuted(&self, perm: &[usize]) -> Result<Graph<T>> {
        if perm.len() != self.n {
            return Err(Error::DimensionMismatch {
                expected: self.n,
                got: perm.len(),
            });
        }
        let mut hit = vec![false; self.n];
        for &p in perm {
            if p >= self.n || std::mem::replace(&mut hit[p], true) {
                return Err(Error::InvalidConfig("not a permutation".into()));
            }
        }
        let edges: Vec<_> = self.edges().map(|(i, j, w)| (perm[i], perm[j], w)).collect();
        let attributes = self
            .attributes
            .iter()
            .map(|col| match col {
                ColumnValues::Categorical(v) => ColumnValues::Categorical(permute_vec(v, perm)),
                ColumnValues::Continuous(v) => ColumnValues::Continuous(permute_vec(v, perm)),
            })
            .collect();
        build_graph(self.n, &edges, attributes, self.schema.clone())
    }

    /// Same topology and attributes under a different (compatible) schema.
    pub fn with_schema(&self, schema: Arc<AttributeSchema>) -> Result<Graph<T>> {
        let edges: Vec<_> = self.edges().collect();
        build_graph(self.n, &edges, self.attributes.clone(), schema)
    }
}

/// Moves entry `i` to position `perm[i]`.
pub fn permute_vec<V: Clone>(values: &[V], perm: &[usize]) -> Vec<V> {
    let mut out = values.to_vec();
    for (i, v) in values.iter().enumerate() {
        out[perm[i]] = v.clone();
    }
    out
}

/// The symmetrically normalized adjacency `D^{-1/2} W D^{-1/2}` in CSR form.
#[derive(Clone, Debug)]
pub struct ShiftOperator<T = f64> {
    n: usize,
    row_ptr: Vec<usize>,
    col_idx: Vec<usize>,
    values: Vec<T>,
}

/// Entry `(i, j)` becomes `w_ij / sqrt(d_i d_j)`; isolated nodes give zero rows.
pub fn normalize_adjacency<T: Scalar>(g: &Graph<T>) -> ShiftOperator<T> {
    let degrees = g.degrees();
    let values = (0..g.n)
        .flat_map(|i| {
            let di = degrees[i];
            g.neighbors(i).map(move |(j, w)| (di, j, w))
        })
        .map(|(di, j, w)| {
            let dd = di * degrees[j];
            if dd > T::zero() {
                w / dd.sqrt()
            } else {
                T::zero()
            }
        })
        .collect();
    ShiftOperator {
        n: g.n,
        row_ptr: g.row_ptr.clone(),
        col_idx: g.col_idx.clone(),
        values,
    }
}

impl<T: Scalar> ShiftOperator<T> {
    pub fn dim(&self) -> usize {
        self.n
    }

    pub fn nnz(&self) -> usize {
        self.values.len()
    }

    /// `y = S x`.
    pub fn apply(&self, x: &[T], y: &mut [T]) {
        assert_eq!(x.len(), self.n);
        assert_eq!(y.len(), self.n);
        for (i, yi) in y.iter_mut().enumerate() {
            let range = self.row_ptr[i]..self.row_ptr[i + 1];
            let mut acc = T::zero();
            for (&c, &v) in self.col_idx[range.clone()].iter().zip(&self.values[range]) {
                acc = acc + v * x[c];
            }
            *yi = acc;
        }
    }

    pub fn get(&self, i: usize, j: usize) -> T {
        let range = self.row_ptr[i]..self.row_ptr[i + 1];
        match self.col_idx[range.clone()].binary_search(&j) {
            Ok(k) => self.values[range.start + k],
            Err(_) => T::zero(),
        }
    }

    pub fn row(&self, i: usize) -> impl Iterator<Item = (usize, T)> + '_ {
        let range = self.row_ptr[i]..self.row_ptr[i + 1];
        self.col_idx[range.clone()]
            .iter()
            .copied()
            .zip(self.values[range].iter().copied())
    }

    /// Row-major dense copy. Only meant for small operators.
    pub fn to_dense(&self) -> Vec<T> {
        let mut out = vec![T::zero(); self.n * self.n];
        for i in 0..self.n {
            for (j, v) in self.row(i) {
                out[i * self.n + j] = v;
            }
        }
        out
    }
}

/// A graph signal derived from an attribute column (or the degree sequence).
#[derive(Clone, Debug, PartialEq)]
pub struct AttributeVector<T = f64> {
    pub label: String,
    values: Vec<T>,
    norm_sq: T,
}

impl<T: Scalar> AttributeVector<T> {
    pub fn new(label: impl Into<String>, values: Vec<T>) -> Self {
        let norm_sq = values.iter().map(|&x| x * x).sum();
        AttributeVector {
            label: label.into(),
            values,
            norm_sq,
        }
    }

    pub fn values(&self) -> &[T] {
        &self.values
    }

    pub fn norm_sq(&self) -> T {
        self.norm_sq
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }

    pub fn is_zero(&self) -> bool {
        self.values.iter().all(|x| x.is_zero())
    }

    /// Entry-wise sum, labelled `a+b`.
    pub fn sum(&self, other: &AttributeVector<T>) -> AttributeVector<T> {
        let values = self.values.iter().zip(&other.values).map(|(&a, &b)| a + b).collect();
        AttributeVector::new(format!("{}+{}", self.label, other.label), values)
    }

    pub fn scaled(&self, c: T) -> AttributeVector<T> {
        AttributeVector::new(self.label.clone(), self.values.iter().map(|&x| c * x).collect())
    }
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct AttributeOptions {
    pub include_degree: bool,
}

/// Per-graph mean 0 / population std 1 rescaling; constant columns map to zero.
pub fn standardize<T: Scalar>(values: &[T]) -> Vec<T> {
    let n = values.len();
    if n == 0 {
        return Vec::new();
    }
    let first = values[0];
    if values.iter().all(|&x| x == first) {
        return vec![T::zero(); n];
    }
    let nf = T::from_usize(n).unwrap();
    let mean = values.iter().copied().sum::<T>() / nf;
    let var = values.iter().map(|&x| (x - mean) * (x - mean)).sum::<T>() / nf;
    let std = var.sqrt();
    if !(std > T::zero()) {
        return vec![T::zero(); n];
    }
    values.iter().map(|&x| (x - mean) / std).collect()
}

/// Expands a graph's attribute table into graph signals.
///
/// Categorical and binary columns give one 0/1 indicator per domain value,
/// continuous columns their standardized values, and the standardized degree
/// vector comes last when requested.
pub fn attribute_vectors<T: Scalar>(g: &Graph<T>, opts: AttributeOptions) -> Result<Vec<AttributeVector<T>>> {
    let mut out = Vec::with_capacity(g.schema.signal_count(opts.include_degree));
    for (col, values) in g.schema.columns().iter().zip(&g.attributes) {
        match values {
            ColumnValues::Categorical(vals) => {
                let mut indicators = vec![vec![T::zero(); g.n]; col.domain.len()];
                for (node, v) in vals.iter().enumerate() {
                    let slot =
                        col.domain
                            .iter()
                            .position(|d| d == v)
                            .ok_or_else(|| Error::UnknownCategoricalValue {
                                column: col.name.clone(),
                                value: v.clone(),
                            })?;
                    indicators[slot][node] = T::one();
                }
                for (val, ind) in col.domain.iter().zip(indicators) {
                    out.push(AttributeVector::new(format!("attr:{}={}", col.name, val), ind));
                }
            }
            ColumnValues::Continuous(vals) => {
                out.push(AttributeVector::new(format!("attr:{}", col.name), standardize(vals)));
            }
        }
    }
    if opts.include_degree {
        out.push(AttributeVector::new("degree", standardize(&g.degrees())));
    }
    Ok(out)
}
