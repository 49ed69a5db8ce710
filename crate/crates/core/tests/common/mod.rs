#![allow(dead_code)]

use std::collections::HashMap;
use std::sync::Arc;

use adoge::graph::{build_graph, AttributeColumn, AttributeSchema, ColumnValues, Graph, ShiftOperator};
use adoge::AttributeVector;
use rand::Rng;
use rand_distr::{Distribution, StandardNormal};

/// Erdos-Renyi edge list with weights uniform in (0, 2].
pub fn er_edges(rng: &mut impl Rng, n: usize, p: f64) -> Vec<(usize, usize, f64)> {
    let mut edges = Vec::new();
    for i in 0..n {
        for j in i + 1..n {
            if rng.random::<f64>() < p {
                edges.push((i, j, 2.0 * (1.0 - rng.random::<f64>())));
            }
        }
    }
    edges
}

pub fn er_graph(rng: &mut impl Rng, n: usize, p: f64) -> Graph<f64> {
    build_graph(n, &er_edges(rng, n, p), vec![], Arc::new(AttributeSchema::empty())).unwrap()
}

/// One categorical column `c` over {a, b, c} and one continuous column `x`.
pub fn mixed_schema() -> Arc<AttributeSchema> {
    Arc::new(
        AttributeSchema::new(vec![
            AttributeColumn::categorical("c", vec!["a".into(), "b".into(), "c".into()]),
            AttributeColumn::continuous("x"),
        ])
        .unwrap(),
    )
}

pub fn attributed_er_graph(rng: &mut impl Rng, n: usize, p: f64, schema: &Arc<AttributeSchema>) -> Graph<f64> {
    let cats = ["a", "b", "c"];
    let c = (0..n).map(|_| cats[rng.random_range(0..3)].to_string()).collect();
    let x = (0..n).map(|_| StandardNormal.sample(rng)).collect();
    build_graph(
        n,
        &er_edges(rng, n, p),
        vec![ColumnValues::Categorical(c), ColumnValues::Continuous(x)],
        schema.clone(),
    )
    .unwrap()
}

/// `d` continuous columns `x0..`.
pub fn continuous_schema(d: usize) -> Arc<AttributeSchema> {
    Arc::new(AttributeSchema::new((0..d).map(|i| AttributeColumn::continuous(format!("x{i}"))).collect()).unwrap())
}

pub fn continuous_er_graph(rng: &mut impl Rng, n: usize, p: f64, schema: &Arc<AttributeSchema>) -> Graph<f64> {
    let cols = (0..schema.columns().len())
        .map(|_| ColumnValues::Continuous((0..n).map(|_| StandardNormal.sample(rng)).collect()))
        .collect();
    build_graph(n, &er_edges(rng, n, p), cols, schema.clone()).unwrap()
}

pub fn gaussian_vector(rng: &mut impl Rng, n: usize, label: &str) -> AttributeVector {
    AttributeVector::new(label, (0..n).map(|_| StandardNormal.sample(rng)).collect())
}

pub fn random_permutation(rng: &mut impl Rng, n: usize) -> Vec<usize> {
    let mut p: Vec<usize> = (0..n).collect();
    for i in (1..n).rev() {
        p.swap(i, rng.random_range(0..=i));
    }
    p
}

type SparseRows = Vec<HashMap<usize, f64>>;

fn sparse_rows(op: &ShiftOperator<f64>) -> SparseRows {
    (0..op.dim()).map(|i| op.row(i).collect()).collect()
}

fn sparse_mul(a: &SparseRows, b: &SparseRows) -> SparseRows {
    a.iter()
        .map(|row| {
            let mut out = HashMap::new();
            for (&k, &x) in row {
                for (&j, &y) in &b[k] {
                    *out.entry(j).or_insert(0.0) += x * y;
                }
            }
            out
        })
        .collect()
}

/// `trace(S^k)` from explicit sparse matrix powers.
pub fn sparse_power_trace(op: &ShiftOperator<f64>, k: usize) -> f64 {
    assert!(k >= 1);
    let s = sparse_rows(op);
    let mut p = s.clone();
    for _ in 1..k {
        p = sparse_mul(&p, &s);
    }
    p.iter()
        .enumerate()
        .map(|(i, row)| row.get(&i).copied().unwrap_or(0.0))
        .sum()
}

pub fn max_abs_diff(a: &[f64], b: &[f64]) -> f64 {
    assert_eq!(a.len(), b.len());
    a.iter().zip(b).map(|(x, y)| (x - y).abs()).fold(0.0, f64::max)
}
