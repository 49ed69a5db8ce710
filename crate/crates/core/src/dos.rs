//! DOS, LDOS and coupled-LDOS histograms over the frequency interval `[-1, 1]`.
//!
//! Bins are left-closed and right-open except the last one, which also owns
//! `1`. Every histogram stores densities: a DOS histogram integrates to one,
//! an LDOS histogram of `v` integrates to `||v||^2 / n`.

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rand_distr::{Distribution, StandardNormal};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::graph::{AttributeVector, ShiftOperator};
use crate::lanczos::{gauss_quadrature, QuadratureRule};
use crate::scalar::Scalar;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum HistogramKind {
    #[serde(rename = "DOS")]
    Dos,
    #[serde(rename = "LDOS")]
    Ldos,
    #[serde(rename = "cLDOS")]
    Cldos,
}

#[derive(Clone, Debug, PartialEq)]
pub struct SpectralHistogram<T = f64> {
    pub bins: Vec<T>,
    pub kind: HistogramKind,
    /// Labels of the contributing graph signals; empty for DOS.
    pub provenance: Vec<String>,
    /// Node count of the graph the histogram was computed on.
    pub n: usize,
    /// Ritz values clamped into `[-1, 1]` while building it.
    pub clamped_ritz: usize,
}

impl<T: Scalar> SpectralHistogram<T> {
    pub fn zeros(b: usize, kind: HistogramKind, provenance: Vec<String>, n: usize) -> Self {
        SpectralHistogram {
            bins: vec![T::zero(); b],
            kind,
            provenance,
            n,
            clamped_ritz: 0,
        }
    }

    pub fn len(&self) -> usize {
        self.bins.len()
    }

    pub fn is_empty(&self) -> bool {
        self.bins.is_empty()
    }

    pub fn bin_width(&self) -> T {
        bin_width(self.bins.len())
    }

    /// `sum_b h_b * delta`.
    pub fn mass(&self) -> T {
        self.bins.iter().copied().sum::<T>() * self.bin_width()
    }

    /// `sum_b h_b * delta * n`: `||v||^2` for LDOS, `v . v'` for cLDOS.
    pub fn scaled_mass(&self) -> T {
        self.mass() * T::from_usize(self.n).unwrap()
    }

    /// Plain `sum_b |h_b - g_b|`.
    pub fn l1_distance(&self, other: &SpectralHistogram<T>) -> T {
        assert_eq!(self.len(), other.len());
        self.bins.iter().zip(&other.bins).map(|(&a, &b)| (a - b).abs()).sum()
    }

    /// L1 distance of the two piecewise-constant densities, `sum_b |h_b - g_b| * delta`.
    pub fn density_l1_distance(&self, other: &SpectralHistogram<T>) -> T {
        self.l1_distance(other) * self.bin_width()
    }
}

/// How the DOS histogram picks its start vectors.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum DosMode {
    /// Basis vectors when `n <= probes` (no more Lanczos runs than probing),
    /// random probes otherwise.
    #[default]
    Auto,
    Probes,
    Exhaustive,
}

/// Knobs of the Lanczos-based estimators.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct EstimatorConfig {
    pub bins: usize,
    pub eta_l: usize,
    pub probes: usize,
    pub seed: u64,
    pub reorthogonalize: bool,
    pub dos_mode: DosMode,
}

impl Default for EstimatorConfig {
    fn default() -> Self {
        EstimatorConfig {
            bins: 200,
            eta_l: 100,
            probes: 16,
            seed: 0,
            reorthogonalize: true,
            dos_mode: DosMode::Auto,
        }
    }
}

impl EstimatorConfig {
    pub fn validate(&self) -> Result<()> {
        if self.bins < 2 || !self.bins.is_multiple_of(2) {
            return Err(Error::InvalidConfig(format!(
                "bin count must be even and >= 2, got {}",
                self.bins
            )));
        }
        if self.eta_l == 0 {
            return Err(Error::InvalidConfig("eta_L must be >= 1".into()));
        }
        if self.probes == 0 {
            return Err(Error::InvalidConfig("probe count must be >= 1".into()));
        }
        Ok(())
    }
}

pub fn bin_width<T: Scalar>(bins: usize) -> T {
    T::of(2.0) / T::from_usize(bins).unwrap()
}

/// `-1 + (b + 1/2) * delta` for every bin.
pub fn bin_centers<T: Scalar>(bins: usize) -> Vec<T> {
    let width = bin_width::<T>(bins);
    let half = T::of(0.5);
    (0..bins)
        .map(|b| -T::one() + (T::from_usize(b).unwrap() + half) * width)
        .collect()
}

/// Bin owning the point `x`.
///
/// Points within [`Scalar::bin_snap`] of an edge are moved onto it first, so
/// that `-0.5` and `-0.5 - 1e-15` both land right of the edge.
pub fn bin_index<T: Scalar>(x: T, bins: usize) -> usize {
    let scale = T::from_usize(bins).unwrap() / T::of(2.0);
    let mut t = (x + T::one()) * scale;
    let edge = t.round();
    if (t - edge).abs() <= T::bin_snap() * scale {
        t = edge;
    }
    let b = t.floor().to_i64().unwrap_or(0);
    b.clamp(0, bins as i64 - 1) as usize
}

/// Adds every quadrature weight to the bin of its node. No scaling.
pub fn bin_quadrature<T: Scalar>(rule: &QuadratureRule<T>, bins: usize) -> Vec<T> {
    let mut out = vec![T::zero(); bins];
    accumulate(rule, &mut out);
    out
}

fn accumulate<T: Scalar>(rule: &QuadratureRule<T>, out: &mut [T]) {
    let bins = out.len();
    for (&x, &w) in rule.nodes.iter().zip(&rule.weights) {
        let b = bin_index(x, bins);
        out[b] = out[b] + w;
    }
}

fn check_len<T: Scalar>(op: &ShiftOperator<T>, v: &AttributeVector<T>) -> Result<()> {
    if v.len() != op.dim() {
        return Err(Error::DimensionMismatch {
            expected: op.dim(),
            got: v.len(),
        });
    }
    Ok(())
}

/// LDOS histogram `h_b = (1 / (delta n)) sum_{i in bin b} (v . u_i)^2` via Gauss quadrature.
pub fn estimate_ldos_hist<T: Scalar>(
    op: &ShiftOperator<T>,
    v: &AttributeVector<T>,
    cfg: &EstimatorConfig,
) -> Result<SpectralHistogram<T>> {
    cfg.validate()?;
    check_len(op, v)?;
    let n = op.dim();
    let mut hist = SpectralHistogram::zeros(cfg.bins, HistogramKind::Ldos, vec![v.label.clone()], n);
    if v.is_zero() {
        return Ok(hist);
    }
    let rule = gauss_quadrature(op, v.values(), cfg.eta_l, cfg.reorthogonalize)?;
    let scale = v.norm_sq() / (bin_width::<T>(cfg.bins) * T::from_usize(n).unwrap());
    for (h, raw) in hist.bins.iter_mut().zip(bin_quadrature(&rule, cfg.bins)) {
        *h = raw * scale;
    }
    hist.clamped_ritz = rule.clamped;
    Ok(hist)
}

fn splitmix64(mut z: u64) -> u64 {
    z = z.wrapping_add(0x9E37_79B9_7F4A_7C15);
    z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
    z ^ (z >> 31)
}

/// Seed of the probe stream for `(seed, graph_index, probe_index)`.
pub fn probe_seed(seed: u64, graph_index: u64, probe_index: u64) -> u64 {
    splitmix64(splitmix64(splitmix64(seed) ^ graph_index) ^ probe_index)
}

/// Unit-norm Gaussian probe, fully determined by its key.
pub fn probe_vector<T: Scalar>(n: usize, seed: u64, graph_index: u64, probe_index: u64) -> Vec<T> {
    let mut rng = ChaCha8Rng::seed_from_u64(probe_seed(seed, graph_index, probe_index));
    loop {
        let z: Vec<f64> = (0..n).map(|_| StandardNormal.sample(&mut rng)).collect();
        let norm = z.iter().map(|x| x * x).sum::<f64>().sqrt();
        if norm > 0.0 {
            return z.into_iter().map(|x| T::of(x / norm)).collect();
        }
    }
}

/// DOS histogram.
///
/// On the probe path, `cfg.probes` Gaussian probes keyed by
/// `(cfg.seed, graph_index, probe_index)` are averaged; see [`DosMode`] for
/// when the basis vectors are used instead.
pub fn estimate_dos_hist<T: Scalar>(
    op: &ShiftOperator<T>,
    cfg: &EstimatorConfig,
    graph_index: u64,
) -> Result<SpectralHistogram<T>> {
    cfg.validate()?;
    let n = op.dim();
    let exhaustive = match cfg.dos_mode {
        DosMode::Auto => n <= cfg.probes,
        DosMode::Probes => false,
        DosMode::Exhaustive => true,
    };
    if exhaustive {
        return estimate_dos_hist_exhaustive(op, cfg);
    }
    let probes: Vec<Vec<T>> = (0..cfg.probes as u64)
        .map(|p| probe_vector(n, cfg.seed, graph_index, p))
        .collect();
    estimate_dos_hist_with_probes(op, &probes, cfg)
}

/// DOS histogram averaged over caller-supplied probe vectors.
///
/// Each probe contributes its normalized spectral measure; the average is
/// divided by the bin width. `cfg.probes` and `cfg.seed` are ignored.
pub fn estimate_dos_hist_with_probes<T: Scalar>(
    op: &ShiftOperator<T>,
    probes: &[Vec<T>],
    cfg: &EstimatorConfig,
) -> Result<SpectralHistogram<T>> {
    cfg.validate()?;
    let n = op.dim();
    if n == 0 {
        return Err(Error::EmptyGraph);
    }
    if probes.is_empty() {
        return Err(Error::InvalidConfig("no probe vectors".into()));
    }
    let mut raw = vec![T::zero(); cfg.bins];
    let mut clamped = 0;
    for z in probes {
        if z.len() != n {
            return Err(Error::DimensionMismatch {
                expected: n,
                got: z.len(),
            });
        }
        let rule = gauss_quadrature(op, z, cfg.eta_l, cfg.reorthogonalize)?;
        clamped += rule.clamped;
        accumulate(&rule, &mut raw);
    }
    let scale = T::one() / (T::from_usize(probes.len()).unwrap() * bin_width::<T>(cfg.bins));
    let mut hist = SpectralHistogram::zeros(cfg.bins, HistogramKind::Dos, Vec::new(), n);
    for (h, r) in hist.bins.iter_mut().zip(raw) {
        *h = r * scale;
    }
    hist.clamped_ritz = clamped;
    Ok(hist)
}

/// DOS histogram from the LDOS of all `n` standard basis vectors.
///
/// Exact up to quadrature convergence (`eta_l >= n`), at `n` Lanczos runs;
/// meant for small graphs and self-checks.
pub fn estimate_dos_hist_exhaustive<T: Scalar>(
    op: &ShiftOperator<T>,
    cfg: &EstimatorConfig,
) -> Result<SpectralHistogram<T>> {
    let n = op.dim();
    let probes: Vec<Vec<T>> = (0..n)
        .map(|i| {
            let mut e = vec![T::zero(); n];
            e[i] = T::one();
            e
        })
        .collect();
    estimate_dos_hist_with_probes(op, &probes, cfg)
}

/// `[h(v + v') - (h(v) + h(v'))] / 2` bin-wise.
///
/// The right-hand pair is added first so the result is symmetric in `v`, `v'`
/// to the last bit.
pub fn cldos_from_ldos<T: Scalar>(
    sum: &SpectralHistogram<T>,
    first: &SpectralHistogram<T>,
    second: &SpectralHistogram<T>,
) -> Result<SpectralHistogram<T>> {
    for h in [first, second] {
        if h.len() != sum.len() {
            return Err(Error::DimensionMismatch {
                expected: sum.len(),
                got: h.len(),
            });
        }
    }
    let half = T::of(0.5);
    let bins = sum
        .bins
        .iter()
        .zip(first.bins.iter().zip(&second.bins))
        .map(|(&s, (&a, &b))| (s - (a + b)) * half)
        .collect();
    Ok(SpectralHistogram {
        bins,
        kind: HistogramKind::Cldos,
        provenance: vec![
            first.provenance.first().cloned().unwrap_or_default(),
            second.provenance.first().cloned().unwrap_or_default(),
        ],
        n: sum.n,
        clamped_ritz: sum.clamped_ritz + first.clamped_ritz + second.clamped_ritz,
    })
}

/// Coupled LDOS of `v` and `v'` from three LDOS estimates.
pub fn estimate_cldos_hist<T: Scalar>(
    op: &ShiftOperator<T>,
    v: &AttributeVector<T>,
    v2: &AttributeVector<T>,
    cfg: &EstimatorConfig,
) -> Result<SpectralHistogram<T>> {
    check_len(op, v)?;
    check_len(op, v2)?;
    let h1 = estimate_ldos_hist(op, v, cfg)?;
    let h2 = estimate_ldos_hist(op, v2, cfg)?;
    let hs = estimate_ldos_hist(op, &v.sum(v2), cfg)?;
    cldos_from_ldos(&hs, &h1, &h2)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::{build_graph, normalize_adjacency, AttributeSchema};
    use std::sync::Arc;

    fn op(n: usize, edges: &[(usize, usize, f64)]) -> ShiftOperator<f64> {
        normalize_adjacency(&build_graph(n, edges, vec![], Arc::new(AttributeSchema::empty())).unwrap())
    }

    fn cfg(bins: usize) -> EstimatorConfig {
        EstimatorConfig {
            bins,
            ..EstimatorConfig::default()
        }
    }

    fn rule(nodes: Vec<f64>, weights: Vec<f64>) -> QuadratureRule<f64> {
        QuadratureRule {
            nodes,
            weights,
            clamped: 0,
            max_overshoot: 0.0,
        }
    }

    fn assert_bins(h: &[f64], expect: &[f64], tol: f64) {
        assert_eq!(h.len(), expect.len());
        for (a, b) in h.iter().zip(expect) {
            assert!((a - b).abs() <= tol, "{h:?} vs {expect:?}");
        }
    }

    #[test]
    fn binning_rules() {
        assert_eq!(
            bin_quadrature(&rule(vec![-1.0, 1.0], vec![0.5, 0.5]), 4),
            vec![0.5, 0.0, 0.0, 0.5]
        );
        assert_eq!(
            bin_quadrature(&rule(vec![-0.5], vec![1.0]), 4),
            vec![0.0, 1.0, 0.0, 0.0]
        );
        for b in [2, 4, 10, 200] {
            let h = bin_quadrature(&rule(vec![1.0], vec![1.0]), b);
            assert_eq!(h[b - 1], 1.0);
        }
        // round-off either side of an interior edge resolves to the right bin
        assert_eq!(bin_index(-0.5 - 1e-15, 4), 1);
        assert_eq!(bin_index(-0.5 + 1e-15, 4), 1);
        assert_eq!(bin_index(-1e-17, 200), 100);
        assert_eq!(bin_index(-0.5 - 1e-6, 4), 0);
    }

    #[test]
    fn centers() {
        let c: Vec<f64> = bin_centers(4);
        assert_eq!(c, vec![-0.75, -0.25, 0.25, 0.75]);
    }

    #[test]
    fn config_validation() {
        assert!(cfg(3).validate().is_err());
        assert!(cfg(0).validate().is_err());
        assert!(EstimatorConfig { eta_l: 0, ..cfg(4) }.validate().is_err());
        assert!(EstimatorConfig { probes: 0, ..cfg(4) }.validate().is_err());
        assert!(cfg(2).validate().is_ok());
    }

    #[test]
    fn ldos_examples() {
        let k2 = op(2, &[(0, 1, 1.0)]);
        let h = estimate_ldos_hist(&k2, &AttributeVector::new("e0", vec![1.0, 0.0]), &cfg(4)).unwrap();
        assert_bins(&h.bins, &[0.5, 0.0, 0.0, 0.5], 1e-14);
        assert_eq!(h.kind, HistogramKind::Ldos);

        let s = std::f64::consts::FRAC_1_SQRT_2;
        let h = estimate_ldos_hist(&k2, &AttributeVector::new("u", vec![s, s]), &cfg(4)).unwrap();
        assert_bins(&h.bins, &[0.0, 0.0, 0.0, 1.0], 1e-15);

        let h = estimate_ldos_hist(&k2, &AttributeVector::new("z", vec![0.0, 0.0]), &cfg(4)).unwrap();
        assert_eq!(h.bins, vec![0.0; 4]);
    }

    #[test]
    fn ldos_quadratic_scaling_exact_for_powers_of_two() {
        let p = op(5, &[(0, 1, 1.0), (1, 2, 0.4), (2, 3, 1.3), (3, 4, 2.0), (0, 4, 0.2)]);
        let v = AttributeVector::new("v", vec![0.3, -0.2, 1.1, 0.0, 0.7]);
        let h = estimate_ldos_hist(&p, &v, &cfg(20)).unwrap();
        for c in [2.0, 0.25, -4.0] {
            let hc = estimate_ldos_hist(&p, &v.scaled(c), &cfg(20)).unwrap();
            for (a, b) in hc.bins.iter().zip(&h.bins) {
                assert_eq!(*a, c * c * b);
            }
        }
    }

    #[test]
    fn cldos_examples() {
        let k2 = op(2, &[(0, 1, 1.0)]);
        let e0 = AttributeVector::new("e0", vec![1.0, 0.0]);
        let e1 = AttributeVector::new("e1", vec![0.0, 1.0]);
        let h = estimate_cldos_hist(&k2, &e0, &e1, &cfg(4)).unwrap();
        assert_bins(&h.bins, &[-0.5, 0.0, 0.0, 0.5], 1e-14);
        assert_eq!(h.provenance, vec!["e0", "e1"]);

        let p = op(4, &[(0, 1, 1.0), (1, 2, 0.4), (2, 3, 1.3), (0, 2, 0.9)]);
        let v = AttributeVector::new("v", vec![0.3, -0.2, 1.1, 0.5]);
        let ldos = estimate_ldos_hist(&p, &v, &cfg(10)).unwrap();
        assert_eq!(estimate_cldos_hist(&p, &v, &v, &cfg(10)).unwrap().bins, ldos.bins);
        let neg: Vec<f64> = ldos.bins.iter().map(|x| -x).collect();
        assert_eq!(
            estimate_cldos_hist(&p, &v, &v.scaled(-1.0), &cfg(10)).unwrap().bins,
            neg
        );
    }

    #[test]
    fn dos_of_k2_is_exact_with_any_probe() {
        // both eigenvalues are extreme: every probe sees +-1 only
        let k2 = op(2, &[(0, 1, 1.0)]);
        let probing = EstimatorConfig {
            probes: 64,
            dos_mode: DosMode::Probes,
            ..cfg(4)
        };
        let h = estimate_dos_hist(&k2, &probing, 0).unwrap();
        assert!((h.mass() - 1.0).abs() < 1e-12);
        assert_eq!(h.bins[1], 0.0);
        assert_eq!(h.bins[2], 0.0);
        assert!((h.bins[0] - 1.0).abs() < 0.2);

        let ex = estimate_dos_hist_exhaustive(&k2, &cfg(4)).unwrap();
        assert_bins(&ex.bins, &[1.0, 0.0, 0.0, 1.0], 1e-14);
        // auto mode: n = 2 <= 16 probes
        let auto = estimate_dos_hist(&k2, &cfg(4), 0).unwrap();
        assert_eq!(auto.bins, ex.bins);
    }

    #[test]
    fn exhaustive_dos_examples() {
        let k3 = op(3, &[(0, 1, 1.0), (1, 2, 1.0), (0, 2, 1.0)]);
        let h = estimate_dos_hist_exhaustive(&k3, &cfg(4)).unwrap();
        assert_bins(&h.bins, &[0.0, 4.0 / 3.0, 0.0, 2.0 / 3.0], 1e-12);

        let star = op(4, &[(0, 1, 1.0), (0, 2, 1.0), (0, 3, 1.0)]);
        let h = estimate_dos_hist_exhaustive(&star, &cfg(4)).unwrap();
        assert_bins(&h.bins, &[0.5, 0.0, 1.0, 0.5], 1e-12);
    }

    #[test]
    fn probes_are_keyed() {
        let a: Vec<f64> = probe_vector(10, 7, 3, 1);
        assert_eq!(a, probe_vector(10, 7, 3, 1));
        assert_ne!(a, probe_vector::<f64>(10, 7, 3, 2));
        assert_ne!(a, probe_vector::<f64>(10, 7, 4, 1));
        assert_ne!(a, probe_vector::<f64>(10, 8, 3, 1));
        let nrm: f64 = a.iter().map(|x| x * x).sum();
        assert!((nrm - 1.0).abs() < 1e-14);
    }

    #[test]
    fn dimension_checks() {
        let k2 = op(2, &[(0, 1, 1.0)]);
        let v = AttributeVector::new("v", vec![1.0, 0.0, 0.0]);
        assert!(matches!(
            estimate_ldos_hist(&k2, &v, &cfg(4)),
            Err(Error::DimensionMismatch { .. })
        ));
    }

    #[test]
    fn single_precision_ldos() {
        let g = build_graph::<f32>(2, &[(0, 1, 1.0)], vec![], Arc::new(AttributeSchema::empty())).unwrap();
        let k2 = normalize_adjacency(&g);
        let h = estimate_ldos_hist(&k2, &AttributeVector::new("e0", vec![1.0f32, 0.0]), &cfg(4)).unwrap();
        assert!((h.bins[0] - 0.5).abs() < 1e-6 && (h.bins[3] - 0.5).abs() < 1e-6);
    }
}
