use std::process::ExitCode;
use std::sync::Arc;

use adoge::graph::{build_graph, AttributeSchema};
use adoge::{
    estimate_cldos_hist, estimate_dos_hist_exhaustive, estimate_ldos_hist, exact_cldos_hist, exact_dos_hist,
    exact_ldos_hist, exact_spectrum, normalize_adjacency, probe_vector, AttributeVector, EstimatorConfig,
    SpectralHistogram,
};
use clap::Args;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

const TOLERANCE: f64 = 1e-6;
const VECTORS_PER_GRAPH: u64 = 5;

#[derive(Args, Debug)]
pub struct SelfcheckArgs {
    /// Largest graph size.
    #[arg(long = "n-max", default_value_t = 64)]
    n_max: usize,

    #[arg(long, default_value_t = 50)]
    trials: usize,

    #[arg(long, env = "ADOGE_SEED", default_value_t = 0)]
    seed: u64,

    #[arg(long, default_value_t = 200)]
    bins: usize,

    /// Perturb every estimate before comparing (negative control).
    #[arg(long, hide = true)]
    corrupt: bool,
}

#[derive(Default)]
struct Worst {
    dos: f64,
    ldos: f64,
    cldos: f64,
}

pub fn run(args: &SelfcheckArgs) -> anyhow::Result<ExitCode> {
    anyhow::ensure!(args.n_max >= 1, "--n-max must be at least 1");
    let mut rng = ChaCha8Rng::seed_from_u64(args.seed);
    let mut worst = Worst::default();
    let tamper = |mut h: SpectralHistogram| {
        if args.corrupt {
            h.bins[0] += 1e-3;
        }
        h
    };

    for trial in 0..args.trials {
        let n = rng.random_range(args.n_max.min(8)..=args.n_max);
        let mut edges = Vec::new();
        for i in 0..n {
            for j in i + 1..n {
                if rng.random::<f64>() < 0.3 {
                    edges.push((i, j, 2.0 * (1.0 - rng.random::<f64>())));
                }
            }
        }
        let g = build_graph(n, &edges, vec![], Arc::new(AttributeSchema::empty()))?;
        let op = normalize_adjacency(&g);
        let spec = exact_spectrum(&op)?;
        let cfg = EstimatorConfig {
            bins: args.bins,
            eta_l: n,
            reorthogonalize: true,
            ..EstimatorConfig::default()
        };

        let dos = tamper(estimate_dos_hist_exhaustive(&op, &cfg)?);
        worst.dos = worst.dos.max(dos.l1_distance(&exact_dos_hist(&spec, args.bins)));

        let vs: Vec<AttributeVector> = (0..VECTORS_PER_GRAPH)
            .map(|k| AttributeVector::new(format!("v{k}"), probe_vector(n, args.seed, trial as u64, k)))
            .collect();
        for v in &vs {
            let h = tamper(estimate_ldos_hist(&op, v, &cfg)?);
            worst.ldos = worst.ldos.max(h.l1_distance(&exact_ldos_hist(&spec, v, args.bins)));
        }
        for pair in vs.windows(2) {
            let h = tamper(estimate_cldos_hist(&op, &pair[0], &pair[1], &cfg)?);
            worst.cldos = worst
                .cldos
                .max(h.l1_distance(&exact_cldos_hist(&spec, &pair[0], &pair[1], args.bins)));
        }
    }

    let mut ok = true;
    for (kind, dev) in [("DOS", worst.dos), ("LDOS", worst.ldos), ("cLDOS", worst.cldos)] {
        let pass = dev <= TOLERANCE;
        ok &= pass;
        println!("{kind:<6} max L1 {dev:.3e} {}", if pass { "ok" } else { "FAIL" });
    }
    println!(
        "{} trials, n <= {}, B = {}, tolerance {TOLERANCE:e}",
        args.trials, args.n_max, args.bins
    );
    Ok(if ok { ExitCode::SUCCESS } else { ExitCode::from(1) })
}
