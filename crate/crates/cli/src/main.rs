use std::path::{Path, PathBuf};
use std::process::ExitCode;

use adoge::graph::{AttributeColumn, AttributeSchema};
use adoge::{
    load_edgelist_dir, load_tudataset, DegreeAttribute, DosMode, EmbeddingConfig, EstimatorConfig, GraphDataset,
    PairSelection,
};
use anyhow::{bail, Context};
use clap::{Args, Parser, Subcommand, ValueEnum};

mod embed;
mod selfcheck;

#[derive(Parser, Debug)]
#[command(name = "adoge", version, about = "Spectral density embeddings of attributed graphs")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Embed every graph of a dataset.
    Embed(embed::EmbedArgs),
    /// Compare the Lanczos estimators against dense eigendecompositions on random graphs.
    Selfcheck(selfcheck::SelfcheckArgs),
    /// Print the column manifest of a configuration without embedding.
    Info(InfoArgs),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum Format {
    Tudataset,
    Edgelist,
}

#[derive(Args, Debug, Clone)]
struct InputArgs {
    /// Dataset directory.
    #[arg(long)]
    input: Option<PathBuf>,

    #[arg(long, value_enum, default_value = "tudataset")]
    format: Format,

    /// File prefix of a TUDataset directory; defaults to the directory name.
    #[arg(long)]
    prefix: Option<String>,
}

impl InputArgs {
    fn load(&self) -> anyhow::Result<GraphDataset> {
        let Some(dir) = &self.input else {
            bail!("--input is required");
        };
        match self.format {
            Format::Tudataset => {
                let prefix = match &self.prefix {
                    Some(p) => p.clone(),
                    None => dir_name(dir)?,
                };
                load_tudataset(dir, &prefix)
                    .with_context(|| format!("loading TUDataset {prefix} from {}", dir.display()))
            }
            Format::Edgelist => {
                load_edgelist_dir(dir).with_context(|| format!("loading edge lists from {}", dir.display()))
            }
        }
    }
}

fn dir_name(dir: &Path) -> anyhow::Result<String> {
    let canonical = dir
        .canonicalize()
        .with_context(|| format!("reading {}", dir.display()))?;
    canonical
        .file_name()
        .map(|s| s.to_string_lossy().into_owned())
        .context("cannot derive a prefix from the input directory; pass --prefix")
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum DegreeArg {
    Auto,
    Always,
    Never,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum DosModeArg {
    Auto,
    Probes,
    Exhaustive,
}

#[derive(Args, Debug, Clone)]
struct ConfigArgs {
    /// Histogram bins B.
    #[arg(long, default_value_t = 200)]
    bins: usize,

    /// Lanczos steps eta_L.
    #[arg(long = "eta-l", default_value_t = 100)]
    eta_l: usize,

    /// Filter functions per family K.
    #[arg(long, default_value_t = 100)]
    frf: usize,

    /// DOS probe vectors N_z.
    #[arg(long, default_value_t = 16)]
    probes: usize,

    #[arg(long, env = "ADOGE_SEED", default_value_t = 0)]
    seed: u64,

    /// Histogram sources and feature kinds, e.g. `dos,ldos,cldos;hist,cheb,pow`.
    /// A group left empty means all of it.
    #[arg(long, default_value = "dos,ldos,cldos;hist,cheb,pow")]
    features: String,

    /// `all`, or a file with one signal pair per line (indices or labels).
    #[arg(long, default_value = "all")]
    pairs: String,

    #[arg(long = "eps-guard", default_value_t = 0.05)]
    eps_guard: f64,

    /// Append the standardized degree as a signal.
    #[arg(long, value_enum, default_value = "auto")]
    degree: DegreeArg,

    #[arg(long = "dos-mode", value_enum, default_value = "auto")]
    dos_mode: DosModeArg,

    /// Lanczos without full reorthogonalization.
    #[arg(long = "no-reorth")]
    no_reorth: bool,
}

#[derive(Debug, Default, PartialEq, Eq)]
struct FeatureSelection {
    dos: bool,
    ldos: bool,
    cldos: bool,
    hist: bool,
    cheb: bool,
    pow: bool,
}

fn parse_features(spec: &str) -> anyhow::Result<FeatureSelection> {
    let mut sel = FeatureSelection::default();
    for token in spec.split([',', ';']).map(str::trim).filter(|t| !t.is_empty()) {
        match token.to_ascii_lowercase().as_str() {
            "dos" => sel.dos = true,
            "ldos" => sel.ldos = true,
            "cldos" => sel.cldos = true,
            "hist" => sel.hist = true,
            "cheb" => sel.cheb = true,
            "pow" => sel.pow = true,
            other => bail!("unknown feature {other:?} (expected dos, ldos, cldos, hist, cheb, pow)"),
        }
    }
    if !(sel.dos || sel.ldos || sel.cldos) {
        (sel.dos, sel.ldos, sel.cldos) = (true, true, true);
    }
    if !(sel.hist || sel.cheb || sel.pow) {
        (sel.hist, sel.cheb, sel.pow) = (true, true, true);
    }
    Ok(sel)
}

fn parse_pairs(path: &Path, labels: &[String]) -> anyhow::Result<Vec<(usize, usize)>> {
    let text = std::fs::read_to_string(path).with_context(|| format!("reading pair file {}", path.display()))?;
    let lookup = |tok: &str, line_no: usize| -> anyhow::Result<usize> {
        if let Ok(i) = tok.parse::<usize>() {
            return Ok(i);
        }
        labels
            .iter()
            .position(|l| l == tok)
            .with_context(|| format!("{}:{line_no}: unknown signal {tok:?}", path.display()))
    };
    let mut out = Vec::new();
    for (k, line) in text.lines().enumerate() {
        let line = line.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        let toks: Vec<&str> = line.split([',', ' ', '\t']).filter(|t| !t.is_empty()).collect();
        if toks.len() != 2 {
            bail!("{}:{}: expected two signals per line", path.display(), k + 1);
        }
        out.push((lookup(toks[0], k + 1)?, lookup(toks[1], k + 1)?));
    }
    Ok(out)
}

impl ConfigArgs {
    fn build(&self, schema: &AttributeSchema) -> anyhow::Result<EmbeddingConfig> {
        let sel = parse_features(&self.features)?;
        let degree = match self.degree {
            DegreeArg::Auto => DegreeAttribute::Auto,
            DegreeArg::Always => DegreeAttribute::Always,
            DegreeArg::Never => DegreeAttribute::Never,
        };
        let pair_selection = if self.pairs == "all" {
            PairSelection::AllPairs
        } else {
            let labels = schema.signal_labels(degree.resolve(schema));
            PairSelection::Explicit(parse_pairs(Path::new(&self.pairs), &labels)?)
        };
        let cfg = EmbeddingConfig {
            estimator: EstimatorConfig {
                bins: self.bins,
                eta_l: self.eta_l,
                probes: self.probes,
                seed: self.seed,
                reorthogonalize: !self.no_reorth,
                dos_mode: match self.dos_mode {
                    DosModeArg::Auto => DosMode::Auto,
                    DosModeArg::Probes => DosMode::Probes,
                    DosModeArg::Exhaustive => DosMode::Exhaustive,
                },
            },
            frf: self.frf,
            include_dos: sel.dos,
            include_ldos: sel.ldos,
            include_cldos: sel.cldos,
            include_hist: sel.hist,
            include_cheb: sel.cheb,
            include_pow: sel.pow,
            pair_selection,
            eps_guard: self.eps_guard,
            degree,
            ..EmbeddingConfig::default()
        };
        cfg.validate()?;
        Ok(cfg)
    }
}

#[derive(Args, Debug)]
struct InfoArgs {
    #[command(flatten)]
    input: InputArgs,

    /// Use a schema of this many continuous attributes instead of a dataset.
    #[arg(long, conflicts_with = "input")]
    attributes: Option<usize>,

    #[command(flatten)]
    config: ConfigArgs,
}

fn cmd_info(args: &InfoArgs) -> anyhow::Result<ExitCode> {
    let schema = match args.attributes {
        Some(d) => AttributeSchema::new((0..d).map(|i| AttributeColumn::continuous(format!("x{i}"))).collect())?,
        None => args.input.load()?.schema.as_ref().clone(),
    };
    let cfg = args.config.build(&schema)?;
    let manifest = adoge::feature_layout(&cfg, &schema)?;
    for (i, label) in manifest.labels().iter().enumerate() {
        println!("{i}\t{label}");
    }
    println!("total features: {}", manifest.len());
    Ok(ExitCode::SUCCESS)
}

fn main() -> ExitCode {
    env_logger::Builder::from_env(env_logger::Env::default().default_filter_or("warn")).init();
    let cli = Cli::parse();
    let result = match &cli.command {
        Command::Embed(a) => embed::run(a),
        Command::Selfcheck(a) => selfcheck::run(a),
        Command::Info(a) => cmd_info(a),
    };
    match result {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(1)
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn feature_groups_default_to_all() {
        let s = parse_features("dos;hist").unwrap();
        assert!(s.dos && !s.ldos && !s.cldos && s.hist && !s.cheb && !s.pow);
        let s = parse_features("ldos").unwrap();
        assert!(s.ldos && s.hist && s.cheb && s.pow && !s.dos);
        let s = parse_features("").unwrap();
        assert!(s.dos && s.ldos && s.cldos && s.hist && s.cheb && s.pow);
        assert!(parse_features("dos;spline").is_err());
    }

    #[test]
    fn pair_file_accepts_indices_and_labels() {
        let dir = tempfile::tempdir().unwrap();
        let p = dir.path().join("pairs.txt");
        std::fs::write(&p, "# pairs\n0 2\nattr:b, attr:a\n").unwrap();
        let labels = vec!["attr:a".to_string(), "attr:b".into(), "attr:c".into()];
        assert_eq!(parse_pairs(&p, &labels).unwrap(), vec![(0, 2), (1, 0)]);
        std::fs::write(&p, "0 1 2\n").unwrap();
        assert!(parse_pairs(&p, &labels).is_err());
        std::fs::write(&p, "0 attr:z\n").unwrap();
        assert!(parse_pairs(&p, &labels).is_err());
    }
}
