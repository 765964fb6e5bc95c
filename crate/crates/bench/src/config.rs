//! Command-line flags, the optional `key=value` config file, and the
//! resolved [`RunConfig`]. Flags override the file; the file overrides the
//! per-command defaults.

use std::collections::BTreeMap;
use std::fmt;
use std::path::{Path, PathBuf};
use std::str::FromStr;

use clap::{Args, Parser, Subcommand, ValueEnum};
use lazy_kron::lazy::capacity_for_exponent;
use lazy_kron::MatmulKernel;

use crate::error::{BenchError, Result};

/// Environment variable naming the directory for outputs when `--out` is absent.
pub const OUT_DIR_ENV: &str = "LAZYKRON_OUT_DIR";

#[derive(Debug, Parser)]
#[command(
    name = "lazykron",
    version,
    about = "Lazy Kronecker-sum maintenance: verification, count audits and benchmarks"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: CliCommand,
}

#[derive(Debug, Subcommand)]
pub enum CliCommand {
    /// Check the lazy structure against the eager oracle on seeded streams.
    Verify(Flags),
    /// Audit multiplication counts against their closed forms.
    Counts(Flags),
    /// Measure amortized update and worst-case query cost.
    Bench(Flags),
    /// Run the three-phase hinted matrix-vector harness (`--a` is tau).
    HintedMv(Flags),
}

impl CliCommand {
    fn parts(&self) -> (Command, &Flags) {
        match self {
            CliCommand::Verify(f) => (Command::Verify, f),
            CliCommand::Counts(f) => (Command::Counts, f),
            CliCommand::Bench(f) => (Command::Bench, f),
            CliCommand::HintedMv(f) => (Command::HintedMv, f),
        }
    }
}

#[derive(Debug, Args, Default, Clone)]
pub struct Flags {
    /// Mode sizes (comma separated).
    #[arg(long, value_delimiter = ',')]
    pub n: Option<Vec<usize>>,
    /// Tensor orders.
    #[arg(long, value_delimiter = ',')]
    pub k: Option<Vec<usize>>,
    /// Numbers of fixed query modes.
    #[arg(long, value_delimiter = ',')]
    pub s: Option<Vec<usize>>,
    /// Buffer capacities.
    #[arg(long = "K", value_delimiter = ',')]
    pub capacity: Option<Vec<usize>>,
    /// Capacity exponents, K = ceil(n^a). For hinted-mv: tau.
    #[arg(long, value_delimiter = ',')]
    pub a: Option<Vec<f64>>,
    /// Stream lengths.
    #[arg(long = "T", value_delimiter = ',')]
    pub t: Option<Vec<usize>>,
    #[arg(long)]
    pub trials: Option<usize>,
    #[arg(long)]
    pub seed: Option<u64>,
    #[arg(long, value_enum)]
    pub scalar: Option<ScalarKind>,
    #[arg(long, value_parser = parse_kernel)]
    pub kernel: Option<MatmulKernel>,
    #[arg(long)]
    pub out: Option<PathBuf>,
    #[arg(long, value_enum)]
    pub format: Option<OutputFormat>,
    /// key=value file supplying defaults for any of the flags above.
    #[arg(long)]
    pub config: Option<PathBuf>,
}

fn parse_kernel(s: &str) -> std::result::Result<MatmulKernel, String> {
    s.parse().map_err(|e: lazy_kron::KronError| e.to_string())
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Command {
    Verify,
    Counts,
    Bench,
    HintedMv,
}

impl fmt::Display for Command {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Command::Verify => "verify",
            Command::Counts => "counts",
            Command::Bench => "bench",
            Command::HintedMv => "hinted-mv",
        })
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum ScalarKind {
    Real,
    Bool,
    Counting,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, ValueEnum)]
pub enum OutputFormat {
    #[default]
    Csv,
    Json,
}

impl OutputFormat {
    pub fn extension(&self) -> &'static str {
        match self {
            OutputFormat::Csv => "csv",
            OutputFormat::Json => "json",
        }
    }
}

/// Buffer capacity for a grid point: given outright or as an exponent of `n`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Capacity {
    Fixed(usize),
    Exponent(f64),
}

impl Capacity {
    pub fn resolve(&self, n: usize) -> Result<usize> {
        match *self {
            Capacity::Fixed(k) => Ok(k),
            Capacity::Exponent(a) => Ok(capacity_for_exponent(n, a)?),
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct RunConfig {
    pub command: Command,
    pub n: Vec<usize>,
    pub k: Vec<usize>,
    /// Empty means every `s` in `1..=k`.
    pub s: Vec<usize>,
    pub capacities: Vec<Capacity>,
    /// Raw exponents; tau values for hinted-mv.
    pub a: Vec<f64>,
    pub t: Vec<usize>,
    pub trials: usize,
    pub seed: u64,
    pub scalar: ScalarKind,
    pub kernel: MatmulKernel,
    pub out: Option<PathBuf>,
    pub format: OutputFormat,
}

impl RunConfig {
    pub fn defaults(command: Command) -> Self {
        let base = RunConfig {
            command,
            n: vec![2, 3],
            k: vec![1, 2, 3, 4],
            s: Vec::new(),
            capacities: [1, 2, 3, 5].map(Capacity::Fixed).to_vec(),
            a: Vec::new(),
            t: vec![25],
            trials: 50,
            seed: 0,
            scalar: ScalarKind::Real,
            kernel: MatmulKernel::Naive,
            out: None,
            format: OutputFormat::Csv,
        };
        match command {
            Command::Verify => base,
            Command::Counts => RunConfig {
                scalar: ScalarKind::Counting,
                trials: 1,
                ..base
            },
            Command::Bench => RunConfig {
                n: vec![8, 16],
                k: vec![2, 3],
                s: vec![1],
                capacities: [4, 16].map(Capacity::Fixed).to_vec(),
                t: vec![64],
                trials: 3,
                ..base
            },
            Command::HintedMv => RunConfig {
                n: vec![2, 3, 4],
                k: vec![2, 3],
                s: vec![1],
                capacities: Vec::new(),
                a: vec![0.5, 1.0],
                trials: 1,
                scalar: ScalarKind::Counting,
                ..base
            },
        }
    }

    /// `s` values for order `k`.
    pub fn s_values(&self, k: usize) -> Vec<usize> {
        if self.s.is_empty() {
            (1..=k).collect()
        } else {
            self.s.iter().copied().filter(|&s| s <= k).collect()
        }
    }

    /// Where to write rows: `--out`, else `$LAZYKRON_OUT_DIR/<command>.<ext>`,
    /// else stdout (`None`).
    pub fn output_path(&self, env_dir: Option<&Path>) -> Option<PathBuf> {
        self.out.clone().or_else(|| {
            env_dir.map(|d| d.join(format!("{}.{}", self.command, self.format.extension())))
        })
    }

    fn validate(&self) -> Result<()> {
        let positive = |name: &str, v: &[usize]| -> Result<()> {
            if v.is_empty() {
                return Err(BenchError::Config(format!("{name} must not be empty")));
            }
            if v.contains(&0) {
                return Err(BenchError::Config(format!(
                    "{name} values must be at least 1"
                )));
            }
            Ok(())
        };
        positive("n", &self.n)?;
        positive("k", &self.k)?;
        positive("T", &self.t)?;
        if self.s.contains(&0) {
            return Err(BenchError::Config("s values must be at least 1".into()));
        }
        if self.a.iter().any(|a| !a.is_finite() || *a < 0.0) {
            return Err(BenchError::Config(
                "a values must be finite and non-negative".into(),
            ));
        }
        for c in &self.capacities {
            if *c == Capacity::Fixed(0) {
                return Err(BenchError::Config("K values must be at least 1".into()));
            }
        }
        match self.command {
            Command::HintedMv => {
                if self.a.is_empty() {
                    return Err(BenchError::Config(
                        "hinted-mv needs at least one tau (--a)".into(),
                    ));
                }
            }
            _ => {
                if self.capacities.is_empty() {
                    return Err(BenchError::Config("no buffer capacity given".into()));
                }
            }
        }
        if self.command == Command::Counts
            && (self.scalar != ScalarKind::Counting || self.kernel != MatmulKernel::Naive)
        {
            return Err(BenchError::Config(
                "counts requires --scalar counting and --kernel naive".into(),
            ));
        }
        Ok(())
    }
}

const KNOWN_KEYS: [&str; 12] = [
    "n", "k", "s", "K", "a", "T", "trials", "seed", "scalar", "kernel", "out", "format",
];

/// Parses `key=value` lines; `#` starts a comment. Unknown keys are errors.
pub fn parse_config_file(text: &str) -> Result<BTreeMap<String, String>> {
    let mut map = BTreeMap::new();
    for (lineno, raw) in text.lines().enumerate() {
        let line = raw.split('#').next().unwrap_or("").trim();
        if line.is_empty() {
            continue;
        }
        let (key, value) = line.split_once('=').ok_or_else(|| {
            BenchError::Config(format!(
                "line {}: expected key=value, got {raw:?}",
                lineno + 1
            ))
        })?;
        let key = key.trim();
        if !KNOWN_KEYS.contains(&key) {
            return Err(BenchError::Config(format!(
                "line {}: unknown key {key:?}",
                lineno + 1
            )));
        }
        map.insert(key.to_string(), value.trim().to_string());
    }
    Ok(map)
}

fn parse_list<T: FromStr>(key: &str, v: &str) -> Result<Vec<T>> {
    v.split(',')
        .map(|x| {
            x.trim()
                .parse()
                .map_err(|_| BenchError::Config(format!("{key}: cannot parse {x:?}")))
        })
        .collect()
}

fn parse_one<T: FromStr>(key: &str, v: &str) -> Result<T> {
    v.trim()
        .parse()
        .map_err(|_| BenchError::Config(format!("{key}: cannot parse {v:?}")))
}

fn parse_enum<T: ValueEnum>(key: &str, v: &str) -> Result<T> {
    T::from_str(v.trim(), false)
        .map_err(|_| BenchError::Config(format!("{key}: unknown value {v:?}")))
}

/// Layers `flags` over `file` over the command defaults, then validates.
pub fn resolve(
    command: Command,
    flags: &Flags,
    file: &BTreeMap<String, String>,
) -> Result<RunConfig> {
    let mut cfg = RunConfig::defaults(command);
    let get = |key: &str| file.get(key).map(String::as_str);

    if let Some(v) = flags
        .n
        .clone()
        .map(Ok)
        .or_else(|| get("n").map(|v| parse_list("n", v)))
    {
        cfg.n = v?;
    }
    if let Some(v) = flags
        .k
        .clone()
        .map(Ok)
        .or_else(|| get("k").map(|v| parse_list("k", v)))
    {
        cfg.k = v?;
    }
    if let Some(v) = flags
        .s
        .clone()
        .map(Ok)
        .or_else(|| get("s").map(|v| parse_list("s", v)))
    {
        cfg.s = v?;
    }
    if let Some(v) = flags
        .t
        .clone()
        .map(Ok)
        .or_else(|| get("T").map(|v| parse_list("T", v)))
    {
        cfg.t = v?;
    }
    let capacity = flags
        .capacity
        .clone()
        .map(Ok)
        .or_else(|| get("K").map(|v| parse_list::<usize>("K", v)))
        .transpose()?;
    let exponents = flags
        .a
        .clone()
        .map(Ok)
        .or_else(|| get("a").map(|v| parse_list::<f64>("a", v)))
        .transpose()?;
    if let Some(a) = &exponents {
        cfg.a = a.clone();
    }
    match (command, capacity, exponents) {
        (Command::HintedMv, Some(_), _) => {
            return Err(BenchError::Config(
                "hinted-mv derives K from tau; drop --K".into(),
            ))
        }
        (Command::HintedMv, None, _) => {}
        (_, Some(_), Some(_)) => {
            return Err(BenchError::Config(
                "give either --K or --a, not both".into(),
            ))
        }
        (_, Some(ks), None) => cfg.capacities = ks.into_iter().map(Capacity::Fixed).collect(),
        (_, None, Some(a)) => cfg.capacities = a.into_iter().map(Capacity::Exponent).collect(),
        (_, None, None) => {}
    }
    if let Some(v) = flags
        .trials
        .map(Ok)
        .or_else(|| get("trials").map(|v| parse_one("trials", v)))
    {
        cfg.trials = v?;
    }
    if let Some(v) = flags
        .seed
        .map(Ok)
        .or_else(|| get("seed").map(|v| parse_one("seed", v)))
    {
        cfg.seed = v?;
    }
    if let Some(v) = flags
        .scalar
        .map(Ok)
        .or_else(|| get("scalar").map(|v| parse_enum("scalar", v)))
    {
        cfg.scalar = v?;
    }
    if let Some(v) = flags.kernel.map(Ok).or_else(|| {
        get("kernel").map(|v| {
            v.parse()
                .map_err(|e: lazy_kron::KronError| BenchError::Config(e.to_string()))
        })
    }) {
        cfg.kernel = v?;
    }
    if let Some(v) = flags.out.clone().or_else(|| get("out").map(PathBuf::from)) {
        cfg.out = Some(v);
    }
    if let Some(v) = flags
        .format
        .map(Ok)
        .or_else(|| get("format").map(|v| parse_enum("format", v)))
    {
        cfg.format = v?;
    }
    cfg.validate()?;
    Ok(cfg)
}

impl Cli {
    /// Reads the config file, if any, and resolves the effective settings.
    pub fn into_config(self) -> Result<RunConfig> {
        let (command, flags) = self.command.parts();
        let file = match &flags.config {
            Some(path) => {
                let text = std::fs::read_to_string(path).map_err(|source| BenchError::Io {
                    path: path.clone(),
                    source,
                })?;
                parse_config_file(&text)?
            }
            None => BTreeMap::new(),
        };
        resolve(command, flags, &file)
    }
}
