//! Batch front-end: ingest complexes (files or generator specs), run
//! spectral analyses, theorem certification, and Monte-Carlo sampling, and
//! emit JSON/CSV reports.
//!
//! Exit codes: 0 on success, 1 when any non-vacuous certificate fails,
//! 2 on parse/validation errors.

use std::io::Write;
use std::path::{Path, PathBuf};

use clap::{Parser, Subcommand};

use scanlab_core::certificates::{self, Certificate, Suite, Verdict};
use scanlab_core::generators::{CorpusManifest, InstanceSpec};
use scanlab_core::report::{self, AnalyzeOptions, OrderSelection};
use scanlab_core::sampler;
use scanlab_core::{Error, WeightedComplex};

const FACET_GUARD: usize = 5000;

#[derive(Parser)]
#[command(name = "scanlab", version, about = "Spectral certification of scan dynamics on weighted partite complexes")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Compute the full spectral report of an instance.
    Analyze {
        /// Instance file (JSON) or generator spec (`gen:...`).
        source: String,
        /// Sweep orders: `canonical`, `all`, or a comma list like `2,1,3`.
        #[arg(long, default_value = "canonical")]
        orders: String,
        /// Include the per-level ε profile.
        #[arg(long)]
        levels: bool,
        /// Pair selection for ε/η maps: `sweep` or `all`.
        #[arg(long, default_value = "sweep")]
        pairs: String,
        /// Restarts for entropy-contraction estimates on large simplices.
        #[arg(long, default_value_t = 8)]
        eta_budget: usize,
        /// Write the JSON report here instead of stdout.
        #[arg(long)]
        out: Option<PathBuf>,
        /// Also write the flat CSV mirror of the report.
        #[arg(long)]
        csv_out: Option<PathBuf>,
        /// Allow instances above the facet guard.
        #[arg(long)]
        force: bool,
    },
    /// Evaluate theorem certificates; nonzero exit iff a non-vacuous
    /// certificate fails.
    Certify {
        /// Instance file or generator spec (omit when using --corpus).
        source: Option<String>,
        /// Corpus manifest to certify instead of a single instance.
        #[arg(long)]
        corpus: Option<PathBuf>,
        #[arg(long, default_value = "all")]
        suite: String,
        /// Sweep orders: `canonical`, `all` (n ≤ 5), or a comma list.
        #[arg(long, default_value = "canonical")]
        orders: String,
        #[arg(long)]
        out: Option<PathBuf>,
        #[arg(long)]
        force: bool,
    },
    /// Run the sweep sampler and emit the TVD curve (CSV).
    Sample {
        source: String,
        /// Update order (comma list); canonical when omitted.
        #[arg(long)]
        order: Option<String>,
        #[arg(long, default_value_t = 8)]
        steps: usize,
        #[arg(long, default_value_t = 1000)]
        chains: usize,
        /// Master seed; defaults to HDX_SEED or the built-in constant.
        #[arg(long)]
        seed: Option<u64>,
        /// Write the TVD curve here instead of stdout.
        #[arg(long)]
        out: Option<PathBuf>,
        /// Also dump the chain-0 trajectory (CSV: step,facet).
        #[arg(long)]
        traj_out: Option<PathBuf>,
        #[arg(long)]
        force: bool,
    },
    /// Materialize a generator spec as an instance file.
    Generate {
        /// Generator spec (`gen:...`).
        spec: String,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Export a walk operator as dense CSV (header = state labels).
    Operator {
        source: String,
        /// Which operator: `psq`, `pgd`, `q:<side>`, or `down:<level>`.
        #[arg(long)]
        which: String,
        #[arg(long)]
        order: Option<String>,
        #[arg(long)]
        out: Option<PathBuf>,
        #[arg(long)]
        force: bool,
    },
}

pub fn run() -> i32 {
    let cli = Cli::parse();
    match dispatch(cli) {
        Ok(code) => code,
        Err(err) => {
            eprintln!("scanlab: {err}");
            2
        }
    }
}

fn dispatch(cli: Cli) -> Result<i32, Error> {
    match cli.command {
        Command::Analyze { source, orders, levels, pairs, eta_budget, out, csv_out, force } => {
            let x = load_instance(&source, force)?;
            let opts = AnalyzeOptions {
                orders: parse_orders_selection(&orders, &x)?,
                include_levels: levels,
                all_pairs: pairs == "all",
                eta_budget,
            };
            let rep = report::analyze(&x, &opts)?;
            let text = serde_json::to_string_pretty(&rep).expect("report serializes");
            emit(out.as_deref(), &text)?;
            if let Some(path) = csv_out {
                std::fs::write(path, rep.to_csv())?;
            }
            Ok(0)
        }
        Command::Certify { source, corpus, suite, orders, out, force } => {
            let suite: Suite = suite.parse().map_err(Error::Parse)?;
            let mut results = Vec::new();
            let mut failures = 0usize;
            let instances: Vec<(String, WeightedComplex)> = match (&corpus, &source) {
                (Some(path), _) => {
                    let manifest = CorpusManifest::load(path)?;
                    manifest.build_all(path.parent())?
                }
                (None, Some(src)) => vec![(src.clone(), load_instance(src, force)?)],
                (None, None) => {
                    return Err(Error::Parse("certify needs a source or --corpus".into()))
                }
            };
            for (id, x) in instances {
                guard(&x, force)?;
                let order_list = parse_order_list(&orders, &x)?;
                let certs = certificates::run_suite(&x, suite, &order_list)?;
                failures += certs.iter().filter(|c| c.failed()).count();
                results.push(CertifyEntry { instance: id, digest: x.digest(), certificates: certs });
            }
            let batch = CertifyBatch { certify_version: 1, failures, results };
            let text = serde_json::to_string_pretty(&batch).expect("batch serializes");
            emit(out.as_deref(), &text)?;
            Ok(if failures > 0 { 1 } else { 0 })
        }
        Command::Sample { source, order, steps, chains, seed, out, traj_out, force } => {
            let x = load_instance(&source, force)?;
            let order = match order {
                Some(text) => parse_order(&text)?,
                None => x.side_ids(),
            };
            let seed = seed.unwrap_or_else(default_seed);
            let curve = sampler::empirical_tvd_curve(&x, &order, steps, chains, seed)?;
            let mut text = String::from("t,estimate,ci_low,ci_high\n");
            for (t, est) in curve.iter().enumerate() {
                text.push_str(&format!(
                    "{t},{},{},{}\n",
                    est.estimate,
                    (est.estimate - est.ci).max(0.0),
                    est.estimate + est.ci
                ));
            }
            emit(out.as_deref(), &text)?;
            if let Some(path) = traj_out {
                let s = sampler::SweepSampler::new(&x, &order)?;
                let mut dump = String::from("step,facet\n");
                for (t, idx) in s.trajectory(0, steps, seed).iter().enumerate() {
                    dump.push_str(&format!("{t},{}\n", x.facets()[*idx].label()));
                }
                std::fs::write(path, dump)?;
            }
            Ok(0)
        }
        Command::Generate { spec, out } => {
            let x = build_spec(&spec)?;
            emit(out.as_deref(), &x.to_json_string())?;
            Ok(0)
        }
        Command::Operator { source, which, order, out, force } => {
            let x = load_instance(&source, force)?;
            let op = match which.as_str() {
                "psq" => {
                    let order = match order {
                        Some(text) => parse_order(&text)?,
                        None => x.side_ids(),
                    };
                    scanlab_core::walks::sequential_sweep(&x, &order)?
                }
                "pgd" => scanlab_core::walks::down_up_walk(&x)?,
                other => {
                    if let Some(side) = other.strip_prefix("q:") {
                        let side = side.parse::<usize>().map_err(|e| Error::Parse(e.to_string()))?;
                        scanlab_core::walks::update_operator(&x, side)?
                    } else if let Some(level) = other.strip_prefix("down:") {
                        let level =
                            level.parse::<usize>().map_err(|e| Error::Parse(e.to_string()))?;
                        scanlab_core::walks::down_operator(&x, level)?
                    } else {
                        return Err(Error::Parse(format!("unknown operator `{other}`")));
                    }
                }
            };
            emit(out.as_deref(), &op.to_csv())?;
            Ok(0)
        }
    }
}

#[derive(serde::Serialize)]
struct CertifyEntry {
    instance: String,
    digest: String,
    certificates: Vec<Certificate>,
}

#[derive(serde::Serialize)]
struct CertifyBatch {
    certify_version: u32,
    failures: usize,
    results: Vec<CertifyEntry>,
}

/// Count of non-vacuous failures in a serialized batch (used by tests).
pub fn count_failures(certs: &[Certificate]) -> usize {
    certs.iter().filter(|c| c.verdict == Verdict::Fail).count()
}

pub fn default_seed() -> u64 {
    std::env::var("HDX_SEED")
        .ok()
        .and_then(|s| s.parse().ok())
        .unwrap_or(scanlab_core::DEFAULT_SEED)
}

fn emit(path: Option<&Path>, text: &str) -> Result<(), Error> {
    match path {
        Some(p) => std::fs::write(p, text)?,
        None => {
            let mut stdout = std::io::stdout().lock();
            stdout.write_all(text.as_bytes())?;
            if !text.ends_with('\n') {
                stdout.write_all(b"\n")?;
            }
        }
    }
    Ok(())
}

fn guard(x: &WeightedComplex, force: bool) -> Result<(), Error> {
    if x.facet_count() > FACET_GUARD && !force {
        return Err(Error::TooLarge(format!(
            "{} facets exceed the {FACET_GUARD} guard; pass --force to proceed",
            x.facet_count()
        )));
    }
    Ok(())
}

/// Load an instance from a file path or a `gen:` spec.
pub fn load_instance(source: &str, force: bool) -> Result<WeightedComplex, Error> {
    let x = if source.starts_with("gen:") {
        build_spec(source)?
    } else {
        let text = std::fs::read_to_string(source)?;
        WeightedComplex::from_json_str(&text)?
    };
    guard(&x, force)?;
    Ok(x)
}

/// Parse `gen:<kind>:<args>` generator specs.
pub fn build_spec(spec: &str) -> Result<WeightedComplex, Error> {
    let rest = spec
        .strip_prefix("gen:")
        .ok_or_else(|| Error::Parse(format!("generator spec must start with gen:, got `{spec}`")))?;
    let (kind, args) = rest.split_once(':').unwrap_or((rest, ""));
    let kv = parse_kv(args);
    let get = |key: &str| -> Result<&str, Error> {
        kv.iter()
            .find(|(k, _)| k == key)
            .map(|(_, v)| v.as_str())
            .ok_or_else(|| Error::Parse(format!("gen:{kind} needs `{key}=...`")))
    };
    let instance = match kind {
        "appendix" => InstanceSpec::Appendix {
            n: parse_num(get("n")?)?,
            k: parse_num(get("k")?)?,
        },
        "coloring" => {
            let edges = get("edges")?
                .split('|')
                .map(|e| {
                    let (a, b) = e
                        .split_once('-')
                        .ok_or_else(|| Error::Parse(format!("bad edge `{e}`")))?;
                    Ok::<_, Error>((parse_num::<usize>(a)?, parse_num::<usize>(b)?))
                })
                .collect::<Result<Vec<_>, _>>()?;
            InstanceSpec::Coloring {
                edges,
                vertices: parse_num(get("vertices")?)?,
                colors: parse_num(get("colors")?)?,
            }
        }
        "product" => InstanceSpec::Product {
            sizes: args
                .split(',')
                .map(parse_num)
                .collect::<Result<Vec<usize>, _>>()?,
        },
        "product-random" => InstanceSpec::ProductRandom {
            n: parse_num(get("n")?)?,
            max_side: parse_num(get("max_side")?)?,
            seed: parse_num(get("seed")?)?,
        },
        "random" => InstanceSpec::Random {
            sizes: get("sizes")?
                .split('x')
                .map(parse_num)
                .collect::<Result<Vec<usize>, _>>()?,
            density: get("density")?
                .parse()
                .map_err(|e: std::num::ParseFloatError| Error::Parse(e.to_string()))?,
            seed: parse_num(get("seed")?)?,
        },
        other => return Err(Error::Parse(format!("unknown generator `{other}`"))),
    };
    instance.build(None)
}

fn parse_kv(args: &str) -> Vec<(String, String)> {
    args.split(',')
        .filter_map(|pair| pair.split_once('=').map(|(k, v)| (k.to_string(), v.to_string())))
        .collect()
}

fn parse_num<T: std::str::FromStr>(text: &str) -> Result<T, Error>
where
    T::Err: std::fmt::Display,
{
    text.parse().map_err(|e: T::Err| Error::Parse(format!("bad number `{text}`: {e}")))
}

fn parse_order(text: &str) -> Result<Vec<usize>, Error> {
    text.split(',').map(parse_num).collect()
}

fn parse_orders_selection(text: &str, x: &WeightedComplex) -> Result<OrderSelection, Error> {
    match text {
        "canonical" => Ok(OrderSelection::Canonical),
        "all" => {
            if x.n() > 5 {
                return Err(Error::Parse("--orders all is capped at n ≤ 5".into()));
            }
            Ok(OrderSelection::All)
        }
        other => Ok(OrderSelection::Explicit(parse_order(other)?)),
    }
}

fn parse_order_list(text: &str, x: &WeightedComplex) -> Result<Vec<Vec<usize>>, Error> {
    match text {
        "canonical" => Ok(vec![x.side_ids()]),
        "all" => {
            if x.n() > 5 {
                return Err(Error::Parse("--orders all is capped at n ≤ 5".into()));
            }
            Ok(report::permutations(&x.side_ids()))
        }
        other => Ok(vec![parse_order(other)?]),
    }
}
