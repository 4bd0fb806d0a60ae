use std::fs;
use std::io::BufWriter;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use anyhow::{bail, Context};
use clap::{Parser, Subcommand};

use dalayout::graph::bfs_all_pairs;
use dalayout::harness::{
    render_layout_svg, run_method, run_sweep, write_outputs, ExperimentConfig, InputSpec, Method, MethodSettings,
    SvgStyle,
};
use dalayout::layout::{full_sgd, write_layout, AdjustParams, SgdParams};
use dalayout::metrics::full_report;
use dalayout::spectral::{lr_adjust, write_spectrum_csv, ReconstructionMode};

#[derive(Parser)]
#[command(name = "dalayout", version, about = "Stress-model graph layout with distance adjustment")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Lay out one graph and write the layout, a drawing and its metrics.
    Layout(LayoutArgs),
    /// Run a multi-seed parameter sweep described by a config file.
    Sweep {
        #[arg(long)]
        config: PathBuf,
        /// Overrides the config's output directory.
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

#[derive(clap::Args)]
struct LayoutArgs {
    /// Matrix Market file or generator spec such as gen:grid:16x16.
    graph: String,
    #[arg(long, default_value = "full")]
    method: Method,
    /// Truncation percentile for lr.
    #[arg(long, conflicts_with = "k")]
    p: Option<u32>,
    /// Adjustment exponent for daf and das (alpha = 1 - 0.5^k).
    #[arg(long)]
    k: Option<u32>,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    #[arg(long, default_value_t = 15)]
    iters: usize,
    #[arg(long, default_value_t = 0.1)]
    eps: f64,
    #[arg(long, default_value_t = 0.1)]
    dmin: f64,
    #[arg(long, default_value_t = 200)]
    pivots: usize,
    #[arg(long, default_value = "signed")]
    mode: ReconstructionMode,
    #[arg(long, default_value = "out")]
    out: PathBuf,
}

/// Errors that map to exit code 2.
#[derive(Debug)]
struct UsageError(String);

impl std::fmt::Display for UsageError {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(&self.0)
    }
}

impl std::error::Error for UsageError {}

fn usage(msg: impl Into<String>) -> anyhow::Error {
    UsageError(msg.into()).into()
}

fn param_for(args: &LayoutArgs) -> anyhow::Result<u32> {
    match (args.method, args.p, args.k) {
        (Method::Lr, p, None) => {
            let p = p.unwrap_or(0);
            if p >= 100 {
                return Err(usage(format!("--p {p} outside 0..100")));
            }
            Ok(p)
        }
        (Method::Daf | Method::Das, None, k) => Ok(k.unwrap_or(0)),
        (Method::Full | Method::Sparse, None, None) => Ok(0),
        (m, _, _) => Err(usage(format!("method {m} does not take {}", if args.p.is_some() { "--p" } else { "--k" }))),
    }
}

fn run_layout(args: &LayoutArgs) -> anyhow::Result<()> {
    let param = param_for(args)?;
    let sgd = SgdParams { iterations: args.iters, eps: args.eps, d_min: args.dmin, seed: args.seed, dim: 2 };
    sgd.validate().map_err(|e| usage(e.to_string()))?;
    if args.pivots == 0 {
        return Err(usage("--pivots must be at least 1"));
    }
    let input = InputSpec::parse(&args.graph, Path::new("")).map_err(|e| usage(e.to_string()))?;
    let graph = input.load().with_context(|| format!("loading {}", args.graph))?;
    let name = input.name();
    log::info!("{name}: {} nodes, {} edges", graph.node_count(), graph.edge_count());

    fs::create_dir_all(&args.out).with_context(|| format!("creating {}", args.out.display()))?;
    let stem = format!("{name}_{}_{param}_s{}", args.method, args.seed);
    let original = bfs_all_pairs(&graph);

    let layout = if args.method == Method::Lr {
        let lr = lr_adjust(&original, f64::from(param), args.dmin, args.mode)?;
        let path = args.out.join(format!("{stem}_spectrum.csv"));
        write_spectrum_csv(&lr.spectrum, &lr.mask, BufWriter::new(fs::File::create(&path)?))?;
        full_sgd(&graph, &lr.distances, AdjustParams::none(), &sgd)?
    } else {
        let settings = MethodSettings { sgd, pivots: args.pivots, mode: args.mode };
        run_method(&graph, &original, args.method, param, &settings, args.seed)?
    };

    write_layout(&layout, BufWriter::new(fs::File::create(args.out.join(format!("{stem}.txt")))?))?;
    fs::write(args.out.join(format!("{stem}.svg")), render_layout_svg(&layout, &graph, &SvgStyle::default()))?;
    let report = full_report(&layout, &graph, &original)?;
    let json = serde_json::to_string_pretty(&report)?;
    fs::write(args.out.join(format!("{stem}_metrics.json")), json + "\n")?;
    println!("{}", serde_json::to_string(&report)?);
    Ok(())
}

fn run_sweep_cmd(config: &Path, out: Option<&Path>) -> anyhow::Result<ExitCode> {
    let mut cfg = ExperimentConfig::load(config).map_err(|e| usage(e.to_string()))?;
    if let Some(out) = out {
        cfg.out_dir = out.to_path_buf();
    }
    let outcome = run_sweep(&cfg);
    for f in &outcome.failures {
        eprintln!(
            "failed: {}{}{}: {}",
            f.input,
            f.param.map(|p| format!(" param {p}")).unwrap_or_default(),
            f.seed.map(|s| format!(" seed {s}")).unwrap_or_default(),
            f.message
        );
    }
    if outcome.records.is_empty() {
        bail!("no trial succeeded");
    }
    let written = write_outputs(&cfg, &outcome)?;
    println!(
        "{} records, {} failures, {} files under {}",
        outcome.records.len(),
        outcome.failures.len(),
        written.len(),
        cfg.out_dir.display()
    );
    Ok(if outcome.failures.is_empty() { ExitCode::SUCCESS } else { ExitCode::from(1) })
}

fn main() -> ExitCode {
    env_logger::Builder::from_env(env_logger::Env::default().default_filter_or("warn")).init();
    let cli = Cli::parse();
    let result = match &cli.command {
        Command::Layout(args) => run_layout(args).map(|()| ExitCode::SUCCESS),
        Command::Sweep { config, out } => run_sweep_cmd(config, out.as_deref()),
    };
    match result {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e:#}");
            if e.downcast_ref::<UsageError>().is_some() {
                ExitCode::from(2)
            } else {
                ExitCode::from(1)
            }
        }
    }
}
