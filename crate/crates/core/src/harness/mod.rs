//! Multi-seed experiment sweeps and their file outputs.

mod config;
mod records;
mod summary;
mod svg;

use std::fmt;
use std::fs;
use std::path::{Path, PathBuf};
use std::str::FromStr;
use std::time::Instant;

use rayon::prelude::*;

pub use config::{parse_grid, ExperimentConfig};
pub use records::{read_records, round_sig9, write_records, RecordFormat, TrialRecord, COLUMNS};
pub use summary::{
    compare_to_baseline, summarize, write_improvements_csv, write_summary_csv, BoxStats, ConditionSummary, Improvement,
};
pub use svg::{render_boxplot_svg, render_layout_svg, SvgStyle};

use crate::error::{invalid, Error, Result};
use crate::graph::{bfs_all_pairs, generators, read_matrix_market, DistanceMatrix, Graph};
use crate::layout::{das_sgd, full_sgd, write_layout, AdjustParams, Layout, SgdParams};
use crate::metrics::{full_report, QualityReport};
use crate::spectral::{
    double_center, eigendecompose, lr_adjusted_matrix, percentile_mask, reconstruct_distance_matrix,
    ReconstructionMode, Spectrum,
};

/// Layout algorithm.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Method {
    /// SGD over all pairs.
    Full,
    /// SGD over edges and node–pivot pairs.
    Sparse,
    /// Full SGD on the low-rank adjusted matrix; parameter `p`.
    Lr,
    /// Distance-adjusted full SGD; parameter `k`, `alpha = 1 - 0.5^k`.
    Daf,
    /// Distance-adjusted sparse SGD; parameter `k`.
    Das,
}

impl Method {
    pub const ALL: [Method; 5] = [Method::Full, Method::Sparse, Method::Lr, Method::Daf, Method::Das];

    pub fn param_name(&self) -> Option<&'static str> {
        match self {
            Self::Full | Self::Sparse => None,
            Self::Lr => Some("p"),
            Self::Daf | Self::Das => Some("k"),
        }
    }
}

impl fmt::Display for Method {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Self::Full => "full",
            Self::Sparse => "sparse",
            Self::Lr => "lr",
            Self::Daf => "daf",
            Self::Das => "das",
        })
    }
}

impl FromStr for Method {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Self::ALL
            .into_iter()
            .find(|m| m.to_string().eq_ignore_ascii_case(s.trim()))
            .ok_or_else(|| invalid(format!("unknown method '{s}'")))
    }
}

/// Synthetic fixture graphs.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Generated {
    Path(usize),
    Cycle(usize),
    Grid(usize, usize),
    Star(usize),
    Complete(usize),
    Claw,
}

impl Generated {
    pub fn build(&self) -> Graph {
        match *self {
            Self::Path(n) => generators::path(n),
            Self::Cycle(n) => generators::cycle(n),
            Self::Grid(r, c) => generators::grid(r, c),
            Self::Star(l) => generators::star(l),
            Self::Complete(n) => generators::complete(n),
            Self::Claw => generators::claw(),
        }
    }

    pub fn name(&self) -> String {
        match *self {
            Self::Path(n) => format!("path{n}"),
            Self::Cycle(n) => format!("cycle{n}"),
            Self::Grid(r, c) => format!("grid{r}x{c}"),
            Self::Star(l) => format!("star{l}"),
            Self::Complete(n) => format!("complete{n}"),
            Self::Claw => "claw".into(),
        }
    }
}

/// A sweep input: a Matrix Market file or a generator spec such as
/// `gen:grid:16x16`, `gen:path:10`, `gen:cycle:8`, `gen:star:5`,
/// `gen:complete:4`, `gen:claw`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum InputSpec {
    File(PathBuf),
    Generated(Generated),
}

impl InputSpec {
    pub fn parse(s: &str, base_dir: &Path) -> Result<Self> {
        let Some(spec) = s.strip_prefix("gen:") else {
            return Ok(Self::File(base_dir.join(s)));
        };
        let bad = || Error::Config(format!("bad generator spec '{s}'"));
        let (kind, arg) = spec.split_once(':').unwrap_or((spec, ""));
        let size = |min: usize| -> Result<usize> { arg.parse::<usize>().ok().filter(|&v| v >= min).ok_or_else(bad) };
        let g = match kind {
            "path" => Generated::Path(size(2)?),
            "cycle" => Generated::Cycle(size(3)?),
            "star" => Generated::Star(size(1)?),
            "complete" => Generated::Complete(size(2)?),
            "claw" => Generated::Claw,
            "grid" => {
                let (r, c) = arg.split_once('x').ok_or_else(bad)?;
                let r: usize = r.parse().map_err(|_| bad())?;
                let c: usize = c.parse().map_err(|_| bad())?;
                if r == 0 || c == 0 || r * c < 2 {
                    return Err(bad());
                }
                Generated::Grid(r, c)
            }
            _ => return Err(bad()),
        };
        Ok(Self::Generated(g))
    }

    pub fn name(&self) -> String {
        match self {
            Self::File(p) => p.file_stem().map_or_else(|| p.display().to_string(), |s| s.to_string_lossy().into()),
            Self::Generated(g) => g.name(),
        }
    }

    pub fn load(&self) -> Result<Graph> {
        match self {
            Self::File(p) => Ok(read_matrix_market(p)?.graph),
            Self::Generated(g) => Ok(g.build()),
        }
    }
}

/// Method settings shared by every trial of a run.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct MethodSettings {
    /// `seed` is overwritten per trial.
    pub sgd: SgdParams,
    pub pivots: usize,
    pub mode: ReconstructionMode,
}

impl Default for MethodSettings {
    fn default() -> Self {
        Self { sgd: SgdParams::default(), pivots: 200, mode: ReconstructionMode::Signed }
    }
}

/// Runs one method. `matrix` is the graph distance matrix for `full` and
/// `daf`, the adjusted matrix for `lr`, and unused by the sparse methods.
fn layout_with(
    graph: &Graph,
    matrix: &DistanceMatrix,
    method: Method,
    param: u32,
    settings: &MethodSettings,
    seed: u64,
) -> Result<Layout> {
    let params = settings.sgd.with_seed(seed);
    match method {
        Method::Full | Method::Lr => full_sgd(graph, matrix, AdjustParams::none(), &params),
        Method::Daf => full_sgd(graph, matrix, AdjustParams::from_k(param)?, &params),
        Method::Sparse => das_sgd(graph, settings.pivots, AdjustParams::none(), &params),
        Method::Das => das_sgd(graph, settings.pivots, AdjustParams::from_k(param)?, &params),
    }
}

/// One layout with the given method, parameter and seed. `original` is the
/// graph's hop-distance matrix.
pub fn run_method(
    graph: &Graph,
    original: &DistanceMatrix,
    method: Method,
    param: u32,
    settings: &MethodSettings,
    seed: u64,
) -> Result<Layout> {
    if method == Method::Lr {
        let adjusted = lr_adjusted_matrix(original, f64::from(param), settings.sgd.d_min, settings.mode)?;
        return layout_with(graph, &adjusted, method, param, settings, seed);
    }
    layout_with(graph, original, method, param, settings, seed)
}

/// A failed input or trial; the sweep carries on without it.
#[derive(Debug, Clone, PartialEq)]
pub struct SweepFailure {
    pub input: String,
    pub param: Option<u32>,
    pub seed: Option<u64>,
    pub message: String,
}

#[derive(Debug, Clone, Default)]
pub struct SweepOutcome {
    /// Sorted by (graph, method, param, seed).
    pub records: Vec<TrialRecord>,
    pub failures: Vec<SweepFailure>,
    /// First-trial layout of each condition, when requested.
    pub layouts: Vec<SavedLayout>,
}

#[derive(Debug, Clone)]
pub struct SavedLayout {
    pub graph_name: String,
    pub graph: Graph,
    pub param: u32,
    pub seed: u64,
    pub layout: Layout,
}

fn settings_of(config: &ExperimentConfig) -> MethodSettings {
    MethodSettings { sgd: config.sgd, pivots: config.pivots, mode: config.mode }
}

/// Runs every (input, parameter, trial) combination of `config`. Trial `t`
/// uses seed `base_seed + t`. Metrics always use the original hop
/// distances. Failures are isolated per input and per trial.
///
/// With `timing` on, `elapsed_s` covers distance computation, any
/// eigendecomposition and reconstruction (shared per graph / parameter and
/// charged to every trial that uses them) and the SGD run itself; parsing
/// and metric evaluation are excluded.
pub fn run_sweep(config: &ExperimentConfig) -> SweepOutcome {
    let settings = settings_of(config);
    let grid = config.effective_grid();
    let mut outcome = SweepOutcome::default();

    for input in &config.inputs {
        let name = input.name();
        let fail = |param, seed, e: &Error| SweepFailure { input: name.clone(), param, seed, message: e.to_string() };
        let graph = match input.load() {
            Ok(g) => g,
            Err(e) => {
                log::error!("{name}: {e}");
                outcome.failures.push(fail(None, None, &e));
                continue;
            }
        };
        let clock = Instant::now();
        let original = bfs_all_pairs(&graph);
        let apsp_s = clock.elapsed().as_secs_f64();

        let spectrum: Option<(Spectrum, f64)> = if config.method == Method::Lr {
            let clock = Instant::now();
            match eigendecompose(&double_center(&original)) {
                Ok(s) => Some((s, clock.elapsed().as_secs_f64())),
                Err(e) => {
                    log::error!("{name}: {e}");
                    outcome.failures.push(fail(None, None, &e));
                    continue;
                }
            }
        } else {
            None
        };

        for &param in &grid {
            let clock = Instant::now();
            let matrix = match &spectrum {
                Some((s, _)) => {
                    let adjusted = percentile_mask(s.eigenvalues(), f64::from(param))
                        .and_then(|mask| reconstruct_distance_matrix(s, &mask, config.sgd.d_min, config.mode));
                    match adjusted {
                        Ok(m) => m,
                        Err(e) => {
                            outcome.failures.push(fail(Some(param), None, &e));
                            continue;
                        }
                    }
                }
                None => original.clone(),
            };
            let shared_s = match (&spectrum, config.method) {
                (Some((_, eig_s)), _) => apsp_s + eig_s + clock.elapsed().as_secs_f64(),
                (None, Method::Full | Method::Daf) => apsp_s,
                (None, _) => 0.0,
            };

            let results: Vec<(u64, Result<(TrialRecord, Layout)>)> = (0..config.trials)
                .into_par_iter()
                .map(|t| {
                    let seed = config.base_seed + u64::from(t);
                    let clock = Instant::now();
                    let run = layout_with(&graph, &matrix, config.method, param, &settings, seed);
                    let elapsed = clock.elapsed().as_secs_f64() + shared_s;
                    let res = run.and_then(|layout| {
                        let report = full_report(&layout, &graph, &original)?;
                        let record = TrialRecord {
                            graph: name.clone(),
                            method: config.method,
                            param,
                            seed,
                            elapsed_s: if config.timing { elapsed } else { 0.0 },
                            report,
                        };
                        Ok((record, layout))
                    });
                    (seed, res)
                })
                .collect();

            for (seed, res) in results {
                match res {
                    Ok((record, layout)) => {
                        if config.save_layouts && seed == config.base_seed {
                            outcome.layouts.push(SavedLayout {
                                graph_name: name.clone(),
                                graph: graph.clone(),
                                param,
                                seed,
                                layout,
                            });
                        }
                        outcome.records.push(record);
                    }
                    Err(e) => {
                        log::error!("{name} param {param} seed {seed}: {e}");
                        outcome.failures.push(fail(Some(param), Some(seed), &e));
                    }
                }
            }
        }
    }
    outcome.records.sort_by(|a, b| a.key().cmp(&b.key()));
    outcome
}

/// Writes records, summaries, improvement flags, boxplots and saved
/// layouts under `config.out_dir`. Returns the files written.
pub fn write_outputs(config: &ExperimentConfig, outcome: &SweepOutcome) -> Result<Vec<PathBuf>> {
    let dir = &config.out_dir;
    fs::create_dir_all(dir)?;
    let mut written = Vec::new();

    for &format in &config.formats {
        let path = dir.join(format!("records.{}", format.extension()));
        write_records(&outcome.records, format, fs::File::create(&path)?)?;
        written.push(path);
    }

    let summaries = summarize(&outcome.records);
    let path = dir.join("summary.csv");
    write_summary_csv(&summaries, fs::File::create(&path)?)?;
    written.push(path);

    if config.method.param_name().is_some() {
        let path = dir.join("improvement.csv");
        write_improvements_csv(&compare_to_baseline(&summaries, config.threshold), fs::File::create(&path)?)?;
        written.push(path);
    }

    if config.boxplots && !summaries.is_empty() {
        let plots = dir.join("boxplots");
        fs::create_dir_all(&plots)?;
        let mut graphs: Vec<&str> = summaries.iter().map(|s| s.graph.as_str()).collect();
        graphs.dedup();
        for graph in graphs {
            let cells: Vec<&ConditionSummary> = summaries.iter().filter(|s| s.graph == graph).collect();
            for (k, field) in QualityReport::FIELDS.iter().enumerate() {
                let conditions: Vec<(String, BoxStats)> = cells
                    .iter()
                    .map(|s| {
                        let label = match config.method.param_name() {
                            Some(p) => format!("{p}={}", s.param),
                            None => s.method.to_string(),
                        };
                        (label, s.metrics[k].1)
                    })
                    .collect();
                let title = format!("{graph} {} {field}", config.method);
                let path = plots.join(format!("{graph}_{}_{field}.svg", config.method));
                fs::write(&path, render_boxplot_svg(&conditions, &title))?;
                written.push(path);
            }
        }
    }

    if !outcome.layouts.is_empty() {
        let layouts = dir.join("layouts");
        fs::create_dir_all(&layouts)?;
        for saved in &outcome.layouts {
            let stem = format!("{}_{}_{}_s{}", saved.graph_name, config.method, saved.param, saved.seed);
            let txt = layouts.join(format!("{stem}.txt"));
            write_layout(&saved.layout, std::io::BufWriter::new(fs::File::create(&txt)?))?;
            let svg = layouts.join(format!("{stem}.svg"));
            fs::write(&svg, render_layout_svg(&saved.layout, &saved.graph, &SvgStyle::default()))?;
            written.extend([txt, svg]);
        }
    }
    Ok(written)
}
