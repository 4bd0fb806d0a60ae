use std::path::{Path, PathBuf};

use super::{InputSpec, Method, RecordFormat};
use crate::error::{Error, Result};
use crate::layout::SgdParams;
use crate::spectral::ReconstructionMode;

/// Everything a sweep needs.
///
/// The config file is flat `key = value` text; `#` starts a comment.
///
/// | key        | value                                             | default      |
/// |------------|---------------------------------------------------|--------------|
/// | `inputs`   | comma list of `.mtx` paths or `gen:` specs        | required     |
/// | `method`   | `full`, `sparse`, `lr`, `daf`, `das`              | required     |
/// | `grid`     | comma list of integers or `a..b` / `a..b/step`    | `0`          |
/// | `trials`   | trials per condition                              | `1`          |
/// | `seed`     | base seed; trial `t` uses `seed + t`              | `0`          |
/// | `iters`    | SGD iterations                                    | `15`         |
/// | `eps`      | final step-size parameter                         | `0.1`        |
/// | `dmin`     | minimum adjusted distance                         | `0.1`        |
/// | `pivots`   | pivots for `sparse` / `das`                       | `200`        |
/// | `mode`     | `signed` or `hermitian` (LR reconstruction)       | `signed`     |
/// | `out`      | output directory                                  | `results`    |
/// | `formats`  | record formats, `csv` and/or `json`               | `csv,json`   |
/// | `timing`   | record wall time in `elapsed_s`                   | `false`      |
/// | `layouts`  | save layout + drawing of the first trial per cell | `false`      |
/// | `boxplots` | render one boxplot per graph and metric           | `true`       |
/// | `threshold`| relative median gain flagged in `improvement.csv` | `0.1`        |
///
/// Relative paths in `inputs` and `out` resolve against the config file's
/// directory.
#[derive(Debug, Clone, PartialEq)]
pub struct ExperimentConfig {
    pub inputs: Vec<InputSpec>,
    pub method: Method,
    pub grid: Vec<u32>,
    pub trials: u32,
    pub base_seed: u64,
    pub sgd: SgdParams,
    pub pivots: usize,
    pub mode: ReconstructionMode,
    pub out_dir: PathBuf,
    pub formats: Vec<RecordFormat>,
    pub timing: bool,
    pub save_layouts: bool,
    pub boxplots: bool,
    pub threshold: f64,
}

impl ExperimentConfig {
    pub fn new(inputs: Vec<InputSpec>, method: Method) -> Self {
        Self {
            inputs,
            method,
            grid: vec![0],
            trials: 1,
            base_seed: 0,
            sgd: SgdParams::default(),
            pivots: 200,
            mode: ReconstructionMode::Signed,
            out_dir: PathBuf::from("results"),
            formats: vec![RecordFormat::Csv, RecordFormat::Json],
            timing: false,
            save_layouts: false,
            boxplots: true,
            threshold: 0.1,
        }
    }

    /// Parameter values actually swept: the grid for `lr`, `daf`, `das`,
    /// a single 0 for the unparameterized methods.
    pub fn effective_grid(&self) -> Vec<u32> {
        if self.method.param_name().is_some() {
            self.grid.clone()
        } else {
            vec![0]
        }
    }

    pub fn validate(&self) -> Result<()> {
        let bad = |m: String| Err(Error::Config(m));
        if self.inputs.is_empty() {
            return bad("no inputs".into());
        }
        if self.trials == 0 {
            return bad("trials must be at least 1".into());
        }
        if self.grid.is_empty() {
            return bad("grid is empty".into());
        }
        if self.method == Method::Lr {
            if let Some(p) = self.grid.iter().find(|&&p| p >= 100) {
                return bad(format!("percentile {p} outside 0..100"));
            }
        }
        if self.method.param_name() == Some("k") {
            if let Some(k) = self.grid.iter().find(|&&k| k > 60) {
                return bad(format!("k = {k} makes alpha round to 1"));
            }
        }
        if self.pivots == 0 {
            return bad("pivots must be at least 1".into());
        }
        if self.formats.is_empty() {
            return bad("no record formats".into());
        }
        self.sgd.validate().map_err(|e| Error::Config(e.to_string()))
    }

    pub fn load(path: impl AsRef<Path>) -> Result<Self> {
        let path = path.as_ref();
        let text =
            std::fs::read_to_string(path).map_err(|e| Error::Config(format!("cannot read {}: {e}", path.display())))?;
        Self::parse(&text, path.parent().unwrap_or(Path::new(".")))
    }

    pub fn parse(text: &str, base_dir: &Path) -> Result<Self> {
        let mut inputs = None;
        let mut method = None;
        let mut rest = Vec::new();
        for (k, raw) in text.lines().enumerate() {
            let line = raw.split('#').next().unwrap_or("").trim();
            if line.is_empty() {
                continue;
            }
            let (key, value) =
                line.split_once('=').ok_or_else(|| Error::Config(format!("line {}: expected key = value", k + 1)))?;
            let (key, value) = (key.trim(), value.trim());
            match key {
                "inputs" => {
                    inputs = Some(
                        value
                            .split(',')
                            .map(str::trim)
                            .filter(|s| !s.is_empty())
                            .map(|s| InputSpec::parse(s, base_dir))
                            .collect::<Result<Vec<_>>>()?,
                    )
                }
                "method" => method = Some(value.parse::<Method>().map_err(|e| Error::Config(e.to_string()))?),
                _ => rest.push((k + 1, key.to_owned(), value.to_owned())),
            }
        }
        let inputs = inputs.ok_or_else(|| Error::Config("missing 'inputs'".into()))?;
        let method = method.ok_or_else(|| Error::Config("missing 'method'".into()))?;
        let mut cfg = Self::new(inputs, method);

        for (line, key, value) in rest {
            let err = |what: &str| Error::Config(format!("line {line}: bad {what} '{value}'"));
            match key.as_str() {
                "grid" => cfg.grid = parse_grid(&value).ok_or_else(|| err("grid"))?,
                "trials" => cfg.trials = value.parse().map_err(|_| err("trials"))?,
                "seed" => cfg.base_seed = value.parse().map_err(|_| err("seed"))?,
                "iters" => cfg.sgd.iterations = value.parse().map_err(|_| err("iters"))?,
                "eps" => cfg.sgd.eps = value.parse().map_err(|_| err("eps"))?,
                "dmin" => cfg.sgd.d_min = value.parse().map_err(|_| err("dmin"))?,
                "pivots" => cfg.pivots = value.parse().map_err(|_| err("pivots"))?,
                "mode" => cfg.mode = value.parse().map_err(|_| err("mode"))?,
                "out" => cfg.out_dir = base_dir.join(value),
                "formats" => {
                    cfg.formats =
                        value.split(',').filter(|s| !s.trim().is_empty()).map(str::parse).collect::<Result<Vec<_>>>()?
                }
                "timing" => cfg.timing = parse_bool(&value).ok_or_else(|| err("timing"))?,
                "layouts" => cfg.save_layouts = parse_bool(&value).ok_or_else(|| err("layouts"))?,
                "boxplots" => cfg.boxplots = parse_bool(&value).ok_or_else(|| err("boxplots"))?,
                "threshold" => cfg.threshold = value.parse().map_err(|_| err("threshold"))?,
                other => return Err(Error::Config(format!("line {line}: unknown key '{other}'"))),
            }
        }
        cfg.validate()?;
        Ok(cfg)
    }
}

fn parse_bool(s: &str) -> Option<bool> {
    match s.to_ascii_lowercase().as_str() {
        "true" | "yes" | "1" | "on" => Some(true),
        "false" | "no" | "0" | "off" => Some(false),
        _ => None,
    }
}

/// `0,10,20`, `0..9`, `0..90/10` or mixtures; ranges are inclusive.
pub fn parse_grid(s: &str) -> Option<Vec<u32>> {
    let mut out = Vec::new();
    for item in s.split(',').map(str::trim).filter(|t| !t.is_empty()) {
        if let Some((a, b)) = item.split_once("..") {
            let (b, step) = match b.split_once('/') {
                Some((b, st)) => (b, st.trim().parse::<u32>().ok()?),
                None => (b, 1),
            };
            let (a, b) = (a.trim().parse::<u32>().ok()?, b.trim().parse::<u32>().ok()?);
            if step == 0 || a > b {
                return None;
            }
            out.extend((a..=b).step_by(step as usize));
        } else {
            out.push(item.parse().ok()?);
        }
    }
    if out.is_empty() {
        return None;
    }
    Some(out)
}
