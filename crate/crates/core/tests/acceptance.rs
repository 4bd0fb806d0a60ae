//! Acceptance suite. Prints one PASS/FAIL line per criterion and exits
//! nonzero if any criterion fails.
//!
//! Criterion 8 also uses `dwt_1005.mtx` and criterion 9 uses `qh882.mtx`
//! when they are present in `$DALAYOUT_FIXTURES` (default: `fixtures/` at
//! the workspace root). Without `qh882.mtx`, criterion 9 runs on a random
//! connected graph with the same node and edge counts.

mod common;

use std::io::Write;
use std::path::PathBuf;
use std::time::{Duration, Instant};

use common::{
    char_poly, exact_gram, fuzz_layout, int_matrix, oracle_crossings, oracle_np, poly_from_roots, rat,
    reference_full_sgd, root_signs,
};
use dalayout::graph::{bfs_all_pairs, choose_pivots, generators, read_matrix_market, sparse_shortest_paths, Graph};
use dalayout::harness::{run_sweep, write_outputs, ExperimentConfig, Generated, InputSpec, Method, RecordFormat};
use dalayout::layout::{
    adjust_distance_unclamped, das_sgd, full_sgd, lr_sgd, pivot_rng, sparse_sgd_observed, AdjustParams, Layout,
    SgdParams,
};
use dalayout::metrics::{crossing_number, full_report, neighborhood_preservation, stress, QualityReport};
use dalayout::spectral::{
    double_center, eigendecompose, lr_adjusted_matrix, reconstruct_distance_matrix, ReconstructionMode, TruncationMask,
};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

struct Outcome {
    pass: bool,
    detail: String,
}

fn outcome(pass: bool, detail: impl Into<String>) -> Outcome {
    Outcome { pass, detail: detail.into() }
}

fn fixtures_dir() -> PathBuf {
    std::env::var_os("DALAYOUT_FIXTURES")
        .map(PathBuf::from)
        .unwrap_or_else(|| PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("../../fixtures"))
}

fn fixture(name: &str) -> Option<Graph> {
    let path = fixtures_dir().join(name);
    if !path.exists() {
        return None;
    }
    match read_matrix_market(&path) {
        Ok(p) => Some(p.graph),
        Err(e) => {
            eprintln!("cannot read {}: {e}", path.display());
            None
        }
    }
}

fn median(mut v: Vec<f64>) -> f64 {
    v.sort_by(f64::total_cmp);
    let n = v.len();
    if n % 2 == 1 {
        v[n / 2]
    } else {
        0.5 * (v[n / 2 - 1] + v[n / 2])
    }
}

fn c1_round_trip() -> Outcome {
    let start = Instant::now();
    let mut rng = ChaCha8Rng::seed_from_u64(1);
    let mut worst = 0.0f64;
    for _ in 0..50 {
        let n = rng.gen_range(2..=50);
        let m = rng.gen_range(n - 1..=(3 * n).min(n * (n - 1) / 2));
        let d = bfs_all_pairs(&generators::random_connected(n, m, &mut rng));
        let adjusted = match lr_adjusted_matrix(&d, 0.0, 0.1, ReconstructionMode::Signed) {
            Ok(a) => a,
            Err(e) => return outcome(false, format!("error: {e}")),
        };
        worst = worst.max(adjusted.max_abs_diff(&d));
    }
    let elapsed = start.elapsed();
    outcome(
        worst <= 1e-8 && elapsed < Duration::from_secs(10),
        format!("max |D' - D| = {worst:.2e}, {:.2} s", elapsed.as_secs_f64()),
    )
}

fn c2_k4_spectrum() -> Outcome {
    let d = bfs_all_pairs(&generators::complete(4));
    let want = [0.5, 0.5, 0.5, 0.0];
    let exact = char_poly(&exact_gram(&int_matrix(&d))) == poly_from_roots(&want.map(rat));
    let s = match eigendecompose(&double_center(&d)) {
        Ok(s) => s,
        Err(e) => return outcome(false, format!("error: {e}")),
    };
    let err = s.eigenvalues().iter().zip(want).map(|(a, b)| (a - b).abs()).fold(0.0, f64::max);
    outcome(exact && err <= 1e-9, format!("eigenvalues {:?}, max error {err:.1e}", s.eigenvalues()))
}

fn c3_claw() -> Outcome {
    let d = bfs_all_pairs(&generators::claw());
    let (exact_negative, _, _) = root_signs(&char_poly(&exact_gram(&int_matrix(&d))));
    let s = match eigendecompose(&double_center(&d)) {
        Ok(s) => s,
        Err(e) => return outcome(false, format!("error: {e}")),
    };
    let negative: Vec<usize> = (0..s.len()).filter(|&k| s.eigenvalues()[k] < -1e-9).collect();
    let mask = TruncationMask::dropping(s.len(), &negative);
    let again = reconstruct_distance_matrix(&s, &mask, 0.1, ReconstructionMode::Signed)
        .and_then(|d2| eigendecompose(&double_center(&d2)));
    let min = match again {
        Ok(a) => a.eigenvalues().iter().copied().fold(f64::INFINITY, f64::min),
        Err(e) => return outcome(false, format!("error: {e}")),
    };
    outcome(
        negative.len() == 1 && exact_negative == 1 && min >= -1e-8,
        format!("{} negative eigenvalue(s); min eigenvalue after dropping: {min:.2e}", negative.len()),
    )
}

fn c4_stationarity() -> Outcome {
    let mut worst = 0.0f64;
    let mut points = 0;
    for d in [0.5f64, 1.0, 2.0, 4.0, 8.0] {
        for w in [d.powi(-2), 0.05, 0.5, 2.0] {
            for c in 0..10 {
                let current = c as f64 * d / 3.0;
                for alpha in [0.0, 0.25, 0.5, 0.875, 0.998] {
                    points += 1;
                    let x = adjust_distance_unclamped(d, w, current, alpha);
                    let a = alpha * w;
                    let b = 2.0 * (1.0 - alpha);
                    let f = |y: f64| a * (current - y).powi(2) + b * (d - y).powi(2);
                    let h = 1e-4 * x.abs().max(1.0);
                    let fd = (f(x + h) - f(x - h)) / (2.0 * h);
                    // size of the two gradient terms that cancel at the optimum
                    let scale = 2.0 * a * (current - x).abs() + 2.0 * b * (d - x).abs() + 2.0 * (a + b) * h;
                    worst = worst.max(fd.abs() / scale);
                }
            }
        }
    }
    outcome(points == 1000 && worst <= 1e-6, format!("{points} points, max relative derivative {worst:.2e}"))
}

fn c5_alpha_zero() -> Outcome {
    let mut compared = 0;
    let mut identical = 0;
    for g in [generators::path(15), generators::grid(6, 7)] {
        let d = bfs_all_pairs(&g);
        for seed in 0..10 {
            let params = SgdParams::default().with_seed(seed);
            let Ok(daf) = full_sgd(&g, &d, AdjustParams::from_k(0).unwrap(), &params) else {
                return outcome(false, "DAF run failed");
            };
            let reference = reference_full_sgd(&g, &d, params.iterations, params.eps, seed);
            compared += 1;
            let same = daf.coords().iter().zip(&reference).all(|(a, b)| a.to_bits() == b.to_bits());
            identical += usize::from(same);
        }
    }
    outcome(identical == compared, format!("{identical}/{compared} layouts bit-identical to the reference SGD"))
}

fn c6_clamp() -> Outcome {
    let g = generators::grid(12, 12);
    let mut violations = 0usize;
    let mut checked = 0usize;
    for seed in 0..10 {
        let params = SgdParams::default().with_seed(seed);
        let Ok(pivots) = choose_pivots(&g, 30, &mut pivot_rng(seed)) else {
            return outcome(false, "pivot selection failed");
        };
        let sparse = sparse_shortest_paths(&g, &pivots);
        let adjust = AdjustParams::from_k(1 + seed as u32).unwrap();
        let run = sparse_sgd_observed(&g, &sparse, adjust, &params, &mut |r| {
            for (&d, &a) in r.original.iter().zip(r.adjusted) {
                checked += 1;
                if !(a >= params.d_min && a <= d) {
                    violations += 1;
                }
            }
        });
        if run.is_err() {
            return outcome(false, "DAS run failed");
        }
    }
    outcome(violations == 0 && checked > 0, format!("{violations} violations in {checked} adjusted distances"))
}

fn rigid(x: &Layout, theta: f64, tx: f64, ty: f64) -> Layout {
    let (s, c) = theta.sin_cos();
    x.map_points(|p| vec![c * p[0] - s * p[1] + tx, s * p[0] + c * p[1] + ty]).unwrap()
}

fn c7_metric_oracles() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    let mut cn_bad = 0;
    for _ in 0..200 {
        let n = rng.gen_range(4..24);
        let m = rng.gen_range(n - 1..=50.min(n * (n - 1) / 2));
        let g = generators::random_connected(n, m, &mut rng);
        let x = fuzz_layout(n, &mut rng);
        cn_bad += usize::from(crossing_number(&x, &g) != oracle_crossings(&x, &g));
    }
    let mut np_bad = 0;
    for _ in 0..200 {
        let n = rng.gen_range(2..=30);
        let m = rng.gen_range(n - 1..=(3 * n).min(n * (n - 1) / 2));
        let g = generators::random_connected(n, m, &mut rng);
        let x = fuzz_layout(n, &mut rng);
        np_bad += usize::from(neighborhood_preservation(&x, &g) != oracle_np(&x, &g));
    }
    let mut rigid_worst = 0.0f64;
    for _ in 0..100 {
        let n = rng.gen_range(2..30);
        let m = rng.gen_range(n - 1..=(2 * n).min(n * (n - 1) / 2));
        let g = generators::random_connected(n, m, &mut rng);
        let pts: Vec<[f64; 2]> = (0..n).map(|_| [rng.gen_range(-5.0..5.0), rng.gen_range(-5.0..5.0)]).collect();
        let x = Layout::from_points(&pts).unwrap();
        let y = rigid(
            &x,
            rng.gen_range(0.0..std::f64::consts::TAU),
            rng.gen_range(-50.0..50.0),
            rng.gen_range(-50.0..50.0),
        );
        let d = bfs_all_pairs(&g);
        let (a, b) = (full_report(&x, &g, &d).unwrap(), full_report(&y, &g, &d).unwrap());
        for (u, v) in a.values().into_iter().zip(b.values()) {
            rigid_worst = rigid_worst.max((u - v).abs() / u.abs().max(v.abs()).max(1.0));
        }
    }
    outcome(
        cn_bad == 0 && np_bad == 0 && rigid_worst <= 1e-8,
        format!(
            "crossing mismatches {cn_bad}/200, NP mismatches {np_bad}/200, max rigid-motion change {rigid_worst:.1e} over {} metrics",
            QualityReport::FIELDS.len()
        ),
    )
}

fn directional(g: &Graph, name: &str, pivots: usize) -> (bool, String) {
    let d = bfs_all_pairs(g);
    let run = |method: Method, k: u32| -> (f64, f64) {
        let mut s = Vec::new();
        let mut gb = Vec::new();
        for seed in 0..20 {
            let params = SgdParams::default().with_seed(seed);
            let adjust = AdjustParams::from_k(k).unwrap();
            let x = match method {
                Method::Daf => full_sgd(g, &d, adjust, &params),
                _ => das_sgd(g, pivots, adjust, &params),
            }
            .unwrap();
            s.push(stress(&x, &d));
            gb.push(dalayout::metrics::gabriel_property(&x, g));
        }
        (median(s), median(gb))
    };
    let (das0, das_gb0) = run(Method::Das, 0);
    let (_, das_gb5) = run(Method::Das, 5);
    let (das9, _) = run(Method::Das, 9);
    let (daf0, _) = run(Method::Daf, 0);
    let (daf9, _) = run(Method::Daf, 9);
    let pass = das9 >= das0 && daf9 >= daf0 && das_gb5 <= das_gb0;
    (
        pass,
        format!(
            "{name}: stress k=0/9 DAS {das0:.1}/{das9:.1}, DAF {daf0:.1}/{daf9:.1}; DAS gb k=0/5 {das_gb0:.3}/{das_gb5:.3}"
        ),
    )
}

fn c8_trends() -> Outcome {
    let (mut pass, mut detail) = directional(&generators::grid(16, 16), "grid16x16", 200);
    if let Some(g) = fixture("dwt_1005.mtx") {
        let (p, d) = directional(&g, "dwt_1005", 200);
        pass &= p;
        detail = format!("{detail}; {d}");
    }
    outcome(pass, detail)
}

fn c9_performance() -> Outcome {
    let (g, name) = match fixture("qh882.mtx") {
        Some(g) => (g, "qh882"),
        None => (generators::random_connected(882, 1533, &mut ChaCha8Rng::seed_from_u64(882)), "882/1533 stand-in"),
    };
    let params = SgdParams::default();

    let t = Instant::now();
    let d = bfs_all_pairs(&g);
    let full = full_sgd(&g, &d, AdjustParams::none(), &params);
    let full_s = t.elapsed().as_secs_f64();

    let t = Instant::now();
    let lr = lr_sgd(&g, 50.0, &params, ReconstructionMode::Signed);
    let lr_s = t.elapsed().as_secs_f64();

    let t = Instant::now();
    let das = das_sgd(&g, 200, AdjustParams::from_k(5).unwrap(), &params);
    let das_s = t.elapsed().as_secs_f64();

    let ok = full.is_ok() && lr.is_ok() && das.is_ok();
    outcome(
        ok && full_s < 30.0 && lr_s < 300.0 && das_s < 30.0,
        format!(
            "{name} (|V| = {}, |E| = {}): full {full_s:.2} s, lr {lr_s:.1} s, das h=200 {das_s:.2} s",
            g.node_count(),
            g.edge_count()
        ),
    )
}

fn c10_determinism() -> Outcome {
    let dir = match tempfile::tempdir() {
        Ok(d) => d,
        Err(e) => return outcome(false, format!("tempdir: {e}")),
    };
    let mut identical = 0;
    let configs = [(Method::Das, vec![0, 5, 9]), (Method::Lr, vec![0, 50, 90]), (Method::Full, vec![0])];
    for (method, grid) in &configs {
        let mut files = Vec::new();
        for rep in 0..2 {
            let mut cfg = ExperimentConfig::new(
                vec![InputSpec::Generated(Generated::Grid(6, 6)), InputSpec::Generated(Generated::Claw)],
                *method,
            );
            cfg.grid = grid.clone();
            cfg.trials = 5;
            cfg.pivots = 10;
            cfg.formats = vec![RecordFormat::Csv];
            cfg.boxplots = false;
            cfg.out_dir = dir.path().join(format!("{method}_{rep}"));
            let out = run_sweep(&cfg);
            if let Err(e) = write_outputs(&cfg, &out) {
                return outcome(false, format!("write: {e}"));
            }
            files.push(std::fs::read(cfg.out_dir.join("records.csv")).unwrap_or_default());
        }
        identical += usize::from(!files[0].is_empty() && files[0] == files[1]);
    }
    outcome(identical == configs.len(), format!("{identical}/{} configs byte-identical", configs.len()))
}

type Check = fn() -> Outcome;

fn main() {
    let criteria: [(&str, Check); 10] = [
        ("MDS round-trip at p = 0", c1_round_trip),
        ("K4 spectrum", c2_k4_spectrum),
        ("claw non-Euclidean", c3_claw),
        ("adjusted distance optimality", c4_stationarity),
        ("alpha = 0 equivalence", c5_alpha_zero),
        ("DAS clamp invariant", c6_clamp),
        ("metric oracles", c7_metric_oracles),
        ("stress and gabriel trends", c8_trends),
        ("performance envelope", c9_performance),
        ("sweep determinism", c10_determinism),
    ];
    let mut failed = 0;
    let mut err = std::io::stderr().lock();
    for (k, (name, check)) in criteria.iter().enumerate() {
        let t = Instant::now();
        let o = check();
        let status = if o.pass { "PASS" } else { "FAIL" };
        failed += usize::from(!o.pass);
        writeln!(err, "{status} {:>2}. {name}: {} [{:.1} s]", k + 1, o.detail, t.elapsed().as_secs_f64()).unwrap();
    }
    writeln!(err, "acceptance: {} passed, {failed} failed", criteria.len() - failed).unwrap();
    if failed > 0 {
        std::process::exit(1);
    }
}
