//! Manifest-driven benchmark runs with a per-dataset summary of ratio, gap and slowdown.
//!
//! ```toml
//! repetitions = 3
//! workers = 4
//! precision = 4
//! algorithms = ["ipc", "greedypp:100", "envelope"]
//!
//! [[datasets]]
//! name = "ego-facebook"        # file looked up in the dataset registry
//!
//! [[datasets]]
//! name = "close-cliques"       # generated in memory
//!
//! [[datasets]]
//! name = "my-graph"
//! path = "graphs/my.txt"       # relative to data_dir
//! weighted = true
//! ```

use std::fmt::Write as _;
use std::path::{Path, PathBuf};
use std::time::Instant;

use anyhow::{anyhow, bail, Context, Result};
use log::{info, warn};
use rayon::prelude::*;
use ratiocut::ipc::ipc_maximize;
use ratiocut::parametric::{default_dsp_interval, fully_parametric_with};
use ratiocut::rational::{self, int, ratio, to_decimal, Rational};
use ratiocut::{build_dsp_network, greedy_pp, leftmost_breakpoint, InputGraph, Sense};
use serde::{Deserialize, Serialize};

use crate::commands::{ipc_report, make_report};
use crate::datasets;
use crate::report::{write_file, ConfigEcho, RunReport};

#[derive(Debug, Clone, Default, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Manifest {
    #[serde(default)]
    pub repetitions: Option<usize>,
    #[serde(default)]
    pub workers: Option<usize>,
    #[serde(default)]
    pub precision: Option<u32>,
    #[serde(default)]
    pub data_dir: Option<PathBuf>,
    #[serde(default)]
    pub algorithms: Vec<String>,
    #[serde(default)]
    pub datasets: Vec<DatasetEntry>,
}

#[derive(Debug, Clone, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct DatasetEntry {
    pub name: String,
    #[serde(default)]
    pub path: Option<PathBuf>,
    #[serde(default)]
    pub weighted: Option<bool>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Algorithm {
    Ipc,
    Greedy,
    GreedyPp(usize),
    Envelope,
}

impl Algorithm {
    pub fn parse(s: &str) -> Result<Self> {
        match s {
            "ipc" => Ok(Algorithm::Ipc),
            "greedy" => Ok(Algorithm::Greedy),
            "envelope" => Ok(Algorithm::Envelope),
            _ => {
                let k = s
                    .strip_prefix("greedypp:")
                    .and_then(|k| k.parse().ok())
                    .filter(|&k: &usize| k > 0)
                    .ok_or_else(|| anyhow!("unknown algorithm {s:?}; expected ipc, greedy, greedypp:K or envelope"))?;
                Ok(Algorithm::GreedyPp(k))
            }
        }
    }

    pub fn id(self) -> String {
        match self {
            Algorithm::Ipc => "ipc".into(),
            Algorithm::Greedy => "greedy".into(),
            Algorithm::GreedyPp(k) => format!("greedypp:{k}"),
            Algorithm::Envelope => "envelope".into(),
        }
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct CellResult {
    pub dataset: String,
    pub algorithm: String,
    pub ok: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub error: Option<String>,
    /// Median solve time over the repetitions, excluding graph loading.
    pub solve_secs: f64,
    pub load_secs: f64,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub report: Option<RunReport>,
}

#[derive(Debug, Clone, Serialize)]
pub struct SummaryRow {
    pub dataset: String,
    pub algorithm: String,
    pub status: String,
    pub ratio: String,
    pub ratio_exact: String,
    pub explored: Option<usize>,
    pub solve_secs: f64,
    /// Relative gap to the IPC optimum, percent.
    pub gap_percent: Option<String>,
    /// Solve time divided by IPC's.
    pub sdf: Option<f64>,
}

#[derive(Debug, Clone, Serialize)]
pub struct BenchSummary {
    pub cells: Vec<CellResult>,
    pub rows: Vec<SummaryRow>,
}

impl BenchSummary {
    pub fn all_ok(&self) -> bool {
        self.cells.iter().all(|c| c.ok)
    }
}

struct Source {
    name: String,
    path: Option<PathBuf>,
    weighted: bool,
}

fn resolve(entry: &DatasetEntry, data_dir: &Path) -> Source {
    let known = datasets::lookup(&entry.name);
    let path = match (&entry.path, known) {
        (Some(p), _) => Some(data_dir.join(p)),
        (None, Some(d)) => Some(data_dir.join(d.file)),
        (None, None) => None,
    };
    Source {
        name: entry.name.clone(),
        path,
        weighted: entry.weighted.or(known.map(|d| d.weighted)).unwrap_or(false),
    }
}

fn load_source(src: &Source) -> Result<InputGraph> {
    if let Some(g) = datasets::generated(&src.name) {
        return Ok(g);
    }
    let path = src
        .path
        .as_ref()
        .ok_or_else(|| anyhow!("dataset {:?} has no path and is not a known dataset", src.name))?;
    if !path.exists() {
        bail!("dataset file {} is missing", path.display());
    }
    crate::input::load_graph(path, src.weighted, None)
}

fn median(mut xs: Vec<f64>) -> f64 {
    xs.sort_by(f64::total_cmp);
    xs[xs.len() / 2]
}

fn run_cell(src: &Source, alg: Algorithm, reps: usize, precision: u32) -> CellResult {
    let mut cell = CellResult {
        dataset: src.name.clone(),
        algorithm: alg.id(),
        ok: false,
        error: None,
        solve_secs: 0.0,
        load_secs: 0.0,
        report: None,
    };
    let loaded = Instant::now();
    let g = match load_source(src) {
        Ok(g) => g,
        Err(e) => {
            cell.error = Some(format!("{e:#}"));
            return cell;
        }
    };
    cell.load_secs = loaded.elapsed().as_secs_f64();
    let config = ConfigEcho {
        weighted: src.weighted,
        precision,
        iterations: match alg {
            Algorithm::GreedyPp(k) => Some(k),
            _ => None,
        },
        ..ConfigEcho::default()
    };
    let mut times = Vec::with_capacity(reps);
    let mut last = None;
    for _ in 0..reps {
        let started = Instant::now();
        let rep = run_algorithm(&g, &src.name, alg, precision, config.clone(), started);
        times.push(started.elapsed().as_secs_f64());
        match rep {
            Ok(r) => last = Some(r),
            Err(e) => {
                cell.error = Some(format!("{e:#}"));
                return cell;
            }
        }
    }
    cell.solve_secs = median(times);
    let rep = last.expect("at least one repetition");
    cell.ok = rep.certified != Some(false);
    if !cell.ok {
        cell.error = Some("result not certified".into());
    }
    cell.report = Some(rep);
    cell
}

fn run_algorithm(
    g: &InputGraph,
    name: &str,
    alg: Algorithm,
    precision: u32,
    config: ConfigEcho,
    started: Instant,
) -> Result<RunReport> {
    Ok(match alg {
        Algorithm::Ipc => {
            let r = ipc_maximize(g)?;
            ipc_report(name, g, "ipc", &r, started, config)
        }
        Algorithm::Greedy | Algorithm::GreedyPp(_) => {
            let passes = if let Algorithm::GreedyPp(k) = alg { k } else { 1 };
            let t = greedy_pp(g, passes)?;
            make_report(
                name, g, &alg.id(), Sense::Maximize, t.best_density, &t.best_set, passes, None, 0,
                started, config,
            )
        }
        Algorithm::Envelope => {
            let (_, hi) = default_dsp_interval(g)?;
            let env = fully_parametric_with(&build_dsp_network(g), int(0), hi, rational::precision(precision))?;
            let best = leftmost_breakpoint(&env)?;
            let r = best.ratio().expect("breakpoint sets have positive budget");
            make_report(
                name, g, "envelope", Sense::Maximize, r, &best.source_set, env.len(), None,
                env.cut_solves, started, config,
            )
        }
    })
}

fn summarize(cells: &[CellResult]) -> Vec<SummaryRow> {
    cells
        .iter()
        .map(|c| {
            let ipc = cells
                .iter()
                .find(|o| o.dataset == c.dataset && o.algorithm == "ipc" && o.ok);
            let exact = |c: &CellResult| {
                c.report
                    .as_ref()
                    .and_then(|r| rational::parse(&r.ratio_exact).ok())
            };
            let (gap, sdf) = match (ipc, exact(c)) {
                (Some(base), Some(mine)) if c.ok => {
                    let opt: Rational = exact(base).expect("ipc cell has a report");
                    let gap = if opt == int(0) {
                        None
                    } else {
                        Some(to_decimal(&((opt - mine) / opt * ratio(100, 1)), 2))
                    };
                    let sdf = (base.solve_secs > 0.0).then(|| c.solve_secs / base.solve_secs);
                    (gap, sdf)
                }
                _ => (None, None),
            };
            let rep = c.report.as_ref();
            SummaryRow {
                dataset: c.dataset.clone(),
                algorithm: c.algorithm.clone(),
                status: if c.ok { "ok".into() } else { format!("failed: {}", c.error.clone().unwrap_or_default()) },
                ratio: rep.map(|r| r.ratio.clone()).unwrap_or_default(),
                ratio_exact: rep.map(|r| r.ratio_exact.clone()).unwrap_or_default(),
                explored: rep.map(|r| r.explored),
                solve_secs: c.solve_secs,
                gap_percent: gap,
                sdf,
            }
        })
        .collect()
}

fn summary_table(rows: &[SummaryRow]) -> String {
    let mut out = String::from("| dataset | algorithm | ratio | explored | time (s) | gap | SDF | status |\n");
    out.push_str("|---|---|---|---|---|---|---|---|\n");
    for r in rows {
        let _ = writeln!(
            out,
            "| {} | {} | {} | {} | {:.3} | {} | {} | {} |",
            r.dataset,
            r.algorithm,
            r.ratio,
            r.explored.map_or(String::new(), |e| e.to_string()),
            r.solve_secs,
            r.gap_percent.as_ref().map_or(String::new(), |g| format!("{g}%")),
            r.sdf.map_or(String::new(), |s| format!("{s:.2}x")),
            r.status
        );
    }
    out
}

fn summary_csv(rows: &[SummaryRow]) -> String {
    let mut out = String::from("dataset,algorithm,ratio,ratio_exact,explored,solve_secs,gap_percent,sdf,status\n");
    for r in rows {
        let _ = writeln!(
            out,
            "{},{},{},{},{},{:.6},{},{},{}",
            r.dataset,
            r.algorithm,
            r.ratio,
            r.ratio_exact,
            r.explored.map_or(String::new(), |e| e.to_string()),
            r.solve_secs,
            r.gap_percent.clone().unwrap_or_default(),
            r.sdf.map_or(String::new(), |s| format!("{s:.4}")),
            r.status.replace(',', ";")
        );
    }
    out
}

pub fn load_manifest(path: &Path) -> Result<Manifest> {
    let text = std::fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))?;
    toml::from_str(&text).with_context(|| format!("parsing manifest {}", path.display()))
}

/// Runs every (dataset, algorithm) cell and writes reports under `out`.
pub fn run_manifest(manifest: &Manifest, base: &Path, out: &Path, workers: Option<usize>) -> Result<BenchSummary> {
    let algorithms = manifest
        .algorithms
        .iter()
        .map(|a| Algorithm::parse(a))
        .collect::<Result<Vec<_>>>()?;
    let reps = manifest.repetitions.unwrap_or(1).max(1);
    let precision = manifest.precision.unwrap_or(4);
    let data_dir = manifest
        .data_dir
        .as_ref()
        .map(|d| base.join(d))
        .unwrap_or_else(datasets::data_dir);
    let sources: Vec<Source> = manifest.datasets.iter().map(|d| resolve(d, &data_dir)).collect();
    let cells: Vec<(&Source, Algorithm)> = sources
        .iter()
        .flat_map(|s| algorithms.iter().map(move |&a| (s, a)))
        .collect();

    let mut pool = rayon::ThreadPoolBuilder::new();
    if let Some(w) = workers.or(manifest.workers) {
        pool = pool.num_threads(w.max(1));
    }
    let pool = pool.build().context("starting the worker pool")?;
    let results: Vec<CellResult> = pool.install(|| {
        cells
            .par_iter()
            .map(|&(src, alg)| {
                info!("running {} on {}", alg.id(), src.name);
                let r = run_cell(src, alg, reps, precision);
                if let Some(e) = &r.error {
                    warn!("{} on {} failed: {e}", r.algorithm, r.dataset);
                }
                r
            })
            .collect()
    });

    let rows = summarize(&results);
    std::fs::create_dir_all(out).with_context(|| format!("creating {}", out.display()))?;
    for c in &results {
        if let Some(rep) = &c.report {
            let name = format!("{}__{}.json", c.dataset, c.algorithm.replace(':', "-"));
            write_file(&out.join("cells"), &name, &rep.to_json())?;
        }
    }
    let summary = BenchSummary { cells: results, rows };
    write_file(out, "summary.md", &summary_table(&summary.rows))?;
    write_file(out, "summary.csv", &summary_csv(&summary.rows))?;
    write_file(out, "summary.json", &serde_json::to_string_pretty(&summary)?)?;
    print!("{}", summary_table(&summary.rows));
    Ok(summary)
}
