use std::fs::File;
use std::io::BufWriter;
use std::path::Path;
use std::time::Instant;

use anyhow::{bail, Context, Result};
use log::info;
use ratiocut::ipc::{ipc_maximize_with, ipc_minimize_with, IpcOptions};
use ratiocut::parametric::{default_conductance_interval, default_dsp_interval, fully_parametric_with};
use ratiocut::rational::{self, int, to_decimal, to_exact};
use ratiocut::{
    build_conductance_network, build_dsp_network, greedy_pp, leftmost_breakpoint, verify_certificate,
    InputGraph, NodeSubset, ParametricNetwork, RatioResult, Rational, Sense,
};

use crate::args::{ConductanceArgs, DspArgs, EnvelopeArgs, Format, GraphArgs, GreedyppArgs, Problem};
use crate::input;
use crate::report::{write_file, ConfigEcho, RunReport, SCHEMA_VERSION};

fn path_str(p: &Option<std::path::PathBuf>) -> Option<String> {
    p.as_ref().map(|p| p.display().to_string())
}

fn dataset_name(path: &Path) -> String {
    path.file_stem()
        .map(|s| s.to_string_lossy().into_owned())
        .unwrap_or_else(|| path.display().to_string())
}

fn echo(common: &GraphArgs) -> ConfigEcho {
    ConfigEcho {
        weighted: common.weighted,
        precision: common.precision,
        node_weights: path_str(&common.node_weights),
        ..ConfigEcho::default()
    }
}

fn sorted_ids(g: &InputGraph, s: &NodeSubset) -> Vec<u64> {
    let mut ids: Vec<u64> = s.iter().map(|i| g.original_id(i)).collect();
    ids.sort_unstable();
    ids
}

fn sense_str(sense: Sense) -> String {
    match sense {
        Sense::Maximize => "max".into(),
        Sense::Minimize => "min".into(),
    }
}

/// Report fields shared by every algorithm.
#[allow(clippy::too_many_arguments)]
pub fn make_report(
    dataset: &str,
    g: &InputGraph,
    algorithm: &str,
    sense: Sense,
    ratio: Rational,
    set: &NodeSubset,
    explored: usize,
    certified: Option<bool>,
    cut_solves: usize,
    started: Instant,
    config: ConfigEcho,
) -> RunReport {
    RunReport {
        schema_version: SCHEMA_VERSION,
        dataset: dataset.to_string(),
        n: g.n(),
        m: g.m(),
        algorithm: algorithm.to_string(),
        sense: sense_str(sense),
        ratio: to_decimal(&ratio, config.precision),
        ratio_exact: to_exact(&ratio),
        set_size: set.len(),
        explored,
        certified,
        cut_solves,
        wall_time_secs: started.elapsed().as_secs_f64(),
        lambda0: None,
        set: sorted_ids(g, set),
        config,
    }
}

pub fn ipc_report(
    dataset: &str,
    g: &InputGraph,
    algorithm: &str,
    r: &RatioResult,
    started: Instant,
    config: ConfigEcho,
) -> RunReport {
    let mut rep = make_report(
        dataset,
        g,
        algorithm,
        r.sense,
        r.ratio,
        &r.optimal_set,
        r.explored(),
        Some(r.certified),
        r.cut_solve_count,
        started,
        config,
    );
    rep.lambda0 = r.trace.first().map(|s| to_exact(&s.lambda));
    rep
}

/// Prints the report in the requested format and writes side files.
fn emit(rep: &RunReport, common: &GraphArgs, side: &[(&str, Vec<u8>)]) -> Result<()> {
    match common.format {
        Format::Json => println!("{}", rep.to_json()),
        Format::Csv => print!("{}", rep.to_csv()),
        Format::Table => print!("{}", rep.to_table()),
    }
    if let Some(dir) = &common.output {
        write_file(dir, "report.json", &rep.to_json())?;
        for (name, bytes) in side {
            write_file(dir, name, &String::from_utf8_lossy(bytes))?;
        }
    }
    Ok(())
}

fn dump_dimacs(net: &ParametricNetwork, lambda: Rational, path: &Path) -> Result<()> {
    let inst = net.instantiate(lambda)?;
    let f = File::create(path).with_context(|| format!("creating {}", path.display()))?;
    inst.write_dimacs(BufWriter::new(f))?;
    info!("wrote network at λ = {lambda} to {}", path.display());
    Ok(())
}

fn load(common: &GraphArgs) -> Result<InputGraph> {
    let g = input::load_graph(&common.graph, common.weighted, common.node_weights.as_deref())?;
    info!("loaded {}: n = {}, m = {}", common.graph.display(), g.n(), g.m());
    Ok(g)
}

pub fn cmd_dsp(args: &DspArgs) -> Result<RunReport> {
    let started = Instant::now();
    let common = &args.common;
    let g = load(common)?;
    let start = match &args.start_ids {
        Some(p) => Some(input::ids_to_set(&g, &input::read_id_list(p)?, "start set")?),
        None => None,
    };
    if let Some(path) = &args.dump_dimacs {
        let s0 = start.clone().unwrap_or_else(|| NodeSubset::full(g.n()));
        dump_dimacs(&build_dsp_network(&g), g.density(&s0)?, path)?;
    }
    let r = ipc_maximize_with(&g, &IpcOptions { start })?;
    let mut config = echo(common);
    config.start_ids = path_str(&args.start_ids);
    let rep = ipc_report(&dataset_name(&common.graph), &g, "ipc", &r, started, config);
    let mut trace = Vec::new();
    r.write_trace_csv(&mut trace, common.precision)?;
    emit(&rep, common, &[("trace.csv", trace)])?;
    Ok(rep)
}

pub fn cmd_conductance_star(args: &ConductanceArgs) -> Result<RunReport> {
    let started = Instant::now();
    let common = &args.common;
    let (g, seed) = input::conductance_input(
        load(common)?,
        args.seeds.partition.as_deref(),
        args.seeds.seed_ids.as_deref(),
        args.seeds.component.as_deref(),
        common.node_weights.is_some(),
    )?;
    info!("seed set has {} of {} nodes", seed.len(), g.n());
    if let Some(path) = &args.dump_dimacs {
        let v0 = seed.complement();
        let net = build_conductance_network(&g, &seed)?;
        dump_dimacs(&net, g.conductance_star_value(&v0, &v0)?, path)?;
    }
    let r = ipc_minimize_with(&g, &seed, &IpcOptions::default())?;
    let certified = r.certified && verify_certificate(&g, &r.optimal_set, Sense::Minimize, Some(&seed))?;
    let mut config = echo(common);
    config.partition = path_str(&args.seeds.partition);
    config.seed_ids = path_str(&args.seeds.seed_ids);
    config.component = args.seeds.component.clone();
    let mut rep = ipc_report(&dataset_name(&common.graph), &g, "ipc", &r, started, config);
    rep.certified = Some(certified);
    let mut trace = Vec::new();
    r.write_trace_csv(&mut trace, common.precision)?;
    emit(&rep, common, &[("trace.csv", trace)])?;
    Ok(rep)
}

pub fn cmd_envelope(args: &EnvelopeArgs) -> Result<RunReport> {
    let started = Instant::now();
    let common = &args.common;
    let g = load(common)?;
    let (g, net, default) = match args.problem {
        Problem::Dsp => {
            let (_, hi) = default_dsp_interval(&g)?;
            let net = build_dsp_network(&g);
            (g, net, (int(0), hi))
        }
        Problem::ConductanceStar => {
            let (g, seed) = input::conductance_input(
                g,
                args.seeds.partition.as_deref(),
                args.seeds.seed_ids.as_deref(),
                args.seeds.component.as_deref(),
                common.node_weights.is_some(),
            )?;
            let net = build_conductance_network(&g, &seed)?;
            (g, net, default_conductance_interval())
        }
    };
    let (lo, hi) = match &args.interval {
        Some(v) => (rational::parse(&v[0])?, rational::parse(&v[1])?),
        None => default,
    };
    if lo > hi {
        bail!("--interval lower end {lo} exceeds upper end {hi}");
    }
    let env = fully_parametric_with(&net, lo, hi, rational::precision(common.precision))?;
    info!("{} breakpoints, {} cut solves", env.len(), env.cut_solves);
    let best = leftmost_breakpoint(&env)?;
    let ratio = best.ratio().expect("breakpoint sets have positive budget");
    let mut config = echo(common);
    config.partition = path_str(&args.seeds.partition);
    config.seed_ids = path_str(&args.seeds.seed_ids);
    config.component = args.seeds.component.clone();
    config.interval = Some([to_exact(&lo), to_exact(&hi)]);
    let rep = make_report(
        &dataset_name(&common.graph),
        &g,
        "envelope",
        env.sense,
        ratio,
        &best.source_set,
        env.len(),
        None,
        env.cut_solves,
        started,
        config,
    );
    let mut csv = Vec::new();
    env.write_csv(&mut csv, common.precision)?;
    match common.format {
        Format::Json => println!("{}", rep.to_json()),
        Format::Csv | Format::Table => print!("{}", String::from_utf8_lossy(&csv)),
    }
    if let Some(dir) = &common.output {
        write_file(dir, "report.json", &rep.to_json())?;
        write_file(dir, "envelope.csv", &String::from_utf8_lossy(&csv))?;
    }
    Ok(rep)
}

fn peel(common: &GraphArgs, passes: usize, algorithm: &str) -> Result<RunReport> {
    let started = Instant::now();
    let g = load(common)?;
    let t = greedy_pp(&g, passes)?;
    let mut config = echo(common);
    if algorithm != "greedy" {
        config.iterations = Some(passes);
    }
    let rep = make_report(
        &dataset_name(&common.graph),
        &g,
        algorithm,
        Sense::Maximize,
        t.best_density,
        &t.best_set,
        passes,
        None,
        0,
        started,
        config,
    );
    let mut csv = Vec::new();
    t.write_csv(&mut csv, common.precision)?;
    emit(&rep, common, &[("peel.csv", csv)])?;
    Ok(rep)
}

pub fn cmd_greedy(args: &GraphArgs) -> Result<RunReport> {
    peel(args, 1, "greedy")
}

pub fn cmd_greedypp(args: &GreedyppArgs) -> Result<RunReport> {
    peel(&args.common, args.iterations, &format!("greedypp:{}", args.iterations))
}
