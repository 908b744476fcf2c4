//! Reading graphs, node weights, seed sets and partitions from disk.

use std::fs::File;
use std::io::{BufRead, BufReader};
use std::path::Path;

use anyhow::{bail, Context, Result};
use ratiocut::{load_edge_list, InputGraph, NodeSubset};

fn open(path: &Path) -> Result<BufReader<File>> {
    let f = File::open(path).with_context(|| format!("cannot open {}", path.display()))?;
    Ok(BufReader::new(f))
}

pub fn load_graph(path: &Path, weighted: bool, node_weights: Option<&Path>) -> Result<InputGraph> {
    let mut g = load_edge_list(open(path)?, weighted)
        .with_context(|| format!("reading {}", path.display()))?;
    if let Some(nw) = node_weights {
        g.load_node_weights(open(nw)?)
            .with_context(|| format!("reading node weights from {}", nw.display()))?;
    }
    Ok(g)
}

fn data_lines(reader: impl BufRead) -> impl Iterator<Item = (usize, std::io::Result<String>)> {
    reader.lines().enumerate().map(|(i, l)| (i + 1, l))
}

fn is_skippable(line: &str) -> bool {
    let t = line.trim();
    t.is_empty() || t.starts_with('#') || t.starts_with('%')
}

/// Original node ids, one per line.
pub fn read_id_list(path: &Path) -> Result<Vec<u64>> {
    let mut ids = Vec::new();
    for (no, line) in data_lines(open(path)?) {
        let line = line?;
        if is_skippable(&line) {
            continue;
        }
        let tok = line.split_whitespace().next().unwrap_or_default();
        let id = tok
            .parse()
            .with_context(|| format!("{}:{no}: bad node id {tok:?}", path.display()))?;
        ids.push(id);
    }
    Ok(ids)
}

/// Set of the nodes with the given original ids.
pub fn ids_to_set(g: &InputGraph, ids: &[u64], what: &str) -> Result<NodeSubset> {
    let index = g.id_index();
    let mut s = NodeSubset::empty(g.n());
    for id in ids {
        let Some(&i) = index.get(id) else {
            bail!("{what} lists node {id}, which is not in the graph");
        };
        s.insert(i);
    }
    Ok(s)
}

/// Seed set from a METIS partition file: the largest part, ties to the
/// smallest part label. Line `i` is the part of the node with the `i`-th
/// smallest original id, which for ids `0..n` is node `i`.
pub fn read_partition(path: &Path, g: &InputGraph) -> Result<NodeSubset> {
    let mut parts = Vec::with_capacity(g.n());
    for (no, line) in data_lines(open(path)?) {
        let line = line?;
        if is_skippable(&line) {
            continue;
        }
        let t = line.trim();
        let p: u64 = t
            .parse()
            .with_context(|| format!("{}:{no}: bad part label {t:?}", path.display()))?;
        parts.push(p);
    }
    partition_seed(g, &parts)
}

pub fn partition_seed(g: &InputGraph, parts: &[u64]) -> Result<NodeSubset> {
    if parts.len() != g.n() {
        bail!(
            "partition has {} entries but the graph has {} nodes",
            parts.len(),
            g.n()
        );
    }
    let mut by_id: Vec<usize> = (0..g.n()).collect();
    by_id.sort_by_key(|&i| g.original_id(i));
    let mut sizes = std::collections::BTreeMap::<u64, usize>::new();
    for &p in parts {
        *sizes.entry(p).or_default() += 1;
    }
    let (&largest, _) = sizes
        .iter()
        .max_by(|a, b| a.1.cmp(b.1).then(b.0.cmp(a.0)))
        .expect("partition is nonempty");
    let seed = NodeSubset::from_members(
        g.n(),
        by_id
            .iter()
            .zip(parts)
            .filter(|(_, &p)| p == largest)
            .map(|(&i, _)| i),
    );
    if seed.len() == g.n() {
        bail!("partition has a single part, so V0 (the nodes outside the seed) is empty");
    }
    Ok(seed)
}

/// The component named by `spec` (`largest` or an original node id).
pub fn component(g: &InputGraph, spec: &str) -> Result<NodeSubset> {
    let labels = g.components();
    let target = if spec == "largest" {
        let k = labels.iter().max().map_or(0, |&m| m + 1);
        let mut size = vec![0usize; k];
        for &c in &labels {
            size[c] += 1;
        }
        (0..k).max_by(|&a, &b| size[a].cmp(&size[b]).then(b.cmp(&a))).unwrap_or(0)
    } else {
        let id: u64 = spec
            .parse()
            .with_context(|| format!("--component expects `largest` or a node id, got {spec:?}"))?;
        let set = ids_to_set(g, &[id], "--component")?;
        let v = set.iter().next().expect("one id");
        labels[v]
    };
    Ok(NodeSubset::from_members(
        g.n(),
        (0..g.n()).filter(|&i| labels[i] == target),
    ))
}

/// Graph and seed set for a conductance* run.
///
/// The seed comes from the partition or id list over the whole graph and is
/// then restricted to the selected component. Node weights become degrees
/// unless a weight file was given.
pub fn conductance_input(
    g: InputGraph,
    partition: Option<&Path>,
    seed_ids: Option<&Path>,
    component_spec: Option<&str>,
    keep_node_weights: bool,
) -> Result<(InputGraph, NodeSubset)> {
    let seed = match (partition, seed_ids) {
        (Some(p), _) => read_partition(p, &g)?,
        (None, Some(s)) => ids_to_set(&g, &read_id_list(s)?, "seed file")?,
        (None, None) => bail!("conductance* needs --partition or --seed-ids"),
    };
    let (mut g2, seed2) = match component_spec {
        Some(spec) => {
            let comp = component(&g, spec)?;
            let seed2 = NodeSubset::from_members(
                comp.len(),
                comp.iter().enumerate().filter(|&(_, v)| seed.contains(v)).map(|(i, _)| i),
            );
            (g.induced(&comp), seed2)
        }
        None => {
            if !g.is_connected() {
                bail!(
                    "graph is disconnected: any component without seed nodes has conductance* 0, \
                     so the optimum is trivial; pass --component largest (or a node id) to \
                     restrict the run to one component"
                );
            }
            (g, seed)
        }
    };
    if seed2.is_empty() {
        bail!("no seed node lies in the selected component");
    }
    if seed2.len() == g2.n() {
        bail!("every node of the selected component is a seed, so V0 is empty");
    }
    if !keep_node_weights {
        g2.use_degree_weights()?;
    }
    Ok((g2, seed2))
}
