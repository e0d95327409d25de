#![allow(dead_code)]

use std::path::PathBuf;

use cwkit::format::read_graph;
use cwkit::gen::{parse_manifest_line, GenSpec};
use cwkit::{Graph, VertexId};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

pub fn id(s: &str) -> VertexId {
    VertexId::new(s).unwrap()
}

pub fn graph(pairs: &[(&str, &str)]) -> Graph {
    Graph::from_strs(pairs, &[]).unwrap()
}

pub fn petersen() -> Graph {
    let mut pairs = Vec::new();
    for i in 0..5 {
        pairs.push((id(&format!("o{i}")), id(&format!("o{}", (i + 1) % 5))));
        pairs.push((id(&format!("o{i}")), id(&format!("i{i}"))));
        pairs.push((id(&format!("i{i}")), id(&format!("i{}", (i + 2) % 5))));
    }
    Graph::from_edge_list(&pairs, &[]).unwrap()
}

/// G(n, p) on `g0..`, reproducible from `seed`.
pub fn random_graph(n: usize, p: f64, seed: u64) -> Graph {
    let mut r = ChaCha8Rng::seed_from_u64(seed);
    let ids: Vec<VertexId> = (0..n).map(|i| id(&format!("g{i}"))).collect();
    let mut pairs = Vec::new();
    for a in 0..n {
        for b in a + 1..n {
            if r.gen_bool(p) {
                pairs.push((ids[a].clone(), ids[b].clone()));
            }
        }
    }
    Graph::from_edge_list(&pairs, &ids).unwrap()
}

pub fn corpus_dir() -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("../../corpus")
}

/// Every manifest entry with its committed graph file text and digest.
pub fn corpus() -> Vec<(GenSpec, String, String)> {
    let dir = corpus_dir();
    let manifest = std::fs::read_to_string(dir.join("manifest.txt")).unwrap();
    manifest
        .lines()
        .filter(|l| !l.trim().is_empty() && !l.starts_with('#'))
        .map(|l| {
            let (spec, digest) = parse_manifest_line(l).unwrap();
            let text = std::fs::read_to_string(dir.join("graphs").join(spec.file_name())).unwrap();
            (spec, text, digest)
        })
        .collect()
}

pub fn corpus_graphs(family: &str) -> Vec<(GenSpec, Graph)> {
    corpus()
        .into_iter()
        .filter(|(s, _, _)| s.family() == family)
        .map(|(s, t, _)| (s, read_graph(&t).unwrap()))
        .collect()
}

pub fn indices(g: &Graph, prefix: &str) -> Vec<usize> {
    (0..g.n()).filter(|&v| g.id(v).as_str().starts_with(prefix)).collect()
}
