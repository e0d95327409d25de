//! Seeded generators for every structure the tests exercise.
//!
//! All randomness comes from `ChaCha8Rng::seed_from_u64(seed)`, so equal
//! specs give byte-identical graph files.

use std::fmt;
use std::str::FromStr;

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use sha2::{Digest, Sha256};
use thiserror::Error;

use crate::format::write_graph;
use crate::graph::{Graph, VertexId};
use crate::pattern::{class_member_through, is_class_member};

/// Recorded in corpus manifests next to every seed.
pub const PRNG_NAME: &str = "ChaCha8Rng";
pub const REJECTION_BUDGET: usize = 10_000;
/// A vertex that cannot be placed after this many draws is dropped.
const PER_VERTEX_TRIES: usize = 40;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum GenError {
    #[error("{family}: no acceptable instance within {attempts} attempts")]
    GenerationFailed { family: String, attempts: usize },
    #[error("invalid generator parameters: {0}")]
    InvalidParams(String),
}

fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

fn vid(s: String) -> VertexId {
    VertexId::new(s).expect("generated ids are well formed")
}

fn build(names: &[String], edges: &[(usize, usize)]) -> Graph {
    let pairs: Vec<(VertexId, VertexId)> =
        edges.iter().map(|&(a, b)| (vid(names[a].clone()), vid(names[b].clone()))).collect();
    let all: Vec<VertexId> = names.iter().map(|s| vid(s.clone())).collect();
    Graph::from_edge_list(&pairs, &all).expect("generators never emit loops")
}

/// Random bipartite graph with nested neighbourhoods between `x1..` and `y1..`.
pub fn gen_chain(px: usize, py: usize, seed: u64) -> Graph {
    let mut r = rng(seed);
    let mut names: Vec<String> = (1..=px).map(|i| format!("x{i}")).collect();
    names.extend((1..=py).map(|j| format!("y{j}")));
    let mut ys: Vec<usize> = (px..px + py).collect();
    ys.shuffle(&mut r);
    let mut edges = Vec::new();
    for x in 0..px {
        let t = r.gen_range(0..=py);
        edges.extend(ys[..t].iter().map(|&y| (x, y)));
    }
    build(&names, &edges)
}

/// The 3-chain on `a1..ap`, `b1..bp`, `c1..cp`.
pub fn gen_3chain(p: usize) -> Graph {
    let mut names = Vec::new();
    for part in ["a", "b", "c"] {
        names.extend((1..=p).map(|i| format!("{part}{i}")));
    }
    let (a, b, c) = (|i: usize| i, |j: usize| p + j, |k: usize| 2 * p + k);
    let mut edges = Vec::new();
    for i in 0..p {
        for j in 0..p {
            if j <= i {
                edges.push((a(i), b(j)));
            }
            if j >= i {
                edges.push((a(i), c(j)));
            }
            if j > i {
                edges.push((c(i), b(j)));
            }
        }
    }
    build(&names, &edges)
}

/// The cycle `v1 - v2 - ... - vn - v1`.
pub fn gen_cycle(n: usize) -> Result<Graph, GenError> {
    if n < 3 {
        return Err(GenError::InvalidParams(format!("cycle length {n} < 3")));
    }
    let names: Vec<String> = (1..=n).map(|i| format!("v{i}")).collect();
    let edges: Vec<(usize, usize)> = (0..n).map(|i| (i, (i + 1) % n)).collect();
    Ok(build(&names, &edges))
}

/// Populations around a C5 frame: `ones[i]` vertices seeing only `v_{i+1}`,
/// `twos[c]` vertices seeing `v_{c+1}` and `v_{c+3}`.
#[derive(Debug, Clone, PartialEq)]
pub struct C5Spec {
    pub ones: [usize; 5],
    pub twos: [usize; 5],
    /// Edge probability for free pairs in the Bernoulli mode.
    pub density: f64,
    pub seed: u64,
}

impl C5Spec {
    /// `extra` off-frame vertices spread over the ten classes at random.
    pub fn sized(extra: usize, seed: u64) -> C5Spec {
        let mut r = rng(seed ^ 0x5eed_c5c5);
        let mut counts = [0usize; 10];
        for _ in 0..extra {
            counts[r.gen_range(0..10)] += 1;
        }
        C5Spec {
            ones: std::array::from_fn(|i| counts[i]),
            twos: std::array::from_fn(|i| counts[5 + i]),
            density: 0.5,
            seed,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum Kind {
    Frame(usize),
    One(usize),
    Two(usize),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum Rule {
    Edge,
    NoEdge,
    Free,
}

fn d5(a: usize, b: usize) -> usize {
    (b + 5 - a) % 5
}

fn rule(a: Kind, b: Kind) -> Rule {
    use Kind::*;
    match (a, b) {
        (Frame(i), Frame(j)) => {
            if matches!(d5(i, j), 1 | 4) {
                Rule::Edge
            } else {
                Rule::NoEdge
            }
        }
        (Frame(f), One(i)) | (One(i), Frame(f)) => {
            if f == i {
                Rule::Edge
            } else {
                Rule::NoEdge
            }
        }
        (Frame(f), Two(c)) | (Two(c), Frame(f)) => {
            if f == c || f == (c + 2) % 5 {
                Rule::Edge
            } else {
                Rule::NoEdge
            }
        }
        (One(i), One(j)) => {
            if matches!(d5(i, j), 1 | 4) {
                Rule::Edge
            } else {
                Rule::NoEdge
            }
        }
        (One(i), Two(c)) | (Two(c), One(i)) => match d5(i, c) {
            4 => Rule::Edge,
            1 | 2 => Rule::Free,
            _ => Rule::NoEdge,
        },
        (Two(c), Two(e)) => {
            if matches!(d5(c, e), 1 | 4) {
                Rule::Free
            } else {
                Rule::NoEdge
            }
        }
    }
}

/// C5 frame `v1..v5` plus at most the requested populations, inserted one
/// vertex at a time. Pairs whose adjacency is forced by the class get it; the
/// remaining pairs are drawn at random and each insertion is rejected if it
/// creates a triangle, an induced S_{1,2,2} or a false twin. A vertex with no
/// acceptable neighbourhood (say a second `I_i` vertex with no chords to tell
/// them apart) is dropped.
pub fn gen_c5_family(spec: &C5Spec) -> Result<Graph, GenError> {
    let mut r = rng(spec.seed);
    let mut names: Vec<String> = (1..=5).map(|i| format!("v{i}")).collect();
    let mut kinds: Vec<Kind> = (0..5).map(Kind::Frame).collect();
    let mut keys: Vec<f64> = (0..5).map(|_| r.gen()).collect();
    let mut edges: Vec<(usize, usize)> = (0..5).map(|i| (i, (i + 1) % 5)).collect();
    let mut todo: Vec<Kind> = Vec::new();
    for i in 0..5 {
        todo.extend(std::iter::repeat_n(Kind::One(i), spec.ones[i]));
        todo.extend(std::iter::repeat_n(Kind::Two(i), spec.twos[i]));
    }
    todo.shuffle(&mut r);
    let mut attempts = 0;
    // A vertex that cannot be placed yet (a chord vertex with nothing to set
    // it apart from a frame vertex, say) gets one more chance at the end.
    let mut deferred = Vec::new();
    for round in 0..2 {
        for kind in std::mem::take(&mut todo) {
            let x = names.len();
            let name = match kind {
                Kind::One(i) => format!("p{}_{}", i + 1, x),
                Kind::Two(c) => format!("q{}_{}", c + 1, x),
                Kind::Frame(_) => unreachable!(),
            };
            let key: f64 = r.gen();
            let mut placed = false;
            for _ in 0..PER_VERTEX_TRIES {
                attempts += 1;
                if attempts > REJECTION_BUDGET {
                    return Err(GenError::GenerationFailed { family: "c5".into(), attempts: REJECTION_BUDGET });
                }
                let threshold_mode = r.gen_bool(0.7);
                let t: f64 = r.gen();
                let below = r.gen_bool(0.5);
                let mut new_edges = Vec::new();
                for y in 0..x {
                    let on = match rule(kind, kinds[y]) {
                        Rule::Edge => true,
                        Rule::NoEdge => false,
                        Rule::Free if threshold_mode => (keys[y] < t) == below,
                        Rule::Free => r.gen_bool(spec.density),
                    };
                    if on {
                        new_edges.push((y, x));
                    }
                }
                let mut trial_names = names.clone();
                trial_names.push(name.clone());
                let mut trial_edges = edges.clone();
                trial_edges.extend(&new_edges);
                let g = build(&trial_names, &trial_edges);
                let w = g.index_of(&vid(name.clone())).unwrap();
                let twin = (0..g.n()).any(|u| u != w && !g.adjacent(u, w) && g.row(u) == g.row(w));
                if !twin && class_member_through(&g, w) {
                    names.push(name);
                    kinds.push(kind);
                    keys.push(key);
                    edges = trial_edges;
                    placed = true;
                    break;
                }
            }
            if !placed && round == 0 {
                deferred.push(kind);
            }
        }
        todo = std::mem::take(&mut deferred);
    }
    let g = build(&names, &edges);
    if !is_class_member(&g).in_class() {
        return Err(GenError::GenerationFailed { family: "c5".into(), attempts });
    }
    Ok(g)
}

/// Random edge process on `v1..vn` that skips any edge closing a triangle or
/// an induced S_{1,2,2}; stops at `density * n(n-1)/2` edges or when every
/// pair has been tried.
pub fn gen_random_trianglefree(n: usize, density: f64, seed: u64) -> Graph {
    let mut r = rng(seed);
    let names: Vec<String> = (1..=n).map(|i| format!("v{i}")).collect();
    let mut pairs: Vec<(usize, usize)> = (0..n).flat_map(|a| (a + 1..n).map(move |b| (a, b))).collect();
    pairs.shuffle(&mut r);
    let target = (density * pairs.len() as f64).round() as usize;
    let mut edges = Vec::new();
    for (a, b) in pairs {
        if edges.len() >= target {
            break;
        }
        edges.push((a, b));
        let g = build(&names, &edges);
        let w = g.index_of(&vid(names[a].clone())).unwrap();
        if !class_member_through(&g, w) {
            edges.pop();
        }
    }
    build(&names, &edges)
}

/// A class member with nontrivial modules: a small class member whose
/// vertices are partly blown up into independent sets, sometimes next to a
/// second component. Candidates outside the class are rejected.
pub fn gen_substituted(seed: u64) -> Result<Graph, GenError> {
    let mut r = rng(seed);
    for _ in 0..REJECTION_BUDGET {
        let q = match r.gen_range(0..3) {
            0 => gen_c5_family(&C5Spec::sized(r.gen_range(2..7), r.gen()))?,
            1 => gen_cycle(2 * r.gen_range(2..5) + 1)?,
            _ => gen_random_trianglefree(r.gen_range(5..9), 0.35, r.gen()),
        };
        let mut blown: Vec<usize> = (0..q.n()).collect();
        blown.shuffle(&mut r);
        blown.truncate(r.gen_range(1..=3.min(q.n())));
        let copies = |v: usize| if blown.contains(&v) { 2 + (v % 2) } else { 1 };
        let name = |v: usize, k: usize| format!("m_{}_{k}", q.id(v));
        let mut names = Vec::new();
        let mut slot = Vec::new();
        for v in 0..q.n() {
            slot.push(names.len());
            names.extend((0..copies(v)).map(|k| name(v, k)));
        }
        let mut edges = Vec::new();
        for (u, v) in q.edges() {
            for a in 0..copies(u) {
                for b in 0..copies(v) {
                    edges.push((slot[u] + a, slot[v] + b));
                }
            }
        }
        if r.gen_bool(0.3) {
            let extra = gen_cycle(r.gen_range(4..8))?;
            let base = names.len();
            names.extend((0..extra.n()).map(|v| format!("s_{}", extra.id(v))));
            edges.extend(extra.edges().map(|(a, b)| (base + a, base + b)));
        }
        let g = build(&names, &edges);
        if is_class_member(&g).in_class() {
            return Ok(g);
        }
    }
    Err(GenError::GenerationFailed { family: "substituted".into(), attempts: REJECTION_BUDGET })
}

/// A generator call as it appears in manifests and on the command line.
#[derive(Debug, Clone, PartialEq)]
pub enum GenSpec {
    Chain { px: usize, py: usize, seed: u64 },
    ThreeChain { p: usize },
    Cycle { n: usize },
    C5 { extra: usize, seed: u64 },
    TriangleFree { n: usize, density: f64, seed: u64 },
    Substituted { seed: u64 },
}

impl GenSpec {
    pub fn parse(family: &str, params: &str, seed: u64) -> Result<GenSpec, GenError> {
        let bad = || GenError::InvalidParams(format!("{family} {params}"));
        let nums: Vec<&str> = params.split(',').collect();
        let int = |s: &str| usize::from_str(s).map_err(|_| bad());
        Ok(match (family, nums.as_slice()) {
            ("chain", [a, b]) => GenSpec::Chain { px: int(a)?, py: int(b)?, seed },
            ("3chain", [p]) => GenSpec::ThreeChain { p: int(p)? },
            ("cycle", [n]) => GenSpec::Cycle { n: int(n)? },
            ("c5", [e]) => GenSpec::C5 { extra: int(e)?, seed },
            ("trianglefree", [n, d]) => {
                let density = f64::from_str(d).map_err(|_| bad())?;
                if !(0.0..=1.0).contains(&density) {
                    return Err(bad());
                }
                GenSpec::TriangleFree { n: int(n)?, density, seed }
            }
            ("substituted", ["-"]) => GenSpec::Substituted { seed },
            _ => return Err(bad()),
        })
    }

    pub fn family(&self) -> &'static str {
        match self {
            GenSpec::Chain { .. } => "chain",
            GenSpec::ThreeChain { .. } => "3chain",
            GenSpec::Cycle { .. } => "cycle",
            GenSpec::C5 { .. } => "c5",
            GenSpec::TriangleFree { .. } => "trianglefree",
            GenSpec::Substituted { .. } => "substituted",
        }
    }

    pub fn params(&self) -> String {
        match self {
            GenSpec::Chain { px, py, .. } => format!("{px},{py}"),
            GenSpec::ThreeChain { p } => p.to_string(),
            GenSpec::Cycle { n } => n.to_string(),
            GenSpec::C5 { extra, .. } => extra.to_string(),
            GenSpec::TriangleFree { n, density, .. } => format!("{n},{density}"),
            GenSpec::Substituted { .. } => "-".into(),
        }
    }

    pub fn seed(&self) -> u64 {
        match *self {
            GenSpec::Chain { seed, .. }
            | GenSpec::C5 { seed, .. }
            | GenSpec::TriangleFree { seed, .. }
            | GenSpec::Substituted { seed } => seed,
            GenSpec::ThreeChain { .. } | GenSpec::Cycle { .. } => 0,
        }
    }

    /// File name of this instance inside a corpus directory.
    pub fn file_name(&self) -> String {
        format!("{}-{}-{}.graph", self.family(), self.params().replace(',', "_"), self.seed())
    }

    pub fn generate(&self) -> Result<Graph, GenError> {
        match *self {
            GenSpec::Chain { px, py, seed } => Ok(gen_chain(px, py, seed)),
            GenSpec::ThreeChain { p } => Ok(gen_3chain(p)),
            GenSpec::Cycle { n } => gen_cycle(n),
            GenSpec::C5 { extra, seed } => gen_c5_family(&C5Spec::sized(extra, seed)),
            GenSpec::TriangleFree { n, density, seed } => Ok(gen_random_trianglefree(n, density, seed)),
            GenSpec::Substituted { seed } => gen_substituted(seed),
        }
    }
}

impl fmt::Display for GenSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} {} {}", self.family(), self.params(), self.seed())
    }
}

pub fn sha256_hex(text: &str) -> String {
    hex::encode(Sha256::digest(text.as_bytes()))
}

/// `GEN <family> <params> <seed> <sha256-of-graph-file>`.
pub fn manifest_line(spec: &GenSpec, g: &Graph) -> String {
    format!("GEN {spec} {}", sha256_hex(&write_graph(g)))
}

/// Parses a manifest line back into its spec and recorded digest.
pub fn parse_manifest_line(line: &str) -> Result<(GenSpec, String), GenError> {
    let toks: Vec<&str> = line.split_whitespace().collect();
    match toks.as_slice() {
        ["GEN", family, params, seed, digest] => {
            let seed = seed.parse().map_err(|_| GenError::InvalidParams(line.to_string()))?;
            Ok((GenSpec::parse(family, params, seed)?, digest.to_string()))
        }
        _ => Err(GenError::InvalidParams(line.to_string())),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::chain::{recognize_chain, ChainVerdict};

    #[test]
    fn chain_is_chain() {
        for seed in 0..20 {
            let g = gen_chain(4, 5, seed);
            let x: Vec<usize> = (0..g.n()).filter(|&v| g.id(v).as_str().starts_with('x')).collect();
            let y: Vec<usize> = (0..g.n()).filter(|&v| g.id(v).as_str().starts_with('y')).collect();
            assert!(matches!(recognize_chain(&g, &x, &y), Ok(ChainVerdict::Chain(_))));
        }
    }

    #[test]
    fn three_chain_small() {
        assert_eq!(gen_3chain(1).m(), 2);
        assert_eq!(gen_3chain(2).m(), 7);
    }

    #[test]
    fn deterministic() {
        let a = gen_c5_family(&C5Spec::sized(20, 3)).unwrap();
        let b = gen_c5_family(&C5Spec::sized(20, 3)).unwrap();
        assert_eq!(write_graph(&a), write_graph(&b));
    }

    #[test]
    fn bare_c5() {
        let g = gen_c5_family(&C5Spec { ones: [0; 5], twos: [0; 5], density: 0.5, seed: 1 }).unwrap();
        assert_eq!((g.n(), g.m()), (5, 5));
    }

    #[test]
    fn manifest_round_trip() {
        let spec = GenSpec::parse("trianglefree", "20,0.2", 1).unwrap();
        let g = spec.generate().unwrap();
        let line = manifest_line(&spec, &g);
        let (back, digest) = parse_manifest_line(&line).unwrap();
        assert_eq!(back, spec);
        assert_eq!(digest, sha256_hex(&write_graph(&g)));
    }
}
