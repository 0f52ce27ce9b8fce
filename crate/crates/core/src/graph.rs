//! Undirected simple graphs in compressed adjacency form, random-graph
//! generation with prescribed degree sequences, largest-component
//! extraction and edge-list ingestion.

use std::collections::HashMap;
use std::collections::VecDeque;
use std::io::{BufRead, Write};

use rand::seq::SliceRandom;
use rand::Rng;
use rand_distr::{Distribution, Poisson};

use crate::error::{Error, Result};

/// Immutable undirected simple graph.
///
/// Vertices are `0..n`, contiguous. The adjacency of vertex `v` lives in
/// `adjacency[offsets[v]..offsets[v + 1]]`, sorted ascending, with no
/// self-loops and no duplicates. Every edge appears in both endpoint lists,
/// so the adjacency is symmetric by construction.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Graph {
    offsets: Vec<usize>,
    adjacency: Vec<u32>,
    edge_count: usize,
}

impl Graph {
    /// Builds a graph on `n` vertices from an undirected edge list.
    ///
    /// Self-loops and duplicate edges are silently dropped, projecting any
    /// multigraph input onto its simple-graph support.
    ///
    /// Panics if an endpoint is `>= n`.
    pub fn from_edges(n: usize, edges: &[(u32, u32)]) -> Graph {
        let mut pairs: Vec<(u32, u32)> = Vec::with_capacity(edges.len());
        for &(u, v) in edges {
            assert!(
                (u as usize) < n && (v as usize) < n,
                "edge ({u}, {v}) out of range for {n} vertices"
            );
            if u == v {
                continue;
            }
            pairs.push(if u < v { (u, v) } else { (v, u) });
        }
        pairs.sort_unstable();
        pairs.dedup();

        let mut degrees = vec![0usize; n];
        for &(u, v) in &pairs {
            degrees[u as usize] += 1;
            degrees[v as usize] += 1;
        }
        let mut offsets = Vec::with_capacity(n + 1);
        let mut acc = 0usize;
        offsets.push(0);
        for &d in &degrees {
            acc += d;
            offsets.push(acc);
        }
        let mut cursor: Vec<usize> = offsets[..n].to_vec();
        let mut adjacency = vec![0u32; 2 * pairs.len()];
        // Pairs are sorted, so each per-vertex list fills in ascending order.
        for &(u, v) in &pairs {
            adjacency[cursor[u as usize]] = v;
            cursor[u as usize] += 1;
            adjacency[cursor[v as usize]] = u;
            cursor[v as usize] += 1;
        }

        Graph {
            offsets,
            adjacency,
            edge_count: pairs.len(),
        }
    }

    /// Number of vertices.
    pub fn vertex_count(&self) -> usize {
        self.offsets.len() - 1
    }

    /// Number of undirected edges, each counted once.
    pub fn edge_count(&self) -> usize {
        self.edge_count
    }

    pub fn degree(&self, v: u32) -> usize {
        self.offsets[v as usize + 1] - self.offsets[v as usize]
    }

    pub fn neighbors(&self, v: u32) -> &[u32] {
        &self.adjacency[self.offsets[v as usize]..self.offsets[v as usize + 1]]
    }

    pub fn degrees(&self) -> Vec<usize> {
        (0..self.vertex_count()).map(|v| self.degree(v as u32)).collect()
    }

    /// Undirected edges as `(u, v)` with `u < v`, in lexicographic order.
    pub fn edges(&self) -> impl Iterator<Item = (u32, u32)> + '_ {
        (0..self.vertex_count() as u32).flat_map(move |u| {
            self.neighbors(u)
                .iter()
                .copied()
                .filter(move |&v| v > u)
                .map(move |v| (u, v))
        })
    }
}

/// A prescribed degree sequence, the input to stub matching.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DegreeSequence(Vec<usize>);

impl DegreeSequence {
    pub fn new(degrees: Vec<usize>) -> DegreeSequence {
        DegreeSequence(degrees)
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn sum(&self) -> usize {
        self.0.iter().sum()
    }

    pub fn as_slice(&self) -> &[usize] {
        &self.0
    }

    pub fn into_vec(self) -> Vec<usize> {
        self.0
    }
}

/// Draws `n` independent Poisson(`mean_degree`) degrees.
///
/// Parity is not fixed here; pair with [`fix_parity`] before matching.
pub fn sample_poisson_degrees<R: Rng + ?Sized>(
    n: usize,
    mean_degree: f64,
    rng: &mut R,
) -> Result<DegreeSequence> {
    if n == 0 {
        return Err(Error::invalid("n", "must be at least 1"));
    }
    if mean_degree <= 0.0 || !mean_degree.is_finite() {
        return Err(Error::invalid(
            "mean_degree",
            format!("must be positive and finite, got {mean_degree}"),
        ));
    }
    let dist = Poisson::new(mean_degree)
        .map_err(|e| Error::invalid("mean_degree", e.to_string()))?;
    let degrees = (0..n).map(|_| dist.sample(rng) as usize).collect();
    Ok(DegreeSequence(degrees))
}

/// Draws `n` degrees from the discrete power law `p(k) ∝ k^{-alpha}` on
/// `k_min..=n-1` by inverse transform over the normalized CDF.
///
/// The upper cutoff `n - 1` is the simple-graph realizability bound.
pub fn sample_powerlaw_degrees<R: Rng + ?Sized>(
    n: usize,
    alpha: f64,
    k_min: usize,
    rng: &mut R,
) -> Result<DegreeSequence> {
    if n == 0 {
        return Err(Error::invalid("n", "must be at least 1"));
    }
    if alpha <= 1.0 || !alpha.is_finite() {
        return Err(Error::invalid(
            "alpha",
            format!("must be greater than 1, got {alpha}"),
        ));
    }
    if k_min == 0 {
        return Err(Error::invalid("k_min", "must be at least 1"));
    }
    if k_min > n.saturating_sub(1) {
        return Err(Error::invalid(
            "k_min",
            format!("support {k_min}..={} is empty", n.saturating_sub(1)),
        ));
    }

    let support = k_min..=(n - 1);
    let mut cdf: Vec<f64> = Vec::with_capacity(n - k_min);
    let mut acc = 0.0;
    for k in support {
        acc += (k as f64).powf(-alpha);
        cdf.push(acc);
    }
    let total = *cdf.last().expect("support is non-empty");
    for c in &mut cdf {
        *c /= total;
    }

    let degrees = (0..n)
        .map(|_| {
            let u: f64 = rng.random();
            let idx = cdf.partition_point(|&c| c < u);
            k_min + idx.min(cdf.len() - 1)
        })
        .collect();
    Ok(DegreeSequence(degrees))
}

/// Makes the stub total even by incrementing one uniformly chosen vertex's
/// degree when the sum is odd; even sums pass through unchanged.
pub fn fix_parity<R: Rng + ?Sized>(seq: DegreeSequence, rng: &mut R) -> DegreeSequence {
    let mut degrees = seq.0;
    if degrees.iter().sum::<usize>() % 2 == 1 {
        let idx = rng.random_range(0..degrees.len());
        degrees[idx] += 1;
    }
    DegreeSequence(degrees)
}

/// Uniform stub matching over a prescribed degree sequence, projected to a
/// simple graph by erasing self-loops and collapsing multi-edges.
///
/// Realized degrees are therefore bounded above by the prescribed ones.
pub fn configuration_model<R: Rng + ?Sized>(
    seq: &DegreeSequence,
    rng: &mut R,
) -> Result<Graph> {
    let total: usize = seq.sum();
    if total % 2 == 1 {
        return Err(Error::OddStubCount(total));
    }
    let mut stubs: Vec<u32> = Vec::with_capacity(total);
    for (v, &d) in seq.as_slice().iter().enumerate() {
        stubs.extend(std::iter::repeat_n(v as u32, d));
    }
    stubs.shuffle(rng);
    let edges: Vec<(u32, u32)> = stubs
        .chunks_exact(2)
        .map(|pair| (pair[0], pair[1]))
        .collect();
    Ok(Graph::from_edges(seq.len(), &edges))
}

/// Induced subgraph on the largest connected component, with vertices
/// relabeled to `0..n'`. Ties between equal-size components go to the one
/// containing the smallest original vertex id.
///
/// Returns the component and the relabeling map: entry `i` is the original
/// id of the component's vertex `i` (ascending, so relative order is kept).
pub fn largest_component(g: &Graph) -> (Graph, Vec<u32>) {
    let n = g.vertex_count();
    if n == 0 {
        return (Graph::from_edges(0, &[]), Vec::new());
    }

    let mut component = vec![usize::MAX; n];
    let mut best_root = 0usize;
    let mut best_size = 0usize;
    let mut queue = VecDeque::new();
    for start in 0..n {
        if component[start] != usize::MAX {
            continue;
        }
        component[start] = start;
        queue.push_back(start as u32);
        let mut size = 1usize;
        while let Some(v) = queue.pop_front() {
            for &u in g.neighbors(v) {
                if component[u as usize] == usize::MAX {
                    component[u as usize] = start;
                    queue.push_back(u);
                    size += 1;
                }
            }
        }
        // Scanning roots in ascending order makes the first maximum the
        // component with the smallest contained vertex id.
        if size > best_size {
            best_size = size;
            best_root = start;
        }
    }

    let members: Vec<u32> = (0..n as u32)
        .filter(|&v| component[v as usize] == best_root)
        .collect();
    let mut new_id = vec![u32::MAX; n];
    for (idx, &orig) in members.iter().enumerate() {
        new_id[orig as usize] = idx as u32;
    }
    let mut edges: Vec<(u32, u32)> = Vec::new();
    for &orig in &members {
        for &u in g.neighbors(orig) {
            if u > orig {
                edges.push((new_id[orig as usize], new_id[u as usize]));
            }
        }
    }
    (Graph::from_edges(members.len(), &edges), members)
}

/// A graph read from an edge list, with the original vertex labels.
///
/// `labels[v]` is the label of internal vertex `v`; ids are assigned in
/// first-seen order.
#[derive(Clone, Debug)]
pub struct LabeledGraph {
    pub graph: Graph,
    pub labels: Vec<String>,
}

impl LabeledGraph {
    /// Internal id for a label, if present.
    pub fn id_of(&self, label: &str) -> Option<u32> {
        self.labels.iter().position(|l| l == label).map(|i| i as u32)
    }
}

/// Parses a whitespace-separated edge list.
///
/// Lines starting with `#` or `%` and blank lines are skipped. Every other
/// line must hold exactly two labels. Duplicate edges and self-loops are
/// silently dropped.
pub fn load_edge_list<R: BufRead>(reader: R) -> Result<LabeledGraph> {
    let mut ids: HashMap<String, u32> = HashMap::new();
    let mut labels: Vec<String> = Vec::new();
    let mut edges: Vec<(u32, u32)> = Vec::new();

    for (idx, line) in reader.lines().enumerate() {
        let line = line?;
        let trimmed = line.trim();
        if trimmed.is_empty() || trimmed.starts_with('#') || trimmed.starts_with('%') {
            continue;
        }
        let tokens: Vec<&str> = trimmed.split_whitespace().collect();
        if tokens.len() != 2 {
            return Err(Error::EdgeListParse {
                line: idx + 1,
                reason: format!("expected 2 tokens, found {}", tokens.len()),
            });
        }
        let mut intern = |label: &str| -> u32 {
            if let Some(&id) = ids.get(label) {
                id
            } else {
                let id = labels.len() as u32;
                ids.insert(label.to_owned(), id);
                labels.push(label.to_owned());
                id
            }
        };
        let u = intern(tokens[0]);
        let v = intern(tokens[1]);
        edges.push((u, v));
    }

    let graph = Graph::from_edges(labels.len(), &edges);
    Ok(LabeledGraph { graph, labels })
}

/// Writes `g` as an edge list (`u v` per line, `u < v`, lexicographic).
///
/// Isolated vertices do not appear; round-tripping through
/// [`load_edge_list`] recovers the adjacency of every non-isolated vertex.
pub fn write_edge_list<W: Write>(g: &Graph, mut writer: W) -> Result<()> {
    for (u, v) in g.edges() {
        writeln!(writer, "{u} {v}")?;
    }
    Ok(())
}
