//! Immutable simple graph in compressed adjacency form.
//!
//! Each vertex owns a slice of `adjacency` in the order edges were supplied,
//! plus a sorted copy of the same slice used for `O(log d)` pair lookups.
//! Vertex ids are dense in `[0, n)`.

use std::collections::HashMap;
use std::io::BufRead;

use rand::seq::SliceRandom;
use rand::Rng;
use rustc_hash::FxHashSet;
use thiserror::Error;

/// Dense vertex index in `[0, n)`.
pub type VertexId = u32;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum GraphError {
    #[error("line {line}: malformed edge line: {content:?}")]
    Malformed { line: usize, content: String },
    #[error("line {line}: self-loop at vertex {vertex}")]
    SelfLoop { line: usize, vertex: u64 },
    #[error("line {line}: duplicate edge ({u}, {v})")]
    DuplicateEdge { line: usize, u: u64, v: u64 },
    #[error("line {line}: vertex {vertex} is outside the declared range [0, {n})")]
    HeaderTooSmall { line: usize, vertex: u64, n: usize },
    #[error("self-loop at vertex {0}")]
    SelfLoopEdge(VertexId),
    #[error("duplicate edge ({0}, {1})")]
    Duplicate(VertexId, VertexId),
    #[error("vertex {vertex} out of range for a graph with {n} vertices")]
    OutOfRange { vertex: VertexId, n: usize },
    #[error("the order is only defined between distinct vertices (got {0} twice)")]
    SameVertex(VertexId),
    #[error("i/o error: {0}")]
    Io(String),
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Graph {
    offsets: Vec<usize>,
    adjacency: Vec<VertexId>,
    sorted: Vec<VertexId>,
    m: usize,
}

impl Graph {
    /// Builds a graph on `n` vertices, rejecting self-loops, duplicates
    /// (in either orientation) and ids `>= n`.
    pub fn from_edges<I>(n: usize, edges: I) -> Result<Graph, GraphError>
    where
        I: IntoIterator<Item = (VertexId, VertexId)>,
    {
        let mut builder = GraphBuilder::new(n);
        for (u, v) in edges {
            builder.add_edge(u, v)?;
        }
        Ok(builder.build())
    }

    pub fn empty(n: usize) -> Graph {
        GraphBuilder::new(n).build()
    }

    pub fn n(&self) -> usize {
        self.offsets.len() - 1
    }

    pub fn m(&self) -> usize {
        self.m
    }

    fn check(&self, v: VertexId) -> Result<(), GraphError> {
        if (v as usize) < self.n() {
            Ok(())
        } else {
            Err(GraphError::OutOfRange {
                vertex: v,
                n: self.n(),
            })
        }
    }

    pub fn degree(&self, v: VertexId) -> Result<usize, GraphError> {
        self.check(v)?;
        Ok(self.degree_of(v))
    }

    /// The `i`-th neighbor of `v`, 1-based; `None` when `i` is 0 or exceeds `d_v`.
    pub fn neighbor(&self, v: VertexId, i: usize) -> Result<Option<VertexId>, GraphError> {
        self.check(v)?;
        if i == 0 {
            return Ok(None);
        }
        Ok(self.neighbors(v).get(i - 1).copied())
    }

    pub fn has_edge(&self, u: VertexId, v: VertexId) -> Result<bool, GraphError> {
        self.check(u)?;
        self.check(v)?;
        Ok(self.contains_edge(u, v))
    }

    /// `u ≺ v`: smaller degree first, ties broken by id.
    pub fn precedes(&self, u: VertexId, v: VertexId) -> Result<bool, GraphError> {
        self.check(u)?;
        self.check(v)?;
        if u == v {
            return Err(GraphError::SameVertex(u));
        }
        Ok(precedes_by_degree(self.degree_of(u), u, self.degree_of(v), v))
    }

    /// Unchecked degree; panics on an out-of-range id.
    #[inline]
    pub fn degree_of(&self, v: VertexId) -> usize {
        let v = v as usize;
        self.offsets[v + 1] - self.offsets[v]
    }

    /// Adjacency slice of `v` in load order.
    #[inline]
    pub fn neighbors(&self, v: VertexId) -> &[VertexId] {
        let v = v as usize;
        &self.adjacency[self.offsets[v]..self.offsets[v + 1]]
    }

    /// Position of `v`'s first slot in the flat adjacency array.
    #[inline]
    pub fn adjacency_start(&self, v: VertexId) -> usize {
        self.offsets[v as usize]
    }

    #[inline]
    pub fn sorted_neighbors(&self, v: VertexId) -> &[VertexId] {
        let v = v as usize;
        &self.sorted[self.offsets[v]..self.offsets[v + 1]]
    }

    /// Unchecked pair lookup: binary search in the lower-degree endpoint's sorted list.
    #[inline]
    pub fn contains_edge(&self, u: VertexId, v: VertexId) -> bool {
        let (probe, target) = if self.degree_of(u) <= self.degree_of(v) {
            (u, v)
        } else {
            (v, u)
        };
        self.sorted_neighbors(probe).binary_search(&target).is_ok()
    }

    /// Unchecked `u ≺ v`.
    #[inline]
    pub fn precedes_unchecked(&self, u: VertexId, v: VertexId) -> bool {
        precedes_by_degree(self.degree_of(u), u, self.degree_of(v), v)
    }

    pub fn degrees(&self) -> impl Iterator<Item = usize> + '_ {
        self.offsets.windows(2).map(|w| w[1] - w[0])
    }

    /// Each undirected edge once, as `(u, v)` with `u < v`.
    pub fn edges(&self) -> impl Iterator<Item = (VertexId, VertexId)> + '_ {
        (0..self.n() as VertexId).flat_map(move |u| {
            self.sorted_neighbors(u)
                .iter()
                .copied()
                .filter(move |&v| u < v)
                .map(move |v| (u, v))
        })
    }

    /// Same graph with every adjacency slice shuffled.
    pub fn permute_adjacency<R: Rng + ?Sized>(&self, rng: &mut R) -> Graph {
        let mut adjacency = self.adjacency.clone();
        for v in 0..self.n() {
            adjacency[self.offsets[v]..self.offsets[v + 1]].shuffle(rng);
        }
        Graph {
            offsets: self.offsets.clone(),
            adjacency,
            sorted: self.sorted.clone(),
            m: self.m,
        }
    }

    /// Isomorphic copy where vertex `v` becomes `perm[v]`.
    pub fn relabel(&self, perm: &[VertexId]) -> Graph {
        assert_eq!(perm.len(), self.n(), "permutation length must equal n");
        let mut builder = GraphBuilder::new(self.n());
        for u in 0..self.n() as VertexId {
            for &v in self.neighbors(u) {
                if u < v {
                    builder
                        .add_edge(perm[u as usize], perm[v as usize])
                        .expect("relabeling by a permutation preserves simplicity");
                }
            }
        }
        builder.build()
    }

    /// Number of `≺`-successors of `v`; at most `√(2m)` for every vertex.
    pub fn forward_degree(&self, v: VertexId) -> usize {
        self.neighbors(v)
            .iter()
            .filter(|&&w| self.precedes_unchecked(v, w))
            .count()
    }

    /// Writes the edge list format read by [`load_edge_list`], with an `n` header.
    pub fn write_edge_list<W: std::io::Write>(&self, mut out: W) -> std::io::Result<()> {
        writeln!(out, "n {}", self.n())?;
        for u in 0..self.n() as VertexId {
            for &v in self.neighbors(u) {
                if u < v {
                    writeln!(out, "{u} {v}")?;
                }
            }
        }
        Ok(())
    }
}

#[inline]
pub fn precedes_by_degree(du: usize, u: VertexId, dv: usize, v: VertexId) -> bool {
    du < dv || (du == dv && u < v)
}

/// Accumulates edges for a [`Graph`]; adjacency order follows insertion order.
#[derive(Debug, Clone)]
pub struct GraphBuilder {
    n: usize,
    edges: Vec<(VertexId, VertexId)>,
    seen: FxHashSet<u64>,
}

#[inline]
pub(crate) fn pair_key(u: VertexId, v: VertexId) -> u64 {
    let (a, b) = if u < v { (u, v) } else { (v, u) };
    ((a as u64) << 32) | b as u64
}

impl GraphBuilder {
    pub fn new(n: usize) -> Self {
        GraphBuilder {
            n,
            edges: Vec::new(),
            seen: FxHashSet::default(),
        }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn add_edge(&mut self, u: VertexId, v: VertexId) -> Result<(), GraphError> {
        for w in [u, v] {
            if w as usize >= self.n {
                return Err(GraphError::OutOfRange { vertex: w, n: self.n });
            }
        }
        if u == v {
            return Err(GraphError::SelfLoopEdge(u));
        }
        if !self.seen.insert(pair_key(u, v)) {
            return Err(GraphError::Duplicate(u, v));
        }
        self.edges.push((u, v));
        Ok(())
    }

    pub fn contains(&self, u: VertexId, v: VertexId) -> bool {
        self.seen.contains(&pair_key(u, v))
    }

    pub fn remove_edge(&mut self, u: VertexId, v: VertexId) -> bool {
        if self.seen.remove(&pair_key(u, v)) {
            let key = pair_key(u, v);
            self.edges.retain(|&(a, b)| pair_key(a, b) != key);
            true
        } else {
            false
        }
    }

    pub fn build(self) -> Graph {
        let n = self.n;
        let mut offsets = vec![0usize; n + 1];
        for &(u, v) in &self.edges {
            offsets[u as usize + 1] += 1;
            offsets[v as usize + 1] += 1;
        }
        for i in 1..=n {
            offsets[i] += offsets[i - 1];
        }
        let mut fill = offsets.clone();
        let mut adjacency = vec![0 as VertexId; offsets[n]];
        for &(u, v) in &self.edges {
            adjacency[fill[u as usize]] = v;
            fill[u as usize] += 1;
            adjacency[fill[v as usize]] = u;
            fill[v as usize] += 1;
        }
        let mut sorted = adjacency.clone();
        for v in 0..n {
            sorted[offsets[v]..offsets[v + 1]].sort_unstable();
        }
        Graph {
            offsets,
            adjacency,
            sorted,
            m: self.edges.len(),
        }
    }
}

/// Result of reading an edge-list file.
#[derive(Debug, Clone)]
pub struct LoadedGraph {
    pub graph: Graph,
    /// `remap[new_id] = original_id`, present when ids were compacted.
    pub remap: Option<Vec<u64>>,
}

#[derive(Debug, Clone, Copy, Default)]
pub struct LoadOptions {
    /// Compact sparse external ids into `[0, n)` in order of first appearance.
    pub remap: bool,
}

/// Reads `u v` lines; `#` starts a comment, and an optional `n <count>` line
/// fixes the vertex count above the largest id.
/// `(line, u, v)` after id resolution.
type NumberedEdge = (usize, VertexId, VertexId);

pub fn load_edge_list<R: BufRead>(reader: R) -> Result<Graph, GraphError> {
    load_edge_list_with(reader, LoadOptions::default()).map(|l| l.graph)
}

pub fn load_edge_list_with<R: BufRead>(
    reader: R,
    options: LoadOptions,
) -> Result<LoadedGraph, GraphError> {
    let mut header_n: Option<(usize, usize)> = None;
    let mut raw: Vec<(usize, u64, u64)> = Vec::new();
    for (idx, line) in reader.lines().enumerate() {
        let line_no = idx + 1;
        let line = line.map_err(|e| GraphError::Io(e.to_string()))?;
        let body = match line.find('#') {
            Some(pos) => &line[..pos],
            None => &line[..],
        };
        let mut tokens = body.split_whitespace();
        let Some(first) = tokens.next() else {
            continue;
        };
        let malformed = || GraphError::Malformed {
            line: line_no,
            content: line.clone(),
        };
        if first == "n" {
            let count = tokens.next().ok_or_else(malformed)?;
            if tokens.next().is_some() || header_n.is_some() {
                return Err(malformed());
            }
            let count: usize = count.parse().map_err(|_| malformed())?;
            header_n = Some((line_no, count));
            continue;
        }
        let second = tokens.next().ok_or_else(malformed)?;
        if tokens.next().is_some() {
            return Err(malformed());
        }
        let u: u64 = first.parse().map_err(|_| malformed())?;
        let v: u64 = second.parse().map_err(|_| malformed())?;
        if u == v {
            return Err(GraphError::SelfLoop {
                line: line_no,
                vertex: u,
            });
        }
        raw.push((line_no, u, v));
    }

    let (n, remap, ids): (usize, Option<Vec<u64>>, Vec<NumberedEdge>) =
        if options.remap {
            let mut index: HashMap<u64, VertexId> = HashMap::new();
            let mut table = Vec::new();
            let mut intern = |x: u64| -> VertexId {
                *index.entry(x).or_insert_with(|| {
                    table.push(x);
                    (table.len() - 1) as VertexId
                })
            };
            let ids: Vec<_> = raw
                .iter()
                .map(|&(line, u, v)| (line, intern(u), intern(v)))
                .collect();
            let n = header_n.map_or(table.len(), |(_, c)| c.max(table.len()));
            (n, Some(table), ids)
        } else {
            let max_id = raw.iter().map(|&(_, u, v)| u.max(v)).max();
            let implied = max_id.map_or(0, |x| x as usize + 1);
            let n = match header_n {
                Some((line, count)) => {
                    if let Some(&(_, u, v)) =
                        raw.iter().find(|&&(_, u, v)| u.max(v) as usize >= count)
                    {
                        return Err(GraphError::HeaderTooSmall {
                            line,
                            vertex: u.max(v),
                            n: count,
                        });
                    }
                    count
                }
                None => implied,
            };
            if n > VertexId::MAX as usize {
                return Err(GraphError::Io(format!("vertex count {n} exceeds u32 ids")));
            }
            let ids = raw
                .iter()
                .map(|&(line, u, v)| (line, u as VertexId, v as VertexId))
                .collect();
            (n, None, ids)
        };

    let mut builder = GraphBuilder::new(n);
    for (line, u, v) in ids {
        if builder.contains(u, v) {
            let (ou, ov) = raw
                .iter()
                .find(|r| r.0 == line)
                .map(|r| (r.1, r.2))
                .unwrap_or((u as u64, v as u64));
            return Err(GraphError::DuplicateEdge {
                line,
                u: ou,
                v: ov,
            });
        }
        builder.add_edge(u, v).expect("validated above");
    }
    Ok(LoadedGraph {
        graph: builder.build(),
        remap,
    })
}

/// Erdős–Rényi `G(n, p)`, walking the pairs `u < v` with geometric skips.
pub fn random_gnp<R: Rng + ?Sized>(n: usize, p: f64, rng: &mut R) -> Graph {
    assert!((0.0..=1.0).contains(&p), "p must lie in [0, 1]");
    let mut builder = GraphBuilder::new(n);
    if p == 0.0 || n < 2 {
        return builder.build();
    }
    let log_q = (1.0 - p).ln();
    let (mut u, mut v) = (0usize, 0usize);
    loop {
        let skip = if p >= 1.0 {
            0
        } else {
            let x: f64 = rng.random();
            ((1.0 - x).ln() / log_q).floor() as usize
        };
        v += 1 + skip;
        while v >= n && u < n - 1 {
            v = v - n + u + 2;
            u += 1;
        }
        if u >= n - 1 {
            break;
        }
        builder
            .add_edge(u as VertexId, v as VertexId)
            .expect("fresh pair");
    }
    builder.build()
}
